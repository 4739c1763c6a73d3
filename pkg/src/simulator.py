#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
态矢量模拟模块

对不超过 12 个量子比特的线路做精确的稠密态矢量模拟，给出测量结果分布，
并支持带种子的可复现采样。

比特序：qubit 0 是结果下标的最低位；比特串按 qubit n-1 在最左的顺序书写。
"""

import math
from dataclasses import dataclass
from typing import Dict

import numpy as np

import config
from .circuit import Circuit, GateKind, Instruction
from .exceptions import InvalidArgumentError
from .logger import logger

_SQRT2_INV = 1 / math.sqrt(2)

# 固定门矩阵
_FIXED_MATRICES = {
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV,
    GateKind.S: np.array([[1, 0], [0, 1j]], dtype=complex),
    GateKind.SDG: np.array([[1, 0], [0, -1j]], dtype=complex),
    # 基矢顺序 |control target>，control 为高位
    GateKind.CX: np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
}


def _ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def gate_matrix(instr: Instruction) -> np.ndarray:
    """返回门的显式幺正矩阵（单比特 2x2，CX 4x4）"""
    if instr.kind is GateKind.MEASURE:
        raise InvalidArgumentError("measurement has no unitary matrix")
    if instr.kind is GateKind.RY:
        return _ry(instr.angle)
    return _FIXED_MATRICES[instr.kind]


def bitstring(index: int, n_qubits: int) -> str:
    """结果下标转比特串，qubit n-1 在最左"""
    return format(index, f"0{n_qubits}b")


def _check_qubit_count(n: int) -> None:
    if not config.MIN_QUBITS <= n <= config.MAX_QUBITS:
        raise InvalidArgumentError(
            f"qubit count must be in [{config.MIN_QUBITS}, {config.MAX_QUBITS}], got {n}"
        )


@dataclass(frozen=True, eq=False)
class StateVector:
    """n 比特纯态，2^n 个复振幅，单位范数"""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        _check_qubit_count(self.n_qubits)
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amplitudes.shape[0] != 2**self.n_qubits:
            raise InvalidArgumentError(
                f"expected {2**self.n_qubits} amplitudes, got {amplitudes.shape[0]}"
            )
        norm = float(np.vdot(amplitudes, amplitudes).real)
        if abs(norm - 1.0) > config.NORM_TOLERANCE:
            raise InvalidArgumentError(f"state is not normalized: squared norm {norm!r}")
        amplitudes.setflags(write=False)
        object.__setattr__(self, 'amplitudes', amplitudes)

    @classmethod
    def zero(cls, n_qubits: int) -> "StateVector":
        _check_qubit_count(n_qubits)
        amplitudes = np.zeros(2**n_qubits, dtype=complex)
        amplitudes[0] = 1.0
        return cls(n_qubits, amplitudes)

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    """计算基测量结果分布"""

    n_qubits: int
    probabilities: np.ndarray

    def __post_init__(self):
        _check_qubit_count(self.n_qubits)
        probs = np.array(self.probabilities, dtype=float).reshape(-1)
        if probs.shape[0] != 2**self.n_qubits:
            raise InvalidArgumentError(
                f"expected {2**self.n_qubits} probabilities, got {probs.shape[0]}"
            )
        if np.any(probs < 0) or not np.all(np.isfinite(probs)):
            raise InvalidArgumentError("probabilities must be finite and non-negative")
        total = math.fsum(probs)
        if abs(total - 1.0) > config.NORM_TOLERANCE:
            raise InvalidArgumentError(f"probabilities sum to {total!r}, not 1")
        probs.setflags(write=False)
        object.__setattr__(self, 'probabilities', probs)

    def as_dict(self) -> Dict[str, float]:
        return {bitstring(k, self.n_qubits): float(p) for k, p in enumerate(self.probabilities)}


@dataclass(frozen=True)
class ShotCounts:
    """采样计数，键为比特串，只保留出现过的结果"""

    n_qubits: int
    shots: int
    counts: Dict[str, int]

    def frequencies(self) -> Dict[str, float]:
        return {key: n / self.shots for key, n in self.counts.items()}

    def count_of(self, index: int) -> int:
        return self.counts.get(bitstring(index, self.n_qubits), 0)


def uniform_superposition(n: int) -> StateVector:
    """|+>^n，每个振幅都是 2^(-n/2)"""
    _check_qubit_count(n)
    return StateVector(n, np.full(2**n, 2 ** (-n / 2), dtype=complex))


def _axis(qubit: int, n: int) -> int:
    # reshape([2]*n) 后第 0 轴是最高位
    return n - 1 - qubit


def _apply_single_qubit(tensor: np.ndarray, matrix: np.ndarray, qubit: int, n: int) -> np.ndarray:
    axis = _axis(qubit, n)
    out = np.tensordot(matrix, tensor, axes=([1], [axis]))
    return np.moveaxis(out, 0, axis)


def _apply_cx(tensor: np.ndarray, control: int, target: int, n: int) -> np.ndarray:
    out = tensor.copy()

    def idx(c_val: int, t_val: int):
        i = [slice(None)] * n
        i[_axis(control, n)], i[_axis(target, n)] = c_val, t_val
        return tuple(i)

    out[idx(1, 0)], out[idx(1, 1)] = tensor[idx(1, 1)], tensor[idx(1, 0)]
    return out


def apply_gate(state: StateVector, instr: Instruction) -> StateVector:
    """
    对态矢量作用一个幺正门

    Args:
        state: 输入态
        instr: 非测量指令

    Returns:
        StateVector: 新的态，输入态不变
    """
    if instr.kind is GateKind.MEASURE:
        raise InvalidArgumentError("apply_gate does not handle measurement; use probabilities/sample")
    n = state.n_qubits
    if any(q >= n for q in instr.qubits):
        raise InvalidArgumentError(f"qubit index out of range in {instr.qubits} for {n} qubits")

    tensor = state.amplitudes.reshape([2] * n)
    if instr.kind is GateKind.CX:
        out = _apply_cx(tensor, instr.qubits[0], instr.qubits[1], n)
    else:
        out = _apply_single_qubit(tensor, gate_matrix(instr), instr.qubits[0], n)
    return StateVector(n, out.reshape(-1))


def run(circuit: Circuit) -> StateVector:
    """
    从 |0...0> 开始依次作用线路中的幺正门

    测量只允许出现在末尾，不参与态演化。

    Args:
        circuit: 待模拟线路

    Returns:
        StateVector: 测量前的末态
    """
    _check_qubit_count(circuit.n_qubits)
    state = StateVector.zero(circuit.n_qubits)
    measured = set()
    for position, instr in enumerate(circuit.instructions):
        if any(q >= circuit.n_qubits for q in instr.qubits):
            raise InvalidArgumentError(f"instruction {position} references an invalid qubit")
        if instr.kind is GateKind.MEASURE:
            measured.update(instr.qubits)
            continue
        if measured.intersection(instr.qubits):
            raise InvalidArgumentError(
                f"instruction {position} ({instr.kind.label}) acts after a measurement; "
                "only trailing measurements are supported"
            )
        state = apply_gate(state, instr)
    logger.debug(f"模拟完成: {circuit.n_qubits} 比特, {len(circuit)} 条指令")
    return state


def probabilities(state: StateVector) -> OutcomeDistribution:
    """计算基下的结果概率 |a_k|^2"""
    probs = np.abs(state.amplitudes) ** 2
    return OutcomeDistribution(state.n_qubits, probs)


def sample(dist: OutcomeDistribution, shots: int, seed: int) -> ShotCounts:
    """
    按分布做多项式采样

    使用 numpy 的 PCG64 生成器（64 位种子），逐次在精确累积分布上做逆 CDF 抽样，
    相同的 (dist, shots, seed) 给出相同的计数。

    Args:
        dist: 结果分布
        shots: 采样次数
        seed: 0 <= seed < 2^64

    Returns:
        ShotCounts: 比特串计数
    """
    if shots < 1:
        raise InvalidArgumentError(f"shots must be positive, got {shots}")
    if not 0 <= seed <= config.MAX_SEED:
        raise InvalidArgumentError(f"seed must be in [0, 2^64), got {seed}")

    rng = np.random.Generator(np.random.PCG64(seed))
    cdf = np.cumsum(dist.probabilities)
    cdf = cdf / cdf[-1]
    draws = rng.random(shots)
    outcomes = np.searchsorted(cdf, draws, side='right')
    outcomes = np.minimum(outcomes, cdf.shape[0] - 1)
    tallies = np.bincount(outcomes, minlength=cdf.shape[0])

    counts = {
        bitstring(k, dist.n_qubits): int(n) for k, n in enumerate(tallies) if n > 0
    }
    logger.debug(f"采样完成: {shots} 次, 种子 {seed}, {len(counts)} 种结果")
    return ShotCounts(n_qubits=dist.n_qubits, shots=shots, counts=counts)
