#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Dirac–Solow–Swan 哈密顿量模块

由推荐分数构造对角哈密顿量 H = Σ ω_i |i><i|，ω_i = Ω·q_i/Σq_j，
按闭式 e^{-iω_i t} 做时间演化，并给出颠覆性资本概率的时间序列。

两种读法：
- population: |<0|ψ(t)>|²，对角 H 下恒为常数，作为守恒量诊断；
- survival（默认）: |<ψ0|ψ(t)>|² = |Σ |c_i|² e^{-iω_i t}|²，随时间振荡。
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence, Tuple

import numpy as np

import config
from .ewl import RecommenderScores
from .exceptions import DegenerateScoresError, InvalidArgumentError
from .logger import logger


class TrajectoryMode(str, Enum):
    """颠覆性资本概率的读法"""

    SURVIVAL = "survival"
    POPULATION = "population"

    @classmethod
    def parse(cls, value) -> "TrajectoryMode":
        try:
            return cls(value)
        except ValueError:
            raise InvalidArgumentError(
                f"mode must be one of {', '.join(m.value for m in cls)}, got {value!r}"
            )


@dataclass(frozen=True, eq=False)
class DssHamiltonian:
    """对角哈密顿量，omega 为对角频率，scale 为 Ω"""

    omega: np.ndarray
    scale: float = config.DEFAULT_SCALE

    def __post_init__(self):
        omega = np.array(self.omega, dtype=float).reshape(-1)
        if omega.shape[0] == 0 or not np.all(np.isfinite(omega)):
            raise InvalidArgumentError(f"omega must be a non-empty finite vector, got {omega.tolist()}")
        if not (math.isfinite(self.scale) and self.scale > 0):
            raise InvalidArgumentError(f"scale must be a positive real, got {self.scale!r}")
        omega.setflags(write=False)
        object.__setattr__(self, 'omega', omega)

    @property
    def dimension(self) -> int:
        return int(self.omega.shape[0])

    def matrix(self) -> np.ndarray:
        return np.diag(self.omega).astype(complex)

    def shifted(self, c: float) -> "DssHamiltonian":
        """整体平移谱，只改变全局相位"""
        return DssHamiltonian(self.omega + c, self.scale)


@dataclass(frozen=True, eq=False)
class DssState:
    """四个螺旋能级上的态，下标 0 为 Academia"""

    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amplitudes.shape[0] == 0:
            raise InvalidArgumentError("state needs at least one level")
        norm = float(np.vdot(amplitudes, amplitudes).real)
        if abs(norm - 1.0) > config.NORM_TOLERANCE:
            raise InvalidArgumentError(f"state is not normalized: squared norm {norm!r}")
        amplitudes.setflags(write=False)
        object.__setattr__(self, 'amplitudes', amplitudes)

    @property
    def dimension(self) -> int:
        return int(self.amplitudes.shape[0])

    @classmethod
    def from_weights(cls, weights: Sequence[float]) -> "DssState":
        """布居等于给定权重的实振幅态 √p_i"""
        p = np.array(weights, dtype=float).reshape(-1)
        if np.any(p < 0) or not math.fsum(p) > 0:
            raise InvalidArgumentError(f"weights must be non-negative with positive sum, got {p.tolist()}")
        amplitudes = np.sqrt(p / math.fsum(p))
        return cls(amplitudes / np.linalg.norm(amplitudes))

    def populations(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def uniform_state(n_levels: int = config.HELIX_QUBITS) -> DssState:
    """均匀叠加 (1/√n, ..., 1/√n)"""
    if n_levels < 1:
        raise InvalidArgumentError(f"n_levels must be positive, got {n_levels}")
    return DssState(np.full(n_levels, 1 / math.sqrt(n_levels), dtype=complex))


@dataclass(frozen=True, eq=False)
class Trajectory:
    """时间网格与颠覆性资本概率序列"""

    times: np.ndarray
    p_disruptive: np.ndarray
    mode: TrajectoryMode

    def rows(self) -> List[Tuple[float, float]]:
        return [(float(t), float(p)) for t, p in zip(self.times, self.p_disruptive)]


def build_hamiltonian(scores: RecommenderScores, scale: float = config.DEFAULT_SCALE) -> DssHamiltonian:
    """
    构造对角哈密顿量 ω_i = scale · q_i / Σ q_j

    Args:
        scores: 推荐分数
        scale: 频率尺度 Ω

    Returns:
        DssHamiltonian: 对角哈密顿量
    """
    q = np.asarray(scores.q, dtype=float)
    total = math.fsum(q)
    if not total > 0:
        raise DegenerateScoresError("cannot build a Hamiltonian from all-zero scores")
    omega = scale * (q / total)
    logger.debug(f"哈密顿量对角频率: {omega.tolist()}")
    return DssHamiltonian(omega=omega, scale=scale)


def _check_dimensions(hamiltonian: DssHamiltonian, psi0: DssState) -> None:
    if hamiltonian.dimension != psi0.dimension:
        raise InvalidArgumentError(
            f"Hamiltonian has {hamiltonian.dimension} levels but the state has {psi0.dimension}"
        )


def evolve(hamiltonian: DssHamiltonian, psi0: DssState, t: float) -> DssState:
    """闭式演化：amplitude_i(t) = e^{-iω_i t} · amplitude_i(0)"""
    _check_dimensions(hamiltonian, psi0)
    if t == 0:
        return psi0
    phases = np.exp(-1j * hamiltonian.omega * t)
    return DssState(psi0.amplitudes * phases)


def trajectory(
    hamiltonian: DssHamiltonian,
    psi0: DssState,
    t_max: float = config.DEFAULT_T_MAX,
    steps: int = config.DEFAULT_STEPS,
    mode=TrajectoryMode.SURVIVAL,
) -> Trajectory:
    """
    在 linspace(0, t_max, steps) 网格上计算颠覆性资本概率

    Args:
        hamiltonian: 对角哈密顿量
        psi0: 初态
        t_max: 终止时间
        steps: 网格点数，至少 2
        mode: survival 或 population

    Returns:
        Trajectory: 时间序列
    """
    mode = TrajectoryMode.parse(mode)
    if not (isinstance(t_max, (int, float)) and math.isfinite(t_max) and t_max > 0):
        raise InvalidArgumentError(f"t_max must be a positive real, got {t_max!r}")
    if int(steps) != steps or steps < 2:
        raise InvalidArgumentError(f"steps must be an integer >= 2, got {steps!r}")
    _check_dimensions(hamiltonian, psi0)

    times = np.linspace(0.0, float(t_max), int(steps))
    # phases[k, i] = e^{-iω_i t_k}
    phases = np.exp(-1j * np.outer(times, hamiltonian.omega))

    if mode is TrajectoryMode.POPULATION:
        values = np.abs(psi0.amplitudes[0] * phases[:, 0]) ** 2
    else:
        overlap = phases @ psi0.populations()
        values = np.abs(overlap) ** 2
        # <ψ0|ψ0> = 1
        values[times == 0.0] = 1.0

    values = np.clip(values, 0.0, 1.0)
    logger.info(f"轨迹计算完成: mode={mode.value}, {steps} 个时间点, t_max={t_max}")
    return Trajectory(times=times, p_disruptive=values, mode=mode)
