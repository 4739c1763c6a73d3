#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
EWL 量子博弈模块

由策略角构造参数化的 n 主体 EWL 博弈线路：Hadamard 层、纠缠门 J（先 S 层，
再升序 CNOT 链）、每个主体的 Ry(θ_i)、J†（降序 CNOT 链，再 S† 层）、全测量。
测量后的单比特边缘概率 P(qubit i = 1) 作为推荐分数。
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Dict, List, Sequence, Union

import numpy as np

import config
from .circuit import Circuit
from .exceptions import DegenerateScoresError, InvalidArgumentError
from .logger import logger
from .simulator import OutcomeDistribution, probabilities, run

if TYPE_CHECKING:
    from .cordis import DominanceWeights


class HelixActor(Enum):
    """四螺旋主体及其固定的量子比特编号"""

    ACADEMIA = (0, 'academia', 'Academia')
    INDUSTRY = (1, 'industry', 'Industry')
    GOVERNMENT = (2, 'government', 'Government')
    CIVIL_SOCIETY = (3, 'civil_society', 'CivilSociety')

    def __init__(self, qubit: int, key: str, display: str):
        self.qubit = qubit
        self.key = key
        self.display = display

    @classmethod
    def ordered(cls) -> List["HelixActor"]:
        return sorted(cls, key=lambda actor: actor.qubit)

    @classmethod
    def from_key(cls, key: str) -> "HelixActor":
        for actor in cls:
            if actor.key == key:
                return actor
        raise InvalidArgumentError(f"unknown helix actor {key!r}")


def actor_keys(n: int) -> List[str]:
    """输出用的键名：4 比特时用主体名，否则用 q0..q{n-1}"""
    if n == config.HELIX_QUBITS:
        return [actor.key for actor in HelixActor.ordered()]
    return [f"q{i}" for i in range(n)]


@dataclass(frozen=True, eq=False)
class StrategyAngles:
    """每个主体的 Ry 角（弧度）"""

    theta: np.ndarray

    def __post_init__(self):
        theta = np.array(self.theta, dtype=float).reshape(-1)
        if theta.shape[0] == 0:
            raise InvalidArgumentError("at least one strategy angle is required")
        if not np.all(np.isfinite(theta)):
            raise InvalidArgumentError(f"strategy angles must be finite, got {theta.tolist()}")
        theta.setflags(write=False)
        object.__setattr__(self, 'theta', theta)

    @property
    def n(self) -> int:
        return int(self.theta.shape[0])

    def to_dict(self) -> Dict[str, float]:
        return dict(zip(actor_keys(self.n), (float(t) for t in self.theta)))


@dataclass(frozen=True, eq=False)
class RecommenderScores:
    """推荐分数：边缘概率 q 与归一化频率 omega"""

    q: np.ndarray
    omega: np.ndarray

    def __post_init__(self):
        q = np.array(self.q, dtype=float).reshape(-1)
        omega = np.array(self.omega, dtype=float).reshape(-1)
        if q.shape != omega.shape:
            raise InvalidArgumentError("q and omega must have the same length")
        if not np.all(np.isfinite(q)) or np.any(q < 0) or np.any(q > 1):
            raise InvalidArgumentError(f"scores must lie in [0, 1], got {q.tolist()}")
        q.setflags(write=False)
        omega.setflags(write=False)
        object.__setattr__(self, 'q', q)
        object.__setattr__(self, 'omega', omega)

    @classmethod
    def from_q(cls, q: Sequence[float]) -> "RecommenderScores":
        """由边缘概率构造，omega = q / sum(q)"""
        values = np.array(q, dtype=float).reshape(-1)
        total = math.fsum(values)
        if not total > 0:
            raise DegenerateScoresError("all marginal scores are zero; no actor is active after the game")
        return cls(q=values, omega=values / total)

    @property
    def n(self) -> int:
        return int(self.q.shape[0])

    @property
    def dominant_actor(self) -> str:
        # 并列时取编号最小的比特
        return actor_keys(self.n)[int(np.argmax(self.q))]

    def to_dict(self) -> Dict[str, object]:
        keys = actor_keys(self.n)
        return {
            'q': dict(zip(keys, (float(v) for v in self.q))),
            'omega': dict(zip(keys, (float(v) for v in self.omega))),
            'dominant_actor': self.dominant_actor,
            'bit_order': config.BIT_ORDER_NOTE,
        }


def _as_angles(theta: Union[StrategyAngles, Sequence[float]]) -> StrategyAngles:
    return theta if isinstance(theta, StrategyAngles) else StrategyAngles(np.asarray(theta, dtype=float))


def angles_from_dominance(p: Union["DominanceWeights", Sequence[float]]) -> StrategyAngles:
    """
    由主导权重计算策略角 θ_i = 2·arcsin(√p_i)

    Args:
        p: DominanceWeights 或按比特顺序排列的权重序列

    Returns:
        StrategyAngles: 策略角
    """
    weights = p.as_array() if hasattr(p, 'as_array') else np.asarray(p, dtype=float)
    weights = np.asarray(weights, dtype=float).reshape(-1)
    if not np.all(np.isfinite(weights)) or np.any(weights < 0) or np.any(weights > 1):
        raise InvalidArgumentError(f"dominance weights must lie in [0, 1], got {weights.tolist()}")
    theta = 2 * np.arcsin(np.sqrt(weights))
    logger.debug(f"策略角: {theta.tolist()}")
    return StrategyAngles(theta)


def build_ewl_circuit(theta: Union[StrategyAngles, Sequence[float]]) -> Circuit:
    """
    构造 EWL 博弈线路

    Args:
        theta: 每个比特的 Ry 角，至少两个

    Returns:
        Circuit: H 层, S 层, CX 链, Ry 层, 反向 CX 链, S† 层, 测量
    """
    angles = _as_angles(theta)
    n = angles.n
    if n < 2:
        raise InvalidArgumentError(f"the entangler needs at least 2 qubits, got {n}")
    if n > config.MAX_QUBITS:
        raise InvalidArgumentError(f"at most {config.MAX_QUBITS} qubits are supported, got {n}")

    circuit = Circuit(n)
    for q in range(n):
        circuit.h(q)
    # J
    for q in range(n):
        circuit.s(q)
    for q in range(n - 1):
        circuit.cx(q, q + 1)
    for q, t in enumerate(angles.theta):
        circuit.ry(float(t), q)
    # J†
    for q in reversed(range(n - 1)):
        circuit.cx(q, q + 1)
    for q in range(n):
        circuit.sdg(q)
    circuit.measure_all()
    return circuit


def play_game(theta: Union[StrategyAngles, Sequence[float]]) -> OutcomeDistribution:
    """构造线路并精确模拟，返回 2^n 个结果的分布"""
    circuit = build_ewl_circuit(theta)
    logger.info(f"开始 EWL 博弈模拟: {circuit.n_qubits} 个主体")
    dist = probabilities(run(circuit))
    logger.success("EWL 博弈模拟完成")
    return dist


def marginal_scores(dist: OutcomeDistribution) -> RecommenderScores:
    """
    计算每个主体的边缘概率 q_i = P(qubit i = 1) 并归一化

    Args:
        dist: 结果分布

    Returns:
        RecommenderScores: q 与 omega
    """
    n = dist.n_qubits
    indices = np.arange(2**n)
    q = np.array([
        math.fsum(dist.probabilities[((indices >> i) & 1) == 1]) for i in range(n)
    ])
    q = np.clip(q, 0.0, 1.0)
    logger.debug(f"边缘概率 q = {q.tolist()}")
    return RecommenderScores.from_q(q)
