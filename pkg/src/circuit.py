#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
量子线路中间表示模块

提供门级指令序列、门计数与 ASAP 深度统计，以及 OpenQASM 2.0 导出和读取。
"""

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Tuple

import config
from .exceptions import InvalidArgumentError, SchemaError
from .logger import logger


class GateKind(Enum):
    """门类型：(计数名, QASM 名, 作用比特数, 参数个数)"""

    H = ("H", "h", 1, 0)
    S = ("S", "s", 1, 0)
    SDG = ("Sdg", "sdg", 1, 0)
    RY = ("Ry", "ry", 1, 1)
    CX = ("CX", "cx", 2, 0)
    MEASURE = ("Measure", "measure", 1, 0)

    def __init__(self, label: str, qasm_name: str, n_qubits: int, n_params: int):
        self.label = label
        self.qasm_name = qasm_name
        self.n_qubits = n_qubits
        self.n_params = n_params

    @property
    def is_unitary(self) -> bool:
        return self is not GateKind.MEASURE

    @classmethod
    def from_qasm(cls, name: str) -> "GateKind":
        for kind in cls:
            if kind.qasm_name == name:
                return kind
        raise SchemaError(f"unsupported QASM gate {name!r}")


@dataclass(frozen=True)
class Instruction:
    """单条门指令，qubits 对 CX 为 (control, target)"""

    kind: GateKind
    qubits: Tuple[int, ...]
    params: Tuple[float, ...] = ()

    def __post_init__(self):
        if len(self.qubits) != self.kind.n_qubits:
            raise InvalidArgumentError(
                f"{self.kind.label} acts on {self.kind.n_qubits} qubit(s), got {len(self.qubits)}"
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise InvalidArgumentError(f"{self.kind.label} qubits must be distinct: {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise InvalidArgumentError(f"negative qubit index in {self.qubits}")
        if len(self.params) != self.kind.n_params:
            raise InvalidArgumentError(
                f"{self.kind.label} takes {self.kind.n_params} parameter(s), got {len(self.params)}"
            )
        if not all(math.isfinite(p) for p in self.params):
            raise InvalidArgumentError(f"{self.kind.label} angle must be finite, got {self.params}")

    @property
    def angle(self) -> float:
        return self.params[0]


@dataclass
class Circuit:
    """按时间顺序排列的指令序列"""

    n_qubits: int
    instructions: List[Instruction] = field(default_factory=list)

    def __post_init__(self):
        if self.n_qubits < 1:
            raise InvalidArgumentError(f"circuit needs at least one qubit, got {self.n_qubits}")
        for instr in self.instructions:
            self._check(instr)

    def _check(self, instr: Instruction) -> None:
        for q in instr.qubits:
            if q >= self.n_qubits:
                raise InvalidArgumentError(
                    f"qubit index {q} out of range for {self.n_qubits}-qubit circuit"
                )

    def append(self, instr: Instruction) -> "Circuit":
        self._check(instr)
        self.instructions.append(instr)
        return self

    def h(self, q: int) -> "Circuit":
        return self.append(Instruction(GateKind.H, (q,)))

    def s(self, q: int) -> "Circuit":
        return self.append(Instruction(GateKind.S, (q,)))

    def sdg(self, q: int) -> "Circuit":
        return self.append(Instruction(GateKind.SDG, (q,)))

    def ry(self, theta: float, q: int) -> "Circuit":
        return self.append(Instruction(GateKind.RY, (q,), (float(theta),)))

    def cx(self, control: int, target: int) -> "Circuit":
        return self.append(Instruction(GateKind.CX, (control, target)))

    def measure(self, q: int) -> "Circuit":
        return self.append(Instruction(GateKind.MEASURE, (q,)))

    def measure_all(self) -> "Circuit":
        for q in range(self.n_qubits):
            self.measure(q)
        return self

    def unitary_part(self) -> "Circuit":
        """去掉测量后的线路"""
        return Circuit(self.n_qubits, [i for i in self.instructions if i.kind.is_unitary])

    def __len__(self) -> int:
        return len(self.instructions)


@dataclass(frozen=True)
class CircuitStats:
    """门计数统计"""

    counts: Dict[str, int]
    total_unitary_gates: int
    depth: int

    def to_dict(self) -> Dict[str, object]:
        return {
            'counts': dict(sorted(self.counts.items())),
            'total_unitary_gates': self.total_unitary_gates,
            'depth': self.depth,
        }


def depth(circuit: Circuit) -> int:
    """ASAP 分层深度，测量也占一层"""
    layer = [0] * circuit.n_qubits
    for instr in circuit.instructions:
        current = 1 + max(layer[q] for q in instr.qubits)
        for q in instr.qubits:
            layer[q] = current
    return max(layer, default=0)


def count_ops(circuit: Circuit) -> CircuitStats:
    """
    统计各类门的数量

    total_unitary_gates 不计测量，depth 计入测量。

    Args:
        circuit: 待统计的线路

    Returns:
        CircuitStats: 计数、幺正门总数和深度
    """
    counts = Counter(instr.kind.label for instr in circuit.instructions)
    total = sum(n for label, n in counts.items() if label != GateKind.MEASURE.label)
    stats = CircuitStats(counts=dict(counts), total_unitary_gates=total, depth=depth(circuit))
    logger.debug(f"线路统计: {stats.counts}, 幺正门 {stats.total_unitary_gates}, 深度 {stats.depth}")
    return stats


def _format_angle(theta: float) -> str:
    return format(theta, f".{config.QASM_PRECISION}g")


def export_qasm(circuit: Circuit) -> str:
    """导出为 OpenQASM 2.0 文本"""
    lines = [
        f"OPENQASM {config.QASM_VERSION};",
        f'include "{config.QASM_INCLUDE}";',
        f"qreg q[{circuit.n_qubits}];",
        f"creg c[{circuit.n_qubits}];",
    ]
    for instr in circuit.instructions:
        kind = instr.kind
        if kind is GateKind.MEASURE:
            q = instr.qubits[0]
            lines.append(f"measure q[{q}] -> c[{q}];")
        elif kind is GateKind.RY:
            lines.append(f"ry({_format_angle(instr.angle)}) q[{instr.qubits[0]}];")
        else:
            operands = ",".join(f"q[{q}]" for q in instr.qubits)
            lines.append(f"{kind.qasm_name} {operands};")
    return "\n".join(lines) + "\n"


_QREG = re.compile(r"^qreg\s+(\w+)\[(\d+)\]$")
_CREG = re.compile(r"^creg\s+(\w+)\[(\d+)\]$")
_MEASURE = re.compile(r"^measure\s+\w+\[(\d+)\]\s*->\s*\w+\[(\d+)\]$")
_GATE = re.compile(r"^([a-z]+)(?:\(([^)]*)\))?\s+(.+)$")
_OPERAND = re.compile(r"^\w+\[(\d+)\]$")


def parse_qasm(text: str) -> Circuit:
    """
    读取 export_qasm 使用的 OpenQASM 2.0 子集

    Args:
        text: QASM 文本

    Returns:
        Circuit: 还原的线路
    """
    statements = []
    for raw in text.splitlines():
        line = raw.split("//", 1)[0].strip()
        if not line:
            continue
        statements.extend(s.strip() for s in line.split(";") if s.strip())

    n_qubits = None
    instructions: List[Instruction] = []
    for stmt in statements:
        if stmt.startswith("OPENQASM") or stmt.startswith("include") or _CREG.match(stmt):
            continue
        match = _QREG.match(stmt)
        if match:
            n_qubits = int(match.group(2))
            continue
        match = _MEASURE.match(stmt)
        if match:
            instructions.append(Instruction(GateKind.MEASURE, (int(match.group(1)),)))
            continue
        match = _GATE.match(stmt)
        if not match:
            raise SchemaError(f"cannot parse QASM statement {stmt!r}")
        kind = GateKind.from_qasm(match.group(1))
        params = _parse_params(match.group(2))
        qubits = []
        for operand in match.group(3).split(","):
            op_match = _OPERAND.match(operand.strip())
            if not op_match:
                raise SchemaError(f"bad operand {operand!r} in {stmt!r}")
            qubits.append(int(op_match.group(1)))
        instructions.append(Instruction(kind, tuple(qubits), params))

    if n_qubits is None:
        raise SchemaError("QASM text declares no qreg")
    return Circuit(n_qubits, instructions)


def _parse_params(raw) -> Tuple[float, ...]:
    if raw is None:
        return ()
    values = []
    for token in raw.split(","):
        try:
            values.append(float(token.strip()))
        except ValueError:
            raise SchemaError(f"unsupported QASM parameter expression {token.strip()!r}")
    return tuple(values)

