import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.circuit import (
    Circuit,
    GateKind,
    Instruction,
    count_ops,
    depth,
    export_qasm,
    parse_qasm,
)
from src.ewl import build_ewl_circuit
from src.exceptions import InvalidArgumentError, SchemaError

N_QUBITS = 4


@st.composite
def instructions(draw, n=N_QUBITS):
    kind = draw(st.sampled_from(list(GateKind)))
    if kind is GateKind.CX:
        control = draw(st.integers(0, n - 1))
        target = draw(st.integers(0, n - 1).filter(lambda q: q != control))
        return Instruction(kind, (control, target))
    q = draw(st.integers(0, n - 1))
    if kind is GateKind.RY:
        angle = draw(st.floats(-10, 10, allow_nan=False, allow_infinity=False))
        return Instruction(kind, (q,), (angle,))
    return Instruction(kind, (q,))


circuits = st.lists(instructions(), max_size=40).map(lambda ops: Circuit(N_QUBITS, list(ops)))


class TestCountOps:
    def test_ewl_circuit_matches_complexity_table(self):
        stats = count_ops(build_ewl_circuit([0.3, 1.1, 2.0, 0.7]))
        assert stats.counts == {'H': 4, 'CX': 6, 'S': 4, 'Ry': 4, 'Sdg': 4, 'Measure': 4}
        assert stats.total_unitary_gates == 22
        assert stats.depth == 11

    def test_empty_circuit(self):
        stats = count_ops(Circuit(3))
        assert stats.counts == {}
        assert stats.total_unitary_gates == 0
        assert stats.depth == 0

    @pytest.mark.parametrize("n", range(2, 9))
    def test_scaling_laws(self, n):
        stats = count_ops(build_ewl_circuit(np.linspace(0, math.pi, n)))
        assert stats.total_unitary_gates == 6 * n - 2
        assert stats.depth == 2 * n + 3

    @given(circuits)
    def test_counts_sum_to_instruction_count(self, circuit):
        stats = count_ops(circuit)
        assert sum(stats.counts.values()) == len(circuit.instructions)
        assert stats.total_unitary_gates == len(circuit.unitary_part())


class TestDepth:
    def test_single_gate(self):
        assert depth(Circuit(1).h(0)) == 1

    def test_measurements_take_a_layer(self):
        circuit = build_ewl_circuit([0.1, 0.2, 0.3, 0.4])
        assert depth(circuit) == 11
        assert depth(circuit.unitary_part()) == 10

    def test_two_qubit_ewl_layering(self):
        assert depth(build_ewl_circuit([0.0, 0.0])) == 7

    @given(circuits, instructions())
    def test_appending_never_decreases_depth(self, circuit, extra):
        before = depth(circuit)
        circuit.append(extra)
        assert depth(circuit) >= before

    @given(circuits)
    def test_depth_bounded_below_by_busiest_qubit(self, circuit):
        per_qubit = [sum(1 for i in circuit.instructions if q in i.qubits) for q in range(N_QUBITS)]
        assert depth(circuit) >= max(per_qubit)


class TestInstructionValidation:
    def test_rejects_out_of_range_qubit(self):
        with pytest.raises(InvalidArgumentError):
            Circuit(2).h(2)

    def test_rejects_repeated_cx_qubit(self):
        with pytest.raises(InvalidArgumentError):
            Instruction(GateKind.CX, (1, 1))

    def test_rejects_non_finite_angle(self):
        with pytest.raises(InvalidArgumentError):
            Instruction(GateKind.RY, (0,), (float('nan'),))


class TestQasm:
    def test_single_hadamard(self):
        text = export_qasm(Circuit(1).h(0))
        lines = text.splitlines()
        assert lines[:4] == ['OPENQASM 2.0;', 'include "qelib1.inc";', 'qreg q[1];', 'creg c[1];']
        assert lines.count('h q[0];') == 1
        assert len(lines) == 5

    def test_measure_syntax(self):
        text = export_qasm(Circuit(3).measure(2))
        assert 'measure q[2] -> c[2];' in text.splitlines()

    def test_gate_names(self):
        circuit = Circuit(2).s(0).sdg(1).cx(0, 1).ry(0.25, 1)
        lines = export_qasm(circuit).splitlines()[4:]
        assert lines == ['s q[0];', 'sdg q[1];', 'cx q[0],q[1];', 'ry(0.25) q[1];']

    def test_angle_precision(self):
        theta = 2 * math.asin(math.sqrt(0.5102))
        line = export_qasm(Circuit(1).ry(theta, 0)).splitlines()[-1]
        printed = line[line.index('(') + 1:line.index(')')]
        assert float(printed) == theta

    def test_ewl_round_trip(self):
        circuit = build_ewl_circuit([1.5912, 1.2109, 0.2337, 0.8018])
        text = export_qasm(circuit)
        assert len(text.splitlines()) == 4 + 26
        assert parse_qasm(text) == circuit

    @settings(max_examples=50)
    @given(circuits)
    def test_round_trip_is_exact(self, circuit):
        parsed = parse_qasm(export_qasm(circuit))
        assert parsed.n_qubits == circuit.n_qubits
        assert len(parsed.instructions) == len(circuit.instructions)
        for a, b in zip(parsed.instructions, circuit.instructions):
            assert a.kind is b.kind
            assert a.qubits == b.qubits
            assert a.params == pytest.approx(b.params, abs=1e-12)

    def test_parse_rejects_unknown_gate(self):
        with pytest.raises(SchemaError):
            parse_qasm('OPENQASM 2.0;\nqreg q[1];\nx q[0];\n')
