import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import COVEND_WEIGHTS
from oracles import expm_evolve
from src.dss import (
    DssHamiltonian,
    DssState,
    TrajectoryMode,
    build_hamiltonian,
    evolve,
    trajectory,
    uniform_state,
)
from src.ewl import RecommenderScores, angles_from_dominance, marginal_scores, play_game
from src.exceptions import DegenerateScoresError, InvalidArgumentError

times = st.floats(-100, 100, allow_nan=False)
frequencies = st.lists(st.floats(0, 10, allow_nan=False), min_size=4, max_size=4)


@pytest.fixture(scope="module")
def covend_scores() -> RecommenderScores:
    return marginal_scores(play_game(angles_from_dominance(COVEND_WEIGHTS)))


def _random_state(rng: np.random.Generator, n: int = 4) -> DssState:
    amplitudes = rng.normal(size=n) + 1j * rng.normal(size=n)
    return DssState(amplitudes / np.linalg.norm(amplitudes))


class TestBuildHamiltonian:
    def test_uniform_scores(self):
        h = build_hamiltonian(RecommenderScores.from_q([0.5] * 4), scale=1.0)
        assert h.omega.tolist() == [0.25] * 4

    def test_single_active_actor(self):
        h = build_hamiltonian(RecommenderScores.from_q([1, 0, 0, 0]), scale=2 * math.pi)
        assert h.omega.tolist() == [2 * math.pi, 0.0, 0.0, 0.0]

    def test_covend_proportional_to_scores(self, covend_scores):
        h = build_hamiltonian(covend_scores)
        assert np.allclose(h.omega, 2 * math.pi * covend_scores.q / covend_scores.q.sum(), atol=1e-12)
        assert math.fsum(h.omega / h.scale) == pytest.approx(1.0, abs=1e-12)

    def test_zero_scores(self):
        scores = RecommenderScores(q=np.zeros(4), omega=np.zeros(4))
        with pytest.raises(DegenerateScoresError):
            build_hamiltonian(scores)

    @pytest.mark.parametrize("scale", [0.0, -1.0, float('inf')])
    def test_bad_scale(self, scale):
        with pytest.raises(InvalidArgumentError):
            build_hamiltonian(RecommenderScores.from_q([0.5] * 4), scale=scale)

    def test_matrix_is_diagonal(self):
        h = DssHamiltonian([1.0, 2.0, 3.0, 4.0])
        assert np.array_equal(h.matrix(), np.diag([1.0, 2.0, 3.0, 4.0]).astype(complex))


class TestDssState:
    def test_uniform_state(self):
        assert np.allclose(uniform_state().amplitudes, 0.5)

    def test_rejects_unnormalized(self):
        with pytest.raises(InvalidArgumentError):
            DssState([1, 1, 0, 0])

    def test_from_weights_populations(self):
        state = DssState.from_weights(COVEND_WEIGHTS)
        assert np.allclose(state.populations(), np.array(COVEND_WEIGHTS) / sum(COVEND_WEIGHTS), atol=1e-12)

    def test_from_weights_rejects_zero(self):
        with pytest.raises(InvalidArgumentError):
            DssState.from_weights([0, 0, 0, 0])


class TestEvolve:
    def test_time_zero_is_identity(self):
        psi0 = uniform_state()
        assert evolve(DssHamiltonian([1.0, 2.0, 3.0, 4.0]), psi0, 0.0) is psi0

    @given(st.floats(0, 10, allow_nan=False), times)
    def test_uniform_spectrum_is_global_phase(self, w, t):
        psi0 = DssState.from_weights(COVEND_WEIGHTS)
        psi = evolve(DssHamiltonian([w] * 4), psi0, t)
        assert np.allclose(psi.amplitudes, cmath.exp(-1j * w * t) * psi0.amplitudes, atol=1e-12)
        assert np.allclose(psi.populations(), psi0.populations(), atol=1e-12)

    def test_matches_matrix_exponential(self):
        rng = np.random.default_rng(314)
        for _ in range(100):
            omega = rng.uniform(0, 2 * math.pi, size=4)
            psi0 = _random_state(rng)
            t = float(rng.uniform(-10, 10))
            psi = evolve(DssHamiltonian(omega), psi0, t)
            assert np.allclose(psi.amplitudes, expm_evolve(omega, psi0.amplitudes, t), atol=1e-10)

    @given(frequencies, times, times)
    def test_group_law(self, omega, t1, t2):
        h = DssHamiltonian(omega)
        psi0 = DssState.from_weights(COVEND_WEIGHTS)
        stepwise = evolve(h, evolve(h, psi0, t1), t2)
        direct = evolve(h, psi0, t1 + t2)
        assert np.allclose(stepwise.amplitudes, direct.amplitudes, atol=1e-12)

    @given(frequencies, times)
    def test_norm_conserved(self, omega, t):
        psi = evolve(DssHamiltonian(omega), uniform_state(), t)
        assert float(np.vdot(psi.amplitudes, psi.amplitudes).real) == pytest.approx(1.0, abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            evolve(DssHamiltonian([1.0, 2.0]), uniform_state(4), 1.0)


class TestTrajectory:
    def test_population_mode_constant_quarter(self, covend_scores):
        traj = trajectory(build_hamiltonian(covend_scores), uniform_state(), 50.0, 500, "population")
        assert traj.mode is TrajectoryMode.POPULATION
        assert np.allclose(traj.p_disruptive, 0.25, atol=1e-12)

    def test_population_mode_equals_initial_value(self):
        psi0 = DssState.from_weights(COVEND_WEIGHTS)
        traj = trajectory(DssHamiltonian([0.3, 1.7, 2.2, 5.0]), psi0, 10.0, 50, TrajectoryMode.POPULATION)
        assert np.allclose(traj.p_disruptive, traj.p_disruptive[0], atol=1e-12)

    def test_survival_starts_at_one(self, covend_scores):
        traj = trajectory(build_hamiltonian(covend_scores), uniform_state())
        assert traj.p_disruptive[0] == 1.0
        assert traj.times[0] == 0.0

    def test_survival_constant_for_degenerate_spectrum(self):
        traj = trajectory(DssHamiltonian([1.3] * 4), uniform_state(), 20.0, 200)
        assert np.allclose(traj.p_disruptive, 1.0, atol=1e-12)

    def test_covend_closed_form(self, covend_scores):
        h = build_hamiltonian(covend_scores)
        traj = trajectory(h, uniform_state(), 50.0, 500, "survival")
        assert traj.times.tolist() == pytest.approx(np.linspace(0, 50, 500).tolist())
        expected = [abs(sum(0.25 * cmath.exp(-1j * w * t) for w in h.omega)) ** 2 for t in traj.times]
        assert np.allclose(traj.p_disruptive, expected, atol=1e-10)

    def test_covend_survival_oscillates(self, covend_scores):
        traj = trajectory(build_hamiltonian(covend_scores), uniform_state())
        assert np.all((traj.p_disruptive >= 0) & (traj.p_disruptive <= 1))
        assert traj.p_disruptive.max() - traj.p_disruptive.min() > 1e-3

    @given(frequencies, st.floats(-5, 5, allow_nan=False))
    def test_spectrum_shift_invariance(self, omega, c):
        h = DssHamiltonian(omega)
        psi0 = DssState.from_weights(COVEND_WEIGHTS)
        for mode in TrajectoryMode:
            base = trajectory(h, psi0, 10.0, 40, mode).p_disruptive
            shifted = trajectory(h.shifted(c), psi0, 10.0, 40, mode).p_disruptive
            assert np.allclose(base, shifted, atol=1e-12)

    def test_rows(self):
        traj = trajectory(DssHamiltonian([1.0] * 4), uniform_state(), 1.0, 3)
        assert traj.rows() == [(0.0, 1.0), (0.5, pytest.approx(1.0)), (1.0, pytest.approx(1.0))]

    @pytest.mark.parametrize(
        "t_max, steps, mode",
        [(0.0, 10, "survival"), (-1.0, 10, "survival"), (10.0, 1, "survival"), (10.0, 2.5, "survival"),
         (float('nan'), 10, "survival"), (10.0, 10, "amplitude")],
    )
    def test_invalid_grid(self, t_max, steps, mode):
        with pytest.raises(InvalidArgumentError):
            trajectory(DssHamiltonian([1.0] * 4), uniform_state(), t_max, steps, mode)
