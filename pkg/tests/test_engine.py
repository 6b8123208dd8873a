import warnings

import numpy as np
import pytest

from gsolve import (
    IterationConfig,
    Method,
    PowerEstimate,
    RelaxationWarning,
    SquareMatrix,
    build_step,
    extract_splitting,
    iteration_matrix,
    predict,
    solve,
    spectral_radius,
)
from gsolve.engine import TAG_OVERRELAXED_M
from gsolve.generators import random_m_matrix, random_sdd_matrix
from gsolve.pde import LAYOUT_BENCH, assemble


def _explicit_h(A, method, m, omega=None):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RelaxationWarning)
        op = build_step(extract_splitting(A, m), method, omega)
        return iteration_matrix(op)


class TestIterationConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            IterationConfig("gj", m=1, tol=0.0)
        with pytest.raises(ValueError):
            IterationConfig("gj", m=1, max_iter=0)
        with pytest.raises(ValueError):
            IterationConfig("gj", m=-1)
        with pytest.raises(ValueError):
            IterationConfig("nope", m=0)
        with pytest.raises(ValueError, match="omega"):
            IterationConfig("gsor", m=1)

    def test_method_normalized(self):
        assert IterationConfig("GGS", m=0).method is Method.GGS


class TestSolve:
    def test_identity_converges_within_two_iterations(self):
        A = SquareMatrix.identity(5)
        report = solve(A, np.ones(5), IterationConfig("gj", m=0))
        assert report.converged
        assert report.iterations <= 2
        assert report.final_diff_norm <= 1e-7

    def test_reference_iteration_counts(self):
        # reproduction grid, stopping rule ||dx||_2 <= 1e-7 from the zero vector
        problem = assemble(20, "xplusy", layout=LAYOUT_BENCH)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RelaxationWarning)
            report = solve(problem.A, problem.b,
                           IterationConfig("gsor", m=1, omega=1.5),
                           x_exact=problem.x_exact)
        assert report.converged
        assert report.iterations == 105

        problem = assemble(20, "zero", layout=LAYOUT_BENCH)
        report = solve(problem.A, problem.b, IterationConfig("gj", m=1),
                       x_exact=problem.x_exact)
        assert report.converged
        assert report.iterations == 652
        assert report.final_error_norm is not None
        assert report.final_error_norm < 1e-4

    def test_divergence_guard_trips_early(self, spd3):
        b = spd3.to_dense() @ np.ones(3)
        report = solve(spd3, b, IterationConfig("ggs", m=1))
        assert not report.converged
        assert report.note == "diverged"
        assert report.iterations < 10000

    def test_report_invariants(self, lmat3):
        problem = assemble(4, "zero")
        config = IterationConfig("ggs", m=1)
        report = solve(problem.A, problem.b, config, x_exact=problem.x_exact)
        assert report.converged
        assert report.final_diff_norm <= config.tol
        assert report.iterations <= config.max_iter
        assert np.max(np.abs(report.solution - problem.x_exact)) < 1e-5
        assert report.elapsed_seconds >= 0.0

    def test_starting_at_fixed_point(self):
        problem = assemble(4, "xplusy")
        config = IterationConfig("gj", m=1, x0=problem.x_exact)
        report = solve(problem.A, problem.b, config)
        assert report.converged
        assert report.iterations == 1

    def test_max_iter_is_respected(self, spd3):
        b = spd3.to_dense() @ np.ones(3)
        report = solve(spd3, b, IterationConfig("gj", m=1, max_iter=5))
        assert not report.converged
        assert report.iterations <= 5


class TestSpectralRadius:
    def test_zero_matrix(self):
        assert spectral_radius(np.zeros((3, 3))) == 0.0

    def test_against_symmetric_eigenvalue_oracle(self):
        rng = np.random.default_rng(13)
        for _ in range(10):
            n = int(rng.integers(2, 30))
            base = rng.normal(size=(n, n))
            sym = (base + base.T) / 2
            want = float(np.max(np.abs(np.linalg.eigvalsh(sym))))
            got = spectral_radius(SquareMatrix.from_dense(sym))
            assert got == pytest.approx(want, rel=1e-10)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            spectral_radius(np.zeros((2, 3)))
        with pytest.raises(ValueError):
            spectral_radius(np.zeros((2, 2)), mode="magic")
        with pytest.raises(TypeError):
            spectral_radius(object(), mode="power")
        with pytest.raises(ValueError, match="dimension"):
            spectral_radius(lambda v: v, mode="power")

    def test_power_matches_dense_on_separated_fixtures(self, lmat3, spd3):
        cases = [
            (lmat3, "gj", 1, None),
            (lmat3, "ggs", 1, None),
            (spd3, "gj", 1, None),
            (lmat3, "gsor", 1, 0.4),
        ]
        for A, method, m, omega in cases:
            dense_value = spectral_radius(_explicit_h(A, method, m, omega))
            op = build_step(extract_splitting(A, m), method, omega)
            estimate = spectral_radius(op, mode="power", seed=123)
            assert isinstance(estimate, PowerEstimate)
            assert estimate.reliable
            assert estimate.value == pytest.approx(dense_value, rel=1e-4)

    def test_power_on_nilpotent_operator(self):
        H = np.array([[0.0, 1.0], [0.0, 0.0]])
        estimate = spectral_radius(lambda v: H @ v, mode="power", n=2, seed=0)
        assert estimate.value == 0.0
        assert estimate.reliable

    def test_power_flags_stagnation(self):
        # Jordan block: defective dominant eigenvalue, 1/k convergence
        H = np.array([[1.0, 1.0], [0.0, 1.0]])
        estimate = spectral_radius(lambda v: H @ v, mode="power", n=2, seed=0,
                                   max_steps=60)
        assert not estimate.reliable
        assert estimate.value == pytest.approx(1.0, rel=0.2)

    def test_power_handles_complex_dominant_pair(self):
        # rotation: eigenvalues +-i, modulus exactly 1, no real eigenpair
        H = np.array([[0.0, -1.0], [1.0, 0.0]])
        estimate = spectral_radius(lambda v: H @ v, mode="power", n=2, seed=1)
        assert estimate.reliable
        assert estimate.value == pytest.approx(1.0, abs=1e-9)


class TestPredict:
    def test_spd_counterexample(self, spd3):
        verdict = predict(spd3, IterationConfig("gj", m=1))
        assert not verdict.guaranteed
        assert verdict.guarantee_source == ()
        assert verdict.rho_estimate == pytest.approx(1.5883, abs=5e-5)
        assert verdict.predicted_converges is False

    def test_m_matrix_with_underrelaxed_gsor(self):
        problem = assemble(10, "zero")
        verdict = predict(problem.A, IterationConfig("gsor", m=1, omega=0.8))
        assert verdict.guaranteed
        assert "M+GSOR(0<omega<=1)" in verdict.guarantee_source
        assert verdict.predicted_converges is True
        assert verdict.rho_estimate is not None and verdict.rho_estimate < 1

    def test_l_matrix_converges_without_guarantee(self, lmat3):
        verdict = predict(lmat3, IterationConfig("gsor", m=1, omega=0.4))
        assert not verdict.guaranteed
        assert verdict.rho_estimate == pytest.approx(0.6, abs=5e-5)
        assert verdict.predicted_converges is True

    def test_sdd_tags_for_gj_and_ggs(self):
        rng = np.random.default_rng(21)
        A = random_sdd_matrix(6, rng)
        for method in ("gj", "ggs"):
            verdict = predict(A, IterationConfig(method, m=2))
            assert f"SDD+{method.upper()}" in verdict.guarantee_source
            assert verdict.predicted_converges is True

    def test_overrelaxed_m_matrix_tag(self):
        rng = np.random.default_rng(22)
        for _ in range(10):
            A = random_m_matrix(8, rng)
            rho_gj = spectral_radius(_explicit_h(A, "gj", 1))
            limit = 2.0 / (1.0 + rho_gj)
            if limit <= 1.05:
                continue
            omega = min(1.0 + (limit - 1.0) / 2, 1.9)
            splitting = extract_splitting(A, 1)
            gate = spectral_radius(
                np.linalg.solve(splitting.band.to_dense(), splitting.lower.to_dense())
            )
            verdict = predict(A, IterationConfig("gsor", m=1, omega=omega))
            if gate < 1.0 / omega:
                assert TAG_OVERRELAXED_M in verdict.guarantee_source
                assert verdict.rho_estimate < 1.0
            else:
                assert TAG_OVERRELAXED_M not in verdict.guarantee_source

    def test_above_dense_limit_keeps_theorem_verdict(self):
        problem = assemble(8, "zero")
        verdict = predict(problem.A, IterationConfig("ggs", m=1), dense_limit=10)
        assert verdict.rho_estimate is None
        assert verdict.guaranteed
        assert verdict.predicted_converges is True

    def test_above_dense_limit_without_guarantee_is_undetermined(self, spd3):
        verdict = predict(spd3, IterationConfig("gj", m=1), dense_limit=2)
        assert verdict.rho_estimate is None
        assert not verdict.guaranteed
        assert verdict.predicted_converges is None
