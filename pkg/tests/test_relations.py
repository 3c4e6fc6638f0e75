"""Uncertainty relation: R/I terms, the bound, the proof device, reductions."""

import numpy as np
import pytest

from measerr import (
    DensityOperator,
    GenConfig,
    HermitianObservable,
    LocalContext,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    commutator_expectation,
    errorless_check,
    evaluate_relation,
    expectation,
    imag_part,
    proof_device_check,
    projective_from,
    quantum_error,
    qubit_state,
    random_observable,
    random_povm,
    random_state,
    real_part,
    schroedinger_reduction,
    state_inner,
    trivial_measurement,
)
from measerr.states import OutcomeSpace, ProbabilityDistribution

X = HermitianObservable(PAULI_X)
Y = HermitianObservable(PAULI_Y)
Z = HermitianObservable(PAULI_Z)


def random_setup(dim, seed, mixedness="ginibre"):
    rng = np.random.default_rng(seed)
    cfg = GenConfig(seed=0, dim=dim, outcomes=int(rng.integers(2, 7)), mixedness=mixedness)
    ctx = LocalContext(random_povm(cfg, rng), random_state(cfg, rng))
    return ctx, random_observable(cfg, rng), random_observable(cfg, rng), rng


def trivial_ctx(rho, seed=0):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, 5))
    space = OutcomeSpace.from_values(np.arange(float(k)))
    p0 = ProbabilityDistribution(space, rng.dirichlet(np.ones(k)))
    return LocalContext(trivial_measurement(p0, rho.dim), rho)


class TestRealPart:
    def test_trivial_measurement_closed_form(self):
        for seed in range(8):
            rng = np.random.default_rng(seed)
            cfg = GenConfig(seed=0, dim=3)
            rho = random_state(cfg, rng)
            a = random_observable(cfg, rng)
            b = random_observable(cfg, rng)
            ctx = trivial_ctx(rho, seed)
            closed = state_inner(a, b, rho) - expectation(a, rho) * expectation(b, rho)
            assert real_part(ctx, a, b) == pytest.approx(closed, abs=1e-10 * (1 + abs(closed)))

    def test_transverse_case_vanishes(self):
        ctx = LocalContext(projective_from(Z), qubit_state(y=0.8))
        assert real_part(ctx, X, Z) == pytest.approx(0.0, abs=1e-12)

    def test_diagonal_case_is_squared_error(self):
        for seed in range(8):
            ctx, a, _, _ = random_setup(3, 40 + seed)
            assert real_part(ctx, a, a) == pytest.approx(
                quantum_error(ctx, a) ** 2, abs=1e-9 * (1 + quantum_error(ctx, a) ** 2)
            )


class TestImagPart:
    def test_trivial_measurement_keeps_bare_commutator(self):
        for seed in range(8):
            rng = np.random.default_rng(seed)
            cfg = GenConfig(seed=0, dim=3)
            rho = random_state(cfg, rng)
            a = random_observable(cfg, rng)
            b = random_observable(cfg, rng)
            ctx = trivial_ctx(rho, seed)
            bare = commutator_expectation(a, b, rho)
            assert imag_part(ctx, a, b) == pytest.approx(bare, abs=1e-10 * (1 + abs(bare)))

    def test_transverse_case_cancels(self):
        ctx = LocalContext(projective_from(Z), qubit_state(y=0.8))
        assert imag_part(ctx, X, Z) == pytest.approx(0.0, abs=1e-12)

    def test_antisymmetry_on_diagonal(self):
        ctx, a, _, _ = random_setup(4, 77)
        assert imag_part(ctx, a, a) == pytest.approx(0.0, abs=1e-12)


class TestEvaluateRelation:
    def test_commutator_bound_undercut_scenario(self):
        ctx = LocalContext(projective_from(Z), qubit_state(y=0.8))
        report = evaluate_relation(ctx, X, Z)
        assert report.eps_a * report.eps_b == pytest.approx(0.0, abs=1e-10)
        assert report.bound == pytest.approx(0.0, abs=1e-10)
        assert report.naive_bound == pytest.approx(0.8, abs=1e-10)
        assert report.naive_violated
        assert report.slack >= -1e-9

    def test_trivial_saturation(self):
        ctx = trivial_ctx(DensityOperator.pure([1, 0]))
        report = evaluate_relation(ctx, X, Y)
        assert report.eps_a * report.eps_b == pytest.approx(1.0, abs=1e-10)
        assert report.bound == pytest.approx(1.0, abs=1e-10)
        assert abs(report.slack) <= 1e-10

    def test_diagonal_slack_vanishes(self):
        for seed in range(8):
            ctx, a, _, _ = random_setup(3, 90 + seed)
            report = evaluate_relation(ctx, a, a)
            assert abs(report.slack) <= 1e-12 * (1 + report.eps_a**2)

    def test_holds_on_random_sweep(self):
        for dim in (2, 3, 4):
            for seed in range(25):
                ctx, a, b, _ = random_setup(dim, 1000 * dim + seed)
                report = evaluate_relation(ctx, a, b)
                assert report.slack >= -1e-9 * (1 + abs(report.eps_a * report.eps_b))
                assert report.bound >= abs(report.imag_term) - 1e-12

    def test_report_serialization_keys(self):
        ctx, a, b, _ = random_setup(2, 5)
        d = evaluate_relation(ctx, a, b).as_dict()
        assert list(d) == [
            "dim", "kind", "epsA", "epsB", "R", "I", "bound", "slack",
            "naiveBound", "naiveViolated",
        ]


class TestProofDevice:
    def test_diagonal_recovers_error(self):
        ctx, a, _, _ = random_setup(3, 8)
        report = proof_device_check(ctx, a, a)
        assert report.residual_a <= 1e-9
        assert report.cross_value.real == pytest.approx(quantum_error(ctx, a) ** 2, abs=1e-9)
        assert abs(report.cross_value.imag) <= 1e-10

    def test_trivial_reduces_to_covariance_form(self):
        rng = np.random.default_rng(3)
        cfg = GenConfig(seed=0, dim=3)
        rho = random_state(cfg, rng)
        a = random_observable(cfg, rng)
        b = random_observable(cfg, rng)
        ctx = trivial_ctx(rho, 3)
        report = proof_device_check(ctx, a, b)
        cov = state_inner(a, b, rho) - expectation(a, rho) * expectation(b, rho)
        comm = commutator_expectation(a, b, rho)
        assert report.cross_value == pytest.approx(complex(cov, comm), abs=1e-9)

    def test_residuals_on_sweep(self):
        for dim in (2, 3, 4, 5):
            for seed in range(10):
                ctx, a, b, _ = random_setup(dim, 5000 + 100 * dim + seed)
                report = proof_device_check(ctx, a, b)
                assert report.residual_a <= 1e-9
                assert report.residual_b <= 1e-9
                assert report.cross_residual <= 1e-9


class TestSchroedingerReduction:
    def test_saturation_case(self):
        report = schroedinger_reduction(DensityOperator.pure([1, 0]), X, Y)
        assert report.product == pytest.approx(1.0, abs=1e-10)
        assert report.bound == pytest.approx(1.0, abs=1e-10)
        assert report.kr_bound == pytest.approx(1.0, abs=1e-10)
        assert report.eps_sigma_residual_a <= 1e-10
        assert report.eps_sigma_residual_b <= 1e-10

    def test_uncorrelated_case(self):
        report = schroedinger_reduction(DensityOperator.maximally_mixed(2), X, Z)
        assert report.product == pytest.approx(1.0, abs=1e-12)
        assert report.bound == pytest.approx(0.0, abs=1e-12)

    def test_sweep_holds_and_dominates_commutator_bound(self):
        for seed in range(40):
            rng = np.random.default_rng(seed)
            dim = int(rng.integers(2, 6))
            cfg = GenConfig(seed=0, dim=dim)
            rho = random_state(cfg, rng)
            a = random_observable(cfg, rng)
            b = random_observable(cfg, rng)
            report = schroedinger_reduction(rho, a, b)
            assert report.product >= report.bound - 1e-9 * (1 + report.product)
            assert report.kr_bound <= report.bound + 1e-12


class TestNoSimultaneousErrorless:
    def test_on_random_sweep(self):
        for seed in range(40):
            ctx, a, b, _ = random_setup(2 + seed % 3, 7000 + seed)
            comm = abs(commutator_expectation(a, b, ctx.rho))
            both = errorless_check(ctx, a).cond_a and errorless_check(ctx, b).cond_a
            assert not (both and comm > 1e-6)

    def test_errorless_pair_must_commute_in_effect(self):
        # projective Z measures Z errorlessly; X carries the full error, so
        # a noncommuting pair over a commutator-witnessing state never has
        # both errors vanish
        ctx = LocalContext(projective_from(Z), qubit_state(y=0.8))
        comm = abs(commutator_expectation(X, Z, ctx.rho))
        assert comm > 1e-6
        assert not (errorless_check(ctx, X).cond_a and errorless_check(ctx, Z).cond_a)
