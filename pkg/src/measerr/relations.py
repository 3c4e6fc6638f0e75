"""The error-error uncertainty relation and its reductions.

For any measurement and pair of observables, the product of the two errors
is bounded below by sqrt(R^2 + I^2): R is the covariance lost under the
pushforward, I a three-commutator term that survives only for genuinely
quantum measurements.  The bound follows from Cauchy-Schwarz applied to a
composite semi-inner product, which is also evaluated here so the
implementation stays tied to that derivation (it catches sign mistakes in
the commutator terms).  A trivial measurement turns the relation into the
Schroedinger inequality, hence also the textbook commutator bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import quantum_error
from .measurement import trivial_measurement
from .states import (
    DensityOperator,
    HermitianObservable,
    OutcomeFunction,
    OutcomeSpace,
    ProbabilityDistribution,
    class_inner,
    expectation,
    state_inner,
    std_dev_q,
    _real_expectation,
)
from .transport import LocalContext, pullback_rep, pushforward
from .tolerances import DEFAULT_TOL, Tolerances


def commutator_expectation(
    a: HermitianObservable,
    b: HermitianObservable,
    rho: DensityOperator,
    *,
    tol: Tolerances = DEFAULT_TOL,
) -> float:
    """<[A,B]/2i>_rho, real for self-adjoint arguments."""
    comm = (a.matrix @ b.matrix - b.matrix @ a.matrix) / 2j
    return _real_expectation(comm, rho, tol)


def real_part(
    ctx: LocalContext,
    a: HermitianObservable,
    b: HermitianObservable,
    *,
    tol: Tolerances = DEFAULT_TOL,
) -> float:
    """Covariance-lowering term: <{A,B}/2>_rho - <f_A, f_B>_p with f the
    pushforwards.  Equals Cov_rho(A,B) - Cov_p(f_A,f_B) because pushforwards
    preserve expectation values."""
    return state_inner(a, b, ctx.rho, tol=tol) - class_inner(
        pushforward(ctx, a), pushforward(ctx, b), ctx.prob
    )


def imag_part(
    ctx: LocalContext,
    a: HermitianObservable,
    b: HermitianObservable,
    *,
    tol: Tolerances = DEFAULT_TOL,
) -> float:
    """Three-commutator term: <[A,B]/2i> minus the two cross commutators with
    the round-tripped (pullback of pushforward) observables."""
    back_a = pullback_rep(ctx, pushforward(ctx, a))
    back_b = pullback_rep(ctx, pushforward(ctx, b))
    return (
        commutator_expectation(a, b, ctx.rho, tol=tol)
        - commutator_expectation(back_a, b, ctx.rho, tol=tol)
        - commutator_expectation(a, back_b, ctx.rho, tol=tol)
    )


@dataclass(frozen=True)
class RelationReport:
    """Everything the error-error relation says about one (M, rho, A, B).

    slack = eps_a*eps_b - bound must be nonnegative up to roundoff;
    naive_violated records the (legitimate) cases where the error product
    undercuts the bare commutator bound.
    """

    dim: int
    kind: str
    eps_a: float
    eps_b: float
    real_term: float
    imag_term: float
    bound: float
    slack: float
    naive_bound: float
    naive_violated: bool

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "kind": self.kind,
            "epsA": self.eps_a,
            "epsB": self.eps_b,
            "R": self.real_term,
            "I": self.imag_term,
            "bound": self.bound,
            "slack": self.slack,
            "naiveBound": self.naive_bound,
            "naiveViolated": self.naive_violated,
        }


def evaluate_relation(
    ctx: LocalContext,
    a: HermitianObservable,
    b: HermitianObservable,
    *,
    tol: Tolerances = DEFAULT_TOL,
) -> RelationReport:
    eps_a = quantum_error(ctx, a, tol=tol)
    eps_b = quantum_error(ctx, b, tol=tol)
    r_val = real_part(ctx, a, b, tol=tol)
    i_val = imag_part(ctx, a, b, tol=tol)
    bound = float(np.hypot(r_val, i_val))
    naive = abs(commutator_expectation(a, b, ctx.rho, tol=tol))
    product = eps_a * eps_b
    return RelationReport(
        dim=ctx.dim,
        kind=ctx.povm.kind.value,
        eps_a=eps_a,
        eps_b=eps_b,
        real_term=r_val,
        imag_term=i_val,
        bound=bound,
        slack=product - bound,
        naive_bound=naive,
        naive_violated=product < naive - 1e-12,
    )


def _semi_inner(
    ctx: LocalContext,
    x: HermitianObservable,
    f: OutcomeFunction,
    y: HermitianObservable,
    g: OutcomeFunction,
) -> complex:
    """Composite semi-inner product <(X,f),(Y,g)> =
    <XY>_rho + <fg>_p - <(M'f)(M'g)>_rho on operator-function pairs."""
    first = complex(np.trace(x.matrix @ y.matrix @ ctx.rho.matrix))
    second = class_inner(f, g, ctx.prob)
    adj_f = pullback_rep(ctx, f)
    adj_g = pullback_rep(ctx, g)
    third = complex(np.trace(adj_f.matrix @ adj_g.matrix @ ctx.rho.matrix))
    return first + second - third


@dataclass(frozen=True)
class ProofDeviceReport:
    """Numerical check of the Cauchy-Schwarz derivation behind the relation:
    the composite seminorm of (A - roundtrip(A), pushforward(A)) equals the
    error, and the composite cross product equals R + iI."""

    seminorm_a: float
    seminorm_b: float
    residual_a: float
    residual_b: float
    cross_value: complex
    cross_residual: float


def proof_device_check(
    ctx: LocalContext,
    a: HermitianObservable,
    b: HermitianObservable,
    *,
    tol: Tolerances = DEFAULT_TOL,
    imag_part_fn=None,
) -> ProofDeviceReport:
    imag_fn = imag_part_fn if imag_part_fn is not None else imag_part
    fwd_a = pushforward(ctx, a)
    fwd_b = pushforward(ctx, b)
    x_a = a - pullback_rep(ctx, fwd_a)
    x_b = b - pullback_rep(ctx, fwd_b)
    sq_a = _semi_inner(ctx, x_a, fwd_a, x_a, fwd_a)
    sq_b = _semi_inner(ctx, x_b, fwd_b, x_b, fwd_b)
    seminorm_a = float(np.sqrt(max(sq_a.real, 0.0)))
    seminorm_b = float(np.sqrt(max(sq_b.real, 0.0)))
    cross = _semi_inner(ctx, x_a, fwd_a, x_b, fwd_b)
    expected = complex(real_part(ctx, a, b, tol=tol), imag_fn(ctx, a, b, tol=tol))
    return ProofDeviceReport(
        seminorm_a=seminorm_a,
        seminorm_b=seminorm_b,
        residual_a=abs(seminorm_a - quantum_error(ctx, a, tol=tol)),
        residual_b=abs(seminorm_b - quantum_error(ctx, b, tol=tol)),
        cross_value=cross,
        cross_residual=abs(cross - expected),
    )


@dataclass(frozen=True)
class SchroedingerReport:
    """The relation specialized to a trivial measurement: errors collapse to
    standard deviations, the bound to the Schroedinger form, and the bare
    commutator bound is the weaker corollary."""

    sigma_a: float
    sigma_b: float
    product: float
    bound: float
    kr_bound: float
    covariance: float
    commutator: float
    eps_sigma_residual_a: float
    eps_sigma_residual_b: float


def schroedinger_reduction(
    rho: DensityOperator,
    a: HermitianObservable,
    b: HermitianObservable,
    *,
    tol: Tolerances = DEFAULT_TOL,
) -> SchroedingerReport:
    space = OutcomeSpace(("t0", "t1"), (0.0, 1.0))
    p0 = ProbabilityDistribution(space, [0.5, 0.5], tol=tol)
    ctx = LocalContext(trivial_measurement(p0, rho.dim, tol=tol), rho, tol=tol)
    report = evaluate_relation(ctx, a, b, tol=tol)
    sigma_a = std_dev_q(a, rho, tol=tol)
    sigma_b = std_dev_q(b, rho, tol=tol)
    covariance = state_inner(a, b, rho, tol=tol) - expectation(a, rho, tol=tol) * expectation(
        b, rho, tol=tol
    )
    commutator = commutator_expectation(a, b, rho, tol=tol)
    return SchroedingerReport(
        sigma_a=sigma_a,
        sigma_b=sigma_b,
        product=sigma_a * sigma_b,
        bound=float(np.hypot(covariance, commutator)),
        kr_bound=abs(commutator),
        covariance=covariance,
        commutator=commutator,
        eps_sigma_residual_a=abs(report.eps_a - sigma_a),
        eps_sigma_residual_b=abs(report.eps_b - sigma_b),
    )
