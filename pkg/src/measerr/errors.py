"""Measurement error functionals and the errorless characterization.

The error of a measurement for an observable is the seminorm contraction its
pushforward induces; choosing an explicit estimator f instead gives the
f-error, whose square splits exactly into the squared error plus the squared
classical distance between f and the pushforward.  The pushforward is
therefore the optimal estimator, and the error the minimum over f-errors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .states import (
    HermitianObservable,
    OutcomeFunction,
    class_norm,
    state_norm,
)
from .transport import LocalContext, pullback_rep, pushforward, support_restrict
from .tolerances import DEFAULT_TOL, Tolerances


def quantum_error(ctx: LocalContext, a: HermitianObservable, *, tol: Tolerances = DEFAULT_TOL) -> float:
    """sqrt(||A||_rho^2 - ||pushforward(A)||_p^2), the contraction amount.

    The radicand is clipped at zero if it is only roundoff-negative; a value
    below -tol.psd means contractivity failed and indicates a bug, so it
    raises instead of being hidden.
    """
    if a.dim != ctx.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {ctx.dim}")
    radicand = state_norm(a, ctx.rho, tol=tol) ** 2 - class_norm(pushforward(ctx, a), ctx.prob) ** 2
    if radicand < -tol.psd:
        raise RuntimeError(f"contractivity violated: radicand {radicand:.3e}")
    return float(np.sqrt(max(radicand, 0.0)))


@dataclass(frozen=True)
class ErrorBreakdown:
    """f-error split into the intrinsic and the estimator-dependent parts:
    f_error^2 = quantum_error^2 + estimation_error^2."""

    quantum_error: float
    estimation_error: float
    f_error: float
    estimator: OutcomeFunction = field(repr=False)

    def __post_init__(self):
        residual = abs(self.f_error**2 - self.quantum_error**2 - self.estimation_error**2)
        if residual > DEFAULT_TOL.identity * (1.0 + self.f_error**2):
            raise AssertionError(f"error decomposition violated by {residual:.3e}")


def f_error(
    ctx: LocalContext,
    a: HermitianObservable,
    f: OutcomeFunction,
    *,
    tol: Tolerances = DEFAULT_TOL,
) -> ErrorBreakdown:
    """Reconstruction gauge for the estimator f:
    sqrt(||A - pullback(f)||_rho^2 + (||f||_p^2 - ||pullback(f)||_rho^2))."""
    if f.space != ctx.space:
        raise ValueError("outcome spaces do not match")
    rep = pullback_rep(ctx, f)
    algebraic = state_norm(a - rep, ctx.rho, tol=tol) ** 2
    cost = class_norm(f, ctx.prob) ** 2 - state_norm(rep, ctx.rho, tol=tol) ** 2
    if cost < -tol.psd:
        raise RuntimeError(f"contractivity violated: reconstruction cost {cost:.3e}")
    total = float(np.sqrt(max(algebraic + cost, 0.0)))
    optimal = pushforward(ctx, a)
    return ErrorBreakdown(
        quantum_error=quantum_error(ctx, a, tol=tol),
        estimation_error=class_norm(optimal - f, ctx.prob),
        f_error=total,
        estimator=f,
    )


@dataclass(frozen=True)
class MinimalityReport:
    """Worst deviations found while perturbing around the optimal estimator.

    ``worst_shortfall`` is max(quantum_error - f_error) over the trials
    (should never exceed roundoff); ``worst_quadratic_residual`` is the worst
    violation of the exact excess law
    f_error(f_opt + t*delta)^2 - quantum_error^2 = t^2 ||delta||_p^2.
    """

    trials: int
    worst_shortfall: float
    worst_quadratic_residual: float


def verify_minimality(
    ctx: LocalContext,
    a: HermitianObservable,
    trials: int,
    rng: np.random.Generator,
    *,
    tol: Tolerances = DEFAULT_TOL,
) -> MinimalityReport:
    """Check that no perturbed estimator beats the pushforward, and that the
    excess follows the exact quadratic law."""
    if trials < 1:
        raise ValueError("need at least one trial")
    optimal = pushforward(ctx, a)
    base = quantum_error(ctx, a, tol=tol)
    worst_short = 0.0
    worst_quad = 0.0
    for _ in range(trials):
        delta = OutcomeFunction(ctx.space, rng.uniform(-1.0, 1.0, ctx.space.size))
        scale = float(rng.uniform(0.1, 2.0))
        delta = scale * delta
        t = float(rng.uniform(-1.0, 1.0))
        breakdown = f_error(ctx, a, optimal + delta, tol=tol)
        worst_short = max(worst_short, base - breakdown.f_error)
        scaled = f_error(ctx, a, optimal + t * delta, tol=tol)
        excess = scaled.f_error**2 - base**2
        expected = t * t * class_norm(support_restrict(ctx, delta), ctx.prob) ** 2
        # off-support delta components carry zero weight either way
        worst_quad = max(worst_quad, abs(excess - expected))
    return MinimalityReport(trials=trials, worst_shortfall=worst_short, worst_quadratic_residual=worst_quad)


@dataclass(frozen=True)
class ErrorlessConditions:
    """The three equivalent faces of an errorless measurement of A over rho:
    (a) zero error, (b) the round trip reproduces A as an equivalence class,
    (c) the transport norm chain is flat."""

    cond_a: bool
    cond_b: bool
    cond_c: bool
    error: float
    roundtrip_residual: float
    scale: float


def errorless_check(
    ctx: LocalContext, a: HermitianObservable, *, tol: Tolerances = DEFAULT_TOL
) -> ErrorlessConditions:
    scale = state_norm(a, ctx.rho, tol=tol)
    threshold = tol.errorless * scale
    err = quantum_error(ctx, a, tol=tol)
    fwd = pushforward(ctx, a)
    back = pullback_rep(ctx, fwd)
    residual = state_norm(a - back, ctx.rho, tol=tol)
    norm_fwd = class_norm(fwd, ctx.prob)
    norm_back = state_norm(back, ctx.rho, tol=tol)
    return ErrorlessConditions(
        cond_a=err <= threshold,
        cond_b=residual <= threshold,
        cond_c=(scale - norm_fwd) <= threshold and (scale - norm_back) <= threshold,
        error=err,
        roundtrip_residual=residual,
        scale=scale,
    )
