"""State-local transport of a measurement: pushforward and pullback.

Fixing a measurement and a state attaches a classical geometry at p = M(rho)
and a quantum one at rho.  The pullback carries outcome functions to
operators (the adjoint, descended to equivalence classes); the pushforward
carries observables to outcome functions and is its adjoint with respect to
the two inner products.  Both contract the respective seminorms.

Equivalence classes of functions are represented canonically: zero on every
outcome whose probability is at or below the support cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .measurement import Povm
from .states import (
    DensityOperator,
    HermitianObservable,
    OutcomeFunction,
    class_inner,
    class_norm,
    state_inner,
    state_norm,
)
from .tolerances import DEFAULT_TOL, Tolerances


class LocalContext:
    """A measurement pinned to a state, with the outcome distribution cached.

    ``support`` holds the labels with weight above the cutoff; ``tiny_support``
    flags the ones close enough to zero (at most ``tol.tiny_support``) that
    dividing by them is numerically delicate.
    """

    def __init__(self, povm: Povm, rho: DensityOperator, *, tol: Tolerances = DEFAULT_TOL):
        if povm.dim != rho.dim:
            raise ValueError(f"dimension mismatch: {povm.dim} vs {rho.dim}")
        self.povm = povm
        self.rho = rho
        self.tol = tol
        self.prob = povm.apply(rho, tol=tol)
        mask = self.prob.weights > tol.support_cutoff
        mask.setflags(write=False)
        self.support_mask = mask
        self.support = frozenset(
            lab for lab, keep in zip(povm.space.labels, mask) if keep
        )
        self.tiny_support = frozenset(
            lab
            for lab, keep, w in zip(povm.space.labels, mask, self.prob.weights)
            if keep and w <= tol.tiny_support
        )

    @property
    def dim(self) -> int:
        return self.povm.dim

    @property
    def space(self):
        return self.povm.space

    def __repr__(self) -> str:
        return f"LocalContext({self.povm!r}, dim={self.dim})"


def support_restrict(ctx: LocalContext, f: OutcomeFunction) -> OutcomeFunction:
    """Canonical representative of f's equivalence class: zero off the support."""
    return OutcomeFunction(ctx.space, np.where(ctx.support_mask, f.values, 0.0))


def pushforward(ctx: LocalContext, a: HermitianObservable) -> OutcomeFunction:
    """Outcome function <A, E_w>_rho / p(w) on the support, zero off it.

    This is the locally optimal estimator of the observable from measurement
    data; its expectation under p equals <A>_rho.
    """
    if a.dim != ctx.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {ctx.dim}")
    weights = ctx.prob.weights
    values = np.zeros(ctx.space.size)
    for i, effect in enumerate(ctx.povm.effects):
        if ctx.support_mask[i]:
            inner = state_inner(
                a, HermitianObservable(effect, tol=ctx.tol), ctx.rho, tol=ctx.tol
            )
            values[i] = inner / weights[i]
    return OutcomeFunction(ctx.space, values)


def pullback_rep(ctx: LocalContext, f: OutcomeFunction) -> HermitianObservable:
    """Operator representative of the pullback of f: the adjoint applied to
    the canonical (off-support-zeroed) representative, so equivalent
    functions map to identical operators."""
    if f.space != ctx.space:
        raise ValueError("outcome spaces do not match")
    return ctx.povm.adjoint(support_restrict(ctx, f), tol=ctx.tol)


def adjointness_residual(ctx: LocalContext, a: HermitianObservable, f: OutcomeFunction) -> float:
    """|<A, pullback(f)>_rho - <pushforward(A), f>_p|; zero up to roundoff."""
    lhs = state_inner(a, pullback_rep(ctx, f), ctx.rho, tol=ctx.tol)
    rhs = class_inner(pushforward(ctx, a), f, ctx.prob)
    return abs(lhs - rhs)


@dataclass(frozen=True)
class ContractionReport:
    """Norm chain under transport: state norm of A, classical norm of its
    pushforward, and state norm of the round trip (pullback of pushforward).
    The chain is non-increasing."""

    norm_state: float
    norm_pushforward: float
    norm_roundtrip: float
    tiny_support: tuple[str, ...]


def contraction_report(ctx: LocalContext, a: HermitianObservable) -> ContractionReport:
    fwd = pushforward(ctx, a)
    back = pullback_rep(ctx, fwd)
    return ContractionReport(
        norm_state=state_norm(a, ctx.rho, tol=ctx.tol),
        norm_pushforward=class_norm(fwd, ctx.prob),
        norm_roundtrip=state_norm(back, ctx.rho, tol=ctx.tol),
        tiny_support=tuple(sorted(ctx.tiny_support)),
    )
