"""POVM measurements: the affine map from states to outcome distributions.

Every affine map from density operators to distributions over finitely many
outcomes is realized by a POVM, so this module's ``Povm`` is the concrete
carrier for all measurements handled by the package.  The adjoint sends
outcome functions back to operators.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .states import (
    DensityOperator,
    HermitianObservable,
    OutcomeFunction,
    OutcomeSpace,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    ProbabilityDistribution,
    _check_hermitian,
    _real_expectation,
    class_norm,
    spectral_decompose,
    state_norm,
)
from .tolerances import DEFAULT_TOL, Tolerances


class MeasurementKind(str, Enum):
    PROJECTIVE = "projective"
    TRIVIAL = "trivial"
    UNSHARP = "unsharp"
    NOISY_PROJECTIVE = "noisy-projective"
    INDUCED = "induced-from-indirect"
    CUSTOM = "custom"


class Povm:
    """Finite-outcome measurement: one positive effect per label, summing to I.

    Validation is eager: positivity and completeness are checked here once,
    and every other operation assumes a valid instance.
    """

    def __init__(
        self,
        space: OutcomeSpace,
        effects,
        *,
        kind: MeasurementKind = MeasurementKind.CUSTOM,
        tol: Tolerances = DEFAULT_TOL,
    ):
        mats = []
        for eff in effects:
            arr = eff.matrix if isinstance(eff, HermitianObservable) else np.array(eff, dtype=complex)
            arr = np.array(arr, dtype=complex)
            _check_hermitian(arr, tol, "effect")
            arr.setflags(write=False)
            mats.append(arr)
        if len(mats) != space.size:
            raise ValueError("need exactly one effect per outcome label")
        dim = mats[0].shape[0]
        if any(m.shape != (dim, dim) for m in mats):
            raise ValueError("effects must share one dimension")
        for m in mats:
            smallest = float(np.linalg.eigvalsh(m)[0])
            if smallest < -tol.psd:
                raise ValueError(f"effect has eigenvalue {smallest:.3e}, not PSD")
        total = sum(mats)
        residual = float(np.max(np.abs(total - np.eye(dim))))
        if residual > tol.identity:
            raise ValueError(f"effects sum to identity only within {residual:.3e}")
        self.space = space
        self.effects = tuple(mats)
        self.kind = kind

    @property
    def dim(self) -> int:
        return self.effects[0].shape[0]

    def effect(self, label: str) -> np.ndarray:
        return self.effects[self.space.index(label)]

    def apply(self, rho: DensityOperator, *, tol: Tolerances = DEFAULT_TOL) -> ProbabilityDistribution:
        """Born weights Tr[E_w rho]."""
        if rho.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {rho.dim}")
        weights = [_real_expectation(e, rho, tol) for e in self.effects]
        return ProbabilityDistribution(self.space, weights, tol=tol)

    def adjoint(self, f: OutcomeFunction, *, tol: Tolerances = DEFAULT_TOL) -> HermitianObservable:
        """Operator sum_w f(w) E_w; satisfies <adjoint(f)>_rho = <f>_{apply(rho)}."""
        if f.space != self.space:
            raise ValueError("outcome spaces do not match")
        total = sum(val * eff for val, eff in zip(f.values, self.effects))
        return HermitianObservable(total, tol=tol)

    def __repr__(self) -> str:
        return f"Povm(kind={self.kind.value!r}, dim={self.dim}, outcomes={self.space.size})"


def projective_from(a: HermitianObservable, *, tol: Tolerances = DEFAULT_TOL) -> Povm:
    """Projection measurement of an observable: outcomes are its (merged)
    eigenvalues, effects its spectral projectors."""
    decomp = spectral_decompose(a, tol=tol)
    space = OutcomeSpace.from_values([val for val, _ in decomp])
    return Povm(space, [proj.matrix for _, proj in decomp], kind=MeasurementKind.PROJECTIVE, tol=tol)


def trivial_measurement(p0: ProbabilityDistribution, dim: int, *, tol: Tolerances = DEFAULT_TOL) -> Povm:
    """Non-informative measurement: every state maps to the fixed p0."""
    eye = np.eye(dim, dtype=complex)
    effects = [w * eye for w in p0.weights]
    return Povm(p0.space, effects, kind=MeasurementKind.TRIVIAL, tol=tol)


def unsharp_qubit(axis, eta: float, *, tol: Tolerances = DEFAULT_TOL) -> Povm:
    """Two-outcome qubit family (I +- eta n.sigma)/2 along a unit axis n.

    eta = 1 recovers the projective measurement along the axis, eta = 0 the
    uniform trivial measurement.
    """
    n = np.asarray(axis, dtype=float).reshape(-1)
    if n.shape != (3,):
        raise ValueError("axis must be a 3-vector")
    if abs(np.linalg.norm(n) - 1.0) > 1e-9:
        raise ValueError("axis must be a unit vector")
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"sharpness must lie in [0, 1], got {eta}")
    pauli = n[0] * PAULI_X + n[1] * PAULI_Y + n[2] * PAULI_Z
    space = OutcomeSpace(("+", "-"), (1.0, -1.0))
    effects = [(np.eye(2) + eta * pauli) / 2.0, (np.eye(2) - eta * pauli) / 2.0]
    return Povm(space, effects, kind=MeasurementKind.UNSHARP, tol=tol)


def noisy_projective(a: HermitianObservable, lam: float, *, tol: Tolerances = DEFAULT_TOL) -> Povm:
    """Projective measurement of ``a`` mixed with uniform outcome noise:
    effects lam*E_w + (1-lam)*I/n, a path from projective (lam=1) to trivial
    uniform (lam=0)."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {lam}")
    base = projective_from(a, tol=tol)
    n = base.space.size
    eye = np.eye(base.dim, dtype=complex)
    effects = [lam * e + (1.0 - lam) * eye / n for e in base.effects]
    return Povm(base.space, effects, kind=MeasurementKind.NOISY_PROJECTIVE, tol=tol)


@dataclass(frozen=True)
class ContractivityReport:
    """Both sides of the classical-vs-quantum norm inequality plus the
    smallest eigenvalue of the operator gap M'(f^2) - (M'f)^2."""

    classical_norm: float
    adjoint_norm: float
    gap_min_eigenvalue: float


def contractivity_check(
    povm: Povm,
    f: OutcomeFunction,
    rho: DensityOperator,
    *,
    tol: Tolerances = DEFAULT_TOL,
) -> ContractivityReport:
    """Evaluate ||f||_p >= ||M'f||_rho and the positivity of the operator gap."""
    p = povm.apply(rho, tol=tol)
    adj = povm.adjoint(f, tol=tol)
    f_sq = OutcomeFunction(f.space, f.values**2)
    gap = povm.adjoint(f_sq, tol=tol).matrix - adj.matrix @ adj.matrix
    return ContractivityReport(
        classical_norm=class_norm(f, p),
        adjoint_norm=state_norm(adj, rho, tol=tol),
        gap_min_eigenvalue=float(np.linalg.eigvalsh(gap)[0]),
    )
