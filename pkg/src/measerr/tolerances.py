"""Single configurable set of numerical tolerance constants.

Policy: construction-time validation is absolute and tight (1e-12 scale),
derived identities and inequality slacks are checked at 1e-9 relative to the
magnitudes involved.  Every function that checks something takes a
``Tolerances`` so a whole run can be tightened or loosened in one place.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    validation: float = 1e-12       # construction residuals (hermiticity, trace-one)
    psd: float = 1e-10              # how negative an eigenvalue may drift before rejection
    prob_sum: float = 1e-10         # distribution normalization residual
    identity: float = 1e-9          # derived identities and inequality slack
    expectation: float = 1e-10      # adjoint / expectation-preservation identities
    eig_merge: float = 1e-8         # eigenvalue clustering threshold, scaled by max |eig|
    errorless: float = 1e-7         # errorless-condition threshold, scaled by the state norm;
                                    # must sit above sqrt(machine eps) because a vanishing error
                                    # is the square root of an O(norm^2) cancellation
    support_cutoff: float = 1e-12   # outcome weights at or below this are off-support
    tiny_support: float = 1e-8      # weights below this draw a conditioning warning


DEFAULT_TOL = Tolerances()
