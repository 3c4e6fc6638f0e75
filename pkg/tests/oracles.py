"""Independent brute-force routines used to freeze expected test values.

Everything in this module works on raw numpy arrays and deliberately avoids
the package's own code paths, so tests can cross-check results against a
second, dumber route (explicit summation, generic least-squares solves,
joint-system evaluation).
"""

from __future__ import annotations

import numpy as np

ID2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)

# Hand diagonalization of the qubit flip operator: eigenvectors (|0>+-|1>)/sqrt(2).
FLIP_PROJ_PLUS = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
FLIP_PROJ_MINUS = np.array([[0.5, -0.5], [-0.5, 0.5]], dtype=complex)


def trace_expectation(x, rho):
    """Tr[x rho] by explicit index summation."""
    x = np.asarray(x, dtype=complex)
    rho = np.asarray(rho, dtype=complex)
    total = 0j
    for i in range(x.shape[0]):
        for j in range(x.shape[1]):
            total += x[i, j] * rho[j, i]
    return total


def sym_inner(a, b, rho):
    """Symmetrized product expectation <{a,b}/2> over rho."""
    return trace_expectation((a @ b + b @ a) / 2.0, rho).real


def comm_over_2i(a, b, rho):
    """Commutator expectation <[a,b]/2i> over rho."""
    return (trace_expectation(a @ b - b @ a, rho) / 2j).real


def probabilities(effects, rho):
    """Born weights Tr[E rho] for a list of effect matrices."""
    return np.array([trace_expectation(e, rho).real for e in effects])


def pushforward_lstsq(effects, rho, a, cutoff=1e-12, probes=None, seed=0):
    """Pushforward values solved as a generic linear system.

    Uses random probe functions g and the adjointness requirement
    <a, M'g>_rho = sum_w f(w) g(w) p(w), solved by least squares.  This is
    an independent route to the same object the package computes by
    per-outcome division, and pins down the off-support convention (zero).
    """
    p = probabilities(effects, rho)
    support = p > cutoff
    n = len(effects)
    rng = np.random.default_rng(seed)
    probes = probes if probes is not None else 3 * n + 4
    rows, rhs = [], []
    for _ in range(probes):
        g = rng.uniform(-1.0, 1.0, n)
        adj = sum(gi * e for gi, e in zip(g, effects))
        rows.append((g * p)[support])
        rhs.append(sym_inner(a, adj, rho))
    sol, *_ = np.linalg.lstsq(np.array(rows), np.array(rhs), rcond=None)
    f = np.zeros(n)
    f[support] = sol
    return f


def quantum_error_brute(effects, rho, a, cutoff=1e-12):
    """Error of a measurement by direct summation of the defining formula:
    sqrt(<a^2>_rho - sum_w f(w)^2 p(w)) with f the per-outcome division."""
    p = probabilities(effects, rho)
    f = np.array(
        [
            sym_inner(a, e, rho) / pi if pi > cutoff else 0.0
            for e, pi in zip(effects, p)
        ]
    )
    norm_sq = trace_expectation(a @ a, rho).real
    return np.sqrt(max(norm_sq - float(np.sum(f * f * p)), 0.0))


def unsharp_eps_z(eta):
    """Error for Z under the sharpness-eta qubit family at the maximally
    mixed state; expected closed form sqrt(1 - eta^2)."""
    effects = [(ID2 + eta * SZ) / 2.0, (ID2 - eta * SZ) / 2.0]
    return quantum_error_brute(effects, ID2 / 2.0, SZ)


def joint_meter_distribution(rho, xi, u, meter_projs):
    """Outcome distribution computed on the joint system: evolve rho (x) xi
    with u, then read the meter projectors on the second factor."""
    ds = rho.shape[0]
    joint = u @ np.kron(rho, xi) @ u.conj().T
    return np.array(
        [trace_expectation(np.kron(np.eye(ds), pr), joint).real for pr in meter_projs]
    )


def ozawa_error_brute(rho, xi, u, meter, a):
    """Root-mean-square meter-vs-observable deviation on the joint system."""
    ds = a.shape[0]
    da = meter.shape[0]
    noise = u.conj().T @ np.kron(np.eye(ds), meter) @ u - np.kron(a, np.eye(da))
    val = trace_expectation(noise @ noise, np.kron(rho, xi)).real
    return np.sqrt(max(val, 0.0))
