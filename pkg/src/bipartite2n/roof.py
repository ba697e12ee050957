"""Numerical convex-roof search for the entanglement of formation.

Every pure-state ensemble of ``rho`` with ``K`` members comes from a ``K x K``
unitary ``U`` acting on the scaled eigenvectors ``sqrt(l_i) |e_i>``:
``sqrt(p_k) |phi_k> = sum_i U[k, i] sqrt(l_i) |e_i>``. The search minimizes the
ensemble-average entanglement over ``U``. Any ``U`` gives an upper bound on E_f.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize

from .linalg import as_dims, check_density_matrix, hermitian_eig, partial_trace_B, von_neumann_entropy
from .twirl import haar_unitary

RANK_TOL = 1e-10


@dataclass(frozen=True)
class ConvexRoofConfig:
    K: int
    restarts: int = 20
    max_iterations: int = 200
    step_tolerance: float = 1e-6
    rng_seed: int = 0


@dataclass(frozen=True)
class RoofResult:
    estimate: float
    iterations: int
    unitary: np.ndarray


def _ensemble_entropy(psi: np.ndarray, dA: int, dB: int) -> float:
    """Sum over rows of ``p_k E(phi_k)`` for unnormalized kets ``psi[k] = sqrt(p_k) phi_k``."""
    X = psi.reshape(-1, dA, dB)
    M = X @ X.conj().transpose(0, 2, 1)
    p = np.einsum("kii->k", M).real
    keep = p > 1e-300
    M, p = M[keep], p[keep]
    if dA == 2:
        det = (M[:, 0, 0] * M[:, 1, 1] - M[:, 0, 1] * M[:, 1, 0]).real
        disc = np.sqrt(np.maximum(p * p / 4 - det, 0.0))
        lam = np.stack([p / 2 + disc, p / 2 - disc], axis=1)
    else:
        lam = np.linalg.eigvalsh(M)
    lam = np.clip(lam, 0.0, None)
    q = lam / p[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(q > 0, q * np.log2(q), 0.0)
    return float(-np.sum(p * terms.sum(axis=1)))


def _hermitian_from_params(x: np.ndarray, K: int) -> np.ndarray:
    H = np.zeros((K, K), dtype=complex)
    iu = np.triu_indices(K, 1)
    m = len(iu[0])
    H[np.diag_indices(K)] = x[:K]
    H[iu] = x[K:K + m] + 1j * x[K + m:]
    return H + np.triu(H, 1).conj().T


def optimize_convex_roof(rho, cfg: ConvexRoofConfig, dims=None) -> RoofResult:
    """Best ensemble found over ``cfg.restarts`` Haar-random starting unitaries.

    Each restart alternates a quasi-Newton local search in the exponential chart
    ``U exp(iH)`` around the current ``U`` with re-centering, and stops once a
    full pass improves the objective by less than ``cfg.step_tolerance``.
    """
    rho = np.asarray(rho, dtype=complex)
    if dims is None:
        dims = (2, rho.shape[0] // 2)
    dA, dB = as_dims(dims, rho.shape[0])
    rho = check_density_matrix(rho)
    eig = hermitian_eig(rho)
    keep = eig.eigenvalues > RANK_TOL
    rank = int(keep.sum())
    K = cfg.K
    if K < rank:
        raise ValueError(f"K={K} is below the rank {rank} of the state")
    if cfg.restarts < 1:
        raise ValueError("restarts must be >= 1")
    scaled = (eig.eigenvectors[:, keep] * np.sqrt(eig.eigenvalues[keep])).T  # rank x d

    def objective(U):
        return _ensemble_entropy(U[:, :rank] @ scaled, dA, dB)

    rng = np.random.default_rng(cfg.rng_seed)
    nparam = K * K
    best = None
    total_iter = 0
    for _ in range(cfg.restarts):
        U = haar_unitary(K, rng)
        f = objective(U)
        for _ in range(cfg.max_iterations):
            if K == 1:
                break

            def local(x, U0=U):
                return objective(U0 @ expm(1j * _hermitian_from_params(x, K)))

            res = minimize(local, np.zeros(nparam), method="BFGS", options={"gtol": 1e-10})
            total_iter += 1
            f_new = float(res.fun)
            if f_new < f:
                U = U @ expm(1j * _hermitian_from_params(res.x, K))
            improved = f - f_new
            f = min(f, f_new)
            if improved < cfg.step_tolerance:
                break
        if best is None or f < best[0]:
            best = (f, U)
    return RoofResult(estimate=best[0], iterations=total_iter, unitary=best[1])


def convex_roof_estimate(rho, cfg: ConvexRoofConfig, dims=None) -> float:
    """Upper estimate of the entanglement of formation (bits)."""
    return optimize_convex_roof(rho, cfg, dims).estimate


def pure_state_entanglement(psi, dims) -> float:
    """Entropy of the A-side reduced state of a normalized ket."""
    psi = np.asarray(psi, dtype=complex).ravel()
    dims = as_dims(dims, psi.size)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"state vector has norm {norm!r}")
    return von_neumann_entropy(partial_trace_B(np.outer(psi, psi.conj()), dims))
