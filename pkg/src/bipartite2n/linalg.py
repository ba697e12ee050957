"""Dense complex linear algebra on bipartite operators.

Basis convention shared by the whole package: the product ket ``|i j>`` of a
``dA x dB`` system sits at flat index ``i * dB + j``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

HERMITIAN_TOL = 1e-12
PSD_TOL = 1e-12
EQ_TOL = 1e-10

_JACOBI_REL_TOL = 1e-13
_JACOBI_MAX_SWEEPS = 60


class BipartiteDims(NamedTuple):
    dA: int
    dB: int

    @property
    def dim(self) -> int:
        return self.dA * self.dB


@dataclass(frozen=True)
class HermitianEigenDecomposition:
    """Eigenvalues in ascending order; eigenvectors as orthonormal columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.conj().T


def as_dims(dims, dim: int | None = None) -> BipartiteDims:
    dims = BipartiteDims(*dims)
    if dims.dA < 1 or dims.dB < 1:
        raise ValueError(f"subsystem dimensions must be positive, got {tuple(dims)}")
    if dim is not None and dims.dim != dim:
        raise ValueError(f"matrix dimension {dim} does not match dims {tuple(dims)}")
    return dims


def _square(A) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    return A


def hermiticity_error(A) -> float:
    A = np.asarray(A)
    return float(np.max(np.abs(A - A.conj().T))) if A.size else 0.0


def is_hermitian(A, tol: float = HERMITIAN_TOL) -> bool:
    return hermiticity_error(A) <= tol


def is_unitary(U, tol: float = HERMITIAN_TOL) -> bool:
    U = np.asarray(U)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        return False
    return float(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0])))) <= tol


def tensor_product(A, B) -> np.ndarray:
    """Kronecker product; row ``i * dimB + j`` carries ``|i>_A |j>_B``."""
    return np.kron(np.asarray(A, dtype=complex), np.asarray(B, dtype=complex))


def partial_transpose(rho, dims) -> np.ndarray:
    """Transpose the B factor: ``<ij|rho^TB|i'j'> = <ij'|rho|i'j>``."""
    rho = _square(rho)
    dA, dB = as_dims(dims, rho.shape[0])
    return rho.reshape(dA, dB, dA, dB).transpose(0, 3, 2, 1).reshape(dA * dB, dA * dB)


def partial_trace_B(rho, dims) -> np.ndarray:
    rho = _square(rho)
    dA, dB = as_dims(dims, rho.shape[0])
    return np.einsum("ijkj->ik", rho.reshape(dA, dB, dA, dB))


def _round_robin(d: int) -> list[tuple[np.ndarray, np.ndarray]]:
    # Circle-method schedule: every pair appears once per sweep, pairs within a
    # round are disjoint so their rotations commute and are applied together.
    m = d + (d % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for k in range(m // 2):
            a, b = players[k], players[m - 1 - k]
            if a < d and b < d:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def hermitian_eig(A, tol: float = HERMITIAN_TOL) -> HermitianEigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation zeroes one off-diagonal pair ``(p, q)``: a diagonal phase first
    makes ``A[p, q]`` real, then a real Givens rotation diagonalizes the 2x2 block.
    Sweeps continue until the off-diagonal Frobenius mass drops below
    ``1e-13 * ||A||_F``.

    Raises
    ------
    ValueError
        If ``A`` is not Hermitian within ``tol``.
    """
    A = _square(A)
    if not is_hermitian(A, tol):
        raise ValueError(f"matrix is not Hermitian (deviation {hermiticity_error(A):.3e})")
    d = A.shape[0]
    A = 0.5 * (A + A.conj().T)
    V = np.eye(d, dtype=complex)
    norm = np.linalg.norm(A)
    target = _JACOBI_REL_TOL * norm
    rounds = _round_robin(d)

    def off(M):
        return np.linalg.norm(M - np.diag(M.diagonal()))

    sweeps = 0
    while d > 1 and norm > 0 and off(A) >= target:
        if sweeps == _JACOBI_MAX_SWEEPS:
            raise RuntimeError("Jacobi iteration did not converge")
        sweeps += 1
        for p, q in rounds:
            b = A[p, q]
            mag = np.abs(b)
            active = mag > 0
            if not active.any():
                continue
            phase = np.where(active, b / np.where(active, mag, 1.0), 1.0)
            app = A[p, p].real
            aqq = A[q, q].real
            theta = 0.5 * np.arctan2(2.0 * mag, app - aqq)
            c, s = np.cos(theta), np.sin(theta)
            # columns (p, q) of J are the eigenvectors of the 2x2 block
            J = np.eye(d, dtype=complex)
            J[p, p] = c
            J[p, q] = -s
            J[q, p] = s * phase.conj()
            J[q, q] = c * phase.conj()
            A = J.conj().T @ A @ J
            A = 0.5 * (A + A.conj().T)
            V = V @ J
    w = A.diagonal().real.copy()
    order = np.argsort(w, kind="stable")
    return HermitianEigenDecomposition(w[order], V[:, order])


def eigvalsh(A) -> np.ndarray:
    return hermitian_eig(A).eigenvalues


def trace_norm(A) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(eigvalsh(A))))


def trace_distance(rho, sigma) -> float:
    return 0.5 * trace_norm(np.asarray(rho) - np.asarray(sigma))


def _xlog2x(p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    pos = p > 0
    out[pos] = p[pos] * np.log2(p[pos])
    return out


def von_neumann_entropy(rho) -> float:
    """Entropy in bits, ``-sum(l * log2(l))`` with ``0 log 0 = 0``.

    Eigenvalues in ``[-1e-12, 0)`` are clamped to zero; anything below ``-1e-9``
    or a trace off by more than ``1e-10`` is rejected.
    """
    rho = _square(rho)
    tr = np.trace(rho).real
    if abs(tr - 1.0) > EQ_TOL:
        raise ValueError(f"trace {tr!r} differs from 1")
    lam = eigvalsh(rho)
    if lam.min(initial=0.0) < -1e-9:
        raise ValueError(f"matrix has negative eigenvalue {lam.min():.3e}")
    lam = np.where(lam < 0, 0.0, lam)
    return float(-np.sum(_xlog2x(lam))) + 0.0


def binary_entropy(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability {p!r} outside [0, 1]")
    # + 0.0 folds -0.0 into 0.0 at the endpoints
    return float(-np.sum(_xlog2x(np.array([p, 1.0 - p])))) + 0.0


def check_density_matrix(rho, dims=None) -> np.ndarray:
    """Validate and return ``rho`` as a complex array.

    Checks Hermiticity (1e-12), unit trace (1e-10) and positivity (1e-12 slack).
    """
    rho = _square(rho)
    if dims is not None:
        as_dims(dims, rho.shape[0])
    if not is_hermitian(rho):
        raise ValueError(f"density matrix is not Hermitian (deviation {hermiticity_error(rho):.3e})")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > EQ_TOL:
        raise ValueError(f"density matrix has trace {tr!r}")
    lam_min = eigvalsh(rho)[0]
    if lam_min < -PSD_TOL:
        raise ValueError(f"density matrix has negative eigenvalue {lam_min:.3e}")
    return rho


def matrix_to_json(A) -> dict:
    A = _square(A)
    return {
        "dim": int(A.shape[0]),
        "entries": [[float(z.real), float(z.imag)] for z in A.ravel()],
    }


def matrix_from_json(obj) -> np.ndarray:
    """Parse ``{"dim": d, "entries": [[re, im], ...]}`` (row-major)."""
    if isinstance(obj, (str, bytes)):
        obj = json.loads(obj)
    try:
        d = obj["dim"]
        entries = obj["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError("matrix JSON needs 'dim' and 'entries'") from exc
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise ValueError(f"'dim' must be a positive integer, got {d!r}")
    if not isinstance(entries, list) or len(entries) != d * d:
        raise ValueError(f"'entries' must hold exactly {d * d} [re, im] pairs")
    try:
        arr = np.array(entries, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError("entries must be numeric [re, im] pairs") from exc
    if arr.shape != (d * d, 2):
        raise ValueError("entries must be numeric [re, im] pairs")
    return (arr[:, 0] + 1j * arr[:, 1]).reshape(d, d)
