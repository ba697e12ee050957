"""LOCC twirl onto the two-parameter family, exact and Haar-sampled.

A unitary ``U`` on the n-dimensional system B that keeps span{|0>, |1>} and its
complement invariant acts on the qubit A through its leading 2x2 block, so
"bilateral U" means ``U[:2, :2] (x) U``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import HERMITIAN_TOL, check_density_matrix, is_unitary, tensor_product
from .states import class_residual, extract_parameters

PROB_TOL = 1e-14


@dataclass(frozen=True)
class LocalUnitary:
    """Block-diagonal unitary on C^n: ``block_a`` on the first two levels, ``block_b`` on the rest."""

    block_a: np.ndarray
    block_b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.block_a, dtype=complex)
        b = np.asarray(self.block_b, dtype=complex)
        if a.shape != (2, 2):
            raise ValueError(f"block_a must be 2x2, got {a.shape}")
        if b.ndim != 2 or b.shape[0] != b.shape[1] or b.shape[0] < 1:
            raise ValueError(f"block_b must be square and non-empty, got {b.shape}")
        if not (is_unitary(a) and is_unitary(b)):
            raise ValueError("blocks must be unitary within 1e-12")
        object.__setattr__(self, "block_a", a)
        object.__setattr__(self, "block_b", b)

    @property
    def n(self) -> int:
        return 2 + self.block_b.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        n = self.n
        U = np.zeros((n, n), dtype=complex)
        U[:2, :2] = self.block_a
        U[2:, 2:] = self.block_b
        return U

    @classmethod
    def from_matrix(cls, U) -> "LocalUnitary":
        U = np.asarray(U, dtype=complex)
        _check_block_preserving(U)
        return cls(U[:2, :2], U[2:, 2:])


@dataclass(frozen=True)
class MixtureStep:
    """One protocol step: apply ``U_k (x) U_k`` with probability ``p_k``."""

    label: str
    branches: tuple[tuple[float, np.ndarray], ...]

    def __post_init__(self):
        probs = [p for p, _ in self.branches]
        if any(p < 0 or p > 1 for p in probs) or abs(sum(probs) - 1.0) > PROB_TOL:
            raise ValueError(f"{self.label}: branch probabilities {probs} do not form a distribution")
        for _, U in self.branches:
            if not is_unitary(U):
                raise ValueError(f"{self.label}: branch operator is not unitary")

    def apply(self, rho) -> np.ndarray:
        rho = np.asarray(rho, dtype=complex)
        out = np.zeros_like(rho)
        for p, U in self.branches:
            W = bilateral_operator(U)
            out += p * (W @ rho @ W.conj().T)
        return out


def _check_block_preserving(U: np.ndarray, tol: float = HERMITIAN_TOL) -> None:
    if U.ndim != 2 or U.shape[0] != U.shape[1] or U.shape[0] < 3:
        raise ValueError(f"expected an n x n unitary with n >= 3, got shape {U.shape}")
    if not is_unitary(U, tol):
        raise ValueError("operator is not unitary within 1e-12")
    leak = max(np.max(np.abs(U[:2, 2:])), np.max(np.abs(U[2:, :2])))
    if leak > tol:
        raise ValueError(f"operator mixes span{{|0>,|1>}} with its complement (leak {leak:.3e})")


def bilateral_operator(U) -> np.ndarray:
    """``U[:2, :2] (x) U`` on the 2n-dimensional space."""
    U = np.asarray(U, dtype=complex)
    _check_block_preserving(U)
    return tensor_product(U[:2, :2], U)


def u_theta(n: int, theta: float) -> np.ndarray:
    return np.diag(np.exp(1j * theta * np.arange(n)))


def u_flip_k(n: int, k: int) -> np.ndarray:
    if not 2 <= k <= n - 1:
        raise ValueError(f"k={k!r} outside [2, {n - 1}]")
    d = np.ones(n, dtype=complex)
    d[k] = -1.0
    return np.diag(d)


def u_swap01(n: int) -> np.ndarray:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n!r}")
    P = np.eye(n, dtype=complex)
    P[[0, 1]] = P[[1, 0]]
    return P


def u_cycle_T(n: int) -> np.ndarray:
    """Fix |0>, |1> and send |j> to |j+1> cyclically on |2>, ..., |n-1>."""
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n!r}")
    T = np.zeros((n, n), dtype=complex)
    T[0, 0] = T[1, 1] = 1.0
    for j in range(2, n):
        T[2 + (j - 1) % (n - 2), j] = 1.0
    return T


def u_hadamard_H(n: int) -> np.ndarray:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n!r}")
    H = np.eye(n, dtype=complex)
    H[:2, :2] = np.array([[1, 1], [1, -1]]) / np.sqrt(2.0)
    return H


def apply_bilateral(rho, U) -> np.ndarray:
    """``(U_A (x) U) rho (U_A (x) U)^dagger`` with ``U_A = U[:2, :2]``."""
    W = bilateral_operator(U)
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != W.shape:
        raise ValueError(f"state shape {rho.shape} does not match operator shape {W.shape}")
    return W @ rho @ W.conj().T


def _coin(label: str, U: np.ndarray, n: int) -> MixtureStep:
    return MixtureStep(label, ((0.5, U), (0.5, np.eye(n, dtype=complex))))


def protocol_steps(n: int) -> list[MixtureStep]:
    """The full step list, ending with a second pass of the dephasing steps.

    Order: coin-flip ``U_pi``; coin-flip ``U_k`` for k = 2..n-1; coin-flip
    ``U_{pi/2}``; coin-flip the 0 <-> 1 swap; uniform average over the tail
    cycles ``T^j``; ``H`` with weight 2/3; then all steps before ``H`` again.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n!r}")
    T = u_cycle_T(n)
    dephase = [_coin("U_pi", u_theta(n, np.pi), n)]
    dephase += [_coin(f"U_{k}", u_flip_k(n, k), n) for k in range(2, n)]
    dephase += [
        _coin("U_pi/2", u_theta(n, np.pi / 2), n),
        _coin("U_01", u_swap01(n), n),
        MixtureStep(
            "T_avg",
            tuple((1.0 / (n - 2), np.linalg.matrix_power(T, j)) for j in range(n - 2)),
        ),
    ]
    hadamard = MixtureStep("H", ((2.0 / 3.0, u_hadamard_H(n)), (1.0 / 3.0, np.eye(n, dtype=complex))))
    return dephase + [hadamard] + dephase


def twirl_pipeline(rho, n: int) -> np.ndarray:
    """Run every protocol step as an exact channel (no sampling)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2 * n, 2 * n):
        raise ValueError(f"expected a {2 * n}x{2 * n} state for n={n}, got shape {rho.shape}")
    for step in protocol_steps(n):
        rho = step.apply(rho)
    return rho


def haar_unitary(d: int, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Haar-random ``d x d`` unitaries from QR of complex Ginibre matrices.

    The phases of ``R``'s diagonal are pushed into ``Q`` so the result is
    distributed by Haar measure rather than by the QR routine's sign convention.
    """
    shape = (d, d) if size is None else (size, d, d)
    Z = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    Q, R = np.linalg.qr(Z)
    diag = np.diagonal(R, axis1=-2, axis2=-1)
    ph = diag / np.abs(diag)
    return Q * ph[..., None, :]


def sample_g2n(n: int, rng_seed) -> LocalUnitary:
    """One Haar sample from G(2, n); ``rng_seed`` may be an int or a Generator."""
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n!r}")
    rng = np.random.default_rng(rng_seed)
    return LocalUnitary(haar_unitary(2, rng), haar_unitary(n - 2, rng))


def _bilateral_batch(n: int, samples: int, rng: np.random.Generator) -> np.ndarray:
    a = haar_unitary(2, rng, size=samples)
    b = haar_unitary(n - 2, rng, size=samples)
    U = np.zeros((samples, n, n), dtype=complex)
    U[:, :2, :2] = a
    U[:, 2:, 2:] = b
    return np.einsum("sij,skl->sikjl", a, U).reshape(samples, 2 * n, 2 * n)


def monte_carlo_twirl(rho, samples: int, rng_seed, batch: int = 4096) -> np.ndarray:
    """Sample mean of ``(U (x) U) rho (U (x) U)^dagger`` over Haar-random ``U`` in G(2, n)."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rho = np.asarray(rho, dtype=complex)
    n = rho.shape[0] // 2
    if rho.shape != (2 * n, 2 * n) or n < 3:
        raise ValueError(f"expected a 2n x 2n state with n >= 3, got shape {rho.shape}")
    rng = np.random.default_rng(rng_seed)
    acc = np.zeros_like(rho)
    done = 0
    while done < samples:
        k = min(batch, samples - done)
        W = _bilateral_batch(n, k, rng)
        acc += np.einsum("sij,jk,slk->il", W, rho, W.conj())
        done += k
    return acc / samples


def check_uu_invariance(rho, samples: int, rng_seed) -> float:
    """Largest entrywise change of ``rho`` under ``samples`` Haar draws from G(2, n)."""
    rho = np.asarray(rho, dtype=complex)
    n = rho.shape[0] // 2
    if rho.shape != (2 * n, 2 * n) or n < 3:
        raise ValueError(f"expected a 2n x 2n state with n >= 3, got shape {rho.shape}")
    rng = np.random.default_rng(rng_seed)
    W = _bilateral_batch(n, samples, rng)
    moved = np.einsum("sij,jk,slk->sil", W, rho, W.conj())
    return float(np.max(np.abs(moved - rho)))


def twirl_summary(rho, n: int) -> tuple[np.ndarray, float, float, float]:
    """Twirl ``rho`` and return ``(output, alpha, gamma, class_residual)``."""
    rho = check_density_matrix(rho, (2, n))
    out = twirl_pipeline(rho, n)
    alpha, gamma = extract_parameters(out, n)
    return out, alpha, gamma, class_residual(out, n)

