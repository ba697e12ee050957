"""The two-parameter family of 2 x n states and its relatives.

A family member is

    alpha * sum_{i in {0,1}, j >= 2} |ij><ij|
    + beta * (|phi+><phi+| + |phi-><phi-| + |psi+><psi+|)
    + gamma * |psi-><psi-|

with ``beta`` fixed by unit trace: ``2 (n - 2) alpha + 3 beta + gamma = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PARAM_SLACK = 1e-12


def _ket(d: int, *indices: int, signs=None) -> np.ndarray:
    """Unnormalized sum of basis kets with +-1 coefficients."""
    v = np.zeros(d, dtype=complex)
    signs = signs or (1,) * len(indices)
    for idx, sgn in zip(indices, signs):
        v[idx] += sgn
    return v


def _half_projector(u: np.ndarray) -> np.ndarray:
    # |u><u| / 2 for a +-1 vector u of norm sqrt(2); every entry is exact in floating point
    return 0.5 * np.outer(u, u.conj())


def _diag_projector(d: int, indices) -> np.ndarray:
    P = np.zeros((d, d), dtype=complex)
    idx = list(indices)
    P[idx, idx] = 1.0
    return P


@dataclass(frozen=True)
class TwoParamState:
    """A member ``(n, alpha, gamma)`` of the family; ``beta`` is derived."""

    n: int
    alpha: float
    gamma: float

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 3:
            raise ValueError(f"n must be an integer >= 3, got {self.n!r}")
        a, g, b = self.alpha, self.gamma, self.beta
        amax = 1.0 / (2 * (self.n - 2))
        if not (-PARAM_SLACK <= a <= amax + PARAM_SLACK):
            raise ValueError(f"alpha={a!r} outside [0, {amax}]")
        if not (-PARAM_SLACK <= g <= 1.0 + PARAM_SLACK):
            raise ValueError(f"gamma={g!r} outside [0, 1]")
        if b < -PARAM_SLACK:
            raise ValueError(
                f"(alpha, gamma)=({a!r}, {g!r}) gives beta={b!r} < 0; need 2(n-2)alpha + gamma <= 1"
            )

    @property
    def beta(self) -> float:
        return (1.0 - 2 * (self.n - 2) * self.alpha - self.gamma) / 3.0

    @property
    def s(self) -> float:
        """``(n - 2) alpha + gamma``; 1/2 separates the PPT and NPT regions."""
        return (self.n - 2) * self.alpha + self.gamma

    def density_matrix(self) -> np.ndarray:
        return build_two_param_state(self.n, self.alpha, self.gamma)


@dataclass(frozen=True)
class HigherDimParams:
    """Parameters of the m x n generalization; ``beta`` solves the trace condition."""

    m: int
    n: int
    alpha: float
    gamma: float

    def __post_init__(self):
        if self.m < 2 or self.n <= self.m:
            raise ValueError(f"need 2 <= m < n, got m={self.m!r}, n={self.n!r}")
        if self.alpha < -PARAM_SLACK or self.gamma < -PARAM_SLACK:
            raise ValueError("alpha and gamma must be non-negative")
        if self.beta < -PARAM_SLACK:
            raise ValueError(f"parameters give beta={self.beta!r} < 0")

    @property
    def beta(self) -> float:
        m, n = self.m, self.n
        return (1.0 - m * (n - m) * self.alpha - m * (m - 1) / 2 * self.gamma) / (m * (m + 1) / 2)


def bell_vectors(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """``(phi+, phi-, psi+, psi-)`` as unit vectors in the 2n-dimensional space."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n!r}")
    d = 2 * n
    i00, i01, i10, i11 = 0, 1, n, n + 1
    r = 1.0 / np.sqrt(2.0)
    return (
        r * _ket(d, i00, i11),
        r * _ket(d, i00, i11, signs=(1, -1)),
        r * _ket(d, i01, i10),
        r * _ket(d, i01, i10, signs=(1, -1)),
    )


def _bell_projectors(n: int):
    d = 2 * n
    i00, i01, i10, i11 = 0, 1, n, n + 1
    return (
        _half_projector(_ket(d, i00, i11)),
        _half_projector(_ket(d, i00, i11, signs=(1, -1))),
        _half_projector(_ket(d, i01, i10)),
        _half_projector(_ket(d, i01, i10, signs=(1, -1))),
    )


def alpha_sector_projector(n: int) -> np.ndarray:
    """Projector onto span{|ij> : i in {0, 1}, j >= 2}."""
    return _diag_projector(2 * n, [i * n + j for i in range(2) for j in range(2, n)])


def singlet_projector(n: int) -> np.ndarray:
    return _bell_projectors(n)[3]


def build_two_param_state(n: int, alpha: float, gamma: float) -> np.ndarray:
    """Density matrix of the family member ``(alpha, gamma)`` in 2 x n.

    Raises ``ValueError`` outside the admissible region, which includes the
    positivity requirement ``2 (n - 2) alpha + gamma <= 1``.
    """
    beta = TwoParamState(n, alpha, gamma).beta
    phi_p, phi_m, psi_p, psi_m = _bell_projectors(n)
    return alpha * alpha_sector_projector(n) + beta * (phi_p + phi_m + psi_p) + gamma * psi_m


def build_werner_line(gamma: float) -> np.ndarray:
    """Two-qubit Werner state ``(1-g)/3 (1 - |psi-><psi-|) + g |psi-><psi-|``."""
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma={gamma!r} outside [0, 1]")
    phi_p, phi_m, psi_p, psi_m = _bell_projectors(2)
    return (1.0 - gamma) / 3.0 * (phi_p + phi_m + psi_p) + gamma * psi_m


def build_varrho(n: int, gamma: float) -> np.ndarray:
    """The beta = 0 edge of the family, written in its eigenbasis.

    ``(1 - gamma) / (2 (n - 2))`` on each of the 2(n-2) product kets ``|ij>``,
    ``j >= 2``, plus ``gamma`` on the singlet. Rank is 2n - 3 for 0 < gamma < 1.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n!r}")
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma={gamma!r} outside [0, 1]")
    alpha = (1.0 - gamma) / (2 * (n - 2))
    return alpha * alpha_sector_projector(n) + gamma * singlet_projector(n)


def build_higher_dim_state(p: HigherDimParams) -> np.ndarray:
    m, n = p.m, p.n
    d = m * n
    cross = _diag_projector(d, [i * n + j for i in range(m) for j in range(m, n)])
    sym = np.zeros((d, d), dtype=complex)
    anti = np.zeros((d, d), dtype=complex)
    for i in range(m):
        for j in range(i + 1, m):
            sym += _half_projector(_ket(d, i * n + j, j * n + i))
            anti += _half_projector(_ket(d, i * n + j, j * n + i, signs=(1, -1)))
    diag = _diag_projector(d, [k * n + k for k in range(m)])
    return p.alpha * cross + p.beta * (sym + diag) + p.gamma * anti


def extract_parameters(rho, n: int) -> tuple[float, float]:
    """``(alpha, gamma)`` that the twirl assigns to ``rho``.

    alpha is the alpha-sector weight spread over its 2(n-2) kets, gamma the
    singlet fidelity ``<psi-|rho|psi->``.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n!r}")
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2 * n, 2 * n):
        raise ValueError(f"expected a {2 * n}x{2 * n} matrix for n={n}, got shape {rho.shape}")
    diag = rho.diagonal().real
    alpha = sum(diag[i * n + j] for i in range(2) for j in range(2, n)) / (2 * n - 4)
    psi_m = bell_vectors(n)[3]
    gamma = float(np.real(psi_m.conj() @ rho @ psi_m))
    return float(alpha), gamma


def class_residual(rho, n: int) -> float:
    """Max entrywise distance from ``rho`` to the family member with its own parameters."""
    rho = np.asarray(rho, dtype=complex)
    alpha, gamma = extract_parameters(rho, n)
    target = build_two_param_state(n, alpha, gamma)
    return float(np.max(np.abs(rho - target)))
