"""Negativity, entanglement-of-formation bounds and region labels.

Negativity here is ``||rho^TB||_1 - 1`` (not halved), so a maximally entangled
2 x n pure state scores 1. All entropies are in bits.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass

import numpy as np

from .linalg import (
    EQ_TOL,
    PSD_TOL,
    as_dims,
    binary_entropy,
    check_density_matrix,
    hermitian_eig,
    partial_transpose,
    trace_norm,
)
from .roof import ConvexRoofConfig, convex_roof_estimate
from .states import TwoParamState, build_two_param_state, build_varrho, build_werner_line

REGION_TOL = 1e-12

_SIGMA_YY = np.fliplr(np.diag([-1.0, 1.0, 1.0, -1.0])).astype(complex)


class RegionLabel(str, enum.Enum):
    PPT_SEPARABLE = "PPT_SEPARABLE"
    NPT_ENTANGLED = "NPT_ENTANGLED"
    BOUNDARY = "BOUNDARY"


def negativity(rho, dims=None) -> float:
    rho = np.asarray(rho, dtype=complex)
    if dims is None:
        dims = (2, rho.shape[0] // 2)
    dims = as_dims(dims, rho.shape[0])
    return trace_norm(partial_transpose(rho, dims)) - 1.0


def _params(n, alpha, gamma) -> TwoParamState:
    return TwoParamState(n, alpha, gamma)


def negativity_closed_form(n: int, alpha: float, gamma: float) -> float:
    _params(n, alpha, gamma)
    return max((2 * n - 4) * alpha + 2 * gamma - 1.0, 0.0)


def classify_region(n: int, alpha: float, gamma: float) -> RegionLabel:
    s = _params(n, alpha, gamma).s
    if s < 0.5 - REGION_TOL:
        return RegionLabel.PPT_SEPARABLE
    if s > 0.5 + REGION_TOL:
        return RegionLabel.NPT_ENTANGLED
    return RegionLabel.BOUNDARY


def curly_E(c: float) -> float:
    """Two-qubit entanglement of formation as a function of concurrence."""
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"concurrence {c!r} outside [0, 1]")
    return binary_entropy((1.0 + np.sqrt(1.0 - c * c)) / 2.0)


def _singular_values(M) -> np.ndarray:
    """Singular values (descending) from the Hermitian dilation ``[[0, M], [M^H, 0]]``."""
    r = M.shape[0]
    D = np.zeros((2 * r, 2 * r), dtype=complex)
    D[:r, r:] = M
    D[r:, :r] = M.conj().T
    return hermitian_eig(D).eigenvalues[::-1][:r]


def concurrence_2x2(rho4) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    With ``rho = W W^dagger`` from the eigen-ensemble (eigenvalues above 1e-12),
    the spin-flip values are the singular values of ``W^T (sy x sy) W``. This
    avoids square roots of round-off eigenvalues for rank-deficient states.
    """
    rho4 = np.asarray(rho4, dtype=complex)
    if rho4.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho4.shape}")
    rho4 = check_density_matrix(rho4)
    e = hermitian_eig(rho4)
    keep = e.eigenvalues > PSD_TOL
    W = e.eigenvectors[:, keep] * np.sqrt(e.eigenvalues[keep])
    lam = np.zeros(4)
    lam[: W.shape[1]] = _singular_values(W.T @ _SIGMA_YY @ W)
    lam = np.sort(lam)[::-1]
    return float(min(max(lam[0] - lam[1] - lam[2] - lam[3], 0.0), 1.0))


def cllh_lower_bound(rho, n: int | None = None) -> float:
    """Lower bound on E_f from the concurrences of all 2x2 blocks ``{|0i>, |1i>, |0j>, |1j>}``.

    Each block is renormalized by its trace before the concurrence is taken and
    the result scaled back by the same trace; empty blocks contribute nothing.
    """
    rho = np.asarray(rho, dtype=complex)
    if n is None:
        n = rho.shape[0] // 2
    as_dims((2, n), rho.shape[0])
    total = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            idx = [i, j, n + i, n + j]
            block = rho[np.ix_(idx, idx)]
            w = np.trace(block).real
            if w <= 1e-14:
                continue
            c = w * concurrence_2x2(block / w)
            total += c * c
    return curly_E(min(np.sqrt(total), 1.0))


def eof_lower_bound(n: int, alpha: float, gamma: float) -> float:
    return curly_E(negativity_closed_form(n, alpha, gamma))


def eof_upper_bound(n: int, alpha: float, gamma: float) -> float:
    """Convexity upper bound on E_f, defined for ``(n-2) alpha + gamma >= 1/2``.

    Mixes the Werner-line point ``(0, s)`` with the beta = 0 edge point
    ``((1-s)/(n-2), 2s-1)`` at weight ``t = (n-2) alpha / (1 - s)``.
    """
    p = _params(n, alpha, gamma)
    if classify_region(n, alpha, gamma) is RegionLabel.PPT_SEPARABLE:
        raise ValueError(f"upper bound undefined in the PPT region (s={p.s!r})")
    N = negativity_closed_form(n, alpha, gamma)
    e = curly_E(N)
    if alpha == 0:
        return e
    t = (n - 2) * alpha / (1.0 - p.s)
    return e + t * (N - e)


def eof_exact_varrho(gamma: float) -> float:
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma={gamma!r} outside [0, 1]")
    return float(gamma)


def eof_exact_werner(gamma: float) -> float:
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma={gamma!r} outside [0, 1]")
    if gamma <= 0.5:
        return 0.0
    return binary_entropy(0.5 + np.sqrt(gamma * (1.0 - gamma)))


@dataclass(frozen=True)
class EntanglementReport:
    n: int
    alpha: float
    gamma: float
    negativity_spectral: float | None
    negativity_closed: float
    negativity_halved: float
    eof_lower: float
    eof_upper: float
    eof_exact: float | None
    region: RegionLabel
    roof_estimate: float | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["region"] = self.region.value
        return d

    def check(self, tol: float = EQ_TOL) -> None:
        """Raise ``AssertionError`` if the report is internally inconsistent."""
        if self.negativity_spectral is not None:
            assert abs(self.negativity_spectral - self.negativity_closed) <= tol, "negativity mismatch"
        assert self.eof_lower <= self.eof_upper + tol, "lower bound exceeds upper bound"
        assert self.eof_upper <= self.negativity_closed + tol, "upper bound exceeds negativity"
        if self.eof_exact is not None:
            assert self.eof_lower - tol <= self.eof_exact <= self.eof_upper + tol, "exact value outside bounds"
        if self.roof_estimate is not None:
            assert self.roof_estimate >= self.eof_lower - 1e-6, "roof estimate below lower bound"


def _on_varrho_line(n, alpha, gamma) -> bool:
    return abs(2 * (n - 2) * alpha + gamma - 1.0) <= REGION_TOL


def report(
    n: int,
    alpha: float,
    gamma: float,
    with_oracles: bool = False,
    restarts: int = 20,
    seed: int = 0,
) -> EntanglementReport:
    """Collect every measure for one family member.

    With ``with_oracles`` the negativity is also computed from the spectrum of
    the built state and, on the beta = 0 edge or the Werner line, the convex-roof
    search is run; the report invariants are then asserted.
    """
    region = classify_region(n, alpha, gamma)
    neg = negativity_closed_form(n, alpha, gamma)
    if region is RegionLabel.PPT_SEPARABLE:
        lower = upper = 0.0
    else:
        lower = eof_lower_bound(n, alpha, gamma)
        upper = eof_upper_bound(n, alpha, gamma)

    exact = None
    if region is RegionLabel.PPT_SEPARABLE:
        exact = 0.0
    elif _on_varrho_line(n, alpha, gamma):
        exact = eof_exact_varrho(gamma)
    elif alpha == 0:
        exact = eof_exact_werner(gamma)

    spectral = roof = None
    if with_oracles:
        spectral = negativity(build_two_param_state(n, alpha, gamma), (2, n))
        if _on_varrho_line(n, alpha, gamma) or alpha == 0:
            if _on_varrho_line(n, alpha, gamma):
                rho, dims = build_varrho(n, gamma), (2, n)
            else:
                rho, dims = build_werner_line(gamma), (2, 2)
            rank = int(np.sum(hermitian_eig(rho).eigenvalues > 1e-10))
            cfg = ConvexRoofConfig(K=max(rank, 1), restarts=restarts, rng_seed=seed)
            roof = convex_roof_estimate(rho, cfg, dims)

    rep = EntanglementReport(
        n=n,
        alpha=float(alpha),
        gamma=float(gamma),
        negativity_spectral=spectral,
        negativity_closed=neg,
        negativity_halved=neg / 2.0,
        eof_lower=lower,
        eof_upper=upper,
        eof_exact=exact,
        region=region,
        roof_estimate=roof,
    )
    if with_oracles:
        rep.check()
    return rep
