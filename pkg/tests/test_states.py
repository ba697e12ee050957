import numpy as np
import pytest

from bipartite2n.linalg import hermitian_eig
from bipartite2n.states import (
    HigherDimParams,
    TwoParamState,
    bell_vectors,
    build_higher_dim_state,
    build_two_param_state,
    build_varrho,
    build_werner_line,
    class_residual,
    extract_parameters,
)
from conftest import admissible_grid, random_density


def assert_density(rho):
    assert np.max(np.abs(rho - rho.conj().T)) <= 1e-12
    assert abs(np.trace(rho).real - 1.0) <= 1e-10
    assert hermitian_eig(rho).eigenvalues[0] >= -1e-12


def test_bell_vectors_n2():
    phi_p, phi_m, psi_p, psi_m = bell_vectors(2)
    r = 1 / np.sqrt(2)
    assert np.allclose(psi_m, [0, r, -r, 0])
    assert np.allclose(phi_p, [r, 0, 0, r])


@pytest.mark.parametrize("n", [2, 3, 5])
def test_bell_vectors_orthonormal(n):
    B = np.array(bell_vectors(n))
    assert np.allclose(B.conj() @ B.T, np.eye(4), atol=1e-15)
    support = {0, 1, n, n + 1}
    assert set(np.flatnonzero(np.any(B != 0, axis=0))) == support


def test_bell_vectors_n3_phi_plus_support():
    assert list(np.flatnonzero(bell_vectors(3)[0])) == [0, 4]


def test_two_param_state_examples():
    psi_m = bell_vectors(3)[3]
    assert np.allclose(build_two_param_state(3, 0, 1), np.outer(psi_m, psi_m), atol=1e-15)

    phi_p, phi_m, psi_p, _ = bell_vectors(4)
    expected = sum(np.outer(v, v) for v in (phi_p, phi_m, psi_p)) / 3
    assert np.allclose(build_two_param_state(4, 0, 0), expected, atol=1e-15)

    # beta = (1 - 0.2 - 0.6) / 3
    lam = hermitian_eig(build_two_param_state(3, 0.1, 0.6)).eigenvalues
    assert np.allclose(lam, sorted([0.1, 0.1, 0.2 / 3, 0.2 / 3, 0.2 / 3, 0.6]), atol=1e-12)


@pytest.mark.parametrize(
    "n,alpha,gamma",
    [(3, -0.01, 0.5), (3, 0.6, 0.0), (3, 0.0, 1.1), (3, 0.3, 0.5), (4, 0.2, 0.3), (2, 0.0, 0.5)],
)
def test_two_param_state_rejects_inadmissible(n, alpha, gamma):
    with pytest.raises(ValueError):
        build_two_param_state(n, alpha, gamma)


def test_two_param_state_beta():
    p = TwoParamState(4, 0.05, 0.65)
    assert p.beta == pytest.approx((1 - 0.2 - 0.65) / 3)
    assert p.s == pytest.approx(0.75)


@pytest.mark.parametrize("n", [3, 4, 6])
def test_spectrum_on_grid(n):
    for alpha, gamma in admissible_grid(n, 5):
        rho = build_two_param_state(n, alpha, gamma)
        assert_density(rho)
        beta = TwoParamState(n, alpha, gamma).beta
        expected = sorted([alpha] * (2 * (n - 2)) + [beta] * 3 + [gamma])
        assert np.allclose(hermitian_eig(rho).eigenvalues, expected, atol=1e-10)


@pytest.mark.parametrize("n", [3, 4, 6])
def test_extract_parameters_roundtrip(n):
    for alpha, gamma in admissible_grid(n, 7):
        a, g = extract_parameters(build_two_param_state(n, alpha, gamma), n)
        assert abs(a - alpha) <= 1e-12 and abs(g - gamma) <= 1e-12


def test_extract_parameters_examples():
    ket00 = np.zeros(6)
    ket00[0] = 1
    assert extract_parameters(np.outer(ket00, ket00), 3) == (0.0, 0.0)
    psi_p = bell_vectors(3)[2]
    a, g = extract_parameters(np.outer(psi_p, psi_p), 3)
    assert a == 0.0 and abs(g) <= 1e-16
    with pytest.raises(ValueError):
        extract_parameters(np.eye(8) / 8, 3)


def test_werner_line():
    psi_m = bell_vectors(2)[3]
    assert np.allclose(build_werner_line(1.0), np.outer(psi_m, psi_m))
    assert np.allclose(build_werner_line(0.25), np.eye(4) / 4, atol=1e-15)
    with pytest.raises(ValueError):
        build_werner_line(-0.1)


def test_varrho_examples():
    psi_m = bell_vectors(3)[3]
    assert np.allclose(build_varrho(3, 1.0), np.outer(psi_m, psi_m))
    expected = np.zeros((6, 6))
    expected[2, 2] = expected[5, 5] = 0.5
    assert np.allclose(build_varrho(3, 0.0), expected)
    lam = hermitian_eig(build_varrho(3, 0.5)).eigenvalues
    assert np.allclose(lam, [0, 0, 0, 0.25, 0.25, 0.5], atol=1e-12)
    assert np.sum(lam > 1e-10) == 3


@pytest.mark.parametrize("n", [3, 4, 6])
def test_varrho_is_beta_zero_member(n):
    for gamma in np.linspace(0, 1, 11):
        a = (1 - gamma) / (2 * (n - 2))
        assert np.max(np.abs(build_varrho(n, gamma) - build_two_param_state(n, a, gamma))) <= 1e-14


@pytest.mark.parametrize("n", [3, 4])
def test_family_is_convex(n, rng):
    pts = admissible_grid(n, 6)
    for _ in range(20):
        (a1, g1), (a2, g2) = (pts[i] for i in rng.choice(len(pts), 2))
        t = rng.uniform()
        mixed = t * build_two_param_state(n, a1, g1) + (1 - t) * build_two_param_state(n, a2, g2)
        direct = build_two_param_state(n, t * a1 + (1 - t) * a2, t * g1 + (1 - t) * g2)
        assert np.max(np.abs(mixed - direct)) <= 1e-12


@pytest.mark.parametrize("m,n", [(2, 4), (3, 4), (3, 5), (4, 6)])
def test_higher_dim_state_is_density(m, n):
    for alpha, gamma in [(0, 0), (0, 1 / (m * (m - 1) / 2)), (1 / (m * (n - m)), 0), (0.02, 0.1)]:
        assert_density(build_higher_dim_state(HigherDimParams(m, n, alpha, gamma)))


@pytest.mark.parametrize("n", [3, 4, 6])
def test_higher_dim_reduces_to_two_param(n):
    for alpha, gamma in admissible_grid(n, 6):
        big = build_higher_dim_state(HigherDimParams(2, n, alpha, gamma))
        assert np.array_equal(big, build_two_param_state(n, alpha, gamma))


def test_higher_dim_examples():
    p = HigherDimParams(3, 4, 0.0, 0.0)
    assert p.beta == pytest.approx(1 / 6)
    lam = hermitian_eig(build_higher_dim_state(p)).eigenvalues
    assert np.allclose(lam, [0] * 6 + [1 / 6] * 6, atol=1e-12)

    p = HigherDimParams(3, 4, 1 / 3, 0.0)
    assert abs(p.beta) <= 1e-15
    rho = build_higher_dim_state(p)
    assert np.trace(rho).real == pytest.approx(1.0)
    cross = [i * 4 + 3 for i in range(3)]
    assert np.allclose(np.diag(rho).real[cross], 1 / 3)
    assert np.allclose(hermitian_eig(rho).eigenvalues, [0] * 9 + [1 / 3] * 3, atol=1e-12)

    with pytest.raises(ValueError):
        HigherDimParams(3, 3, 0, 0)
    with pytest.raises(ValueError):
        HigherDimParams(3, 4, 0.5, 0)


def test_class_residual(rng):
    assert class_residual(build_two_param_state(4, 0.05, 0.6), 4) <= 1e-15
    assert class_residual(random_density(rng, 8), 4) > 1e-3
