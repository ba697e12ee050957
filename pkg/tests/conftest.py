import numpy as np
import pytest


def random_hermitian(rng, d):
    X = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (X + X.conj().T) / 2


def random_density(rng, d, rank=None):
    rank = d if rank is None else rank
    X = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    rho = X @ X.conj().T
    return rho / np.trace(rho).real


def admissible_grid(n, steps):
    """(alpha, gamma) pairs on a steps x steps grid with beta >= 0."""
    amax = 1.0 / (2 * (n - 2))
    pts = []
    for i in range(steps):
        for j in range(steps):
            a, g = amax * i / (steps - 1), j / (steps - 1)
            if 2 * (n - 2) * a + g <= 1.0 + 1e-12:
                pts.append((a, g))
    return pts


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
        terminalreporter.write_line(line)
