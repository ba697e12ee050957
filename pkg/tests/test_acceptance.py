"""Acceptance criteria 1-10, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary (see conftest.py).
"""

import contextlib
import time
from pathlib import Path

import numpy as np
import pytest
from conftest import admissible_grid, random_density

from bipartite2n import (
    ConvexRoofConfig,
    HigherDimParams,
    RegionLabel,
    build_higher_dim_state,
    build_two_param_state,
    build_varrho,
    check_uu_invariance,
    class_residual,
    classify_region,
    cllh_lower_bound,
    convex_roof_estimate,
    eof_lower_bound,
    eof_upper_bound,
    extract_parameters,
    monte_carlo_twirl,
    negativity,
    negativity_closed_form,
    trace_distance,
    twirl_pipeline,
)
from bipartite2n.cli import SweepSpec, sweep_csv
from bipartite2n.linalg import binary_entropy, eigvalsh

GOLDEN = Path(__file__).parent / "golden"
RESULTS: list[str] = []


@contextlib.contextmanager
def criterion(k, title):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        RESULTS.append(f"FAIL  criterion {k:>2}: {title} ({type(exc).__name__}: {exc})")
        raise
    RESULTS.append(f"PASS  criterion {k:>2}: {title} [{time.perf_counter() - t0:.2f} s]")


def test_c01_spectral_negativity():
    with criterion(1, "spectral vs closed-form negativity, n in {3,4,6}, 21x21"):
        t0 = time.perf_counter()
        worst = 0.0
        for n in (3, 4, 6):
            for a, g in admissible_grid(n, 21):
                diff = abs(negativity(build_two_param_state(n, a, g)) - negativity_closed_form(n, a, g))
                worst = max(worst, diff)
        assert worst <= 1e-10, worst
        assert time.perf_counter() - t0 < 10.0


def test_c02_werner_line():
    with criterion(2, "Werner line negativity and E_f bounds"):
        for g in np.round(np.arange(0.5, 1.0001, 0.1), 12):
            rho = build_two_param_state(3, 0.0, g)
            assert abs(negativity(rho) - (2 * g - 1)) <= 1e-10
            exact = binary_entropy(0.5 + np.sqrt(g * (1 - g)))
            assert abs(eof_lower_bound(3, 0.0, g) - exact) <= 1e-10
            assert abs(eof_upper_bound(3, 0.0, g) - exact) <= 1e-10


@pytest.mark.slow
def test_c03_beta_zero_line():
    with criterion(3, "convex roof on the beta=0 line, n=3, K=2n-3"):
        t0 = time.perf_counter()
        n = 3
        for g in (0.3, 0.5, 0.8):
            est = convex_roof_estimate(build_varrho(n, g), ConvexRoofConfig(K=2 * n - 3, restarts=20, rng_seed=7))
            assert abs(est - g) <= 1e-3, (g, est)
            a = (1 - g) / (2 * (n - 2))
            assert abs(eof_upper_bound(n, a, g) - g) <= 1e-12
        assert time.perf_counter() - t0 < 120.0


def test_c04_twirl_correctness():
    with criterion(4, "twirl output in class, matches extracted params, idempotent"):
        rng = np.random.default_rng(4)
        for k in range(20):
            n = 3 + k % 2
            rho = random_density(rng, 2 * n)
            out = twirl_pipeline(rho, n)
            assert class_residual(out, n) <= 1e-10
            a, g = extract_parameters(rho, n)
            assert np.max(np.abs(out - build_two_param_state(n, a, g))) <= 1e-10
            assert np.max(np.abs(twirl_pipeline(out, n) - out)) <= 1e-10


def test_c05_invariance():
    with criterion(5, "U x U invariance of class states; |00> is moved"):
        for n, a, g in [(3, 0.1, 0.5), (4, 0.05, 0.7), (6, 0.02, 0.3)]:
            assert check_uu_invariance(build_two_param_state(n, a, g), 200, rng_seed=n) <= 1e-10
        ket00 = np.zeros((6, 6))
        ket00[0, 0] = 1.0
        assert check_uu_invariance(ket00, 200, rng_seed=5) > 0.1


def test_c06_monte_carlo():
    with criterion(6, "Monte-Carlo twirl within 0.02 of the exact twirl, n=3"):
        rng = np.random.default_rng(6)
        for k in range(5):
            rho = random_density(rng, 6)
            exact = twirl_pipeline(rho, 3)
            dist = trace_distance(monte_carlo_twirl(rho, 20000, rng_seed=100 + k), exact)
            if dist > 0.02:  # statistical check: one rerun with a fresh seed
                dist = trace_distance(monte_carlo_twirl(rho, 20000, rng_seed=200 + k), exact)
            assert dist <= 0.02, dist


def test_c07_bound_ordering():
    with criterion(7, "eof_lower <= eof_upper <= negativity on NPT grids"):
        for n in (3, 4, 6):
            for a, g in admissible_grid(n, 41):
                if classify_region(n, a, g) is RegionLabel.PPT_SEPARABLE:
                    continue
                lo, up, neg = eof_lower_bound(n, a, g), eof_upper_bound(n, a, g), negativity_closed_form(n, a, g)
                assert lo <= up + 1e-10 and up <= neg + 1e-10, (n, a, g, lo, up, neg)


def test_c08_cllh_equality():
    with criterion(8, "CLLH bound equals closed form on a 7x7 NPT grid, n=4"):
        pts = [p for p in admissible_grid(4, 7) if classify_region(4, *p) is RegionLabel.NPT_ENTANGLED]
        assert len(pts) >= 10
        for a, g in pts:
            val = cllh_lower_bound(build_two_param_state(4, a, g), 4)
            assert abs(val - eof_lower_bound(4, a, g)) <= 1e-9, (a, g, val)


def test_c09_higher_dim():
    with criterion(9, "m x n builder is a density matrix and reduces at m=2"):
        for m, n in [(2, 4), (3, 4), (3, 5)]:
            amax = 1.0 / (m * (n - m))
            for a, g in [(0.0, 0.0), (0.3 * amax, 0.1), (0.0, 2.0 / (m * (m - 1)))]:
                p = HigherDimParams(m, n, a, g)
                rho = build_higher_dim_state(p)
                assert np.max(np.abs(rho - rho.conj().T)) <= 1e-12
                assert abs(np.trace(rho).real - 1) <= 1e-12
                assert eigvalsh(rho).min() >= -1e-12
                if m == 2:
                    assert np.array_equal(rho, build_two_param_state(n, a, g))


def test_c10_golden_sweeps():
    with criterion(10, "n=4 41x41 sweeps match golden files; corner anchors"):
        for q in ("negativity", "eof_lower", "eof_upper", "region"):
            text = sweep_csv(SweepSpec(4, 41, 41, q))
            assert text.encode() == (GOLDEN / f"sweep_n4_41x41_{q}.csv").read_bytes(), q
        neg = {tuple(map(float, r.split(",")[:2])): float(r.split(",")[2])
               for r in sweep_csv(SweepSpec(4, 41, 41, "negativity")).splitlines()[1:]}
        assert neg[(0.0, 1.0)] == 1.0
        assert all(v == 0.0 for (a, g), v in neg.items() if 2 * a + g <= 0.5)
        for r in sweep_csv(SweepSpec(4, 41, 41, "eof_upper")).splitlines()[1:]:
            a, g, v = map(float, r.split(","))
            if abs(4 * a + g - 1) <= 1e-12:
                assert abs(v - g) <= 1e-12
