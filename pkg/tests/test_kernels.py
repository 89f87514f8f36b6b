"""Backend equivalence: the numba and numpy kernel tables must agree to
floating-point tolerance on identical inputs, and each kernel must match
an independent reference implementation."""

import numpy as np
import pytest
from scipy.special import log_ndtr, ndtr

from auctionlab import _kernels


@pytest.fixture(scope="module")
def numba_table():
    return _kernels.get_backend("numba")


@pytest.fixture(scope="module")
def numpy_table():
    return _kernels.get_backend("numpy")


class TestLogNdtr:
    def test_matches_scipy_on_operating_range(self, numba_table):
        fn = numba_table["_log_ndtr"]
        a = np.linspace(-18.0, 8.0, 4001)
        got = np.array([fn(x) for x in a])
        np.testing.assert_allclose(got, log_ndtr(a), rtol=1e-13, atol=1e-15)

    def test_matches_scipy_in_asymptotic_branch(self, numba_table):
        fn = numba_table["_log_ndtr"]
        a = np.linspace(-35.0, -20.5, 301)
        got = np.array([fn(x) for x in a])
        np.testing.assert_allclose(got, log_ndtr(a), rtol=1e-7)

    def test_branch_joints_are_continuous(self, numba_table):
        fn = numba_table["_log_ndtr"]
        for joint in (6.0, -20.0):
            lo, hi = fn(joint - 1e-9), fn(joint + 1e-9)
            assert abs(hi - lo) < 1e-7 * max(1.0, abs(lo))


class TestHazardGrid:
    def test_backends_agree(self, numba_table, numpy_table):
        rng = np.random.default_rng(7)
        t = np.linspace(-8.0, 4.7, 500)
        xi = rng.standard_normal(4096)
        h_nb, logG_nb = numba_table["hazard_grid"](t, xi, 5.0, 0.5)
        h_np, logG_np = numpy_table["hazard_grid"](t, xi, 5.0, 0.5)
        np.testing.assert_allclose(h_nb, h_np, rtol=1e-9)
        np.testing.assert_allclose(logG_nb, logG_np, rtol=1e-9, atol=1e-9)

    def test_rho_zero_matches_closed_form(self, numpy_table):
        # without a common factor the rival CDF is Phi(t)^(n-1) and the
        # hazard is (n-1) phi(t) / Phi(t), independent of the draws
        t = np.linspace(-3.0, 3.0, 61)
        xi = np.random.default_rng(3).standard_normal(512)
        n = 6
        h, logG = numpy_table["hazard_grid"](t, xi, float(n), 0.0)
        np.testing.assert_allclose(logG, (n - 1) * log_ndtr(t), rtol=1e-12)
        phi = np.exp(-0.5 * t * t) / np.sqrt(2 * np.pi)
        np.testing.assert_allclose(h, (n - 1) * phi / ndtr(t), rtol=1e-12)

    def test_deep_tail_is_finite(self, numba_table):
        t = np.array([-35.0, -30.0, -25.0])
        xi = np.random.default_rng(0).standard_normal(1024)
        h, logG = numba_table["hazard_grid"](t, xi, 10.0, 0.5)
        assert np.all(np.isfinite(h)) and np.all(h > 0)
        assert np.all(logG < -100.0)


class TestTopTwo:
    @pytest.mark.parametrize("backend", ["numba", "numpy"])
    def test_matches_sort(self, backend):
        table = _kernels.get_backend(backend)
        rng = np.random.default_rng(11)
        for cols in (2, 3, 7):
            v = rng.standard_normal((200, cols))
            first, second = table["top_two"](v)
            s = np.sort(v, axis=1)
            np.testing.assert_array_equal(first, s[:, -1])
            np.testing.assert_array_equal(second, s[:, -2])

    def test_ties(self, numba_table, numpy_table):
        v = np.array([[2.0, 2.0, 1.0], [1.0, 1.0, 1.0]])
        for table in (numba_table, numpy_table):
            first, second = table["top_two"](v)
            np.testing.assert_array_equal(first, [2.0, 1.0])
            np.testing.assert_array_equal(second, [2.0, 1.0])


class TestHermiteEval:
    def test_reproduces_cubic_exactly(self, numba_table, numpy_table):
        # node values and slopes sampled from a cubic determine it exactly
        f = lambda z: z**3 - 2.0 * z**2 + 3.0 * z - 1.0
        fp = lambda z: 3.0 * z**2 - 4.0 * z + 3.0
        grid = np.linspace(-2.0, 2.0, 9)
        y, d = f(grid), fp(grid)
        zq = np.random.default_rng(5).uniform(-2.0, 2.0, 300)
        for table in (numba_table, numpy_table):
            got = table["hermite_eval"](zq, grid[0], grid[1] - grid[0], y, d)
            np.testing.assert_allclose(got, f(zq), rtol=1e-12, atol=1e-12)

    def test_exact_at_nodes(self, numba_table):
        grid = np.linspace(0.0, 1.0, 6)
        y = np.array([0.0, 0.3, 0.5, 0.9, 1.4, 2.0])
        d = np.gradient(y, grid)
        got = numba_table["hermite_eval"](grid, 0.0, 0.2, y, d)
        np.testing.assert_allclose(got, y, rtol=0, atol=1e-14)

    def test_out_of_range_uses_boundary_interval(self, numba_table, numpy_table):
        f = lambda z: 0.5 * z**3 + z
        fp = lambda z: 1.5 * z**2 + 1.0
        grid = np.linspace(0.0, 1.0, 5)
        y, d = f(grid), fp(grid)
        zq = np.array([-0.5, 1.5])
        for table in (numba_table, numpy_table):
            got = table["hermite_eval"](zq, 0.0, 0.25, y, d)
            # continuation of the end cubics, which here equal f itself
            np.testing.assert_allclose(got, f(zq), rtol=1e-12)

    def test_backends_agree(self, numba_table, numpy_table):
        rng = np.random.default_rng(9)
        grid = np.linspace(-4.0, 4.0, 200)
        y = np.cumsum(rng.uniform(0.0, 1.0, 200))
        d = np.gradient(y, grid)
        zq = rng.uniform(-5.0, 5.0, 10_000)
        a = numba_table["hermite_eval"](zq, grid[0], grid[1] - grid[0], y, d)
        b = numpy_table["hermite_eval"](zq, grid[0], grid[1] - grid[0], y, d)
        np.testing.assert_allclose(a, b, rtol=1e-12)


class TestBackendSelection:
    def test_get_backend_rejects_unknown(self):
        with pytest.raises(ValueError):
            _kernels.get_backend("cuda")

    def test_set_backend_switches_and_restores(self):
        before = _kernels.active_backend()
        try:
            prev = _kernels.set_backend("numpy")
            assert prev == before
            assert _kernels.active_backend() == "numpy"
            _kernels.set_backend("numba")
            assert _kernels.active_backend() == "numba"
        finally:
            _kernels.set_backend(before)

    def test_auto_resolves_to_concrete_name(self):
        before = _kernels.active_backend()
        try:
            _kernels.set_backend("auto")
            assert _kernels.active_backend() in ("numba", "numpy")
        finally:
            _kernels.set_backend(before)
