"""Numerical hot paths with interchangeable numba and numpy backends.

Three kernels dominate the package runtime:

``hazard_grid``
    Tabulates the diagonal hazard rate of the highest rival signal over a
    node array, one Monte Carlo posterior sample per node reusing common
    random numbers.  All CDF work happens in log space so deep-tail nodes
    lose no precision.
``top_two``
    Row-wise largest and second-largest entries of a 2-D array.
``hermite_eval``
    Cubic Hermite evaluation on a uniform grid given node values and node
    slopes (the monotone-spline representation used by bid functions).

Backend selection: the environment variable ``AUCTIONLAB_BACKEND`` may be
``auto`` (default; numba when importable, else numpy), ``numba``, or
``numpy``.  ``set_backend`` switches at runtime, which the benchmark and
the equivalence tests use.  The two backends agree to floating-point
tolerance but not bit-for-bit, so reproducibility contracts are always
stated per backend; ``active_backend()`` is embedded in output digests.
"""

import math
import os

import numpy as np

LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
# direct-space probabilities below this are treated as underflowed
LOG_TINY = math.log(1e-300)

_VALID = ("auto", "numba", "numpy")


def _build_numpy():
    from scipy.special import log_ndtr

    # chunk the node axis so the (nodes x draws) temporaries stay small
    _CHUNK = 128

    def hazard_grid(t, xi, n, rho):
        t = np.ascontiguousarray(t, dtype=np.float64)
        xi = np.ascontiguousarray(xi, dtype=np.float64)
        sq1 = math.sqrt(1.0 - rho)
        sqr = math.sqrt(rho)
        h = np.empty_like(t)
        logG = np.empty_like(t)
        for lo in range(0, t.size, _CHUNK):
            sl = slice(lo, min(lo + _CHUNK, t.size))
            a = sq1 * t[sl, None] - sqr * xi[None, :]
            lphi = log_ndtr(a)
            x1 = (n - 1.0) * lphi
            m1 = x1.max(axis=1, keepdims=True)
            lG = m1[:, 0] + np.log(np.mean(np.exp(x1 - m1), axis=1))
            x2 = (n - 2.0) * lphi - 0.5 * a * a - LOG_SQRT_2PI
            m2 = x2.max(axis=1, keepdims=True)
            lg = (
                math.log(n - 1.0)
                + m2[:, 0]
                + np.log(np.mean(np.exp(x2 - m2), axis=1))
                - math.log(sq1)
            )
            logG[sl] = lG
            h[sl] = np.exp(lg - lG)
        return h, logG

    def top_two(v):
        v = np.asarray(v, dtype=np.float64)
        part = np.partition(v, (v.shape[1] - 2, v.shape[1] - 1), axis=1)
        return part[:, -1].copy(), part[:, -2].copy()

    def hermite_eval(zq, z0, dz, y, d):
        zq = np.asarray(zq, dtype=np.float64)
        u = (zq - z0) / dz
        j = np.clip(u.astype(np.int64), 0, y.size - 2)
        s = u - j
        s2 = s * s
        s3 = s2 * s
        h00 = 2.0 * s3 - 3.0 * s2 + 1.0
        h10 = s3 - 2.0 * s2 + s
        h01 = -2.0 * s3 + 3.0 * s2
        h11 = s3 - s2
        return h00 * y[j] + h10 * (dz * d[j]) + h01 * y[j + 1] + h11 * (dz * d[j + 1])

    return {"hazard_grid": hazard_grid, "top_two": top_two, "hermite_eval": hermite_eval}


def _build_numba():
    from numba import njit

    SQRT1_2 = math.sqrt(0.5)

    @njit(cache=True)
    def _log_ndtr(a):
        # erfc is exact over the whole operating range; the asymptotic
        # branch only guards inputs far outside it
        if a > 6.0:
            return math.log1p(-0.5 * math.erfc(a * SQRT1_2))
        if a < -20.0:
            inv2 = 1.0 / (a * a)
            series = 1.0 - inv2 * (1.0 - 3.0 * inv2 * (1.0 - 5.0 * inv2))
            return -0.5 * a * a - LOG_SQRT_2PI - math.log(-a) + math.log(series)
        return math.log(0.5 * math.erfc(-a * SQRT1_2))

    @njit(cache=True)
    def hazard_grid(t, xi, n, rho):
        nodes = t.shape[0]
        draws = xi.shape[0]
        sq1 = math.sqrt(1.0 - rho)
        sqr = math.sqrt(rho)
        log_sq1 = math.log(sq1)
        h = np.empty(nodes)
        logG = np.empty(nodes)
        x1 = np.empty(draws)
        x2 = np.empty(draws)
        for i in range(nodes):
            m1 = -1.0e308
            m2 = -1.0e308
            for k in range(draws):
                a = sq1 * t[i] - sqr * xi[k]
                lp = _log_ndtr(a)
                v1 = (n - 1.0) * lp
                v2 = (n - 2.0) * lp - 0.5 * a * a - LOG_SQRT_2PI
                x1[k] = v1
                x2[k] = v2
                if v1 > m1:
                    m1 = v1
                if v2 > m2:
                    m2 = v2
            s1 = 0.0
            s2 = 0.0
            for k in range(draws):
                s1 += math.exp(x1[k] - m1)
                s2 += math.exp(x2[k] - m2)
            lG = m1 + math.log(s1 / draws)
            lg = math.log(n - 1.0) + m2 + math.log(s2 / draws) - log_sq1
            logG[i] = lG
            h[i] = math.exp(lg - lG)
        return h, logG

    @njit(cache=True)
    def top_two(v):
        rows = v.shape[0]
        cols = v.shape[1]
        first = np.empty(rows)
        second = np.empty(rows)
        for i in range(rows):
            a = v[i, 0]
            b = v[i, 1]
            if b > a:
                a, b = b, a
            for j in range(2, cols):
                x = v[i, j]
                if x > a:
                    b = a
                    a = x
                elif x > b:
                    b = x
            first[i] = a
            second[i] = b
        return first, second

    @njit(cache=True)
    def hermite_eval(zq, z0, dz, y, d):
        m = y.shape[0]
        out = np.empty(zq.shape[0])
        for i in range(zq.shape[0]):
            u = (zq[i] - z0) / dz
            j = int(u)
            if j < 0:
                j = 0
            elif j > m - 2:
                j = m - 2
            s = u - j
            s2 = s * s
            s3 = s2 * s
            h00 = 2.0 * s3 - 3.0 * s2 + 1.0
            h10 = s3 - 2.0 * s2 + s
            h01 = -2.0 * s3 + 3.0 * s2
            h11 = s3 - s2
            out[i] = h00 * y[j] + h10 * (dz * d[j]) + h01 * y[j + 1] + h11 * (dz * d[j + 1])
        return out

    def _wrap(fn):
        def call(*arrays, **kw):
            conv = tuple(
                np.ascontiguousarray(a, dtype=np.float64) if isinstance(a, np.ndarray) else a
                for a in arrays
            )
            return fn(*conv, **kw)

        return call

    return {
        "hazard_grid": _wrap(hazard_grid),
        "top_two": lambda v: _wrap(top_two)(np.ascontiguousarray(v, dtype=np.float64)),
        "hermite_eval": _wrap(hermite_eval),
        "_log_ndtr": _log_ndtr,
    }


_cache = {}


def get_backend(name="auto"):
    """Return the kernel table for `name` without changing the active one."""
    if name not in _VALID:
        raise ValueError(f"unknown backend {name!r}; expected one of {_VALID}")
    if name == "auto":
        try:
            return get_backend("numba")
        except ImportError:
            return get_backend("numpy")
    if name not in _cache:
        _cache[name] = _build_numba() if name == "numba" else _build_numpy()
    return _cache[name]


_active_name = None
_impl = None


def set_backend(name):
    """Activate a backend; returns the previously active name."""
    global _active_name, _impl
    previous = _active_name
    impl = get_backend(name)
    if name == "auto":
        name = "numba" if "_log_ndtr" in impl else "numpy"
    _active_name = name
    _impl = impl
    return previous


def active_backend():
    return _active_name


set_backend(os.environ.get("AUCTIONLAB_BACKEND", "auto"))


def hazard_grid(t, xi, n, rho):
    """Diagonal hazard h(t|t) and log rival CDF logG(t|t) at each node.

    `t` are signal-space nodes, `xi` the shared standard-normal posterior
    draws (common random numbers across nodes), `n` the bidder count and
    `rho` the affiliation weight in [0, 1).
    """
    return _impl["hazard_grid"](t, xi, float(n), float(rho))


def top_two(values):
    """Row-wise (largest, second largest) of a 2-D array with >= 2 columns."""
    return _impl["top_two"](values)


def hermite_eval(zq, z0, dz, y, d):
    """Cubic Hermite interpolation on the uniform grid z0 + k*dz.

    Queries outside the grid are evaluated on the nearest boundary
    interval; callers own any other extrapolation policy.
    """
    return _impl["hermite_eval"](zq, float(z0), float(dz), y, d)


def warm_up():
    """Trigger JIT compilation with tiny inputs (no-op on numpy)."""
    t = np.array([-1.0, 0.0, 1.0])
    xi = np.array([0.3, -0.4])
    hazard_grid(t, xi, 3, 0.5)
    top_two(np.array([[1.0, 2.0, 0.5], [3.0, -1.0, 4.0]]))
    hermite_eval(np.array([0.5]), 0.0, 1.0, np.array([0.0, 1.0]), np.array([1.0, 1.0]))
