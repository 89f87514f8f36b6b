"""Affiliated first-price equilibrium via the diagonal hazard ODE.

With a Gaussian common factor, a bidder at signal t faces the highest
rival signal with conditional CDF

    G(y | t) = E_{Z | t}[ Phi((y - sqrt(rho) Z) / sqrt(1 - rho))^(n-1) ],

the posterior being Z | t ~ N(sqrt(rho) t, 1 - rho).  Rivals are NOT
conditionally independent given t alone, so the expectation over the
posterior is essential; collapsing it misprices every n > 2.

The symmetric equilibrium satisfies the linear first-order condition

    beta'(t) = h(t) * (v(t) - beta(t)),      h(t) = g(t|t) / G(t|t),

marched left to right with classic RK4.  Two numerical details matter:

* The near-value initialization beta = v * (1 - epsilon0) is an artifact
  of truncating the signal line, so the march starts on a buffer region
  6 z-units left of the reported grid.  The boundary transient decays
  like exp(-cumulative hazard) and is extinguished (factor < e^-18)
  before the first reported node.
* The hazard grows like n * |t| deep in the left tail, where a single
  RK4 step of the node spacing would be unstable.  Each interval is cut
  into equal substeps sized from the tabulated hazard so that
  h * dt <= 0.4, keeping the scheme deterministic and stable.

Hazard evaluations share one vector of posterior draws across all nodes
(common random numbers), making the tabulated hazard smooth in t.
"""

import json
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.special import log_ndtr, ndtr, ndtri

from . import _kernels
from ._kernels import LOG_TINY
from .distributions import LognormalParams, _check_sigma
from .errors import ConfigMismatchError, DomainError, SolverError

TAIL_MASS = 1e-6           # working grid spans the [1e-6, 1 - 1e-6] signal quantiles
BUFFER_WIDTH = 6.0         # z-units of pre-grid burn-in for the boundary transient
COURANT = 0.4              # max hazard * substep, well inside RK4 stability
DEFAULT_GRID_NODES = 200
# 4096 draws leave enough hazard noise to fail the 0.5% grid-refinement
# invariant at (n=5, rho=0.5); 16384 passes it with ~2x margin
DEFAULT_MC_SAMPLES = 16384
BOUNDARY_SHADING = 1e-3

_SERIAL_FORMAT = "auctionlab.bid_function.v1"


@dataclass(frozen=True, eq=False)
class BidFunction:
    """Tabulated equilibrium bid on a uniform signal grid.

    `slopes` are the monotone-cubic node derivatives; together with the
    node values they define the piecewise Hermite interpolant used by
    ``evaluate_bid``.
    """

    signal_grid: np.ndarray
    bids: np.ndarray
    slopes: np.ndarray
    n: int
    rho: float
    params: LognormalParams
    mc_samples: int
    seed: int
    deep_tail_nodes: int
    backend: str

    @property
    def z_lo(self):
        return float(self.signal_grid[0])

    @property
    def z_hi(self):
        return float(self.signal_grid[-1])

    @property
    def dz(self):
        return float(self.signal_grid[1] - self.signal_grid[0])

    def values(self):
        """Valuations at the grid nodes."""
        return np.exp(self.params.mu + self.params.sigma * self.signal_grid)

    def to_dict(self):
        return {
            "format": _SERIAL_FORMAT,
            "n": self.n,
            "rho": self.rho,
            "mu": self.params.mu,
            "sigma": self.params.sigma,
            "mc_samples": self.mc_samples,
            "seed": int(self.seed),
            "deep_tail_nodes": self.deep_tail_nodes,
            "backend": self.backend,
            "signal_grid": self.signal_grid.tolist(),
            "bids": self.bids.tolist(),
            "slopes": self.slopes.tolist(),
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc):
        if doc.get("format") != _SERIAL_FORMAT:
            raise ConfigMismatchError(
                f"unsupported bid-function document: {doc.get('format')!r}"
            )
        return cls(
            signal_grid=np.asarray(doc["signal_grid"], dtype=float),
            bids=np.asarray(doc["bids"], dtype=float),
            slopes=np.asarray(doc["slopes"], dtype=float),
            n=int(doc["n"]),
            rho=float(doc["rho"]),
            params=LognormalParams(mu=doc["mu"], sigma=doc["sigma"]),
            mc_samples=int(doc["mc_samples"]),
            seed=int(doc["seed"]),
            deep_tail_nodes=int(doc["deep_tail_nodes"]),
            backend=doc["backend"],
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _check_cell(n, rho):
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    if not 0.0 <= rho < 1.0:
        raise DomainError(f"rho must lie in [0, 1), got {rho}")


def highest_rival_cdf(y, x, n, rho, mc_samples, seed):
    """P(highest rival signal <= y | own signal x), Monte Carlo over the
    posterior of the common factor.  Exact (no sampling) at rho = 0."""
    _check_cell(n, rho)
    if rho == 0.0:
        return float(ndtr(y) ** (n - 1))
    if mc_samples < 1:
        raise DomainError("mc_samples must be >= 1")
    xi = np.random.default_rng(seed).standard_normal(mc_samples)
    z_post = np.sqrt(rho) * x + np.sqrt(1.0 - rho) * xi
    a = (y - np.sqrt(rho) * z_post) / np.sqrt(1.0 - rho)
    with np.errstate(under="ignore"):
        return float(np.mean(np.exp((n - 1) * log_ndtr(a))))


def diagonal_hazard(t, n, rho, mc_samples, seed):
    """Hazard rate g(t|t)/G(t|t) of the highest rival at a tie.

    The density g reuses the CDF's posterior draws with the analytic
    inner derivative, so the estimate is smooth in t.  Scalar in, scalar
    out; arrays evaluate the whole grid against one draw vector.
    """
    _check_cell(n, rho)
    if mc_samples < 1:
        raise DomainError("mc_samples must be >= 1")
    arr = np.atleast_1d(np.asarray(t, dtype=float))
    xi = np.random.default_rng(seed).standard_normal(mc_samples)
    h, _ = _kernels.hazard_grid(arr, xi, n, rho)
    return float(h[0]) if np.ndim(t) == 0 else h


def _march_rk4(points, hazards, vals, substeps, b0):
    """RK4 along the prepared point table; returns bids at interval ends.

    `points`/`hazards`/`vals` hold [node, mid, end, mid, end, ...] per the
    substep layout; `substeps[i]` substeps span original interval i.
    """
    bids = np.empty(substeps.size + 1)
    bids[0] = b0
    b = b0
    p = 0
    for i in range(substeps.size):
        m = substeps[i]
        dt = (points[p + 2 * m] - points[p]) / m
        for _ in range(m):
            h0, hm, h1 = hazards[p], hazards[p + 1], hazards[p + 2]
            v0, vm, v1 = vals[p], vals[p + 1], vals[p + 2]
            k1 = h0 * (v0 - b)
            k2 = hm * (vm - (b + 0.5 * dt * k1))
            k3 = hm * (vm - (b + 0.5 * dt * k2))
            k4 = h1 * (v1 - (b + dt * k3))
            b += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            p += 2
        bids[i + 1] = b
    return bids


def _march_integral(points, hazards, vals, substeps, b0):
    """Exponential-integrator march of the same linear ODE.

    Independent discretization used as a cross-check: each substep applies
    the integrating factor exp(-Simpson cumulative hazard).
    """
    bids = np.empty(substeps.size + 1)
    bids[0] = b0
    b = b0
    p = 0
    for i in range(substeps.size):
        m = substeps[i]
        dt = (points[p + 2 * m] - points[p]) / m
        for _ in range(m):
            h0, hm, h1 = hazards[p], hazards[p + 1], hazards[p + 2]
            v0, vm, v1 = vals[p], vals[p + 1], vals[p + 2]
            dH = dt / 6.0 * (h0 + 4.0 * hm + h1)
            decay = np.exp(-dH)
            half = np.exp(-0.5 * dH)
            b = b * decay + dt / 6.0 * (h0 * v0 * decay + 4.0 * hm * vm * half + h1 * v1)
            p += 2
        bids[i + 1] = b
    return bids


def solve_bid_function(
    n,
    rho,
    params,
    grid_nodes=DEFAULT_GRID_NODES,
    mc_samples=DEFAULT_MC_SAMPLES,
    seed=0,
    boundary_shading=BOUNDARY_SHADING,
    return_details=False,
):
    """Tabulate the affiliated first-price bid function for one cell.

    Returns a BidFunction on `grid_nodes` uniform signal nodes spanning
    the [1e-6, 1-1e-6] quantile window; with ``return_details`` also a
    dict of solver internals (extended grid, hazard table, substep
    counts, integral-form deviation).
    """
    _check_cell(n, rho)
    _check_sigma(params)
    if grid_nodes < 50:
        raise DomainError(f"grid_nodes must be >= 50, got {grid_nodes}")
    if mc_samples < 1:
        raise DomainError("mc_samples must be >= 1")
    n = int(n)

    z_hi = float(-ndtri(TAIL_MASS))
    z_lo = -z_hi
    grid = np.linspace(z_lo, z_hi, grid_nodes)
    dz = grid[1] - grid[0]
    n_buffer = int(np.ceil(BUFFER_WIDTH / dz))
    ext = np.concatenate([z_lo - dz * np.arange(n_buffer, 0, -1), grid])

    xi = np.random.default_rng(seed).standard_normal(mc_samples)
    h_nodes, logG = _kernels.hazard_grid(ext, xi, n, rho)

    # substep counts from the tabulated hazard keep h*dt inside COURANT
    h_pair = np.maximum(h_nodes[:-1], h_nodes[1:])
    substeps = np.maximum(1, np.ceil(h_pair * dz / COURANT).astype(np.int64))

    # hazard table at every substep endpoint and midpoint, one kernel call
    points = [np.array([ext[0]])]
    for i in range(ext.size - 1):
        m = substeps[i]
        offs = (np.arange(2 * m) + 1) / (2 * m)
        points.append(ext[i] + offs * dz)
    points = np.concatenate(points)
    hazards, _ = _kernels.hazard_grid(points, xi, n, rho)
    vals = np.exp(params.mu + params.sigma * points)

    b0 = vals[0] * (1.0 - boundary_shading)
    bids_ext = _march_rk4(points, hazards, vals, substeps, b0)

    bids = bids_ext[n_buffer:]
    diffs = np.diff(bids)
    if np.any(diffs < 0):
        idx = int(np.argmax(diffs < 0))
        raise SolverError(
            f"bid table decreases between nodes {idx} and {idx + 1} "
            f"(n={n}, rho={rho})",
            node_index=idx,
        )
    v_grid = np.exp(params.mu + params.sigma * grid)
    bad = np.flatnonzero(bids >= v_grid)
    if bad.size:
        raise SolverError(
            f"bid meets or exceeds value at node {bad[0]} (n={n}, rho={rho})",
            node_index=int(bad[0]),
        )
    if bids[0] <= 0:
        raise SolverError(f"non-positive bid at node 0 (n={n}, rho={rho})", node_index=0)

    slopes = PchipInterpolator(grid, bids).derivative()(grid)
    bf = BidFunction(
        signal_grid=grid,
        bids=bids,
        slopes=slopes,
        n=n,
        rho=float(rho),
        params=params,
        mc_samples=int(mc_samples),
        seed=int(seed),
        deep_tail_nodes=int(np.sum(logG < LOG_TINY)),
        backend=_kernels.active_backend(),
    )
    if not return_details:
        return bf

    bids_int = _march_integral(points, hazards, vals, substeps, b0)[n_buffer:]
    spots = np.linspace(0, grid_nodes - 1, 10).astype(int)
    details = {
        "extended_grid": ext,
        "buffer_nodes": n_buffer,
        "hazard_nodes": h_nodes,
        "log_rival_cdf_nodes": logG,
        "substeps": substeps,
        "integral_form_spot_nodes": spots,
        "integral_form_max_rel_dev": float(
            np.max(np.abs(bids_int[spots] / bids[spots] - 1.0))
        ),
    }
    return bf, details


def _eval_signals(bf, z):
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    below = z < bf.z_lo
    above = z > bf.z_hi
    inside = ~(below | above)
    if np.any(inside):
        out[inside] = _kernels.hermite_eval(
            z[inside], bf.z_lo, bf.dz, bf.bids, bf.slopes
        )
    if np.any(below):
        # constant bid/value ratio continuation
        ratio = bf.bids[0] / np.exp(bf.params.mu + bf.params.sigma * bf.z_lo)
        out[below] = ratio * np.exp(bf.params.mu + bf.params.sigma * z[below])
    if np.any(above):
        out[above] = bf.bids[-1] + bf.slopes[-1] * (z[above] - bf.z_hi)
    return out


def evaluate_bid_at_signal(bf, z):
    """Bid at a signal (z-space); the simulation hot path."""
    arr = np.atleast_1d(np.asarray(z, dtype=float))
    out = _eval_signals(bf, arr)
    return float(out[0]) if np.ndim(z) == 0 else out


def evaluate_bid(bf, v):
    """Bid at a valuation: monotone-cubic inside the grid, bid/value-ratio
    continuation below it, linear-in-z continuation above it."""
    arr = np.atleast_1d(np.asarray(v, dtype=float))
    if np.any(~(arr > 0)):
        raise DomainError("valuations must be strictly positive")
    z = (np.log(arr) - bf.params.mu) / bf.params.sigma
    out = _eval_signals(bf, z)
    return float(out[0]) if np.ndim(v) == 0 else out
