"""Monte Carlo revenue engine over the (n, rho) grid.

Five auction formats collapse to three stored revenue series:

* ``english_spsb`` - the winner pays the second-highest affiliated value
  (truthful bidding makes English and second-price identical here).
* ``dutch_fpsb`` - the winner pays the solved equilibrium bid at the
  highest affiliated value (descending-clock and sealed first-price are
  strategically equivalent).
* ``allpay_ipv`` - the independent-values benchmark; by revenue
  equivalence its expectation is the IPV second order statistic, so the
  estimator records the second-highest value of the cell's idiosyncratic
  draws with the common factor switched off.

Within a cell all three estimators share random numbers: one common
factor vector and one shock matrix produce the affiliated signals, and
the shock matrix alone is the rho = 0 recombination for the benchmark.
Shared shocks sharpen every pairwise revenue comparison without biasing
any mean, and they make the English and all-pay estimators coincide
exactly at rho = 0, where the theory says their expectations are equal.

Seed protocol: per-cell substreams derive from the master seed as
``SeedSequence(master_seed, spawn_key=(i, j, role))`` with ``i`` and
``j`` the n- and rho-axis indices, role 0 the bid-function solver and
role 1 the simulation draws.  Draws happen in fixed batches of
``SIM_BATCH`` so results are independent of available parallelism.
"""

import csv
import hashlib
import io
import json
import os
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from importlib import resources

import numpy as np

from . import _kernels
from .affiliation import signals_from_factors
from .distributions import LognormalParams
from .equilibrium_affiliated import BidFunction, solve_bid_function, evaluate_bid_at_signal
from .errors import ConfigMismatchError, DomainError, IngestError, SolverError

DEFAULT_N_VALUES = (2, 3, 4, 5, 6, 7, 8, 10, 12, 15, 20)
DEFAULT_RHO_VALUES = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
DEFAULT_DRAWS = 100_000
DEFAULT_MASTER_SEED = 0
SIM_BATCH = 1 << 17

_GRID_FORMAT = "auctionlab.revenue_grid.v1"

_CSV_COLUMNS = (
    "n",
    "rho",
    "rev_english_spsb",
    "rev_dutch_fpsb",
    "rev_allpay_ipv",
    "se_english",
    "se_fpsb",
    "se_allpay",
    "draws",
    "seed",
)


@dataclass(frozen=True)
class AuctionScenario:
    """One grid cell's simulation request."""

    n: int
    rho: float
    params: LognormalParams
    draws: int
    seed: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"n must be an integer >= 2, got {self.n!r}")
        if not 0.0 <= self.rho < 1.0:
            raise DomainError(f"rho must lie in [0, 1), got {self.rho}")
        if self.draws < 1:
            raise DomainError(f"draws must be >= 1, got {self.draws}")


@dataclass(frozen=True)
class CellResult:
    n: int
    rho: float
    rev_english_spsb: float
    rev_dutch_fpsb: float
    rev_allpay_ipv: float
    se_english: float
    se_fpsb: float
    se_allpay: float
    draws: int
    seed: int


@dataclass(frozen=True)
class RevenueGrid:
    n_values: tuple
    rho_values: tuple
    cells: tuple  # tuple of tuples of CellResult, |n_values| x |rho_values|
    params: LognormalParams
    created_at: str
    config_digest: str
    master_seed: int
    draws: int
    backend: str

    def cell(self, n, rho):
        i = self.n_values.index(n)
        j = min(
            range(len(self.rho_values)),
            key=lambda k: abs(self.rho_values[k] - rho),
        )
        if abs(self.rho_values[j] - rho) > 1e-9:
            raise DomainError(f"rho={rho} not in grid")
        return self.cells[i][j]

    def column(self, field, rho):
        j = self.rho_values.index(rho)
        return np.array([getattr(row[j], field) for row in self.cells])


def cell_seed(master_seed, i, j, role):
    """Derived substream seed for cell (i, j); role 0 solver, 1 simulation."""
    seq = np.random.SeedSequence(master_seed, spawn_key=(i, j, role))
    return int(seq.generate_state(1, np.uint64)[0])


def _timestamp():
    # SOURCE_DATE_EPOCH pins the timestamp for byte-identical reruns
    env = os.environ.get("SOURCE_DATE_EPOCH")
    t = int(env) if env else time.time()
    return datetime.fromtimestamp(t, tz=timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def config_digest(payload):
    """sha256 of the canonical JSON of resolved run parameters."""
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def simulate_cell(scenario, bid_fn):
    """Revenue triple and standard errors for one cell.

    The bid function must have been solved for the same (n, rho, params).
    """
    if not isinstance(bid_fn, BidFunction):
        raise ConfigMismatchError("bid_fn must be a BidFunction")
    if (
        bid_fn.n != scenario.n
        or bid_fn.rho != scenario.rho
        or bid_fn.params != scenario.params
    ):
        raise ConfigMismatchError(
            f"bid function solved for (n={bid_fn.n}, rho={bid_fn.rho}, "
            f"params={bid_fn.params}) but scenario is (n={scenario.n}, "
            f"rho={scenario.rho}, params={scenario.params})"
        )
    p = scenario.params
    rng = np.random.default_rng(scenario.seed)
    sums = np.zeros(3)
    sumsq = np.zeros(3)
    remaining = scenario.draws
    while remaining > 0:
        b = min(SIM_BATCH, remaining)
        common = rng.standard_normal(b)
        shocks = rng.standard_normal((b, scenario.n))
        z_aff = signals_from_factors(common, shocks, scenario.rho)
        z1, z2 = _kernels.top_two(z_aff)
        pay_english = np.exp(p.mu + p.sigma * z2)
        pay_fpsb = evaluate_bid_at_signal(bid_fn, z1)
        # benchmark column: same shocks with the common factor off
        _, e2 = _kernels.top_two(shocks)
        pay_allpay = np.exp(p.mu + p.sigma * e2)
        for idx, pay in enumerate((pay_english, pay_fpsb, pay_allpay)):
            sums[idx] += pay.sum()
            sumsq[idx] += (pay * pay).sum()
        remaining -= b
    d = scenario.draws
    means = sums / d
    if d > 1:
        var = np.maximum(0.0, (sumsq - d * means**2) / (d - 1))
        ses = np.sqrt(var / d)
    else:
        ses = np.zeros(3)
    return CellResult(
        n=scenario.n,
        rho=scenario.rho,
        rev_english_spsb=float(means[0]),
        rev_dutch_fpsb=float(means[1]),
        rev_allpay_ipv=float(means[2]),
        se_english=float(ses[0]),
        se_fpsb=float(ses[1]),
        se_allpay=float(ses[2]),
        draws=d,
        seed=scenario.seed,
    )


def run_grid(
    n_values=DEFAULT_N_VALUES,
    rho_values=DEFAULT_RHO_VALUES,
    params=None,
    draws=DEFAULT_DRAWS,
    master_seed=0,
    grid_nodes=None,
    mc_samples=None,
    bid_function_cache=None,
    progress=None,
):
    """Simulate every (n, rho) cell; aborts on the first solver failure.

    `bid_function_cache` is an optional mutable mapping reused across
    runs; solved functions are inserted under their configuration key.
    """
    from .equilibrium_affiliated import DEFAULT_GRID_NODES, DEFAULT_MC_SAMPLES

    if params is None:
        raise DomainError("params is required")
    n_values = tuple(int(n) for n in n_values)
    rho_values = tuple(float(r) for r in rho_values)
    if not n_values or not rho_values:
        raise DomainError("n_values and rho_values must be non-empty")
    grid_nodes = DEFAULT_GRID_NODES if grid_nodes is None else grid_nodes
    mc_samples = DEFAULT_MC_SAMPLES if mc_samples is None else mc_samples

    rows = []
    for i, n in enumerate(n_values):
        row = []
        for j, rho in enumerate(rho_values):
            solver_seed = cell_seed(master_seed, i, j, 0)
            sim_seed = cell_seed(master_seed, i, j, 1)
            key = bid_function_key(n, rho, params, grid_nodes, mc_samples, solver_seed)
            bf = bid_function_cache.get(key) if bid_function_cache is not None else None
            if bf is None:
                try:
                    bf = solve_bid_function(
                        n, rho, params, grid_nodes, mc_samples, solver_seed
                    )
                except SolverError as exc:
                    raise SolverError(
                        f"cell (n={n}, rho={rho}): {exc}", node_index=exc.node_index
                    ) from exc
                if bid_function_cache is not None:
                    bid_function_cache[key] = bf
            scenario = AuctionScenario(n=n, rho=rho, params=params, draws=draws, seed=sim_seed)
            row.append(simulate_cell(scenario, bf))
            if progress is not None:
                progress(n, rho)
        rows.append(tuple(row))

    digest = config_digest(
        {
            "format": _GRID_FORMAT,
            "backend": _kernels.active_backend(),
            "mu": params.mu,
            "sigma": params.sigma,
            "n_values": list(n_values),
            "rho_values": list(rho_values),
            "draws": draws,
            "master_seed": master_seed,
            "grid_nodes": grid_nodes,
            "mc_samples": mc_samples,
        }
    )
    return RevenueGrid(
        n_values=n_values,
        rho_values=rho_values,
        cells=tuple(rows),
        params=params,
        created_at=_timestamp(),
        config_digest=digest,
        master_seed=master_seed,
        draws=draws,
        backend=_kernels.active_backend(),
    )


def bid_function_key(n, rho, params, grid_nodes, mc_samples, seed):
    return json.dumps(
        {
            "n": n,
            "rho": rho,
            "mu": params.mu,
            "sigma": params.sigma,
            "grid_nodes": grid_nodes,
            "mc_samples": mc_samples,
            "seed": seed,
            "backend": _kernels.active_backend(),
        },
        sort_keys=True,
    )


def _combined_se(a, b):
    return float(np.hypot(a, b))


def verify_revenue_equivalence(grid, noise_floor_pct=0.5):
    """Per-n relative |FPSB - English| gaps at rho = 0.

    A gap is flagged when it exceeds noise_floor_pct plus three combined
    standard errors.  The SEs are combined as if independent; since the
    estimators share draws their difference actually varies less, so the
    floor is conservative in the safe direction.
    """
    try:
        j = next(k for k, r in enumerate(grid.rho_values) if abs(r) < 1e-12)
    except StopIteration:
        raise DomainError("grid has no rho = 0 column") from None
    rows = []
    ok = True
    for i, n in enumerate(grid.n_values):
        c = grid.cells[i][j]
        gap = abs(c.rev_dutch_fpsb - c.rev_english_spsb) / c.rev_english_spsb
        se = _combined_se(c.se_english, c.se_fpsb) / c.rev_english_spsb
        tol = noise_floor_pct / 100.0 + 3.0 * se
        rows.append(
            {
                "n": n,
                "rev_english_spsb": c.rev_english_spsb,
                "rev_dutch_fpsb": c.rev_dutch_fpsb,
                "rev_allpay_ipv": c.rev_allpay_ipv,
                "gap_pct": 100.0 * gap,
                "tolerance_pct": 100.0 * tol,
                "pass": bool(gap <= tol),
            }
        )
        ok &= gap <= tol
    return {"check": "revenue_equivalence", "rho": 0.0, "rows": rows, "pass": bool(ok)}


def verify_linkage(grid):
    """Cellwise English >= FPSB >= all-pay for every rho > 0, within 3
    combined SEs; also emits the headline gap percentages."""
    rows = []
    ok = True
    for i, n in enumerate(grid.n_values):
        for j, rho in enumerate(grid.rho_values):
            if rho <= 0:
                continue
            c = grid.cells[i][j]
            slack_ef = 3.0 * _combined_se(c.se_english, c.se_fpsb)
            slack_fa = 3.0 * _combined_se(c.se_fpsb, c.se_allpay)
            ranking_ok = (
                c.rev_english_spsb >= c.rev_dutch_fpsb - slack_ef
                and c.rev_dutch_fpsb >= c.rev_allpay_ipv - slack_fa
            )
            rows.append(
                {
                    "n": n,
                    "rho": rho,
                    "rev_english_spsb": c.rev_english_spsb,
                    "rev_dutch_fpsb": c.rev_dutch_fpsb,
                    "rev_allpay_ipv": c.rev_allpay_ipv,
                    "linkage_gap_pct": 100.0
                    * (c.rev_english_spsb - c.rev_dutch_fpsb)
                    / c.rev_dutch_fpsb,
                    "fpsb_vs_allpay_pct": 100.0
                    * (c.rev_dutch_fpsb - c.rev_allpay_ipv)
                    / c.rev_allpay_ipv,
                    "pass": bool(ranking_ok),
                }
            )
            ok &= ranking_ok
    if not rows:
        raise DomainError("grid has no rho > 0 columns")
    return {"check": "linkage", "rows": rows, "pass": bool(ok)}


# ---------------------------------------------------------------------------
# serialization

def _float_repr(x):
    return repr(float(x))


def grid_to_csv(grid, path=None):
    """One row per cell.  Deterministic bytes for a fixed seed/backend:
    shortest round-trip float formatting and no timestamp."""
    buf = io.StringIO()
    buf.write(f"# auctionlab revenue grid digest={grid.config_digest} "
              f"master_seed={grid.master_seed} backend={grid.backend}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_COLUMNS)
    for row in grid.cells:
        for c in row:
            writer.writerow(
                [
                    c.n,
                    _float_repr(c.rho),
                    _float_repr(c.rev_english_spsb),
                    _float_repr(c.rev_dutch_fpsb),
                    _float_repr(c.rev_allpay_ipv),
                    _float_repr(c.se_english),
                    _float_repr(c.se_fpsb),
                    _float_repr(c.se_allpay),
                    c.draws,
                    c.seed,
                ]
            )
    text = buf.getvalue()
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def grid_to_dict(grid):
    return {
        "format": _GRID_FORMAT,
        "version": _package_version(),
        "created_at": grid.created_at,
        "config_digest": grid.config_digest,
        "backend": grid.backend,
        "master_seed": grid.master_seed,
        "draws": grid.draws,
        "mu": grid.params.mu,
        "sigma": grid.params.sigma,
        "n_values": list(grid.n_values),
        "rho_values": list(grid.rho_values),
        "cells": [
            [
                {
                    "n": c.n,
                    "rho": c.rho,
                    "rev_english_spsb": c.rev_english_spsb,
                    "rev_dutch_fpsb": c.rev_dutch_fpsb,
                    "rev_allpay_ipv": c.rev_allpay_ipv,
                    "se_english": c.se_english,
                    "se_fpsb": c.se_fpsb,
                    "se_allpay": c.se_allpay,
                    "draws": c.draws,
                    "seed": c.seed,
                }
                for c in row
            ]
            for row in grid.cells
        ],
    }


def grid_to_json(grid, path=None):
    text = json.dumps(grid_to_dict(grid), indent=1)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def grid_from_json(path_or_text):
    if isinstance(path_or_text, str) and path_or_text.lstrip().startswith("{"):
        doc = json.loads(path_or_text)
    else:
        with open(path_or_text) as fh:
            doc = json.load(fh)
    if doc.get("format") != _GRID_FORMAT:
        raise IngestError(f"not a revenue grid document: {doc.get('format')!r}")
    params = LognormalParams(mu=doc["mu"], sigma=doc["sigma"])
    cells = tuple(
        tuple(CellResult(**cell) for cell in row) for row in doc["cells"]
    )
    return RevenueGrid(
        n_values=tuple(doc["n_values"]),
        rho_values=tuple(doc["rho_values"]),
        cells=cells,
        params=params,
        created_at=doc["created_at"],
        config_digest=doc["config_digest"],
        master_seed=doc["master_seed"],
        draws=doc["draws"],
        backend=doc["backend"],
    )


def _package_version():
    from . import __version__

    return __version__


# ---------------------------------------------------------------------------
# published reference tables

_REFERENCE_NAMES = ("english_spsb", "dutch_fpsb", "allpay_ipv")


def load_reference_table(name):
    """Bundled published revenue table: n_values, rho_values, value matrix."""
    if name not in _REFERENCE_NAMES:
        raise DomainError(f"unknown reference table {name!r}; expected {_REFERENCE_NAMES}")
    text = (
        resources.files("auctionlab")
        .joinpath(f"fixtures/v1/{name}.csv")
        .read_text()
    )
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    rho_values = tuple(float(x) for x in header[1:])
    n_values = []
    values = []
    for row in reader:
        n_values.append(int(row[0]))
        values.append([float(x) for x in row[1:]])
    return {
        "n_values": tuple(n_values),
        "rho_values": rho_values,
        "values": np.array(values),
    }


def reference_grid():
    """The published tables repackaged as a RevenueGrid (SEs zero, for
    metric transforms and spot checks)."""
    tables = {name: load_reference_table(name) for name in _REFERENCE_NAMES}
    base = tables["english_spsb"]
    cells = []
    for i, n in enumerate(base["n_values"]):
        row = []
        for j, rho in enumerate(base["rho_values"]):
            row.append(
                CellResult(
                    n=n,
                    rho=rho,
                    rev_english_spsb=float(tables["english_spsb"]["values"][i, j]),
                    rev_dutch_fpsb=float(tables["dutch_fpsb"]["values"][i, j]),
                    rev_allpay_ipv=float(tables["allpay_ipv"]["values"][i, j]),
                    se_english=0.0,
                    se_fpsb=0.0,
                    se_allpay=0.0,
                    draws=1_000_000,
                    seed=0,
                )
            )
        cells.append(tuple(row))
    return RevenueGrid(
        n_values=base["n_values"],
        rho_values=base["rho_values"],
        cells=tuple(cells),
        params=LognormalParams(mu=1.102, sigma=2.524),
        created_at="",
        config_digest="reference/v1",
        master_seed=0,
        draws=1_000_000,
        backend="reference",
    )
