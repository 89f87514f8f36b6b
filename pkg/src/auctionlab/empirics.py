"""Transaction ingestion, descriptive statistics, and calibration.

Input schema: comma-delimited text with the exact header
``tx_hash,block_number,mev_type,tip,profit``.  A transaction's extracted
value is tip + profit and its bribe percentage tip / (tip + profit); rows
that cannot yield a positive extracted value are rejected with a logged
reason rather than silently dropped (ingest is lossless-or-logged).
"""

import csv
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .affiliation import AffiliationModel, sample_signals
from .distributions import LognormalParams
from .equilibrium_affiliated import evaluate_bid_at_signal, solve_bid_function
from .errors import (
    CalibrationError,
    DomainError,
    InsufficientDataError,
    IngestError,
    SolverError,
)
from . import _kernels

log = logging.getLogger(__name__)

MEV_TYPES = ("sandwich", "naked_arb", "backrun", "liquidation")

EXPECTED_HEADER = ("tx_hash", "block_number", "mev_type", "tip", "profit")


@dataclass(frozen=True)
class TransactionRecord:
    tx_hash: str
    block_number: int
    mev_type: str
    tip: float
    profit: float

    @property
    def extracted_value(self):
        return self.tip + self.profit

    @property
    def bribe_percentage(self):
        return self.tip / self.extracted_value


@dataclass(frozen=True)
class TypeSummary:
    mev_type: str
    count: int
    total_musd: float       # millions of USD, the headline unit
    mean_usd: float
    median_usd: float
    std_dev_usd: float      # sample (N-1) standard deviation
    mean_bribe_pct: float   # in [0, 100]
    degenerate_sd: bool = field(default=False)  # single record, sd reported as 0


def load_transactions(path):
    """Parse a transaction file; returns (records, rejections).

    Rejections are dicts with the 1-based data row number and a reason.
    Structural problems (missing file, wrong header) raise IngestError.
    """
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc
    records = []
    rejections = []
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise IngestError(f"{path}: empty file, expected header row") from None
        if tuple(h.strip() for h in header) != EXPECTED_HEADER:
            raise IngestError(
                f"{path}: malformed header {header!r}, expected {list(EXPECTED_HEADER)}"
            )

        def reject(row_no, reason):
            rejections.append({"row": row_no, "reason": reason})

        for row_no, row in enumerate(reader, start=1):
            if len(row) != 5:
                reject(row_no, f"expected 5 fields, got {len(row)}")
                continue
            tx_hash, block_s, mev_type, tip_s, profit_s = (f.strip() for f in row)
            try:
                block = int(block_s)
                tip = float(tip_s)
                profit = float(profit_s)
            except ValueError as exc:
                reject(row_no, f"unparseable numeric field: {exc}")
                continue
            if mev_type not in MEV_TYPES:
                reject(row_no, f"unknown mev_type {mev_type!r}")
                continue
            if tip < 0 or profit < 0:
                reject(row_no, "negative tip or profit")
                continue
            if tip + profit <= 0 or not math.isfinite(tip + profit):
                reject(row_no, "non-positive extracted value")
                continue
            records.append(
                TransactionRecord(
                    tx_hash=tx_hash,
                    block_number=block,
                    mev_type=mev_type,
                    tip=tip,
                    profit=profit,
                )
            )
    if rejections:
        log.info("%s: %d rows rejected (first: row %d, %s)", path,
                 len(rejections), rejections[0]["row"], rejections[0]["reason"])
    return records, rejections


def _summary(label, values, bribes):
    count = len(values)
    degenerate = count == 1
    return TypeSummary(
        mev_type=label,
        count=count,
        total_musd=float(values.sum()) / 1e6,
        mean_usd=float(values.mean()),
        median_usd=float(np.median(values)),
        std_dev_usd=0.0 if degenerate else float(values.std(ddof=1)),
        mean_bribe_pct=100.0 * float(bribes.mean()),
        degenerate_sd=degenerate,
    )


def summarize_by_type(records):
    """Per-type summaries plus a pooled row labeled ``all``."""
    if not records:
        raise InsufficientDataError("no records to summarize")
    values = np.array([r.extracted_value for r in records])
    bribes = np.array([r.bribe_percentage for r in records])
    types = np.array([r.mev_type for r in records])
    out = []
    for t in MEV_TYPES:
        mask = types == t
        if mask.any():
            out.append(_summary(t, values[mask], bribes[mask]))
    out.append(_summary("all", values, bribes))
    return out


def empirical_gini(values):
    """Rank-weighted sample Gini of positive values, O(N log N)."""
    arr = np.sort(np.asarray(values, dtype=float))
    if arr.size < 2:
        raise InsufficientDataError("need at least 2 values")
    if arr[0] <= 0:
        raise DomainError("values must be strictly positive")
    n = arr.size
    ranks = np.arange(1, n + 1)
    return float(2.0 * np.dot(ranks, arr) / (n * arr.sum()) - (n + 1.0) / n)


def pareto_curve(values, top_fractions):
    """Cumulative value share of the top fraction of transactions.

    Each fraction f maps to the ceil(f * N) largest values, so requesting
    the top 1% of 100 values selects exactly one.
    """
    arr = np.sort(np.asarray(values, dtype=float))[::-1]
    if arr.size == 0:
        raise InsufficientDataError("no values")
    if arr[-1] <= 0:
        raise DomainError("values must be strictly positive")
    total = arr.sum()
    cum = np.cumsum(arr)
    out = []
    for f in top_fractions:
        if not 0.0 < f < 1.0:
            raise DomainError(f"top fraction must lie in (0, 1), got {f}")
        k = max(1, math.ceil(f * arr.size))
        out.append((float(f), float(cum[k - 1] / total)))
    return out


@dataclass(frozen=True)
class CalibrationResult:
    n_hat: int
    observed_bribe_pct: float  # fraction in (0, 1)
    table: tuple               # (candidate n, simulated mean bribe ratio) pairs
    rho: float
    draws: int
    seed: int


def simulated_bribe_ratio(n, rho, params, draws, seed, grid_nodes=None, mc_samples=None):
    """Mean over auctions of beta(v_(1)) / v_(1), the per-auction bribe
    share the equilibrium predicts for winners."""
    solver_seed = int(np.random.SeedSequence(seed, spawn_key=(n, 0)).generate_state(1)[0])
    sim_seed = int(np.random.SeedSequence(seed, spawn_key=(n, 1)).generate_state(1)[0])
    kw = {}
    if grid_nodes is not None:
        kw["grid_nodes"] = grid_nodes
    if mc_samples is not None:
        kw["mc_samples"] = mc_samples
    bf = solve_bid_function(n, rho, params, seed=solver_seed, **kw)
    model = AffiliationModel(rho=rho, n=n, params=params)
    signals = sample_signals(model, draws, sim_seed)
    z1, _ = _kernels.top_two(signals)
    v1 = np.exp(params.mu + params.sigma * z1)
    return float(np.mean(evaluate_bid_at_signal(bf, z1) / v1))


def calibrate_n(
    observed_mean_bribe_pct,
    params,
    rho,
    candidates,
    draws=100_000,
    seed=0,
    grid_nodes=None,
    mc_samples=None,
):
    """Pick the bidder count whose simulated bribe ratio is closest to the
    observed mean bribe percentage (a fraction in (0, 1)).

    The candidate-vs-ratio table must be non-decreasing in n (more
    competition always shrinks shading); a violation means the simulation
    settings are too noisy to calibrate and raises CalibrationError.
    """
    if not 0.0 < observed_mean_bribe_pct < 1.0:
        raise DomainError(
            f"observed bribe percentage must lie in (0, 1), got {observed_mean_bribe_pct}"
        )
    cand = sorted(set(int(c) for c in candidates))
    if not cand:
        raise CalibrationError("no candidates supplied")
    table = []
    failures = []
    for n in cand:
        try:
            ratio = simulated_bribe_ratio(
                n, rho, params, draws, seed, grid_nodes, mc_samples
            )
        except SolverError as exc:
            failures.append((n, str(exc)))
            log.warning("candidate n=%d failed: %s", n, exc)
            continue
        table.append((n, ratio))
    if not table:
        raise CalibrationError(f"every candidate failed to solve: {failures}")
    ratios = [r for _, r in table]
    if any(b < a for a, b in zip(ratios, ratios[1:])):
        raise CalibrationError(
            f"simulated bribe ratios are not non-decreasing in n: {table}; "
            "increase draws or mc_samples"
        )
    n_hat = min(table, key=lambda item: abs(item[1] - observed_mean_bribe_pct))[0]
    return CalibrationResult(
        n_hat=n_hat,
        observed_bribe_pct=float(observed_mean_bribe_pct),
        table=tuple(table),
        rho=float(rho),
        draws=draws,
        seed=seed,
    )


def estimate_rho_icc(grouped_log_bids):
    """One-way random-effects intra-class correlation of log-bids.

    `grouped_log_bids` is an iterable of (opportunity_id, log_bids).
    Groups with fewer than two bids carry no within-group information and
    are dropped with a logged count.  Result clamped to [0, 1).
    """
    groups = []
    dropped = 0
    for _, bids in grouped_log_bids:
        arr = np.asarray(bids, dtype=float)
        if arr.size >= 2:
            groups.append(arr)
        else:
            dropped += 1
    if dropped:
        log.info("estimate_rho_icc: dropped %d single-bid group(s)", dropped)
    k = len(groups)
    if k < 2:
        raise InsufficientDataError(
            f"need at least 2 groups with >= 2 bids each, have {k}"
        )
    sizes = np.array([g.size for g in groups], dtype=float)
    total = sizes.sum()
    grand = sum(g.sum() for g in groups) / total
    ss_between = float(sum(s * (g.mean() - grand) ** 2 for s, g in zip(sizes, groups)))
    ss_within = float(sum(((g - g.mean()) ** 2).sum() for g in groups))
    ms_between = ss_between / (k - 1)
    ms_within = ss_within / (total - k)
    # unbalanced-design group size
    n0 = (total - np.dot(sizes, sizes) / total) / (k - 1)
    var_between = max(0.0, (ms_between - ms_within) / n0)
    denom = var_between + ms_within
    if denom == 0.0:
        return 0.0
    return float(np.clip(var_between / denom, 0.0, 1.0 - 1e-12))
