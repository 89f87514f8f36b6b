"""Schema-conformant synthetic transaction generator.

Every test and demo runs without proprietary data: the generator draws
extracted values from a chosen log-normal, assigns MEV types by weight,
and splits value into tip and profit under a configurable bribe model.

Bribe models
------------
``fpsb``
    Each transaction is the winner of an independent-values first-price
    auction among ``n_by_type[mev_type]`` bidders: the extracted value is
    the highest of n value draws and the tip is the equilibrium bid at
    that value (quadrature form, an independent route from the ODE
    solver that calibration uses).
``uniform``
    Values are single draws; the bribe share is Uniform(0.05, 0.95).
    Useful for ingestion and summary tests where no equilibrium
    structure is wanted.
"""

import csv
import io

import numpy as np

from .distributions import LognormalParams
from .empirics import MEV_TYPES, TransactionRecord
from .equilibrium_ipv import fpsb_bid_ipv
from .errors import DomainError

DEFAULT_TYPE_MIX = {
    "sandwich": 0.40,
    "naked_arb": 0.41,
    "backrun": 0.18,
    "liquidation": 0.01,
}

# stylized competition levels per type: commoditized sandwiches crowded,
# specialized liquidations thin
DEFAULT_N_BY_TYPE = {
    "sandwich": 12,
    "naked_arb": 3,
    "backrun": 5,
    "liquidation": 2,
}


def generate_transactions(
    count,
    params,
    seed,
    type_mix=None,
    bribe_model="fpsb",
    n_by_type=None,
):
    """Generate `count` TransactionRecords; deterministic in the seed."""
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    if bribe_model not in ("fpsb", "uniform"):
        raise DomainError(f"unknown bribe model {bribe_model!r}")
    mix = dict(DEFAULT_TYPE_MIX if type_mix is None else type_mix)
    unknown = set(mix) - set(MEV_TYPES)
    if unknown:
        raise DomainError(f"unknown mev types in mix: {sorted(unknown)}")
    weights = np.array([mix.get(t, 0.0) for t in MEV_TYPES], dtype=float)
    if weights.sum() <= 0 or np.any(weights < 0):
        raise DomainError("type mix weights must be non-negative and sum > 0")
    weights /= weights.sum()
    n_by_type = dict(DEFAULT_N_BY_TYPE if n_by_type is None else n_by_type)

    rng = np.random.default_rng(seed)
    type_idx = rng.choice(len(MEV_TYPES), size=count, p=weights)
    blocks = np.cumsum(rng.integers(1, 4, size=count)) + 21_000_000
    hashes = [f"0x{rng.integers(0, 2**63):016x}{i:08x}" for i in range(count)]

    tips = np.empty(count)
    values = np.empty(count)
    for t_i, t in enumerate(MEV_TYPES):
        mask = type_idx == t_i
        m = int(mask.sum())
        if m == 0:
            continue
        if bribe_model == "uniform":
            v = np.exp(params.mu + params.sigma * rng.standard_normal(m))
            share = rng.uniform(0.05, 0.95, size=m)
            values[mask] = v
            tips[mask] = share * v
        else:
            n = int(n_by_type.get(t, 2))
            if n < 2:
                raise DomainError(f"n_by_type[{t!r}] must be >= 2, got {n}")
            draws = params.mu + params.sigma * rng.standard_normal((m, n))
            v1 = np.exp(draws.max(axis=1))
            values[mask] = v1
            tips[mask] = fpsb_bid_ipv(v1, n, params)

    records = []
    for i in range(count):
        tip = float(tips[i])
        records.append(
            TransactionRecord(
                tx_hash=hashes[i],
                block_number=int(blocks[i]),
                mev_type=MEV_TYPES[type_idx[i]],
                tip=tip,
                profit=float(values[i]) - tip,
            )
        )
    return records


def transactions_to_csv(records, path=None):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["tx_hash", "block_number", "mev_type", "tip", "profit"])
    for r in records:
        writer.writerow([r.tx_hash, r.block_number, r.mev_type, repr(r.tip), repr(r.profit)])
    text = buf.getvalue()
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text
