"""Command line front end.

Subcommands map onto the library's pipeline stages:

    generate    emit schema-conformant synthetic transactions
    fit         maximum-likelihood log-normal parameters from a file
    analyze     per-type summary table, Gini, tail value shares
    grid        solve and simulate the (n, rho) revenue grid
    verify      revenue-equivalence and ranking checks on a saved grid
    metrics     gap and premium surfaces plus dollar projections
    calibrate   per-type implied bidder count and format recommendation

Exit codes are a stable contract for CI: 0 success, 1 operational error
(bad input, solver failure, unreadable file), 2 verification failure.

Every artifact written embeds the package version, active kernel
backend, seed, and a digest of the resolved run configuration, so any
output can be traced to the exact run that produced it.  Timestamps
honor SOURCE_DATE_EPOCH for byte-identical reruns.  When -o is omitted,
outputs land under $AUCTIONLAB_OUT (default: current directory).
"""

import argparse
import dataclasses
import json
import logging
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, _kernels
from .distributions import LognormalParams, fit_mle, log_sample_moments
from .empirics import (
    MEV_TYPES,
    calibrate_n,
    empirical_gini,
    load_transactions,
    pareto_curve,
    summarize_by_type,
)
from .equilibrium_affiliated import BidFunction
from .errors import AuctionLabError, CalibrationError, DomainError, IngestError
from .metrics import (
    affiliation_premium,
    dollar_foregone,
    linkage_gap,
    surface_to_csv,
    surface_to_long_json,
    surface_to_rows,
)
from .simulate import (
    DEFAULT_DRAWS,
    DEFAULT_MASTER_SEED,
    DEFAULT_N_VALUES,
    DEFAULT_RHO_VALUES,
    _timestamp,
    config_digest,
    grid_from_json,
    grid_to_csv,
    grid_to_json,
    run_grid,
    verify_linkage,
    verify_revenue_equivalence,
)
from .synthetic import (
    DEFAULT_N_BY_TYPE,
    DEFAULT_TYPE_MIX,
    generate_transactions,
    transactions_to_csv,
)

log = logging.getLogger("auctionlab")

_PARAMS_FORMAT = "auctionlab.params.v1"
_CACHE_FORMAT = "auctionlab.bid_function_cache.v1"

# parameterization of the bundled reference tables
REFERENCE_MU = 1.102
REFERENCE_SIGMA = 2.524


class _Parser(argparse.ArgumentParser):
    """Usage errors exit 1; code 2 is reserved for verification failures."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# small shared helpers

def _int_list(text):
    return [int(tok) for tok in text.replace(",", " ").split()]


def _float_list(text):
    return [float(tok) for tok in text.replace(",", " ").split()]


def _kv_dict(text, cast):
    out = {}
    for tok in text.replace(",", " ").split():
        key, sep, val = tok.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, got {tok!r}")
        out[key] = cast(val)
    return out


def _out_path(arg, default_name):
    if arg is not None:
        return Path(arg)
    return Path(os.environ.get("AUCTIONLAB_OUT", ".")) / default_name


def _stamp(doc, seed, digest):
    doc["version"] = __version__
    doc["backend"] = _kernels.active_backend()
    doc["created_at"] = _timestamp()
    doc["seed"] = seed
    doc["config_digest"] = digest
    return doc


def _write_json(doc, path):
    path = Path(path)
    if str(path.parent) not in ("", ".") and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def _write_text(text, path):
    path = Path(path)
    if str(path.parent) not in ("", ".") and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        fh.write(text)


def _resolve_params(args):
    if args.params is not None:
        with open(args.params) as fh:
            doc = json.load(fh)
        if doc.get("format") != _PARAMS_FORMAT:
            raise IngestError(
                f"{args.params}: not a parameter file (format={doc.get('format')!r})"
            )
        return LognormalParams(mu=doc["mu"], sigma=doc["sigma"])
    return LognormalParams(mu=args.mu, sigma=args.sigma)


# ---------------------------------------------------------------------------
# recommendation rules

def recommend_format(rho, n_hat, high_trust=True, collusion_risk=False,
                     latency_critical=False):
    """Map an estimated (rho, n) and operational flags to a mechanism.

    Decision rules:

    1. open English/SPSB when the correlation is material (rho > 0.2)
       and the operational flags permit an open format: trusted
       operator, no collusion concern, no hard latency budget;
    2. sealed Dutch/FPSB otherwise, with every triggering reason listed;
    3. all-pay formats are never recommended: they are revenue-dominated
       at every competition level;
    4. callers route per segment, one recommendation per estimated pair.
    """
    blockers = []
    if collusion_risk:
        reason = "collusion risk: open bid revelation helps rings coordinate"
        if n_hat >= 10:
            reason += f" (n_hat={n_hat} already dilutes the open-format premium)"
        blockers.append(reason)
    if latency_critical:
        blockers.append("latency-critical flow cannot wait for an ascending clock")
    if not high_trust:
        blockers.append("untrusted operator: sealed bids limit the manipulation surface")
    if rho > 0.2 and not blockers:
        return {
            "recommended": "english_spsb",
            "avoid": "allpay_ipv",
            "reasons": [
                f"correlation rho={rho:g} > 0.2: open bidding lets prices"
                " incorporate rivals' information"
            ],
        }
    if rho <= 0.2:
        blockers.insert(
            0, f"correlation rho={rho:g} <= 0.2: linkage premium too small to matter"
        )
    return {"recommended": "dutch_fpsb", "avoid": "allpay_ipv", "reasons": blockers}


# ---------------------------------------------------------------------------
# subcommands

def cmd_generate(args):
    params = LognormalParams(mu=args.mu, sigma=args.sigma)
    mix = _kv_dict(args.type_mix, float) if args.type_mix else None
    nbt = _kv_dict(args.n_by_type, int) if args.n_by_type else None
    records = generate_transactions(
        args.count, params, args.seed,
        type_mix=mix, bribe_model=args.bribe_model, n_by_type=nbt,
    )
    out = _out_path(args.output, "transactions.csv")
    _write_text(transactions_to_csv(records), out)
    resolved = {
        "command": "generate",
        "count": args.count,
        "mu": params.mu,
        "sigma": params.sigma,
        "bribe_model": args.bribe_model,
        "type_mix": mix or DEFAULT_TYPE_MIX,
        "n_by_type": nbt or DEFAULT_N_BY_TYPE,
        "seed": args.seed,
    }
    # the transaction schema has no metadata slot, so provenance rides
    # in a sidecar instead of a comment line the ingester would reject
    meta = _stamp(dict(resolved, format="auctionlab.transactions_meta.v1"),
                  seed=args.seed, digest=config_digest(resolved))
    _write_json(meta, Path(str(out) + ".meta.json"))
    print(f"wrote {len(records)} transactions to {out}")
    return 0


def cmd_fit(args):
    records, rejections = load_transactions(args.input)
    values = [r.extracted_value for r in records]
    params = fit_mle(values)
    moments = log_sample_moments(values)
    digest = config_digest({"command": "fit", "input": str(args.input)})
    doc = _stamp(
        {
            "format": _PARAMS_FORMAT,
            "mu": params.mu,
            "sigma": params.sigma,
            "n_observations": len(records),
            "n_rejected": len(rejections),
            "log_skewness": moments["skewness"],
            "log_excess_kurtosis": moments["excess_kurtosis"],
        },
        seed=None,
        digest=digest,
    )
    out = _out_path(args.output, "params.json")
    _write_json(doc, out)
    print(f"mu_hat={params.mu!r} sigma_hat={params.sigma!r} "
          f"n={len(records)} rejected={len(rejections)}")
    for r in rejections[:5]:
        print(f"  rejected row {r['row']}: {r['reason']}")
    if len(rejections) > 5:
        print(f"  ... and {len(rejections) - 5} more")
    print(f"wrote {out}")
    return 0


def cmd_analyze(args):
    records, rejections = load_transactions(args.input)
    summaries = summarize_by_type(records)
    values = np.array([r.extracted_value for r in records])
    gini = empirical_gini(values)
    curve = pareto_curve(values, args.top_fractions)
    resolved = {
        "command": "analyze",
        "input": str(args.input),
        "top_fractions": [float(f) for f in args.top_fractions],
    }
    doc = _stamp(
        {
            "format": "auctionlab.analysis.v1",
            "n_observations": len(records),
            "n_rejected": len(rejections),
            "summary": [dataclasses.asdict(s) for s in summaries],
            "gini": gini,
            "pareto": [{"top_fraction": f, "value_share": s} for f, s in curve],
            "rejections": rejections[:20],
        },
        seed=None,
        digest=config_digest(resolved),
    )
    out = _out_path(args.output, "analysis.json")
    _write_json(doc, out)
    print(f"{'type':<12}{'count':>9}{'total_musd':>12}{'mean_usd':>12}"
          f"{'median_usd':>12}{'sd_usd':>14}{'bribe_pct':>10}")
    for s in summaries:
        print(f"{s.mev_type:<12}{s.count:>9}{s.total_musd:>12.1f}{s.mean_usd:>12.1f}"
              f"{s.median_usd:>12.2f}{s.std_dev_usd:>14.1f}{s.mean_bribe_pct:>10.1f}")
    print(f"gini={gini:.4f}")
    for f, s in curve:
        print(f"top {100 * f:g}% value share: {s:.4f}")
    print(f"wrote {out}")
    return 0


def cmd_grid(args):
    params = _resolve_params(args)
    out_csv = _out_path(args.output, "grid.csv")
    json_path = out_csv.with_suffix(".json")
    cache_path = out_csv.with_suffix(".bidfunctions.json")

    cache = {}
    if cache_path.exists():
        try:
            with open(cache_path) as fh:
                doc = json.load(fh)
            if doc.get("format") != _CACHE_FORMAT:
                raise IngestError(f"format={doc.get('format')!r}")
            cache = {k: BidFunction.from_dict(d) for k, d in doc["entries"].items()}
            log.info("reusing %d cached bid function(s) from %s", len(cache), cache_path)
        except (OSError, ValueError, KeyError, AuctionLabError) as exc:
            log.warning("rebuilding unusable bid-function cache %s: %s", cache_path, exc)
            cache = {}

    t0 = time.perf_counter()
    grid = run_grid(
        n_values=tuple(args.n_list),
        rho_values=tuple(args.rho_list),
        params=params,
        draws=args.draws,
        master_seed=args.seed,
        grid_nodes=args.grid_nodes,
        mc_samples=args.mc_samples,
        bid_function_cache=cache,
        progress=lambda n, rho: log.info("cell n=%d rho=%g done", n, rho),
    )
    elapsed = time.perf_counter() - t0

    _write_text(grid_to_csv(grid), out_csv)
    _write_json(json.loads(grid_to_json(grid)), json_path)
    _write_json(
        {
            "format": _CACHE_FORMAT,
            "version": __version__,
            "entries": {k: bf.to_dict() for k, bf in cache.items()},
        },
        cache_path,
    )
    print(f"grid {len(grid.n_values)}x{len(grid.rho_values)} draws={grid.draws} "
          f"seed={grid.master_seed} digest={grid.config_digest} "
          f"backend={grid.backend} elapsed={elapsed:.1f}s")
    for path in (out_csv, json_path, cache_path):
        print(f"wrote {path}")
    return 0


def _print_report(rep):
    if rep["check"] == "revenue_equivalence":
        print("revenue equivalence at rho=0 (noise floor plus 3 combined SEs):")
        for r in rep["rows"]:
            print(f"  n={r['n']:>2}: english={r['rev_english_spsb']:.4f} "
                  f"fpsb={r['rev_dutch_fpsb']:.4f} gap={r['gap_pct']:.2f}% "
                  f"tol={r['tolerance_pct']:.2f}% "
                  f"{'PASS' if r['pass'] else 'FAIL'}")
    else:
        print("ranking english >= fpsb >= allpay at rho > 0 (3 combined SEs):")
        for r in rep["rows"]:
            print(f"  n={r['n']:>2} rho={r['rho']:g}: "
                  f"english={r['rev_english_spsb']:.2f} "
                  f"fpsb={r['rev_dutch_fpsb']:.2f} "
                  f"allpay={r['rev_allpay_ipv']:.2f} "
                  f"gap={r['linkage_gap_pct']:+.2f}% "
                  f"{'PASS' if r['pass'] else 'FAIL'}")
    print(f"  => {rep['check']}: {'PASS' if rep['pass'] else 'FAIL'}")


def cmd_verify(args):
    grid = grid_from_json(args.grid)
    reports = {}
    skipped = {}
    try:
        reports["revenue_equivalence"] = verify_revenue_equivalence(
            grid, noise_floor_pct=args.noise_floor
        )
    except DomainError as exc:
        skipped["revenue_equivalence"] = str(exc)
    try:
        reports["linkage"] = verify_linkage(grid)
    except DomainError as exc:
        skipped["linkage"] = str(exc)
    if not reports:
        raise DomainError("grid supports neither check: " + "; ".join(skipped.values()))

    for rep in reports.values():
        _print_report(rep)
    for name, why in skipped.items():
        print(f"  => {name}: skipped ({why})")

    ok = all(rep["pass"] for rep in reports.values())
    if args.output is not None:
        doc = _stamp(
            {
                "format": "auctionlab.verify_report.v1",
                "source_digest": grid.config_digest,
                "pass": ok,
                "reports": reports,
                "skipped": skipped,
            },
            seed=grid.master_seed,
            digest=config_digest(
                {
                    "command": "verify",
                    "source_digest": grid.config_digest,
                    "noise_floor_pct": args.noise_floor,
                }
            ),
        )
        _write_json(doc, args.output)
        print(f"wrote {args.output}")
    if not ok:
        for name, rep in reports.items():
            for r in rep["rows"]:
                if not r["pass"]:
                    where = f"n={r['n']}" + (f" rho={r['rho']:g}" if "rho" in r else "")
                    print(f"verification failed: {name} {where}", file=sys.stderr)
        return 2
    return 0


def cmd_metrics(args):
    grid = grid_from_json(args.grid)
    outdir = _out_path(args.output, "metrics")
    outdir.mkdir(parents=True, exist_ok=True)

    gap = linkage_gap(grid)
    prem_english, prem_fpsb = affiliation_premium(grid)
    for surface, stem in (
        (gap, "linkage_gap"),
        (prem_english, "premium_english_spsb"),
        (prem_fpsb, "premium_dutch_fpsb"),
    ):
        surface_to_csv(surface, outdir / f"{stem}.csv")
        surface_to_long_json(surface, outdir / f"{stem}.long.json")

    # dollar projection per cell; sampling noise can push a gap a hair
    # below zero, which projects to exactly zero dollars
    dollars = []
    for row in surface_to_rows(gap):
        if row["value_pct"] is None:
            continue
        dollars.append(
            {
                "n": row["n"],
                "rho": row["rho"],
                "gap_pct": row["value_pct"],
                "dollars_foregone": dollar_foregone(
                    max(row["value_pct"], 0.0), args.bribe_total
                ),
            }
        )
    argmax = gap.row_argmax()
    peaks = [argmax[n] for n in sorted(argmax)]
    shift_ok = all(b <= a + 1e-12 for a, b in zip(peaks, peaks[1:]))
    resolved = {
        "command": "metrics",
        "source_digest": grid.config_digest,
        "bribe_total": args.bribe_total,
    }
    summary = _stamp(
        {
            "format": "auctionlab.metrics.v1",
            "source_digest": grid.config_digest,
            "bribe_total": args.bribe_total,
            "noise_floor_pct": gap.noise_floor_pct,
            "gap_argmax_rho_by_n": {str(n): argmax[n] for n in sorted(argmax)},
            "gap_peak_rho_weakly_decreasing_in_n": shift_ok,
            "dollars": dollars,
        },
        seed=grid.master_seed,
        digest=config_digest(resolved),
    )
    _write_json(summary, outdir / "metrics_summary.json")

    print(f"linkage gap peak rho by n: "
          + " ".join(f"{n}:{argmax[n]:g}" for n in sorted(argmax)))
    print(f"peak rho weakly decreasing in n: {shift_ok}")
    biggest = max(dollars, key=lambda d: d["dollars_foregone"], default=None)
    if biggest is not None:
        print(f"largest projected loss: n={biggest['n']} rho={biggest['rho']:g} "
              f"gap={biggest['gap_pct']:.1f}% -> "
              f"${biggest['dollars_foregone'] / 1e6:.2f}M "
              f"of ${args.bribe_total / 1e6:.1f}M")
    print(f"wrote {outdir}/")
    return 0


def cmd_calibrate(args):
    params = _resolve_params(args)
    records, _ = load_transactions(args.input)
    if not records:
        raise IngestError(f"{args.input}: no usable records")
    results = []
    failures = []
    for t_i, t in enumerate(MEV_TYPES):
        recs = [r for r in records if r.mev_type == t]
        if not recs:
            continue
        observed = float(np.mean([r.bribe_percentage for r in recs]))
        type_seed = int(
            np.random.SeedSequence(args.seed, spawn_key=(t_i,)).generate_state(1)[0]
        )
        try:
            res = calibrate_n(
                observed, params, args.rho, args.candidates,
                draws=args.draws, seed=type_seed,
                grid_nodes=args.grid_nodes, mc_samples=args.mc_samples,
            )
        except AuctionLabError as exc:
            log.error("calibration failed for %s: %s", t, exc)
            failures.append({"mev_type": t, "count": len(recs), "error": str(exc)})
            continue
        rec = recommend_format(
            args.rho, res.n_hat,
            high_trust=args.high_trust,
            collusion_risk=args.collusion_risk,
            latency_critical=args.latency_critical,
        )
        results.append(
            {
                "mev_type": t,
                "count": len(recs),
                "observed_bribe_pct": 100.0 * observed,
                "n_hat": res.n_hat,
                "candidate_table": [
                    {"n": n, "simulated_bribe_pct": 100.0 * ratio}
                    for n, ratio in res.table
                ],
                "recommendation": rec,
            }
        )
        print(f"{t}: observed bribe {100 * observed:.1f}% over {len(recs)} tx "
              f"-> n_hat={res.n_hat}, recommend {rec['recommended']} "
              f"({'; '.join(rec['reasons'])})")
    for f in failures:
        print(f"{f['mev_type']}: calibration failed ({f['error']})", file=sys.stderr)
    if not results:
        raise CalibrationError(f"calibration failed for every type present: {failures}")
    resolved = {
        "command": "calibrate",
        "input": str(args.input),
        "rho": args.rho,
        "candidates": [int(c) for c in args.candidates],
        "draws": args.draws,
        "seed": args.seed,
        "mu": params.mu,
        "sigma": params.sigma,
        "flags": {
            "high_trust": args.high_trust,
            "collusion_risk": args.collusion_risk,
            "latency_critical": args.latency_critical,
        },
    }
    doc = _stamp(
        {
            "format": "auctionlab.calibration.v1",
            "rho": args.rho,
            "per_type": results,
            "failures": failures,
            "note": "all-pay formats are never recommended;"
                    " they are revenue-dominated at every (n, rho)",
        },
        seed=args.seed,
        digest=config_digest(resolved),
    )
    out = _out_path(args.output, "calibration.json")
    _write_json(doc, out)
    print(f"wrote {out}")
    return 0


# ---------------------------------------------------------------------------
# parser wiring

def _add_params_opts(sp):
    sp.add_argument("-p", "--params", metavar="JSON",
                    help="parameter file from `fit` (overrides --mu/--sigma)")
    sp.add_argument("--mu", type=float, default=REFERENCE_MU,
                    help="log-scale location (default: reference tables)")
    sp.add_argument("--sigma", type=float, default=REFERENCE_SIGMA,
                    help="log-scale dispersion (default: reference tables)")


def build_parser():
    p = _Parser(prog="auctionlab",
                description="Auction format comparison for MEV builder markets.")
    p.add_argument("--version", action="version", version=f"auctionlab {__version__}")
    p.add_argument("-q", "--quiet", action="store_true", help="log warnings only")
    sub = p.add_subparsers(dest="command", metavar="command", required=True)

    g = sub.add_parser("generate", help="emit synthetic transactions")
    g.add_argument("--count", type=int, default=10_000)
    g.add_argument("--mu", type=float, default=REFERENCE_MU)
    g.add_argument("--sigma", type=float, default=REFERENCE_SIGMA)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--bribe-model", choices=("fpsb", "uniform"), default="fpsb")
    g.add_argument("--type-mix", metavar="K=V,...",
                   help="type weights, e.g. sandwich=0.4,backrun=0.6")
    g.add_argument("--n-by-type", metavar="K=V,...",
                   help="bidder counts for the fpsb model, e.g. sandwich=12")
    g.add_argument("-o", "--output", help="CSV path (default transactions.csv)")
    g.set_defaults(func=cmd_generate)

    f = sub.add_parser("fit", help="fit log-normal parameters to a transaction file")
    f.add_argument("input")
    f.add_argument("-o", "--output", help="parameter JSON path (default params.json)")
    f.set_defaults(func=cmd_fit)

    a = sub.add_parser("analyze", help="summary table, Gini, tail shares")
    a.add_argument("input")
    a.add_argument("--top-fractions", type=_float_list, default=[0.01, 0.05, 0.10])
    a.add_argument("-o", "--output", help="JSON path (default analysis.json)")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("grid", help="solve and simulate the (n, rho) revenue grid")
    _add_params_opts(r)
    r.add_argument("--n-list", type=_int_list, default=list(DEFAULT_N_VALUES))
    r.add_argument("--rho-list", type=_float_list, default=list(DEFAULT_RHO_VALUES))
    r.add_argument("--draws", type=int, default=DEFAULT_DRAWS)
    r.add_argument("--seed", type=int, default=DEFAULT_MASTER_SEED)
    r.add_argument("--grid-nodes", type=int, default=None)
    r.add_argument("--mc-samples", type=int, default=None)
    r.add_argument("-o", "--output",
                   help="CSV path; JSON and bid-function cache written beside it")
    r.set_defaults(func=cmd_grid)

    v = sub.add_parser("verify", help="equivalence and ranking checks on a grid")
    v.add_argument("grid", help="grid JSON from `grid`")
    v.add_argument("--noise-floor", type=float, default=0.5,
                   help="relative gap floor in percent")
    v.add_argument("-o", "--output", help="optional JSON report path")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("metrics", help="gap/premium surfaces and dollar projections")
    m.add_argument("grid", help="grid JSON from `grid`")
    m.add_argument("--bribe-total", type=float, default=101.3e6,
                   help="dollar base for foregone-revenue projection")
    m.add_argument("-o", "--output", help="output directory (default metrics/)")
    m.set_defaults(func=cmd_metrics)

    c = sub.add_parser("calibrate",
                       help="per-type implied bidder count and recommendation")
    c.add_argument("input")
    _add_params_opts(c)
    c.add_argument("--rho", type=float, default=0.5,
                   help="assumed signal correlation")
    c.add_argument("--candidates", type=_int_list,
                   default=[2, 3, 4, 5, 8, 10, 15, 20])
    c.add_argument("--draws", type=int, default=100_000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--grid-nodes", type=int, default=None)
    c.add_argument("--mc-samples", type=int, default=None)
    c.add_argument("--high-trust", action=argparse.BooleanOptionalAction,
                   default=True, help="operator can be trusted with open bids")
    c.add_argument("--collusion-risk", action="store_true")
    c.add_argument("--latency-critical", action="store_true")
    c.add_argument("-o", "--output", help="JSON path (default calibration.json)")
    c.set_defaults(func=cmd_calibrate)

    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except AuctionLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
