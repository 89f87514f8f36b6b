"""Release gate: ten end-to-end checks against the bundled reference
analysis, each at its stated tolerance.

Run with -s to see one summary line per criterion.  Monte Carlo checks
pin their seeds; anchor values come from the bundled reference tables
and the frozen high-precision constants used across the unit suite.
"""

import os
import time
from types import SimpleNamespace

import numpy as np
import pytest

from auctionlab import (
    LognormalParams,
    UniformValues,
    allpay_bid_ipv,
    calibrate_n,
    dollar_foregone,
    empirical_gini,
    expected_second_order_statistic,
    fpsb_bid_ipv,
    generate_transactions,
    gini_closed_form,
    solve_bid_function,
    transactions_to_csv,
)
from auctionlab.distributions import fit_mle
from auctionlab.simulate import (
    DEFAULT_MASTER_SEED,
    grid_to_csv,
    grid_to_json,
    run_grid,
)

P = LognormalParams(mu=1.102, sigma=2.524)

# exact E[second-highest of 5] for the reference parameterization,
# frozen from 40-digit quadrature (see test_distributions.EV2_REF)
EXACT_ALLPAY_5 = 30.08610219152443

# the published tables ran 10x our draw count, so their own sampling
# noise adds ~sqrt(1/10) of ours; 0.005 covers two-decimal rounding
REF_SE_SCALE = np.sqrt(1.0 + 0.1)
REF_ROUNDING = 0.005


def _gap_pct(cell):
    return 100.0 * (cell.rev_english_spsb - cell.rev_dutch_fpsb) / cell.rev_dutch_fpsb


@pytest.fixture(scope="module")
def full_grid():
    """One full 11x10 grid at the package default seed; bid functions are
    kept so the property suite can inspect them without re-solving."""
    cache = {}
    t0 = time.perf_counter()
    grid = run_grid(params=P, draws=100_000, master_seed=DEFAULT_MASTER_SEED,
                    bid_function_cache=cache)
    elapsed = time.perf_counter() - t0
    return SimpleNamespace(grid=grid, cache=cache, elapsed=elapsed)


def test_criterion_01_revenue_equivalence_at_independence():
    t0 = time.perf_counter()
    grid = run_grid(n_values=(2, 5, 10), rho_values=(0.0,), params=P,
                    draws=100_000, master_seed=8)
    elapsed = time.perf_counter() - t0
    anchors = {2: 5.41, 5: 30.02, 10: 79.72}
    worst_anchor = worst_cross = 0.0
    for i, n in enumerate((2, 5, 10)):
        c = grid.cells[i][0]
        revs = (c.rev_english_spsb, c.rev_dutch_fpsb, c.rev_allpay_ipv)
        for r in revs:
            worst_anchor = max(worst_anchor, abs(r / anchors[n] - 1.0))
        worst_cross = max(worst_cross, (max(revs) - min(revs)) / min(revs))
    assert worst_anchor < 0.02
    assert worst_cross < 0.01
    assert elapsed < 30.0
    print(f"\nCRITERION 1 PASS: equivalence at rho=0, n in (2,5,10); "
          f"worst anchor dev {100*worst_anchor:.2f}% (<2%), estimator spread "
          f"{100*worst_cross:.2f}% (<1%), {elapsed:.1f}s (<30s)")


def test_criterion_02_linkage_gap_at_half_correlation():
    t0 = time.perf_counter()
    grid = run_grid(n_values=(2, 5, 10), rho_values=(0.5,), params=P,
                    draws=100_000, master_seed=34)
    elapsed = time.perf_counter() - t0
    eng = {2: 15.24, 5: 59.87, 10: 128.21}
    fps = {2: 11.93, 5: 51.10, 10: 112.48}
    gaps = {2: 27.7, 5: 17.2, 10: 14.0}
    worst_anchor = worst_gap = 0.0
    for i, n in enumerate((2, 5, 10)):
        c = grid.cells[i][0]
        worst_anchor = max(worst_anchor,
                           abs(c.rev_english_spsb / eng[n] - 1.0),
                           abs(c.rev_dutch_fpsb / fps[n] - 1.0))
        worst_gap = max(worst_gap, abs(_gap_pct(c) - gaps[n]))
    assert worst_anchor < 0.02
    assert worst_gap < 1.5
    assert elapsed < 120.0
    print(f"\nCRITERION 2 PASS: rho=0.5 revenues and linkage gaps; worst "
          f"anchor dev {100*worst_anchor:.2f}% (<2%), worst gap dev "
          f"{worst_gap:.2f}pp (<1.5pp), {elapsed:.1f}s incl. solves (<2min)")


def test_criterion_03_correlation_column_at_n5():
    rhos = (0.0, 0.2, 0.4, 0.5, 0.8)
    grid = run_grid(n_values=(5,), rho_values=rhos, params=P,
                    draws=100_000, master_seed=20)
    eng = (30.02, 40.05, 53.49, 59.87, 83.15)
    fps = (30.06, 37.02, 46.10, 51.10, 70.75)
    worst_anchor = worst_flat = 0.0
    for j in range(len(rhos)):
        c = grid.cells[0][j]
        worst_anchor = max(worst_anchor,
                           abs(c.rev_english_spsb / eng[j] - 1.0),
                           abs(c.rev_dutch_fpsb / fps[j] - 1.0))
        # the independent-values benchmark must not move with rho
        worst_flat = max(worst_flat,
                         abs(c.rev_allpay_ipv - EXACT_ALLPAY_5) / (3 * c.se_allpay))
    assert worst_anchor < 0.02
    assert worst_flat < 1.0
    print(f"\nCRITERION 3 PASS: n=5 row across rho; worst anchor dev "
          f"{100*worst_anchor:.2f}% (<2%), all-pay within "
          f"{worst_flat:.2f}x of its 3-SE band around {EXACT_ALLPAY_5:.2f}")


def test_criterion_04_grid_spot_checks_against_reference(full_grid):
    from auctionlab.simulate import reference_grid

    grid, ref = full_grid.grid, reference_grid()
    rng = np.random.default_rng(20240516)
    picks = {(0, 0), (0, 9), (10, 0), (10, 9)}  # the four corners
    while len(picks) < 14:
        picks.add((int(rng.integers(0, 11)), int(rng.integers(0, 10))))
    worst = 0.0
    for (i, j) in sorted(picks):
        c, r = grid.cells[i][j], ref.cells[i][j]
        for attr, se_attr in (("rev_english_spsb", "se_english"),
                              ("rev_dutch_fpsb", "se_fpsb"),
                              ("rev_allpay_ipv", "se_allpay")):
            budget = 3 * getattr(c, se_attr) * REF_SE_SCALE + REF_ROUNDING
            worst = max(worst, abs(getattr(c, attr) - getattr(r, attr)) / budget)
    assert worst < 1.0
    assert full_grid.elapsed < 900.0
    print(f"\nCRITERION 4 PASS: 4 corners + 10 sampled cells vs reference "
          f"tables, worst dev {worst:.2f}x of 3 combined SEs; full "
          f"11x10 grid in {full_grid.elapsed:.0f}s (<15min)")


def test_criterion_05_revenue_hump_at_n20(full_grid):
    grid = full_grid.grid
    i20 = grid.n_values.index(20)
    row = {rho: grid.cells[i20][j].rev_english_spsb
           for j, rho in enumerate(grid.rho_values)}
    assert row[0.5] > row[0.0]
    assert row[0.5] > row[0.9]
    for rho, anchor in ((0.0, 185.55), (0.5, 238.33), (0.9, 170.86)):
        assert abs(row[rho] / anchor - 1.0) < 0.02
    print(f"\nCRITERION 5 PASS: English revenue at n=20 peaks mid-correlation: "
          f"{row[0.0]:.2f} (rho=0) < {row[0.5]:.2f} (rho=0.5) > "
          f"{row[0.9]:.2f} (rho=0.9), anchors within 2%")


def test_criterion_06_solver_collapses_to_independent_benchmark():
    worst = 0.0
    for n in (2, 5, 10, 20):
        bf = solve_bid_function(n, 0.0, P)
        z = bf.signal_grid[1:-1]
        tabulated = bf.bids[1:-1]
        quad = fpsb_bid_ipv(P.value_of_signal(z), n, P)
        worst = max(worst, float(np.max(np.abs(tabulated / quad - 1.0))))
    assert worst < 0.005
    print(f"\nCRITERION 6 PASS: rho=0 solver vs direct quadrature at all "
          f"interior nodes, n in (2,5,10,20); worst dev {100*worst:.4f}% (<0.5%)")


def test_criterion_07_analytic_oracles():
    # closed forms under a uniform value distribution
    dist = UniformValues(0.0, 1.0)
    v = np.linspace(0.05, 0.99, 50)
    for n in (2, 3, 7):
        np.testing.assert_allclose(fpsb_bid_ipv(v, n, dist),
                                   (n - 1) * v / n, rtol=1e-10)
        np.testing.assert_allclose(allpay_bid_ipv(v, n, dist),
                                   (n - 1) * v**n / n, rtol=1e-10)

    # Gini: closed form vs one million draws
    rng = np.random.default_rng(42)
    draws = np.exp(P.mu + P.sigma * rng.standard_normal(1_000_000))
    gini_dev = abs(empirical_gini(draws) - gini_closed_form(P))
    assert gini_dev < 0.01

    # second-order statistic quadrature vs one million draws per n
    rng = np.random.default_rng(0)
    worst = 0.0
    for n in range(2, 21):
        vals = np.empty(1_000_000)
        for k in range(4):
            z = rng.standard_normal((250_000, n))
            z.partition(n - 2, axis=1)
            vals[k * 250_000:(k + 1) * 250_000] = \
                np.exp(P.mu + P.sigma * z[:, n - 2])
        se = vals.std(ddof=1) / 1000.0
        dev = abs(vals.mean() - expected_second_order_statistic(P, n))
        worst = max(worst, dev / (3 * se))
    assert worst < 1.0
    print(f"\nCRITERION 7 PASS: uniform closed forms to 1e-10; Gini dev "
          f"{gini_dev:.4f} (<0.01); order-statistic quadrature within "
          f"{worst:.2f}x of 3 SEs for n=2..20")


def test_criterion_08_property_suite(full_grid, monkeypatch, tmp_path):
    grid, cache = full_grid.grid, full_grid.cache

    # (a) linkage gap: strictly positive territory demands the bare noise
    # floor; at rho=0 the gap is the equivalence residual, so its budget
    # is the floor plus three combined standard errors
    min_pos = np.inf
    for i in range(len(grid.n_values)):
        for j, rho in enumerate(grid.rho_values):
            c = grid.cells[i][j]
            gap = _gap_pct(c)
            if rho > 0.0:
                assert gap >= -0.5
                min_pos = min(min_pos, gap)
            else:
                se_pct = 100 * np.hypot(c.se_english, c.se_fpsb) / c.rev_dutch_fpsb
                assert abs(gap) <= 0.5 + 3 * se_pct

    # (b) the independent-values column must be flat across rho
    for i, n in enumerate(grid.n_values):
        y = np.array([grid.cells[i][j].rev_allpay_ipv
                      for j in range(len(grid.rho_values))])
        se = np.array([grid.cells[i][j].se_allpay
                       for j in range(len(grid.rho_values))])
        hi, lo = int(np.argmax(y)), int(np.argmin(y))
        assert y[hi] - y[lo] <= 3 * np.hypot(se[hi], se[lo])

    # (c) correlated-market bids exceed the independent benchmark on the
    # upper grid (signals >= 2.5).  The comparison is one-sided by
    # construction only up there: at low signals the chance of a tie
    # among correlated rivals falls below the independent-market chance,
    # so correlated equilibrium bids legitimately drop under the
    # benchmark.  Low-signal behavior is pinned in the unit suite.
    min_ratio = np.inf
    checked = 0
    for bf in cache.values():
        if bf.rho == 0.0:
            continue
        mask = bf.signal_grid >= 2.5
        ipv = fpsb_bid_ipv(bf.values()[mask], bf.n, P)
        ratio = bf.bids[mask] / ipv
        assert np.all(ratio > 1.0)
        min_ratio = min(min_ratio, float(ratio.min()))
        checked += 1
    assert checked == 11 * 9

    # (d) bids increase with the underlying value everywhere
    for bf in cache.values():
        assert np.all(np.diff(bf.bids) > 0.0)

    # (e) the full pipeline is a pure function of its seeds
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")
    runs = []
    for _ in range(2):
        recs = generate_transactions(200, P, seed=5)
        small = run_grid(n_values=(2, 3), rho_values=(0.0, 0.5), params=P,
                         draws=2000, master_seed=11)
        runs.append((transactions_to_csv(recs), grid_to_csv(small),
                     grid_to_json(small)))
    assert runs[0] == runs[1]

    print(f"\nCRITERION 8 PASS: gap floor on all 110 cells (min rho>0 gap "
          f"{min_pos:+.2f}pp); benchmark column flat; correlated bids "
          f"{min_ratio:.3f}x independent at signals >= 2.5 across "
          f"{checked} solved cells; bids monotone; run-twice byte equality")


def test_criterion_09_dollar_projection():
    for gap, anchor in ((17.2, 17.42e6), (9.9, 10.03e6)):
        got = dollar_foregone(gap, 101.3e6)
        assert abs(got - anchor) < 0.05e6
    print("\nCRITERION 9 PASS: 17.2% and 9.9% of $101.3M project to "
          "$17.42M and $10.03M within $0.05M")


def test_criterion_10_synthetic_round_trip():
    # single-draw records identify the value distribution; the bribe
    # shares of known-n first-price files then pin the bidder count
    base = generate_transactions(4000, P, seed=77, bribe_model="uniform")
    fitted = fit_mle([r.extracted_value for r in base])
    assert abs(fitted.mu - P.mu) < 0.15
    assert abs(fitted.sigma - P.sigma) < 0.10

    recovered = {}
    for gen_n in (3, 5, 10):
        recs = generate_transactions(
            4000, P, seed=100 + gen_n,
            type_mix={"naked_arb": 1.0}, n_by_type={"naked_arb": gen_n},
        )
        observed = float(np.mean([r.bribe_percentage for r in recs]))
        res = calibrate_n(observed, fitted, 0.0, [2, 3, 4, 5, 8, 10, 15, 20],
                          draws=100_000, seed=0)
        recovered[gen_n] = res.n_hat
        assert res.n_hat == gen_n
    print(f"\nCRITERION 10 PASS: fit (mu={fitted.mu:.3f}, "
          f"sigma={fitted.sigma:.3f}) then calibrate recovers "
          f"n_hat={recovered} for generating n in (3,5,10)")
