"""Gap surfaces, the dollar interpretation, and their serializations."""

import csv
import io
import json

import numpy as np
import pytest

from auctionlab import (
    DomainError,
    GapSurface,
    affiliation_premium,
    dollar_foregone,
    linkage_gap,
    reference_grid,
)
from auctionlab.metrics import (
    NOISE_FLOOR_PCT,
    surface_to_csv,
    surface_to_long_json,
    surface_to_rows,
)
from auctionlab.simulate import CellResult, RevenueGrid
from auctionlab.distributions import LognormalParams


def _tiny_grid():
    """2 x 2 grid with hand-computable revenues."""
    mk = lambda n, rho, e, f, a: CellResult(
        n=n, rho=rho, rev_english_spsb=e, rev_dutch_fpsb=f, rev_allpay_ipv=a,
        se_english=0.0, se_fpsb=0.0, se_allpay=0.0, draws=100, seed=0,
    )
    cells = (
        (mk(2, 0.0, 10.0, 10.0, 10.0), mk(2, 0.5, 13.0, 10.0, 8.0)),
        (mk(5, 0.0, 30.0, 30.0, 30.0), mk(5, 0.5, 36.0, 32.0, 0.0)),
    )
    return RevenueGrid(
        n_values=(2, 5),
        rho_values=(0.0, 0.5),
        cells=cells,
        params=LognormalParams(mu=0.0, sigma=1.0),
        created_at="",
        config_digest="0" * 16,
        master_seed=0,
        draws=100,
        backend="numpy",
    )


class TestSurfaceArithmetic:
    def test_linkage_gap_values(self):
        surf = linkage_gap(_tiny_grid())
        assert surf.label == "linkage_gap"
        assert surf.at(2, 0.0) == 0.0
        assert surf.at(2, 0.5) == pytest.approx(30.0, rel=1e-12)
        assert surf.at(5, 0.5) == pytest.approx(12.5, rel=1e-12)

    def test_premium_values_and_nan_guard(self):
        eng, fpsb = affiliation_premium(_tiny_grid())
        assert eng.label == "premium_english_spsb"
        assert fpsb.label == "premium_dutch_fpsb"
        assert eng.at(2, 0.5) == pytest.approx(62.5, rel=1e-12)
        assert fpsb.at(2, 0.5) == pytest.approx(25.0, rel=1e-12)
        # zero benchmark cell is marked invalid, not infinite
        assert np.isnan(eng.at(5, 0.5))
        assert np.isnan(fpsb.at(5, 0.5))

    def test_at_rejects_off_grid_rho(self):
        surf = linkage_gap(_tiny_grid())
        with pytest.raises(DomainError):
            surf.at(2, 0.3)

    def test_row_argmax(self):
        surf = linkage_gap(_tiny_grid())
        assert surf.row_argmax() == {2: 0.5, 5: 0.5}


class TestDollarForegone:
    def test_headline_values(self):
        # 17.2% and 9.9% of the observed 101.3M bribe total
        assert dollar_foregone(17.2, 101.3e6) == 17423600.0
        assert dollar_foregone(9.9, 101.3e6) == 10028700.0

    def test_zero_gap(self):
        assert dollar_foregone(0.0, 101.3e6) == 0.0

    def test_validation(self):
        with pytest.raises(DomainError):
            dollar_foregone(-0.1, 100.0)
        with pytest.raises(DomainError):
            dollar_foregone(5.0, -1.0)


@pytest.fixture(scope="module")
def gap():
    return linkage_gap(reference_grid())


class TestReferenceSurfaces:

    def test_headline_cells(self, gap):
        # published tables round to 2 decimals, so the implied gaps carry
        # about +/- 0.1pp of rounding slack
        assert gap.at(2, 0.5) == pytest.approx(27.745, abs=0.005)
        assert gap.at(5, 0.5) == pytest.approx(17.162, abs=0.005)
        assert gap.at(10, 0.5) == pytest.approx(13.985, abs=0.005)
        assert gap.at(2, 0.7) == pytest.approx(31.918, abs=0.005)

    def test_gap_positive_for_affiliated_cells(self, gap):
        vals = np.asarray(gap.values_pct)[:, 1:]
        assert np.all(vals > 0)

    def test_rho_zero_column_is_sampling_texture(self, gap):
        # two-decimal table rounding plus the tables' own Monte Carlo
        # noise; the largest implied gap is 0.507% at n = 7
        col = np.asarray(gap.values_pct)[:, 0]
        assert np.all(np.abs(col) <= 0.6)
        assert np.abs(col).max() > 0.0

    def test_premiums_positive_except_extreme_crossover(self):
        # at (n=20, rho=0.9) near-perfect correlation collapses the
        # order-statistic spread and the independent benchmark overtakes
        # both affiliated formats; every other affiliated cell is positive
        eng, fpsb = affiliation_premium(reference_grid())
        for surf in (eng, fpsb):
            vals = np.asarray(surf.values_pct)[:, 1:].copy()
            assert surf.at(20, 0.9) < 0
            vals[-1, -1] = np.nan
            assert np.all(np.isnan(vals) | (vals > 0))
        assert eng.at(15, 0.9) > 0  # the crossover starts strictly after n=15


class TestSerialization:
    def test_rows_long_format(self):
        surf = linkage_gap(_tiny_grid())
        rows = surface_to_rows(surf)
        assert len(rows) == 4
        by_key = {(r["n"], r["rho"]): r for r in rows}
        assert by_key[(2, 0.5)]["value_pct"] == pytest.approx(30.0)
        assert by_key[(2, 0.5)]["within_noise_floor"] is False
        assert by_key[(2, 0.0)]["within_noise_floor"] is True
        assert all(r["metric"] == "linkage_gap" for r in rows)

    def test_rows_mark_invalid_cells(self):
        eng, _ = affiliation_premium(_tiny_grid())
        rows = surface_to_rows(eng)
        bad = next(r for r in rows if r["n"] == 5 and r["rho"] == 0.5)
        assert bad["value_pct"] is None
        assert bad["within_noise_floor"] is False

    def test_long_json(self, tmp_path):
        surf = linkage_gap(_tiny_grid())
        path = tmp_path / "gap.json"
        text = surface_to_long_json(surf, path)
        assert path.read_text() == text
        doc = json.loads(text)
        assert doc["metric"] == "linkage_gap"
        assert doc["noise_floor_pct"] == NOISE_FLOOR_PCT
        assert len(doc["cells"]) == 4

    def test_matrix_csv(self, tmp_path):
        eng, _ = affiliation_premium(_tiny_grid())
        path = tmp_path / "m.csv"
        text = surface_to_csv(eng, path)
        assert path.read_text() == text
        rows = list(csv.reader(io.StringIO(text)))
        assert rows[0] == ["n", "0.0", "0.5"]
        assert rows[1][0] == "2"
        assert float(rows[1][2]) == pytest.approx(62.5)
        # NaN cell serializes as an empty field
        assert rows[2][2] == ""

    def test_csv_round_trips_by_rerun(self):
        surf = linkage_gap(reference_grid())
        assert surface_to_csv(surf) == surface_to_csv(linkage_gap(reference_grid()))
