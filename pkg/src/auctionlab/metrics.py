"""Derived comparison surfaces and the dollar interpretation.

The linkage gap is the percentage excess of English/SPSB revenue over
Dutch/FPSB revenue at the same (n, rho); the affiliation premium is each
affiliated group's percentage excess over the independent-values
benchmark.  Differences inside the noise floor are reported but tagged
indistinguishable from zero.
"""

import csv
import io
import json
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# published grids resolve revenue differences down to roughly half a
# percent; anything smaller is Monte Carlo texture
NOISE_FLOOR_PCT = 0.5


@dataclass(frozen=True)
class GapSurface:
    label: str
    n_values: tuple
    rho_values: tuple
    values_pct: np.ndarray  # |n| x |rho|; NaN marks invalid cells
    noise_floor_pct: float

    def row_argmax(self):
        """rho at each row's peak, NaN-safe."""
        out = {}
        for i, n in enumerate(self.n_values):
            row = self.values_pct[i]
            out[n] = self.rho_values[int(np.nanargmax(row))]
        return out

    def at(self, n, rho):
        i = self.n_values.index(n)
        j = min(
            range(len(self.rho_values)),
            key=lambda k: abs(self.rho_values[k] - rho),
        )
        if abs(self.rho_values[j] - rho) > 1e-9:
            raise DomainError(f"rho={rho} not on the surface")
        return float(self.values_pct[i, j])


def _surface(label, grid, numer, denom):
    values = np.full((len(grid.n_values), len(grid.rho_values)), np.nan)
    for i in range(len(grid.n_values)):
        for j in range(len(grid.rho_values)):
            c = grid.cells[i][j]
            den = getattr(c, denom)
            if den > 0:
                values[i, j] = 100.0 * (getattr(c, numer) - den) / den
    return GapSurface(
        label=label,
        n_values=grid.n_values,
        rho_values=grid.rho_values,
        values_pct=values,
        noise_floor_pct=NOISE_FLOOR_PCT,
    )


def linkage_gap(grid):
    """(English - FPSB) / FPSB per cell, in percent."""
    return _surface("linkage_gap", grid, "rev_english_spsb", "rev_dutch_fpsb")


def affiliation_premium(grid):
    """Revenue gain of each affiliated group over the IPV benchmark.

    Returns (english_surface, fpsb_surface).
    """
    return (
        _surface("premium_english_spsb", grid, "rev_english_spsb", "rev_allpay_ipv"),
        _surface("premium_dutch_fpsb", grid, "rev_dutch_fpsb", "rev_allpay_ipv"),
    )


def dollar_foregone(gap_percent, bribe_total):
    """Foregone revenue implied by a percentage gap on a bribe total."""
    if gap_percent < 0:
        raise DomainError(f"gap must be non-negative, got {gap_percent}")
    if bribe_total < 0:
        raise DomainError(f"bribe total must be non-negative, got {bribe_total}")
    return gap_percent / 100.0 * bribe_total


def surface_to_rows(surface):
    """Long format for heatmap plotting; one record per cell."""
    rows = []
    for i, n in enumerate(surface.n_values):
        for j, rho in enumerate(surface.rho_values):
            v = surface.values_pct[i, j]
            rows.append(
                {
                    "n": n,
                    "rho": rho,
                    "metric": surface.label,
                    "value_pct": None if np.isnan(v) else float(v),
                    "within_noise_floor": bool(
                        not np.isnan(v) and abs(v) <= surface.noise_floor_pct
                    ),
                }
            )
    return rows


def surface_to_long_json(surface, path=None):
    text = json.dumps(
        {
            "metric": surface.label,
            "noise_floor_pct": surface.noise_floor_pct,
            "cells": surface_to_rows(surface),
        },
        indent=1,
    )
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def surface_to_csv(surface, path=None):
    """Matrix layout: one row per n, one column per rho."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n"] + [repr(float(r)) for r in surface.rho_values])
    for i, n in enumerate(surface.n_values):
        writer.writerow(
            [n]
            + [
                "" if np.isnan(v) else repr(round(float(v), 6))
                for v in surface.values_pct[i]
            ]
        )
    text = buf.getvalue()
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text
