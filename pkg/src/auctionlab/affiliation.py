"""Gaussian common-factor model for affiliated bidder signals.

Each auction draws one common factor Z and n idiosyncratic shocks eps_i,
all standard normal; bidder i's signal is

    z_i = sqrt(rho) * Z + sqrt(1 - rho) * eps_i

so every marginal stays N(0, 1) while corr(z_i, z_j) = rho.  Valuations
are v_i = exp(mu + sigma * z_i).

Determinism contract: ``sample_signals`` uses numpy's PCG64 generator
seeded with the given integer, drawing Z first (length `auctions`) and
the shock matrix second (C order).  The generator family and draw order
are fixed per release because golden files depend on them.
"""

from dataclasses import dataclass

import numpy as np

from .distributions import LognormalParams
from .errors import DomainError


def _check_rho(rho):
    if not 0.0 <= rho < 1.0:
        raise DomainError(f"rho must lie in [0, 1), got {rho}")


@dataclass(frozen=True)
class AffiliationModel:
    """One affiliated-values environment: correlation, bidders, value law."""

    rho: float
    n: int
    params: LognormalParams

    def __post_init__(self):
        _check_rho(self.rho)
        if int(self.n) != self.n or self.n < 2:
            raise DomainError(f"n must be an integer >= 2, got {self.n!r}")


def signals_from_factors(common, idiosyncratic, rho):
    """Combine factor draws into signals; exposed so tests can pin Z and
    so simulation can recombine one shock matrix at several rho values."""
    _check_rho(rho)
    common = np.asarray(common, dtype=float)
    idiosyncratic = np.asarray(idiosyncratic, dtype=float)
    return np.sqrt(rho) * common[:, None] + np.sqrt(1.0 - rho) * idiosyncratic


def sample_signals(model, auctions, seed):
    """(auctions x n) signal matrix; bit-reproducible for equal inputs."""
    if auctions < 1:
        raise DomainError(f"auctions must be >= 1, got {auctions}")
    rng = np.random.default_rng(seed)
    common = rng.standard_normal(auctions)
    idio = rng.standard_normal((auctions, model.n))
    return signals_from_factors(common, idio, model.rho)


def signals_to_values(signals, params):
    """Elementwise v = exp(mu + sigma * z); strictly positive."""
    return np.exp(params.mu + params.sigma * np.asarray(signals, dtype=float))


def posterior_common_factor(z_own, rho):
    """Normal posterior (mean, variance) of Z given one signal.

    Conjugate update of a standard-normal prior with the observation
    z = sqrt(rho) Z + sqrt(1-rho) eps: mean sqrt(rho)*z, variance 1-rho.
    """
    _check_rho(rho)
    return (np.sqrt(rho) * z_own, 1.0 - rho)
