"""Equilibrium bids under independent private values.

First-price/Dutch bidders bid the expected highest rival value conditional
on winning,

    b(v) = v - Integral_0^v F(y)^(n-1) dy / F(v)^(n-1),

all-pay bidders bid their expected winning payment

    b(v) = Integral_0^v y (n-1) F(y)^(n-2) f(y) dy,

and second-price/English bidders bid truthfully.  The integrals accept an
abstract distribution object so closed-form families (uniform) can serve
as exact oracles; the log-normal implementation integrates in z-space
where the left-endpoint pile-up disappears.
"""

import abc
import warnings

import numpy as np
from scipy.special import log_ndtr

from ._kernels import LOG_TINY
from .distributions import _GL_X, _GL_W, LognormalParams
from .errors import BidUnderflowWarning, DomainError

_CHUNK = 4096


class ValueDistribution(abc.ABC):
    """CDF/PDF pair plus the two bid integrals.

    The base class integrates in y-space with Gauss-Legendre nodes, exact
    for polynomial CDFs; heavy-tailed families should override with a
    substitution suited to their geometry.
    """

    @abc.abstractmethod
    def cdf(self, v): ...

    @abc.abstractmethod
    def pdf(self, v): ...

    def log_cdf(self, v):
        with np.errstate(divide="ignore"):
            return np.log(self.cdf(v))

    def fpsb_shading(self, v, k):
        """Integral_0^v F^k dy / F(v)^k, the conditional win margin."""
        out = np.empty_like(v)
        for lo in range(0, v.size, _CHUNK):
            sl = slice(lo, min(lo + _CHUNK, v.size))
            half = 0.5 * v[sl, None]
            y = half * (_GL_X[None, :] + 1.0)
            integral = half[:, 0] * ((self.cdf(y) ** k) @ _GL_W)
            out[sl] = integral / self.cdf(v[sl]) ** k
        return out

    def allpay_outlay(self, v, k):
        """Integral_0^v y * k * F(y)^(k-1) f(y) dy."""
        out = np.empty_like(v)
        for lo in range(0, v.size, _CHUNK):
            sl = slice(lo, min(lo + _CHUNK, v.size))
            half = 0.5 * v[sl, None]
            y = half * (_GL_X[None, :] + 1.0)
            integrand = y * k * self.cdf(y) ** (k - 1) * self.pdf(y)
            out[sl] = half[:, 0] * (integrand @ _GL_W)
        return out


class LognormalValues(ValueDistribution):
    """Log-normal distribution with z-substituted, log-domain integrals."""

    def __init__(self, params):
        self.params = params

    def cdf(self, v):
        return self.params.cdf(v)

    def pdf(self, v):
        return self.params.pdf(v)

    def log_cdf(self, v):
        return log_ndtr(self.params.signal_of_value(v))

    def _mapped_nodes(self, z_v):
        # lower limit tracks z_v so values below the fixed window keep
        # their full integrand mass
        lo = np.minimum(-10.0, z_v - 15.0)
        half = 0.5 * (z_v - lo)
        z = half[:, None] * (_GL_X[None, :] + 1.0) + lo[:, None]
        return z, half

    def fpsb_shading(self, v, k):
        p = self.params
        z_v = p.signal_of_value(v)
        out = np.empty_like(v)
        for c in range(0, v.size, _CHUNK):
            sl = slice(c, min(c + _CHUNK, v.size))
            z, half = self._mapped_nodes(z_v[sl])
            logf = p.sigma * z + k * log_ndtr(z)
            m = logf.max(axis=1, keepdims=True)
            log_sum = m[:, 0] + np.log(np.exp(logf - m) @ _GL_W)
            log_shading = (
                np.log(p.sigma)
                + p.mu
                + np.log(half)
                + log_sum
                - k * log_ndtr(z_v[sl])
            )
            out[sl] = np.exp(log_shading)
        return out

    def allpay_outlay(self, v, k):
        p = self.params
        z_v = p.signal_of_value(v)
        out = np.empty_like(v)
        for c in range(0, v.size, _CHUNK):
            sl = slice(c, min(c + _CHUNK, v.size))
            z, half = self._mapped_nodes(z_v[sl])
            logf = p.sigma * z + (k - 1) * log_ndtr(z) - 0.5 * z * z
            m = logf.max(axis=1, keepdims=True)
            log_sum = m[:, 0] + np.log(np.exp(logf - m) @ _GL_W)
            log_outlay = (
                np.log(float(k)) + p.mu - 0.5 * np.log(2.0 * np.pi) + np.log(half) + log_sum
            )
            out[sl] = np.exp(log_outlay)
        return out


class UniformValues(ValueDistribution):
    """Uniform[lo, hi] injection; its bids have textbook closed forms."""

    def __init__(self, lo=0.0, hi=1.0):
        if hi <= lo:
            raise DomainError("requires hi > lo")
        self.lo = lo
        self.hi = hi

    def cdf(self, v):
        return np.clip((v - self.lo) / (self.hi - self.lo), 0.0, 1.0)

    def pdf(self, v):
        inside = (v >= self.lo) & (v <= self.hi)
        return np.where(inside, 1.0 / (self.hi - self.lo), 0.0)


def as_distribution(dist):
    if isinstance(dist, ValueDistribution):
        return dist
    if isinstance(dist, LognormalParams):
        return LognormalValues(dist)
    raise DomainError(f"expected LognormalParams or ValueDistribution, got {type(dist)!r}")


def _prepare(v, n):
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    arr = np.atleast_1d(np.asarray(v, dtype=float))
    if np.any(~(arr > 0)):
        raise DomainError("valuations must be strictly positive")
    return arr, np.isscalar(v) or np.ndim(v) == 0


def _underflow_mask(dist, v, k):
    mask = k * dist.log_cdf(v) < LOG_TINY
    if np.any(mask):
        warnings.warn(
            f"{int(mask.sum())} valuation(s) have an unrepresentable win "
            "probability; reporting bid 0 for them",
            BidUnderflowWarning,
            stacklevel=3,
        )
    return mask


def fpsb_bid_ipv(v, n, dist):
    """First-price/Dutch equilibrium bid; `dist` is LognormalParams or a
    ValueDistribution.  Scalar in, scalar out; arrays pass through."""
    arr, scalar = _prepare(v, n)
    dist = as_distribution(dist)
    k = int(n) - 1
    dead = _underflow_mask(dist, arr, k)
    bids = np.zeros_like(arr)
    live = ~dead
    if np.any(live):
        bids[live] = arr[live] - dist.fpsb_shading(arr[live], k)
    return float(bids[0]) if scalar else bids


def allpay_bid_ipv(v, n, dist):
    """All-pay equilibrium bid (paid win or lose)."""
    arr, scalar = _prepare(v, n)
    dist = as_distribution(dist)
    k = int(n) - 1
    dead = _underflow_mask(dist, arr, k)
    bids = np.zeros_like(arr)
    live = ~dead
    if np.any(live):
        bids[live] = dist.allpay_outlay(arr[live], k)
    return float(bids[0]) if scalar else bids


def truthful_bid(v):
    """Second-price/English dominant strategy: bid the valuation."""
    return v
