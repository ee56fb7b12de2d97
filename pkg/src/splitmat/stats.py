"""Empirical statistics over Monte Carlo spectra."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicHermiteSpline

from .errors import AccuracyError, DomainError

# figure-table binning conventions
REAL_BINS = 100
REAL_RANGE = (-3.0, 3.0)
PLANE_BINS = 100
PLANE_RANGE = (-2.0, 2.0)


@dataclass(frozen=True)
class Histogram:
    edges: np.ndarray
    counts: np.ndarray
    total: int

    @property
    def widths(self):
        return np.diff(self.edges)

    @property
    def centers(self):
        return (self.edges[:-1] + self.edges[1:]) / 2

    @property
    def normalized(self):
        if self.total == 0:
            return np.zeros(self.counts.shape)
        return self.counts / (self.total * self.widths)


@dataclass(frozen=True)
class SpacingSample:
    raw: np.ndarray
    mean_raw: float

    @property
    def normalized(self):
        return self.raw / self.mean_raw


def histogram(data, bins, range_) -> Histogram:
    """Equal-width bins, half-open except the last; out-of-range values only count in ``total``."""
    lo, hi = range_
    if bins < 1 or not lo < hi:
        raise DomainError("need bins >= 1 and lo < hi")
    data = np.asarray(data, dtype=float).ravel()
    edges = np.linspace(lo, hi, bins + 1)
    counts, _ = np.histogram(data, bins=edges)
    return Histogram(edges, counts, int(data.size))


def histogram2d(x, y, bins, range_, total=None):
    """Square 2-D histogram; returns ``(edges, counts, density)``.

    ``density`` divides by ``total`` (default: number of points) and bin area.
    """
    lo, hi = range_
    edges = np.linspace(lo, hi, bins + 1)
    counts, _, _ = np.histogram2d(np.asarray(x), np.asarray(y), bins=[edges, edges])
    total = len(x) if total is None else total
    area = (edges[1] - edges[0]) ** 2
    density = counts / (total * area) if total else np.zeros_like(counts)
    return edges, counts, density


def _check_2x2(spectra):
    if not spectra:
        raise DomainError("no spectra")
    if any(s.n != 2 for s in spectra):
        raise DomainError("expected 2x2 spectra")


def empirical_real_fraction(spectra) -> float:
    _check_2x2(spectra)
    return sum(s.all_real for s in spectra) / len(spectra)


def real_spacings(spectra) -> SpacingSample:
    _check_2x2(spectra)
    raw = np.array([abs(s.real_eigs[1] - s.real_eigs[0]) for s in spectra if s.all_real])
    return spacing_sample(raw)


def spacing_sample(raw) -> SpacingSample:
    raw = np.asarray(raw, dtype=float)
    if raw.size < 2:
        raise DomainError("need at least two real-spectrum samples")
    return SpacingSample(raw, float(np.mean(raw)))


def ks_distance(sorted_samples, cdf) -> float:
    """Kolmogorov-Smirnov distance between an ascending sample and ``cdf``."""
    x = np.asarray(sorted_samples, dtype=float)
    n = x.size
    if n == 0:
        raise DomainError("empty sample")
    f = np.asarray(cdf(x), dtype=float)
    i = np.arange(1, n + 1)
    return float(max(np.max(np.abs(i / n - f)), np.max(np.abs((i - 1) / n - f))))


def ks_band(m, coeff=1.63):
    """Asymptotic KS critical distance; 1.63 is the 99% level, 1.36 the 95% level."""
    return coeff / np.sqrt(m)


def quad(f, a, b, tol=1e-10, limit=500, points=None):
    """Adaptive Gauss-Kronrod integral with absolute error at most ``tol``."""
    if tol <= 0:
        raise DomainError("tol must be positive")
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(f, a, b, epsabs=tol, epsrel=0.0, limit=limit, points=points)
        except integrate.IntegrationWarning as exc:
            raise AccuracyError(str(exc)) from exc
    if err > tol:
        raise AccuracyError(f"error estimate {err:.3e} exceeds {tol:.3e}")
    return val


def truncation_point(f, peak, start=1.0, step=0.25, ratio=1e-16, stop=50.0):
    """Smallest ``x >= start`` on a ``step`` grid beyond which ``|f| < ratio * peak``."""
    x = start
    while x < stop and (abs(f(x)) >= ratio * peak or abs(f(-x)) >= ratio * peak):
        x += step
    return x


def numeric_cdf(pdf, lo, hi, nodes=801, mass=None):
    """CDF of ``pdf`` on ``[lo, hi]`` by per-segment quadrature and Hermite interpolation.

    Normalised by ``mass`` (default: the integral over ``[lo, hi]``). Values
    outside the interval clamp to 0 and 1.
    """
    grid = np.linspace(lo, hi, nodes)
    pieces = [quad(pdf, a, b, tol=1e-13) for a, b in zip(grid[:-1], grid[1:])]
    cum = np.concatenate([[0.0], np.cumsum(pieces)])
    total = cum[-1] if mass is None else mass
    # the pdf is the exact derivative at the nodes
    slopes = np.array([pdf(x) for x in grid], dtype=float) / total
    interp = CubicHermiteSpline(grid, cum / total, slopes)

    def cdf(x):
        x = np.asarray(x, dtype=float)
        return np.clip(interp(np.clip(x, lo, hi)), 0.0, 1.0)

    return cdf
