import math

import numpy as np
import pytest
from scipy.stats import norm

from splitmat import densities as d
from splitmat.ensembles import GSCE, EnsembleConfig, sample_ensemble
from splitmat.errors import AccuracyError, DomainError
from splitmat.matrices import Spectrum, spectrum_2x2
from splitmat.stats import (
    empirical_real_fraction,
    histogram,
    histogram2d,
    ks_band,
    ks_distance,
    numeric_cdf,
    quad,
    real_spacings,
    spacing_sample,
    truncation_point,
)


def test_histogram_single_point():
    h = histogram([0.5], 1, (0.0, 1.0))
    assert h.counts.tolist() == [1]
    assert h.total == 1


def test_histogram_empty():
    h = histogram([], 4, (0.0, 1.0))
    assert h.counts.tolist() == [0, 0, 0, 0]
    assert h.total == 0
    assert np.all(h.normalized == 0)


def test_histogram_uniform_density(nprng):
    h = histogram(nprng.uniform(size=10**6), 10, (0.0, 1.0))
    assert np.allclose(h.normalized, 1.0, atol=0.01)


def test_histogram_edges_and_out_of_range():
    h = histogram([0.0, 0.5, 1.0, 1.5, -0.1], 2, (0.0, 1.0))
    # last bin is closed, out-of-range values only count in total
    assert h.counts.tolist() == [1, 2]
    assert h.total == 5
    assert np.sum(h.normalized * h.widths) == pytest.approx(3 / 5)


def test_histogram_bad_args():
    with pytest.raises(DomainError):
        histogram([1.0], 0, (0.0, 1.0))
    with pytest.raises(DomainError):
        histogram([1.0], 3, (1.0, 1.0))


def test_histogram2d_density_integrates(nprng):
    x, y = nprng.uniform(-1, 1, (2, 10000))
    edges, counts, density = histogram2d(x, y, 20, (-1.0, 1.0))
    assert counts.sum() == 10000
    assert np.sum(density) * (edges[1] - edges[0]) ** 2 == pytest.approx(1.0)


def test_ks_quantile_sample():
    n = 50
    x = norm.ppf((np.arange(1, n + 1) - 0.5) / n)
    assert ks_distance(x, norm.cdf) == pytest.approx(0.5 / n, abs=1e-12)


def test_ks_constant_sample():
    assert ks_distance([0.0], norm.cdf) == 0.5


def test_ks_uniform_within_band(nprng):
    n = 10**5
    x = np.sort(nprng.uniform(size=n))
    assert ks_distance(x, lambda t: t) < 1.36 / math.sqrt(n)


def test_ks_reparameterisation_invariant(nprng):
    x = np.sort(nprng.normal(size=500))
    dist = ks_distance(x, norm.cdf)
    # strictly increasing map applied to both sample and cdf
    assert ks_distance(np.exp(x), lambda t: norm.cdf(np.log(t))) == pytest.approx(dist, abs=1e-14)


def test_ks_empty():
    with pytest.raises(DomainError):
        ks_distance([], norm.cdf)


def test_ks_band():
    assert ks_band(10**4) == pytest.approx(0.0163)
    assert ks_band(100, 1.36) == pytest.approx(0.136)


def test_quad_linear():
    assert quad(lambda x: x, 0.0, 1.0) == 0.5


def test_quad_r1_real_sc_mass():
    assert quad(d.r1_real_sc, -9.0, 9.0, tol=1e-10) == pytest.approx(1 / math.sqrt(2), abs=1e-8)


def test_quad_spacing_mean():
    val = quad(lambda s: s * d.spacing_pdf(d.GSQE, s), 0.0, 12.0, tol=1e-10)
    assert val == pytest.approx(1.0, abs=1e-6)


def test_quad_accuracy_error():
    # singular oscillation exhausts a tiny subdivision budget
    with pytest.raises(AccuracyError):
        quad(lambda x: math.sin(1 / x), 1e-6, 1.0, tol=1e-14, limit=5)


def test_quad_bad_tol():
    with pytest.raises(DomainError):
        quad(lambda x: x, 0.0, 1.0, tol=0.0)


def test_truncation_point():
    f = lambda x: math.exp(-x * x)
    x = truncation_point(f, 1.0)
    assert math.exp(-x * x) < 1e-16
    assert math.exp(-(x - 0.25) ** 2) >= 1e-16


def test_numeric_cdf_matches_normal():
    cdf = numeric_cdf(norm.pdf, -9.0, 9.0)
    x = np.linspace(-4, 4, 33)
    assert np.max(np.abs(cdf(x) - norm.cdf(x))) < 1e-9
    assert cdf(-20.0) == 0.0 and cdf(20.0) == 1.0


def test_spacing_sample_rescale():
    s = spacing_sample([1.0, 3.0])
    assert s.mean_raw == 2.0
    assert s.normalized.tolist() == [0.5, 1.5]


def test_spacing_sample_scale_invariant(nprng):
    raw = nprng.exponential(size=100)
    assert np.allclose(spacing_sample(raw).normalized, spacing_sample(7.5 * raw).normalized,
                       rtol=1e-14)
    assert np.mean(spacing_sample(raw).normalized) == pytest.approx(1.0, abs=1e-14)


def test_real_spacings_from_spectra():
    spectra = [Spectrum((0.0, 1.0), ()), Spectrum((-1.0, 2.0), ()), Spectrum((), ((0.0, 1.0),))]
    s = real_spacings(spectra)
    assert s.normalized.tolist() == [0.5, 1.5]


def test_real_spacings_too_few():
    with pytest.raises(DomainError):
        real_spacings([Spectrum((0.0, 1.0), ()), Spectrum((), ((0.0, 1.0),))])


def test_real_fraction_diagonal():
    spectra = [Spectrum((float(k), float(k) + 1), ()) for k in range(5)]
    assert empirical_real_fraction(spectra) == 1.0


def test_real_fraction_errors():
    with pytest.raises(DomainError):
        empirical_real_fraction([])
    with pytest.raises(DomainError):
        empirical_real_fraction([Spectrum((0.0, 1.0, 2.0), ())])


def test_gsce_raw_spacing_mean():
    entries = sample_ensemble(EnsembleConfig(GSCE, 2, 10**5, 3))
    _, disc = spectrum_2x2(entries)
    raw = 2 * np.sqrt(disc[disc >= 0])
    assert np.mean(raw) == pytest.approx(math.sqrt(math.pi / 2), abs=0.01)


def test_gsce_spacing_ks():
    entries = sample_ensemble(EnsembleConfig(GSCE, 2, 10**5, 4))
    _, disc = spectrum_2x2(entries)
    s = np.sort(spacing_sample(2 * np.sqrt(disc[disc >= 0])).normalized)
    assert ks_distance(s, d.spacing_cdf_gsce) < 0.006
