"""Monte Carlo verification suite.

Each ``check_*`` function reproduces one group of results and returns a list
of ``Check`` records; ``run_suite`` strings them together into a
``RunReport``. A check passes when ``|observed - expected| <= tol``; bounds
such as KS distances are expressed with ``expected = 0``.

Statistical tolerances are pinned for the full sample counts. The fast suite
uses fewer samples and widens those tolerances by ``sqrt(full / fast)``, which
keeps the confidence level of each band unchanged.
"""

from __future__ import annotations

import json
import math
import platform
from dataclasses import dataclass, field

import numpy as np
import scipy
from scipy.optimize import linear_sum_assignment

from . import __version__
from . import densities as dens
from .algebra import sq_complex_rep_arrays, sq_mul_arrays
from .bridge import block_similarity, ginibre_blocks
from .ensembles import (
    GSCE,
    GSQE,
    EnsembleConfig,
    RngStream,
    sample_ensemble,
    sample_gsce,
    sample_gsqe,
)
from .matrices import (
    SplitMatrix,
    SplitVector,
    adjoint,
    complex_rep,
    complex_rep_arrays,
    eigenvector_reconstruct,
    faddeev_leverrier,
    inner_product,
    matvec,
    pairing_defects,
    spectrum,
    spectrum_2x2,
)
from .errors import NumericalError
from .pt import pt_jacobian_rank
from .stats import (
    PLANE_BINS,
    PLANE_RANGE,
    histogram2d,
    ks_band,
    ks_distance,
    numeric_cdf,
    quad,
    spacing_sample,
    truncation_point,
)

# stream ids well above any chunk index
COIN_STREAM = 2**40
STRUCT_STREAM = 2**40 + 1
PT_STREAM = 2**40 + 2

FULL_COUNTS = dict(mc=200_000, spacing=100_000, bridge=10_000, bridge_dist=1_000_000,
                   structural=10_000, pt_trials=100, eigvec=1_000)
FAST_COUNTS = dict(mc=20_000, spacing=20_000, bridge=2_000, bridge_dist=20_000,
                   structural=1_000, pt_trials=100, eigvec=200)

# tolerances pinned at FULL_COUNTS
TOL_REAL_FRACTION = 0.005
TOL_HIST2D_MAE = 0.01
TOL_PLANE_INTEGRAL = 1e-6
TOL_SPACING_MOMENT = 1e-6
TOL_BRIDGE_RESIDUAL = 1e-12
TOL_BRIDGE_VARIANCE = 0.005
TOL_BRIDGE_CORRELATION = 0.01
TOL_BLOCK_SPECTRA = 1e-9
TOL_CHARPOLY_IMAG = 1e-9
TOL_PAIRING = 1e-8
TOL_IDENTITY = 1e-12
TOL_EIGVEC = 1e-8
KS_COEFF_99 = 1.63
PT_MIN_FRACTION = 0.99

R1_SUPPORT = 8.0
SPACING_SUPPORT = 12.0


@dataclass
class Check:
    name: str
    observed: float
    expected: float
    tol: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.observed = float(self.observed)
        self.expected = float(self.expected)
        self.tol = float(self.tol)
        self.passed = bool(abs(self.observed - self.expected) <= self.tol)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.name}: observed={self.observed:.6g} "
                f"expected={self.expected:.6g} tol={self.tol:.3g}")

    def to_dict(self):
        return {"name": self.name, "observed": self.observed, "expected": self.expected,
                "tol": self.tol, "pass": self.passed}


@dataclass
class RunReport:
    checks: list
    config: dict

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def to_dict(self):
        return {"checks": [c.to_dict() for c in self.checks], "config": self.config,
                "pass": self.passed}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


def _widen(full, used):
    return math.sqrt(max(1.0, full / used))


class MonteCarloData:
    """Shared 2x2 samples for the density and spacing checks."""

    def __init__(self, seed, count, workers=1):
        self.count = count
        self.mid = {}
        self.disc = {}
        for kind in (GSCE, GSQE):
            entries = sample_ensemble(EnsembleConfig(kind, 2, count, seed), workers)
            self.mid[kind], self.disc[kind] = spectrum_2x2(entries)

    def real_mask(self, kind):
        return self.disc[kind] >= 0


# -- criterion groups ---------------------------------------------------------


def check_real_fraction(data: MonteCarloData, scale=1.0):
    tol = TOL_REAL_FRACTION * _widen(FULL_COUNTS["mc"], data.count) * scale
    return [
        Check(f"real_fraction_{kind.lower()}", np.mean(data.real_mask(kind)),
              dens.real_probability(kind), tol)
        for kind in (GSCE, GSQE)
    ]


def real_eigenvalue_sample(data: MonteCarloData, kind, seed):
    """One eigenvalue per real-spectrum matrix, picked by a fair coin."""
    mask = data.real_mask(kind)
    root = np.sqrt(data.disc[kind][mask])
    coin = RngStream(seed, COIN_STREAM).uniform(root.size) < 0.5
    return np.sort(data.mid[kind][mask] + np.where(coin, root, -root))


def check_r1_real(data: MonteCarloData, seed, scale=1.0, truncation=None):
    checks = []
    for kind in (GSCE, GSQE):
        cdf = numeric_cdf(lambda x, k=kind: dens.r1_real(k, x), -R1_SUPPORT, R1_SUPPORT,
                          mass=dens.real_probability(kind))
        sample = real_eigenvalue_sample(data, kind, seed)
        checks.append(Check(f"ks_r1_real_{kind.lower()}", ks_distance(sample, cdf), 0.0,
                            ks_band(sample.size, KS_COEFF_99) * scale))
        if truncation is not None:
            f = lambda x, k=kind: dens.r1_real(k, x)
            truncation[f"r1_real_{kind.lower()}"] = truncation_point(f, f(0.0))
    return checks


def bin_averaged_r1_complex(kind, edges, order=4):
    """Average of the complex-branch density over each square bin (Gauss-Legendre)."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    lo, hi = edges[:-1], edges[1:]
    half = (hi - lo) / 2
    pts = ((lo + hi) / 2)[:, None] + half[:, None] * nodes[None, :]  # (bins, order)
    w = weights / 2
    x = pts[:, None, :, None]
    y = pts[None, :, None, :]
    vals = dens.r1_complex(kind, x + 1j * y)
    return np.einsum("abij,i,j->ab", vals, w, w)


def complex_density_error(data: MonteCarloData, kind):
    mask = ~data.real_mask(kind)
    re = data.mid[kind][mask]
    im = np.sqrt(-data.disc[kind][mask])
    x = np.concatenate([re, re])
    y = np.concatenate([im, -im])
    edges, _, density = histogram2d(x, y, PLANE_BINS, PLANE_RANGE, total=2 * data.count)
    expected = bin_averaged_r1_complex(kind, edges)
    return float(np.mean(np.abs(density - expected)))


def plane_integral(kind, support=6.0):
    """Complex-branch density integrated over the plane; it factorises over Re and Im."""
    if kind == GSCE:
        fx = lambda x: math.exp(-2 * x * x)
        fy = lambda y: float(dens.r1_complex_sc(1j * y)) if y else 0.0
    else:
        fx = lambda x: math.exp(-4 * x * x)
        fy = lambda y: float(dens.r1_complex_sq(1j * y)) if y else 0.0
    ix = quad(fx, -support, support, tol=1e-12)
    iy = 2 * quad(fy, 0.0, support, tol=1e-12)
    return ix * iy


def check_complex_branch(data: MonteCarloData, scale=1.0):
    tol = TOL_HIST2D_MAE * _widen(FULL_COUNTS["mc"], data.count) * scale
    checks = [Check(f"hist2d_mae_{kind.lower()}", complex_density_error(data, kind), 0.0, tol)
              for kind in (GSCE, GSQE)]
    for kind in (GSCE, GSQE):
        checks.append(Check(f"plane_integral_{kind.lower()}", plane_integral(kind),
                            1 - dens.real_probability(kind), TOL_PLANE_INTEGRAL * scale))
    return checks


def spacing_cdf(kind):
    if kind == GSCE:
        return dens.spacing_cdf_gsce
    return numeric_cdf(lambda s: dens.spacing_pdf(GSQE, s), 0.0, SPACING_SUPPORT)


def check_spacings(data: MonteCarloData, count, scale=1.0):
    checks = []
    for kind in (GSCE, GSQE):
        mask = data.real_mask(kind)[:count]
        raw = 2 * np.sqrt(data.disc[kind][:count][mask])
        sample = np.sort(spacing_sample(raw).normalized)
        checks.append(Check(f"ks_spacing_{kind.lower()}", ks_distance(sample, spacing_cdf(kind)),
                            0.0, ks_band(sample.size, KS_COEFF_99) * scale))
    for kind in (GSCE, GSQE):
        pdf = lambda s, k=kind: dens.spacing_pdf(k, s)
        mass = quad(pdf, 0.0, SPACING_SUPPORT, tol=1e-12)
        mean = quad(lambda s: s * pdf(s), 0.0, SPACING_SUPPORT, tol=1e-12)
        checks.append(Check(f"spacing_mass_{kind.lower()}", mass, 1.0, TOL_SPACING_MOMENT * scale))
        checks.append(Check(f"spacing_mean_{kind.lower()}", mean, 1.0, TOL_SPACING_MOMENT * scale))
    return checks


def check_goe_coincidence(scale=1.0):
    s = np.linspace(0.0, 4.0, 401)
    dev = np.max(np.abs(dens.spacing_pdf(GSCE, s) - math.pi / 2 * s * np.exp(-math.pi / 4 * s * s)))
    return [Check("goe_coincidence", dev, 0.0, 0.0)]


def check_bridge(seed, count, dist_count, workers=1, scale=1.0):
    entries = sample_ensemble(EnsembleConfig(GSCE, 2, count, seed), workers)
    params = (entries[:, 0, 0, 0], entries[:, 1, 1, 0], entries[:, 0, 1, 0], -entries[:, 0, 1, 2])
    _, residual = ginibre_blocks(*params)
    checks = [Check("bridge_residual", np.max(residual), 0.0, TOL_BRIDGE_RESIDUAL * scale)]

    entries = sample_ensemble(EnsembleConfig(GSCE, 2, dist_count, seed), workers)
    params = (entries[:, 0, 0, 0], entries[:, 1, 1, 0], entries[:, 0, 1, 0], -entries[:, 0, 1, 2])
    (a, b, c, d), _ = ginibre_blocks(*params)
    abcd = np.stack([a, b, c, d])
    widen = _widen(FULL_COUNTS["bridge_dist"], dist_count) * scale
    var_dev = np.max(np.abs(np.mean(abcd**2, axis=1) - 0.5))
    corr = np.corrcoef(abcd)
    max_corr = np.max(np.abs(corr[np.triu_indices(4, 1)]))
    checks.append(Check("bridge_variance", 0.5 + var_dev, 0.5, TOL_BRIDGE_VARIANCE * widen))
    checks.append(Check("bridge_correlation", max_corr, 0.0, TOL_BRIDGE_CORRELATION * widen))

    rng = RngStream(seed, STRUCT_STREAM)
    worst = 0.0
    for _ in range(20):
        h = sample_gsce(5, rng)
        a_mat = block_similarity(h).ginibre_block
        worst = max(worst, spectral_mismatch(np.repeat(np.linalg.eigvals(a_mat), 2),
                                             np.linalg.eigvals(complex_rep(h))))
    checks.append(Check("block_similarity_n5", worst, 0.0, TOL_BLOCK_SPECTRA * scale))
    return checks


def spectral_mismatch(x, y):
    """Largest distance under the optimal matching of two eigenvalue multisets."""
    cost = np.abs(np.asarray(x)[:, None] - np.asarray(y)[None, :])
    r, c = linear_sum_assignment(cost)
    return float(np.max(cost[r, c]))


def check_structural(seed, count, workers=1, scale=1.0):
    checks = []
    imag_worst, pair_worst = 0.0, 0.0
    for kind in (GSCE, GSQE):
        for n in (2, 3, 5):
            entries = sample_ensemble(EnsembleConfig(kind, n, count, seed), workers)
            emb = complex_rep_arrays(entries)
            coeffs = faddeev_leverrier(emb)
            s = np.maximum(1.0, np.linalg.norm(emb, axis=(-2, -1)))
            rel = np.abs(coeffs.imag) / s[:, None] ** np.arange(2 * n + 1)
            imag_worst = max(imag_worst, float(np.max(rel)))
            pair_worst = max(pair_worst, float(np.max(pairing_defects(np.linalg.eigvals(emb)))))
    checks.append(Check("charpoly_reality", imag_worst, 0.0, TOL_CHARPOLY_IMAG * scale))
    checks.append(Check("kramers_pairing", pair_worst, 0.0, TOL_PAIRING * scale))

    rng = RngStream(seed, STRUCT_STREAM)
    p, q = rng.normal((2, count, 4))
    hom_sq = np.max(np.abs(sq_complex_rep_arrays(sq_mul_arrays(p, q))
                           - sq_complex_rep_arrays(p) @ sq_complex_rep_arrays(q)))
    x, y = p[:, [0, 2]], q[:, [0, 2]]
    sc_rep = lambda z: np.stack([np.stack([z[:, 0], z[:, 1]], -1), np.stack([z[:, 1], z[:, 0]], -1)], -2)
    prod = np.stack([x[:, 0] * y[:, 0] + x[:, 1] * y[:, 1], x[:, 0] * y[:, 1] + x[:, 1] * y[:, 0]], -1)
    hom_sc = np.max(np.abs(sc_rep(prod) - sc_rep(x) @ sc_rep(y)))
    checks.append(Check("homomorphism", max(hom_sq, hom_sc), 0.0, TOL_IDENTITY * scale))

    worst = 0.0
    for _ in range(100):
        m = SplitMatrix(rng.normal((3, 3, 4)))
        u = SplitVector(rng.normal((3, 4)))
        v = SplitVector(rng.normal((3, 4)))
        lhs = inner_product(u, matvec(m, v)).as_array()
        rhs = inner_product(matvec(adjoint(m), u), v).as_array()
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    checks.append(Check("adjoint_identity", worst, 0.0, TOL_IDENTITY * scale))
    return checks


def check_pt_rank(seed, trials, scale=1.0):
    rng = RngStream(seed, PT_STREAM)
    checks = []
    for n in (2, 3, 4, 5):
        hits = 0
        for _ in range(trials):
            a = rng.normal((n, n)) + 1j * rng.normal((n, n))
            hits += pt_jacobian_rank(a) == n
        # fraction is at most 1, so this passes iff it is >= PT_MIN_FRACTION
        checks.append(Check(f"pt_rank_n{n}", hits / trials, 1.0, (1 - PT_MIN_FRACTION) * scale))
    return checks


def check_eigenvectors(seed, count, scale=1.0):
    rng = RngStream(seed, STRUCT_STREAM + 1)
    done, worst_res, worst_ip = 0, 0.0, 0.0
    while done < count:
        h = sample_gsqe(2, rng)
        spec = spectrum(h)
        if not spec.all_real:
            continue
        l1, l2 = spec.real_eigs
        vecs = []
        try:
            for lam in (l1, l2):
                u = eigenvector_reconstruct(h, lam)
                resid = matvec(h, u).components - lam * u.components
                worst_res = max(worst_res, float(np.max(np.abs(resid))))
                vecs.append(u)
        except NumericalError:
            worst_res = math.inf
            break
        worst_ip = max(worst_ip, float(np.max(np.abs(inner_product(*vecs).as_array()))))
        done += 1
    return [Check("eigvec_residual", worst_res, 0.0, TOL_EIGVEC * scale),
            Check("eigvec_orthogonality", worst_ip, 0.0, TOL_EIGVEC * scale)]


def run_suite(suite="fast", seed=7, mc_samples=None, workers=1, tolerance_scale=1.0) -> RunReport:
    counts = dict(FULL_COUNTS if suite == "full" else FAST_COUNTS)
    if mc_samples is not None:
        counts["mc"] = mc_samples
        counts["spacing"] = min(counts["spacing"], mc_samples)
    truncation = {}
    data = MonteCarloData(seed, counts["mc"], workers)
    checks = []
    checks += check_real_fraction(data, tolerance_scale)
    checks += check_r1_real(data, seed, tolerance_scale, truncation)
    checks += check_complex_branch(data, tolerance_scale)
    checks += check_spacings(data, counts["spacing"], tolerance_scale)
    checks += check_goe_coincidence(tolerance_scale)
    checks += check_bridge(seed, counts["bridge"], counts["bridge_dist"], workers, tolerance_scale)
    checks += check_structural(seed, counts["structural"], workers, tolerance_scale)
    checks += check_pt_rank(seed, counts["pt_trials"], tolerance_scale)
    checks += check_eigenvectors(seed, counts["eigvec"], tolerance_scale)
    config = {
        "suite": suite,
        "seed": seed,
        "counts": counts,
        "workers": workers,
        "tolerance_scale": tolerance_scale,
        "truncation": truncation,
        "versions": {"splitmat": __version__, "numpy": np.__version__,
                     "scipy": scipy.__version__, "python": platform.python_version()},
    }
    return RunReport(checks, config)
