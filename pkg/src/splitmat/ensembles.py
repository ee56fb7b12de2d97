"""Gaussian split-Hermitian ensembles and the real Ginibre reference ensemble.

Entry variances follow from expanding the trace forms in components:

    GSCE  Tr(H H^T)             = sum_m h_mm^2 + 2 sum_{m<n} (x_mn^2 + y_mn^2)
    GSQE  Tr(H H^I + H^I H)     = 2 sum_m h_mm^2 + 4 sum_{m<n} |h_mn|_E^2

so GSCE diagonals have variance 1/2 and off-diagonal components 1/4, while
GSQE diagonals have variance 1/4 and off-diagonal components 1/8.

Gaussians come from numpy's ``Generator.standard_normal`` (ziggurat) on a
Philox bit generator keyed by ``(seed, stream_id)``. Monte Carlo runs cut the
sample count into fixed-width chunks and give chunk ``c`` the stream ``c``, so
output never depends on the number of workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .algebra import sq_conj_arrays, sq_conj_i_arrays
from .errors import DomainError
from .matrices import (
    SPLIT_COMPLEX_HERMITIAN,
    SPLIT_HERMITIAN,
    SplitMatrix,
    matmul_arrays,
)

GSCE = "GSCE"
GSQE = "GSQE"
GINIBRE = "GinibreReal"
ENSEMBLES = (GSCE, GSQE, GINIBRE)

DEFAULT_SUBSTREAM_WIDTH = 1024
# entry variance of the real Ginibre blocks that the GSCE maps onto
GINIBRE_SIGMA = math.sqrt(0.5)

_VARIANCES = {
    # kind: (diagonal variance, off-diagonal component variance, components)
    GSCE: (0.5, 0.25, (0, 2)),
    GSQE: (0.25, 0.125, (0, 1, 2, 3)),
}


@dataclass(frozen=True)
class EnsembleConfig:
    kind: str
    n: int
    count: int
    seed: int
    substream_width: int = DEFAULT_SUBSTREAM_WIDTH

    def __post_init__(self):
        if self.kind not in ENSEMBLES:
            raise DomainError(f"unknown ensemble {self.kind!r}")
        if self.n < 1 or self.count < 1 or self.substream_width < 1:
            raise DomainError("n, count and substream_width must be positive")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")


class RngStream:
    """Reproducible Gaussian stream identified by ``(seed, stream_id)``."""

    def __init__(self, seed: int, stream_id: int = 0):
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream_id,))
        self.generator = np.random.Generator(np.random.Philox(ss))

    def normal(self, shape, std=1.0):
        return self.generator.standard_normal(shape) * std

    def uniform(self, shape):
        return self.generator.random(shape)

    def __repr__(self):
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"


def _sample_hermitian_batch(kind, n, count, rng):
    var_diag, var_off, comps = _VARIANCES[kind]
    out = np.zeros((count, n, n, 4))
    idx = np.arange(n)
    out[:, idx, idx, 0] = rng.normal((count, n), math.sqrt(var_diag))
    iu, ju = np.triu_indices(n, 1)
    off = np.zeros((count, iu.size, 4))
    off[..., comps] = rng.normal((count, iu.size, len(comps)), math.sqrt(var_off))
    out[:, iu, ju] = off
    out[:, ju, iu] = sq_conj_arrays(off)
    return out


def sample_gsce_batch(n, count, rng):
    """``(count, n, n, 4)`` stack of split-complex Hermitian matrices."""
    return _sample_hermitian_batch(GSCE, n, count, rng)


def sample_gsqe_batch(n, count, rng):
    """``(count, n, n, 4)`` stack of split-quaternionic Hermitian matrices."""
    return _sample_hermitian_batch(GSQE, n, count, rng)


def sample_real_ginibre_batch(n, count, rng, sigma=GINIBRE_SIGMA):
    if sigma <= 0:
        raise DomainError("sigma must be positive")
    return rng.normal((count, n, n), sigma)


def sample_gsce(n: int, rng: RngStream) -> SplitMatrix:
    if n < 1:
        raise DomainError("n must be positive")
    return SplitMatrix(sample_gsce_batch(n, 1, rng)[0], kind=SPLIT_COMPLEX_HERMITIAN)


def sample_gsqe(n: int, rng: RngStream) -> SplitMatrix:
    if n < 1:
        raise DomainError("n must be positive")
    return SplitMatrix(sample_gsqe_batch(n, 1, rng)[0], kind=SPLIT_HERMITIAN)


def sample_real_ginibre(n: int, sigma: float, rng: RngStream) -> np.ndarray:
    if n < 1:
        raise DomainError("n must be positive")
    return sample_real_ginibre_batch(n, 1, rng, sigma)[0]


def gaussian_action_arrays(entries, kind):
    """Scalar part of the trace form for ``(..., n, n, 4)`` stacks (no kind checks)."""
    entries = np.asarray(entries)
    transposed = np.swapaxes(entries, -3, -2)
    if kind == GSCE:
        prod = matmul_arrays(entries, transposed)
    elif kind == GSQE:
        hi = sq_conj_i_arrays(transposed)
        prod = matmul_arrays(entries, hi) + matmul_arrays(hi, entries)
    else:
        raise DomainError(f"no Gaussian action for {kind!r}")
    return np.trace(prod[..., 0], axis1=-2, axis2=-1)


def gaussian_action(m: SplitMatrix, kind: str) -> float:
    """Exponent of the ensemble density: ``P(H) ∝ exp(-action)``."""
    if kind == GSCE and m.kind != SPLIT_COMPLEX_HERMITIAN:
        raise DomainError("GSCE action needs a split-complex Hermitian matrix")
    if kind == GSQE and not m.is_hermitian:
        raise DomainError("GSQE action needs a split-Hermitian matrix")
    return float(gaussian_action_arrays(m.entries, kind))


def normalization(kind: str, n: int) -> float:
    """Prefactor of ``P(H) dH`` w.r.t. the flat measure over independent components."""
    if kind == GSCE:
        return (1 / math.pi) ** (n / 2) * (2 / math.pi) ** (n * (n - 1) / 2)
    if kind == GSQE:
        return (2 / math.pi) ** (n / 2) * (2 / math.sqrt(math.pi)) ** (2 * n * (n - 1))
    raise DomainError(f"no normalization for {kind!r}")


def log_density(m: SplitMatrix, kind: str) -> float:
    return math.log(normalization(kind, m.n)) - gaussian_action(m, kind)


# -- chunked Monte Carlo --------------------------------------------------------


def chunk_plan(count, width=DEFAULT_SUBSTREAM_WIDTH):
    """``[(chunk_index, start, size), ...]`` covering ``range(count)``."""
    return [(c, start, min(width, count - start)) for c, start in enumerate(range(0, count, width))]


def sample_chunk(config: EnsembleConfig, chunk_index: int, size: int):
    rng = RngStream(config.seed, chunk_index)
    if config.kind == GSCE:
        return sample_gsce_batch(config.n, size, rng)
    if config.kind == GSQE:
        return sample_gsqe_batch(config.n, size, rng)
    return sample_real_ginibre_batch(config.n, size, rng)


def _run_one(args):
    fn, config, chunk_index, size = args
    return fn(sample_chunk(config, chunk_index, size), config, chunk_index)


def map_chunks(fn, config: EnsembleConfig, workers: int = 1):
    """Apply ``fn(samples, config, chunk_index)`` to every chunk, in chunk order.

    ``fn`` must be a module-level function when ``workers > 1``.
    """
    tasks = [(fn, config, c, size) for c, _, size in chunk_plan(config.count, config.substream_width)]
    if workers <= 1 or len(tasks) == 1:
        return [_run_one(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_one, tasks))


def _identity(samples, config, chunk_index):
    return samples


def sample_ensemble(config: EnsembleConfig, workers: int = 1) -> np.ndarray:
    """All ``config.count`` samples as one stacked array."""
    return np.concatenate(map_chunks(_identity, config, workers), axis=0)
