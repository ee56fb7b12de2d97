"""The split-complex Hermitian ensemble as a doubled real Ginibre ensemble.

For a 2x2 matrix ``H = [[L1, d - j g], [d + j g, L2]]`` a fixed orthogonal
4x4 matrix ``BRIDGE_O`` block-diagonalises the real embedding into two copies
of ``[[L2, d - g], [d + g, L1]]``. For general n, writing ``H = X + j Y``
(X symmetric, Y antisymmetric), the embedding ``[[X, Y], [Y, X]]`` is
similar to ``diag(X + Y, X - Y)`` with ``X - Y = (X + Y)^T``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DomainError
from .matrices import SPLIT_COMPLEX_HERMITIAN, SplitMatrix

BRIDGE_O = np.array(
    [
        [0.0, 1.0, 0.0, -1.0],
        [0.0, 1.0, 0.0, 1.0],
        [1.0, 0.0, -1.0, 0.0],
        [1.0, 0.0, 1.0, 0.0],
    ]
) / np.sqrt(2)

# embed4(H) = S @ complex_rep(H) @ S: the 4x4 layout above uses j -> -j
# relative to the Kronecker layout of complex_rep.
SIGN_FLIP = np.diag([1.0, -1.0, 1.0, -1.0])

CONSISTENCY_TOL = 1e-10


@dataclass(frozen=True)
class BridgeResult:
    ginibre_block: np.ndarray
    residual: float


def _check(h: SplitMatrix, n=None):
    if h.kind != SPLIT_COMPLEX_HERMITIAN:
        raise DomainError(f"expected a split-complex Hermitian matrix, got {h.kind}")
    if n is not None and h.n != n:
        raise DomainError(f"expected a {n}x{n} matrix, got {h.n}x{h.n}")


def parameters_2x2(h: SplitMatrix):
    """``(L1, L2, delta, gamma)`` with ``h12 = delta - j gamma``."""
    _check(h, 2)
    e = h.entries
    return e[0, 0, 0], e[1, 1, 0], e[0, 1, 0], -e[0, 1, 2]


def from_parameters(l1, l2, delta, gamma) -> SplitMatrix:
    x = [[l1, delta], [delta, l2]]
    y = [[0.0, -gamma], [gamma, 0.0]]
    return SplitMatrix.split_complex(x, y)


def embed4_arrays(l1, l2, d, g):
    """Stacked 4x4 real embeddings from parameter arrays."""
    l1, l2, d, g = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (l1, l2, d, g)))
    z = np.zeros_like(l1)
    rows = [
        [l1, z, d, g],
        [z, l1, g, d],
        [d, -g, l2, z],
        [-g, d, z, l2],
    ]
    return np.moveaxis(np.array(rows), (0, 1), (-2, -1))


def embed4(h: SplitMatrix) -> np.ndarray:
    return embed4_arrays(*parameters_2x2(h))


def ginibre_blocks(l1, l2, d, g):
    """Vectorised ``(a, b, c, d)`` Ginibre entries and conjugation residuals."""
    l1, l2, d, g = (np.asarray(v, dtype=float) for v in (l1, l2, d, g))
    emb = embed4_arrays(l1, l2, d, g)
    t = BRIDGE_O.T @ emb @ BRIDGE_O
    a, b, dd, c = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (l2, d - g, d + g, l1)))
    z = np.zeros_like(a)
    expected = np.moveaxis(
        np.array([[a, b, z, z], [dd, c, z, z], [z, z, a, dd], [z, z, b, c]]), (0, 1), (-2, -1)
    )
    residual = np.max(np.abs(t - expected), axis=(-2, -1))
    return (a, b, c, dd), residual


def ginibre_equivalent(h: SplitMatrix) -> BridgeResult:
    (a, b, c, d), residual = ginibre_blocks(*parameters_2x2(h))
    scale = max(1.0, float(np.max(np.abs(h.entries))))
    if residual > CONSISTENCY_TOL * scale:
        raise ConsistencyError(f"conjugation residual {residual:.3e}")
    return BridgeResult(np.array([[a, b], [d, c]], dtype=float), float(residual))


def block_similarity(h: SplitMatrix) -> BridgeResult:
    """Real matrix ``A = X + Y`` whose doubled spectrum is the embedding spectrum."""
    _check(h)
    x = h.entries[..., 0]
    y = h.entries[..., 2]
    n = h.n
    emb = np.block([[x, y], [y, x]])
    eye = np.eye(n)
    q = np.block([[eye, eye], [eye, -eye]]) / np.sqrt(2)
    t = q @ emb @ q
    zero = np.zeros((n, n))
    expected = np.block([[x + y, zero], [zero, x - y]])
    residual = float(np.max(np.abs(t - expected)))
    scale = max(1.0, float(np.max(np.abs(h.entries))))
    if residual > CONSISTENCY_TOL * scale:
        raise ConsistencyError(f"similarity residual {residual:.3e}")
    return BridgeResult(x + y, residual)
