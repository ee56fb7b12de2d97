import numpy as np
import pytest

from splitmat.bridge import (
    BRIDGE_O,
    SIGN_FLIP,
    block_similarity,
    embed4,
    from_parameters,
    ginibre_blocks,
    ginibre_equivalent,
    parameters_2x2,
)
from splitmat.ensembles import sample_gsce, sample_gsqe
from splitmat.errors import DomainError
from splitmat.matrices import SplitMatrix, complex_rep, spectrum
from splitmat.verify import spectral_mismatch


def test_parameters_round_trip():
    h = from_parameters(1.0, 2.0, 3.0, 4.0)
    assert parameters_2x2(h) == (1.0, 2.0, 3.0, 4.0)


def test_embed4_rows():
    e = embed4(from_parameters(1.0, 2.0, 3.0, 4.0))
    expected = [[1, 0, 3, 4], [0, 1, 4, 3], [3, -4, 2, 0], [-4, 3, 0, 2]]
    assert np.array_equal(e, np.array(expected, dtype=float))


def test_embed4_symmetric_case():
    e = embed4(from_parameters(1.0, 2.0, 3.0, 0.0))
    block = np.array([[1.0, 3.0], [3.0, 2.0]])
    assert np.array_equal(e[np.ix_([0, 2], [0, 2])], block)
    assert np.array_equal(e[np.ix_([1, 3], [1, 3])], block)
    assert np.array_equal(e, e.T)


def test_embed4_relates_to_complex_rep(rng):
    for _ in range(20):
        h = sample_gsce(2, rng)
        assert np.allclose(embed4(h), SIGN_FLIP @ complex_rep(h).real @ SIGN_FLIP, atol=0)
        assert np.allclose(complex_rep(h).imag, 0)


def test_embed4_spectrum_doubles(rng):
    h = sample_gsce(2, rng)
    eigs = np.repeat(spectrum(h).eigenvalues(), 2)
    assert spectral_mismatch(np.linalg.eigvals(embed4(h)), eigs) < 1e-10


def test_bridge_o_orthogonal():
    assert np.allclose(BRIDGE_O.T @ BRIDGE_O, np.eye(4), atol=1e-15)
    # entries are exactly +-1/sqrt(2) or 0
    assert set(np.round(np.abs(BRIDGE_O) * np.sqrt(2), 15).ravel()) == {0.0, 1.0}


def test_ginibre_example():
    res = ginibre_equivalent(from_parameters(1.0, 2.0, 3.0, 4.0))
    assert np.array_equal(res.ginibre_block, [[2.0, -1.0], [7.0, 1.0]])
    assert res.residual < 1e-14


def test_ginibre_diagonal():
    res = ginibre_equivalent(from_parameters(0.3, -1.2, 0.0, 0.0))
    assert res.ginibre_block[0, 1] == 0 and res.ginibre_block[1, 0] == 0


def test_ginibre_spectral_equivalence(rng):
    for _ in range(200):
        h = sample_gsce(2, rng)
        block = ginibre_equivalent(h).ginibre_block
        spec = spectrum(h)
        got = np.linalg.eigvals(block)
        assert (np.max(np.abs(got.imag)) == 0) == spec.all_real
        assert spectral_mismatch(got, spec.eigenvalues()) < 1e-10


def test_ginibre_blocks_vectorised():
    (a, b, c, d), residual = ginibre_blocks([1.0, 0.0], [2.0, 1.0], [3.0, 0.5], [4.0, -0.5])
    assert a.tolist() == [2.0, 1.0]
    assert b.tolist() == [-1.0, 1.0]
    assert c.tolist() == [1.0, 0.0]
    assert d.tolist() == [7.0, 0.0]
    assert np.all(residual < 1e-14)


def test_block_similarity_matches_2x2(rng):
    for _ in range(20):
        h = sample_gsce(2, rng)
        a = block_similarity(h).ginibre_block
        block = ginibre_equivalent(h).ginibre_block
        assert spectral_mismatch(np.linalg.eigvals(a), np.linalg.eigvals(block)) < 1e-12


def test_block_similarity_symmetric():
    x = np.array([[1.0, 2.0, 0.5], [2.0, -1.0, 0.3], [0.5, 0.3, 0.0]])
    res = block_similarity(SplitMatrix.split_complex(x, np.zeros((3, 3))))
    assert np.array_equal(res.ginibre_block, res.ginibre_block.T)
    assert np.all(np.isreal(np.linalg.eigvals(res.ginibre_block)))


def test_block_similarity_random_n5(rng):
    for _ in range(10):
        h = sample_gsce(5, rng)
        a = block_similarity(h).ginibre_block
        doubled = np.repeat(np.linalg.eigvals(a), 2)
        emb = np.linalg.eigvals(complex_rep(h))
        assert spectral_mismatch(doubled, emb) < 1e-9


def test_wrong_kind(rng):
    h = sample_gsqe(2, rng)
    with pytest.raises(DomainError):
        embed4(h)
    with pytest.raises(DomainError):
        ginibre_equivalent(h)
    with pytest.raises(DomainError):
        block_similarity(h)
    with pytest.raises(DomainError):
        embed4(sample_gsce(3, rng))
