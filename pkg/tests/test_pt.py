import numpy as np
import pytest

from splitmat.ensembles import sample_gsce, sample_gsqe
from splitmat.matrices import complex_rep
from splitmat.pt import char_poly_complex, is_pt_symmetric, pt_jacobian_rank


def test_identity_poly():
    assert np.allclose(char_poly_complex(np.eye(2)), [1, -2, 1])


def test_rotation_generator_is_pt():
    a = np.diag([1j, -1j])
    assert np.allclose(char_poly_complex(a), [1, 0, 1])
    report = is_pt_symmetric(a)
    assert report.is_pt and report.conjugate_closed


def test_complex_trace_not_pt():
    report = is_pt_symmetric(np.array([[1j, 1], [0, 0]]))
    assert not report.is_pt
    # Im of the trace coefficient, relative to the Frobenius norm sqrt(2)
    assert report.max_imag_coeff == pytest.approx(1 / np.sqrt(2))


def test_real_matrix_is_pt(nprng):
    for n in (2, 5, 20):
        assert is_pt_symmetric(nprng.normal(size=(n, n))).is_pt


def test_large_matrix_uses_eigenvalues(nprng):
    a = nprng.normal(size=(20, 20))
    assert np.allclose(char_poly_complex(a), np.poly(a), rtol=1e-8, atol=1e-6)


def test_embeddings_are_pt(rng):
    for sampler in (sample_gsce, sample_gsqe):
        for n in (2, 3, 5):
            for _ in range(50):
                report = is_pt_symmetric(complex_rep(sampler(n, rng)))
                assert report.is_pt and report.conjugate_closed


def test_generic_complex_not_pt(nprng):
    a = nprng.normal(size=(3, 3)) + 1j * nprng.normal(size=(3, 3))
    assert not is_pt_symmetric(a).is_pt


def test_jacobian_rank_generic(nprng):
    for n in (2, 4):
        a = nprng.normal(size=(n, n)) + 1j * nprng.normal(size=(n, n))
        assert pt_jacobian_rank(a) == n


def test_jacobian_rank_zero_matrix():
    # the only nonvanishing differential at 0 is that of the trace
    assert pt_jacobian_rank(np.zeros((3, 3))) < 3


def test_report_with_rank(nprng):
    a = nprng.normal(size=(3, 3))
    report = is_pt_symmetric(a, with_rank=True)
    assert report.jacobian_rank == 3
