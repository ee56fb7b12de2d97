import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitmat.algebra import (
    I,
    J,
    K,
    ONE,
    SplitComplex,
    SplitQuaternion,
    sc_conj_norm,
    sc_mul,
    sc_real_rep,
    sq_complex_rep,
    sq_complex_rep_arrays,
    sq_conj_arrays,
    sq_conj_norm,
    sq_from_complex_column,
    sq_mul,
    sq_mul_arrays,
    sq_norm_sq_arrays,
)

reals = st.floats(-10, 10, allow_nan=False)
quats = st.builds(SplitQuaternion, reals, reals, reals, reals)
scs = st.builds(SplitComplex, reals, reals)


def test_sc_mul_examples():
    assert sc_mul(SplitComplex(0, 1), SplitComplex(0, 1)) == SplitComplex(1, 0)
    assert sc_mul(SplitComplex(2.5, -3), SplitComplex(1, 0)) == SplitComplex(2.5, -3)
    # zero divisor
    assert sc_mul(SplitComplex(1, 1), SplitComplex(1, -1)) == SplitComplex(0, 0)


@pytest.mark.parametrize("z, conj, norm", [((3, 2), (3, -2), 5), ((1, 1), (1, -1), 0), ((0, 2), (0, -2), -4)])
def test_sc_conj_norm(z, conj, norm):
    c, n = sc_conj_norm(SplitComplex(*z))
    assert c == SplitComplex(*conj)
    assert n == norm
    assert sc_mul(SplitComplex(*z), c) == SplitComplex(norm, 0)


def test_sc_real_rep():
    np.testing.assert_array_equal(sc_real_rep(SplitComplex(2, 1)), [[2, 1], [1, 2]])
    np.testing.assert_array_equal(sc_real_rep(SplitComplex(1, 0)), np.eye(2))
    assert np.linalg.det(sc_real_rep(SplitComplex(2, 1))) == pytest.approx(3)


def test_basis_relations():
    assert I * I == -ONE
    assert J * J == ONE
    assert K * K == ONE
    assert I * J * K == ONE


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (I, J, K), (J, I, -K), (J, K, -I), (K, J, I), (K, I, J), (I, K, -J),
    ],
)
def test_multiplication_table(a, b, expected):
    assert a * b == expected
    # independently through the 2x2 complex representation
    np.testing.assert_allclose(sq_complex_rep(a) @ sq_complex_rep(b), sq_complex_rep(expected))


@pytest.mark.parametrize(
    "p, norm", [((1, 0, 0, 0), 1), ((0, 0, 1, 0), -1), ((1, 1, 1, 1), 0)]
)
def test_sq_conj_norm(p, norm):
    q = SplitQuaternion(*p)
    c, n = sq_conj_norm(q)
    assert c == SplitQuaternion(p[0], -p[1], -p[2], -p[3])
    assert n == norm
    assert sq_mul(c, q) == SplitQuaternion(norm, 0, 0, 0)


def test_sq_complex_rep_layout():
    rep = sq_complex_rep(SplitQuaternion(1.0, 2.0, 3.0, 4.0))
    np.testing.assert_array_equal(rep, [[1 + 2j, 3 + 4j], [3 - 4j, 1 - 2j]])
    np.testing.assert_array_equal(sq_complex_rep(ONE), np.eye(2))
    assert np.linalg.det(rep).real == pytest.approx(SplitQuaternion(1.0, 2.0, 3.0, 4.0).norm_sq)
    assert np.trace(rep).real == 2.0


def test_complex_column_inverts_rep(nprng):
    p = nprng.normal(size=(50, 4))
    rep = sq_complex_rep_arrays(p)
    np.testing.assert_array_equal(sq_from_complex_column(rep[:, 0, 0], rep[:, 1, 0]), p)


def test_homomorphism_bulk(nprng):
    p, q = nprng.normal(size=(2, 10_000, 4))
    lhs = sq_complex_rep_arrays(sq_mul_arrays(p, q))
    rhs = sq_complex_rep_arrays(p) @ sq_complex_rep_arrays(q)
    assert np.max(np.abs(lhs - rhs)) < 1e-12


@given(scs, scs)
def test_sc_homomorphism(a, b):
    np.testing.assert_allclose(sc_real_rep(a * b), sc_real_rep(a) @ sc_real_rep(b), atol=1e-10)


@given(scs, scs, scs)
def test_sc_commutative_associative(a, b, c):
    assert a * b == b * a
    lhs, rhs = (a * b) * c, a * (b * c)
    assert lhs.x == pytest.approx(rhs.x, abs=1e-9) and lhs.y == pytest.approx(rhs.y, abs=1e-9)


@settings(max_examples=200)
@given(quats, quats)
def test_norm_multiplicative(p, q):
    lhs = (p * q).norm_sq
    rhs = p.norm_sq * q.norm_sq
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-8)


@given(quats, quats)
def test_conj_is_anti_automorphism(p, q):
    np.testing.assert_allclose((p * q).conj().as_array(), (q.conj() * p.conj()).as_array(), atol=1e-10)


@given(quats, quats, quats)
def test_associative(p, q, r):
    np.testing.assert_allclose(((p * q) * r).as_array(), (p * (q * r)).as_array(), rtol=1e-12, atol=1e-9)


def test_array_helpers_agree(nprng):
    p = nprng.normal(size=(20, 4))
    np.testing.assert_allclose(sq_norm_sq_arrays(p), [SplitQuaternion(*r).norm_sq for r in p])
    np.testing.assert_array_equal(sq_conj_arrays(p)[:, 1:], -p[:, 1:])


def test_split_complex_embeds_into_quaternions():
    a, b = SplitComplex(1.5, -2.0), SplitComplex(0.5, 3.0)
    prod = (a * b).to_quaternion()
    assert prod == a.to_quaternion() * b.to_quaternion()
