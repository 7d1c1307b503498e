from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperfol import linalg

small = st.integers(-4, 4)


def int_matrix(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@given(int_matrix(4, 5))
def test_rank_nullity_exact(rows):
    m = linalg.as_exact(np.array(rows, dtype=object))
    ns = linalg.nullspace(m)
    assert linalg.rank(m) + ns.shape[1] == 5
    assert all(v == 0 for v in (m @ ns).ravel())


@given(int_matrix(4, 5))
def test_exact_rank_matches_numpy(rows):
    m = np.array(rows, dtype=float)
    assert linalg.rank(linalg.as_exact(np.array(rows, dtype=object))) == np.linalg.matrix_rank(m)


@given(int_matrix(3, 3))
def test_gram_schmidt_exact_is_orthogonal(rows):
    w = linalg.column_basis(linalg.as_exact(np.array(rows, dtype=object)))
    gram = linalg.as_exact(np.diag([1, 2, 3]))
    q = linalg.gram_schmidt(w, gram)
    m = q.T @ gram @ q
    assert all(m[i, j] == 0 for i in range(m.shape[0]) for j in range(m.shape[1]) if i != j)
    assert linalg.span_residual(w, q, gram) == 0


def test_gram_schmidt_float_orthonormal():
    rng = np.random.default_rng(1)
    w = rng.standard_normal((5, 3))
    q = linalg.gram_schmidt(w, np.eye(5))
    assert np.allclose(q.T @ q, np.eye(3), atol=1e-12)


def test_solve_inconsistent_returns_none():
    a = linalg.as_exact(np.array([[1, 0], [0, 0]], dtype=object))
    b = linalg.as_exact(np.array([0, 1], dtype=object))
    assert linalg.solve(a, b) is None
    b = linalg.as_exact(np.array([3, 0], dtype=object))
    assert linalg.solve(a, b)[0] == 3


def test_inverse_exact():
    a = linalg.as_exact(np.array([[2, 1], [1, 1]], dtype=object))
    inv = linalg.inverse(a)
    assert (a @ inv == linalg.eye(2, True)).all()


def test_orth_complement_within():
    gram = np.eye(3)
    w = np.array([[1.0], [0.0], [0.0]])
    within = np.eye(3)[:, :2]
    c = linalg.orth_complement(w, gram, within=within)
    assert c.shape[1] == 1
    assert abs(c[0, 0]) < 1e-12 and abs(c[2, 0]) < 1e-12


def test_subspace_distance_rotation():
    gram = np.eye(2)
    u = np.array([[1.0], [0.0]])
    for t in (0.0, 0.3, 1.0):
        v = np.array([[np.cos(t)], [np.sin(t)]])
        assert linalg.subspace_distance(u, v, gram) == pytest.approx(abs(np.sin(t)), abs=1e-12)


@given(st.fractions(min_value=0, max_value=100, max_denominator=50))
def test_rational_sqrt(q):
    r = linalg.rational_sqrt(q * q)
    assert r == q
    s = linalg.rational_sqrt(q)
    if s is not None:
        assert s * s == q


def test_rational_sqrt_irrational():
    assert linalg.rational_sqrt(Fraction(2)) is None
    assert linalg.rational_sqrt(Fraction(1, 12)) is None
