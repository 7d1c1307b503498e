"""Concrete real Lie algebras of complex matrices, with exact structure constants.

Elements are represented by real coordinate vectors over a fixed basis.
A complex matrix is carried as a pair ``(re, im)`` of Fraction object arrays
when exact, or as a numpy complex array otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm

import numpy as np

from .. import linalg

CMat = tuple[np.ndarray, np.ndarray]


class AlgebraError(ValueError):
    pass


def cmat(re, im=None) -> CMat:
    re = linalg.as_exact(np.array(re, dtype=object))
    im = linalg.zeros(re.shape, True) if im is None else linalg.as_exact(np.array(im, dtype=object))
    return re, im


def cmul(x: CMat, y: CMat) -> CMat:
    return x[0] @ y[0] - x[1] @ y[1], x[0] @ y[1] + x[1] @ y[0]


def ccomm(x: CMat, y: CMat) -> CMat:
    a, b = cmul(x, y), cmul(y, x)
    return a[0] - b[0], a[1] - b[1]


def cstar(x: CMat) -> CMat:
    return x[0].T.copy(), -x[1].T


def to_complex(x: CMat) -> np.ndarray:
    return linalg.as_float(x[0]) + 1j * linalg.as_float(x[1])


def _flatten(x: CMat) -> np.ndarray:
    return np.concatenate([x[0].ravel(), x[1].ravel()])


def _denominator(arr) -> int:
    d = 1
    for v in np.asarray(arr).flat:
        d = lcm(d, Fraction(v).denominator)
    return d


def _to_int(arr, d: int) -> np.ndarray:
    out = np.empty(np.shape(arr), dtype=object)
    for idx, v in np.ndenumerate(np.asarray(arr)):
        q = Fraction(v) * d
        assert q.denominator == 1
        out[idx] = q.numerator
    return out


@dataclass(eq=False)
class MatrixLieAlgebra:
    """A real Lie algebra g spanned by complex matrices closed under X -> -X*.

    Attributes
    ----------
    name
        Display name.
    basis
        Exact basis matrices as ``(re, im)`` pairs.
    struct
        Exact structure constants, ``[b_i, b_j] = sum_k struct[i, j, k] b_k``.
    theta
        Matrix of the Cartan involution X -> -X* in basis coordinates.
    killing
        Killing form B(b_i, b_j) = tr(ad b_i ad b_j).
    gram
        Inner product <X, Y> = -B(X, theta Y).
    """

    name: str
    basis: list[CMat]
    struct: np.ndarray = field(init=False, repr=False)
    theta: np.ndarray = field(init=False, repr=False)
    killing: np.ndarray = field(init=False, repr=False)
    gram: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.n = self.basis[0][0].shape[0]
        self.dim = len(self.basis)
        big = np.stack([_flatten(b) for b in self.basis], axis=1)
        if linalg.rank(big) != self.dim:
            raise AlgebraError("basis matrices are linearly dependent")
        self._span = big
        _, piv = linalg.rref(big.T)
        self._rows = piv
        inv = linalg.inverse(big[piv, :])
        self._inv_den = _denominator(inv)
        self._inv_int = _to_int(inv, self._inv_den)
        self._inv_float = np.linalg.pinv(linalg.as_float(big))
        self._compute_structure()
        t = np.stack([self.coords(self._neg_star(b)) for b in self.basis], axis=1)
        self.theta = t
        self._compute_killing()
        self.gram = -(self.killing @ self.theta)
        self._check()

    @staticmethod
    def _neg_star(b: CMat) -> CMat:
        s = cstar(b)
        return -s[0], -s[1]

    def _compute_structure(self) -> None:
        lden = _denominator(np.concatenate([_flatten(b) for b in self.basis]))
        ints = [(_to_int(b[0], lden), _to_int(b[1], lden)) for b in self.basis]
        d = self.dim
        cols = []
        for i in range(d):
            for j in range(d):
                w = ccomm(ints[i], ints[j])
                cols.append(_flatten(w)[self._rows])
        wpiv = np.stack(cols, axis=1)
        num = self._inv_int @ wpiv
        den = self._inv_den * lden
        c = np.empty((d, d, d), dtype=object)
        for col in range(d * d):
            i, j = divmod(col, d)
            for k in range(d):
                c[i, j, k] = Fraction(num[k, col], den)
        self.struct = c
        self.struct_float = linalg.as_float(c)
        # verify closure: every bracket must reconstruct exactly in float
        rec = np.einsum("ijk,kx->ijx", self.struct_float, linalg.as_float(self._span).T)
        cb = np.stack(self.complex_basis)
        prod = np.einsum("iab,jbc->ijac", cb, cb)
        comm = prod - np.transpose(prod, (1, 0, 2, 3))
        direct = np.concatenate([comm.real.reshape(d, d, -1), comm.imag.reshape(d, d, -1)], axis=2)
        if np.abs(rec - direct).max() > 1e-9:
            raise AlgebraError(f"{self.name}: basis is not closed under the commutator")
        self.ad_stack = np.transpose(c, (0, 2, 1))
        self.ad_stack_float = linalg.as_float(self.ad_stack)

    def _compute_killing(self) -> None:
        den = _denominator(self.struct)
        ci = _to_int(self.struct, den)
        if max(abs(int(v)) for v in ci.flat) ** 2 * self.dim ** 2 < 2 ** 62:
            k_int = np.einsum("ilk,jkl->ij", ci.astype(np.int64), ci.astype(np.int64))
        else:
            k_int = np.einsum("ilk,jkl->ij", ci, ci)
        self.killing = np.empty((self.dim, self.dim), dtype=object)
        for idx, v in np.ndenumerate(k_int):
            self.killing[idx] = Fraction(int(v), den * den)
        self.killing_float = linalg.as_float(self.killing)

    def _check(self) -> None:
        if not (self.killing == self.killing.T).all():
            raise AlgebraError("Killing form is not symmetric")
        if not (self.theta @ self.theta == linalg.eye(self.dim, True)).all():
            raise AlgebraError("theta is not an involution")
        if not (self.gram == self.gram.T).all():
            raise AlgebraError("inner product is not symmetric")
        self.gram_float = linalg.as_float(self.gram)
        self.theta_float = linalg.as_float(self.theta)
        if np.linalg.eigvalsh(self.gram_float).min() <= 0:
            raise AlgebraError("inner product -B(X, theta Y) is not positive definite")

    # coordinates and matrices

    def coords(self, x) -> np.ndarray:
        """Real coordinates of a matrix of g (exact pair or numpy complex array)."""
        if isinstance(x, tuple):
            v = _flatten(x)
            den = _denominator(v)
            vi = _to_int(v[self._rows], den)
            num = self._inv_int @ vi
            out = np.array([Fraction(int(t), self._inv_den * den) for t in num], dtype=object)
            if not (self._span @ out == v).all():
                raise AlgebraError("matrix does not lie in the algebra")
            return out
        x = np.asarray(x, dtype=complex)
        v = np.concatenate([x.real.ravel(), x.imag.ravel()])
        out = self._inv_float @ v
        if np.abs(linalg.as_float(self._span) @ out - v).max() > 1e-9 * max(1.0, np.abs(v).max()):
            raise AlgebraError("matrix does not lie in the algebra")
        return out

    def matrix(self, x: np.ndarray):
        """The matrix with coordinates ``x``; exact pair for exact input."""
        if linalg.is_exact(x):
            re = sum((c * b[0] for c, b in zip(x, self.basis) if c != 0), linalg.zeros((self.n, self.n), True))
            im = sum((c * b[1] for c, b in zip(x, self.basis) if c != 0), linalg.zeros((self.n, self.n), True))
            return re, im
        return sum(c * self.complex_basis[k] for k, c in enumerate(x))

    @cached_property
    def complex_basis(self) -> list[np.ndarray]:
        return [to_complex(b) for b in self.basis]

    # algebra operations on coordinate vectors

    def ad(self, x: np.ndarray) -> np.ndarray:
        if linalg.is_exact(x):
            out = linalg.zeros((self.dim, self.dim), True)
            for i, c in enumerate(x):
                if c != 0:
                    out = out + c * self.ad_stack[i]
            return out
        return np.tensordot(linalg.as_float(x), self.ad_stack_float, axes=1)

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if linalg.is_exact(x, y):
            return self.ad(x) @ y
        return self.ad(linalg.as_float(x)) @ linalg.as_float(y)

    def G(self, exact: bool) -> np.ndarray:
        return self.gram if exact else self.gram_float

    def T(self, exact: bool) -> np.ndarray:
        return self.theta if exact else self.theta_float

    def inner(self, x: np.ndarray, y: np.ndarray):
        if linalg.is_exact(x, y):
            return x @ self.gram @ y
        return float(linalg.as_float(x) @ self.gram_float @ linalg.as_float(y))

    def theta_of(self, x: np.ndarray) -> np.ndarray:
        return (self.theta if linalg.is_exact(x) else self.theta_float) @ x

    def killing_of(self, x: np.ndarray, y: np.ndarray):
        if linalg.is_exact(x, y):
            return x @ self.killing @ y
        return float(linalg.as_float(x) @ self.killing_float @ linalg.as_float(y))

    @cached_property
    def p_basis(self) -> np.ndarray:
        """Exact basis of p = {X : theta X = -X}."""
        return linalg.nullspace(self.theta + linalg.eye(self.dim, True))

    @cached_property
    def k_basis(self) -> np.ndarray:
        return linalg.nullspace(self.theta - linalg.eye(self.dim, True))

    def __repr__(self) -> str:
        return f"MatrixLieAlgebra({self.name}, dim={self.dim})"


def _unit(n: int, i: int, j: int) -> np.ndarray:
    out = linalg.zeros((n, n), True)
    out[i, j] = Fraction(1)
    return out


def build_sl_real(n: int) -> MatrixLieAlgebra:
    """sl(n, R) with basis E_ij (i != j) and H_i = E_ii - E_{i+1,i+1}."""
    if not isinstance(n, int) or not 2 <= n <= 6:
        raise AlgebraError(f"sl(n, R) is supported for 2 <= n <= 6, got {n!r}")
    basis = [cmat(_unit(n, i, i) - _unit(n, i + 1, i + 1)) for i in range(n - 1)]
    basis += [cmat(_unit(n, i, j)) for i in range(n) for j in range(n) if i != j]
    return MatrixLieAlgebra(f"sl({n},R)", basis)


def build_sl2_complex() -> MatrixLieAlgebra:
    """sl(2, C) as a real algebra, basis {H, iH, E, iE, F, iF}."""
    h, e, f = _unit(2, 0, 0) - _unit(2, 1, 1), _unit(2, 0, 1), _unit(2, 1, 0)
    z = linalg.zeros((2, 2), True)
    basis = []
    for m in (h, e, f):
        basis += [(m, z.copy()), (z.copy(), m)]
    return MatrixLieAlgebra("sl(2,C)", basis)


SU12_FORM = np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]])


def build_su12() -> MatrixLieAlgebra:
    """su(1,2) realized as {X : X* J + J X = 0, tr X = 0} with antidiagonal J.

    With this J the real diagonal matrices diag(t, 0, -t) form a maximal
    abelian subspace of p and the upper triangular part is nilpotent.
    """
    n = 3
    j = linalg.as_exact(SU12_FORM)
    rows = []
    # unknowns: real parts then imaginary parts of the 9 entries
    for col in range(2 * n * n):
        re = linalg.zeros((n, n), True)
        im = linalg.zeros((n, n), True)
        k, part = col % (n * n), col // (n * n)
        (re if part == 0 else im)[k // n, k % n] = Fraction(1)
        x = (re, im)
        xs = cstar(x)
        a = cmul(xs, (j, linalg.zeros((n, n), True)))
        b = cmul((j, linalg.zeros((n, n), True)), x)
        trace = [sum(re[i, i] for i in range(n)), sum(im[i, i] for i in range(n))]
        rows.append(np.concatenate([_flatten((a[0] + b[0], a[1] + b[1])), np.array(trace, dtype=object)]))
    cond = np.stack(rows, axis=1)
    null = linalg.nullspace(cond)
    basis = []
    for k in range(null.shape[1]):
        v = null[:, k]
        basis.append((v[: n * n].reshape(n, n), v[n * n:].reshape(n, n)))
    return MatrixLieAlgebra("su(1,2)", basis)


REALIZATIONS = {
    "sl2r": lambda: build_sl_real(2),
    "sl3r": lambda: build_sl_real(3),
    "sl4r": lambda: build_sl_real(4),
    "sl5r": lambda: build_sl_real(5),
    "sl6r": lambda: build_sl_real(6),
    "sl2c": build_sl2_complex,
    "su12": build_su12,
}
