"""Subspace linear algebra over exact rationals or floats.

Arrays with ``dtype=object`` are treated as exact (entries are ``Fraction``
or ``int``); every other array is treated as floating point and compared
against a tolerance.  Subspaces are always stored as matrices whose
*columns* span them.
"""
from __future__ import annotations

from fractions import Fraction
from math import isqrt

import numpy as np
import scipy.linalg

TOL = 1e-10


def is_exact(*arrays) -> bool:
    return all(np.asarray(a).dtype == object for a in arrays)


def as_exact(a) -> np.ndarray:
    """Convert to an object array of Fractions (floats are converted exactly)."""
    a = np.asarray(a)
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = v if isinstance(v, Fraction) else Fraction(v)
    return out


def as_float(a) -> np.ndarray:
    return np.asarray(a).astype(float)


def zeros(shape, exact: bool) -> np.ndarray:
    if not exact:
        return np.zeros(shape)
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def eye(n: int, exact: bool) -> np.ndarray:
    out = zeros((n, n), exact)
    for i in range(n):
        out[i, i] = Fraction(1) if exact else 1.0
    return out


def empty_basis(n: int, exact: bool) -> np.ndarray:
    return zeros((n, 0), exact)


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of an exact matrix."""
    r = as_exact(m).copy()
    n_rows, n_cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(n_cols):
        if row >= n_rows:
            break
        nz = [i for i in range(row, n_rows) if r[i, col] != 0]
        if not nz:
            continue
        i = nz[0]
        if i != row:
            r[[row, i]] = r[[i, row]]
        r[row] = r[row] / r[row, col]
        for i in range(n_rows):
            if i != row and r[i, col] != 0:
                r[i] = r[i] - r[i, col] * r[row]
        pivots.append(col)
        row += 1
    return r, pivots


def rank(m: np.ndarray, tol: float = TOL) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    if is_exact(m):
        return len(rref(m)[1])
    return int(np.linalg.matrix_rank(m, tol=tol * max(1.0, np.abs(m).max())))


def nullspace(m: np.ndarray, tol: float = TOL) -> np.ndarray:
    """Columns spanning the right kernel of ``m``."""
    m = np.asarray(m)
    n_cols = m.shape[1]
    if is_exact(m):
        if m.shape[0] == 0:
            return eye(n_cols, True)
        r, pivots = rref(m)
        free = [c for c in range(n_cols) if c not in pivots]
        out = zeros((n_cols, len(free)), True)
        for k, f in enumerate(free):
            out[f, k] = Fraction(1)
            for i, p in enumerate(pivots):
                out[p, k] = -r[i, f]
        return out
    if m.shape[0] == 0:
        return np.eye(n_cols)
    return scipy.linalg.null_space(m, rcond=tol)


def column_basis(m: np.ndarray, tol: float = TOL) -> np.ndarray:
    """Linearly independent columns spanning the column space of ``m``."""
    m = np.asarray(m)
    if m.shape[1] == 0:
        return m
    if is_exact(m):
        _, pivots = rref(m)
        return m[:, pivots]
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    scale = max(1.0, s[0]) if s.size else 1.0
    return u[:, s > tol * scale]


def solve(a: np.ndarray, b: np.ndarray, tol: float = TOL) -> np.ndarray | None:
    """Solve ``a @ x = b`` (``b`` may be a matrix); ``None`` if inconsistent."""
    a = np.asarray(a)
    b = np.asarray(b)
    vec = b.ndim == 1
    if vec:
        b = b.reshape(-1, 1)
    if is_exact(a, b):
        n = a.shape[1]
        r, pivots = rref(np.hstack([a, b]))
        if any(p >= n for p in pivots):
            return None
        x = zeros((n, b.shape[1]), True)
        for i, p in enumerate(pivots):
            x[p] = r[i, n:]
        return x[:, 0] if vec else x
    x, *_ = np.linalg.lstsq(a.astype(float), b.astype(float), rcond=None)
    scale = max(1.0, np.abs(b).max()) if b.size else 1.0
    if b.size and np.abs(a @ x - b).max() > tol * scale * 10:
        return None
    return x[:, 0] if vec else x


def inverse(a: np.ndarray) -> np.ndarray:
    if is_exact(a):
        x = solve(a, eye(a.shape[0], True))
        if x is None:
            raise np.linalg.LinAlgError("singular matrix")
        return x
    return np.linalg.inv(a)


def gram_schmidt(w: np.ndarray, gram: np.ndarray, normalize: bool | None = None,
                 tol: float = TOL) -> np.ndarray:
    """Orthogonalize the columns of ``w`` under the form ``gram``.

    Exact input yields an orthogonal (not normalized) rational basis; float
    input yields an orthonormal basis.  Dependent columns are dropped.
    """
    exact = is_exact(w, gram)
    if normalize is None:
        normalize = not exact
    cols = []
    norms = []
    for j in range(w.shape[1]):
        v = w[:, j].copy()
        for u, nu in zip(cols, norms):
            v = v - (u @ gram @ v) / nu * u
        nv = v @ gram @ v
        if exact:
            if nv == 0:
                continue
        elif nv <= tol ** 2 * max(1.0, float(w[:, j] @ gram @ w[:, j])):
            continue
        cols.append(v)
        norms.append(nv)
    if not cols:
        return empty_basis(w.shape[0], exact)
    out = np.stack(cols, axis=1)
    if normalize:
        out = as_float(out) / np.sqrt(np.array(norms, dtype=float))
    return out


def orth_complement(w: np.ndarray, gram: np.ndarray, within: np.ndarray | None = None,
                    tol: float = TOL) -> np.ndarray:
    """Basis of ``{v in span(within) : <v, w_j> = 0 for all j}``."""
    n = gram.shape[0]
    exact = is_exact(w, gram) and (within is None or is_exact(within))
    if within is None:
        within = eye(n, exact)
    if not exact:
        w, gram, within = as_float(w), as_float(gram), as_float(within)
    if w.shape[1] == 0:
        return column_basis(within, tol)
    coeffs = nullspace(w.T @ gram @ within, tol)
    return column_basis(within @ coeffs, tol)


def intersect(u: np.ndarray, v: np.ndarray, tol: float = TOL) -> np.ndarray:
    if u.shape[1] == 0 or v.shape[1] == 0:
        return empty_basis(u.shape[0], is_exact(u, v))
    k = nullspace(np.hstack([u, -v]), tol)
    return column_basis(u @ k[: u.shape[1]], tol)


def span_residual(w: np.ndarray, vecs: np.ndarray, gram: np.ndarray) -> float:
    """Largest norm of the component of a column of ``vecs`` off ``span(w)``.

    Relative to the norm of that column; zero means containment.
    """
    vecs = np.asarray(vecs)
    if vecs.ndim == 1:
        vecs = vecs.reshape(-1, 1)
    if vecs.shape[1] == 0:
        return 0.0
    if is_exact(w, vecs, gram):
        if w.shape[1] == 0:
            return 0.0 if all(x == 0 for x in vecs.flat) else 1.0
        return 0.0 if solve(w, vecs) is not None else 1.0
    w, vecs, gram = as_float(w), as_float(vecs), as_float(gram)
    q = gram_schmidt(w, gram) if w.shape[1] else w
    worst = 0.0
    for j in range(vecs.shape[1]):
        v = vecs[:, j]
        nv = np.sqrt(max(v @ gram @ v, 0.0))
        if nv == 0.0:
            continue
        r = v - q @ (q.T @ gram @ v) if q.shape[1] else v
        worst = max(worst, np.sqrt(max(r @ gram @ r, 0.0)) / max(nv, 1.0))
    return float(worst)


def projector(w: np.ndarray, gram: np.ndarray) -> np.ndarray:
    """Orthogonal projector onto ``span(w)`` under ``gram`` (float)."""
    w, gram = as_float(w), as_float(gram)
    if w.shape[1] == 0:
        return np.zeros((w.shape[0], w.shape[0]))
    q = gram_schmidt(w, gram)
    return q @ q.T @ gram


def subspace_distance(u: np.ndarray, v: np.ndarray, gram: np.ndarray) -> float:
    """Spectral-norm distance between orthogonal projectors (sine of the largest angle)."""
    gram = as_float(gram)
    if u.shape[1] != v.shape[1] and rank(u) != rank(v):
        return 1.0
    # move to an orthonormal frame of the ambient form so the norm is meaningful
    chol = np.linalg.cholesky(gram)
    pu = chol.T @ projector(u, gram) @ np.linalg.inv(chol.T)
    pv = chol.T @ projector(v, gram) @ np.linalg.inv(chol.T)
    return float(np.linalg.norm(pu - pv, 2))


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, if it is rational."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None
