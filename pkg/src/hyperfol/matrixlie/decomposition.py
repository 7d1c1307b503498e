"""Restricted root space decomposition of a matrix Lie algebra."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import permutations

import numpy as np

from .. import linalg
from ..rootsys import RootSystem, RootSystemError, RootVector, build_root_system, coroot, neg
from .algebra import MatrixLieAlgebra, to_complex


class DecompositionError(ValueError):
    pass


def _restricted_eigen(m: np.ndarray) -> list[Fraction]:
    """Distinct eigenvalues of an exact matrix with rational spectrum."""
    vals = np.linalg.eigvals(linalg.as_float(m))
    if np.abs(vals.imag).max(initial=0) > 1e-8:
        raise DecompositionError("ad(H) has non-real eigenvalues: H is not in p")
    return sorted({Fraction(float(v)).limit_denominator(10 ** 4) for v in vals.real})


def _split(pieces, adh):
    out = []
    for w, key in pieces:
        m = linalg.solve(w, adh @ w)
        if m is None:
            raise DecompositionError("a joint eigenspace is not ad(a)-stable")
        got = 0
        for mu in _restricted_eigen(m):
            null = linalg.nullspace(m - mu * linalg.eye(m.shape[0], True))
            if null.shape[1]:
                out.append((w @ null, key + (mu,)))
                got += null.shape[1]
        if got != w.shape[1]:
            raise DecompositionError("ad(a) is not diagonalizable over Q on this algebra")
    return out


@dataclass(eq=False)
class RootSpaceDecomposition:
    """Joint eigenspaces of ad(a), labelled by a matching abstract root system.

    Vectors of a are passed around in the fundamental coordinates of
    :mod:`hyperfol.rootsys`; ``dual`` maps them to algebra coordinates.
    """

    algebra: MatrixLieAlgebra
    rs: RootSystem
    a_span: np.ndarray
    dual: np.ndarray
    spaces: dict[RootVector, np.ndarray]
    g0_basis: np.ndarray
    k0_basis: np.ndarray
    permutation: tuple[int, ...]
    spaces_float: dict[RootVector, np.ndarray] = field(init=False)

    def __post_init__(self) -> None:
        g = self.algebra.gram
        self.spaces_float = {lam: linalg.gram_schmidt(linalg.as_float(w), self.algebra.gram_float)
                             for lam, w in self.spaces.items()}
        self.spaces = {lam: linalg.gram_schmidt(w, g) for lam, w in self.spaces.items()}
        self.dual_float = linalg.as_float(self.dual)

    @cached_property
    def a_basis(self) -> np.ndarray:
        """Orthogonal exact basis of a."""
        return linalg.gram_schmidt(self.a_span, self.algebra.gram)

    @property
    def rank(self) -> int:
        return self.rs.rank

    def H(self, x) -> np.ndarray:
        """Algebra coordinates of the element of a with fundamental coordinates ``x``."""
        x = np.asarray(list(x), dtype=object)
        if all(isinstance(v, (int, Fraction)) for v in x):
            return self.dual @ linalg.as_exact(x)
        return self.dual_float @ linalg.as_float(x)

    def H_root(self, lam) -> np.ndarray:
        """Exact H_lambda."""
        return self.H(coroot(self.rs, lam))

    def E(self, alpha: int, ell: int = 0) -> np.ndarray:
        """Unit vector E_alpha of g_alpha for the simple root alpha (float)."""
        return self.spaces_float[self.rs.simple_roots[alpha]][:, ell]

    def E_exact(self, alpha: int, ell: int = 0) -> np.ndarray:
        """A rational vector spanning the same line as :meth:`E`."""
        return self.spaces[self.rs.simple_roots[alpha]][:, ell]

    @cached_property
    def n_basis(self) -> np.ndarray:
        cols = [self.spaces[lam] for lam in self.rs.positive_roots]
        return np.hstack(cols)

    @cached_property
    def an_basis(self) -> np.ndarray:
        return np.hstack([self.a_span, self.n_basis])

    @cached_property
    def tan_basis(self) -> np.ndarray:
        """Basis of t + a + n with t = k_0."""
        return np.hstack([self.k0_basis, self.a_span, self.n_basis])

    def root_of(self, lam: RootVector) -> np.ndarray:
        return self.spaces[tuple(lam)]

    @cached_property
    def projector_a(self) -> np.ndarray:
        return linalg.projector(self.a_span, self.algebra.gram_float)

    @cached_property
    def projector_n(self) -> np.ndarray:
        return linalg.projector(self.n_basis, self.algebra.gram_float)

    @cached_property
    def an_gram(self) -> np.ndarray:
        """The left-invariant metric of AN: <H1 + X1, H2 + X2> = <H1, H2> + 1/2 <X1, X2>."""
        g = self.algebra.gram_float
        pa, pn = self.projector_a, self.projector_n
        return pa.T @ g @ pa + 0.5 * pn.T @ g @ pn

    def to_an(self, xi_p: np.ndarray) -> np.ndarray:
        """The vector of a + n whose image under (1 - theta)/2 is ``xi_p``."""
        xi = linalg.as_float(xi_p)
        return self.projector_a @ xi + 2 * self.projector_n @ xi


def _a_subspace(g: MatrixLieAlgebra) -> np.ndarray:
    rows = []
    n = g.n
    for i in range(n):
        for j in range(n):
            rows.append([b[1][i, j] for b in g.basis])
            if i != j:
                rows.append([b[0][i, j] for b in g.basis])
    return linalg.nullspace(np.array(rows, dtype=object))


def _check_a(g: MatrixLieAlgebra, a: np.ndarray) -> None:
    if a.shape[1] == 0:
        raise DecompositionError("no real diagonal elements: a is trivial")
    if not (g.theta @ a == -a).all():
        raise DecompositionError("real diagonal part is not contained in p")
    for i in range(a.shape[1]):
        for j in range(i):
            if any(v != 0 for v in g.bracket(a[:, i], a[:, j])):
                raise DecompositionError("a is not abelian")
    p = g.p_basis
    cond = np.vstack([g.ad(a[:, i]) @ p for i in range(a.shape[1])])
    if linalg.nullspace(cond).shape[1] != a.shape[1]:
        raise DecompositionError("a is not maximal abelian in p for this realization")


def _identify(gram_c, positive_c, mults, k0, rank) -> tuple[RootSystem, tuple[int, ...]]:
    for t in ("A", "B", "C", "D", "BC", "E6", "E7", "E8", "F4", "G2"):
        try:
            base = build_root_system(t, rank)
        except RootSystemError:
            continue
        perm = _match(gram_c, positive_c, base, up_to_scale=True)
        if perm is None:
            continue
        scale = gram_c[0][0] / base.gram[perm[0]][perm[0]]
        per_root = {}
        for lam, m in zip(positive_c, mults):
            per_root[_relabel(lam, perm)] = m
        try:
            rs = build_root_system(t, rank, per_root, scale, k0)
        except RootSystemError as exc:
            raise DecompositionError(f"computed multiplicities are not Weyl invariant: {exc}") from exc
        return rs, perm
    raise DecompositionError("computed root data matches no irreducible root system")


def _relabel(lam, perm) -> RootVector:
    out = [0] * len(lam)
    for i, c in enumerate(lam):
        out[perm[i]] = c
    return tuple(out)


def _match(gram_c, positive_c, rs: RootSystem, up_to_scale: bool = False):
    r = rs.rank
    target = set(rs.positive_roots)
    for perm in permutations(range(r)):
        if up_to_scale:
            s = gram_c[0][0] / rs.gram[perm[0]][perm[0]]
        else:
            s = 1
        if all(gram_c[i][j] == s * rs.gram[perm[i]][perm[j]] for i in range(r) for j in range(r)):
            if {_relabel(lam, perm) for lam in positive_c} == target:
                return perm
    return None


def restricted_root_decomposition(g: MatrixLieAlgebra, rs: RootSystem | None = None) -> RootSpaceDecomposition:
    """Decompose g under a = real diagonal matrices of g.

    With ``rs`` given, the computed data must match it exactly (Cartan matrix
    up to relabelling, scaled Gram form, multiplicities, dim k_0 if recorded);
    otherwise the root system is identified from the computed data.
    """
    a = _a_subspace(g)
    _check_a(g, a)
    ra = a.shape[1]
    pieces = [(linalg.eye(g.dim, True), ())]
    for i in range(ra):
        pieces = _split(pieces, g.ad(a[:, i]))
    zero = tuple(Fraction(0) for _ in range(ra))
    g0 = [w for w, key in pieces if key == zero]
    g0 = g0[0] if g0 else linalg.empty_basis(g.dim, True)
    roots = {key: w for w, key in pieces if key != zero}
    if g0.shape[1] + sum(w.shape[1] for w in roots.values()) != g.dim:
        raise DecompositionError("joint eigenspaces do not exhaust g")

    # positivity from the diagonal element closest to diag(n-1, ..., 0)
    mats = [to_complex(g.matrix(a[:, k])).real for k in range(ra)]
    f = linalg.as_exact(np.array([[np.trace(x @ y) for y in mats] for x in mats]))
    rhs = linalg.as_exact(np.array([sum((g.n - 1 - i) * x[i, i] for i in range(g.n)) for x in mats]))
    y = linalg.solve(f, rhs)
    level = {key: sum(c * m for c, m in zip(y, key)) for key in roots}
    if any(v == 0 for v in level.values()):
        raise DecompositionError("regular element for the positivity choice is singular")
    positive = [key for key in roots if level[key] > 0]
    pos_set = set(positive)

    def add(u, v):
        return tuple(p + q for p, q in zip(u, v))

    simple = [lam for lam in positive
              if not any(add(mu, nu) == lam for mu in positive for nu in positive)]
    def position(key):
        re, im = g.matrix(roots[key][:, 0])
        flat = [k for k, v in enumerate(np.concatenate([re.ravel(), im.ravel()])) if v != 0]
        return level[key], flat[0]

    simple.sort(key=position)
    if len(simple) != ra:
        raise DecompositionError(f"found {len(simple)} simple roots for a of dimension {ra}")
    lam_mat = linalg.as_exact(np.array(simple, dtype=object))
    coeffs = {}
    for key in positive:
        c = linalg.solve(lam_mat.T, linalg.as_exact(np.array(key, dtype=object)))
        if c is None or any(v.denominator != 1 or v < 0 for v in c):
            raise DecompositionError("a positive root is not a nonnegative integer combination of simple roots")
        coeffs[key] = tuple(int(v) for v in c)
    ga_inv = linalg.inverse(a.T @ g.gram @ a)
    gram_c = [[linalg.as_exact(np.array(u, dtype=object)) @ ga_inv @ linalg.as_exact(np.array(v, dtype=object))
               for v in simple] for u in simple]
    positive_c = [coeffs[k] for k in positive]
    mults = [roots[k].shape[1] for k in positive]
    k0_dim = g0.shape[1] - ra

    if rs is None:
        rs, perm = _identify(gram_c, positive_c, mults, k0_dim, ra)
    else:
        if rs.rank != ra:
            raise DecompositionError(f"declared rank {rs.rank} but dim a = {ra}")
        perm = _match(gram_c, positive_c, rs)
        if perm is None:
            scaled = _match(gram_c, positive_c, rs, up_to_scale=True)
            if scaled is not None:
                raise DecompositionError("root system matches only up to the Killing scale: "
                                         f"computed <a,a> = {gram_c[0][0]}")
            raise DecompositionError("computed root system does not match the declared one")
        for k, m in zip(positive, mults):
            want = rs.multiplicity[_relabel(coeffs[k], perm)]
            if want != m:
                raise DecompositionError(f"multiplicity mismatch: computed {m}, declared {want}")
        if rs.k0_dim is not None and rs.k0_dim != k0_dim:
            raise DecompositionError(f"declared dim k0 = {rs.k0_dim}, computed {k0_dim}")

    spaces = {}
    for key in positive:
        lam = _relabel(coeffs[key], perm)
        spaces[lam] = roots[key]
        spaces[neg(lam)] = roots[tuple(-v for v in key)]
    # dual basis: H with alpha_i(H) = x_i
    ordered = [None] * ra
    for i, key in enumerate(simple):
        ordered[perm[i]] = key
    lam_rows = linalg.as_exact(np.array(ordered, dtype=object))
    dual = a @ linalg.inverse(lam_rows)

    k0 = linalg.orth_complement(a, g.gram, within=g0)
    if linalg.rank(np.hstack([g0, g.p_basis])) - g.p_basis.shape[1] != g0.shape[1] - ra:
        raise DecompositionError("g0 intersected with p is larger than a")
    dec = RootSpaceDecomposition(g, rs, a, dual, spaces, g0, k0, tuple(perm))
    _check_orthogonal(dec)
    return dec


def _check_orthogonal(dec: RootSpaceDecomposition) -> None:
    g = dec.algebra.gram
    keys = list(dec.spaces)
    blocks = [dec.g0_basis] + [dec.spaces[k] for k in keys]
    for i in range(len(blocks)):
        for j in range(i):
            if any(v != 0 for v in (blocks[i].T @ g @ blocks[j]).flat):
                raise DecompositionError("root spaces are not mutually orthogonal")
    for k in keys:
        w = dec.spaces[k]
        for j in range(dec.rank):
            lhs = dec.algebra.ad(dec.dual[:, j]) @ w
            if not (lhs == k[j] * w).all():
                raise DecompositionError(f"[H, X] != lambda(H) X on the root space {k}")
