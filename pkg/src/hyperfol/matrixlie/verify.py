"""Bracket-level verification on a concrete realization.

Subspaces are matrices of algebra coordinates (columns).  Exact inputs give
exact verdicts; float inputs are compared with a tolerance after
orthonormalization so that residuals are scale free.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np
import scipy.linalg

from .. import linalg
from ..foliation import FoliationSpec, normalize
from .algebra import MatrixLieAlgebra
from .decomposition import RootSpaceDecomposition

TOL = 1e-10


class VerificationError(ValueError):
    pass


# realizations


@dataclass(frozen=True)
class RawProfile:
    """An arbitrary subspace: span(include) minus the orthogonal complement of ``removed``."""

    include: np.ndarray
    removed: np.ndarray | None = None


@dataclass(frozen=True)
class Realization:
    basis: np.ndarray
    gram: np.ndarray = field(repr=False)

    @property
    def exact(self) -> bool:
        return linalg.is_exact(self.basis)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def orthonormal(self) -> np.ndarray:
        return linalg.gram_schmidt(linalg.as_float(self.basis), linalg.as_float(self.gram))


def raw_profile(dec: RootSpaceDecomposition, a_vectors=(), roots=(), extra=None, removed=None) -> RawProfile:
    """Build a raw profile from a-vectors (fundamental coordinates), full root spaces and extra vectors."""
    cols = [dec.H(x).reshape(-1, 1) for x in a_vectors]
    cols += [dec.spaces[tuple(lam)] for lam in roots]
    if extra is not None:
        cols.append(extra)
    exact = all(linalg.is_exact(c) for c in cols) and (removed is None or linalg.is_exact(removed))
    if not exact:
        cols = [linalg.as_float(c) for c in cols]
    include = np.hstack(cols) if cols else linalg.empty_basis(dec.algebra.dim, exact)
    if removed is not None and not exact:
        removed = linalg.as_float(removed)
    return RawProfile(include, removed)


def spec_profile(dec: RootSpaceDecomposition, spec: FoliationSpec) -> RawProfile:
    """s_{Phi,V,a} = (V + a^Phi + n) minus the lines R(a_alpha H_alpha + E_alpha)."""
    if spec.rs.positive_roots != dec.rs.positive_roots or spec.rs.gram != dec.rs.gram:
        raise VerificationError("the foliation data's root system does not match the realization")
    ell = dict(spec.ell_choice)
    exact = all(isinstance(v, Fraction) and v == 0 for _, v in spec.a)
    for i in spec.phi:
        if not 0 <= ell[i] < dec.spaces[dec.rs.simple_roots[i]].shape[1]:
            raise VerificationError(f"ell choice {ell[i]} out of range for a{i + 1}")
    a_vectors = [dec.rs.simple_roots[i] for i in spec.phi]
    from ..rootsys import coroot
    a_vectors = [coroot(dec.rs, lam) for lam in a_vectors] + list(spec.V)
    cols = []
    for i, v in spec.a:
        if exact:
            cols.append(dec.E_exact(i, ell[i]))
        else:
            cols.append(float(v) * linalg.as_float(dec.H_root(dec.rs.simple_roots[i])) + dec.E(i, ell[i]))
    removed = np.stack(cols, axis=1) if cols else None
    return raw_profile(dec, a_vectors, dec.rs.positive_roots, removed=removed)


def realize(dec: RootSpaceDecomposition, target: Union[FoliationSpec, RawProfile]) -> Realization:
    """Basis of the subspace described by a foliation spec or a raw profile."""
    prof = spec_profile(dec, target) if isinstance(target, FoliationSpec) else target
    g = dec.algebra
    exact = linalg.is_exact(prof.include) and (prof.removed is None or linalg.is_exact(prof.removed))
    gram = g.G(exact)
    span = linalg.column_basis(prof.include if exact else linalg.as_float(prof.include))
    if prof.removed is None or prof.removed.shape[1] == 0:
        return Realization(span, gram)
    removed = prof.removed if exact else linalg.as_float(prof.removed)
    if linalg.span_residual(span, removed, gram) > 1e-9:
        raise VerificationError("removed vectors do not lie in the included span")
    out = linalg.orth_complement(removed, gram, within=span)
    if out.shape[1] != span.shape[1] - linalg.rank(removed):
        raise VerificationError("dimension mismatch after removing lines")
    return Realization(out, gram)


# subspace algebra


def _prep(g: MatrixLieAlgebra, basis: np.ndarray) -> tuple[np.ndarray, np.ndarray, bool]:
    exact = linalg.is_exact(basis)
    if exact:
        return basis, g.gram, True
    return linalg.gram_schmidt(linalg.as_float(basis), g.gram_float), g.gram_float, False


def _norm(g: MatrixLieAlgebra, v: np.ndarray) -> float:
    v = linalg.as_float(v)
    return float(np.sqrt(max(v @ g.gram_float @ v, 0.0)))


def pairwise_brackets(g: MatrixLieAlgebra, u: np.ndarray, v: np.ndarray | None = None) -> np.ndarray:
    """Columns [u_i, v_j] (i < j when ``v`` is omitted)."""
    cols = []
    if v is None:
        for i in range(u.shape[1]):
            for j in range(i + 1, u.shape[1]):
                cols.append(g.bracket(u[:, i], u[:, j]))
    else:
        for i in range(u.shape[1]):
            for j in range(v.shape[1]):
                cols.append(g.bracket(u[:, i], v[:, j]))
    exact = linalg.is_exact(u) and (v is None or linalg.is_exact(v))
    if not cols:
        return linalg.empty_basis(g.dim, exact)
    return np.stack(cols, axis=1)


def closure_residual(g: MatrixLieAlgebra, basis: np.ndarray) -> float:
    w, gram, _ = _prep(g, basis)
    return linalg.span_residual(w, pairwise_brackets(g, w), gram)


def bracket_closure(g: MatrixLieAlgebra, basis: np.ndarray, tol: float = TOL) -> bool:
    return closure_residual(g, basis) <= tol


def perp_in_p(g: MatrixLieAlgebra, basis: np.ndarray) -> np.ndarray:
    """Basis of {xi in p : <xi, Y> = 0 for all Y in span(basis)}."""
    exact = linalg.is_exact(basis)
    p = g.p_basis if exact else linalg.as_float(g.p_basis)
    return linalg.orth_complement(basis, g.G(exact), within=p)


def abelian_residual(g: MatrixLieAlgebra, basis: np.ndarray) -> float:
    w, _, exact = _prep(g, basis)
    br = pairwise_brackets(g, w)
    if exact:
        return 0.0 if all(v == 0 for v in br.flat) else 1.0
    return max((_norm(g, br[:, k]) for k in range(br.shape[1])), default=0.0)


def is_abelian(g: MatrixLieAlgebra, basis: np.ndarray, tol: float = TOL) -> bool:
    return abelian_residual(g, basis) <= tol


def triple_brackets(g: MatrixLieAlgebra, w: np.ndarray) -> np.ndarray:
    inner = pairwise_brackets(g, w)
    return pairwise_brackets(g, inner, w) if inner.shape[1] else inner


def lie_triple_residual(g: MatrixLieAlgebra, basis: np.ndarray) -> float:
    w, gram, _ = _prep(g, basis)
    return linalg.span_residual(w, triple_brackets(g, w), gram) if w.shape[1] else 0.0


def is_lie_triple(g: MatrixLieAlgebra, basis: np.ndarray, tol: float = TOL) -> bool:
    return lie_triple_residual(g, basis) <= tol


CLASSES = ("hyperpolar", "polar_not_hyperpolar", "not_polar")


@dataclass(frozen=True)
class Verdict:
    """Outcome of the polarity criterion for a subalgebra h.

    The criterion presumes the orbits of h form a foliation; that
    hypothesis is not checked here and ``metadata`` records as much.
    """

    is_subalgebra: bool
    perp_is_lie_triple: bool
    perp_is_abelian: bool
    orthogonality_condition: bool
    classification: str
    perp: np.ndarray = field(repr=False)
    residuals: dict[str, float] = field(default_factory=dict)
    metadata: dict[str, str] = field(default_factory=lambda: {"foliation_hypothesis": "not verified"})


def polarity_verdict(g: MatrixLieAlgebra, basis: np.ndarray, tol: float = TOL) -> Verdict:
    closure = closure_residual(g, basis)
    if closure > tol:
        raise VerificationError(f"basis does not span a subalgebra (residual {closure:.3g})")
    perp = perp_in_p(g, basis)
    pw, gram, exact = _prep(g, perp)
    hw, _, _ = _prep(g, basis)
    ab = abelian_residual(g, pw)
    lt = lie_triple_residual(g, pw)
    target = np.hstack([pairwise_brackets(g, pw), pw])
    if exact:
        prod = hw.T @ gram @ target
        orth = 0.0 if all(v == 0 for v in prod.flat) else 1.0
    else:
        orth = float(np.abs(hw.T @ gram @ target).max(initial=0.0))
    is_ab, is_lt, is_orth = ab <= tol, lt <= tol, orth <= tol
    if is_ab:
        cls = "hyperpolar"
        assert is_lt and is_orth, "abelian perp must satisfy the polar conditions"
    elif is_lt and is_orth:
        cls = "polar_not_hyperpolar"
    else:
        cls = "not_polar"
    return Verdict(True, is_lt, is_ab, is_orth, cls, perp,
                   {"closure": closure, "abelian": ab, "lie_triple": lt, "orthogonality": orth})


# Ad(Exp E)


def ad_exp(g: MatrixLieAlgebra, E: np.ndarray, tol: float = 1e-15, max_terms: int = 80) -> np.ndarray:
    """Matrix of Ad(Exp E) = exp(ad E) on algebra coordinates.

    The series terminates for nilpotent ad E; otherwise it is summed until
    the terms fall below ``tol``.
    """
    exact = linalg.is_exact(E)
    ad = g.ad(E)
    total = linalg.eye(g.dim, exact)
    term = linalg.eye(g.dim, exact)
    for k in range(1, max_terms + 1):
        term = term @ ad / k
        if exact:
            if all(v == 0 for v in term.flat):
                return total
        elif np.abs(term).max() <= tol * max(1.0, np.abs(total).max()):
            return total + term
        total = total + term
    if exact:
        return total
    raise VerificationError("exponential series did not converge")


def ad_exp_conjugation(g: MatrixLieAlgebra, E: np.ndarray) -> np.ndarray:
    """Ad(Exp E) through conjugation by the matrix exponential (independent route)."""
    m = scipy.linalg.expm(g.matrix(linalg.as_float(E)))
    minv = np.linalg.inv(m)
    return np.stack([g.coords(m @ b @ minv) for b in g.complex_basis], axis=1)


@dataclass(frozen=True)
class CongruencyResult:
    passed: bool
    residual: float
    exponent: tuple


def verify_congruency(dec: RootSpaceDecomposition, spec: FoliationSpec, tol: float = 1e-9) -> CongruencyResult:
    """Check Ad(Exp(-sum a_alpha E_alpha)) s_{Phi,V,a} = s_{Phi,V} as subspaces."""
    g = dec.algebra
    s_a = realize(dec, spec)
    s0_spec, conj = normalize(spec)
    s_0 = realize(dec, s0_spec)
    ell = dict(spec.ell_choice)
    e = np.zeros(g.dim)
    for i, c in conj.exponent:
        e = e + float(c) * dec.E(i, ell[i])
    moved = ad_exp(g, e) @ linalg.as_float(s_a.basis)
    res = linalg.subspace_distance(moved, linalg.as_float(s_0.basis), g.gram_float)
    return CongruencyResult(res <= tol, res, conj.exponent)


# structural identities


def polarization_residual(dec: RootSpaceDecomposition, lam, x: np.ndarray, y: np.ndarray):
    """(1 - theta)[theta X, Y] - 2 <X, Y> H_lambda; exact zero or a float norm."""
    g = dec.algebra
    br = g.bracket(g.theta_of(x), y)
    lhs = br - g.theta_of(br)
    h = dec.H_root(lam)
    if linalg.is_exact(x, y):
        diff = lhs - 2 * g.inner(x, y) * h
        return Fraction(0) if all(v == 0 for v in diff) else max(abs(v) for v in diff)
    diff = lhs - 2 * g.inner(x, y) * linalg.as_float(h)
    return _norm(g, diff)


def projection_residual(dec: RootSpaceDecomposition, basis: np.ndarray) -> float:
    """Distance between pi_{a+n}(s) and {X in a + n : X perp s_p^perp}."""
    g = dec.algebra
    gram = g.gram_float
    w = linalg.as_float(basis)
    perp = perp_in_p(g, w)
    an = linalg.as_float(dec.an_basis)
    lhs = linalg.column_basis(linalg.projector(an, gram) @ w, 1e-9)
    rhs = linalg.orth_complement(perp, gram, within=an, tol=1e-9)
    if lhs.shape[1] != rhs.shape[1]:
        return 1.0
    return linalg.subspace_distance(lhs, rhs, gram)


def generated_subalgebra(g: MatrixLieAlgebra, gens: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    w = linalg.column_basis(linalg.as_float(gens), tol)
    while True:
        new = np.hstack([w, pairwise_brackets(g, w)]) if w.shape[1] > 1 else w
        nxt = linalg.column_basis(new, tol)
        if nxt.shape[1] == w.shape[1]:
            return w
        w = nxt


def _random_in(rng, basis: np.ndarray) -> np.ndarray:
    b = linalg.as_float(basis)
    return b @ rng.standard_normal(b.shape[1]) if b.shape[1] else np.zeros(b.shape[0])


def sample_subalgebras(dec: RootSpaceDecomposition, n_samples: int, rng) -> list[tuple[str, np.ndarray]]:
    """Randomized subalgebras of t + a + n of several shapes."""
    from ..foliation import build_spec, coordinate_subspaces
    from ..parabolic import orthogonal_subsets
    g, rs = dec.algebra, dec.rs
    tan = linalg.as_float(dec.tan_basis)
    a = linalg.as_float(dec.a_span)
    n = linalg.as_float(dec.n_basis)
    phis = orthogonal_subsets(rs)
    out = []
    for k in range(n_samples):
        kind = k % 5
        if kind == 0:
            out.append(("line", _random_in(rng, tan).reshape(-1, 1)))
        elif kind == 1:
            gens = np.stack([_random_in(rng, a), _random_in(rng, n)], axis=1)
            out.append(("generated", generated_subalgebra(g, gens)))
        elif kind == 2:
            phi = phis[rng.integers(len(phis))]
            vs = coordinate_subspaces(rs, phi)
            spec = build_spec(rs, phi, vs[rng.integers(len(vs))],
                              [float(x) for x in rng.uniform(-2, 2, len(phi))])
            s = linalg.as_float(realize(dec, spec).basis)
            out.append(("conjugated-spec", ad_exp(g, _random_in(rng, n)) @ s))
        elif kind == 3:
            i = int(rng.integers(rs.rank))
            space = dec.spaces_float[rs.simple_roots[i]]
            line = _random_in(rng, space).reshape(-1, 1)
            k_a = int(rng.integers(a.shape[1] + 1))
            a_part = a @ rng.standard_normal((a.shape[1], k_a))
            rest = linalg.orth_complement(line, g.gram_float, within=n)
            out.append(("a-plus-n-minus-line", np.hstack([a_part, rest])))
        else:
            t = linalg.as_float(dec.k0_basis)
            if t.shape[1]:
                gens = np.stack([_random_in(rng, t) + _random_in(rng, a)], axis=1)
                s = generated_subalgebra(g, gens)
                out.append(("torus-conjugated", ad_exp(g, _random_in(rng, n)) @ s))
            else:
                gens = np.stack([_random_in(rng, n) for _ in range(2)], axis=1)
                out.append(("generated-in-n", generated_subalgebra(g, gens)))
    return out


@dataclass(frozen=True)
class IdentityReport:
    polarization_residual: float
    projection_residual: float
    closure_residual: float
    n_polarization: int
    n_projection: int
    tol: float

    @property
    def passed(self) -> bool:
        return max(self.polarization_residual, self.projection_residual, self.closure_residual) <= self.tol


def identity_checks(dec: RootSpaceDecomposition, n_samples: int = 100, seed: int = 0,
                    tol: float = TOL) -> IdentityReport:
    """Randomized checks of the polarization and projection identities."""
    rng = np.random.default_rng(seed)
    g = dec.algebra
    roots = sorted(dec.spaces)
    pol = 0.0
    for _ in range(n_samples):
        lam = roots[rng.integers(len(roots))]
        space = dec.spaces_float[lam]
        x, y = _random_in(rng, space), _random_in(rng, space)
        x, y = x / _norm(g, x), y / _norm(g, y)
        pol = max(pol, float(polarization_residual(dec, lam, x, y)))
    proj = closure = 0.0
    samples = sample_subalgebras(dec, n_samples, rng)
    for _, s in samples:
        closure = max(closure, closure_residual(g, s))
        proj = max(proj, projection_residual(dec, s))
    return IdentityReport(pol, proj, closure, n_samples, len(samples), tol)


# shape operator


@dataclass(frozen=True)
class ShapeOperator:
    """Shape operator of the orbit through o on the tangent space s (AN metric)."""

    matrix: np.ndarray
    eigenvalues: np.ndarray
    basis: np.ndarray = field(repr=False)
    norm_an: float
    asymmetry: float
    unit: bool


def _normal_data(dec, s, xi, xi_form, tol):
    g = dec.algebra
    xi = linalg.as_float(xi)
    if xi_form == "an":
        xi_p = 0.5 * (xi - g.theta_float @ xi)
    elif xi_form == "p":
        xi_p = xi
    else:
        raise ValueError(f"unknown normal form {xi_form!r}")
    scale = max(1.0, _norm(g, xi_p))
    if _norm(g, xi_p + g.theta_float @ xi_p) > tol * scale:
        raise VerificationError("normal vector is not in p")
    if np.abs(s.T @ g.gram_float @ xi_p).max(initial=0.0) > tol * scale:
        raise VerificationError("normal vector is not orthogonal to s")
    xi_an = dec.to_an(xi_p)
    return xi_p, xi_an, float(np.sqrt(xi_an @ dec.an_gram @ xi_an))


def _finish(b, s, dec, norm, unit) -> ShapeOperator:
    gs = s.T @ dec.an_gram @ s
    asym = float(np.abs(b - b.T).max(initial=0.0))
    bs = 0.5 * (b + b.T)
    vals = scipy.linalg.eigh(bs, gs, eigvals_only=True) if s.shape[1] else np.zeros(0)
    mat = np.linalg.solve(gs, bs) if s.shape[1] else np.zeros((0, 0))
    if unit:
        vals, mat = vals / norm, mat / norm
    return ShapeOperator(mat, np.sort(vals), s, norm, asym, unit)


def shape_operator_numeric(dec: RootSpaceDecomposition, spec: FoliationSpec | Realization, xi: np.ndarray,
                           xi_form: str = "p", unit: bool = False, tol: float = 1e-8) -> ShapeOperator:
    """A_xi from 4 <A_xi X, Y>_AN = <[(1 - theta) xi, X], Y>.

    ``xi`` is the normal vector either in p (``xi_form="p"``) or as the
    corresponding vector of a + n (``xi_form="an"``); both describe the same
    normal since (1 - theta) xi_an = 2 xi_p.
    """
    g = dec.algebra
    real = spec if isinstance(spec, Realization) else realize(dec, spec)
    s = real.orthonormal
    xi_p, _, norm = _normal_data(dec, s, xi, xi_form, tol)
    ad = g.ad(2 * xi_p)
    b = 0.25 * (s.T @ g.gram_float @ ad @ s)
    return _finish(b, s, dec, norm, unit)


def shape_operator_koszul(dec: RootSpaceDecomposition, spec: FoliationSpec | Realization, xi: np.ndarray,
                          xi_form: str = "p", unit: bool = False, tol: float = 1e-8) -> ShapeOperator:
    """A_xi from the Levi-Civita connection of the left-invariant AN metric.

    <A_xi X, Y> = <nabla_X Y, xi> with the Koszul formula
    2 <nabla_X Y, Z> = <[X, Y], Z> - <[Y, Z], X> + <[Z, X], Y>, all in the AN
    metric on a + n.  This does not use the bracket formula above.
    """
    g = dec.algebra
    real = spec if isinstance(spec, Realization) else realize(dec, spec)
    s = real.orthonormal
    _, xi_an, norm = _normal_data(dec, s, xi, xi_form, tol)
    m = dec.an_gram
    k = s.shape[1]
    b = np.zeros((k, k))
    for i in range(k):
        for j in range(k):
            x, y = s[:, i], s[:, j]
            b[i, j] = 0.5 * (g.bracket(x, y) @ m @ xi_an
                             - g.bracket(y, xi_an) @ m @ x
                             + g.bracket(xi_an, x) @ m @ y)
    # <nabla_X Y, xi> is symmetric in X, Y only up to the bracket, which is tangent
    return _finish(b, s, dec, norm, unit)
