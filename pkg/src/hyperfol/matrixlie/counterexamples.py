"""Subalgebras showing that the polarity criterion needs its hypotheses.

* ``lie_triple_counterexample``: two orthogonal simple roots alpha, beta of
  equal length give h = (a - R(H_alpha - H_beta)) + (n - R(X_alpha + X_beta))
  whose normal space is a non-abelian Lie triple system, yet h is not polar.
* ``non_foliation_example``: in sl(2, C) a two-dimensional abelian h has a
  one-dimensional (so abelian) normal space, but Ad(g) h = t + a is a Cartan
  subalgebra and its orbits do not form a foliation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .. import linalg
from .algebra import MatrixLieAlgebra, cmat, cmul, to_complex
from .decomposition import RootSpaceDecomposition
from .verify import Verdict, ad_exp, polarity_verdict, raw_profile, realize


class CounterexampleError(ValueError):
    pass


def _is_zero(v) -> bool:
    return all(x == 0 for x in v)


def _residual(g: MatrixLieAlgebra, v) -> float:
    if linalg.is_exact(v):
        return 0.0 if _is_zero(v) else float(np.sqrt(float(v @ g.gram @ v)))
    v = linalg.as_float(v)
    return float(np.sqrt(max(v @ g.gram_float @ v, 0.0)))


@dataclass(frozen=True)
class LieTripleReport:
    alpha: int
    beta: int
    verdict: Verdict
    perp_residual: float
    bracket_residuals: dict[str, float]
    orthogonality_witness: Fraction | float
    exact: bool


def lie_triple_counterexample(dec: RootSpaceDecomposition, alpha: int = 0, beta: int = 2) -> LieTripleReport:
    g, rs = dec.algebra, dec.rs
    if rs.gram[alpha][beta] != 0 or alpha == beta:
        raise CounterexampleError("alpha and beta must be distinct orthogonal simple roots")
    l2 = rs.gram[alpha][alpha]
    if rs.gram[beta][beta] != l2:
        raise CounterexampleError("alpha and beta must have the same length")
    xa, xb = dec.E_exact(alpha), dec.E_exact(beta)
    na, nb = g.inner(xa, xa), g.inner(xb, xb)
    exact = na == nb
    if not exact:
        xa, xb = dec.E(alpha), dec.E(beta)
        na = nb = 1.0
    ha, hb = dec.H_root(rs.simple_roots[alpha]), dec.H_root(rs.simple_roots[beta])
    if not exact:
        ha, hb = linalg.as_float(ha), linalg.as_float(hb)
    dh = ha - hb
    removed = np.stack([dh, xa + xb], axis=1)
    dual = [tuple(Fraction(int(i == j)) for i in range(rs.rank)) for j in range(rs.rank)]
    h = realize(dec, raw_profile(dec, dual, rs.positive_roots, removed=removed))
    verdict = polarity_verdict(g, h.basis)
    th = g.theta_of
    plus = (xa + xb) - th(xa + xb)          # (1 - theta)(X_a + X_b)
    minus = (xa - xb) + th(xa - xb)         # (1 + theta)(X_a - X_b)
    expected_perp = np.stack([dh, plus], axis=1)
    perp_res = max(linalg.span_residual(verdict.perp, expected_perp, g.G(exact)),
                   linalg.span_residual(expected_perp, verdict.perp, g.G(exact)))
    # identities are homogeneous in (X_a, X_b): degree one for the first two,
    # degree two (hence the factor |X|^2) for the third
    res = {
        "[Ha-Hb,(1-t)(Xa+Xb)] = |a|^2 (1+t)(Xa-Xb)": _residual(g, g.bracket(dh, plus) - l2 * minus),
        "[Ha-Hb,(1+t)(Xa-Xb)] = |a|^2 (1-t)(Xa+Xb)": _residual(g, g.bracket(dh, minus) - l2 * plus),
        "[(1-t)(Xa+Xb),(1+t)(Xa-Xb)] = -2(Ha-Hb)": _residual(g, g.bracket(plus, minus) + 2 * na * dh) / float(na),
    }
    witness = g.inner(xa - xb, minus) / na
    return LieTripleReport(alpha, beta, verdict, perp_res, res, witness, exact)


# the explicit sl(2, C) matrices
B_MATRIX = cmat([[1, 0], [0, -1]], [[0, 1], [0, 0]])
X_MATRIX = cmat([[0, 1], [0, 0]], [[-1, 0], [0, 1]])
CONJUGATOR_E = cmat([[0, 0], [0, 0]], [[0, Fraction(1, 2)], [0, 0]])
# normal vector of h in p; the variant with -2i in both off-diagonal slots is not Hermitian
XI_MATRIX = cmat([[1, 0], [0, -1]], [[0, -2], [2, 0]])
XI_MATRIX_VARIANT = cmat([[1, 0], [0, -1]], [[0, -2], [-2, 0]])


@dataclass(frozen=True)
class NonFoliationReport:
    verdict: Verdict
    perp_matches_xi: bool
    variant_in_p: bool
    ad_B_in_a: float
    ad_X_in_t: float
    conjugate_distance: float
    matrix_route_agrees: bool
    notes: dict[str, str] = field(default_factory=dict)


def non_foliation_example(dec: RootSpaceDecomposition) -> NonFoliationReport:
    g = dec.algebra
    if g.n != 2 or g.dim != 6 or dec.k0_basis.shape[1] != 1:
        raise CounterexampleError("the example lives in sl(2, C)")
    b, x = g.coords(B_MATRIX), g.coords(X_MATRIX)
    h = np.stack([b, x], axis=1)
    verdict = polarity_verdict(g, h)
    xi = g.coords(XI_MATRIX)
    in_p = (g.theta @ xi == -xi).all()
    perp_ok = in_p and linalg.span_residual(verdict.perp, xi, g.gram) == 0 and verdict.perp.shape[1] == 1
    v = g.coords(XI_MATRIX_VARIANT)
    variant_in_p = bool((g.theta @ v == -v).all())
    e = g.coords(CONJUGATOR_E)
    ad = ad_exp(g, e)
    gb, gx = ad @ b, ad @ x
    res_b = linalg.span_residual(dec.a_span, gb, g.gram)
    res_x = linalg.span_residual(dec.k0_basis, gx, g.gram)
    target = np.hstack([dec.k0_basis, dec.a_span])
    dist = linalg.subspace_distance(linalg.as_float(ad @ h), linalg.as_float(target), g.gram_float)
    # independent route: conjugate by exp(E) = 1 + E (E^2 = 0)
    one = cmat([[1, 0], [0, 1]])
    plus = (one[0] + CONJUGATOR_E[0], one[1] + CONJUGATOR_E[1])
    minus = (one[0] - CONJUGATOR_E[0], one[1] - CONJUGATOR_E[1])
    agree = True
    for mat, col in ((B_MATRIX, gb), (X_MATRIX, gx)):
        conj = cmul(cmul(plus, mat), minus)
        direct = g.matrix(col)
        agree &= bool((conj[0] == direct[0]).all() and (conj[1] == direct[1]).all())
    notes = {"ad(g)B": str(np.round(to_complex(g.matrix(gb)), 12).tolist()),
             "ad(g)X": str(np.round(to_complex(g.matrix(gx)), 12).tolist())}
    return NonFoliationReport(verdict, bool(perp_ok), variant_in_p, res_b, res_x, dist, agree, notes)
