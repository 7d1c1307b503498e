from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperfol import linalg
from hyperfol.catalog import get_entry
from hyperfol.foliation import build_spec, coordinate_subspaces, normal_a_basis
from hyperfol.matrixlie import (AlgebraError, DecompositionError, ad_exp, ad_exp_conjugation, build_sl2_complex,
                                build_sl_real, build_su12, polarity_verdict, realize,
                                restricted_root_decomposition, shape_operator_koszul, shape_operator_numeric,
                                verify_congruency)
from hyperfol.matrixlie.counterexamples import (XI_MATRIX, XI_MATRIX_VARIANT, CounterexampleError,
                                                lie_triple_counterexample, non_foliation_example)
from hyperfol.matrixlie.verify import closure_residual, identity_checks
from hyperfol.parabolic import orthogonal_subsets
from hyperfol.rootsys import build_root_system

# B(X, Y) = c Re tr(XY) for each realization
KILLING_TRACE_FACTOR = {"sl(3,R)": 6, "sl(2,C)": 8, "su(1,2)": 6}


@pytest.fixture(scope="module")
def algebras(sl3r, sl2c, su12):
    return [d.algebra for d in (sl3r, sl2c, su12)]


def _random(rng, g):
    return rng.standard_normal(g.dim)


def test_bracket_is_matrix_commutator(algebras):
    rng = np.random.default_rng(0)
    for g in algebras:
        for _ in range(5):
            x, y = _random(rng, g), _random(rng, g)
            mx, my = g.matrix(x), g.matrix(y)
            assert np.allclose(g.matrix(g.bracket(x, y)), mx @ my - my @ mx, atol=1e-10)


def test_jacobi_and_theta_automorphism(algebras):
    rng = np.random.default_rng(1)
    for g in algebras:
        x, y, z = (_random(rng, g) for _ in range(3))
        b = g.bracket
        jac = b(x, b(y, z)) + b(y, b(z, x)) + b(z, b(x, y))
        assert np.abs(jac).max() < 1e-10
        t = g.theta_of
        assert np.allclose(t(b(x, y)), b(t(x), t(y)), atol=1e-10)
        assert (g.theta @ g.theta == linalg.eye(g.dim, True)).all()


def test_killing_matches_trace_formula(algebras):
    rng = np.random.default_rng(2)
    for g in algebras:
        c = KILLING_TRACE_FACTOR[g.name]
        x, y = _random(rng, g), _random(rng, g)
        trace = c * np.trace(g.matrix(x) @ g.matrix(y)).real
        assert g.killing_of(x, y) == pytest.approx(trace, rel=1e-10, abs=1e-10)


def test_coords_rejects_outside_matrix(sl3r):
    g = sl3r.algebra
    with pytest.raises(AlgebraError):
        g.coords(np.eye(3))


def test_builder_range():
    with pytest.raises(AlgebraError):
        build_sl_real(7)


@pytest.mark.parametrize("name,type_label,rank,mult,scale,k0", [
    ("SL2R", "A", 1, {(1,): 1}, Fraction(1, 2), 0),
    ("SL4R", "A", 3, None, Fraction(1, 4), 0),
    ("SL2C", "A", 1, {(1,): 2}, Fraction(1, 4), 1),
    ("SU12", "BC", 1, {(1,): 2, (2,): 1}, Fraction(1, 12), 1),
])
def test_decomposition_root_data(name, type_label, rank, mult, scale, k0, request):
    dec = request.getfixturevalue(name.lower())
    rs = dec.rs
    assert (rs.type_label, rs.rank, rs.scale, rs.k0_dim) == (type_label, rank, scale, k0)
    if mult:
        assert dict(rs.multiplicity) == mult
    dims = dec.a_span.shape[1] + dec.k0_basis.shape[1] + sum(s.shape[1] for s in dec.spaces.values())
    assert dims == dec.algebra.dim
    assert set(dec.spaces) == set(rs.roots)


def test_root_spaces_are_eigenspaces(sl4r, su12, sl2c):
    rng = np.random.default_rng(3)
    for dec in (sl4r, su12, sl2c):
        g, rs = dec.algebra, dec.rs
        x = rng.integers(-3, 4, rs.rank)
        h = g.matrix(linalg.as_float(dec.H(tuple(Fraction(int(v)) for v in x))))
        for lam, space in dec.spaces_float.items():
            val = sum(int(c) * float(v) for c, v in zip(lam, x))
            for k in range(space.shape[1]):
                e = g.matrix(space[:, k])
                assert np.allclose(h @ e - e @ h, val * e, atol=1e-10)


def test_declared_root_data_mismatch():
    wrong = build_root_system("A", 1, 1, scale=Fraction(1, 3), k0_dim=0)
    with pytest.raises(DecompositionError):
        restricted_root_decomposition(build_sl_real(2), wrong)


def test_simple_root_order_matches_matrix_position(sl4r):
    g = sl4r.algebra
    e12 = np.zeros((4, 4))
    e12[0, 1] = 1
    v = g.coords(e12)
    assert linalg.span_residual(sl4r.spaces_float[(1, 0, 0)], v, g.gram_float) < 1e-12


def test_criterion_holds_for_every_model(sl4r, su12):
    for dec in (sl4r, su12):
        rs = dec.rs
        for phi in orthogonal_subsets(rs):
            for V in coordinate_subspaces(rs, phi):
                real = realize(dec, build_spec(rs, phi, V))
                assert real.exact
                assert closure_residual(dec.algebra, real.basis) == 0
                assert polarity_verdict(dec.algebra, real.basis).classification == "hyperpolar"


def test_ad_exp_two_routes(sl3r):
    g = sl3r.algebra
    rng = np.random.default_rng(4)
    n = linalg.as_float(sl3r.n_basis)
    for _ in range(3):
        e = n @ rng.standard_normal(n.shape[1])
        assert np.allclose(ad_exp(g, e), ad_exp_conjugation(g, e), atol=1e-10)


def test_congruency_needs_the_conjugator(sl4r):
    spec = build_spec(sl4r.rs, (0, 2), [], [1, -2])
    assert verify_congruency(sl4r, spec).residual < 1e-12
    # no conjugation at all is detected
    from hyperfol.foliation import normalize
    moved = realize(sl4r, spec)
    fixed = realize(sl4r, normalize(spec)[0])
    d = linalg.subspace_distance(linalg.as_float(moved.basis), linalg.as_float(fixed.basis),
                                 sl4r.algebra.gram_float)
    assert d > 0.1


@given(st.sampled_from(["SL4R", "SU12", "SL2C"]), st.data())
def test_shape_operator_two_routes(name, data):
    dec = get_entry(name).realize()[1]
    rs = dec.rs
    phi = data.draw(st.sampled_from(orthogonal_subsets(rs)))
    V = data.draw(st.sampled_from(coordinate_subspaces(rs, phi)))
    a = data.draw(st.lists(st.integers(-2, 2), min_size=len(phi), max_size=len(phi)))
    spec = build_spec(rs, phi, V, a)
    real = realize(dec, spec)
    nb = normal_a_basis(spec)
    normals = [(linalg.as_float(dec.H(tuple(nb[:, k]))), "p") for k in range(nb.shape[1])]
    for i in phi:
        xi = float(spec.shift(i)) * linalg.as_float(dec.H_root(rs.simple_roots[i])) + 2 * dec.E(i)
        normals.append((xi, "an"))
    for xi, form in normals:
        a1 = shape_operator_numeric(dec, real, xi, xi_form=form)
        a2 = shape_operator_koszul(dec, real, xi, xi_form=form)
        assert np.allclose(a1.eigenvalues, a2.eigenvalues, atol=1e-10)
        assert a1.asymmetry < 1e-10


def test_lie_triple_counterexample(sl4r):
    rep = lie_triple_counterexample(sl4r, 0, 2)
    v = rep.verdict
    assert rep.exact
    assert v.classification == "not_polar"
    assert v.perp_is_lie_triple and not v.perp_is_abelian and not v.orthogonality_condition
    assert rep.perp_residual == 0 and all(r == 0 for r in rep.bracket_residuals.values())
    with pytest.raises(CounterexampleError):
        lie_triple_counterexample(sl4r, 0, 1)


def test_non_foliation_example(sl2c):
    g = sl2c.algebra
    rep = non_foliation_example(sl2c)
    assert rep.verdict.classification == "hyperpolar"
    assert rep.verdict.metadata["foliation_hypothesis"] == "not verified"
    assert rep.perp_matches_xi and not rep.variant_in_p
    assert rep.conjugate_distance < 1e-12 and rep.matrix_route_agrees
    # the corrected normal is Hermitian, the variant is not
    assert (g.theta @ g.coords(XI_MATRIX) == -g.coords(XI_MATRIX)).all()
    m = XI_MATRIX_VARIANT
    assert not ((m[0] == m[0].T).all() and (m[1] == -m[1].T).all())


def test_non_foliation_wrong_algebra(sl4r):
    with pytest.raises(CounterexampleError):
        non_foliation_example(sl4r)


def test_identity_checks_small(su12):
    rep = identity_checks(su12, n_samples=20, seed=5)
    assert rep.passed


def test_degenerate_subalgebras(sl2c):
    g = sl2c.algebra
    zero = polarity_verdict(g, linalg.empty_basis(g.dim, True))
    assert zero.perp.shape[1] == g.p_basis.shape[1]
    # perp = p of a non-flat space: a Lie triple system but not abelian
    assert zero.classification == "polar_not_hyperpolar"
    full = polarity_verdict(g, linalg.eye(g.dim, True))
    assert full.perp.shape[1] == 0 and full.classification == "hyperpolar"
