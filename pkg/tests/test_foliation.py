from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperfol.foliation import (FoliationError, a_phi_basis, build_spec, coordinate_subspaces,
                                enumerate_families, normal_a_basis, normalize, subalgebra_profile)
from hyperfol.parabolic import orthogonal_subsets
from hyperfol.rootsys import build_root_system, evaluate

A3 = build_root_system("A", 3)
A2 = build_root_system("A", 2)
BC1 = build_root_system("BC", 1, {"short": 2, "long": 2, "doubled": 1})


def test_build_spec_examples():
    s = build_spec(A3, (0, 2), [])
    assert s.codimension == 3 and s.dim == 6 and s.is_normalized
    h = build_spec(A3, ())
    assert h.codimension == 3 and h.dim == A3.dim_n
    with pytest.raises(FoliationError):
        build_spec(A2, (0, 1))
    with pytest.raises(FoliationError):
        build_spec(A3, (0,), [(1, 0, 0)])
    with pytest.raises(FoliationError):
        build_spec(A2, (), [(1, 0), (0, 1)])
    with pytest.raises(FoliationError):
        build_spec(A3, (0,), None, [1, 2])


def test_build_spec_reduces_spanning_set():
    s = build_spec(A3, (), [(0, 1, 0), (0, 2, 0), (1, 0, 0)])
    assert s.dim_V == 2


def test_subalgebra_profile_bc1():
    p = subalgebra_profile(build_spec(BC1, (0,)))
    assert p.removed_lines == ((0, 0),)
    assert p.included_root_spaces == {(1,): 1, (2,): 1}
    assert p.normal_a_part.shape[1] == 0 and p.normal_lines == ((0, 0),)
    assert p.dim == 3 and p.normal_dim == 1


def test_subalgebra_profile_horocycle():
    p = subalgebra_profile(build_spec(A3, ()))
    assert p.a_part.shape[1] == 0
    assert p.normal_a_part.shape[1] == 3
    assert all(v == A3.mult(lam) for lam, v in p.included_root_spaces.items())


def test_normalize():
    s, g = normalize(build_spec(A3, (0,)))
    assert g.is_identity
    s, g = normalize(build_spec(A3, (0,), None, [1]))
    assert g.exponent == ((0, -1),) and s.is_normalized
    s, g = normalize(build_spec(A3, (0, 2), None, [1, 2]))
    assert g.exponent == ((0, -1), (2, -2))


def test_enumerate_families():
    fams = enumerate_families(A3)
    assert len(fams) == 5
    assert {f.phi: f.dim_V_range for f in fams}[(0, 2)] == (0, 1)
    assert all(3 not in f.dim_V_range for f in fams if not f.phi)
    fams = enumerate_families(BC1)
    assert [(f.phi, f.dim_V_range) for f in fams] == [((), (0,)), ((0,), (0,))]


def test_coordinate_subspaces_count():
    total = sum(len(coordinate_subspaces(A3, phi)) for phi in orthogonal_subsets(A3))
    assert total == 21


systems = st.sampled_from([A3, BC1, build_root_system("B", 3), build_root_system("G2", 2),
                           build_root_system("D", 4)])


@given(systems, st.data())
def test_spec_dimension_count(rs, data):
    phi = data.draw(st.sampled_from(orthogonal_subsets(rs)))
    V = data.draw(st.sampled_from(coordinate_subspaces(rs, phi)))
    a = data.draw(st.lists(st.fractions(-3, 3, max_denominator=4), min_size=len(phi), max_size=len(phi)))
    spec = build_spec(rs, phi, V, a)
    prof = subalgebra_profile(spec)
    assert prof.dim == spec.dim_V + rs.dim_n
    assert prof.normal_dim == spec.codimension == rs.rank - spec.dim_V
    nb = normal_a_basis(spec)
    for k in range(nb.shape[1]):
        for i in phi:
            assert evaluate(rs, rs.simple_roots[i], nb[:, k]) == 0
    assert nb.shape[1] == a_phi_basis(rs, phi).shape[1] - spec.dim_V
    assert spec.shift(phi[0]) == Fraction(a[0]) if phi else True
