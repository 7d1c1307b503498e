from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperfol.parabolic import (ParabolicError, automorphism_orbits, boundary_component, characteristic_element,
                                diagram_automorphisms, gradation_profile, langlands_profile,
                                orthogonal_subsets, rank_one_factor)
from hyperfol.rootsys import build_root_system

A3 = build_root_system("A", 3, 1, k0_dim=0)
BC1 = build_root_system("BC", 1, {"short": 2, "long": 2, "doubled": 1}, k0_dim=1)

SYSTEMS = [
    A3,
    BC1,
    build_root_system("A", 2, 2, k0_dim=2),
    build_root_system("B", 3, {"short": 3, "long": 1}),
    build_root_system("C", 3, 4, k0_dim=9),
    build_root_system("D", 4, 1, k0_dim=0),
    build_root_system("G2", 2, 1, k0_dim=0),
    build_root_system("F4", 4, {"short": 8, "long": 1}),
    build_root_system("BC", 2, {"short": 4, "long": 2, "doubled": 1}, k0_dim=5),
]


def test_orthogonal_subsets_examples():
    assert orthogonal_subsets(A3) == [(), (0,), (1,), (2,), (0, 2)]
    assert len(orthogonal_subsets(build_root_system("A", 2))) == 3
    assert orthogonal_subsets(BC1) == [(), (0,)]


def test_langlands_examples():
    p = langlands_profile(A3, (0, 2))
    assert p.dim_n_phi == 4
    assert p.sigma_phi_positive == ((1, 0, 0), (0, 0, 1))
    assert (p.dim_a_phi, p.dim_a_upper_phi) == (1, 2)
    assert langlands_profile(A3, (0, 1, 2)).dim_n_phi == 0
    assert langlands_profile(BC1, ()).dim_n_phi == 3
    # non-orthogonal subsets are allowed here
    assert langlands_profile(A3, (0, 1)).dim_n_phi == 3
    with pytest.raises(ParabolicError):
        langlands_profile(A3, (3,))


def test_gradation_examples():
    a2 = build_root_system("A", 2, 2, k0_dim=2)
    gp = gradation_profile(a2, ())
    assert gp.level_dims[1] == 4 and gp.level_dims[2] == 2 and gp.top_level == 2
    gp = gradation_profile(A3, (0, 2))
    assert gp.top_level == 1 and gp.characteristic_element == (0, 1, 0)
    gp = gradation_profile(A3, (0, 1, 2))
    assert gp.level_dims == {0: 15}
    assert gradation_profile(build_root_system("A", 3), ()).level_dims[0] is None


def test_boundary_examples():
    bc = boundary_component(BC1, (0,))
    assert [(f.division_algebra, f.n) for f in bc.factors] == [("C", 2)]
    bc = boundary_component(A3, (0, 2))
    assert [(f.division_algebra, f.n) for f in bc.factors] == [("R", 2), ("R", 2)]
    assert bc.euclidean_rank == 1 and bc.label() == "RH^2 x RH^2"
    bc = boundary_component(A3, ())
    assert bc.factors == () and bc.euclidean_rank == 3
    with pytest.raises(ParabolicError):
        boundary_component(A3, (0, 1))


def test_rank_one_factor():
    assert rank_one_factor(1, 0) == ("R", 2)
    assert rank_one_factor(4, 3) == ("H", 2)
    assert rank_one_factor(8, 7) == ("O", 2)
    assert rank_one_factor(6, 1) == ("C", 4)
    for bad in ((3, 2), (3, 1), (16, 7)):
        with pytest.raises(ParabolicError):
            rank_one_factor(*bad)


def test_diagram_automorphisms():
    assert len(diagram_automorphisms(A3)) == 2
    assert len(diagram_automorphisms(build_root_system("D", 4))) == 6
    assert len(diagram_automorphisms(build_root_system("B", 3))) == 1
    orbits = automorphism_orbits(A3)
    assert [(0,), (2,)] in orbits and len(orbits) == 4


def all_subsets(rs):
    return [c for k in range(rs.rank + 1) for c in combinations(range(rs.rank), k)]


@given(st.sampled_from(SYSTEMS), st.data())
def test_langlands_invariants(rs, data):
    phi = data.draw(st.sampled_from(all_subsets(rs)))
    p = langlands_profile(rs, phi)
    assert p.dim_a_phi + p.dim_a_upper_phi == rs.rank
    assert all(all(c == 0 for i, c in enumerate(lam) if i not in phi) for lam in p.sigma_phi_positive)
    if rs.k0_dim is not None:
        assert p.dim_m_phi + p.dim_a_phi + p.dim_n_phi == p.dim_q_phi
        assert p.dim_q_phi + p.dim_n_phi == rs.dim_g
        assert p.dim_l_phi == rs.dim_g - 2 * p.dim_n_phi


@given(st.sampled_from(SYSTEMS), st.data())
def test_gradation_invariants(rs, data):
    phi = data.draw(st.sampled_from(all_subsets(rs)))
    gp = gradation_profile(rs, phi)
    assert gp.characteristic_element == characteristic_element(rs, phi)
    for k, d in gp.level_dims.items():
        assert gp.level_dims.get(-k) == d
    assert sum(d for k, d in gp.level_dims.items() if k > 0) == langlands_profile(rs, phi).dim_n_phi
    assert max(gp.level_dims) == gp.top_level or gp.top_level == 0
    if rs.k0_dim is not None:
        assert sum(gp.level_dims.values()) == rs.dim_g


@given(st.sampled_from(SYSTEMS), st.data())
def test_monotonicity(rs, data):
    phi = data.draw(st.sampled_from(all_subsets(rs)))
    bigger = data.draw(st.sampled_from([s for s in all_subsets(rs) if set(phi) <= set(s)]))
    assert langlands_profile(rs, bigger).dim_n_phi <= langlands_profile(rs, phi).dim_n_phi


@pytest.mark.parametrize("rs", SYSTEMS, ids=repr)
def test_horospherical_dimension_identity(rs):
    for phi in orthogonal_subsets(rs):
        bc = boundary_component(rs, phi)
        assert sum(f.dim for f in bc.factors) + bc.euclidean_rank + bc.dim_n_phi == rs.dim_symmetric_space
