from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperfol.rootsys import (RootSystemError, a_inner, build_root_system, coroot, delta_vector, dual_basis,
                              evaluate, highest_root, inner_product, is_orthogonal_pair, level,
                              root_string_length)

# number of positive roots from the closed formulas
COUNTS = {("A", r): r * (r + 1) // 2 for r in range(1, 8)}
COUNTS.update({("B", r): r * r for r in range(2, 7)})
COUNTS.update({("C", r): r * r for r in range(3, 7)})
COUNTS.update({("D", r): r * (r - 1) for r in range(4, 8)})
COUNTS.update({("BC", r): r * r + r for r in range(1, 6)})
COUNTS.update({("E6", 6): 36, ("E7", 7): 63, ("E8", 8): 120, ("F4", 4): 24, ("G2", 2): 6})

HIGHEST = {
    ("A", 4): (1, 1, 1, 1),
    ("B", 3): (1, 2, 2),
    ("C", 3): (2, 2, 1),
    ("D", 5): (1, 2, 2, 1, 1),
    ("G2", 2): (3, 2),
    ("F4", 4): (2, 3, 4, 2),
    ("E6", 6): (1, 2, 2, 3, 2, 1),
    ("E8", 8): (2, 3, 4, 6, 5, 4, 3, 2),
    ("BC", 2): (2, 2),
}


def weyl_closure(rs):
    """All roots of the reduced part, by closing the simple roots under simple reflections."""
    cart = rs.cartan_matrix
    r = rs.rank
    seen = set(rs.simple_roots)
    todo = list(seen)
    while todo:
        lam = todo.pop()
        for i in range(r):
            # <lam, alpha_i^vee> = sum_j lam_j * A_ji
            pair = sum(lam[j] * cart[j][i] for j in range(r))
            mu = tuple(c - pair * (k == i) for k, c in enumerate(lam))
            if mu not in seen:
                seen.add(mu)
                todo.append(mu)
    return seen


@pytest.mark.parametrize("key", sorted(COUNTS))
def test_positive_root_counts(key):
    rs = build_root_system(*key)
    assert len(rs.positive_roots) == COUNTS[key]


@pytest.mark.parametrize("key", [k for k in sorted(COUNTS) if k[0] != "BC"])
def test_roots_agree_with_weyl_orbit(key):
    rs = build_root_system(*key)
    assert weyl_closure(rs) == set(rs.roots)


@pytest.mark.parametrize("key", sorted(HIGHEST))
def test_highest_root(key):
    assert highest_root(build_root_system(*key)) == HIGHEST[key]


def test_cartan_matrices():
    assert build_root_system("G2", 2).cartan_matrix == ((2, -1), (-3, 2))
    assert build_root_system("B", 2).cartan_matrix == ((2, -2), (-1, 2))
    assert build_root_system("C", 3).cartan_matrix == ((2, -1, 0), (-1, 2, -1), (0, -2, 2))
    assert build_root_system("F4", 4).cartan_matrix[1][2] == -2


def test_bc_doubles_short_roots():
    rs = build_root_system("BC", 1, {"short": 2, "long": 2, "doubled": 1})
    assert rs.positive_roots == ((1,), (2,))
    assert rs.mult((1,)) == 2 and rs.mult((2,)) == 1 and rs.mult((-2,)) == 1
    assert rs.root_class((2,)) == "doubled"
    assert not rs.is_reduced


def test_delta_bc1():
    rs = build_root_system("BC", 1, {"short": 2, "long": 2, "doubled": 1})
    # delta = (2 alpha + 2 alpha) / 2
    assert delta_vector(rs).covector == (Fraction(2),)


def test_multiplicity_errors():
    with pytest.raises(RootSystemError):
        build_root_system("A", 3, {"short": 1, "long": 2})
    with pytest.raises(RootSystemError):
        build_root_system("B", 3, {"short": 1})
    with pytest.raises(RootSystemError):
        build_root_system("E6", 5)
    with pytest.raises(RootSystemError):
        build_root_system("X", 2)
    with pytest.raises(RootSystemError):
        build_root_system("A", 2, 1, scale=0)


def test_scale_and_dimensions():
    rs = build_root_system("A", 3, 1, scale=Fraction(1, 4), k0_dim=0)
    assert rs.gram[0][0] == Fraction(1, 4)
    assert rs.dim_n == 6 and rs.dim_symmetric_space == 9 and rs.dim_g == 15


def test_string_and_level():
    g2 = build_root_system("G2", 2)
    assert root_string_length(g2, (0, 1), 0) == 4
    assert level(g2, (3, 2)) == 5
    with pytest.raises(RootSystemError):
        level(g2, (2, 2))
    with pytest.raises(RootSystemError):
        root_string_length(g2, (1, 0), 0)


def test_orthogonal_pairs():
    a3 = build_root_system("A", 3)
    assert is_orthogonal_pair(a3, 0, 2)
    assert not is_orthogonal_pair(a3, 0, 1)


types = st.sampled_from([("A", 3), ("B", 3), ("C", 4), ("D", 4), ("G2", 2), ("F4", 4), ("BC", 2)])


@given(types, st.data())
def test_coroot_represents_root(key, data):
    rs = build_root_system(*key)
    lam = data.draw(st.sampled_from(rs.positive_roots))
    mu = data.draw(st.sampled_from(rs.positive_roots))
    h_lam, h_mu = coroot(rs, lam), coroot(rs, mu)
    assert evaluate(rs, lam, h_mu) == inner_product(rs, lam, mu)
    assert a_inner(rs, h_lam, h_mu) == inner_product(rs, lam, mu)


@given(types)
def test_dual_basis(key):
    rs = build_root_system(*key)
    for j, h in enumerate(dual_basis(rs)):
        for i, a in enumerate(rs.simple_roots):
            assert evaluate(rs, a, h) == (i == j)


@given(types, st.data())
def test_root_strings_unbroken(key, data):
    rs = build_root_system(*key)
    lam = data.draw(st.sampled_from(rs.positive_roots))
    i = data.draw(st.integers(0, rs.rank - 1))
    a = rs.simple_roots[i]
    if lam in (a, tuple(2 * c for c in a)):
        return
    members = [m for m in range(-6, 7) if tuple(c + m * x for c, x in zip(lam, a)) in rs.roots]
    assert members == list(range(members[0], members[-1] + 1))
    assert root_string_length(rs, lam, i) == len(members)
