"""Parabolic subalgebra data attached to subsets of simple roots."""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .rootsys import AVector, RootSystem, RootSystemError, RootVector, highest_root

Phi = tuple[int, ...]

DIVISION_ALGEBRAS = {1: "R", 2: "C", 4: "H", 8: "O"}


class ParabolicError(ValueError):
    pass


def _check_phi(rs: RootSystem, phi: Iterable[int]) -> Phi:
    phi = tuple(sorted(set(int(i) for i in phi)))
    if any(not 0 <= i < rs.rank for i in phi):
        raise ParabolicError(f"{phi} is not a subset of the simple roots of a rank {rs.rank} system")
    return phi


def is_orthogonal_subset(rs: RootSystem, phi: Iterable[int]) -> bool:
    phi = _check_phi(rs, phi)
    return all(rs.gram[i][j] == 0 for i, j in combinations(phi, 2))


def orthogonal_subsets(rs: RootSystem) -> list[Phi]:
    """All pairwise orthogonal subsets of the simple roots, including the empty set.

    Sorted by size, then lexicographically.
    """
    out = [()]
    for k in range(1, rs.rank + 1):
        out.extend(c for c in combinations(range(rs.rank), k) if is_orthogonal_subset(rs, c))
    return out


def diagram_automorphisms(rs: RootSystem) -> list[tuple[int, ...]]:
    """Permutations of the simple roots preserving the Cartan matrix."""
    a = rs.cartan_matrix
    r = rs.rank
    found = []

    def extend(perm: list[int]) -> None:
        k = len(perm)
        if k == r:
            found.append(tuple(perm))
            return
        for t in range(r):
            if t in perm or a[t][t] != a[k][k]:
                continue
            if all(a[k][i] == a[t][perm[i]] and a[i][k] == a[perm[i]][t] for i in range(k)):
                extend(perm + [t])

    extend([])
    return found


def automorphism_orbits(rs: RootSystem, subsets: list[Phi] | None = None) -> list[list[Phi]]:
    """Group subsets into orbits under the Dynkin diagram automorphisms."""
    if subsets is None:
        subsets = orthogonal_subsets(rs)
    auts = diagram_automorphisms(rs)
    seen: set[Phi] = set()
    orbits = []
    for phi in subsets:
        if phi in seen:
            continue
        orbit = sorted({tuple(sorted(p[i] for i in phi)) for p in auts},
                       key=lambda s: (len(s), s))
        orbit = [s for s in orbit if s in subsets]
        seen.update(orbit)
        orbits.append(orbit)
    return orbits


def phi_label(rs: RootSystem, phi: Phi) -> str:
    return "{" + ",".join(rs.simple_name(i) for i in phi) + "}"


def in_span(lam: RootVector, phi: Phi) -> bool:
    return all(c == 0 for i, c in enumerate(lam) if i not in phi)


@dataclass(frozen=True)
class ParabolicProfile:
    """Dimensions of the Langlands decomposition q = m + a_Phi + n_Phi.

    ``dim_m_phi``, ``dim_l_phi`` and ``dim_q_phi`` are ``None`` when the
    root system does not record dim k_0.
    """

    phi: Phi
    dim_n_phi: int
    dim_a_phi: int
    dim_a_upper_phi: int
    dim_m_phi: int | None
    dim_l_phi: int | None
    dim_q_phi: int | None
    sigma_phi_positive: tuple[RootVector, ...]


def langlands_profile(rs: RootSystem, phi: Iterable[int]) -> ParabolicProfile:
    phi = _check_phi(rs, phi)
    sigma_phi = tuple(lam for lam in rs.positive_roots if in_span(lam, phi))
    dim_n_phi = sum(m for lam, m in rs.multiplicity.items() if not in_span(lam, phi))
    dim_m = dim_l = dim_q = None
    if rs.k0_dim is not None:
        dim_m = rs.k0_dim + len(phi) + 2 * sum(rs.multiplicity[lam] for lam in sigma_phi)
        dim_l = dim_m + rs.rank - len(phi)
        dim_q = dim_l + dim_n_phi
        assert dim_l == rs.dim_g - 2 * dim_n_phi
    return ParabolicProfile(phi, dim_n_phi, rs.rank - len(phi), len(phi), dim_m, dim_l, dim_q, sigma_phi)


@dataclass(frozen=True)
class GradationProfile:
    """Gradation of g by the eigenvalues of ad(H^Phi).

    ``level_dims[0]`` is ``None`` when dim k_0 is unknown.
    """

    phi: Phi
    characteristic_element: AVector
    level_dims: dict[int, int | None]
    top_level: int


def characteristic_element(rs: RootSystem, phi: Iterable[int]) -> AVector:
    phi = _check_phi(rs, phi)
    return tuple(Fraction(int(i not in phi)) for i in range(rs.rank))


def gradation_profile(rs: RootSystem, phi: Iterable[int]) -> GradationProfile:
    phi = _check_phi(rs, phi)
    h = characteristic_element(rs, phi)
    dims: dict[int, int | None] = {}
    zero = 0
    for lam, m in rs.multiplicity.items():
        k = int(sum(c * x for c, x in zip(lam, h)))
        if k == 0:
            zero += 2 * m
        else:
            dims[k] = dims.get(k, 0) + m
            dims[-k] = dims.get(-k, 0) + m
    dims[0] = None if rs.k0_dim is None else rs.k0_dim + rs.rank + zero
    top = int(sum(c * x for c, x in zip(highest_root(rs), h)))
    return GradationProfile(phi, h, dict(sorted(dims.items())), top)


@dataclass(frozen=True)
class BoundaryFactor:
    """One rank-one factor F H^n of the boundary component."""

    alpha: int
    division_algebra: str
    n: int

    @property
    def dim(self) -> int:
        return self.n * {v: k for k, v in DIVISION_ALGEBRAS.items()}[self.division_algebra]

    def label(self) -> str:
        return f"{self.division_algebra}H^{self.n}"


@dataclass(frozen=True)
class BoundaryComponentFactorization:
    phi: Phi
    factors: tuple[BoundaryFactor, ...]
    euclidean_rank: int
    dim_n_phi: int

    def label(self) -> str:
        parts = [f.label() for f in self.factors]
        return " x ".join(parts) if parts else "point"


def rank_one_factor(m_alpha: int, m_2alpha: int) -> tuple[str, int]:
    """Solve dim g_2a = dim F - 1 and dim g_a = (n - 1) dim F for (F, n)."""
    dim_f = m_2alpha + 1
    if dim_f not in DIVISION_ALGEBRAS:
        raise ParabolicError(f"dim g_2alpha = {m_2alpha} is not one of 0, 1, 3, 7")
    if m_alpha % dim_f:
        raise ParabolicError(f"dim g_alpha = {m_alpha} is not a multiple of dim F = {dim_f}")
    n = m_alpha // dim_f + 1
    if n < 2:
        raise ParabolicError("no solution with n >= 2")
    if dim_f == 8 and n != 2:
        raise ParabolicError(f"octonionic hyperbolic spaces exist only for n = 2, got n = {n}")
    return DIVISION_ALGEBRAS[dim_f], n


def boundary_component(rs: RootSystem, phi: Iterable[int]) -> BoundaryComponentFactorization:
    phi = _check_phi(rs, phi)
    if not is_orthogonal_subset(rs, phi):
        raise ParabolicError(f"{phi_label(rs, phi)} is not an orthogonal subset")
    factors = []
    for i in phi:
        a = rs.simple_roots[i]
        f, n = rank_one_factor(rs.mult(a), rs.mult(tuple(2 * c for c in a)))
        factors.append(BoundaryFactor(i, f, n))
    prof = langlands_profile(rs, phi)
    out = BoundaryComponentFactorization(phi, tuple(factors), rs.rank - len(phi), prof.dim_n_phi)
    total = sum(f.dim for f in factors) + out.euclidean_rank + prof.dim_n_phi
    if total != rs.dim_symmetric_space:
        raise ParabolicError(f"horospherical dimension count {total} != dim M = {rs.dim_symmetric_space}")
    return out


__all__ = [
    "BoundaryComponentFactorization", "BoundaryFactor", "GradationProfile", "ParabolicError",
    "ParabolicProfile", "RootSystemError", "automorphism_orbits", "boundary_component",
    "characteristic_element", "diagram_automorphisms", "gradation_profile", "is_orthogonal_subset",
    "langlands_profile", "orthogonal_subsets", "phi_label", "rank_one_factor",
]
