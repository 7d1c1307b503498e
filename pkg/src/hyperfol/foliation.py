"""Foliation data (Phi, V, a) and the subalgebras s_{Phi,V,a} at root-space resolution."""
from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from numbers import Real

import numpy as np

from . import linalg
from .parabolic import Phi, is_orthogonal_subset, orthogonal_subsets, phi_label
from .rootsys import AVector, RootSystem, RootVector, coroot


class FoliationError(ValueError):
    pass


def _num(x):
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, Real):
        return float(x)
    raise FoliationError(f"shift parameter must be real, got {x!r}")


def a_phi_basis(rs: RootSystem, phi: Iterable[int]) -> np.ndarray:
    """Columns spanning a_Phi = {H : alpha(H) = 0 for alpha in Phi}."""
    cols = [j for j in range(rs.rank) if j not in set(phi)]
    out = linalg.zeros((rs.rank, len(cols)), True)
    for k, j in enumerate(cols):
        out[j, k] = Fraction(1)
    return out


def a_upper_phi_basis(rs: RootSystem, phi: Iterable[int]) -> np.ndarray:
    """Columns H_alpha, alpha in Phi, spanning a^Phi."""
    phi = list(phi)
    out = linalg.zeros((rs.rank, len(phi)), True)
    for k, i in enumerate(phi):
        out[:, k] = coroot(rs, rs.simple_roots[i])
    return out


def a_gram(rs: RootSystem) -> np.ndarray:
    return linalg.as_exact(np.array(rs.gram_inverse, dtype=object))


@dataclass(frozen=True)
class FoliationSpec:
    """A triple (Phi, V, a) describing s_{Phi,V,a}.

    ``V`` holds a basis of V (one tuple per vector, fundamental coordinates);
    ``a`` maps each alpha in Phi to its shift; ``ell_choice`` selects the unit
    vector E_alpha as a basis index of g_alpha in a realization.
    """

    rs: RootSystem = field(repr=False)
    phi: Phi
    V: tuple[AVector, ...] = ()
    a: tuple[tuple[int, Fraction | float], ...] = ()
    ell_choice: tuple[tuple[int, int], ...] = ()

    @property
    def dim_V(self) -> int:
        return len(self.V)

    @property
    def codimension(self) -> int:
        return self.rs.rank - self.dim_V

    @property
    def dim(self) -> int:
        return self.dim_V + self.rs.dim_n

    def shift(self, alpha: int):
        return dict(self.a)[alpha]

    @property
    def is_normalized(self) -> bool:
        return all(v == 0 for _, v in self.a)

    def V_matrix(self) -> np.ndarray:
        if not self.V:
            return linalg.empty_basis(self.rs.rank, True)
        return linalg.as_exact(np.array(self.V, dtype=object).T)

    def label(self) -> str:
        txt = f"Phi={phi_label(self.rs, self.phi)}, dim V={self.dim_V}"
        if not self.is_normalized:
            txt += ", a=(" + ",".join(str(v) for _, v in self.a) + ")"
        return txt


def build_spec(rs: RootSystem, phi: Iterable[int], V_span: Sequence[Sequence] | None = None,
               a: Mapping[int, Real] | Sequence[Real] | None = None,
               ell_choice: Mapping[int, int] | None = None) -> FoliationSpec:
    phi = tuple(sorted(set(int(i) for i in phi)))
    if any(not 0 <= i < rs.rank for i in phi):
        raise FoliationError(f"{phi} is not a subset of the simple roots")
    if not is_orthogonal_subset(rs, phi):
        raise FoliationError(f"{phi_label(rs, phi)} is not an orthogonal subset: "
                             "some of its roots are joined in the Dynkin diagram")
    vecs = [] if V_span is None else [tuple(Fraction(x) for x in v) for v in V_span]
    if any(len(v) != rs.rank for v in vecs):
        raise FoliationError(f"vectors of V need {rs.rank} coordinates")
    for v in vecs:
        if any(v[i] != 0 for i in phi):
            raise FoliationError(f"{v} is not in a_Phi: some alpha in Phi does not vanish on it")
    if vecs:
        basis = linalg.column_basis(linalg.as_exact(np.array(vecs, dtype=object).T))
        vecs = [tuple(basis[:, k]) for k in range(basis.shape[1])]
    if not phi and len(vecs) == rs.rank:
        raise FoliationError("the pair (empty set, a) is improper: dim V must be < rank when Phi is empty")
    if a is None:
        shifts = {i: Fraction(0) for i in phi}
    elif isinstance(a, Mapping):
        if set(a) - set(phi):
            raise FoliationError("shift given for a root outside Phi")
        shifts = {i: _num(a.get(i, 0)) for i in phi}
    else:
        a = list(a)
        if len(a) != len(phi):
            raise FoliationError(f"expected {len(phi)} shift values, got {len(a)}")
        shifts = {i: _num(x) for i, x in zip(phi, a)}
    ell = {i: 0 for i in phi}
    if ell_choice:
        ell.update({int(k): int(v) for k, v in ell_choice.items() if k in ell})
    return FoliationSpec(rs, phi, tuple(vecs), tuple(sorted(shifts.items())), tuple(sorted(ell.items())))


def coordinate_subspaces(rs: RootSystem, phi: Phi) -> list[tuple[AVector, ...]]:
    """Spans of subsets of the dual basis vectors lying in a_Phi (properness respected)."""
    free = [j for j in range(rs.rank) if j not in phi]
    out = []
    for k in range(len(free) + 1):
        if not phi and k == rs.rank:
            continue
        for sub in combinations(free, k):
            out.append(tuple(tuple(Fraction(int(i == j)) for i in range(rs.rank)) for j in sub))
    return out


@dataclass(frozen=True)
class SubalgebraProfile:
    """Root-space description of s_{Phi,V,a} and its normal space in p.

    ``removed_lines`` and ``normal_lines`` hold pairs (alpha, a_alpha) for the
    lines R(a H_alpha + E_alpha) and R(a H_alpha + (1 - theta) E_alpha).
    """

    a_part: np.ndarray
    removed_lines: tuple[tuple[int, Fraction | float], ...]
    included_root_spaces: dict[RootVector, int]
    normal_a_part: np.ndarray
    normal_lines: tuple[tuple[int, Fraction | float], ...]
    dim: int
    normal_dim: int


def normal_a_basis(spec: FoliationSpec) -> np.ndarray:
    """Columns spanning a_Phi minus V (orthogonal complement inside a_Phi)."""
    rs = spec.rs
    return linalg.orth_complement(spec.V_matrix(), a_gram(rs), within=a_phi_basis(rs, spec.phi))


def subalgebra_profile(spec: FoliationSpec) -> SubalgebraProfile:
    rs = spec.rs
    upper = a_upper_phi_basis(rs, spec.phi)
    a_part = np.hstack([upper, spec.V_matrix()]) if spec.V else upper
    included = {}
    for lam, m in rs.multiplicity.items():
        included[lam] = m - 1 if lam in [rs.simple_roots[i] for i in spec.phi] else m
    # a^Phi + V + n has dimension |Phi| + dim V + dim n; each tilted line removes one
    dim = a_part.shape[1] + rs.dim_n - len(spec.phi)
    nb = normal_a_basis(spec)
    prof = SubalgebraProfile(a_part, spec.a, included, nb, spec.a, dim, nb.shape[1] + len(spec.phi))
    assert prof.dim == spec.dim_V + rs.dim_n
    assert prof.normal_dim == spec.codimension
    return prof


@dataclass(frozen=True)
class Conjugator:
    """g = Exp(sum_alpha c_alpha E_alpha); the E_alpha pairwise commute."""

    exponent: tuple[tuple[int, Fraction | float], ...]

    @property
    def is_identity(self) -> bool:
        return all(c == 0 for _, c in self.exponent)


def normalize(spec: FoliationSpec) -> tuple[FoliationSpec, Conjugator]:
    """The normal form with a = 0 and the conjugator Exp(-sum a_alpha E_alpha)."""
    zero = tuple((i, Fraction(0)) for i, _ in spec.a)
    conj = Conjugator(tuple((i, -v) for i, v in spec.a if v != 0))
    return replace(spec, a=zero), conj


@dataclass(frozen=True)
class Family:
    phi: Phi
    dim_V_range: tuple[int, ...]
    codimensions: tuple[int, ...]


def enumerate_families(rs: RootSystem) -> list[Family]:
    out = []
    for phi in orthogonal_subsets(rs):
        top = rs.rank - len(phi)
        dims = tuple(d for d in range(top + 1) if phi or d < rs.rank)
        codims = tuple(rs.rank - d for d in dims)
        assert all(c >= 1 for c in codims)
        out.append(Family(phi, dims, codims))
    return out
