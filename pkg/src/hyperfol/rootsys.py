"""Restricted root systems with multiplicities, in exact rational arithmetic.

Roots are integer coefficient tuples over the simple roots.  The geometry
lives in an explicit Gram matrix ``gram[i][j] = <alpha_i, alpha_j>``.

Vectors of the abelian subalgebra a are written in *fundamental
coordinates* ``x_i = alpha_i(H)``.  In these coordinates a root ``c`` acts by
``c . x``, the dual vector of ``c`` is ``H_c = gram @ c``, the dual basis
``H^j`` is the j-th unit vector and ``<H, H'> = x^T gram^{-1} x'``.
"""
from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType

RootVector = tuple[int, ...]
AVector = tuple[Fraction, ...]

ROOT_CLASSES = ("short", "long", "doubled")

_EXCEPTIONAL_RANK = {"E6": 6, "E7": 7, "E8": 8, "F4": 4, "G2": 2}
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4, "BC": 1}


class RootSystemError(ValueError):
    """Invalid root system data or a non-root argument."""


def _diagram(type_label: str, r: int) -> tuple[list[tuple[int, int]], list[int]]:
    """Dynkin edges and squared lengths (short roots have length 1), Bourbaki numbering."""
    path = [(i, i + 1) for i in range(r - 1)]
    if type_label == "A":
        return path, [1] * r
    if type_label in ("B", "BC"):
        return path, [2] * (r - 1) + [1]
    if type_label == "C":
        return path, [1] * (r - 1) + [2]
    if type_label == "D":
        return path[:-1] + [(r - 3, r - 1)], [1] * r
    if type_label in ("E6", "E7", "E8"):
        edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, r - 1)]
        return edges, [1] * r
    if type_label == "F4":
        return path, [2, 2, 1, 1]
    if type_label == "G2":
        return path, [1, 3]
    raise RootSystemError(f"unknown type label {type_label!r}")


def _check_type(type_label: str, rank: int) -> None:
    if type_label in _EXCEPTIONAL_RANK:
        if rank != _EXCEPTIONAL_RANK[type_label]:
            raise RootSystemError(f"{type_label} has rank {_EXCEPTIONAL_RANK[type_label]}, not {rank}")
    elif type_label in _MIN_RANK:
        if not isinstance(rank, int) or rank < _MIN_RANK[type_label]:
            raise RootSystemError(f"type {type_label} needs rank >= {_MIN_RANK[type_label]}, got {rank}")
    else:
        raise RootSystemError(f"unknown type label {type_label!r}")


def _base_gram(type_label: str, r: int) -> list[list[Fraction]]:
    edges, lengths = _diagram(type_label, r)
    g = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r):
        g[i][i] = Fraction(lengths[i])
    for i, j in edges:
        g[i][j] = g[j][i] = -Fraction(max(lengths[i], lengths[j]), 2)
    return g


def _bilinear(gram, x, y) -> Fraction:
    return sum((Fraction(x[i]) * gram[i][j] * y[j]
                for i in range(len(x)) for j in range(len(y)) if x[i] and y[j]), Fraction(0))


def _enumerate_reduced(gram) -> list[RootVector]:
    """Positive roots by the root-string algorithm, processed level by level."""
    r = len(gram)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    found = set(simple)
    ordered = list(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(r):
                if beta == simple[i]:
                    continue
                # p: how far the string extends downward through beta
                p = 0
                while True:
                    down = tuple(c - (p + 1) * (k == i) for k, c in enumerate(beta))
                    if down in found:
                        p += 1
                    else:
                        break
                pairing = 2 * _bilinear(gram, beta, simple[i]) / gram[i][i]
                if p - pairing > 0:
                    up = tuple(c + (k == i) for k, c in enumerate(beta))
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        nxt.sort(key=lambda v: tuple(-c for c in v))
        ordered.extend(nxt)
        frontier = nxt
    return ordered


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10 ** 12)
    return Fraction(x)


@dataclass(frozen=True)
class RootSystem:
    """Abstract restricted root system with multiplicities.

    Attributes
    ----------
    type_label, rank
        Cartan type and rank r.
    gram
        Scaled Gram matrix of the simple roots.
    multiplicity
        Map from positive roots to dim g_lambda.
    scale
        Global factor that was applied to the default Gram form.
    k0_dim
        dim of the centralizer of a in k, when known; needed only for
        absolute dimensions of g and its Levi pieces.
    """

    type_label: str
    rank: int
    gram: tuple[tuple[Fraction, ...], ...]
    multiplicity: Mapping[RootVector, int] = field(compare=False)
    scale: Fraction = Fraction(1)
    k0_dim: int | None = None

    @property
    def simple_roots(self) -> tuple[RootVector, ...]:
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    @cached_property
    def positive_roots(self) -> tuple[RootVector, ...]:
        return tuple(self.multiplicity)

    @cached_property
    def roots(self) -> frozenset[RootVector]:
        return frozenset(self.positive_roots) | frozenset(neg(lam) for lam in self.positive_roots)

    @cached_property
    def cartan_matrix(self) -> tuple[tuple[int, ...], ...]:
        g = self.gram
        out = []
        for i in range(self.rank):
            row = []
            for j in range(self.rank):
                v = 2 * g[i][j] / g[j][j]
                assert v.denominator == 1
                row.append(int(v))
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def gram_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        from . import linalg
        import numpy as np
        inv = linalg.inverse(linalg.as_exact(np.array(self.gram, dtype=object)))
        return tuple(tuple(Fraction(v) for v in row) for row in inv)

    @property
    def is_reduced(self) -> bool:
        return self.type_label != "BC"

    @property
    def dim_n(self) -> int:
        return sum(self.multiplicity.values())

    @property
    def dim_symmetric_space(self) -> int:
        return self.rank + self.dim_n

    @property
    def dim_g(self) -> int | None:
        if self.k0_dim is None:
            return None
        return self.k0_dim + self.rank + 2 * self.dim_n

    def mult(self, lam: Sequence[int]) -> int:
        lam = tuple(lam)
        if lam in self.multiplicity:
            return self.multiplicity[lam]
        if neg(lam) in self.multiplicity:
            return self.multiplicity[neg(lam)]
        return 0

    def is_root(self, lam: Sequence[int]) -> bool:
        return tuple(lam) in self.roots

    def root_class(self, lam: Sequence[int]) -> str:
        lam = positive_part(lam)
        if lam not in self.multiplicity:
            raise RootSystemError(f"{lam} is not a root")
        norm = _bilinear(self.gram, lam, lam) / self.scale
        if self.type_label == "BC" and norm == 4:
            return "doubled"
        shortest = min(_bilinear(self.gram, a, a) for a in self.simple_roots) / self.scale
        return "short" if norm == shortest else "long"

    def simple_name(self, i: int) -> str:
        return f"a{i + 1}"

    def __repr__(self) -> str:
        return f"RootSystem({self.type_label}{self.rank}, scale={self.scale}, |Sigma+|={len(self.multiplicity)})"


def neg(lam: Sequence[int]) -> RootVector:
    return tuple(-c for c in lam)


def positive_part(lam: Sequence[int]) -> RootVector:
    lam = tuple(lam)
    return neg(lam) if any(c < 0 for c in lam) else lam


def _resolve_multiplicities(type_label, classes, profile) -> dict[str, int]:
    present = set(classes.values())
    if isinstance(profile, int) and not isinstance(profile, bool):
        out = {c: profile for c in present}
    elif isinstance(profile, Mapping) and all(isinstance(k, str) for k in profile):
        unknown = set(profile) - set(ROOT_CLASSES)
        if unknown:
            raise RootSystemError(f"unknown root classes {sorted(unknown)}")
        out = {}
        simply_laced = present == {"short"}
        for c in present:
            if c in profile:
                out[c] = profile[c]
            elif c == "short" and simply_laced and "long" in profile:
                out[c] = profile["long"]
            else:
                raise RootSystemError(f"multiplicity of {c} roots not given")
        if simply_laced and "short" in profile and "long" in profile and profile["short"] != profile["long"]:
            raise RootSystemError("multiplicity not constant on a Weyl orbit (all roots of a "
                                  f"simply laced system are conjugate), got {dict(profile)}")
    elif isinstance(profile, Mapping):
        out = {}
        for lam, c in classes.items():
            m = profile.get(lam)
            if m is None:
                raise RootSystemError(f"multiplicity of root {lam} not given")
            if c in out and out[c] != m:
                raise RootSystemError(f"multiplicity not constant on a Weyl orbit ({c} roots)")
            out[c] = m
    else:
        raise RootSystemError(f"cannot read multiplicity profile {profile!r}")
    for c, m in out.items():
        if not isinstance(m, int) or isinstance(m, bool) or m < 1:
            raise RootSystemError(f"multiplicity of {c} roots must be a positive integer, got {m!r}")
    return out


def build_root_system(type_label: str, rank: int, multiplicity_profile=1, scale=1,
                      k0_dim: int | None = None) -> RootSystem:
    """Build the positive roots, Gram matrix and multiplicities of a root system.

    ``multiplicity_profile`` is an int (all roots), a dict keyed by root class
    (``short``/``long``/``doubled``) or a dict keyed by positive root vectors.
    """
    _check_type(type_label, rank)
    scale = _as_fraction(scale)
    if scale <= 0:
        raise RootSystemError(f"scale must be positive, got {scale}")
    if k0_dim is not None and (not isinstance(k0_dim, int) or k0_dim < 0):
        raise RootSystemError(f"k0_dim must be a nonnegative integer, got {k0_dim!r}")
    base = _base_gram(type_label, rank)
    positive = _enumerate_reduced(base)
    if type_label == "BC":
        doubled = [tuple(2 * c for c in lam) for lam in positive if _bilinear(base, lam, lam) == 1]
        positive = sorted(positive + doubled, key=lambda v: (sum(v), tuple(-c for c in v)))
    else:
        positive.sort(key=lambda v: (sum(v), tuple(-c for c in v)))
    classes = {}
    shortest = min(base[i][i] for i in range(rank))
    for lam in positive:
        n = _bilinear(base, lam, lam)
        if type_label == "BC" and n == 4:
            classes[lam] = "doubled"
        else:
            classes[lam] = "short" if n == shortest else "long"
    per_class = _resolve_multiplicities(type_label, classes, multiplicity_profile)
    mult = {lam: per_class[classes[lam]] for lam in positive}
    gram = tuple(tuple(scale * v for v in row) for row in base)
    return RootSystem(type_label, rank, gram, MappingProxyType(mult), scale, k0_dim)


def _check_root(rs: RootSystem, lam, allow_zero: bool = False) -> RootVector:
    lam = tuple(int(c) for c in lam)
    if len(lam) != rs.rank:
        raise RootSystemError(f"root {lam} has wrong length for rank {rs.rank}")
    if allow_zero and not any(lam):
        return lam
    if lam not in rs.roots:
        raise RootSystemError(f"{lam} is not a root of {rs!r}")
    return lam


def level(rs: RootSystem, lam: Sequence[int]) -> int:
    """Coefficient sum of a root over the simple roots."""
    return sum(_check_root(rs, lam))


def highest_root(rs: RootSystem) -> RootVector:
    top = max(rs.positive_roots, key=sum)
    # uniqueness: every other root is dominated coefficientwise
    assert all(all(a <= b for a, b in zip(lam, top)) for lam in rs.positive_roots)
    return top


def inner_product(rs: RootSystem, lam: Sequence[int], mu: Sequence[int]) -> Fraction:
    return _bilinear(rs.gram, _check_root(rs, lam, True), _check_root(rs, mu, True))


def form(rs: RootSystem, lam: Sequence, mu: Sequence) -> Fraction:
    """Inner product of arbitrary rational combinations of simple roots."""
    return _bilinear(rs.gram, [Fraction(c) for c in lam], [Fraction(c) for c in mu])


def _simple_index(rs: RootSystem, alpha) -> int:
    if isinstance(alpha, int):
        if not 0 <= alpha < rs.rank:
            raise RootSystemError(f"simple root index {alpha} out of range")
        return alpha
    alpha = tuple(alpha)
    if alpha not in rs.simple_roots:
        raise RootSystemError(f"{alpha} is not a simple root")
    return rs.simple_roots.index(alpha)


def is_orthogonal_pair(rs: RootSystem, alpha, beta) -> bool:
    """Simple roots (indices or vectors) that are not joined in the Dynkin diagram."""
    i, j = _simple_index(rs, alpha), _simple_index(rs, beta)
    return rs.gram[i][j] == 0


def coroot(rs: RootSystem, lam: Sequence[int]) -> AVector:
    """Dual vector H_lambda with lambda(H) = <H_lambda, H>, in fundamental coordinates."""
    lam = _check_root(rs, lam, True)
    return tuple(_bilinear(rs.gram, rs.simple_roots[i], lam) for i in range(rs.rank))


def dual_covector(rs: RootSystem, coeffs: Sequence) -> AVector:
    """H_c for an arbitrary rational combination ``c`` of simple roots."""
    return tuple(form(rs, rs.simple_roots[i], coeffs) for i in range(rs.rank))


def dual_basis(rs: RootSystem) -> tuple[AVector, ...]:
    """The vectors H^j with alpha_i(H^j) = delta_ij."""
    return tuple(tuple(Fraction(int(i == j)) for i in range(rs.rank)) for j in range(rs.rank))


def evaluate(rs: RootSystem, lam: Sequence, h: Sequence) -> Fraction:
    """lambda(H) for a covector ``lam`` (simple-root coefficients) and H in fundamental coordinates."""
    return sum((Fraction(c) * Fraction(x) for c, x in zip(lam, h)), Fraction(0))


def a_inner(rs: RootSystem, h1: Sequence, h2: Sequence) -> Fraction:
    """Inner product of two elements of a given in fundamental coordinates."""
    return _bilinear(rs.gram_inverse, [Fraction(x) for x in h1], [Fraction(x) for x in h2])


@dataclass(frozen=True)
class DeltaVector:
    """delta = 1/2 sum of m_lambda lambda, as a covector and as its dual vector."""

    covector: tuple[Fraction, ...]
    H: AVector


def delta_vector(rs: RootSystem) -> DeltaVector:
    cov = [Fraction(0)] * rs.rank
    for lam, m in rs.multiplicity.items():
        for i, c in enumerate(lam):
            cov[i] += Fraction(m * c, 2)
    cov = tuple(cov)
    return DeltaVector(cov, dual_covector(rs, cov))


def root_string_length(rs: RootSystem, lam: Sequence[int], alpha) -> int:
    """Number of roots of the form lambda + m alpha with m an integer."""
    lam = _check_root(rs, lam)
    i = _simple_index(rs, alpha)
    a = rs.simple_roots[i]
    if positive_part(lam) in (a, tuple(2 * c for c in a)):
        raise RootSystemError("the string of alpha through alpha or 2 alpha is not defined")
    bound = 2 * max(max(abs(c) for c in r) for r in rs.positive_roots) + 2
    return sum(1 for m in range(-bound, bound + 1)
               if tuple(c + m * x for c, x in zip(lam, a)) in rs.roots)
