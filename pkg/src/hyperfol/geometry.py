"""Closed-form extrinsic geometry of the leaves S_{Phi,V,a} . o.

Normal vectors are written as vectors of a + n (the AN picture):

* a-type normals are vectors xi of a_Phi minus V (fundamental coordinates);
* the alpha-type normal of alpha in Phi is xi = a_alpha H_alpha + 2 E_alpha,
  of AN length sqrt(2 + a_alpha^2 |alpha|^2).

Eigenvalues are carried as floats; when a value is a rational multiple of a
square root it is also recorded exactly (``exact`` if rational, and
``alpha_units`` if it is a rational multiple of the reference |alpha|).
"""
from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real

from . import linalg
from .foliation import FoliationSpec, a_gram, normal_a_basis
from .rootsys import RootSystem, RootVector, a_inner, coroot, delta_vector, evaluate, form

import numpy as np


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class Surd:
    """The real number coef * sqrt(radicand) with rational data."""

    coef: Fraction
    radicand: Fraction

    def __float__(self) -> float:
        return float(self.coef) * math.sqrt(float(self.radicand))

    def rational(self) -> Fraction | None:
        root = linalg.rational_sqrt(self.radicand)
        return None if root is None else self.coef * root

    def over_sqrt(self, q: Fraction) -> Fraction | None:
        """self / sqrt(q) if that is rational."""
        return Surd(self.coef, self.radicand / q).rational()


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


@dataclass(frozen=True)
class SpectrumEntry:
    value: float
    multiplicity: int
    label: str
    exact: Fraction | None = None
    alpha_units: Fraction | None = None


def _entry(val, mult: int, label: str, ref_sq: Fraction) -> SpectrumEntry:
    if isinstance(val, Surd):
        return SpectrumEntry(float(val), mult, label, val.rational(), val.over_sqrt(ref_sq))
    if _is_rational(val):
        q = Fraction(val)
        return SpectrumEntry(float(q), mult, label, q, Surd(q, Fraction(1)).over_sqrt(ref_sq))
    return SpectrumEntry(float(val), mult, label)


def _scale(val, c):
    """val / c where c is either a Surd-friendly rational square (Fraction norm^2) or a float."""
    if isinstance(c, Fraction):
        if isinstance(val, Surd):
            return Surd(val.coef / c, val.radicand * c)
        if _is_rational(val):
            return Surd(Fraction(val) / c, c)
    return float(val) / math.sqrt(float(c))


@dataclass(frozen=True)
class CurvatureReport:
    """Spectrum of a shape operator A_xi of a leaf.

    ``normal_kind`` is ``"a"`` or ``"alpha"``; ``normal`` holds the vector of
    a (fundamental coordinates) or the pair (alpha, a_alpha).
    """

    normal_kind: str
    normal: tuple
    spectrum: tuple[SpectrumEntry, ...]
    norm_an: float
    norm_an_sq: Fraction | float
    trace: float
    expected_trace: float
    unit_normalized: bool
    reference_root: int

    @property
    def dimension(self) -> int:
        return sum(e.multiplicity for e in self.spectrum)

    @property
    def trace_residual(self) -> float:
        return abs(self.trace - self.expected_trace)

    def eigenvalues(self) -> np.ndarray:
        """All eigenvalues with multiplicity, sorted."""
        return np.sort(np.array([e.value for e in self.spectrum for _ in range(e.multiplicity)], dtype=float))

    def merged(self, tol: float = 1e-12) -> list[tuple[float, int]]:
        out: list[list] = []
        for v in sorted(e.value for e in self.spectrum for _ in range(e.multiplicity)):
            if out and abs(out[-1][0] - v) <= tol:
                out[-1][1] += 1
            else:
                out.append([v, 1])
        return [(v, m) for v, m in out]

    def block(self, prefix: str) -> list[SpectrumEntry]:
        return [e for e in self.spectrum if e.label.startswith(prefix)]


def root_length_sq(rs: RootSystem, alpha: int) -> Fraction:
    return rs.gram[alpha][alpha]


def _reference_root(rs: RootSystem) -> int:
    return min(range(rs.rank), key=lambda i: (rs.gram[i][i], i))


def _double(lam: Sequence[int]) -> RootVector:
    return tuple(2 * c for c in lam)


def _phi_roots(rs: RootSystem, phi) -> set[RootVector]:
    out = set()
    for i in phi:
        a = rs.simple_roots[i]
        out.add(a)
        if rs.mult(_double(a)):
            out.add(_double(a))
    return out


def _check_a_normal(rs: RootSystem, spec: FoliationSpec, xi, tol: float) -> None:
    exact = all(_is_rational(x) for x in xi)
    for i in spec.phi:
        if (xi[i] != 0) if exact else abs(float(xi[i])) > tol:
            raise GeometryError(f"xi is not in a_Phi: a{i + 1}(xi) = {xi[i]}")
    for v in spec.V:
        val = a_inner(rs, v, xi) if exact else float(np.array(v, dtype=float) @ linalg.as_float(
            a_gram(rs)) @ np.array(xi, dtype=float))
        if (val != 0) if exact else abs(val) > tol:
            raise GeometryError("xi is not orthogonal to V")


def spectrum_a_type(rs: RootSystem, spec: FoliationSpec, xi: Sequence[Real], unit: bool = True,
                    reference_root: int | None = None, tol: float = 1e-12) -> CurvatureReport:
    """Shape operator for a normal xi in a_Phi minus V.

    A_xi vanishes on V, on R X_alpha, on g_alpha minus R E_alpha and on
    g_2alpha, and is lambda(xi) times the identity on the other g_lambda.
    """
    xi = tuple(Fraction(x) if _is_rational(x) else float(x) for x in xi)
    if len(xi) != rs.rank:
        raise GeometryError(f"xi needs {rs.rank} coordinates")
    _check_a_normal(rs, spec, xi, tol)
    exact = all(_is_rational(x) for x in xi)
    ref = _reference_root(rs) if reference_root is None else reference_root
    ref_sq = root_length_sq(rs, ref)
    if exact:
        norm_sq = a_inner(rs, xi, xi)
    else:
        x = np.array(xi, dtype=float)
        norm_sq = float(x @ linalg.as_float(a_gram(rs)) @ x)
    if unit and (norm_sq == 0):
        raise GeometryError("cannot normalize the zero normal vector")
    entries = []

    def val(v):
        return _scale(v, norm_sq) if unit else v

    if spec.dim_V:
        entries.append(_entry(Fraction(0), spec.dim_V, "V", ref_sq))
    for i in spec.phi:
        a = rs.simple_roots[i]
        entries.append(_entry(Fraction(0), rs.mult(a) + rs.mult(_double(a)), f"zero-block(a{i + 1})", ref_sq))
    skip = _phi_roots(rs, spec.phi)
    trace = 0.0
    for lam, m in rs.multiplicity.items():
        if lam in skip:
            continue
        v = evaluate(rs, lam, xi) if exact else sum(c * float(x) for c, x in zip(lam, xi))
        entries.append(_entry(val(v), m, f"g_{_root_label(lam)}", ref_sq))
    trace = sum(e.value * e.multiplicity for e in entries)
    delta = delta_vector(rs)
    expected = 2 * (evaluate(rs, delta.covector, xi) if exact
                    else sum(float(c) * float(x) for c, x in zip(delta.covector, xi)))
    expected = float(val(expected))
    return CurvatureReport("a", xi, tuple(entries), math.sqrt(float(norm_sq)), norm_sq, trace, expected,
                           unit, ref)


def _root_label(lam: Sequence[int]) -> str:
    return "(" + ",".join(str(c) for c in lam) + ")"


def alpha_strings(rs: RootSystem, alpha: int, exclude: set[RootVector]) -> list[tuple[RootVector, ...]]:
    """Partition of the positive roots outside ``exclude`` into alpha-strings."""
    a = rs.simple_roots[alpha]
    rest = [lam for lam in rs.positive_roots if lam not in exclude]
    seen: set[RootVector] = set()
    out = []
    for lam in rest:
        if lam in seen:
            continue
        string = []
        for m in range(-8, 9):
            mu = tuple(c + m * x for c, x in zip(lam, a))
            if mu in rs.multiplicity and mu not in exclude:
                string.append(mu)
        # strings of non-multiples of alpha stay among the positive roots
        assert all(mu in rest for mu in string)
        seen.update(string)
        out.append(tuple(string))
    return out


def spectrum_alpha_type(rs: RootSystem, spec: FoliationSpec, alpha: int, unit: bool = True) -> CurvatureReport:
    """Shape operator for xi = a_alpha H_alpha + 2 E_alpha with alpha in Phi.

    Blocks: zero on V and on the other Phi blocks; a|alpha|^2 on R X_alpha and
    on the kernel part of g_alpha; the pair (|alpha|/2)(3a|alpha| +- sqrt(8 +
    a^2|alpha|^2)) on g_alpha + g_2alpha; and on each alpha-string through a
    root lambda outside Phi and 2 Phi the eigenvalue
    sqrt(2 + a^2|alpha|^2) <mu, alpha>/|alpha| on g_mu.
    """
    if alpha not in spec.phi:
        raise GeometryError(f"a{alpha + 1} is not in Phi")
    a = spec.shift(alpha)
    l2 = root_length_sq(rs, alpha)
    exact = _is_rational(a)
    c2 = 2 + a * a * l2 if exact else 2 + float(a) ** 2 * float(l2)
    ma = rs.mult(rs.simple_roots[alpha])
    m2a = rs.mult(_double(rs.simple_roots[alpha]))
    entries = []

    def val(v):
        return _scale(v, c2) if unit else v

    def add(v, mult, label):
        if mult > 0:
            entries.append(_entry(val(v), mult, label, l2))

    add(Fraction(0), spec.dim_V, "V")
    for j in spec.phi:
        if j != alpha:
            b = rs.simple_roots[j]
            add(Fraction(0), rs.mult(b) + rs.mult(_double(b)), f"zero-block(a{j + 1})")
    xa = a * l2 if exact else float(a) * float(l2)
    add(xa, 1, f"X_alpha-line(a{alpha + 1})")
    add(xa, ma - m2a - 1, f"ker-part(a{alpha + 1})")
    if m2a:
        lf, af = math.sqrt(float(l2)), float(a)
        root = math.sqrt(8 + af * af * float(l2))
        for sign, tag in ((1, "+"), (-1, "-")):
            v = 0.5 * lf * (3 * af * lf + sign * root)
            ex = None
            if exact:
                r = linalg.rational_sqrt(l2 * (8 + a * a * l2))
                if r is not None:
                    ex = Fraction(3, 2) * a * l2 + sign * r / 2
            add(ex if ex is not None else v, m2a, f"pair-part(a{alpha + 1},{tag})")
    for string in alpha_strings(rs, alpha, _phi_roots(rs, spec.phi)):
        label = f"string(a{alpha + 1}):{_root_label(string[0])}"
        for mu in string:
            ip = form(rs, mu, rs.simple_roots[alpha])
            # raw value sqrt(c2) <mu, alpha> / |alpha|
            raw = Surd(ip, c2 / l2) if exact else math.sqrt(c2 / float(l2)) * float(ip)
            v = (Surd(ip / l2, l2) if exact else float(ip) / math.sqrt(float(l2))) if unit else raw
            entries.append(_entry(v, rs.multiplicity[mu], label, l2))
    trace = sum(e.value * e.multiplicity for e in entries)
    expected = float(xa) * (ma + 2 * m2a)
    if unit:
        expected /= math.sqrt(float(c2))
    return CurvatureReport("alpha", (alpha, a), tuple(entries), math.sqrt(float(c2)), c2, trace,
                           expected, unit, alpha)


@dataclass(frozen=True)
class MeanCurvatureVector:
    """H = a_component (in a, fundamental coordinates) + sum_alpha e_components[alpha] E_alpha."""

    a_component: tuple
    e_components: dict[int, Fraction | float] = field(default_factory=dict)

    def is_zero(self, tol: float = 0.0) -> bool:
        vals = list(self.a_component) + list(self.e_components.values())
        if tol == 0.0 and all(_is_rational(v) for v in vals):
            return all(v == 0 for v in vals)
        return all(abs(float(v)) <= tol for v in vals)


def project_normal_a(rs: RootSystem, spec: FoliationSpec, h: Sequence) -> tuple:
    """Orthogonal projection of a vector of a onto a_Phi minus V."""
    nb = normal_a_basis(spec)
    if nb.shape[1] == 0:
        return tuple(Fraction(0) for _ in range(rs.rank))
    g = a_gram(rs)
    q = linalg.gram_schmidt(nb, g)
    hv = linalg.as_exact(np.array(list(h), dtype=object))
    out = linalg.zeros(rs.rank, True)
    for k in range(q.shape[1]):
        u = q[:, k]
        out = out + (u @ g @ hv) / (u @ g @ u) * u
    return tuple(out)


def mean_curvature(rs: RootSystem, spec: FoliationSpec) -> MeanCurvatureVector:
    """2 pi(H_delta) + sum_alpha k_alpha (a_alpha H_alpha + 2 E_alpha) with
    k_alpha = a_alpha |alpha|^2 (m_alpha + 2 m_2alpha) / (2 + a_alpha^2 |alpha|^2)."""
    hd = delta_vector(rs).H
    base = [2 * x for x in project_normal_a(rs, spec, hd)]
    exact = all(_is_rational(v) for _, v in spec.a)
    if not exact:
        base = [float(x) for x in base]
    e = {}
    for i, a in spec.a:
        l2 = root_length_sq(rs, i)
        lam = rs.simple_roots[i]
        mult = rs.mult(lam) + 2 * rs.mult(_double(lam))
        k = a * l2 * mult / (2 + a * a * l2) if exact else float(a) * float(l2) * mult / (2 + float(a) ** 2 * float(l2))
        hal = coroot(rs, lam)
        for j in range(rs.rank):
            base[j] += k * a * hal[j] if exact else k * float(a) * float(hal[j])
        e[i] = 2 * k
    return MeanCurvatureVector(tuple(base), e)


def is_minimal(rs: RootSystem, spec: FoliationSpec, tol: float = 0.0) -> bool:
    return mean_curvature(rs, spec).is_zero(tol)


def horosphere_spectrum(rs: RootSystem, alpha: int = 0) -> CurvatureReport:
    """Unit normal H_alpha/|alpha| on the horosphere leaf of a rank-one space."""
    from .foliation import build_spec
    spec = build_spec(rs, ())
    h = coroot(rs, rs.simple_roots[alpha])
    return spectrum_a_type(rs, spec, h, unit=True, reference_root=alpha)


# rank-one tubes


def tube_shift(rs: RootSystem, r: float) -> float:
    """The leaf parameter a(r) = -(sqrt 2/|alpha|) sinh(|alpha| r) at distance r."""
    length = math.sqrt(float(rs.gram[0][0]))
    return -(math.sqrt(2) / length) * math.sinh(length * r)


@dataclass(frozen=True)
class TubeCurvature:
    value: float
    multiplicity: int
    label: str


def rank_one_tube_curvatures(rs: RootSystem, r: float, variant: bool = False) -> list[TubeCurvature]:
    """Principal curvatures at distance r from the minimal leaf of a rank-one space.

    The default gives -|alpha| tanh(|alpha| r) with multiplicity
    m_alpha - m_2alpha and -(3|alpha|/2) tanh +- (|alpha|/2) sqrt(4 - 3 tanh^2),
    each with multiplicity m_2alpha.  ``variant=True`` evaluates the variant
    with sqrt(4 - 3 tanh) and multiplicity m_alpha on the first branch, kept
    for comparison.
    """
    if rs.rank != 1:
        raise GeometryError("tube curvatures are defined for rank one")
    if r < 0:
        raise GeometryError("distance must be nonnegative")
    length = math.sqrt(float(rs.gram[0][0]))
    ma, m2a = rs.mult((1,)), rs.mult((2,))
    t = math.tanh(length * r)
    first_mult = ma if variant else ma - m2a
    out = []
    if first_mult:
        out.append(TubeCurvature(-length * t, first_mult, "tanh"))
    if m2a:
        root = math.sqrt(4 - 3 * t) if variant else math.sqrt(4 - 3 * t * t)
        out.append(TubeCurvature(-1.5 * length * t + 0.5 * length * root, m2a, "pair+"))
        out.append(TubeCurvature(-1.5 * length * t - 0.5 * length * root, m2a, "pair-"))
    return out


def tube_curvatures_limit(rs: RootSystem) -> list[TubeCurvature]:
    """The r -> infinity limit (tanh -> 1) of the tube curvatures."""
    length = math.sqrt(float(rs.gram[0][0]))
    ma, m2a = rs.mult((1,)), rs.mult((2,))
    out = []
    if ma - m2a:
        out.append(TubeCurvature(-length, ma - m2a, "tanh"))
    if m2a:
        out.append(TubeCurvature(-length, m2a, "pair+"))
        out.append(TubeCurvature(-2 * length, m2a, "pair-"))
    return out


def expand(curv: Sequence[TubeCurvature]) -> np.ndarray:
    return np.sort(np.array([c.value for c in curv for _ in range(c.multiplicity)], dtype=float))


@dataclass(frozen=True)
class TubeDiscrepancy:
    """Comparison of the derived tube formula with the variant form."""

    radii: tuple[float, ...]
    max_value_gap: float
    derived_total_multiplicity: int
    variant_total_multiplicity: int
    dim_n: int
    substitution_gap: float
    note: str

    def lines(self) -> list[str]:
        return [
            f"tube formula comparison over r in [{min(self.radii):g}, {max(self.radii):g}]",
            f"  sqrt(4 - 3 tanh^2) vs sqrt(4 - 3 tanh): max eigenvalue gap {self.max_value_gap:.6g}",
            f"  multiplicity total derived {self.derived_total_multiplicity}, variant "
            f"{self.variant_total_multiplicity}, leaf dimension {self.dim_n}",
            f"  derived formula vs substituted alpha-type spectrum: max gap {self.substitution_gap:.3g}",
            f"  {self.note}",
        ]


def tube_discrepancy_report(rs: RootSystem, radii: Sequence[float] = tuple(np.linspace(0, 6, 61))) -> TubeDiscrepancy:
    from .foliation import build_spec
    gap = 0.0
    sub_gap = 0.0
    for r in radii:
        derived = rank_one_tube_curvatures(rs, r)
        alt = rank_one_tube_curvatures(rs, r, variant=True)
        for d, p in zip([c for c in derived if c.label != "tanh"], [c for c in alt if c.label != "tanh"]):
            gap = max(gap, abs(d.value - p.value))
        spec = build_spec(rs, (0,), None, [tube_shift(rs, r)])
        alpha = spectrum_alpha_type(rs, spec, 0, unit=True).eigenvalues()
        sub_gap = max(sub_gap, float(np.abs(expand(derived) - alpha).max(initial=0.0)))
    tot_d = sum(c.multiplicity for c in rank_one_tube_curvatures(rs, 1.0))
    tot_p = sum(c.multiplicity for c in rank_one_tube_curvatures(rs, 1.0, variant=True))
    if rs.mult((2,)):
        note = ("the derived form uses tanh^2 under the square root and multiplicity "
                "m_alpha - m_2alpha on the tanh branch; the variant differs for 0 < r < infinity")
    else:
        note = "no g_2alpha: both forms reduce to the single tanh branch"
    return TubeDiscrepancy(tuple(float(r) for r in radii), gap, tot_d, tot_p, rs.dim_n, sub_gap, note)
