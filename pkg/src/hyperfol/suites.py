"""Named verification sweeps run against a bundled realization."""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .foliation import build_spec, coordinate_subspaces, normal_a_basis
from .geometry import spectrum_a_type, spectrum_alpha_type
from .matrixlie import (bracket_closure, identity_checks, polarity_verdict, realize, shape_operator_numeric,
                        verify_congruency)
from .matrixlie.counterexamples import lie_triple_counterexample, non_foliation_example
from .matrixlie.decomposition import RootSpaceDecomposition
from .matrixlie.verify import closure_residual
from .parabolic import orthogonal_subsets, phi_label

A_GRID = (-2, -1, 0, 1, 2)

DEFAULT_TOL = {
    "criterion": 1e-10,
    "counterexample-lie-triple": 1e-10,
    "counterexample-non-foliation": 1e-9,
    "congruency": 1e-9,
    "identities": 1e-10,
    "spectral": 1e-8,
}
SUITES = tuple(DEFAULT_TOL)


class NotApplicable(ValueError):
    """The suite does not apply to this space."""


@dataclass
class Check:
    name: str
    passed: bool
    residual: float = 0.0
    detail: dict = field(default_factory=dict)


@dataclass
class SuiteResult:
    suite: str
    tol: float
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "tol": self.tol, "passed": self.passed,
                "checks": [asdict(c) for c in self.checks]}


def _specs(dec: RootSpaceDecomposition, grid=None):
    rs = dec.rs
    for phi in orthogonal_subsets(rs):
        for V in coordinate_subspaces(rs, phi):
            if grid is None:
                yield build_spec(rs, phi, V)
            else:
                for a in itertools.product(grid, repeat=len(phi)):
                    yield build_spec(rs, phi, V, [Fraction(x) for x in a])


def criterion_suite(dec: RootSpaceDecomposition, tol: float) -> SuiteResult:
    g = dec.algebra
    checks = []
    for spec in _specs(dec):
        real = realize(dec, spec)
        closure = closure_residual(g, real.basis)
        verdict = polarity_verdict(g, real.basis, tol)
        ok = closure <= tol and verdict.perp_is_abelian and verdict.classification == "hyperpolar" \
            and real.dim == spec.dim
        checks.append(Check(f"s_{{{spec.label()}}}", ok, max(closure, verdict.residuals["abelian"]),
                            {"classification": verdict.classification, "exact": real.exact,
                             "dim": real.dim, "codim": spec.codimension}))
    return SuiteResult("criterion", tol, checks)


def _orthogonal_pair(dec: RootSpaceDecomposition):
    rs = dec.rs
    for i, j in itertools.combinations(range(rs.rank), 2):
        if rs.gram[i][j] == 0 and rs.gram[i][i] == rs.gram[j][j]:
            return i, j
    raise NotApplicable(f"{dec.algebra.name} has no pair of orthogonal simple roots of equal length")


def lie_triple_suite(dec: RootSpaceDecomposition, tol: float) -> SuiteResult:
    i, j = _orthogonal_pair(dec)
    rep = lie_triple_counterexample(dec, i, j)
    v = rep.verdict
    checks = [
        Check("perp = R(Ha-Hb) + R(1-theta)(Xa+Xb)", rep.perp_residual <= tol, rep.perp_residual),
        Check("perp is a Lie triple system", v.perp_is_lie_triple, v.residuals["lie_triple"]),
        # negated checks: the residual is a witness, so it goes into detail
        Check("perp is not abelian", not v.perp_is_abelian, 0.0, {"abelian_residual": v.residuals["abelian"]}),
        Check("h is not orthogonal to [perp, perp]", not v.orthogonality_condition, 0.0,
              {"orthogonality_residual": v.residuals["orthogonality"],
               "witness": float(rep.orthogonality_witness)}),
        Check("verdict not_polar", v.classification == "not_polar", 0.0, {"classification": v.classification}),
    ]
    checks += [Check(name, r <= tol, r) for name, r in rep.bracket_residuals.items()]
    for c in checks:
        c.detail.setdefault("roots", [f"a{i + 1}", f"a{j + 1}"])
    return SuiteResult("counterexample-lie-triple", tol, checks)


def non_foliation_suite(dec: RootSpaceDecomposition, tol: float) -> SuiteResult:
    if dec.algebra.name != "sl(2,C)":
        raise NotApplicable("the non-foliation example lives in sl(2,C)")
    rep = non_foliation_example(dec)
    v = rep.verdict
    return SuiteResult("counterexample-non-foliation", tol, [
        Check("h is an abelian subalgebra", v.is_subalgebra, v.residuals["closure"]),
        Check("perp = R xi with xi = [[1,-2i],[2i,-1]]", rep.perp_matches_xi),
        Check("variant [[1,-2i],[-2i,-1]] is not in p", not rep.variant_in_p),
        Check("perp abelian, criterion gives hyperpolar", v.classification == "hyperpolar", 0.0,
              {"foliation_hypothesis": v.metadata["foliation_hypothesis"]}),
        Check("Ad(g)B in a", rep.ad_B_in_a <= tol, rep.ad_B_in_a),
        Check("Ad(g)X in t", rep.ad_X_in_t <= tol, rep.ad_X_in_t),
        Check("Ad(g)h = t + a", rep.conjugate_distance <= tol, rep.conjugate_distance),
        Check("series and matrix conjugation agree", rep.matrix_route_agrees),
    ])


def congruency_suite(dec: RootSpaceDecomposition, tol: float, grid=A_GRID) -> SuiteResult:
    checks = []
    for spec in _specs(dec, grid):
        if spec.is_normalized and spec.phi:
            continue
        res = verify_congruency(dec, spec, tol)
        checks.append(Check(f"Ad(Exp(-sum a E)) s_{{{spec.label()}}} = s_{{Phi,V}}", res.passed, res.residual))
    return SuiteResult("congruency", tol, checks)


def identities_suite(dec: RootSpaceDecomposition, tol: float, n_samples: int = 100, seed: int = 0) -> SuiteResult:
    rep = identity_checks(dec, n_samples, seed, tol)
    checks = [
        Check("polarization (1-theta)[theta X, Y] = 2<X,Y> H_lambda", rep.polarization_residual <= tol,
              rep.polarization_residual, {"samples": rep.n_polarization}),
        Check("projection pi_{a+n}(s) = {X in a+n : X perp s_p^perp}", rep.projection_residual <= tol,
              rep.projection_residual, {"samples": rep.n_projection}),
        Check("sampled subspaces are subalgebras", rep.closure_residual <= tol, rep.closure_residual),
    ]
    try:
        i, j = _orthogonal_pair(dec)
    except NotApplicable:
        pass
    else:
        rep2 = lie_triple_counterexample(dec, i, j)
        checks += [Check(name, r <= tol, r) for name, r in rep2.bracket_residuals.items()]
    return SuiteResult("identities", tol, checks)


def _multiplicities_match(closed, numeric, tol) -> bool:
    for value, mult in closed:
        if int(np.sum(np.abs(numeric - value) <= tol)) != mult:
            return False
    return sum(m for _, m in closed) == len(numeric)


def spectral_suite(dec: RootSpaceDecomposition, tol: float, grid=A_GRID) -> SuiteResult:
    rs = dec.rs
    checks = []
    for spec in _specs(dec, grid):
        real = realize(dec, spec)
        reports = []
        nb = normal_a_basis(spec)
        for k in range(nb.shape[1]):
            xi = tuple(nb[:, k])
            reports.append((spectrum_a_type(rs, spec, xi), linalg.as_float(dec.H(xi)), "p"))
        for i in spec.phi:
            a = float(spec.shift(i))
            xi = a * linalg.as_float(dec.H_root(rs.simple_roots[i])) + 2 * dec.E(i, dict(spec.ell_choice)[i])
            reports.append((spectrum_alpha_type(rs, spec, i), xi, "an"))
        for rep, xi, form in reports:
            num = shape_operator_numeric(dec, real, xi, xi_form=form, unit=True).eigenvalues
            closed = rep.eigenvalues()
            gap = float(np.abs(closed - num).max(initial=0.0)) if len(closed) == len(num) else float("inf")
            mult_ok = _multiplicities_match(rep.merged(tol / 10), num, tol)
            kind = f"alpha-type a{rep.normal[0] + 1}" if rep.normal_kind == "alpha" else "a-type"
            checks.append(Check(f"{kind} spectrum of s_{{{spec.label()}}}", gap <= tol and mult_ok, gap,
                                {"multiplicities_match": mult_ok, "trace_residual": rep.trace_residual}))
    return SuiteResult("spectral", tol, checks)


RUNNERS = {
    "criterion": criterion_suite,
    "counterexample-lie-triple": lie_triple_suite,
    "counterexample-non-foliation": non_foliation_suite,
    "congruency": congruency_suite,
    "identities": identities_suite,
    "spectral": spectral_suite,
}


def run_suite(dec: RootSpaceDecomposition, name: str, tol: float | None = None) -> SuiteResult:
    if name not in RUNNERS:
        raise KeyError(f"unknown suite {name!r}")
    return RUNNERS[name](dec, DEFAULT_TOL[name] if tol is None else tol)


def run_all(dec: RootSpaceDecomposition, tol: float | None = None, workers: int = 4) -> list[SuiteResult]:
    """Run every applicable suite; checks run concurrently, results keep suite order."""

    def one(name):
        try:
            return run_suite(dec, name, tol)
        except NotApplicable:
            return None

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(one, SUITES))
    return [r for r in results if r is not None]


__all__ = ["A_GRID", "Check", "DEFAULT_TOL", "NotApplicable", "SUITES", "SuiteResult", "bracket_closure",
           "phi_label", "run_all", "run_suite"]
