"""Command-line interface: classification listings, curvature tables and verification sweeps.

Exit codes: 0 when every check passes, 1 on a failed check, 2 on a usage or
input error.  ``--json`` emits a schema-valid report whose content depends
only on the inputs, apart from the ``timestamp`` field.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from datetime import datetime, timezone
from fractions import Fraction

import jsonschema
import numpy as np

from . import __version__, linalg
from .catalog import CatalogEntry, CatalogError, catalog_path, get_entry, load_catalog
from .foliation import FoliationError, build_spec, enumerate_families, normal_a_basis, a_gram
from .geometry import (CurvatureReport, GeometryError, is_minimal, mean_curvature, root_length_sq,
                       spectrum_a_type, spectrum_alpha_type)
from .parabolic import (ParabolicError, automorphism_orbits, boundary_component, gradation_profile,
                        langlands_profile, orthogonal_subsets, phi_label)
from .rootsys import RootSystem

TRACE_TOL = 1e-10

REPORT_SCHEMA = {
    "type": "object",
    "required": ["command", "inputs", "outputs", "checks", "passed", "version", "timestamp"],
    "additionalProperties": False,
    "properties": {
        "command": {"enum": ["classify", "curvatures", "verify", "catalog"]},
        "inputs": {"type": "object"},
        "outputs": {"type": "object"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "passed"],
                "properties": {
                    "name": {"type": "string"},
                    "passed": {"type": "boolean"},
                    "residual": {"type": ["number", "string", "null"]},
                    "suite": {"type": "string"},
                    "detail": {"type": "object"},
                },
            },
        },
        "passed": {"type": "boolean"},
        "version": {"type": "string"},
        "timestamp": {"type": "string"},
    },
}


class UsageError(ValueError):
    """Bad command-line input; exit code 2."""


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    return x


def make_report(command: str, inputs: dict, outputs: dict, checks: list[dict]) -> dict:
    report = _jsonable({
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    })
    jsonschema.validate(report, REPORT_SCHEMA)
    return report


# argument parsing helpers


def parse_phi(rs: RootSystem, text: str) -> tuple[int, ...]:
    """'none' or a comma list of simple roots written a1, a2, ... (or 1, 2, ...)."""
    text = text.strip()
    if text.lower() in ("none", "", "{}"):
        return ()
    out = []
    for tok in text.split(","):
        tok = tok.strip().lower().lstrip("a")
        if not tok.isdigit() or not 1 <= int(tok) <= rs.rank:
            raise UsageError(f"bad simple root {tok!r}; use a1..a{rs.rank}")
        out.append(int(tok) - 1)
    if len(set(out)) != len(out):
        raise UsageError("repeated simple root in --phi")
    return tuple(sorted(out))


def _number(tok: str) -> Fraction:
    try:
        return Fraction(tok.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {tok!r}") from exc


def parse_vectors(rs: RootSystem, text: str | None) -> list[tuple[Fraction, ...]]:
    """Spanning vectors separated by ';', coordinates by ','; '0' means V = {0}."""
    if text is None or text.strip() in ("0", "", "none"):
        return []
    out = []
    for chunk in text.split(";"):
        v = tuple(_number(t) for t in chunk.split(","))
        if len(v) != rs.rank:
            raise UsageError(f"vector {chunk!r} needs {rs.rank} coordinates")
        if any(v):
            out.append(v)
    return out


def parse_shifts(phi, text: str | None) -> list[Fraction] | None:
    if text is None:
        return None
    vals = [_number(t) for t in text.split(",")]
    if len(vals) == 1 and len(phi) != 1:
        vals = vals * len(phi)
    if len(vals) != len(phi):
        raise UsageError(f"--a needs {len(phi)} values, one per root of Phi")
    return vals


# output helpers


def type_name(rs: RootSystem) -> str:
    """A3, BC1, E6, G2, ... (exceptional labels already carry the rank)."""
    return rs.type_label if rs.type_label[-1].isdigit() else f"{rs.type_label}{rs.rank}"


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return f"{float(x):.12g}"


def _spectrum_record(rs: RootSystem, rep: CurvatureReport) -> dict:
    if rep.normal_kind == "alpha":
        normal = {"kind": "alpha", "root": rs.simple_name(rep.normal[0]), "a": rep.normal[1]}
    else:
        normal = {"kind": "a", "vector": list(rep.normal)}
    return {
        "normal": normal,
        "unit_normalized": rep.unit_normalized,
        "reference_root": rs.simple_name(rep.reference_root),
        "reference_length_sq": root_length_sq(rs, rep.reference_root),
        "normal_length_sq": rep.norm_an_sq,
        "spectrum": [{"value": e.value, "multiplicity": e.multiplicity, "label": e.label,
                      "exact": e.exact, "alpha_units": e.alpha_units} for e in rep.spectrum],
        "eigenvalues": [[v, m] for v, m in rep.merged()],
        "trace": rep.trace,
        "expected_trace": rep.expected_trace,
        "trace_residual": rep.trace_residual,
    }


def _spectrum_text(rs: RootSystem, rec: dict) -> list[str]:
    n = rec["normal"]
    head = (f"alpha-type normal {n['root']} (a = {_fmt(n['a'])})" if n["kind"] == "alpha"
            else "a-type normal (" + ", ".join(_fmt(x) for x in n["vector"]) + ")")
    mode = "unit" if rec["unit_normalized"] else "raw"
    lines = [f"{head}, {mode}, |{rec['reference_root']}|^2 = {rec['reference_length_sq']}"]
    for e in rec["spectrum"]:
        units = "" if e["alpha_units"] is None else f"  = {e['alpha_units']} |{rec['reference_root']}|"
        lines.append(f"  {e['value']:+.10f}  x{e['multiplicity']:<3d} {e['label']}{units}")
    lines.append(f"  trace {rec['trace']:.12g}, expected {rec['expected_trace']:.12g}, "
                 f"residual {rec['trace_residual']:.2e}")
    return lines


def _emit(report: dict, text_lines: list[str], as_json: bool) -> int:
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print("\n".join(text_lines))
        for c in report["checks"]:
            if not c["passed"]:
                print(f"FAIL {c['name']}")
        print("PASS" if report["passed"] else "FAIL")
    return 0 if report["passed"] else 1


# commands


def cmd_classify(entry: CatalogEntry, orbits: bool = False, as_json: bool = False) -> int:
    rs = entry.root_system()
    records = []
    lines = [f"{entry.name}: {type_name(rs)}, dim M = {rs.dim_symmetric_space}"]
    for fam in enumerate_families(rs):
        phi = fam.phi
        lp = langlands_profile(rs, phi)
        gp = gradation_profile(rs, phi)
        bc = boundary_component(rs, phi)
        horo = [f.label() for f in bc.factors]
        if bc.euclidean_rank:
            horo.append(f"E^{bc.euclidean_rank}")
        horo.append(f"N_Phi (dim {bc.dim_n_phi})")
        records.append({
            "phi": [rs.simple_name(i) for i in phi],
            "dim_V": list(fam.dim_V_range),
            "codimension": list(fam.codimensions),
            "langlands": {"dim_n_phi": lp.dim_n_phi, "dim_a_phi": lp.dim_a_phi,
                          "dim_a_upper_phi": lp.dim_a_upper_phi, "dim_m_phi": lp.dim_m_phi,
                          "dim_l_phi": lp.dim_l_phi, "dim_q_phi": lp.dim_q_phi,
                          "sigma_phi_positive": [list(r) for r in lp.sigma_phi_positive]},
            "gradation": {"characteristic_element": list(gp.characteristic_element),
                          "level_dims": {str(k): v for k, v in sorted(gp.level_dims.items())},
                          "top_level": gp.top_level},
            "boundary_component": {"label": bc.label(),
                                   "factors": [{"root": rs.simple_name(f.alpha), "field": f.division_algebra,
                                                "n": f.n, "dim": f.dim} for f in bc.factors],
                                   "euclidean_rank": bc.euclidean_rank},
            "horospherical": " x ".join(horo),
        })
        lines.append(f"  Phi = {phi_label(rs, phi):<12} dim V in {list(fam.dim_V_range)}  "
                     f"codim {list(fam.codimensions)}  F_Phi^s = {bc.label()}  "
                     f"M = {' x '.join(horo)}")
    outputs = {"root_type": rs.type_label, "rank": rs.rank, "dim_M": rs.dim_symmetric_space,
               "families": records, "total_families": len(records),
               "total_subalgebra_types": sum(len(r["dim_V"]) for r in records)}
    if orbits:
        groups = automorphism_orbits(rs)
        outputs["orbits_under_diagram_auts"] = [[phi_label(rs, p) for p in g] for g in groups]
        lines.append("  diagram automorphism orbits: "
                     + "; ".join(" ".join(phi_label(rs, p) for p in g) for g in groups))
    lines.append(f"  total: {len(records)} families of Phi, {outputs['total_subalgebra_types']} (Phi, dim V) types")
    report = make_report("classify", {"space": entry.name, "orbits_under_diagram_auts": orbits}, outputs, [])
    return _emit(report, lines, as_json)


def _normals(rs: RootSystem, spec, normal: str | None):
    """Yield ('a', vector) or ('alpha', index) for each requested normal."""
    nb = normal_a_basis(spec)
    a_normals = []
    if nb.shape[1]:
        q = linalg.gram_schmidt(nb, a_gram(rs))
        a_normals = [("a", tuple(q[:, k])) for k in range(q.shape[1])]
    alpha_normals = [("alpha", i) for i in spec.phi]
    if normal is None:
        return a_normals + alpha_normals
    if normal == "a-unit":
        if not a_normals:
            raise UsageError("a_Phi minus V is zero: there is no a-type normal")
        return a_normals
    kind, _, arg = normal.partition(":")
    if kind == "alpha":
        idx = parse_phi(rs, arg)
        if len(idx) != 1 or idx[0] not in spec.phi:
            raise UsageError(f"alpha-type normal needs a root of Phi, got {arg!r}")
        return [("alpha", idx[0])]
    if kind == "a":
        vec = tuple(_number(t) for t in arg.split(","))
        if len(vec) != rs.rank:
            raise UsageError(f"a-type normal needs {rs.rank} coordinates")
        return [("a", vec)]
    raise UsageError(f"unknown normal {normal!r}; use a-unit, a:<coords> or alpha:<root>")


def cmd_curvatures(entry: CatalogEntry, phi: str, v: str | None = None, a: str | None = None,
                   normal: str | None = None, unit: bool = True, as_json: bool = False) -> int:
    rs = entry.root_system()
    phi_idx = parse_phi(rs, phi)
    spec = build_spec(rs, phi_idx, parse_vectors(rs, v), parse_shifts(phi_idx, a))
    records, checks = [], []
    for kind, arg in _normals(rs, spec, normal):
        if kind == "a":
            rep = spectrum_a_type(rs, spec, arg, unit=unit)
        else:
            rep = spectrum_alpha_type(rs, spec, arg, unit=unit)
        rec = _spectrum_record(rs, rep)
        records.append(rec)
        name = (f"trace identity, alpha-type normal {rs.simple_name(arg)}" if kind == "alpha" else
                "trace identity, a-type normal (" + ", ".join(_fmt(x) for x in arg) + ")")
        checks.append({"name": name, "passed": rep.trace_residual < TRACE_TOL, "residual": rep.trace_residual})
    hvec = mean_curvature(rs, spec)
    minimal = is_minimal(rs, spec)
    outputs = {
        "subalgebra": {"phi": [rs.simple_name(i) for i in spec.phi], "V": [list(x) for x in spec.V],
                       "a": {rs.simple_name(i): x for i, x in spec.a}, "dim": spec.dim,
                       "codimension": spec.codimension},
        "normals": records,
        "mean_curvature": {"a_component": list(hvec.a_component),
                           "E_components": {rs.simple_name(i): x for i, x in hvec.e_components.items()}},
        "minimal": minimal,
    }
    lines = [f"{entry.name}: s_{{{spec.label()}}}, dim {spec.dim}, codimension {spec.codimension}"]
    for rec in records:
        lines += _spectrum_text(rs, rec)
    lines.append("mean curvature: a-part (" + ", ".join(_fmt(x) for x in hvec.a_component) + ")"
                 + "".join(f" + {_fmt(x)} E_{rs.simple_name(i)}" for i, x in hvec.e_components.items()))
    lines.append(f"minimal leaf: {'yes' if minimal else 'no'}")
    inputs = {"space": entry.name, "phi": phi, "v": v, "a": a, "normal": normal, "unit": unit}
    report = make_report("curvatures", inputs, outputs, checks)
    return _emit(report, lines, as_json)


def cmd_verify(entry: CatalogEntry, suite: str, tol: float | None = None, as_json: bool = False) -> int:
    from .suites import SUITES, NotApplicable, run_all, run_suite
    if entry.realization is None:
        raise UsageError(f"{entry.name} has no bundled realization; verification needs one")
    if suite != "all" and suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
    _, dec = entry.realize()
    if suite == "all":
        results = run_all(dec, tol)
    else:
        try:
            results = [run_suite(dec, suite, tol)]
        except NotApplicable as exc:
            raise UsageError(f"suite {suite} does not apply to {entry.name}: {exc}") from exc
    checks, lines = [], [f"{entry.name}: {type_name(dec.rs)} realized by {dec.algebra.name}"]
    for res in results:
        n_pass = sum(c.passed for c in res.checks)
        worst = max((c.residual for c in res.checks), default=0.0)
        lines.append(f"  {res.suite:<30} {n_pass}/{len(res.checks)} passed  tol {res.tol:g}  "
                     f"max residual {worst:.2e}  {'PASS' if res.passed else 'FAIL'}")
        checks += [{"suite": res.suite, "name": c.name, "passed": c.passed, "residual": c.residual,
                    "detail": c.detail} for c in res.checks]
    outputs = {"suites": [{"suite": r.suite, "tol": r.tol, "passed": r.passed, "n_checks": len(r.checks)}
                          for r in results],
               "root_type": dec.rs.type_label, "rank": dec.rs.rank,
               "killing_scale": dec.rs.scale, "realization": entry.realization}
    report = make_report("verify", {"space": entry.name, "suite": suite, "tol": tol}, outputs, checks)
    return _emit(report, lines, as_json)


def cmd_catalog(validate: bool = False, as_json: bool = False) -> int:
    cat = load_catalog()
    source = str(catalog_path() or "bundled")
    records, checks = [], []
    lines = [f"catalog: {source}"]
    for e in cat.values():
        rs = e.root_system()
        records.append({"name": e.name, "root_type": e.root_type, "rank": e.rank,
                        "multiplicities": dict(e.multiplicities), "realization": e.realization,
                        "killing_scale": e.killing_scale, "k0_dim": e.k0_dim, "dim_M": rs.dim_symmetric_space,
                        "description": e.description})
        lines.append(f"  {e.name:<6} {type_name(rs):<5} dim M = {rs.dim_symmetric_space:<4} "
                     f"{e.realization or '-':<6} {e.description}")
        if validate:
            ok, msg = True, "root data matches the realization"
            if e.realization is not None:
                try:
                    e.realize()
                except Exception as exc:  # any failure of the oracle is a failed check
                    ok, msg = False, str(exc)
            else:
                msg = "abstract entry"
            checks.append({"name": f"{e.name}: {msg}", "passed": ok})
    report = make_report("catalog", {"validate": validate, "source": source}, {"entries": records}, checks)
    return _emit(report, lines, as_json)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperfol", description="Hyperpolar homogeneous foliations on "
                                "symmetric spaces of noncompact type.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="list the foliation families of a space")
    c.add_argument("space")
    c.add_argument("--json", action="store_true")
    c.add_argument("--orbits-under-diagram-auts", action="store_true")

    c = sub.add_parser("curvatures", help="principal curvatures of a leaf")
    c.add_argument("space")
    c.add_argument("--phi", required=True, help="comma list of simple roots (a1,a3) or 'none'")
    c.add_argument("--v", help="spanning vectors of V: '1,0,0;0,0,1'; '0' for V = {0}")
    c.add_argument("--a", help="shift values a_alpha, one per root of Phi")
    c.add_argument("--normal", help="a-unit, a:<coords> or alpha:<root>; default all")
    g = c.add_mutually_exclusive_group()
    g.add_argument("--unit", dest="unit", action="store_true", default=True)
    g.add_argument("--raw", dest="unit", action="store_false")
    c.add_argument("--json", action="store_true")

    c = sub.add_parser("verify", help="run verification suites on a realized space")
    c.add_argument("space")
    c.add_argument("--suite", required=True)
    c.add_argument("--tol", type=float)
    c.add_argument("--json", action="store_true")

    c = sub.add_parser("catalog", help="list catalog entries")
    c.add_argument("--validate", action="store_true")
    c.add_argument("--json", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "catalog":
            return cmd_catalog(args.validate, args.json)
        entry = get_entry(args.space)
        if args.command == "classify":
            return cmd_classify(entry, args.orbits_under_diagram_auts, args.json)
        if args.command == "curvatures":
            return cmd_curvatures(entry, args.phi, args.v, args.a, args.normal, args.unit, args.json)
        return cmd_verify(entry, args.suite, args.tol, args.json)
    except (UsageError, CatalogError, FoliationError, GeometryError, ParabolicError) as exc:
        print(f"hyperfol: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
