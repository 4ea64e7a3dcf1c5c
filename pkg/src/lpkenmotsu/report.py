"""Assemble deterministic reports from a fixture document."""

from __future__ import annotations

import os
import warnings
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Optional

from . import __version__, reference
from .exact import Matrix, MultiTensor, ZERO, format_rational
from .frame import Connection, CurvatureData, FrameManifold, curvature, koszul_connection
from .identities import connection_checks, curvature_checks
from .soliton import (
    SolitonField,
    SolitonParams,
    corollary_discrepancies,
    corollary_table,
    gradient_formula_suite,
    gradient_verdict,
    inequality_classification,
    lambda_constant_potential,
    classify_by_lambda,
    rys_verdict,
    solve_lambda_zeta,
    zeta_soliton_analysis,
    zeta_soliton_closed_form,
)
from .spec_io import ManifoldSpecDocument, builtin_example, canonical_json, digest
from .structure import (
    Check,
    CheckReport,
    ParacontactStructure,
    check_almost_paracontact,
    check_curvature_identities,
    check_k_paracontact,
    check_lp_kenmotsu,
    check_scalar_lemma,
    classify_einstein,
)

SECTIONS = ("structure", "connection", "curvature", "ricci", "classification", "soliton", "theorems",
            "discrepancies")

CONVENTIONS = (
    "frame indices are 1-based: e_1..e_n",
    "[e_i, e_j] = c_ij^k e_k; nabla_{e_i} e_j = Gamma_ij^k e_k; R(e_i, e_j) e_k = R_ijk^l e_l",
    "R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z",
    "Ricci contraction S_jk = R_ijk^i; r = g^jk S_jk; Q^k_j = g^ki S_ij",
    "all fields have constant frame components, so derivatives of scalars vanish",
)
BUILTIN_NOTE = ("built-in example convention: phi pairs consecutive frame vectors, "
                "phi e_(2k-1) = -e_(2k), phi e_(2k) = -e_(2k-1), phi zeta = 0")


@dataclass
class Analysis:
    doc: ManifoldSpecDocument
    manifold: FrameManifold
    structure: ParacontactStructure
    connection: Connection
    curvature: CurvatureData

    @classmethod
    def of(cls, doc: ManifoldSpecDocument) -> "Analysis":
        m = doc.manifold()
        conn = koszul_connection(m)
        return cls(doc, m, doc.structure(m), conn, curvature(m, conn))


# -- serialization helpers -------------------------------------------------

def q(x) -> str:
    return format_rational(x)


def one_based(idx) -> Optional[list]:
    return None if idx is None else [i + 1 for i in idx]


def residual_obj(res):
    if isinstance(res, MultiTensor):
        return res.to_nested()
    if isinstance(res, Matrix):
        return res.to_strings()
    return q(res)


def check_obj(c: Check) -> dict:
    out = {"name": c.name, "label": c.label, "passed": c.passed, "witness": one_based(c.witness),
           "residual": residual_obj(c.residual)}
    if c.note:
        out["note"] = c.note
    if c.skipped:
        out["skipped"] = True
    return out


def report_obj(r: CheckReport) -> list:
    return [check_obj(c) for c in r.checks]


def vector_obj(v) -> list:
    return [q(x) for x in v]


# -- sections --------------------------------------------------------------

def structure_section(a: Analysis) -> dict:
    m, p, conn = a.manifold, a.structure, a.connection
    ap = check_almost_paracontact(m, p)
    lp = check_lp_kenmotsu(m, conn, p)
    kp = check_k_paracontact(m, conn, p)
    return {
        "passed": ap.verdict and lp.verdict,
        "nu": vector_obj(p.nu),
        "almost_paracontact": report_obj(ap),
        "lp_kenmotsu": report_obj(lp),
        # informational: an LP-Kenmotsu frame is expected to fail this
        "k_paracontact": {"holds": kp.verdict, "checks": report_obj(kp)},
    }


def connection_section(a: Analysis) -> dict:
    checks = connection_checks(a.manifold, a.connection)
    return {
        "passed": checks.verdict,
        "gamma": [{"i": i + 1, "j": j + 1, "k": k + 1, "value": q(v)} for (i, j, k), v in a.connection.nonzero()],
        "checks": report_obj(checks),
    }


def curvature_section(a: Analysis) -> dict:
    checks = curvature_checks(a.manifold, a.connection, a.curvature.riemann)
    comps = [{"i": i + 1, "j": j + 1, "k": k + 1, "l": l + 1, "value": q(v)}
             for (i, j, k, l), v in a.curvature.riemann.nonzero() if i < j]
    return {"passed": checks.verdict, "components": comps, "checks": report_obj(checks)}


def ricci_section(a: Analysis) -> dict:
    cd = a.curvature
    ids = check_curvature_identities(a.manifold, cd, a.structure)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        lemma = check_scalar_lemma(a.manifold, a.connection, cd, a.structure)
    return {
        "passed": ids.verdict and lemma.verdict,
        "ricci": cd.ricci.to_strings(),
        "scalar": q(cd.scalar),
        "ricci_operator": cd.ricci_operator.to_strings(),
        "identities": report_obj(ids),
        "lemma": report_obj(lemma),
    }


def classification_section(a: Analysis) -> dict:
    c = classify_einstein(a.manifold, a.curvature, a.structure)
    return {
        "passed": c.decomposition_holds and c.scalar_consistent,
        "a": q(c.a),
        "b": q(c.b),
        "label": c.label,
        "decomposition_holds": c.decomposition_holds,
        "decomposition_residual": c.decomposition_residual.to_strings(),
        "scalar": q(c.scalar),
        "expected_scalar": q(c.expected_scalar),
        "scalar_consistent": c.scalar_consistent,
        "notes": list(c.notes),
    }


def soliton_section(a: Analysis, params: SolitonParams, soliton_field: SolitonField) -> dict:
    m, cd, p = a.manifold, a.curvature, a.structure
    out = {"field": soliton_field.kind, "sigma": q(params.sigma), "rho": q(params.rho)}
    if soliton_field.vector is not None:
        out["vector"] = vector_obj(soliton_field.vector)
    if soliton_field.kind == SolitonField.GRADIENT_CONSTANT:
        v = gradient_verdict(m, cd, params, p)
        out["equation"] = "nabla Dv + sigma Q + (Lambda - rho r/2) Id = 0, v constant"
    else:
        notes = []
        if params.lam is None:
            params = params.with_lambda(solve_lambda_zeta(m, cd, params, p))
            notes.append("Lambda solved from the (zeta, zeta) contraction")
        v = rys_verdict(m, cd, soliton_field, params, p)
        v = replace(v, notes=tuple(notes))
        out["equation"] = "L_K g + 2 sigma S + (2 Lambda - rho r) g = 0"
        if soliton_field.kind == SolitonField.ZETA and params.sigma != 0:
            z = zeta_soliton_analysis(m, cd, p, params)
            out["zeta_analysis"] = {
                "predicted_ricci": z.predicted_ricci.to_strings(),
                "ricci_residual": z.ricci_residual.to_strings(),
                "ricci_form_holds": z.ricci_form_holds,
                "lambda_from_r": q(z.lambda_from_r),
                "compatible_scalar": q(z.compatible_scalar),
                "lambda_star": q(z.lambda_star),
                "classification": z.classification,
                "inequality": {"rho_over_sigma": q(z.inequality_lhs), "two_sigma_minus_rho_n": q(z.inequality_rhs),
                               "classification": z.inequality_classification},
                "notes": list(z.notes),
            }
    out.update({
        "passed": v.satisfied,
        "lambda": q(v.lambda_used),
        "classification": v.classification,
        "residual": v.residual.to_strings(),
        "satisfied": v.satisfied,
        "notes": list(v.notes),
    })
    return out


def corollary_rows(n: int) -> list:
    return [{"corollary": r.corollary, "soliton": r.soliton, "sigma": q(r.sigma), "rho": q(r.rho),
             "source": r.source, "lambda": q(r.lam), "classification": r.classification,
             "stated_lambda": q(r.stated_lambda), "stated_label": r.stated_label,
             "lambda_match": r.lambda_match, "label_match": r.label_match, "match": r.match}
            for r in corollary_table(n)]


def theorems_obj(n: int, sigma=None, rho=None, r=None) -> dict:
    out = {"passed": True, "n": n, "corollaries": corollary_rows(n)}
    if sigma is not None and rho is not None:
        sigma, rho = Fraction(sigma), Fraction(rho)
        lam = lambda_constant_potential(n, sigma, rho)
        out["rys_constant_r"] = {"sigma": q(sigma), "rho": q(rho), "lambda": q(lam),
                                 "classification": classify_by_lambda(lam)}
        if sigma != 0:
            r_star, lam_star = zeta_soliton_closed_form(n, sigma, rho)
            out["zeta_soliton"] = {"compatible_scalar": q(r_star), "lambda_star": q(lam_star),
                                   "classification": classify_by_lambda(lam_star),
                                   "inequality_classification": inequality_classification(n, sigma, rho)}
        if n >= 4:
            rr = Fraction(n * (n - 1)) if r is None else Fraction(r)
            f = gradient_formula_suite(n, sigma, rho, rr)
            out["gradient_formulas"] = {"r": q(rr), "zeta_v": q(f.zeta_v), "nu_coefficient": q(f.nu_coefficient),
                                        "dr_coefficient": q(f.dr_coefficient), "trivial": f.trivial}
    return out


def theorems_section(a: Analysis) -> dict:
    s = a.doc.soliton
    return theorems_obj(a.manifold.n, s.sigma if s else None, s.rho if s else None, a.curvature.scalar)


def reference_comparison(a: Analysis) -> Optional[dict]:
    """Compare against the reference tables when the fixture is the five-dimensional example."""
    if a.doc.geometry_key() != builtin_example(5).geometry_key():
        return None
    n = 5
    gamma = a.connection.gamma
    expected_gamma = {(i - 1, j - 1, k - 1): v for (i, j, k), v in reference.GAMMA}
    gamma_ok = all(gamma[i][j][k] == expected_gamma.get((i, j, k), ZERO)
                   for i in range(n) for j in range(n) for k in range(n))
    R = a.curvature.riemann
    rows = []
    listed = set()
    for (i, j, k), coef, l, typo in reference.RIEMANN:
        listed.add((i - 1, j - 1, k - 1))
        computed = [R[i - 1, j - 1, k - 1, w] for w in range(n)]
        expected = [coef if w == l - 1 else ZERO for w in range(n)]
        row = {"i": i, "j": j, "k": k, "expected": vector_obj(expected), "computed": vector_obj(computed),
               "match": computed == expected}
        if typo:
            row["note"] = "typo suspected in reference table: listed as -v_4, compared as -e_4"
        rows.append(row)
    unlisted_zero = all(R[i, j, k, w] == 0 for i in range(n) for j in range(i + 1, n) for k in range(n)
                        for w in range(n) if (i, j, k) not in listed)
    cd = a.curvature
    ricci_ok = cd.ricci == Matrix.diag(reference.RICCI_DIAGONAL) and cd.scalar == reference.SCALAR
    ok = gamma_ok and all(r["match"] for r in rows) and unlisted_zero and ricci_ok
    return {"gamma_match": gamma_ok, "riemann": rows, "unlisted_riemann_zero": unlisted_zero,
            "ricci_match": ricci_ok, "passed": ok}


def discrepancies_section(a: Analysis) -> dict:
    notes = corollary_discrepancies(a.manifold.n)
    comp = reference_comparison(a)
    out = {"passed": True if comp is None else comp["passed"], "notes": notes}
    if comp is not None:
        out["reference_example"] = comp
        notes.extend(r["note"] for r in comp["riemann"] if "note" in r)
    return out


def _uses_builtin_phi(doc: ManifoldSpecDocument) -> bool:
    n = doc.dimension
    return n % 2 == 1 and doc.phi == builtin_example(n).phi and doc.zeta == builtin_example(n).zeta


def run_report(doc: ManifoldSpecDocument, sections: Iterable[str] = SECTIONS, params: Optional[SolitonParams] = None,
               soliton_field: Optional[SolitonField] = None) -> dict:
    """Structured report; ``verdict`` is the conjunction of every included section."""
    sections = [s for s in SECTIONS if s in set(sections)]
    a = Analysis.of(doc)
    if params is None and doc.soliton is not None:
        params = doc.soliton.params()
        soliton_field = soliton_field or doc.soliton.soliton_field()
    conventions = list(CONVENTIONS)
    if _uses_builtin_phi(doc):
        conventions.append(BUILTIN_NOTE)
    body = []
    for name in sections:
        if name == "soliton":
            if params is None:
                continue
            data = soliton_section(a, params, soliton_field or SolitonField.zeta())
        else:
            data = SECTION_BUILDERS[name](a)
        body.append({"section": name, **data})
    return {
        "tool": {"name": "lpkenmotsu", "version": __version__},
        "input": {"name": doc.name, "dimension": doc.dimension, "digest": digest(doc)},
        "conventions": conventions,
        "sections": body,
        "verdict": all(s["passed"] for s in body),
    }


SECTION_BUILDERS = {
    "structure": structure_section,
    "connection": connection_section,
    "curvature": curvature_section,
    "ricci": ricci_section,
    "classification": classification_section,
    "theorems": theorems_section,
    "discrepancies": discrepancies_section,
}


# -- rendering -------------------------------------------------------------

def structured(report: dict) -> str:
    return canonical_json(report)


def format_vector(coeffs) -> str:
    terms = []
    for idx, c in enumerate(coeffs):
        c = Fraction(c)
        if c == 0:
            continue
        mag = abs(c)
        body = f"e_{idx + 1}" if mag == 1 else f"{format_rational(mag)} e_{idx + 1}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _use_color(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def _status(ok: bool, color: bool) -> str:
    word = "PASS" if ok else "FAIL"
    if color:
        return f"\033[{'32' if ok else '31'}m{word}\033[0m"
    return word


def _check_lines(checks: list, color: bool, indent: str = "  ") -> list:
    lines = []
    for c in checks:
        status = "SKIP" if c.get("skipped") else _status(c["passed"], color)
        line = f"{indent}[{status}] {c['label']:<14} {c['name']}"
        if c["witness"]:
            line += f"  (witness {tuple(c['witness'])})"
        lines.append(line)
        if c.get("note"):
            lines.append(f"{indent}         note: {c['note']}")
    return lines


def _matrix_lines(rows: list, indent: str = "    ") -> list:
    width = max(len(x) for r in rows for x in r)
    return [indent + "  ".join(x.rjust(width) for x in r) for r in rows]


def _vec(n: int, entries: dict) -> list:
    return [entries.get(w, ZERO) for w in range(n)]


def render_text(report: dict, color: bool = False) -> str:
    n = report["input"]["dimension"]
    lines = [f"lpkenmotsu {report['tool']['version']}  input {report['input']['name']} "
             f"(n = {n}, sha256 {report['input']['digest'][:16]})", ""]
    for s in report["sections"]:
        name = s["section"]
        lines.append(f"== {name} [{_status(s['passed'], color)}]")
        if name == "structure":
            lines.append("  nu = (" + ", ".join(s["nu"]) + ")")
            lines += _check_lines(s["almost_paracontact"] + s["lp_kenmotsu"], color)
            kp = s["k_paracontact"]
            lines.append(f"  K-paracontact (informational): {'holds' if kp['holds'] else 'does not hold'}")
        elif name == "connection":
            table = {}
            for e in s["gamma"]:
                table.setdefault((e["i"], e["j"]), {})[e["k"] - 1] = Fraction(e["value"])
            for (i, j), comps in sorted(table.items()):
                lines.append(f"  nabla_{{e_{i}}} e_{j} = {format_vector(_vec(n, comps))}")
            lines.append("  all other nabla_{e_i} e_j = 0")
            lines += _check_lines(s["checks"], color)
        elif name == "curvature":
            table = {}
            for e in s["components"]:
                table.setdefault((e["i"], e["j"], e["k"]), {})[e["l"] - 1] = Fraction(e["value"])
            for (i, j, k), comps in sorted(table.items()):
                lines.append(f"  R(e_{i}, e_{j}) e_{k} = {format_vector(_vec(n, comps))}")
            lines.append("  all other R(e_i, e_j) e_k with i < j vanish")
            lines += _check_lines(s["checks"], color)
        elif name == "ricci":
            diag = all(s["ricci"][i][j] == "0" for i in range(n) for j in range(n) if i != j)
            if diag:
                lines += [f"  S(e_{i + 1}, e_{i + 1}) = {s['ricci'][i][i]}" for i in range(n)]
                lines.append("  S(e_i, e_j) = 0 for i != j")
            else:
                lines.append("  S =")
                lines += _matrix_lines(s["ricci"])
            lines.append(f"  r = {s['scalar']}")
            lines.append("  Q =")
            lines += _matrix_lines(s["ricci_operator"])
            lines += _check_lines(s["identities"] + s["lemma"], color)
        elif name == "classification":
            lines.append(f"  S = a g + b nu(x)nu with a = {s['a']}, b = {s['b']}: "
                         f"{'holds' if s['decomposition_holds'] else 'fails'}")
            lines.append(f"  label: {s['label']}")
            lines.append(f"  r = {s['scalar']}, n(n-1) = {s['expected_scalar']}: "
                         f"{'consistent' if s['scalar_consistent'] else 'inconsistent'}")
            lines += [f"  note: {x}" for x in s["notes"]]
        elif name == "soliton":
            lines += soliton_text(s)
        elif name == "theorems":
            lines += theorems_text(s)
        elif name == "discrepancies":
            ref = s.get("reference_example")
            if ref is not None:
                lines.append(f"  reference 5-dim tables: connection {'match' if ref['gamma_match'] else 'MISMATCH'}, "
                             f"curvature {'match' if all(r['match'] for r in ref['riemann']) else 'MISMATCH'}, "
                             f"unlisted components zero: {'yes' if ref['unlisted_riemann_zero'] else 'NO'}, "
                             f"Ricci {'match' if ref['ricci_match'] else 'MISMATCH'}")
            lines += [f"  - {x}" for x in s["notes"]]
        lines.append("")
    lines.append(f"verdict: {_status(report['verdict'], color)}")
    return "\n".join(lines) + "\n"


def soliton_text(s: dict) -> list:
    lines = [f"  {s['equation']}",
             f"  field = {s['field']}, sigma = {s['sigma']}, rho = {s['rho']}, Lambda = {s['lambda']} "
             f"({s['classification']})",
             f"  residual {'vanishes' if s['satisfied'] else 'is nonzero'}:"]
    lines += _matrix_lines(s["residual"])
    z = s.get("zeta_analysis")
    if z:
        lines.append(f"  zeta-soliton: r* = {z['compatible_scalar']}, Lambda* = {z['lambda_star']} ({z['classification']}),"
                     f" Ricci form {'holds' if z['ricci_form_holds'] else 'fails'}")
        lines += [f"  note: {x}" for x in z["notes"]]
    lines += [f"  note: {x}" for x in s["notes"]]
    return lines


def theorems_text(s: dict) -> list:
    lines = []
    t = s.get("rys_constant_r")
    if t:
        lines.append(f"  constant-r RYS: sigma = {t['sigma']}, rho = {t['rho']} -> Lambda = {t['lambda']} "
                     f"({t['classification']})")
    z = s.get("zeta_soliton")
    if z:
        lines.append(f"  zeta-field RYS: r* = {z['compatible_scalar']}, Lambda* = {z['lambda_star']} "
                     f"({z['classification']}; inequality form: {z['inequality_classification']})")
    gf = s.get("gradient_formulas")
    if gf:
        lines.append(f"  gradient RYS at r = {gf['r']}: zeta(v) = {gf['zeta_v']}, nu(F) coefficient = "
                     f"{gf['nu_coefficient']}, F(r) coefficient = {gf['dr_coefficient']}, trivial = {gf['trivial']}")
    lines.append(f"  corollaries (n = {s['n']}):")
    lines.append(f"    {'cor':<4} {'soliton':<26} {'sigma':>5} {'rho':>4} {'Lambda':>8} {'sign':<10} "
                 f"{'stated':>8} {'stated label':<12} match")
    for r in s["corollaries"]:
        lines.append(f"    {r['corollary']:<4} {r['soliton']:<26} {r['sigma']:>5} {r['rho']:>4} {r['lambda']:>8} "
                     f"{r['classification']:<10} {r['stated_lambda']:>8} {r['stated_label']:<12} "
                     f"{'yes' if r['match'] else 'NO'}")
    return lines
