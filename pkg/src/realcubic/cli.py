"""Command-line driver.

Every subcommand writes a single JSON document (or DOT graph) to stdout or
to --output.  Exit code 1 flags bad input or a precondition failure, with a
structured JSON error; exit code 2 flags a failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import coxeter, finitegrp, gluing, involution, lattice, vinberg

SCHEMA = 1

_FORM_NAMES = tuple(f"psi{j}" for j in range(5))


class CliError(Exception):
    def __init__(self, message: str, code: int = 1) -> None:
        super().__init__(message)
        self.code = code


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.handler(args)
    except CliError as exc:
        _emit(json.dumps({"schema": SCHEMA, "error": str(exc)},
                         sort_keys=True, indent=2), getattr(args, "output", None))
        return exc.code
    except gluing.GluingError as exc:
        _emit(json.dumps({"schema": SCHEMA, "error": str(exc)},
                         sort_keys=True, indent=2), getattr(args, "output", None))
        return 2
    except (involution.InvolutionError, coxeter.AngleError,
            vinberg.VinbergCapError, ValueError) as exc:
        _emit(json.dumps({"schema": SCHEMA, "error": str(exc)},
                         sort_keys=True, indent=2), getattr(args, "output", None))
        return 1
    _emit(payload, getattr(args, "output", None))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="realcubic",
        description="Exact reflection-group computations for the moduli of "
                    "real cubic surfaces")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str, form: bool = False,
            fmt: bool = False) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--output", help="write the artifact to this path")
        if form:
            p.add_argument("--form", required=True,
                           help="psi0..psi4, or a JSON gram-matrix file")
        if fmt:
            p.add_argument("--format", choices=("json", "dot", "text"),
                           default="json")
        return p

    add("vinberg", _cmd_vinberg, "simple roots and diagram of a form",
        form=True, fmt=True)
    add("euler", _cmd_euler, "orbifold Euler characteristic and volume",
        form=True)
    p = add("classify", _cmd_classify, "classify an anti-involution")
    p.add_argument("--matrix-file", required=True,
                   help="JSON 5x5 matrix of [a, b] Eisenstein pairs")
    p = add("discriminant", _cmd_discriminant,
            "discriminant walls and rank-2 systems", form=True)
    p.add_argument("--bound", type=int, default=3)
    add("monodromy", _cmd_monodromy, "monodromy group on the lines", form=True)
    add("lines", _cmd_lines, "real line and tritangent counts", form=True)
    add("glue", _cmd_glue, "assemble the glued polyhedron and verify it",
        fmt=True)
    add("certify", _cmd_certify, "nonarithmeticity certificate")
    add("tables", _cmd_tables, "regenerate all tabulated data as one bundle")
    return parser


def _emit(payload: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)


def _form_j(args) -> int:
    if args.form in _FORM_NAMES:
        return int(args.form[-1])
    raise CliError(f"unknown form {args.form!r}; expected one of "
                   f"{', '.join(_FORM_NAMES)}")


def _load_form(args) -> tuple[lattice.ZForm, str | list]:
    if args.form in _FORM_NAMES:
        return lattice.psi(int(args.form[-1])), args.form
    try:
        with open(args.form, encoding="utf-8") as fh:
            data = json.load(fh)
        form = lattice.ZForm.from_json(data)
    except OSError as exc:
        raise CliError(f"unknown form {args.form!r}: {exc}") from exc
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"bad gram file {args.form!r}: {exc}") from exc
    return form, [list(r) for r in form.gram]


def _dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def _bond_name(label: coxeter.Bond) -> str:
    return label.name.lower()


def _diagram_json(d: coxeter.CoxeterDiagram) -> dict:
    return {
        "nodes": [{"name": n, "norm": q} for n, q in zip(d.names, d.norms)],
        "bonds": [{"between": [d.names[a], d.names[b]], "label": _bond_name(lab)}
                  for a, b, lab in sorted(d.bonds)],
    }


def _cmd_vinberg(args) -> str:
    form, form_desc = _load_form(args)
    if not form.is_hyperbolic():
        raise CliError("form must have hyperbolic signature (n-1, 1)")
    roots, diagram = vinberg.run(form)
    if args.format == "dot":
        return diagram.dot("chamber")
    doc = {
        "schema": SCHEMA,
        "form": form_desc,
        "roots": [list(r) for r in roots],
        "diagram": _diagram_json(diagram),
    }
    if args.format == "text":
        lines = [f"form {form_desc}: {len(roots)} simple roots"]
        lines += ["  " + " ".join(f"{c:3d}" for c in r) for r in roots]
        return "\n".join(lines)
    return _dumps(doc)


def _cmd_euler(args) -> str:
    form, form_desc = _load_form(args)
    roots, diagram = vinberg.run(form)
    chamber_chi = coxeter.euler_characteristic(diagram)
    delta = len(coxeter.diagram_automorphisms(diagram))
    chi = chamber_chi / delta
    volume = coxeter.volume_from_chi(chi)
    terms = coxeter.euler_characteristic_terms(diagram)
    doc = {
        "schema": SCHEMA,
        "form": form_desc,
        "chi": str(chi),
        "chi_chamber": str(chamber_chi),
        "diagram_automorphisms": delta,
        "volume": round(volume, 6),
        "partial_sums": {str(k): str(v) for k, v in terms.items()},
    }
    return _dumps(doc)


def _cmd_classify(args) -> str:
    try:
        with open(args.matrix_file, encoding="utf-8") as fh:
            data = json.load(fh)
        rows = [[involution.Eisenstein(a, b) for a, b in row] for row in data]
    except (OSError, TypeError, ValueError) as exc:
        raise CliError(f"bad matrix file: {exc}") from exc
    anti = involution.AntiInvolution(rows)
    cls = involution.classify_anti_involution(anti)
    inv = involution.eigenspace_invariants(anti)
    doc = {
        "schema": SCHEMA,
        "class": {"j": cls.j, "sign": cls.sign},
        "eigenspaces": {
            "fixed": {"dimension": inv.fixed_dim, "determinant": inv.fixed_det},
            "negated": {"dimension": inv.negated_dim,
                        "determinant": inv.negated_det},
        },
    }
    if anti.is_involution:
        fl = involution.fixed_lattice_gram(anti)
        doc["fixed_lattice"] = {"gram": [list(r) for r in fl.gram.gram],
                                "isometric_to": f"psi{fl.matches}"}
    return _dumps(doc)


def _cmd_discriminant(args) -> str:
    form, form_desc = _load_form(args)
    norm13, systems = involution.discriminant_components(form, args.bound)
    doc = {
        "schema": SCHEMA,
        "form": form_desc,
        "bound": args.bound,
        "hyperplane_walls": [list(r) for r in norm13],
        "rank2_systems": [
            {"short_roots": [list(r) for r in s.short_roots],
             "long_roots": [list(r) for r in s.long_roots]}
            for s in systems
        ],
    }
    return _dumps(doc)


def _cmd_monodromy(args) -> str:
    j = _form_j(args)
    group = finitegrp.monodromy_group(j)
    name = finitegrp.identify_group(group)
    pts = involution.plus_points()
    doc = {
        "schema": SCHEMA,
        "form": f"psi{j}",
        "generators": [[list(row) for row in g] for g in group.generators],
        "order": group.order,
        "identified": name,
        "fingerprint": {
            "abelianization": list(group.abelianization),
            "derived_series_orders": list(group.derived_series_orders),
            "element_orders": [list(p) for p in group.element_orders],
        },
        "orbit_sizes": {
            "plus_points": [len(o) for o in finitegrp.orbits(group, pts)],
            "bases": [len(o) for o in
                      finitegrp.base_orbits(group, involution.bases())],
        },
    }
    return _dumps(doc)


def _cmd_lines(args) -> str:
    j = _form_j(args)
    lines, tritangents = involution.count_real_lines_tritangents(
        involution.InvolutionClass(j, 1))
    doc = {
        "schema": SCHEMA,
        "form": f"psi{j}",
        "real_lines": lines,
        "real_tritangent_planes": tritangents,
    }
    return _dumps(doc)


def _root_json(v) -> list:
    return [[gluing._frac_json(x.a), gluing._frac_json(x.b)] for x in v]


def _matrix_json(m: gluing.RealQuadMatrix) -> list:
    return [_root_json(row) for row in m.rows]


def _cmd_glue(args) -> str:
    q = gluing.assemble_q()
    if args.format == "dot":
        return q.diagram.dot("glued_polyhedron")
    tau = gluing.side_pairing_tau(q)
    tau_prime = gluing.side_pairing_tau_prime(q)
    report = gluing.verify_poincare(q, tau, tau_prime)
    full, half = gluing.presentation_pgamma_r(q)
    doc = {
        "schema": SCHEMA,
        "ring": "Z[sqrt3]",
        "walls": [{"name": w.name, "root": _root_json(w.root), "norm": w.norm,
                   "carries": list(w.carries)} for w in q.walls],
        "diagram": _diagram_json(q.diagram),
        "side_pairings": {"tau": _matrix_json(tau),
                          "tau_prime": _matrix_json(tau_prime),
                          "symmetry": _matrix_json(q.chambers.symmetry)},
        "poincare": {
            "eckardt_angles_ok": report.eckardt_angles_ok,
            "discriminant_disjoint_ok": report.discriminant_disjoint_ok,
            "discriminant_orthogonal_ok": report.discriminant_orthogonal_ok,
            "pairing_ok": report.pairing_ok,
            "pairing_prime_ok": report.pairing_prime_ok,
            "completeness": report.completeness,
            "failures": list(report.failures),
        },
        "presentation": {
            "generators": list(full.generators),
            "relations": [list(r) for r in full.relations],
            "index2_generators": list(half.generators),
            "index2_relations": [list(r) for r in half.relations],
        },
    }
    if not report.passed:
        raise CliError("verification failed: " + "; ".join(report.failures),
                       code=2)
    if args.format == "text":
        out = ["glued polyhedron with walls:"]
        out += [f"  {w.name}: norm {w.norm}" for w in q.walls]
        out.append("poincare conditions passed")
        return "\n".join(out)
    return _dumps(doc)


def _cmd_certify(args) -> str:
    cert = gluing.nonarithmeticity_certificate()
    gamma_checks = gluing.verify_gamma_lemma()
    if not all(gamma_checks.values()):
        raise CliError("chamber-matching isometry failed verification", code=2)
    doc = cert.to_json()
    doc["chamber_matching_checks"] = gamma_checks
    return _dumps(doc)


def _cmd_tables(args) -> str:
    table1 = []
    for j in range(5):
        lines, tritangents = involution.count_real_lines_tritangents(
            involution.InvolutionClass(j, 1))
        group = finitegrp.monodromy_group(j)
        table1.append({
            "j": j,
            "real_lines": lines,
            "real_tritangent_planes": tritangents,
            "monodromy": finitegrp.identify_group(group),
            "monodromy_order": group.order,
        })
    table2 = []
    total = Fraction(0)
    chis = []
    for j in range(5):
        diagram = vinberg.standard_diagram(j)
        chamber_chi = coxeter.euler_characteristic(diagram)
        delta = len(coxeter.diagram_automorphisms(diagram))
        chi = chamber_chi / delta
        chis.append(chi)
        total += chi
    for j in range(5):
        table2.append({
            "j": j,
            "chi": str(chis[j]),
            "volume": round(coxeter.volume_from_chi(chis[j]), 5),
            "fraction_percent": round(float(chis[j] / total) * 100, 2),
        })
    q = gluing.assemble_q()
    table3 = [{"name": w.name, "root": _root_json(w.root), "norm": w.norm,
               "carries": list(w.carries)} for w in q.walls]
    chambers = {}
    for j in range(5):
        diagram = vinberg.standard_diagram(j)
        roots = vinberg.standard_chamber_lambda(j)
        chambers[f"psi{j}"] = {
            "roots": [lattice.evector_to_json(r) for r in roots],
            "diagram": _diagram_json(diagram),
        }
    doc = {
        "schema": SCHEMA,
        "lines_tritangents_monodromy": table1,
        "chi_volume": table2,
        "glued_polyhedron_roots": table3,
        "chambers": chambers,
        "glued_diagram": _diagram_json(q.diagram),
    }
    return _dumps(doc)


if __name__ == "__main__":
    sys.exit(main())
