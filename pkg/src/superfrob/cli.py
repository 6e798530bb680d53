"""superfrob command line: every command prints one JSON report on stdout.

Exit status is 0 when every asserted claim passes, 1 when a claim fails and
2 when the input cannot be read; the report names the first failing claim.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .algebra import is_solvable
from .catalog import (check_conjecture_instances, check_family, filiform_form, make_filiform,
                      verify_catalog, verify_examples)
from .catalog.filiform import VARIANTS as FILIFORM_VARIANTS, variant_applies
from .catalog.verify import REPORT_FORMAT, admissible_points, fmt_point, thread_count
from .derivations import SuperLinearMap
from .document import (DocumentError, build_algebra, build_forms, dumps, emit_document,
                       load_document, parse_cocycle, parse_connection, vector_expression)
from .double_extension import (ExtensionData, ExtensionError, decompose, double_extend,
                               normalize_variant as de_variant, round_trip)
from .expr import parse_number, parse_vector
from .forms import (exists_nondegenerate_in_space, is_nondegenerate, solve_closed_antisymmetric_forms,
                    wedge_expression)
from .lagrangian import (LagrangianError, lagrangian_cohomology, normalize_variant as lg_variant,
                         tstar_extend, zero_cochain)

_PARITY = {0: "even", 1: "odd", "mixed": "NH", "zero": "zero"}


class InputError(Exception):
    pass


class Report:
    def __init__(self, command, **params):
        self.doc = {"format": REPORT_FORMAT, "version": __version__, "command": command,
                    "parameters": params, "claims": []}

    def claim(self, name, ok, detail=None):
        item = {"claim": name, "status": "pass" if ok else "fail"}
        if detail is not None:
            item["detail"] = detail
        self.doc["claims"].append(item)
        return ok

    def finish(self, ok=None, first=None):
        if ok is None:
            failed = [c["claim"] + (": " + c["detail"] if isinstance(c.get("detail"), str) else "")
                      for c in self.doc["claims"] if c["status"] == "fail"]
            ok, first = not failed, (failed[0] if failed else None)
        self.doc["ok"] = ok
        self.doc["first_failure"] = first
        return self.doc


# input helpers

def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e.strerror))
    except json.JSONDecodeError as e:
        raise InputError("%s: invalid JSON (line %d, column %d): %s" % (path, e.lineno, e.colno, e.msg))


def _read(path):
    try:
        return load_document(path)
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e.strerror))
    except DocumentError as e:
        raise InputError("%s: %s" % (path, e))


def _build(doc, path):
    try:
        return build_algebra(doc)
    except DocumentError as e:
        raise InputError("%s: %s" % (path, e))


def _load(path):
    doc = _read(path)
    g = _build(doc, path)
    return doc, g


def _concrete_form(doc, g, index=0):
    """A single form of the document; parameters need a 'values' map."""
    try:
        fams = build_forms(doc)
    except DocumentError as e:
        raise InputError(str(e))
    if len(fams) <= index:
        raise InputError("the document has no form")
    fam = fams[index]
    spec = doc.forms[index]
    if fam.nvars:
        vals = spec.get("values")
        if not isinstance(vals, dict) or set(vals) != set(fam.params):
            raise InputError("form %r has parameters %s; give their 'values'"
                             % (spec.get("name", ""), ", ".join(fam.params)))
        point = [parse_number(str(vals[p]), g.field) for p in fam.params]
        return fam.at(point)
    return fam.at([])


def _vector(text, g, env=None):
    try:
        return parse_vector(text, g.field, g.names, env)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError("cannot read vector %r: %s" % (text, e))


def _form_doc(w, names, name="omega"):
    return {"name": name, "parity": _PARITY[w.parity()], "wedge_expression": wedge_expression(w, names)}


# commands

def cmd_verify_catalog(args):
    rep = verify_catalog(args.table, args.samples, args.seed, thread_count())
    rep["version"] = __version__
    return rep


def cmd_check(args):
    r = Report("check", file=args.file)
    doc = _read(args.file)
    try:
        g = _build(doc, args.file)
    except InputError as e:
        r.claim("valid Lie superalgebra", False, str(e))
        return r.finish()
    r.claim("valid Lie superalgebra", True)
    r.doc["algebra"] = {"name": doc.name, "sdim": str(g.sdim), "field": g.field.name}
    qf = False
    for spec, fam in zip(doc.forms, build_forms(doc)):
        tag = spec.get("name", "omega")
        r.claim("%s anti-symmetric" % tag, fam.is_antisymmetric())
        r.claim("%s closed" % tag, fam.is_closed(g))
        par = _PARITY[fam.parity()]
        if spec.get("parity"):
            r.claim("%s parity %s" % (tag, spec["parity"]), par == spec["parity"], par)
        pts = admissible_points(fam)
        nd = bool(pts) and all(is_nondegenerate(fam.at(list(p))) for p in pts)
        r.claim("%s non-degenerate" % tag, nd, [fmt_point(fam.params, p) for p in pts] if fam.nvars else None)
        if fam.nvars:
            r.doc.setdefault("determinants", {})[tag] = fam.det_poly().format(fam.params)
        qf = qf or (nd and fam.is_closed(g) and fam.is_antisymmetric())
    if qf:
        r.claim("solvable", is_solvable(g))
    return r.finish()


def cmd_search_forms(args):
    r = Report("search-forms", file=args.file)
    doc, g = _load(args.file)
    found = {}
    for label, par in (("even", 0), ("odd", 1), ("any", None)):
        space = solve_closed_antisymmetric_forms(g, par)
        res = exists_nondegenerate_in_space(space, g.field, g.sdim)
        item = {"dimension": len(space), "method": res.method}
        if res.exists:
            item["verdict"] = "witness"
            if res.witness is not None:
                item["witness"] = _form_doc(res.witness, g.names)
        elif res.certified_none:
            item["verdict"] = "certified none"
        else:
            item["verdict"] = "unknown"
        found[label] = item
        r.claim("%s forms decided" % label, item["verdict"] != "unknown")
    r.doc["forms"] = found
    if found["any"]["verdict"] == "certified none":
        r.doc["summary"] = "no nondegenerate closed anti-symmetric form (certified)"
    else:
        r.doc["summary"] = "a nondegenerate closed anti-symmetric form exists"
        r.claim("solvable", is_solvable(g))
    expect = doc.extra.get("expect")
    if expect in ("form", "none"):
        got = "none" if found["any"]["verdict"] == "certified none" else "form"
        r.claim("expected %s" % expect, got == expect, got)
    return r.finish()


def _derivation(doc, g, parity):
    spec = doc.extra.get("derivation")
    if not isinstance(spec, dict):
        raise InputError("the document needs a 'derivation' map (basis name -> image)")
    n = g.n
    M = [[g.field.zero] * n for _ in range(n)]
    idx = {nm: i for i, nm in enumerate(g.names)}
    for key, text in spec.items():
        if key not in idx:
            raise InputError("derivation: unknown basis vector %r" % key)
        v = _vector(str(text), g)
        for k, x in enumerate(v):
            M[k][idx[key]] = x
    return SuperLinearMap(M, parity, g.field)


def cmd_extend_double(args):
    variant = de_variant(args.variant)
    r = Report("extend double", file=args.file, variant=variant)
    doc, g = _load(args.file)
    w = _concrete_form(doc, g)
    D = _derivation(doc, g, 0 if variant.startswith("ev") else 1)
    lam = parse_number(str(doc.extra.get("lambda", "0")), g.field)
    wit = None
    if args.witness.upper() != "AUTO":
        wit = _vector(args.witness, g)
    elif "witness" in doc.extra and not args.auto_only:
        wit = _vector(str(doc.extra["witness"]), g)
    try:
        res = double_extend(ExtensionData(variant, g, w, D, lam, wit))
    except ExtensionError as e:
        r.claim("extension exists", False, str(e))
        return r.finish()
    r.claim("extension exists", True)
    for k, v in sorted(res.checks.items()):
        r.claim(k, v)
    r.doc["witness"] = vector_expression(res.data.witness, g.names, g.field)
    r.doc["result"] = emit_document(res.algebra, [], name=args.name or res.algebra.name)
    r.doc["result"]["forms"] = [_form_doc(res.form, res.algebra.names)]
    return r.finish()


def cmd_extend_tstar(args):
    variant = lg_variant(args.variant)
    r = Report("extend tstar", file=args.file, variant=variant)
    doc, h = _load(args.file)
    try:
        nab = parse_connection(_read_json(args.connection), h)
        A = parse_cocycle(_read_json(args.cocycle), h) if args.cocycle else zero_cochain(h.n, 2, h.field)
    except (DocumentError, ValueError) as e:
        raise InputError(str(e))
    try:
        ext = tstar_extend(h, nab, A, variant)
    except LagrangianError as e:
        r.claim("extension exists", False, str(e))
        return r.finish()
    r.claim("extension exists", True)
    for k, v in sorted(ext.checks.items()):
        r.claim(k, v)
    g = ext.algebra
    r.doc["result"] = emit_document(g, [], {"ideal": [g.unit(k) for k in ext.m_pos],
                                            "complement": [g.unit(k) for k in ext.h_pos]},
                                    name=args.name or g.name)
    r.doc["result"]["forms"] = [_form_doc(ext.form, g.names)]
    return r.finish()


def cmd_decompose(args):
    variant = de_variant(args.variant)
    r = Report("decompose", file=args.file, variant=variant, x=args.x)
    doc, g = _load(args.file)
    w = _concrete_form(doc, g)
    x = _vector(args.x, g)
    try:
        dec = decompose(g, w, x, variant)
    except ExtensionError as e:
        r.claim("decomposition exists", False, str(e))
        return r.finish()
    r.claim("decomposition exists", True)
    r.claim("round trip", round_trip(g, w, x, variant))
    d = dec.data
    base = d.base
    out = emit_document(base, [], name="a")
    out["forms"] = [_form_doc(d.form, base.names)]
    out["derivation"] = {base.names[j]: vector_expression([d.D.M[k][j] for k in range(base.n)], base.names,
                                                          g.field) for j in range(base.n)}
    out["lambda"] = g.field.format(d.lam)
    out["witness"] = vector_expression(d.witness, base.names, g.field)
    r.doc["base"] = out
    r.doc["basis"] = {"x": vector_expression(x, g.names, g.field),
                      "x*": vector_expression(dec.xstar, g.names, g.field),
                      "a": [vector_expression(v, g.names, g.field) for v in dec.base_basis]}
    return r.finish()


def cmd_cohomology(args):
    variant = lg_variant(args.variant)
    r = Report("cohomology", file=args.file, variant=variant)
    doc, h = _load(args.file)
    try:
        nab = parse_connection(_read_json(args.connection), h)
    except (DocumentError, ValueError) as e:
        raise InputError(str(e))
    try:
        blocks = lagrangian_cohomology(h, nab, variant)
    except LagrangianError as e:
        r.claim("connection flat and torsion free", False, str(e))
        return r.finish()
    r.claim("connection flat and torsion free", True)
    r.doc["cohomology"] = {_PARITY[p]: b.as_dict() for p, b in sorted(blocks.items())}
    return r.finish()


def cmd_filiform(args):
    n, m = args.n, args.m
    r = Report("filiform", n=n, m=m, form=args.form)
    try:
        g = make_filiform(n, m)
    except ValueError as e:
        raise InputError(str(e))
    variants = [args.form] if args.form else [v for v in FILIFORM_VARIANTS if variant_applies(n, m, v)]
    fams = []
    for v in variants:
        if not variant_applies(n, m, v):
            raise InputError("form %s does not apply to L^{%d,%d}" % (v, n, m))
        fams.append(filiform_form(n, m, v))
        res = check_family(n, m, v)
        for key, label in (("anti_symmetric", "anti-symmetric"), ("closed", "closed"), ("parity", "parity"),
                           ("non_degenerate", "non-degenerate off the constraint locus"),
                           ("degenerate_off_locus", "degenerate at lam = 0"), ("solvable", "solvable")):
            r.claim("%s %s" % (v, label), res[key])
    r.doc["document"] = emit_document(g, fams)
    return r.finish()


def cmd_conjecture(args):
    rep = check_conjecture_instances(args.max_total)
    r = Report("conjecture-check", max_total=args.max_total)
    r.doc["claims"] = rep["claims"]
    r.doc["survey"] = rep["survey"]
    return r.finish()


def cmd_examples(args):
    rep = verify_examples(args.max_n)
    r = Report("examples", max_n=args.max_n)
    r.doc["examples"] = rep["examples"]
    return r.finish(rep["ok"], rep["first_failure"])


def build_parser():
    p = argparse.ArgumentParser(prog="superfrob", description="Quasi-Frobenius Lie superalgebras: "
                                "catalog checks, closed forms, double and T*-extensions.")
    p.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify-catalog", help="check every catalog row")
    s.add_argument("--table", type=int, action="append", choices=range(1, 7), help="repeatable")
    s.add_argument("--samples", type=int, default=3)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify_catalog)

    s = sub.add_parser("check", help="validate a document and its forms")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("search-forms", help="find or rule out non-degenerate closed forms")
    s.add_argument("file")
    s.set_defaults(func=cmd_search_forms)

    s = sub.add_parser("extend", help="build a double or (Pi)T*-extension")
    ext = s.add_subparsers(dest="kind", required=True)
    d = ext.add_parser("double")
    d.add_argument("file")
    d.add_argument("--variant", required=True, help="evxosp, odxosp, evxpe or odxpe")
    d.add_argument("--witness", default="AUTO", help="AUTO or a vector expression")
    d.add_argument("--auto-only", action="store_true", help="ignore a witness stored in the document")
    d.add_argument("--name")
    d.set_defaults(func=cmd_extend_double)
    t = ext.add_parser("tstar")
    t.add_argument("file")
    t.add_argument("--connection", required=True)
    t.add_argument("--cocycle")
    t.add_argument("--variant", default="tstar", help="tstar or pitstar")
    t.add_argument("--name")
    t.set_defaults(func=cmd_extend_tstar)

    s = sub.add_parser("decompose", help="recover double-extension data from a form and a vector x")
    s.add_argument("file")
    s.add_argument("--x", required=True)
    s.add_argument("--variant", required=True)
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("cohomology", help="Lagrangian extension cohomology dimensions")
    s.add_argument("file")
    s.add_argument("--connection", required=True)
    s.add_argument("--variant", default="tstar")
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("filiform", help="L^{n,m} with its closed form families")
    s.add_argument("n", type=int)
    s.add_argument("m", type=int)
    s.add_argument("--form", choices=FILIFORM_VARIANTS)
    s.set_defaults(func=cmd_filiform)

    s = sub.add_parser("conjecture-check", help="non-existence checks on L^{n,m}, n and m even")
    s.add_argument("--max-total", type=int, default=12)
    s.set_defaults(func=cmd_conjecture)

    s = sub.add_parser("examples", help="rebuild the worked extension examples")
    s.add_argument("--max-n", type=int, default=7)
    s.set_defaults(func=cmd_examples)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep = args.func(args)
        code = 0 if rep["ok"] else 1
    except (InputError, ValueError) as e:
        cmd = args.command + (" " + args.kind if getattr(args, "kind", None) else "")
        rep = Report(cmd).finish(False, "input: %s" % e)
        rep["error"] = str(e)
        code = 2
    sys.stdout.write(dumps(rep))
    if not rep["ok"]:
        print("superfrob: %s failed: %s" % (rep["command"], rep["first_failure"]), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
