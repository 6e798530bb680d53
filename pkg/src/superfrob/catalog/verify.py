"""Checks of catalog rows against exact computation."""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor

from ..algebra import is_solvable, odd_bracket_trivial
from ..document import DocumentError, build_algebra, build_forms
from ..field import QQ
from ..forms import (exists_nondegenerate_in_space, is_nondegenerate,
                     solve_closed_antisymmetric_forms)
from .entries import CatalogEntry, load_catalog

THREADS_ENV = "SUPERFROB_THREADS"
REPORT_FORMAT = "superfrob-report/1"

_PARITY = {0: "even", 1: "odd", "mixed": "NH", "zero": "zero"}
_SEEDS = [(1, 1, 1, 1, 1), (2, -1, 3, 1, -2), (-1, 3, 2, -2, 1), (3, 2, -1, 1, 2), (1, -2, -3, 2, 3)]


def thread_count(default: int = 1) -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, default)))
    except ValueError:
        return default


def fmt_point(names, point) -> dict:
    return {n: QQ.format(x) for n, x in zip(names, point)}


def admissible_points(fam, count: int = 3) -> list:
    """Deterministic small-integer parameter points where every constraint is nonzero."""
    k = fam.nvars
    if k == 0:
        return [()]
    cands = [tuple(QQ(x) for x in s[:k]) for s in _SEEDS]
    cands += [tuple(QQ(x) for x in p) for p in itertools.product((1, 2, -1, 3, -2), repeat=k)]
    out = []
    for pt in cands:
        if pt not in out and fam.admissible(list(pt)):
            out.append(pt)
            if len(out) == count:
                break
    return out


def violating_point(fam):
    """A constraint-violating point with as few zero coordinates as possible."""
    k = fam.nvars
    if k == 0 or not fam.constraints:
        return None
    pts = [p for p in itertools.product(range(-2, 3), repeat=k) if any(p)]
    pts.sort(key=lambda p: (sum(1 for x in p if x == 0), sum(abs(x) for x in p), [-x for x in p]))
    for p in pts:
        pt = [QQ(x) for x in p]
        if not fam.admissible(pt):
            return tuple(pt)
    return None


def constraint_locus_mismatch(fam, radius: int = 2):
    """Grid points where (det == 0) and (some constraint == 0) disagree."""
    k = fam.nvars
    if k == 0:
        return []
    det = fam.det_poly()
    bad = []
    for p in itertools.product(range(-radius, radius + 1), repeat=k):
        pt = [QQ(x) for x in p]
        if bool(det.evaluate(pt)) != fam.admissible(pt):
            bad.append(tuple(pt))
    return bad


def printed_status(entry: CatalogEntry, point=()) -> dict:
    """What goes wrong with the row as printed (informational)."""
    doc = entry.printed_document()
    params = dict(zip(entry.param_names, point))
    try:
        g = build_algebra(doc, params)
    except DocumentError as e:
        return {"valid": False, "error": str(e)}
    out = {"valid": True, "forms": []}
    for fam in build_forms(doc, params):
        det = fam.det_poly()
        out["forms"].append({"closed": fam.is_closed(g), "anti_symmetric": fam.is_antisymmetric(),
                             "det": det.format(fam.params)})
    return out


def lemma_dimension_ok(sdim, parity) -> bool:
    if parity == 0:
        return sdim.n_even % 2 == 0
    return sdim.n_even == sdim.n_odd


class _Claims:
    def __init__(self):
        self.items = []

    def add(self, name, ok, detail=None):
        item = {"claim": name, "status": "n/a" if ok is None else ("pass" if ok else "fail")}
        if detail is not None:
            item["detail"] = detail
        self.items.append(item)
        return ok


def verify_entry(entry: CatalogEntry, samples: int = 3, seed: int = 0) -> dict:
    """Check one row at several algebra-parameter samples.

    Claims per sample: valid algebra, odd-odd brackets as the table says,
    solvable, the homogeneous-form dimension rule; per listed form: anti-
    symmetric, closed, parity, non-degenerate at admissible points and
    degenerate at a violating one; for "None" rows: the determinant of a
    generic closed anti-symmetric form is identically zero.
    """
    claims = _Claims()
    notes = []
    points = entry.sample_points(samples, seed)
    if entry.has_parameters and len(points) < samples:
        notes.append("only %d admissible samples found" % len(points))
    for pt in points:
        at = "" if not pt else " at %s" % ",".join("%s=%s" % kv for kv in fmt_point(entry.param_names, pt).items())
        try:
            g = entry.algebra(pt)
        except DocumentError as e:
            claims.add("valid" + at, False, str(e))
            continue
        claims.add("valid" + at, True)
        trivial = odd_bracket_trivial(g)
        claims.add("odd brackets %s%s" % (entry.odd_brackets, at), trivial == (entry.odd_brackets == "zero"))
        claims.add("solvable" + at, is_solvable(g))
        for par in (0, 1):
            res = exists_nondegenerate_in_space(solve_closed_antisymmetric_forms(g, par), g.field, g.sdim)
            if res.exists:
                claims.add("%s form dimension rule%s" % (_PARITY[par], at), lemma_dimension_ok(g.sdim, par),
                           "sdim %s" % g.sdim)
        if entry.claim == "none":
            res = exists_nondegenerate_in_space(solve_closed_antisymmetric_forms(g), g.field, g.sdim)
            claims.add("no closed non-degenerate form" + at, res.certified_none,
                       {"method": res.method, "dimension": res.dimension})
            continue
        for spec, fam in zip(entry.form_specs, entry.forms(pt)):
            tag = spec.get("name", "omega")
            claims.add("%s anti-symmetric%s" % (tag, at), fam.is_antisymmetric())
            claims.add("%s closed%s" % (tag, at), fam.is_closed(g))
            par = _PARITY[fam.parity()]
            claims.add("%s parity %s%s" % (tag, spec.get("parity"), at), par == spec.get("parity"), par)
            adm = admissible_points(fam)
            nd = [is_nondegenerate(fam.at(list(p))) for p in adm]
            claims.add("%s non-degenerate at admissible points%s" % (tag, at), bool(adm) and all(nd),
                       [fmt_point(fam.params, p) for p in adm])
            vp = violating_point(fam)
            if vp is None:
                claims.add("%s degenerate at a violating point%s" % (tag, at), None, "no parameters or constraints")
            else:
                claims.add("%s degenerate at a violating point%s" % (tag, at),
                           not is_nondegenerate(fam.at(list(vp))), fmt_point(fam.params, vp))
            det = fam.det_poly()
            info = {"form": tag, "det": det.format(fam.params),
                    "det_variables": sorted(fam.params[i] for i in det.variables())}
            if pt:
                info["at"] = fmt_point(entry.param_names, pt)
            bad = constraint_locus_mismatch(fam)
            if bad:
                info["locus_mismatch"] = {"count": len(bad), "example": fmt_point(fam.params, bad[0])}
            notes.append(info)
    failed = [c["claim"] for c in claims.items if c["status"] == "fail"]
    out = {"id": entry.id, "name": entry.name, "table": entry.table,
           "samples": [fmt_point(entry.param_names, p) for p in points if p],
           "claims": claims.items, "ok": not failed, "first_failure": failed[0] if failed else None}
    if notes:
        out["notes"] = notes
    if entry.note:
        out["remark"] = entry.note
    if entry.printed_row is not True:
        out["printed_row"] = entry.printed_row
    if entry.printed:
        out["printed"] = printed_status(entry, points[0])
    return out


def _verify_one(args):
    key, samples, seed = args
    entry = next(e for e in load_catalog() if e.id == key)
    return verify_entry(entry, samples, seed)


def verify_catalog(tables=None, samples: int = 3, seed: int = 0, threads: int | None = None) -> dict:
    """Verify every row; results are merged in catalog order whatever the worker count."""
    entries = load_catalog(tables)
    jobs = [(e.id, samples, seed) for e in entries]
    threads = thread_count() if threads is None else threads
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_verify_one, jobs))
    else:
        results = [verify_entry(e, samples, seed) for e in entries]
    failed = [r for r in results if not r["ok"]]
    return {
        "format": REPORT_FORMAT,
        "command": "verify-catalog",
        "parameters": {"tables": sorted({e.table for e in entries}), "samples": samples, "seed": seed},
        "ok": not failed,
        "first_failure": None if not failed else "%s: %s" % (failed[0]["id"], failed[0]["first_failure"]),
        "summary": {"entries": len(results), "passed": len(results) - len(failed), "failed": len(failed),
                    "printed_rows": {str(t): sum(1 for e in entries if e.table == t and e.printed_row is True)
                                     for t in sorted({e.table for e in entries})}},
        "entries": results,
    }
