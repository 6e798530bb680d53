"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` or ``python tests/test_acceptance.py``.
"""
import random
import sys
import time

import pytest

from superfrob.algebra import SuperDim, is_solvable
from superfrob.catalog import (check_family, closed_form_verdict, family_cases, instantiate, load_catalog,
                               verify_catalog, verify_examples)
from superfrob.double_extension import VARIANTS, decompose, double_extend, round_trip
from superfrob.field import QQ
from superfrob.forms import (BilinearForm, antisymmetric_basis, exists_nondegenerate_in_space, is_nondegenerate,
                             solve_closed_antisymmetric_forms)
from superfrob.lagrangian import build_extension, extension_form_closed, lagrangian_cohomology

from support import (antisymmetric_even_cochain, cyclic_condition_holds, flat_pool, form_closed_oracle,
                     h2l_oracle, module_action, seeded_extension_data)


def _timed(limit, fn):
    t = time.perf_counter()
    ok, detail = fn()
    dt = time.perf_counter() - t
    if limit is not None and dt >= limit:
        ok = False
        detail += "; took %.1f s, limit %d s" % (dt, limit)
    return ok, "%s (%.1f s)" % (detail, dt)


def c1_verify_catalog():
    rep = verify_catalog()
    s = rep["summary"]
    return rep["ok"], "%d/%d rows pass" % (s["passed"], s["entries"])


def c2_none_rows_certified():
    bad = []
    n = 0
    for e in load_catalog():
        if e.claim != "none":
            continue
        pts = e.sample_points(3)
        if e.has_parameters and len(pts) < 3:
            bad.append("%s: %d samples" % (e.id, len(pts)))
        for pt in pts:
            g, _ = instantiate(e, pt)
            res = exists_nondegenerate_in_space(solve_closed_antisymmetric_forms(g), g.field, g.sdim)
            n += 1
            if not (res.certified_none and res.method == "symbolic determinant"):
                bad.append("%s at %s: %s" % (e.id, pt, res.method))
    return not bad, "%d instances certified%s" % (n, "; " + bad[0] if bad else "")


def c3_solvable():
    bad = []
    n = 0
    for e in load_catalog():
        for pt in e.sample_points(3):
            g, _ = instantiate(e, pt)
            n += 1
            if not is_solvable(g):
                bad.append(e.id)
    return not bad, "%d instances solvable%s" % (n, "; not: " + bad[0] if bad else "")


def c4_dimension_rule():
    # catalog witnesses, then every small superdimension exhaustively
    bad = []
    n = 0
    for e in load_catalog():
        for pt in e.sample_points(2):
            g, fams = instantiate(e, pt)
            for fam in fams:
                w = fam.at([QQ(1)] * fam.nvars) if fam.admissible([QQ(1)] * fam.nvars) else None
                if w is None or not is_nondegenerate(w):
                    continue
                par = w.parity()
                n += 1
                if par == 0 and g.sdim.n_even % 2:
                    bad.append(e.id)
                if par == 1 and g.sdim.n_even != g.sdim.n_odd:
                    bad.append(e.id)
    for ne in range(5):
        for no in range(5):
            sd = SuperDim(ne, no)
            if not sd.n:
                continue
            for par in (0, 1):
                forms = [BilinearForm(sd, V, QQ) for V in antisymmetric_basis(sd, QQ, par)]
                res = exists_nondegenerate_in_space(forms, QQ, sd)
                want = ne % 2 == 0 if par == 0 else ne == no
                n += 1
                if res.exists != want or (not want and not res.certified_none):
                    bad.append("%d|%d parity %d" % (ne, no, par))
    return not bad, "%d cases%s" % (n, "; " + bad[0] if bad else "")


def c5_double_extensions():
    bad = []
    total = 0
    for v in VARIANTS:
        cases = seeded_extension_data(v, 50, seed=1)
        if len(cases) < 50:
            bad.append("%s: only %d cases" % (v, len(cases)))
        for d in cases:
            total += 1
            res = double_extend(d)
            g, w = res.algebra, res.form
            x = g.unit(res.x_index)
            back = decompose(g, w, x, v).data
            exact = (back.base.c == d.base.c and back.form.V == d.form.V and back.D.M == d.D.M
                     and back.lam == d.lam and list(back.witness) == list(d.witness))
            if not (all(res.checks.values()) and exact and round_trip(g, w, x, v)):
                bad.append(v)
    return not bad, "%d extensions round-trip%s" % (total, "; " + bad[0] if bad else "")


def c6_examples():
    rep = verify_examples(7)
    return rep["ok"], "%d examples%s" % (len(rep["examples"]),
                                          "; " + rep["first_failure"] if rep["first_failure"] else "")


def c7_closed_iff_cyclic():
    rng = random.Random(7)
    pool = flat_pool()
    seen = {True: 0, False: 0}
    bad = 0
    t = 0
    while min(seen.values()) < 50 and t < 1000:
        t += 1
        name, h, nab = rng.choice(pool)
        variant = rng.choice(["tstar", "pitstar"])
        _, mp = module_action(h, nab, variant)
        A = antisymmetric_even_cochain(h, mp, rng, lagrangian=t % 2 == 0)
        cyc = cyclic_condition_holds(h, A)
        g, w, _, _ = build_extension(h, nab, A, variant)
        if extension_form_closed(h, nab, A, variant) != cyc or form_closed_oracle(g.c, g.parities, w.V) != cyc:
            bad += 1
        seen[cyc] += 1
    ok = not bad and seen[True] >= 50 and seen[False] >= 50
    return ok, "%d cyclic, %d not cyclic, %d mismatches" % (seen[True], seen[False], bad)


def c8_h2l_oracle():
    pool = flat_pool()
    bad = []
    n = 0
    for name, h, nab in pool:
        for variant in ("tstar", "pitstar"):
            blk = lagrangian_cohomology(h, nab, variant)[0]
            n += 1
            if (blk.z2_L, blk.b2_L) != h2l_oracle(h, nab, variant):
                bad.append("%s %s" % (name, variant))
    return not bad and len(pool) >= 10, "%d algebras, %d blocks agree%s" % (
        len(pool), n - len(bad), "; " + bad[0] if bad else "")


def c9_conjecture_instances():
    vs = [closed_form_verdict(4, 6), closed_form_verdict(4, 8)]
    return all(v["verdict"] == "certified no" for v in vs), ", ".join(
        "L^{%d,%d}: %s" % (v["n"], v["m"], v["verdict"]) for v in vs)


def c10_filiform_families():
    cases = family_cases(12)
    bad = ["%d,%d,%s" % c for c in cases if not check_family(*c)["ok"]]
    return not bad, "%d families%s" % (len(cases), "; " + bad[0] if bad else "")


CRITERIA = [
    (1, "verify-catalog passes every row", 30, c1_verify_catalog),
    (2, "None rows certified by the symbolic determinant", 60, c2_none_rows_certified),
    (3, "every catalog algebra is solvable", None, c3_solvable),
    (4, "dimension rule for homogeneous forms", None, c4_dimension_rule),
    (5, "50 seeded double extensions per variant round-trip", 60, c5_double_extensions),
    (6, "worked examples", None, c6_examples),
    (7, "closed form iff cyclic condition", None, c7_closed_iff_cyclic),
    (8, "H^2_L against an independent rank oracle", None, c8_h2l_oracle),
    (9, "L^{4,6} and L^{4,8} certified no", 120, c9_conjecture_instances),
    (10, "filiform families for n + m <= 12", None, c10_filiform_families),
]


def _line(num, title, ok, detail):
    return "%s criterion %d: %s: %s" % ("PASS" if ok else "FAIL", num, title, detail)


@pytest.mark.parametrize("num,title,limit,fn", CRITERIA, ids=["criterion_%d" % c[0] for c in CRITERIA])
def test_criterion(num, title, limit, fn, capsys):
    ok, detail = _timed(limit, fn)
    with capsys.disabled():
        print("\n" + _line(num, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for num, title, limit, fn in CRITERIA:
        ok, detail = _timed(limit, fn)
        failed += not ok
        print(_line(num, title, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
