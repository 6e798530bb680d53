"""Double extensions of quasi-Frobenius Lie superalgebras and their converse.

Four variants, named by the parity of the derivation and of the form:

    ev-osp   even D, even form (x, x* even)
    od-osp   odd D,  even form (x, x* odd)
    ev-pe    even D, odd form  (x odd, x* even)
    od-pe    odd D,  odd form  (x even, x* odd)

The extended algebra has basis x, (base basis), x*, listed inside each parity
block in that order.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .algebra import LieSuperalgebra, SuperDim, center, derived_algebra, is_ideal, validate_algebra
from .derivations import SuperLinearMap, adjoint, derivation_residual
from .field import sign
from .forms import (BilinearForm, closedness_violation, is_antisymmetric, is_nondegenerate,
                    orthogonal_complement)
from .linalg import Subspace, solve, nullspace

VARIANTS = ("ev-osp", "od-osp", "ev-pe", "od-pe")


class ExtensionError(ValueError):
    pass


def normalize_variant(name: str) -> str:
    s = name.strip().lower().replace("×", "x").replace("_", "-")
    m = re.match(r"^(ev|od)\s*[-x]?\s*(osp|pe)$", s)
    if not m:
        raise ValueError("unknown variant %r (expected one of %s)" % (name, ", ".join(VARIANTS)))
    return "%s-%s" % m.groups()


def variant_parities(variant: str) -> dict:
    dpar = 0 if variant.startswith("ev") else 1
    wpar = 0 if variant.endswith("osp") else 1
    if variant == "ev-osp":
        px, pxs = 0, 0
    elif variant == "od-osp":
        px, pxs = 1, 1
    elif variant == "ev-pe":
        px, pxs = 1, 0
    else:
        px, pxs = 0, 1
    return {"D": dpar, "form": wpar, "x": px, "xstar": pxs}


@dataclass
class ExtensionData:
    variant: str
    base: LieSuperalgebra
    form: BilinearForm
    D: SuperLinearMap
    lam: object = 0
    witness: list | None = None

    def __post_init__(self):
        self.variant = normalize_variant(self.variant)
        self.lam = self.base.field(self.lam)


@dataclass
class WitnessResult:
    status: str                      # ok | not-a-coboundary | no-admissible-witness
    witness: list | None = None
    kernel: list = dc_field(default_factory=list)
    omega: list | None = None        # values of the 2-form to be matched


@dataclass
class ExtensionResult:
    algebra: LieSuperalgebra
    form: BilinearForm
    data: ExtensionData
    x_index: int
    xstar_index: int
    base_indices: list
    checks: dict


def _phi(data: ExtensionData, a, b):
    w, D = data.form, data.D
    if data.D.parity == 0:
        return w(D(a), b) + w(a, D(b))
    pa = data.base.vector_parity(a) or 0
    return w(D(a), b) + sign(pa) * w(a, D(b))


def omega_matrix(data: ExtensionData, Dstar: SuperLinearMap):
    """Values Omega(e_i, e_j) of the 2-form the witness has to represent."""
    g, w, D = data.base, data.form, data.D
    n = g.n
    if D.parity == 0:
        DD = D.compose(D)
        M = DD + Dstar.compose(D).scale(2) + Dstar.compose(Dstar) + (D + Dstar).scale(data.lam)
    else:
        M = D.compose(D) - Dstar.compose(Dstar)
    return [[w(M(g.unit(i)), g.unit(j)) for j in range(n)] for i in range(n)]


def coboundary_witness(data: ExtensionData) -> WitnessResult:
    """Solve Omega(a, b) = w(W, [a, b]) for an even W (plus the extra linear
    conditions of the odd variants: D^2 = ad_W, D(W) = 0, and D*(W) = 0 when
    the form is odd).
    """
    g, w, D = data.base, data.form, data.D
    f = g.field
    n = g.n
    Dstar = adjoint(D, w, g.parities)
    Om = omega_matrix(data, Dstar)
    ev = [i for i in range(n) if g.parity(i) == 0]
    rows, rhs = [], []
    for a in range(n):
        for b in range(n):
            br = g.c[a][b]
            rows.append([sum((w.V[u][k] * br[k] for k in range(n) if br[k]), f.zero) for u in ev])
            rhs.append(Om[a][b])
    sol = solve(rows, rhs, f, len(ev))
    if sol is None:
        return WitnessResult("not-a-coboundary", omega=Om)
    if D.parity == 1:
        DD = D.compose(D).M
        # D^2 = ad_W: sum_u W_u c[u][j][k] = DD[k][j]
        for j in range(n):
            for k in range(n):
                rows.append([g.c[u][j][k] for u in ev])
                rhs.append(DD[k][j])
        conds = [D] + ([Dstar] if w.parity() == 1 else [])
        for m in conds:
            for k in range(n):
                rows.append([m.M[k][u] for u in ev])
                rhs.append(f.zero)
        sol = solve(rows, rhs, f, len(ev))
        if sol is None:
            return WitnessResult("no-admissible-witness", omega=Om)
    ker = nullspace(rows, f, len(ev))
    W = [f.zero] * n
    for u, x in zip(ev, sol):
        W[u] = x
    kernel = []
    for kv in ker:
        v = [f.zero] * n
        for u, x in zip(ev, kv):
            v[u] = x
        kernel.append(v)
    return WitnessResult("ok", W, kernel, Om)


def witness_is_admissible(data: ExtensionData, W) -> str | None:
    """None if W works, otherwise the name of the failed condition."""
    g, w, D = data.base, data.form, data.D
    n = g.n
    if g.vector_parity(W) == 1:
        return "witness must be even"
    Dstar = adjoint(D, w, g.parities)
    Om = omega_matrix(data, Dstar)
    for a in range(n):
        for b in range(n):
            if w(W, g.c[a][b]) != Om[a][b]:
                return "coboundary"
    if D.parity == 1:
        if D.compose(D).M != g.ad(W):
            return "D^2 = ad"
        if any(D(W)):
            return "D(a0) = 0"
        if w.parity() == 1 and any(Dstar(W)):
            return "D*(a0) = 0"
    return None


def _layout(base: LieSuperalgebra, px: int, pxs: int):
    """Positions of x, base vectors and x* in the extended (even-first) basis."""
    order = []  # entries: 'x', 'xs' or base index
    for par in (0, 1):
        if px == par:
            order.append("x")
        order.extend(i for i in range(base.n) if base.parity(i) == par)
        if pxs == par:
            order.append("xs")
    pos = {key: k for k, key in enumerate(order)}
    n_even = base.sdim.n_even + (px == 0) + (pxs == 0)
    n_odd = base.sdim.n_odd + (px == 1) + (pxs == 1)
    return order, pos, SuperDim(n_even, n_odd)


def double_extend(data: ExtensionData, validate: bool = True) -> ExtensionResult:
    g, w, D = data.base, data.form, data.D
    f = g.field
    var = data.variant
    pars = variant_parities(var)
    _check_inputs(data, pars)
    W = data.witness
    if W is None:
        res = coboundary_witness(data)
        if res.status != "ok":
            raise ExtensionError(res.status)
        W = res.witness
    else:
        W = [f(x) for x in W]
        bad = witness_is_admissible(data, W)
        if bad:
            raise ExtensionError("witness fails: %s" % bad)
    order, pos, sd = _layout(g, pars["x"], pars["xstar"])
    N = sd.n
    X, XS = pos["x"], pos["xs"]
    emb = [pos[i] for i in range(g.n)]

    def lift(v):
        out = [f.zero] * N
        for i, x in enumerate(v):
            out[emb[i]] = x
        return out

    c = [[[f.zero] * N for _ in range(N)] for _ in range(N)]
    units = [g.unit(i) for i in range(g.n)]
    for i in range(g.n):
        for j in range(g.n):
            v = lift(g.c[i][j])
            v[X] = v[X] + _phi(data, units[i], units[j])
            c[emb[i]][emb[j]] = v
    sx, sxs = pars["x"], pars["xstar"]
    for j in range(g.n):
        a = units[j]
        v = lift(D(a))
        if D.parity == 0:
            v[X] = v[X] + w(W, a)
        elif var == "od-osp":
            v[X] = v[X] - w(a, W)
        else:
            v[X] = v[X] + w(W, a)
        c[XS][emb[j]] = v
        s = -sign(sxs * g.parity(j))
        c[emb[j]][XS] = [s * t for t in v]
    if D.parity == 0:
        c[X][XS] = [data.lam if k == X else f.zero for k in range(N)]
        s = -sign(sx * sxs)
        c[XS][X] = [s * t for t in c[X][XS]]
    else:
        c[XS][XS] = lift([2 * t for t in W])
    names = []
    for key in order:
        if key == "x":
            names.append("x")
        elif key == "xs":
            names.append("x*")
        else:
            names.append(g.names[key])
    h = LieSuperalgebra(sd, c, f, names, name=(g.name + "+" + var) if g.name else var)
    V = [[f.zero] * N for _ in range(N)]
    for i in range(g.n):
        for j in range(g.n):
            V[emb[i]][emb[j]] = w.V[i][j]
    V[XS][X] = f.one
    V[X][XS] = -sign(sx * sxs) * f.one
    wg = BilinearForm(sd, V, f)
    data = ExtensionData(var, g, w, D, data.lam, W)
    checks = extension_checks(h, wg, pars["form"], data) if validate else {}
    if validate and not all(checks.values()):
        failed = sorted(k for k, v in checks.items() if not v)
        raise ExtensionError("extension fails: %s" % ", ".join(failed))
    return ExtensionResult(h, wg, data, X, XS, emb, checks)


def _check_inputs(data: ExtensionData, pars):
    g, w, D = data.base, data.form, data.D
    if D.parity != pars["D"]:
        raise ExtensionError("derivation has the wrong parity for %s" % data.variant)
    wp = w.parity()
    if wp != pars["form"] and not (wp == "zero" and g.n == 0):
        raise ExtensionError("form has the wrong parity for %s" % data.variant)
    if not D.respects_parity(g.parities):
        raise ExtensionError("map is not homogeneous")
    if derivation_residual(g, D) is not None:
        raise ExtensionError("map is not a derivation")
    if not is_antisymmetric(w) or not is_nondegenerate(w) or closedness_violation(g, w):
        raise ExtensionError("base form is not quasi-Frobenius")


def extension_checks(h: LieSuperalgebra, wg: BilinearForm, form_parity: int, data=None) -> dict:
    checks = {
        "lie_superalgebra": not validate_algebra(h, first_only=True),
        "antisymmetric": is_antisymmetric(wg),
        "closed": closedness_violation(h, wg) is None,
        "nondegenerate": is_nondegenerate(wg),
        "form_parity": wg.parity() == form_parity,
    }
    if data is not None:
        checks["phi_cocycle"] = phi_cocycle_residual(data) is None
    return checks


def phi_cocycle_residual(data: ExtensionData):
    """(-1)^{p(f)p(h)} phi(f,[g,h]) + cyclic = 0 on basis triples."""
    g = data.base
    p = g.parities
    units = [g.unit(i) for i in range(g.n)]
    for a in range(g.n):
        for b in range(g.n):
            for c in range(g.n):
                r = (sign(p[a] * p[c]) * _phi(data, units[a], g.c[b][c])
                     + sign(p[c] * p[b]) * _phi(data, units[c], g.c[a][b])
                     + sign(p[b] * p[a]) * _phi(data, units[b], g.c[c][a]))
                if r:
                    return (a, b, c)
    return None


# converse direction

def extension_point_ok(g: LieSuperalgebra, w: BilinearForm, x, variant: str) -> str | None:
    """None if x satisfies the hypotheses of the converse for `variant`."""
    variant = normalize_variant(variant)
    pars = variant_parities(variant)
    if w.parity() != pars["form"]:
        return "form parity does not match %s" % variant
    if g.vector_parity(x) != pars["x"]:
        return "x must be %s" % ("even" if pars["x"] == 0 else "odd")
    K = Subspace(g.field, g.n, [x])
    if pars["D"] == 0:
        dg = derived_algebra(g)
        if any(w(x, y) for y in dg.basis):
            return "x is not orthogonal to [g, g]"
        if not is_ideal(g, K):
            return "span of x is not an ideal"
    else:
        if not center(g).contains(x):
            return "x is not central"
        if pars["x"] == 1 and w(x, x):
            return "w(x, x) != 0"
    return None


@dataclass
class Decomposition:
    data: ExtensionData
    basis: list          # adapted basis of g, in the layout of double_extend
    xstar: list
    base_basis: list


def decompose(g: LieSuperalgebra, w: BilinearForm, x, variant: str) -> Decomposition:
    variant = normalize_variant(variant)
    pars = variant_parities(variant)
    f = g.field
    x = [f(t) for t in x]
    bad = extension_point_ok(g, w, x, variant)
    if bad:
        raise ExtensionError(bad)
    # x*: first basis vector of the right parity pairing with x
    xs = None
    for i in range(g.n):
        if g.parity(i) == pars["xstar"] and w(g.unit(i), x):
            xs = [t / w(g.unit(i), x) for t in g.unit(i)]
            break
    if xs is None:
        raise ExtensionError("no vector pairs with x; the form is degenerate")
    if pars["x"] == 1 and pars["xstar"] == 1:
        c = w(xs, xs) / 2
        xs = [s - c * t for s, t in zip(xs, x)]
    a = orthogonal_complement(w, Subspace(f, g.n, [x, xs]))
    abasis = [list(b) for b in a.basis]
    apar = [g.vector_parity(b) for b in abasis]
    if None in apar:
        raise ExtensionError("complement is not graded")
    layout = []
    for par in (0, 1):
        if pars["x"] == par:
            layout.append(x)
        layout.extend(b for b, p in zip(abasis, apar) if p == par)
        if pars["xstar"] == par:
            layout.append(xs)
    abasis = [b for par in (0, 1) for b, p in zip(abasis, apar) if p == par]
    h = g.change_basis(layout)
    order, pos, sd = _layout_from_counts(h, pars)
    X, XS = pos["x"], pos["xs"]
    emb = [pos[i] for i in range(len(abasis))]
    m = len(abasis)
    na = sum(1 for b in abasis if g.vector_parity(b) == 0)
    cb = [[[h.c[emb[i]][emb[j]][emb[k]] for k in range(m)] for j in range(m)] for i in range(m)]
    base = LieSuperalgebra(SuperDim(na, m - na), cb, f,
                           ["a%d" % (i + 1) for i in range(m)], name="")
    wa = BilinearForm(base.sdim, [[w(abasis[i], abasis[j]) for j in range(m)] for i in range(m)], f)
    Dm = [[h.c[XS][emb[j]][emb[k]] for j in range(m)] for k in range(m)]
    D = SuperLinearMap(Dm, pars["D"], f)
    if pars["D"] == 0:
        lam = h.c[X][XS][X]
        # x-component of [x*, a] is w(Z, a)
        rows = [[wa.V[u][j] for u in range(m)] for j in range(m)]
        rhs = [h.c[XS][emb[j]][X] for j in range(m)]
        Z = solve(rows, rhs, f, m)
        if Z is None:
            raise ExtensionError("cannot recover Z")
        wit = Z
    else:
        lam = 0
        wit = [h.c[XS][XS][emb[k]] / 2 for k in range(m)]
    data = ExtensionData(variant, base, wa, D, lam, wit)
    return Decomposition(data, layout, xs, abasis)


def _layout_from_counts(h, pars):
    # rebuild the (x, base, x*) layout for an algebra already in adapted form
    n_even = h.sdim.n_even - (pars["x"] == 0) - (pars["xstar"] == 0)
    n_odd = h.sdim.n_odd - (pars["x"] == 1) - (pars["xstar"] == 1)
    fake = LieSuperalgebra.abelian(n_even, n_odd, h.field)
    return _layout(fake, pars["x"], pars["xstar"])


def round_trip(g: LieSuperalgebra, w: BilinearForm, x, variant: str) -> bool:
    """double_extend(decompose(g)) equals g written in the adapted basis."""
    dec = decompose(g, w, x, variant)
    rebuilt = double_extend(dec.data)
    target = g.change_basis(dec.basis)
    return rebuilt.algebra.structure_key() == target.structure_key()


def find_extension_points(g: LieSuperalgebra, w: BilinearForm) -> list:
    """Candidate (variant, x) pairs; basis vectors of the relevant subspaces first.

    The ideal condition for even derivations is not linear, so an empty
    answer for those variants is a search result, not a proof.
    """
    par = w.parity()
    if par not in (0, 1):
        return []
    out = []
    z = center(g)
    dperp = orthogonal_complement(w, derived_algebra(g))
    for variant in VARIANTS:
        pars = variant_parities(variant)
        if pars["form"] != par:
            continue
        if pars["D"] == 1:
            zp = z.part(g.parities, pars["x"])
            cands = [list(b) for b in zp.basis]
            cands += _pair_sums(zp.basis)
        else:
            sp = dperp.part(g.parities, pars["x"])
            cands = [list(b) for b in sp.basis] + _pair_sums(sp.basis)
        for x in cands:
            if extension_point_ok(g, w, x, variant) is None:
                out.append((variant, x))
                break
    return out


def _pair_sums(basis):
    out = []
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            for s in (1, -1):
                out.append([a + s * b for a, b in zip(basis[i], basis[j])])
    return out
