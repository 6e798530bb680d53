"""The model filiform superalgebras L^{n,m} and their closed forms."""
from __future__ import annotations

from fractions import Fraction

from ..algebra import LieSuperalgebra, SuperDim, is_solvable
from ..field import QQ, Field
from ..forms import FormFamily, is_nondegenerate

VARIANTS = ("periplectic_nn", "ortho_even_odd", "nh_n_nminus2")


def filiform_names(n: int, m: int) -> list:
    return ["X%d" % i for i in range(1, n + 1)] + ["Y%d" % j for j in range(1, m + 1)]


def make_filiform(n: int, m: int = 0, field: Field = QQ) -> LieSuperalgebra:
    """[X1, Xi] = X(i+1) for 2 <= i <= n-1 and [X1, Yj] = Y(j+1) for 1 <= j <= m-1."""
    if n < 2 or m < 0:
        raise ValueError("need n >= 2 and m >= 0")
    br = {}
    for i in range(2, n):
        br[(0, i - 1)] = {i: 1}
    for j in range(1, m):
        br[(0, n + j - 1)] = {n + j: 1}
    name = "L^%d" % n if m == 0 else "L^{%d,%d}" % (n, m)
    g = LieSuperalgebra.from_brackets(n, m, br, field, filiform_names(n, m), name)
    bad = g.validate()
    if bad:
        raise AssertionError("filiform presentation is not a Lie superalgebra: %s" % bad[0])
    return g


def _join(terms):
    # terms: (sign, text)
    out = ""
    for k, (sgn, t) in enumerate(terms):
        if k == 0:
            out = t if sgn > 0 else "-" + t
        else:
            out += (" + " if sgn > 0 else " - ") + t
    return out


def filiform_expression(n: int, m: int, variant: str) -> tuple:
    """(wedge expression, parameters, constraints) of the displayed family."""
    X = lambda i: "X%d" % i
    Y = lambda j: "Y%d" % j
    sg = lambda k: -1 if k % 2 else 1
    if variant == "periplectic_nn":
        if n != m:
            raise ValueError("periplectic_nn needs n == m")
        parts = [(1, "lam*%s^%s" % (X(1), Y(n)))]
        parts += [(sg(n - i), "mu*%s^%s" % (X(i), Y(n + 1 - i))) for i in range(2, n + 1)]
        return _join(parts), ["lam", "mu"], ["lam*mu"]
    if variant == "ortho_even_odd":
        if n % 2 or m % 2 == 0:
            raise ValueError("ortho_even_odd needs n even and m odd")
        h, k = n // 2, (m + 1) // 2
        parts = [(1, "lam*%s^%s" % (X(1), X(n)))]
        parts += [(sg(h - i), "mu*%s^%s" % (X(i), X(n + 1 - i))) for i in range(2, h + 1)]
        parts += [(sg(k) * sg(i), "nu*%s^%s" % (Y(i), Y(m + 1 - i))) for i in range(1, k)]
        parts += [(1, "nu/2*%s^%s" % (Y(k), Y(k)))]
        return _join(parts), ["lam", "mu", "nu"], ["lam*mu*nu"]
    if variant == "nh_n_nminus2":
        if n % 2 or m != n - 2:
            raise ValueError("nh_n_nminus2 needs n even and m == n - 2")
        parts = [(1, "lam*%s^%s" % (X(1), X(n)))]
        parts += [(-sg(i), "mu*%s^%s" % (X(i), Y(n - i))) for i in range(2, n)]
        return _join(parts), ["lam", "mu"], ["lam*mu"]
    raise ValueError("unknown filiform form variant %r (expected one of %s)" % (variant, ", ".join(VARIANTS)))


def filiform_form(n: int, m: int, variant: str, field: Field = QQ) -> FormFamily:
    expr, params, cons = filiform_expression(n, m, variant)
    return FormFamily.from_wedges(expr, SuperDim(n, m), field, filiform_names(n, m), params, cons,
                                  name="%s on L^{%d,%d}" % (variant, n, m))


def variant_applies(n: int, m: int, variant: str) -> bool:
    if variant == "periplectic_nn":
        return n == m and n >= 2
    if variant == "ortho_even_odd":
        return n % 2 == 0 and m % 2 == 1 and n >= 2
    if variant == "nh_n_nminus2":
        return n % 2 == 0 and n >= 4 and m == n - 2
    return False


def family_cases(max_total: int = 12) -> list:
    """(n, m, variant) for every admissible shape with n + m <= max_total."""
    out = []
    for v in VARIANTS:
        for n in range(2, max_total + 1):
            for m in range(0, max_total - n + 1):
                if variant_applies(n, m, v):
                    out.append((n, m, v))
    return out


_POINTS = ([1, 1, 1], [2, -1, 3], [-3, 2, Fraction(1, 2)])


def check_family(n: int, m: int, variant: str) -> dict:
    """Closed, anti-symmetric, parity, non-degenerate at admissible points, degenerate at lam = 0.

    (For n = 2 the mu-sum in the ortho-symplectic family is empty, so lam is
    the coordinate present in every shape.)
    """
    g = make_filiform(n, m)
    fam = filiform_form(n, m, variant)
    want = {"periplectic_nn": 1, "ortho_even_odd": 0, "nh_n_nminus2": "mixed"}[variant]
    pts = [[QQ(x) for x in p[:fam.nvars]] for p in _POINTS]
    degenerate_at = [QQ(0)] + [QQ(1)] * (fam.nvars - 1)
    res = {
        "n": n, "m": m, "variant": variant,
        "anti_symmetric": fam.is_antisymmetric(),
        "closed": fam.is_closed(g),
        "parity": fam.parity() == want,
        "non_degenerate": all(fam.admissible(p) and is_nondegenerate(fam.at(p)) for p in pts),
        "degenerate_off_locus": not is_nondegenerate(fam.at(degenerate_at)),
        "solvable": is_solvable(g),
    }
    res["ok"] = all(v for k, v in res.items() if k not in ("n", "m", "variant"))
    return res
