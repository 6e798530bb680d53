"""Independent oracles and seeded generators shared by the tests.

The oracles only read structure constants and raw form values; every rank
goes through sympy, never through superfrob.linalg.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

import sympy
from sympy.polys.domains import QQ as SQQ
from sympy.polys.matrices import DomainMatrix

from superfrob.algebra import LieSuperalgebra, SuperDim
from superfrob.derivations import SuperLinearMap, adjoint, derivation_space
from superfrob.double_extension import ExtensionData, coboundary_witness, variant_parities
from superfrob.field import QQ
from superfrob.forms import BilinearForm, antisymmetric_basis, form_from_wedge, is_nondegenerate
from superfrob.lagrangian import Connection, connection_check


def sgn(k):
    return -1 if k % 2 else 1


# linear algebra through sympy

def _dm(rows, ncols):
    rows = [[SQQ(Fraction(x).numerator, Fraction(x).denominator) for x in r] for r in rows]
    return DomainMatrix(rows, (len(rows), ncols), SQQ)


def sym_rank(rows, ncols):
    rows = [list(r) for r in {tuple(r) for r in rows} if any(r)]
    if not rows:
        return 0
    return _dm(rows, ncols).rank()


def sym_nullspace(rows, ncols):
    rows = [list(r) for r in {tuple(r) for r in rows} if any(r)]
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    M = sympy.Matrix(rows)
    return [[Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in v]
            for v in M.nullspace()]


# Lie superalgebra axioms straight from the definition

def jacobi_defect(c, par):
    """Largest-index triple violating graded anti-commutativity or Jacobi, else None."""
    n = len(par)
    for i, j in itertools.product(range(n), repeat=2):
        for k in range(n):
            if c[i][j][k] + sgn(par[i] * par[j]) * c[j][i][k]:
                return ("anti", i, j)
    for a, b, d in itertools.product(range(n), repeat=3):
        # [a,[b,d]] = [[a,b],d] + (-1)^{ab}[b,[a,d]]
        for k in range(n):
            lhs = sum(c[b][d][m] * c[a][m][k] for m in range(n))
            r1 = sum(c[a][b][m] * c[m][d][k] for m in range(n))
            r2 = sum(c[a][d][m] * c[b][m][k] for m in range(n))
            if lhs - r1 - sgn(par[a] * par[b]) * r2:
                return ("jacobi", a, b, d)
    return None


def closed_forms_dim(c, par):
    """dim of anti-symmetric closed forms, as raw matrices with the full cyclic condition."""
    n = len(par)
    idx = {(i, j): i * n + j for i in range(n) for j in range(n)}
    N = n * n
    rows = []
    for i, j in itertools.product(range(n), repeat=2):
        r = [0] * N
        r[idx[(j, i)]] += 1
        r[idx[(i, j)]] += sgn(par[i] * par[j])
        rows.append(r)
    for f, g, h in itertools.product(range(n), repeat=3):
        # (-1)^{fh} w(f,[g,h]) + (-1)^{hg} w(h,[f,g]) + (-1)^{gf} w(g,[h,f])
        r = [0] * N
        for s, x, y, z in ((sgn(par[f] * par[h]), f, g, h), (sgn(par[h] * par[g]), h, f, g),
                           (sgn(par[g] * par[f]), g, h, f)):
            for k in range(n):
                if c[y][z][k]:
                    r[idx[(x, k)]] += s * c[y][z][k]
        rows.append(r)
    return N - sym_rank(rows, N)


def sym_form_det(V):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in V]).det()


def form_closed_oracle(c, par, V):
    n = len(par)
    for f, g, h in itertools.product(range(n), repeat=3):
        tot = 0
        for s, x, y, z in ((sgn(par[f] * par[h]), f, g, h), (sgn(par[h] * par[g]), h, f, g),
                           (sgn(par[g] * par[f]), g, h, f)):
            tot += s * sum(V[x][k] * c[y][z][k] for k in range(n))
        if tot:
            return False
    return True


# flat Lie superalgebras of dimension at most 3|3

def alg(ne, no, br, name=""):
    return LieSuperalgebra.from_brackets(ne, no, {k: {a: Fraction(b) for a, b in v.items()}
                                                  for k, v in br.items()}, QQ, name=name)


def half_bracket(h):
    n = h.n
    return Connection(h, [[[h.c[i][j][k] / 2 for k in range(n)] for j in range(n)] for i in range(n)])


def flat_pool():
    """(name, h, connection), every connection even, flat and torsion-free."""
    out = []
    for ne, no in ((1, 0), (0, 1), (1, 1), (2, 1), (0, 2), (1, 2)):
        h = LieSuperalgebra.abelian(ne, no)
        out.append(("abelian %d|%d" % (ne, no), h, Connection.zero(h)))
    h = alg(1, 1, {})
    out.append(("1|1 nabla_e1 e1 = e1", h, Connection.from_dict(h, {(0, 0): {0: 1}})))
    h = alg(1, 1, {(0, 1): {1: 1}})
    out.append(("1|1 [e1,e2] = e2", h, Connection.from_dict(h, {(0, 1): {1: 1}})))
    out.append(("1|1 [e1,e2] = e2, nabla_e1 e1 = 2e1", h,
                Connection.from_dict(h, {(0, 1): {1: 1}, (0, 0): {0: 2}})))
    out.append(("1|1 [e1,e2] = e2, D5 quotient", h,
                Connection.from_dict(h, {(0, 0): {0: -1}, (1, 0): {1: -1}})))
    h = alg(1, 1, {})
    out.append(("1|1 C11 quotient", h,
                Connection.from_dict(h, {(0, 0): {0: -1}, (0, 1): {1: -1}, (1, 0): {1: -1}})))
    h = alg(2, 0, {(0, 1): {1: 1}})
    for q in (0, 1, Fraction(-1, 2)):
        out.append(("2|0 aff q=%s" % q, h, Connection.from_dict(h, {(0, 1): {1: 1}, (0, 0): {0: -q, 1: q + 1}})))
    out.append(("2|0 aff alt", h, Connection.from_dict(h, {(0, 1): {1: 1}, (0, 0): {0: 3, 1: -2}})))
    h = alg(1, 2, {(1, 2): {0: 1}})
    out.append(("1|2 [e2,e3] = e1", h, half_bracket(h)))
    h = alg(1, 2, {(1, 1): {0: 1}})
    out.append(("1|2 [e2,e2] = e1", h, half_bracket(h)))
    h = alg(3, 0, {(0, 1): {2: 1}})
    out.append(("L^3", h, Connection.from_dict(h, {(0, 0): {1: 1}, (0, 1): {2: 1}})))
    h = alg(2, 1, {(0, 2): {2: 1}})
    out.append(("2|1 [e1,e3] = e3", h, Connection.from_dict(h, {(0, 2): {2: 1}, (1, 1): {1: 1}})))
    for name, h, nab in out:
        rep = connection_check(nab)
        assert rep.is_even and rep.is_flat and rep.is_torsion_free, name
    return out


# T* / Pi T* oracle

def module_action(h, nab, variant):
    """X[i][j][k]: coefficient of f_j in e_i . f_k, and the module parities."""
    n = h.n
    p = h.parities
    G = nab.G
    X = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i, j, k in itertools.product(range(n), repeat=3):
        # (e_i . e_k^*)(e_j) = -(-1)^{p_i p_k} e_k^*(nabla_{e_i} e_j)
        v = -sgn(p[i] * p[k]) * G[i][j][k]
        if variant == "pitstar":
            v *= sgn(p[i])
        X[i][j][k] = v
    mp = list(p) if variant == "tstar" else [(x + 1) % 2 for x in p]
    return X, mp


def even_slots(h, mp):
    n = h.n
    p = h.parities
    return [(i, j, k) for i in range(n) for j in range(n) for k in range(n) if mp[k] == (p[i] + p[j]) % 2]


def h2l_oracle(h, nab, variant):
    """(dim Z^2_L, dim B^2_L) of the even block, via the Jacobi identity of h + M."""
    n = h.n
    p = list(h.parities)
    X, mp = module_action(h, nab, variant)
    slots = even_slots(h, mp)
    idx = {s: t for t, s in enumerate(slots)}
    N = len(slots)
    P = p + mp
    tot = 2 * n

    # brackets on h + M with alpha as unknowns: value[a][b][k] is a dict {slot or None: coeff}
    def br(a, b, k):
        out = {}
        if a < n and b < n:
            if k < n:
                if h.c[a][b][k]:
                    out[None] = h.c[a][b][k]
            elif (a, b, k - n) in idx:
                out[idx[(a, b, k - n)]] = Fraction(1)
        elif a < n <= b and k >= n:
            if X[a][k - n][b - n]:
                out[None] = X[a][k - n][b - n]
        elif b < n <= a and k >= n:
            if X[b][k - n][a - n]:
                out[None] = -sgn(P[a] * P[b]) * X[b][k - n][a - n]
        return out

    table = {(a, b, k): br(a, b, k) for a in range(tot) for b in range(tot) for k in range(tot)}

    def mul(d1, d2):
        # product of two affine-linear forms, dropping alpha*alpha (never nonzero)
        out = {}
        for u, x in d1.items():
            for v, y in d2.items():
                if u is not None and v is not None:
                    if x * y:
                        raise AssertionError("quadratic term in alpha")
                    continue
                key = u if v is None else v
                out[key] = out.get(key, 0) + x * y
        return out

    def nested(a, b, d, k):
        # [a,[b,d]]_k
        out = {}
        for m in range(tot):
            for key, x in mul(table[(b, d, m)], table[(a, m, k)]).items():
                out[key] = out.get(key, 0) + x
        return out

    rows = []
    # triples with at most one module vector; the others vanish identically
    triples = [t for t in itertools.product(range(tot), repeat=3) if sum(x >= n for x in t) <= 1]
    for a, b, d in triples:
        for k in range(tot):
            lhs = nested(a, b, d, k)
            r1 = {}
            for m in range(tot):
                for key, x in mul(table[(a, b, m)], table[(m, d, k)]).items():
                    r1[key] = r1.get(key, 0) + x
            r2 = nested(b, a, d, k)
            s = sgn(P[a] * P[b])
            expr = dict(lhs)
            for key, x in r1.items():
                expr[key] = expr.get(key, 0) - x
            for key, x in r2.items():
                expr[key] = expr.get(key, 0) - s * x
            if expr.get(None, 0):
                raise AssertionError("h + M is not a Lie superalgebra for alpha = 0")
            row = [0] * N
            for key, x in expr.items():
                if key is not None:
                    row[key] += x
            rows.append(row)
    for i, j in itertools.product(range(n), repeat=2):
        for k in range(n):
            if (i, j, k) in idx:
                row = [0] * N
                row[idx[(i, j, k)]] += 1
                if (j, i, k) in idx:
                    row[idx[(j, i, k)]] += sgn(p[i] * p[j])
                rows.append(row)
    rows += lagrangian_rows(h, slots)
    z2L = N - sym_rank(rows, N)

    # Lagrangian 1-cochains, even: F[i][k] with mp[k] == p[i], F[u][v] = (-1)^{p_u p_v} F[v][u]
    s1 = [(i, k) for i in range(n) for k in range(n) if mp[k] == p[i]]
    i1 = {s: t for t, s in enumerate(s1)}
    crow = []
    for (u, v) in s1:
        row = [0] * len(s1)
        row[i1[(u, v)]] += 1
        if (v, u) in i1:
            # F(u)(v) = (-1)^{p_u p_v} F(v)(u)
            row[i1[(v, u)]] -= sgn(p[u] * p[v])
        crow.append(row)
    images = []
    for vec in sym_nullspace(crow, len(s1)):
        F = [[0] * n for _ in range(n)]
        for x, (i, k) in zip(vec, s1):
            F[i][k] = x
        img = [0] * N
        for (u, v, k), t in idx.items():
            # (dF)(u,v) = u.F(v) - (-1)^{p_u p_v} v.F(u) - F([u,v])
            val = sum(X[u][k][l] * F[v][l] for l in range(n))
            val -= sgn(p[u] * p[v]) * sum(X[v][k][l] * F[u][l] for l in range(n))
            val -= sum(h.c[u][v][m] * F[m][k] for m in range(n))
            img[t] = val
        images.append(img)
    b2L = sym_rank(images, N)
    return z2L, b2L


def lagrangian_rows(h, slots):
    n = h.n
    p = h.parities
    idx = {s: t for t, s in enumerate(slots)}
    rows = []
    for u, v, w in itertools.product(range(n), repeat=3):
        row = [0] * len(slots)
        for s, key in ((sgn(p[u] * p[w]), (u, v, w)), (sgn(p[v] * p[u]), (v, w, u)),
                       (sgn(p[w] * p[v]), (w, u, v))):
            if key in idx:
                row[idx[key]] += s
        rows.append(row)
    return rows


def cyclic_condition_holds(h, A):
    n = h.n
    p = h.parities
    return all(sgn(p[u] * p[w]) * A[u][v][w] + sgn(p[v] * p[u]) * A[v][w][u]
               + sgn(p[w] * p[v]) * A[w][u][v] == 0
               for u, v, w in itertools.product(range(n), repeat=3))


def antisymmetric_even_cochain(h, mp, rng, lagrangian=False):
    """Random even anti-symmetric 2-cochain; optionally inside the cyclic condition."""
    n = h.n
    p = h.parities
    slots = [(i, j, k) for (i, j, k) in even_slots(h, mp) if i < j or (i == j and p[i] == 1)]
    full = even_slots(h, mp)
    fidx = {s: t for t, s in enumerate(full)}

    def expand(vec):
        A = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for x, (i, j, k) in zip(vec, slots):
            A[i][j][k] = Fraction(x)
            if i != j:
                A[j][i][k] = -sgn(p[i] * p[j]) * Fraction(x)
        return A

    if not lagrangian:
        return expand([rng.randint(-3, 3) for _ in slots])
    # restrict the full cyclic system to the anti-symmetric coordinates
    rows = []
    for r in lagrangian_rows(h, full):
        rr = [0] * len(slots)
        for t, (i, j, k) in enumerate(slots):
            rr[t] += r[fidx[(i, j, k)]]
            if i != j:
                rr[t] += -sgn(p[i] * p[j]) * r[fidx[(j, i, k)]]
        rows.append(rr)
    basis = sym_nullspace(rows, len(slots))
    vec = [Fraction(0)] * len(slots)
    for b in basis:
        c = rng.randint(-3, 3)
        vec = [x + c * y for x, y in zip(vec, b)]
    return expand(vec)


# random double-extension data

def _alg_from_wedge(ne, no, br, wedge):
    g = alg(ne, no, br)
    return g, form_from_wedge(wedge, g.sdim, QQ, g.names)


def extension_bases():
    c1h, w1 = _alg_from_wedge(2, 2, {(0, 1): {1: 1}, (0, 2): {2: Fraction(1, 2)}, (2, 2): {1: 1}},
                              "e1^e2 - 1/2*e3^e3 - 1/2*e4^e4")
    d5, w5 = _alg_from_wedge(2, 2, {(0, 2): {2: 1}, (0, 3): {3: 1}, (1, 3): {2: 1}}, "e1^e4 + e1^e3 + e2^e4")
    return {
        0: [(LieSuperalgebra.abelian(2, 1), None), (LieSuperalgebra.abelian(2, 2), None),
            (LieSuperalgebra.abelian(0, 2), None), (c1h, w1)],
        1: [(LieSuperalgebra.abelian(1, 1), None), (LieSuperalgebra.abelian(2, 2), None), (d5, w5)],
    }


def random_form(g, parity, rng):
    basis = antisymmetric_basis(g.sdim, QQ, parity)
    while True:
        V = [[Fraction(0)] * g.n for _ in range(g.n)]
        for B in basis:
            c = rng.randint(-3, 3)
            V = [[a + c * b for a, b in zip(r, s)] for r, s in zip(V, B)]
        w = BilinearForm(g.sdim, V, QQ)
        if is_nondegenerate(w):
            return w


def skew_derivations(g, w, parity):
    ders = derivation_space(g, parity)
    if not ders:
        return []
    cols = [[x for r in (d + adjoint(d, w, g.parities)).M for x in r] for d in ders]
    rows = [[c[i] for c in cols] for i in range(len(cols[0]))]
    out = []
    for sol in sym_nullspace(rows, len(ders)):
        D = SuperLinearMap.zero(g.n, parity, QQ)
        for c, d in zip(sol, ders):
            D = D + d.scale(c)
        out.append(D)
    return out


def random_extension_data(variant, rng, bases=None):
    """Seeded valid ExtensionData, or None when the draw has no admissible witness."""
    bases = bases or extension_bases()
    pars = variant_parities(variant)
    g, w = rng.choice(bases[pars["form"]])
    if w is None:
        w = random_form(g, pars["form"], rng)
    D = SuperLinearMap.zero(g.n, pars["D"], QQ)
    if pars["D"] == 0:
        pool = skew_derivations(g, w, 0)
    else:
        pool = derivation_space(g, 1) if rng.random() < 0.5 else []
    for d in pool:
        D = D + d.scale(rng.randint(-2, 2))
    # lambda only enters the even-derivation variants
    lam = rng.randint(-2, 2) if pars["D"] == 0 else 0
    data = ExtensionData(variant, g, w, D, lam)
    res = coboundary_witness(data)
    if res.status != "ok":
        return None
    W = list(res.witness)
    for kv in res.kernel:
        W = [a + rng.randint(-2, 2) * b for a, b in zip(W, kv)]
    data.witness = W
    return data


def seeded_extension_data(variant, count, seed=0):
    rng = random.Random(seed * 7919 + sum(map(ord, variant)))
    bases = extension_bases()
    out = []
    tries = 0
    while len(out) < count and tries < 20 * count:
        tries += 1
        d = random_extension_data(variant, rng, bases)
        if d is not None:
            out.append(d)
    return out


def structure_equal(g1, g2):
    return g1.structure_key() == g2.structure_key()


SD = SuperDim
