"""Flat connections, T*- and Pi T*-extensions and Lagrangian extension cohomology.

Conventions. A connection on h stores Gamma[i][j][k] with
nabla_{e_i} e_j = sum_k Gamma[i][j][k] e_k. The module M is h* ("tstar") or
Pi(h*) ("pitstar"); its basis f_k is e_k^* (resp. Pi e_k^*), of parity p_k
(resp. p_k + 1). Cochains are stored by module coordinates:
F[i][k] is the f_k coefficient of phi(e_i) and A[i][j][k] that of
alpha(e_i, e_j). For both variants phi(e_i)(e_j) is read as F[i][j].
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .algebra import LieSuperalgebra, SuperDim, is_ideal, validate_algebra
from .field import sign
from .forms import (BilinearForm, closedness_violation, is_antisymmetric, is_nondegenerate,
                    orthogonal_complement)
from .linalg import Subspace, identity, matmul, nullspace, rank, solve, zeros

VARIANTS = ("tstar", "pitstar")


class LagrangianError(ValueError):
    pass


def normalize_variant(name: str) -> str:
    key = name.strip().lower().replace("*", "star").replace("_", "").replace("-", "")
    if key in ("tstar", "t"):
        return "tstar"
    if key in ("pitstar", "pit", "πtstar"):
        return "pitstar"
    raise ValueError("unknown T* variant %r (use tstar or pitstar)" % name)


# connections

class Connection:
    def __init__(self, base: LieSuperalgebra, G):
        self.base = base
        f = base.field
        n = base.n
        self.G = [[[f(G[i][j][k]) for k in range(n)] for j in range(n)] for i in range(n)]

    @classmethod
    def zero(cls, h: LieSuperalgebra) -> "Connection":
        n = h.n
        return cls(h, [[[0] * n for _ in range(n)] for _ in range(n)])

    @classmethod
    def from_dict(cls, h: LieSuperalgebra, values: dict) -> "Connection":
        """values maps (i, j) to the vector (dense or {k: c}) nabla_{e_i} e_j."""
        n = h.n
        G = [[[h.field.zero] * n for _ in range(n)] for _ in range(n)]
        for (i, j), v in values.items():
            if isinstance(v, dict):
                for k, x in v.items():
                    G[i][j][k] = G[i][j][k] + h.field(x)
            else:
                G[i][j] = [h.field(x) for x in v]
        return cls(h, G)

    @property
    def n(self):
        return self.base.n

    def __call__(self, u, v):
        f = self.base.field
        out = [f.zero] * self.n
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                s = a * b
                for k, g in enumerate(self.G[i][j]):
                    if g:
                        out[k] = out[k] + s * g
        return out

    def matrix(self, i: int):
        """Column-convention matrix of nabla_{e_i}."""
        n = self.n
        return [[self.G[i][j][k] for j in range(n)] for k in range(n)]

    def is_even(self) -> bool:
        p = self.base.parities
        return all(not self.G[i][j][k] or p[k] == (p[i] + p[j]) % 2
                   for i in range(self.n) for j in range(self.n) for k in range(self.n))

    def torsion(self, i: int, j: int):
        h = self.base
        s = sign(h.parity(i) * h.parity(j))
        return [a - s * b - c for a, b, c in zip(self.G[i][j], self.G[j][i], h.c[i][j])]

    def curvature(self, i: int, j: int, k: int):
        """R(e_i, e_j) e_k = nabla_i nabla_j e_k - s nabla_j nabla_i e_k - nabla_[e_i,e_j] e_k."""
        h = self.base
        s = sign(h.parity(i) * h.parity(j))
        ei, ej = h.unit(i), h.unit(j)
        t1 = self(ei, self.G[j][k])
        t2 = self(ej, self.G[i][k])
        t3 = self(h.c[i][j], h.unit(k))
        return [a - s * b - c for a, b, c in zip(t1, t2, t3)]

    def __eq__(self, other):
        return isinstance(other, Connection) and self.G == other.G


@dataclass
class ConnectionReport:
    torsion: dict
    curvature: dict
    is_even: bool

    @property
    def is_torsion_free(self):
        return not self.torsion

    @property
    def is_flat(self):
        return not self.curvature

    def as_dict(self):
        return {"even": self.is_even, "torsion_free": self.is_torsion_free, "flat": self.is_flat,
                "torsion_nonzero": sorted(list(k) for k in self.torsion),
                "curvature_nonzero": sorted(list(k) for k in self.curvature)}


def connection_check(nabla: Connection) -> ConnectionReport:
    n = nabla.n
    tors = {}
    curv = {}
    for i in range(n):
        for j in range(n):
            t = nabla.torsion(i, j)
            if any(t):
                tors[(i, j)] = t
            for k in range(n):
                r = nabla.curvature(i, j, k)
                if any(r):
                    curv[(i, j, k)] = r
    return ConnectionReport(tors, curv, nabla.is_even())


def is_flat_torsion_free(nabla: Connection) -> bool:
    rep = connection_check(nabla)
    return rep.is_even and rep.is_flat and rep.is_torsion_free


# the dual modules

@dataclass
class Module:
    """A representation of h given by column-convention matrices on a basis."""
    mats: list
    parities: list
    variant: str = ""

    @property
    def dim(self):
        return len(self.parities)

    def act(self, i, vec, field):
        M = self.mats[i]
        out = [field.zero] * self.dim
        for k, x in enumerate(vec):
            if x:
                for j in range(self.dim):
                    if M[j][k]:
                        out[j] = out[j] + M[j][k] * x
        return out


def rho_representation(nabla: Connection) -> list:
    """rho(u) xi = -(-1)^{p(u)p(xi)} xi o nabla_u on h*."""
    h = nabla.base
    n = h.n
    p = h.parities
    mats = []
    for i in range(n):
        M = zeros(h.field, n, n)
        for k in range(n):
            s = -sign(p[i] * p[k])
            for j in range(n):
                if nabla.G[i][j][k]:
                    M[j][k] = s * nabla.G[i][j][k]
        mats.append(M)
    return mats


def chi_representation(nabla: Connection) -> list:
    """chi(u) = (-1)^{p(u)} Pi o rho(u) o Pi on Pi(h*)."""
    h = nabla.base
    rho = rho_representation(nabla)
    return [[[sign(h.parity(i)) * x for x in row] for row in M] for i, M in enumerate(rho)]


def dual_module(nabla: Connection, variant: str) -> Module:
    variant = normalize_variant(variant)
    p = nabla.base.parities
    if variant == "tstar":
        return Module(rho_representation(nabla), list(p), variant)
    return Module(chi_representation(nabla), [(x + 1) % 2 for x in p], variant)


def module_residual(h: LieSuperalgebra, mod: Module):
    """First (i, j) where [M_i, M_j] != M_[e_i,e_j], or None."""
    f = h.field
    p = h.parities
    for i in range(h.n):
        for j in range(h.n):
            ab = matmul(mod.mats[i], mod.mats[j], f)
            ba = matmul(mod.mats[j], mod.mats[i], f)
            s = sign(p[i] * p[j])
            for r in range(mod.dim):
                for c in range(mod.dim):
                    rhs = sum((h.c[i][j][k] * mod.mats[k][r][c] for k in range(h.n)
                               if h.c[i][j][k]), f.zero)
                    if ab[r][c] - s * ba[r][c] != rhs:
                        return (i, j)
    return None


# cochains

def zero_cochain(n: int, degree: int, field):
    if degree == 1:
        return [[field.zero] * n for _ in range(n)]
    return [[[field.zero] * n for _ in range(n)] for _ in range(n)]


def cochain_parity(C, hpar, mpar, degree: int):
    """0, 1, None for the zero cochain or 'mixed'."""
    found = set()
    if degree == 1:
        for i, row in enumerate(C):
            for k, x in enumerate(row):
                if x:
                    found.add((mpar[k] - hpar[i]) % 2)
    else:
        for i, plane in enumerate(C):
            for j, row in enumerate(plane):
                for k, x in enumerate(row):
                    if x:
                        found.add((mpar[k] - hpar[i] - hpar[j]) % 2)
    if not found:
        return None
    if len(found) > 1:
        return "mixed"
    return found.pop()


def _pi(C, h, mod, degree):
    par = cochain_parity(C, h.parities, mod.parities, degree)
    if par == "mixed":
        raise LagrangianError("cochain is not homogeneous")
    return par or 0


def _combine_rows(h, A, vec):
    # sum_l vec_l A[l] over the first index
    f = h.field
    out = [f.zero] * len(A[0]) if A else []
    for l, x in enumerate(vec):
        if x:
            out = [a + x * b for a, b in zip(out, A[l])]
    return out


def coboundary1(h: LieSuperalgebra, mod: Module, F, parity=None):
    """(dF)(u,v) = (-1)^{p(u)pi} u.F(v) - (-1)^{p(v)(p(u)+pi)} v.F(u) - F([u,v])."""
    n = h.n
    f = h.field
    p = h.parities
    pi = _pi(F, h, mod, 1) if parity is None else parity
    out = zero_cochain(n, 2, f)
    for u in range(n):
        for v in range(n):
            t1 = mod.act(u, F[v], f)
            t2 = mod.act(v, F[u], f)
            t3 = _combine_rows(h, F, h.c[u][v])
            s1 = sign(p[u] * pi)
            s2 = sign(p[v] * (p[u] + pi))
            out[u][v] = [s1 * a - s2 * b - c for a, b, c in zip(t1, t2, t3)]
    return out


def _alpha_at(A, x, y, f):
    # alpha(x, y) for vectors x, y
    n = len(A)
    out = [f.zero] * len(A[0][0]) if n else []
    for i, a in enumerate(x):
        if not a:
            continue
        for j, b in enumerate(y):
            if not b:
                continue
            s = a * b
            out = [o + s * t for o, t in zip(out, A[i][j])]
    return out


def coboundary2(h: LieSuperalgebra, mod: Module, A, parity=None):
    """(dA)(u,v,w) as a dense n x n x n x dim(M) tensor."""
    n = h.n
    f = h.field
    p = h.parities
    pi = _pi(A, h, mod, 2) if parity is None else parity
    out = [[[None] * n for _ in range(n)] for _ in range(n)]
    for u, v, w in itertools.product(range(n), repeat=3):
        t1 = mod.act(u, A[v][w], f)
        t2 = mod.act(v, A[u][w], f)
        t3 = mod.act(w, A[u][v], f)
        t4 = _alpha_at(A, h.c[u][v], h.unit(w), f)
        t5 = _alpha_at(A, h.c[u][w], h.unit(v), f)
        t6 = _alpha_at(A, h.unit(u), h.c[v][w], f)
        s1 = sign(p[u] * pi)
        s2 = sign(p[v] * (pi + p[u]))
        s3 = sign(p[w] * (pi + p[u] + p[v]))
        s5 = sign(p[v] * p[w])
        out[u][v][w] = [s1 * a - s2 * b + s3 * c - d + s5 * e + g
                        for a, b, c, d, e, g in zip(t1, t2, t3, t4, t5, t6)]
    return out


def cocycle_residual(h: LieSuperalgebra, mod: Module, A, parity=None):
    """First basis triple where dA != 0, or None."""
    dA = coboundary2(h, mod, A, parity)
    for u, v, w in itertools.product(range(h.n), repeat=3):
        if any(dA[u][v][w]):
            return (u, v, w)
    return None


def antisymmetry_violation(h: LieSuperalgebra, A):
    p = h.parities
    for i in range(h.n):
        for j in range(h.n):
            s = sign(p[i] * p[j])
            if any(a + s * b for a, b in zip(A[j][i], A[i][j])):
                return (i, j)
    return None


def lagrangian_cocycle_violation(h: LieSuperalgebra, A):
    """First (u, v, w) where (-1)^{p(u)p(w)} A(u,v)(w) + cyclic != 0, or None.

    The same identity is used for the Pi variant, where A(u,v)(w) is read off
    the Pi-shifted coordinates.
    """
    p = h.parities
    for u, v, w in itertools.product(range(h.n), repeat=3):
        r = (sign(p[u] * p[w]) * A[u][v][w] + sign(p[v] * p[u]) * A[v][w][u]
             + sign(p[w] * p[v]) * A[w][u][v])
        if r:
            return (u, v, w)
    return None


def lagrangian_cocycle_check(h: LieSuperalgebra, A) -> bool:
    return lagrangian_cocycle_violation(h, A) is None


def lagrangian_1cochain_violation(h: LieSuperalgebra, F):
    p = h.parities
    for u in range(h.n):
        for v in range(h.n):
            if F[u][v] != sign(p[u] * p[v]) * F[v][u]:
                return (u, v)
    return None


def is_lagrangian_1cochain(h: LieSuperalgebra, F) -> bool:
    return lagrangian_1cochain_violation(h, F) is None


# T* and Pi T* extensions

@dataclass
class LagrangianExtension:
    variant: str
    base: LieSuperalgebra
    connection: Connection
    cocycle: list
    algebra: LieSuperalgebra
    form: BilinearForm
    h_pos: list
    m_pos: list
    checks: dict = dc_field(default_factory=dict)

    @property
    def ideal(self) -> Subspace:
        g = self.algebra
        return Subspace(g.field, g.n, [g.unit(k) for k in self.m_pos])

    @property
    def complement(self) -> Subspace:
        g = self.algebra
        return Subspace(g.field, g.n, [g.unit(k) for k in self.h_pos])

    def polarization(self) -> "StrongPolarization":
        return StrongPolarization(self.algebra, self.form, self.ideal, self.complement)

    def embed(self, u=None, xi=None):
        """Vector of g from h coordinates u and module coordinates xi."""
        g = self.algebra
        out = g.zero()
        for i, x in enumerate(u or []):
            out[self.h_pos[i]] = out[self.h_pos[i]] + x
        for k, x in enumerate(xi or []):
            out[self.m_pos[k]] = out[self.m_pos[k]] + x
        return out


def _extension_layout(hpar, mpar):
    """Positions of h and module basis vectors in g (even vectors first)."""
    items = [(hpar[i], 0, i) for i in range(len(hpar))] + [(mpar[k], 1, k) for k in range(len(mpar))]
    items.sort()
    h_pos = [0] * len(hpar)
    m_pos = [0] * len(mpar)
    for pos, (_, kind, idx) in enumerate(items):
        if kind == 0:
            h_pos[idx] = pos
        else:
            m_pos[idx] = pos
    n_even = sum(1 for it in items if it[0] == 0)
    return h_pos, m_pos, n_even


def build_extension(h: LieSuperalgebra, nabla: Connection, A, variant: str):
    """Brackets and canonical form of h + M; no checks at all."""
    variant = normalize_variant(variant)
    f = h.field
    mod = dual_module(nabla, variant)
    hp = list(h.parities)
    mp = mod.parities
    n = h.n
    h_pos, m_pos, n_even = _extension_layout(hp, mp)
    N = 2 * n
    c = [[[f.zero] * N for _ in range(N)] for _ in range(N)]
    for i in range(n):
        for j in range(n):
            vec = c[h_pos[i]][h_pos[j]]
            for l, x in enumerate(h.c[i][j]):
                if x:
                    vec[h_pos[l]] = x
            for k, x in enumerate(A[i][j]):
                if x:
                    vec[m_pos[k]] = vec[m_pos[k]] + x
        for k in range(n):
            col = [mod.mats[i][r][k] for r in range(n)]
            s = -sign(mp[k] * hp[i])
            for r, x in enumerate(col):
                if x:
                    c[h_pos[i]][m_pos[k]][m_pos[r]] = x
                    c[m_pos[k]][h_pos[i]][m_pos[r]] = s * x
    V = zeros(f, N, N)
    for i in range(n):
        V[m_pos[i]][h_pos[i]] = f.one
        if variant == "tstar":
            V[h_pos[i]][m_pos[i]] = f(-sign(hp[i]))
        else:
            V[h_pos[i]][m_pos[i]] = f(-1)
    sd = SuperDim(n_even, N - n_even)
    names = [None] * N
    for i in range(n):
        names[h_pos[i]] = h.names[i]
        names[m_pos[i]] = ("%s*" if variant == "tstar" else "Pi%s*") % h.names[i]
    name = ("T*(%s)" if variant == "tstar" else "PiT*(%s)") % (h.name or "h")
    g = LieSuperalgebra(sd, c, f, names, name)
    return g, BilinearForm(sd, V, f, "canonical"), h_pos, m_pos


def extension_form_closed(h: LieSuperalgebra, nabla: Connection, A, variant: str) -> bool:
    """Is the canonical form of h + M closed for the brackets built from A?"""
    g, w, _, _ = build_extension(h, nabla, A, variant)
    return closedness_violation(g, w) is None


def tstar_extend(h: LieSuperalgebra, nabla: Connection, A, variant: str = "tstar",
                 check: bool = True) -> LagrangianExtension:
    variant = normalize_variant(variant)
    mod = dual_module(nabla, variant)
    if check:
        rep = connection_check(nabla)
        if not rep.is_even:
            raise LagrangianError("connection is not even")
        if not rep.is_torsion_free:
            raise LagrangianError("connection has torsion at %s" % (min(rep.torsion),))
        if not rep.is_flat:
            raise LagrangianError("connection is not flat at %s" % (min(rep.curvature),))
        par = cochain_parity(A, h.parities, mod.parities, 2)
        if par not in (None, 0):
            raise LagrangianError("cocycle must be even")
        bad = antisymmetry_violation(h, A)
        if bad:
            raise LagrangianError("cocycle is not anti-symmetric at %s" % (bad,))
        bad = cocycle_residual(h, mod, A, 0)
        if bad:
            raise LagrangianError("cocycle condition fails at %s" % (bad,))
        bad = lagrangian_cocycle_violation(h, A)
        if bad:
            raise LagrangianError("Lagrangian condition fails at %s" % (bad,))
    g, w, h_pos, m_pos = build_extension(h, nabla, A, variant)
    ext = LagrangianExtension(variant, h, nabla, A, g, w, h_pos, m_pos)
    if check:
        ideal = ext.ideal
        ext.checks = {
            "lie_superalgebra": not validate_algebra(g, first_only=True),
            "antisymmetric": is_antisymmetric(w),
            "closed": closedness_violation(g, w) is None,
            "nondegenerate": is_nondegenerate(w),
            "form_parity": w.parity() == (0 if variant == "tstar" else 1),
            "lagrangian_ideal": is_ideal(g, ideal) and orthogonal_complement(w, ideal) == ideal,
            "lagrangian_complement": orthogonal_complement(w, ext.complement) == ext.complement,
        }
        failed = [k for k, v in ext.checks.items() if not v]
        if failed:
            raise LagrangianError("extension check failed: %s" % ", ".join(failed))
    return ext


# strong polarizations and the converse construction

@dataclass
class StrongPolarization:
    g: LieSuperalgebra
    form: BilinearForm
    a: Subspace
    N: Subspace

    def problems(self) -> list:
        g, w, a, N = self.g, self.form, self.a, self.N
        out = []
        par = w.parity()
        if par not in (0, 1):
            out.append("form is not homogeneous")
        if not a.is_graded(g.parities) or not N.is_graded(g.parities):
            out.append("subspaces are not graded")
        if not is_ideal(g, a):
            out.append("a is not an ideal")
        if orthogonal_complement(w, a) != a:
            out.append("a is not Lagrangian")
        if orthogonal_complement(w, N) != N:
            out.append("N is not Lagrangian")
        if (a + N).dim != g.n or a.dim + N.dim != g.n:
            out.append("a and N are not complementary")
        return out

    def validate(self):
        bad = self.problems()
        if bad:
            raise LagrangianError("; ".join(bad))
        return self

    @property
    def variant(self):
        return "tstar" if self.form.parity() == 0 else "pitstar"

    def homogeneous_basis(self, s: Subspace):
        p = self.g.parities
        return [list(b) for b in s.part(p, 0).basis] + [list(b) for b in s.part(p, 1).basis]

    def split(self, x):
        """(component in a, coordinates in the homogeneous basis of N)."""
        f = self.g.field
        ab = [list(b) for b in self.a.basis]
        nb = self.homogeneous_basis(self.N)
        cols = ab + nb
        rows = [[v[i] for v in cols] for i in range(self.g.n)]
        sol = solve(rows, list(x), f, len(cols))
        if sol is None:
            raise LagrangianError("a + N does not span g")
        xa = [f.zero] * self.g.n
        for c, b in zip(sol[:len(ab)], ab):
            if c:
                xa = [s + c * t for s, t in zip(xa, b)]
        return xa, sol[len(ab):]


def lagrangian_complement(w: BilinearForm, a: Subspace) -> Subspace:
    """A Lagrangian complement of the Lagrangian subspace a.

    Start from standard basis vectors c_j off the pivots of a and correct
    them by t_j in a with w(t_j, c_k) = -1/2 w(c_j, c_k).
    """
    f = w.field
    p = w.sdim.parities
    comp = a.complement_indices()
    cs = [[f.one if t == j else f.zero for t in range(w.n)] for j in comp]
    half = f(1) / f(2)
    out = []
    for cj, j in zip(cs, comp):
        part = [list(b) for b in a.part(p, p[j]).basis]
        rows = [[w(t, ck) for t in part] for ck in cs]
        rhs = [-half * w(cj, ck) for ck in cs]
        sol = solve(rows, rhs, f, len(part))
        if sol is None:
            raise LagrangianError("no Lagrangian complement (is a Lagrangian?)")
        v = list(cj)
        for x, t in zip(sol, part):
            if x:
                v = [s + x * y for s, y in zip(v, t)]
        out.append(v)
    return Subspace(f, w.n, out)


@dataclass
class ExtractedTriple:
    variant: str
    h: LieSuperalgebra
    connection: Connection
    cocycle: list
    lifts: list
    iso: list
    extension: LagrangianExtension
    checks: dict


def extract_extension_triple(P: StrongPolarization, lifts=None, verify: bool = True) -> ExtractedTriple:
    """The flat quotient (h, nabla), the cocycle and the isomorphism Phi.

    lifts: optional homogeneous vectors of N (even first) used as the basis
    of h = g/a; by default the graded RREF basis of N.
    """
    P.validate()
    g, w = P.g, P.form
    f = g.field
    variant = P.variant
    nb = [list(v) for v in lifts] if lifts is not None else P.homogeneous_basis(P.N)
    if lifts is not None:
        P = StrongPolarization(g, w, P.a, Subspace(f, g.n, nb))
    m = len(nb)
    hp = [g.vector_parity(v) for v in nb]
    if None in hp or hp != sorted(hp):
        raise LagrangianError("lifts must be homogeneous, even first")
    ab = [list(b) for b in P.a.basis]

    def split(x):
        cols = ab + nb
        rows = [[v[i] for v in cols] for i in range(g.n)]
        sol = solve(rows, list(x), f, len(cols))
        xa = [f.zero] * g.n
        for c, b in zip(sol[:len(ab)], ab):
            if c:
                xa = [s + c * t for s, t in zip(xa, b)]
        return xa, sol[len(ab):]

    c = [[None] * m for _ in range(m)]
    A = [[None] * m for _ in range(m)]
    for u in range(m):
        for v in range(m):
            xa, coords = split(g.bracket(nb[u], nb[v]))
            c[u][v] = coords
            A[u][v] = [w(xa, nb[k]) for k in range(m)]
    sd = SuperDim(hp.count(0), hp.count(1))
    names = ["u%d" % (i + 1) for i in range(m)]
    h = LieSuperalgebra(sd, c, f, names, "g/a")
    # w_h(nabla_u v, a) = -(-1)^{p(u)p(v)} w(v~, [u~, a])
    pair = [[w(nb[l], a) for l in range(m)] for a in ab]
    G = [[None] * m for _ in range(m)]
    for u in range(m):
        for v in range(m):
            s = -sign(hp[u] * hp[v])
            rhs = [s * w(nb[v], g.bracket(nb[u], a)) for a in ab]
            sol = solve(pair, rhs, f, m)
            if sol is None:
                raise LagrangianError("pairing between g/a and a is degenerate")
            G[u][v] = sol
    nabla = Connection(h, G)
    ext = tstar_extend(h, nabla, A, variant, check=verify)
    # Phi(x) = pi_h(x) + i_w(pi_a x)
    cols = []
    for i in range(g.n):
        xa, coords = split(g.unit(i))
        cols.append(ext.embed(coords, [w(xa, nb[k]) for k in range(m)]))
    iso = [[cols[j][r] for j in range(g.n)] for r in range(g.n)]
    checks = {}
    if verify:
        checks = verify_isomorphism(g, w, ext.algebra, ext.form, iso)
        rep = connection_check(nabla)
        checks["flat"] = rep.is_flat
        checks["torsion_free"] = rep.is_torsion_free
        bad = [k for k, v in checks.items() if not v]
        if bad:
            raise LagrangianError("extraction check failed: %s" % ", ".join(bad))
    return ExtractedTriple(variant, h, nabla, A, nb, iso, ext, checks)


def verify_isomorphism(g1, w1, g2, w2, M) -> dict:
    """Checks that M (column convention, g1 -> g2) preserves brackets and forms."""
    f = g1.field
    n = g1.n
    cols = [[M[r][j] for r in range(n)] for j in range(n)]
    bij = rank(M, f) == n if n else True
    brackets = all(_mv(M, g1.c[i][j], f) == g2.bracket(cols[i], cols[j])
                   for i in range(n) for j in range(n))
    forms = all(w2(cols[i], cols[j]) == w1.V[i][j] for i in range(n) for j in range(n))
    even = all(not M[r][j] or g1.parity(j) == g2.parity(r) for r in range(n) for j in range(n))
    return {"bijective": bij, "brackets": brackets, "form": forms, "even": even}


def _mv(M, v, f):
    return [sum((M[r][j] * v[j] for j in range(len(v)) if v[j]), f.zero) for r in range(len(M))]


def change_polarization_delta(P1: StrongPolarization, P2: StrongPolarization, lifts=None):
    """sigma with cocycle2 = cocycle1 + d sigma (h basis shared through the lifts).

    Returns (sigma, triple1, triple2). The h basis of P2 is the image of the
    lifts of P1 under the projection onto N2 along a.
    """
    if not (P1.g is P2.g or P1.g.same_structure(P2.g)) or P1.form != P2.form or P1.a != P2.a:
        raise LagrangianError("polarizations must share g, the form and a")
    t1 = extract_extension_triple(P1, lifts)
    nb1 = t1.lifts
    nb2 = []
    for v in nb1:
        _, coords = P2.split(v)
        b2 = P2.homogeneous_basis(P2.N)
        x = [P1.g.field.zero] * P1.g.n
        for c, b in zip(coords, b2):
            if c:
                x = [s + c * t for s, t in zip(x, b)]
        nb2.append(x)
    t2 = extract_extension_triple(P2, nb2)
    w = P1.form
    m = len(nb1)
    sigma = [[None] * m for _ in range(m)]
    for u in range(m):
        # tau = pi_a - pi_a' on the lift n_u gives n'_u - n_u
        tau = [y - x for x, y in zip(nb1[u], nb2[u])]
        sigma[u] = [w(tau, nb1[k]) for k in range(m)]
    return sigma, t1, t2


# Lagrangian extension cohomology

def _slots1(hp, mp, parity):
    return [(i, k) for i in range(len(hp)) for k in range(len(mp)) if mp[k] == (hp[i] + parity) % 2]


def _slots2(hp, mp, parity):
    n = len(hp)
    out = []
    for i in range(n):
        for j in range(i, n):
            if i == j and hp[i] == 0:
                continue
            for k in range(len(mp)):
                if mp[k] == (hp[i] + hp[j] + parity) % 2:
                    out.append((i, j, k))
    return out


def _F_from(vec, slots, n, m, f):
    F = [[f.zero] * m for _ in range(n)]
    for x, (i, k) in zip(vec, slots):
        F[i][k] = x
    return F


def _A_from(vec, slots, hp, m, f):
    n = len(hp)
    A = [[[f.zero] * m for _ in range(n)] for _ in range(n)]
    for x, (i, j, k) in zip(vec, slots):
        A[i][j][k] = x
        if i != j:
            A[j][i][k] = -sign(hp[i] * hp[j]) * x
    return A


def _A_to(A, slots):
    return [A[i][j][k] for (i, j, k) in slots]


def _flatten(T):
    if isinstance(T, list):
        out = []
        for t in T:
            out.extend(_flatten(t))
        return out
    return [T]


@dataclass
class CohomologyBlock:
    parity: int
    c1: int
    c1_L: int
    c2: int
    z2: int
    z2_L: int
    b2: int
    b2_L: int
    b2_cap_z2L: int
    basis_z2_L: list
    basis_b2_L: list
    representatives: list

    @property
    def h2_L(self):
        return self.z2_L - self.b2_L

    @property
    def kernel_to_ordinary(self):
        # dim of (B^2 cap Z^2_L) / B^2_L
        return self.b2_cap_z2L - self.b2_L

    def as_dict(self):
        return {"parity": self.parity, "C1": self.c1, "C1_L": self.c1_L, "C2": self.c2,
                "Z2": self.z2, "Z2_L": self.z2_L, "B2": self.b2, "B2_L": self.b2_L,
                "H2_L": self.h2_L, "kernel_to_ordinary": self.kernel_to_ordinary}


def lagrangian_cohomology(h: LieSuperalgebra, nabla: Connection, variant: str = "tstar",
                          parities=(0, 1)) -> dict:
    """Parity-graded C^1_L, Z^2_L, d(C^1_L) and H^2_L (all dimensions exact)."""
    variant = normalize_variant(variant)
    if not is_flat_torsion_free(nabla):
        raise LagrangianError("connection must be even, flat and torsion-free")
    mod = dual_module(nabla, variant)
    return {d: _cohomology_block(h, mod, d) for d in parities}


def _cohomology_block(h, mod, d) -> CohomologyBlock:
    f = h.field
    n = h.n
    hp = list(h.parities)
    mp = mod.parities
    s1 = _slots1(hp, mp, d)
    s2 = _slots2(hp, mp, d)
    # C^1_L
    idx1 = {s: t for t, s in enumerate(s1)}
    rows = []
    for (i, k) in s1:
        if (k, i) in idx1:
            row = [f.zero] * len(s1)
            row[idx1[(i, k)]] += f.one
            row[idx1[(k, i)]] -= sign(hp[i] * hp[k])
            if any(row):
                rows.append(row)
        else:
            row = [f.zero] * len(s1)
            row[idx1[(i, k)]] = f.one
            rows.append(row)
    c1L = nullspace(rows, f, len(s1))
    # d on all of C^1 and on C^1_L, expressed in C^2 coordinates
    full1 = identity(f, len(s1))
    img_all = [_A_to(coboundary1(h, mod, _F_from(v, s1, n, n, f), d), s2) for v in full1]
    img_L = [_A_to(coboundary1(h, mod, _F_from(v, s1, n, n, f), d), s2) for v in c1L]
    # Z^2: kernel of d on C^2
    dcols = [_flatten(coboundary2(h, mod, _A_from(e, s2, hp, n, f), d))
             for e in identity(f, len(s2))]
    zrows = [[col[r] for col in dcols] for r in range(len(dcols[0]))] if dcols else []
    # Lagrangian condition
    lrows = []
    for u, v, w in itertools.product(range(n), repeat=3):
        row = []
        for e in identity(f, len(s2)):
            A = _A_from(e, s2, hp, n, f)
            row.append(sign(hp[u] * hp[w]) * A[u][v][w] + sign(hp[v] * hp[u]) * A[v][w][u]
                       + sign(hp[w] * hp[v]) * A[w][u][v])
        if any(row):
            lrows.append(row)
    z2 = nullspace(zrows, f, len(s2))
    z2L = nullspace(zrows + lrows, f, len(s2))
    B = Subspace(f, len(s2), img_all)
    BL = Subspace(f, len(s2), img_L)
    ZL = Subspace(f, len(s2), z2L)
    if not BL <= ZL:
        raise LagrangianError("coboundaries of Lagrangian cochains leave Z^2_L")
    cap = B.intersection(ZL)
    reps = []
    cur = BL
    for v in ZL.basis:
        if not cur.contains(v):
            reps.append(_A_from(v, s2, hp, n, f))
            cur = cur + Subspace(f, len(s2), [v])
    return CohomologyBlock(d, len(s1), len(c1L), len(s2), len(z2), ZL.dim, B.dim, BL.dim, cap.dim,
                           [_A_from(v, s2, hp, n, f) for v in ZL.basis],
                           [_A_from(v, s2, hp, n, f) for v in BL.basis], reps)


def same_extension_class(h: LieSuperalgebra, nabla: Connection, A1, A2, variant: str = "tstar"):
    """(True, sigma, iso) when A2 = A1 + d sigma with sigma in C^1_L, else (False, None, None).

    iso is the matrix of (u, xi) -> (u, xi + sigma(u)) from the extension
    built on A2 to the one built on A1; it is verified before returning.
    """
    variant = normalize_variant(variant)
    mod = dual_module(nabla, variant)
    f = h.field
    n = h.n
    hp = list(h.parities)
    for A in (A1, A2):
        bad = lagrangian_cocycle_violation(h, A)
        if bad:
            raise LagrangianError("cocycle fails the Lagrangian condition at %s" % (bad,))
    s1 = _slots1(hp, mod.parities, 0)
    s2 = _slots2(hp, mod.parities, 0)
    diff = [b - a for a, b in zip(_A_to(A1, s2), _A_to(A2, s2))]
    idx1 = {s: t for t, s in enumerate(s1)}
    sym = []
    for (i, k) in s1:
        row = [f.zero] * len(s1)
        row[idx1[(i, k)]] += f.one
        if (k, i) in idx1:
            row[idx1[(k, i)]] -= sign(hp[i] * hp[k])
        if any(row):
            sym.append(row)
    cols = [_A_to(coboundary1(h, mod, _F_from(e, s1, n, n, f), 0), s2) for e in identity(f, len(s1))]
    rows = [[c[r] for c in cols] for r in range(len(s2))] + sym
    rhs = diff + [f.zero] * len(sym)
    sol = solve(rows, rhs, f, len(s1))
    if sol is None:
        return False, None, None
    sigma = _F_from(sol, s1, n, n, f)
    e1 = tstar_extend(h, nabla, A1, variant)
    e2 = tstar_extend(h, nabla, A2, variant)
    N = 2 * n
    M = zeros(f, N, N)
    for i in range(n):
        M[e1.h_pos[i]][e2.h_pos[i]] = f.one
        M[e1.m_pos[i]][e2.m_pos[i]] = f.one
        for k in range(n):
            if sigma[i][k]:
                M[e1.m_pos[k]][e2.h_pos[i]] = sigma[i][k]
    checks = verify_isomorphism(e2.algebra, e2.form, e1.algebra, e1.form, M)
    if not all(checks.values()):
        raise LagrangianError("transport map failed: %s" % checks)
    return True, sigma, M


# quotients by I-perp

@dataclass
class QuotientPairing:
    h: LieSuperalgebra
    lifts: list
    ideal_basis: list
    pairing: list
    connection: Connection
    checks: dict


def quotient_pairing(g: LieSuperalgebra, w: BilinearForm, I: Subspace) -> QuotientPairing:
    """h = g / I^perp paired with I, and the induced connection on h."""
    f = g.field
    if not is_ideal(g, I):
        raise LagrangianError("I is not an ideal")
    Ip = orthogonal_complement(w, I)
    if any(any(g.bracket(x, y)) for x in I.basis for y in Ip.basis):
        raise LagrangianError("[I, I^perp] != 0")
    lifts = [g.unit(i) for i in Ip.complement_indices()]
    m = len(lifts)
    hp = [g.vector_parity(v) for v in lifts]
    ib = [list(b) for b in I.basis]
    pb = [list(b) for b in Ip.basis]

    def hcoords(x):
        cols = lifts + pb
        rows = [[v[i] for v in cols] for i in range(g.n)]
        return solve(rows, list(x), f, len(cols))[:m]

    c = [[hcoords(g.bracket(lifts[u], lifts[v])) for v in range(m)] for u in range(m)]
    h = LieSuperalgebra(SuperDim(hp.count(0), hp.count(1)), c, f, None, "g/I^perp")
    pairing = [[w(lifts[u], a) for a in ib] for u in range(m)]

    def connection_from(ls):
        rows = [[w(ls[l], a) for l in range(m)] for a in ib]
        G = [[None] * m for _ in range(m)]
        for u in range(m):
            for v in range(m):
                s = -sign(hp[u] * hp[v])
                rhs = [s * w(ls[v], g.bracket(ls[u], a)) for a in ib]
                G[u][v] = solve(rows, rhs, f, m)
        return G

    G = connection_from(lifts)
    # a second family of lifts: shift by I^perp vectors of the same parity
    shifted = []
    for u, v in enumerate(lifts):
        extra = [b for b in pb if g.vector_parity(b) == hp[u]]
        x = list(v)
        for b in extra:
            x = [s + t for s, t in zip(x, b)]
        shifted.append(x)
    G2 = connection_from(shifted)
    pairing2 = [[w(shifted[u], a) for a in ib] for u in range(m)]
    checks = {
        "nondegenerate": rank(pairing, f) == m == len(ib),
        "lift_independent": pairing2 == pairing and G2 == G,
    }
    nabla = Connection(h, G) if all(row is not None for r in G for row in r) else None
    if nabla is not None:
        rep = connection_check(nabla)
        checks.update(flat=rep.is_flat, torsion_free=rep.is_torsion_free, even=rep.is_even)
    return QuotientPairing(h, lifts, ib, pairing, nabla, checks)


# Lagrangian ideals

def find_lagrangian_ideals(g: LieSuperalgebra, w: BilinearForm, limit: int = 12) -> list:
    """Heuristic search: (subspace, strategy) pairs, without duplicates."""
    from .algebra import center, derived_series, lower_central_series
    f = g.field
    out = []
    seen = set()

    def consider(s, why):
        if s.dim * 2 != g.n or s in seen:
            return
        seen.add(s)
        if s.is_graded(g.parities) and is_ideal(g, s) and orthogonal_complement(w, s) == s:
            out.append((s, why))

    for k, s in enumerate(derived_series(g)):
        consider(s, "derived series term %d" % k)
    for k, s in enumerate(lower_central_series(g)):
        consider(s, "lower central series term %d" % k)
    consider(center(g), "center")
    for combo in itertools.combinations(range(g.n), g.n // 2):
        consider(Subspace(f, g.n, [g.unit(i) for i in combo]), "basis vectors %s" % (list(combo),))
        if len(out) >= limit:
            break
    return out
