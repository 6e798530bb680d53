"""Derivations, adjoints with respect to a form, and dual representations."""
from __future__ import annotations

from .algebra import LieSuperalgebra
from .field import sign
from .forms import BilinearForm
from .linalg import Subspace, inverse, matmul, matvec, nullspace, transpose, zeros


class SuperLinearMap:
    """A homogeneous linear map; column convention, f(e_j) = sum_k M[k][j] e_k."""

    def __init__(self, M, parity: int, field):
        self.M = [[field(x) for x in row] for row in M]
        self.parity = parity
        self.field = field

    @classmethod
    def zero(cls, n, parity, field):
        return cls(zeros(field, n, n), parity, field)

    @property
    def n(self):
        return len(self.M)

    def __call__(self, v):
        return matvec(self.M, v, self.field)

    def compose(self, other: "SuperLinearMap") -> "SuperLinearMap":
        return SuperLinearMap(matmul(self.M, other.M, self.field), (self.parity + other.parity) % 2,
                              self.field)

    def __add__(self, other):
        return SuperLinearMap([[a + b for a, b in zip(r, s)] for r, s in zip(self.M, other.M)],
                              self.parity, self.field)

    def __sub__(self, other):
        return SuperLinearMap([[a - b for a, b in zip(r, s)] for r, s in zip(self.M, other.M)],
                              self.parity, self.field)

    def scale(self, c):
        c = self.field(c)
        return SuperLinearMap([[c * a for a in r] for r in self.M], self.parity, self.field)

    def is_zero(self):
        return not any(any(r) for r in self.M)

    def __eq__(self, other):
        return isinstance(other, SuperLinearMap) and self.M == other.M

    def respects_parity(self, parities) -> bool:
        return all(not self.M[k][j] or parities[k] == (parities[j] + self.parity) % 2
                   for k in range(self.n) for j in range(self.n))

    def __repr__(self):
        return "SuperLinearMap(parity=%d, %r)" % (self.parity, self.M)


def derivation_residual(g: LieSuperalgebra, D: SuperLinearMap):
    """First (i, j) where D[e_i,e_j] != [De_i,e_j] + (-1)^{p(D)p(i)}[e_i,De_j]."""
    p = g.parities
    for i in range(g.n):
        for j in range(g.n):
            lhs = D(g.c[i][j])
            r1 = g.bracket(D(g.unit(i)), g.unit(j))
            r2 = g.bracket(g.unit(i), D(g.unit(j)))
            s = sign(D.parity * p[i])
            res = [a - b - s * c for a, b, c in zip(lhs, r1, r2)]
            if any(res):
                return (i, j, res)
    return None


def is_derivation(g: LieSuperalgebra, D: SuperLinearMap) -> bool:
    return D.respects_parity(g.parities) and derivation_residual(g, D) is None


def derivation_space(g: LieSuperalgebra, parity: int) -> list:
    """Basis of the homogeneous derivations of the given parity."""
    n = g.n
    p = g.parities
    f = g.field
    slots = [(k, l) for k in range(n) for l in range(n) if p[k] == (p[l] + parity) % 2]
    idx = {s: u for u, s in enumerate(slots)}
    c = g.c
    rows = []
    for i in range(n):
        si = sign(parity * p[i])
        for j in range(n):
            for m in range(n):
                row = [f.zero] * len(slots)
                # D([e_i, e_j])_m
                for k in range(n):
                    if c[i][j][k] and (m, k) in idx:
                        row[idx[(m, k)]] += c[i][j][k]
                # -[D e_i, e_j]_m
                for k in range(n):
                    if c[k][j][m] and (k, i) in idx:
                        row[idx[(k, i)]] -= c[k][j][m]
                # -s [e_i, D e_j]_m
                for k in range(n):
                    if c[i][k][m] and (k, j) in idx:
                        row[idx[(k, j)]] -= si * c[i][k][m]
                if any(row):
                    rows.append(row)
    out = []
    for sol in nullspace(rows, f, len(slots)):
        M = zeros(f, n, n)
        for u, x in enumerate(sol):
            if x:
                k, l = slots[u]
                M[k][l] = x
        out.append(SuperLinearMap(M, parity, f))
    return out


def inner_derivation(g: LieSuperalgebra, x) -> SuperLinearMap:
    par = g.vector_parity(x)
    return SuperLinearMap(g.ad(x), par if par is not None else 0, g.field)


def adjoint(D: SuperLinearMap, w: BilinearForm, parities) -> SuperLinearMap:
    """D* with w(Df, g) = (-1)^{p(f)p(D)} w(f, D* g); needs w non-degenerate."""
    f = D.field
    V = w.V
    S = [[f.zero] * len(V) for _ in V]
    for i in range(len(V)):
        S[i][i] = f(sign(parities[i] * D.parity))
    Vinv = inverse(V, f)
    M = matmul(Vinv, matmul(S, matmul(transpose(D.M), V, f), f), f)
    return SuperLinearMap(M, D.parity, f)


def adjoint_residual(D, Dstar, w: BilinearForm, parities):
    n = len(w.V)
    f = D.field
    for i in range(n):
        for j in range(n):
            ei = [f.one if t == i else f.zero for t in range(n)]
            ej = [f.one if t == j else f.zero for t in range(n)]
            lhs = w(D(ei), ej)
            rhs = sign(parities[i] * D.parity) * w(ei, Dstar(ej))
            if lhs != rhs:
                return (i, j)
    return None


# dual representations on an ideal

def coadjoint_on_ideal(g: LieSuperalgebra, ideal: Subspace, shifted: bool = False) -> list:
    """Matrices of ad*_I(e_i) on I* (or of its parity shift on Pi(I*)).

    ad*_I(x) xi = -(-1)^{p(x)p(xi)} xi o ad_x and
    Pi ad*_I(x)(Pi xi) = -(-1)^{p(x)(p(xi)+1)} Pi(xi o ad_x), in the basis
    dual to the canonical basis of I.
    """
    f = g.field
    basis = ideal.basis
    m = len(basis)
    bpar = [g.vector_parity(b) for b in basis]
    mats = []
    for i in range(g.n):
        px = g.parity(i)
        ei = g.unit(i)
        coords = []
        for b in basis:
            cvec = ideal.coordinates(g.bracket(ei, b))
            if cvec is None:
                raise ValueError("subspace is not an ideal")
            coords.append(cvec)
        M = zeros(f, m, m)
        for k in range(m):
            s = -sign(px * ((bpar[k] + 1) if shifted else bpar[k]))
            for l in range(m):
                # (f_k^* o ad_x)(f_l) = coefficient of f_k in [x, f_l]
                x = coords[l][k]
                if x:
                    M[l][k] = s * x
        mats.append(M)
    return mats


def module_parities(g: LieSuperalgebra, ideal: Subspace, shifted: bool = False) -> list:
    return [(g.vector_parity(b) + (1 if shifted else 0)) % 2 for b in ideal.basis]


def representation_residual(g: LieSuperalgebra, mats, parities_mod=None):
    """First (i, j) where rho is not a representation of g, or None."""
    f = g.field
    p = g.parities
    for i in range(g.n):
        for j in range(g.n):
            ab = matmul(mats[i], mats[j], f)
            ba = matmul(mats[j], mats[i], f)
            s = sign(p[i] * p[j])
            lhs = [[x - s * y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]
            rhs = zeros(f, len(ab), len(ab))
            for k, ck in enumerate(g.c[i][j]):
                if ck:
                    rhs = [[x + ck * y for x, y in zip(r1, r2)] for r1, r2 in zip(rhs, mats[k])]
            if lhs != rhs:
                return (i, j)
    return None
