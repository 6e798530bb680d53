"""Finite-dimensional Lie superalgebras given by dense structure constants."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations

from .field import QQ, Field, sign
from .linalg import Subspace, inverse, nullspace, transpose


@dataclass(frozen=True)
class SuperDim:
    n_even: int
    n_odd: int

    @property
    def n(self) -> int:
        return self.n_even + self.n_odd

    def parity(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return 0 if i < self.n_even else 1

    @property
    def parities(self) -> tuple:
        return (0,) * self.n_even + (1,) * self.n_odd

    def __str__(self):
        return "%d|%d" % (self.n_even, self.n_odd)


@dataclass
class Violation:
    kind: str
    indices: tuple
    residual: tuple

    def as_dict(self):
        return {"kind": self.kind, "indices": list(self.indices)}


class LieSuperalgebra:
    """Structure constants c[i][j][k]: [e_i, e_j] = sum_k c[i][j][k] e_k.

    Even basis vectors come first. Construction does not validate; call
    validate() (or validate_algebra) to get the list of violated axioms.
    """

    def __init__(self, sdim: SuperDim, c, field: Field = QQ, names=None, name: str = ""):
        self.sdim = sdim
        self.field = field
        n = sdim.n
        self.c = [[[field(c[i][j][k]) for k in range(n)] for j in range(n)] for i in range(n)]
        self.names = list(names) if names else ["e%d" % (i + 1) for i in range(n)]
        self.name = name
        self._ad = None

    # construction helpers
    @classmethod
    def from_brackets(cls, n_even: int, n_odd: int, brackets: dict, field: Field = QQ,
                      names=None, name: str = "", mirror: bool = True) -> "LieSuperalgebra":
        """brackets maps (i, j) to a coefficient dict {k: c} or a dense vector.

        Unspecified mirrored pairs are filled using super anti-commutativity.
        """
        sd = SuperDim(n_even, n_odd)
        n = sd.n
        c = [[[field.zero] * n for _ in range(n)] for _ in range(n)]
        given = set()
        for (i, j), val in brackets.items():
            vec = _as_vector(val, n, field)
            c[i][j] = vec
            given.add((i, j))
        if mirror:
            for (i, j) in list(given):
                if (j, i) not in given and i != j:
                    s = -sign(sd.parity(i) * sd.parity(j))
                    c[j][i] = [s * x for x in c[i][j]]
        return cls(sd, c, field, names, name)

    @classmethod
    def abelian(cls, n_even: int, n_odd: int, field: Field = QQ, names=None, name=""):
        return cls.from_brackets(n_even, n_odd, {}, field, names, name)

    @property
    def n(self) -> int:
        return self.sdim.n

    @property
    def parities(self):
        return self.sdim.parities

    def parity(self, i: int) -> int:
        return self.sdim.parity(i)

    def zero(self):
        return [self.field.zero] * self.n

    def unit(self, i: int):
        v = self.zero()
        v[i] = self.field.one
        return v

    def vector_parity(self, v):
        """0 or 1 for homogeneous nonzero v, None for zero or mixed vectors."""
        ev = any(v[i] for i in range(self.sdim.n_even))
        od = any(v[i] for i in range(self.sdim.n_even, self.n))
        if ev and not od:
            return 0
        if od and not ev:
            return 1
        return None

    def bracket(self, x, y):
        n = self.n
        out = [self.field.zero] * n
        for i in range(n):
            if not x[i]:
                continue
            ci = self.c[i]
            for j in range(n):
                if not y[j]:
                    continue
                s = x[i] * y[j]
                row = ci[j]
                for k in range(n):
                    if row[k]:
                        out[k] = out[k] + s * row[k]
        return out

    def ad(self, x):
        """Matrix (column convention) of ad_x."""
        n = self.n
        cols = [self.bracket(x, self.unit(j)) for j in range(n)]
        return transpose(cols)

    def ad_basis(self):
        if self._ad is None:
            self._ad = [self.ad(self.unit(i)) for i in range(self.n)]
        return self._ad

    def structure_key(self):
        return tuple(tuple(tuple(r) for r in m) for m in self.c)

    def same_structure(self, other: "LieSuperalgebra") -> bool:
        return (self.sdim == other.sdim and self.field == other.field
                and self.structure_key() == other.structure_key())

    def nonzero_brackets(self):
        """(i, j, vector) for i <= j with nonzero bracket."""
        out = []
        for i in range(self.n):
            for j in range(i, self.n):
                if any(self.c[i][j]):
                    out.append((i, j, self.c[i][j]))
        return out

    def validate(self) -> list:
        return validate_algebra(self)

    def is_valid(self) -> bool:
        return not validate_algebra(self, first_only=True)

    def change_basis(self, new_basis, names=None, name=None) -> "LieSuperalgebra":
        """Structure constants in a new homogeneous basis (even vectors first).

        new_basis is a list of vectors in old coordinates.
        """
        n = self.n
        par = []
        for v in new_basis:
            p = self.vector_parity(v)
            if p is None:
                raise ValueError("new basis vectors must be homogeneous and nonzero")
            par.append(p)
        if par != sorted(par):
            raise ValueError("new basis must list even vectors first")
        if par.count(0) != self.sdim.n_even or len(par) != n:
            raise ValueError("new basis has the wrong superdimension")
        P = transpose([list(v) for v in new_basis])
        Pinv = inverse(P, self.field)
        c = [[None] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                w = self.bracket(new_basis[a], new_basis[b])
                c[a][b] = [sum((Pinv[k][t] * w[t] for t in range(n) if w[t]), self.field.zero)
                           for k in range(n)]
        return LieSuperalgebra(self.sdim, c, self.field, names or self.names,
                               self.name if name is None else name)

    def __repr__(self):
        return "LieSuperalgebra(%s, sdim=%s, %s)" % (self.name or "?", self.sdim, self.field)


def _as_vector(val, n, field):
    if isinstance(val, dict):
        v = [field.zero] * n
        for k, x in val.items():
            v[k] = v[k] + field(x)
        return v
    return [field(x) for x in val]


def validate_algebra(g: LieSuperalgebra, first_only: bool = False) -> list:
    """List of axiom violations on basis elements (empty list means valid)."""
    out = []
    n = g.n
    p = g.parities
    f = g.field
    c = g.c
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if c[i][j][k] and p[k] != (p[i] + p[j]) % 2:
                    out.append(Violation("grading", (i, j, k), (c[i][j][k],)))
                    if first_only:
                        return out
    for i in range(n):
        for j in range(i, n):
            s = sign(p[i] * p[j])
            res = [c[j][i][k] + s * c[i][j][k] for k in range(n)]
            if any(res):
                out.append(Violation("anticommutativity", (i, j), tuple(res)))
                if first_only:
                    return out
    for a in range(n):
        for b in range(n):
            for cc in range(n):
                r = jacobi_term(g, a, b, cc)
                if any(r):
                    out.append(Violation("jacobi", (a, b, cc), tuple(r)))
                    if first_only:
                        return out
    if f.char == 3:
        odd = list(range(g.sdim.n_even, n))
        for r in _cubic_polarization(g, odd):
            out.append(r)
            if first_only:
                return out
    return out


def _nested(g, a, b, cc):
    # [e_a, [e_b, e_c]] straight from the structure constants
    c = g.c
    inner = c[b][cc]
    out = [g.field.zero] * g.n
    for m, x in enumerate(inner):
        if x:
            row = c[a][m]
            for k in range(g.n):
                if row[k]:
                    out[k] = out[k] + x * row[k]
    return out


def jacobi_term(g, a, b, cc):
    """(-1)^{p(a)p(c)} [a,[b,c]] + cyclic, on basis vectors."""
    p = g.parities
    t1 = _nested(g, a, b, cc)
    t2 = _nested(g, b, cc, a)
    t3 = _nested(g, cc, a, b)
    s1 = sign(p[a] * p[cc])
    s2 = sign(p[b] * p[a])
    s3 = sign(p[cc] * p[b])
    return [s1 * x + s2 * y + s3 * z for x, y, z in zip(t1, t2, t3)]


def _cubic_polarization(g, odd):
    """Coefficients of the cubic map f -> [f,[f,f]] on the odd part."""
    out = []
    for tri in combinations_with_replacement(odd, 3):
        total = g.zero()
        for perm in set(permutations(tri)):
            a, b, c = perm
            t = _nested(g, a, b, c)
            total = [x + y for x, y in zip(total, t)]
        if any(total):
            out.append(Violation("char3_cubic", tri, tuple(total)))
    return out


# subspaces and series

def span(g: LieSuperalgebra, vectors) -> Subspace:
    return Subspace(g.field, g.n, vectors)


def bracket_spaces(g: LieSuperalgebra, a: Subspace, b: Subspace) -> Subspace:
    vecs = [g.bracket(x, y) for x in a.basis for y in b.basis]
    return Subspace(g.field, g.n, vecs)


def center(g: LieSuperalgebra) -> Subspace:
    n = g.n
    # x with sum_j x_j c[j][i][k] = 0 for all i, k
    rows = []
    for i in range(n):
        for k in range(n):
            row = [g.c[j][i][k] for j in range(n)]
            if any(row):
                rows.append(row)
    return Subspace(g.field, n, nullspace(rows, g.field, n))


def centralizer(g: LieSuperalgebra, s: Subspace) -> Subspace:
    n = g.n
    rows = []
    for v in s.basis:
        cols = [g.bracket(g.unit(j), v) for j in range(n)]
        for k in range(n):
            row = [cols[j][k] for j in range(n)]
            if any(row):
                rows.append(row)
    return Subspace(g.field, n, nullspace(rows, g.field, n))


def derived_algebra(g: LieSuperalgebra) -> Subspace:
    full = Subspace.full(g.field, g.n)
    return bracket_spaces(g, full, full)


def derived_series(g: LieSuperalgebra) -> list:
    series = [Subspace.full(g.field, g.n)]
    while True:
        nxt = bracket_spaces(g, series[-1], series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def lower_central_series(g: LieSuperalgebra) -> list:
    full = Subspace.full(g.field, g.n)
    series = [full]
    while True:
        nxt = bracket_spaces(g, full, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def is_solvable(g: LieSuperalgebra) -> bool:
    return derived_series(g)[-1].dim == 0


def is_nilpotent(g: LieSuperalgebra) -> bool:
    return lower_central_series(g)[-1].dim == 0


def is_ideal(g: LieSuperalgebra, s: Subspace) -> bool:
    return all(s.contains(g.bracket(g.unit(i), v)) for i in range(g.n) for v in s.basis)


def is_subalgebra(g: LieSuperalgebra, s: Subspace) -> bool:
    return all(s.contains(g.bracket(u, v)) for u in s.basis for v in s.basis)


def odd_bracket_trivial(g: LieSuperalgebra) -> bool:
    ne = g.sdim.n_even
    return not any(any(g.c[i][j]) for i in range(ne, g.n) for j in range(ne, g.n))
