"""Dense exact linear algebra over a Field (row reduction, kernels, subspaces)."""
from __future__ import annotations

from typing import Sequence

from .field import Field


def zeros(field: Field, rows: int, cols: int) -> list[list]:
    return [[field.zero] * cols for _ in range(rows)]


def identity(field: Field, n: int) -> list[list]:
    m = zeros(field, n, n)
    for i in range(n):
        m[i][i] = field.one
    return m


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(r) for r in zip(*m)] if m else []


def matmul(a, b, field: Field) -> list[list]:
    n, k = len(a), len(b)
    cols = len(b[0]) if b else 0
    out = zeros(field, n, cols)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if not x:
                continue
            bt = b[t]
            for j in range(cols):
                if bt[j]:
                    oi[j] = oi[j] + x * bt[j]
    return out


def matvec(a, v, field: Field) -> list:
    out = []
    for row in a:
        s = field.zero
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def rref(rows: Sequence[Sequence], field: Field, ncols: int | None = None):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = None
        for i in range(r, nrows):
            if m[i][c]:
                p = i
                break
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = field.one / m[r][c]
        pr = [x * inv if x else x for x in m[r]]
        m[r] = pr
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                mi = m[i]
                for j in range(c, ncols):
                    if pr[j]:
                        mi[j] = mi[j] - f * pr[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows, field: Field) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows, field: Field, ncols: int) -> list[list]:
    """Basis of {x : A x = 0}, one vector per free column."""
    red, pivots = rref(rows, field, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for r, pc in enumerate(pivots):
            if red[r][free]:
                v[pc] = -red[r][free]
        basis.append(v)
    return basis


def solve(rows, rhs, field: Field, ncols: int):
    """One solution of A x = b (free variables set to zero) or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, field, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [field.zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


def det(m, field: Field):
    n = len(m)
    a = [list(r) for r in m]
    d = field.one
    for c in range(n):
        p = None
        for i in range(c, n):
            if a[i][c]:
                p = i
                break
        if p is None:
            return field.zero
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d = d * a[c][c]
        inv = field.one / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                ai, ac = a[i], a[c]
                for j in range(c, n):
                    if ac[j]:
                        ai[j] = ai[j] - f * ac[j]
    return d


def inverse(m, field: Field):
    n = len(m)
    aug = [list(r) + e for r, e in zip(m, identity(field, n))]
    red, pivots = rref(aug, field, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


class Subspace:
    """A subspace of field^n kept as a canonical RREF basis."""

    def __init__(self, field: Field, n: int, vectors=()):
        self.field = field
        self.n = n
        red, pivots = rref([list(v) for v in vectors], field, n)
        self.basis = tuple(tuple(r) for r in red)
        self.pivots = tuple(pivots)

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, identity(field, n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def coordinates(self, v):
        """Coefficients of v in the RREF basis, or None if v is not in the span."""
        coeffs = [v[p] for p in self.pivots]
        for i in range(self.n):
            s = self.field.zero
            for c, b in zip(coeffs, self.basis):
                if c and b[i]:
                    s = s + c * b[i]
            if s != v[i]:
                return None
        return coeffs

    def contains(self, v) -> bool:
        return self.coordinates(v) is not None

    def __contains__(self, v):
        return self.contains(v)

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, self.basis))

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.field, self.n, list(self.basis) + list(other.basis))

    def intersection(self, other: "Subspace") -> "Subspace":
        # x in self and other: solve sum a_i b_i - sum c_j d_j = 0
        if not self.basis or not other.basis:
            return Subspace(self.field, self.n)
        k = self.dim
        cols = list(self.basis) + [[-x for x in d] for d in other.basis]
        rows = [[c[i] for c in cols] for i in range(self.n)]
        vecs = []
        for sol in nullspace(rows, self.field, len(cols)):
            v = [self.field.zero] * self.n
            for a, b in zip(sol[:k], self.basis):
                if a:
                    v = [x + a * y for x, y in zip(v, b)]
            vecs.append(v)
        return Subspace(self.field, self.n, vecs)

    def complement_indices(self) -> list[int]:
        """Standard basis indices whose vectors span a complement."""
        piv = set(self.pivots)
        return [i for i in range(self.n) if i not in piv]

    def is_graded(self, parities) -> bool:
        for b in self.basis:
            ev = [x if parities[i] == 0 else self.field.zero for i, x in enumerate(b)]
            if not self.contains(ev):
                return False
        return True

    def part(self, parities, parity: int) -> "Subspace":
        """The homogeneous part of a graded subspace."""
        vecs = [[x if parities[i] == parity else self.field.zero for i, x in enumerate(b)]
                for b in self.basis]
        return Subspace(self.field, self.n, vecs)

    def __repr__(self):
        return "Subspace(dim=%d, n=%d)" % (self.dim, self.n)
