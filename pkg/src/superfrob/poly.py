"""Sparse multivariate polynomials with exact coefficients.

Monomials are exponent tuples; the leading term uses lex order, which is all
exact division needs.
"""
from __future__ import annotations

from .field import Field


class Poly:
    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        self.terms = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[tuple(e)] = c

    @classmethod
    def const(cls, field, nvars, c):
        c = field(c)
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, field, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): field.one})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly(self.field, self.nvars, {(0,) * self.nvars: self.field(other)})

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e)
            v = c if v is None else v + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Poly(self.field, self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.field(other)
            if not c:
                return Poly(self.field, self.nvars)
            return Poly(self.field, self.nvars, {e: v * c for e, v in self.terms.items()})
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e)
                t[e] = c1 * c2 if v is None else v + c1 * c2
        return Poly(self.field, self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(self.field, self.nvars, self.field.one)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = self._coerce(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def divmod(self, d: "Poly"):
        """Multivariate division by a single polynomial (lex order)."""
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        de, dc = d.leading()
        q = Poly(self.field, self.nvars)
        r = Poly(self.field, self.nvars)
        p = self
        while p.terms:
            pe, pc = p.leading()
            if all(a >= b for a, b in zip(pe, de)):
                m = Poly(self.field, self.nvars, {tuple(a - b for a, b in zip(pe, de)): pc / dc})
                q = q + m
                p = p - m * d
            else:
                lt = Poly(self.field, self.nvars, {pe: pc})
                r = r + lt
                p = p - lt
        return q, r

    def exact_div(self, d: "Poly") -> "Poly":
        q, r = self.divmod(d)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other: "Poly") -> bool:
        """True if self divides other."""
        return not other.divmod(self)[1]

    def evaluate(self, point):
        f = self.field
        total = f.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * f(x) ** k
            total = total + v
        return total

    def substitute(self, i: int, value) -> "Poly":
        """Set variable i to a constant, keeping the variable count."""
        value = self.field(value)
        t: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            v = c * value ** k if k else c
            ne = e[:i] + (0,) + e[i + 1:]
            w = t.get(ne)
            t[ne] = v if w is None else w + v
        return Poly(self.field, self.nvars, t)

    def variables(self) -> set:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def format(self, names) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                names[i] if k == 1 else "%s^%d" % (names[i], k) for i, k in enumerate(e) if k
            )
            cs = self.field.format(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append("%s*%s" % (cs if "/" not in cs else "(" + cs + ")", mono))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return "Poly(%s)" % self.format(["x%d" % i for i in range(self.nvars)])


def bareiss_det(m, field: Field, nvars: int) -> Poly:
    """Fraction-free determinant of a square matrix of Poly entries."""
    n = len(m)
    if n == 0:
        return Poly.const(field, nvars, field.one)
    a = [[x if isinstance(x, Poly) else Poly.const(field, nvars, x) for x in row] for row in m]
    sgn = 1
    prev = Poly.const(field, nvars, field.one)
    for k in range(n - 1):
        if a[k][k].is_zero():
            # pick the sparsest usable pivot row
            cands = [i for i in range(k + 1, n) if not a[i][k].is_zero()]
            if not cands:
                return Poly(field, nvars)
            i = min(cands, key=lambda r: len(a[r][k].terms))
            a[k], a[i] = a[i], a[k]
            sgn = -sgn
        pk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                t = pk * a[i][j]
                if aik:
                    t = t - aik * a[k][j]
                if prev.is_constant():
                    c = prev.constant_value()
                    a[i][j] = t * (field.one / c) if c != field.one else t
                else:
                    a[i][j] = t.exact_div(prev)
            a[i][k] = Poly(field, nvars)
        prev = pk
    d = a[n - 1][n - 1]
    return d if sgn == 1 else -d
