"""A small expression language for vectors and wedge forms.

    l*e1^e4 + m*(e1^e3 + e2^e4) - 1/2*e3^e3

Basis names denote dual basis covectors, ``^`` (or the wedge sign) builds
wedges, identifiers listed as parameters become polynomial variables and
constants supplied in ``env`` are substituted as numbers.
"""
from __future__ import annotations

import re

from .field import Field, parse_rational
from .poly import Poly

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([^\W\d][\w']*)|(\^|∧|\*|/|\+|-|\(|\)|,))", re.UNICODE)


def tokenize(text: str):
    pos = 0
    out = []
    text = text.replace("−", "-")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError("cannot parse %r at position %d" % (text, pos))
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif ident is not None:
            out.append(("id", ident))
        else:
            out.append(("op", "^" if op == "∧" else op))
        pos = m.end()
    return out


class _Vec(dict):
    """Coefficients of basis covectors."""


class _Wedge(dict):
    """Coefficients of ordered wedge pairs (a, b)."""


class ExprParser:
    def __init__(self, field: Field, basis_names, params=(), env=None):
        self.field = field
        self.basis = {name: i for i, name in enumerate(basis_names)}
        self.params = list(params)
        self.env = dict(env or {})
        self.nvars = len(self.params)

    def parse(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        val = self._expr()
        if self.i != len(self.toks):
            raise ValueError("trailing input in %r" % text)
        return val

    # scalar helpers
    def _const(self, x):
        return Poly.const(self.field, self.nvars, x)

    def _peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def _take(self):
        if self.i >= len(self.toks):
            raise ValueError("unexpected end of expression")
        t = self.toks[self.i]
        self.i += 1
        return t

    def _expr(self):
        val = self._term()
        while self._peek() in (("op", "+"), ("op", "-")):
            op = self._take()[1]
            rhs = self._term()
            val = _add(val, rhs if op == "+" else _scale(rhs, self._const(-1)))
        return val

    def _term(self):
        val = self._unary()
        while True:
            kind, tok = self._peek()
            if (kind, tok) == ("op", "*"):
                self._take()
                val = _mul(val, self._unary())
            elif (kind, tok) == ("op", "/"):
                self._take()
                d = self._unary()
                if not isinstance(d, Poly) or not d.is_constant() or not d:
                    raise ValueError("can only divide by a nonzero number")
                val = _scale(val, self._const(self.field.one / d.constant_value()))
            elif kind in ("num", "id") or (kind, tok) == ("op", "("):
                val = _mul(val, self._unary())
            else:
                return val

    def _unary(self):
        kind, tok = self._peek()
        if (kind, tok) == ("op", "-"):
            self._take()
            return _scale(self._unary(), self._const(-1))
        if (kind, tok) == ("op", "+"):
            self._take()
            return self._unary()
        return self._wedge()

    def _wedge(self):
        val = self._atom()
        while self._peek() == ("op", "^"):
            self._take()
            rhs = self._atom()
            if not isinstance(val, _Vec) or not isinstance(rhs, _Vec):
                raise ValueError("wedge needs covectors on both sides")
            w = _Wedge()
            for a, x in val.items():
                for b, y in rhs.items():
                    w[(a, b)] = w.get((a, b), self._const(0)) + x * y
            val = w
        return val

    def _atom(self):
        kind, tok = self._take()
        if kind == "num":
            return self._const(self.field(parse_rational(tok)))
        if kind == "id":
            if tok in self.basis:
                return _Vec({self.basis[tok]: self._const(1)})
            if tok in self.params:
                return Poly.var(self.field, self.nvars, self.params.index(tok))
            if tok in self.env:
                return self._const(self.field(self.env[tok]))
            raise ValueError("unknown identifier %r" % tok)
        if tok == "(":
            val = self._expr()
            if self._take() != ("op", ")"):
                raise ValueError("missing ')'")
            return val
        raise ValueError("unexpected token %r" % tok)


def _scale(v, s: Poly):
    if isinstance(v, Poly):
        return v * s
    out = type(v)()
    for k, x in v.items():
        out[k] = x * s
    return out


def _add(a, b):
    if isinstance(a, Poly) and isinstance(b, Poly):
        return a + b
    if type(a) is not type(b):
        raise ValueError("cannot add %s and %s" % (type(a).__name__, type(b).__name__))
    out = type(a)(a)
    for k, x in b.items():
        out[k] = out[k] + x if k in out else x
    return out


def _mul(a, b):
    if isinstance(a, Poly):
        return _scale(b, a)
    if isinstance(b, Poly):
        return _scale(a, b)
    raise ValueError("cannot multiply two non-scalars (use ^ for wedges)")


def parse_scalar(text, field: Field, env=None, params=()):
    p = ExprParser(field, [], params, env)
    v = p.parse(str(text))
    if not isinstance(v, Poly):
        raise ValueError("expected a scalar expression: %r" % text)
    return v


def parse_number(text, field: Field, env=None):
    v = parse_scalar(text, field, env)
    if not v.is_constant():
        raise ValueError("expression %r is not a number" % text)
    return v.constant_value()


def parse_vector(text, field: Field, basis_names, env=None):
    """Dense vector from an expression such as 'e1 + 1/2*e3'."""
    p = ExprParser(field, basis_names, (), env)
    v = p.parse(str(text))
    if not isinstance(v, _Vec):
        raise ValueError("expected a vector expression: %r" % text)
    out = [field.zero] * len(basis_names)
    for k, x in v.items():
        out[k] = x.constant_value()
    return out


def parse_wedges(text, field: Field, basis_names, params=(), env=None):
    """Dict {(a, b): Poly} of wedge coefficients."""
    p = ExprParser(field, basis_names, params, env)
    v = p.parse(str(text))
    if isinstance(v, Poly) and v.is_zero():
        return {}
    if not isinstance(v, _Wedge):
        raise ValueError("expected a combination of wedges: %r" % text)
    return {k: x for k, x in v.items() if x}
