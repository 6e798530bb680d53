"""Exact scalar fields: the rationals and prime fields of odd characteristic."""
from __future__ import annotations

import re
from fractions import Fraction


class FpElement:
    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError("mixing elements of different prime fields")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return FpElement(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return FpElement(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return FpElement(o - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return FpElement(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return FpElement(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return FpElement(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return FpElement(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return FpElement(pow(self.v, -1, self.p), self.p) ** (-k)
        return FpElement(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return False
        return self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "FpElement(%d, %d)" % (self.v, self.p)

    def __str__(self):
        # symmetric representative reads better in reports
        v = self.v if self.v <= self.p // 2 else self.v - self.p
        return str(v)


_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    m = _RATIONAL.match(str(text))
    if not m:
        raise ValueError("not a rational literal: %r" % (text,))
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError("zero denominator in %r" % (text,))
    return Fraction(num, den)


class Field:
    """A coefficient field; characteristic 0 (rationals) or an odd prime."""

    def __init__(self, char: int = 0):
        if char == 2:
            raise ValueError("characteristic 2 is not supported")
        if char < 0 or char == 1:
            raise ValueError("invalid characteristic %d" % char)
        if char and not _is_prime(char):
            raise ValueError("%d is not prime" % char)
        self.char = char
        self.zero = self(0)
        self.one = self(1)

    def __call__(self, x):
        if self.char == 0:
            if isinstance(x, FpElement):
                raise ValueError("cannot coerce a prime field element to Q")
            if isinstance(x, str):
                return parse_rational(x)
            return Fraction(x)
        if isinstance(x, FpElement):
            if x.p != self.char:
                raise ValueError("element of GF(%d) used in GF(%d)" % (x.p, self.char))
            return x
        if isinstance(x, str):
            x = parse_rational(x)
        if isinstance(x, Fraction):
            if x.denominator % self.char == 0:
                raise ZeroDivisionError("%s has no image in GF(%d)" % (x, self.char))
            return FpElement(x.numerator * pow(x.denominator, -1, self.char), self.char)
        return FpElement(int(x), self.char)

    def __eq__(self, other):
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self):
        return hash(("Field", self.char))

    @property
    def name(self) -> str:
        return "Q" if self.char == 0 else "Fp(%d)" % self.char

    def __repr__(self):
        return self.name

    def format(self, x) -> str:
        if self.char == 0:
            return str(Fraction(x))
        return str(self(x))

    def elements(self):
        """Finite enumeration; only for prime fields."""
        if self.char == 0:
            raise ValueError("Q is infinite")
        return [self(i) for i in range(self.char)]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


QQ = Field(0)


def field_from_name(name: str) -> Field:
    name = name.strip()
    if name in ("Q", "QQ"):
        return QQ
    m = re.match(r"^(?:Fp|GF|F)\((\d+)\)$", name)
    if not m:
        raise ValueError("unknown field %r (expected 'Q' or 'Fp(p)')" % name)
    return Field(int(m.group(1)))


def sign(k: int) -> int:
    """(-1)**k for an integer exponent."""
    return -1 if k & 1 else 1
