"""Bilinear forms on super vector spaces: anti-symmetry, closedness, solving.

A form is stored by its raw value matrix V[i][j] = w(e_i, e_j).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .algebra import LieSuperalgebra, SuperDim
from .expr import parse_scalar, parse_wedges
from .field import Field, sign
from .linalg import Subspace, det, nullspace
from .poly import Poly, bareiss_det


class BilinearForm:
    def __init__(self, sdim: SuperDim, V, field: Field, name: str = ""):
        self.sdim = sdim
        self.field = field
        n = sdim.n
        self.V = [[field(V[i][j]) for j in range(n)] for i in range(n)]
        self.name = name

    @property
    def n(self):
        return self.sdim.n

    def __call__(self, x, y):
        s = self.field.zero
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.V[i]
            for j, b in enumerate(y):
                if b and row[j]:
                    s = s + a * b * row[j]
        return s

    def parity(self):
        """0 (even), 1 (odd), 'zero' or 'mixed'."""
        p = self.sdim.parities
        same = any(self.V[i][j] for i in range(self.n) for j in range(self.n) if p[i] == p[j])
        cross = any(self.V[i][j] for i in range(self.n) for j in range(self.n) if p[i] != p[j])
        if same and cross:
            return "mixed"
        if same:
            return 0
        if cross:
            return 1
        return "zero"

    def component(self, parity: int) -> "BilinearForm":
        p = self.sdim.parities
        V = [[x if (p[i] + p[j]) % 2 == parity else self.field.zero for j, x in enumerate(row)]
             for i, row in enumerate(self.V)]
        return BilinearForm(self.sdim, V, self.field, self.name)

    def __add__(self, other):
        return BilinearForm(self.sdim, [[a + b for a, b in zip(r, s)] for r, s in zip(self.V, other.V)],
                            self.field)

    def scale(self, c):
        c = self.field(c)
        return BilinearForm(self.sdim, [[c * a for a in r] for r in self.V], self.field, self.name)

    def __eq__(self, other):
        return isinstance(other, BilinearForm) and self.sdim == other.sdim and self.V == other.V

    def restrict(self, basis) -> list:
        """Value matrix on a list of vectors."""
        return [[self(x, y) for y in basis] for x in basis]

    def __repr__(self):
        return "BilinearForm(%s, parity=%s)" % (self.name or "?", self.parity())


def wedge_matrix(wedges: dict, parities, field: Field, nvars: int):
    """Raw matrix (entries Poly) of a combination of wedges e_a^* ^ e_b^*.

    e_a^* ^ e_b^* = s (e_a^* (x) e_b^* - s e_b^* (x) e_a^*), s = (-1)^{p(a)p(b)};
    so an odd e_a^* ^ e_a^* takes the value -2 on (e_a, e_a).
    """
    n = len(parities)
    M = [[Poly(field, nvars) for _ in range(n)] for _ in range(n)]
    for (a, b), t in wedges.items():
        s = sign(parities[a] * parities[b])
        M[a][b] = M[a][b] + t * s
        M[b][a] = M[b][a] - t
    return M


def form_from_wedge(expr: str, sdim: SuperDim, field: Field, names, env=None, name="") -> BilinearForm:
    w = parse_wedges(expr, field, names, (), env)
    M = wedge_matrix(w, sdim.parities, field, 0)
    return BilinearForm(sdim, [[x.constant_value() for x in r] for r in M], field, name)


def wedge_expression(w: BilinearForm, names) -> str:
    """Inverse of form_from_wedge for an anti-symmetric form."""
    f = w.field
    p = w.sdim.parities
    parts = []
    for i in range(w.n):
        for j in range(i, w.n):
            if i == j:
                t = -w.V[i][i] / 2 if p[i] else f.zero
            else:
                t = -w.V[j][i]
            if not t:
                continue
            mono = "%s^%s" % (names[i], names[j])
            neg = f.char == 0 and t < 0
            c = -t if neg else t
            term = mono if c == f.one else "%s*%s" % (f.format(c), mono)
            parts.append(("- " if neg else "+ ") + term)
    if not parts:
        return "0"
    out = " ".join(parts)
    return out[2:] if out.startswith("+ ") else "-" + out[2:]


# gram matrices and the upsetting map

def gram_matrix(w: BilinearForm) -> list:
    """B_ij = (-1)^{p(w)p(e_i)} w(e_i, e_j) for homogeneous w."""
    par = w.parity()
    if par == "mixed":
        raise ValueError("gram matrix needs a homogeneous form")
    pw = 0 if par == "zero" else par
    p = w.sdim.parities
    return [[sign(pw * p[i]) * x for x in row] for i, row in enumerate(w.V)]


def upsetting(B, sdim: SuperDim, parity: int) -> list:
    """u(B) for B = [[R, S], [T, U]] in even/odd blocks."""
    n = sdim.n
    p = sdim.parities
    out = [[None] * n for _ in range(n)]
    sb = sign(parity)
    for i in range(n):
        for j in range(n):
            x = B[j][i]
            if p[i] == 0 and p[j] == 0:
                out[i][j] = x
            elif p[i] == 1 and p[j] == 1:
                out[i][j] = -x
            else:
                out[i][j] = sb * x
    return out


def is_antisymmetric(w: BilinearForm) -> bool:
    p = w.sdim.parities
    V = w.V
    return all(V[j][i] == -sign(p[i] * p[j]) * V[i][j] for i in range(w.n) for j in range(w.n))


def is_antisymmetric_via_upsetting(w: BilinearForm) -> bool:
    """Same test through u(B) = -B, applied to each homogeneous component."""
    for par in (0, 1):
        comp = w.component(par)
        B = gram_matrix(comp) if comp.parity() != "zero" else comp.V
        U = upsetting(B, w.sdim, par)
        if any(U[i][j] != -B[i][j] for i in range(w.n) for j in range(w.n)):
            return False
    return True


# closedness

def closedness_residual(g: LieSuperalgebra, V, a: int, b: int, c: int):
    p = g.parities

    def w(i, vec):
        s = 0
        row = V[i]
        for k, x in enumerate(vec):
            if x and row[k]:
                s = s + row[k] * x
        return s

    return (sign(p[a] * p[c]) * w(a, g.c[b][c])
            + sign(p[c] * p[b]) * w(c, g.c[a][b])
            + sign(p[b] * p[a]) * w(b, g.c[c][a]))


def closedness_violation(g: LieSuperalgebra, w: BilinearForm):
    """First basis triple where the form fails to be closed, or None."""
    for a, b, c in itertools.product(range(g.n), repeat=3):
        r = closedness_residual(g, w.V, a, b, c)
        if r:
            return (a, b, c, r)
    return None


def is_closed(g: LieSuperalgebra, w: BilinearForm) -> bool:
    return closedness_violation(g, w) is None


def is_nondegenerate(w: BilinearForm) -> bool:
    return bool(det(w.V, w.field))


def is_quasi_frobenius_form(g: LieSuperalgebra, w: BilinearForm) -> bool:
    return is_antisymmetric(w) and is_closed(g, w) and is_nondegenerate(w)


# parity change

def parity_shift_form(w: BilinearForm) -> tuple:
    """The form on Pi(V): w^Pi(Pi x, Pi y) = (-1)^{p(w) + p(x) + p(x)p(y)} w(x, y).

    Returns (form, order) where order[k] is the index in V of the k-th basis
    vector of Pi(V) (odd vectors of V become the even ones).
    """
    par = w.parity()
    if par == "mixed":
        raise ValueError("parity shift needs a homogeneous form")
    pw = 0 if par == "zero" else par
    p = w.sdim.parities
    order = [i for i in range(w.n) if p[i] == 1] + [i for i in range(w.n) if p[i] == 0]
    sd = SuperDim(w.sdim.n_odd, w.sdim.n_even)
    V = [[sign(pw + p[i] + p[i] * p[j]) * w.V[i][j] for j in order] for i in order]
    return BilinearForm(sd, V, w.field), order


# subspaces

def orthogonal_complement(w: BilinearForm, s: Subspace) -> Subspace:
    """{v : w(v, x) = 0 for all x in s}."""
    rows = []
    for x in s.basis:
        rows.append([sum((w.V[i][k] * x[k] for k in range(w.n) if x[k]), w.field.zero)
                     for i in range(w.n)])
    return Subspace(w.field, w.n, nullspace(rows, w.field, w.n))


def is_isotropic(w: BilinearForm, s: Subspace) -> bool:
    return all(not w(x, y) for x in s.basis for y in s.basis)


def is_lagrangian(w: BilinearForm, s: Subspace) -> bool:
    return orthogonal_complement(w, s) == s


# solving for closed anti-symmetric forms

def antisymmetric_basis(sdim: SuperDim, field: Field, parity=None) -> list:
    """Basis of raw matrices of anti-symmetric forms (of one parity, or all)."""
    p = sdim.parities
    n = sdim.n
    out = []
    for i in range(n):
        for j in range(i, n):
            par = (p[i] + p[j]) % 2
            if parity is not None and par != parity:
                continue
            if i == j and p[i] == 0:
                continue
            V = [[field.zero] * n for _ in range(n)]
            V[i][j] = field.one
            if i != j:
                V[j][i] = -sign(p[i] * p[j]) * field.one
            out.append(V)
    return out


def solve_closed_antisymmetric_forms(g: LieSuperalgebra, parity=None) -> list:
    """Basis of the space of closed anti-symmetric forms.

    parity None gives the full space (even and odd parts together).
    """
    if parity is None:
        return (solve_closed_antisymmetric_forms(g, 0)
                + solve_closed_antisymmetric_forms(g, 1))
    f = g.field
    n = g.n
    basis = antisymmetric_basis(g.sdim, f, parity)
    if not basis:
        return []
    # each raw entry (i, k) as a combination of unknowns
    entry = {}
    for u, V in enumerate(basis):
        for i in range(n):
            for k in range(n):
                if V[i][k]:
                    entry.setdefault((i, k), []).append((u, V[i][k]))
    p = g.parities
    rows = set()
    for a in range(n):
        for b in range(n):
            for c in range(n):
                row = [f.zero] * len(basis)
                for s, i, vec in ((sign(p[a] * p[c]), a, g.c[b][c]),
                                  (sign(p[c] * p[b]), c, g.c[a][b]),
                                  (sign(p[b] * p[a]), b, g.c[c][a])):
                    for k, x in enumerate(vec):
                        if x:
                            for u, coeff in entry.get((i, k), ()):
                                row[u] = row[u] + s * x * coeff
                if any(row):
                    rows.add(tuple(row))
    sols = nullspace(sorted(rows, key=repr), f, len(basis))
    out = []
    for sol in sols:
        V = [[f.zero] * n for _ in range(n)]
        for u, x in enumerate(sol):
            if x:
                B = basis[u]
                for i in range(n):
                    for k in range(n):
                        if B[i][k]:
                            V[i][k] = V[i][k] + x * B[i][k]
        out.append(BilinearForm(g.sdim, V, f))
    return out


@dataclass
class NondegeneracyResult:
    exists: bool
    dimension: int
    witness: BilinearForm | None = None
    det_poly: Poly | None = None
    method: str = ""
    notes: list = dc_field(default_factory=list)

    @property
    def certified_none(self) -> bool:
        return not self.exists and self.det_poly is not None and self.det_poly.is_zero()


def symbolic_det(forms, field: Field) -> Poly:
    k = len(forms)
    n = forms[0].n
    M = [[Poly(field, k) for _ in range(n)] for _ in range(n)]
    for t, w in enumerate(forms):
        var = Poly.var(field, k, t)
        for i in range(n):
            for j in range(n):
                if w.V[i][j]:
                    M[i][j] = M[i][j] + var * w.V[i][j]
    return bareiss_det(M, field, k)


def _combine(forms, point, field):
    n = forms[0].n
    V = [[field.zero] * n for _ in range(n)]
    for c, w in zip(point, forms):
        c = field(c)
        if c:
            for i in range(n):
                for j in range(n):
                    if w.V[i][j]:
                        V[i][j] = V[i][j] + c * w.V[i][j]
    return BilinearForm(forms[0].sdim, V, field)


def _probe_points(k: int, count: int):
    """Deterministic small-integer points, a cheap search for a witness."""
    pts = [[1] * k]
    for t in range(count):
        pts.append([((7 * t + 3 * i * i + 5 * i + 1) % 11) - 5 for i in range(k)])
    return pts


def exists_nondegenerate_in_space(forms, field: Field | None = None, sdim=None,
                                  probes: int = 24) -> NondegeneracyResult:
    """Does the linear span of `forms` contain a non-degenerate form?

    Answered by the symbolic determinant of a generic combination: a witness
    is searched first; a 'no' is always certified by det == 0 identically.
    """
    if not forms:
        if sdim is not None and sdim.n == 0:
            return NondegeneracyResult(True, 0, None, None, "empty")
        field = field or (forms[0].field if forms else None)
        return NondegeneracyResult(False, 0, None, Poly(field, 0), "empty space")
    field = forms[0].field
    k = len(forms)
    for pt in _probe_points(k, probes):
        w = _combine(forms, pt, field)
        if is_nondegenerate(w):
            return NondegeneracyResult(True, k, w, None, "witness")
    d = symbolic_det(forms, field)
    if d.is_zero():
        return NondegeneracyResult(False, k, None, d, "symbolic determinant")
    # det is nonzero: hunt for a point off its zero set
    if field.char == 0:
        for pt in _grid(k, d.degree() + 1):
            if d.evaluate(pt):
                return NondegeneracyResult(True, k, _combine(forms, pt, field), d, "symbolic determinant")
    else:
        for pt in itertools.product(range(field.char), repeat=k):
            if d.evaluate(pt):
                return NondegeneracyResult(True, k, _combine(forms, pt, field), d, "symbolic determinant")
        return NondegeneracyResult(True, k, None, d, "symbolic determinant",
                                   ["determinant vanishes on every rational point of the prime field"])
    raise AssertionError("nonzero polynomial vanished on a full grid")


def _grid(k: int, size: int):
    # a nonzero polynomial of degree < size cannot vanish on {0..size-1}^k
    return itertools.product(range(size), repeat=k)


def grid_nondegenerate_check(forms, field: Field) -> bool:
    """Exhaustive evaluation on a grid large enough to decide det != 0."""
    n = forms[0].n
    for pt in _grid(len(forms), n + 1):
        if is_nondegenerate(_combine(forms, pt, field)):
            return True
    return False


# parameterised families

class FormFamily:
    """A form whose values are linear polynomials in named parameters."""

    def __init__(self, sdim: SuperDim, field: Field, params, M, constraints=(), name="",
                 expression=""):
        self.sdim = sdim
        self.field = field
        self.params = list(params)
        self.M = M
        self.constraints = list(constraints)
        self.name = name
        self.expression = expression

    @classmethod
    def from_wedges(cls, expr: str, sdim: SuperDim, field: Field, names, params=(),
                    constraints=(), env=None, name="") -> "FormFamily":
        params = list(params)
        w = parse_wedges(expr, field, names, params, env)
        M = wedge_matrix(w, sdim.parities, field, len(params))
        cons = [parse_scalar(c, field, env, params) for c in constraints]
        return cls(sdim, field, params, M, cons, name, expr)

    @property
    def nvars(self):
        return len(self.params)

    def at(self, values) -> BilinearForm:
        if isinstance(values, dict):
            values = [values[p] for p in self.params]
        V = [[x.evaluate(values) for x in row] for row in self.M]
        return BilinearForm(self.sdim, V, self.field, self.name)

    def admissible(self, values) -> bool:
        if isinstance(values, dict):
            values = [values[p] for p in self.params]
        return all(c.evaluate(values) for c in self.constraints)

    def is_linear(self) -> bool:
        return all(x.degree() <= 1 for row in self.M for x in row)

    def coefficient_forms(self) -> list:
        """Constant part followed by the coefficient form of each parameter."""
        n = self.sdim.n
        out = []
        for t in range(-1, self.nvars):
            e = tuple(0 for _ in range(self.nvars)) if t < 0 else tuple(
                1 if i == t else 0 for i in range(self.nvars))
            V = [[self.M[i][j].terms.get(e, self.field.zero) for j in range(n)] for i in range(n)]
            out.append(BilinearForm(self.sdim, V, self.field))
        return out

    def parity(self):
        kinds = {w.parity() for w in self.coefficient_forms()} - {"zero"}
        if not kinds:
            return "zero"
        if kinds == {0}:
            return 0
        if kinds == {1}:
            return 1
        return "mixed"

    def is_antisymmetric(self) -> bool:
        return all(is_antisymmetric(w) for w in self.coefficient_forms())

    def is_closed(self, g: LieSuperalgebra) -> bool:
        # closedness is linear in the form
        return self.is_linear() and all(is_closed(g, w) for w in self.coefficient_forms())

    def det_poly(self) -> Poly:
        return bareiss_det(self.M, self.field, self.nvars)
