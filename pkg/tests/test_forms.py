"""Bilinear forms: wedges, anti-symmetry, closedness, non-degeneracy and the dimension rule."""
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from superfrob.algebra import SuperDim
from superfrob.catalog import instantiate, load_catalog
from superfrob.field import QQ, Field
from superfrob.forms import (BilinearForm, FormFamily, antisymmetric_basis, exists_nondegenerate_in_space,
                             form_from_wedge, is_antisymmetric, is_antisymmetric_via_upsetting, is_closed,
                             is_lagrangian, is_nondegenerate, parity_shift_form, solve_closed_antisymmetric_forms,
                             symbolic_det, wedge_expression)
from superfrob.linalg import Subspace

from support import closed_forms_dim, form_closed_oracle, sgn, sym_form_det

sdims = st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(lambda t: sum(t) >= 1).map(lambda t: SuperDim(*t))


@st.composite
def antisymmetric_forms(draw, parity=None):
    sd = draw(sdims)
    basis = antisymmetric_basis(sd, QQ, parity)
    V = [[Fraction(0)] * sd.n for _ in range(sd.n)]
    for B in basis:
        c = draw(st.integers(-3, 3))
        V = [[a + c * b for a, b in zip(r, s)] for r, s in zip(V, B)]
    return BilinearForm(sd, V, QQ)


@st.composite
def raw_forms(draw):
    sd = draw(sdims)
    V = [[Fraction(draw(st.integers(-2, 2))) for _ in range(sd.n)] for _ in range(sd.n)]
    return BilinearForm(sd, V, QQ)


def names(n):
    return ["e%d" % (i + 1) for i in range(n)]


def test_wedge_convention():
    sd = SuperDim(1, 1)
    w = form_from_wedge("e2^e2", sd, QQ, names(2))
    assert w.V == [[0, 0], [0, -2]]
    w = form_from_wedge("e1^e2", sd, QQ, names(2))
    assert w.V == [[0, 1], [-1, 0]]
    assert is_antisymmetric(w)


@settings(max_examples=80, deadline=None)
@given(antisymmetric_forms())
def test_wedge_expression_round_trip(w):
    expr = wedge_expression(w, names(w.n))
    assert form_from_wedge(expr, w.sdim, QQ, names(w.n)) == w


def test_wedge_expression_prime_field():
    F5 = Field(5)
    sd = SuperDim(2, 0)
    w = form_from_wedge("2*e1^e2", sd, F5, names(2))
    assert form_from_wedge(wedge_expression(w, names(2)), sd, F5, names(2)) == w


@settings(max_examples=120, deadline=None)
@given(raw_forms())
def test_antisymmetry_two_ways(w):
    direct = all(w.V[j][i] == -sgn(p * q) * w.V[i][j]
                 for i, p in enumerate(w.sdim.parities) for j, q in enumerate(w.sdim.parities))
    assert is_antisymmetric(w) == direct == is_antisymmetric_via_upsetting(w)


@settings(max_examples=60, deadline=None)
@given(antisymmetric_forms(parity=0) | antisymmetric_forms(parity=1))
def test_parity_shift_makes_symmetric(w):
    v, order = parity_shift_form(w)
    assert sorted(order) == list(range(w.n))
    q = v.sdim.parities
    assert all(v.V[j][i] == sgn(q[i] * q[j]) * v.V[i][j] for i in range(v.n) for j in range(v.n))
    assert v.parity() == w.parity() or w.parity() == "zero"
    assert is_nondegenerate(v) == is_nondegenerate(w)


# the dimension rule: even forms need n_even even, odd forms need n_even = n_odd

@settings(max_examples=80, deadline=None)
@given(antisymmetric_forms(parity=0))
def test_even_nondegenerate_needs_even_rank(w):
    if is_nondegenerate(w):
        assert w.sdim.n_even % 2 == 0


@settings(max_examples=80, deadline=None)
@given(antisymmetric_forms(parity=1))
def test_odd_nondegenerate_needs_balanced_dims(w):
    if is_nondegenerate(w):
        assert w.sdim.n_even == w.sdim.n_odd


@pytest.mark.parametrize("ne", range(4))
@pytest.mark.parametrize("no", range(4))
@pytest.mark.parametrize("parity", [0, 1])
def test_dimension_rule_is_sharp(ne, no, parity):
    sd = SuperDim(ne, no)
    if sd.n == 0:
        return
    forms = [BilinearForm(sd, V, QQ) for V in antisymmetric_basis(sd, QQ, parity)]
    want = ne % 2 == 0 if parity == 0 else ne == no
    res = exists_nondegenerate_in_space(forms, QQ, sd)
    assert res.exists == want
    if not want:
        assert res.certified_none


# closed forms against the oracle

def _catalog_algebras():
    out = []
    for e in load_catalog():
        pts = e.sample_points(2)
        for pt in pts:
            g, _ = instantiate(e, pt)
            out.append(pytest.param(g, id="%s%s" % (e.id, "" if not pt else "@" + ",".join(map(str, pt)))))
    return out


@pytest.mark.parametrize("g", _catalog_algebras())
def test_closed_space_matches_oracle(g):
    space = solve_closed_antisymmetric_forms(g)
    assert len(space) == closed_forms_dim(g.c, g.parities)
    for w in space:
        assert is_antisymmetric(w)
        assert form_closed_oracle(g.c, g.parities, w.V)


@pytest.mark.parametrize("key", ["T1.D7pq", "T2.2A1", "T4.D12", "T6.A113A1"])
def test_none_rows_symbolic_det_oracle(key):
    e = next(x for x in load_catalog() if x.id == key)
    for pt in e.sample_points(3):
        g, _ = instantiate(e, pt)
        space = solve_closed_antisymmetric_forms(g)
        xs = sympy.symbols("t0:%d" % len(space))
        M = sympy.zeros(g.n, g.n)
        for x, w in zip(xs, space):
            M += x * sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in w.V])
        assert sympy.expand(M.det()) == 0
        assert symbolic_det(space, QQ).is_zero()


@pytest.mark.parametrize("key", ["T1.D5", "T2.C11A", "T1.D7pp", "T3.D1"])
def test_family_det_matches_sympy(key):
    e = next(x for x in load_catalog() if x.id == key)
    g, fams = instantiate(e, e.sample_points(1)[0])
    fam = fams[0]
    xs = [sympy.Symbol(p) for p in fam.params]
    M = sympy.Matrix([[sum((sympy.Rational(c.numerator, c.denominator)
                            * sympy.prod([x ** k for x, k in zip(xs, mon)]) for mon, c in entry.terms.items()),
                           sympy.Integer(0)) for entry in row] for row in fam.M])
    det = fam.det_poly()
    ours = sum((sympy.Rational(c.numerator, c.denominator) * sympy.prod([x ** k for x, k in zip(xs, mon)])
                for mon, c in det.terms.items()), sympy.Integer(0))
    assert sympy.expand(ours - M.det()) == 0


def test_sympy_det_of_witness():
    e = next(x for x in load_catalog() if x.id == "T1.D5")
    g, fams = instantiate(e)
    w = fams[0].at([QQ(1)] * fams[0].nvars)
    assert sym_form_det(w.V) != 0
    assert is_closed(g, w)


def test_family_coefficients_and_parity():
    sd = SuperDim(2, 2)
    fam = FormFamily.from_wedges("l*e1^e4 + m*(e1^e3 + e2^e4)", sd, QQ, names(4), ["l", "m"], ["m"])
    const, fl, fm = fam.coefficient_forms()
    assert const.parity() == "zero"
    assert fl.V[0][3] == 1 and fm.V[1][3] == 1
    assert fam.parity() == 1
    assert fam.admissible([QQ(0), QQ(1)]) and not fam.admissible([QQ(1), QQ(0)])


def test_lagrangian_subspace():
    sd = SuperDim(2, 0)
    w = form_from_wedge("e1^e2", sd, QQ, names(2))
    assert is_lagrangian(w, Subspace(QQ, 2, [[1, 0]]))
    assert not is_lagrangian(w, Subspace(QQ, 2, [[1, 0], [0, 1]]))
