"""Lie superalgebra axioms, series and basis changes."""
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from superfrob.algebra import (LieSuperalgebra, SuperDim, center, derived_algebra, is_nilpotent,
                               is_solvable, validate_algebra)
from superfrob.catalog import make_filiform
from superfrob.field import QQ, Field
from superfrob.linalg import rank

from support import alg, jacobi_defect, sgn


@st.composite
def graded_constants(draw, max_even=2, max_odd=2):
    ne = draw(st.integers(0, max_even))
    no = draw(st.integers(0, max_odd))
    assume(ne + no >= 1)
    n = ne + no
    par = [0] * ne + [1] * no
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            if i == j and par[i] == 0:
                continue
            for k in range(n):
                if par[k] == (par[i] + par[j]) % 2:
                    x = Fraction(draw(st.sampled_from([0, 0, 0, 1, -1, 2])))
                    c[i][j][k] = x
                    if i != j:
                        c[j][i][k] = -sgn(par[i] * par[j]) * x
    return LieSuperalgebra(SuperDim(ne, no), c, QQ)


@settings(max_examples=150, deadline=None)
@given(graded_constants())
def test_validation_agrees_with_jacobi_oracle(g):
    assert g.is_valid() == (jacobi_defect(g.c, g.parities) is None)


@st.composite
def homogeneous_basis(draw, g):
    ne = g.sdim.n_even
    while True:
        B = []
        for i in range(g.n):
            lo, hi = (0, ne) if i < ne else (ne, g.n)
            v = [Fraction(0)] * g.n
            for t in range(lo, hi):
                v[t] = Fraction(draw(st.integers(-2, 2)))
            B.append(v)
        if rank(B, QQ) == g.n:
            return B


@settings(max_examples=60, deadline=None)
@given(graded_constants(), st.data())
def test_basis_change_preserves_invariants(g, data):
    B = data.draw(homogeneous_basis(g))
    h = g.change_basis(B)
    assert h.is_valid() == g.is_valid()
    if g.is_valid():
        assert center(h).dim == center(g).dim
        assert derived_algebra(h).dim == derived_algebra(g).dim
        assert is_solvable(h) == is_solvable(g)
        assert is_nilpotent(h) == is_nilpotent(g)


def test_even_square_rejected():
    g = LieSuperalgebra.from_brackets(2, 0, {(0, 0): {1: 1}})
    bad = validate_algebra(g, first_only=True)
    assert bad and bad[0].kind == "anticommutativity" and bad[0].indices == (0, 0)


def test_grading_rejected():
    g = LieSuperalgebra.from_brackets(1, 1, {(0, 1): {0: 1}})
    assert validate_algebra(g)[0].kind == "grading"


def test_jacobi_rejected():
    g = alg(3, 0, {(0, 1): {1: 1}, (0, 2): {2: 1}, (1, 2): {0: 1}})
    assert any(v.kind == "jacobi" for v in g.validate())


def test_char3_cubic_condition():
    F3 = Field(3)
    br = {(0, 1): {2: -1}, (1, 1): {0: -1}}
    g = LieSuperalgebra.from_brackets(1, 2, br, F3, ["a", "e", "f"])
    kinds = [v.kind for v in g.validate()]
    assert kinds == ["char3_cubic"]
    assert g.validate()[0].indices == (1, 1, 1)
    # over Q the same table already breaks the Jacobi identity
    h = LieSuperalgebra.from_brackets(1, 2, br, QQ)
    assert "jacobi" in [v.kind for v in h.validate()]


def test_odd_square_allowed():
    g = alg(1, 1, {(1, 1): {0: 1}})
    assert g.is_valid()
    assert derived_algebra(g).dim == 1
    assert is_nilpotent(g)


def test_center_and_series():
    g = alg(2, 2, {(0, 1): {1: 1}, (0, 2): {2: Fraction(1, 2)}, (2, 2): {1: 1}})
    assert g.is_valid()
    assert [list(b) for b in center(g).basis] == [[0, 0, 0, 1]]
    assert derived_algebra(g).dim == 2
    assert is_solvable(g) and not is_nilpotent(g)


@pytest.mark.parametrize("n,m", [(2, 0), (4, 3), (5, 5), (6, 2)])
def test_filiform_nilpotent(n, m):
    g = make_filiform(n, m)
    assert g.is_valid() and is_nilpotent(g)
    assert derived_algebra(g).dim == max(n - 2, 0) + max(m - 1, 0)


def test_sl2_not_solvable():
    sl2 = alg(3, 0, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}})
    assert sl2.is_valid()
    assert not is_solvable(sl2)
