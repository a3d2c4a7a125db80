import pytest
from hypothesis import given, strategies as st

from augsheaf.cobar import cobar_diff, gen
from augsheaf.dga import (build_dga, check_d_squared, evaluate, identity, mat_mul, matrix_hom,
                          sigma, zeros)
from augsheaf.front import cell_name
from augsheaf.words import WordSum

from conftest import ALL_FRONTS, dga, front


def diag(signs):
    m = zeros(len(signs))
    for k, s in enumerate(signs):
        m[k][k] = WordSum.scalar(s)
    return m


def test_one_sheet_has_no_generators():
    a = dga("one_sheet")
    assert a.generators == () and check_d_squared(a)


def test_two_sheet_degrees():
    a, f = dga("two_sheets"), front("two_sheets")
    gap = 1
    assert len(a.generators) == len(f.base.simplices)
    for g in a.generators:
        assert g.degree == gap + len(g.cell) - 2


def test_two_sheet_edge_differential():
    a = dga("two_sheets")
    sign = -1  # mu(A) = 1
    expected = WordSum({("m[0;1,2]",): sign, ("m[1;1,2]",): -sign})
    assert a.d_generator("m[0,1;1,2]") == expected


@pytest.mark.parametrize("name", ALL_FRONTS)
def test_d_squared(name):
    a = dga(name)
    assert a.well_definedness == []
    assert check_d_squared(a)


@pytest.mark.parametrize("name", ALL_FRONTS)
def test_grading_formula(name):
    a, f = dga(name), front(name)
    for g in a.generators:
        S = f.sheets(g.cell)
        assert g.degree == f.mu(g.cell, S[g.i - 1]) - f.mu(g.cell, S[g.j - 1]) + len(g.cell) - 2
        assert f.above(g.cell, S[g.i - 1], S[g.j - 1])


@pytest.mark.parametrize("name", ALL_FRONTS)
def test_differential_lowers_degree(name):
    a = dga(name)
    for g in a.generators:
        d = a.d_generator(g.id)
        if not d.is_zero():
            assert a.poly_degree(d) == g.degree - 1


@pytest.mark.parametrize("name", ALL_FRONTS)
def test_entrywise_equals_cobar_form(name):
    a, f = dga(name), front(name)
    for I in f.base.simplices:
        n = len(f.sheets(I))
        rhs = mat_mul(diag(a.theta(I)), matrix_hom(a, I, cobar_diff(gen(I))))
        for r in range(n):
            for c in range(n):
                gid = f"m[{cell_name(I)};{r + 1},{c + 1}]"
                lhs = a.d_generator(gid) if gid in a.by_id else WordSum()
                assert lhs == rhs[r][c], (I, r, c)


@pytest.mark.parametrize("name", ALL_FRONTS)
def test_sigma_identity(name):
    a, f = dga(name), front(name)
    for I in f.base.simplices:
        T = diag(a.theta(I))
        for J in f.base.faces(I):
            M = a.M_I(I, J)
            sign = -1 if (len(J) - 2) % 2 else 1
            rhs = mat_mul(mat_mul(T, M), T)
            rhs = [[x * sign for x in row] for row in rhs]
            assert sigma(a, M) == rhs, (I, J)


def test_matrix_hom_unit_and_cusp_entry():
    a, f = dga("unknot_sphere"), front("unknot_sphere")
    assert matrix_hom(a, (0, 1), WordSum.scalar(1)) == identity(2)
    m = matrix_hom(a, (0, 1), gen((1,)))
    assert m[0][1] == WordSum.scalar(1) and m[1][0].is_zero()
    with pytest.raises(ValueError):
        matrix_hom(a, (0, 1), gen((2,)))


def test_theta_flip_breaks_d_squared():
    a = build_dga(front("unknot_sphere"), theta_flip=[((0, 1), 1)])
    assert not check_d_squared(a)


def test_evaluate():
    a = dga("crossing_circle")
    g0 = [g.id for g in a.generators if g.degree == 0]
    other = next(g.id for g in a.generators if g.degree != 0)
    eps = {g: 1 for g in g0}
    assert evaluate(a, eps, WordSum.scalar(1), 2) == 1
    assert evaluate(a, eps, WordSum.letter(other), 2) == 0
    x, y = g0[0], g0[-1]
    prod = WordSum.word([x, y])
    assert evaluate(a, {x: 2, y: 2}, prod, 3) == 1


@given(st.sampled_from(ALL_FRONTS), st.data())
def test_leibniz_on_products(name, data):
    a = dga(name)
    if not a.generators:
        return
    ids = st.sampled_from([g.id for g in a.generators])
    x, y = data.draw(ids), data.draw(ids)
    X, Y = WordSum.letter(x), WordSum.letter(y)
    sign = -1 if a.degree(x) % 2 else 1
    assert a.differential(X * Y) == a.differential(X) * Y + sign * (X * a.differential(Y))
    assert a.differential(a.differential(X * Y)).is_zero()
