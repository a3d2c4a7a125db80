from hypothesis import given, strategies as st

from augsheaf.cobar import (cobar_degree, cobar_diff, diff_generator, faces, gen, phi,
                            reduced_diff, reduced_diff_by_conjugation, simplex_index)
from augsheaf.words import WordSum

from oracles import all_simplices, cobar_d, cobar_d_letter

import pytest


def as_dict(x: WordSum) -> dict:
    return {w: c for w, c in x.terms.items() if c}


def words(n):
    letters = st.sampled_from(all_simplices(n))
    word = st.lists(letters, min_size=0, max_size=3).map(tuple)
    return st.dictionaries(word, st.integers(-3, 3), max_size=4).map(WordSum)


@pytest.mark.parametrize("n", range(5))
def test_generator_differential_matches_defining_sums(n):
    for I in all_simplices(n):
        assert as_dict(diff_generator(I)) == cobar_d_letter(I)
        assert as_dict(diff_generator(I, reduced=True)) == cobar_d_letter(I, reduced=True)


@pytest.mark.parametrize("n", range(5))
def test_squares_vanish_on_generators(n):
    for I in all_simplices(n):
        assert cobar_diff(cobar_diff(gen(I))).is_zero()
        assert reduced_diff(reduced_diff(gen(I))).is_zero()
        assert cobar_d(cobar_d({(I,): 1})) == {}
        assert cobar_d(cobar_d({(I,): 1}, True), True) == {}


@pytest.mark.parametrize("n", range(5))
def test_reduced_is_conjugate(n):
    for I in all_simplices(n):
        assert reduced_diff(gen(I)) == reduced_diff_by_conjugation(gen(I))


def test_edge_differential_example():
    # D(e_01) = -e_1 + e_0 + e_0 e_01 - e_01 e_1
    d = as_dict(diff_generator((0, 1)))
    assert d == {((1,),): -1, ((0,),): 1, ((0,), (0, 1)): 1, ((0, 1), (1,)): -1}


def test_vertex_differential():
    assert as_dict(diff_generator((3,))) == {((3,), (3,)): 1}


def test_faces_order_and_validation():
    assert faces((0, 1)) == [(0,), (1,), (0, 1)]
    assert faces((0, 1, 2), include_self=False)[-1] == (1, 2)
    with pytest.raises(ValueError):
        simplex_index((1, 1))
    with pytest.raises(ValueError):
        simplex_index(())


@given(words(3))
def test_square_zero_on_products(x):
    assert cobar_diff(cobar_diff(x)).is_zero()
    assert reduced_diff(reduced_diff(x)).is_zero()


@given(words(3))
def test_matches_oracle_on_products(x):
    assert as_dict(cobar_diff(x)) == cobar_d(as_dict(x))
    assert as_dict(reduced_diff(x)) == cobar_d(as_dict(x), reduced=True)


@given(words(3))
def test_conjugation_identity(x):
    assert reduced_diff(x) == reduced_diff_by_conjugation(x)
    assert phi(phi(x, inverse=True)) == x


@given(words(2), words(2))
def test_leibniz(x, y):
    for a in x.terms:
        xa = WordSum({a: 1})
        deg = cobar_degree(xa)
        lhs = cobar_diff(xa * y)
        rhs = cobar_diff(xa) * y + (-1 if deg % 2 else 1) * (xa * cobar_diff(y))
        assert lhs == rhs


def test_differential_lowers_weight_by_one():
    for I in all_simplices(3):
        d = cobar_diff(gen(I))
        if not d.is_zero():
            assert cobar_degree(d) == cobar_degree(gen(I)) - 1
