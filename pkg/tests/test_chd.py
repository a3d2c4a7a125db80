import itertools

import numpy as np
import pytest

from augsheaf.chd import (CHD, Augmentation, EnumerationBoundExceeded, aug_to_chd,
                          boundary_extend, chd_to_aug, enumerate_augmentations, validate_chd)
from augsheaf.homalg import rank

from conftest import ALL_FRONTS, AUG_COUNTS, augs, dga, front
from oracles import brute_force_augmentations, kills

FIELDS = (2, 3)


def as_table(eps):
    return dict(eps.values)


@pytest.mark.parametrize("p", FIELDS)
@pytest.mark.parametrize("name", ALL_FRONTS)
def test_counts_match_oracle(name, p):
    found = augs(name, p)
    oracle = brute_force_augmentations(dga(name), p)
    assert len(found) == len(oracle) == AUG_COUNTS[name][FIELDS.index(p)]
    assert sorted(map(sorted, (as_table(e).items() for e in found))) == \
        sorted(sorted(o.items()) for o in oracle)


@pytest.mark.parametrize("p", FIELDS)
@pytest.mark.parametrize("name", ALL_FRONTS)
def test_bijection_and_validity(name, p):
    a = dga(name)
    for eps in augs(name, p):
        c = aug_to_chd(a, eps)
        assert validate_chd(c) == []
        assert chd_to_aug(a, c) == eps
        assert aug_to_chd(a, chd_to_aug(a, c)) == c


@pytest.mark.parametrize("name", ["two_sheets", "crossing_circle", "unknot_sphere",
                                  "cusp_sheet_vertex", "stacked_unknot", "triple_point_vertex"])
def test_degree_sufficiency(name):
    a = dga(name)
    names = [g.id for g in a.generators if g.degree == 0]
    for p in FIELDS:
        for vals in itertools.product(range(p), repeat=len(names)):
            eps = dict(zip(names, vals))
            assert kills(a, eps, p) == kills(a, eps, p, degrees={1})


def test_one_sheet_chd():
    a, f = dga("one_sheet"), front("one_sheet")
    (eps,) = augs("one_sheet", 2)
    assert eps.values == ()
    c = aug_to_chd(a, eps)
    for I in f.base.simplices:
        expected = np.eye(1) if len(I) == 2 else np.zeros((1, 1))
        assert np.array_equal(c.matrices[I], expected)


@pytest.mark.parametrize("name", ALL_FRONTS)
def test_edge_matrix_is_transpose_plus_identity(name):
    a, f = dga(name), front(name)
    for eps in augs(name, 3)[:5]:
        c = aug_to_chd(a, eps)
        for I in f.base.of_dim(1):
            n = len(f.sheets(I))
            M = np.zeros((n, n), dtype=np.int64)
            for g in a.generators:
                if g.cell == I and g.degree == 0:
                    M[g.i - 1, g.j - 1] = eps[g.id]
            assert np.array_equal(c.matrices[I], (M + np.eye(n, dtype=np.int64)).T % 3)
            assert rank(c.matrices[I], 3) == n


@pytest.mark.parametrize("name", ALL_FRONTS)
def test_boundary_extension_commutes_with_projection(name):
    a, f = dga(name), front(name)
    for eps in augs(name, 2)[:3]:
        c = aug_to_chd(a, eps)
        for J in f.base.simplices:
            for I in f.base.faces(J, proper=True):
                proj = f.projection_p(I, J).matrix
                for F in f.base.faces(I):
                    cI = boundary_extend(f, c.matrices[F], F, I, 2)
                    cJ = boundary_extend(f, c.matrices[F], F, J, 2)
                    assert np.array_equal(cI @ proj % 2, proj @ cJ % 2), (F, I, J)


def test_boundary_extension_on_cusp_pairs():
    f = front("unknot_sphere")
    empty = np.zeros((0, 0), dtype=np.int64)
    vertex = boundary_extend(f, empty, (1,), (0, 1), 2)
    assert vertex.tolist() == [[0, 0], [1, 0]]
    edge_face = (1, 2)
    J = next(K for K in f.base.of_dim(2) if set(edge_face) <= set(K))
    if not f.sheets(edge_face) and f.cusp_pairs(edge_face, J):
        out = boundary_extend(f, empty, edge_face, J, 2)
        assert np.array_equal(out, np.eye(2, dtype=np.int64))
    with pytest.raises(ValueError):
        boundary_extend(f, empty, (5,), (0, 1), 2)


@pytest.mark.parametrize("name", ["cusp_sheet_vertex", "triple_point_vertex", "two_arcs_vertex"])
def test_homotopy_mutations(name):
    """A mutated homotopy passes validation exactly when it is another enumerated
    CHD; mutations off the degree-0 generator slots are caught at their 2-cell."""
    a, f = dga(name), front(name)
    valid = {aug_to_chd(a, e).key() for e in augs(name, 2)}
    slots = {(g.cell, g.j - 1, g.i - 1) for g in a.generators if len(g.cell) == 3}
    c = aug_to_chd(a, augs(name, 2)[0])
    for I in f.base.of_dim(2):
        n = len(f.sheets(I))
        for r in range(n):
            for col in range(n):
                bad = c.with_entry(I, r, col, c.matrices[I][r, col] + 1)
                diags = validate_chd(bad)
                if (I, r, col) in slots and a.degree(f"m[{','.join(map(str, I))};{col + 1},{r + 1}]") == 0:
                    assert (not diags) == (bad.key() in valid)
                    if diags:
                        assert "{},{},{}".format(*I) in {d.cell for d in diags}
                else:
                    assert "{},{},{}".format(*I) in {d.cell for d in diags}


def test_zero_diagonal_edge_is_not_triangular():
    a, f = dga("two_sheets"), front("two_sheets")
    c = aug_to_chd(a, augs("two_sheets", 2)[0])
    bad = c.with_entry((0, 1), 0, 0, 0)
    assert "triangularity" in {d.rule for d in validate_chd(bad)}


def test_bound_exceeded_reports_requirement():
    with pytest.raises(EnumerationBoundExceeded) as e:
        enumerate_augmentations(dga("two_arcs_vertex"), 3, bound=10)
    assert e.value.required == 3 ** 10 and e.value.bound == 10


def test_non_prime_rejected():
    with pytest.raises(ValueError):
        enumerate_augmentations(dga("one_sheet"), 4)
    with pytest.raises(ValueError):
        Augmentation(6, ())


def test_chd_shape_checked():
    f = front("two_sheets")
    with pytest.raises(ValueError):
        CHD(f, 2, {(0,): np.zeros((3, 3))})


def test_enumeration_is_deterministic():
    a = dga("triple_point_vertex")
    assert enumerate_augmentations(a, 3) == enumerate_augmentations(a, 3)
