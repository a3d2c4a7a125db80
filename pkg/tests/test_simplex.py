import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from augsheaf.chd import aug_to_chd, cell_diagram
from augsheaf.homalg import (AlgebraError, ChainMap, GradedModule, is_quasi_iso)
from augsheaf.simplex import (InvalidDiagram, PreconditionError, SDMorphism, SimplexDiagram,
                              cylinder_block, cylinder_components, cylinder_map, edge_map,
                              mapping_cylinder, validate_diagram, vertex_complex,
                              vertex_incl_quasi_iso)

from conftest import ALL_FRONTS, augs, dga, front
from oracles import graded, random_simplex_diagram

# cylinder differential on an edge, summands V_0, V_01, V_1
EDGE_TABLE = [["-d0", "-1", "0"],
              ["0", "d0", "0"],
              ["0", "f01", "-d1"]]
EDGE_ORDER = [(0,), (0, 1), (1,)]

# cylinder differential on a triangle, summands V_0, V_1, V_2, V_01, V_02, V_12, V_012
TRIANGLE_TABLE = [["-d0", "0", "0", "-1", "-1", "0", "0"],
              ["0", "-d1", "0", "f01", "0", "-1", "0"],
              ["0", "0", "-d2", "0", "f02", "f12", "-K012"],
              ["0", "0", "0", "d0", "0", "0", "-1"],
              ["0", "0", "0", "0", "d0", "0", "1"],
              ["0", "0", "0", "0", "0", "d1", "-f01"],
              ["0", "0", "0", "0", "0", "0", "-d0"]]
TRIANGLE_ORDER = [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]

SYMBOLS = {"d0": (0,), "d1": (1,), "d2": (2,), "f01": (0, 1), "f02": (0, 2), "f12": (1, 2),
           "K012": (0, 1, 2)}


def block(entry, a, n, p):
    sign = -1 if entry.startswith("-") else 1
    name = entry.lstrip("-")
    if name == "0":
        return np.zeros((n, n), dtype=np.int64)
    if name == "1":
        return sign * np.eye(n, dtype=np.int64) % p
    return sign * a[SYMBOLS[name]] % p


def diagram(seed, n, p, size=3):
    rng = np.random.default_rng(seed)
    degrees, a = random_simplex_diagram(rng, n, p, size)
    return SimplexDiagram(tuple(range(n + 1)), graded(degrees), a, p), a


@pytest.mark.parametrize("table,order,n", [(EDGE_TABLE, EDGE_ORDER, 1), (TRIANGLE_TABLE, TRIANGLE_ORDER, 2)])
@pytest.mark.parametrize("seed", range(10))
def test_example_tables(table, order, n, seed):
    p = 3
    d, a = diagram(seed, n, p)
    C = mapping_cylinder(d)
    size = len(d.module)
    for r, target in enumerate(order):
        for c, source in enumerate(order):
            got = cylinder_block(C, size, d.simplex, target, source) % p
            assert np.array_equal(got, block(table[r][c], a, size, p)), (target, source)


def test_vertex_cylinder_is_the_complex():
    d, a = diagram(0, 0, 2)
    C = mapping_cylinder(d)
    assert np.array_equal(C.differential.matrix, a[(0,)])
    assert C.module.degrees == d.module.degrees


def test_component_signs():
    comps = cylinder_components((0, 1, 2))
    assert ((2,), (0, 1, 2), -1) in comps
    assert ((0, 2), None, 1) in comps
    assert ((0, 1), None, -1) in comps


@settings(max_examples=200)
@given(st.integers(0, 2 ** 32 - 1), st.integers(0, 3), st.sampled_from([2, 3, 5]))
def test_random_cylinders_square_to_zero(seed, n, p):
    d, _ = diagram(seed, n, p)
    assert validate_diagram(d) == []
    D = mapping_cylinder(d).differential.matrix
    assert not (D @ D % p).any()


@settings(max_examples=50)
@given(st.integers(0, 2 ** 32 - 1), st.integers(1, 3))
def test_vertex_inclusion_on_random_diagrams(seed, n):
    d, _ = diagram(seed, n, 2)
    edges_qi = all(is_quasi_iso(edge_map(d, E)) for E in d.faces() if len(E) == 2)
    if edges_qi:
        assert all(vertex_incl_quasi_iso(d, v) for v in d.simplex)
    else:
        with pytest.raises(PreconditionError):
            vertex_incl_quasi_iso(d, d.simplex[0])


def corpus_diagrams():
    for name in ALL_FRONTS:
        f, a = front(name), dga(name)
        for eps in augs(name, 2)[:4]:
            c = aug_to_chd(a, eps)
            for I in f.base.simplices:
                yield name, I, cell_diagram(c, I)


def test_vertex_inclusion_on_corpus():
    count = 0
    for name, I, d in corpus_diagrams():
        if len(d.module) == 0:
            continue
        if all(is_quasi_iso(edge_map(d, E)) for E in d.faces() if len(E) == 2):
            for v in I:
                assert vertex_incl_quasi_iso(d, v), (name, I, v)
            count += 1
    assert count > 0


def test_invalid_diagram_rejected():
    V = GradedModule(("a", "b"), (0, 1))
    d0 = np.array([[0, 0], [1, 0]])
    maps = {(0,): d0, (1,): np.zeros((2, 2)), (0, 1): np.eye(2)}
    d = SimplexDiagram((0, 1), V, maps, 2)
    diags = validate_diagram(d)
    assert [x.cell for x in diags] == ["0,1"]
    with pytest.raises(InvalidDiagram):
        mapping_cylinder(d)


def test_vertex_only_diagram_valid():
    V = GradedModule(("a", "b"), (0, 1))
    d = SimplexDiagram((0,), V, {(0,): np.array([[0, 0], [1, 0]])}, 2)
    assert validate_diagram(d) == []


def test_wrong_degree_rejected():
    V = GradedModule(("a", "b"), (0, 1))
    with pytest.raises(AlgebraError):
        SimplexDiagram((0,), V, {(0,): np.eye(2)}, 2)


def test_edge_identity_precondition_and_result():
    V = GradedModule(("a", "b"), (0, 0))
    z = np.zeros((2, 2))
    d = SimplexDiagram((0, 1), V, {(0,): z, (1,): z, (0, 1): np.eye(2)}, 2)
    assert vertex_incl_quasi_iso(d, 0) and vertex_incl_quasi_iso(d, 1)
    bad = SimplexDiagram((0, 1), V, {(0,): z, (1,): z, (0, 1): z}, 2)
    with pytest.raises(PreconditionError):
        vertex_incl_quasi_iso(bad, 0)


@settings(max_examples=30)
@given(st.integers(0, 2 ** 32 - 1), st.integers(0, 2))
def test_cylinder_functor_laws(seed, n):
    d, _ = diagram(seed, n, 3)
    ident = SDMorphism.identity(d)
    C = mapping_cylinder(d)
    assert cylinder_map(ident).equals(ChainMap.identity(C))
    inc = SDMorphism(d.restrict((0,)), d, np.eye(len(d.module), dtype=np.int64))
    comp = ident @ inc
    assert cylinder_map(comp).equals(cylinder_map(ident) @ cylinder_map(inc))


def test_morphism_must_commute():
    V = GradedModule(("a", "b"), (0, 1))
    d = SimplexDiagram((0,), V, {(0,): np.array([[0, 0], [1, 0]])}, 2)
    with pytest.raises(AlgebraError):
        SDMorphism(d, d, np.array([[1, 0], [0, 0]]))


def test_one_vertex_quasi_iso_gives_cylinder_quasi_iso():
    # phi on corpus diagrams: the identity restricted from an edge to its simplex
    for name, I, d in corpus_diagrams():
        if len(I) != 3 or len(d.module) == 0:
            continue
        if not all(is_quasi_iso(edge_map(d, E)) for E in d.faces() if len(E) == 2):
            continue
        phi = SDMorphism(d.restrict(I[:2]), d, np.eye(len(d.module), dtype=np.int64))
        assert is_quasi_iso(ChainMap(vertex_complex(d, I[0]), vertex_complex(d, I[0]),
                                     phi.matrix))
        assert is_quasi_iso(cylinder_map(phi))
