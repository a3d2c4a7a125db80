import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from augsheaf.homalg import (AlgebraError, ChainMap, CochainComplex, CommutativeSquare,
                             GradedLinearMap, GradedModule, PrimeField, cone, homology_ranks,
                             is_acyclic, is_prime, is_quasi_iso, nullspace, rank, solve,
                             total_betti, total_complex)

from oracles import graded, random_complex

primes = st.sampled_from([2, 3, 5])


@st.composite
def matrices(draw, max_side=5):
    p = draw(primes)
    r = draw(st.integers(1, max_side))
    c = draw(st.integers(1, max_side))
    m = draw(arrays(np.int64, (r, c), elements=st.integers(0, p - 1)))
    return p, m


def brute_rank(m, p):
    """Rank as log_p of the number of distinct images (small matrices only)."""
    import itertools
    images = {tuple((m @ np.array(v)) % p) for v in itertools.product(range(p), repeat=m.shape[1])}
    r = 0
    while p ** r < len(images):
        r += 1
    return r


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    with pytest.raises(AlgebraError):
        PrimeField(4)
    assert PrimeField(7).inverse(3) == 5


@given(matrices(max_side=4))
def test_rank_matches_brute_force(pm):
    p, m = pm
    assert rank(m, p) == brute_rank(m, p)


@given(matrices())
def test_rank_nullity(pm):
    p, m = pm
    N = nullspace(m, p)
    assert N.shape[1] == m.shape[1] - rank(m, p)
    assert not ((m @ N) % p).any()


@given(matrices(), st.data())
def test_solve_consistent_systems(pm, data):
    p, m = pm
    x0 = data.draw(arrays(np.int64, (m.shape[1], 1), elements=st.integers(0, p - 1)))
    b = (m @ x0) % p
    x = solve(m, b, p)
    assert x is not None
    assert np.array_equal((m @ x) % p, b)


def test_solve_inconsistent():
    assert solve(np.array([[1, 0], [1, 0]]), np.array([[0], [1]]), 2) is None


def test_graded_map_rejects_degree_violations():
    V = GradedModule(("a", "b"), (0, 1))
    GradedLinearMap(V, V, 1, [[0, 0], [1, 0]], 2)
    with pytest.raises(AlgebraError):
        GradedLinearMap(V, V, 1, [[1, 0], [0, 0]], 2)
    with pytest.raises(AlgebraError):
        GradedModule(("a", "a"), (0, 0))


def test_complex_requires_square_zero():
    V = GradedModule(("a", "b", "c"), (0, 1, 2))
    with pytest.raises(AlgebraError):
        CochainComplex.from_matrix(V, [[0, 0, 0], [1, 0, 0], [0, 1, 0]], 2)


@given(st.integers(0, 10 ** 6), primes, st.lists(st.integers(0, 2), min_size=1, max_size=6))
def test_euler_characteristic_and_betti(seed, p, degrees):
    rng = np.random.default_rng(seed)
    d = random_complex(rng, degrees, p)
    C = CochainComplex.from_matrix(graded(degrees), d, p)
    h = homology_ranks(C)
    assert sum(h.values()) == total_betti(C)
    chi = sum((-1) ** k for k in degrees)
    assert sum((-1) ** k * v for k, v in h.items()) == chi


@given(st.integers(0, 10 ** 6), primes, st.lists(st.integers(0, 2), min_size=1, max_size=5))
def test_identity_is_quasi_iso_and_zero_map_is_not(seed, p, degrees):
    rng = np.random.default_rng(seed)
    C = CochainComplex.from_matrix(graded(degrees), random_complex(rng, degrees, p), p)
    assert is_quasi_iso(ChainMap.identity(C))
    assert is_acyclic(cone(ChainMap.identity(C)))
    zero = ChainMap(C, C, np.zeros((len(C), len(C)), dtype=np.int64))
    assert is_quasi_iso(zero) == is_acyclic(C)


def test_chain_map_must_commute():
    V = GradedModule(("a", "b"), (0, 1))
    C = CochainComplex.from_matrix(V, [[0, 0], [1, 0]], 2)
    Z = CochainComplex.zero_differential(V, 2)
    with pytest.raises(AlgebraError):
        ChainMap(C, Z, np.eye(2, dtype=np.int64))


def test_square_of_identities_is_acyclic():
    V = GradedModule(("a",), (0,))
    C = CochainComplex.zero_differential(V, 3)
    i = ChainMap.identity(C)
    sq = CommutativeSquare(i, i, i, i)
    for flip in ("bd", "cd"):
        assert is_acyclic(total_complex(sq, flip))
    with pytest.raises(AlgebraError):
        total_complex(sq, "ab")


def test_square_must_commute():
    V = GradedModule(("a",), (0,))
    C = CochainComplex.zero_differential(V, 3)
    i = ChainMap.identity(C)
    z = ChainMap(C, C, np.zeros((1, 1), dtype=np.int64))
    with pytest.raises(AlgebraError):
        CommutativeSquare(i, i, i, z)
