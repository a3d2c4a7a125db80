"""Exact linear algebra over prime fields.

Graded modules, graded maps, cochain complexes, cones and total complexes of
commutative squares.  All matrices are dense ``numpy`` int64 arrays holding
representatives in ``[0, p)``; rows index the target basis, columns the source.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

import numpy as np


class AlgebraError(ValueError):
    """Raised when an input violates a structural precondition."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not is_prime(self.p):
            raise AlgebraError(f"field modulus {self.p!r} is not prime")

    def reduce(self, a) -> np.ndarray:
        return np.asarray(a, dtype=np.int64) % self.p

    def inverse(self, x: int) -> int:
        return pow(int(x) % self.p, -1, self.p)


def as_matrix(a, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    m = np.asarray(a, dtype=np.int64)
    if shape is not None:
        m = m.reshape(shape)
    return m % p


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p and the pivot columns."""
    m = as_matrix(a, p).copy()
    if m.ndim != 2:
        raise AlgebraError("expected a 2-dimensional matrix")
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        if others.size:
            m[others] = (m[others] - np.outer(m[others, c], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a, p: int) -> int:
    """Row rank over GF(p) by Gaussian elimination."""
    m = np.asarray(a)
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def nullspace(a, p: int) -> np.ndarray:
    """Basis of the right kernel, one vector per column of the result."""
    m = as_matrix(a, p)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    red, piv = rref(m, p)
    free = [c for c in range(cols) if c not in piv]
    out = np.zeros((cols, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        out[f, k] = 1
        for r, c in enumerate(piv):
            out[c, k] = (-red[r, f]) % p
    return out


def solve(a, b, p: int) -> np.ndarray | None:
    """Some x with a @ x = b (mod p), or None when inconsistent."""
    a = as_matrix(a, p)
    b = as_matrix(b, p).reshape(a.shape[0], -1)
    aug = np.concatenate([a, b], axis=1)
    red, piv = rref(aug, p)
    n = a.shape[1]
    if any(c >= n for c in piv):
        return None
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = red[r, n:]
    return x


# -- graded objects -----------------------------------------------------------

@dataclass(frozen=True)
class GradedModule:
    basis: tuple
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if len(self.basis) != len(self.degrees):
            raise AlgebraError("degree must be given for every basis label")
        if len(set(self.basis)) != len(self.basis):
            raise AlgebraError("basis labels must be distinct")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Hashable, int]]) -> "GradedModule":
        pairs = list(pairs)
        return cls(tuple(b for b, _ in pairs), tuple(d for _, d in pairs))

    def __len__(self):
        return len(self.basis)

    def index(self, label) -> int:
        try:
            return self._lookup[label]
        except KeyError:
            raise AlgebraError(f"{label!r} is not a basis label") from None

    @property
    def _lookup(self) -> dict:
        lk = self.__dict__.get("_lk")
        if lk is None:
            lk = {b: i for i, b in enumerate(self.basis)}
            object.__setattr__(self, "_lk", lk)
        return lk

    def degree(self, label) -> int:
        return self.degrees[self.index(label)]

    def shift(self, k: int, tag=None) -> "GradedModule":
        """M[k]: an element of degree d sits in degree d - k."""
        labels = self.basis if tag is None else tuple((tag, b) for b in self.basis)
        return GradedModule(labels, tuple(d - k for d in self.degrees))

    def restrict(self, labels: Sequence) -> "GradedModule":
        return GradedModule(tuple(labels), tuple(self.degree(b) for b in labels))


def direct_sum(parts: Sequence[tuple[Hashable, GradedModule]]) -> GradedModule:
    basis, degs = [], []
    for tag, m in parts:
        basis.extend((tag, b) for b in m.basis)
        degs.extend(m.degrees)
    return GradedModule(tuple(basis), tuple(degs))


@dataclass(frozen=True, eq=False)
class GradedLinearMap:
    source: GradedModule
    target: GradedModule
    degree: int
    matrix: np.ndarray
    p: int

    def __post_init__(self):
        m = as_matrix(self.matrix, self.p)
        if m.size == 0:
            m = np.zeros((len(self.target), len(self.source)), dtype=np.int64)
        if m.shape != (len(self.target), len(self.source)):
            raise AlgebraError(
                f"matrix shape {m.shape} does not match "
                f"{len(self.target)}x{len(self.source)}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        bad = self.degree_violations()
        if bad:
            t, s = bad[0]
            raise AlgebraError(
                f"entry ({self.target.basis[t]!r}, {self.source.basis[s]!r}) "
                f"breaks degree {self.degree}")

    def degree_violations(self) -> list[tuple[int, int]]:
        td = np.array(self.target.degrees, dtype=np.int64).reshape(-1, 1)
        sd = np.array(self.source.degrees, dtype=np.int64).reshape(1, -1)
        mask = (self.matrix != 0) & (td != sd + self.degree)
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(mask))]

    @classmethod
    def zero(cls, source, target, degree, p):
        return cls(source, target, degree,
                   np.zeros((len(target), len(source)), dtype=np.int64), p)

    @classmethod
    def identity(cls, module, p):
        return cls(module, module, 0, np.eye(len(module), dtype=np.int64), p)

    def __matmul__(self, other: "GradedLinearMap") -> "GradedLinearMap":
        if other.target != self.source:
            raise AlgebraError("composition of incompatible maps")
        return GradedLinearMap(other.source, self.target, self.degree + other.degree,
                               self.matrix @ other.matrix, self.p)

    def __add__(self, other):
        return GradedLinearMap(self.source, self.target, self.degree,
                               self.matrix + other.matrix, self.p)

    def __neg__(self):
        return GradedLinearMap(self.source, self.target, self.degree, -self.matrix, self.p)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "GradedLinearMap":
        return GradedLinearMap(self.source, self.target, self.degree, c * self.matrix, self.p)

    def is_zero(self) -> bool:
        return not self.matrix.any()

    def __eq__(self, other):
        if not isinstance(other, GradedLinearMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.p == other.p and np.array_equal(self.matrix, other.matrix))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class CochainComplex:
    module: GradedModule
    differential: GradedLinearMap

    def __post_init__(self):
        d = self.differential
        if d.source != self.module or d.target != self.module or d.degree != 1:
            raise AlgebraError("differential must be a degree +1 endomorphism")
        if (d.matrix @ d.matrix % d.p).any():
            raise AlgebraError("differential does not square to zero")

    @property
    def p(self) -> int:
        return self.differential.p

    @classmethod
    def from_matrix(cls, module: GradedModule, matrix, p: int) -> "CochainComplex":
        return cls(module, GradedLinearMap(module, module, 1, matrix, p))

    @classmethod
    def zero_differential(cls, module: GradedModule, p: int) -> "CochainComplex":
        return cls(module, GradedLinearMap.zero(module, module, 1, p))

    def __len__(self):
        return len(self.module)


@dataclass(frozen=True, eq=False)
class ChainMap:
    source: CochainComplex
    target: CochainComplex
    matrix: np.ndarray

    def __post_init__(self):
        p = self.source.p
        f = GradedLinearMap(self.source.module, self.target.module, 0, self.matrix, p)
        object.__setattr__(self, "matrix", f.matrix)
        lhs = f.matrix @ self.source.differential.matrix
        rhs = self.target.differential.matrix @ f.matrix
        if ((lhs - rhs) % p).any():
            raise AlgebraError("map does not commute with the differentials")

    @property
    def p(self):
        return self.source.p

    @classmethod
    def identity(cls, c: CochainComplex) -> "ChainMap":
        return cls(c, c, np.eye(len(c), dtype=np.int64))

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(other.source, self.target, self.matrix @ other.matrix)

    def equals(self, other: "ChainMap") -> bool:
        return (self.source.module == other.source.module
                and self.target.module == other.target.module
                and np.array_equal(self.matrix % self.p, other.matrix % self.p))


@dataclass(frozen=True, eq=False)
class CommutativeSquare:
    """A -> B, A -> C, B -> D, C -> D with both composites A -> D equal."""
    ab: ChainMap
    ac: ChainMap
    bd: ChainMap
    cd: ChainMap

    def __post_init__(self):
        if not (self.ab.source is self.ac.source or self.ab.source.module == self.ac.source.module):
            raise AlgebraError("square arrows disagree on A")
        p = self.ab.p
        if ((self.bd.matrix @ self.ab.matrix - self.cd.matrix @ self.ac.matrix) % p).any():
            raise AlgebraError("square does not commute")


# -- homology -----------------------------------------------------------------

def homology_ranks(c: CochainComplex) -> dict[int, int]:
    """Betti numbers per degree present in the module."""
    p = c.p
    d = c.differential.matrix
    if (d @ d % p).any():
        raise AlgebraError("differential does not square to zero")
    degs = np.array(c.module.degrees, dtype=np.int64)
    out = {}
    for k in sorted(set(c.module.degrees)):
        here = np.nonzero(degs == k)[0]
        above = np.nonzero(degs == k + 1)[0]
        below = np.nonzero(degs == k - 1)[0]
        r_out = rank(d[np.ix_(above, here)], p) if above.size and here.size else 0
        r_in = rank(d[np.ix_(here, below)], p) if below.size and here.size else 0
        out[k] = len(here) - r_out - r_in
    return out


def total_betti(c: CochainComplex) -> int:
    return len(c) - 2 * rank(c.differential.matrix, c.p)


def is_acyclic(c: CochainComplex) -> bool:
    return total_betti(c) == 0


def cone(f: ChainMap) -> CochainComplex:
    """Cone(f) = A[1] + B with D(a, b) = (-d_A a, f a + d_B b)."""
    a, b = f.source, f.target
    module = direct_sum([("src", a.module.shift(1)), ("tgt", b.module)])
    na, nb = len(a), len(b)
    d = np.zeros((na + nb, na + nb), dtype=np.int64)
    d[:na, :na] = -a.differential.matrix
    d[na:, :na] = f.matrix
    d[na:, na:] = b.differential.matrix
    return CochainComplex.from_matrix(module, d, f.p)


def is_quasi_iso(f: ChainMap) -> bool:
    return is_acyclic(cone(f))


def total_complex(sq: CommutativeSquare, flip: str = "bd") -> CochainComplex:
    """Totalize the square in columns A | B+C | D.

    The horizontal differential negates one of the two arrows into D (``flip``
    is "bd" or "cd") so that the square anticommutes; the vertical differential
    on column q is twisted by (-1)^q.
    """
    if flip not in ("bd", "cd"):
        raise AlgebraError("flip must be 'bd' or 'cd'")
    A, B, C, D = sq.ab.source, sq.ab.target, sq.ac.target, sq.bd.target
    module = direct_sum([
        ("A", A.module.shift(0)),
        ("B", B.module.shift(-1)),
        ("C", C.module.shift(-1)),
        ("D", D.module.shift(-2)),
    ])
    sizes = [len(A), len(B), len(C), len(D)]
    off = np.cumsum([0] + sizes)
    n = int(off[-1])
    m = np.zeros((n, n), dtype=np.int64)

    def put(t, s, block):
        m[off[t]:off[t + 1], off[s]:off[s + 1]] = block

    put(0, 0, A.differential.matrix)
    put(1, 1, -B.differential.matrix)
    put(2, 2, -C.differential.matrix)
    put(3, 3, D.differential.matrix)
    put(1, 0, sq.ab.matrix)
    put(2, 0, sq.ac.matrix)
    sb, sc = (-1, 1) if flip == "bd" else (1, -1)
    put(3, 1, sb * sq.bd.matrix)
    put(3, 2, sc * sq.cd.matrix)
    return CochainComplex.from_matrix(module, m, sq.ab.p)
