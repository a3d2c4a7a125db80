"""Augmentations, chain homotopy diagrams, and the bijection between them.

Convention: the matrix of c(e_I) in the basis of V(e_I) (descending z) has
column i equal to the image of S_i, so c(e_I)[j, i] = eps(m[I;i,j]) plus the
identity on edges.  This is the transpose of eps applied to M(e_I) + [dim 1].
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .dga import SimplicialDGA
from .front import Diagnostic, FrontComplex, Simplex, cell_name
from .homalg import GradedLinearMap, is_prime
from .simplex import SimplexDiagram, validate_diagram

DEFAULT_BOUND = 2 ** 20


class EnumerationBoundExceeded(RuntimeError):
    def __init__(self, required: int, bound: int):
        self.required = required
        self.bound = bound
        super().__init__(f"enumeration needs {required} assignments, bound is {bound}")


@dataclass(frozen=True)
class Augmentation:
    p: int
    values: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        vals = tuple(sorted((g, int(v) % self.p) for g, v in dict(self.values).items()))
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_table(cls, p: int, table: Mapping[str, int]) -> "Augmentation":
        return cls(p, tuple(table.items()))

    def table(self) -> dict[str, int]:
        return dict(self.values)

    def __getitem__(self, gid: str) -> int:
        return self.table().get(gid, 0)


@dataclass(frozen=True, eq=False)
class CHD:
    """Raw matrices per simplex; validity is checked by validate_chd."""
    front: FrontComplex
    p: int
    matrices: Mapping[Simplex, np.ndarray]

    def __post_init__(self):
        mats = {}
        for I in self.front.base.simplices:
            n = len(self.front.sheets(I))
            m = np.asarray(self.matrices.get(I, np.zeros((n, n))), dtype=np.int64) % self.p
            if m.shape != (n, n):
                raise ValueError(f"matrix over {cell_name(I)} must be {n}x{n}")
            mats[I] = m
        object.__setattr__(self, "matrices", mats)

    def __eq__(self, other):
        if not isinstance(other, CHD):
            return NotImplemented
        return (self.front is other.front and self.p == other.p
                and all(np.array_equal(self.matrices[I], other.matrices[I])
                        for I in self.matrices))

    __hash__ = None

    def key(self) -> tuple:
        return tuple(m.tobytes() for _, m in sorted(self.matrices.items()))

    def map(self, I: Simplex) -> GradedLinearMap:
        V = self.front.V(I)
        return GradedLinearMap(V, V, 2 - len(I), self.matrices[tuple(I)], self.p)

    def with_entry(self, I: Simplex, row: int, col: int, value: int) -> "CHD":
        mats = {k: v.copy() for k, v in self.matrices.items()}
        mats[tuple(I)][row, col] = value % self.p
        return CHD(self.front, self.p, mats)


def boundary_extend(f: FrontComplex, c_F: np.ndarray, F: Simplex, J: Simplex, p: int
                    ) -> np.ndarray:
    """c(e_F) extended to V(e_J): transported along iota, plus the cusp part.

    On each cusp pair over e_F the extension is upper -> lower when e_F is a
    vertex, the identity when e_F is an edge, and zero otherwise.
    """
    F, J = tuple(F), tuple(J)
    if not set(F) <= set(J):
        raise ValueError(f"{cell_name(F)} is not a face of {cell_name(J)}")
    sf, sj = f.sheets(F), f.sheets(J)
    out = np.zeros((len(sj), len(sj)), dtype=np.int64)
    io = f.iota(F, J)
    pos = [sj.index(io[s]) for s in sf]
    out[np.ix_(pos, pos)] = c_F
    for u, l in f.cusp_pairs(F, J):
        iu, il = sj.index(u), sj.index(l)
        if len(F) == 1:
            out[il, iu] = 1
        elif len(F) == 2:
            out[iu, iu] = out[il, il] = 1
    return out % p


def cell_diagram(c: CHD, I: Simplex) -> SimplexDiagram:
    f = c.front
    return SimplexDiagram(tuple(I), f.V(I),
                          {F: boundary_extend(f, c.matrices[F], F, I, c.p)
                           for F in f.base.faces(I)}, c.p)


def aug_to_chd(a: SimplicialDGA, eps: Augmentation) -> CHD:
    f = a.front
    mats = {}
    for I in f.base.simplices:
        n = len(f.sheets(I))
        m = np.eye(n, dtype=np.int64) if len(I) == 2 else np.zeros((n, n), dtype=np.int64)
        for g in a.generators:
            if g.cell == I and g.degree == 0:
                m[g.j - 1, g.i - 1] += eps[g.id]
        mats[I] = m
    return CHD(f, eps.p, mats)


def chd_to_aug(a: SimplicialDGA, c: CHD) -> Augmentation:
    return Augmentation.from_table(
        c.p, {g.id: int(c.matrices[g.cell][g.j - 1, g.i - 1])
              for g in a.generators if g.degree == 0})


def _triangularity(f: FrontComplex, I: Simplex, m: np.ndarray) -> list[tuple[int, int]]:
    """Entries (row, col) that do not map a sheet strictly downward."""
    lv = [f.level_of(I, s) for s in f.sheets(I)]
    rest = m - np.eye(len(lv), dtype=np.int64) if len(I) == 2 else m
    return [(int(r), int(col)) for r, col in np.argwhere(rest)
            if not lv[r] > lv[col]]


def validate_chd(c: CHD) -> list[Diagnostic]:
    f = c.front
    out = []
    clean = set()
    for I in f.base.simplices:
        V = f.V(I)
        m = c.matrices[I]
        name = cell_name(I)
        deg = 2 - len(I)
        bad_deg = [(r, col) for r, col in np.argwhere(m)
                   if V.degrees[r] != V.degrees[col] + deg]
        if bad_deg:
            r, col = bad_deg[0]
            out.append(Diagnostic("degree", name,
                                  f"entry {V.basis[col]} -> {V.basis[r]} breaks degree {deg}"))
        tri = _triangularity(f, I, m)
        if tri:
            r, col = tri[0]
            out.append(Diagnostic("triangularity", name,
                                  f"entry {V.basis[col]} -> {V.basis[r]} is not strictly downward"))
        if not bad_deg:
            clean.add(I)
    for I in f.base.simplices:
        if not all(F in clean for F in f.base.faces(I)):
            continue
        for d in validate_diagram(cell_diagram(c, I)):
            out.append(Diagnostic(d.rule, cell_name(I), f"face {d.cell}: {d.message}"))
    return sorted(out)


def degree_zero(a: SimplicialDGA) -> list[str]:
    """Degree-0 generator ids in cell-dimension order."""
    return [g.id for g in a.generators if g.degree == 0]


def constraints(a: SimplicialDGA, p: int) -> list[tuple[str, list[tuple[int, tuple[str, ...]]]]]:
    """eps(dg) for degree-1 g as (g, [(coefficient, degree-0 word)]) mod p."""
    out = []
    for g in a.generators:
        if g.degree != 1:
            continue
        terms = [(c % p, w) for w, c in a.d_generator(g.id).items()
                 if c % p and all(a.degree(x) == 0 for x in w)]
        out.append((g.id, terms))
    return out


def enumerate_augmentations(a: SimplicialDGA, p: int, bound: int = DEFAULT_BOUND
                            ) -> list[Augmentation]:
    """All eps with eps(dg) = 0 for every degree-1 generator, by backtracking.

    Variables are assigned in cell-dimension order; each constraint is tested
    as soon as its last variable is assigned.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    names = degree_zero(a)
    required = p ** len(names)
    if required > bound:
        raise EnumerationBoundExceeded(required, bound)
    idx = {g: k for k, g in enumerate(names)}
    by_last: list[list] = [[] for _ in names]
    for _, terms in constraints(a, p):
        compiled = [(c, tuple(idx[x] for x in w)) for c, w in terms]
        if not compiled:
            continue
        last = max((k for _, w in compiled for k in w), default=-1)
        if last < 0:
            return []  # a nonzero scalar constraint
        by_last[last].append(compiled)

    vals = [0] * len(names)
    found = []

    def ok(compiled) -> bool:
        total = 0
        for c, w in compiled:
            t = c
            for k in w:
                t = t * vals[k]
            total += t
        return total % p == 0

    def go(k: int):
        if k == len(names):
            found.append(Augmentation(p, tuple(zip(names, vals))))
            return
        for v in range(p):
            vals[k] = v
            if all(ok(cc) for cc in by_last[k]):
                go(k + 1)
        vals[k] = 0

    go(0)
    return found
