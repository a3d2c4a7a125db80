"""Simplex diagrams, their morphisms, and generalized mapping cylinders.

A simplex diagram on a simplex E assigns to each face F = [i_0..i_m] a map
a_F: V -> V of degree 1 - m subject to

    sum_{0<k<m} (-1)^{k+1} a_{F minus i_k} + sum_k (-1)^k a_{i_k..i_m} a_{i_0..i_k} = 0.

The mapping cylinder lives on the sum of V[dim F] over faces, ordered by
(dimension, lexicographic).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .cobar import faces as simplex_faces
from .front import Diagnostic, cell_name
from .homalg import (AlgebraError, ChainMap, CochainComplex, GradedLinearMap, GradedModule,
                     direct_sum, is_quasi_iso)

Face = tuple


class InvalidDiagram(AlgebraError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


class PreconditionError(AlgebraError):
    pass


@dataclass(frozen=True, eq=False)
class SimplexDiagram:
    simplex: Face
    module: GradedModule
    face_maps: Mapping[Face, GradedLinearMap]
    p: int

    def __post_init__(self):
        simplex = tuple(self.simplex)
        object.__setattr__(self, "simplex", simplex)
        maps = {}
        for F in simplex_faces(simplex):
            if F not in self.face_maps:
                raise AlgebraError(f"missing face map on {cell_name(F)}")
            a = self.face_maps[F]
            if not isinstance(a, GradedLinearMap):
                a = GradedLinearMap(self.module, self.module, 2 - len(F), a, self.p)
            if a.source != self.module or a.target != self.module or a.degree != 2 - len(F):
                raise AlgebraError(f"face map on {cell_name(F)} has the wrong shape or degree")
            maps[F] = a
        object.__setattr__(self, "face_maps", maps)

    def faces(self) -> list[Face]:
        return simplex_faces(self.simplex)

    def a(self, F) -> np.ndarray:
        return self.face_maps[tuple(F)].matrix

    def restrict(self, sub: Face) -> "SimplexDiagram":
        sub = tuple(sub)
        return SimplexDiagram(sub, self.module,
                              {F: self.face_maps[F] for F in simplex_faces(sub)}, self.p)


def relation(d: SimplexDiagram, F: Face) -> np.ndarray:
    """Left-hand side of the simplex identity on the face F (zero when it holds)."""
    F = tuple(F)
    m = len(F) - 1
    n = len(d.module)
    acc = np.zeros((n, n), dtype=np.int64)
    for k in range(1, m):
        acc += (-1) ** (k + 1) * d.a(F[:k] + F[k + 1:])
    for k in range(m + 1):
        acc += (-1) ** k * (d.a(F[k:]) @ d.a(F[:k + 1]))
    return acc % d.p


def validate_diagram(d: SimplexDiagram) -> list[Diagnostic]:
    out = []
    for F in d.faces():
        r = relation(d, F)
        if r.any():
            i, j = (int(x) for x in np.argwhere(r)[0])
            out.append(Diagnostic("simplex identity", cell_name(F),
                                  f"nonzero entry ({d.module.basis[i]!r}, "
                                  f"{d.module.basis[j]!r}) = {int(r[i, j])}"))
    return out


def _cylinder_module(simplex: Face, module: GradedModule) -> tuple[list[Face], GradedModule]:
    fs = simplex_faces(simplex)
    return fs, direct_sum([(F, module.shift(len(F) - 1)) for F in fs])


def cylinder_components(E: Face) -> list[tuple[Face, Face, int]]:
    """Nonzero components out of the summand V_E as (target, face map, sign).

    The face map entry is the face whose a-map is applied, or None for the
    identity.
    """
    E = tuple(E)
    m = len(E) - 1
    out = []
    for k in range(m + 1):
        out.append((E[k:], E[:k + 1], (-1) ** (m + 1)))
    for k in range(1, m + 1):
        out.append((E[:k] + E[k + 1:], None, (-1) ** (m + k + 1)))
    return out


def mapping_cylinder(d: SimplexDiagram) -> CochainComplex:
    diags = validate_diagram(d)
    if diags:
        raise InvalidDiagram(diags)
    fs, module = _cylinder_module(d.simplex, d.module)
    n = len(d.module)
    off = {F: k * n for k, F in enumerate(fs)}
    D = np.zeros((len(module), len(module)), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for E in fs:
        for T, via, sign in cylinder_components(E):
            block = eye if via is None else d.a(via)
            D[off[T]:off[T] + n, off[E]:off[E] + n] += sign * block
    return CochainComplex.from_matrix(module, D, d.p)


def cylinder_block(c: CochainComplex, n: int, simplex: Face, target: Face, source: Face
                   ) -> np.ndarray:
    """The (target, source) block of a cylinder differential, n = dim V."""
    fs = simplex_faces(simplex)
    t, s = fs.index(tuple(target)) * n, fs.index(tuple(source)) * n
    return c.differential.matrix[t:t + n, s:s + n]


@dataclass(frozen=True, eq=False)
class SDMorphism:
    source: SimplexDiagram
    target: SimplexDiagram
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not set(self.source.simplex) <= set(self.target.simplex):
            raise AlgebraError("source simplex must be a face of the target simplex")
        phi = GradedLinearMap(self.source.module, self.target.module, 0, self.matrix,
                              self.source.p)
        object.__setattr__(self, "matrix", phi.matrix)
        bad = self.violations()
        if bad:
            raise AlgebraError(f"morphism does not commute with face map on {bad[0]}")

    def violations(self) -> list[str]:
        p = self.source.p
        out = []
        for F in self.source.faces():
            lhs = self.matrix @ self.source.a(F)
            rhs = self.target.a(F) @ self.matrix
            if ((lhs - rhs) % p).any():
                out.append(cell_name(F))
        return out

    @classmethod
    def identity(cls, d: SimplexDiagram) -> "SDMorphism":
        return cls(d, d, np.eye(len(d.module), dtype=np.int64))

    def __matmul__(self, other: "SDMorphism") -> "SDMorphism":
        return SDMorphism(other.source, self.target, self.matrix @ other.matrix)


def cylinder_map(phi: SDMorphism, source: CochainComplex | None = None,
                 target: CochainComplex | None = None) -> ChainMap:
    """phi on each face summand of the source, landing in the same face summand."""
    src = source or mapping_cylinder(phi.source)
    tgt = target or mapping_cylinder(phi.target)
    sf = simplex_faces(phi.source.simplex)
    tf = simplex_faces(phi.target.simplex)
    ns, nt = len(phi.source.module), len(phi.target.module)
    m = np.zeros((len(tgt), len(src)), dtype=np.int64)
    for k, F in enumerate(sf):
        t = tf.index(F)
        m[t * nt:(t + 1) * nt, k * ns:(k + 1) * ns] = phi.matrix
    return ChainMap(src, tgt, m)


def vertex_complex(d: SimplexDiagram, v: int) -> CochainComplex:
    return CochainComplex(d.module, d.face_maps[(v,)])


def edge_map(d: SimplexDiagram, E: Face) -> ChainMap:
    return ChainMap(vertex_complex(d, E[0]), vertex_complex(d, E[1]), d.a(E))


def vertex_incl_quasi_iso(d: SimplexDiagram, v: int) -> bool:
    for E in d.faces():
        if len(E) == 2 and not is_quasi_iso(edge_map(d, E)):
            raise PreconditionError(f"edge map on {cell_name(E)} is not a quasi-isomorphism")
    incl = SDMorphism(d.restrict((v,)), d, np.eye(len(d.module), dtype=np.int64))
    return is_quasi_iso(cylinder_map(incl))
