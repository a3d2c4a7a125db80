"""Cobar algebra on the simplicial chains of a simplex.

Letters are simplex indices (strictly increasing vertex tuples).  A letter
e_I has dimension |e_I| = m and cobar weight ||e_I|| = m - 1.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .words import WordSum

CobarElement = WordSum


def simplex_index(vertices: Iterable[int]) -> tuple[int, ...]:
    t = tuple(int(v) for v in vertices)
    if not t or any(a >= b for a, b in zip(t, t[1:])):
        raise ValueError(f"{t!r} is not a strictly increasing nonempty tuple")
    return t


def grades(I) -> tuple[int, int]:
    I = simplex_index(I)
    m = len(I) - 1
    return m, m - 1


def weight(I) -> int:
    return len(I) - 2


def gen(I) -> CobarElement:
    return WordSum.letter(simplex_index(I))


def faces(I, include_self=True) -> list[tuple[int, ...]]:
    """All nonempty faces of I ordered by (dimension, lexicographic)."""
    I = simplex_index(I)
    out = []
    for k in range(1, len(I) + 1):
        out.extend(combinations(I, k))
    if not include_self:
        out.remove(I)
    return out


def _deletions(I, reduced: bool) -> WordSum:
    m = len(I) - 1
    acc = WordSum()
    if m == 0:
        return acc
    ks = range(1, m) if reduced else range(m + 1)
    for k in ks:
        acc = acc + WordSum.letter(I[:k] + I[k + 1:], (-1) ** k)
    return -acc


def _coproduct(I) -> WordSum:
    m = len(I) - 1
    return WordSum({(I[:k + 1], I[k:]): (-1) ** k for k in range(m + 1)})


def diff_generator(I, reduced: bool = False) -> CobarElement:
    I = simplex_index(I)
    return _deletions(I, reduced) + _coproduct(I)


def cobar_diff(x: CobarElement, reduced: bool = False) -> CobarElement:
    """D_s extended by the Leibniz rule D(xy) = D(x)y + (-1)^{||x||} x D(y)."""
    return x.derive(lambda I: diff_generator(I, reduced), weight)


def reduced_diff(x: CobarElement) -> CobarElement:
    """D_s with the first and last deletion terms dropped."""
    return cobar_diff(x, reduced=True)


def phi(x: CobarElement, inverse: bool = False) -> CobarElement:
    """Algebra map e_I -> e_I - 1 on edges (e_I + 1 when inverse), identity elsewhere."""
    shift = 1 if inverse else -1

    def image(I):
        g = WordSum.letter(I)
        return g + shift if len(I) == 2 else g

    return x.apply_hom(image, WordSum.scalar(1))


def reduced_diff_by_conjugation(x: CobarElement) -> CobarElement:
    return phi(cobar_diff(phi(x, inverse=True)))


def is_homogeneous(x: CobarElement) -> bool:
    return len({sum(weight(I) for I in w) for w in x.terms}) <= 1


def cobar_degree(x: CobarElement) -> int | None:
    ds = {sum(weight(I) for I in w) for w in x.terms}
    return ds.pop() if len(ds) == 1 else None
