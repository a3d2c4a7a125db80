"""The simplicial DGA of a front.

Generators m[I;i,j] sit over each simplex e_I for sheet positions i < j
(1-based, descending z) with S_i strictly above S_j.  The differential on
generators is read off entrywise from

    dM(e_I) = Theta_I ( -sum_k (-1)^k M_I(e_{I minus i_k})
                        + sum_k (-1)^k M_I(e_{i_0..i_k}) M_I(e_{i_k..i_m}) )

and extended as a degree -1 derivation.  Everything lives over the integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .cobar import CobarElement
from .front import FrontComplex, Simplex, cell_name
from .words import WordSum

GenMatrix = list  # list of rows of WordSum


def gen_id(I: Simplex, i: int, j: int) -> str:
    return f"m[{cell_name(I)};{i},{j}]"


@dataclass(frozen=True)
class Generator:
    cell: Simplex
    i: int
    j: int
    degree: int

    @property
    def id(self) -> str:
        return gen_id(self.cell, self.i, self.j)


def zeros(n: int) -> GenMatrix:
    return [[WordSum() for _ in range(n)] for _ in range(n)]


def identity(n: int) -> GenMatrix:
    m = zeros(n)
    for k in range(n):
        m[k][k] = WordSum.scalar(1)
    return m


def mat_mul(a: GenMatrix, b: GenMatrix) -> GenMatrix:
    n = len(a)
    out = zeros(n)
    for r in range(n):
        for c in range(n):
            acc = WordSum()
            for k in range(n):
                if a[r][k] and b[k][c]:
                    acc = acc + a[r][k] * b[k][c]
            out[r][c] = acc
    return out


def mat_add(a: GenMatrix, b: GenMatrix, sign: int = 1) -> GenMatrix:
    return [[x + y * sign for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: GenMatrix, c: int) -> GenMatrix:
    return [[x * c for x in row] for row in a]


def diag_left(signs: list[int], a: GenMatrix) -> GenMatrix:
    return [[x * s for x in row] for s, row in zip(signs, a)]


class SimplicialDGA:
    def __init__(self, front: FrontComplex, theta_flip: Iterable[tuple[Simplex, int]] = ()):
        self.front = front
        self._flip = set(theta_flip)
        gens = []
        for I in front.base.simplices:
            ss = front.sheets(I)
            for a in range(len(ss)):
                for b in range(a + 1, len(ss)):
                    if front.above(I, ss[a], ss[b]):
                        deg = front.mu(I, ss[a]) - front.mu(I, ss[b]) + len(I) - 2
                        gens.append(Generator(I, a + 1, b + 1, deg))
        self.generators: tuple[Generator, ...] = tuple(gens)
        self.by_id = {g.id: g for g in gens}
        self._M: dict = {}
        self._MI: dict = {}
        self.differentials: dict[str, WordSum] = {}
        self.well_definedness: list[tuple[str, int, int, WordSum]] = []
        for I in front.base.simplices:
            rhs = self.eq5_rhs(I)
            n = len(rhs)
            for a in range(n):
                for b in range(n):
                    key = gen_id(I, a + 1, b + 1)
                    if key in self.by_id:
                        self.differentials[key] = rhs[a][b]
                    elif rhs[a][b]:
                        self.well_definedness.append((cell_name(I), a + 1, b + 1, rhs[a][b]))

    # matrices
    def degree(self, gid: str) -> int:
        return self.by_id[gid].degree

    def theta(self, I: Simplex) -> list[int]:
        f = self.front
        out = []
        for k, s in enumerate(f.sheets(I)):
            sign = -1 if f.mu(I, s) % 2 else 1
            if (tuple(I), k + 1) in self._flip:
                sign = -sign
            out.append(sign)
        return out

    def M(self, I: Simplex) -> GenMatrix:
        I = tuple(I)
        n = len(self.front.sheets(I))
        m = zeros(n)
        for a in range(n):
            for b in range(n):
                key = gen_id(I, a + 1, b + 1)
                if key in self.by_id:
                    m[a][b] = WordSum.letter(key)
        return m

    def M_I(self, I: Simplex, J: Simplex) -> GenMatrix:
        """M(e_J) transported into the sheet positions of e_I (e_J a face of e_I)."""
        I, J = tuple(I), tuple(J)
        key = (I, J)
        if key in self._MI:
            return self._MI[key]
        f = self.front
        if not set(J) <= set(I):
            raise ValueError(f"{cell_name(J)} is not a face of {cell_name(I)}")
        n = len(f.sheets(I))
        out = zeros(n)
        io = f.iota(J, I)
        sj = f.sheets(J)
        for g in self.generators:
            if g.cell != J:
                continue
            a = f.position(I, io[sj[g.i - 1]]) - 1
            b = f.position(I, io[sj[g.j - 1]]) - 1
            out[a][b] = WordSum.letter(g.id)
        if len(J) == 1:
            for u, l in f.cusp_pairs(J, I):
                out[f.position(I, u) - 1][f.position(I, l) - 1] = WordSum.scalar(1)
        self._MI[key] = out
        return out

    def eq5_rhs(self, I: Simplex) -> GenMatrix:
        I = tuple(I)
        m = len(I) - 1
        n = len(self.front.sheets(I))
        acc = zeros(n)
        if m > 0:
            for k in range(m + 1):
                acc = mat_add(acc, self.M_I(I, I[:k] + I[k + 1:]), -((-1) ** k))
        for k in range(m + 1):
            prod = mat_mul(self.M_I(I, I[:k + 1]), self.M_I(I, I[k:]))
            acc = mat_add(acc, prod, (-1) ** k)
        return diag_left(self.theta(I), acc)

    # the differential
    def d_generator(self, gid: str) -> WordSum:
        return self.differentials[gid]

    def differential(self, x: WordSum) -> WordSum:
        return x.derive(self.d_generator, self.degree)

    def poly_degree(self, x: WordSum) -> int | None:
        ds = {sum(self.degree(g) for g in w) for w in x.terms}
        return ds.pop() if len(ds) == 1 else None


def build_dga(front: FrontComplex, theta_flip: Iterable[tuple[Simplex, int]] = ()) -> SimplicialDGA:
    return SimplicialDGA(front, theta_flip)


def check_d_squared(a: SimplicialDGA) -> bool:
    return not a.well_definedness and all(
        a.differential(dx).is_zero() for dx in a.differentials.values())


def matrix_hom(a: SimplicialDGA, I: Simplex, x: CobarElement) -> GenMatrix:
    """Unital algebra map e_J -> M_I(e_J) applied to a cobar element."""
    n = len(a.front.sheets(I))
    for J in x.letters():
        if not set(J) <= set(I):
            raise ValueError(f"letter {J} is not a face of {cell_name(I)}")
    total = zeros(n)
    for w, c in x.items():
        val = identity(n)
        for J in w:
            val = mat_mul(val, a.M_I(I, J))
        total = mat_add(total, mat_scale(val, c))
    return total


def evaluate(a: SimplicialDGA, eps: Mapping[str, int], x: WordSum, p: int) -> int:
    """Image of x under the augmentation: degree-0 letters by eps, others to 0."""
    total = 0
    for w, c in x.terms.items():
        val = c
        for g in w:
            if a.degree(g) != 0:
                val = 0
                break
            val = val * eps.get(g, 0) % p
            if not val:
                break
        total += val
    return total % p


def sigma(a: SimplicialDGA, m: GenMatrix) -> GenMatrix:
    """Negate odd-degree entries."""
    def flip(x: WordSum) -> WordSum:
        out = {}
        for w, c in x.terms.items():
            deg = sum(a.degree(g) for g in w)
            out[w] = -c if deg % 2 else c
        return WordSum(out)
    return [[flip(x) for x in row] for row in m]


def format_poly(x: WordSum) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for w, c in x.items():
        body = " ".join(w) if w else ""
        coeff = "" if (abs(c) == 1 and w) else str(abs(c))
        sep = " " if coeff and body else ""
        parts.append(("-" if c < 0 else "+") + " " + coeff + sep + body)
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]
