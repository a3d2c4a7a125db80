"""Handle decomposition and the front stratification of M x R.

The handle cell h(I, J) (I a face of J) is cut by the open simplices e_K,
K containing J, into pieces (I, J, K) of dimension dim I + dim K - dim J.
Above a piece the fiber is divided into z-slots by the levels of e_K: slot 0
is the top gap, slot 2i+1 is level i, slot 2i+2 the gap below it.  A fine cell
is a (piece, slot) pair.  A stratum is a connected component of the fine cells
of one handle cell sharing the singularity index k:

    gap -> -1,   level with p sheets and q cusps -> p + 2q - 1.

Closure of fine cells: (P, a) <= (P', b) iff the piece P lies in the closure
of P' and slot a lies in the closure of slot b, transported by the level map.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .front import BaseComplex, Diagnostic, FrontComplex, Simplex, cell_name

Piece = tuple  # (I, J, K)
FineCell = tuple  # (Piece, slot)


class StratificationError(ValueError):
    pass


def _subsets(s: Simplex):
    for k in range(1, len(s) + 1):
        yield from combinations(s, k)


@dataclass(frozen=True)
class HandleCell:
    I: Simplex
    J: Simplex
    base_dim: int = 2

    @property
    def dim(self) -> int:
        return self.base_dim - (len(self.J) - len(self.I))

    @property
    def name(self) -> str:
        return f"h({cell_name(self.I)}|{cell_name(self.J)})"

    def in_closure_of(self, other: "HandleCell") -> bool:
        return set(self.I) <= set(other.I) and set(other.J) <= set(self.J)


def build_handles(base: BaseComplex) -> list[HandleCell]:
    out = []
    for J in base.simplices:
        for I in _subsets(J):
            out.append(HandleCell(I, J, base.dim))
    return sorted(out, key=lambda h: (h.dim, len(h.I), h.I, h.J), reverse=False)


def handle_closure(handles: list[HandleCell]) -> dict[HandleCell, list[HandleCell]]:
    """For every handle cell, the cells of one dimension less in its closure."""
    out = {h: [] for h in handles}
    for h in handles:
        for g in handles:
            if g.dim == h.dim - 1 and g.in_closure_of(h):
                out[h].append(g)
    return out


@dataclass(frozen=True)
class Stratum:
    id: str
    handle: HandleCell
    dim: int
    k: int
    tag: str
    slot: str
    cells: tuple

    @property
    def lambdaF(self) -> int:
        return self.k


def _level_k(level) -> int:
    return len(level.sheets) + 2 * len(level.cusps) - 1


class Stratification:
    def __init__(self, front: FrontComplex):
        self.front = front
        base = front.base
        if base.dim != 2:
            raise StratificationError("stratification needs a 2-dimensional base")
        self.handles = build_handles(base)
        self._cofaces = {s: base.cofaces(s) for s in base.simplices}
        self._closure_cache: dict = {}
        self.diagnostics: list[Diagnostic] = []
        self._build_cells()
        self._build_strata()
        self._build_order()

    # -- fine cells ---------------------------------------------------------
    def pieces(self, h: HandleCell) -> list[Piece]:
        return [(h.I, h.J, K) for K in self._cofaces[h.J]]

    @staticmethod
    def piece_dim(P: Piece) -> int:
        I, J, K = P
        return len(I) + len(K) - len(J) - 1

    def n_slots(self, K: Simplex) -> int:
        return 2 * len(self.front.levels(K)) + 1

    def cell_k(self, cell: FineCell) -> int:
        (_, _, K), s = cell
        if s % 2 == 0:
            return -1
        return _level_k(self.front.levels(K)[(s - 1) // 2])

    def cell_dim(self, cell: FineCell) -> int:
        return self.piece_dim(cell[0]) + (1 if cell[1] % 2 == 0 else 0)

    def slot_closure(self, K: Simplex, K2: Simplex) -> list[range]:
        """For each slot over K2, the slots over K (a face) in its closure."""
        key = (K, K2)
        if key in self._closure_cache:
            return self._closure_cache[key]
        try:
            lm = self.front.level_map(K, K2)
        except ValueError as e:
            raise StratificationError(f"{cell_name(K)} -> {cell_name(K2)}: {e}") from None
        top = self.n_slots(K) - 1
        out = []
        for s in range(2 * len(lm) + 1):
            if s % 2:
                t = 2 * lm[(s - 1) // 2] + 1
                out.append(range(t, t + 1))
            else:
                g = s // 2
                hi = 2 * lm[g - 1] + 1 if g > 0 else 0
                lo = 2 * lm[g] + 1 if g < len(lm) else top
                out.append(range(hi, lo + 1))
        self._closure_cache[key] = out
        return out

    def piece_faces(self, P: Piece) -> list[Piece]:
        """Pieces in the closure of P (including P)."""
        I2, J2, K2 = P
        out = []
        for I in _subsets(I2):
            for K in _subsets(K2):
                if not set(J2) <= set(K):
                    continue
                for J in _subsets(K):
                    if set(J2) <= set(J) and set(I) <= set(J):
                        out.append((I, J, K))
        return out

    def _build_cells(self):
        self.cells_of: dict[HandleCell, list[FineCell]] = {}
        for h in self.handles:
            cells = []
            for P in self.pieces(h):
                cells.extend((P, s) for s in range(self.n_slots(P[2])))
            self.cells_of[h] = cells
        self.below: dict[FineCell, set] = {}
        for cells in self.cells_of.values():
            for c in cells:
                P2, s2 = c
                acc = set()
                for P in self.piece_faces(P2):
                    for s in self.slot_closure(P[2], P2[2])[s2]:
                        acc.add((P, s))
                self.below[c] = acc

    # -- strata -------------------------------------------------------------
    def _build_strata(self):
        parent: dict = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        handle_of = {}
        for h, cells in self.cells_of.items():
            for c in cells:
                parent[c] = c
                handle_of[c] = h
        for c2, lows in self.below.items():
            k2 = self.cell_k(c2)
            for c in lows:
                if handle_of[c] == handle_of[c2] and self.cell_k(c) == k2:
                    a, b = find(c), find(c2)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        groups = defaultdict(list)
        for c in parent:
            groups[find(c)].append(c)
        by_handle = defaultdict(list)
        for cells in groups.values():
            by_handle[handle_of[cells[0]]].append(sorted(cells, key=self._cell_key))
        self.strata: list[Stratum] = []
        self.stratum_of: dict[FineCell, Stratum] = {}
        for h in self.handles:
            comps = sorted(by_handle[h], key=lambda cs: self._cell_key(self._top(cs)))
            for n, cells in enumerate(comps):
                s = self._make_stratum(h, n, cells)
                self.strata.append(s)
                for c in cells:
                    self.stratum_of[c] = s
        self.by_id = {s.id: s for s in self.strata}

    def _cell_key(self, c: FineCell):
        (I, J, K), s = c
        return (len(K), K, s)

    def _top(self, cells):
        return max(cells, key=lambda c: (self.cell_dim(c), [-x for x in self._flat(c)]))

    def _flat(self, c):
        (I, J, K), s = c
        return list(K) + [s]

    def _make_stratum(self, h: HandleCell, n: int, cells) -> Stratum:
        top = self._top(cells)
        k = self.cell_k(top)
        dim = max(self.cell_dim(c) for c in cells)
        if dim != h.dim - k:
            self.diagnostics.append(Diagnostic(
                "stratum dimension", h.name, f"cells of index {k} reach dimension {dim}"))
        (_, _, K), slot = top
        return Stratum(f"{h.name}#{n}", h, dim, k, self._tag(h, dim, k, K, slot),
                       self._describe(K, slot), tuple(cells))

    def _tag(self, h, dim, k, K, slot) -> str:
        kind = self.front.levels(K)[(slot - 1) // 2].kind if slot % 2 else "gap"
        if dim == 3:
            return "3-stratum"
        if dim == 2:
            return "Legendrian-2" if k == 0 else "vertical-2"
        if dim == 1:
            if k == 1:
                return "Cu" if kind == "cusp" else "F2"
            return "V2" if k == -1 else "FV"
        if k == 2:
            return "FCu" if kind == "cusp-sheet" else "F3"
        if k == 1:
            return "VCu" if kind == "cusp" else "F2V"
        return "FV2" if k == 0 else "untyped"

    def _describe(self, K, slot) -> str:
        levels = self.front.levels(K)
        if slot % 2:
            return "level " + "".join(levels[(slot - 1) // 2].items)
        g = slot // 2
        above = "".join(levels[g - 1].items) if g > 0 else None
        below = "".join(levels[g].items) if g < len(levels) else None
        if above and below:
            return f"gap {above}/{below}"
        if above:
            return f"gap below {above}"
        if below:
            return f"gap above {below}"
        return "gap"

    # -- order --------------------------------------------------------------
    def _build_order(self):
        up = defaultdict(set)
        for c2, lows in self.below.items():
            t = self.stratum_of[c2].id
            for c in lows:
                s = self.stratum_of[c].id
                if s != t:
                    up[s].add(t)
        self.up: dict[str, frozenset] = {s.id: frozenset(up[s.id]) for s in self.strata}
        self.down: dict[str, set] = defaultdict(set)
        for s, ts in self.up.items():
            for t in ts:
                self.down[t].add(s)

    def leq(self, s: str, t: str) -> bool:
        return s == t or t in self.up[s]

    def edges(self) -> list[tuple[str, str]]:
        return [(s.id, t) for s in self.strata for t in sorted(self.up[s.id], key=self._order)]

    def _order(self, sid: str) -> int:
        return self._index[sid]

    @cached_property
    def _index(self) -> dict[str, int]:
        return {s.id: n for n, s in enumerate(self.strata)}

    def composable(self):
        for s in self.strata:
            for t in sorted(self.up[s.id], key=self._order):
                for u in sorted(self.up[t], key=self._order):
                    yield s.id, t, u

    # -- consistency ----------------------------------------------------------
    def check(self) -> list[Diagnostic]:
        out = list(self.diagnostics)
        for s in self.strata:
            for t in self.up[s.id]:
                if s.id in self.up[t]:
                    out.append(Diagnostic("antisymmetry", s.id, f"also above {t}"))
                for u in self.up[t]:
                    if u != s.id and u not in self.up[s.id]:
                        out.append(Diagnostic("transitivity", s.id, f"{t} < {u}"))
                tcells = self.by_id[t].cells
                reach = set()
                for c in tcells:
                    reach |= self.below[c]
                missing = [c for c in s.cells if c not in reach]
                if missing:
                    out.append(Diagnostic("frontier", s.id,
                                          f"meets the closure of {t} only partly"))
            if s.tag == "untyped":
                out.append(Diagnostic("type", s.id, "no type tag applies"))
        chi = sum((-1) ** h.dim for h in self.handles)
        if chi != self.front.base.euler_characteristic():
            out.append(Diagnostic("euler", self.front.name,
                                  f"handle count {chi} != {self.front.base.euler_characteristic()}"))
        return sorted(set(out))

    # -- edge classes ---------------------------------------------------------
    @cached_property
    def downward_edges(self) -> frozenset:
        out = set()
        for s in self.strata:
            for (P, slot) in s.cells:
                if slot % 2:
                    t = self.stratum_of[(P, slot + 1)]
                    out.add((s.id, t.id))
        return frozenset(out)

    def is_downward(self, s: str, t: str) -> bool:
        return (s, t) in self.downward_edges

    @cached_property
    def generalized_downward_edges(self) -> frozenset:
        into = defaultdict(set)
        for s, t in self.downward_edges:
            into[t].add(s)
        out = set()
        for t, srcs in into.items():
            for a in srcs:
                for b in srcs:
                    if a != b and b in self.up[a]:
                        out.add((a, b))
        return frozenset(out)

    def is_generalized_downward(self, s: str, t: str) -> bool:
        return (s, t) in self.generalized_downward_edges

    def same_lambda(self, s: str, t: str) -> bool:
        return self.by_id[s].k == self.by_id[t].k

    def classify_edge(self, s: str, t: str) -> dict[str, bool]:
        if t not in self.up[s]:
            raise KeyError(f"{s} is not below {t}")
        return {"downward": self.is_downward(s, t),
                "generalized_downward": self.is_generalized_downward(s, t),
                "same_lambda": self.same_lambda(s, t)}

    # -- local queries ---------------------------------------------------------
    def gap_above(self, s: Stratum) -> set[str]:
        return {self.stratum_of[(P, slot - 1)].id for P, slot in s.cells if slot % 2}

    def gap_below(self, s: Stratum) -> set[str]:
        return {self.stratum_of[(P, slot + 1)].id for P, slot in s.cells if slot % 2}

    def between(self, s3: str, a: str, b: str) -> bool:
        """s3 has a gap cell whose bounding levels lie in a and b."""
        for P, slot in self.by_id[s3].cells:
            if slot % 2 or slot == 0 or slot == self.n_slots(P[2]) - 1:
                continue
            hi = self.stratum_of[(P, slot - 1)].id
            lo = self.stratum_of[(P, slot + 1)].id
            if {hi, lo} == {a, b}:
                return True
        return False

    def crossing_squares(self) -> list[tuple[str, str, str, str]]:
        """(O, NW, NE, N) for every crossing 1-stratum O; N is the region above."""
        out = []
        for O in self.strata:
            if O.tag != "F2":
                continue
            ns = self.gap_above(O)
            if len(ns) != 1:
                self.diagnostics.append(Diagnostic("crossing square", O.id,
                                                   f"{len(ns)} regions directly above"))
                continue
            N = ns.pop()
            mids = sorted((t for t in self.up[O.id]
                           if self.by_id[t].dim == 2 and self.by_id[t].k == 0
                           and N in self.up[t]), key=self._order)
            if len(mids) != 2:
                self.diagnostics.append(Diagnostic("crossing square", O.id,
                                                   f"{len(mids)} sheets between O and N"))
                continue
            out.append((O.id, mids[0], mids[1], N))
        return out

    def top_squares(self) -> list[tuple[str, str, str, str]]:
        out = []
        for s1 in self.strata:
            if s1.dim != 1:
                continue
            twos = [t for t in self.up[s1.id] if self.by_id[t].dim == 2]
            threes = sorted((t for t in self.up[s1.id] if self.by_id[t].dim == 3),
                            key=self._order)
            for s3 in threes:
                mids = sorted((t for t in twos if s3 in self.up[t]), key=self._order)
                for a, b in combinations(mids, 2):
                    if s1.tag == "Cu" and not self.between(s3, a, b):
                        continue
                    out.append((s1.id, a, b, s3))
        return out

    def legendrian_up(self, s: Stratum) -> str:
        """The region directly above a Legendrian 2-stratum."""
        ups = self.gap_above(s)
        if len(ups) != 1:
            raise StratificationError(f"{s.id}: {len(ups)} regions directly above")
        return ups.pop()

    def dump(self) -> list[dict]:
        return [{"id": s.id, "handle": [cell_name(s.handle.I), cell_name(s.handle.J)],
                 "dim": s.dim, "k": s.k, "type": s.tag, "slot": s.slot,
                 "covers": sorted((t for t in self.up[s.id]
                                   if self.by_id[t].dim == s.dim + 1), key=self._order)}
                for s in self.strata]


def build_strata(f: FrontComplex) -> Stratification:
    return Stratification(f)
