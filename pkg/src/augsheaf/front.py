"""Combinatorial Legendrian fronts over a simplicial base complex.

Over every simplex the front is recorded as a stack of z-levels, top first.
A level holds either sheets (one sheet, or several coinciding sheets: a
crossing) or a cusp component, possibly together with one sheet (the
cusp-sheet vertex configuration).  Face pairs of codimension one carry the
inclusion of sheets, the cusp pairs of the coface meeting at cusps of the
face, and the continuation of cusp components; longer face pairs are composed
and every composition path is cross-checked.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from itertools import combinations
from pathlib import Path
from typing import Iterable

import jsonschema
import numpy as np

from .homalg import GradedLinearMap, GradedModule

Simplex = tuple[int, ...]


class FrontFormatError(ValueError):
    """Malformed front file; ``location`` points into the document."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location
        self.message = message


@dataclass(frozen=True, order=True)
class Diagnostic:
    rule: str
    cell: str
    message: str

    def __str__(self):
        return f"[{self.rule}] {self.cell}: {self.message}"


def cell_name(I: Simplex) -> str:
    return ",".join(str(v) for v in I)


def parse_cell(s: str) -> Simplex:
    return tuple(int(x) for x in s.split(","))


# -- base complex ---------------------------------------------------------------

class BaseComplex:
    """Face-closed abstract simplicial complex."""

    def __init__(self, facets: Iterable[Iterable[int]]):
        simplices = set()
        for f in facets:
            f = tuple(sorted(set(int(v) for v in f)))
            if not f:
                raise ValueError("empty facet")
            for k in range(1, len(f) + 1):
                simplices.update(combinations(f, k))
        self.simplices: tuple[Simplex, ...] = tuple(sorted(simplices, key=lambda s: (len(s), s)))
        self._set = frozenset(self.simplices)
        self.dim = max(len(s) for s in self.simplices) - 1
        self.vertices = tuple(s[0] for s in self.simplices if len(s) == 1)
        up: dict[Simplex, list[Simplex]] = {s: [] for s in self.simplices}
        for s in self.simplices:
            if len(s) > 1:
                for f in combinations(s, len(s) - 1):
                    up[f].append(s)
        self._up = {s: tuple(v) for s, v in up.items()}

    def __contains__(self, s) -> bool:
        return tuple(s) in self._set

    def of_dim(self, k: int) -> tuple[Simplex, ...]:
        return tuple(s for s in self.simplices if len(s) == k + 1)

    def facets_of(self, s: Simplex) -> tuple[Simplex, ...]:
        """Codimension-one faces."""
        return tuple(combinations(s, len(s) - 1)) if len(s) > 1 else ()

    def faces(self, s: Simplex, proper: bool = False) -> tuple[Simplex, ...]:
        out = []
        for k in range(1, len(s) + 1):
            out.extend(combinations(s, k))
        if proper:
            out.remove(s)
        return tuple(out)

    def cofacets(self, s: Simplex) -> tuple[Simplex, ...]:
        return self._up[s]

    def cofaces(self, s: Simplex, proper: bool = False) -> tuple[Simplex, ...]:
        ss = set(s)
        return tuple(t for t in self.simplices
                     if ss.issubset(t) and (not proper or t != s))

    @staticmethod
    def is_face(f: Simplex, g: Simplex) -> bool:
        return set(f).issubset(g)

    def euler_characteristic(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.simplices)

    def is_boundary_edge(self, e: Simplex) -> bool:
        return len(self._up[e]) == 1

    def vertex_link(self, v: int) -> tuple[list[int], bool] | None:
        """Ordered link vertices of v and whether the link is a cycle.

        Returns None when the link is neither a path nor a cycle.
        """
        tris = [t for t in self.cofaces((v,)) if len(t) == 3]
        adj: dict[int, list[int]] = {}
        for t in tris:
            a, b = [w for w in t if w != v]
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        nbrs = [e[0] if e[1] == v else e[1] for e in self.cofaces((v,)) if len(e) == 2]
        if not tris:
            return (sorted(nbrs), False) if len(nbrs) <= 1 else None
        if any(len(x) > 2 for x in adj.values()) or set(adj) != set(nbrs):
            return None
        ends = sorted(w for w, x in adj.items() if len(x) == 1)
        if len(ends) not in (0, 2):
            return None
        start = ends[0] if ends else min(adj)
        order, prev, cur = [start], None, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt or nxt[0] == start:
                break
            prev, cur = cur, nxt[0]
            order.append(cur)
        if len(order) != len(adj):
            return None
        return order, not ends

    def star_diagnostics(self) -> list[Diagnostic]:
        out = []
        if self.dim != 2:
            return out
        for e in self.of_dim(1):
            n = len([t for t in self._up[e]])
            if n > 2 or n == 0:
                out.append(Diagnostic("star-disk", cell_name(e),
                                      f"edge lies on {n} triangles"))
        for v in self.vertices:
            if self.vertex_link(v) is None:
                out.append(Diagnostic("star-disk", cell_name((v,)),
                                      "vertex link is neither a path nor a cycle"))
        return out


# -- front data -------------------------------------------------------------------

@dataclass(frozen=True)
class Level:
    sheets: tuple[str, ...]
    cusps: tuple[str, ...] = ()

    @property
    def items(self) -> tuple[str, ...]:
        return self.sheets + self.cusps

    @property
    def lambda_index(self) -> int:
        """k with p + 2q - 1 = k for p sheets and q cusps meeting here."""
        return len(self.sheets) + 2 * len(self.cusps) - 1

    @property
    def kind(self) -> str:
        p, q = len(self.sheets), len(self.cusps)
        return {(1, 0): "sheet", (2, 0): "crossing", (3, 0): "triple",
                (0, 1): "cusp", (1, 1): "cusp-sheet"}.get((p, q), "other")


@dataclass(frozen=True)
class CellData:
    levels: tuple[Level, ...] = ()
    maslov: tuple[tuple[str, int], ...] = ()

    @cached_property
    def mu(self) -> dict[str, int]:
        return dict(self.maslov)


@dataclass(frozen=True)
class FacetData:
    iota: tuple[tuple[str, str], ...] = ()
    cusp_pairs: tuple[tuple[str, tuple[str, str]], ...] = ()
    cusp_map: tuple[tuple[str, str], ...] = ()


EMPTY_CELL = CellData()
EMPTY_FACET = FacetData()


class FrontComplex:
    def __init__(self, name: str, base: BaseComplex, cells: dict[Simplex, CellData],
                 facets: dict[tuple[Simplex, Simplex], FacetData],
                 description: str = ""):
        self.name = name
        self.description = description
        self.base = base
        self.cells = {s: cells.get(s, EMPTY_CELL) for s in base.simplices}
        self.facet_data = dict(facets)
        self._iota: dict = {}
        self._fate: dict = {}

    # per-cell queries
    def levels(self, I: Simplex) -> tuple[Level, ...]:
        return self.cells[tuple(I)].levels

    def sheets(self, I: Simplex) -> tuple[str, ...]:
        """Sheets in descending z; coinciding sheets ordered by label."""
        return tuple(s for lv in self.levels(I) for s in lv.sheets)

    def cusps(self, I: Simplex) -> tuple[str, ...]:
        return tuple(c for lv in self.levels(I) for c in lv.cusps)

    def position(self, I: Simplex, sheet: str) -> int:
        """1-based position in the descending-z order."""
        return self.sheets(I).index(sheet) + 1

    def level_of(self, I: Simplex, item: str) -> int:
        for k, lv in enumerate(self.levels(I)):
            if item in lv.items:
                return k
        raise KeyError(f"{item!r} not over {cell_name(I)}")

    def mu(self, I: Simplex, sheet: str) -> int:
        return self.cells[tuple(I)].mu[sheet]

    def above(self, I: Simplex, s: str, t: str) -> bool:
        """S strictly above T over e_I (S precedes T)."""
        return self.level_of(I, s) < self.level_of(I, t)

    def V(self, I: Simplex) -> GradedModule:
        I = tuple(I)
        if I not in self.cells:
            raise KeyError(f"unknown simplex {cell_name(I)}")
        ss = self.sheets(I)
        return GradedModule(ss, tuple(-self.mu(I, s) for s in ss))

    # face pairs
    def _facet(self, F: Simplex, G: Simplex) -> FacetData:
        return self.facet_data.get((F, G), EMPTY_FACET)

    def _check_pair(self, F, G):
        F, G = tuple(F), tuple(G)
        if F not in self.cells or G not in self.cells or not BaseComplex.is_face(F, G):
            raise KeyError(f"{cell_name(F)} is not a face of {cell_name(G)}")
        return F, G

    def iota(self, F: Simplex, G: Simplex) -> dict[str, str]:
        F, G = self._check_pair(F, G)
        key = (F, G)
        if key not in self._iota:
            self._iota[key] = self._compose_iota(F, G, self._first_step(F, G))
        return self._iota[key]

    def cusp_fate(self, F: Simplex, G: Simplex) -> dict[str, tuple]:
        """Fate in G of each cusp component of F.

        ("pair", upper, lower): two sheets of G meeting at it;
        ("cusp", c): it continues as the cusp component c of G;
        ("absent",): G lies on the side of the cusp edge without its sheets.
        """
        F, G = self._check_pair(F, G)
        key = (F, G)
        if key not in self._fate:
            self._fate[key] = self._compose_fate(F, G, self._first_step(F, G))
        return self._fate[key]

    @staticmethod
    def _first_step(F, G):
        if F == G:
            return None
        extra = sorted(set(G) - set(F))
        return tuple(sorted(F + (extra[0],)))

    def _compose_iota(self, F, G, X):
        if X is None:
            return {s: s for s in self.sheets(F)}
        first = dict(self._facet(F, X).iota)
        if X == G:
            return first
        rest = self.iota(X, G)
        return {s: rest.get(t) for s, t in first.items()}

    def _compose_fate(self, F, G, X):
        if X is None:
            return {c: ("cusp", c) for c in self.cusps(F)}
        fd = self._facet(F, X)
        pairs = dict(fd.cusp_pairs)
        cont = {c: cf for cf, c in fd.cusp_map}
        first = {}
        for c in self.cusps(F):
            if c in pairs:
                first[c] = ("pair",) + tuple(pairs[c])
            elif c in cont:
                first[c] = ("cusp", cont[c])
            else:
                first[c] = ("absent",)
        if X == G:
            return first
        io, fate = self.iota(X, G), self.cusp_fate(X, G)
        out = {}
        for c, f in first.items():
            if f[0] == "pair":
                out[c] = ("pair", io.get(f[1]), io.get(f[2]))
            elif f[0] == "cusp":
                out[c] = fate.get(f[1], ("absent",))
            else:
                out[c] = f
        return out

    def cusp_pairs(self, F: Simplex, G: Simplex) -> list[tuple[str, str]]:
        """Pairs (upper, lower) of sheets of G meeting at cusps over F."""
        out = [(f[1], f[2]) for f in self.cusp_fate(F, G).values() if f[0] == "pair"]
        return sorted(out, key=lambda ul: self.position(G, ul[0]))

    def cusp_origin(self, F: Simplex, G: Simplex) -> dict[str, str]:
        """Cusp components of G mapped to the cusp of F they limit onto."""
        return {f[1]: c for c, f in self.cusp_fate(F, G).items() if f[0] == "cusp"}

    def level_map(self, F: Simplex, G: Simplex) -> tuple[int, ...]:
        """For each level of G, the level of F it degenerates to."""
        inv = {t: s for s, t in self.iota(F, G).items()}
        branch = {}
        for c, f in self.cusp_fate(F, G).items():
            if f[0] == "pair":
                branch[f[1]] = branch[f[2]] = c
        origin = self.cusp_origin(F, G)
        out = []
        for lv in self.levels(G):
            targets = set()
            for s in lv.sheets:
                src = inv.get(s, branch.get(s))
                targets.add(self.level_of(F, src) if src is not None else None)
            for c in lv.cusps:
                src = origin.get(c)
                targets.add(self.level_of(F, src) if src is not None else None)
            if len(targets) != 1 or None in targets:
                raise ValueError(f"level {lv.items} of {cell_name(G)} has no single "
                                 f"image over {cell_name(F)}")
            out.append(targets.pop())
        return tuple(out)

    def projection_p(self, I: Simplex, J: Simplex, p: int = 2) -> GradedLinearMap:
        """p: V(e_J) -> V(e_I) for e_I <= e_J, killing cusp-paired sheets."""
        I, J = self._check_pair(I, J)
        src, tgt = self.V(J), self.V(I)
        m = np.zeros((len(tgt), len(src)), dtype=np.int64)
        for s, t in self.iota(I, J).items():
            m[tgt.index(s), src.index(t)] = 1
        return GradedLinearMap(src, tgt, 0, m, p)

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        cells = {}
        for s in self.base.simplices:
            cd = self.cells[s]
            if not cd.levels:
                continue
            entry = {"levels": [list(lv.items) for lv in cd.levels]}
            cusps = [c for lv in cd.levels for c in lv.cusps]
            if cusps:
                entry["cusps"] = cusps
            entry["maslov"] = {k: v for k, v in cd.maslov}
            cells[cell_name(s)] = entry
        faces = []
        for (F, G) in sorted(self.facet_data, key=lambda k: (len(k[1]), k[1], k[0])):
            fd = self.facet_data[(F, G)]
            if fd == EMPTY_FACET:
                continue
            e = {"face": cell_name(F), "coface": cell_name(G)}
            if fd.iota:
                e["iota"] = dict(fd.iota)
            if fd.cusp_pairs:
                e["cusp_pairs"] = {c: list(ul) for c, ul in fd.cusp_pairs}
            if fd.cusp_map:
                e["cusp_map"] = dict(fd.cusp_map)
            faces.append(e)
        maximal = [s for s in self.base.simplices
                   if not any(len(t) == len(s) + 1 for t in self.base.cofacets(s))]
        return {"format": "augsheaf-front/1", "name": self.name,
                "description": self.description,
                "facets": [list(s) for s in maximal], "cells": cells, "faces": faces}


# -- loading --------------------------------------------------------------------

def _schema():
    text = resources.files("augsheaf").joinpath("front_schema.json").read_text()
    return json.loads(text)


def front_from_json(doc: dict) -> FrontComplex:
    try:
        jsonschema.validate(doc, _schema())
    except jsonschema.ValidationError as err:
        loc = "/".join(str(p) for p in err.absolute_path) or "<root>"
        raise FrontFormatError(loc, err.message) from None
    base = BaseComplex(doc["facets"])
    cells = {}
    for key, entry in doc.get("cells", {}).items():
        I = parse_cell(key)
        if I not in base:
            raise FrontFormatError(f"cells/{key}", "not a simplex of the base")
        cusps = set(entry.get("cusps", []))
        seen = set()
        levels = []
        for k, items in enumerate(entry["levels"]):
            for x in items:
                if x in seen:
                    raise FrontFormatError(f"cells/{key}/levels/{k}", f"label {x!r} repeated")
                seen.add(x)
            levels.append(Level(tuple(sorted(x for x in items if x not in cusps)),
                                tuple(sorted(x for x in items if x in cusps))))
        if not cusps <= seen:
            raise FrontFormatError(f"cells/{key}/cusps", "cusp missing from levels")
        mu = entry.get("maslov", {})
        sheets = seen - cusps
        if set(mu) != sheets:
            raise FrontFormatError(f"cells/{key}/maslov",
                                   "Maslov potential must be given for exactly the sheets")
        cells[I] = CellData(tuple(levels), tuple(sorted(mu.items())))
    facets = {}
    for n, e in enumerate(doc.get("faces", [])):
        F, G = parse_cell(e["face"]), parse_cell(e["coface"])
        if F not in base or G not in base or not BaseComplex.is_face(F, G) or F == G:
            raise FrontFormatError(f"faces/{n}", "face/coface is not a proper face pair")
        if (F, G) in facets:
            raise FrontFormatError(f"faces/{n}", "face pair listed twice")
        facets[(F, G)] = FacetData(
            tuple(sorted(e.get("iota", {}).items())),
            tuple(sorted((c, tuple(ul)) for c, ul in e.get("cusp_pairs", {}).items())),
            tuple(sorted(e.get("cusp_map", {}).items())))
    return FrontComplex(doc["name"], base, cells, facets, doc.get("description", ""))


def dumps_front(f: FrontComplex) -> str:
    """Stable text form: one line per cell and per face pair."""
    doc = f.to_json()
    line = lambda x: json.dumps(x, sort_keys=True)
    parts = ["{", f' "format": {line(doc["format"])},', f' "name": {line(doc["name"])},',
             f' "description": {line(doc["description"])},',
             f' "facets": {line(doc["facets"])},', ' "cells": {']
    cells = list(doc["cells"].items())
    for n, (k, v) in enumerate(cells):
        parts.append(f"  {line(k)}: {line(v)}" + ("," if n < len(cells) - 1 else ""))
    parts.append(" },")
    parts.append(' "faces": [')
    for n, e in enumerate(doc["faces"]):
        parts.append(f"  {line(e)}" + ("," if n < len(doc["faces"]) - 1 else ""))
    parts.append(" ]")
    parts.append("}")
    return "\n".join(parts) + "\n"


def load_front(source: str | Path) -> FrontComplex:
    """Load a front from a path, or a shipped example by name."""
    path = Path(source)
    if path.suffix != ".json" and not path.exists():
        res = resources.files("augsheaf").joinpath("fronts").joinpath(f"{source}.json")
        if not res.is_file():
            raise FrontFormatError(str(source), "no such file or shipped example")
        text = res.read_text()
    else:
        try:
            text = path.read_text()
        except OSError as err:
            raise FrontFormatError(str(source), str(err)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise FrontFormatError(f"{source}:{err.lineno}:{err.colno}", err.msg) from None
    return front_from_json(doc)


def shipped_examples() -> list[str]:
    d = resources.files("augsheaf").joinpath("fronts")
    return sorted(p.name[:-5] for p in d.iterdir() if p.name.endswith(".json"))


# -- validation -------------------------------------------------------------------

def _level_kinds_allowed(f: FrontComplex, I: Simplex) -> set[str]:
    top = f.base.dim
    d = len(I) - 1
    if f.base.dim != 2:
        return {"sheet", "crossing"} | ({"cusp"} if d < top else set())
    return {2: {"sheet"}, 1: {"sheet", "crossing", "cusp"},
            0: {"sheet", "crossing", "cusp", "triple", "cusp-sheet"}}[d]


def _check_cell(f: FrontComplex, I: Simplex, out: list):
    name = cell_name(I)
    allowed = _level_kinds_allowed(f, I)
    for lv in f.levels(I):
        if lv.kind not in allowed:
            rule = "edge singularity count" if lv.kind == "other" else "block size"
            out.append(Diagnostic(rule, name,
                                  f"level {list(lv.items)} ({lv.kind}) not allowed here"))
    if len(I) == 2 and f.base.dim == 2:
        singular = [lv for lv in f.levels(I) if lv.kind != "sheet"]
        if len(singular) > 1:
            out.append(Diagnostic("edge singularity count", name,
                                  f"{len(singular)} singular loci over one open edge"))


def _check_facet(f: FrontComplex, F: Simplex, G: Simplex, out: list):
    where = f"{cell_name(F)}<{cell_name(G)}"
    fd = f._facet(F, G)
    sF, sG = set(f.sheets(F)), set(f.sheets(G))
    cF, cG = set(f.cusps(F)), set(f.cusps(G))
    io = dict(fd.iota)
    if set(io) != sF:
        out.append(Diagnostic("iota-total", where,
                              f"inclusion defined on {sorted(io)} but face sheets are {sorted(sF)}"))
    if not set(io.values()) <= sG:
        out.append(Diagnostic("iota-total", where, "inclusion lands outside the coface sheets"))
    if len(set(io.values())) != len(io):
        out.append(Diagnostic("iota-injective", where, "two sheets share an image"))
    pairs = dict(fd.cusp_pairs)
    cmap = dict(fd.cusp_map)
    if not set(pairs) <= cF:
        out.append(Diagnostic("cusp-partition", where, "cusp pair for an unknown cusp"))
    if set(cmap) != cG:
        out.append(Diagnostic("cusp-partition", where,
                              "every cusp of the coface must continue a cusp of the face"))
    if not set(cmap.values()) <= cF or set(cmap.values()) & set(pairs):
        out.append(Diagnostic("cusp-partition", where,
                              "cusp continuation inconsistent with cusp pairs"))
    paired = [s for ul in pairs.values() for s in ul]
    rest = sG - set(io.values())
    if sorted(paired) != sorted(rest):
        out.append(Diagnostic("cusp-partition", where,
                              f"sheets {sorted(rest)} outside the inclusion are not "
                              f"partitioned by cusp pairs {sorted(paired)}"))
    if out and out[-1].cell == where:
        return
    for s, t in io.items():
        if f.mu(F, s) != f.mu(G, t):
            out.append(Diagnostic("Maslov continuity", where, f"{s} -> {t} changes Maslov potential"))
    for c, (u, l) in pairs.items():
        if f.mu(G, u) != f.mu(G, l) + 1:
            out.append(Diagnostic("Maslov step", where,
                                  f"cusp {c}: mu({u})={f.mu(G, u)} must equal mu({l})+1={f.mu(G, l) + 1}"))
        if not f.above(G, u, l):
            out.append(Diagnostic("cusp-order", where, f"cusp {c}: {u} is not above {l}"))
        lc = f.level_of(F, c)
        for t in f.sheets(G):
            if f.above(G, u, t) and f.above(G, t, l):
                src = {b: a for a, b in io.items()}.get(t)
                if src is None or f.level_of(F, src) != lc:
                    out.append(Diagnostic("cusp-adjacency", where,
                                          f"sheet {t} lies strictly between cusping pair {u},{l}"))
    for s, t in combinations(sorted(sF), 2):
        for a, b in ((s, t), (t, s)):
            if f.above(F, a, b) and not f.above(G, io[a], io[b]):
                out.append(Diagnostic("iota-order", where, f"{a} above {b} but images are not"))
            if f.above(G, io[a], io[b]) and f.above(F, b, a):
                out.append(Diagnostic("iota-order", where, f"images of {a},{b} reverse their order"))
    try:
        lm = f.level_map(F, G)
    except ValueError as err:
        out.append(Diagnostic("level-monotone", where, str(err)))
        return
    if any(a > b for a, b in zip(lm, lm[1:])):
        out.append(Diagnostic("level-monotone", where, "levels change order under degeneration"))
    fate = f.cusp_fate(F, G)
    for k, lv in enumerate(f.levels(F)):
        if k not in lm:
            if lv.sheets or any(fate[c][0] != "absent" for c in lv.cusps):
                out.append(Diagnostic("level-monotone", where,
                                      f"level {list(lv.items)} of the face is not a limit of the coface"))


def _check_composition(f: FrontComplex, out: list):
    for G in f.base.simplices:
        for F in f.base.faces(G, proper=True):
            if len(G) - len(F) < 2:
                continue
            ref_io, ref_fate = f.iota(F, G), f.cusp_fate(F, G)
            for X in f.base.faces(G, proper=True):
                if len(X) != len(F) + 1 or not BaseComplex.is_face(F, X):
                    continue
                io = f._compose_iota(F, G, X)
                fate = f._compose_fate(F, G, X)
                if io != ref_io or fate != ref_fate:
                    out.append(Diagnostic("iota-composition", f"{cell_name(F)}<{cell_name(G)}",
                                          f"path through {cell_name(X)} disagrees"))
    for (F, G), fd in f.facet_data.items():
        if len(G) - len(F) >= 2:
            direct = dict(fd.iota)
            if direct != f.iota(F, G):
                out.append(Diagnostic("iota-composition", f"{cell_name(F)}<{cell_name(G)}",
                                      "explicit inclusion disagrees with the composite"))


def _singular_level(f: FrontComplex, e: Simplex):
    s = [k for k, lv in enumerate(f.levels(e)) if lv.kind != "sheet"]
    return s[0] if s else None


def _check_edges(f: FrontComplex, out: list):
    for e in f.base.of_dim(1):
        k = _singular_level(f, e)
        if k is None:
            continue
        lv = f.levels(e)[k]
        tris = f.base.cofacets(e)
        name = cell_name(e)
        if len(tris) != 2:
            out.append(Diagnostic("singular boundary edge", name,
                                  "singular locus over a boundary edge"))
            continue
        if lv.kind == "crossing":
            a, b = lv.sheets
            orders = [f.above(t, f.iota(e, t)[a], f.iota(e, t)[b]) for t in tris]
            if orders[0] == orders[1]:
                out.append(Diagnostic("crossing-transversality", name,
                                      f"sheets {a},{b} keep their order on both sides"))
        elif lv.kind == "cusp":
            c = lv.cusps[0]
            kinds = sorted(f.cusp_fate(e, t)[c][0] for t in tris)
            if kinds != ["absent", "pair"]:
                out.append(Diagnostic("cusp-side", name,
                                      f"cusp {c} must have its sheets on exactly one side"))


def vertex_configuration(f: FrontComplex, v: int) -> tuple[str, dict]:
    """Classify the singularity content at a vertex of a surface base.

    Returns the configuration name and, per singular level of v, the incident
    edges whose singular locus ends there.
    """
    V = (v,)
    arcs: dict[int, list[Simplex]] = {}
    for e in f.base.cofacets(V):
        k = _singular_level(f, e)
        if k is None:
            continue
        arcs.setdefault(f.level_map(V, e)[k], []).append(e)
    levels = f.levels(V)
    singular = [k for k, lv in enumerate(levels) if lv.kind != "sheet"]
    link = f.base.vertex_link(v)
    interior = bool(link and link[1])
    kinds = [levels[k].kind for k in singular]
    ends = {k: arcs.get(k, []) for k in singular}
    stray = [k for k in arcs if k not in singular]
    if stray:
        return "unclassified", ends

    def through(k, n):
        return len(ends[k]) == n if interior else 1 <= len(ends[k]) <= n

    if not singular:
        return "none", ends
    if len(singular) == 1:
        k, kind = singular[0], kinds[0]
        if kind in ("crossing", "cusp") and through(k, 2):
            return "single-arc", ends
        if kind == "triple" and through(k, 6):
            return "triple-point", ends
        if kind == "cusp-sheet" and through(k, 4):
            return "cusp-sheet", ends
        return "unclassified", ends
    if len(singular) == 2 and set(kinds) <= {"crossing", "cusp"}:
        if not all(through(k, 2) for k in singular):
            return "unclassified", ends
        if interior:
            order = link[0]
            pos = {w: i for i, w in enumerate(order)}

            def where(e):
                return pos[e[0] if e[1] == v else e[1]]

            a1, a2 = sorted(where(e) for e in ends[singular[0]])
            b = [where(e) for e in ends[singular[1]]]
            if sum(a1 < x < a2 for x in b) != 1:
                return "unclassified", ends
        return "two-arcs", ends
    return "unclassified", ends


def validate(f: FrontComplex) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    out.extend(f.base.star_diagnostics())
    for I in f.base.simplices:
        _check_cell(f, I, out)
    for G in f.base.simplices:
        for F in f.base.facets_of(G):
            _check_facet(f, F, G, out)
    for (F, G) in f.facet_data:
        if F not in f.base or G not in f.base:
            out.append(Diagnostic("face-pair", f"{cell_name(F)}<{cell_name(G)}", "unknown simplex"))
    if out:
        return sorted(set(out))
    _check_composition(f, out)
    if f.base.dim == 2 and not out:
        _check_edges(f, out)
        for v in f.base.vertices:
            kind, _ = vertex_configuration(f, v)
            if kind == "unclassified":
                out.append(Diagnostic("vertex-configuration", cell_name((v,)),
                                      "singularity content is not one of the supported "
                                      "vertex configurations; flagged for manual review"))
    return sorted(set(out))
