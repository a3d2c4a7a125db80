"""Builders for the shipped example fronts.

Examples are described with global sheet labels: a label names the same
sheet over every simplex it appears on, so inclusions are label-preserving
and a cusp label's branches are listed once.  ``build`` turns such a
description into an explicit FrontComplex; ``write_all`` refreshes the JSON
files under ``fronts/``.
"""
from __future__ import annotations

from pathlib import Path

from .front import (BaseComplex, CellData, FacetData, FrontComplex, Level, Simplex,
                    dumps_front)

OCTAHEDRON = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 1, 4),
              (1, 2, 5), (2, 3, 5), (3, 4, 5), (1, 4, 5)]
HEXAGON = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 6), (0, 1, 6)]


def build(name: str, description: str, facets, levels: dict[Simplex, list[list[str]]],
          maslov: dict[str, int], branches: dict[str, tuple[str, str]] | None = None
          ) -> FrontComplex:
    branches = branches or {}
    base = BaseComplex(facets)
    cells = {}
    for s in base.simplices:
        lv = levels.get(s, [])
        built = []
        for items in lv:
            sh = tuple(sorted(x for x in items if x not in branches))
            cu = tuple(sorted(x for x in items if x in branches))
            built.append(Level(sh, cu))
        mu = tuple(sorted((x, maslov[x]) for lev in built for x in lev.sheets))
        cells[s] = CellData(tuple(built), mu)
    facet_data = {}
    for G in base.simplices:
        for F in base.facets_of(G):
            fsheets = [x for lev in cells[F].levels for x in lev.sheets]
            gsheets = {x for lev in cells[G].levels for x in lev.sheets}
            gcusps = {x for lev in cells[G].levels for x in lev.cusps}
            iota, pairs, cmap = {}, {}, {}
            for x in fsheets:
                if x not in gsheets:
                    raise ValueError(f"{name}: sheet {x} over {F} missing over {G}")
                iota[x] = x
            for lev in cells[F].levels:
                for c in lev.cusps:
                    if c in gcusps:
                        cmap[c] = c
                    elif set(branches[c]) <= gsheets:
                        pairs[c] = tuple(branches[c])
            facet_data[(F, G)] = FacetData(tuple(sorted(iota.items())),
                                           tuple(sorted(pairs.items())),
                                           tuple(sorted(cmap.items())))
    return FrontComplex(name, base, cells, facet_data, description)


def _octahedral(name, description, north, equator, south, maslov, branches=None):
    """Assign levels by hemisphere: vertex 0 is the north pole, 5 the south pole."""
    base = BaseComplex(OCTAHEDRON)
    levels = {}
    for s in base.simplices:
        if 0 in s:
            levels[s] = north
        elif 5 in s:
            levels[s] = south
        else:
            levels[s] = equator
    return build(name, description, OCTAHEDRON, levels, maslov, branches)


def _hexagon(name, description, table, maslov, branches=None):
    levels = {tuple(int(c) for c in key): [list(x) for x in val] for key, val in table.items()}
    return build(name, description, HEXAGON, levels, maslov, branches)


def one_sheet():
    return _octahedral("one_sheet", "A single sheet over the octahedral sphere.",
                       [["A"]], [["A"]], [["A"]], {"A": 0})


def two_sheets():
    return _octahedral("two_sheets", "Two parallel sheets, A above B, Maslov potentials (1, 0).",
                       [["A"], ["B"]], [["A"], ["B"]], [["A"], ["B"]], {"A": 1, "B": 0})


def crossing_circle():
    return _octahedral("crossing_circle",
                       "Two sheets crossing along the equator of the octahedral sphere.",
                       [["A"], ["B"]], [["A", "B"]], [["B"], ["A"]], {"A": 0, "B": 0})


def unknot_sphere():
    return _octahedral("unknot_sphere",
                       "Flying-saucer unknot: upper and lower sheets over the northern "
                       "hemisphere meeting along an equatorial cusp circle.",
                       [["U"], ["L"]], [["c"]], [], {"U": 1, "L": 0}, {"c": ("U", "L")})


def stacked_unknot():
    return _octahedral("stacked_unknot",
                       "The flying saucer sandwiched between a sheet A above and sheets "
                       "B, C below; five sheets over northern triangles.",
                       [["A"], ["U"], ["L"], ["B"], ["C"]],
                       [["A"], ["c"], ["B"], ["C"]],
                       [["A"], ["B"], ["C"]],
                       {"A": 3, "U": 1, "L": 0, "B": 0, "C": -2}, {"c": ("U", "L")})


def stacked_crossing():
    return _octahedral("stacked_crossing",
                       "Sheets T2, T3 crossing along the equator, between a sheet T1 above "
                       "and a sheet T4 below.",
                       [["T1"], ["T2"], ["T3"], ["T4"]],
                       [["T1"], ["T2", "T3"], ["T4"]],
                       [["T1"], ["T3"], ["T2"], ["T4"]],
                       {"T1": 2, "T2": 0, "T3": 0, "T4": -3})


def cusp_sheet_vertex():
    t = {
        "0": ["cS"],
        "1": ["c", "S"], "2": ["U", "LS"], "3": ["SU", "L"], "4": ["S", "c"],
        "5": ["S"], "6": ["S"],
        "01": ["c", "S"], "02": ["U", "LS"], "03": ["SU", "L"], "04": ["S", "c"],
        "05": ["S"], "06": ["S"],
        "12": ["U", "L", "S"], "23": ["U", "S", "L"], "34": ["S", "U", "L"],
        "45": ["S"], "56": ["S"], "16": ["S"],
        "012": ["U", "L", "S"], "023": ["U", "S", "L"], "034": ["S", "U", "L"],
        "045": ["S"], "056": ["S"], "016": ["S"],
    }
    return _hexagon("cusp_sheet_vertex",
                    "A cusp edge piercing a transverse sheet S over the central vertex of a "
                    "hexagonal disk; S meets the upper and lower cusp branches along two "
                    "crossing arcs ending at the vertex.",
                    t, {"U": 1, "L": 0, "S": 0}, {"c": ("U", "L")})


def triple_point_vertex():
    t = {
        "0": ["ABC"],
        "1": ["AB", "C"], "2": ["A", "BC"], "3": ["AC", "B"], "4": ["C", "AB"],
        "5": ["BC", "A"], "6": ["B", "AC"],
        "01": ["AB", "C"], "02": ["A", "BC"], "03": ["AC", "B"], "04": ["C", "AB"],
        "05": ["BC", "A"], "06": ["B", "AC"],
        "12": ["A", "B", "C"], "23": ["A", "C", "B"], "34": ["C", "A", "B"],
        "45": ["C", "B", "A"], "56": ["B", "C", "A"], "16": ["B", "A", "C"],
        "012": ["A", "B", "C"], "023": ["A", "C", "B"], "034": ["C", "A", "B"],
        "045": ["C", "B", "A"], "056": ["B", "C", "A"], "016": ["B", "A", "C"],
    }
    return _hexagon("triple_point_vertex",
                    "Three pairwise crossing sheets A, B, C with a triple point over the "
                    "central vertex of a hexagonal disk.",
                    t, {"A": 0, "B": 1, "C": 20})


def two_arcs_vertex():
    t = {
        "0": ["AB", "CD"],
        "1": ["AB", "C", "D"], "2": ["A", "B", "CD"], "3": ["A", "B", "D", "C"],
        "4": ["AB", "D", "C"], "5": ["B", "A", "CD"], "6": ["B", "A", "C", "D"],
        "01": ["AB", "C", "D"], "02": ["A", "B", "CD"], "03": ["A", "B", "D", "C"],
        "04": ["AB", "D", "C"], "05": ["B", "A", "CD"], "06": ["B", "A", "C", "D"],
        "12": ["A", "B", "C", "D"], "23": ["A", "B", "D", "C"], "34": ["A", "B", "D", "C"],
        "45": ["B", "A", "D", "C"], "56": ["B", "A", "C", "D"], "16": ["B", "A", "C", "D"],
        "012": ["A", "B", "C", "D"], "023": ["A", "B", "D", "C"], "034": ["A", "B", "D", "C"],
        "045": ["B", "A", "D", "C"], "056": ["B", "A", "C", "D"], "016": ["B", "A", "C", "D"],
    }
    return _hexagon("two_arcs_vertex",
                    "Two crossing arcs at distinct heights (A/B above C/D) whose base "
                    "projections cross transversally over the central vertex.",
                    t, {"A": 1, "B": 0, "C": 11, "D": 10})


CORE = ("one_sheet", "two_sheets", "crossing_circle", "unknot_sphere",
        "cusp_sheet_vertex", "triple_point_vertex")
EXTRA = ("stacked_unknot", "stacked_crossing", "two_arcs_vertex")
BUILDERS = {n: globals()[n] for n in CORE + EXTRA}


def write_all(directory: Path | None = None) -> list[Path]:
    directory = directory or Path(__file__).parent / "fronts"
    directory.mkdir(exist_ok=True)
    out = []
    for name, make in BUILDERS.items():
        path = directory / f"{name}.json"
        path.write_text(dumps_front(make()))
        out.append(path)
    return out


if __name__ == "__main__":
    for p in write_all():
        print(p)
