"""Command-line entry point.

    augsheaf <stage> FRONT [p=P] [--field P] [--bound N] [--format text|json] [--out PATH]
    augsheaf run FRONT --stage STAGE ...

FRONT is a path to a front file or the name of a shipped example.  Exit
status: 0 when every check passes, 1 when a mathematical check fails, 2 for
invalid input or an exceeded enumeration bound.
"""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

import jsonschema

from . import __version__
from .chd import (DEFAULT_BOUND, EnumerationBoundExceeded, aug_to_chd, chd_to_aug,
                  degree_zero, enumerate_augmentations, validate_chd)
from .dga import build_dga, check_d_squared, format_poly
from .front import FrontComplex, FrontFormatError, cell_name, load_front, validate
from .homalg import homology_ranks, is_prime
from .sheaf import build_sheaf, microlocal_rank, verify_axioms
from .strat import Stratification, StratificationError

STAGES = ("validate", "dga", "augs", "chd", "sheaf", "verify", "report")
REPORT_FORMAT = "augsheaf-report/1"

OK, MATH_FAILURE, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    def __init__(self, message: str, details: list | None = None, required_bound: int | None = None):
        super().__init__(message)
        self.details = details or []
        self.required_bound = required_bound


def report_schema() -> dict:
    return json.loads(resources.files("augsheaf").joinpath("report_schema.json").read_text())


def aug_id(n: int) -> str:
    return f"eps{n}"


# -- stages ---------------------------------------------------------------------

def _diag(d) -> dict:
    return {"rule": d.rule, "cell": d.cell, "message": d.message}


def stage_validate(f: FrontComplex) -> dict:
    diags = validate(f)
    return {"passed": not diags, "diagnostics": [_diag(d) for d in diags]}


def stage_dga(a) -> dict:
    gens = [{"id": g.id, "cell": cell_name(g.cell), "i": g.i, "j": g.j, "degree": g.degree,
             "differential": format_poly(a.d_generator(g.id))}
            for g in a.generators]
    wd = [{"cell": cell, "i": i, "j": j, "entry": format_poly(x)}
          for cell, i, j, x in a.well_definedness]
    return {"generators": gens, "well_definedness_violations": wd,
            "d_squared_zero": check_d_squared(a)}


def stage_augs(a, p: int, bound: int) -> tuple[dict, list]:
    try:
        augs = enumerate_augmentations(a, p, bound)
    except EnumerationBoundExceeded as e:
        raise InputError(str(e), required_bound=e.required) from None
    table = [{"id": aug_id(n), "values": dict(eps.values)} for n, eps in enumerate(augs)]
    return {"degree_zero_generators": degree_zero(a), "count": len(augs),
            "table": table}, augs


def stage_chd(a, augs) -> tuple[list, list]:
    out, chds = [], []
    f = a.front
    for n, eps in enumerate(augs):
        c = aug_to_chd(a, eps)
        diags = validate_chd(c)
        back = chd_to_aug(a, c) == eps
        out.append({"augmentation": aug_id(n), "valid": not diags, "roundtrip": back,
                    "diagnostics": [_diag(d) for d in diags],
                    "matrices": {cell_name(I): {"basis": list(f.sheets(I)),
                                                "matrix": c.matrices[I].tolist()}
                                 for I in f.base.simplices}})
        chds.append(c)
    return out, chds


def stage_strata(S: Stratification) -> dict:
    diags = S.check()
    return {"consistent": not diags, "diagnostics": [_diag(d) for d in diags],
            "strata": S.dump()}


def _ranks(c) -> dict[str, int]:
    return {str(k): v for k, v in sorted(homology_ranks(c).items()) if v}


def stage_sheaf(f, S, chds) -> list:
    out = []
    for n, c in enumerate(chds):
        F = build_sheaf(f, c, S)
        out.append({"augmentation": aug_id(n),
                    "stalks": {s.id: {"X": list(F.X.X[s.id].module.basis),
                                      "dim": len(F.complex(s.id)),
                                      "cohomology": _ranks(F.complex(s.id))}
                               for s in S.strata}})
    return out


def stage_verify(f, S, chds) -> tuple[list, dict]:
    out = []
    rank_one = 0
    for n, c in enumerate(chds):
        F = build_sheaf(f, c, S)
        checks = verify_axioms(F)
        built = {ch.name: ch.passed for ch in checks}
        ranks = {}
        if built["simplex diagrams"] and built["G morphisms"]:
            ranks = {s.id: microlocal_rank(F, s.id) for s in S.strata if s.tag == "Legendrian-2"}
            rank_one += all(r == 1 for r in ranks.values())
        out.append({"augmentation": aug_id(n), "passed": all(ch.passed for ch in checks),
                    "checks": [ch.as_dict() for ch in checks], "microlocal_ranks": ranks})
    counts = {"augmentations": len(chds), "sheaves_with_microlocal_rank_one": rank_one}
    return out, counts


# -- orchestration ----------------------------------------------------------------

def build_report(source: str, stage: str, p: int, bound: int) -> tuple[dict, int]:
    if stage not in STAGES:
        raise InputError(f"unknown stage {stage!r}")
    if not is_prime(p):
        raise InputError(f"field modulus {p} is not prime")
    if bound <= 0:
        raise InputError("enumeration bound must be positive")
    try:
        f = load_front(source)
    except FrontFormatError as e:
        raise InputError("malformed front file", [{"rule": "format", "cell": e.location,
                                                   "message": e.message}]) from None
    rep: dict = {"format": REPORT_FORMAT, "version": __version__, "stage": stage,
                 "front": f.name, "field": p,
                 "conventions": {"crossing_block_order": "sheet label",
                                 "chd_matrix": "column i is the image of sheet i"}}
    v = stage_validate(f)
    rep["validate"] = v
    if not v["passed"]:
        raise InputError("front failed validation", v["diagnostics"])
    failed = False
    if stage == "validate":
        return rep, OK
    a = build_dga(f)
    if stage in ("dga", "report"):
        rep["dga"] = stage_dga(a)
        failed |= not rep["dga"]["d_squared_zero"]
    if stage == "dga":
        return rep, MATH_FAILURE if failed else OK
    rep["augmentations"], augs = stage_augs(a, p, bound)
    chds = [aug_to_chd(a, eps) for eps in augs]
    if stage in ("chd", "report"):
        rep["chd"], chds = stage_chd(a, augs)
        failed |= not all(x["valid"] and x["roundtrip"] for x in rep["chd"])
    if stage in ("sheaf", "verify", "report"):
        try:
            S = Stratification(f)
        except StratificationError as e:
            raise InputError(f"stratification failed: {e}") from None
        rep["stratification"] = stage_strata(S)
        failed |= not rep["stratification"]["consistent"]
        if stage in ("sheaf", "report"):
            rep["sheaf"] = stage_sheaf(f, S, chds)
        if stage in ("verify", "report"):
            rep["verify"], rep["counts"] = stage_verify(f, S, chds)
            failed |= not all(x["passed"] for x in rep["verify"])
    return rep, MATH_FAILURE if failed else OK


def error_report(source: str, stage: str, p: int, err: InputError) -> dict:
    rep = {"format": REPORT_FORMAT, "version": __version__, "stage": stage,
           "front": str(source), "field": p,
           "error": {"message": str(err), "diagnostics": err.details}}
    if err.required_bound is not None:
        rep["error"]["required_bound"] = err.required_bound
    return rep


# -- rendering --------------------------------------------------------------------

def render_json(rep: dict) -> str:
    return json.dumps(rep, indent=1, sort_keys=True) + "\n"


def _verdict(ok: bool) -> str:
    return "pass" if ok else "FAIL"


def render_text(rep: dict, status: int) -> str:
    lines = [f"front {rep['front']}  stage {rep['stage']}  GF({rep['field']})"]
    if "error" in rep:
        lines.append(f"error: {rep['error']['message']}")
        if "required_bound" in rep["error"]:
            lines.append(f"  required bound: {rep['error']['required_bound']}")
        lines += [f"  [{d['rule']}] {d['cell']}: {d['message']}" for d in rep["error"]["diagnostics"]]
        return "\n".join(lines) + "\n"
    v = rep["validate"]
    lines.append(f"validate: {_verdict(v['passed'])}")
    if "dga" in rep:
        d = rep["dga"]
        lines.append(f"dga: {len(d['generators'])} generators")
        w = max((len(g["id"]) for g in d["generators"]), default=0)
        for g in d["generators"]:
            lines.append(f"  {g['id']:<{w}}  deg {g['degree']:>2}  d = {g['differential']}")
        for x in d["well_definedness_violations"]:
            lines.append(f"  ill-defined entry {x['cell']} ({x['i']},{x['j']}): {x['entry']}")
        lines.append(f"  d^2 = 0: {_verdict(d['d_squared_zero'])}")
    if "augmentations" in rep:
        au = rep["augmentations"]
        lines.append(f"augmentations: {au['count']}")
        if rep["stage"] in ("augs", "report"):
            names = au["degree_zero_generators"]
            if names:
                lines.append("  " + " ".join(["id"] + names))
            for row in au["table"]:
                lines.append("  " + " ".join([row["id"]] + [str(row["values"][g]) for g in names]))
    for c in rep.get("chd", []):
        lines.append(f"chd {c['augmentation']}: valid {_verdict(c['valid'])}, "
                     f"roundtrip {_verdict(c['roundtrip'])}")
        for cell, m in c["matrices"].items():
            lines.append(f"  {cell} [{' '.join(m['basis'])}] {m['matrix']}")
        lines += [f"  [{d['rule']}] {d['cell']}: {d['message']}" for d in c["diagnostics"]]
    if "stratification" in rep:
        st = rep["stratification"]
        lines.append(f"stratification: {len(st['strata'])} strata, "
                     f"consistency {_verdict(st['consistent'])}")
        for s in st["strata"]:
            lines.append(f"  {s['id']}  dim {s['dim']}  k {s['k']}  {s['type']}  "
                         f"covers {' '.join(s['covers']) or '-'}")
        lines += [f"  [{d['rule']}] {d['cell']}: {d['message']}" for d in st["diagnostics"]]
    for sh in rep.get("sheaf", []):
        lines.append(f"sheaf {sh['augmentation']}:")
        for sid, x in sh["stalks"].items():
            coh = " ".join(f"H{k}={r}" for k, r in x["cohomology"].items()) or "acyclic"
            lines.append(f"  {sid}  X = [{' '.join(x['X'])}]  dim {x['dim']}  {coh}")
    for ver in rep.get("verify", []):
        lines.append(f"verify {ver['augmentation']}: {_verdict(ver['passed'])}")
        for ch in ver["checks"]:
            lines.append(f"  {ch['name']}: {_verdict(ch['passed'])} ({ch['checked']} checked)")
            lines += [f"    {x}" for x in ch["failures"]]
        ranks = ver["microlocal_ranks"]
        lines.append(f"  microlocal ranks: {sorted(set(ranks.values())) or '-'} "
                     f"over {len(ranks)} Legendrian strata")
    if "counts" in rep:
        c = rep["counts"]
        lines.append(f"counts: {c['augmentations']} augmentations, "
                     f"{c['sheaves_with_microlocal_rank_one']} sheaves of microlocal rank one")
    lines.append(f"status: {('ok', 'check failed', 'invalid input')[status]}")
    return "\n".join(lines) + "\n"


# -- argument parsing -------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="augsheaf",
                                 description="Augmentations of Legendrian surface fronts "
                                             "and their combinatorial sheaves.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)
    for name in STAGES + ("run",):
        sp = sub.add_parser(name)
        sp.add_argument("front", help="front file or shipped example name")
        sp.add_argument("extra", nargs="*", help="optional p=P")
        sp.add_argument("--field", type=int, default=None, help="prime modulus (default 2)")
        sp.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                        help="maximum number of degree-0 assignments to enumerate")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--out", type=Path, default=None)
        if name == "run":
            sp.add_argument("--stage", choices=STAGES, default="report")
    return ap


def _field(args) -> int:
    p = args.field
    for tok in args.extra:
        key, _, val = tok.partition("=")
        if key != "p" or not val.lstrip("-").isdigit():
            raise InputError(f"unrecognized argument {tok!r}")
        if p is not None and p != int(val):
            raise InputError("conflicting field moduli")
        p = int(val)
    return 2 if p is None else p


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    stage = args.stage if args.command == "run" else args.command
    p = args.field if args.field is not None else 2
    try:
        p = _field(args)
        rep, status = build_report(args.front, stage, p, args.bound)
    except InputError as e:
        rep, status = error_report(args.front, stage, p, e), BAD_INPUT
    jsonschema.validate(rep, report_schema())
    text = render_json(rep) if args.format == "json" else render_text(rep, status)
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
