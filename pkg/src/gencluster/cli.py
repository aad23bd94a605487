"""Command line interface.

Exit codes: 0 success, 1 verification failed, 2 usage error, 3 internal
invariant violated.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import coxeter as cx
from .cluster import (
    FaceParseError, cluster_complex, criterion_tuple, enumerate_faces, face_by_ncm_criterion,
    format_face, parse_face,
)
from .noncrossing import build_nc, build_ncm, chain_to_facet
from .roots import (
    InvalidMError, InvalidRankError, RootSystem, SpecParseError, build_root_system, catalan_number,
)
from .triangles import f_triangle, m_triangle, m_triangle_relative, verify_fm

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def reflection_word(w: cx.GroupElement) -> list[int]:
    """Positive root ids t_1..t_k with w = R(t_1)...R(t_k) and k = l_T(w)."""
    rs, word = w.rs, []
    while cx.absolute_length(w) > 0:
        for rid in range(rs.N):
            t = cx.reflection(rs, rid)
            if cx.absolute_leq(t, w):
                word.append(rid)
                w = t * w
                break
    return word


def _element_json(rs: RootSystem, w: cx.GroupElement) -> dict:
    return {"length": cx.absolute_length(w), "reflections": [r + 1 for r in reflection_word(w)]}


def _label_text(rs: RootSystem, m: int, slot: int, rid: int) -> str:
    cells = ["1"] * m
    cells[slot - 1] = rs.describe_root(rid)
    return "(" + ",".join(cells) + ")"


def _emit(payload, fmt: str, rows=None, header=None, text=None) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if header:
            writer.writerow(header)
        writer.writerows(rows or [])
        sys.stdout.write(buf.getvalue())
    else:
        print(text if text is not None else json.dumps(payload, indent=2, sort_keys=True))


def _poly_rows(p):
    return [[i, j, c] for i, j, c in p.terms()]


# --- commands ----------------------------------------------------------------

def cmd_roots(args) -> int:
    rs = build_root_system(args.system)
    simples = [{
        "sigma": j + 1,
        "bourbaki": rs.simple_labels[j],
        "class": "+" if j < rs.r else "-",
    } for j in range(rs.n)]
    positive = [{
        "rho_index": i + 1,
        "coords": list(rs.roots[i]),
        "root": rs.describe_root(i),
        "degree": rs.degree(i),
    } for i in range(rs.N)]
    order = [rs.describe_root(rid) for rid in rs.total_order]
    payload = {
        "system": rs.name, "rank": rs.n, "r": rs.r, "num_positive": rs.N,
        "coxeter_number": rs.coxeter_number, "exponents": list(rs.exponents),
        "simple_roots": simples, "positive_roots": positive, "total_order": order,
    }
    text = "\n".join(
        [f"{rs.name}: n={rs.n} N={rs.N} h={rs.coxeter_number} exponents={list(rs.exponents)}",
         "Pi_+: " + " ".join(f"s{s['sigma']}={s['bourbaki']}" for s in simples if s["class"] == "+"),
         "Pi_-: " + " ".join(f"s{s['sigma']}={s['bourbaki']}" for s in simples if s["class"] == "-")]
        + [f"rho_{p['rho_index']:<3} {p['root']:<24} d={p['degree']}" for p in positive]
        + ["order: " + " < ".join(order)]
    )
    rows = [[p["rho_index"], p["root"], " ".join(map(str, p["coords"])), p["degree"]] for p in positive]
    _emit(payload, args.format, rows, ["rho_index", "root", "coords", "degree"], text)
    return EXIT_OK


def cmd_verify_fm(args) -> int:
    rs = build_root_system(args.system)
    rep = verify_fm(rs, args.m)
    text = "\n".join([
        f"{rs.name}, m={args.m}",
        f"F(x,y)           = {rep.F}",
        f"M(x,y)           = {rep.M}",
        f"(1-y)^n F(...)   = {rep.lhs}",
        f"M(-x,-y/x)       = {rep.rhs}",
        "identity holds" if rep.holds else "identity FAILS",
    ])
    rows = [["lhs", i, j, c] for i, j, c in rep.lhs.terms()] + [["rhs", i, j, c] for i, j, c in rep.rhs.terms()]
    _emit(rep.to_json(), args.format, rows, ["side", "xdeg", "ydeg", "coeff"], text)
    return EXIT_OK if rep.holds else EXIT_FAIL


def cmd_check_face(args) -> int:
    rs = build_root_system(args.system)
    face = parse_face(rs, args.face or "", args.m)
    criterion = face_by_ncm_criterion(rs, face, args.m)
    pairwise = cluster_complex(rs, args.m).is_face(face)
    if criterion != pairwise:
        raise AssertionError(f"criterion ({criterion}) and pairwise test ({pairwise}) disagree")
    tup = criterion_tuple(rs, face, args.m)
    payload = {
        "system": rs.name, "m": args.m, "face": format_face(rs, face),
        "size": len(face), "is_face": criterion, "criterion": criterion, "pairwise": pairwise,
        "tuple": [_element_json(rs, w) for w in tup],
        "tuple_rank": sum(cx.absolute_length(w) for w in tup),
    }
    text = "\n".join([
        f"face {{{payload['face']}}} in {rs.name}, m={args.m}",
        "tuple: (" + ", ".join(
            "*".join(f"R(rho_{r})" for r in e["reflections"]) or "1" for e in payload["tuple"]) + ")",
        f"tuple rank {payload['tuple_rank']}, |face| = {len(face)}",
        f"noncrossing criterion: {criterion}; pairwise compatibility: {pairwise}",
    ])
    rows = [[payload["face"], criterion, pairwise, payload["tuple_rank"]]]
    _emit(payload, args.format, rows, ["face", "criterion", "pairwise", "tuple_rank"], text)
    return EXIT_OK


def cmd_falling_chains(args) -> int:
    rs = build_root_system(args.system)
    poset = build_ncm(rs, args.m)
    chains = []
    for ch in poset.all_falling_chains():
        labels = poset.chain_labels(ch)
        face = chain_to_facet(poset, ch)
        if not face_by_ncm_criterion(rs, face, args.m):
            raise AssertionError("falling chain mapped to a non-face")
        chains.append({
            "top": ch[-1],
            "labels": [{"slot": l.slot, "rootIndex": l.root + 1} for l in labels],
            "label_text": " -> ".join(_label_text(rs, args.m, l.slot, l.root) for l in labels),
            "face": format_face(rs, face),
        })
    payload = {"system": rs.name, "m": args.m, "count": len(chains), "chains": chains}
    if args.count:
        _emit({"count": len(chains)}, args.format, [[len(chains)]], ["count"], str(len(chains)))
        return EXIT_OK
    text = "\n".join(f"{c['label_text']}  |  {c['face']}" for c in chains) + f"\n{len(chains)} chains"
    rows = [[c["top"], c["label_text"], c["face"]] for c in chains]
    _emit(payload, args.format, rows, ["top", "labels", "face"], text)
    return EXIT_OK


def cmd_f_triangle(args) -> int:
    rs = build_root_system(args.system)
    summary = enumerate_faces(rs, args.m)
    F = f_triangle(summary)
    payload = {"system": rs.name, "m": args.m, "F": F.to_json(),
               "facets": summary.num_facets, "positive_facets": summary.num_positive_facets,
               "catalan": catalan_number(rs, args.m)}
    _emit(payload, args.format, _poly_rows(F), ["xdeg", "ydeg", "coeff"], str(F))
    return EXIT_OK


def cmd_m_triangle(args) -> int:
    rs = build_root_system(args.system)
    poset = build_ncm(rs, args.m)
    M, Mrel = m_triangle(poset), m_triangle_relative(poset)
    payload = {"system": rs.name, "m": args.m, "M": M.to_json(), "M_relative": Mrel.to_json()}
    _emit(payload, args.format, _poly_rows(M), ["xdeg", "ydeg", "coeff"], str(M))
    return EXIT_OK


def _poset_output(args, poset, rs) -> int:
    if args.count:
        _emit({"count": len(poset)}, args.format, [[len(poset)]], ["count"], str(len(poset)))
        return EXIT_OK
    payload = poset.to_json()
    payload["rank_counts"] = poset.rank_counts()
    rows = [[i, poset.rank[i], " ".join(map(str, payload["elements"][i]))] for i in range(len(poset))]
    text = f"{len(poset)} elements, rank counts {poset.rank_counts()}, {len(poset.covers())} covers"
    _emit(payload, args.format, rows, ["id", "rank", "element"], text)
    return EXIT_OK


def cmd_nc(args) -> int:
    rs = build_root_system(args.system)
    return _poset_output(args, build_nc(rs), rs)


def cmd_ncm(args) -> int:
    rs = build_root_system(args.system)
    return _poset_output(args, build_ncm(rs, args.m), rs)


COMMANDS = {
    "roots": cmd_roots,
    "verify-fm": cmd_verify_fm,
    "check-face": cmd_check_face,
    "falling-chains": cmd_falling_chains,
    "f-triangle": cmd_f_triangle,
    "m-triangle": cmd_m_triangle,
    "nc": cmd_nc,
    "ncm": cmd_ncm,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gencluster",
        description="Generalized cluster complexes and m-divisible noncrossing partitions.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--system", required=True, help='root system, e.g. "A2" or "A1xB3"')
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        if name != "roots":
            p.add_argument("--m", type=int, default=1)
        if name == "check-face":
            p.add_argument("--face", default="", help='e.g. "+3@2,+2@1,-1"')
        if name in ("nc", "ncm", "falling-chains"):
            p.add_argument("--count", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "m", 1) < 1:
            raise InvalidMError(f"m must be a positive integer, got {args.m}")
        return COMMANDS[args.command](args)
    except (SpecParseError, InvalidRankError, InvalidMError, FaceParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AssertionError, RuntimeError, ArithmeticError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
