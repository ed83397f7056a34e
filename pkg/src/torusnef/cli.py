"""Command-line front end and JSON problem runner.

Problem file (JSON)::

    {"root_system": "A2", "mode": "bsdh", "word": [1, 2],
     "bundle": {"line": [1, 1]},
     "queries": [{"op": "ample"}, {"op": "seshadri", "point": "00"}]}

Wonderful mode replaces ``word`` by ``involution`` (matrix whose row j is
sigma(alpha_j), or a shortcut) and points by Weyl words (lists of simple
indices).  Exit codes: 0 ok, 2 schema, 3 guard, 4 math-consistency,
5 Seshadri constant requested for a non-nef bundle.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any

from . import bundles, wonderful
from .bsdh import BsdhVariety, build_bsdh
from .errors import SchemaError, TorusNefError
from .rootsys import build_root_system
from .weyl import WeylElement

__all__ = ["run", "export_gkm_dot", "main", "load_problem"]

BSDH_OPS = ("nef", "ample", "seshadri", "curves", "gkm-graph")
WONDERFUL_OPS = ("nef", "ample", "seshadri", "curves", "classes")


def _require(problem: dict, key: str, why: str = "is required"):
    if key not in problem:
        raise SchemaError(f"field {key!r} {why}")
    return problem[key]


def load_problem(obj: Any) -> dict:
    """Schema-check a decoded problem; returns it with defaults filled in."""
    if not isinstance(obj, dict):
        raise SchemaError("problem must be a JSON object")
    mode = _require(obj, "mode")
    if mode not in ("bsdh", "wonderful"):
        raise SchemaError(f"field 'mode' must be 'bsdh' or 'wonderful', got {mode!r}")
    if not isinstance(_require(obj, "root_system"), str):
        raise SchemaError("field 'root_system' must be a string")
    if mode == "bsdh":
        word = _require(obj, "word", "is required in bsdh mode")
        if not isinstance(word, list) or any(isinstance(a, bool) or not isinstance(a, int) for a in word):
            raise SchemaError("field 'word' must be a list of integers")
    else:
        _require(obj, "involution", "is required in wonderful mode")
    queries = obj.get("queries", [])
    if not isinstance(queries, list):
        raise SchemaError("field 'queries' must be a list")
    ops = BSDH_OPS if mode == "bsdh" else WONDERFUL_OPS
    for k, q in enumerate(queries):
        if not isinstance(q, dict) or q.get("op") not in ops:
            raise SchemaError(f"field 'queries[{k}].op' must be one of {', '.join(ops)}")
    known = {"root_system", "mode", "word", "involution", "bundle", "queries"}
    extra = sorted(set(obj) - known)
    if extra:
        raise SchemaError(f"unknown field {extra[0]!r}")
    return dict(obj, queries=queries)


def _bundle(problem: dict, op: str):
    if "bundle" not in problem:
        raise SchemaError(f"field 'bundle' is required for query {op!r}")
    return bundles.from_json(problem["bundle"])


def export_gkm_dot(Z: BsdhVariety) -> str:
    """GKM graph: vertices are gallery bit-strings, edges are model curves."""
    lines = [f'graph "gkm {Z.rs.name} {list(Z.word)}" {{']
    for x in Z.fixed_points():
        lines.append(f'  "{x}";')
    for c in Z.model_curves():
        t, d = Z.degree_table[c]
        x0, x1 = c.endpoints
        label = f"{c.moving}; {list(t)}; {list(d)}".replace(" ", "")
        label = label.replace(";", "; ")
        lines.append(f'  "{x0}" -- "{x1}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _verdict_record(v: bundles.Verdict) -> dict:
    rec = {"verdict": v.holds, "gkm": v.exact, "tag": v.tag}
    if v.witness is not None:
        rec["witness"] = {"curve": v.witness[0], "split_type": list(v.witness[1])}
    return rec


def _run_bsdh(problem: dict, rs, timing: bool) -> dict:
    Z = build_bsdh(rs, problem["word"])
    gkm = Z.gkm_check() if Z.r else None
    out: dict[str, Any] = {
        "mode": "bsdh",
        "root_system": rs.name,
        "word": list(Z.word),
        "gkm": {"ok": gkm.ok, "collisions": [list(c) for c in gkm.collisions]} if gkm else None,
        "results": [],
    }
    for q in problem["queries"]:
        op = q["op"]
        t0 = time.perf_counter()
        rec: dict[str, Any] = {"op": op}
        if op in ("nef", "ample"):
            e = _bundle(problem, op)
            v = Z.nef_test(e) if op == "nef" else Z.ample_test(e)
            rec.update(_verdict_record(v))
        elif op == "seshadri":
            e = _bundle(problem, op)
            if Z.r == 0:
                raise SchemaError("empty word: Seshadri constant undefined on a point")
            tag = bundles.EXACT_TAG if gkm.ok else bundles.MODEL_CURVE_TAG
            if q.get("point") is not None:
                x = Z.parse_point(q["point"])
                rec.update(point=str(x), value=Z.seshadri(e, x), gkm=gkm.ok, tag=tag)
            else:
                rec.update(values={str(x): Z.seshadri(e, x) for x in Z.fixed_points()},
                           gkm=gkm.ok, tag=tag)
        elif op == "curves":
            e = _bundle(problem, op) if "bundle" in problem else None
            if e is not None:
                Z.check_bundle(e)
            curves = []
            for c in Z.model_curves():
                t, d = Z.degree_table[c]
                x0, x1 = c.endpoints
                item = {"id": str(c), "moving": c.moving, "endpoints": [str(x0), str(x1)],
                        "tangent": list(t), "basis_degrees": list(d)}
                if e is not None:
                    item["split_type"] = list(Z.restrict(e, c))
                curves.append(item)
            rec.update(count=len(curves), curves=curves, nef_cone=[list(v) for v in Z.nef_cone_inequalities()])
        elif op == "gkm-graph":
            rec.update(dot=export_gkm_dot(Z), vertices=2 ** Z.r, edges=len(Z.model_curves()))
        if timing:
            rec["seconds"] = round(time.perf_counter() - t0, 6)
        out["results"].append(rec)
    return out


def _parse_weyl_point(rs, point) -> WeylElement:
    if point is None or point == "":
        return WeylElement.identity(rs)
    if isinstance(point, str):
        try:
            point = [int(a) for a in point.replace(" ", "").split(",") if a]
        except ValueError:
            raise SchemaError(f"point must be a Weyl word, got {point!r}") from None
    if not isinstance(point, list):
        raise SchemaError(f"point must be a Weyl word (list of simple indices), got {point!r}")
    return WeylElement.from_word(rs, point)


def _run_wonderful(problem: dict, rs, timing: bool) -> dict:
    sd = wonderful.parse_involution(rs, problem["involution"])
    out: dict[str, Any] = {
        "mode": "wonderful",
        "root_system": rs.name,
        "report": wonderful.minimal_rank_report(sd),
        "results": [],
    }
    if sd.degenerate:
        out["warning"] = "sigma fixes every root: not a symmetric space of positive rank"
    for q in problem["queries"]:
        op = q["op"]
        t0 = time.perf_counter()
        rec: dict[str, Any] = {"op": op}
        if op in ("curves", "classes"):
            classes = wonderful.curve_classes(sd)
            rec.update(
                count=len(classes),
                classes=[c.class_id for c in classes],
                fixed_levi_roots=[list(b) for b in sd.fixed_levi_roots],
                restricted_roots=[list(g) for g in sd.restricted_roots],
                t1_rank=sd.t1_rank,
                t2_rank=sd.t2_rank,
            )
        elif op in ("nef", "ample"):
            e = _bundle(problem, op)
            v = wonderful.nef_test_w(sd, e) if op == "nef" else wonderful.ample_test_w(sd, e)
            rec.update(_verdict_record(v))
        elif op == "seshadri":
            e = _bundle(problem, op)
            w = _parse_weyl_point(rs, q.get("point"))
            rec.update(point=list(w.canonical_word), value=wonderful.seshadri_w(sd, e, w),
                       gkm=True, tag=bundles.EXACT_TAG)
        if timing:
            rec["seconds"] = round(time.perf_counter() - t0, 6)
        out["results"].append(rec)
    return out


def run(problem: Any, timing: bool = False) -> dict:
    """Execute every query of a problem; returns the result document."""
    problem = load_problem(problem)
    rs = build_root_system(problem["root_system"])
    if problem["mode"] == "bsdh":
        return _run_bsdh(problem, rs, timing)
    return _run_wonderful(problem, rs, timing)


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- command line --------------------------------------------------------------

def _read_problem(args) -> dict:
    if args.input:
        try:
            if args.input == "-":
                problem = json.load(sys.stdin)
            else:
                with open(args.input, encoding="utf-8") as fh:
                    problem = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"input is not valid JSON: {exc}") from None
        except OSError as exc:
            raise SchemaError(f"cannot read input: {exc}") from None
    else:
        problem = {}
    if not isinstance(problem, dict):
        raise SchemaError("problem must be a JSON object")
    if getattr(args, "type", None):
        problem["root_system"] = args.type
    if getattr(args, "word", None) is not None:
        try:
            problem["word"] = [int(a) for a in args.word.split(",") if a.strip()]
        except ValueError:
            raise SchemaError(f"--word must be comma-separated integers, got {args.word!r}") from None
    if getattr(args, "involution", None) is not None:
        problem["involution"] = args.involution
    if getattr(args, "bundle", None) is not None:
        try:
            problem["bundle"] = json.loads(args.bundle)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"--bundle is not valid JSON: {exc}") from None
    return problem


def _emit(args, doc: dict) -> None:
    text = dumps(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.json or not args.output:
        sys.stdout.write(text)


def _cmd_describe(args) -> int:
    rs = build_root_system(args.type_label)
    doc = rs.describe()
    if args.json:
        sys.stdout.write(dumps(doc))
        return 0
    print(f"type {doc['type']}, rank {doc['rank']}, {doc['num_positive_roots']} positive roots")
    print("cartan matrix <alpha_j, alpha_i^vee>:")
    for row in doc["cartan"]:
        print("  " + " ".join(f"{x:3d}" for x in row))
    print("squared root lengths:", " ".join(map(str, doc["squared_lengths"])))
    print("positive roots (simple-root coordinates):")
    for b in doc["positive_roots"]:
        print("  " + str(b))
    return 0


def _cmd_mode(args, mode: str) -> int:
    problem = _read_problem(args)
    if problem.get("mode", mode) != mode:
        raise SchemaError(f"input problem has mode {problem.get('mode')!r}, expected {mode!r}")
    problem["mode"] = mode
    q: dict[str, Any] = {"op": args.op}
    if getattr(args, "point", None) is not None:
        q["point"] = args.point
    problem["queries"] = [q]
    doc = run(problem, timing=args.timing)
    if mode == "bsdh" and args.op == "gkm-graph" and args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(doc["results"][0]["dot"])
    _emit(args, doc)
    return 0


def _cmd_run(args) -> int:
    doc = run(_read_problem(args), timing=args.timing)
    if args.dot:
        dots = [r["dot"] for r in doc["results"] if r["op"] == "gkm-graph"]
        if dots:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(dots[0])
    _emit(args, doc)
    return 0


def _cmd_selftest(args) -> int:
    from .selftest import run_selftest

    report, ok = run_selftest(full=args.full)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(report)
    sys.stdout.write(report)
    return 0 if ok else 4


def _io_flags(p: argparse.ArgumentParser, dot: bool = False) -> None:
    p.add_argument("--input", help="problem file (JSON), '-' for stdin")
    p.add_argument("--output", help="write the result JSON here")
    p.add_argument("--json", action="store_true", help="also print the result JSON to stdout")
    p.add_argument("--timing", action="store_true", help="add per-query wall time (breaks byte-identity)")
    p.add_argument("--type", help="root system, overrides the input file")
    p.add_argument("--bundle", help="bundle expression as inline JSON")
    if dot:
        p.add_argument("--dot", help="write the GKM graph (DOT) here")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="torusnef",
        description="Nef/ample tests and Seshadri constants of torus-equivariant bundles "
                    "on Bott-Samelson varieties and wonderful compactifications.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("describe", help="print root-system data for a Cartan type")
    p.add_argument("type_label", metavar="TYPE", help='e.g. "A2", "B3", "A1xA1"')
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_describe)

    p = sub.add_parser("bsdh", help="queries on a Bott-Samelson variety")
    p.add_argument("op", choices=BSDH_OPS)
    p.add_argument("--word", help="reduced word, comma-separated, overrides the input file")
    p.add_argument("--point", help="fixed point as a bit-string (seshadri)")
    _io_flags(p, dot=True)
    p.set_defaults(func=lambda a: _cmd_mode(a, "bsdh"))

    p = sub.add_parser("wonderful", help="queries on a wonderful compactification")
    p.add_argument("op", choices=("classes", "nef", "ample", "seshadri"))
    p.add_argument("--involution", help="involution shortcut, overrides the input file")
    p.add_argument("--point", help="fixed point as a Weyl word, e.g. 1,2 (seshadri)")
    _io_flags(p)
    p.set_defaults(func=lambda a: _cmd_mode(a, "wonderful"))

    p = sub.add_parser("run", help="run every query of a problem file")
    _io_flags(p, dot=True)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("selftest", help="run the invariant corpus")
    p.add_argument("--full", action="store_true", help="full corpus (words up to length 6)")
    p.add_argument("--output", help="also write the report here")
    p.set_defaults(func=_cmd_selftest)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TorusNefError as exc:
        err = {"error": {"code": exc.code, "exit_code": exc.exit_code, "message": str(exc)}}
        sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
