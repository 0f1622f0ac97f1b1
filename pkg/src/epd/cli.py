"""Command-line entry point.

Subcommands wire the generators, minor checkers, decomposition tools,
pack-or-hit engines and oracles together.  Results are JSON on stdout; a run
manifest (command, input digests, seed, wall clock) goes to stderr as a
single JSON line so stdout stays byte-stable for identical inputs.

Exit codes: 0 success, 1 domain error (machine-readable error JSON on
stdout), 2 budget exhaustion.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from typing import List, Optional

from . import claims as _claims
from . import digraph as dg
from . import dtd as _dtd
from . import engine as _engine
from . import minors as _minors
from . import oracle as _oracle
from .generators import (
    acyclic_grid,
    attach_to_grid,
    attach_to_wall,
    cylindrical_grid,
    cylindrical_wall,
    left_acyclic_attachment,
    right_acyclic_attachment,
    three_component_attachment,
    two_edge_attachment,
)


def _read_graph(path: str) -> dg.Digraph:
    with open(path) as fh:
        return dg.from_json(fh.read())


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()[:16]


def _parse_edge(text: str) -> dg.Edge:
    parts = text.replace("->", ",").split(",")
    if len(parts) != 2:
        raise ValueError(f"edge must look like 'u,v', got {text!r}")
    return int(parts[0]), int(parts[1])


def _emit(payload: dict, manifest: dict, dot: Optional[str] = None) -> None:
    sys.stdout.write(json.dumps(payload, separators=(",", ":"), sort_keys=True) + "\n")
    if dot:
        sys.stdout.write(dot + "\n")
    sys.stderr.write(json.dumps({"manifest": manifest}, sort_keys=True) + "\n")


def _budget_from(args) -> _oracle.OracleBudget:
    kw = {}
    if getattr(args, "max_vertices", None):
        kw["max_vertices"] = args.max_vertices
    if getattr(args, "budget", None):
        kw["timeout"] = args.budget
    return _oracle.OracleBudget(**kw)


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(prog="epd", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a named graph family")
    p_gen.add_argument("family", choices=[
        "grid", "wall", "agrid", "attach-grid", "attach-wall",
        "attach-left", "attach-right", "attach-2e", "attach-3c",
    ])
    p_gen.add_argument("--order", "-k", type=int, required=True)
    p_gen.add_argument("--h-file", help="pattern graph JSON (attachments)")
    p_gen.add_argument("--edge", help="pattern edge u,v")
    p_gen.add_argument("--edge2", help="second pattern edge u,v")
    p_gen.add_argument("--c1", type=int, default=0, help="tail component id")
    p_gen.add_argument("--c2", type=int, default=1, help="head component id")
    p_gen.add_argument("--dot", action="store_true")

    p_chk = sub.add_parser("check-minor", help="decide pattern containment")
    p_chk.add_argument("--pattern", required=True)
    p_chk.add_argument("--graph", required=True)
    p_chk.add_argument("--kind", choices=["butterfly", "topological"], required=True)
    p_chk.add_argument("--max-vertices", type=int, default=_minors.DEFAULT_SEARCH_BOUND)
    p_chk.add_argument("--dtd", help="decomposition JSON for large hosts")

    p_dtd = sub.add_parser("dtd", help="directed tree decompositions")
    p_dtd.add_argument("action", choices=["validate", "compute", "special"])
    p_dtd.add_argument("--graph", required=True)
    p_dtd.add_argument("--dtd", help="decomposition JSON (validate)")
    p_dtd.add_argument("--width", type=int, help="width bound (compute)")
    p_dtd.add_argument("--special", action="store_true", help="validate the special form too")

    p_ep = sub.add_parser("ep", help="pack-or-hit engines")
    p_ep.add_argument("action", choices=["pack-or-hit", "classify"])
    p_ep.add_argument("--pattern", required=True)
    p_ep.add_argument("--graph")
    p_ep.add_argument("--k", type=int, default=2)
    p_ep.add_argument("--kind", choices=["butterfly", "topological"], default="topological")
    p_ep.add_argument("--dtd")
    p_ep.add_argument("--config", help="engine config JSON")
    p_ep.add_argument("--no-verify", action="store_true")

    p_or = sub.add_parser("oracle", help="brute-force ground truth")
    p_or.add_argument("action", choices=["has-minor", "max-packing", "min-hit", "linkage"])
    p_or.add_argument("--pattern")
    p_or.add_argument("--graph", required=True)
    p_or.add_argument("--kind", choices=["butterfly", "topological"], default="butterfly")
    p_or.add_argument("--sigma", help='JSON pair list, e.g. "[[0,3],[1,4]]"')
    p_or.add_argument("--budget", type=float, help="seconds")
    p_or.add_argument("--max-vertices", type=int)
    p_or.add_argument("--strategy", default="auto")

    p_ver = sub.add_parser("verify-claims", help="run a claims suite end to end")
    p_ver.add_argument("--suite", default="all", choices=sorted(_claims.SUITES) + ["all"])
    p_ver.add_argument("--max-order", type=int, default=3)
    p_ver.add_argument("--seed", type=int, default=2024)
    p_ver.add_argument("--budget", type=float)

    args = parser.parse_args(argv)
    t0 = time.time()
    manifest = {
        "command": sys.argv[1:] if argv is None else list(argv),
        "inputs": {},
        "seed": getattr(args, "seed", None),
        "budget_env": os.environ.get("EPD_BUDGET_SECONDS"),
    }
    for key in ("pattern", "graph", "h_file", "dtd", "config"):
        path = getattr(args, key, None)
        if path:
            manifest["inputs"][key] = _digest(path)

    try:
        payload, dot = _dispatch(args)
    except _oracle.BudgetExceeded as exc:
        _emit({"error": {"type": "budget", "message": str(exc)}}, manifest)
        return 2
    except (ValueError, OSError, KeyError) as exc:
        _emit({"error": {"type": "domain", "message": str(exc)}}, manifest)
        return 1
    manifest["wall_clock"] = round(time.time() - t0, 3)
    _emit(payload, manifest, dot)
    return 0 if payload.get("ok", True) else 1


def _dispatch(args):
    if args.command == "gen":
        return _cmd_gen(args)
    if args.command == "check-minor":
        return _cmd_check_minor(args)
    if args.command == "dtd":
        return _cmd_dtd(args)
    if args.command == "ep":
        return _cmd_ep(args)
    if args.command == "oracle":
        return _cmd_oracle(args)
    if args.command == "verify-claims":
        return _cmd_verify(args)
    raise ValueError(f"unknown command {args.command}")


def _cmd_gen(args):
    fam = args.family
    k = args.order
    if fam in ("grid", "wall", "agrid"):
        G, _ = {"grid": cylindrical_grid, "wall": cylindrical_wall, "agrid": acyclic_grid}[fam](k)
    else:
        if not args.h_file or not args.edge:
            raise ValueError("attachments need --h-file and --edge")
        H = _read_graph(args.h_file)
        e = _parse_edge(args.edge)
        if fam == "attach-grid":
            G = attach_to_grid(H, e, k)
        elif fam == "attach-wall":
            G = attach_to_wall(H, e, k)
        elif fam == "attach-left":
            G = left_acyclic_attachment(H, args.c1, args.c2, e, _parse_edge(args.edge2), k)
        elif fam == "attach-right":
            G = right_acyclic_attachment(H, args.c1, args.c2, e, _parse_edge(args.edge2), k)
        elif fam == "attach-2e":
            G = two_edge_attachment(H, e, _parse_edge(args.edge2), k)
        else:
            G = three_component_attachment(H, e, _parse_edge(args.edge2), k)
    payload = dg.to_json_dict(G)
    return payload, (dg.to_dot(G) if getattr(args, "dot", False) else None)


def _cmd_check_minor(args):
    H = _read_graph(args.pattern)
    G = _read_graph(args.graph)
    if args.dtd:
        with open(args.dtd) as fh:
            D = _dtd.dtd_from_json(fh.read())
        model = _dtd.find_model_bounded_dtw(H, G, D, args.kind)
    else:
        model = _minors.find_model(H, G, args.kind, max_vertices=args.max_vertices)
    payload = {"embeds": model is not None}
    if model is not None:
        payload["model"] = _minors.model_to_json_dict(model)
    return payload, None


def _cmd_dtd(args):
    G = _read_graph(args.graph)
    if args.action == "validate":
        if not args.dtd:
            raise ValueError("validate needs --dtd")
        with open(args.dtd) as fh:
            D = _dtd.dtd_from_json(fh.read())
        rep = _dtd.validate_special_dtd(G, D) if args.special else _dtd.validate_dtd(G, D)
        return {"valid": rep.ok, "violations": rep.violations, "width": rep.width}, None
    if args.action == "compute":
        if args.width is None:
            raise ValueError("compute needs --width")
        D = _dtd.compute_dtd_exact(G, args.width)
        if D is None:
            return {"found": False}, None
        return {"found": True, "dtd": _dtd.dtd_to_json_dict(D), "width": D.width()}, None
    D = _dtd.compute_special_dtd(G)
    return {"dtd": _dtd.dtd_to_json_dict(D), "width": D.width()}, None


def _cmd_ep(args):
    H = _read_graph(args.pattern)
    cfg = _engine.EPConfig()
    if args.config:
        with open(args.config) as fh:
            raw = json.load(fh)
        cfg = _engine.EPConfig(**raw)
    if args.no_verify:
        cfg.verify = False
    if args.action == "classify":
        res = _engine.classify_vertex_cyclic(H, args.kind, cfg)
        return {
            "verdict": res.verdict,
            "item": res.item,
            "reason": res.reason,
            "generator": res.generator_name,
        }, None
    if not args.graph:
        raise ValueError("pack-or-hit needs --graph")
    G = _read_graph(args.graph)
    shape = _engine.two_cycles_shape(H)
    if shape is not None:
        result = _engine.pack_or_hit_two_cycles(H, G, args.k, cfg)
    elif args.dtd:
        with open(args.dtd) as fh:
            D = _dtd.dtd_from_json(fh.read())
        result = _engine.pack_or_hit_bounded_dtw(H, G, D, args.k, args.kind, cfg)
    else:
        result = _engine.pack_or_hit_strongly_connected(H, G, args.k, cfg, args.kind)
    return _engine.pack_or_hit_to_json_dict(result), None


def _cmd_oracle(args):
    G = _read_graph(args.graph)
    budget = _budget_from(args)
    if args.action == "linkage":
        if not args.sigma:
            raise ValueError("linkage needs --sigma")
        sigma = [tuple(p) for p in json.loads(args.sigma)]
        got = _oracle.oracle_sigma_linkage(G, sigma, budget)
        return {"found": got is not None, "paths": [list(p) for p in got] if got else None}, None
    if not args.pattern:
        raise ValueError(f"{args.action} needs --pattern")
    H = _read_graph(args.pattern)
    if args.action == "has-minor":
        return {
            "embeds": _oracle.oracle_has_minor(H, G, args.kind, budget, args.strategy)
        }, None
    if args.action == "max-packing":
        n, models = _oracle.oracle_max_packing(H, G, args.kind, budget)
        return {
            "max_packing": n,
            "witness": [_minors.model_to_json_dict(m) for m in models],
        }, None
    return {"hitting_set": _oracle.oracle_min_hitting_set(H, G, args.kind, budget)}, None


def _cmd_verify(args):
    budget = args.budget or float(os.environ.get("EPD_BUDGET_SECONDS", 0)) or None
    names = sorted(_claims.SUITES) if args.suite == "all" else [args.suite]
    report = {}
    ok = True
    for name in names:
        items = _claims.SUITES[name](max_order=args.max_order, seed=args.seed, timeout=budget)
        report[name] = [
            {"claim": c.name, "ok": c.ok, "detail": c.detail} for c in items
        ]
        ok = ok and all(c.ok for c in items)
    return {"ok": ok, "suites": report}, None


if __name__ == "__main__":
    raise SystemExit(main())
