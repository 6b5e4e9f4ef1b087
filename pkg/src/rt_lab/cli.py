"""Command-line front end.

Exit codes: 0 success, 1 a checked claim failed on this instance, 2 usage
error, 3 search budget exhausted.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from rt_lab.constructions import andrasfai, canonical_blowup, g_formula, perturb_canonical
from rt_lab.extremal import DEFAULT_NODE_BUDGET, DEFAULT_WITNESS_CAP, ex_exact, sweep_row
from rt_lab.fortress import (
    DEFAULT_NODE_BUDGET as SEARCH_BUDGET,
    BudgetExhausted,
    build_fortress,
    check_mould,
    find_imprint,
    find_mould,
    fortress_checks,
    mould_stats,
)
from rt_lab.graph import Graph, Params, members
from rt_lab.graph6 import decode
from rt_lab.independence import alpha
from rt_lab.report import emit_csv, emit_graph6, emit_json, output_dir
from rt_lab.symmetrize import CanonisationError, imprint_to_mould

EXIT_OK, EXIT_CLAIM, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

SWEEP_COLUMNS = ["n", "s", "ex", "status", "formula", "formula_value", "match", "g_cap", "cap_ok",
                 "witness_count", "nodes", "millis"]


class UsageError(Exception):
    pass


def _add_graph_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph6", help="graph6 string")
    src.add_argument("--graph-file", help="file whose first line is a graph6 string")
    src.add_argument("--andrasfai", type=int, metavar="K")
    src.add_argument("--canonical", type=int, nargs=3, metavar=("N", "K", "S"))
    src.add_argument("--perturb", type=int, nargs=3, metavar=("N", "S", "J"))


def _load_graph(args) -> tuple[Graph, dict]:
    if args.graph6:
        return decode(args.graph6), {"graph6": args.graph6}
    if args.graph_file:
        line = Path(args.graph_file).read_text().splitlines()[0]
        return decode(line), {"graph6": line.strip()}
    if args.andrasfai is not None:
        return andrasfai(args.andrasfai), {"andrasfai": args.andrasfai}
    if args.canonical:
        n, k, s = args.canonical
        return canonical_blowup(n, k, s).graph, {"canonical": [n, k, s]}
    n, s, j = args.perturb
    return perturb_canonical(n, s, j).graph, {"perturb": [n, s, j]}


def _pattern(args) -> Graph:
    if args.pattern_graph6:
        return decode(args.pattern_graph6)
    return andrasfai(args.pattern_k)


def _add_pattern(p: argparse.ArgumentParser) -> None:
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--pattern-k", type=int, default=3, help="use Gamma_K as the pattern (default 3)")
    grp.add_argument("--pattern-graph6", help="pattern graph as graph6")


def _default_s(args, g: Graph) -> int:
    return args.s if args.s is not None else alpha(g).alpha


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rt-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--out", help="output directory (default: $RT_LAB_OUT or ./rt_lab_out)")
    parser.add_argument("--threads", type=int, default=1, help="worker processes for exhaustive searches")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a graph and print it as graph6")
    _add_graph_source(p)

    p = sub.add_parser("alpha", help="independence number with a witness")
    _add_graph_source(p)

    p = sub.add_parser("ex", help="exact ex(n, s) with extremal graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--witness-cap", type=int, default=DEFAULT_WITNESS_CAP)
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)

    p = sub.add_parser("sweep", help="ex(n, s) for all s at fixed n against the closed forms")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)

    p = sub.add_parser("verify-paper", help="sweep every n up to --max-n")
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--pair", action="append", default=[], metavar="N,S",
                   help="extra (n, s) pair to include (repeatable)")
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)

    p = sub.add_parser("fortress", help="maximum independent sets and their disjointness graph")
    _add_graph_source(p)
    p.add_argument("--s", type=int, help="defaults to alpha(G)")

    p = sub.add_parser("imprint", help="induced embedding of a pattern into the fortress")
    _add_graph_source(p)
    p.add_argument("--s", type=int)
    _add_pattern(p)
    p.add_argument("--node-budget", type=int, default=SEARCH_BUDGET)

    p = sub.add_parser("mould", help="find and check an H-mould")
    _add_graph_source(p)
    p.add_argument("--s", type=int)
    _add_pattern(p)
    p.add_argument("--node-budget", type=int, default=SEARCH_BUDGET)

    p = sub.add_parser("canonise", help="imprint-to-mould symmetrisation on a perturbed canonical blow-up")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--move", type=int, default=0, help="vertices moved from V5 to V4")
    return parser


def _config(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("out", "threads")}
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in sorted(cfg.items())}


def _graph_json(g: Graph) -> dict:
    return {"n": g.n, "edges": g.edge_count(), "graph6": g.to_graph6()}


def cmd_construct(args, out: Path, cfg: dict) -> int:
    g, source = _load_graph(args)
    a = alpha(g)
    emit_json(out / "construct.json", "construct", cfg, {
        **_graph_json(g), "source": source, "triangle_free": g.is_triangle_free(), "alpha": a.alpha,
    })
    print(g.to_graph6())
    return EXIT_OK


def cmd_alpha(args, out: Path, cfg: dict) -> int:
    g, _ = _load_graph(args)
    a = alpha(g)
    emit_json(out / "alpha.json", "alpha", cfg, {
        **_graph_json(g), "alpha": a.alpha, "witness": members(a.witness), "nodes": a.nodes_explored,
    })
    print(f"alpha={a.alpha} witness={members(a.witness)}")
    return EXIT_OK


def cmd_ex(args, out: Path, cfg: dict) -> int:
    res = ex_exact(args.n, args.s, witness_cap=args.witness_cap, node_budget=args.node_budget,
                   threads=args.threads)
    stem = f"ex_{args.n}_{args.s}"
    emit_json(out / f"{stem}.json", "ex", cfg, {
        "n": res.n, "s": res.s, "ex": res.value, "status": res.status, "nodes": res.nodes,
        "lower_bound": res.lower_bound, "witness_count": res.witness_count,
        "witnesses": [g.to_graph6() for g in res.witnesses],
    })
    emit_graph6(out / f"{stem}.g6", res.witnesses)
    print(f"ex({args.n},{args.s}) = {res.value} [{res.status}] witnesses={res.witness_count} "
          f"nodes={res.nodes} time={res.seconds:.2f}s")
    return EXIT_BUDGET if res.status == "budget" else EXIT_OK


def _run_rows(pairs, args, out: Path, cfg: dict, stem: str, command: str) -> int:
    started = time.perf_counter()
    rows = []
    witnesses = []
    for n, s in pairs:
        row = sweep_row(n, s, node_budget=args.node_budget, threads=args.threads)
        rows.append(row)
        witnesses.extend(row.witnesses)
        flag = "ok" if row.ok else "FAIL"
        print(f"n={n:2d} s={s:2d} ex={row.ex!s:>4} {row.status:10s} formula={row.formula or '-':6s} "
              f"value={row.formula_value!s:>4} match={row.match!s:5s} cap_ok={row.cap_ok!s:5s} {flag}")
    table = [{c: getattr(r, c) for c in SWEEP_COLUMNS} for r in rows]
    json_rows = [{k: v for k, v in r.items() if k != "millis"} for r in table]
    all_ok = all(r.ok for r in rows)
    emit_json(out / f"{stem}.json", command, cfg, {"rows": json_rows, "all_ok": all_ok})
    emit_csv(out / f"{stem}.csv", cfg, SWEEP_COLUMNS, table, round((time.perf_counter() - started) * 1000))
    emit_graph6(out / f"{stem}_witnesses.g6", witnesses)
    if any(r.status == "budget" for r in rows):
        return EXIT_BUDGET
    return EXIT_OK if all_ok else EXIT_CLAIM


def cmd_sweep(args, out: Path, cfg: dict) -> int:
    return _run_rows([(args.n, s) for s in range(args.n + 1)], args, out, cfg, f"sweep_{args.n}", "sweep")


def cmd_verify(args, out: Path, cfg: dict) -> int:
    pairs = [(n, s) for n in range(args.max_n + 1) for s in range(n + 1)]
    for item in args.pair:
        try:
            n, s = (int(x) for x in item.split(","))
        except ValueError:
            raise UsageError(f"--pair expects N,S, got {item!r}")
        if (n, s) not in pairs:
            pairs.append((n, s))
    return _run_rows(pairs, args, out, cfg, f"verify_paper_{args.max_n}", "verify-paper")


def cmd_fortress(args, out: Path, cfg: dict) -> int:
    g, _ = _load_graph(args)
    s = _default_s(args, g)
    f = build_fortress(g, s)
    chk = fortress_checks(f)
    emit_json(out / "fortress.json", "fortress", cfg, {
        **_graph_json(g), "s": s, "size": len(f), "fortress": f.to_json(),
        "triangle_free": chk.triangle_free, "bipartition": chk.bipartition,
    })
    print(f"fortress: {len(f)} members, {f.edge_count()} edges, triangle_free={chk.triangle_free}, "
          f"bipartite={chk.bipartition is not None}")
    for m in f.members:
        print(" ", members(m))
    return EXIT_OK


def cmd_imprint(args, out: Path, cfg: dict) -> int:
    g, _ = _load_graph(args)
    s = _default_s(args, g)
    f = build_fortress(g, s)
    imp = find_imprint(f, _pattern(args), args.node_budget)
    emit_json(out / "imprint.json", "imprint", cfg, {
        **_graph_json(g), "s": s, "fortress_size": len(f), "found": imp is not None,
        "imprint": imp.to_json() if imp else None,
    })
    print(f"imprint {'found: ' + str(list(imp.index)) if imp else 'absent'}")
    return EXIT_OK


def cmd_mould(args, out: Path, cfg: dict) -> int:
    g, _ = _load_graph(args)
    s = _default_s(args, g)
    params = Params(g.n, s)
    pattern = _pattern(args)
    f = build_fortress(g, s)
    mould = find_mould(g, params, pattern, f, args.node_budget)
    result = {**_graph_json(g), "s": s, "found": mould is not None}
    code = EXIT_OK
    if mould is not None:
        rep = check_mould(g, params, mould, f)
        result["mould"] = mould.to_json()
        result["checks"] = rep.to_json()
        if not rep.ok:
            code = EXIT_CLAIM
        if pattern.n == 8 and 11 * s > 4 * g.n and 8 * s < 3 * g.n:
            try:
                st = mould_stats(g, params, mould)
            except ValueError:
                st = None
            if st is not None:
                result["stats"] = {"eW": st.eW, "eW_Wbar": st.eW_Wbar, "eWbar": st.eWbar,
                                   "heavy_count": st.heavy_count, "bound_ok": st.bound_ok}
    emit_json(out / "mould.json", "mould", cfg, result)
    print(f"mould {'found' if mould else 'absent'}"
          + (f"; checks {result['checks']['items']}" if mould else ""))
    return code


def cmd_canonise(args, out: Path, cfg: dict) -> int:
    n, s = args.n, args.s
    g = perturb_canonical(n, s, args.move).graph
    params = Params(n, s)
    f = build_fortress(g, s)
    imp = find_imprint(f, andrasfai(3))
    stem = f"canonise_{n}_{s}_{args.move}"
    if imp is None:
        emit_json(out / f"{stem}.json", "canonise", cfg, {"imprint": None, "ok": False})
        print("no Gamma_3 imprint in the fortress")
        return EXIT_CLAIM
    try:
        res = imprint_to_mould(g, params, imp)
    except CanonisationError as exc:
        emit_json(out / f"{stem}.json", "canonise", cfg,
                  {"ok": False, "error": str(exc), "failed_step": exc.step, "trace": exc.trace})
        print(f"canonisation failed: {exc}")
        return EXIT_CLAIM
    final = res.graph
    a = alpha(final).alpha
    summary = {
        "triangle_free": final.is_triangle_free(),
        "alpha": a,
        "edges": final.edge_count(),
        "g4": g_formula(4, n, s),
        "mould_checks": res.report.to_json(),
    }
    ok = (summary["triangle_free"] and a == s and summary["edges"] == summary["g4"] and res.report.ok
          and all(all(step["proxies"].values()) for step in res.trace))
    emit_json(out / f"{stem}.json", "canonise", cfg, {
        "ok": ok, "input": _graph_json(g), "imprint": imp.to_json(), "trace": res.trace,
        "final": {**_graph_json(final), **summary}, "mould": res.mould.to_json(),
    })
    emit_graph6(out / f"{stem}.g6", [final])
    for step in res.trace:
        print(f"step {step['step']}: A{step['a_index']} -> B inside A{step['b_inside']} "
              f"|M|={step['matching_size']} proxies={step['proxies']}")
    print(f"final: e={summary['edges']} alpha={a} triangle_free={summary['triangle_free']} "
          f"mould_ok={res.report.ok}")
    return EXIT_OK if ok else EXIT_CLAIM


COMMANDS = {
    "construct": cmd_construct,
    "alpha": cmd_alpha,
    "ex": cmd_ex,
    "sweep": cmd_sweep,
    "verify-paper": cmd_verify,
    "fortress": cmd_fortress,
    "imprint": cmd_imprint,
    "mould": cmd_mould,
    "canonise": cmd_canonise,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be positive")
    for name in ("node_budget", "witness_cap"):
        if getattr(args, name, 1) <= 0:
            parser.error(f"--{name.replace('_', '-')} must be positive")
    out = output_dir(args.out)
    try:
        return COMMANDS[args.command](args, out, _config(args))
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
