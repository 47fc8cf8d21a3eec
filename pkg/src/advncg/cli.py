"""Command-line harness: ``advncg <subcommand> ...``.

Every subcommand writes CSV (default) or JSON lines to stdout.  Rationals are
printed as ``p/q`` next to a 12-significant-digit decimal column.  A graph
argument is either a file in the ``advncg-graph v1`` format or a family name
such as ``dg4``, ``dg4-2``, ``ds5``, ``c6``, ``path3`` or ``double-path4``.

Exit codes: 0 success, 2 usage error, 3 parse error, 4 search budget
exceeded, 5 precondition violation.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from .cost import GameConfig, Model, agent_costs, distance_terms, social_cost
from .dynamics import POLICIES, SCHEDULES, DynamicsRun, run_dynamics, trace_rows
from .errors import BudgetExceededError, InfeasibleError, ParseError, PreconditionError
from .experiments import opt_sweep, parse_alpha_grid, poa_grid
from .extcost import format_decimal, format_exact, is_inf, parse_alpha
from .families import build_family, parse_family
from .graph import DEFAULT_CAP, OwnedMultiGraph, canonical_key, key_digest, read_graph
from .hardness import (SimpleGraph, best_response_cds_correspondence, min_mk_cds_bruteforce,
                       verify_reduction_identity)
from .moves import best_response_exact, classify_change, is_nash_equilibrium
from .structure import structure_report

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_BUDGET, EXIT_PRECONDITION = 0, 2, 3, 4, 5


def load_graph(arg: str, cap: int | None = None) -> OwnedMultiGraph:
    if os.path.exists(arg):
        return read_graph(arg, cap)
    try:
        spec = parse_family(arg)
    except PreconditionError:
        raise ParseError(f"{arg!r} is neither a readable file nor a family name") from None
    return build_family(spec)


def _exact(row: dict, name: str, value) -> None:
    row[name] = format_exact(value)
    row[name + "_decimal"] = format_decimal(value)


def emit(rows: list, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        for r in rows:
            out.write(json.dumps(r, default=str) + "\n")
        return
    if not rows:
        return
    fields = []
    for r in rows:
        fields += [k for k in r if k not in fields]
    w = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)


def _config(args) -> GameConfig:
    return GameConfig(parse_alpha(args.alpha), Model.parse(args.model), args.cap)


# -- subcommands ------------------------------------------------------------------

def cmd_eval(args) -> list:
    g = load_graph(args.graph)
    cfg = _config(args)
    costs = agent_costs(g, cfg)
    terms = distance_terms(cfg.model, g.n, g.mults())
    agents = range(g.n) if args.agent is None else [args.agent]
    rows = []
    for u in agents:
        if not 0 <= u < g.n:
            raise PreconditionError(f"agent {u} not in 0..{g.n - 1}")
        row = {"agent": u, "owned_edges": len(g.strategy(u))}
        _exact(row, "distance", terms[u])
        _exact(row, "cost", costs[u])
        rows.append(row)
    row = {"agent": "social", "owned_edges": g.m}
    _exact(row, "distance", sum(terms))
    _exact(row, "cost", social_cost(g, cfg))
    rows.append(row)
    return rows


def cmd_br(args) -> list:
    g = load_graph(args.graph)
    cfg = _config(args)
    agents = range(g.n) if args.agent is None else [args.agent]
    rows = []
    for u in agents:
        br = best_response_exact(g, cfg, u)
        row = {"agent": u, "current_strategy": " ".join(map(str, br.current_strategy)),
               "best_strategy": " ".join(map(str, br.strategy)), "improving": br.improving,
               "move_kind": br.move.kind, "move_detail": br.move.detail(), "optimal_strategies": br.ties}
        _exact(row, "current_cost", br.current_cost)
        _exact(row, "best_cost", br.cost)
        rows.append(row)
    return rows


def cmd_ne_check(args) -> list:
    g = load_graph(args.graph)
    cfg = _config(args)
    check = is_nash_equilibrium(g, cfg)
    row = {"is_ne": check.is_ne, "agent": "", "strategy": "", "move_kind": "", "move_detail": ""}
    if check.witness is not None:
        w = check.witness
        move = classify_change(g.strategy(w.agent), w.strategy)
        row.update(agent=w.agent, strategy=" ".join(map(str, w.strategy)),
                   move_kind=move.kind, move_detail=move.detail())
        _exact(row, "current_cost", w.current_cost)
        _exact(row, "new_cost", w.new_cost)
        _exact(row, "delta", w.delta)
    return [row]


def cmd_dynamics(args) -> list:
    g = load_graph(args.start)
    cfg = _config(args)
    run = DynamicsRun(g, args.schedule, args.policy, args.max_steps, args.seed)
    outcome = run_dynamics(run, cfg)
    rows = trace_rows(outcome.trace)
    summary = {"step": "end", "agent": "", "move_kind": outcome.kind, "move_detail": "",
               "cost_before": "", "cost_after": "", "key_hash": key_digest(canonical_key(outcome.graph))}
    if outcome.kind == "cycle":
        summary["move_detail"] = f"cycle-length={outcome.cycle_length}"
    else:
        summary["move_detail"] = f"steps={outcome.steps}"
    return rows + [summary]


def cmd_opt_sweep(args) -> list:
    grid = parse_alpha_grid(args.alpha_grid, args.n)
    return [r.as_row() for r in opt_sweep(args.n, grid, args.cap, workers=args.workers)]


def cmd_poa(args) -> list:
    grid = parse_alpha_grid(args.alpha_grid, args.n)
    cells = poa_grid(args.n, grid, args.cap, sampled=args.sampled, samples=args.samples,
                     seed=args.seed, model=Model.parse(args.model), workers=args.workers)
    return [c.as_row() for c in cells]


def cmd_structure(args) -> list:
    rep = structure_report(load_graph(args.graph))
    row = rep.as_row()
    for key in ("diameter", "worst_post_deletion_diameter"):
        row[key] = "inf" if is_inf(row[key]) else str(row[key])
    return [row]


def cmd_domset(args) -> list:
    g = SimpleGraph.from_owned(load_graph(args.graph))
    s, size = min_mk_cds_bruteforce(g, args.m, args.k)
    row = {"n": g.n, "edges": len(g.edges), "m": args.m, "k": args.k, "size": size,
           "set": " ".join(map(str, sorted(s)))}
    if args.verify_reduction:
        chk = verify_reduction_identity(g)
        row.update(gamma=chk.gamma, reduced_cds_size=chk.cds_size, reduction_holds=chk.holds)
    if args.best_response:
        rep = best_response_cds_correspondence(g)
        for name, r in rep.readings.items():
            row[f"br_{name}"] = "pass" if r.passed else ("n/a" if r.window is None else "fail")
            row[f"br_{name}_strategy"] = " ".join(map(str, r.strategy))
    return [row]


# -- parser -------------------------------------------------------------------------

def _game_flags(p):
    p.add_argument("--alpha", required=True, help="edge price as p/q or decimal")
    p.add_argument("--model", default="adv-ncg", help="adv-ncg, ncg or kliemann")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="multiplicity cap per node pair")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="advncg", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="per-agent and social cost")
    p.add_argument("graph")
    p.add_argument("--agent", type=int)
    _game_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("br", parents=[common], help="exact best response")
    p.add_argument("graph")
    p.add_argument("--agent", type=int)
    _game_flags(p)
    p.set_defaults(func=cmd_br)

    p = sub.add_parser("ne-check", parents=[common], help="Nash equilibrium test with a witness")
    p.add_argument("graph")
    _game_flags(p)
    p.set_defaults(func=cmd_ne_check)

    p = sub.add_parser("dynamics", parents=[common], help="run improving-move dynamics and print the trace")
    p.add_argument("--start", required=True)
    p.add_argument("--schedule", choices=SCHEDULES, default="round-robin")
    p.add_argument("--policy", choices=POLICIES, default="best-response")
    p.add_argument("--max-steps", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    _game_flags(p)
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("opt-sweep", parents=[common], help="brute-force optimum per edge price")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha-grid", required=True,
                   help="comma list, 'lemma2-windows' or 'log:LO:HI:POINTS'")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_opt_sweep)

    p = sub.add_parser("poa", parents=[common], help="price of anarchy and stability per edge price")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha-grid", required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--model", default="adv-ncg")
    p.add_argument("--sampled", action="store_true",
                   help="check named families and random states instead of all states")
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_poa)

    p = sub.add_parser("structure", parents=[common], help="bridges, 2-cut-edges and diameters")
    p.add_argument("graph")
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("domset", parents=[common], help="minimum m-connected k-dominating set")
    p.add_argument("graph", help="graph file or family name; owners and multiplicities ignored")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--verify-reduction", action="store_true")
    p.add_argument("--best-response", action="store_true",
                   help="also compare a fresh agent's best response with the set")
    p.set_defaults(func=cmd_domset)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows = args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc} (raise ADVNCG_BUDGET to allow more)", file=sys.stderr)
        return EXIT_BUDGET
    except (PreconditionError, InfeasibleError, ValueError) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    emit(rows, args.format)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
