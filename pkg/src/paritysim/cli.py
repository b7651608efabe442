"""Command-line front end: ``paritysim solve|validate|generate|compare|bench``.

Exit codes: 0 success, 1 bad input (or a disagreement in ``compare``),
2 resource limits.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .decomp import (DecompositionError, TreeDecomposition, build_tree_decomposition_heuristic,
                     orient, parse_decomposition, validate_dag_decomposition,
                     validate_tree_decomposition, write_decomposition)
from .game import InvalidGameError, ParityGame, validate_game
from .generate import random_partial_ktree
from .oracles import InstanceTooLarge, solve_bruteforce, solve_zielonka
from .pgsolver import PGSolverSyntaxError, parse_pgsolver, write_pgsolver
from .simgame import BudgetExceeded, SearchStats
from .solvers import solve_dagwidth, solve_nc, solve_treewidth

SOLVERS = ("zielonka", "bruteforce", "dagwidth", "treewidth", "nc")


class InputError(Exception):
    pass


@dataclass
class SolverRun:
    winner: str
    states: int = 0
    rounds: int = 0
    rejects: int = 0
    max_history: int = 0
    ms: float = 0.0


@dataclass
class RunReport:
    instance: str
    vertex: int
    runs: dict[str, SolverRun] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)

    @property
    def agree(self) -> bool:
        return len({r.winner for r in self.runs.values()}) <= 1

    def to_json(self) -> str:
        d = {"instance": self.instance, "vertex": self.vertex,
             "solvers": {k: asdict(v) for k, v in self.runs.items()},
             "errors": self.errors, "agree": self.agree}
        return json.dumps(d, sort_keys=True)


# -- loading ------------------------------------------------------------------

def load_game(path) -> ParityGame:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(str(exc)) from exc
    try:
        g = parse_pgsolver(text)
    except PGSolverSyntaxError as exc:
        raise InputError(f"{path}: {exc}") from exc
    problems = validate_game(g)
    if problems:
        raise InputError(f"{path}: " + "; ".join(map(str, problems)))
    return g


def load_decomposition(source, g: ParityGame):
    """A decomposition file, or ``heuristic`` for a min-degree decomposition."""
    if source is None:
        return None
    if source == "heuristic":
        return build_tree_decomposition_heuristic(g)
    try:
        return parse_decomposition(Path(source).read_text(encoding="utf-8"))
    except (OSError, DecompositionError) as exc:
        raise InputError(f"{source}: {exc}") from exc


def _tree_of(d):
    td = d.tree() if hasattr(d, "tree") else d
    if not isinstance(td, TreeDecomposition):
        raise InputError("a tree decomposition is required")
    return td


def _dag_of(d):
    return d.dag() if hasattr(d, "dag") else orient(d, min(d.bags))


# -- solving ------------------------------------------------------------------

def run_solver(name: str, g: ParityGame, s: int, decomp=None, k=None, rounds=None,
               budget: int = 10**7, mode: str = "universal") -> SolverRun:
    stats = SearchStats()
    t0 = time.perf_counter()
    if name == "zielonka":
        w = solve_zielonka(g).winner(s)
    elif name == "bruteforce":
        w = solve_bruteforce(g, s)
    elif name in ("dagwidth", "treewidth"):
        if decomp is None:
            raise InputError(f"solver {name} needs --decomp (a file, or 'heuristic')")
        try:
            if name == "dagwidth":
                w = solve_dagwidth(g, _dag_of(decomp), s, budget, stats)
            else:
                w = solve_treewidth(g, _tree_of(decomp), s, budget, stats)
        except DecompositionError as exc:
            raise InputError(str(exc)) from exc
    elif name == "nc":
        if k is None:
            raise InputError("solver nc needs --k")
        td = _tree_of(decomp) if mode == "slice_reduce" and decomp is not None else None
        try:
            w = solve_nc(g, k, s, rounds, mode=mode, td=td, budget=budget, stats=stats)
        except DecompositionError as exc:
            raise InputError(str(exc)) from exc
    else:
        raise InputError(f"unknown solver {name!r}")
    ms = (time.perf_counter() - t0) * 1000
    return SolverRun(str(w), stats.states, stats.max_round, stats.max_rejects,
                     stats.max_history, round(ms, 3))


def _format(report: RunReport) -> str:
    parts = []
    for name, r in report.runs.items():
        parts.append(f"{report.instance} vertex {report.vertex}: {r.winner}  [solver={name} "
                     f"states={r.states} rounds={r.rounds} rejects={r.rejects} "
                     f"history={r.max_history} ms={r.ms}]")
    for name, e in report.errors.items():
        parts.append(f"{report.instance} vertex {report.vertex}: ERROR [solver={name}] {e}")
    return "\n".join(parts)


def cmd_solve(args) -> int:
    g = load_game(args.game)
    decomp = load_decomposition(args.decomp, g)
    starts = [args.start] if args.start is not None else list(g.vertices)
    for s in starts:
        if not 0 <= s < g.n:
            raise InputError(f"start vertex {s} out of range")
        run = run_solver(args.solver, g, s, decomp, args.k, args.rounds, args.budget, args.mode)
        report = RunReport(Path(args.game).name, s, {args.solver: run})
        if args.json:
            print(report.to_json())
        elif args.start is not None and not args.verbose:
            print(run.winner)
        else:
            print(_format(report))
    return 0


def cmd_validate(args) -> int:
    try:
        g = parse_pgsolver(Path(args.game).read_text(encoding="utf-8"))
    except PGSolverSyntaxError as exc:
        print(f"syntax: {exc}")
        return 1
    problems = [str(p) for p in validate_game(g)]
    if args.decomp:
        d = load_decomposition(args.decomp, g)
        if getattr(d, "root", None) is not None:
            problems += [str(p) for p in validate_dag_decomposition(g, d.dag())]
        else:
            problems += [str(p) for p in validate_tree_decomposition(g, _tree_of(d))]
    if not problems:
        print("OK")
        return 0
    for p in problems:
        print(p)
    return 1


def cmd_generate(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        seed = args.seed + i
        g, td = random_partial_ktree(args.n, args.k, args.d, seed,
                                     self_loop_repair=args.self_loops)
        stem = f"game_n{args.n}_k{args.k}_d{args.d}_s{seed}"
        (out / f"{stem}.pg").write_text(write_pgsolver(g), encoding="utf-8", newline="\n")
        (out / f"{stem}.td").write_text(write_decomposition(td), encoding="utf-8", newline="\n")
        print(out / f"{stem}.pg")
    return 0


def _compare_one(task):
    path, solvers, k, rounds, budget, mode = task
    name = Path(path).name
    try:
        g = load_game(path)
        td_path = Path(path).with_suffix(".td")
        decomp = load_decomposition(str(td_path) if td_path.exists() else "heuristic", g)
    except InputError as exc:
        return name, None, str(exc)
    reports = []
    for s in g.vertices:
        report = RunReport(name, s)
        for solver in solvers:
            try:
                report.runs[solver] = run_solver(solver, g, s, decomp,
                                                 g.n if k is None and solver == "nc" else k,
                                                 rounds, budget, mode)
            except (InputError, BudgetExceeded, InstanceTooLarge, InvalidGameError,
                    DecompositionError) as exc:
                report.errors[solver] = str(exc)
        reports.append(report)
    return name, reports, None


def cmd_compare(args) -> int:
    solvers = [s.strip() for s in args.solvers.split(",") if s.strip()]
    for s in solvers:
        if s not in SOLVERS:
            raise InputError(f"unknown solver {s!r}")
    files = sorted(str(p) for p in Path(args.corpus).glob("*.pg"))
    tasks = [(f, solvers, args.k, args.rounds, args.budget, args.mode) for f in files]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_compare_one, tasks))
    else:
        results = [_compare_one(t) for t in tasks]
    results.sort(key=lambda r: r[0])
    failures = 0
    checked = 0
    for name, reports, error in results:
        if error is not None:
            failures += 1
            print(json.dumps({"instance": name, "error": error}) if args.json
                  else f"{name}: ERROR {error}")
            continue
        for rep in reports:
            checked += 1
            bad = not rep.agree or rep.errors
            failures += bool(bad)
            if args.json:
                print(rep.to_json())
            elif bad:
                print(("DISAGREE " if not rep.agree else "") + _format(rep))
    if not args.json:
        print(f"instances={len(results)} vertices={checked} failures={failures}")
    return 1 if failures else 0


def cmd_bench(args) -> int:
    solvers = [s.strip() for s in args.solvers.split(",") if s.strip()]
    totals = {s: [0.0, 0] for s in solvers}
    for i in range(args.count):
        g, td = random_partial_ktree(args.n, args.k, args.d, args.seed + i)
        for s in g.vertices:
            for solver in solvers:
                run = run_solver(solver, g, s, td, args.k + 1, args.rounds, args.budget, args.mode)
                totals[solver][0] += run.ms
                totals[solver][1] += run.states
    count = args.count * args.n
    for solver, (ms, states) in totals.items():
        line = {"solver": solver, "queries": count, "mean_ms": round(ms / count, 3),
                "mean_states": round(states / count, 1)}
        print(json.dumps(line) if args.json else
              f"{solver:>10}: {line['mean_ms']} ms/query, {line['mean_states']} states/query")
    return 0


# -- argument parsing ---------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="paritysim",
                                description="Solve parity games with simulation-game solvers.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_k=True):
        if with_k:
            sp.add_argument("--k", type=int, help="width bound for the nc solver")
        sp.add_argument("--rounds", type=int, help="round bound for the nc solver")
        sp.add_argument("--budget", type=int, default=10**7, help="state budget")
        sp.add_argument("--mode", choices=("universal", "slice_reduce"), default="universal",
                        help="how Odd picks sets in the nc solver")
        sp.add_argument("--json", action="store_true", help="JSON lines output")

    sp = sub.add_parser("solve", help="solve a game from one or all vertices")
    sp.add_argument("game")
    sp.add_argument("--start", type=int)
    sp.add_argument("--solver", choices=SOLVERS, default="zielonka")
    sp.add_argument("--decomp", help="decomposition file, or 'heuristic'")
    sp.add_argument("-v", "--verbose", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("validate", help="check a game and optionally a decomposition")
    sp.add_argument("game")
    sp.add_argument("--decomp")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("generate", help="write random partial k-tree games")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--out", default=".")
    sp.add_argument("--self-loops", action="store_true", help="repair dead ends with self-loops")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("compare", help="run several solvers over a corpus")
    sp.add_argument("corpus")
    sp.add_argument("--solvers", default="zielonka,dagwidth,treewidth")
    sp.add_argument("--jobs", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("bench", help="time solvers on generated instances")
    sp.add_argument("--n", type=int, default=8)
    sp.add_argument("--k", type=int, default=2, help="generator width; nc gets k+1")
    sp.add_argument("--d", type=int, default=4)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=5)
    sp.add_argument("--solvers", default="zielonka,dagwidth,treewidth")
    common(sp, with_k=False)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (BudgetExceeded, InstanceTooLarge) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
