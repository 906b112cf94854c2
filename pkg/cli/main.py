"""Command-line front end: check-sfm, solve, gen, reduce and bench."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from dotenv import load_dotenv
from pydantic import ValidationError

from core.errors import (
    AssumptionViolated,
    BudgetExceeded,
    CycleCapExceeded,
    Infeasible,
    InfeasibleLink,
    InvalidInstance,
    InvalidParams,
    ParseError,
    SfselError,
    Uncoverable,
)
from core.report import SolveReport
from core.system import FeedbackSet, costs_equal
from core.validation import require_feasible_feedback, require_valid
from instances.generators import INSTANCE_KINDS, random_instance
from instances.serialization import load_instance, write_instance
from oracle.brute_force import brute_force_problem1
from reduction.condensed import condense, cycle_table, cycles_of, merge_cycles
from sfm.certificate import has_no_sfm
from utils.config_validator import ConfigValidator, OracleBudget
from utils.logging_interface import NullLogger, SolverLogger, TraceLogger
from utils.path_utils import DEFAULT_BENCH_SUITE, default_solver_config, project_path
from utils.visualization import GraphVisualizer

from .bench import bound_violations, run_bench
from .solvers import ALGORITHMS, solve

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_USAGE = 2
EXIT_ASSUMPTION = 3


class UsageError(Exception):
    """Raised by the argument parser instead of exiting."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sfsel", description="Minimum-cost feedback selection for structured systems.")
    parser.add_argument("--config", help="Solver YAML (default: configs/solver_config.yaml)")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log at DEBUG level")
    parser.add_argument("--timing", action="store_true", help="Include wall time in JSON output")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    check = sub.add_parser("check-sfm", help="Check a feedback set for structurally fixed modes")
    check.add_argument("input", help="Instance file (.sfsi.json)")
    check.add_argument("--fs", required=True, help='Feedback links, e.g. "u1:y4,u5:y5"')
    check.add_argument("--format", choices=["json", "text"], default="text")

    solve_cmd = sub.add_parser("solve", help="Select a feedback set")
    solve_cmd.add_argument("input", help="Instance file (.sfsi.json)")
    solve_cmd.add_argument("--algo", choices=ALGORITHMS, default="auto")
    solve_cmd.add_argument("--no-merge", action="store_true", help="Skip cycle merging before the potential algorithm")
    solve_cmd.add_argument("--merge-equal", action="store_true", help="Also merge cycles with identical edge sets")
    solve_cmd.add_argument("--project", action="store_true", help="Drop links that break the back-edge structure")
    solve_cmd.add_argument("--budget", type=int, help="Oracle limit on feasible links")
    solve_cmd.add_argument("--compare-oracle", action="store_true", help="Also run the oracle and report the ratio")
    solve_cmd.add_argument("--trace", action="store_true", help="Print solver trace tables")
    solve_cmd.add_argument("--format", choices=["json", "text"], default="text")
    solve_cmd.add_argument("-o", "--output", help="Write the report here instead of stdout")

    gen = sub.add_parser("gen", help="Generate a random instance")
    gen.add_argument("--kind", choices=INSTANCE_KINDS, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-n", type=int, help="State count (SCC count for --kind hierarchy)")
    gen.add_argument("--edge-prob", type=float)
    gen.add_argument("--io-prob", type=float)
    gen.add_argument("--cost-prob", type=float)
    gen.add_argument("--max-feasible-edges", type=int)
    gen.add_argument("--scc-size", type=int)
    gen.add_argument("--shape", choices=["dag", "forest"])
    gen.add_argument("--fractional", action="store_true", default=None)
    gen.add_argument("-o", "--output", help="Write the instance here instead of stdout")

    reduce_cmd = sub.add_parser("reduce", help="Show the condensation, E_min and D_R cycles")
    reduce_cmd.add_argument("input", help="Instance file (.sfsi.json)")
    reduce_cmd.add_argument("--format", choices=["json", "text", "dot"], default="text")
    reduce_cmd.add_argument("--no-merge", action="store_true")
    reduce_cmd.add_argument("--merge-equal", action="store_true")

    bench = sub.add_parser("bench", help="Run a bench suite against the oracle")
    bench.add_argument("--suite", default=None, help="Suite YAML (default: configs/bench_suite.yaml)")
    bench.add_argument("--out", default="bench_out", help="Directory for bench.csv and bench.json")
    bench.add_argument("--jobs", type=int, default=1)
    bench.add_argument("--no-progress", action="store_true")
    return parser


# ---- Command handlers ----


def _emit(text: str, output: Optional[str] = None) -> None:
    if output:
        with open(output, "w") as f:
            f.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def cmd_check_sfm(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    system, P = load_instance(args.input)
    require_valid(system, P)
    feedback = FeedbackSet.parse(args.fs)
    require_feasible_feedback(system, P, feedback)
    certificate = has_no_sfm(system, feedback)
    if args.format == "json":
        payload = {"links": [list(link) for link in feedback], "certificate": certificate.to_json()}
        _emit(json.dumps(payload, indent=2, sort_keys=True))
    else:
        lines = [
            f"links: {feedback.to_text() or '(none)'}",
            f"condition (a): {'pass' if certificate.condition_a.passed else 'fail'}",
            f"condition (b): {'pass' if certificate.condition_b.passed else 'fail'}",
        ]
        failing = certificate.condition_a.failing_states
        if failing:
            lines.append("states outside a feedback SCC: " + ", ".join(f"x{s}" for s in failing))
        lines.append(f"no-SFM: {'pass' if certificate.passed else 'fail'}")
        _emit("\n".join(lines))
    return EXIT_OK if certificate.passed else EXIT_INFEASIBLE


def cmd_solve(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    system, P = load_instance(args.input)
    solver = config["solver"]
    overrides = {}
    if args.no_merge:
        overrides["merge_cycles"] = False
    if args.merge_equal:
        overrides["merge_equal_edge_sets"] = True
    if overrides:
        solver = solver.copy(update=overrides)
    budget: OracleBudget = config["oracle"]
    if args.budget is not None:
        budget = ConfigValidator.validate_oracle_budget({**budget.dict(), "max_feasible_edges": args.budget})

    tracer: SolverLogger = TraceLogger() if args.trace else NullLogger()
    tracer.start()
    try:
        report = solve(system, P, args.algo, solver=solver, budget=budget, project=args.project, tracer=tracer)
    except Infeasible as exc:
        tracer.log_error("infeasible", exc.reason, exc)
        report = SolveReport.infeasible(args.algo, exc.reason)
        _write_report(report, args)
        _print_trace(tracer, args)
        logger.error("%s", exc)
        return EXIT_INFEASIBLE
    finally:
        tracer.stop()

    # Nothing leaves the tool without a fresh no-SFM check.
    report.certificate = has_no_sfm(system, report.feedback)
    if not report.certificate.passed:
        raise AssumptionViolated("returned feedback set passes the no-SFM check", report.feedback.to_text())
    if report.route:
        print(f"route: {report.route}", file=sys.stderr)

    if args.compare_oracle and args.algo != "oracle":
        try:
            optimum = brute_force_problem1(system, P, budget).cost
            report.stats.extra["oracle_cost"] = optimum
            report.stats.extra["ratio"] = 1.0 if costs_equal(optimum, 0.0) else report.cost / optimum
        except BudgetExceeded as exc:
            report.stats.extra["oracle_cost"] = None
            report.stats.extra["oracle_note"] = str(exc)

    _write_report(report, args)
    _print_trace(tracer, args)
    return EXIT_OK


def _print_trace(tracer: SolverLogger, args: argparse.Namespace) -> None:
    if isinstance(tracer, TraceLogger) and args.format == "text":
        print(tracer.render(), file=sys.stderr)


def _write_report(report: SolveReport, args: argparse.Namespace) -> None:
    if args.format == "json":
        _emit(report.dumps(include_timing=args.timing), args.output)
    else:
        _emit(report.to_text(), args.output)


def cmd_gen(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    params = config["generator"].dict()
    for key in ("n", "edge_prob", "io_prob", "cost_prob", "max_feasible_edges", "scc_size", "shape", "fractional"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    system, P = random_instance(args.kind, params, args.seed)
    data = write_instance(system, P)
    if args.output:
        with open(args.output, "wb") as f:
            f.write(data)
        logger.info("Wrote %s instance (seed %d) to %s", args.kind, args.seed, args.output)
    else:
        sys.stdout.write(data.decode("utf-8"))
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    system, P = load_instance(args.input)
    solver = config["solver"]
    cg = condense(system, P)
    cycles = cycles_of(cg, solver.cycle_cap)
    merge = solver.merge_cycles and not args.no_merge
    if merge:
        cycles = merge_cycles(cycles, merge_equal=solver.merge_equal_edge_sets or args.merge_equal)

    if args.format == "dot":
        if not GraphVisualizer.available():
            raise UsageError("--format dot needs the graphviz package")
        _emit(GraphVisualizer.to_dot(cg.reduced_digraph(), name="D_R"))
        return EXIT_OK
    e_min = [
        {"pair": [a, b], "link": [edge.link[0], edge.link[1]], "cost": edge.cost}
        for (a, b), edge in sorted(cg.e_min.items())
    ]
    if args.format == "json":
        payload = {
            "sccs": [{"id": a, "states": sorted(cg.scc.members(a))} for a in cg.scc.ids()],
            "condensation_edges": [list(e) for e in sorted(cg.scc.edges)],
            "e_min": e_min,
            "merged": merge,
            "cycles": cycle_table(cycles, cg.cost_map()),
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True))
        return EXIT_OK
    lines = [f"SCCs: {cg.scc.count}"]
    lines += [f"  N{a} = {{{', '.join(f'x{s}' for s in sorted(cg.scc.members(a)))}}}" for a in cg.scc.ids()]
    lines.append(f"E_min: {len(e_min)}")
    lines += [f"  (N{row['pair'][0]}, N{row['pair'][1]}): u{row['link'][0]}:y{row['link'][1]} cost {row['cost']:g}" for row in e_min]
    lines.append(f"cycles: {len(cycles)}{' (merged)' if merge else ''}")
    lines += [f"  C{row['index']} {row['label']} cost {row['cost']:g}" for row in cycle_table(cycles, cg.cost_map())]
    _emit("\n".join(lines))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    suite = ConfigValidator.load_bench_suite(args.suite or project_path(DEFAULT_BENCH_SUITE))
    frame = run_bench(suite, args.out, solver=config["solver"], jobs=args.jobs, progress=not args.no_progress)
    bad = bound_violations(frame)
    print(f"{len(frame)} rows written to {args.out}; {len(bad)} bound violations")
    return EXIT_INFEASIBLE if len(bad) else EXIT_OK


COMMANDS = {
    "check-sfm": cmd_check_sfm,
    "solve": cmd_solve,
    "gen": cmd_gen,
    "reduce": cmd_reduce,
    "bench": cmd_bench,
}


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, (Infeasible, Uncoverable)):
        return EXIT_INFEASIBLE
    if isinstance(exc, AssumptionViolated):
        return EXIT_ASSUMPTION
    if isinstance(
        exc,
        (
            UsageError,
            ParseError,
            InvalidInstance,
            InfeasibleLink,
            InvalidParams,
            BudgetExceeded,
            CycleCapExceeded,
            FileNotFoundError,
            ValidationError,
            ValueError,
        ),
    ):
        return EXIT_USAGE
    if isinstance(exc, SfselError):
        return EXIT_USAGE
    raise exc


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, run one subcommand and return its exit code."""

    load_dotenv()
    try:
        args = build_parser().parse_args(list(argv) if argv is not None else None)
        config = ConfigValidator.load_solver_config(args.config or default_solver_config())
        level = "DEBUG" if args.verbose else config["logging"].level
        logging.basicConfig(level=getattr(logging, level), stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
        return COMMANDS[args.command](args, config)
    except Exception as exc:  # mapped to an exit code or re-raised
        code = exit_code_for(exc)
        print(f"error: {exc}", file=sys.stderr)
        return code


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
