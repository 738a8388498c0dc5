"""
Command-line front end.

    agreement-forge synth  SKETCH SPEC [-o COMPLETION] [--stats PATH] ...
    agreement-forge verify MODEL SPEC [--emit-witness PATH] [--cutoff-plus-one]
    agreement-forge phases MODEL [SPEC]
    agreement-forge count  SKETCH
    agreement-forge dump   MODEL [--dump-ast | --dump-ls PATH | --dump-gs PATH]

Exit codes: 0 completed / verified, 1 no solution / verification failed,
2 timeout or resource bound, 3 input error.
"""

import argparse
import logging
import pathlib
import sys
import typing

from .decidability import PhaseIndex, check_amenability, check_phase_compatibility, compute_cutoff
from .lang import dump_ast, load_sketch, load_spec, substitute
from .learner.constraint import to_sexpr
from .learner.interpretation import count_interpretations
from .semantics import build_global_semantics, build_local_semantics, complete
from .synth import Outcome, ReportWriter, SynthOptions, synthesize, verify
from .utils.envs import FORGE_VERSION
from .utils.exceptions import ForgeError, ResourceLimit, SearchTimeout
from .utils.logger import logger, set_verbosity

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_LIMIT = 2
EXIT_INPUT = 3

_EXIT_CODES = {
    Outcome.COMPLETED: EXIT_OK,
    Outcome.NO_SOLUTION: EXIT_FAILED,
    Outcome.TIMEOUT: EXIT_LIMIT,
    Outcome.RESOURCE_LIMIT: EXIT_LIMIT,
}


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; here that code means a spent budget."""

    def error(self, message: str) -> typing.NoReturn:
        self.print_help(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--cutoff", type=int, default=None, help="system size for the global checks (>= computed)")
    parser.add_argument("--timeout", type=float, default=None, metavar="SECS")
    parser.add_argument("--no-liveness", dest="liveness", action="store_false", help="skip deadlock and liveness")
    parser.add_argument("--strict-independence", action="store_true", help="only internal transitions are independent")
    parser.add_argument("--strict-domains", action="store_true", default=None, help="out-of-range updates are errors")
    parser.add_argument("--jobs", type=int, default=1, metavar="N")
    parser.add_argument("--state-bound", type=int, default=None, metavar="N")


def _parse_args(argv: typing.Sequence[str] | None = None) -> argparse.Namespace:
    parser = _Parser(prog="agreement-forge", description="Complete and verify agreement-protocol process sketches.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {FORGE_VERSION}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v progress, -vv per-iteration, -vvv debug")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = commands.add_parser("synth", help="complete the holes of a sketch")
    p.add_argument("sketch", type=pathlib.Path)
    p.add_argument("spec", type=pathlib.Path)
    p.add_argument("-o", "--output", type=pathlib.Path, default=None, help="write the completed model here")
    p.add_argument("--max-iters", dest="max_iterations", type=int, default=None, metavar="N")
    p.add_argument("--learner", choices=("solver", "enumerate"), default="solver")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--deterministic", action="store_true")
    p.add_argument("--stats", type=pathlib.Path, default=None, metavar="PATH", help=".json or .yaml")
    p.add_argument("--dump-constraints", type=pathlib.Path, default=None, metavar="PATH")
    p.add_argument("--trace-cex", action="store_true", help="print every counterexample with its cube")
    p.add_argument("--emit-witness", type=pathlib.Path, default=None, metavar="PATH")
    _run_options(p)

    p = commands.add_parser("verify", help="run the staged check on a hole-free model")
    p.add_argument("model", type=pathlib.Path)
    p.add_argument("spec", type=pathlib.Path)
    p.add_argument("--emit-witness", type=pathlib.Path, default=None, metavar="PATH")
    p.add_argument("--cutoff-plus-one", action="store_true", help="also check safety at cutoff + 1")
    _run_options(p)

    p = commands.add_parser("phases", help="phases and phase-compatibility / amenability verdicts as JSON")
    p.add_argument("model", type=pathlib.Path)
    p.add_argument("spec", type=pathlib.Path, nargs="?", default=None)
    p.add_argument("--strict-independence", action="store_true")
    p.add_argument("--jobs", type=int, default=1, metavar="N")

    p = commands.add_parser("count", help="number of interpretations of a sketch")
    p.add_argument("sketch", type=pathlib.Path)

    p = commands.add_parser("dump", help="AST JSON or DOT graphs of the local / global semantics")
    p.add_argument("model", type=pathlib.Path)
    what = p.add_mutually_exclusive_group()
    what.add_argument("--dump-ast", action="store_true", default=True)
    what.add_argument("--dump-ls", type=pathlib.Path, default=None, metavar="PATH")
    what.add_argument("--dump-gs", type=pathlib.Path, default=None, metavar="PATH")
    p.add_argument("-n", "--size", type=int, default=2, help="system size for --dump-gs")

    return parser.parse_args(argv)


def _options(args: argparse.Namespace) -> SynthOptions:
    opts = SynthOptions(
        timeout=args.timeout,
        cutoff=args.cutoff,
        liveness=args.liveness,
        strict_independence=args.strict_independence,
        jobs=max(1, args.jobs),
    )
    if args.strict_domains is not None:
        opts.strict_domains = args.strict_domains
    if args.state_bound is not None:
        opts.state_bound = args.state_bound
    for name in ("max_iterations", "learner", "seed", "deterministic", "trace_cex", "cutoff_plus_one"):
        if hasattr(args, name):
            setattr(opts, name, getattr(args, name))
    return opts


def _emit(obj, path: pathlib.Path | None) -> None:
    if path is None:
        return
    if str(path) == "-":
        sys.stdout.write(ReportWriter(path, kind="json").dumps(obj))
    else:
        ReportWriter(path).write(obj)


def _cmd_synth(args: argparse.Namespace) -> int:
    if args.trace_cex and not logger.isEnabledFor(logging.INFO):
        set_verbosity("info")
    sketch = load_sketch(args.sketch)
    spec = load_spec(args.spec)
    result = synthesize(sketch, spec, _options(args))

    if args.stats is not None:
        ReportWriter(args.stats).write(result)
    if args.dump_constraints is not None:
        args.dump_constraints.parent.mkdir(parents=True, exist_ok=True)
        args.dump_constraints.write_text("".join(to_sexpr(c) + "\n" for c in result.store), encoding="utf-8")

    if result.outcome is not Outcome.COMPLETED:
        print(f"{result.outcome.value}: {result.message}" if result.message else result.outcome.value)
        return _EXIT_CODES[result.outcome]

    model = substitute(sketch, result.interpretation)
    print(f"// completed after {len(result.iterations)} iteration(s), cutoff {result.cutoff}")
    print(str(result.interpretation))
    print()
    print(model, end="")
    if args.output is not None:
        args.output.parent.mkdir(parents=True, exist_ok=True)
        args.output.write_text(model, encoding="utf-8")
        logger.info(f"Completion written to {args.output}")
    if args.emit_witness is not None:
        _emit(verify(sketch, spec, _options(args), result.interpretation), args.emit_witness)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    sketch = load_sketch(args.model)
    spec = load_spec(args.spec)
    report = verify(sketch, spec, _options(args))
    print(report)
    _emit(report, args.emit_witness)
    return EXIT_OK if report.ok else EXIT_FAILED


def _cmd_phases(args: argparse.Namespace) -> int:
    sketch = load_sketch(args.model)
    ls = build_local_semantics(complete(sketch))
    index = PhaseIndex(ls, args.strict_independence)
    reports = [check_phase_compatibility(ls, args.strict_independence, index=index, jobs=args.jobs)]
    phases = [*index.phases, *index.merged_phases]
    data = {"phases": [p.__serialize__() for p in phases], "phase_compatibility": reports[0]}
    if args.spec is not None:
        spec = load_spec(args.spec)
        reports.append(check_amenability(ls, spec, args.strict_independence, jobs=args.jobs))
        data["amenability"] = reports[-1]
        data["cutoff"] = compute_cutoff(ls, spec)
    sys.stdout.write(ReportWriter("-", kind="json").dumps(data))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAILED


def _cmd_count(args: argparse.Namespace) -> int:
    sketch = load_sketch(args.sketch)
    print(count_interpretations(sketch.holes))
    return EXIT_OK


def _cmd_dump(args: argparse.Namespace) -> int:
    sketch = load_sketch(args.model)
    if args.dump_ls is None and args.dump_gs is None:
        print(dump_ast(sketch))
        return EXIT_OK

    from .view import global_graph, local_graph, render, to_dot

    ls = build_local_semantics(complete(sketch))
    if args.dump_ls is not None:
        graph, path = local_graph(ls), args.dump_ls
    else:
        graph, path = global_graph(build_global_semantics(ls, args.size), disabled=True), args.dump_gs
    if str(path) == "-":
        print(to_dot(graph).string())
    else:
        render(graph, path)
    return EXIT_OK


_COMMANDS = {
    "synth": _cmd_synth,
    "verify": _cmd_verify,
    "phases": _cmd_phases,
    "count": _cmd_count,
    "dump": _cmd_dump,
}


def main(argv: typing.Sequence[str] | None = None) -> int:
    args = _parse_args(argv)
    if args.verbose:
        set_verbosity({1: "info", 2: "verbose"}.get(args.verbose, "debug"))
    try:
        return _COMMANDS[args.command](args)
    except (SearchTimeout, ResourceLimit) as error:
        logger.error(error)
        print(f"{'timeout' if isinstance(error, SearchTimeout) else 'resource_limit'}: {error}")
        return EXIT_LIMIT
    except ForgeError as error:
        logger.error(error)
        return EXIT_INPUT
    except OSError as error:
        logger.error(f"{error.filename}: {error.strerror}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
