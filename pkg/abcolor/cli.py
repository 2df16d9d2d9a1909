#!/usr/bin/env python3
"""
cli.py: command-line entry point for the (a,b)-coloring toolkit.

Usage
-----
From the project root:

    # Exact decision, certificate on success
    python -m abcolor.cli solve -a 2 -b 1 graph.g

    # Check a certificate against a graph
    python -m abcolor.cli verify -a 1 -b 1 star.g star.cert

    # Constructive coloring with its bound certificate
    python -m abcolor.cli color --colorer planar graph.g

    # Extremal and random families
    python -m abcolor.cli generate --family fig6 --k 2 -o fig6.g
    python -m abcolor.cli generate --family random-cactus --n 200 --seed 7

    # Reductions (provenance as `c map` lines after the edges)
    python -m abcolor.cli reduce --from 3col --to 1-3 --g 3 source.g

    # Gadget properties, from a file or a shipped candidate
    python -m abcolor.cli gadget-check -a 2 -b 1 friendship.gadget
    python -m abcolor.cli gadget-check --candidate h1 --k 1

    # How the colorings of G' - v block v (input is G' - v)
    python -m abcolor.cli profile-obstructions --k 1 --v1 2 --v2 3 g_minus_v.g

Output
------
``s <STATUS>`` once per run, ``c <comment>`` diagnostics and ``v`` lines
of certificates, on stdout.  Logging goes to stderr (``--verbose``).
``--format json`` prints the run report as one JSON object instead.

Exit codes: 0 holds / colorable, 1 fails / not colorable, 2 unknown or
budget exhausted, 3 input error.
"""

import argparse
import hashlib
import logging
import os
import sys
from typing import Any, Callable, Dict, List, Optional

from pydantic import BaseModel, Field

# ── allow running as `python abcolor/cli.py` from repo root ──────────────
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), ".."))

from abcolor.colorers import COLORERS, run_colorer  # noqa: E402
from abcolor.coloring import Params, is_valid, read_certificate, verify, write_certificate  # noqa: E402
from abcolor.config import PRESET_CONFIGS, RunConfig, get_preset  # noqa: E402
from abcolor.errors import GadgetRejected, OracleFailure  # noqa: E402
from abcolor.gadgets import CANDIDATES, get_candidate, read_gadget, write_gadget  # noqa: E402
from abcolor.generators import FAMILIES, gen_friendship, get_family  # noqa: E402
from abcolor.graph import read_graph, write_graph  # noqa: E402
from abcolor.reductions import (  # noqa: E402
    CnfFormula, ReductionOutput, parse_dimacs, reduce_3col_to_13, reduce_3col_to_31,
    reduce_3col_to_3k, reduce_dd_to_12,
    reduce_with_gadgets, write_reduction,
)
from abcolor.solver import (  # noqa: E402
    GadgetSpec, Status, Verdict, check_gadget, decide, describe_property, obstruction_profile,
)

logger = logging.getLogger("abcolor.cli")

EXIT_OK, EXIT_FAILS, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3

STATUS_EXIT = {
    Status.COLORABLE: EXIT_OK,
    Status.NOT_COLORABLE: EXIT_FAILS,
    Status.UNKNOWN: EXIT_UNKNOWN,
}

VERDICT_EXIT = {
    Verdict.HOLDS: EXIT_OK,
    Verdict.FAILS: EXIT_FAILS,
    Verdict.UNKNOWN: EXIT_UNKNOWN,
}

# (source, target) -> wiring
REDUCTIONS = {
    ("dd", "1-2"): "dd12",
    ("3col", "1-3"): "3col13",
    ("3col", "3-1"): "3col31",
    ("3col", "3-k"): "3col3k",
    ("sat", "2-k"): "link",
    ("sat", "1-k"): "identify",
}


class RunReport(BaseModel):
    """Outcome of one command"""
    command: List[str]
    input_digest: Optional[str] = Field(default=None, description="sha256 of the main input file")
    status: str
    exit_code: int
    seed: int
    counters: Dict[str, Any] = Field(default_factory=dict)
    lines: List[str] = Field(default_factory=list, description="stdout lines in text format")
    output_format: str = Field(default="text", exclude=True)


class UsageError(ValueError):
    """Bad command line; reported with exit code 3 instead of argparse's 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text",
                        help="Output format")
    common.add_argument("--preset", choices=sorted(PRESET_CONFIGS), default="default",
                        help="Configuration preset")
    common.add_argument("--budget", type=int, default=None,
                        help="Maximum search nodes (overrides the preset)")
    common.add_argument("--seed", type=int, default=None,
                        help="Random seed (overrides the preset, default 42)")
    common.add_argument("-v", "--verbose", action="store_true",
                        help="Debug logging on stderr")

    p = _Parser(
        description="(a,b)-coloring: exact solver, colorers, generators and reductions",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text,
                              formatter_class=argparse.ArgumentDefaultsHelpFormatter)

    s = add("solve", "Decide (a,b)-colorability exactly")
    s.add_argument("-a", type=int, required=True, help="Distance-1 classes")
    s.add_argument("-b", type=int, required=True, help="Distance-2 classes")
    s.add_argument("graph", help="Graph file")

    s = add("verify", "Check a coloring certificate")
    s.add_argument("-a", type=int, default=None, help="Distance-1 classes (default: from the certificate)")
    s.add_argument("-b", type=int, default=None, help="Distance-2 classes (default: from the certificate)")
    s.add_argument("graph", help="Graph file")
    s.add_argument("certificate", help="Certificate file")

    s = add("color", "Run a constructive colorer")
    s.add_argument("--algo", "--colorer", dest="algo", choices=sorted(COLORERS), required=True,
                   help="Constructive colorer")
    s.add_argument("--n-jobs", type=int, default=None, help="joblib workers for per-part dispatch")
    s.add_argument("graph", help="Graph file")

    s = add("generate", "Build a graph family member")
    s.add_argument("--family", choices=sorted(FAMILIES), required=True, help="Family")
    for name in ("k", "l", "a", "n", "w", "h", "max-subdivisions"):
        s.add_argument(f"--{name}", type=int, default=None, help=f"Family parameter {name}")
    s.add_argument("--input", default=None, help="Input graph for families built from one")
    s.add_argument("-o", "--output", default=None, help="Write here instead of stdout")

    s = add("reduce", "Compile a source instance to an (a,b)-coloring instance")
    s.add_argument("--from", dest="source", choices=["dd", "3col", "sat"], required=True,
                   help="Source problem")
    s.add_argument("--to", dest="target", choices=["1-2", "1-3", "3-1", "3-k", "2-k", "1-k"],
                   required=True, help="Target parameters")
    s.add_argument("--k", type=int, default=1, help="k for the 3-k, 2-k and 1-k targets")
    s.add_argument("--g", type=int, default=3, help="Girth parameter of the path reductions")
    s.add_argument("--gadget", default=None, help="H1 or corner gadget file")
    s.add_argument("--var-gadget", default=None, help="Variable gadget file (SAT)")
    s.add_argument("--clause-gadget", default=None, help="Clause gadget file (SAT)")
    s.add_argument("--h-gadget", default=None, help="Forced-D2 gadget file (SAT, 2-literal clauses)")
    s.add_argument("-o", "--output", default=None, help="Write here instead of stdout")
    s.add_argument("input", help="Source graph, or DIMACS CNF for --from sat")

    s = add("gadget-check", "Check a gadget's properties over all its colorings")
    s.add_argument("-a", type=int, default=None, help="Distance-1 classes (default: from the gadget)")
    s.add_argument("-b", type=int, default=None, help="Distance-2 classes (default: from the gadget)")
    s.add_argument("--candidate", choices=sorted(CANDIDATES), default=None,
                   help="Check a shipped candidate instead of a file")
    s.add_argument("--k", type=int, default=1, help="k for the shipped candidates")
    s.add_argument("gadget", nargs="?", default=None, help="Gadget file")

    s = add("profile-obstructions", "Obstruction profile of G' - v at (2,k)")
    s.add_argument("--k", type=int, required=True, help="Distance-2 classes")
    s.add_argument("--v1", type=int, required=True, help="First neighbor of v (1-based)")
    s.add_argument("--v2", type=int, required=True, help="Second neighbor of v (1-based)")
    s.add_argument("graph", help="Graph file of G' - v")
    return p


def make_config(args: argparse.Namespace) -> RunConfig:
    config = get_preset(args.preset)
    if args.budget is not None:
        if args.budget <= 0:
            raise UsageError("--budget must be positive")
        config.solver.budget.max_nodes = args.budget
    if args.seed is not None:
        config.seed = args.seed
    if getattr(args, "n_jobs", None) is not None:
        config.colorer.n_jobs = args.n_jobs
    return config


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

class _Run:
    """Mutable state of one command: output lines, counters, digest."""

    def __init__(self, config: RunConfig) -> None:
        self.config = config
        self.lines: List[str] = []
        self.counters: Dict[str, Any] = {}
        self.digest: Optional[str] = None

    def read(self, path: str, main: bool = False) -> str:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        if main:
            self.digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
        return text

    def emit(self, text: str) -> None:
        self.lines.extend(text.rstrip("\n").split("\n"))


def cmd_solve(args: argparse.Namespace, run: _Run) -> Status:
    g, _ = read_graph(run.read(args.graph, main=True))
    p = Params(args.a, args.b)
    outcome = decide(g, p, config=run.config.solver)
    run.counters["nodes"] = outcome.nodes_explored
    run.lines.append(f"s {outcome.status.value}")
    run.lines.append(f"c n={g.n} m={g.m} params={p} nodes={outcome.nodes_explored}")
    if outcome.witness is not None:
        run.emit(write_certificate(outcome.witness, p))
    return outcome.status


def cmd_verify(args: argparse.Namespace, run: _Run) -> Status:
    g, _ = read_graph(run.read(args.graph, main=True))
    coloring, cert_params = read_certificate(run.read(args.certificate), n=g.n)
    p = Params(
        args.a if args.a is not None else cert_params.a,
        args.b if args.b is not None else cert_params.b,
    )
    violations = verify(g, p, coloring)
    run.counters["violations"] = len(violations)
    run.lines.append(f"s {'VALID' if not violations else 'INVALID'}")
    run.lines.extend(f"c violation {v}" for v in violations)
    return Status.NOT_COLORABLE if violations else Status.COLORABLE


def cmd_color(args: argparse.Namespace, run: _Run) -> Status:
    g, _ = read_graph(run.read(args.graph, main=True))
    coloring, p, cert = run_colorer(args.algo, g, run.config.colorer)
    if not is_valid(g, p, coloring):
        raise OracleFailure(f"colorer {args.algo} produced an invalid coloring")
    holds = cert is None or cert.holds()
    run.lines.append(f"s {'COLORED' if holds else 'BOUND_EXCEEDED'}")
    run.lines.append(f"c colorer {args.algo} params={p}")
    if cert is not None:
        run.counters.update(cert.get_status())
        run.lines.append(cert.bound_line())
    run.emit(write_certificate(coloring, p))
    return Status.COLORABLE if holds else Status.NOT_COLORABLE


def cmd_generate(args: argparse.Namespace, run: _Run) -> Status:
    entry = FAMILIES[args.family]
    kwargs: Dict[str, Any] = {}
    for name in entry["params"]:
        if name == "seed":
            kwargs["seed"] = run.config.seed
        elif name == "graph":
            if args.input is None:
                raise UsageError(f"family {args.family} needs --input")
            kwargs["g"], _ = read_graph(run.read(args.input, main=True))
        else:
            value = getattr(args, name)
            if value is None:
                raise UsageError(f"family {args.family} needs --{name.replace('_', '-')}")
            kwargs[name] = value
    built = get_family(args.family)(**kwargs)
    comments = [f"family {args.family} " + " ".join(f"{k}={v}" for k, v in kwargs.items() if k != "g")]
    if isinstance(built, GadgetSpec):
        text = write_gadget(built, comments)
        graph = built.graph
    else:
        text = write_graph(built, comments)
        graph = built
    run.counters.update({"n": graph.n, "m": graph.m})
    run.lines.append(f"c {comments[0]} n={graph.n} m={graph.m}")
    _deliver(run, text, args.output)
    run.lines.insert(0, "s GENERATED")
    return Status.COLORABLE


def cmd_reduce(args: argparse.Namespace, run: _Run) -> Status:
    wiring = REDUCTIONS.get((args.source, args.target))
    if wiring is None:
        raise UsageError(f"no reduction from {args.source} to {args.target}")
    budget = run.config.solver.budget
    text = run.read(args.input, main=True)
    try:
        if args.source == "sat":
            out = _reduce_sat(args, run, parse_dimacs(text), wiring)
        else:
            g, _ = read_graph(text)
            if wiring == "dd12":
                out = reduce_dd_to_12(g, args.g)
            elif wiring == "3col13":
                out = reduce_3col_to_13(g, args.g)
            elif wiring == "3col31":
                out = reduce_3col_to_31(g, _gadget_file(run, args.gadget), budget)
            else:
                out = reduce_3col_to_3k(g, args.k, _gadget_file(run, args.gadget), budget)
    except GadgetRejected as exc:
        run.lines.append("s GADGET_REJECTED")
        run.lines.append(f"c error {exc}")
        return Status.NOT_COLORABLE
    run.counters.update({"n": out.graph.n, "m": out.graph.m, "max_degree": out.graph.max_degree})
    run.lines.append("s REDUCED")
    run.lines.append(f"c params={out.params} n={out.graph.n} m={out.graph.m}")
    _deliver(run, write_reduction(out), args.output)
    return Status.COLORABLE


def _reduce_sat(args: argparse.Namespace, run: _Run, phi: CnfFormula, wiring: str) -> ReductionOutput:
    k = args.k
    h = _gadget_file(run, args.h_gadget)
    var = _gadget_file(run, args.var_gadget)
    clause = _gadget_file(run, args.clause_gadget)
    if wiring == "link":
        params = Params(2, k)
        h = h or gen_friendship(k)
        var = var or get_candidate("var")(h)
        clause = clause or get_candidate("clause")(h)
    else:
        params = Params(1, k)
        if var is None or clause is None:
            raise UsageError("--to 1-k needs --var-gadget and --clause-gadget")
    return reduce_with_gadgets(phi, k, var, clause, params, scheme=wiring,
                               h_gadget=h, budget=run.config.solver.budget)


def _gadget_file(run: _Run, path: Optional[str]) -> Optional[GadgetSpec]:
    return read_gadget(run.read(path)) if path else None


def cmd_gadget_check(args: argparse.Namespace, run: _Run) -> Verdict:
    if args.candidate is not None:
        spec = _candidate(args.candidate, args.k)
    elif args.gadget is not None:
        spec = read_gadget(run.read(args.gadget, main=True))
    else:
        raise UsageError("give a gadget file or --candidate")
    if (args.a is None) != (args.b is None):
        raise UsageError("give both -a and -b, or neither")
    p = Params(args.a, args.b) if args.a is not None else spec.params
    if p is None:
        raise UsageError(f"gadget {spec.name} states no parameters; give -a and -b")
    check = check_gadget(spec, p, run.config.solver.budget, config=run.config.solver)
    run.counters["nodes"] = check.nodes_explored
    run.lines.append(f"s {check.verdict.value}")
    run.lines.append(f"c gadget {spec.name} n={spec.graph.n} params={p} nodes={check.nodes_explored}")
    if check.failed_property is not None:
        run.lines.append(f"c property {describe_property(check.failed_property)}")
    if check.witness is not None:
        run.emit(write_certificate(check.witness, p))
    return check.verdict


def _candidate(name: str, k: int) -> GadgetSpec:
    build = get_candidate(name)
    if name == "h1":
        return build(k)
    if name in ("var", "clause"):
        return build(gen_friendship(k))
    return build()


def cmd_profile(args: argparse.Namespace, run: _Run) -> Status:
    g, _ = read_graph(run.read(args.graph, main=True))
    for v in (args.v1, args.v2):
        if not 1 <= v <= g.n:
            raise UsageError(f"vertex {v} outside 1..{g.n}")
    profile = obstruction_profile(
        g, args.v1 - 1, args.v2 - 1, args.k,
        budget=run.config.solver.budget, cap=run.config.enum_cap, config=run.config.solver,
    )
    run.counters["colorings"] = profile.colorings_seen
    if not profile.exhausted:
        status = "UNKNOWN"
    else:
        status = "BLOCKED" if profile.every_coloring_blocked else "EXTENDABLE"
    run.lines.append(f"s {status}")
    run.lines.append(f"c has_Bc {'yes' if profile.has_Bc else 'no'}")
    for s1, s2 in sorted(profile.pairs, key=lambda pr: (sorted(pr[0]), sorted(pr[1]))):
        run.lines.append(f"c pair {' '.join(str(x) for x in sorted(s1))} | {' '.join(str(x) for x in sorted(s2))}")
    run.lines.append(f"c colorings {profile.colorings_seen}")
    return Status.COLORABLE if profile.exhausted else Status.UNKNOWN


def _deliver(run: _Run, text: str, output: Optional[str]) -> None:
    if output is None:
        run.emit(text)
        return
    with open(output, "w", encoding="utf-8") as fh:
        fh.write(text)
    run.lines.append(f"c wrote {output}")


COMMANDS: Dict[str, Callable] = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "color": cmd_color,
    "generate": cmd_generate,
    "reduce": cmd_reduce,
    "gadget-check": cmd_gadget_check,
    "profile-obstructions": cmd_profile,
}


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------

def dispatch(argv: List[str]) -> RunReport:
    """Run one command and report; never raises for bad input."""
    command = list(argv)
    seed = RunConfig().seed
    output_format = "text"
    try:
        args = build_parser().parse_args(argv)
        output_format = args.format
        _configure_logging(args.verbose)
        config = make_config(args)
        seed = config.seed
        run = _Run(config)
        result = COMMANDS[args.command](args, run)
    except (ValueError, OSError) as exc:
        return _error_report(command, seed, exc, EXIT_INPUT, output_format)
    except RuntimeError as exc:
        return _error_report(command, seed, exc, EXIT_UNKNOWN, output_format)

    exit_code = VERDICT_EXIT[result] if isinstance(result, Verdict) else STATUS_EXIT[result]
    status = next((line[2:] for line in run.lines if line.startswith("s ")), result.value)
    run.lines.append(f"c seed {seed}")
    logger.debug("%s: %s (exit %d)", args.command, status, exit_code)
    return RunReport(
        command=command, input_digest=run.digest, status=status, exit_code=exit_code,
        seed=seed, counters=run.counters, lines=run.lines, output_format=output_format,
    )


def _error_report(command: List[str], seed: int, exc: Exception, code: int, output_format: str) -> RunReport:
    status = "ERROR" if code == EXIT_INPUT else "UNKNOWN"
    message = " ".join(str(exc).split()) or type(exc).__name__
    return RunReport(
        command=command, status=status, exit_code=code, seed=seed, output_format=output_format,
        lines=[f"s {status}", f"c error {type(exc).__name__}: {message}", f"c seed {seed}"],
    )


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    # basicConfig is a no-op once the root logger has handlers
    logging.getLogger().setLevel(logging.DEBUG if verbose else logging.WARNING)


def main(argv: Optional[List[str]] = None) -> int:
    report = dispatch(sys.argv[1:] if argv is None else argv)
    if report.output_format == "json":
        print(report.model_dump_json())
    else:
        print("\n".join(report.lines))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
