"""
Command-line entry point for program-set-semantics.

Every command answers with a :class:`RunReport`.  By default only the
command's result is printed (canonical JSON, or plain text for listings);
``--json`` prints the whole report.  Logs go to stderr, so stdout is
byte-identical across runs with the same inputs.

Exit codes:
    0  success, the claim holds, or every suite passed
    1  violated, realizable, witness found, or a suite failed
    2  input error (syntax, sorts, validation, loops, malformed files)
    3  a resource cap was hit

Usage:
    progset enumerate grammar.g --nonterminal E --depth 3
    progset semantics grammar.g inputs.json --mode vector-yellow
    progset check triple.json
    progset replicate --suite evenness
"""

import argparse
import dataclasses
import json
import logging
import sys
import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from dotenv import load_dotenv
from pydantic import ValidationError

from progset_semantics.concrete import sorted_outcomes
from progset_semantics.config import SemanticsConfig, get_config
from progset_semantics.domain import Divergence, DVState, State, StateDomain, sorted_vectors
from progset_semantics.error_codes import PSEM_7002_INPUT_FILE_INVALID, PSEM_7003_ARGUMENT_INVALID
from progset_semantics.errors import ResourceLimitError, SemanticsError
from progset_semantics.gadget import build_gadget, check_gadget, gadget_domain
from progset_semantics.grammar import (
    GrammarValidationError,
    Rtg,
    enumerate_programs,
    format_grammar,
    grammar_vars,
    load_grammar,
)
from progset_semantics.granularity import (
    FamilyMember,
    SemanticsId,
    denotation_table,
    refines_on_family,
)
from progset_semantics.logging_config import get_structured_logger, run_context, setup_logging
from progset_semantics.models.domain import DomainConfig
from progset_semantics.models.reports import RunCounters, RunReport
from progset_semantics.models.triples import EngineKind, SemanticsMode
from progset_semantics.replication import get_default_registry
from progset_semantics.reporting import ReportStore, canonical_json, config_digest, render_report
from progset_semantics.terms import pretty_print
from progset_semantics.triples import (
    SemanticsRunner,
    check_triple,
    grmdisj_check,
    load_triple,
    pbe_unrealizable,
    triple_domain,
    triple_to_json,
)
from progset_semantics.vector_aware import reduce

logger: logging.LoggerAdapter[Any] = get_structured_logger(__name__)

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_INPUT_ERROR = 2
EXIT_RESOURCE = 3


class InputFileError(SemanticsError):
    """Raised when an input or config file cannot be read or decoded."""

    def __init__(self, path: str, reason: str) -> None:
        self.path = path
        super().__init__(PSEM_7002_INPUT_FILE_INVALID, f"cannot read '{path}': {reason}")


class ArgumentValueError(SemanticsError):
    """Raised when an option value is out of range."""

    def __init__(self, option: str, value: object, reason: str) -> None:
        self.option = option
        self.value = value
        super().__init__(PSEM_7003_ARGUMENT_INVALID, f"{option} {value}: {reason}")


@dataclass
class Outcome:
    """What a command handler hands back to :func:`main`.

    Attributes:
        exit_code: Process exit code.
        result: The JSON result payload.
        text: Plain-text rendering, when it differs from the JSON payload.
        domain: Domain the command ran on, for the config digest.
        counters: Resource counters.
    """

    exit_code: int
    result: Any
    text: str | None = None
    domain: DomainConfig | None = None
    counters: RunCounters = field(default_factory=RunCounters)


# ---------------------------------------------------------------------------
# Input helpers
# ---------------------------------------------------------------------------


def _read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except OSError as exc:
        raise InputFileError(path, exc.strerror or str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise InputFileError(path, f"invalid JSON ({exc.msg}, line {exc.lineno})") from exc


def _base_domain(args: argparse.Namespace) -> DomainConfig:
    if not args.config:
        return get_config().default_domain()
    try:
        return DomainConfig.model_validate(_read_json(args.config))
    except ValidationError as exc:
        raise InputFileError(args.config, str(exc)) from exc


def _grammar(args: argparse.Namespace) -> tuple[Rtg, str]:
    try:
        g = load_grammar(args.grammar)
    except OSError as exc:
        raise InputFileError(args.grammar, exc.strerror or str(exc)) from exc
    return g, g.require(args.nonterminal)


def _state_names(obj: Any) -> set[str]:
    """Variable names mentioned by the states inside a JSON document."""
    names: set[str] = set()
    if isinstance(obj, list):
        for item in obj:
            names |= _state_names(item)
    elif isinstance(obj, dict):
        if "entries" in obj:
            return _state_names(obj["entries"])
        if "input" in obj or "output" in obj:
            return _state_names([obj.get("input"), obj.get("output")])
        h = obj.get("h", {}) if {"h", "e_t", "b_t"} & set(obj) else obj
        if isinstance(h, dict):
            names |= {k for k in h if isinstance(k, str)}
    return names


def _domain_for(
    args: argparse.Namespace, g: Rtg, nonterminals: Iterable[str], inputs: Any = None
) -> StateDomain:
    names: set[str] = set()
    for n in nonterminals:
        names |= grammar_vars(g, n)
    return StateDomain(_base_domain(args).with_variables(names | _state_names(inputs)))


def _engine(args: argparse.Namespace) -> EngineKind:
    return EngineKind(args.engine) if args.engine else EngineKind.COMPOSITIONAL


def _depth(args: argparse.Namespace) -> int:
    return args.depth if args.depth is not None else get_config().default_depth


def _outcome_json(domain: StateDomain, o: State | Divergence) -> Any:
    return o.value if isinstance(o, Divergence) else domain.state_to_json(o)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_enumerate(args: argparse.Namespace) -> Outcome:
    """List the programs of a nonterminal up to the derivation depth."""
    g, n = _grammar(args)
    base = _base_domain(args)
    depth = _depth(args)
    terms = [pretty_print(t) for t in enumerate_programs(g, n, depth, base.caps.max_programs)]
    result = {"nonterminal": n, "depth": depth, "count": len(terms), "terms": terms}
    return Outcome(
        EXIT_OK,
        result,
        text="\n".join(terms),
        domain=base,
        counters=RunCounters(programs_enumerated=len(terms)),
    )


def cmd_semantics(args: argparse.Namespace) -> Outcome:
    """Denotation of a nonterminal on the inputs of a JSON file."""
    g, n = _grammar(args)
    raw = _read_json(args.inputs)
    if not isinstance(raw, list):
        raise InputFileError(args.inputs, "expected a JSON list of states or vectors")
    domain = _domain_for(args, g, [n], raw)
    mode = SemanticsMode(args.mode)
    runner = SemanticsRunner(g, domain, _engine(args), args.depth)
    result: dict[str, Any] = {"nonterminal": n, "mode": mode.value}
    if mode is SemanticsMode.AWARE:
        states = [domain.state_from_json(o) for o in raw]
        member = FamilyMember(n, g, n)
        sem = SemanticsId(mode, _engine(args), args.depth)
        result["tables"] = denotation_table(sem, member, states, domain)
    elif mode.is_vector:
        vectors = [domain.vector_from_json(o) for o in raw]
        outs: set[DVState] = set()
        for v in vectors:
            if v.diverges and not mode.is_green:
                continue
            outs |= runner.vector(n, v, green=mode.is_green)
        answers = reduce(outs) if mode.is_green else frozenset(outs)
        result["outputs"] = [domain.vector_to_json(u) for u in sorted_vectors(answers)]
    else:
        collected: set[State | Divergence] = set()
        for sigma in (domain.state_from_json(o) for o in raw):
            collected |= runner.agnostic(n, sigma, green=mode.is_green)
        result["outputs"] = [_outcome_json(domain, o) for o in sorted_outcomes(collected)]
    return Outcome(EXIT_OK, result, domain=domain.config, counters=runner.counters())


def cmd_check(args: argparse.Namespace) -> Outcome:
    """Decide a triple file, optionally through a grammar split."""
    triple = load_triple(args.triple)
    if args.engine:
        triple = dataclasses.replace(triple, engine=EngineKind(args.engine))
    if args.depth is not None:
        triple = dataclasses.replace(triple, depth=args.depth)
    config = get_config()
    domain = triple_domain(triple, _base_domain(args))
    result: dict[str, Any] = {"triple": triple_to_json(triple)}
    if args.split:
        parts = args.split.split(",")
        split = (parts[0], parts[1] if len(parts) > 1 else None)
        verdict = grmdisj_check(
            triple, split, domain, config.pred_max_len, config.max_pred_vectors
        )
        result.update(verdict.as_dict(domain))
        holds = verdict.holds
    else:
        single = check_triple(triple, domain, config.pred_max_len, config.max_pred_vectors)
        result.update(single.as_dict(domain))
        holds = single.holds
    return Outcome(EXIT_OK if holds else EXIT_VIOLATED, result, domain=domain.config)


def cmd_pbe(args: argparse.Namespace) -> Outcome:
    """Decide whether a set of input/output examples is unrealizable."""
    g, n = _grammar(args)
    raw = _read_json(args.examples)
    if not isinstance(raw, list) or not all(
        isinstance(e, dict) and "input" in e and "output" in e for e in raw
    ):
        raise InputFileError(args.examples, "expected a list of {\"input\", \"output\"} objects")
    domain = _domain_for(args, g, [n], raw)
    examples = [
        (domain.state_from_json(e["input"]), domain.state_from_json(e["output"])) for e in raw
    ]
    verdict = pbe_unrealizable(g, n, examples, domain, _engine(args), args.depth)
    result = {"nonterminal": n, "unrealizable": verdict.holds, **verdict.as_dict(domain)}
    code = EXIT_OK if verdict.holds else EXIT_VIOLATED
    return Outcome(code, result, domain=domain.config)


def cmd_gadget(args: argparse.Namespace) -> Outcome:
    """Print the loop gadget for ``v`` and ``u``; ``--check`` evaluates its iff-property."""
    g, n = _grammar(args)
    raw = _read_json(args.vectors)
    if not isinstance(raw, dict) or not {"v", "u"} <= set(raw):
        raise InputFileError(args.vectors, "expected an object with 'v' and 'u' lists")
    base = _base_domain(args).with_variables(_state_names([raw["v"], raw["u"]]))
    domain = StateDomain(gadget_domain(base, g, n, args.counter))
    v = domain.vector_from_json(raw["v"]).entries
    u = domain.vector_from_json(raw["u"]).entries
    gadget = build_gadget(g, n, v, u, domain, args.counter)
    text = format_grammar(gadget.grammar)
    result: dict[str, Any] = {
        "nonterminal": gadget.nonterminal,
        "counter": gadget.counter,
        "length": gadget.length,
        "grammar": text,
    }
    code = EXIT_OK
    if args.check:
        outcome = check_gadget(g, n, v, u, domain, _depth(args), gadget.counter)
        result["check"] = outcome.as_dict()
        code = EXIT_OK if outcome.agrees else EXIT_VIOLATED
        return Outcome(code, result, domain=domain.config)
    return Outcome(code, result, text=text.rstrip("\n"), domain=domain.config)


def cmd_granularity(args: argparse.Namespace) -> Outcome:
    """Look for a pair of nonterminals that refutes ``coarse`` being coarser than ``fine``."""
    g, _ = _grammar(args)
    names = [g.require(name.strip()) for name in args.family.split(",") if name.strip()]
    domain = _domain_for(args, g, names)
    engine = _engine(args)
    family = [FamilyMember(name, g, name) for name in names]
    result = refines_on_family(
        family,
        SemanticsId(SemanticsMode(args.fine), engine, args.depth),
        SemanticsId(SemanticsMode(args.coarse), engine, args.depth),
        domain,
        probe_len=args.probe_len or get_config().probe_vector_len,
    )
    code = EXIT_OK if result.ok else EXIT_VIOLATED
    return Outcome(code, result.as_dict(), domain=domain.config)


def cmd_replicate(args: argparse.Namespace) -> Outcome:
    """Run one replication suite, or all of them."""
    results = get_default_registry().run(args.suite, args.samples, args.seed)
    passed = all(r.passed for r in results)
    payload = {"passed": passed, "suites": [r.model_dump(mode="json") for r in results]}
    return Outcome(EXIT_OK if passed else EXIT_VIOLATED, payload, domain=_base_domain(args))


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_MODES = [m.value for m in SemanticsMode]
_ENGINES = [e.value for e in EngineKind]


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Domain config JSON (range, tracked_vars, caps).")
    common.add_argument("--engine", choices=_ENGINES, help="Engine (default: compositional).")
    common.add_argument("--depth", type=int, help="Derivation depth for enumeration.")
    common.add_argument("--json", action="store_true", help="Print the full run report.")
    common.add_argument("--save", action="store_true", help="Save the run report.")
    common.add_argument("--timing", action="store_true", help="Include wall time.")
    return common


def build_parser() -> argparse.ArgumentParser:
    """The ``progset`` argument parser."""
    parser = argparse.ArgumentParser(
        prog="progset",
        description="Semantics of sets of programs defined by regular tree grammars.",
    )
    parser.add_argument(
        "--print-config", action="store_true", help="Print the effective settings and exit."
    )
    parser.add_argument("--log-level", help="Override PSEM_LOG_LEVEL.")
    common = _common_options()
    sub = parser.add_subparsers(dest="command")

    def command(
        name: str, handler: Callable[[argparse.Namespace], Outcome], help_text: str
    ) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    def grammar_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("grammar", help="Grammar file.")
        p.add_argument("--nonterminal", "-n", help="Nonterminal (default: start symbol).")

    p = command("enumerate", cmd_enumerate, "list programs up to a depth")
    grammar_args(p)

    p = command("semantics", cmd_semantics, "denotation on a set of inputs")
    grammar_args(p)
    p.add_argument("inputs", help="JSON list of states (or vectors for vector modes).")
    p.add_argument("--mode", choices=_MODES, default=SemanticsMode.AGNOSTIC_YELLOW.value)

    p = command("check", cmd_check, "decide a triple file")
    p.add_argument("triple", help="Triple JSON file.")
    p.add_argument("--split", help="Grammar-disjunction halves 'N1,N2' (or 'N1').")

    p = command("pbe", cmd_pbe, "decide unrealizability of examples")
    grammar_args(p)
    p.add_argument("examples", help="JSON list of {\"input\": state, \"output\": state}.")

    p = command("gadget", cmd_gadget, "build the loop gadget for v and u")
    grammar_args(p)
    p.add_argument("vectors", help="JSON object {\"v\": [...], \"u\": [...]}.")
    p.add_argument("--counter", help="Counter variable (default: a fresh name).")
    p.add_argument("--check", action="store_true", help="Evaluate the iff-property.")

    p = command("granularity", cmd_granularity, "compare two semantics on a family")
    grammar_args(p)
    p.add_argument("--family", required=True, help="Comma-separated nonterminals.")
    p.add_argument("--fine", choices=_MODES, required=True)
    p.add_argument("--coarse", choices=_MODES, required=True)
    p.add_argument("--probe-len", type=int, help="Vector probe length.")

    p = command("replicate", cmd_replicate, "run replication suites")
    p.add_argument("--suite", default="all", help="Suite name or 'all'.")
    p.add_argument("--samples", type=int, help="Sample count for randomized suites.")
    p.add_argument("--seed", type=int, default=0, help="Random seed.")
    return parser


def _echo(args: argparse.Namespace) -> dict[str, Any]:
    skip = {"handler", "print_config", "log_level", "json", "save", "timing"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _check_arguments(args: argparse.Namespace) -> None:
    for option in ("depth", "probe_len", "samples"):
        value = getattr(args, option, None)
        if value is not None and value < 1:
            flag = "--" + option.replace("_", "-")
            raise ArgumentValueError(flag, value, "must be at least 1")


def _failure(code: int, exc: SemanticsError) -> Outcome:
    error: dict[str, Any] = {"code": exc.error_code, "message": exc.message}
    if isinstance(exc, GrammarValidationError):
        error["violations"] = [str(v) for v in exc.violations]
    return Outcome(code, {"error": error})


def _dispatch(args: argparse.Namespace, config: SemanticsConfig) -> int:
    started = time.perf_counter()
    try:
        _check_arguments(args)
        outcome = args.handler(args)
    except ResourceLimitError as exc:
        logger.warning("Resource cap hit", extra={"extra_data": {"error": str(exc)}})
        print(f"error: {exc}", file=sys.stderr)
        outcome = _failure(EXIT_RESOURCE, exc)
    except SemanticsError as exc:
        logger.error("Command failed", extra={"extra_data": {"error": str(exc)}})
        print(f"error: {exc}", file=sys.stderr)
        outcome = _failure(EXIT_INPUT_ERROR, exc)

    counters = outcome.counters
    if args.timing:
        counters = counters.model_copy(
            update={"wall_time_s": round(time.perf_counter() - started, 6)}
        )
    domain = outcome.domain or config.default_domain()
    engine = args.engine or EngineKind.COMPOSITIONAL.value
    report = RunReport(
        command=args.command,
        arguments=_echo(args),
        config_digest=config_digest(domain, engine, args.depth),
        exit_code=outcome.exit_code,
        result=outcome.result,
        counters=counters,
    )
    if args.json:
        print(render_report(report, timing=args.timing))
    elif outcome.text is not None:
        if outcome.text:
            print(outcome.text)
    else:
        print(canonical_json(outcome.result))
    if args.save:
        path = ReportStore(Path(config.reports_dir)).save(report)
        print(f"saved {path}", file=sys.stderr)
    logger.info(
        "Command finished",
        extra={"extra_data": {"command": args.command, "exit_code": outcome.exit_code}},
    )
    return outcome.exit_code


def main(argv: list[str] | None = None) -> int:
    """Run one ``progset`` command and return its exit code."""
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)

    config = get_config()
    setup_logging(level=args.log_level or config.log_level, log_dir=config.log_dir)

    if args.print_config:
        settings = {
            "settings": config.model_dump(mode="json"),
            "domain": config.default_domain().model_dump(mode="json"),
        }
        print(canonical_json(settings))
        return EXIT_OK
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_INPUT_ERROR

    with run_context(args.command):
        return _dispatch(args, config)


if __name__ == "__main__":
    sys.exit(main())
