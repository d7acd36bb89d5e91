"""The ``verify`` command, also installed as the standalone ``thomcalc_verify`` script.

A single check prints one report; ``verify all`` runs the full suite for the prime;
``--rerun FILE`` re-executes a saved report or suite result and compares the canonical
JSON byte for byte.
"""
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..core.builders import resolve_embedding, resolve_map
from ..core.errors import UsageError
from ..core.ring import Elem
from ..models import CheckRequest, Report, SuiteResult, canonical_json
from ..verify import class_terms, execute, re_verify, re_verify_suite, run_suite
from .expr import EvalContext, evaluate_text
from .output import emit

logger = logging.getLogger("thomcalc")

EXIT_OK = 0
EXIT_FAIL = 1

_NEEDS_OP = ("wu", "grr", "vanishing", "transfer")


def _source_class(args, session) -> Optional[List]:
    """The ``--a`` expression read in the source ring of the instance."""
    if args.a is None:
        return None
    if args.identity == "wu":
        ring = resolve_embedding(args.embedding, session.prime, session.mode).source.ring
    elif args.identity in ("grr", "bockstein"):
        ring = resolve_map(args.map, session.prime, session.mode).source.ring
    else:
        raise UsageError(f"--a has no meaning for {args.identity} checks")
    value = evaluate_text(args.a, EvalContext(ring, char_p=session.char_p))
    if not isinstance(value, Elem):
        raise UsageError("--a must be a class of the source ring")
    return class_terms(value)


def build_request(args, session) -> CheckRequest:
    identity = args.identity
    if identity in _NEEDS_OP and not args.op:
        raise UsageError(f"verify {identity} needs --op")
    if identity in ("wu", "vanishing") and not args.embedding:
        raise UsageError(f"verify {identity} needs --embedding")
    if identity in ("grr", "transfer", "bockstein") and not args.map:
        raise UsageError(f"verify {identity} needs --map")
    if identity == "degree" and (args.n is None or args.s is None):
        raise UsageError("verify degree needs --n and --s")
    embedding = args.support if identity == "transfer" else args.embedding
    return CheckRequest(
        identity=identity,
        prime=session.prime,
        char_p=session.char_p,
        mode=session.mode,
        op=args.op,
        embedding=embedding,
        map=args.map,
        a=_source_class(args, session),
        s=args.s,
        n=args.n,
    )


def _write(path: Optional[str], text: str) -> None:
    if path:
        Path(path).write_text(text)
        logger.info(f"Wrote {path}")


def _emit_result(args, model, summary: Dict[str, Any]) -> None:
    if args.format == "json":
        emit(model, "json")
    else:
        emit(summary, "text")


def _rerun(args) -> int:
    data = json.loads(Path(args.rerun).read_text())
    if "reports" in data:
        result = SuiteResult.model_validate(data)
        mismatches = re_verify_suite(result)
        payload = {"file": args.rerun, "reports": len(result.reports), "reproduced": not mismatches,
                   "mismatches": mismatches}
    else:
        report = Report.model_validate(data)
        reproduced = re_verify(report)
        payload = {"file": args.rerun, "reports": 1, "reproduced": reproduced,
                   "mismatches": [] if reproduced else [report.key]}
    emit(payload, args.format)
    return EXIT_OK if payload["reproduced"] else EXIT_FAIL


def verify(args, session) -> int:
    """Run ``verify`` for parsed arguments; the exit code reflects the verdicts."""
    if args.rerun:
        return _rerun(args)
    if args.identity == "all":
        result = run_suite(session.prime, args.max_dim, args.jobs)
        _write(args.output, canonical_json(result))
        summary = {
            "prime": result.prime,
            "max_dim": result.max_dim,
            "summary": result.summary.model_dump(),
            "unexpected": [f"{r.identity} {r.instance} -> {r.verdict}" for r in result.reports
                           if not r.met_expectation()],
        }
        _emit_result(args, result, summary)
        return EXIT_OK if result.ok else EXIT_FAIL
    report = execute(build_request(args, session))
    _write(args.output, canonical_json(report))
    _emit_result(args, report, report.model_dump(mode="json", exclude_none=True, exclude={"request", "lhs_value",
                                                                                           "rhs_value"}))
    return EXIT_OK if report.met_expectation() else EXIT_FAIL


def run():
    """Entry point for the ``thomcalc_verify`` script."""
    from .main import main
    sys.exit(main(["verify", *sys.argv[1:]]))
