"""Check requests, the full verification suite and report re-verification."""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, Optional, Tuple

from ..core.builders import parse_space, resolve_embedding, resolve_map
from ..core.errors import NotWellDefined, ThomcalcError, UsageError
from ..core.pushforward import ProperMap
from ..core.ring import Elem, RingCtx
from ..core.spaces import ThomModule, identity_embedding
from ..models.algebra import TermModel
from ..models.reports import CheckRequest, Report, SuiteResult, SuiteSummary, canonical_json
from ..operations.presets import steenrod_total
from .checkers import (
    check_bockstein_pushforward,
    check_degree_reasons,
    check_grr,
    check_resolution_transfer,
    check_vanishing_on_thom,
    check_wu,
)

logger = logging.getLogger("thomcalc")

MAX_PIECE = 4


def class_terms(x: Elem) -> List[TermModel]:
    ring = x.owner
    return [
        TermModel(monomial={n: e for n, e in zip(ring.names, exps) if e}, theta=theta, coefficient=c)
        for (exps, theta), c in x.items()
    ]


def read_class(ring: RingCtx, terms: Optional[List[TermModel]]) -> Elem:
    """The class named by ``terms``; the unit when none are given."""
    if terms is None:
        return ring.one()
    return ring.element({(ring.exponents(t.monomial), t.theta): t.coefficient for t in terms})


def transfer_modules(f: ProperMap, support_spec: str, request: CheckRequest) -> Tuple[ThomModule, ThomModule]:
    """Support of the source and its image support: the same module for self-maps, the
    identity supports for finite maps between distinct spaces."""
    support = resolve_embedding(support_spec, request.prime, request.mode).module
    if f.source is f.target:
        return support, support
    if support.embedding is identity_embedding(f.source):
        return support, identity_embedding(f.target).module
    raise UsageError(f"no image support is known for {support_spec} along {f.name}")


def _run(request: CheckRequest) -> Report:
    p, mode = request.prime, request.mode
    op = steenrod_total(request.op, p, request.char_p) if request.op else None
    if request.identity in ("wu", "grr", "vanishing", "transfer") and op is None:
        raise UsageError(f"{request.identity} check needs an operation")
    if request.identity == "wu":
        embedding = resolve_embedding(request.embedding or "", p, mode)
        return check_wu(embedding, op, read_class(embedding.source.ring, request.a))
    if request.identity == "grr":
        f = resolve_map(request.map or "", p, mode)
        return check_grr(f, op, read_class(f.source.ring, request.a))
    if request.identity == "vanishing":
        return check_vanishing_on_thom(resolve_embedding(request.embedding or "", p, mode), op, request.s)
    if request.identity == "transfer":
        f = resolve_map(request.map or "", p, mode)
        support, image = transfer_modules(f, request.embedding or f"identity:{f.source.name}", request)
        return check_resolution_transfer(f, op, support, image)
    if request.identity == "degree":
        if request.n is None or request.s is None:
            raise UsageError("degree check needs n and s")
        return check_degree_reasons(request.n, request.s, p)
    f = resolve_map(request.map or "", p, mode)
    return check_bockstein_pushforward(f, read_class(f.source.ring, request.a))


def execute(request: CheckRequest) -> Report:
    """Run one request. A missing Todd genus becomes an ``obstructed`` report; usage errors
    propagate."""
    try:
        report = _run(request)
    except NotWellDefined as e:
        logger.info(f"{request.identity} {request.instance()}: obstructed ({e})")
        report = Report(identity=request.identity, verdict="obstructed", error=str(e))
    return report.model_copy(update={
        "instance": request.instance(),
        "key": request.key().digest(),
        "request": request,
    })


def _execute_safely(request: CheckRequest) -> Report:
    try:
        return execute(request)
    except ThomcalcError as e:
        logger.error(f"{request.identity} {request.instance()}: {type(e).__name__}: {e}")
        return Report(identity=request.identity, instance=request.instance(), key=request.key().digest(),
                      request=request, verdict="error", error=f"{type(e).__name__}: {e}")


def _basis_classes(ring: RingCtx) -> List[List[TermModel]]:
    classes = []
    for _, monomials in sorted(ring.basis_table().items()):
        for exps in monomials:
            classes.append(class_terms(ring.monomial(exps)))
    return classes


def auxiliary_prime(prime: int) -> int:
    """Smallest prime different from ``prime``: the degree of the alteration model."""
    return 3 if prime == 2 else 2


def suite_requests(prime: int, max_dim: int) -> List[CheckRequest]:
    """Every request of the full suite for one prime."""
    requests: List[CheckRequest] = []
    linear = [(m, n) for n in range(1, max_dim + 1) for m in range(n)]
    ops = [("qmodl", False), ("qmodp", True)]

    for m, n in linear:
        source = parse_space(f"P{m}" if m else "pt", prime)
        for op, char_p in ops:
            for a in _basis_classes(source.ring):
                requests.append(CheckRequest(identity="wu", prime=prime, char_p=char_p, op=op,
                                             embedding=f"linear:{m}:{n}", a=a))
            requests.append(CheckRequest(identity="vanishing", prime=prime, char_p=char_p, op=op,
                                         embedding=f"linear:{m}:{n}"))

    maps = [f"structure:{n}:{n}" for n in range(1, max_dim + 1)]
    maps += [f"projection:{n}:{m}" for n in range(1, max_dim + 1) for m in range(1, max_dim + 1 - n)]
    for spec in maps:
        f = resolve_map(spec, prime)
        for a in _basis_classes(f.source.ring):
            requests.append(CheckRequest(identity="grr", prime=prime, op="qmodl", map=spec, a=a))
        requests.append(CheckRequest(identity="bockstein", prime=prime, map=spec, a=_basis_classes(f.source.ring)[-1]))
    requests.append(CheckRequest(identity="grr", prime=prime, char_p=True, op="qmodp", map="structure:1:1",
                                 expect="not_well_defined"))

    if max_dim >= 2:
        requests.append(CheckRequest(identity="transfer", prime=prime, op="qmodl", map="identity:P2",
                                     embedding="linear:1:2"))
        requests.append(CheckRequest(identity="transfer", prime=prime, char_p=True, op="qmodp", map="identity:P2",
                                     embedding="linear:1:2", expect="not_well_defined"))
        requests.append(CheckRequest(identity="bockstein", prime=prime, map="embedding:linear:1:2"))
    requests.append(CheckRequest(identity="transfer", prime=prime, op="qmodl", map=f"cover:{auxiliary_prime(prime)}",
                                 embedding="identity:P1"))
    requests.append(CheckRequest(identity="vanishing", prime=prime, op="identity", embedding="identity:P1"))

    for n in range(max_dim + 1):
        for s in range(1, MAX_PIECE + 1):
            requests.append(CheckRequest(identity="degree", prime=prime, n=n, s=s))
    return requests


def merge_reports(reports: Iterable[Report]) -> List[Report]:
    """Deterministic order: identity, then instance key; duplicates by key collapse."""
    merged = {}
    for report in reports:
        merged[(report.identity, report.key)] = report
    return [merged[k] for k in sorted(merged)]


def summarize(reports: List[Report]) -> SuiteSummary:
    summary = SuiteSummary(total=len(reports))
    for report in reports:
        if report.verdict == "pass":
            summary.passed += 1
        elif report.verdict == "fail":
            summary.failed += 1
        elif report.verdict == "obstructed":
            summary.obstructed += 1
        else:
            summary.errors += 1
        if not report.met_expectation():
            summary.unexpected += 1
    return summary


def run_requests(requests: List[CheckRequest], jobs: int = 1) -> List[Report]:
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_execute_safely, requests))
    else:
        reports = [_execute_safely(r) for r in requests]
    return merge_reports(reports)


def run_suite(prime: int, max_dim: int, jobs: int = 1) -> SuiteResult:
    """Run every check for ``prime`` on catalog instances up to dimension ``max_dim``."""
    if max_dim < 1:
        raise UsageError(f"--max-dim must be at least 1, got {max_dim}")
    requests = suite_requests(prime, max_dim)
    logger.info(f"Running {len(requests)} checks over F_{prime} up to dimension {max_dim} with {jobs} job(s)")
    reports = run_requests(requests, jobs)
    result = SuiteResult(prime=prime, max_dim=max_dim, summary=summarize(reports), reports=reports)
    logger.info(f"Suite over F_{prime}: {result.summary.passed}/{result.summary.total} passed, "
                f"{result.summary.obstructed} obstructed, {result.summary.unexpected} unexpected")
    return result


def rerun(report: Report) -> Report:
    """Re-execute the request recorded in ``report``."""
    if report.request is None:
        raise UsageError(f"report {report.key or report.identity} carries no request to re-run")
    return execute(report.request)


def re_verify(report: Report) -> bool:
    """True iff re-running reproduces the report byte for byte."""
    return canonical_json(rerun(report)) == canonical_json(report)


def re_verify_suite(result: SuiteResult) -> List[str]:
    """Keys of the reports that do not reproduce."""
    return [r.key for r in result.reports if r.request is not None and not re_verify(r)]
