import pytest

from thomcalc.config import features
from thomcalc.core.builders import resolve_embedding, resolve_map
from thomcalc.core.errors import NotWellDefined, UsageError
from thomcalc.models import CheckRequest, Report, canonical_json
from thomcalc.operations import steenrod_total
from thomcalc.verify import (
    check_degree_reasons,
    check_grr,
    check_vanishing_on_thom,
    check_wu,
    class_terms,
    classifying_evenness,
    execute,
    merge_reports,
    re_verify,
    read_class,
    run_suite,
    suite_requests,
    summarize,
)


def test_wu_on_line_in_plane():
    """P1 in P2 at l = 3: both sides are u, and the closed product form is flagged."""
    embedding = resolve_embedding("linear:1:2", 3)
    report = check_wu(embedding, steenrod_total("qmodl", 3), embedding.source.ring.one())
    assert report.verdict == "pass"
    assert report.lhs == "u"
    assert report.rhs == "u"
    assert any("u + 2*u^2" in w for w in report.warnings)
    assert "itd(N) = 1" in report.trace


def test_wu_without_discrepancy_warnings():
    embedding = resolve_embedding("linear:1:2", 3)
    features.set_discrepancy_warnings(False)
    try:
        report = check_wu(embedding, steenrod_total("qmodl", 3), embedding.source.ring.one())
    finally:
        features.set_discrepancy_warnings(True)
    assert report.warnings == []


def test_wu_in_characteristic():
    embedding = resolve_embedding("linear:1:3", 3)
    u = embedding.source.ring.gen("u")
    report = check_wu(embedding, steenrod_total("qmodp", 3), u)
    assert report.passed
    assert report.checks == {"sides_agree": True, "itd_is_top_chern_power": True}


def test_grr_for_plane_to_point():
    f = resolve_map("structure:2:2", 2)
    op = steenrod_total("qmodl", 2)
    u = f.source.ring.gen("u")
    assert "td(TP2) = 1 + u" in check_grr(f, op, u).trace
    report = check_grr(f, op, u)
    assert (report.lhs, report.rhs, report.verdict) == ("0", "0", "pass")
    report = check_grr(f, op, u ** 2)
    assert (report.lhs, report.rhs, report.verdict) == ("1", "1", "pass")


def test_grr_without_todd_genus_is_obstructed():
    f = resolve_map("structure:1:1", 3)
    with pytest.raises(NotWellDefined):
        check_grr(f, steenrod_total("qmodp", 3), f.source.ring.one())
    report = execute(CheckRequest(identity="grr", prime=3, char_p=True, op="qmodp", map="structure:1:1",
                                  expect="not_well_defined"))
    assert report.verdict == "obstructed"
    assert report.met_expectation()
    assert "Todd genus" in report.error


def test_vanishing_on_thom_class():
    report = check_vanishing_on_thom(resolve_embedding("linear:1:3", 2), steenrod_total("qmodl", 2))
    assert report.passed
    assert report.checks["classifying_evenness"]
    assert classifying_evenness(0, 2, 3) is None
    assert not any(classifying_evenness(2, 1, 3).values())


@pytest.mark.parametrize("prime", [2, 3, 5])
@pytest.mark.parametrize("s", [1, 2, 3, 4])
@pytest.mark.parametrize("n", range(7))
def test_degree_reasons_grid(n, s, prime):
    report = check_degree_reasons(n, s, prime)
    assert report.passed
    assert report.lhs.endswith(", -1)")


def test_degree_reasons():
    report = check_degree_reasons(3, 1, 3)
    assert report.passed
    assert report.lhs.endswith(", -1)")
    assert any("= -1" in line for line in report.trace)
    with pytest.raises(UsageError):
        check_degree_reasons(3, 0, 3)


def test_transfer_along_cover():
    report = execute(CheckRequest(identity="transfer", prime=3, op="qmodl", map="cover:2", embedding="identity:P1"))
    assert report.verdict == "pass"
    assert report.checks["fundamental_class_pushforward"]
    assert report.instance["map"] == "cover:2"


def test_transfer_with_degree_divisible_by_prime():
    report = execute(CheckRequest(identity="transfer", prime=2, op="qmodl", map="cover:2", embedding="identity:P1"))
    assert report.verdict == "fail"
    assert report.checks["degree_invertible"] is False
    assert report.warnings


def test_bockstein_commutes_with_pushforward():
    report = execute(CheckRequest(identity="bockstein", prime=3, map="projection:1:1"))
    assert report.passed
    assert any(line.startswith("projection P1") for line in report.trace)


def test_request_classes():
    ring = resolve_embedding("linear:1:2", 3).source.ring
    u = ring.gen("u")
    x = ring.one() + u.scale(2)
    assert read_class(ring, class_terms(x)) == x
    assert read_class(ring, None) == ring.one()


def test_usage_errors_propagate():
    with pytest.raises(UsageError):
        execute(CheckRequest(identity="wu", prime=3, embedding="linear:1:2"))


def test_reports_reproduce():
    request = CheckRequest(identity="wu", prime=3, op="qmodl", embedding="linear:1:2")
    report = execute(request)
    assert report.request == request
    assert re_verify(report)
    reloaded = Report.model_validate_json(canonical_json(report))
    assert canonical_json(reloaded) == canonical_json(report)
    tampered = report.model_copy(update={"lhs": "u^2"})
    assert not re_verify(tampered)


def test_merge_orders_and_deduplicates():
    first = execute(CheckRequest(identity="degree", prime=3, n=1, s=1))
    second = execute(CheckRequest(identity="degree", prime=3, n=2, s=1))
    wu = execute(CheckRequest(identity="wu", prime=3, op="qmodl", embedding="linear:0:1"))
    merged = merge_reports([second, wu, first, second])
    assert len(merged) == 3
    assert [r.identity for r in merged] == ["degree", "degree", "wu"]
    assert merged == merge_reports(reversed(merged))
    summary = summarize(merged)
    assert (summary.total, summary.passed, summary.unexpected) == (3, 3, 0)


def test_suite_requests_cover_every_identity():
    identities = {r.identity for r in suite_requests(3, 2)}
    assert identities == {"wu", "grr", "vanishing", "transfer", "degree", "bockstein"}


@pytest.mark.parametrize("prime,max_dim", [(3, 2), (2, 4), (3, 4), (5, 4)])
def test_run_suite(prime, max_dim):
    result = run_suite(prime, max_dim, jobs=2)
    assert result.ok, [(r.identity, r.instance, r.verdict, r.error) for r in result.reports if not r.met_expectation()]
    assert result.summary.obstructed == 2
    assert (result.summary.failed, result.summary.errors) == (0, 0)
    assert result.summary.total == len(result.reports)


def test_run_suite_needs_a_dimension():
    with pytest.raises(UsageError):
        run_suite(3, 0)
