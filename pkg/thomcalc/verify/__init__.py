"""Theorem checkers and the verification suite."""
from .checkers import (
    check_bockstein_pushforward,
    check_degree_reasons,
    check_grr,
    check_resolution_transfer,
    check_vanishing_on_thom,
    check_wu,
    classifying_evenness,
    closed_form_rhs,
)
from .suite import (
    class_terms,
    execute,
    merge_reports,
    re_verify,
    re_verify_suite,
    read_class,
    rerun,
    run_requests,
    run_suite,
    suite_requests,
    summarize,
)

__all__ = [
    "check_bockstein_pushforward",
    "check_degree_reasons",
    "check_grr",
    "check_resolution_transfer",
    "check_vanishing_on_thom",
    "check_wu",
    "classifying_evenness",
    "closed_form_rhs",
    "class_terms",
    "execute",
    "merge_reports",
    "re_verify",
    "re_verify_suite",
    "read_class",
    "rerun",
    "run_requests",
    "run_suite",
    "suite_requests",
    "summarize",
]
