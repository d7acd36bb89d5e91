"""Verification reports, requests and suite results."""
import hashlib
import json
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..core.spaces import CoefficientMode
from .algebra import ElemModel, TermModel

Verdict = Literal["pass", "fail", "obstructed", "error"]
Identity = Literal["wu", "grr", "vanishing", "transfer", "degree", "bockstein"]


def canonical_json(model: BaseModel) -> str:
    """Stable serialization: sorted keys, two-space indent, trailing newline."""
    return json.dumps(model.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


class InstanceKey(BaseModel):
    """Identity plus instance parameters; orders and merges suite results."""
    model_config = ConfigDict(frozen=True)

    identity: str
    params: Dict[str, Any] = Field(default_factory=dict)

    def digest(self) -> str:
        payload = json.dumps({"identity": self.identity, "params": self.params}, sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()

    def __hash__(self):
        return hash(self.digest())


class CheckRequest(BaseModel):
    """Everything needed to re-run one check.

    ``embedding`` and ``map`` are catalog spec strings (``linear:1:2``, ``structure:2:2``,
    ``projection:1:1``, ``cover:2``, ``identity:P2``); ``a`` is a class of the source ring.
    """
    identity: Identity
    prime: int
    char_p: Optional[bool] = None
    mode: CoefficientMode = CoefficientMode.PURE_POINT
    op: Optional[str] = None
    embedding: Optional[str] = None
    map: Optional[str] = None
    a: Optional[List[TermModel]] = None
    s: Optional[int] = None
    n: Optional[int] = None
    expect: Literal["verdict", "not_well_defined"] = "verdict"

    def instance(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True, exclude={"identity", "expect"})

    def key(self) -> InstanceKey:
        return InstanceKey(identity=self.identity, params=self.instance())


class Report(BaseModel):
    """Outcome of one check, with both sides of the identity and the symbolic trace."""
    identity: str
    instance: Dict[str, Any] = Field(default_factory=dict)
    key: str = ""
    request: Optional[CheckRequest] = None
    lhs: Optional[str] = None
    rhs: Optional[str] = None
    lhs_value: Optional[ElemModel] = None
    rhs_value: Optional[ElemModel] = None
    verdict: Verdict
    warnings: List[str] = Field(default_factory=list)
    trace: List[str] = Field(default_factory=list)
    checks: Dict[str, bool] = Field(default_factory=dict)
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def met_expectation(self) -> bool:
        """Passed, or obstructed where the request expects the missing Todd genus."""
        if self.request is not None and self.request.expect == "not_well_defined":
            return self.verdict == "obstructed"
        return self.verdict == "pass"


class SuiteSummary(BaseModel):
    total: int = 0
    passed: int = 0
    failed: int = 0
    obstructed: int = 0
    errors: int = 0
    unexpected: int = 0


class SuiteResult(BaseModel):
    """A full suite run; reports are sorted by identity and instance key."""
    prime: int
    max_dim: int
    char_p: bool = False
    summary: SuiteSummary = Field(default_factory=SuiteSummary)
    reports: List[Report] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.summary.unexpected == 0
