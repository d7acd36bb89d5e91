"""Theorem checkers.

Each checker computes both sides of an identity through independent paths (the operation
path and the pushforward path) and returns a ``Report``. A failed identity is a verdict,
not an exception; a missing Todd genus raises ``NotWellDefined``.
"""
import logging
from typing import Any, Dict, List, Optional

from ..config.features import get_discrepancy_warnings, get_theta_flags
from ..core.chern import closed_form_inverse_todd, evaluate_genus, itd_discrepancy, todd_of_operation
from ..core.errors import UsageError
from ..core.pushforward import ProperMap, embed_pushforward, pushforward_supported
from ..core.ring import Elem, inverse
from ..core.spaces import EmbeddingData, Space, ThomModule, grassmannian
from ..models.algebra import ElemModel
from ..models.reports import InstanceKey, Report
from ..operations.action import (
    THETA_NOTE,
    apply_operation,
    apply_to_thom,
    bockstein,
    bockstein_trace,
    homological_degree_law,
    normal_inverse_todd,
    supported_graded_piece,
    touches_weight_unit,
    twisted_operation,
)
from ..operations.operation import Operation, OperationMode
from ..operations.presets import steenrod_total

logger = logging.getLogger("thomcalc")


def _report(identity: str, instance: Dict[str, Any], passed: bool, lhs=None, rhs=None, **fields) -> Report:
    report = Report(
        identity=identity,
        instance=instance,
        key=InstanceKey(identity=identity, params=instance).digest(),
        lhs=None if lhs is None else str(lhs),
        rhs=None if rhs is None else str(rhs),
        lhs_value=ElemModel.from_elem(lhs) if isinstance(lhs, Elem) else None,
        rhs_value=ElemModel.from_elem(rhs) if isinstance(rhs, Elem) else None,
        verdict="pass" if passed else "fail",
        **fields,
    )
    log = logger.info if passed else logger.warning
    log(f"{identity} {instance}: {report.verdict} (lhs={report.lhs}, rhs={report.rhs})")
    return report


def _theta_warnings(*values) -> List[str]:
    if get_theta_flags() and touches_weight_unit(*values):
        return [THETA_NOTE]
    return []


def _tangent_todd(op: Operation, space: Space) -> Elem:
    fitted = op.fitted(space.dimension)
    return evaluate_genus(todd_of_operation(fitted), space.require_tangent())


def check_wu(embedding: EmbeddingData, op: Operation, a: Elem) -> Report:
    """``phi(i_!(a)) = i_!(phi(a) * itd(N))``."""
    module = embedding.module
    instance = {"embedding": embedding.name, "op": op.label, "a": str(a)}
    pushed = embed_pushforward(embedding, a)
    lhs = apply_operation(op, pushed)
    itd = normal_inverse_todd(op, module)
    phi_a = apply_operation(op, a)
    rhs = embed_pushforward(embedding, phi_a * itd)
    trace = [
        f"i_!({a}) = {pushed}",
        f"phi(i_!(a)) = {lhs}",
        f"c(N) = {embedding.normal.total}",
        f"itd(N) = {itd}",
        f"phi(a) = {phi_a}",
        f"i_!(phi(a)*itd(N)) = {rhs}",
    ]
    warnings: List[str] = []
    checks: Dict[str, bool] = {"sides_agree": lhs == rhs}
    if op.mode == OperationMode.QMODP:
        top_power = embedding.normal.top() ** (op.prime - 1)
        checks["itd_is_top_chern_power"] = itd == top_power
        trace.append(f"c_top(N)^(p-1) = {top_power}")
    elif get_discrepancy_warnings() and op.mode in (OperationMode.QMODL, OperationMode.PMOTIVIC) and op.prime > 2:
        comparison = itd_discrepancy(op.fitted(embedding.source.dimension), embedding.normal)
        if comparison.differs:
            closed_rhs = closed_form_rhs(embedding, op, a)
            warnings.append(
                f"closed product form of itd(N) is {comparison.closed_form}, the definition gives "
                f"{comparison.definitional}; with the closed form the right side would be {closed_rhs}"
            )
    warnings.extend(_theta_warnings(a, lhs, rhs))
    return _report("wu", instance, all(checks.values()), lhs, rhs, warnings=warnings, trace=trace, checks=checks)


def check_grr(f: ProperMap, op: Operation, a: Elem) -> Report:
    """``phi(f_!(a)) * td(TY) = f_!(phi(a) * td(TX))``.

    Raises:
        NotWellDefined: if ``op`` has no Todd genus
    """
    instance = {"map": f.name, "op": op.label, "a": str(a)}
    td_source = _tangent_todd(op, f.source)
    td_target = _tangent_todd(op, f.target)
    pushed = f(a)
    lhs = apply_operation(op, pushed) * td_target
    phi_a = apply_operation(op, a)
    rhs = f(phi_a * td_source)
    trace = [
        f"td(T{f.source.name}) = {td_source}",
        f"td(T{f.target.name}) = {td_target}",
        f"f_!({a}) = {pushed}",
        f"phi(f_!(a))*td(T{f.target.name}) = {lhs}",
        f"phi(a)*td(T{f.source.name}) = {phi_a * td_source}",
        f"f_!(phi(a)*td(T{f.source.name})) = {rhs}",
    ]
    return _report("grr", instance, lhs == rhs, lhs, rhs, warnings=_theta_warnings(a, lhs, rhs), trace=trace,
                   checks={"sides_agree": lhs == rhs})


def _piece_range(module: ThomModule, prime: int) -> List[int]:
    c = module.codimension
    top = module.ambient.ring.top_degree
    return [s for s in range(top + 1) if 2 * c + 2 * s * (prime - 1) <= top]


def classifying_evenness(codimension: int, dimension: int, prime: int) -> Optional[Dict[str, int]]:
    """Basis sizes of the odd bidegrees of ``Gr(c, c + max(dim X, 1))``; None when ``c = 0``."""
    if codimension == 0:
        return None
    space = grassmannian(codimension, codimension + max(dimension, 1), prime)
    return {f"{i},{j}": size for (i, j), size in space.odd_bidegree_dimensions().items()}


def check_vanishing_on_thom(embedding: EmbeddingData, op: Operation, s: Optional[int] = None) -> Report:
    """``beta(phi^s(tau)) = 0``, plus the evenness of the classifying model."""
    module = embedding.module
    tau = module.tau()
    instance = {"embedding": embedding.name, "op": op.label, "s": "all" if s is None else s}
    total = apply_to_thom(op, tau)
    trace = [f"phi(tau) = {total}"]
    zero = True
    for piece_index in ([s] if s is not None else _piece_range(module, op.prime)):
        piece = supported_graded_piece(total, module.shift, piece_index, op.prime)
        value = bockstein(piece)
        trace.append(f"beta(phi^{piece_index}(tau)) = beta({piece}) = {value}")
        trace.extend(bockstein_trace(piece))
        zero = zero and value.is_zero()
    checks = {"bockstein_vanishes": zero}
    dims = classifying_evenness(module.codimension, embedding.source.dimension, op.prime)
    if dims is None:
        trace.append("codimension 0: tau = 1 and no classifying model is scanned")
    else:
        checks["classifying_evenness"] = not any(dims.values())
        trace.append(f"odd bidegrees of Gr({module.codimension},{module.codimension + max(embedding.source.dimension, 1)}): "
                     f"{len(dims)} scanned, total dimension {sum(dims.values())}")
    return _report("vanishing", instance, all(checks.values()), "0" if zero else "nonzero", "0",
                   trace=trace, checks=checks, warnings=_theta_warnings(total))


def check_resolution_transfer(f: ProperMap, op: Operation, support: ThomModule, image: ThomModule) -> Report:
    """``beta(U(tau')) = deg(f)^-1 * f_!(beta(U(tau))) = 0`` for a generically finite ``f``.

    Raises:
        NotWellDefined: if ``op`` has no Todd genus, so no twisted operation exists
    """
    instance = {"map": f.name, "op": op.label, "support": support.embedding.name, "image": image.embedding.name,
                "degree": f.degree}
    prime = op.prime
    u_source = twisted_operation(op, support.ambient)
    u_target = twisted_operation(op, image.ambient)
    tau, tau_image = support.tau(), image.tau()

    pushed_tau = pushforward_supported(f, tau, image)
    invertible = f.degree % prime != 0
    checks = {
        "fundamental_class_pushforward": pushed_tau == tau_image.scale(f.degree),
        "degree_invertible": invertible,
    }
    trace = [f"f_!(tau) = {pushed_tau} (degree {f.degree})"]

    beta_source = bockstein(u_source(tau))
    trace.append(f"beta(U(tau)) = {beta_source}")
    transferred = pushforward_supported(f, beta_source, image)
    if invertible:
        transferred = transferred.scale(inverse(f.degree, prime))
        trace.append(f"deg^-1 * f_!(beta(U(tau))) = {transferred}")
    else:
        trace.append(f"degree {f.degree} vanishes mod {prime}: f_!(tau) = {pushed_tau} carries no information")

    u_image = u_target(tau_image)
    lhs = bockstein(u_image)
    trace.append(f"U(tau') = {u_image}")
    trace.append(f"beta(U(tau')) = {lhs}")
    checks["transfer_vanishes"] = transferred.is_zero()
    checks["direct_vanishes"] = lhs.is_zero()
    warnings = [] if invertible else [f"degree {f.degree} is not a unit mod {prime}; the transfer argument does not apply"]
    return _report("transfer", instance, all(checks.values()), lhs, transferred, trace=trace, checks=checks,
                   warnings=warnings + _theta_warnings(u_image))


def check_degree_reasons(n: int, s: int, prime: int) -> Report:
    """``beta P_s`` on ``H_{2n}(X, n)`` lands in a higher Chow group of negative simplicial index."""
    if s < 1:
        raise UsageError(f"degree argument needs s >= 1, got {s}")
    if n < 0:
        raise UsageError(f"dimension must be nonnegative, got {n}")
    op = steenrod_total(OperationMode.PMOTIVIC, prime)
    instance = {"n": n, "s": s, "prime": prime}
    i, j = homological_degree_law(op, (2 * n, n), s, n)
    i -= 1
    index = i - 2 * j
    trace = [
        f"P_{s}: H_{2 * n}(X, {n}) -> H_{i + 1}(X, {j})",
        f"beta: H_{i + 1}(X, {j}) -> H_{i}(X, {j}) = CH_{j}(X, {index})",
        f"simplicial index {i} - 2*{j} = {index}",
    ]
    checks = {"negative_index": index < 0}
    return _report("degree", instance, index < 0, f"CH_{j}(X, {index})", "0", trace=trace, checks=checks)


def check_bockstein_pushforward(f: ProperMap, a: Elem) -> Report:
    """``f_!(beta(a)) = beta(f_!(a))`` with the Leibniz expansion of both factorization steps."""
    instance = {"map": f.name, "a": str(a)}
    embedded = embed_pushforward(f.embedding, a)
    lhs = f(bockstein(a))
    rhs = bockstein(f(a))
    trace = ["source: " + line for line in bockstein_trace(a)]
    trace.append(f"embedding {f.embedding.name}: beta(tau*({a})) = beta(tau)*({a}) + tau*beta({a}) = 0")
    trace.extend("ambient: " + line for line in bockstein_trace(embedded))
    if f.n:
        trace.append(f"projection P{f.n}: beta(sum a_k t^k) = sum beta(a_k) t^k, so pi_! commutes with beta")
    return _report("bockstein", instance, lhs == rhs, lhs, rhs, trace=trace,
                   checks={"sides_agree": lhs == rhs})


def closed_form_rhs(embedding: EmbeddingData, op: Operation, a: Elem) -> Elem:
    """Right side of the Wu identity with the closed product form of itd."""
    closed = closed_form_inverse_todd(embedding.normal, op.prime)
    return embed_pushforward(embedding, apply_operation(op, a) * closed)
