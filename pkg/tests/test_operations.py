import logging

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thomcalc.core.builders import parse_space
from thomcalc.core.errors import ContractViolation, NotWellDefined, UnresolvedName, UsageError
from thomcalc.core.spaces import CoefficientMode, grassmannian, linear_embedding, product, projective_space
from thomcalc.operations import (
    HomologyClass,
    OperationMode,
    apply_operation,
    apply_to_thom,
    bockstein,
    bockstein_trace,
    dual_homology_operation,
    graded_pieces,
    homological_degree_law,
    registry,
    steenrod_total,
    twisted_operation,
)

from test_helpers import CATALOG, draw_class


def test_presets():
    assert registry.names() == ["custom", "identity", "pmotivic", "qmodl", "qmodp"]
    assert steenrod_total("qmodl", 3).terms == {1: 1, 3: 1}
    assert steenrod_total("qmodp", 3).terms == {3: 1}
    assert steenrod_total("pmotivic", 5).terms == {1: 1, 5: 1}
    assert steenrod_total("identity", 7).terms == {1: 1}
    assert steenrod_total(OperationMode.QMODL, 2).mode == OperationMode.QMODL


def test_qmodp_is_in_the_characteristic_picture():
    op = steenrod_total("qmodp", 2)
    assert op.char_p
    assert "l=p" in op.label
    with pytest.raises(UsageError):
        steenrod_total("qmodl", 3, char_p=True)


def test_qmodp_refuses_the_mod_l_picture():
    assert steenrod_total("qmodp", 3, char_p=True).char_p
    assert not steenrod_total("qmodl", 3, char_p=False).char_p
    with pytest.raises(UsageError, match="l = p"):
        steenrod_total("qmodp", 3, char_p=False)


def test_custom_series():
    op = steenrod_total("custom:u + 2*u^3", 5)
    assert op.terms == {1: 1, 3: 2}
    assert op.mode == OperationMode.CUSTOM
    assert steenrod_total("custom:u + 6*u^2", 3).terms == {1: 1}
    with pytest.raises(UsageError):
        steenrod_total("custom:u + x", 3)
    with pytest.raises(UsageError):
        steenrod_total("custom:u/2", 3)
    with pytest.raises(UsageError):
        steenrod_total("custom:", 3)


def test_unknown_preset():
    with pytest.raises(UnresolvedName):
        steenrod_total("sq", 2)


def test_total_operation_on_hyperplane_class():
    """Q(u) = u + u^2 on P2 over F_2."""
    ring = parse_space("P2", 2).ring
    u = ring.gen("u")
    value = apply_operation(steenrod_total("qmodl", 2), u)
    assert str(value) == "u + u^2"
    pieces = graded_pieces(value, (2, 1), 2)
    assert {s: str(p) for s, p in pieces.items()} == {0: "u", 1: "u^2"}


def test_qmodp_has_no_degree_zero_piece():
    ring = parse_space("P3", 3).ring
    u = ring.gen("u")
    value = apply_operation(steenrod_total("qmodp", 3), u)
    assert value == u ** 3
    assert list(graded_pieces(value, (2, 1), 3)) == [1]


def test_operation_on_chern_classes_by_splitting():
    """Q(e2) = Q(t1) Q(t2) = e2 + e1 e2 + e2^2 for Q(u) = u + u^2."""
    ring = parse_space("Gr(2,4)", 2).ring
    c1, c2 = ring.gen("c1"), ring.gen("c2")
    op = steenrod_total("qmodl", 2)
    assert apply_operation(op, c1) == c1 + c1 ** 2 - c2.scale(2)
    assert apply_operation(op, c2) == c2 + c1 * c2 + c2 ** 2


def test_constant_term_is_rejected():
    ring = parse_space("P2", 3).ring
    with pytest.raises(ContractViolation):
        apply_operation(steenrod_total("custom:1 + u", 3), ring.gen("u"))


def test_operation_fixes_theta(caplog):
    space = projective_space(2, 3, CoefficientMode.WEIGHT_UNIT)
    ring = space.ring
    x = ring.theta() * ring.gen("u")
    caplog.set_level(logging.WARNING, logger="thomcalc")
    value = apply_operation(steenrod_total("qmodl", 3), x)
    assert value == x
    assert "theta" in caplog.text


def test_action_on_thom_class():
    """On P1 in P2: itd(N) = 1 at l = 3 for qmodl, and c1(N) = u at l = 2 for qmodp."""
    tau = linear_embedding(1, 2, 3).module.tau()
    assert apply_to_thom(steenrod_total("qmodl", 3), tau) == tau
    tau2 = linear_embedding(1, 2, 2).module.tau()
    assert str(apply_to_thom(steenrod_total("qmodp", 2), tau2)) == "tau*u"


def test_bockstein_is_zero_on_integral_classes():
    space = parse_space("P2", 3)
    x = space.ring.gen("u") ** 2 + space.ring.one()
    assert bockstein(x).is_zero()
    assert bockstein_trace(x) == ["beta(1) = 0", "beta(u^2) = 2*beta(u)*u = 0"]
    tau = linear_embedding(1, 2, 3).module.tau()
    assert bockstein(tau).is_zero()
    assert bockstein_trace(tau)[0].startswith("beta(tau)")


def test_twisted_operation():
    space = parse_space("P2", 2)
    twisted = twisted_operation(steenrod_total("qmodl", 2), space)
    u = space.ring.gen("u")
    assert twisted(space.ring.one()) == space.ring.one() + u
    with pytest.raises(NotWellDefined):
        twisted_operation(steenrod_total("qmodp", 2), space)


def test_homological_degree_law():
    assert homological_degree_law(steenrod_total("pmotivic", 3), (4, 2), 1, 2) == (0, 0)
    assert homological_degree_law(steenrod_total("qmodl", 3), (4, 2), 1, 2) == (0, 2)


def test_dual_operation_on_fundamental_class():
    module = linear_embedding(1, 2, 3).module
    h = HomologyClass.fundamental(module)
    assert h.bidegree == (2, 1)
    image = dual_homology_operation(steenrod_total("pmotivic", 3), h, 0)
    assert image.bidegree == (2, 1)
    assert image.avatar == module.tau()
    assert dual_homology_operation(steenrod_total("pmotivic", 3), h, 1).is_zero()



OPERATIONS = ["qmodl", "qmodp", "pmotivic", "identity", "custom:u + 2*u^2"]


@pytest.mark.parametrize("spec", CATALOG)
@settings(max_examples=100, deadline=None)
@given(data=st.data(), name=st.sampled_from(OPERATIONS))
def test_operation_is_a_ring_homomorphism(spec, data, name):
    ring = parse_space(spec, 3).ring
    x, y = draw_class(data, ring), draw_class(data, ring)
    op = steenrod_total(name, 3)
    assert apply_operation(op, x * y) == apply_operation(op, x) * apply_operation(op, y)
    assert apply_operation(op, x + y) == apply_operation(op, x) + apply_operation(op, y)
    assert apply_operation(op, ring.one()) == ring.one()


@pytest.mark.parametrize("spec", CATALOG)
@settings(max_examples=100, deadline=None)
@given(data=st.data(), name=st.sampled_from(OPERATIONS))
def test_operation_keeps_first_degrees_even(spec, data, name):
    ring = parse_space(spec, 3).ring
    bidegree = data.draw(st.sampled_from(sorted(ring.basis_table())))
    x = draw_class(data, ring, bidegree)
    value = apply_operation(steenrod_total(name, 3), x)
    assert all(i % 2 == 0 for i, _ in value.bidegrees())


@pytest.mark.parametrize("prime", [2, 3, 5])
@pytest.mark.parametrize("name", ["qmodl", "qmodp", "pmotivic"])
@pytest.mark.parametrize("k,n", [(k, n) for n in range(2, 6) for k in range(1, n)])
def test_operation_respects_whitney_relation(k, n, name, prime):
    """phi(c(S)) phi(c(Q)) = 1 on Gr(k, N)."""
    space = grassmannian(k, n, prime)
    op = steenrod_total(name, prime)
    sub, quotient = space.bundle("S"), space.bundle("Q")
    assert apply_operation(op, sub.total) * apply_operation(op, quotient.total) == space.ring.one()


@pytest.mark.parametrize("first,second", [("P1", "P2"), ("P1", "P1"), ("P2", "Gr(2,4)"), ("PB(P1;O2)", "P1")])
@settings(max_examples=100, deadline=None)
@given(data=st.data(), name=st.sampled_from(OPERATIONS))
def test_operation_on_products_is_cartan(first, second, data, name):
    """phi(x x y) = phi(x) x phi(y)."""
    x_space, y_space = parse_space(first, 3), parse_space(second, 3)
    total = product(x_space, y_space)
    pr1, pr2 = total.factor_maps
    x, y = draw_class(data, x_space.ring), draw_class(data, y_space.ring)
    op = steenrod_total(name, 3)
    expected = pr1(apply_operation(op, x)) * pr2(apply_operation(op, y))
    assert apply_operation(op, pr1(x) * pr2(y)) == expected


@pytest.mark.parametrize("spec", CATALOG)
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_bockstein_is_a_square_zero_derivation(spec, data):
    ring = parse_space(spec, 3).ring
    x, y = draw_class(data, ring), draw_class(data, ring)
    assert bockstein(bockstein(x)).is_zero()
    assert bockstein(x * y) == bockstein(x) * y + x * bockstein(y)


@pytest.mark.parametrize("m,n", [(0, 1), (1, 2), (1, 3), (2, 4)])
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_bockstein_on_thom_modules(m, n, data):
    """beta(tau * a * b) expands by Leibniz and vanishes, as does beta twice."""
    module = linear_embedding(m, n, 3).module
    ring = module.base.ring
    t = module.element(draw_class(data, ring))
    b = draw_class(data, ring)
    assert bockstein(t.act(b)) == bockstein(t).act(b) + t.act(bockstein(b))
    assert bockstein(bockstein(t)).is_zero()
