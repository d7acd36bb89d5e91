import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import binomial

from thomcalc.core.builders import parse_space, resolve_embedding
from thomcalc.core.errors import ParseError, UnresolvedName, UsageError
from thomcalc.core.spaces import (
    CoefficientMode,
    SpaceKind,
    cover_embedding,
    grassmannian,
    identity_embedding,
    linear_embedding,
    product,
    projective_space,
)
from thomcalc.models import SpaceDescriptor

from test_helpers import draw_class


def test_projective_space():
    space = parse_space("P2", 5)
    assert space.kind == SpaceKind.PROJ
    assert space.dimension == 2
    assert str(space.point_class) == "u^2"
    assert str(space.tangent.total) == "1 + 3*u + 3*u^2"
    assert space.bundle("T") is space.tangent
    assert str(space.bundle("L").total) == "1 + u"


def test_point():
    space = parse_space("pt", 3)
    assert space.kind == SpaceKind.POINT
    assert space.dimension == 0
    assert space.ring.total_dimension() == 1
    assert projective_space(0, 3) is space


def test_constructors_are_memoized():
    assert parse_space("P2", 3) is parse_space("P2", 3)
    assert parse_space("P2", 3) is not parse_space("P2", 5)
    assert projective_space(2, 3) is projective_space(2, 3, CoefficientMode.PURE_POINT)
    assert projective_space(2, 3) is not projective_space(2, 3, CoefficientMode.WEIGHT_UNIT)


def test_product_renames_colliding_generators():
    space = parse_space("P1xP2", 3)
    assert space.ring.names == ("u", "u_2")
    assert space.dimension == 3
    assert space.ring.total_dimension() == 6
    assert str(space.point_class) == "u*u_2^2"
    assert space.tangent.rank == 3


def test_product_with_point_is_the_factor():
    p2 = parse_space("P2", 3)
    assert product(p2, parse_space("pt", 3)) is p2


def test_grassmannian():
    space = grassmannian(2, 4, 3)
    assert space.tangent is None
    assert space.bundle("S").rank == 2
    assert space.bundle("Q").rank == 2
    assert not any(space.odd_bidegree_dimensions().values())
    with pytest.raises(UsageError):
        space.require_tangent()
    with pytest.raises(UsageError):
        grassmannian(0, 3, 3)


@pytest.mark.parametrize("prime", [2, 3, 5])
@pytest.mark.parametrize("k,n", [(k, n) for n in range(2, 7) for k in range(1, n)])
def test_grassmannian_is_even_with_binomial_dimension(k, n, prime):
    space = grassmannian(k, n, prime)
    assert not any(space.odd_bidegree_dimensions().values())
    assert space.ring.total_dimension() == binomial(n, k)


@pytest.mark.parametrize("k,n", [(k, n) for n in range(2, 7) for k in range(1, min(n, 4))])
def test_grassmannian_stabilizes(k, n):
    """Up to first degree 2(N - k) the bases of Gr(k, N) and Gr(k, N + 1) have equal size."""
    small, large = grassmannian(k, n, 3).ring, grassmannian(k, n + 1, 3).ring
    for i in range(0, 2 * (n - k) + 1, 2):
        assert len(small.basis((i, i // 2))) == len(large.basis((i, i // 2)))


def test_projective_bundle():
    space = parse_space("PB(P1;O2)", 3)
    assert space.kind == SpaceKind.PROJ_BUNDLE
    assert space.dimension == 2
    assert space.base is parse_space("P1", 3)
    assert space.ring.total_dimension() == 4
    assert str(space.point_class) == "u*xi"


def test_unknown_bundle():
    with pytest.raises(UnresolvedName):
        parse_space("P1", 3).bundle("Q")


def test_space_spec_parsing():
    assert SpaceDescriptor.parse("Gr(2,4)").spec() == "Gr(2,4)"
    assert SpaceDescriptor.parse("P1 x P2").spec() == "P1xP2"
    assert SpaceDescriptor.parse("PB(P1xP1;O2)").factors[0].kind == SpaceKind.PRODUCT
    with pytest.raises(ParseError):
        SpaceDescriptor.parse("Q3")
    with pytest.raises(ParseError):
        SpaceDescriptor.parse("P1x")


def test_linear_embedding():
    embedding = linear_embedding(1, 2, 3)
    assert embedding.codimension == 1
    assert str(embedding.normal.total) == "1 + u"
    assert embedding.module.shift == (2, 1)
    assert embedding is resolve_embedding("linear:1:2", 3)
    assert linear_embedding(2, 2, 3) is identity_embedding(projective_space(2, 3))
    with pytest.raises(UsageError):
        linear_embedding(3, 2, 3)


def test_embedding_specs():
    with pytest.raises(UnresolvedName):
        resolve_embedding("diagonal:2", 3)
    with pytest.raises(ParseError):
        resolve_embedding("linear:1", 3)


def test_cover_embedding_normal_bundle():
    """The graph of a degree-d self-map of P1 has normal bundle of degree 2d."""
    embedding = cover_embedding(2, 5)
    assert embedding.target.ring.names == ("v", "t")
    assert embedding.normal.rank == 1
    assert str(embedding.normal.total) == "1 + 4*u"


def test_thom_module_products():
    module = linear_embedding(1, 2, 3).module
    tau = module.tau()
    assert tau.bidegree == (2, 1)
    assert str(tau * tau) == "tau*u"
    ambient_u = module.ambient.ring.gen("u")
    assert tau.act(ambient_u) == tau * module.base.ring.gen("u")
    assert (tau * 3).is_zero()
    assert str(module.zero()) == "0"
    assert str(tau + tau) == "tau*2"


@pytest.mark.parametrize("spec", ["linear:1:2", "linear:1:3", "linear:2:4", "cover:2", "identity:Gr(2,4)"])
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_thom_module_is_free(spec, data):
    """tau * a = tau * b exactly when a = b."""
    module = resolve_embedding(spec, 3).module
    a, b = draw_class(data, module.base.ring), draw_class(data, module.base.ring)
    assert (module.element(a) == module.element(b)) == (a == b)
    assert module.element(a).is_zero() == a.is_zero()
