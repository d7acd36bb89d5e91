import pytest
from hypothesis import given, strategies as st

from thomcalc.cli.expr import EvalContext, Node, evaluate_text, parse, to_text, tokenize
from thomcalc.core.builders import parse_space, resolve_embedding
from thomcalc.core.errors import NotWellDefined, ParseError, UnresolvedName, UsageError

from test_helpers import elem, space_elem


def test_genus_tokens():
    tokens = list(tokenize("itd( qmodp ) * c1(N) + td(qmodl)"))
    assert [t.type for t in tokens] == ["genus", "*", "chern", "+", "genus"]
    assert tokens[0].value == ("itd", "qmodp")
    assert tokens[0].where == (0, 12)
    assert tokens[2].value == ("1", "N")
    assert tokens[4].value == ("td", "qmodl")


def test_precedence():
    assert parse("u^2 + u").sexpr() == "(+ (^ u 2) u)"
    assert parse("-u^2").sexpr() == "(- (^ u 2))"
    assert parse("2*u - 3*v - 1").sexpr() == "(- (- (* 2 u) (* 3 v)) 1)"
    assert parse("(1 + u)^3").sexpr() == "(^ (+ 1 u) 3)"
    assert parse("c2(T) * td(qmodl)").sexpr() == "(* c2(T) td(qmodl))"
    assert parse("tau*u").sexpr() == "(* tau u)"


@pytest.mark.parametrize("text,offset", [
    ("u +", 3),
    ("u $", 2),
    ("u + é", 4),
    ("u^v", 2),
    ("(u", 2),
    ("", 0),
    ("u )", 2),
    ("td()", 0),
])
def test_parse_errors_carry_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.offset == offset


def test_highlight_points_at_the_character():
    with pytest.raises(ParseError) as info:
        parse("u + é")
    assert info.value.highlight() == "u + é\n    ^"


_leaves = st.one_of(
    st.integers(min_value=0, max_value=50).map(lambda n: Node(kind="num", value=n)),
    st.sampled_from(["u", "v", "c1", "xi", "theta"]).map(lambda g: Node(kind="gen", value=g)),
    st.just(Node(kind="tau")),
    st.tuples(st.integers(1, 4), st.sampled_from(["T", "N", "L"])).map(
        lambda t: Node(kind="chern", value=t[0], bundle=t[1])),
    st.tuples(st.sampled_from(["td", "itd"]), st.sampled_from(["qmodl", "qmodp"])).map(
        lambda t: Node(kind=t[0], value=t[1])),
)


def _extend(children):
    binary = st.tuples(st.sampled_from(["add", "sub", "mul"]), children, children).map(
        lambda t: Node(kind=t[0], args=[t[1], t[2]]))
    power = st.tuples(children, st.integers(0, 9)).map(
        lambda t: Node(kind="pow", args=[t[0], Node(kind="num", value=t[1])]))
    negation = children.map(lambda c: Node(kind="neg", args=[c]))
    return st.one_of(binary, power, negation)


@given(st.recursive(_leaves, _extend, max_leaves=12))
def test_printing_parses_back(tree):
    assert parse(to_text(tree)) == tree


def test_generators_and_chern_classes():
    space = parse_space("P2", 5)
    assert str(elem(space, "c1(T)")) == "3*u"
    assert elem(space, "c2(T) - 3*u^2").is_zero()
    assert elem(space, "2 - 3") == space.ring.scalar(4)


def test_unknown_names():
    space = parse_space("P2", 5)
    with pytest.raises(UnresolvedName):
        elem(space, "v + 1")
    with pytest.raises(UnresolvedName):
        elem(space, "c1(E)")


def test_bundle_over_another_ring():
    plane, line = parse_space("P2", 5), parse_space("P1", 5)
    ctx = EvalContext(plane.ring, {"L": line.bundle("L")})
    with pytest.raises(UsageError):
        evaluate_text("c1(L)", ctx)


def test_genus_atoms():
    assert str(space_elem("P2", 2, "td(qmodl)")) == "1 + u"
    with pytest.raises(NotWellDefined):
        space_elem("P2", 2, "td(qmodp)")
    with pytest.raises(UsageError):
        evaluate_text("itd(qmodl)", EvalContext(parse_space("P2", 2).ring))


def test_tau_needs_a_thom_module():
    with pytest.raises(UsageError):
        space_elem("P1", 3, "tau")


def test_supported_arithmetic():
    embedding = resolve_embedding("linear:1:2", 3)
    ctx = EvalContext(embedding.source.ring, {"N": embedding.normal}, embedding.normal, embedding.module)
    assert str(evaluate_text("tau*tau", ctx)) == "tau*u"
    assert str(evaluate_text("tau^2", ctx)) == "tau*u"
    assert str(evaluate_text("u*tau - tau*u", ctx)) == str(embedding.module.zero())
    with pytest.raises(UsageError):
        evaluate_text("tau + 1", ctx)
    with pytest.raises(UsageError):
        evaluate_text("tau^0", ctx)
