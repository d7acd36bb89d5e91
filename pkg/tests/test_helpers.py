"""Test helpers: build classes from expression text, and draw random catalog classes."""
from hypothesis import strategies as st

from thomcalc.cli.expr import EvalContext, evaluate_text
from thomcalc.core.builders import parse_space
from thomcalc.core.chern import Bundle

# Spaces the property tests sweep: projective spaces, a Grassmannian, products and
# projective bundles.
CATALOG = ["P1", "P2", "P3", "Gr(2,4)", "P1xP2", "P2xP1", "PB(P1;O2)", "PB(P2;T)"]


def elem(space, text: str):
    """Read ``text`` in the ring of ``space``, with its catalog bundles in scope."""
    bundles = dict(space.bundles)
    return evaluate_text(text, EvalContext(space.ring, bundles, space.tangent))


def space_elem(spec: str, prime: int, text: str):
    return elem(parse_space(spec, prime), text)


def basis_monomials(ring, bidegree=None):
    if bidegree is not None:
        return list(ring.basis(bidegree))
    return [exps for _, monomials in sorted(ring.basis_table().items()) for exps in monomials]


def draw_class(data, ring, bidegree=None):
    """A random linear combination of basis monomials, optionally of one bidegree."""
    monomials = basis_monomials(ring, bidegree)
    coeffs = data.draw(st.lists(st.integers(min_value=0, max_value=ring.prime - 1),
                                min_size=len(monomials), max_size=len(monomials)))
    x = ring.zero()
    for exps, c in zip(monomials, coeffs):
        x = x + ring.monomial(exps).scale(c)
    return x


def draw_bundle(data, space, max_rank: int = 3, name: str = "E") -> Bundle:
    """A formal bundle with random Chern classes up to its rank."""
    rank = data.draw(st.integers(min_value=0, max_value=max_rank))
    ring = space.ring
    total = ring.one()
    for i in range(1, rank + 1):
        total = total + draw_class(data, ring, (2 * i, i))
    return Bundle(space, rank, total, name)
