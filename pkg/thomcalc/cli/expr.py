"""The expression language of the command line.

Atoms are generator names, nonnegative integers, ``c<i>(<bundle>)``, ``td(<op>)``,
``itd(<op>)``, ``tau`` and ``theta``. Operators are ``+ - * ^`` with ``^`` binding tightest,
then unary minus, then ``*``, then ``+`` and ``-``. Exponents are integer literals.

Parsing is top-down operator precedence over a regex tokenizer; every token records
its byte span so syntax errors point into the source.
"""
import logging
import re
from typing import Dict, Iterator, List, Literal, NamedTuple, Optional, Tuple, Union

from pydantic import BaseModel, Field

from ..core.chern import Bundle, evaluate_genus, inverse_todd_of_operation, todd_of_operation
from ..core.errors import ParseError, UnresolvedName, UsageError
from ..core.ring import Elem, RingCtx
from ..core.ring.quotient import THETA
from ..core.spaces import SupportedElem, ThomModule
from ..operations.presets import steenrod_total

logger = logging.getLogger("thomcalc")

Value = Union[Elem, SupportedElem]

NodeKind = Literal["num", "gen", "chern", "td", "itd", "tau", "add", "sub", "mul", "pow", "neg"]

_TOKENS = {
    "chern": r"c(?P<index>\d+)\((?P<bundle>[A-Za-z_][A-Za-z0-9_]*)\)",
    "genus": r"(?P<gname>i?td)\((?P<gop>[^()]*)\)",
    "name": r"[A-Za-z_][A-Za-z0-9_]*",
    "num": r"\d+",
    "op": r"[+\-*^]",
    "lpar": r"\(",
    "rpar": r"\)",
    "skip": r"[ \t]+",
    "error": r".",
}
_REGEX = re.compile("|".join(f"(?P<{kind}>{text})" for kind, text in _TOKENS.items()))


class Token(NamedTuple):
    type: str
    value: Union[str, int, Tuple[str, str]]
    where: Tuple[int, int]


class Node(BaseModel):
    """Parse tree node; ``value`` holds the atom payload, ``args`` the operands."""
    kind: NodeKind
    value: Union[int, str, None] = None
    bundle: Optional[str] = None
    args: List["Node"] = Field(default_factory=list)

    def sexpr(self) -> str:
        """Prefix form, e.g. ``(+ (^ u 2) u)``."""
        if self.kind == "num" or self.kind == "gen":
            return str(self.value)
        if self.kind == "chern":
            return f"c{self.value}({self.bundle})"
        if self.kind in ("td", "itd"):
            return f"{self.kind}({self.value})"
        if self.kind == "tau":
            return "tau"
        symbol = {"add": "+", "sub": "-", "mul": "*", "pow": "^", "neg": "-"}[self.kind]
        return "(" + " ".join([symbol] + [a.sexpr() for a in self.args]) + ")"


Node.model_rebuild()


def _offset(text: str, index: int) -> int:
    return len(text[:index].encode())


def tokenize(text: str) -> Iterator[Token]:
    for mo in _REGEX.finditer(text):
        kind = mo.lastgroup
        where = (_offset(text, mo.start()), _offset(text, mo.end()))
        if kind == "skip":
            continue
        if kind == "error":
            raise ParseError(f"unexpected character {mo.group()!r}", text, where[0])
        if kind == "chern":
            yield Token("chern", (mo.group("index"), mo.group("bundle")), where)
        elif kind == "genus":
            yield Token("genus", (mo.group("gname"), mo.group("gop").strip()), where)
        elif kind == "num":
            yield Token("num", int(mo.group()), where)
        elif kind in ("op", "lpar", "rpar"):
            yield Token(mo.group(), mo.group(), where)
        else:
            yield Token("name", mo.group(), where)


# binding powers
_INFIX = {"+": 10, "-": 10, "*": 20, "^": 30}
_PREFIX_MINUS = 25


class Parser:
    """Pratt parser over the token stream of one expression."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = list(tokenize(text))
        self.position = 0

    @property
    def token(self) -> Optional[Token]:
        if self.position < len(self.tokens):
            return self.tokens[self.position]
        return None

    def _end_offset(self) -> int:
        return len(self.text.encode())

    def _error(self, message: str, token: Optional[Token]) -> ParseError:
        offset = token.where[0] if token is not None else self._end_offset()
        return ParseError(message, self.text, offset)

    def advance(self) -> Token:
        token = self.token
        if token is None:
            raise self._error("unexpected end of expression", None)
        self.position += 1
        return token

    def parse(self) -> Node:
        if not self.tokens:
            raise self._error("empty expression", None)
        node = self.expression(0)
        if self.token is not None:
            raise self._error(f"unexpected {self.token.value!r}", self.token)
        return node

    def expression(self, rbp: int) -> Node:
        left = self.nud(self.advance())
        while self.token is not None and self.token.type in _INFIX and rbp < _INFIX[self.token.type]:
            left = self.led(self.advance(), left)
        return left

    def nud(self, token: Token) -> Node:
        if token.type == "num":
            return Node(kind="num", value=token.value)
        if token.type == "name":
            if token.value == "tau":
                return Node(kind="tau")
            return Node(kind="gen", value=token.value)
        if token.type == "chern":
            index, bundle = token.value
            return Node(kind="chern", value=int(index), bundle=bundle)
        if token.type == "genus":
            kind, op = token.value
            if not op:
                raise ParseError(f"{kind}() needs an operation name", self.text, token.where[0])
            return Node(kind=kind, value=op)
        if token.type == "-":
            return Node(kind="neg", args=[self.expression(_PREFIX_MINUS)])
        if token.type == "(":
            inner = self.expression(0)
            if self.token is None or self.token.type != ")":
                raise self._error("expected ')'", self.token)
            self.advance()
            return inner
        raise ParseError(f"unexpected {token.value!r}", self.text, token.where[0])

    def led(self, token: Token, left: Node) -> Node:
        if token.type == "^":
            exponent = self.token
            if exponent is None or exponent.type != "num":
                raise self._error("exponent must be a nonnegative integer", exponent)
            self.advance()
            return Node(kind="pow", args=[left, Node(kind="num", value=exponent.value)])
        kind = {"+": "add", "-": "sub", "*": "mul"}[token.type]
        right = self.expression(_INFIX[token.type])
        return Node(kind=kind, args=[left, right])


def parse(text: str) -> Node:
    """Parse one expression.

    Raises:
        ParseError: with the byte offset of the offending token
    """
    return Parser(text).parse()


_PRECEDENCE = {"add": 10, "sub": 10, "mul": 20, "neg": 25, "pow": 30}


def _precedence(node: Node) -> int:
    return _PRECEDENCE.get(node.kind, 40)


def _wrapped(node: Node, tighter_than: int) -> str:
    text = to_text(node)
    return f"({text})" if _precedence(node) < tighter_than else text


def to_text(node: Node) -> str:
    """Print with the fewest parentheses that parse back to the same tree."""
    if node.kind in ("num", "gen", "chern", "td", "itd", "tau"):
        return node.sexpr()
    if node.kind == "neg":
        return "-" + _wrapped(node.args[0], _PREFIX_MINUS)
    if node.kind == "pow":
        base, exponent = node.args
        return f"{_wrapped(base, 40)}^{exponent.value}"
    left, right = node.args
    symbol = {"add": "+", "sub": "-", "mul": "*"}[node.kind]
    p = _PRECEDENCE[node.kind]
    joiner = f" {symbol} " if p == 10 else symbol
    return _wrapped(left, p) + joiner + _wrapped(right, p + 1)


class EvalContext:
    """What names resolve against: a ring, named bundles, the bundle that ``td``/``itd``
    are evaluated on, and an optional Thom module for ``tau``."""

    def __init__(self, ring: RingCtx, bundles: Optional[Dict[str, Bundle]] = None,
                 genus_bundle: Optional[Bundle] = None, module: Optional[ThomModule] = None,
                 char_p: Optional[bool] = None):
        self.ring = ring
        self.bundles = dict(bundles or {})
        self.genus_bundle = genus_bundle
        self.module = module
        self.char_p = char_p

    def bundle(self, name: str) -> Bundle:
        if name not in self.bundles:
            known = ", ".join(sorted(self.bundles)) or "none"
            raise UnresolvedName(f"unknown bundle {name!r} (known: {known})")
        bundle = self.bundles[name]
        if bundle.base.ring is not self.ring:
            raise UsageError(f"bundle {name} lives over {bundle.base.name}, not the ring {self.ring.name}")
        return bundle


def _genus(node: Node, ctx: EvalContext) -> Elem:
    if ctx.genus_bundle is None:
        raise UsageError(f"{node.kind}({node.value}) needs a bundle to evaluate on")
    bundle = ctx.genus_bundle
    op = steenrod_total(node.value, ctx.ring.prime, ctx.char_p).fitted(ctx.ring.dimension)
    genus = todd_of_operation(op) if node.kind == "td" else inverse_todd_of_operation(op)
    return evaluate_genus(genus, bundle)


def _combine(kind: str, left: Value, right: Value) -> Value:
    if kind == "mul":
        return left * right
    if isinstance(left, SupportedElem) != isinstance(right, SupportedElem):
        raise UsageError("cannot add a supported class to an unsupported one")
    return left + right if kind == "add" else left - right


def _power(base: Value, exponent: int) -> Value:
    if isinstance(base, Elem):
        return base ** exponent
    if exponent < 1:
        raise UsageError("a supported class has no zeroth power")
    result = base
    for _ in range(exponent - 1):
        result = result * base
    return result


def evaluate(node: Node, ctx: EvalContext) -> Value:
    """Evaluate to a normal-form element, or a supported element when ``tau`` occurs.

    Raises:
        UnresolvedName: unknown generator, bundle or operation
        UsageError: ``tau`` without a Thom module, or ill-typed arithmetic
        NotWellDefined: ``td`` of an operation without a Todd genus
    """
    ring = ctx.ring
    if node.kind == "num":
        return ring.scalar(node.value)
    if node.kind == "gen":
        if node.value == THETA:
            return ring.theta()
        if node.value not in ring.position:
            raise UnresolvedName(f"ring {ring.name} has no generator {node.value!r}; generators: "
                                 f"{', '.join(ring.names) or 'none'}")
        return ring.gen(node.value)
    if node.kind == "chern":
        return ctx.bundle(node.bundle).chern(node.value)
    if node.kind in ("td", "itd"):
        return _genus(node, ctx)
    if node.kind == "tau":
        if ctx.module is None:
            raise UsageError("tau only makes sense for an embedding (pass --embedding)")
        return ctx.module.tau()
    if node.kind == "neg":
        return -evaluate(node.args[0], ctx)
    if node.kind == "pow":
        return _power(evaluate(node.args[0], ctx), node.args[1].value)
    left, right = (evaluate(a, ctx) for a in node.args)
    return _combine(node.kind, left, right)


def evaluate_text(text: str, ctx: EvalContext) -> Value:
    node = parse(text)
    logger.debug(f"Parsed {text!r} as {node.sexpr()}")
    return evaluate(node, ctx)
