"""Command line interface and main entry point."""
import argparse
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional

from ..config.features import get_discrepancy_warnings, get_theta_flags
from ..config.logger import setup_logging
from ..config.settings import get_default_prime, get_workspace_path
from ..core.chern import Genus, evaluate_genus, format_chern_polynomial, genus_polynomial, itd_discrepancy
from ..core.chern import inverse_todd_of_operation, todd_of_operation
from ..core.errors import NotWellDefined, ParseError, ThomcalcError, UsageError
from ..core.ring import Elem, Series
from ..core.spaces import CoefficientMode, SupportedElem
from ..core.workspace import JsonWorkspace
from ..models import (
    BundleDescriptor,
    ElemModel,
    EmbeddingDescriptor,
    MapDescriptor,
    Report,
    RingModel,
    SpaceDescriptor,
    SuiteResult,
    WorkspaceModel,
)
from ..operations.action import (
    THETA_NOTE,
    apply_operation,
    apply_to_thom,
    graded_pieces,
    supported_graded_piece,
    touches_weight_unit,
    twisted_operation,
)
from ..operations.operation import OperationMode
from ..operations.presets.custom import PREFIX, CustomPreset
from .context import Session
from .expr import evaluate_text
from .output import emit
from .verify_command import verify

logger = logging.getLogger("thomcalc")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

SCHEMAS = {
    "suite": SuiteResult,
    "report": Report,
    "workspace": WorkspaceModel,
    "ring": RingModel,
    "element": ElemModel,
}


def _common_options() -> argparse.ArgumentParser:
    """Flags accepted both before and after the subcommand."""
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument('--prime', '-l', type=int,
                        help='Coefficient prime (alternatively THOMCALC_PRIME or the workspace default)')
    common.add_argument('--char-p', dest='char_p', action='store_const', const=True,
                        help='Coefficient prime equals the characteristic (mod-p operations)')
    common.add_argument('--no-char-p', dest='char_p', action='store_const', const=False,
                        help='Coefficient prime differs from the characteristic; qmodp is then refused')
    common.add_argument('--mode', choices=[m.value for m in CoefficientMode],
                        help='pure: A(pt) = F_l; weight: adjoin an invertible theta in bidegree (0,1)')
    common.add_argument('--format', choices=['json', 'text'], help='Output format (default: text)')
    common.add_argument('--workspace', '-w',
                        help='Workspace file (alternatively THOMCALC_WORKSPACE; default ./thomcalc.workspace.json)')
    common.add_argument('--debug-stderr', action='store_true', help='Enable debug logging to stderr')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog='thomcalc',
        description='thomcalc - characteristic classes, Steenrod-type operations and pushforwards over Z/l',
        parents=[common],
    )
    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    space = commands.add_parser('space', help='Catalog spaces and their basis tables')
    space_cmd = space.add_subparsers(dest='action', metavar='ACTION')
    space_cmd.required = True
    show = space_cmd.add_parser('show', parents=[common], help='Print the ring presentation and basis table')
    show.add_argument('space', help='Workspace name or spec: pt, P2, Gr(2,4), P1xP2, PB(P1;O2)')
    add = space_cmd.add_parser('add', parents=[common], help='Name a space in the workspace')
    add.add_argument('name')
    add.add_argument('spec')

    bundle = commands.add_parser('bundle', help='Bundles over catalog spaces')
    bundle_cmd = bundle.add_subparsers(dest='action', metavar='ACTION')
    bundle_cmd.required = True
    add = bundle_cmd.add_parser('add', parents=[common], help='Store a bundle in the workspace')
    add.add_argument('name')
    add.add_argument('--space', required=True)
    add.add_argument('--rank', type=int, required=True)
    add.add_argument('--total', default='1', help='Total Chern class as an expression, e.g. "1 + u"')
    show = bundle_cmd.add_parser('show', parents=[common], help='Print rank and Chern classes')
    show.add_argument('name')
    show.add_argument('--space', help='Space whose catalog bundles (T, S, Q) to look in')

    embedding = commands.add_parser('embedding', help='Closed embeddings')
    embedding_cmd = embedding.add_subparsers(dest='action', metavar='ACTION')
    embedding_cmd.required = True
    add = embedding_cmd.add_parser('add', parents=[common], help='Store an embedding in the workspace')
    add.add_argument('name')
    add.add_argument('--catalog', help='linear:m:n, identity:<space> or cover:d')
    add.add_argument('--source', help='Embedded space (graph embeddings)')
    add.add_argument('--base', help='Base Y of the ambient Y x P^n (graph embeddings)')
    add.add_argument('--n', type=int, help='Dimension of the projective factor')
    add.add_argument('--image', action='append', default=[], metavar='GEN=EXPR',
                     help='Pullback of a generator of the base (repeatable)')
    add.add_argument('--line', help='Pullback of the hyperplane class of P^n')
    show = embedding_cmd.add_parser('show', parents=[common], help='Print normal bundle and restriction')
    show.add_argument('name')

    maps = commands.add_parser('map', help='Proper maps')
    map_cmd = maps.add_subparsers(dest='action', metavar='ACTION')
    map_cmd.required = True
    add = map_cmd.add_parser('add', parents=[common], help='Store a proper map in the workspace')
    add.add_argument('name')
    add.add_argument('--catalog', help='structure:m:n, projection:n:m, identity:<space>, cover:d or embedding:<name>')
    add.add_argument('--embedding', help='Embedding into target x P^n (factored maps)')
    add.add_argument('--target')
    add.add_argument('--n', type=int)
    add.add_argument('--degree', type=int, default=1, help='Generic degree of the map')
    show = map_cmd.add_parser('show', parents=[common], help='Print source, target and factorization')
    show.add_argument('name')

    genus = commands.add_parser('genus', help='Multiplicative genera')
    genus_cmd = genus.add_subparsers(dest='action', metavar='ACTION')
    genus_cmd.required = True
    ev = genus_cmd.add_parser('eval', parents=[common], help='Evaluate a genus on a bundle')
    source = ev.add_mutually_exclusive_group(required=True)
    source.add_argument('--op', help='Operation whose inverse Todd genus (or Todd genus with --td) to use')
    source.add_argument('--series', help='Characteristic series in u, e.g. "1 + u^2"')
    ev.add_argument('--td', action='store_true', help='Todd genus instead of the inverse Todd genus')
    ev.add_argument('--bundle', required=True)
    where = ev.add_mutually_exclusive_group()
    where.add_argument('--space')
    where.add_argument('--embedding')

    op = commands.add_parser('op', help='Ring operations')
    op_cmd = op.add_subparsers(dest='action', metavar='ACTION')
    op_cmd.required = True
    apply = op_cmd.add_parser('apply', parents=[common], help='Apply an operation to a class')
    apply.add_argument('--op', required=True, help='qmodl, qmodp, pmotivic, identity or custom:<series>')
    where = apply.add_mutually_exclusive_group(required=True)
    where.add_argument('--space')
    where.add_argument('--embedding')
    apply.add_argument('--expr', required=True)
    apply.add_argument('--twisted', action='store_true', help='Twist by the Todd genus of the ambient tangent bundle')
    apply.add_argument('--piece', type=int, help='Only the s-th graded piece')

    push = commands.add_parser('push', parents=[common], help='Pushforward along a proper map')
    push.add_argument('--map', required=True)
    push.add_argument('--expr', required=True)

    verify = commands.add_parser('verify', parents=[common], help='Run theorem checks')
    add_verify_arguments(verify)

    schema = commands.add_parser('schema', parents=[common], help='Print the JSON schema of an output document')
    schema.add_argument('document', nargs='?', default='suite', choices=sorted(SCHEMAS))
    return parser


def add_verify_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('identity', choices=['wu', 'grr', 'vanishing', 'transfer', 'degree', 'bockstein', 'all'])
    parser.add_argument('--embedding', help='Catalog embedding, e.g. linear:1:2')
    parser.add_argument('--map', help='Catalog map, e.g. structure:2:2 or projection:1:1')
    parser.add_argument('--support', help='Support embedding for transfer checks (default identity)')
    parser.add_argument('--op', help='Operation preset')
    parser.add_argument('--a', help='Source class as an expression (default 1)')
    parser.add_argument('--s', type=int, help='Graded piece (vanishing, degree)')
    parser.add_argument('--n', type=int, help='Dimension (degree)')
    parser.add_argument('--max-dim', type=int, default=4, help='Largest ambient dimension in the full suite')
    parser.add_argument('--jobs', '-j', type=int, default=1, help='Worker threads for the full suite')
    parser.add_argument('--rerun', metavar='FILE', help='Re-verify a saved report or suite result')
    parser.add_argument('--output', '-o', metavar='FILE', help='Also write the JSON result to FILE')


def _basis_table(space) -> Dict[str, List[str]]:
    ring = space.ring
    return {
        f"{i},{j}": [ring.format_monomial(exps) for exps in monomials]
        for (i, j), monomials in sorted(ring.basis_table().items())
    }


def cmd_space(args, session: Session) -> int:
    if args.action == 'add':
        descriptor = SpaceDescriptor.parse(args.spec)
        session.space(args.spec)
        session.workspace.add_space(args.name, descriptor)
        session.workspace.save()
        emit({"space": args.name, "spec": descriptor.spec()}, args.format)
        return EXIT_OK
    space = session.space(args.space)
    ring = space.ring
    payload = {
        "space": space.name,
        "kind": space.kind.value,
        "prime": space.prime,
        "mode": space.mode.value,
        "dimension": space.dimension,
        "generators": [f"{g.name}:({g.bidegree[0]},{g.bidegree[1]})" for g in ring.generators],
        "basis": _basis_table(space),
        "total_dimension": ring.total_dimension(),
        "point_class": str(space.point_class),
        "tangent": None if space.tangent is None else str(space.tangent.total),
        "bundles": {name: str(b.total) for name, b in sorted(space.bundles.items())},
        "odd_bidegrees_zero": not any(space.odd_bidegree_dimensions().values()),
    }
    emit(payload, args.format)
    return EXIT_OK


def _bundle_payload(bundle) -> Dict[str, Any]:
    return {
        "bundle": bundle.name,
        "space": bundle.base.name,
        "rank": bundle.rank,
        "total": str(bundle.total),
        "chern": {f"c{i}": str(c) for i, c in enumerate(bundle.chern_classes(), start=1)},
    }


def cmd_bundle(args, session: Session) -> int:
    if args.action == 'add':
        session.workspace.add_bundle(args.name, BundleDescriptor(space=args.space, rank=args.rank, total=args.total))
        bundle = session.bundle(args.name)
        session.workspace.save()
        emit(_bundle_payload(bundle), args.format)
        return EXIT_OK
    if args.space:
        ctx = session.eval_context(space=session.space(args.space), genus_bundle=args.name)
        bundle = ctx.genus_bundle
    else:
        bundle = session.bundle(args.name)
    emit(_bundle_payload(bundle), args.format)
    return EXIT_OK


def _catalog_embedding(spec: str) -> EmbeddingDescriptor:
    kind, _, rest = spec.partition(":")
    parts = rest.split(":")
    try:
        if kind == "linear" and len(parts) == 2:
            return EmbeddingDescriptor(kind="linear", m=int(parts[0]), n=int(parts[1]))
        if kind == "cover" and len(parts) == 1:
            return EmbeddingDescriptor(kind="cover", d=int(parts[0]))
    except ValueError:
        pass
    if kind == "identity" and rest:
        return EmbeddingDescriptor(kind="identity", space=rest)
    raise UsageError(f"unknown catalog embedding {spec!r}; expected linear:m:n, identity:<space> or cover:d")


def _images(pairs: List[str]) -> Dict[str, str]:
    images = {}
    for pair in pairs:
        gen, sep, text = pair.partition("=")
        if not sep or not gen.strip():
            raise UsageError(f"--image expects GEN=EXPR, got {pair!r}")
        images[gen.strip()] = text.strip()
    return images


def cmd_embedding(args, session: Session) -> int:
    if args.action == 'add':
        if args.catalog:
            descriptor = _catalog_embedding(args.catalog)
        else:
            descriptor = EmbeddingDescriptor(kind="graph", source=args.source, base=args.base, n=args.n,
                                             images=_images(args.image), line=args.line)
        session.workspace.add_embedding(args.name, descriptor)
    embedding = session.embedding(args.name)
    if args.action == 'add':
        session.workspace.save()
    payload = {
        "embedding": embedding.name,
        "source": embedding.source.name,
        "target": embedding.target.name,
        "codimension": embedding.codimension,
        "normal": str(embedding.normal.total),
        "restriction": {name: str(img) for name, img in embedding.restriction.images.items()},
        "tau_bidegree": list(embedding.module.shift),
    }
    emit(payload, args.format)
    return EXIT_OK


def _catalog_map(spec: str, degree: int) -> MapDescriptor:
    kind, _, rest = spec.partition(":")
    parts = rest.split(":")
    try:
        if kind == "structure" and len(parts) == 2:
            return MapDescriptor(kind="structure", m=int(parts[0]), n=int(parts[1]), degree=degree)
        if kind == "projection" and len(parts) == 2:
            return MapDescriptor(kind="projection", n=int(parts[0]), m=int(parts[1]), degree=degree)
        if kind == "cover" and len(parts) == 1:
            return MapDescriptor(kind="cover", d=int(parts[0]), degree=int(parts[0]))
    except ValueError:
        pass
    if kind == "identity" and rest:
        return MapDescriptor(kind="identity", space=rest, degree=degree)
    if kind == "embedding" and rest:
        return MapDescriptor(kind="embedding", embedding=rest, degree=degree)
    raise UsageError(f"unknown catalog map {spec!r}")


def cmd_map(args, session: Session) -> int:
    if args.action == 'add':
        if args.catalog:
            descriptor = _catalog_map(args.catalog, args.degree)
        else:
            descriptor = MapDescriptor(kind="factored", embedding=args.embedding, target=args.target, n=args.n,
                                       degree=args.degree)
        session.workspace.add_map(args.name, descriptor)
    f = session.proper_map(args.name)
    if args.action == 'add':
        session.workspace.save()
    payload = {
        "map": f.name,
        "source": f.source.name,
        "target": f.target.name,
        "factorization": f"{f.embedding.name} then projection off P{f.n}" if f.n else f.embedding.name,
        "relative_dimension": f.relative_dimension,
        "degree": f.degree,
    }
    emit(payload, args.format)
    return EXIT_OK


def cmd_genus(args, session: Session) -> int:
    if args.embedding:
        ctx = session.eval_context(embedding=session.embedding(args.embedding), genus_bundle=args.bundle)
        bundle = ctx.genus_bundle
    elif args.space:
        bundle = session.eval_context(space=session.space(args.space), genus_bundle=args.bundle).genus_bundle
    else:
        bundle = session.bundle(args.bundle)
    dimension = bundle.base.dimension
    warnings = []
    if args.op:
        op = session.operation(args.op).fitted(dimension)
        genus = todd_of_operation(op) if args.td else inverse_todd_of_operation(op)
        if (not args.td and get_discrepancy_warnings() and op.prime > 2
                and op.mode in (OperationMode.QMODL, OperationMode.PMOTIVIC)):
            comparison = itd_discrepancy(op, bundle)
            if comparison.differs:
                warnings.append(f"closed product form gives {comparison.closed_form}")
    else:
        terms = CustomPreset().series_terms(PREFIX + args.series, session.prime)
        genus = Genus(Series.from_terms(terms, session.prime, dimension + 1), f"series {args.series}")
    value = evaluate_genus(genus, bundle)
    payload = {
        "genus": genus.label,
        "bundle": bundle.name,
        "rank": bundle.rank,
        "polynomial": format_chern_polynomial(genus_polynomial(genus, bundle.rank, dimension), bundle.name),
        "value": str(value),
    }
    if warnings:
        payload["warnings"] = warnings
    emit(payload, args.format)
    return EXIT_OK


def _pieces(result, source, prime: int) -> Dict[int, str]:
    degree = source.bidegree
    if degree is None:
        return {}
    if isinstance(result, SupportedElem):
        top = result.module.ambient.ring.top_degree
        pieces = {}
        s = 0
        while degree[0] + 2 * s * (prime - 1) <= top:
            piece = supported_graded_piece(result, degree, s, prime)
            if not piece.is_zero():
                pieces[s] = str(piece)
            s += 1
        return pieces
    return {s: str(piece) for s, piece in graded_pieces(result, degree, prime).items()}


def cmd_op(args, session: Session) -> int:
    embedding = session.embedding(args.embedding) if args.embedding else None
    space = session.space(args.space) if args.space else None
    ctx = session.eval_context(space=space, embedding=embedding)
    x = evaluate_text(args.expr, ctx)
    op = session.operation(args.op)
    if args.twisted:
        ambient = embedding.target if embedding is not None else space
        result = twisted_operation(op, ambient)(x)
    elif isinstance(x, SupportedElem):
        result = apply_to_thom(op, x)
    else:
        result = apply_operation(op, x)
    pieces = _pieces(result, x, op.prime)
    payload: Dict[str, Any] = {"op": op.label, "input": str(x), "value": str(result)}
    if args.piece is not None:
        payload["piece"] = pieces.get(args.piece, "0")
    elif pieces:
        payload["pieces"] = pieces
    if get_theta_flags() and touches_weight_unit(x, result):
        payload["warnings"] = [THETA_NOTE]
    emit(payload, args.format)
    return EXIT_OK


def cmd_push(args, session: Session) -> int:
    f = session.proper_map(args.map)
    x = evaluate_text(args.expr, session.eval_context(space=f.source))
    if not isinstance(x, Elem):
        raise UsageError("push takes a class of the source ring; use verify transfer for supported classes")
    value = f(x)
    emit({
        "map": f.name,
        "source": f.source.name,
        "target": f.target.name,
        "input": str(x),
        "value": str(value),
        "value_model": ElemModel.from_elem(value).model_dump(mode="json"),
    }, args.format)
    return EXIT_OK


def cmd_schema(args, session: Optional[Session]) -> int:
    sys.stdout.write(json.dumps(SCHEMAS[args.document].model_json_schema(), sort_keys=True, indent=2) + "\n")
    return EXIT_OK


COMMANDS = {
    'space': cmd_space,
    'bundle': cmd_bundle,
    'embedding': cmd_embedding,
    'map': cmd_map,
    'genus': cmd_genus,
    'op': cmd_op,
    'push': cmd_push,
    'verify': verify,
    'schema': cmd_schema,
}


def _setup_logging(debug_stderr: bool) -> None:
    try:
        setup_logging(test_tag=os.environ.get('THOMCALC_TEST_TAG'), debug_stderr=debug_stderr)
    except (PermissionError, RuntimeError) as e:
        handler = logging.StreamHandler(sys.stderr)
        handler.setLevel(logging.DEBUG if debug_stderr else logging.WARNING)
        logger.handlers.clear()
        logger.addHandler(handler)
        logger.warning(f"File logging unavailable, logging to stderr only: {e}")


def open_session(args) -> Session:
    workspace = JsonWorkspace.load(get_workspace_path(getattr(args, 'workspace', None)))
    defaults = workspace.data
    prime = get_default_prime(getattr(args, 'prime', None) or defaults.prime)
    mode = CoefficientMode(getattr(args, 'mode', None) or defaults.mode)
    char_p = getattr(args, 'char_p', None)
    if char_p is None:
        char_p = defaults.char_p
    return Session(workspace, prime, mode, char_p)


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for thomcalc.

    Returns:
        Exit code: 0 on success or a passing check, 1 on a failed or obstructed check,
        2 on usage errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    args.format = getattr(args, 'format', 'text')
    debug_stderr = getattr(args, 'debug_stderr', False)
    _setup_logging(debug_stderr)
    logger.debug(f"Arguments: {vars(args)}")

    try:
        session = None if args.command == 'schema' else open_session(args)
        return COMMANDS[args.command](args, session)
    except ParseError as e:
        sys.stderr.write(f"error: {e}\n{e.highlight()}\n")
        return EXIT_USAGE
    except NotWellDefined as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_FAIL
    except (UsageError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except ThomcalcError as e:
        logger.error(f"{type(e).__name__}: {e}")
        sys.stderr.write(f"error: {e}\n")
        return EXIT_FAIL
    except OSError as e:
        logger.error(f"I/O error: {e}")
        sys.stderr.write(f"error: {e}\n")
        return EXIT_FAIL


def run():
    """Entry point for the command-line script."""
    sys.exit(main())
