"""
Sketch parser

``parse_sketch`` turns ``.mcy`` text into a ``ProcessSketch``: the raw tree from
``lang.grammar``, the partition/consensus event declarations collected from
handler headers, and hole signatures inferred from syntactic position.
"""

import pathlib

import pyparsing as pp

from ..utils.exceptions import SketchError, SketchSyntaxError
from ..utils.logger import logger
from .ast import EventDecl, EventKind, HandlerKind, ProcessSketch
from .holes import infer_signatures


def _agreement_events(declared, locations) -> tuple:
    found = {}
    for loc in locations:
        for handler in loc.handlers:
            if handler.kind not in (HandlerKind.PARTITION, HandlerKind.CONSENSUS):
                continue
            kind = EventKind.PARTITION if handler.kind is HandlerKind.PARTITION else EventKind.CONSENSUS
            decl = found.get(handler.event, None)
            if decl is None:
                found[handler.event] = EventDecl(
                    handler.event,
                    kind,
                    cardinality=handler.cardinality,
                    proposal_var=handler.proposal,
                    span=handler.span,
                )
            elif decl.proposal_var is None and handler.proposal is not None:
                found[handler.event] = EventDecl(
                    decl.name, decl.kind, cardinality=decl.cardinality, proposal_var=handler.proposal, span=decl.span
                )
    names = {e.name for e in declared}
    return tuple(declared) + tuple(e for name, e in found.items() if name not in names)


def parse_sketch(
    text: str, *, source: str | None = None, check: bool = True, max_cardinality: int | None = None
) -> ProcessSketch:
    """
    解析 sketch 文本

    check=True 时对结果做交叉引用与类型检查, 有错误则抛出 SketchError.
    """
    from .grammar import sketch_grammar
    from .validate import Severity, validate_sketch

    try:
        tree = sketch_grammar().parse_string(text, parse_all=True)
    except pp.ParseBaseException as error:
        raise SketchSyntaxError(error.msg, error.lineno, error.col, source) from None
    except RecursionError:
        raise SketchSyntaxError("Expression nesting too deep", 0, 0, source) from None

    variables = tuple(tree.get("variables", ()))
    locations = tuple(tree["locations"])
    events = _agreement_events(tuple(tree.get("events", ())), locations)

    sketch = ProcessSketch(str(tree["name"]), variables, events, locations, source=source)
    sketch = ProcessSketch(
        sketch.name, variables, events, locations, infer_signatures(sketch, max_cardinality), source=source
    )

    logger.debug(f"Parsed sketch '{sketch.name}': {len(locations)} locations, {len(sketch.holes)} holes")

    if check:
        errors = [d for d in validate_sketch(sketch) if d.severity is Severity.ERROR]
        if errors:
            raise SketchError(errors, source)

    return sketch


def _read_source(path: pathlib.Path) -> str:
    data = path.read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as error:
        line = data.count(b"\n", 0, error.start) + 1
        column = error.start - (data.rfind(b"\n", 0, error.start) + 1) + 1
        raise SketchSyntaxError(f"not valid UTF-8 ({error.reason})", line, column, str(path)) from error


def load_sketch(path, **kwargs) -> ProcessSketch:
    path = pathlib.Path(path)
    return parse_sketch(_read_source(path), source=str(path), **kwargs)


def load_spec(path):
    from .spec import parse_spec

    path = pathlib.Path(path)
    return parse_spec(_read_source(path), source=str(path))
