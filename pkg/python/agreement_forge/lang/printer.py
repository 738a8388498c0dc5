"""
Canonical text of sketches and completed models.

``instantiate`` replaces every hole by its table under an interpretation: a
constant table becomes a literal, any other table becomes conditionals over the
hole's parameters, so the result parses back as a hole-free process.
"""

import dataclasses
import enum
import json
import typing

from .ast import (
    Assign,
    EventKind,
    Goto,
    Handler,
    HandlerKind,
    If,
    LocationDecl,
    ProcessSketch,
    Send,
    Statement,
)
from .domain import Domain, format_value
from .expression import Binary, Const, CountAtom, Expression, HoleRef, Name, Unary

INDENT = "    "

# ---------------- hole expansion ----------------


def _replace(expr: Expression, hole_id: str, value) -> Expression:
    """expr 中 ??hole_id 的所有出现替换为常量"""
    match expr:
        case HoleRef(hole_id=h) if h == hole_id:
            return Const(value, span=expr.span)
        case Unary(op=op, operand=operand):
            return Unary(op, _replace(operand, hole_id, value), span=expr.span)
        case Binary(op=op, lhs=lhs, rhs=rhs):
            return Binary(op, _replace(lhs, hole_id, value), _replace(rhs, hole_id, value), span=expr.span)
        case CountAtom(threshold=m, predicate=p):
            return CountAtom(m, _replace(p, hole_id, value), span=expr.span)
    return expr


def _any(items: typing.Sequence[Expression]) -> Expression:
    if not items:
        return Const(False)
    result = items[0]
    for item in items[1:]:
        result = Binary("or", result, item)
    return result


def _all(items: typing.Sequence[Expression]) -> Expression:
    if not items:
        return Const(True)
    result = items[0]
    for item in items[1:]:
        result = Binary("and", result, item)
    return result


class _Expander:
    def __init__(self, sketch: ProcessSketch, interpretation) -> None:
        self._sketch = sketch
        self._interpretation = interpretation

    def _groups(self, hole_id: str) -> typing.List[typing.Tuple[typing.Any, Expression]]:
        """(value, condition on parameters) per distinct value, in first-seen order"""
        signature = self._sketch.hole_map[hole_id]
        table = self._interpretation.table(hole_id)
        grouped: typing.Dict[typing.Any, typing.List[Expression]] = {}
        for args in signature.grid:
            match = _all([Binary("=", Name(p), Const(a)) for p, a in zip(signature.params, args)])
            grouped.setdefault(table[args], []).append(match)
        return [(value, _any(matches)) for value, matches in grouped.items()]

    def _first_hole(self, exprs: typing.Iterable[Expression]) -> str | None:
        for expr in exprs:
            for ref in expr.holes():
                return ref.hole_id
        return None

    def expression(self, expr: Expression | None) -> Expression | None:
        """Boolean context: OR over values of (arguments match ∧ expr[hole := value])."""
        if expr is None:
            return None
        hole_id = self._first_hole([expr])
        if hole_id is None:
            return expr
        if self._interpretation.is_constant(hole_id):
            value = next(iter(self._interpretation.table(hole_id).values()))
            return self.expression(_replace(expr, hole_id, value))
        if isinstance(expr, HoleRef):
            return _any([cond for value, cond in self._groups(hole_id) if value is True])
        branches = [
            Binary("and", cond, self.expression(_replace(expr, hole_id, value)))
            for value, cond in self._groups(hole_id)
        ]
        return _any(branches)

    def statements(self, stmts: typing.Iterable[Statement]) -> typing.Tuple[Statement, ...]:
        result = []
        for stmt in stmts:
            result.extend(self.statement(stmt))
        return tuple(result)

    def statement(self, stmt: Statement) -> typing.Tuple[Statement, ...]:
        match stmt:
            case If(cond=cond, then=then, orelse=orelse):
                return (If(self.expression(cond), self.statements(then), self.statements(orelse), span=stmt.span),)
            case Goto(target=HoleRef(hole_id=hole_id)):
                return self._chain(hole_id, lambda v: Goto(v, span=stmt.span))
            case Assign(var=var, expr=expr):
                hole_id = self._first_hole([expr])
                if hole_id is None:
                    return (stmt,)
                return self._chain(hole_id, lambda v: Assign(var, _replace(expr, hole_id, v), span=stmt.span))
        return (stmt,)

    def _chain(self, hole_id: str, make: typing.Callable[[typing.Any], Statement]) -> typing.Tuple[Statement, ...]:
        """if-chain grouped by value; the last value takes the final else"""
        if self._interpretation.is_constant(hole_id):
            value = next(iter(self._interpretation.table(hole_id).values()))
            return self.statement(make(value))
        groups = self._groups(hole_id)
        *head, (last_value, _) = groups
        tail = self.statement(make(last_value))
        for value, cond in reversed(head):
            tail = (If(cond, self.statement(make(value)), tail),)
        return tail

    def handler(self, handler: Handler) -> Handler:
        cardinality = handler.cardinality
        if isinstance(cardinality, HoleRef):
            cardinality = self._interpretation.value(cardinality.hole_id, ())
        return dataclasses.replace(
            handler,
            guard=self.expression(handler.guard),
            body=self.statements(handler.body),
            win=self.statements(handler.win),
            lose=self.statements(handler.lose),
            cardinality=cardinality,
        )


def instantiate(sketch: ProcessSketch, interpretation) -> ProcessSketch:
    """The hole-free process P_I as a sketch without holes."""
    expander = _Expander(sketch, interpretation)
    locations = tuple(
        LocationDecl(loc.name, loc.initial, tuple(expander.handler(h) for h in loc.handlers), span=loc.span)
        for loc in sketch.locations
    )
    events = tuple(
        dataclasses.replace(e, cardinality=interpretation.value(e.cardinality.hole_id, ()))
        if isinstance(e.cardinality, HoleRef)
        else e
        for e in sketch.events
    )
    return ProcessSketch(sketch.name, sketch.variables, events, locations, (), source=sketch.source)


# ---------------- text ----------------


def _send_text(send: Send) -> str:
    text = f"{send.kind}({send.event}"
    if send.payload is not None:
        text += f"[{send.payload.render()}]"
    if send.target is not None:
        text += f", {send.target.render()}"
    return text + ")"


def _statement_lines(stmt: Statement, depth: int) -> typing.List[str]:
    pad = INDENT * depth
    match stmt:
        case Assign(var=var, expr=expr):
            return [f"{pad}{var} := {expr.render()};"]
        case Goto(target=target):
            return [f"{pad}goto {target.render() if isinstance(target, HoleRef) else target};"]
        case Send():
            return [f"{pad}{_send_text(stmt)};"]
        case If(cond=cond, then=then, orelse=orelse):
            lines = [f"{pad}if ({cond.render()}) {{"]
            lines += [line for s in then for line in _statement_lines(s, depth + 1)]
            if orelse:
                lines.append(f"{pad}}} else {{")
                lines += [line for s in orelse for line in _statement_lines(s, depth + 1)]
            lines.append(f"{pad}}}")
            return lines
    raise TypeError(f"Unknown statement {stmt!r}")


def _cardinality_text(value) -> str:
    return value.render() if isinstance(value, HoleRef) else str(value)


def _handler_lines(handler: Handler) -> typing.List[str]:
    match handler.kind:
        case HandlerKind.RECV:
            header = f"recv({handler.event})"
        case HandlerKind.PARTITION:
            header = f"partition<{handler.event}>(All, {_cardinality_text(handler.cardinality)})"
        case HandlerKind.CONSENSUS:
            proposal = handler.proposal or "_"
            header = f"consensus<{handler.event}>(All, {_cardinality_text(handler.cardinality)}, {proposal})"
        case _:
            header = "_"
    text = f"{INDENT}on {header}"
    if handler.guard is not None:
        text += f" when {handler.guard.render()}"
    if handler.kind is HandlerKind.PARTITION:
        lines = [text, f"{INDENT * 2}win:"]
        lines += [line for s in handler.win for line in _statement_lines(s, 3)]
        lines.append(f"{INDENT * 2}lose:")
        lines += [line for s in handler.lose for line in _statement_lines(s, 3)]
        return lines
    return [text + " do"] + [line for s in handler.body for line in _statement_lines(s, 2)]


def pretty_print(sketch: ProcessSketch) -> str:
    lines = [f"process {sketch.name}"]
    if sketch.variables:
        lines.append("variables")
        for var in sketch.variables:
            init = "" if var.initial is None else f" = {format_value(var.initial)}"
            lines.append(f"{INDENT}{var.domain} {var.name}{init}")
    declared = [e for e in sketch.events if e.kind in (EventKind.BROADCAST, EventKind.RENDEZVOUS)]
    if declared:
        lines.append("events")
        for event in declared:
            kind = "bcast" if event.kind is EventKind.BROADCAST else "rend"
            payload = "" if event.payload is None else f" : {event.payload}"
            lines.append(f"{INDENT}{'env ' if event.env else ''}{kind} {event.name}{payload}")
    for loc in sketch.locations:
        lines.append("")
        lines.append(f"{'initial ' if loc.initial else ''}location {loc.name}")
        for handler in loc.handlers:
            lines.extend(_handler_lines(handler))
    return "\n".join(lines) + "\n"


def substitute(sketch: ProcessSketch, interpretation) -> str:
    return pretty_print(instantiate(sketch, interpretation))


def _ast_data(obj):
    if isinstance(obj, Domain):
        return str(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        data = {"node": type(obj).__name__}
        for f in dataclasses.fields(obj):
            if f.name in ("span", "source"):
                continue
            data[f.name] = _ast_data(getattr(obj, f.name))
        return data
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, (tuple, list)):
        return [_ast_data(v) for v in obj]
    return obj


def dump_ast(sketch: ProcessSketch) -> str:
    return json.dumps(_ast_data(sketch), sort_keys=True, indent=2)
