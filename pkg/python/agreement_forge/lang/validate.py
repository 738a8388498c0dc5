"""
Cross-reference and type checks for sketches and specification suites.

``validate`` never raises: every problem becomes a ``Diagnostic``.
"""

import dataclasses
import enum
import typing

from .ast import Assign, EventKind, Goto, Handler, HandlerKind, HolePosition, If, ProcessSketch, Send
from .domain import DomainKind
from .expression import (
    Binary,
    COMPARISONS,
    Const,
    CountAtom,
    DecVar,
    Default,
    Expression,
    Field,
    Fired,
    HoleRef,
    Name,
    Span,
    Unary,
)
from .holes import hole_occurrences
from .spec import SpecSuite


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclasses.dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    message: str
    span: Span | None = None

    def __str__(self) -> str:
        where = f"{self.span}: " if self.span is not None else ""
        return f"{where}{self.severity.value}: {self.message}"


_KIND_TYPE = {DomainKind.INT: "int", DomainKind.BOOL: "bool", DomainKind.LOC: "loc"}


class _Checker:
    def __init__(self, sketch: ProcessSketch) -> None:
        self.sketch = sketch
        self.diagnostics: typing.List[Diagnostic] = []

    def error(self, message: str, span: Span | None = None) -> None:
        self.diagnostics.append(Diagnostic(Severity.ERROR, message, span))

    def warning(self, message: str, span: Span | None = None) -> None:
        self.diagnostics.append(Diagnostic(Severity.WARNING, message, span))

    # ---------------- expressions ----------------

    def type_of(self, expr: Expression, handler: Handler | None, in_spec: bool = False) -> str | None:
        """推断表达式类型; None 表示未知 (未标注的 hole)"""
        sketch = self.sketch
        match expr:
            case Const(value=value):
                return "bool" if isinstance(value, bool) else "int"
            case Name(ident=ident):
                if ident in sketch.variable_map:
                    return _KIND_TYPE[sketch.variable_map[ident].domain.kind]
                if in_spec and (ident == "loc" or ident in sketch.location_map):
                    return "loc"
                self.error(f"Unknown name '{ident}'", expr.span)
                return None
            case Field(event=event, field="payld"):
                decl = sketch.event_map.get(event, None)
                if handler is None or handler.kind is not HandlerKind.RECV or handler.event != event:
                    self.error(f"'{event}.payld' is only readable inside 'on recv({event})'", expr.span)
                elif decl is None or decl.payload is None:
                    self.error(f"Event '{event}' carries no payload", expr.span)
                return "int"
            case Field(event=event, field=field):
                self.error(f"'{event}.{field}' may only be used as a reply target", expr.span)
                return None
            case DecVar(event=event, index=index):
                decl = sketch.event_map.get(event, None)
                if handler is None or handler.kind is not HandlerKind.CONSENSUS or handler.event != event:
                    self.error(f"'{event}.decVar' is only readable inside its consensus handler", expr.span)
                    return None
                if isinstance(decl.cardinality, int) and not 1 <= index <= decl.cardinality:
                    self.error(f"'{event}.decVar[{index}]' exceeds the round cardinality {decl.cardinality}", expr.span)
                var = sketch.variable_map.get(decl.proposal_var, None) if decl is not None else None
                if var is None:
                    self.error(f"Consensus '{event}' has no proposing participant to decide from", expr.span)
                    return None
                return _KIND_TYPE[var.domain.kind]
            case Default(var=var):
                if var not in sketch.variable_map:
                    self.error(f"Unknown variable '{var}' in default()", expr.span)
                    return None
                return _KIND_TYPE[sketch.variable_map[var].domain.kind]
            case HoleRef(annotation=annotation):
                if in_spec:
                    self.error(f"Hole ??{expr.hole_id} is not allowed in a specification", expr.span)
                return None if annotation is None else _KIND_TYPE[annotation.kind]
            case Fired(event=event):
                if not in_spec:
                    self.error("fired() is only meaningful in specifications", expr.span)
                elif not self._is_firable_name(event):
                    self.error(f"fired() names unknown event '{event}'", expr.span)
                return "bool"
            case CountAtom(predicate=predicate):
                self.expect(predicate, "bool", None, in_spec=True)
                return "bool"
            case Unary(op="not", operand=operand):
                self.expect(operand, "bool", handler, in_spec)
                return "bool"
            case Unary(operand=operand):
                self.expect(operand, "int", handler, in_spec)
                return "int"
            case Binary(op=op, lhs=lhs, rhs=rhs) if op in ("and", "or"):
                self.expect(lhs, "bool", handler, in_spec)
                self.expect(rhs, "bool", handler, in_spec)
                return "bool"
            case Binary(op=op, lhs=lhs, rhs=rhs) if op in ("+", "-"):
                self.expect(lhs, "int", handler, in_spec)
                self.expect(rhs, "int", handler, in_spec)
                return "int"
            case Binary(op=op, lhs=lhs, rhs=rhs) if op in COMPARISONS:
                left = self.type_of(lhs, handler, in_spec)
                right = self.type_of(rhs, handler, in_spec)
                if left is not None and right is not None and left != right:
                    self.error(f"Cannot compare {left} with {right} in '{expr.render()}'", expr.span)
                elif op not in ("=", "!=") and "int" not in (left, right) and (left or right) is not None:
                    self.error(f"Ordering comparison '{op}' needs integers in '{expr.render()}'", expr.span)
                return "bool"
        self.error(f"Unsupported expression '{expr}'", getattr(expr, "span", None))
        return None

    def expect(self, expr: Expression, expected: str, handler: Handler | None, in_spec: bool = False) -> None:
        found = self.type_of(expr, handler, in_spec)
        if found is not None and found != expected:
            self.error(f"Expected {expected} but '{expr.render()}' is {found}", expr.span)

    def _is_firable_name(self, event: str) -> bool:
        return event in self.sketch.event_map

    # ---------------- sketch ----------------

    def check_declarations(self) -> None:
        sketch = self.sketch
        initial = [loc for loc in sketch.locations if loc.initial]
        if len(initial) != 1:
            self.error(f"Exactly one location must be marked initial, found {len(initial)}")

        for what, names in (
            ("location", [loc.name for loc in sketch.locations]),
            ("variable", [v.name for v in sketch.variables]),
            ("event", [e.name for e in sketch.events]),
        ):
            for name in sorted({n for n in names if names.count(n) > 1}):
                self.error(f"Duplicate {what} '{name}'")

        for var in sketch.variables:
            if var.initial is not None and var.initial not in var.domain:
                self.error(f"Initial value {var.initial} of '{var.name}' is outside {var.domain}", var.span)

        for event in sketch.events:
            if event.payload is not None and event.kind.is_agreement:
                self.error(f"Agreement round '{event.name}' cannot carry a payload", event.span)
            if isinstance(event.cardinality, int) and event.cardinality < 1:
                self.error(f"Cardinality of '{event.name}' must be at least 1", event.span)

    def check_handler(self, handler: Handler) -> None:
        sketch = self.sketch
        event = sketch.event_map.get(handler.event, None) if handler.event is not None else None

        match handler.kind:
            case HandlerKind.PARTITION:
                if handler.body:
                    self.error(f"Partition handler '{handler.id}' needs 'win:' and 'lose:' branches", handler.span)
            case _ if handler.win or handler.lose:
                self.error(f"Only partition handlers may have 'win:'/'lose:' branches ({handler.id})", handler.span)

        match handler.kind:
            case HandlerKind.RECV:
                if event is None:
                    self.error(f"Handler receives undeclared event '{handler.event}'", handler.span)
                elif event.kind.is_agreement:
                    self.error(f"'{handler.event}' is an agreement round, not a message", handler.span)
            case HandlerKind.PARTITION | HandlerKind.CONSENSUS:
                expected = EventKind.PARTITION if handler.kind is HandlerKind.PARTITION else EventKind.CONSENSUS
                if event is not None and event.kind is not expected:
                    self.error(f"Round '{handler.event}' is used both as {event.kind.value} and {expected.value}")
                elif event is not None and not _same_cardinality(event.cardinality, handler.cardinality):
                    self.error(f"Handlers of round '{handler.event}' disagree on cardinality", handler.span)
                if isinstance(handler.cardinality, int) and handler.cardinality < 1:
                    self.error(f"Cardinality of '{handler.event}' must be at least 1", handler.span)
                if handler.proposal is not None and handler.proposal not in sketch.variable_map:
                    self.error(f"Unknown proposal variable '{handler.proposal}'", handler.span)

        if handler.guard is not None:
            self.expect(handler.guard, "bool", handler)

        acting = handler.acting_send
        for stmt in handler.statements():
            self.check_statement(stmt, handler, acting)

    def check_statement(self, stmt, handler: Handler, acting: Send | None) -> None:
        sketch = self.sketch
        match stmt:
            case Assign(var=var, expr=expr):
                decl = sketch.variable_map.get(var, None)
                if decl is None:
                    self.error(f"Assignment to undeclared variable '{var}'", stmt.span)
                    self.type_of(expr, handler)
                else:
                    self.expect(expr, _KIND_TYPE[decl.domain.kind], handler)
            case Goto(target=str() as target):
                if target not in sketch.location_map:
                    self.error(f"goto targets undeclared location '{target}'", stmt.span)
            case If(cond=cond):
                self.expect(cond, "bool", handler)
            case Send(kind=kind, event=name, payload=payload, target=target):
                event = sketch.event_map.get(name, None)
                if event is None:
                    self.error(f"Send of undeclared event '{name}'", stmt.span)
                    return
                expected = EventKind.BROADCAST if kind == "bcast" else EventKind.RENDEZVOUS
                if event.kind is not expected:
                    self.error(f"'{kind}({name})' does not match its declaration as {event.kind.value}", stmt.span)
                if stmt is not acting and not event.env:
                    self.error(
                        f"Send of '{name}' must be the first statement of an 'on _' handler "
                        "(only environment events can be emitted elsewhere)",
                        stmt.span,
                    )
                if (payload is None) != (event.payload is None):
                    self.error(f"Payload of '{name}' does not match its declaration", stmt.span)
                elif payload is not None:
                    self.expect(payload, "int", handler)
                if target is not None and not (isinstance(target, Field) and target.field == "sID"):
                    self.error(f"Reply target of '{name}' must be an 'e.sID' field", stmt.span)

    def check_holes(self) -> None:
        sketch = self.sketch
        seen = {}
        for occurrence in hole_occurrences(sketch):
            ref = occurrence.ref
            if ref.hole_id in seen:
                other, first = seen[ref.hole_id]
                if _same_round_cardinality(first, occurrence):
                    continue
                self.error(
                    f"Hole ??{ref.hole_id} occurs at more than one position"
                    f" (first at {other.span}, again at {ref.span})",
                    ref.span,
                )
                continue
            seen[ref.hole_id] = (ref, occurrence)

            if occurrence.position is None:
                self.error(f"Hole ??{ref.hole_id} is in an unsupported position", ref.span)
                continue
            if occurrence.position is HolePosition.GOTO_TARGET and ref.annotation is not None:
                self.error(f"Hole ??{ref.hole_id} cannot carry a type annotation here", ref.span)
            if occurrence.position is HolePosition.CARDINALITY and ref.annotation is not None:
                if ref.annotation.kind is not DomainKind.INT or min(ref.annotation.values) < 1:
                    self.error(f"Cardinality hole ??{ref.hole_id} needs a positive int range", ref.span)
            if occurrence.position is HolePosition.CARDINALITY and ref.params:
                self.error(f"Cardinality hole ??{ref.hole_id} takes no parameters", ref.span)
            if not occurrence.whole and ref.annotation is None:
                self.error(
                    f"Hole ??{ref.hole_id} inside a larger expression needs a type annotation", ref.span
                )
            for param in ref.params or ():
                if param not in sketch.variable_map:
                    self.error(f"Parameter '{param}' of ??{ref.hole_id} is not a declared variable", ref.span)

    # ---------------- spec ----------------

    def check_spec(self, spec: SpecSuite) -> None:
        for line in spec.safety:
            for atom in line.atoms:
                self.type_of(atom, None, in_spec=True)
        for line in spec.liveness:
            for prop in (line.p, line.q):
                if prop is not None:
                    self.expect(prop, "bool", None, in_spec=True)


def _same_round_cardinality(a, b) -> bool:
    """同一轮次的多个处理器共享同一个基数 hole"""
    return (
        a.position is HolePosition.CARDINALITY
        and b.position is HolePosition.CARDINALITY
        and a.handler.event == b.handler.event
    )


def _same_cardinality(a, b) -> bool:
    if isinstance(a, HoleRef) and isinstance(b, HoleRef):
        return a.hole_id == b.hole_id
    return a == b


def validate_sketch(sketch: ProcessSketch) -> typing.List[Diagnostic]:
    checker = _Checker(sketch)
    checker.check_declarations()
    for handler in sketch.handlers():
        checker.check_handler(handler)
    checker.check_holes()
    return checker.diagnostics


def validate(sketch: ProcessSketch, spec: SpecSuite | None = None) -> typing.List[Diagnostic]:
    """Diagnostics for the sketch and, when given, the spec checked against it."""
    diagnostics = validate_sketch(sketch)
    if spec is not None:
        checker = _Checker(sketch)
        checker.check_spec(spec)
        diagnostics.extend(checker.diagnostics)
    return diagnostics
