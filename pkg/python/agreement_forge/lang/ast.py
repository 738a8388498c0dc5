"""
Sketch AST.

A ``ProcessSketch`` is the parsed form of one ``.mcy`` file: declared variables,
events, locations with their handlers, and the signatures of the holes found in
them. All nodes are frozen dataclasses; equality is structural and ignores
source spans.
"""

import dataclasses
import enum
import functools
import itertools
import math
import typing

from .domain import Domain, Value
from .expression import Expression, HoleRef, Span, _span


class EventKind(enum.Enum):
    BROADCAST = "broadcast"
    RENDEZVOUS = "rendezvous"
    PARTITION = "partition"
    CONSENSUS = "consensus"
    INTERNAL = "internal"

    @property
    def is_global(self) -> bool:
        """broadcast / partition / consensus: E_global"""
        return self in (EventKind.BROADCAST, EventKind.PARTITION, EventKind.CONSENSUS)

    @property
    def is_agreement(self) -> bool:
        return self in (EventKind.PARTITION, EventKind.CONSENSUS)


class HandlerKind(enum.Enum):
    RECV = "recv"
    PARTITION = "partition"
    CONSENSUS = "consensus"
    INTERNAL = "internal"


class HolePosition(enum.Enum):
    GUARD_CONDITION = "guardCondition"
    IF_CONDITION = "ifCondition"
    GOTO_TARGET = "gotoTarget"
    ASSIGN_RHS = "assignRhs"
    CARDINALITY = "cardinality"


@dataclasses.dataclass(frozen=True)
class Action:
    """A(e), R(e) 或 internal"""

    kind: str  # "A" | "R" | "int"
    event: str | None = None

    def __str__(self) -> str:
        return "int" if self.kind == "int" else f"{self.kind}({self.event})"


INTERNAL = Action("int")


@dataclasses.dataclass(frozen=True)
class VarDecl:
    name: str
    domain: Domain
    initial: Value | None = None
    span: Span | None = _span()

    @property
    def init_value(self) -> Value:
        return self.domain.default if self.initial is None else self.initial


@dataclasses.dataclass(frozen=True)
class EventDecl:
    name: str
    kind: EventKind
    env: bool = False
    payload: Domain | None = None
    cardinality: int | HoleRef | None = None
    proposal_var: str | None = None
    participants: str = "All"
    span: Span | None = _span()


# ---- statements ----


class Statement:
    def expressions(self) -> typing.Generator[Expression, None, None]:
        yield from ()

    def substatements(self) -> typing.Generator["Statement", None, None]:
        yield self


@dataclasses.dataclass(frozen=True)
class Assign(Statement):
    var: str
    expr: Expression
    span: Span | None = _span()

    def expressions(self):
        yield self.expr


@dataclasses.dataclass(frozen=True)
class Goto(Statement):
    target: str | HoleRef
    span: Span | None = _span()

    def expressions(self):
        if isinstance(self.target, HoleRef):
            yield self.target


@dataclasses.dataclass(frozen=True)
class If(Statement):
    cond: Expression
    then: typing.Tuple[Statement, ...]
    orelse: typing.Tuple[Statement, ...] = ()
    span: Span | None = _span()

    def expressions(self):
        yield self.cond

    def substatements(self):
        yield self
        for s in self.then + self.orelse:
            yield from s.substatements()


@dataclasses.dataclass(frozen=True)
class Send(Statement):
    """``rend(e[payload], target)`` / ``bcast(e[payload])``"""

    kind: str  # "rend" | "bcast"
    event: str
    payload: Expression | None = None
    target: Expression | None = None
    span: Span | None = _span()

    def expressions(self):
        if self.payload is not None:
            yield self.payload
        if self.target is not None:
            yield self.target


def walk_statements(stmts: typing.Iterable[Statement]) -> typing.Generator[Statement, None, None]:
    for s in stmts:
        yield from s.substatements()


@dataclasses.dataclass(frozen=True)
class Handler:
    location: str
    index: int
    kind: HandlerKind
    event: str | None = None
    guard: Expression | None = None
    body: typing.Tuple[Statement, ...] = ()
    win: typing.Tuple[Statement, ...] = ()
    lose: typing.Tuple[Statement, ...] = ()
    cardinality: int | HoleRef | None = None
    proposal: str | None = None  # consensus 提议变量, None 表示 `_`
    span: Span | None = _span()

    @property
    def id(self) -> str:
        return f"{self.location}#{self.index}"

    @property
    def acting_send(self) -> Send | None:
        """internal 处理器中第一个顶层 send 决定其动作 A(e)"""
        if self.kind is not HandlerKind.INTERNAL:
            return None
        return next((s for s in self.body if isinstance(s, Send)), None)

    def statements(self) -> typing.Generator[Statement, None, None]:
        yield from walk_statements(self.body + self.win + self.lose)

    def expressions(self) -> typing.Generator[Expression, None, None]:
        if self.guard is not None:
            yield self.guard
        if isinstance(self.cardinality, HoleRef):
            yield self.cardinality
        for s in self.statements():
            yield from s.expressions()


@dataclasses.dataclass(frozen=True)
class LocationDecl:
    name: str
    initial: bool = False
    handlers: typing.Tuple[Handler, ...] = ()
    span: Span | None = _span()


@dataclasses.dataclass(frozen=True)
class HoleSignature:
    id: str
    position: HolePosition
    params: typing.Tuple[str, ...]
    domain: Domain
    handler: str | None = None
    param_domains: typing.Tuple[Domain, ...] = ()
    span: Span | None = _span()

    @property
    def grid(self) -> typing.List[typing.Tuple[Value, ...]]:
        """参数值的全部组合, 字典序"""
        return list(itertools.product(*(d.values for d in self.param_domains)))

    @property
    def cells(self) -> int:
        return math.prod(len(d) for d in self.param_domains)

    def __str__(self) -> str:
        return f"??{self.id}({', '.join(self.params)}) : {self.domain} @{self.position.value}"


@dataclasses.dataclass(frozen=True)
class ProcessSketch:
    name: str
    variables: typing.Tuple[VarDecl, ...] = ()
    events: typing.Tuple[EventDecl, ...] = ()
    locations: typing.Tuple[LocationDecl, ...] = ()
    holes: typing.Tuple[HoleSignature, ...] = ()
    source: str | None = dataclasses.field(default=None, compare=False, repr=False)

    @functools.cached_property
    def variable_map(self) -> typing.Dict[str, VarDecl]:
        return {v.name: v for v in self.variables}

    @functools.cached_property
    def event_map(self) -> typing.Dict[str, EventDecl]:
        return {e.name: e for e in self.events}

    @functools.cached_property
    def location_map(self) -> typing.Dict[str, LocationDecl]:
        return {loc.name: loc for loc in self.locations}

    @functools.cached_property
    def hole_map(self) -> typing.Dict[str, HoleSignature]:
        return {h.id: h for h in self.holes}

    @functools.cached_property
    def handler_map(self) -> typing.Dict[str, Handler]:
        return {h.id: h for loc in self.locations for h in loc.handlers}

    @property
    def location_names(self) -> typing.Tuple[str, ...]:
        return tuple(loc.name for loc in self.locations)

    @property
    def location_domain(self) -> Domain:
        return Domain.locations(self.location_names)

    @property
    def initial_location(self) -> str:
        return next(loc.name for loc in self.locations if loc.initial)

    @property
    def is_hole_free(self) -> bool:
        return len(self.holes) == 0

    def handlers(self) -> typing.Generator[Handler, None, None]:
        for loc in self.locations:
            yield from loc.handlers

    def handler_event(self, handler: Handler) -> EventDecl | None:
        name = handler.event
        if handler.kind is HandlerKind.INTERNAL:
            send = handler.acting_send
            name = None if send is None else send.event
        return None if name is None else self.event_map.get(name, None)

    def actions_of(self, handler: Handler) -> typing.Tuple[Action, ...]:
        """处理器可能产生的动作标签"""
        match handler.kind:
            case HandlerKind.RECV:
                return (Action("R", handler.event),)
            case HandlerKind.PARTITION:
                return (Action("A", handler.event), Action("R", handler.event))
            case HandlerKind.CONSENSUS:
                if handler.proposal is None:
                    return (Action("R", handler.event),)
                return (Action("A", handler.event), Action("R", handler.event))
            case _:
                send = handler.acting_send
                return (INTERNAL,) if send is None else (Action("A", send.event),)

    def is_env_event(self, name: str | None) -> bool:
        decl = self.event_map.get(name, None) if name is not None else None
        return decl is not None and decl.env
