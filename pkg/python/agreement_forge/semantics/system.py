"""
Global semantics M_I(n): n identical processes under one interpretation.

Successors follow the event rules: internal steps and environment stimuli move
one process; a rendezvous moves a sender and one receiver; a broadcast moves the
sender and every other process; partition and consensus rounds move every
participant at once. Rounds and events that no process can take are recorded as
disabled global transitions, one entry per process holding a disabled handler.
"""

import collections
import dataclasses
import functools
import itertools
import typing

from ..lang.ast import EventKind, Handler, ProcessSketch
from ..lang.domain import Value, format_value
from ..lang.expression import HoleRef
from ..learner.constraint import TRUE, App, Constraint, cmp
from ..utils.envs import FORGE_STATE_BOUND
from ..utils.exceptions import ResourceLimit
from ..utils.logger import logger
from .local import ConcreteProcess, DisabledTransition, LocalSemantics, LocalTransition, build_local_semantics
from .state import LocalState

GlobalState = typing.Tuple[LocalState, ...]


def format_global(q: GlobalState) -> str:
    return "[" + " ".join(str(s) for s in q) + "]"


@dataclasses.dataclass(frozen=True)
class GlobalTransition:
    src: GlobalState
    event: str  # 事件名; 不发送的 internal 处理器用其 id
    kind: EventKind
    active: typing.Tuple[typing.Tuple[int, LocalTransition], ...]
    dst: GlobalState
    payload: Value | None = None
    blocked: typing.Tuple[typing.Tuple[int, DisabledTransition], ...] = ()
    cardinality: Constraint = TRUE

    @property
    def fired(self) -> typing.FrozenSet[str]:
        names = {self.event}
        for _, t in self.active:
            names.update(t.emits)
        return frozenset(names)

    @property
    def participants(self) -> typing.Tuple[int, ...]:
        return tuple(i for i, _ in self.active)

    @property
    def key(self) -> tuple:
        return (self.event, self.participants, tuple(t.key for _, t in self.active))

    def __serialize__(self) -> dict:
        return {
            "event": self.event,
            "participants": list(self.participants),
            "payload": self.payload,
            "local": [str(t) for _, t in self.active],
        }

    def __str__(self) -> str:
        payload = "" if self.payload is None else f"[{format_value(self.payload)}]"
        return f"{format_global(self.src)} -{self.event}{payload}@{list(self.participants)}-> {format_global(self.dst)}"


@dataclasses.dataclass(frozen=True)
class GlobalDisabled:
    """Event ``event`` cannot fire at ``src``; ``transitions`` are the disabled handlers of process ``process``."""

    src: GlobalState
    event: str
    process: int
    transitions: typing.Tuple[DisabledTransition, ...]

    def __serialize__(self) -> dict:
        return {"event": self.event, "process": self.process, "local": [str(t) for t in self.transitions]}

    def __str__(self) -> str:
        return f"{format_global(self.src)} -{self.event}@{self.process}-> ⊥"


def event_key(sketch: ProcessSketch, handler: Handler) -> typing.Tuple[str, EventKind]:
    decl = sketch.handler_event(handler)
    if decl is None:
        return handler.id, EventKind.INTERNAL
    return decl.name, decl.kind


class _Successors:
    """Successor generation at one global state."""

    def __init__(self, ls: LocalSemantics, q: GlobalState) -> None:
        self._ls = ls
        self._sketch = ls.sketch
        self._q = q
        self._out = [ls.outgoing(s) for s in q]
        self._dis = [ls.outgoing_disabled(s) for s in q]

    def _handler(self, t) -> Handler:
        return self._sketch.handler_map[t.handler]

    def _move(self, moves: typing.Iterable[typing.Tuple[int, LocalTransition]]) -> GlobalState:
        dst = list(self._q)
        for i, t in moves:
            dst[i] = t.dst
        return tuple(dst)

    def _make(self, event, kind, moves, payload=None, blocked=(), cardinality=TRUE) -> GlobalTransition:
        moves = tuple(sorted(moves, key=lambda m: m[0]))
        return GlobalTransition(self._q, event, kind, moves, self._move(moves), payload, tuple(blocked), cardinality)

    def _blocked(
        self, event: str, participants: typing.Iterable[int]
    ) -> typing.List[typing.Tuple[int, DisabledTransition]]:
        """Disabled handlers of ``event`` at processes outside the round."""
        skip = set(participants)
        return [
            (j, d)
            for j, ds in enumerate(self._dis)
            if j not in skip
            for d in ds
            if event_key(self._sketch, self._handler(d))[0] == event
        ]

    def _round_size(self, event: str) -> typing.Tuple[int, App | None]:
        decl = self._sketch.event_map[event]
        if isinstance(decl.cardinality, HoleRef):
            hole = decl.cardinality.hole_id
            return self._ls.interpretation.value(hole, ()), App(hole, ())
        return decl.cardinality, None

    @staticmethod
    def _cardinality(app: App | None, chosen: int, available: int) -> Constraint:
        """the cardinality values that pick exactly ``chosen`` of ``available``"""
        if app is None:
            return TRUE
        if chosen < available:
            return cmp("=", app, chosen)
        return cmp(">=", app, available)

    def enabled(self) -> typing.List[GlobalTransition]:
        result: typing.List[GlobalTransition] = []
        rounds: typing.Dict[str, typing.Dict[int, typing.Dict[str, typing.List[LocalTransition]]]] = {}
        stimuli: typing.Set[str] = set()
        for i, transitions in enumerate(self._out):
            for t in transitions:
                handler = self._handler(t)
                event, kind = event_key(self._sketch, handler)
                env = self._sketch.is_env_event(event)
                match kind:
                    case EventKind.INTERNAL:
                        result.append(self._make(event, kind, [(i, t)]))
                    case EventKind.PARTITION | EventKind.CONSENSUS:
                        rounds.setdefault(event, {}).setdefault(i, {}).setdefault(t.handler, []).append(t)
                    case EventKind.BROADCAST if env and t.action.kind == "R":
                        stimuli.add(event)
                    case _ if env:
                        result.append(self._make(event, kind, [(i, t)], t.payload))
                    case EventKind.RENDEZVOUS if t.action.kind == "A":
                        for j, ts in enumerate(self._out):
                            if j != i:
                                for r in ts:
                                    if self._receives(r, event, t.payload):
                                        result.append(self._make(event, kind, [(i, t), (j, r)], t.payload))
                    case EventKind.BROADCAST if t.action.kind == "A":
                        result.extend(self._broadcast(i, t, event))
        for event in sorted(stimuli):
            result.extend(self._env_broadcast(event))
        for event, members in rounds.items():
            if self._sketch.event_map[event].kind is EventKind.PARTITION:
                result.extend(self._partition(event, members))
            else:
                result.extend(self._consensus(event, members))
        result.sort(key=lambda r: r.key)
        return result

    @staticmethod
    def _receives(t: LocalTransition, event: str, payload=None, check_payload: bool = True) -> bool:
        if t.action.kind != "R" or t.action.event != event:
            return False
        return not check_payload or payload is None or (t.payload == payload and type(t.payload) is type(payload))

    def _broadcast(self, i: int, t: LocalTransition, event: str) -> typing.List[GlobalTransition]:
        choices = []
        for j, ts in enumerate(self._out):
            if j == i:
                continue
            options = [(j, r) for r in ts if self._receives(r, event, t.payload)]
            if not options:
                return []
            choices.append(options)
        return [
            self._make(event, EventKind.BROADCAST, [(i, t), *combo], t.payload) for combo in itertools.product(*choices)
        ]

    def _env_broadcast(self, event: str) -> typing.List[GlobalTransition]:
        payloads = collections.OrderedDict()
        for ts in self._out:
            for r in ts:
                if self._receives(r, event, check_payload=False):
                    payloads[(type(r.payload).__name__, r.payload)] = r.payload
        result = []
        for payload in payloads.values():
            choices = []
            for j, ts in enumerate(self._out):
                options = [(j, r) for r in ts if self._receives(r, event, payload)]
                if not options:
                    break
                choices.append(options)
            else:
                result.extend(
                    self._make(event, EventKind.BROADCAST, combo, payload) for combo in itertools.product(*choices)
                )
        return result

    def _partition(self, event, members) -> typing.List[GlobalTransition]:
        k, app = self._round_size(event)
        participants = sorted(members)
        winners = min(k, len(participants))
        blocked = self._blocked(event, participants)
        cardinality = self._cardinality(app, winners, len(participants))
        result = []
        for handlers in itertools.product(*(sorted(members[i]) for i in participants)):
            for chosen in itertools.combinations(participants, winners):
                moves = []
                for i, handler in zip(participants, handlers):
                    branch = "win" if i in chosen else "lose"
                    t = next((x for x in members[i][handler] if x.branch == branch), None)
                    if t is None:
                        break
                    moves.append((i, t))
                else:
                    result.append(self._make(event, EventKind.PARTITION, moves, None, blocked, cardinality))
        return result

    def _consensus(self, event, members) -> typing.List[GlobalTransition]:
        k, app = self._round_size(event)
        participants = sorted(members)
        blocked = self._blocked(event, participants)
        result = []
        for handlers in itertools.product(*(sorted(members[i]) for i in participants)):
            proposals = set()
            for i, handler in zip(participants, handlers):
                var = self._sketch.handler_map[handler].proposal
                if var is not None:
                    proposals.add(self._ls.space.value(self._q[i], var))
            if not proposals:
                continue
            distinct = sorted(proposals)
            size = min(k, len(distinct))
            cardinality = self._cardinality(app, size, len(distinct))
            for decided in itertools.combinations(distinct, size):
                moves = []
                for i, handler in zip(participants, handlers):
                    kind = "A" if self._sketch.handler_map[handler].proposal is not None else "R"
                    t = next(
                        (x for x in members[i][handler] if x.decided == decided and x.action.kind == kind),
                        None,
                    )
                    if t is None:
                        break
                    moves.append((i, t))
                else:
                    result.append(self._make(event, EventKind.CONSENSUS, moves, None, blocked, cardinality))
        return result

    def disabled(self, enabled: typing.Iterable[GlobalTransition]) -> typing.List[GlobalDisabled]:
        live = {r.event for r in enabled}
        grouped: typing.Dict[typing.Tuple[str, int], typing.List[DisabledTransition]] = {}
        for j, ds in enumerate(self._dis):
            for d in ds:
                event = event_key(self._sketch, self._handler(d))[0]
                if event not in live:
                    grouped.setdefault((event, j), []).append(d)
        return [GlobalDisabled(self._q, event, j, tuple(ds)) for (event, j), ds in sorted(grouped.items())]


def successors_at(
    ls: LocalSemantics, q: GlobalState
) -> typing.Tuple[typing.List[GlobalTransition], typing.List[GlobalDisabled]]:
    """Enabled and disabled global transitions at any tuple of local states, reachable or not."""
    generator = _Successors(ls, q)
    enabled = generator.enabled()
    return enabled, generator.disabled(enabled)


class GlobalSemantics:
    def __init__(self, ls: LocalSemantics, n: int, state_bound: int | None = None) -> None:
        if n < 1:
            raise ValueError(f"System size must be positive, got {n}")
        self._ls = ls
        self._n = n
        self._state_bound = state_bound or FORGE_STATE_BOUND
        self._initial: GlobalState = (ls.initial,) * n
        self._successors: typing.Dict[GlobalState, typing.Tuple[list, list]] = {}
        self._parents: typing.Dict[GlobalState, GlobalTransition | None] = {self._initial: None}
        self._states: typing.List[GlobalState] = [self._initial]
        self._build()

    def _build(self) -> None:
        queue = collections.deque([self._initial])
        while queue:
            q = queue.popleft()
            enabled, _ = self.successors(q)
            for r in enabled:
                if r.dst not in self._parents:
                    self._parents[r.dst] = r
                    self._states.append(r.dst)
                    if len(self._states) > self._state_bound:
                        raise ResourceLimit("state", self._state_bound, f"global states at n={self._n}")
                    queue.append(r.dst)
        logger.debug(f"Global semantics n={self._n}: {len(self._states)} states")

    @property
    def local(self) -> LocalSemantics:
        return self._ls

    @property
    def sketch(self) -> ProcessSketch:
        return self._ls.sketch

    @property
    def n(self) -> int:
        return self._n

    @property
    def initial(self) -> GlobalState:
        return self._initial

    @property
    def states(self) -> typing.List[GlobalState]:
        return self._states

    def __contains__(self, q) -> bool:
        return q in self._parents

    def successors(self, q: GlobalState) -> typing.Tuple[typing.List[GlobalTransition], typing.List[GlobalDisabled]]:
        cached = self._successors.get(q, None)
        if cached is None:
            cached = successors_at(self._ls, q)
            self._successors[q] = cached
        return cached

    @property
    def transitions(self) -> typing.Generator[GlobalTransition, None, None]:
        for q in self._states:
            yield from self.successors(q)[0]

    @property
    def disabled(self) -> typing.Generator[GlobalDisabled, None, None]:
        for q in self._states:
            yield from self.successors(q)[1]

    def trace_to(self, q: GlobalState) -> typing.List[GlobalTransition]:
        """The breadth-first (shortest) trace from q0 to ``q``."""
        trace = []
        while (r := self._parents.get(q, None)) is not None:
            trace.append(r)
            q = r.src
        return trace[::-1]

    @functools.cached_property
    def ready(self) -> typing.Dict[GlobalState, typing.FrozenSet[str]]:
        return {q: frozenset(r.event for r in self.successors(q)[0]) for q in self._states}

    def __str__(self) -> str:
        return f"<GlobalSemantics n={self._n} {len(self._states)} states>"


def build_global_semantics(
    process: ConcreteProcess | LocalSemantics, n: int, state_bound: int | None = None
) -> GlobalSemantics:
    ls = process if isinstance(process, LocalSemantics) else build_local_semantics(process)
    return GlobalSemantics(ls, n, state_bound)


def global_successors(
    gs: GlobalSemantics, q: GlobalState
) -> typing.Tuple[typing.List[GlobalTransition], typing.List[GlobalDisabled]]:
    return gs.successors(q)
