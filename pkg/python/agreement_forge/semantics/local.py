"""
Local semantics of a process sketch.

``SketchSemantics`` explores every outcome of every handler under every hole
value once per sketch; each edge carries the ground constraint that selects it.
``build_local_semantics`` restricts that graph to one interpretation, which
gives the augmented local semantics: enabled transitions plus the disabled
ones whose guard is false under the interpretation.
"""

import collections
import dataclasses
import functools
import typing

import networkx as nx

from ..lang.ast import Action, Handler, HandlerKind, ProcessSketch
from ..lang.domain import Value, format_value
from ..learner.constraint import FALSE, TRUE, Constraint, conj, disj, holds
from ..learner.interpretation import Interpretation
from ..utils.envs import FORGE_STATE_BOUND, FORGE_STRICT_DOMAINS
from ..utils.exceptions import DomainError, InterpretationError, ResourceLimit
from ..utils.logger import logger
from .executor import Case, Outcome, SymbolicExecutor
from .state import LocalState, StateSpace


@dataclasses.dataclass(frozen=True)
class LocalTransition:
    src: LocalState
    action: Action
    handler: str
    dst: LocalState
    payload: Value | None = None
    decided: typing.Tuple[Value, ...] | None = None
    branch: str = "body"
    emits: typing.FrozenSet[str] = frozenset()
    sketch: bool = dataclasses.field(default=False, compare=False)

    @property
    def key(self) -> tuple:
        return (self.src, str(self.action), self.handler, self.dst, repr(self.payload), repr(self.decided))

    def __str__(self) -> str:
        label = str(self.action)
        if self.payload is not None:
            label += f"[{format_value(self.payload)}]"
        if self.decided is not None:
            label += "{" + ",".join(format_value(v) for v in self.decided) + "}"
        return f"{self.src} -{label}/{self.handler}-> {self.dst}"


@dataclasses.dataclass(frozen=True)
class DisabledTransition:
    src: LocalState
    action: Action
    handler: str
    payload: Value | None = None

    @property
    def key(self) -> tuple:
        return (self.src, str(self.action), self.handler, None, repr(self.payload), "")

    def __str__(self) -> str:
        label = str(self.action) if self.payload is None else f"{self.action}[{format_value(self.payload)}]"
        return f"{self.src} -{label}/{self.handler}-> ⊥"


def outcome_actions(sketch: ProcessSketch, handler: Handler, outcome: Outcome) -> typing.Tuple[Action, ...]:
    """Action labels a handler outcome carries."""
    actions = sketch.actions_of(handler)
    if handler.kind is HandlerKind.PARTITION:
        return (actions[0],) if outcome.branch == "win" else (actions[1],)
    return actions


def transition_payload(case: Case, outcome: Outcome) -> Value | None:
    """received payload for recv handlers, sent payload for sending internal handlers"""
    return outcome.payload if case.handler.kind is HandlerKind.INTERNAL else case.payload


def disabled_action(sketch: ProcessSketch, handler: Handler) -> Action:
    return sketch.actions_of(handler)[-1]


def is_internal(sketch: ProcessSketch, t: "LocalTransition | DisabledTransition", strict: bool = False) -> bool:
    """internal 迁移; 非 strict 时环境事件迁移也算"""
    if t.action.kind == "int":
        return True
    return not strict and sketch.is_env_event(t.action.event)


class SketchSemantics:
    """
    与解释无关的潜在迁移图

    每条边 (s, s') 的属性 ``condition`` 是使某个处理器从 s 走到 s' 的约束之析取;
    ``concrete`` 为只经由恒真边可达的状态集合.
    """

    def __init__(self, sketch: ProcessSketch, state_bound: int | None = None) -> None:
        self._sketch = sketch
        self._space = StateSpace(sketch)
        self._executor = SymbolicExecutor(sketch, self._space)
        self._state_bound = state_bound or FORGE_STATE_BOUND
        self._cases: typing.Dict[LocalState, typing.Tuple[Case, ...]] = {}
        self._graph = nx.DiGraph()
        self._explore()
        self._concrete = self._concrete_states()

    @property
    def sketch(self) -> ProcessSketch:
        return self._sketch

    @property
    def space(self) -> StateSpace:
        return self._space

    @property
    def executor(self) -> SymbolicExecutor:
        return self._executor

    @property
    def graph(self) -> nx.DiGraph:
        return self._graph

    @property
    def initial(self) -> LocalState:
        return self._space.initial

    @property
    def concrete(self) -> typing.FrozenSet[LocalState]:
        return self._concrete

    def cases(self, state: LocalState) -> typing.Tuple[Case, ...]:
        return self._cases[state]

    def states(self) -> typing.List[LocalState]:
        return list(self._cases)

    def _explore(self) -> None:
        edges: typing.Dict[tuple, typing.List[Constraint]] = collections.defaultdict(list)
        queue = collections.deque([self.initial])
        self._graph.add_node(self.initial)
        seen = {self.initial}
        while queue:
            state = queue.popleft()
            loc = self._sketch.location_map[state.location]
            cases = tuple(case for handler in loc.handlers for case in self._executor.cases(handler, state))
            self._cases[state] = cases
            for case in cases:
                if case.guard == FALSE:
                    continue
                for outcome in case.outcomes:
                    condition = conj(case.guard, outcome.condition)
                    if condition == FALSE:
                        continue
                    edges[(state, outcome.dst)].append(condition)
                    if outcome.dst not in seen:
                        seen.add(outcome.dst)
                        if len(seen) > self._state_bound:
                            raise ResourceLimit("state", self._state_bound, f"local states of '{self._sketch.name}'")
                        queue.append(outcome.dst)
        for (u, v), conditions in edges.items():
            self._graph.add_edge(u, v, condition=disj(conditions))
        logger.debug(f"Sketch semantics of '{self._sketch.name}': {len(seen)} potential states")

    def _concrete_states(self) -> typing.FrozenSet[LocalState]:
        sure = nx.DiGraph()
        sure.add_node(self.initial)
        sure.add_edges_from((u, v) for u, v, c in self._graph.edges(data="condition") if c == TRUE)
        return frozenset(nx.descendants(sure, self.initial) | {self.initial})

    def matching(self, t: LocalTransition) -> typing.Iterator[typing.Tuple[Case, Outcome]]:
        """(case, outcome) pairs producing ``t``"""
        for case in self._cases.get(t.src, ()):
            if case.handler.id != t.handler:
                continue
            for outcome in case.outcomes:
                payload = transition_payload(case, outcome)
                if (
                    payload == t.payload
                    and type(payload) is type(t.payload)
                    and outcome.dst == t.dst
                    and outcome.branch == t.branch
                    and outcome.decided == t.decided
                    and outcome.emits == t.emits
                ):
                    yield case, outcome

    def transition_condition(self, t: LocalTransition) -> Constraint:
        """hasAction ∧ goesTo of one (payload- and decided-specific) transition."""
        return disj(conj(case.guard, outcome.condition) for case, outcome in self.matching(t))

    def outcome_condition(self, t: LocalTransition) -> Constraint:
        """goesTo alone"""
        return disj(outcome.condition for _, outcome in self.matching(t))

    def guard_condition(self, src: LocalState, handler: str, payload: Value | None = None) -> Constraint:
        for case in self._cases.get(src, ()):
            if case.handler.id == handler and case.payload == payload and type(case.payload) is type(payload):
                return case.guard
        raise KeyError(f"No handler {handler} at {src}")


@functools.lru_cache(maxsize=8)
def sketch_semantics(sketch: ProcessSketch) -> SketchSemantics:
    return SketchSemantics(sketch)


@dataclasses.dataclass(frozen=True)
class ConcreteProcess:
    """P_I: a sketch paired with the interpretation its holes read."""

    sketch: ProcessSketch
    interpretation: Interpretation

    @property
    def semantics(self) -> SketchSemantics:
        return sketch_semantics(self.sketch)


def complete(sketch: ProcessSketch, interpretation: Interpretation | None = None) -> ConcreteProcess:
    if interpretation is None:
        interpretation = Interpretation([], {})
    known = {s.id for s in interpretation.signatures}
    for signature in sketch.holes:
        if signature.id not in known:
            raise InterpretationError(f"Interpretation has no entry for hole ??{signature.id}")
    return ConcreteProcess(sketch, interpretation)


class LocalSemantics:
    """⟦P_I⟧ with disabled transitions."""

    def __init__(
        self,
        process: ConcreteProcess,
        states: typing.List[LocalState],
        enabled: typing.List[LocalTransition],
        disabled: typing.List[DisabledTransition],
        parents: typing.Dict[LocalState, LocalTransition | None],
    ) -> None:
        self._process = process
        self._states = tuple(states)
        self._enabled = tuple(enabled)
        self._disabled = tuple(disabled)
        self._parents = parents
        self._state_set = frozenset(states)
        self._enabled_set = frozenset(enabled)
        self._disabled_set = frozenset(disabled)
        self._out: typing.Dict[LocalState, typing.List[LocalTransition]] = collections.defaultdict(list)
        self._out_disabled: typing.Dict[LocalState, typing.List[DisabledTransition]] = collections.defaultdict(list)
        for t in self._enabled:
            self._out[t.src].append(t)
        for t in self._disabled:
            self._out_disabled[t.src].append(t)

    @property
    def process(self) -> ConcreteProcess:
        return self._process

    @property
    def sketch(self) -> ProcessSketch:
        return self._process.sketch

    @property
    def potential(self) -> SketchSemantics:
        return self._process.semantics

    @property
    def space(self) -> StateSpace:
        return self.potential.space

    @property
    def interpretation(self) -> Interpretation:
        return self._process.interpretation

    @property
    def initial(self) -> LocalState:
        return self.potential.initial

    @property
    def states(self) -> typing.Tuple[LocalState, ...]:
        return self._states

    @property
    def enabled(self) -> typing.Tuple[LocalTransition, ...]:
        return self._enabled

    @property
    def disabled(self) -> typing.Tuple[DisabledTransition, ...]:
        return self._disabled

    @property
    def events(self) -> typing.Tuple[str, ...]:
        return tuple(e.name for e in self.sketch.events)

    def __contains__(self, item) -> bool:
        if isinstance(item, LocalTransition):
            return item in self._enabled_set
        if isinstance(item, DisabledTransition):
            return item in self._disabled_set
        return item in self._state_set

    def outgoing(self, state: LocalState) -> typing.List[LocalTransition]:
        return self._out.get(state, [])

    def outgoing_disabled(self, state: LocalState) -> typing.List[DisabledTransition]:
        return self._out_disabled.get(state, [])

    def is_concrete(self, state: LocalState) -> bool:
        return state in self.potential.concrete

    def path_to(self, state: LocalState) -> typing.List[LocalTransition]:
        """The breadth-first path recorded during construction."""
        path = []
        while (t := self._parents.get(state, None)) is not None:
            path.append(t)
            state = t.src
        return path[::-1]

    @functools.cached_property
    def graph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(self._states)
        for t in self._enabled:
            g.add_edge(t.src, t.dst, key=t.key, transition=t)
        return g

    def __str__(self) -> str:
        counts = f"{len(self._states)} states, {len(self._enabled)} enabled, {len(self._disabled)} disabled"
        return f"<LocalSemantics {counts}>"


def build_local_semantics(process: ConcreteProcess, strict: bool | None = None) -> LocalSemantics:
    """Restrict the sketch semantics to the outcomes selected by the interpretation."""
    strict = FORGE_STRICT_DOMAINS if strict is None else strict
    sketch = process.sketch
    potential = process.semantics
    interpretation = process.interpretation

    initial = potential.initial
    states = [initial]
    parents: typing.Dict[LocalState, LocalTransition | None] = {initial: None}
    enabled: typing.List[LocalTransition] = []
    disabled: typing.List[DisabledTransition] = []
    queue = collections.deque([initial])
    while queue:
        state = queue.popleft()
        for case in potential.cases(state):
            handler = case.handler
            if not holds(case.guard, interpretation):
                disabled.append(DisabledTransition(state, disabled_action(sketch, handler), handler.id, case.payload))
                continue
            for outcome in case.outcomes:
                if not holds(outcome.condition, interpretation):
                    continue
                if strict and outcome.overflow:
                    var, value = outcome.overflow[0]
                    raise DomainError(var, value, state, handler.id)
                is_sketch = state in potential.concrete and conj(case.guard, outcome.condition) == TRUE
                for action in outcome_actions(sketch, handler, outcome):
                    t = LocalTransition(
                        state,
                        action,
                        handler.id,
                        outcome.dst,
                        transition_payload(case, outcome),
                        outcome.decided,
                        outcome.branch,
                        outcome.emits,
                        sketch=is_sketch,
                    )
                    enabled.append(t)
                    if outcome.dst not in parents:
                        parents[outcome.dst] = t
                        states.append(outcome.dst)
                        queue.append(outcome.dst)

    return LocalSemantics(process, states, enabled, disabled, parents)
