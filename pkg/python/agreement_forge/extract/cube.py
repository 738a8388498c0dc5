"""
Cubes of negated conditions and the literals they are built from.

A cube is a conjunction of literals over the local semantics, instantiated for
concrete events and states. Each literal can be re-evaluated on any view of a
semantics (the full one, or just the transitions of a counterexample) and knows
the subset of transitions that witnesses it.
"""

import collections
import dataclasses
import typing

from ..lang.ast import Action
from ..lang.domain import Value, format_value
from ..semantics.local import DisabledTransition, LocalTransition, is_internal
from ..semantics.state import LocalState


@dataclasses.dataclass(frozen=True)
class PartialTransition:
    """(s, h, *): handler h can fire at s, destination left open"""

    src: LocalState
    action: Action
    handler: str
    payload: Value | None = None

    @property
    def key(self) -> tuple:
        return (self.src, str(self.action), self.handler, "*", repr(self.payload), "")

    def __str__(self) -> str:
        label = str(self.action) if self.payload is None else f"{self.action}[{format_value(self.payload)}]"
        return f"{self.src} -{label}/{self.handler}-> *"


@dataclasses.dataclass(frozen=True)
class Witness:
    enabled: typing.FrozenSet[LocalTransition] = frozenset()
    disabled: typing.FrozenSet[DisabledTransition] = frozenset()
    partial: typing.FrozenSet[PartialTransition] = frozenset()

    def __or__(self, other: "Witness") -> "Witness":
        return Witness(self.enabled | other.enabled, self.disabled | other.disabled, self.partial | other.partial)

    def __len__(self) -> int:
        return len(self.enabled) + len(self.disabled) + len(self.partial)

    @property
    def keys(self) -> typing.List[typing.Tuple[str, ...]]:
        """排序用: 各迁移 key 的字符串形式"""
        keys = [t.key for t in self.enabled] + [t.key for t in self.disabled] + [t.key for t in self.partial]
        return sorted(tuple(str(x) for x in k) for k in keys)


class View(typing.Protocol):
    """What literals read from a (sub)semantics."""

    def outgoing(self, state: LocalState) -> typing.Iterable[LocalTransition]: ...

    def outgoing_disabled(self, state: LocalState) -> typing.Iterable[DisabledTransition]: ...

    def has_partial(self, partial: PartialTransition) -> bool: ...

    def is_internal(self, t: LocalTransition | DisabledTransition) -> bool: ...


def fires(t: LocalTransition, partial: PartialTransition) -> bool:
    if t.src != partial.src or t.handler != partial.handler:
        return False
    return partial.payload is None or t.payload == partial.payload


def _closure(view: View, state: LocalState, follow: typing.Callable[[LocalTransition], bool]):
    seen = {state}
    moves = []
    queue = collections.deque([state])
    while queue:
        s = queue.popleft()
        for t in view.outgoing(s):
            if not follow(t):
                continue
            moves.append(t)
            if t.dst not in seen:
                seen.add(t.dst)
                queue.append(t.dst)
    return seen, moves


class Literal:
    def holds(self, view: View) -> bool:
        raise NotImplementedError()

    def witness(self, view: View) -> Witness:
        raise NotImplementedError()


@dataclasses.dataclass(frozen=True)
class Has(Literal):
    """(s, a, s') ∈ T"""

    transition: LocalTransition

    def holds(self, view):
        return self.transition in view.outgoing(self.transition.src)

    def witness(self, view):
        return Witness(enabled=frozenset([self.transition]))

    def __str__(self) -> str:
        return f"{self.transition} ∈ T"


@dataclasses.dataclass(frozen=True)
class HasPartial(Literal):
    partial: PartialTransition

    def holds(self, view):
        return view.has_partial(self.partial)

    def witness(self, view):
        return Witness(partial=frozenset([self.partial]))

    def __str__(self) -> str:
        return f"{self.partial} ∈ T"


@dataclasses.dataclass(frozen=True)
class Lacks(Literal):
    """No enabled transition labelled ``action`` at ``state``."""

    state: LocalState
    action: Action

    def holds(self, view):
        return not any(t.action == self.action for t in view.outgoing(self.state))

    def witness(self, view):
        return Witness(disabled=frozenset(d for d in view.outgoing_disabled(self.state) if d.action == self.action))

    def __str__(self) -> str:
        return f"{self.state} -{self.action}-> ∉ T"


@dataclasses.dataclass(frozen=True)
class NoReactingPath(Literal):
    """¬∃ state ⇝ R(event): no internal path reaches a reacting transition of ``event``."""

    state: LocalState
    event: str

    def _reacts(self, t) -> bool:
        return t.action.kind == "R" and t.action.event == self.event

    def holds(self, view):
        states, _ = _closure(view, self.state, view.is_internal)
        return not any(self._reacts(t) for s in states for t in view.outgoing(s))

    def witness(self, view):
        states, moves = _closure(view, self.state, view.is_internal)
        disabled = frozenset(
            d for s in states for d in view.outgoing_disabled(s) if view.is_internal(d) or self._reacts(d)
        )
        return Witness(enabled=frozenset(moves), disabled=disabled)

    def __str__(self) -> str:
        return f"¬∃ {self.state} ⇝ R({self.event})"


@dataclasses.dataclass(frozen=True)
class Transitions(Literal):
    """A fixed set of enabled transitions: a path, or the membership and connection of a same-phase witness."""

    label: str
    transitions: typing.Tuple[LocalTransition, ...]

    def holds(self, view):
        return all(t in view.outgoing(t.src) for t in self.transitions)

    def witness(self, view):
        return Witness(enabled=frozenset(self.transitions))

    def __str__(self) -> str:
        return f"{self.label}: " + "; ".join(str(t) for t in self.transitions)


@dataclasses.dataclass(frozen=True)
class Trapped(Literal):
    """No path from ``state`` leads back to ``target``."""

    state: LocalState
    target: LocalState

    def holds(self, view):
        states, _ = _closure(view, self.state, lambda t: True)
        return self.target not in states

    def witness(self, view):
        states, moves = _closure(view, self.state, lambda t: True)
        disabled = frozenset(d for s in states for d in view.outgoing_disabled(s))
        return Witness(enabled=frozenset(moves), disabled=disabled)

    def __str__(self) -> str:
        return f"¬∃ {self.state} ⇝ {self.target}"


@dataclasses.dataclass(frozen=True)
class Cube:
    condition: str
    bindings: typing.Tuple[typing.Tuple[str, str], ...]
    literals: typing.Tuple[Literal, ...]

    def holds(self, view: View) -> bool:
        return all(literal.holds(view) for literal in self.literals)

    def witness(self, view: View) -> Witness:
        result = Witness()
        for literal in self.literals:
            result = result | literal.witness(view)
        return result

    def __serialize__(self) -> dict:
        return {
            "condition": self.condition,
            "bindings": dict(self.bindings),
            "literals": [str(x) for x in self.literals],
        }

    def __str__(self) -> str:
        head = ", ".join(f"{k}={v}" for k, v in self.bindings)
        return f"[{self.condition}] {head}\n" + "\n".join(f"  {x}" for x in self.literals)


# ---------------- views ----------------


class SemanticsView:
    """A whole local semantics."""

    def __init__(self, ls, strict: bool = False) -> None:
        self._ls = ls
        self._strict = strict

    def outgoing(self, state):
        return self._ls.outgoing(state)

    def outgoing_disabled(self, state):
        return self._ls.outgoing_disabled(state)

    def has_partial(self, partial: PartialTransition) -> bool:
        return any(fires(t, partial) for t in self._ls.outgoing(partial.src))

    def is_internal(self, t) -> bool:
        return is_internal(self._ls.sketch, t, self._strict)


class SubsetView:
    """Only the transitions of one witness: the semantics a counterexample describes."""

    def __init__(self, witness: Witness, sketch, strict: bool = False) -> None:
        self._sketch = sketch
        self._strict = strict
        self._partial = witness.partial
        self._out = collections.defaultdict(list)
        self._out_disabled = collections.defaultdict(list)
        for t in sorted(witness.enabled, key=lambda t: t.key):
            self._out[t.src].append(t)
        for d in sorted(witness.disabled, key=lambda t: t.key):
            self._out_disabled[d.src].append(d)

    def outgoing(self, state):
        return self._out.get(state, [])

    def outgoing_disabled(self, state):
        return self._out_disabled.get(state, [])

    def has_partial(self, partial: PartialTransition) -> bool:
        return partial in self._partial or any(fires(t, partial) for t in self.outgoing(partial.src))

    def is_internal(self, t) -> bool:
        return is_internal(self._sketch, t, self._strict)
