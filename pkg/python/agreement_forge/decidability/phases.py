"""
Phases of a local semantics.

A core phase is the source set or the destination set of one globally
synchronizing event (broadcast, partition, consensus). Two states share a phase
when one core phase holds both, or when they sit in two core phases joined by
an internal path; each such pair is materialized as a merged phase.
"""

import collections
import dataclasses
import functools
import itertools
import typing

from ..lang.ast import ProcessSketch
from ..semantics.local import LocalSemantics, LocalTransition, is_internal
from ..semantics.state import LocalState


def global_events(sketch: ProcessSketch) -> typing.List[str]:
    return sorted(e.name for e in sketch.events if e.kind.is_global and not e.env)


@dataclasses.dataclass(frozen=True)
class Phase:
    event: str
    side: str  # "source" | "destination"
    members: typing.Tuple[typing.Tuple[LocalState, LocalTransition], ...]

    kind = "core"

    @property
    def id(self) -> str:
        return f"{'src' if self.side == 'source' else 'dst'}({self.event})"

    @functools.cached_property
    def states(self) -> typing.FrozenSet[LocalState]:
        return frozenset(s for s, _ in self.members)

    @functools.cached_property
    def _membership(self) -> typing.Dict[LocalState, LocalTransition]:
        return dict(self.members)

    def membership(self, state: LocalState) -> LocalTransition:
        """The e-labelled transition putting ``state`` into this phase."""
        return self._membership[state]

    def __serialize__(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "event": self.event,
            "side": self.side,
            "states": sorted(str(s) for s in self.states),
        }


@dataclasses.dataclass(frozen=True)
class MergedPhase:
    """两个核心相由 internal 路径 (可为空) 连接而成"""

    constituents: typing.Tuple[Phase, Phase]
    path: typing.Tuple[LocalTransition, ...]

    kind = "merged"

    @property
    def id(self) -> str:
        return "+".join(p.id for p in self.constituents)

    @functools.cached_property
    def states(self) -> typing.FrozenSet[LocalState]:
        return frozenset().union(*(p.states for p in self.constituents))

    def __serialize__(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "constituents": [p.id for p in self.constituents],
            "path": [str(t) for t in self.path],
            "states": sorted(str(s) for s in self.states),
        }


@dataclasses.dataclass(frozen=True)
class PhaseWitness:
    case: str  # "A": 同一核心相; "B": 两核心相由 internal 路径相连
    phases: typing.Tuple[str, ...]
    transitions: typing.Tuple[LocalTransition, ...]

    def __len__(self) -> int:
        return len(set(self.transitions))


def compute_core_phases(ls: LocalSemantics) -> typing.List[Phase]:
    phases = []
    for event in global_events(ls.sketch):
        source: typing.Dict[LocalState, LocalTransition] = {}
        destination: typing.Dict[LocalState, LocalTransition] = {}
        for t in ls.enabled:
            if t.action.event == event and t.action.kind in ("A", "R"):
                source.setdefault(t.src, t)
                destination.setdefault(t.dst, t)
        for side, members in (("source", source), ("destination", destination)):
            if members:
                phases.append(Phase(event, side, tuple(sorted(members.items(), key=lambda m: m[0]))))
    return phases


class PhaseIndex:
    """Phases, internal reachability and same-phase witnesses of one local semantics."""

    def __init__(self, ls: LocalSemantics, strict: bool = False) -> None:
        self._ls = ls
        self._strict = strict
        self._phases = compute_core_phases(ls)
        self._by_state: typing.Dict[LocalState, typing.List[Phase]] = collections.defaultdict(list)
        for phase in self._phases:
            for state in phase.states:
                self._by_state[state].append(phase)
        self._witnesses: typing.Dict[tuple, PhaseWitness | None] = {}
        self._closures: typing.Dict[LocalState, tuple] = {}

    @property
    def ls(self) -> LocalSemantics:
        return self._ls

    @property
    def strict(self) -> bool:
        return self._strict

    @property
    def phases(self) -> typing.List[Phase]:
        return self._phases

    @functools.cached_property
    def merged_phases(self) -> typing.List[MergedPhase]:
        """Pairs of core phases joined by a shortest internal path, in core-phase order."""
        merged = []
        for a, b in itertools.combinations(self._phases, 2):
            found = [f for f in (self.internal_path(a.states, b.states), self.internal_path(b.states, a.states)) if f]
            if found:
                path = min((f[2] for f in found), key=len)
                merged.append(MergedPhase((a, b), tuple(path)))
        return merged

    def phases_of(self, state: LocalState) -> typing.List[Phase]:
        return self._by_state.get(state, [])

    def internal_moves(self, state: LocalState) -> typing.List[LocalTransition]:
        return [t for t in self._ls.outgoing(state) if is_internal(self._ls.sketch, t, self._strict)]

    def internal_closure(
        self, state: LocalState
    ) -> typing.Tuple[typing.FrozenSet[LocalState], typing.Tuple[LocalTransition, ...]]:
        """States reachable by internal transitions (``state`` included) and the transitions among them."""
        if state not in self._closures:
            self._closures[state] = self._closure(state)
        return self._closures[state]

    def _closure(self, state: LocalState):
        seen = {state}
        moves = []
        queue = collections.deque([state])
        while queue:
            s = queue.popleft()
            for t in self.internal_moves(s):
                moves.append(t)
                if t.dst not in seen:
                    seen.add(t.dst)
                    queue.append(t.dst)
        return frozenset(seen), tuple(moves)

    def internal_path(
        self, sources: typing.Iterable[LocalState], targets: typing.Collection[LocalState]
    ) -> typing.Tuple[LocalState, LocalState, typing.List[LocalTransition]] | None:
        """Shortest internal path from any source to any target: (start, end, transitions)."""
        sources = sorted(sources)
        parents: typing.Dict[LocalState, LocalTransition | None] = {}
        queue = collections.deque()
        for s in sources:
            if s not in parents:
                parents[s] = None
                queue.append(s)
        while queue:
            s = queue.popleft()
            if s in targets:
                path = []
                end = s
                while (t := parents[s]) is not None:
                    path.append(t)
                    s = t.src
                return s, end, path[::-1]
            for t in self.internal_moves(s):
                if t.dst not in parents:
                    parents[t.dst] = t
                    queue.append(t.dst)
        return None

    def same_phase(self, sa: LocalState, sb: LocalState) -> PhaseWitness | None:
        key = (sa, sb)
        if key not in self._witnesses:
            self._witnesses[key] = self._same_phase(sa, sb)
        return self._witnesses[key]

    def _same_phase(self, sa: LocalState, sb: LocalState) -> PhaseWitness | None:
        for phase in self.phases_of(sa):
            if sb in phase.states:
                members = (phase.membership(sa),) if sa == sb else (phase.membership(sa), phase.membership(sb))
                return PhaseWitness("A", (phase.id,), members)

        best: PhaseWitness | None = None
        for a in self.phases_of(sa):
            for b in self.phases_of(sb):
                if a == b:
                    continue
                for first, second in ((a, b), (b, a)):
                    found = self.internal_path(first.states, second.states)
                    if found is None:
                        continue
                    start, end, path = found
                    transitions = (
                        a.membership(sa),
                        first.membership(start),
                        *path,
                        second.membership(end),
                        b.membership(sb),
                    )
                    witness = PhaseWitness("B", (a.id, b.id), tuple(dict.fromkeys(transitions)))
                    if best is None or len(witness) < len(best):
                        best = witness
        return best


def same_phase_witness(ls: LocalSemantics, sa: LocalState, sb: LocalState, strict: bool = False) -> PhaseWitness | None:
    return PhaseIndex(ls, strict).same_phase(sa, sb)
