"""
Phase-compatibility.

Each condition is checked in its negated, prenex form: the generators below
enumerate instantiated cubes (events by name, states in exploration order) that
the local semantics satisfies. The first condition with a satisfied cube fails
the check; up to the cube bound of its cubes go to extraction.
"""

import dataclasses
import functools
import itertools
import typing

from ..extract.cube import (
    Cube,
    Has,
    HasPartial,
    Lacks,
    NoReactingPath,
    PartialTransition,
    SemanticsView,
    Transitions,
)
from ..extract.extractor import LocalCex, extract_local_cex
from ..lang.ast import Action
from ..semantics.local import LocalSemantics, LocalTransition
from ..semantics.state import LocalState
from ..utils.envs import FORGE_CUBE_BOUND
from ..utils.logger import logger
from ..utils.misc import ordered_results
from .phases import PhaseIndex, global_events


@dataclasses.dataclass(frozen=True)
class ConditionReport:
    property: str  # "phase_compatibility" | "amenability"
    ok: bool
    condition: str | None = None
    cubes: typing.Tuple[Cube, ...] = ()
    cex: LocalCex | None = None
    detail: typing.Dict[str, typing.Any] = dataclasses.field(default_factory=dict, compare=False)

    def __serialize__(self) -> dict:
        result = {"property": self.property, "ok": self.ok, **self.detail}
        if not self.ok:
            result["condition"] = self.condition
            result["cube"] = self.cex.cube.__serialize__() if self.cex is not None else None
            result["cex"] = self.cex.__serialize__() if self.cex is not None else None
        return result


class _Conditions:
    def __init__(self, index: PhaseIndex) -> None:
        self._index = index
        self._ls = index.ls
        self._view = SemanticsView(index.ls, index.strict)
        self._events = global_events(index.ls.sketch)

    def _labelled(self, kinds: str, event: str) -> typing.List[LocalTransition]:
        return [t for t in self._ls.enabled if t.action.kind in kinds and t.action.event == event]

    def _partial(self, state: LocalState, action: Action) -> PartialTransition | None:
        """The first handler firing ``action`` at ``state``, destination left open."""
        for t in self._ls.outgoing(state):
            if t.action == action:
                payload = t.payload if action.kind == "R" else None  # 发送负载不属于 guard
                return PartialTransition(state, action, t.handler, payload)
        return None

    def _no_reacting(self, state: LocalState, event: str) -> NoReactingPath | None:
        literal = NoReactingPath(state, event)
        return literal if literal.holds(self._view) else None

    def condition1(self) -> typing.Iterator[Cube]:
        """s -A(e)-> s' but no s -R(e)->"""
        for e in self._events:
            react = Action("R", e)
            seen = set()
            for t in self._labelled("A", e):
                if t.src in seen:
                    continue
                seen.add(t.src)
                lacks = Lacks(t.src, react)
                if lacks.holds(self._view):
                    yield Cube("1", (("e", e), ("s", str(t.src))), (Has(t), lacks))

    def condition2(self) -> typing.Iterator[Cube]:
        """
        e 之后 f 可接续: 若某个 e 的目标态能响应 f, 另一个能发起 f,
        则所有 e 的目标态都须 (i) 能响应 f, (ii) 经 internal 路径到达 R(f)
        """
        for e, f in itertools.product(self._events, self._events):
            first = next(
                ((t, p) for t in self._labelled("A", e) if (p := self._partial(t.dst, Action("R", f))) is not None),
                None,
            )
            trigger = next(
                ((z, p) for z in self._labelled("AR", e) if (p := self._partial(z.dst, Action("A", f))) is not None),
                None,
            )
            if first is None or trigger is None:
                continue
            common = (Has(first[0]), HasPartial(first[1]), Has(trigger[0]), HasPartial(trigger[1]))
            for t in self._labelled("A", e):
                lacks = Lacks(t.dst, Action("R", f))
                if lacks.holds(self._view):
                    bindings = (("e", e), ("f", f), ("t", str(t.dst)), ("case", "i"))
                    yield Cube("2", bindings, (*common, Has(t), lacks))
            for t in self._labelled("R", e):
                literal = self._no_reacting(t.dst, f)
                if literal is not None:
                    bindings = (("e", e), ("f", f), ("t", str(t.dst)), ("case", "ii"))
                    yield Cube("2", bindings, (*common, Has(t), literal))

    def condition3(self) -> typing.Iterator[Cube]:
        """an internal move enabling R(f) inside a phase where f can start; every phase state must reach R(f)"""
        index = self._index
        for f in self._events:
            starters = [
                (t, p)
                for t in self._ls.enabled
                if self._view.is_internal(t) and (p := self._partial(t.dst, Action("R", f))) is not None
            ]
            if not starters:
                continue
            initiators = [p for s in self._ls.states if (p := self._partial(s, Action("A", f))) is not None]
            stuck = [(s, lit) for s in self._ls.states if (lit := self._no_reacting(s, f)) is not None]
            for (move, react), (t, literal) in itertools.product(starters, stuck):
                s = move.src
                joined = index.same_phase(s, t)
                if joined is None:
                    continue
                best = None
                for initiator in initiators:
                    w = index.same_phase(s, initiator.src)
                    if w is not None and (best is None or len(w) < len(best[1])):
                        best = (initiator, w)
                if best is None:
                    continue
                initiator, start = best
                bindings = (("f", f), ("s", str(s)), ("t", str(t)), ("z", str(initiator.src)))
                yield Cube(
                    "3",
                    bindings,
                    (
                        Has(move),
                        HasPartial(react),
                        HasPartial(initiator),
                        Transitions(f"samePhase({s},{t})", joined.transitions),
                        Transitions(f"samePhase({s},{initiator.src})", start.transitions),
                        literal,
                    ),
                )


def check_phase_compatibility(
    ls: LocalSemantics,
    strict: bool = False,
    cube_bound: int | None = None,
    index: PhaseIndex | None = None,
    jobs: int = 1,
) -> ConditionReport:
    """
    Conditions are reported in order 1, 2, 3; the first with a satisfied cube
    fails the check. With ``jobs`` > 1 the three conditions are searched
    concurrently and merged in that order.
    """
    index = index or PhaseIndex(ls, strict)
    bound = cube_bound or FORGE_CUBE_BOUND
    conditions = _Conditions(index)
    searches = [conditions.condition1, conditions.condition2, conditions.condition3]
    calls = [functools.partial(_collect, search, bound) for search in searches]
    for tag, found in zip(("1", "2", "3"), ordered_results(calls, jobs)):
        if found:
            cex = extract_local_cex(ls, found, "phase_compatibility", strict)
            logger.debug(f"Phase-compatibility condition {tag} fails: {len(found)} cube(s)")
            return ConditionReport("phase_compatibility", False, tag, found, cex)
    return ConditionReport("phase_compatibility", True, detail={"phases": [p.__serialize__() for p in index.phases]})


def _collect(search: typing.Callable[[], typing.Iterator[Cube]], bound: int) -> typing.Tuple[Cube, ...]:
    return tuple(itertools.islice(search(), bound))
