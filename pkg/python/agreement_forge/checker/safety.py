"""Safety: breadth-first search for a global state meeting every atom of some line."""

import dataclasses
import typing

from ..lang.spec import SafetyLine, SpecSuite
from ..semantics.system import GlobalSemantics, GlobalState, GlobalTransition, format_global
from ..utils.logger import logger


def global_env(gs: GlobalSemantics, q: GlobalState, fired: typing.Iterable[str] = ()) -> typing.Dict[str, typing.Any]:
    """计数原子的求值环境: 每个进程一个局部环境, 外加本步触发的事件"""
    space = gs.local.space
    return {"$states": [space.predicate_env(s) for s in q], "$fired": frozenset(fired)}


def violated_lines(gs: GlobalSemantics, q: GlobalState, spec: SpecSuite) -> typing.List[SafetyLine]:
    env = global_env(gs, q)
    return [line for line in spec.safety if all(atom.evaluate(env) for atom in line.atoms)]


@dataclasses.dataclass(frozen=True)
class ErrorTrace:
    line: SafetyLine
    state: GlobalState
    trace: typing.Tuple[GlobalTransition, ...]

    def __len__(self) -> int:
        return len(self.trace)

    def __serialize__(self) -> dict:
        return {
            "kind": "trace",
            "property": self.line.name,
            "state": format_global(self.state),
            "trace": [r.__serialize__() for r in self.trace],
        }

    def __str__(self) -> str:
        steps = "\n".join(f"  {r}" for r in self.trace) or "  (initial state)"
        return f"safety '{self.line.name}' violated at {format_global(self.state)}\n{steps}"


def check_safety(gs: GlobalSemantics, spec: SpecSuite) -> ErrorTrace | None:
    """Shortest trace to the first violating state, in breadth-first order; None when every line holds."""
    if not spec.safety:
        return None
    for q in gs.states:
        lines = violated_lines(gs, q, spec)
        if lines:
            trace = ErrorTrace(lines[0], q, tuple(gs.trace_to(q)))
            logger.debug(f"Safety line '{lines[0].name}' violated after {len(trace)} steps")
            return trace
    return None
