import dataclasses
import typing

from ..semantics.system import GlobalDisabled, GlobalSemantics, GlobalState, GlobalTransition, format_global


@dataclasses.dataclass(frozen=True)
class DeadlockCex:
    """A reachable global state without any enabled global transition."""

    state: GlobalState
    trace: typing.Tuple[GlobalTransition, ...]
    disabled: typing.Tuple[GlobalDisabled, ...]

    def __serialize__(self) -> dict:
        return {
            "kind": "deadlock",
            "property": "deadlock",
            "state": format_global(self.state),
            "trace": [r.__serialize__() for r in self.trace],
            "disabled": [d.__serialize__() for d in self.disabled],
        }

    def __str__(self) -> str:
        lines = [f"deadlock at {format_global(self.state)}"]
        lines.extend(f"  {r}" for r in self.trace)
        lines.extend(f"  {d}" for d in self.disabled)
        return "\n".join(lines)


def check_deadlock(gs: GlobalSemantics) -> DeadlockCex | None:
    for q in gs.states:
        enabled, disabled = gs.successors(q)
        if not enabled:
            return DeadlockCex(q, tuple(gs.trace_to(q)), tuple(disabled))
    return None
