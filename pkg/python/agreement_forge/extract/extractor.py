"""
Counterexample extraction.

Local properties: every satisfied cube of the negated condition yields a
witness (the union of its literals' witnesses); the smallest one is kept.
Global properties: traces, deadlocks and lassos are already subsets of the
global semantics and are only repackaged.
"""

import dataclasses
import typing

from ..checker.deadlock import DeadlockCex
from ..checker.lasso import Lasso
from ..checker.safety import ErrorTrace
from ..semantics.local import DisabledTransition, LocalSemantics, LocalTransition
from ..semantics.system import GlobalDisabled, GlobalSemantics, GlobalTransition
from ..utils.exceptions import ExtractionError
from ..utils.logger import logger
from .cube import Cube, Literal, PartialTransition, SemanticsView, SubsetView, Witness


@dataclasses.dataclass(frozen=True)
class LocalCex:
    property: str  # "phase_compatibility" | "amenability"
    cube: Cube
    enabled: typing.FrozenSet[LocalTransition] = frozenset()
    disabled: typing.FrozenSet[DisabledTransition] = frozenset()
    partial: typing.FrozenSet[PartialTransition] = frozenset()

    @property
    def witness(self) -> Witness:
        return Witness(self.enabled, self.disabled, self.partial)

    @property
    def size(self) -> int:
        return len(self.enabled) + len(self.disabled) + len(self.partial)

    def __serialize__(self) -> dict:
        return {
            "kind": "local",
            "property": self.property,
            "cube": self.cube.__serialize__(),
            "enabled": sorted(str(t) for t in self.enabled),
            "disabled": sorted(str(t) for t in self.disabled),
            "partial": sorted(str(t) for t in self.partial),
        }

    def __str__(self) -> str:
        lines = [f"{self.property} violated: {self.cube}"]
        lines.extend(f"  + {t}" for t in sorted(self.enabled, key=lambda t: t.key))
        lines.extend(f"  ~ {t}" for t in sorted(self.partial, key=lambda t: t.key))
        lines.extend(f"  - {t}" for t in sorted(self.disabled, key=lambda t: t.key))
        return "\n".join(lines)


@dataclasses.dataclass(frozen=True)
class GlobalCex:
    shape: str  # "trace" | "deadlock" | "lasso"
    property: str
    enabled: typing.Tuple[GlobalTransition, ...] = ()
    disabled: typing.Tuple[GlobalDisabled, ...] = ()

    @property
    def size(self) -> int:
        return len(set(self.enabled)) + len(set(self.disabled))

    def __serialize__(self) -> dict:
        return {
            "kind": self.shape,
            "property": self.property,
            "enabled": [r.__serialize__() for r in self.enabled],
            "disabled": [d.__serialize__() for d in self.disabled],
        }

    def __str__(self) -> str:
        lines = [f"{self.property} violated ({self.shape})"]
        lines.extend(f"  + {r}" for r in self.enabled)
        lines.extend(f"  - {d}" for d in self.disabled)
        return "\n".join(lines)


def witness_literal(ls: LocalSemantics, literal: Literal, strict: bool = False) -> Witness:
    view = SemanticsView(ls, strict)
    if not literal.holds(view):
        raise ExtractionError(f"Literal does not hold, nothing to witness: {literal}")
    return literal.witness(view)


def resatisfies(ls: LocalSemantics, cex: LocalCex, strict: bool = False) -> bool:
    """The provenance cube evaluated over the counterexample's own transitions."""
    return cex.cube.holds(SubsetView(cex.witness, ls.sketch, strict))


def extract_local_cex(
    ls: LocalSemantics, cubes: typing.Iterable[Cube], property: str = "phase_compatibility", strict: bool = False
) -> LocalCex:
    """pickMinimal over the satisfied cubes: fewest transitions, ties by sorted keys."""
    view = SemanticsView(ls, strict)
    best: typing.Tuple[int, list, Cube, Witness] | None = None
    for cube in cubes:
        if not cube.holds(view):
            continue
        witness = cube.witness(view)
        if not cube.holds(SubsetView(witness, ls.sketch, strict)):
            raise ExtractionError(f"Witness of cube does not re-satisfy it: {cube}")
        rank = (len(witness), witness.keys)
        if best is None or rank < best[:2]:
            best = (*rank, cube, witness)
    if best is None:
        raise ExtractionError(f"No satisfied cube to extract a {property} counterexample from")
    _, _, cube, witness = best
    logger.debug(f"Extracted {property} counterexample of size {len(witness)} from condition {cube.condition}")
    return LocalCex(property, cube, witness.enabled, witness.disabled, witness.partial)


def extract_amenability_cex(ls: LocalSemantics, cubes: typing.Iterable[Cube], strict: bool = False) -> LocalCex:
    return extract_local_cex(ls, cubes, "amenability", strict)


def package_global_cex(witness: ErrorTrace | DeadlockCex | Lasso) -> GlobalCex:
    match witness:
        case ErrorTrace():
            return GlobalCex("trace", witness.line.name, witness.trace)
        case DeadlockCex():
            return GlobalCex("deadlock", "deadlock", witness.trace, witness.disabled)
        case Lasso():
            return GlobalCex("lasso", witness.property, witness.stem + witness.cycle, witness.cycle_disabled)
    raise TypeError(f"Not a global witness: {witness!r}")


def replays(gs: GlobalSemantics, cex: GlobalCex) -> bool:
    """Every transition of ``cex`` is produced by the successor relation at its source."""
    for r in cex.enabled:
        if r not in gs.successors(r.src)[0]:
            return False
    for d in cex.disabled:
        if d not in gs.successors(d.src)[1]:
            return False
    return True
