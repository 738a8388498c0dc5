"""
Büchi automata for the two liveness templates.

Both automata accept the runs that violate the line, so a fair accepting run of
the product is a counterexample. Transition labels are all the wildcard; the
state predicates are read on the destination global state and the event taken.
"""

import dataclasses
import typing

from ..lang.expression import Binary, Const, Expression, Unary
from ..lang.spec import LivenessLine, LivenessTemplate
from ..utils.tags import _wildcard_, tags


@dataclasses.dataclass(frozen=True)
class BuchiTransition:
    src: int
    label: typing.Union[str, tags]
    predicate: Expression
    dst: int

    def matches(self, event: str | None, env: typing.Mapping[str, typing.Any]) -> bool:
        if self.label is not _wildcard_ and self.label != event:
            return False
        return bool(self.predicate.evaluate(env))

    def __str__(self) -> str:
        label = "*" if self.label is _wildcard_ else self.label
        return f"b{self.src} -{label} / {self.predicate.render()}-> b{self.dst}"


@dataclasses.dataclass(frozen=True)
class BuchiAutomaton:
    name: str
    states: typing.Tuple[int, ...]
    initial: int
    accepting: typing.FrozenSet[int]
    transitions: typing.Tuple[BuchiTransition, ...]

    def step(self, b: int, event: str | None, env: typing.Mapping[str, typing.Any]) -> typing.List[int]:
        """Automaton states reachable from ``b`` reading ``event`` into the state described by ``env``."""
        return sorted({t.dst for t in self.transitions if t.src == b and t.matches(event, env)})

    def __str__(self) -> str:
        head = f"buchi {self.name}: initial b{self.initial}, accepting {sorted(self.accepting)}"
        return "\n".join([head, *(f"  {t}" for t in self.transitions)])


def _not(expr: Expression) -> Expression:
    return Unary("not", expr)


def ltl_to_buchi(line: LivenessLine) -> BuchiAutomaton:
    match line.template:
        case LivenessTemplate.EVENTUALLY:
            # ¬F p = G ¬p
            avoid = _not(line.p)
            transitions = (
                BuchiTransition(0, _wildcard_, avoid, 1),
                BuchiTransition(1, _wildcard_, avoid, 1),
            )
        case LivenessTemplate.ALWAYS_IMPLIES if line.q is not None:
            # ¬G(p ⇒ F q) = F(p ∧ G ¬q)
            transitions = (
                BuchiTransition(0, _wildcard_, Const(True), 0),
                BuchiTransition(0, _wildcard_, Binary("and", line.p, _not(line.q)), 1),
                BuchiTransition(1, _wildcard_, _not(line.q), 1),
            )
        case _:
            raise ValueError(f"Unsupported liveness template in line '{line.name}': {line.template}")
    return BuchiAutomaton(line.name, (0, 1), 0, frozenset([1]), transitions)
