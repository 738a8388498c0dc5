"""Baseline learner: walks every interpretation in order, one refutation at a time."""

import typing

from ..learner.constraint import Constraint, holds
from ..learner.interpretation import Interpretation, enumerate_interpretations
from ..learner.learner import Learner, exclude


class EnumerateLearner(Learner, plugin_name="enumerate"):
    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        self._cursor: typing.Iterator[Interpretation] = enumerate_interpretations(self.signatures)
        self._current: Interpretation | None = None
        self._refuted: typing.Set[Interpretation] = set()
        self._side: typing.List[Constraint] = []  # 直接 add 的约束, 排除约束不在其中

    def add(self, constraint: Constraint) -> None:
        super().add(constraint)
        self._side.append(constraint)

    def refute(self, interpretation: Interpretation, negated: Constraint) -> Constraint:
        constraint = exclude(interpretation)
        self._refuted.add(interpretation)
        super().add(constraint)
        return constraint

    def _admissible(self, candidate: Interpretation) -> bool:
        return candidate not in self._refuted and all(holds(c, candidate) for c in self._side)

    def propose(self) -> Interpretation | None:
        if self._current is not None and self._admissible(self._current):
            return self._current
        for candidate in self._cursor:
            self._check_deadline()
            if self._admissible(candidate):
                self._current = candidate
                return candidate
        self._current = None
        return None
