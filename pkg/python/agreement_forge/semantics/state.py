"""Local states and the variable layout of a sketch."""

import dataclasses
import functools
import itertools
import typing

from ..lang.ast import ProcessSketch
from ..lang.domain import Value, format_value


@dataclasses.dataclass(frozen=True, order=True)
class LocalState:
    """位置 + 按声明顺序排列的变量取值"""

    location: str
    values: typing.Tuple[Value, ...] = ()

    def __str__(self) -> str:
        if not self.values:
            return self.location
        return f"({self.location}," + ",".join(format_value(v) for v in self.values) + ")"


class StateSpace:
    """Variable order, initial state and evaluation environments of one sketch."""

    def __init__(self, sketch: ProcessSketch) -> None:
        self._sketch = sketch
        self._names = tuple(v.name for v in sketch.variables)
        self._index = {name: i for i, name in enumerate(self._names)}
        self._defaults = {v.name: v.init_value for v in sketch.variables}

    @property
    def sketch(self) -> ProcessSketch:
        return self._sketch

    @property
    def variable_names(self) -> typing.Tuple[str, ...]:
        return self._names

    @property
    def defaults(self) -> typing.Dict[str, Value]:
        return self._defaults

    @functools.cached_property
    def initial(self) -> LocalState:
        return LocalState(self._sketch.initial_location, tuple(self._defaults[n] for n in self._names))

    def value(self, state: LocalState, name: str) -> Value:
        return state.values[self._index[name]]

    def valuation(self, state: LocalState) -> typing.Dict[str, Value]:
        return dict(zip(self._names, state.values))

    def make(self, location: str, valuation: typing.Mapping[str, Value]) -> LocalState:
        return LocalState(location, tuple(valuation[n] for n in self._names))

    def env(self, state: LocalState, **extra) -> typing.Dict[str, typing.Any]:
        """Environment for handler expressions at ``state``."""
        env = self.valuation(state)
        env["$locations"] = self._sketch.location_names
        env["$defaults"] = self._defaults
        env.update({f"${k}": v for k, v in extra.items()})
        return env

    def predicate_env(self, state: LocalState) -> typing.Dict[str, typing.Any]:
        """Environment for specification predicates: variables plus ``loc``."""
        env = self.valuation(state)
        env["loc"] = state.location
        env["$locations"] = self._sketch.location_names
        return env

    def universe(self) -> typing.Iterator[LocalState]:
        domains = [v.domain.values for v in self._sketch.variables]
        for location in self._sketch.location_names:
            for values in itertools.product(*domains):
                yield LocalState(location, values)

    def universe_size(self) -> int:
        size = len(self._sketch.locations)
        for v in self._sketch.variables:
            size *= len(v.domain)
        return size
