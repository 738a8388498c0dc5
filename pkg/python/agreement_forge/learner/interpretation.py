"""Total interpretations of hole functions."""

import itertools
import math
import typing

from ..lang.ast import HoleSignature
from ..lang.domain import Value, format_value
from ..utils.exceptions import InterpretationError

Cell = typing.Tuple[str, typing.Tuple[Value, ...]]


class Interpretation:
    """
    每个 hole 函数在其完整参数网格上的取值表.

    构造时检查完整性 (每个参数组合都有值) 与取值范围.
    """

    def __init__(self, signatures: typing.Iterable[HoleSignature], tables: typing.Mapping[str, typing.Mapping]):
        self._signatures = {s.id: s for s in signatures}
        self._tables: typing.Dict[str, typing.Dict[tuple, Value]] = {}
        for hole_id, signature in self._signatures.items():
            table = tables.get(hole_id, None)
            if table is None:
                raise InterpretationError(f"Interpretation has no entry for hole ??{hole_id}")
            full = {}
            for args in signature.grid:
                if args not in table:
                    raise InterpretationError(f"??{hole_id} is undefined at arguments {args}")
                value = table[args]
                if value not in signature.domain:
                    raise InterpretationError(f"??{hole_id}{args} = {value!r} is outside {signature.domain}")
                full[args] = value
            self._tables[hole_id] = full
        self._key = tuple((k, tuple(sorted(self._tables[k].items(), key=repr))) for k in sorted(self._tables))

    @classmethod
    def from_cells(
        cls, signatures: typing.Iterable[HoleSignature], cells: typing.Mapping[Cell, Value], fill: bool = True
    ) -> "Interpretation":
        """Build from a cell map; missing cells take the first domain value when ``fill``."""
        signatures = list(signatures)
        tables = {}
        for signature in signatures:
            table = {}
            for args in signature.grid:
                key = (signature.id, args)
                if key in cells:
                    table[args] = cells[key]
                elif fill:
                    table[args] = signature.domain.default
            tables[signature.id] = table
        return cls(signatures, tables)

    @classmethod
    def constant(cls, signatures: typing.Iterable[HoleSignature], values: typing.Mapping[str, Value]):
        """Every hole function constant: ``values[hole_id]`` everywhere."""
        signatures = list(signatures)
        return cls(signatures, {s.id: {args: values[s.id] for args in s.grid} for s in signatures if s.id in values})

    @property
    def signatures(self) -> typing.List[HoleSignature]:
        return list(self._signatures.values())

    def value(self, hole_id: str, args: typing.Sequence[Value] = ()) -> Value:
        signature = self._signatures.get(hole_id, None)
        if signature is None:
            raise InterpretationError(f"Unknown hole function ??{hole_id}")
        args = tuple(args)
        if len(args) != len(signature.params):
            raise InterpretationError(
                f"??{hole_id} takes {len(signature.params)} argument(s), got {len(args)}: {args}"
            )
        try:
            return self._tables[hole_id][args]
        except KeyError:
            raise InterpretationError(f"??{hole_id} is not defined at {args}") from None

    __call__ = value

    def table(self, hole_id: str) -> typing.Dict[tuple, Value]:
        return dict(self._tables[hole_id])

    def cells(self) -> typing.Dict[Cell, Value]:
        return {(h, args): v for h, table in self._tables.items() for args, v in table.items()}

    def is_constant(self, hole_id: str) -> bool:
        return len(set(self._tables[hole_id].values())) <= 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Interpretation) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __serialize__(self) -> dict:
        return {
            f"??{h}": [{"args": list(args), "value": v} for args, v in table.items()]
            for h, table in sorted(self._tables.items())
        }

    def __str__(self) -> str:
        lines = []
        for hole_id, signature in self._signatures.items():
            table = self._tables[hole_id]
            if self.is_constant(hole_id) and table:
                lines.append(f"??{hole_id}({', '.join(signature.params)}) = {format_value(next(iter(table.values())))}")
                continue
            for args, value in table.items():
                shown = ", ".join(f"{p}={format_value(a)}" for p, a in zip(signature.params, args))
                lines.append(f"??{hole_id}({shown}) = {format_value(value)}")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"<Interpretation {'; '.join(str(self).splitlines())}>"


def count_interpretations(signatures: typing.Iterable[HoleSignature]) -> int:
    """∏_f |dom(f)| ^ |grid(f)|"""
    return math.prod(len(s.domain) ** s.cells for s in signatures)


def enumerate_interpretations(signatures: typing.Iterable[HoleSignature]) -> typing.Iterator[Interpretation]:
    """All interpretations, lexicographic over (hole order, grid order, domain order)."""
    signatures = list(signatures)
    cells = [(s.id, args, s.domain.values) for s in signatures for args in s.grid]
    for values in itertools.product(*(c[2] for c in cells)):
        yield Interpretation.from_cells(signatures, {(h, a): v for (h, a, _), v in zip(cells, values)}, fill=False)
