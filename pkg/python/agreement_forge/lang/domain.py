"""有限值域: 整数区间, 布尔, 位置名集合"""

import dataclasses
import enum
import typing

Value = int | bool | str


class DomainKind(enum.Enum):
    INT = "int"
    BOOL = "bool"
    LOC = "loc"


@dataclasses.dataclass(frozen=True)
class Domain:
    kind: DomainKind
    lo: int = 0
    hi: int = 0
    names: typing.Tuple[str, ...] = ()

    @classmethod
    def int_range(cls, lo: int, hi: int) -> "Domain":
        if lo > hi:
            raise ValueError(f"Empty integer range [{lo},{hi}]")
        return cls(DomainKind.INT, lo, hi)

    @classmethod
    def boolean(cls) -> "Domain":
        return cls(DomainKind.BOOL)

    @classmethod
    def locations(cls, names: typing.Iterable[str]) -> "Domain":
        return cls(DomainKind.LOC, names=tuple(names))

    @property
    def values(self) -> typing.Tuple[Value, ...]:
        match self.kind:
            case DomainKind.INT:
                return tuple(range(self.lo, self.hi + 1))
            case DomainKind.BOOL:
                return (False, True)
            case DomainKind.LOC:
                return self.names

    def __len__(self) -> int:
        match self.kind:
            case DomainKind.INT:
                return self.hi - self.lo + 1
            case DomainKind.BOOL:
                return 2
            case _:
                return len(self.names)

    def __contains__(self, value) -> bool:
        match self.kind:
            case DomainKind.INT:
                return isinstance(value, int) and not isinstance(value, bool) and self.lo <= value <= self.hi
            case DomainKind.BOOL:
                return isinstance(value, bool)
            case _:
                return value in self.names

    @property
    def default(self) -> Value:
        return self.values[0]

    def clamp(self, value: int) -> int:
        return min(max(value, self.lo), self.hi)

    def __str__(self) -> str:
        match self.kind:
            case DomainKind.INT:
                return f"int[{self.lo},{self.hi}]"
            case DomainKind.BOOL:
                return "bool"
            case _:
                return "{" + ",".join(self.names) + "}"


def format_value(value: Value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)
