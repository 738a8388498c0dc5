"""Specification suites: permissible safety lines and two liveness templates."""

import dataclasses
import enum
import typing

import pyparsing as pp

from ..utils.exceptions import SketchSyntaxError
from .expression import CountAtom, Expression, Fired, Span, _span


class LivenessTemplate(enum.Enum):
    EVENTUALLY = "eventually"  # F p
    ALWAYS_IMPLIES = "always_implies"  # G (p => F q)


@dataclasses.dataclass(frozen=True)
class SafetyLine:
    """Violated in a global state where every atom holds at once."""

    name: str
    atoms: typing.Tuple[CountAtom, ...]
    span: Span | None = _span()

    @property
    def weight(self) -> int:
        """Σ m_i"""
        return sum(a.threshold for a in self.atoms)

    def __str__(self) -> str:
        return f"safety {self.name}: never " + " and ".join(a.render() for a in self.atoms)


@dataclasses.dataclass(frozen=True)
class LivenessLine:
    name: str
    template: LivenessTemplate
    p: Expression
    q: Expression | None = None
    span: Span | None = _span()

    def atoms(self) -> typing.List[Expression]:
        exprs = [self.p] if self.q is None else [self.p, self.q]
        return [e for expr in exprs for e in expr.walk() if isinstance(e, (CountAtom, Fired))]

    def __str__(self) -> str:
        if self.template is LivenessTemplate.EVENTUALLY:
            return f"liveness {self.name}: eventually {self.p.render()}"
        return f"liveness {self.name}: always {self.p.render()} implies eventually {self.q.render()}"


@dataclasses.dataclass(frozen=True)
class SpecSuite:
    safety: typing.Tuple[SafetyLine, ...] = ()
    liveness: typing.Tuple[LivenessLine, ...] = ()
    source: str | None = dataclasses.field(default=None, compare=False, repr=False)

    def atoms(self) -> typing.Generator[CountAtom, None, None]:
        for line in self.safety:
            yield from line.atoms
        for line in self.liveness:
            yield from (a for a in line.atoms() if isinstance(a, CountAtom))

    def __str__(self) -> str:
        return "\n".join(str(line) for line in self.safety + self.liveness)


def parse_spec(text: str, source: str | None = None) -> SpecSuite:
    from .grammar import spec_grammar

    try:
        lines = spec_grammar().parse_string(text, parse_all=True)
    except pp.ParseBaseException as error:
        raise SketchSyntaxError(error.msg, error.lineno, error.col, source) from None

    safety = tuple(line for line in lines if isinstance(line, SafetyLine))
    liveness = tuple(line for line in lines if isinstance(line, LivenessLine))

    suite = SpecSuite(safety, liveness, source=source)

    for atom in suite.atoms():
        if atom.threshold < 1:
            span = atom.span or Span(0, 0)
            raise SketchSyntaxError(
                f"Counting threshold must be at least 1, got {atom.threshold}", span.line, span.column, source
            )

    names = [line.name for line in safety + liveness]
    duplicates = sorted({n for n in names if names.count(n) > 1})
    if duplicates:
        raise SketchSyntaxError(f"Duplicate specification line name(s): {', '.join(duplicates)}", 0, 0, source)

    return suite
