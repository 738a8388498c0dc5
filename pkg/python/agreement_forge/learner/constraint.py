"""
Ground constraints over hole-function applications.

Terms are literals and applications ``??f(c1, ..., ck)`` with constant
arguments; atoms compare two terms; formulas combine atoms with not/and/or.
The smart constructors ``conj`` / ``disj`` / ``negate`` keep formulas in a
canonical simplified shape, so ``simplify`` is idempotent.
"""

import dataclasses
import functools
import typing

from ..lang.domain import Value, format_value
from ..lang.expression import compare

# ---------------- terms ----------------


def _tag(value: Value) -> str:
    if isinstance(value, bool):
        return "bool"
    if isinstance(value, int):
        return "int"
    return "loc"


@dataclasses.dataclass(frozen=True)
class Lit:
    value: Value
    tag: str = ""

    def __post_init__(self):
        if not self.tag:
            object.__setattr__(self, "tag", _tag(self.value))

    def __str__(self) -> str:
        return format_value(self.value)


@dataclasses.dataclass(frozen=True)
class App:
    """``??hole(args)``"""

    hole: str
    args: typing.Tuple[Value, ...] = ()

    def __str__(self) -> str:
        return f"??{self.hole}(" + ", ".join(format_value(a) for a in self.args) + ")"

    @property
    def cell(self) -> typing.Tuple[str, typing.Tuple[Value, ...]]:
        return (self.hole, self.args)


Term = Lit | App

# ---------------- formulas ----------------


class Constraint:
    """公式节点基类; 哈希值缓存"""

    @functools.cached_property
    def _hash(self) -> int:
        return hash((type(self).__name__,) + tuple(getattr(self, f.name) for f in dataclasses.fields(self)))

    def __hash__(self) -> int:
        return self._hash

    @functools.cached_property
    def apps(self) -> typing.FrozenSet[App]:
        return frozenset()

    @functools.cached_property
    def size(self) -> int:
        return 1

    def __str__(self) -> str:
        return to_sexpr(self)


@dataclasses.dataclass(frozen=True, eq=True)
class BoolConst(Constraint):
    value: bool

    __hash__ = Constraint.__hash__


@dataclasses.dataclass(frozen=True, eq=True)
class Cmp(Constraint):
    op: str
    lhs: Term
    rhs: Term

    __hash__ = Constraint.__hash__

    @functools.cached_property
    def apps(self):
        return frozenset(t for t in (self.lhs, self.rhs) if isinstance(t, App))


@dataclasses.dataclass(frozen=True, eq=True)
class Not(Constraint):
    arg: Constraint

    __hash__ = Constraint.__hash__

    @functools.cached_property
    def apps(self):
        return self.arg.apps

    @functools.cached_property
    def size(self):
        return 1 + self.arg.size


@dataclasses.dataclass(frozen=True, eq=True)
class And(Constraint):
    args: typing.Tuple[Constraint, ...]

    __hash__ = Constraint.__hash__

    @functools.cached_property
    def apps(self):
        return frozenset().union(*(a.apps for a in self.args))

    @functools.cached_property
    def size(self):
        return 1 + sum(a.size for a in self.args)


@dataclasses.dataclass(frozen=True, eq=True)
class Or(Constraint):
    args: typing.Tuple[Constraint, ...]

    __hash__ = Constraint.__hash__

    @functools.cached_property
    def apps(self):
        return frozenset().union(*(a.apps for a in self.args))

    @functools.cached_property
    def size(self):
        return 1 + sum(a.size for a in self.args)


TRUE = BoolConst(True)
FALSE = BoolConst(False)

_MIRROR = {"=": "=", "!=": "!=", "<": ">", ">": "<", "<=": ">=", ">=": "<="}


def const(value: bool) -> BoolConst:
    return TRUE if value else FALSE


def cmp(op: str, lhs: Term | Value, rhs: Term | Value) -> Constraint:
    """Atom constructor: folds ground atoms, puts the application on the left."""
    if not isinstance(lhs, (Lit, App)):
        lhs = Lit(lhs)
    if not isinstance(rhs, (Lit, App)):
        rhs = Lit(rhs)
    if isinstance(lhs, Lit) and isinstance(rhs, Lit):
        return const(compare(op, lhs.value, rhs.value))
    if isinstance(lhs, Lit):
        lhs, rhs, op = rhs, lhs, _MIRROR[op]
    if op == "!=" and isinstance(rhs, Lit) and rhs.tag == "bool":
        op, rhs = "=", Lit(not rhs.value)
    if lhs == rhs:
        return const(op in ("=", "<=", ">="))
    return Cmp(op, lhs, rhs)


def _equality(c: Constraint) -> typing.Tuple[App, Lit] | None:
    if isinstance(c, Cmp) and c.op == "=" and isinstance(c.lhs, App) and isinstance(c.rhs, Lit):
        return c.lhs, c.rhs
    return None


def negate(c: Constraint) -> Constraint:
    match c:
        case BoolConst(value=value):
            return const(not value)
        case Not(arg=arg):
            return arg
        case Cmp(op="=", lhs=App() as app, rhs=Lit(tag="bool", value=value)):
            return Cmp("=", app, Lit(not value))
        case Cmp(op="!=", lhs=lhs, rhs=rhs):
            return cmp("=", lhs, rhs)
    return Not(c)


def _complement(a: Constraint, b: Constraint) -> bool:
    if negate(a) == b:
        return True
    ea, eb = _equality(a), _equality(b)
    # 同一单元格等于两个不同的值
    return ea is not None and eb is not None and ea[0] == eb[0] and ea[1] != eb[1]


def _junction(kind: type, args: typing.Iterable[Constraint]) -> Constraint:
    unit, zero = (TRUE, FALSE) if kind is And else (FALSE, TRUE)
    flat: typing.List[Constraint] = []
    seen: typing.Set[Constraint] = set()
    for arg in args:
        items = arg.args if isinstance(arg, kind) else (arg,)
        for item in items:
            if item == zero:
                return zero
            if item == unit or item in seen:
                continue
            seen.add(item)
            flat.append(item)

    if kind is And:
        # 同一单元格的不同取值互斥
        cells = {}
        for item in flat:
            eq = _equality(item)
            if eq is not None:
                if cells.setdefault(eq[0], eq[1]) != eq[1]:
                    return zero
    for item in flat:
        if negate(item) in seen:
            return zero

    if not flat:
        return unit
    if len(flat) == 1:
        return flat[0]
    return kind(tuple(flat))


def conj(*args: Constraint | typing.Iterable[Constraint]) -> Constraint:
    return _junction(And, _spread(args))


def disj(*args: Constraint | typing.Iterable[Constraint]) -> Constraint:
    return _junction(Or, _spread(args))


def _spread(args):
    for arg in args:
        if isinstance(arg, Constraint):
            yield arg
        else:
            yield from arg


def simplify(c: Constraint) -> Constraint:
    match c:
        case Cmp(op=op, lhs=lhs, rhs=rhs):
            return cmp(op, lhs, rhs)
        case Not(arg=arg):
            inner = simplify(arg)
            return negate(inner)
        case And(args=args):
            return conj(simplify(a) for a in args)
        case Or(args=args):
            return disj(simplify(a) for a in args)
    return c


# ---------------- evaluation ----------------


def evaluate(c: Constraint, lookup: typing.Callable[[App], Value | None]) -> bool | None:
    """三值求值: lookup 返回 None 表示未赋值, 结果 None 表示未定"""
    match c:
        case BoolConst(value=value):
            return value
        case Cmp(op=op, lhs=lhs, rhs=rhs):
            left = lhs.value if isinstance(lhs, Lit) else lookup(lhs)
            right = rhs.value if isinstance(rhs, Lit) else lookup(rhs)
            if left is None or right is None:
                return None
            return compare(op, left, right)
        case Not(arg=arg):
            value = evaluate(arg, lookup)
            return None if value is None else not value
        case And(args=args):
            result = True
            for arg in args:
                value = evaluate(arg, lookup)
                if value is False:
                    return False
                if value is None:
                    result = None
            return result
        case Or(args=args):
            result = False
            for arg in args:
                value = evaluate(arg, lookup)
                if value is True:
                    return True
                if value is None:
                    result = None
            return result
    raise TypeError(f"Not a constraint: {c!r}")


def eval_term(term: Term, interpretation) -> Value:
    if isinstance(term, Lit):
        return term.value
    return interpretation.value(term.hole, term.args)


def holds(c: Constraint, interpretation) -> bool:
    return bool(evaluate(c, lambda app: interpretation.value(app.hole, app.args)))


def substitute(c: Constraint, assignment: typing.Mapping[App, Value]) -> Constraint:
    """Replace assigned applications by their values and re-simplify."""
    match c:
        case Cmp(op=op, lhs=lhs, rhs=rhs):
            if isinstance(lhs, App) and lhs in assignment:
                lhs = Lit(assignment[lhs])
            if isinstance(rhs, App) and rhs in assignment:
                rhs = Lit(assignment[rhs])
            return cmp(op, lhs, rhs)
        case Not(arg=arg):
            return negate(substitute(arg, assignment))
        case And(args=args):
            return conj(substitute(a, assignment) for a in args)
        case Or(args=args):
            return disj(substitute(a, assignment) for a in args)
    return c


# ---------------- text ----------------


def _term_sexpr(t: Term) -> str:
    if isinstance(t, Lit):
        return format_value(t.value)
    if not t.args:
        return f"??{t.hole}"
    return f"(??{t.hole} " + " ".join(format_value(a) for a in t.args) + ")"


def to_sexpr(c: Constraint) -> str:
    match c:
        case BoolConst(value=value):
            return "true" if value else "false"
        case Cmp(op=op, lhs=lhs, rhs=rhs):
            return f"({op} {_term_sexpr(lhs)} {_term_sexpr(rhs)})"
        case Not(arg=arg):
            return f"(not {to_sexpr(arg)})"
        case And(args=args):
            return "(and " + " ".join(to_sexpr(a) for a in args) + ")"
        case Or(args=args):
            return "(or " + " ".join(to_sexpr(a) for a in args) + ")"
    raise TypeError(f"Not a constraint: {c!r}")
