"""
Symbolic execution of handlers over hole applications.

Every expression evaluates to a list of branches ``(condition, value)``: the
condition is a ground constraint over hole applications, the value is a
concrete value, an application ``??f(args)`` or a boolean constraint. A handler
run at a local state yields outcomes, each tagged with the constraint under
which an interpretation selects it. Guards and outcome conditions are exactly
the ``hasAction`` / ``goesTo`` fragments of the encoder.
"""

import dataclasses
import itertools
import typing

from ..lang.ast import Assign, Goto, Handler, HandlerKind, If, ProcessSketch, Send, Statement
from ..lang.domain import DomainKind, Value
from ..lang.expression import COMPARISONS, Binary, Expression, HoleRef, Unary, compare
from ..learner.constraint import FALSE, TRUE, App, BoolConst, Constraint, cmp, conj, disj, negate
from ..utils.exceptions import InterpretationError
from .state import LocalState, StateSpace

Symbolic = typing.Union[Value, App, Constraint]
Branches = typing.List[typing.Tuple[Constraint, Symbolic]]


def _normal(c: Constraint) -> Symbolic:
    return c.value if isinstance(c, BoolConst) else c


def as_constraint(value: Symbolic) -> Constraint:
    if isinstance(value, Constraint):
        return value
    if isinstance(value, App):
        return cmp("=", value, True)
    return TRUE if value else FALSE


def _not(value: Symbolic) -> Symbolic:
    if isinstance(value, bool):
        return not value
    return _normal(negate(as_constraint(value)))


def _junction(op: str, a: Symbolic, b: Symbolic) -> Symbolic:
    if isinstance(a, bool) and isinstance(b, bool):
        return (a and b) if op == "and" else (a or b)
    if op == "and":
        return _normal(conj(as_constraint(a), as_constraint(b)))
    return _normal(disj(as_constraint(a), as_constraint(b)))


@dataclasses.dataclass(frozen=True)
class Outcome:
    """一个处理器执行分支: 选中条件与目标状态"""

    branch: str  # "body" | "win" | "lose"
    condition: Constraint
    dst: LocalState
    emits: typing.FrozenSet[str] = frozenset()
    payload: Value | None = None  # 跨进程 send 的负载
    decided: typing.Tuple[Value, ...] | None = None
    overflow: typing.Tuple[typing.Tuple[str, int], ...] = ()


@dataclasses.dataclass(frozen=True)
class Case:
    """One handler at one state with one bound payload / decided set."""

    handler: Handler
    payload: Value | None
    guard: Constraint
    outcomes: typing.Tuple[Outcome, ...]


@dataclasses.dataclass
class _Path:
    condition: Constraint
    values: typing.Dict[str, Value]
    location: str
    emits: typing.List[str] = dataclasses.field(default_factory=list)
    payload: Value | None = None
    overflow: typing.List[typing.Tuple[str, int]] = dataclasses.field(default_factory=list)

    def fork(self, condition: Constraint) -> "_Path | None":
        condition = conj(self.condition, condition)
        if condition == FALSE:
            return None
        return _Path(condition, dict(self.values), self.location, list(self.emits), self.payload, list(self.overflow))


class SymbolicExecutor:
    def __init__(self, sketch: ProcessSketch, space: StateSpace | None = None) -> None:
        self._sketch = sketch
        self._space = space or StateSpace(sketch)
        self._signatures = sketch.hole_map

    @property
    def space(self) -> StateSpace:
        return self._space

    # ---------------- expressions ----------------

    def application(self, ref: HoleRef, env: typing.Mapping[str, typing.Any]) -> App:
        signature = self._signatures.get(ref.hole_id, None)
        if signature is None:
            raise InterpretationError(f"Hole ??{ref.hole_id} has no signature")
        return App(ref.hole_id, tuple(env[p] for p in signature.params))

    def concrete(self, value: Symbolic) -> typing.List[typing.Tuple[Constraint, Value]]:
        """按值拆分: 函数应用展开为其值域, 约束展开为真/假两支"""
        if isinstance(value, App):
            domain = self._signatures[value.hole].domain
            return [(cmp("=", value, v), v) for v in domain.values]
        if isinstance(value, Constraint):
            return [(value, True), (negate(value), False)]
        return [(TRUE, value)]

    def branches(self, expr: Expression, env: typing.Mapping[str, typing.Any]) -> Branches:
        match expr:
            case HoleRef():
                return [(TRUE, self.application(expr, env))]
            case Unary(op="not", operand=operand):
                return [(c, _not(v)) for c, v in self.branches(operand, env)]
            case Unary(operand=operand):
                return self._keep(
                    (conj(c, c2), -x) for c, v in self.branches(operand, env) for c2, x in self.concrete(v)
                )
            case Binary(op=op, lhs=lhs, rhs=rhs):
                result = []
                for (c1, a), (c2, b) in itertools.product(self.branches(lhs, env), self.branches(rhs, env)):
                    c = conj(c1, c2)
                    if c == FALSE:
                        continue
                    result.extend((conj(c, c3), v) for c3, v in self._binary(op, a, b))
                return self._keep(result)
        if not expr.holes():
            return [(TRUE, expr.evaluate(env))]
        raise TypeError(f"Cannot evaluate {expr} symbolically")

    def _binary(self, op: str, a: Symbolic, b: Symbolic) -> Branches:
        if op in ("and", "or"):
            return [(TRUE, _junction(op, a, b))]
        if op in COMPARISONS and not isinstance(a, Constraint) and not isinstance(b, Constraint):
            if isinstance(a, App) or isinstance(b, App):
                return [(TRUE, _normal(cmp(op, a, b)))]
            return [(TRUE, compare(op, a, b))]
        result = []
        for (c1, x), (c2, y) in itertools.product(self.concrete(a), self.concrete(b)):
            match op:
                case "+":
                    value = x + y
                case "-":
                    value = x - y
                case _:
                    value = compare(op, x, y)
            result.append((conj(c1, c2), value))
        return result

    @staticmethod
    def _keep(branches) -> Branches:
        return [(c, v) for c, v in branches if c != FALSE]

    def condition(self, expr: Expression | None, env) -> Constraint:
        """⋁ (branch ∧ value): the constraint making ``expr`` true."""
        if expr is None:
            return TRUE
        return disj(conj(c, as_constraint(v)) for c, v in self.branches(expr, env))

    # ---------------- statements ----------------

    def _env(self, path: _Path, extra) -> typing.Dict[str, typing.Any]:
        env = dict(path.values)
        env["$locations"] = self._sketch.location_names
        env["$defaults"] = self._space.defaults
        env.update(extra)
        return env

    def _assign(self, path: _Path, var: str, value: Value) -> None:
        domain = self._sketch.variable_map[var].domain
        if domain.kind is DomainKind.INT and value not in domain:
            path.overflow.append((var, value))
            value = domain.clamp(value)
        path.values[var] = value

    def _run(self, stmts: typing.Iterable[Statement], paths: typing.List[_Path], handler: Handler, extra):
        for stmt in stmts:
            paths = [p for path in paths for p in self._step(stmt, path, handler, extra)]
        return paths

    def _step(self, stmt: Statement, path: _Path, handler: Handler, extra) -> typing.List[_Path]:
        env = self._env(path, extra)
        result = []
        match stmt:
            case Assign(var=var, expr=expr):
                for c, value in self.branches(expr, env):
                    for c2, x in self.concrete(value):
                        forked = path.fork(conj(c, c2))
                        if forked is not None:
                            self._assign(forked, var, x)
                            result.append(forked)
            case Goto(target=HoleRef() as ref):
                for c, target in self.concrete(self.application(ref, env)):
                    forked = path.fork(c)
                    if forked is not None:
                        forked.location = target
                        result.append(forked)
            case Goto(target=target):
                path.location = target
                result.append(path)
            case If(cond=cond, then=then, orelse=orelse):
                for c, value in self.branches(cond, env):
                    test = as_constraint(value)
                    for taken, stmts in ((test, then), (negate(test), orelse)):
                        forked = path.fork(conj(c, taken))
                        if forked is not None:
                            result.extend(self._run(stmts, [forked], handler, extra))
            case Send(event=event, payload=payload):
                if stmt is handler.acting_send and not self._sketch.is_env_event(event) and payload is not None:
                    for c, value in self.branches(payload, env):
                        for c2, x in self.concrete(value):
                            forked = path.fork(conj(c, c2))
                            if forked is not None:
                                forked.payload = x
                                result.append(forked)
                else:
                    if stmt is not handler.acting_send:
                        path.emits.append(event)
                    result.append(path)
            case _:
                raise TypeError(f"Unknown statement {stmt!r}")
        return result

    # ---------------- handlers ----------------

    def guard(self, handler: Handler, state: LocalState, payload: Value | None = None) -> Constraint:
        """hasAction: the constraint under which the guard holds at ``state``."""
        return self.condition(handler.guard, self._space.env(state, event=handler.event, payload=payload))

    def outcomes(
        self,
        handler: Handler,
        state: LocalState,
        branch: str = "body",
        payload: Value | None = None,
        decided: typing.Tuple[Value, ...] | None = None,
    ) -> typing.List[Outcome]:
        """Outcomes of running one branch; equal effects are merged with their conditions disjoined."""
        stmts = {"body": handler.body, "win": handler.win, "lose": handler.lose}[branch]
        extra = {"$event": handler.event, "$payload": payload, "$decided": decided}
        start = _Path(TRUE, self._space.valuation(state), state.location)
        merged: typing.Dict[tuple, typing.List[Constraint]] = {}
        for path in self._run(stmts, [start], handler, extra):
            key = (
                self._space.make(path.location, path.values),
                frozenset(path.emits),
                path.payload,
                tuple(path.overflow),
            )
            merged.setdefault(key, []).append(path.condition)
        return [
            Outcome(branch, disj(conds), dst, emits, sent, decided, overflow)
            for (dst, emits, sent, overflow), conds in merged.items()
        ]

    def decided_sets(self, handler: Handler) -> typing.List[typing.Tuple[typing.Tuple[Value, ...], Constraint]]:
        """Every decided list a consensus handler may receive, with the cardinality constraint it needs."""
        event = self._sketch.event_map.get(handler.event, None)
        if event is None or event.proposal_var is None:
            return []
        values = self._sketch.variable_map[event.proposal_var].domain.values
        cardinality = handler.cardinality
        if isinstance(cardinality, HoleRef):
            top = max(self._signatures[cardinality.hole_id].domain.values)
        else:
            top = cardinality
        result = []
        for size in range(1, min(top, len(values)) + 1):
            if isinstance(cardinality, HoleRef):
                need = cmp(">=", App(cardinality.hole_id, ()), size)
            else:
                need = TRUE
            for subset in itertools.combinations(sorted(values), size):
                result.append((tuple(subset), need))
        return result

    def cases(self, handler: Handler, state: LocalState) -> typing.List[Case]:
        """All ways ``handler`` can be offered at ``state``."""
        match handler.kind:
            case HandlerKind.RECV:
                event = self._sketch.event_map.get(handler.event, None)
                payloads = (None,) if event is None or event.payload is None else event.payload.values
                return [
                    Case(handler, p, self.guard(handler, state, p), tuple(self.outcomes(handler, state, "body", p)))
                    for p in payloads
                ]
            case HandlerKind.PARTITION:
                outcomes = self.outcomes(handler, state, "win") + self.outcomes(handler, state, "lose")
                return [Case(handler, None, self.guard(handler, state), tuple(outcomes))]
            case HandlerKind.CONSENSUS:
                outcomes = []
                for decided, need in self.decided_sets(handler):
                    for outcome in self.outcomes(handler, state, "body", None, decided):
                        condition = conj(outcome.condition, need)
                        if condition != FALSE:
                            outcomes.append(dataclasses.replace(outcome, condition=condition))
                return [Case(handler, None, self.guard(handler, state), tuple(outcomes))]
            case _:
                return [Case(handler, None, self.guard(handler, state), tuple(self.outcomes(handler, state)))]
