"""
表达式树

表达式由算符 (op) 与子节点 (children) 构成, 叶子节点为常量、变量名、事件字段或 hole 引用.
节点不可变且可哈希, 结构相等即相等 (源位置 span 不参与比较).
``evaluate`` 只处理不含 hole 的表达式; 含 hole 的符号求值见 ``semantics.executor``.
"""

import dataclasses
import typing

from .domain import Domain, Value, format_value


@dataclasses.dataclass(frozen=True)
class Span:
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


def _span():
    return dataclasses.field(default=None, compare=False, repr=False)


class Expression:
    """表达式节点基类"""

    op: str

    @property
    def children(self) -> typing.Tuple["Expression", ...]:
        return ()

    def walk(self) -> typing.Generator["Expression", None, None]:
        yield self
        for child in self.children:
            yield from child.walk()

    def holes(self) -> typing.List["HoleRef"]:
        return [e for e in self.walk() if isinstance(e, HoleRef)]

    def names(self) -> typing.Set[str]:
        return {e.ident for e in self.walk() if isinstance(e, Name)}

    def evaluate(self, env: typing.Mapping[str, typing.Any]) -> Value:
        raise NotImplementedError(f"{self.__class__.__name__}.evaluate")

    def __str__(self) -> str:
        return self.render()

    def render(self, parent_prec: int = 0) -> str:
        raise NotImplementedError()


@dataclasses.dataclass(frozen=True)
class Const(Expression):
    value: Value
    span: Span | None = _span()
    op = "const"

    def evaluate(self, env):
        return self.value

    def render(self, parent_prec: int = 0) -> str:
        return format_value(self.value)


@dataclasses.dataclass(frozen=True)
class Name(Expression):
    """变量, 特殊变量 ``loc`` 或位置名"""

    ident: str
    span: Span | None = _span()
    op = "name"

    def evaluate(self, env):
        if self.ident in env:
            return env[self.ident]
        locations = env.get("$locations", ())
        if self.ident in locations:
            return self.ident
        raise KeyError(f"Unknown name '{self.ident}'")

    def render(self, parent_prec: int = 0) -> str:
        return self.ident


@dataclasses.dataclass(frozen=True)
class Field(Expression):
    """``e.payld`` / ``e.sID``"""

    event: str
    field: str
    span: Span | None = _span()
    op = "field"

    def evaluate(self, env):
        if self.field == "payld":
            if env.get("$event") != self.event:
                raise KeyError(f"Payload of '{self.event}' is not bound here")
            return env["$payload"]
        raise KeyError(f"'{self.event}.{self.field}' has no value in a local state")

    def render(self, parent_prec: int = 0) -> str:
        return f"{self.event}.{self.field}"


@dataclasses.dataclass(frozen=True)
class DecVar(Expression):
    """``id.decVar[i]``, 1-based index into the decided list"""

    event: str
    index: int
    span: Span | None = _span()
    op = "decvar"

    def evaluate(self, env):
        decided = env.get("$decided", None)
        if decided is None or env.get("$event") != self.event:
            raise KeyError(f"'{self.event}.decVar' is not bound here")
        if not 1 <= self.index <= len(decided):
            raise IndexError(f"'{self.event}.decVar[{self.index}]' out of range for decided set {decided}")
        return decided[self.index - 1]

    def render(self, parent_prec: int = 0) -> str:
        return f"{self.event}.decVar[{self.index}]"


@dataclasses.dataclass(frozen=True)
class Default(Expression):
    var: str
    span: Span | None = _span()
    op = "default"

    def evaluate(self, env):
        return env["$defaults"][self.var]

    def render(self, parent_prec: int = 0) -> str:
        return f"default({self.var})"


@dataclasses.dataclass(frozen=True)
class HoleRef(Expression):
    """``??id``, ``??id(x,y)``, ``??id(x):int[1,9]``

    params None 表示未显式给出参数列表 (推断时取全部局部变量)
    """

    hole_id: str
    params: typing.Tuple[str, ...] | None = None
    annotation: Domain | None = None
    span: Span | None = _span()
    op = "hole"

    def evaluate(self, env):
        raise TypeError(f"Hole ??{self.hole_id} has no value without an interpretation")

    def render(self, parent_prec: int = 0) -> str:
        text = f"??{self.hole_id}"
        if self.params is not None:
            text += "(" + ", ".join(self.params) + ")"
        if self.annotation is not None:
            text += f":{self.annotation}"
        return text


@dataclasses.dataclass(frozen=True)
class Fired(Expression):
    """``fired(e)``: 在迁移上求值"""

    event: str
    span: Span | None = _span()
    op = "fired"

    def evaluate(self, env):
        return self.event in env.get("$fired", ())

    def render(self, parent_prec: int = 0) -> str:
        return f"fired({self.event})"


@dataclasses.dataclass(frozen=True)
class CountAtom(Expression):
    """``m at (φ)``: 至少 m 个进程满足 φ"""

    threshold: int
    predicate: Expression
    span: Span | None = _span()
    op = "count"

    @property
    def children(self):
        return (self.predicate,)

    def evaluate(self, env):
        states = env["$states"]
        count = 0
        for state_env in states:
            if self.predicate.evaluate(state_env):
                count += 1
                if count >= self.threshold:
                    return True
        return False

    def render(self, parent_prec: int = 0) -> str:
        return f"{self.threshold} at ({self.predicate.render()})"


# 优先级: or < and < not < 比较 < 加减 < 一元负号
PRECEDENCE = {"or": 1, "and": 2, "not": 3, "=": 4, "!=": 4, "<": 4, "<=": 4, ">": 4, ">=": 4, "+": 5, "-": 5, "neg": 6}

COMPARISONS = ("=", "!=", "<", "<=", ">", ">=")


def compare(op: str, a, b) -> bool:
    match op:
        case "=":
            return a == b and type(a) is type(b)
        case "!=":
            return not (a == b and type(a) is type(b))
        case "<":
            return a < b
        case "<=":
            return a <= b
        case ">":
            return a > b
        case ">=":
            return a >= b
    raise ValueError(f"Unknown comparison '{op}'")


@dataclasses.dataclass(frozen=True)
class Unary(Expression):
    op: str
    operand: Expression
    span: Span | None = _span()

    @property
    def children(self):
        return (self.operand,)

    def evaluate(self, env):
        value = self.operand.evaluate(env)
        if self.op == "not":
            return not value
        return -value

    def render(self, parent_prec: int = 0) -> str:
        prec = PRECEDENCE[self.op]
        text = f"not {self.operand.render(prec)}" if self.op == "not" else f"-{self.operand.render(prec)}"
        return f"({text})" if prec < parent_prec else text


@dataclasses.dataclass(frozen=True)
class Binary(Expression):
    op: str
    lhs: Expression
    rhs: Expression
    span: Span | None = _span()

    @property
    def children(self):
        return (self.lhs, self.rhs)

    def evaluate(self, env):
        match self.op:
            case "and":
                return bool(self.lhs.evaluate(env)) and bool(self.rhs.evaluate(env))
            case "or":
                return bool(self.lhs.evaluate(env)) or bool(self.rhs.evaluate(env))
            case "+":
                return self.lhs.evaluate(env) + self.rhs.evaluate(env)
            case "-":
                return self.lhs.evaluate(env) - self.rhs.evaluate(env)
            case _:
                return compare(self.op, self.lhs.evaluate(env), self.rhs.evaluate(env))

    def render(self, parent_prec: int = 0) -> str:
        prec = PRECEDENCE[self.op]
        # 左结合: 右操作数同级时加括号
        text = f"{self.lhs.render(prec)} {self.op} {self.rhs.render(prec + 1)}"
        return f"({text})" if prec < parent_prec else text
