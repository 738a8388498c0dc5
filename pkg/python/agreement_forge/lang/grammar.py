"""
pyparsing grammars for ``.mcy`` sketches and ``.spec`` suites.

The grammars only build raw AST nodes; name resolution, hole signature
inference and cross-reference checks happen in ``lang.parser`` / ``lang.validate``.
"""

import dataclasses
import functools
import typing

import pyparsing as pp

from .ast import Assign, EventDecl, EventKind, Goto, Handler, HandlerKind, If, LocationDecl, Send, VarDecl
from .domain import Domain
from .expression import (
    Binary,
    Const,
    CountAtom,
    DecVar,
    Default,
    Field,
    Fired,
    HoleRef,
    Name,
    Span,
    Unary,
)

pp.ParserElement.enable_packrat()

RESERVED = (
    "process machine variables events actions env initial location on do goto win lose partition consensus "
    "recv rend bcast br rz when if else and or not true false int bool All default at never eventually "
    "always implies fired safety liveness"
).split()


def _span(s: str, loc: int) -> Span:
    return Span(pp.lineno(loc, s), pp.col(loc, s))


def _kw(word: str) -> pp.Keyword:
    return pp.Keyword(word)


LPAR, RPAR = pp.Suppress("("), pp.Suppress(")")
LBRACK, RBRACK = pp.Suppress("["), pp.Suppress("]")
LBRACE, RBRACE = pp.Suppress("{"), pp.Suppress("}")
COMMA, COLON = pp.Suppress(","), pp.Suppress(":")

INT = pp.Regex(r"-?\d+").set_parse_action(lambda t: int(t[0])).set_name("integer")
NAT = pp.Regex(r"\d+").set_parse_action(lambda t: int(t[0])).set_name("natural number")

IDENT = pp.Regex(
    r"(?!(?:" + "|".join(RESERVED) + r")(?![A-Za-z0-9_]))(?!_(?![A-Za-z0-9_]))[A-Za-z_][A-Za-z0-9_]*"
).set_name("identifier")

UNDERSCORE = pp.Keyword("_")

BOOL_LIT = (_kw("true") | _kw("false")).set_parse_action(lambda t: t[0] == "true")


def _int_domain(t):
    return Domain.int_range(t[0], t[1])


INT_TYPE = (pp.Suppress(_kw("int")) + LBRACK + INT + COMMA + INT + RBRACK).set_parse_action(_int_domain)
BOOL_TYPE = _kw("bool").set_parse_action(lambda t: Domain.boolean())
TYPE = INT_TYPE | BOOL_TYPE


# ---------------- expressions ----------------


def _hole(s, loc, t):
    params = None
    annotation = None
    for item in t[1:]:
        if isinstance(item, Domain):
            annotation = item
        else:
            params = tuple(item)
    return HoleRef(t[0][2:], params, annotation, span=_span(s, loc))


HOLE = (
    pp.Combine(pp.Literal("??") + pp.Word(pp.alphanums + "_"))
    + pp.Opt(pp.Group(LPAR + pp.Opt(IDENT + pp.ZeroOrMore(COMMA + IDENT)) + RPAR))
    + pp.Opt(COLON + TYPE)
).set_parse_action(_hole)


def _binary_action(s, loc, t):
    items = t[0]
    node = items[0]
    for i in range(1, len(items), 2):
        node = Binary(items[i], node, items[i + 1], span=_span(s, loc))
    return node


def _unary_action(s, loc, t):
    items = t[0]
    node = items[-1]
    for op in reversed(items[:-1]):
        node = Unary("neg" if op == "-" else "not", node, span=_span(s, loc))
    return node


@functools.lru_cache(maxsize=1)
def expression_grammar() -> pp.ParserElement:
    default_call = (pp.Suppress(_kw("default")) + LPAR + IDENT + RPAR).set_parse_action(
        lambda s, loc, t: Default(t[0], span=_span(s, loc))
    )
    fired_call = (pp.Suppress(_kw("fired")) + LPAR + IDENT + RPAR).set_parse_action(
        lambda s, loc, t: Fired(t[0], span=_span(s, loc))
    )
    decvar = (IDENT + pp.Suppress(".") + pp.Suppress(pp.Literal("decVar")) + LBRACK + NAT + RBRACK).set_parse_action(
        lambda s, loc, t: DecVar(t[0], t[1], span=_span(s, loc))
    )
    field = (IDENT + pp.Suppress(".") + (pp.Literal("payld") | pp.Literal("sID"))).set_parse_action(
        lambda s, loc, t: Field(t[0], t[1], span=_span(s, loc))
    )
    number = NAT.copy().add_parse_action(lambda s, loc, t: Const(t[0], span=_span(s, loc)))
    boolean = BOOL_LIT.copy().add_parse_action(lambda s, loc, t: Const(t[0], span=_span(s, loc)))
    name = IDENT.copy().add_parse_action(lambda s, loc, t: Name(t[0], span=_span(s, loc)))

    operand = HOLE | default_call | fired_call | decvar | field | number | boolean | name

    comparison = pp.one_of("= != <= >= < >")
    expr = pp.infix_notation(
        operand,
        [
            (pp.Literal("-"), 1, pp.OpAssoc.RIGHT, _unary_action),
            (pp.one_of("+ -"), 2, pp.OpAssoc.LEFT, _binary_action),
            (comparison, 2, pp.OpAssoc.LEFT, _binary_action),
            (_kw("not"), 1, pp.OpAssoc.RIGHT, _unary_action),
            (_kw("and"), 2, pp.OpAssoc.LEFT, _binary_action),
            (_kw("or"), 2, pp.OpAssoc.LEFT, _binary_action),
        ],
    )
    return expr.set_name("expression")


# ---------------- sketches ----------------


@functools.lru_cache(maxsize=1)
def sketch_grammar() -> pp.ParserElement:
    expr = expression_grammar()
    SEMI = pp.Opt(pp.Suppress(";"))

    stmt = pp.Forward()
    block = (LBRACE + pp.Group(pp.ZeroOrMore(stmt)) + RBRACE) | pp.Group(stmt)

    goto_stmt = (pp.Suppress(_kw("goto")) + (HOLE | IDENT)).set_parse_action(
        lambda s, loc, t: Goto(t[0], span=_span(s, loc))
    )

    def _if(s, loc, t):
        then = tuple(t[1])
        orelse = tuple(t[2]) if len(t) > 2 else ()
        return If(t[0], then, orelse, span=_span(s, loc))

    if_stmt = (
        pp.Suppress(_kw("if")) + LPAR + expr + RPAR + block + pp.Opt(pp.Suppress(_kw("else")) + block)
    ).set_parse_action(_if)

    def _send(s, loc, t):
        payload = t.get("payload", None)
        target = t.get("target", None)
        return Send(t[0], t[1], payload, target, span=_span(s, loc))

    send_stmt = (
        (_kw("rend") | _kw("bcast"))
        + LPAR
        + IDENT
        + pp.Opt(LBRACK + expr("payload") + RBRACK)
        + pp.Opt(COMMA + expr("target"))
        + RPAR
    ).set_parse_action(_send)

    assign_stmt = (IDENT + pp.Suppress(":=") + expr).set_parse_action(
        lambda s, loc, t: Assign(t[0], t[1], span=_span(s, loc))
    )

    stmt <<= (goto_stmt | if_stmt | send_stmt | assign_stmt) + SEMI

    stmts = pp.Group(pp.ZeroOrMore(stmt))

    cardinality = NAT | HOLE

    # header / body 先产出中间对象, 由 handler 动作组装
    recv_h = (pp.Suppress(_kw("recv")) + LPAR + IDENT + RPAR).set_parse_action(
        lambda t: _Header(HandlerKind.RECV, event=t[0])
    )

    def _send_header(s, loc, t):
        send = Send(t[0], t[1], t.get("payload", None), t.get("target", None), span=_span(s, loc))
        return _Header(HandlerKind.INTERNAL, send=send)

    send_h = (
        (_kw("bcast") | _kw("rend"))
        + LPAR
        + IDENT
        + pp.Opt(LBRACK + expr("payload") + RBRACK)
        + pp.Opt(COMMA + expr("target"))
        + RPAR
    ).set_parse_action(_send_header)

    partition_h = (
        pp.Suppress(_kw("partition"))
        + pp.Suppress("<")
        + IDENT
        + pp.Suppress(">")
        + LPAR
        + pp.Suppress(_kw("All"))
        + COMMA
        + cardinality
        + RPAR
    ).set_parse_action(lambda t: _Header(HandlerKind.PARTITION, event=t[0], cardinality=t[1]))

    consensus_h = (
        pp.Suppress(_kw("consensus"))
        + pp.Suppress("<")
        + IDENT
        + pp.Suppress(">")
        + LPAR
        + pp.Suppress(_kw("All"))
        + COMMA
        + cardinality
        + COMMA
        + (UNDERSCORE | IDENT)
        + RPAR
    ).set_parse_action(
        lambda t: _Header(
            HandlerKind.CONSENSUS, event=t[0], cardinality=t[1], proposal=None if t[2] == "_" else t[2]
        )
    )

    internal_h = UNDERSCORE.copy().set_parse_action(lambda t: _Header(HandlerKind.INTERNAL))

    header = recv_h | send_h | partition_h | consensus_h | internal_h

    do_body = (pp.Suppress(_kw("do")) + stmts).set_parse_action(lambda t: _Body(body=tuple(t[0])))
    win_lose_body = (
        pp.Suppress(_kw("win")) + COLON + stmts + pp.Suppress(_kw("lose")) + COLON + stmts
    ).set_parse_action(lambda t: _Body(win=tuple(t[0]), lose=tuple(t[1])))

    def _handler(s, loc, t):
        head: _Header = t[0]
        guard = None
        body = _Body()
        for item in t[1:]:
            if isinstance(item, _Body):
                body = item
            else:
                guard = item
        statements = body.body
        if head.send is not None:
            statements = (head.send,) + statements
        return _RawHandler(
            kind=head.kind,
            event=head.event,
            guard=guard,
            body=statements,
            win=body.win,
            lose=body.lose,
            cardinality=head.cardinality,
            proposal=head.proposal,
            span=_span(s, loc),
        )

    handler = (
        pp.Suppress(_kw("on")) + header + pp.Opt(pp.Suppress(_kw("when")) + expr) + pp.Opt(do_body | win_lose_body)
    ).set_parse_action(_handler)

    def _location(s, loc, t):
        initial = t[0] == "initial"
        items = list(t[1:] if initial else t)
        name = items[0]
        handlers = tuple(
            raw.build(name, index) for index, raw in enumerate(h for h in items[1:] if isinstance(h, _RawHandler))
        )
        return LocationDecl(name, initial, handlers, span=_span(s, loc))

    location = (
        pp.Opt(_kw("initial")) + pp.Suppress(_kw("location")) + IDENT + pp.ZeroOrMore(handler)
    ).set_parse_action(_location)

    literal = INT | BOOL_LIT

    def _vardecl(s, loc, t):
        initial = t[2] if len(t) > 2 else None
        return VarDecl(t[1], t[0], initial, span=_span(s, loc))

    vardecl = (TYPE + IDENT + pp.Opt(pp.Suppress("=") + literal)).set_parse_action(_vardecl)

    def _eventdecl(s, loc, t):
        items = list(t)
        env = items[0] == "env"
        if env:
            items = items[1:]
        kind = EventKind.BROADCAST if items[0] in ("bcast", "br") else EventKind.RENDEZVOUS
        payload = items[2] if len(items) > 2 else None
        return EventDecl(items[1], kind, env, payload, span=_span(s, loc))

    eventdecl = (
        pp.Opt(_kw("env"))
        + (_kw("bcast") | _kw("br") | _kw("rend") | _kw("rz"))
        + IDENT
        + pp.Opt(COLON + INT_TYPE)
    ).set_parse_action(_eventdecl)

    process = (
        pp.Suppress(_kw("process") | _kw("machine"))
        + IDENT("name")
        + pp.Opt(pp.Suppress(_kw("variables")) + pp.Group(pp.ZeroOrMore(vardecl))("variables"))
        + pp.Opt(pp.Suppress(_kw("events") | _kw("actions")) + pp.Group(pp.ZeroOrMore(eventdecl))("events"))
        + pp.Group(pp.ZeroOrMore(location))("locations")
    )
    process.ignore(pp.dbl_slash_comment)
    process.ignore(pp.c_style_comment)
    return process


@dataclasses.dataclass
class _Header:
    kind: HandlerKind
    event: str | None = None
    cardinality: typing.Any = None
    proposal: str | None = None
    send: Send | None = None


@dataclasses.dataclass
class _Body:
    body: tuple = ()
    win: tuple = ()
    lose: tuple = ()


class _RawHandler:
    """处理器在所属位置确定之前的中间形式"""

    def __init__(self, **kwargs) -> None:
        self.fields = kwargs

    def build(self, location: str, index: int) -> Handler:
        return Handler(location=location, index=index, **self.fields)

# ---------------- specs ----------------


@functools.lru_cache(maxsize=1)
def spec_grammar() -> pp.ParserElement:
    from .spec import LivenessLine, LivenessTemplate, SafetyLine

    expr = expression_grammar()

    atom = (NAT + pp.Suppress(_kw("at")) + LPAR + expr + RPAR).set_parse_action(
        lambda s, loc, t: CountAtom(t[0], t[1], span=_span(s, loc))
    )
    fired = (pp.Suppress(_kw("fired")) + LPAR + IDENT + RPAR).set_parse_action(
        lambda s, loc, t: Fired(t[0], span=_span(s, loc))
    )
    prop = pp.infix_notation(
        atom | fired,
        [
            (_kw("not"), 1, pp.OpAssoc.RIGHT, _unary_action),
            (_kw("and"), 2, pp.OpAssoc.LEFT, _binary_action),
            (_kw("or"), 2, pp.OpAssoc.LEFT, _binary_action),
        ],
    )

    safety = (
        pp.Suppress(_kw("safety"))
        + IDENT
        + COLON
        + pp.Suppress(_kw("never"))
        + pp.Group(atom + pp.ZeroOrMore(pp.Suppress(_kw("and")) + atom))
    ).set_parse_action(lambda s, loc, t: SafetyLine(t[0], tuple(t[1]), span=_span(s, loc)))

    eventually = (
        pp.Suppress(_kw("liveness")) + IDENT + COLON + pp.Suppress(_kw("eventually")) + prop
    ).set_parse_action(
        lambda s, loc, t: LivenessLine(t[0], LivenessTemplate.EVENTUALLY, t[1], None, span=_span(s, loc))
    )
    always = (
        pp.Suppress(_kw("liveness"))
        + IDENT
        + COLON
        + pp.Suppress(_kw("always"))
        + prop
        + pp.Suppress(_kw("implies"))
        + pp.Suppress(_kw("eventually"))
        + prop
    ).set_parse_action(
        lambda s, loc, t: LivenessLine(t[0], LivenessTemplate.ALWAYS_IMPLIES, t[1], t[2], span=_span(s, loc))
    )

    suite = pp.ZeroOrMore(safety | always | eventually)
    suite.ignore(pp.dbl_slash_comment)
    suite.ignore(pp.c_style_comment)
    return suite
