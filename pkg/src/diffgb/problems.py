"""Problem files: a tiny declaration language for operator computations.

A problem is a sequence of statements separated by newlines or ';'.

    ring x1 x2          # all polynomial variables, in order
    dvars d1 d2         # derivation symbols; d_i acts on the i-th ring
                        # variable, surplus ring variables are parameters
    order deglex        # d-order kind: lex | deglex | degrevlex
    P1 = x1*d1 + x1*d2 + x1
    P2 = (x2 - x1)*d2 - 1
    delta-gb            # optional command payload

Expressions use + - * ^ ( ), integer and p/q literals; '*' is required
between factors and '^' takes a nonnegative integer.  Everything is
normalized through the operator product while parsing, so definitions
like ``d1*x1`` come out in normal form immediately.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .diffop import DiffOp, RingSpec
from .orders import MonomialOrder, ORDER_KINDS

COMMANDS = (
    "delta-gb", "gb", "reduce", "member", "stair", "cone", "sdelta",
    "verify-delta-gb", "flatness", "finiteness", "syzygy", "compare",
)

_TOKEN_RE = re.compile(
    r"""(?P<ws>[ \t\r]+)
      | (?P<comment>\#[^\n]*)
      | (?P<newline>\n)
      | (?P<rat>\d+/\d+)
      | (?P<nat>\d+)
      | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
      | (?P<sym>[-+*^()=;,])
    """,
    re.VERBOSE,
)


class ParseError(Exception):
    """Syntax or semantic error with source position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


class Token(NamedTuple):
    kind: str   # 'nat' | 'rat' | 'ident' | 'sym' | 'end'
    value: str
    line: int
    col: int


def _tokenize(text: str) -> list[list[Token]]:
    """Token lists, one per statement (split on ';' and newlines)."""
    statements: list[list[Token]] = []
    current: list[Token] = []

    def flush():
        if current:
            statements.append(list(current))
            current.clear()

    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "newline":
            flush()
            line += 1
            col = 1
        elif kind in ("ws", "comment"):
            col += len(value)
        elif kind == "sym" and value == ";":
            flush()
            col += 1
        else:
            current.append(Token(kind, value, line, col))
            col += len(value)
        pos = m.end()
    flush()
    return statements


@dataclass
class Command:
    """Parsed command payload: name plus its single argument, if any."""

    name: str
    expr: DiffOp | None = None
    alpha: tuple | None = None


@dataclass
class ProblemFile:
    ring: RingSpec
    operators: dict[str, DiffOp]
    command: Command | None


class _Parser:
    def __init__(self):
        self.xnames: tuple[str, ...] | None = None
        self.dnames: tuple[str, ...] | None = None
        self.order_kind = "deglex"
        self.ring: RingSpec | None = None
        self.operators: dict[str, DiffOp] = {}
        self.command: Command | None = None

    # -- statement level -------------------------------------------------

    def feed(self, toks: list[Token]) -> None:
        head = toks[0]
        if head.kind != "ident":
            raise ParseError(f"statement cannot start with {head.value!r}",
                             head.line, head.col)
        if head.value in ("ring", "dvars", "order"):
            self._declaration(toks)
            return
        if len(toks) > 1 and toks[1].kind == "sym" and toks[1].value == "=":
            self._definition(toks)
            return
        self._command(toks)

    def _declaration(self, toks: list[Token]) -> None:
        head, rest = toks[0], toks[1:]
        if self.ring is not None:
            raise ParseError(f"'{head.value}' must come before any definition",
                             head.line, head.col)
        names = []
        for t in rest:
            if t.kind != "ident":
                raise ParseError(f"expected a name, found {t.value!r}", t.line, t.col)
            names.append(t.value)
        if not names:
            raise ParseError(f"'{head.value}' needs at least one argument",
                             head.line, head.col)
        if head.value == "ring":
            if self.xnames is not None:
                raise ParseError("duplicate ring declaration", head.line, head.col)
            self.xnames = tuple(names)
        elif head.value == "dvars":
            if self.dnames is not None:
                raise ParseError("duplicate dvars declaration", head.line, head.col)
            self.dnames = tuple(names)
        else:
            if len(names) != 1 or names[0] not in ORDER_KINDS:
                raise ParseError("order must be one of lex, deglex, degrevlex",
                                 head.line, head.col)
            self.order_kind = names[0]

    def _ensure_ring(self, at: Token) -> RingSpec:
        if self.ring is None:
            if self.xnames is None or self.dnames is None:
                raise ParseError("ring and dvars must be declared first",
                                 at.line, at.col)
            n = len(self.dnames)
            m = len(self.xnames) - n
            if m < 0:
                raise ParseError("more derivation symbols than ring variables",
                                 at.line, at.col)
            try:
                self.ring = RingSpec(n, m, self.xnames, self.dnames,
                                     MonomialOrder(self.order_kind))
            except ValueError as e:
                raise ParseError(str(e), at.line, at.col) from None
        return self.ring

    def _definition(self, toks: list[Token]) -> None:
        name_tok = toks[0]
        ring = self._ensure_ring(name_tok)
        name = name_tok.value
        if name in ring.names or name in ring.dnames:
            raise ParseError(f"{name!r} is a ring variable", name_tok.line, name_tok.col)
        if name in self.operators:
            raise ParseError(f"{name!r} is already defined", name_tok.line, name_tok.col)
        value = _ExprParser(self, toks[2:], toks[1]).parse_all()
        self.operators[name] = value

    def _command(self, toks: list[Token]) -> None:
        # command names may contain '-': join ident ('-' ident)* greedily
        if self.command is not None:
            raise ParseError("only one command statement is allowed",
                             toks[0].line, toks[0].col)
        name = toks[0].value
        i = 1
        while (i + 1 < len(toks) and toks[i].kind == "sym" and toks[i].value == "-"
               and toks[i + 1].kind == "ident"
               and any(c.startswith(f"{name}-{toks[i + 1].value}") for c in COMMANDS)):
            name = f"{name}-{toks[i + 1].value}"
            i += 2
        if name not in COMMANDS:
            raise ParseError(f"unknown command or statement {name!r}",
                             toks[0].line, toks[0].col)
        self._ensure_ring(toks[0])
        rest = toks[i:]
        cmd = Command(name)
        if name in ("reduce", "member"):
            if not rest:
                raise ParseError(f"'{name}' needs an operator expression",
                                 toks[0].line, toks[0].col)
            cmd.expr = _ExprParser(self, rest, toks[0]).parse_all()
        elif name in ("cone", "sdelta"):
            cmd.alpha = self._alpha(rest, toks[0])
        elif rest:
            t = rest[0]
            raise ParseError(f"'{name}' takes no arguments", t.line, t.col)
        self.command = cmd

    def _alpha(self, toks: list[Token], at: Token) -> tuple:
        ring = self._ensure_ring(at)
        if (not toks or toks[0].kind != "sym" or toks[0].value != "("
                or toks[-1].kind != "sym" or toks[-1].value != ")"):
            raise ParseError("expected an exponent tuple like (1,1)", at.line, at.col)
        body = toks[1:-1]
        entries = []
        expect_nat = True
        for t in body:
            if expect_nat:
                if t.kind != "nat":
                    raise ParseError("expected a nonnegative integer", t.line, t.col)
                entries.append(int(t.value))
            else:
                if t.kind != "sym" or t.value != ",":
                    raise ParseError("expected ','", t.line, t.col)
            expect_nat = not expect_nat
        if expect_nat or len(entries) != ring.n:
            raise ParseError(f"expected {ring.n} exponent entries", at.line, at.col)
        return tuple(entries)

    def lookup(self, tok: Token) -> DiffOp:
        ring = self._ensure_ring(tok)
        name = tok.value
        if name in ring.names:
            return ring.embed(ring.x(ring.names.index(name)))
        if name in ring.dnames:
            return ring.d(ring.dnames.index(name))
        if name in self.operators:
            return self.operators[name]
        raise ParseError(f"undeclared name {name!r}", tok.line, tok.col)


class _ExprParser:
    """Recursive descent over one token list; every value is an operator."""

    def __init__(self, env: _Parser, toks: list[Token], at: Token):
        self.env = env
        self.toks = toks
        self.pos = 0
        self.at = at  # anchor for end-of-input errors

    def _peek(self) -> Token | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def _next(self, expect: str | None = None) -> Token:
        t = self._peek()
        if t is None:
            raise ParseError("unexpected end of expression", self.at.line, self.at.col)
        if expect is not None and (t.kind != "sym" or t.value != expect):
            raise ParseError(f"expected {expect!r}, found {t.value!r}", t.line, t.col)
        self.pos += 1
        return t

    def parse_all(self) -> DiffOp:
        value = self.parse_expr()
        t = self._peek()
        if t is not None:
            raise ParseError(f"unexpected {t.value!r}", t.line, t.col)
        return value

    def parse_expr(self) -> DiffOp:
        value = self.parse_term()
        while True:
            t = self._peek()
            if t is not None and t.kind == "sym" and t.value in "+-":
                self.pos += 1
                rhs = self.parse_term()
                value = value + rhs if t.value == "+" else value - rhs
            else:
                return value

    def parse_term(self) -> DiffOp:
        value = self.parse_unary()
        while True:
            t = self._peek()
            if t is not None and t.kind == "sym" and t.value == "*":
                self.pos += 1
                value = value * self.parse_unary()
            else:
                return value

    def parse_unary(self) -> DiffOp:
        t = self._peek()
        if t is not None and t.kind == "sym" and t.value in "+-":
            self.pos += 1
            value = self.parse_unary()
            return value if t.value == "+" else -value
        return self.parse_power()

    def parse_power(self) -> DiffOp:
        value = self.parse_atom()
        while True:
            t = self._peek()
            if t is None or t.kind != "sym" or t.value != "^":
                return value
            self.pos += 1
            e = self._peek()
            if e is None or e.kind != "nat":
                bad = e if e is not None else t
                raise ParseError("'^' needs a nonnegative integer exponent",
                                 bad.line, bad.col)
            self.pos += 1
            value = value ** int(e.value)

    def parse_atom(self) -> DiffOp:
        t = self._next()
        ring = self.env._ensure_ring(t)
        if t.kind == "nat":
            return ring.embed(int(t.value))
        if t.kind == "rat":
            num, den = t.value.split("/")
            if int(den) == 0:
                raise ParseError("division by zero in a rational literal",
                                 t.line, t.col)
            return ring.embed(Fraction(int(num), int(den)))
        if t.kind == "ident":
            return self.env.lookup(t)
        if t.kind == "sym" and t.value == "(":
            value = self.parse_expr()
            self._next(")")
            return value
        raise ParseError(f"unexpected {t.value!r}", t.line, t.col)


def parse_problem(text: str) -> ProblemFile:
    """Parse a full problem file; raises ParseError with positions."""
    parser = _Parser()
    for stmt in _tokenize(text):
        parser.feed(stmt)
    if parser.ring is None:
        if parser.xnames is None:
            raise ParseError("problem declares no ring", 1, 1)
        parser._ensure_ring(Token("ident", "ring", 1, 1))
    return ProblemFile(parser.ring, parser.operators, parser.command)


def parse_expression(text: str, problem: ProblemFile) -> DiffOp:
    """Parse one operator expression in the context of a parsed problem."""
    parser = _Parser()
    parser.xnames = problem.ring.names
    parser.dnames = problem.ring.dnames
    parser.ring = problem.ring
    parser.operators = problem.operators
    statements = _tokenize(text)
    if len(statements) != 1:
        raise ParseError("expected a single expression", 1, 1)
    toks = statements[0]
    return _ExprParser(parser, toks, toks[0]).parse_all()


def rebind_order(problem: ProblemFile, kind: str) -> ProblemFile:
    """Same problem under a different d-order kind."""
    old = problem.ring
    ring = RingSpec(old.n, old.m, old.names, old.dnames, MonomialOrder(kind))
    ops = {k: DiffOp(ring, v.terms) for k, v in problem.operators.items()}
    cmd = problem.command
    if cmd is not None:
        expr = DiffOp(ring, cmd.expr.terms) if cmd.expr is not None else None
        cmd = Command(cmd.name, expr, cmd.alpha)
    return ProblemFile(ring, ops, cmd)
