"""Parser for ``.dsys`` difference-system files.

Grammar (statements end with ``;``, ``#`` starts a comment)::

    file      := { header | equation }
    header    := ("params" | "vars" | "keep" | "eliminate") ":" [ name { "," name } ] ";"
    equation  := expr [ "=" expr ] ";"
    expr      := term { ("+" | "-") term }
    term      := unary { ("*" | "/") unary }
    unary     := ("+" | "-") unary | power
    power     := atom [ "^" INT ]
    atom      := NUMBER | name | "(" expr ")" | shift
    shift     := ("s" | "σ") [ "^" INT ] "(" expr ")"

Division is only allowed by expressions free of unknowns.  ``s`` is the
shift operator only when followed by ``(`` or ``^k(``; otherwise it is an
ordinary name.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from ..arith import make_field
from ..diffring import DiffPoly, DiffSystem

HEADERS = ("params", "vars", "keep", "eliminate")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, NAME, OP, END
    text: str
    line: int
    col: int


_TOKEN = re.compile(r"\s+|#[^\n]*|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*|σ)|(?P<op>[-+*/^()=;:,])")


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        col = pos - line_start + 1
        if m.group("num"):
            out.append(Token("NUM", m.group(), line, col))
        elif m.group("name"):
            out.append(Token("NAME", m.group(), line, col))
        elif m.group("op"):
            out.append(Token("OP", m.group(), line, col))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    out.append(Token("END", "", line, pos - line_start + 1))
    return out


class _ExprParser:
    def __init__(self, tokens: list[Token], field, params: set[str], unknowns: set[str]):
        self.toks = tokens
        self.i = 0
        self.field = field
        self.params = params
        self.unknowns = unknowns

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        j = min(self.i + k, len(self.toks) - 1)
        return self.toks[j]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.tok
        if t.text != text or t.kind not in ("OP",):
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.line, t.col)
        return self.advance()

    def error(self, msg: str, t: Optional[Token] = None):
        t = t or self.tok
        raise ParseError(msg, t.line, t.col)

    # -- grammar -------------------------------------------------------
    def expr(self) -> DiffPoly:
        left = self.term()
        while self.tok.kind == "OP" and self.tok.text in "+-":
            op = self.advance().text
            right = self.term()
            left = left + right if op == "+" else left - right
        return left

    def term(self) -> DiffPoly:
        left = self.unary()
        while self.tok.kind == "OP" and self.tok.text in "*/":
            op_tok = self.advance()
            right = self.unary()
            if op_tok.text == "*":
                left = left * right
            else:
                if right.variables():
                    self.error("division by an expression containing unknowns", op_tok)
                c = right.terms.get((), 0)
                if not c:
                    self.error("division by zero", op_tok)
                left = left.scale(1 / c)
        return left

    def unary(self) -> DiffPoly:
        if self.tok.kind == "OP" and self.tok.text in "+-":
            op = self.advance().text
            val = self.unary()
            return -val if op == "-" else val
        return self.power()

    def _int(self) -> int:
        t = self.tok
        if t.kind != "NUM":
            self.error("expected a non-negative integer exponent")
        self.advance()
        return int(t.text)

    def power(self) -> DiffPoly:
        base = self.atom()
        if self.tok.kind == "OP" and self.tok.text == "^":
            self.advance()
            base = base ** self._int()
        return base

    def _is_shift(self) -> bool:
        t = self.tok
        if t.kind != "NAME" or t.text not in ("s", "σ"):
            return False
        nxt = self.peek()
        if nxt.text == "(":
            return True
        return nxt.text == "^" and self.peek(2).kind == "NUM" and self.peek(3).text == "("

    def atom(self) -> DiffPoly:
        t = self.tok
        if t.kind == "NUM":
            self.advance()
            return DiffPoly.constant(self.field, int(t.text))
        if self._is_shift():
            self.advance()
            k = 1
            if self.tok.text == "^":
                self.advance()
                k = self._int()
            open_tok = self.expect("(")
            start = self.i
            inner = self.expr()
            self.expect(")")
            span = self.toks[start:self.i - 1]
            if not inner.variables() and any(x.kind == "NAME" and x.text in self.params for x in span):
                self.error("shift applied to a parameter", open_tok)
            return inner.sigma(k)
        if t.kind == "NAME":
            self.advance()
            if t.text in self.unknowns:
                return DiffPoly.var(self.field, t.text)
            if t.text in self.params:
                return DiffPoly.constant(self.field, self.field.gen(t.text))
            self.error(f"undeclared symbol {t.text!r}", t)
        if t.kind == "OP" and t.text == "(":
            self.advance()
            val = self.expr()
            self.expect(")")
            return val
        self.error(f"unexpected {t.text or 'end of input'!r}", t)


def _split_statements(tokens: list[Token]) -> list[list[Token]]:
    """Statements with their ``;`` turned into a closing END token."""
    stmts, cur = [], []
    for t in tokens:
        if t.kind == "END":
            if cur:
                raise ParseError("missing ';' at end of statement", cur[-1].line, cur[-1].col)
            break
        if t.kind == "OP" and t.text == ";":
            if cur:
                stmts.append(cur + [Token("END", "", t.line, t.col)])
            cur = []
        else:
            cur.append(t)
    return stmts


def _parse_names(stmt: list[Token]) -> list[str]:
    names = []
    body = stmt[2:-1]
    for k, t in enumerate(body):
        if k % 2 == 0:
            if t.kind != "NAME":
                raise ParseError(f"expected a name, found {t.text!r}", t.line, t.col)
            names.append(t.text)
        elif t.text != ",":
            raise ParseError(f"expected ',', found {t.text!r}", t.line, t.col)
    if body and len(body) % 2 == 0:
        t = body[-1]
        raise ParseError("trailing ','", t.line, t.col)
    return names


def parse(text: str) -> DiffSystem:
    """Parse a ``.dsys`` document into a :class:`DiffSystem`."""
    stmts = _split_statements(tokenize(text))
    decl: dict[str, list[str]] = {h: [] for h in HEADERS}
    equations_src = []
    for stmt in stmts:
        head = stmt[0]
        if head.kind == "NAME" and head.text in HEADERS and len(stmt) > 2 and stmt[1].text == ":":
            if equations_src:
                raise ParseError("declarations must precede equations", head.line, head.col)
            decl[head.text].extend(_parse_names(stmt))
        else:
            equations_src.append(stmt)
    params = decl["params"]
    keep = decl["keep"]
    eliminate = decl["eliminate"]
    vars_ = decl["vars"]
    for group in (params, keep, eliminate, vars_):
        if len(set(group)) != len(group):
            raise ParseError(f"duplicate declaration in {group}")
    if set(params) & (set(keep) | set(eliminate) | set(vars_)):
        raise ParseError(f"names declared as both parameters and unknowns: "
                         f"{sorted(set(params) & (set(keep) | set(eliminate) | set(vars_)))}")
    if set(keep) & set(eliminate):
        raise ParseError(f"names declared both kept and eliminated: {sorted(set(keep) & set(eliminate))}")
    unknown_keep = [v for v in keep if vars_ and v not in vars_]
    if unknown_keep:
        raise ParseError(f"kept variables {unknown_keep} are not listed in vars")
    elim = list(eliminate) + [v for v in vars_ if v not in keep and v not in eliminate]
    field = make_field(params)
    unknowns = set(keep) | set(elim)
    equations = []
    for stmt in equations_src:
        p = _ExprParser(stmt, field, set(params), unknowns)
        lhs = p.expr()
        if p.tok.kind == "OP" and p.tok.text == "=":
            p.advance()
            rhs = p.expr()
            lhs = lhs - rhs
        if p.tok.kind != "END":
            p.error(f"unexpected {p.tok.text!r}")
        equations.append(lhs)
    return DiffSystem(equations, tuple(keep), tuple(elim), tuple(params), field)


def parse_expr(text: str, system: DiffSystem) -> DiffPoly:
    """Parse one expression against a system's declarations."""
    toks = tokenize(text)
    p = _ExprParser(toks, system.field, set(system.params), set(system.unknowns))
    val = p.expr()
    if p.tok.kind != "END":
        p.error(f"unexpected {p.tok.text!r}")
    return val


def render(system: DiffSystem) -> str:
    """Canonical ``.dsys`` text; parses back to an equal system."""
    return str(system)
