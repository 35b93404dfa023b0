"""A small recursive-descent parser for integer polynomial expressions.

Grammar (whitespace is ignored between tokens)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INTEGER)?
    atom   := INTEGER | VARIABLE | "(" expr ")"

The result is a sparse map from exponent tuples to integer coefficients.
Error offsets count bytes of the UTF-8 encoded input.
"""

from __future__ import annotations

from .errors import ParseError

__all__ = ["parse_sparse"]

Sparse = dict[tuple[int, ...], int]


def _add(a: Sparse, b: Sparse, sign: int = 1) -> Sparse:
    out = dict(a)
    for mono, c in b.items():
        v = out.get(mono, 0) + sign * c
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)
    return out


def _mul(a: Sparse, b: Sparse) -> Sparse:
    out: Sparse = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            mono = tuple(x + y for x, y in zip(ma, mb))
            v = out.get(mono, 0) + ca * cb
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
    return out


class _Parser:
    MAX_EXPONENT = 10_000

    def __init__(self, text: str, variables: tuple[str, ...]):
        self.text = text
        self.buf = text.encode("utf-8")
        self.pos = 0
        self.variables = variables
        self.zero_mono = (0,) * len(variables)

    def error(self, message: str, at: int | None = None):
        raise ParseError(message, self.pos if at is None else at, self.text)

    def skip(self):
        while self.pos < len(self.buf) and self.buf[self.pos] in b" \t\r\n":
            self.pos += 1

    def peek(self) -> int | None:
        self.skip()
        return self.buf[self.pos] if self.pos < len(self.buf) else None

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.buf) and 48 <= self.buf[self.pos] <= 57:
            self.pos += 1
        if start == self.pos:
            self.error("expected integer")
        return int(self.buf[start:self.pos])

    def parse(self) -> Sparse:
        if self.peek() is None:
            self.error("empty expression")
        out = self.expr()
        if self.peek() is not None:
            self.error(f"unexpected character {chr(self.buf[self.pos])!r}")
        return out

    def expr(self) -> Sparse:
        acc = self.term()
        while (ch := self.peek()) in (ord("+"), ord("-")):
            self.pos += 1
            acc = _add(acc, self.term(), 1 if ch == ord("+") else -1)
        return acc

    def term(self) -> Sparse:
        acc = self.unary()
        while self.peek() == ord("*"):
            self.pos += 1
            acc = _mul(acc, self.unary())
        return acc

    def unary(self) -> Sparse:
        ch = self.peek()
        if ch == ord("-"):
            self.pos += 1
            return {m: -c for m, c in self.unary().items()}
        if ch == ord("+"):
            self.pos += 1
            return self.unary()
        return self.power()

    def power(self) -> Sparse:
        base = self.atom()
        if self.peek() == ord("^"):
            self.pos += 1
            at = self.pos
            e = self.integer()
            if e > self.MAX_EXPONENT:
                self.error("exponent too large", at)
            out: Sparse = {self.zero_mono: 1}
            for _ in range(e):
                out = _mul(out, base)
            return out
        return base

    def atom(self) -> Sparse:
        ch = self.peek()
        if ch is None:
            self.error("unexpected end of input")
        if 48 <= ch <= 57:
            v = self.integer()
            return {self.zero_mono: v} if v else {}
        if ch == ord("("):
            self.pos += 1
            inner = self.expr()
            if self.peek() != ord(")"):
                self.error("expected ')'")
            self.pos += 1
            return inner
        for i, name in enumerate(self.variables):
            token = name.encode()
            if self.buf.startswith(token, self.pos):
                self.pos += len(token)
                mono = [0] * len(self.variables)
                mono[i] = 1
                return {tuple(mono): 1}
        self.error(f"unexpected character {chr(ch)!r}")


def parse_sparse(text: str, variables: tuple[str, ...] = ("x",)) -> Sparse:
    """Expand ``text`` into ``{exponents: coefficient}`` (zero terms dropped)."""
    return _Parser(text, variables).parse()
