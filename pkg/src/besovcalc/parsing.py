"""Parser for the function-spec grammar.

    expr := "poly[" clist "]" | "rho[" c "]" | "mon[" int "]"
          | "add(" expr "," expr ")" | "mul(" expr "," expr ")"
          | "scale[" c "](" expr ")" | "dilate[" real "](" expr ")"
    c    := real | real ("+"|"-") real "i"

Whitespace between tokens is ignored.  Errors carry the 1-based column of
the offending character and the expected token.
"""

from __future__ import annotations

import re

from .errors import FunctionParseError
from .expressions import Add, Dilate, FunctionExpr, Mon, Mul, Poly, Rho, Scale

_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_INT = re.compile(r"\d+")
_NAME = re.compile(r"[a-z_]+")

_KEYWORDS = ("poly", "rho", "mon", "add", "mul", "scale", "dilate")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0  # 0-based index into text

    def fail(self, expected: str):
        raise FunctionParseError(self.pos + 1, expected)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, token: str):
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            self.fail(f'"{token}"')
        self.pos += len(token)

    def peek(self, token: str) -> bool:
        self.skip_ws()
        return self.text.startswith(token, self.pos)

    def real(self) -> float:
        self.skip_ws()
        m = _NUMBER.match(self.text, self.pos)
        if m is None:
            self.fail("a real number")
        self.pos = m.end()
        return float(m.group())

    def integer(self) -> int:
        self.skip_ws()
        m = _INT.match(self.text, self.pos)
        if m is None:
            self.fail("a nonnegative integer")
        self.pos = m.end()
        return int(m.group())

    def complex_number(self) -> complex:
        re_part = self.real()
        self.skip_ws()
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            sign = 1.0 if self.text[self.pos] == "+" else -1.0
            self.pos += 1
            im_part = self.real()
            self.expect("i")
            return complex(re_part, sign * im_part)
        return complex(re_part, 0.0)

    def expr(self) -> FunctionExpr:
        self.skip_ws()
        m = _NAME.match(self.text, self.pos)
        name = m.group() if m else None
        if name not in _KEYWORDS:
            self.fail("one of " + ", ".join(f'"{k}"' for k in _KEYWORDS))
        self.pos = m.end()

        if name == "poly":
            self.expect("[")
            coeffs = [self.complex_number()]
            while self.peek(","):
                self.expect(",")
                coeffs.append(self.complex_number())
            self.expect("]")
            return Poly(tuple(coeffs))
        if name == "rho":
            self.expect("[")
            w = self.complex_number()
            self.expect("]")
            return Rho(w)
        if name == "mon":
            self.expect("[")
            k = self.integer()
            self.expect("]")
            return Mon(k)
        if name in ("add", "mul"):
            self.expect("(")
            lhs = self.expr()
            self.expect(",")
            rhs = self.expr()
            self.expect(")")
            return Add(lhs, rhs) if name == "add" else Mul(lhs, rhs)
        if name == "scale":
            self.expect("[")
            c = self.complex_number()
            self.expect("]")
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Scale(c, inner)
        # dilate
        self.expect("[")
        r = self.real()
        self.expect("]")
        self.expect("(")
        inner = self.expr()
        self.expect(")")
        return Dilate(r, inner)


def parse_function(text: str) -> FunctionExpr:
    """Parse a function-spec string into an expression tree."""
    p = _Parser(text)
    node = p.expr()
    p.skip_ws()
    if p.pos != len(p.text):
        p.fail("end of input")
    return node
