"""Parser for the text formats used in configs and on the command line.

Grammar (``*`` and ``^`` explicit)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ('^' INT)?
    atom   := INT | 'T' | 'a' | 't' | '(' expr ')'

``T`` is the variable of A, ``a`` the generator of F_q (only when e > 1) and
``t`` stands for tau.  Skew inputs must be in normal form ``c*t^k`` with the
coefficient on the left; anything that would need the twist rule to
normalize is rejected rather than silently commuted.
"""

from __future__ import annotations

import re

from drinfeld_lab.algebra.poly import Poly, RationalFunction
from drinfeld_lab.errors import BadInput

_TOKEN = re.compile(r"\s*(?:(\d+)|([Tat])|(\S))")


def _tokenize(s):
    pos, out = 0, []
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        elif op in "+-*/^()":
            out.append(("op", op))
        else:
            raise BadInput(f"unexpected character {op!r} in {s!r}")
        pos = m.end()
    return out


class _Parser:
    # values are dicts {tau_degree: RationalFunction}
    def __init__(self, ctx, text, allow_tau):
        self.ctx = ctx
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.allow_tau = allow_tau

    def fail(self, msg):
        raise BadInput(f"{msg} in {self.text!r}")

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            self.fail("empty expression")
        v = self.expr()
        if self.i != len(self.toks):
            self.fail(f"trailing input at token {self.i}")
        return v

    def const(self, rf):
        return {0: rf} if rf else {}

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = self.add(v, w if op == "+" else self.neg(w))
        return v

    def term(self):
        v = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            w = self.factor()
            v = self.mul(v, w) if op == "*" else self.div(v, w)
        return v

    def factor(self):
        if self.peek() == ("op", "-"):
            self.take()
            return self.neg(self.factor())
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, n = self.take()
            if kind != "num":
                self.fail("exponent must be a non-negative integer")
            v = self.power(v, n)
        return v

    def atom(self):
        kind, val = self.take()
        ctx = self.ctx
        if kind == "num":
            return self.const(RationalFunction.constant(ctx, ctx.from_int(val)))
        if kind == "name":
            if val == "T":
                return self.const(RationalFunction.from_poly(Poly.T(ctx)))
            if val == "a":
                if ctx.e == 1:
                    self.fail("generator 'a' only exists for e > 1")
                return self.const(RationalFunction.constant(ctx, ctx.generator()))
            if not self.allow_tau:
                self.fail("tau not allowed here")
            return {1: RationalFunction.constant(ctx, 1)}
        if (kind, val) == ("op", "("):
            v = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return v
        self.fail(f"unexpected token {val!r}")

    @staticmethod
    def add(v, w):
        out = dict(v)
        for k, c in w.items():
            s = out[k] + c if k in out else c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    @staticmethod
    def neg(v):
        return {k: -c for k, c in v.items()}

    def mul(self, v, w):
        if v and max(v) > 0 and any(not (c.is_polynomial() and c.num.degree <= 0) for c in w.values()):
            self.fail("tau must stand to the right of non-constant coefficients")
        out = {}
        for i, a in v.items():
            for j, b in w.items():
                out = self.add(out, {i + j: a * b})
        return out

    def div(self, v, w):
        if set(w) != {0}:
            self.fail("division by a tau-expression or by zero")
        inv = w[0].inverse()
        return {k: c * inv for k, c in v.items()}

    def power(self, v, n):
        out = self.const(RationalFunction.constant(self.ctx, 1))
        for _ in range(n):
            out = self.mul(out, v)
        return out


def parse_rational(ctx, text):
    v = _Parser(ctx, str(text), allow_tau=False).parse()
    return v.get(0, RationalFunction.constant(ctx, 0))


def parse_poly(ctx, text):
    r = parse_rational(ctx, text)
    if not r.is_polynomial():
        raise BadInput(f"{text!r} is not a polynomial")
    return r.num


def parse_tau_terms(ctx, text):
    """{tau_degree: RationalFunction} for a normal-form skew expression."""
    return _Parser(ctx, str(text), allow_tau=True).parse()
