"""A = F_q[T] and F = F_q(T)."""

from __future__ import annotations

import itertools

from drinfeld_lab.algebra import polyops
from drinfeld_lab.errors import MixedContexts, ZeroPolynomial

VAR = "T"


def _render_coeff_poly(ctx, c, var):
    """Canonical string, descending degree, e.g. ``2*T^2+T+1``."""
    terms = []
    for i in range(len(c) - 1, -1, -1):
        a = c[i]
        if a == 0:
            continue
        s = ctx.render(a)
        if i > 0 and "+" in s:
            s = f"({s})"
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(s)
        elif s == "1":
            terms.append(mono)
        else:
            terms.append(f"{s}*{mono}")
    return "+".join(terms) if terms else "0"


class Poly:
    """An element of A = F_q[T]; immutable."""

    __slots__ = ("ctx", "c")

    def __init__(self, ctx, coeffs=()):
        self.ctx = ctx
        self.c = polyops.trim(ctx, coeffs)

    @classmethod
    def T(cls, ctx):
        return cls(ctx, (0, 1))

    @classmethod
    def constant(cls, ctx, a):
        return cls(ctx, (a,))

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise MixedContexts("polynomials over different fields")
            return other
        if isinstance(other, int):
            return Poly(self.ctx, (self.ctx.from_int(other),))
        return NotImplemented

    # ring operations ------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Poly(self.ctx, polyops.add(self.ctx, self.c, other.c))

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ctx, polyops.neg(self.ctx, self.c))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Poly(self.ctx, polyops.sub(self.ctx, self.c, other.c))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Poly(self.ctx, polyops.mul(self.ctx, self.c, other.c))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly(self.ctx, (1,)), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.c:
            raise ZeroPolynomial("division by the zero polynomial")
        q, r = polyops.divmod_(self.ctx, self.c, other.c)
        return Poly(self.ctx, q), Poly(self.ctx, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def scale(self, a):
        return Poly(self.ctx, polyops.scale(self.ctx, self.c, a))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self._coerce(other)
        return isinstance(other, Poly) and self.ctx == other.ctx and self.c == other.c

    def __hash__(self):
        return hash((self.ctx, self.c))

    def __bool__(self):
        return bool(self.c)

    # queries ---------------------------------------------------------------
    @property
    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def lc(self):
        return self.c[-1] if self.c else 0

    def coeff(self, i):
        return self.c[i] if 0 <= i < len(self.c) else 0

    def monic(self):
        return Poly(self.ctx, polyops.monic(self.ctx, self.c))

    def is_monic(self):
        return bool(self.c) and self.c[-1] == 1

    def gcd(self, other):
        return Poly(self.ctx, polyops.gcd(self.ctx, self.c, self._coerce(other).c))

    def powmod(self, n, m):
        return Poly(self.ctx, polyops.powmod(self.ctx, self.c, n, m.c))

    def frob(self, i=1):
        """self^(q^i) = self(T^(q^i)) since the coefficients lie in F_q."""
        return Poly(self.ctx, polyops.inflate(self.ctx, self.c, self.ctx.q ** i))

    def __call__(self, x, field=None):
        F = field if field is not None else self.ctx
        return polyops.evaluate(F, [F.embed_fq(a) for a in self.c], x)

    def sort_key(self):
        """Degree first, then lexicographic coefficients from the top."""
        return (len(self.c), tuple(reversed(self.c)))

    def __str__(self):
        return _render_coeff_poly(self.ctx, self.c, VAR)

    def __repr__(self):
        return f"Poly({self})"

    def __reduce__(self):
        return (Poly, (self.ctx, self.c))


def all_polys(ctx, max_deg):
    """Every polynomial of degree <= max_deg (including 0)."""
    for coeffs in itertools.product(range(ctx.q), repeat=max_deg + 1):
        yield Poly(ctx, coeffs)


def random_poly(ctx, max_deg, rng, nonzero=False):
    while True:
        f = Poly(ctx, [rng.randrange(ctx.q) for _ in range(max_deg + 1)])
        if f or not nonzero:
            return f


class RationalFunction:
    """An element of F = F_q(T): reduced fraction with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if isinstance(num, int):
            raise TypeError("use RationalFunction.from_poly with a context")
        if den is None:
            den = Poly(num.ctx, (1,))
        if num.ctx != den.ctx:
            raise MixedContexts("numerator and denominator over different fields")
        if not den.c:
            raise ZeroPolynomial("zero denominator")
        if not _reduced:
            ctx = num.ctx
            g = polyops.gcd(ctx, num.c, den.c)
            if g != (1,):
                num = Poly(ctx, polyops.divmod_(ctx, num.c, g)[0])
                den = Poly(ctx, polyops.divmod_(ctx, den.c, g)[0])
            lc = den.c[-1]
            if lc != 1:
                inv = ctx.inv(lc)
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @property
    def ctx(self):
        return self.num.ctx

    @classmethod
    def from_poly(cls, f):
        return cls(f, Poly(f.ctx, (1,)), _reduced=True)

    @classmethod
    def constant(cls, ctx, a):
        return cls(Poly(ctx, (a,)), Poly(ctx, (1,)), _reduced=True)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.ctx != self.ctx:
                raise MixedContexts("rational functions over different fields")
            return other
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise MixedContexts("rational functions over different fields")
            return RationalFunction.from_poly(other)
        if isinstance(other, int):
            return RationalFunction.from_poly(Poly(self.ctx, (self.ctx.from_int(other),)))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.num.c or not o.num.c:
            return RationalFunction.constant(self.ctx, 0)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num.c:
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num ** n, self.den ** n, _reduced=True)

    def frob(self, i=1):
        return RationalFunction(self.num.frob(i), self.den.frob(i), _reduced=True)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, RationalFunction) else other
        if o is NotImplemented:
            return False
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num.c)

    def is_zero(self):
        return not self.num.c

    def is_polynomial(self):
        return self.den.c == (1,)

    def valuation(self, P):
        """v_P for a monic irreducible P (``inf`` for zero)."""
        if not self.num.c:
            return float("inf")
        return _val(self.num, P) - _val(self.den, P)

    def degree(self):
        """deg num - deg den, i.e. minus the valuation at infinity."""
        return self.num.degree - self.den.degree

    def __str__(self):
        if self.den.c == (1,):
            return str(self.num)
        n = str(self.num)
        if "+" in n:
            n = f"({n})"
        return f"{n}/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"

    def __reduce__(self):
        return (RationalFunction, (self.num, self.den, True))


def _val(f, P):
    n = 0
    c = f.c
    while True:
        q, r = polyops.divmod_(f.ctx, c, P.c)
        if r:
            return n
        c, n = q, n + 1


class FunctionField:
    """F = F_q(T) presented through the common field protocol."""

    is_prime_field = False
    order = None

    def __init__(self, ctx):
        self.fq = ctx
        self.ctx = ctx
        self.p = ctx.p
        self.char = ctx.p
        self.q = ctx.q
        self.zero = RationalFunction.constant(ctx, 0)
        self.one = RationalFunction.constant(ctx, 1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def div(self, a, b):
        return a / b

    def frob(self, a, i=1):
        return a.frob(i)

    def is_zero(self, a):
        return not a.num.c

    def from_int(self, n):
        return RationalFunction.constant(self.ctx, self.ctx.from_int(n))

    def embed_fq(self, c):
        return RationalFunction.constant(self.ctx, c)

    def coerce(self, x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Poly):
            return RationalFunction.from_poly(x)
        if isinstance(x, int):
            return self.from_int(x)
        raise TypeError(f"cannot coerce {x!r} into F_q(T)")

    def render(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, FunctionField) and other.ctx == self.ctx

    def __hash__(self):
        return hash(("F", self.ctx))

    def __repr__(self):
        return f"FunctionField(F_{self.ctx.q}(T))"
