"""The twisted polynomial ring R{tau} with tau * a = a^q * tau.

R is any field object from ``drinfeld_lab.algebra`` (F_q(T), a residue field
A/P, or a tower above one); only its ``frob`` is used for the twist.
"""

from __future__ import annotations

from drinfeld_lab.algebra import polyops
from drinfeld_lab.algebra.parse import parse_tau_terms
from drinfeld_lab.algebra.poly import FunctionField
from drinfeld_lab.errors import MixedContexts

TAU = "t"


class SkewPoly:
    """sum_i c_i tau^i over a coefficient field; immutable."""

    __slots__ = ("field", "c")

    def __init__(self, field, coeffs=()):
        self.field = field
        self.c = polyops.trim(field, coeffs)

    @classmethod
    def tau(cls, field, k=1):
        return cls(field, (field.zero,) * k + (field.one,))

    @classmethod
    def constant(cls, field, a):
        return cls(field, (a,))

    def _check(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        if other.field != self.field:
            raise MixedContexts("skew polynomials over different coefficient fields")
        return other

    @property
    def degree(self):
        return len(self.c) - 1

    def coeff(self, i):
        return self.c[i] if 0 <= i < len(self.c) else self.field.zero

    def leading(self):
        return self.c[-1] if self.c else self.field.zero

    def is_zero(self):
        return not self.c

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return SkewPoly(self.field, polyops.add(self.field, self.c, o.c))

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return SkewPoly(self.field, polyops.sub(self.field, self.c, o.c))

    def __neg__(self):
        return SkewPoly(self.field, polyops.neg(self.field, self.c))

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return skew_mul(self, o)

    def scale_left(self, a):
        """a * self for a coefficient a."""
        F = self.field
        return SkewPoly(F, [F.mul(a, x) for x in self.c])

    def scale_right(self, a):
        """self * a, i.e. sum c_i a^(q^i) tau^i."""
        return skew_mul(self, SkewPoly.constant(self.field, a))

    def shift(self, k):
        """self * tau^k (no twist needed on this side)."""
        return SkewPoly(self.field, polyops.shift(self.field, self.c, k))

    def __pow__(self, n):
        out = SkewPoly.constant(self.field, self.field.one)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, SkewPoly) and self.field == other.field and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __call__(self, x, field=None, embed=None):
        return skew_eval(self, x, field, embed)

    def map_coefficients(self, field, fn):
        return SkewPoly(field, [fn(x) for x in self.c])

    def __str__(self):
        return render_skew(self)

    def __repr__(self):
        return f"SkewPoly({self})"

    def __reduce__(self):
        return (SkewPoly, (self.field, self.c))


def skew_mul(f, g):
    """(a tau^i)(b tau^j) = a b^(q^i) tau^(i+j)."""
    if f.field != g.field:
        raise MixedContexts("skew polynomials over different coefficient fields")
    F = f.field
    if not f.c or not g.c:
        return SkewPoly(F, ())
    z = F.zero
    out = [z] * (len(f.c) + len(g.c) - 1)
    twisted = list(g.c)
    for i, a in enumerate(f.c):
        if i:
            twisted = [F.frob(b) if b != z else z for b in twisted]
        if a == z:
            continue
        for j, b in enumerate(twisted):
            if b != z:
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return SkewPoly(F, out)


def skew_eval(f, x, field=None, embed=None):
    """sum_i c_i x^(q^i), with x in ``field`` (default: the coefficient field).

    When ``field`` differs from the coefficient field, coefficients are
    carried over by ``embed`` or, failing that, ``field.embed`` (towers).
    """
    F = field if field is not None else f.field
    if embed is None:
        if F == f.field:
            embed = None
        elif getattr(F, "base", None) == f.field:
            embed = F.embed
        else:
            raise MixedContexts("evaluation point lives in an unrelated field")
    acc = F.zero
    xi = x
    for i, c in enumerate(f.c):
        if i:
            xi = F.frob(xi)
        if c != f.field.zero:
            cc = embed(c) if embed else c
            acc = F.add(acc, F.mul(cc, xi))
    return acc


def render_skew(f):
    """Text form with tau spelled ``t``: ``T^2 + (T+1)*t + 2*t^2``."""
    F = f.field
    terms = []
    for i, c in enumerate(f.c):
        if c == F.zero:
            continue
        s = F.render(c)
        mono = "" if i == 0 else (TAU if i == 1 else f"{TAU}^{i}")
        if not mono:
            terms.append(s)
            continue
        if s == "1":
            terms.append(mono)
            continue
        if "+" in s or "/" in s:
            s = f"({s})"
        terms.append(f"{s}*{mono}")
    return " + ".join(terms) if terms else "0"


def parse_skew(ctx, text):
    """Parse a normal-form expression into a SkewPoly over F_q(T)."""
    F = FunctionField(ctx)
    terms = parse_tau_terms(ctx, text)
    n = max(terms) + 1 if terms else 0
    return SkewPoly(F, [terms.get(i, F.zero) for i in range(n)])
