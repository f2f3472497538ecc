"""Sparse polynomials in F_q[T] for skew polynomials of high tau-degree.

The coefficients of phi_a grow like T^(q^k) but stay sparse, so a dense
tuple wastes almost all of its slots.  Elements here are tuples of
(exponent, coefficient) pairs sorted by exponent, with nonzero
coefficients only; the zero polynomial is ().  The class implements the
ring part of the field protocol (no inverses), which is all that skew
multiplication and Horner evaluation use.
"""

from __future__ import annotations

from drinfeld_lab.algebra.poly import Poly


class SparsePolyRing:
    is_prime_field = False
    order = None

    def __init__(self, ctx):
        self.fq = ctx
        self.ctx = ctx
        self.p = ctx.p
        self.char = ctx.p
        self.q = ctx.q
        self.zero = ()
        self.one = ((0, ctx.one),)

    def _pack(self, d):
        return tuple(sorted((e, c) for e, c in d.items() if c != self.fq.zero))

    def add(self, a, b):
        if not a:
            return b
        if not b:
            return a
        F = self.fq
        d = dict(a)
        for e, c in b:
            d[e] = F.add(d[e], c) if e in d else c
        return self._pack(d)

    def neg(self, a):
        return tuple((e, self.fq.neg(c)) for e, c in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return ()
        d = {}
        if self.fq.is_prime_field:
            p = self.p
            for e1, c1 in a:
                for e2, c2 in b:
                    k = e1 + e2
                    d[k] = d.get(k, 0) + c1 * c2
            return tuple(sorted((e, c % p) for e, c in d.items() if c % p))
        F = self.fq
        for e1, c1 in a:
            for e2, c2 in b:
                k = e1 + e2
                d[k] = F.add(d.get(k, F.zero), F.mul(c1, c2))
        return self._pack(d)

    def frob(self, a, i=1):
        # coefficients lie in F_q and are fixed by the q-power map
        s = self.q ** i
        return tuple((e * s, c) for e, c in a)

    def is_zero(self, a):
        return not a

    def from_int(self, n):
        return self.embed_fq(self.fq.from_int(n))

    def embed_fq(self, c):
        return ((0, c),) if c != self.fq.zero else ()

    def from_poly(self, f):
        return tuple((e, c) for e, c in enumerate(f.c) if c != self.fq.zero)

    def to_poly(self, a):
        if not a:
            return Poly(self.fq)
        coeffs = [self.fq.zero] * (a[-1][0] + 1)
        for e, c in a:
            coeffs[e] = c
        return Poly(self.fq, coeffs)

    def terms(self, a):
        return len(a)

    def __eq__(self, other):
        return isinstance(other, SparsePolyRing) and other.fq == self.fq

    def __hash__(self):
        return hash(("sparse", self.fq))

    def __repr__(self):
        return f"SparsePolyRing({self.fq!r})"
