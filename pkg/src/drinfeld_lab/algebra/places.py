"""Finite places of F_q(T): monic irreducibles, residue fields, Kummer symbols."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from drinfeld_lab.algebra import polyops
from drinfeld_lab.algebra.fields import ExtensionField, monic_polys
from drinfeld_lab.algebra.poly import Poly, RationalFunction
from drinfeld_lab.errors import BadInput, DenominatorVanishes, NotCoprime, ZeroPolynomial


def irreducible_test(f):
    """True iff the polynomial f in F_q[T] is irreducible.

    Uses gcd(f, T^(q^i) - T) for i <= deg f / 2, so the answer is
    deterministic.  Units (nonzero constants) are not irreducible.
    """
    if not f.c:
        raise ZeroPolynomial("irreducibility of the zero polynomial")
    return polyops.is_irreducible(f.ctx, f.c)


@dataclass(frozen=True)
class Place:
    """A finite place, given by its monic irreducible generator P."""

    generator: Poly

    @property
    def ctx(self):
        return self.generator.ctx

    @property
    def degree(self):
        return self.generator.degree

    @property
    def norm(self):
        return self.ctx.q ** self.degree

    @property
    def residue_field(self):
        return residue_field(self.generator)

    def __str__(self):
        return str(self.generator)

    def sort_key(self):
        return self.generator.sort_key()


def make_place(P):
    if not P.is_monic() or not irreducible_test(P):
        raise BadInput(f"{P} is not monic irreducible")
    return Place(P)


@lru_cache(maxsize=None)
def monic_irreducibles(ctx, d):
    """Monic irreducibles of degree d, lexicographic with the constant term last."""
    if d < 1:
        raise BadInput("degree must be >= 1")
    out = []
    for f in monic_polys(ctx, d):
        if polyops.is_irreducible(ctx, f):
            out.append(Place(Poly(ctx, f)))
    return tuple(out)


def places_up_to(ctx, D):
    """All finite places of degree <= D, ordered by degree then lexicographically."""
    out = []
    for d in range(1, D + 1):
        out.extend(monic_irreducibles(ctx, d))
    return out


def necklace_count(q, d):
    """Number of monic irreducibles of degree d over F_q (Moebius formula)."""
    total = 0
    for k in range(1, d + 1):
        if d % k == 0:
            total += _moebius(k) * q ** (d // k)
    return total // d


def _moebius(n):
    result, m, f = 1, n, 2
    while f * f <= m:
        if m % f == 0:
            m //= f
            if m % f == 0:
                return 0
            result = -result
        f += 1
    if m > 1:
        result = -result
    return result


@lru_cache(maxsize=None)
def residue_field(P):
    """A/P as an ExtensionField over F_q whose elements are polynomials mod P."""
    return ExtensionField(P.ctx, P.c, tag=("residue", str(P)), check=False)


class ResidueMap:
    """The reduction A -> A/P and its partial extension to F."""

    def __init__(self, place):
        self.place = place
        self.field = residue_field(place.generator)

    def __call__(self, x):
        if isinstance(x, RationalFunction):
            return self.reduce_rational(x)
        return self.field.reduce(x.c)

    def reduce_rational(self, x):
        den = self.field.reduce(x.den.c)
        if not den:
            raise DenominatorVanishes(f"denominator {x.den} vanishes at {self.place}")
        return self.field.div(self.field.reduce(x.num.c), den)

    def lift(self, a):
        """Canonical representative of degree < deg P."""
        return Poly(self.place.ctx, a)


def residue_map(place):
    """Return (residue field, A -> A/P, partial F -> A/P)."""
    rm = ResidueMap(place)
    return rm.field, (lambda f: rm.field.reduce(f.c)), rm.reduce_rational


def power_residue_symbol(gamma, place):
    """gamma^((N(P)-1)/(q-1)) mod P, an element of F_q^*."""
    P = place.generator
    ctx = P.ctx
    g = polyops.mod(ctx, gamma.c, P.c)
    if not g:
        raise NotCoprime(f"{gamma} is not coprime to {P}")
    e = (place.norm - 1) // (ctx.q - 1)
    r = polyops.powmod(ctx, g, e, P.c)
    assert len(r) == 1, "power residue symbol left F_q"
    return r[0]
