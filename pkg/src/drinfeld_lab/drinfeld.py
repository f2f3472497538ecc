"""Drinfeld F_q[T]-modules of generic characteristic over F = F_q(T)."""

from __future__ import annotations

from drinfeld_lab.algebra import polyops
from drinfeld_lab.algebra.fields import FieldContext
from drinfeld_lab.algebra.parse import parse_poly, parse_rational
from drinfeld_lab.algebra.places import Place, residue_field
from drinfeld_lab.algebra.poly import FunctionField, Poly, RationalFunction
from drinfeld_lab.algebra.sparse import SparsePolyRing
from drinfeld_lab.errors import (
    BadInput,
    BadReduction,
    EmptyRank,
    WrongRank,
    ZeroGamma,
    ZeroLeadingCoefficient,
)
from drinfeld_lab.skew import SkewPoly


def _horner(phi_T, a, field):
    """phi_a = sum a_k phi_T^k for a in A, evaluated by Horner's rule."""
    if not a.c:
        return SkewPoly(field, ())
    acc = SkewPoly.constant(field, field.embed_fq(a.c[-1]))
    for k in range(len(a.c) - 2, -1, -1):
        acc = acc * phi_T
        if a.c[k]:
            acc = acc + SkewPoly.constant(field, field.embed_fq(a.c[k]))
    return acc


class DrinfeldModule:
    """phi_T = T + g_1 tau + ... + g_r tau^r with g_r != 0."""

    def __init__(self, ctx, coeffs):
        if not coeffs:
            raise EmptyRank("a Drinfeld module needs rank >= 1")
        F = FunctionField(ctx)
        coeffs = tuple(F.coerce(_parse_coeff(ctx, g) if isinstance(g, (str, dict)) else g) for g in coeffs)
        if not coeffs[-1]:
            raise ZeroLeadingCoefficient("leading coefficient g_r must be nonzero")
        self.ctx = ctx
        self.field = F
        self.coeffs = coeffs
        self.rank = len(coeffs)
        T = RationalFunction.from_poly(Poly.T(ctx))
        self.phi_T = SkewPoly(F, (T,) + coeffs)

    def phi_image(self, a):
        """The skew polynomial phi_a for a in A."""
        return _horner(self.phi_T, a, self.field)

    def twist(self, gamma):
        return twist2(self, gamma)

    def frobenius_conjugate(self):
        """The module with every g_i replaced by g_i^q."""
        return DrinfeldModule(self.ctx, [g.frob() for g in self.coeffs])

    def bad_places_hint(self):
        """Polynomials whose prime factors contain every bad place."""
        return [g.den for g in self.coeffs] + [self.coeffs[-1].num]

    def to_definition(self):
        d = {"p": self.ctx.p, "e": self.ctx.e, "rank": self.rank, "coeffs": []}
        if self.ctx.e > 1:
            d["modulus"] = list(self.ctx.modulus)
        for g in self.coeffs:
            if g.is_polynomial():
                d["coeffs"].append(str(g.num))
            else:
                d["coeffs"].append({"num": str(g.num), "den": str(g.den)})
        return d

    @classmethod
    def from_definition(cls, d, ctx=None):
        if ctx is None:
            ctx = FieldContext(int(d["p"]), int(d.get("e", 1)), d.get("modulus"))
        raw = d.get("coeffs")
        if not isinstance(raw, list):
            raise BadInput("'coeffs' must be a list")
        rank = d.get("rank", len(raw))
        if rank != len(raw):
            raise BadInput(f"rank {rank} but {len(raw)} coefficients")
        return make_drinfeld(ctx, rank, [_parse_coeff(ctx, c) for c in raw])

    def __eq__(self, other):
        return isinstance(other, DrinfeldModule) and self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        return f"phi_T = {self.phi_T}"

    def __repr__(self):
        return f"DrinfeldModule({self.phi_T})"


def _parse_coeff(ctx, c):
    if isinstance(c, dict):
        try:
            num, den = parse_poly(ctx, c["num"]), parse_poly(ctx, c.get("den", "1"))
        except KeyError as exc:
            raise BadInput("rational coefficient needs 'num' (and optionally 'den')") from exc
        if not den:
            raise BadInput("zero denominator")
        return RationalFunction(num, den)
    if isinstance(c, int):
        return RationalFunction.constant(ctx, ctx.from_int(c))
    return parse_rational(ctx, c)


def make_drinfeld(ctx, r, coeffs):
    if r < 1 or not coeffs:
        raise EmptyRank("rank must be >= 1")
    if len(coeffs) != r:
        raise BadInput(f"expected {r} coefficients, got {len(coeffs)}")
    return DrinfeldModule(ctx, coeffs)


def phi_image(phi, a):
    return phi.phi_image(a)


def sparse_phi_image(phi, a):
    """phi_a with coefficients in SparsePolyRing, for modules over A.

    Needs every g_i to be a polynomial.  This is the practical route for
    deg a beyond about 5 at rank 2, where the coefficients reach T-degree
    q^(2 deg a) while keeping only a few thousand terms.
    """
    if not all(g.is_polynomial() for g in phi.coeffs):
        raise BadInput("sparse evaluation needs polynomial coefficients g_i")
    R = SparsePolyRing(phi.ctx)
    phi_T = phi.phi_T.map_coefficients(R, lambda g: R.from_poly(g.num))
    return _horner(phi_T, a, R)


def twist2(phi, gamma):
    """phi^gamma with coefficients (g_1 gamma, g_2 gamma^(q+1)).

    Over F(c) with c^(q-1) = gamma this is c^-1 phi_T c.
    """
    if phi.rank != 2:
        raise WrongRank("twist2 needs a rank-2 module")
    if isinstance(gamma, Poly):
        gamma = RationalFunction.from_poly(gamma)
    if not gamma:
        raise ZeroGamma("gamma must be nonzero")
    g1, g2 = phi.coeffs
    return DrinfeldModule(phi.ctx, [g1 * gamma, g2 * gamma ** (phi.ctx.q + 1)])


class ReducedModule:
    """phi mod P over the residue field A/P (good reduction only)."""

    def __init__(self, phi, place, coeffs):
        self.module = phi
        self.place = place
        self.field = residue_field(place.generator)
        self.coeffs = tuple(coeffs)
        self.rank = len(coeffs)
        t = self.field.reduce(Poly.T(phi.ctx).c)
        self.phi_T = SkewPoly(self.field, (t,) + self.coeffs)
        self._powers = [SkewPoly.constant(self.field, self.field.one)]

    @property
    def ctx(self):
        return self.module.ctx

    @property
    def degree(self):
        return self.place.degree

    def phi_T_power(self, k):
        """phi_{T^k}, cached."""
        while len(self._powers) <= k:
            self._powers.append(self._powers[-1] * self.phi_T)
        return self._powers[k]

    def phi_image(self, a):
        F = self.field
        out = SkewPoly(F, ())
        for k, c in enumerate(a.c):
            if c:
                out = out + self.phi_T_power(k).scale_left(F.embed_fq(c))
        return out

    def __repr__(self):
        return f"ReducedModule({self.phi_T} mod {self.place})"


def reduce_at(phi, place):
    """Reduce phi at a finite place; BadReduction if P lies in the bad set."""
    if not isinstance(place, Place):
        place = Place(place)
    P = place.generator
    E = residue_field(P)
    out = []
    for i, g in enumerate(phi.coeffs, start=1):
        den = E.reduce(g.den.c)
        if not den:
            raise BadReduction(f"g_{i} has a pole at {P}")
        out.append(E.div(E.reduce(g.num.c), den))
    if not out[-1]:
        raise BadReduction(f"leading coefficient vanishes at {P}")
    return ReducedModule(phi, place, out)


def has_good_reduction(phi, place):
    P = place.generator.c
    ctx = phi.ctx
    for g in phi.coeffs:
        if not polyops.mod(ctx, g.den.c, P):
            return False
    return bool(polyops.mod(ctx, phi.coeffs[-1].num.c, P))
