"""Shared helpers for the test suite: random elements and ring-law checks."""

import random
import time

from drinfeld_lab.algebra.fields import ExtensionField, FieldContext, first_irreducible
from drinfeld_lab.algebra.poly import FunctionField, Poly, RationalFunction, random_poly
from drinfeld_lab.skew import SkewPoly


# filled by the acceptance tests, printed by conftest at the end of the run
ACCEPTANCE_LINES = []


def rng(seed=0):
    return random.Random(seed)


def random_rational(ctx, r, max_deg=3):
    num = random_poly(ctx, max_deg, r)
    den = random_poly(ctx, max_deg, r, nonzero=True)
    return RationalFunction(num, den)


def random_skew(field, sample, r, max_deg=3):
    return SkewPoly(field, [sample(r) for _ in range(r.randint(0, max_deg) + 1)])


def field_law_failures(F, sample, cases, r):
    """Count violated field axioms over ``cases`` random triples."""
    bad = []
    for i in range(cases):
        a, b, c = sample(r), sample(r), sample(r)
        checks = {
            "add-assoc": F.add(F.add(a, b), c) == F.add(a, F.add(b, c)),
            "add-comm": F.add(a, b) == F.add(b, a),
            "mul-assoc": F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)),
            "mul-comm": F.mul(a, b) == F.mul(b, a),
            "distrib": F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)),
            "add-id": F.add(a, F.zero) == a,
            "mul-id": F.mul(a, F.one) == a,
            "neg": F.add(a, F.neg(a)) == F.zero,
            "sub": F.add(F.sub(a, b), b) == a,
            "frob-add": F.frob(F.add(a, b)) == F.add(F.frob(a), F.frob(b)),
            "frob-mul": F.frob(F.mul(a, b)) == F.mul(F.frob(a), F.frob(b)),
        }
        if not F.is_zero(a):
            checks["inverse"] = F.mul(a, F.inv(a)) == F.one
        bad.extend((i, name) for name, ok in checks.items() if not ok)
    return bad


def poly_ring_failures(ctx, cases, r, max_deg=5):
    bad = []
    for i in range(cases):
        a, b, c = (random_poly(ctx, max_deg, r) for _ in range(3))
        ok = (
            (a + b) + c == a + (b + c)
            and a + b == b + a
            and (a * b) * c == a * (b * c)
            and a * b == b * a
            and a * (b + c) == a * b + a * c
            and a - a == Poly(ctx)
        )
        if b:
            qt, rem = divmod(a, b)
            ok = ok and qt * b + rem == a and (not rem or rem.degree < b.degree)
        if not ok:
            bad.append(i)
    return bad


def skew_ring_failures(field, sample, cases, r, max_deg=3):
    bad = []
    one = SkewPoly.constant(field, field.one)
    for i in range(cases):
        f, g, h = (random_skew(field, sample, r, max_deg) for _ in range(3))
        ok = (
            (f * g) * h == f * (g * h)
            and f * (g + h) == f * g + f * h
            and (f + g) * h == f * h + g * h
            and f * one == f
            and one * f == f
            and f + g == g + f
        )
        if not ok:
            bad.append(i)
    return bad


def tau_rule_failures(field, sample, cases, r):
    """tau * alpha == alpha^q * tau, coefficientwise."""
    tau = SkewPoly.tau(field)
    bad = []
    for i in range(cases):
        a = sample(r)
        lhs = tau * SkewPoly.constant(field, a)
        rhs = SkewPoly.constant(field, field.frob(a)) * tau
        if lhs.c != rhs.c or lhs.coeff(1) != field.frob(a) or lhs.coeff(0) != field.zero:
            bad.append(i)
    return bad


def standard_fields():
    """(name, field, sampler) for F_3, F_9, F_4, F_{3^4} over F_3, F_{9^2} and F_3(T)."""
    f3 = FieldContext(3)
    f9 = FieldContext(3, 2)
    f4 = FieldContext(2, 2)
    ext = ExtensionField(f3, first_irreducible(f3, 4))
    ext9 = ExtensionField(f9, first_irreducible(f9, 2))
    F = FunctionField(f3)
    return [
        ("F_3", f3, lambda r: r.randrange(3)),
        ("F_9", f9, lambda r: r.randrange(9)),
        ("F_4", f4, lambda r: r.randrange(4)),
        ("F_81/F_3", ext, lambda r: ext.random_element(r)),
        ("F_81/F_9", ext9, lambda r: ext9.random_element(r)),
        ("F_3(T)", F, lambda r: random_rational(f3, r)),
    ]


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        return False
