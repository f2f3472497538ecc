"""Finite fields: F_q as ``FieldContext`` and towers above it as ``ExtensionField``.

Every field object here speaks the same small protocol (``zero``, ``one``,
``add``, ``sub``, ``neg``, ``mul``, ``inv``, ``frob``, ``order``, coordinate
maps over F_q, ...), which is what the polynomial, skew-polynomial and
linear-algebra layers are written against.  ``frob(x, i)`` is always the
q-power Frobenius iterated i times, never the absolute (p-power) one.
"""

from __future__ import annotations

import itertools
import random
from functools import cached_property

from drinfeld_lab.algebra import polyops
from drinfeld_lab.errors import DegreeMismatch, NotPrime, ReducibleModulus


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class FieldContext:
    """The finite field F_q, q = p^e, with elements encoded as ints in [0, q).

    For e > 1 the int is the base-p digit string of a polynomial in the
    generator ``a`` (root of ``modulus``), lowest digit first.
    """

    GENERATOR = "a"

    def __init__(self, p, e=1, modulus=None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if e < 1:
            raise DegreeMismatch("extension degree must be positive")
        self.p = p
        self.e = e
        self.q = p ** e
        self.order = self.q
        self.char = p
        self.zero = 0
        self.one = 1
        self.fq_dim = 1
        self.is_prime_field = e == 1
        if e == 1:
            if modulus is not None and len(tuple(modulus)) not in (0, 2):
                raise DegreeMismatch("prime field takes no modulus")
            self.modulus = None
            return
        prime = FieldContext(p)
        if modulus is None:
            modulus = first_irreducible(prime, e)
        else:
            modulus = polyops.trim(prime, [c % p for c in modulus])
            if polyops.deg(modulus) != e:
                raise DegreeMismatch(f"modulus has degree {polyops.deg(modulus)}, expected {e}")
            if modulus[-1] != 1:
                modulus = polyops.monic(prime, modulus)
            if not polyops.is_irreducible(prime, modulus):
                raise ReducibleModulus(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = tuple(modulus)
        self._build_tables(prime)

    def _build_tables(self, prime):
        q, p = self.q, self.p
        polys = [self._digits(n) for n in range(q)]
        index = {polyops.trim(prime, d): n for n, d in enumerate(polys)}
        # find a primitive element by brute force; q is small by design
        for g in range(2, q):
            gp = polyops.trim(prime, polys[g])
            exp = [1]
            cur = (1,)
            for _ in range(q - 2):
                cur = polyops.mulmod(prime, cur, gp, self.modulus)
                n = index[cur]
                if n == 1:
                    break
                exp.append(n)
            if len(exp) == q - 1:
                break
        else:  # q == 2 cannot happen since e > 1
            exp = [1]
        self._exp = exp
        self._log = {v: k for k, v in enumerate(exp)}
        self._add = [[self._from_digits([(x + y) % p for x, y in zip(polys[a], polys[b])])
                      for b in range(q)] for a in range(q)] if q <= 1024 else None
        self._neg = [self._from_digits([(-x) % p for x in polys[a]]) for a in range(q)]

    def _digits(self, n):
        out = []
        for _ in range(self.e):
            out.append(n % self.p)
            n //= self.p
        return out

    def _from_digits(self, ds):
        n = 0
        for d in reversed(list(ds)):
            n = n * self.p + d
        return n

    # field protocol -------------------------------------------------------
    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a][b]
        return self._from_digits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("inverse of zero in F_q")
            return 1 if n == 0 else 0
        if self.e == 1:
            return pow(a, n % (self.p - 1), self.p)
        return self._exp[(self._log[a] * n) % (self.q - 1)]

    def frob(self, a, i=1):
        return a

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return n % self.p

    def embed_fq(self, c):
        return c

    def elements(self):
        return range(self.q)

    def nonzero_elements(self):
        return range(1, self.q)

    def random_element(self, rng):
        return rng.randrange(self.q)

    def to_fq_vector(self, a):
        return [a]

    def from_fq_vector(self, v):
        return v[0]

    def multiplicative_order(self, a):
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        n, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            n += 1
        return n

    @cached_property
    def primitive_element(self):
        for g in range(1, self.q):
            if self.multiplicative_order(g) == self.q - 1:
                return g
        raise AssertionError("no primitive element")

    def render(self, a):
        if self.e == 1:
            return str(a)
        terms = []
        for i, d in reversed(list(enumerate(self._digits(a)))):
            if d == 0:
                continue
            mono = "" if i == 0 else (self.GENERATOR if i == 1 else f"{self.GENERATOR}^{i}")
            if not mono:
                terms.append(str(d))
            elif d == 1:
                terms.append(mono)
            else:
                terms.append(f"{d}*{mono}")
        return "+".join(terms) if terms else "0"

    def generator(self):
        """The class of ``a`` (for e = 1 there is no generator; returns 1)."""
        return self.p if self.e > 1 else 1

    def _key(self):
        return (self.p, self.e, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldContext) and self._key() == other._key()

    def __hash__(self):
        return hash(("Fq",) + self._key())

    def __repr__(self):
        if self.e == 1:
            return f"FieldContext(F_{self.p})"
        return f"FieldContext(F_{self.q}, modulus={self.modulus})"

    def __reduce__(self):
        return (FieldContext, (self.p, self.e, self.modulus))


def make_field_context(p, e=1, modulus=None):
    return FieldContext(p, e, modulus)


def monic_polys(F, d):
    """All monic degree-d polynomials over F, in lexicographic coefficient
    order (leading coefficients compared first, constant term last)."""
    elems = list(F.elements())
    for tail in itertools.product(elems, repeat=d):
        # tail lists c_{d-1}, ..., c_0
        yield tuple(reversed(tail)) + (F.one,)


def first_irreducible(F, d):
    for f in monic_polys(F, d):
        if polyops.is_irreducible(F, f):
            return f
    raise AssertionError(f"no irreducible polynomial of degree {d}")


def seeded_irreducible(F, d, seed):
    """A monic irreducible of degree d over F drawn from a seeded stream.

    A random monic polynomial is irreducible with probability about 1/d, so
    this needs roughly d tests where the lexicographic search can need
    hundreds over larger fields.  The same seed always gives the same result.
    """
    rng = random.Random(seed)
    while True:
        f = polyops.trim(F, [F.random_element(rng) for _ in range(d)] + [F.one])
        if polyops.is_irreducible(F, f):
            return f


class ExtensionField:
    """F = base[y]/(modulus) for a monic irreducible ``modulus`` over ``base``.

    Elements are trimmed tuples of base elements.  ``base`` is F_q itself
    (residue fields A/P) or another ExtensionField (torsion fields built as
    towers over A/P).
    """

    def __init__(self, base, modulus, tag=None, check=True):
        modulus = polyops.monic(base, polyops.trim(base, modulus))
        if polyops.deg(modulus) < 1:
            raise DegreeMismatch("extension modulus must have positive degree")
        if check and not polyops.is_irreducible(base, modulus):
            raise ReducibleModulus("extension modulus is reducible")
        self.base = base
        self.modulus = modulus
        self.m = polyops.deg(modulus)
        self.tag = tag
        self.order = base.order ** self.m
        self.p = base.p
        self.char = base.p
        self.fq = base if isinstance(base, FieldContext) else base.fq
        self.q = self.fq.q
        self.fq_dim = self.m * base.fq_dim
        self.zero = ()
        self.one = (base.one,)
        self.is_prime_field = False
        self._frob_images = None

    # field protocol -------------------------------------------------------
    def add(self, a, b):
        return polyops.add(self.base, a, b)

    def sub(self, a, b):
        return polyops.sub(self.base, a, b)

    def neg(self, a):
        return polyops.neg(self.base, a)

    def mul(self, a, b):
        return polyops.mod(self.base, polyops.mul(self.base, a, b), self.modulus)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return polyops.invmod(self.base, a, self.modulus)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        return polyops.powmod(self.base, a, n, self.modulus)

    def is_zero(self, a):
        return not a

    def from_int(self, n):
        return self.embed(self.base.from_int(n))

    def embed(self, c):
        """Base element -> element of this field."""
        return () if c == self.base.zero else (c,)

    def embed_fq(self, c):
        return self.embed(self.base.embed_fq(c))

    def reduce(self, poly):
        """Polynomial over the base -> its class."""
        return polyops.mod(self.base, polyops.trim(self.base, poly), self.modulus)

    @property
    def frob_images(self):
        """(y^j)^q reduced, for j < m."""
        if self._frob_images is None:
            yq = polyops.powmod(self.base, (self.base.zero, self.base.one), self.q, self.modulus)
            imgs = [self.one]
            for _ in range(1, self.m):
                imgs.append(self.mul(imgs[-1], yq))
            self._frob_images = imgs
        return self._frob_images

    def frob(self, a, i=1):
        base = self.base
        imgs = self.frob_images
        base_trivial = isinstance(base, FieldContext)
        for _ in range(i):
            acc = ()
            for j, c in enumerate(a):
                if c != base.zero:
                    cq = c if base_trivial else base.frob(c)
                    acc = polyops.add(base, acc, polyops.scale(base, imgs[j], cq))
            a = acc
        return a

    def elements(self):
        for coords in itertools.product(list(self.base.elements()), repeat=self.m):
            yield polyops.trim(self.base, coords)

    def random_element(self, rng):
        return polyops.trim(self.base, [self.base.random_element(rng) for _ in range(self.m)])

    def to_fq_vector(self, a):
        out = []
        bz = self.base.zero
        for j in range(self.m):
            out.extend(self.base.to_fq_vector(a[j] if j < len(a) else bz))
        return out

    def from_fq_vector(self, v):
        k = self.base.fq_dim
        return polyops.trim(self.base, [self.base.from_fq_vector(v[j * k:(j + 1) * k]) for j in range(self.m)])

    def fq_basis(self):
        """The F_q-basis matching ``to_fq_vector`` coordinates."""
        out = []
        y = [(self.base.zero,) * j + (self.base.one,) for j in range(self.m)]
        if isinstance(self.base, FieldContext):
            return [polyops.trim(self.base, yj) for yj in y]
        for j in range(self.m):
            for b in self.base.fq_basis():
                out.append(polyops.trim(self.base, (self.base.zero,) * j + (b,)))
        return out

    def render(self, a):
        from drinfeld_lab.algebra.poly import _render_coeff_poly

        if isinstance(self.base, FieldContext):
            var = "T" if self.tag and self.tag[0] == "residue" else "y"
            return _render_coeff_poly(self.base, a, var)
        return "[" + ", ".join(self.base.render(c) for c in a) + "]" if a else "0"

    def __eq__(self, other):
        return (isinstance(other, ExtensionField) and self.base == other.base
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash(("ext", self.base, self.modulus))

    def __repr__(self):
        return f"ExtensionField(order={self.order}, m={self.m}, tag={self.tag!r})"

    def __reduce__(self):
        return (ExtensionField, (self.base, self.modulus, self.tag, False))
