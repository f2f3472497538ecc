"""Dense univariate polynomial arithmetic over an arbitrary finite-field object.

Polynomials are tuples of field elements, lowest degree first, with no
trailing zeros (the zero polynomial is ``()``).  The field object ``F`` only
needs ``zero``, ``one``, ``add``, ``sub``, ``neg``, ``mul``, ``inv`` and the
``is_prime_field`` flag; when that flag is set the elements are plain ints
mod ``F.p`` and the hot loops skip the method calls.
"""

from __future__ import annotations


def trim(F, c):
    c = list(c)
    z = F.zero
    while c and c[-1] == z:
        c.pop()
    return tuple(c)


def deg(a):
    return len(a) - 1


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    if F.is_prime_field:
        p = F.p
        out = [(x + y) % p for x, y in zip(a, b)]
    else:
        out = [F.add(x, y) for x, y in zip(a, b)]
    out.extend(a[len(b):])
    return trim(F, out)


def neg(F, a):
    if F.is_prime_field:
        p = F.p
        return tuple((-x) % p for x in a)
    return tuple(F.neg(x) for x in a)


def sub(F, a, b):
    return add(F, a, neg(F, b))


def scale(F, a, c):
    if c == F.zero:
        return ()
    if F.is_prime_field:
        p = F.p
        return tuple((x * c) % p for x in a)
    return trim(F, [F.mul(x, c) for x in a])


def shift(F, a, k):
    """Multiply by x^k."""
    if not a:
        return a
    return (F.zero,) * k + tuple(a)


def mul(F, a, b):
    if not a or not b:
        return ()
    if F.is_prime_field:
        p = F.p
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return trim(F, [v % p for v in out])
    z = F.zero
    out = [z] * (len(a) + len(b) - 1)
    fa, fm = F.add, F.mul
    for i, x in enumerate(a):
        if x != z:
            for j, y in enumerate(b):
                if y != z:
                    out[i + j] = fa(out[i + j], fm(x, y))
    return trim(F, out)


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), tuple(a)
    r = list(a)
    db = len(b) - 1
    q = [F.zero] * (len(a) - db)
    if F.is_prime_field:
        p = F.p
        lead_inv = pow(b[-1], p - 2, p)
        for k in range(len(a) - 1, db - 1, -1):
            c = r[k] % p
            if c:
                c = (c * lead_inv) % p
                q[k - db] = c
                off = k - db
                for j in range(db + 1):
                    r[off + j] = (r[off + j] - c * b[j]) % p
        return trim(F, q), trim(F, [v % p for v in r[:db]])
    lead_inv = F.inv(b[-1])
    z = F.zero
    for k in range(len(a) - 1, db - 1, -1):
        c = r[k]
        if c != z:
            c = F.mul(c, lead_inv)
            q[k - db] = c
            off = k - db
            for j in range(db + 1):
                if b[j] != z:
                    r[off + j] = F.sub(r[off + j], F.mul(c, b[j]))
    return trim(F, q), trim(F, r[:db])


def mod(F, a, b):
    if len(a) < len(b):
        return tuple(a)
    return divmod_(F, a, b)[1]


def monic(F, a):
    if not a or a[-1] == F.one:
        return tuple(a)
    return scale(F, a, F.inv(a[-1]))


def gcd(F, a, b):
    """Monic gcd (``()`` when both inputs vanish)."""
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def xgcd(F, a, b):
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = tuple(a), tuple(b)
    s0, s1 = (F.one,), ()
    t0, t1 = (), (F.one,)
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return (), (), ()
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, s0, c), scale(F, t0, c)


def mulmod(F, a, b, m):
    return mod(F, mul(F, a, b), m)


def powmod(F, a, n, m):
    result = mod(F, (F.one,), m)
    base = mod(F, a, m)
    while n:
        if n & 1:
            result = mulmod(F, result, base, m)
        n >>= 1
        if n:
            base = mulmod(F, base, base, m)
    return result


def invmod(F, a, m):
    g, s, _ = xgcd(F, mod(F, a, m), m)
    if g != (F.one,):
        raise ZeroDivisionError("not invertible modulo m")
    return mod(F, s, m)


def evaluate(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def derivative(F, a):
    return trim(F, [F.mul(F.from_int(i), c) for i, c in enumerate(a)][1:])


def inflate(F, a, k):
    """Substitute x -> x^k."""
    if not a or k == 1:
        return tuple(a)
    out = [F.zero] * ((len(a) - 1) * k + 1)
    for i, c in enumerate(a):
        out[i * k] = c
    return tuple(out)


def _prime_divisors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(F, f):
    """Deterministic irreducibility test over the finite field F.

    f is irreducible iff gcd(f, x^(Q^i) - x) = 1 for every i <= deg f / 2,
    with Q = |F|.
    """
    n = deg(f)
    if n < 1:
        return False
    if n == 1:
        return True
    f = monic(F, f)
    x = (F.zero, F.one)
    Q = F.order
    h = x
    for _ in range(n // 2):
        h = powmod(F, h, Q, f)
        if gcd(F, f, sub(F, h, x)) != (F.one,):
            return False
    return True
