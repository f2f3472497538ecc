"""Search for isogenies u with u * phi1_T = phi2_T * u.

Comparing tau^n coefficients gives

    u_n (T^(q^n) - T) = sum_{j=1..r} ( h_j u_{n-j}^(q^j) - u_{n-j} g_j^(q^(n-j)) )

so every coefficient of u is determined by u_0, and the map u_0 -> u_n is
F_q-linear (but not F-linear, because of the q-powers).  Valuation estimates
read off from the top-degree equations bound the denominator and degree of
each u_k.  We therefore start from a finite F_q-space of candidates for u_0,
run the recursion on a basis, and cut the space down at each step to the
combinations whose u_n stays inside its bounded space.  For n > N the
combination must make u_n vanish.
"""

from __future__ import annotations

import math
from fractions import Fraction

from drinfeld_lab.algebra import linalg, polyops
from drinfeld_lab.algebra.places import monic_irreducibles
from drinfeld_lab.algebra.poly import FunctionField, Poly, RationalFunction
from drinfeld_lab.errors import AnomalyError, BadInput, RankMismatch
from drinfeld_lab.skew import SkewPoly

DEFAULT_TAU_BOUND = 6
INF = math.inf


def prime_factors(f):
    """Distinct monic irreducible factors of a nonzero polynomial, by trial
    division (inputs here are coefficients of small modules)."""
    ctx = f.ctx
    c = polyops.monic(ctx, f.c)
    out = []
    d = 1
    while 2 * d <= polyops.deg(c):
        for P in monic_irreducibles(ctx, d):
            q, r = polyops.divmod_(ctx, c, P.generator.c)
            if r:
                continue
            out.append(P.generator)
            c = q
            while True:
                q, r = polyops.divmod_(ctx, c, P.generator.c)
                if r:
                    break
                c = q
        d += 1
    if polyops.deg(c) >= 1:
        out.append(Poly(ctx, c))
    return out


def _valuation_at(x, P):
    """v_P(x); P=None stands for the place at infinity."""
    if not x:
        return INF
    if P is None:
        return -x.degree()
    return x.valuation(P)


def valuation_bounds(g, h, q, N, P):
    """Lower bounds beta_k <= v_P(u_k), k = 0..N, for any isogeny of tau-degree <= N.

    ``g`` and ``h`` list the coefficients of phi1_T and phi2_T, constant term
    (T) first.  At tau^(k+r) the unknown u_k enters as h_r u_k^(q^r) - u_k g_r^(q^k)
    and everything else involves u_k' with k' > k.  Among three terms the
    minimum valuation must be attained twice, which forces
    v(u_k) >= min(t*, (v(b) - v(h_r)) / q^r) with t* the balance point.
    """
    r = len(g) - 1
    Q = q ** r
    vg = [_valuation_at(x, P) for x in g]
    vh = [_valuation_at(x, P) for x in h]
    beta = [None] * (N + 1)
    for k in range(N, -1, -1):
        vb = INF
        for kp in range(k + 1, min(N, k + r) + 1):
            j = k + r - kp
            if beta[kp] == INF:
                continue
            if vg[j] != INF:
                vb = min(vb, beta[kp] + (q ** kp) * vg[j])
            if vh[j] != INF:
                vb = min(vb, vh[j] + (q ** j) * beta[kp])
        t_star = Fraction(q ** k * vg[r] - vh[r], Q - 1)
        bound = t_star if vb == INF else min(t_star, Fraction(vb - vh[r], Q))
        beta[k] = math.ceil(bound)
    return beta


def _coefficient_places(g, h):
    ctx = g[0].ctx
    polys = [Poly.T(ctx)]
    for x in list(g[1:]) + list(h[1:]):
        if x:
            polys.extend([x.num, x.den])
    seen = {}
    for f in polys:
        if f.degree >= 1:
            for P in prime_factors(f):
                seen[P.c] = P
    return [seen[k] for k in sorted(seen)]


def coefficient_spaces(g, h, q, N):
    """For each k: (denominator D_k, numerator degree bound B_k) such that
    u_k lies in (1/D_k) * {a : deg a <= B_k}.  B_k < 0 means u_k = 0."""
    ctx = g[0].ctx
    places = _coefficient_places(g, h)
    finite = [(P, valuation_bounds(g, h, q, N, P)) for P in places]
    at_inf = valuation_bounds(g, h, q, N, None)
    out = []
    for k in range(N + 1):
        D = Poly(ctx, (1,))
        for P, beta in finite:
            if beta[k] < 0:
                D = D * P ** (-beta[k])
        out.append((D, D.degree - at_inf[k]))
    return out


def _membership_equations(ctx, xs, D, B):
    """Rows of a linear system in c: sum c_i xs_i lies in (1/D) A_{<=B}."""
    ys = [x * RationalFunction.from_poly(D) for x in xs]
    E = Poly(ctx, (1,))
    for y in ys:
        E = E * (y.den // E.gcd(y.den))
    rems, quos = [], []
    for y in ys:
        n = y.num * (E // y.den)
        qq, rr = divmod(n, E)
        rems.append(rr)
        quos.append(qq)
    rows = []
    for i in range(E.degree):
        rows.append([rr.coeff(i) for rr in rems])
    top = max((qq.degree for qq in quos), default=-1)
    for i in range(max(B + 1, 0), top + 1):
        rows.append([qq.coeff(i) for qq in quos])
    return [r for r in rows if any(r)]


def _combine(vectors, c, F):
    """The F_q-combination sum c_i vectors_i, componentwise."""
    out = []
    for comps in zip(*vectors):
        acc = F.zero
        for ci, x in zip(c, comps):
            if ci and x:
                acc = acc + F.embed_fq(ci) * x
        out.append(acc)
    return out


def _solve_exact(phi1, phi2, N):
    ctx = phi1.ctx
    F = FunctionField(ctx)
    q = ctx.q
    r = phi1.rank
    T = RationalFunction.from_poly(Poly.T(ctx))
    g = [T] + list(phi1.coeffs)
    h = [T] + list(phi2.coeffs)
    spaces = coefficient_spaces(g, h, q, N)
    D0, B0 = spaces[0]
    if B0 < 0:
        return None
    inv_D0 = RationalFunction.from_poly(D0).inverse()
    vectors = [[RationalFunction.from_poly(Poly(ctx, (0,) * i + (1,))) * inv_D0] for i in range(B0 + 1)]
    g_pows = {}

    def gpow(j, e):
        if (j, e) not in g_pows:
            g_pows[(j, e)] = g[j].frob(e)
        return g_pows[(j, e)]

    for n in range(1, N + r + 1):
        denom = (T.frob(n) - T).inverse()
        for vec in vectors:
            acc = F.zero
            for j in range(1, min(n, r) + 1):
                u = vec[n - j]
                if not u:
                    continue
                if h[j]:
                    acc = acc + h[j] * u.frob(j)
                if g[j]:
                    acc = acc - u * gpow(j, n - j)
            vec.append(acc * denom)
        D, B = spaces[n] if n <= N else (Poly(ctx, (1,)), -1)
        rows = _membership_equations(ctx, [v[-1] for v in vectors], D, B)
        if rows:
            kern = linalg.kernel(ctx, rows, len(vectors))
            if not kern:
                return None
            vectors = [_combine(vectors, c, F) for c in kern]
    u = SkewPoly(F, vectors[0][: N + 1])
    if u.is_zero():
        return None
    return u


def verify_isogeny(phi1, phi2, u):
    return not u.is_zero() and u * phi1.phi_T == phi2.phi_T * u


def isogeny_solve(phi1, phi2, N):
    """A nonzero u of least tau-degree <= N with u phi1_T = phi2_T u, or None."""
    if phi1.rank != phi2.rank:
        raise RankMismatch(f"ranks {phi1.rank} and {phi2.rank} differ")
    if N < 0:
        raise BadInput("tau-degree bound must be >= 0")
    for n in range(N + 1):
        u = _solve_exact(phi1, phi2, n)
        if u is not None:
            if not verify_isogeny(phi1, phi2, u):
                raise AnomalyError("isogeny candidate failed verification")
            return u
    return None
