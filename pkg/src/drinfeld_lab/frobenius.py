"""Frobenius characteristic polynomials of reduced Drinfeld modules.

At a good place P of degree d the Frobenius pi = tau^d is central in
(A/P){tau} and satisfies

    pi^r - phi_{a_{r-1}} pi^{r-1} + ... + (-1)^r phi_{a_0} = 0

for unique a_i in A.  The a_i are found by linear algebra over F_q: every
tau-coefficient of the relation is an element of A/P, i.e. d equations over
F_q, and the unknowns are the F_q-coefficients of the a_i inside their
degree bounds deg a_{r-i} <= floor(i d / r).
"""

from __future__ import annotations

from dataclasses import dataclass

from drinfeld_lab.algebra import linalg
from drinfeld_lab.algebra.places import Place
from drinfeld_lab.algebra.poly import Poly
from drinfeld_lab.drinfeld import DrinfeldModule, _horner, reduce_at
from drinfeld_lab.errors import AmbiguousSolution, AnomalyError, BadInput, NoSolution, WrongRank
from drinfeld_lab.skew import SkewPoly


@dataclass(frozen=True)
class FrobCharpoly:
    """X^r - a_{r-1} X^{r-1} + ... + (-1)^r a_0 at one place.

    ``coeffs[i]`` is a_i, so ``coeffs[-1]`` is the trace and ``coeffs[0]``
    the norm.
    """

    place: Place
    rank: int
    coeffs: tuple
    verified: bool

    @property
    def trace(self):
        return self.coeffs[-1]

    @property
    def norm(self):
        return self.coeffs[0]

    def polynomial_coefficients(self):
        """Coefficients of P(X) lowest first, as elements of A."""
        out = []
        for i, a in enumerate(self.coeffs):
            out.append(a if (self.rank - i) % 2 == 0 else -a)
        ctx = self.place.ctx
        out.append(Poly(ctx, (1,)))
        return out

    def reduce_mod(self, ell):
        """The polynomial coefficients reduced into A/ell (lowest first)."""
        from drinfeld_lab.algebra.places import residue_field

        E = residue_field(ell.generator)
        return tuple(E.reduce(c.c) for c in self.polynomial_coefficients())

    def as_row(self):
        return {
            "degree": self.place.degree,
            "place": str(self.place),
            "trace": str(self.trace),
            "norm": str(self.norm),
            "verified": self.verified,
        }


def _fq_columns(phiR, skews, top):
    """Flatten skew polynomials of tau-degree <= top into F_q column vectors."""
    E = phiR.field
    cols = []
    for s in skews:
        v = []
        for k in range(top + 1):
            v.extend(E.to_fq_vector(s.coeff(k)))
        cols.append(v)
    return cols


def _solve_columns(ctx, cols, rhs):
    rows = [list(r) for r in zip(*cols)]
    part, cons, kern = linalg.solve_affine(ctx, rows, [rhs])
    if cons:
        return None, kern
    return part[0], kern


def frob_charpoly(phiR, experimental=False):
    """Characteristic polynomial of tau^d on the reduced module phiR."""
    r, d = phiR.rank, phiR.degree
    if r >= 3 and not experimental:
        raise BadInput("rank >= 3 charpolys need experimental=True")
    ctx = phiR.ctx
    E = phiR.field
    P = phiR.place.generator
    minus_one = ctx.neg(1)
    top = r * d
    rhs = [ctx.neg(x) for x in _fq_columns(phiR, [SkewPoly.tau(E, top)], top)[0]]

    def sign(i):
        return 1 if (r - i) % 2 == 0 else minus_one

    def build(norm_ansatz):
        skews, layout = [], []
        for i in range(r):
            if i == 0 and norm_ansatz:
                skews.append(phiR.phi_image(P).scale_left(E.embed_fq(sign(0))))
                layout.append((0, None))
                continue
            bound = ((r - i) * d) // r
            for j in range(bound + 1):
                s = phiR.phi_T_power(j).shift(i * d).scale_left(E.embed_fq(sign(i)))
                skews.append(s)
                layout.append((i, j))
        return skews, layout

    attempts = [True, False] if r == 2 else [False]
    for norm_ansatz in attempts:
        skews, layout = build(norm_ansatz)
        sol, kern = _solve_columns(ctx, _fq_columns(phiR, skews, top), rhs)
        if sol is None:
            continue
        if kern:
            raise AmbiguousSolution(f"{len(kern)}-dimensional solution space at {P}")
        a = [[0] * (((r - i) * d) // r + 1) for i in range(r)]
        mu = None
        for (i, j), x in zip(layout, sol):
            if j is None:
                mu = x
            else:
                a[i][j] = x
        coeffs = [Poly(ctx, ai) for ai in a]
        if mu is not None:
            coeffs[0] = P.scale(mu)
        elif r == 2:
            q_, rem = divmod(coeffs[0], P)
            if rem or q_.degree != 0:
                raise AnomalyError(f"norm {coeffs[0]} is not an F_q^* multiple of {P}")
        cp = FrobCharpoly(phiR.place, r, tuple(coeffs), False)
        if not verify_charpoly(phiR, cp):
            raise NoSolution(f"solution failed substitution at {P}")
        return FrobCharpoly(phiR.place, r, tuple(coeffs), True)
    raise NoSolution(f"no Frobenius relation found at {P}")


def verify_charpoly(phiR, cp):
    """Substitute pi = tau^d into the relation; exact check in (A/P){tau}.

    Rebuilds every phi_a by Horner's rule from phi_T, independently of the
    cached powers the solver uses.
    """
    E = phiR.field
    d = phiR.degree
    r = cp.rank
    pi = SkewPoly.tau(E, d)
    total = SkewPoly.tau(E, r * d)
    for i, a in enumerate(cp.coeffs):
        term = _horner(phiR.phi_T, a, E) * (pi ** i)
        total = total + term if (r - i) % 2 == 0 else total - term
    return total.is_zero()


def charpoly_at(phi, place, experimental=False):
    return frob_charpoly(reduce_at(phi, place), experimental=experimental)


def carlitz_twist_of(phi):
    """psi_T = T - g_r tau, the rank-1 module carrying the determinant."""
    return DrinfeldModule(phi.ctx, [-phi.coeffs[-1]])


def weil_det_check(phi, place, sign=1):
    """norm(frob_charpoly(phi, P)) == sign * a_0 of psi = T - g_2 tau at P."""
    if phi.rank != 2:
        raise WrongRank("the determinant check is for rank-2 modules")
    psi = carlitz_twist_of(phi)
    norm = charpoly_at(phi, place).norm
    c = charpoly_at(psi, place).norm
    return norm == c * sign
