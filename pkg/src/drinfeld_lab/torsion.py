"""Mod-ell torsion of a reduced Drinfeld module and its Frobenius matrix.

The ell-torsion phi[ell] of phi mod P lives in a finite extension of A/P.
We realize F_{q^{dm}} as a tower (A/P)[y]/(f) with f irreducible of degree m,
compute the kernel of x -> phi_ell(x) there by F_q-linear algebra, choose an
A/ell-basis greedily and read off the matrix of tau^d in that basis.
"""

from __future__ import annotations

from dataclasses import dataclass

from drinfeld_lab.algebra import linalg
from drinfeld_lab.algebra.fields import ExtensionField, seeded_irreducible
from drinfeld_lab.algebra.linalg import FiniteMatrix
from drinfeld_lab.algebra.places import Place, residue_field
from drinfeld_lab.errors import AnomalyError, BadInput, TorsionFieldCapExceeded
from drinfeld_lab.skew import skew_eval

DEFAULT_TORSION_CAP = 120


@dataclass(frozen=True)
class TorsionData:
    place: Place
    ell: Place
    m: int
    field: ExtensionField
    basis: tuple
    frobenius: FiniteMatrix

    @property
    def cardinality(self):
        return self.field.q ** (len(self.basis) * self.ell.degree)


def _torsion_field(E, m):
    if m == 1:
        return ExtensionField(E, (E.zero, E.one), tag=("torsion", 1), check=False)
    f = seeded_irreducible(E, m, f"torsion-field|{E.modulus}|{m}")
    return ExtensionField(E, f, tag=("torsion", m), check=False)


def _linear_map_matrix(L, fn):
    """F_q-matrix (rows = output coordinates) of an F_q-linear map L -> L."""
    cols = [L.to_fq_vector(fn(b)) for b in L.fq_basis()]
    return [list(r) for r in zip(*cols)]


def _order_hint(phiR, ell):
    """Multiplicative order of the companion matrix of the Frobenius charpoly
    mod ell; the true Frobenius order divides it.  None if unavailable."""
    from drinfeld_lab.frobenius import frob_charpoly

    if phiR.rank > 2:
        return None
    cp = frob_charpoly(phiR)
    K = residue_field(ell.generator)
    coeffs = cp.reduce_mod(ell)
    r = phiR.rank
    comp = [[K.zero] * r for _ in range(r)]
    for i in range(1, r):
        comp[i][i - 1] = K.one
    for i in range(r):
        comp[i][r - 1] = K.neg(coeffs[i])
    try:
        return FiniteMatrix(K, comp).order(cap=10 ** 5)
    except (ArithmeticError, ZeroDivisionError):
        return None


def _candidates(hint, cap):
    seen = []
    if hint:
        seen = [m for m in range(1, min(hint, cap) + 1) if hint % m == 0]
    rest = [m for m in range(1, cap + 1) if m not in seen]
    return seen + rest


def torsion_frobenius_matrix(phiR, ell, cap=DEFAULT_TORSION_CAP, use_hint=True):
    if not isinstance(ell, Place):
        ell = Place(ell)
    P = phiR.place
    if ell.ctx != P.ctx:
        raise BadInput("ell and P live over different constant fields")
    if ell.generator == P.generator:
        raise BadInput(f"ell = {ell} must be coprime to P = {P}")
    r, k = phiR.rank, ell.degree
    E = phiR.field
    phi_ell = phiR.phi_image(ell.generator)
    target = r * k
    hint = _order_hint(phiR, ell) if use_hint else None
    for m in _candidates(hint, cap):
        L = _torsion_field(E, m)
        M = _linear_map_matrix(L, lambda x: skew_eval(phi_ell, x, L))
        kern = linalg.kernel(L.fq, M, L.fq_dim)
        if len(kern) > target:
            raise AnomalyError(f"torsion kernel of dimension {len(kern)} > {target}")
        if len(kern) == target:
            return _build(phiR, ell, m, L, kern)
    raise TorsionFieldCapExceeded(f"no torsion field of degree <= {cap} over A/{P}")


def _build(phiR, ell, m, L, kern):
    Fq = L.fq
    k = ell.degree
    r = phiR.rank
    phi_T = phiR.phi_T

    def orbit(v):
        # F_q-basis of the A/ell-line through v: phi_{T^s}(v), s < k
        out = [v]
        for _ in range(1, k):
            out.append(skew_eval(phi_T, out[-1], L))
        return out

    basis, span = [], []
    for vec in kern:
        v = L.from_fq_vector(vec)
        trial = span + orbit(v)
        rows = [L.to_fq_vector(x) for x in trial]
        if linalg.rank(Fq, rows) == len(trial):
            basis.append(v)
            span = trial
        if len(basis) == r:
            break
    if len(basis) != r:
        raise AnomalyError("torsion is not free of the expected rank over A/ell")

    K = residue_field(ell.generator)
    span_cols = [L.to_fq_vector(x) for x in span]
    A = [list(row) for row in zip(*span_cols)]

    def coords(x):
        sol = linalg.solve(Fq, A, L.to_fq_vector(x))
        if sol is None:
            raise AnomalyError("Frobenius image left the torsion module")
        # sol is ordered (basis j, power s); fold into A/ell
        return [K.reduce(sol[j * k:(j + 1) * k]) for j in range(r)]

    d = phiR.degree
    cols = [coords(L.frob(b, d)) for b in basis]
    rows = [[cols[i][j] for i in range(r)] for j in range(r)]
    return TorsionData(phiR.place, ell, m, L, tuple(basis), FiniteMatrix(K, rows))


def t_action_matrix(phiR, data):
    """Matrix of phi_T on the chosen basis (scalar T mod ell)."""
    L = data.field
    k = data.ell.degree
    r = len(data.basis)
    span = []
    for b in data.basis:
        v = b
        for _ in range(k):
            span.append(v)
            v = skew_eval(phiR.phi_T, v, L)
    A = [list(row) for row in zip(*[L.to_fq_vector(x) for x in span])]
    K = residue_field(data.ell.generator)
    cols = []
    for b in data.basis:
        sol = linalg.solve(L.fq, A, L.to_fq_vector(skew_eval(phiR.phi_T, b, L)))
        cols.append([K.reduce(sol[j * k:(j + 1) * k]) for j in range(r)])
    return FiniteMatrix(K, [[cols[i][j] for i in range(r)] for j in range(r)])


__all__ = ["DEFAULT_TORSION_CAP", "TorsionData", "t_action_matrix", "torsion_frobenius_matrix"]
