"""Finite matrix groups: closure, conjugacy classes and intertwiners."""

from __future__ import annotations

import itertools
import random

from drinfeld_lab.algebra import linalg
from drinfeld_lab.algebra.linalg import FiniteMatrix
from drinfeld_lab.errors import DimensionMismatch, GroupCapExceeded

DEFAULT_GROUP_CAP = 10 ** 6
INTERTWINER_TRIALS = 2000


def generate_group(gens, mul, identity, cap=DEFAULT_GROUP_CAP):
    """All products of the generators (a finite group), breadth first."""
    gens = list(dict.fromkeys(gens))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise GroupCapExceeded(f"generated group exceeds {cap} elements")
        frontier = nxt
    return seen


def matrix_group(gens, cap=DEFAULT_GROUP_CAP):
    gens = list(gens)
    K = gens[0].field
    ident = FiniteMatrix.identity(K, gens[0].shape[0])
    return generate_group(gens, lambda a, b: a @ b, ident, cap)


def pair_mul(a, b):
    return (a[0] @ b[0], a[1] @ b[1])


def pair_group(gens, cap=DEFAULT_GROUP_CAP):
    gens = list(gens)
    n = gens[0][0].shape[0]
    K = gens[0][0].field
    ident = FiniteMatrix.identity(K, n)
    return generate_group(gens, pair_mul, (ident, ident), cap)


def conjugacy_class(g, gens, conj):
    """Orbit of g under conjugation by the group the generators span."""
    orbit = {g}
    frontier = [g]
    while frontier:
        nxt = []
        for x in frontier:
            for h in gens:
                y = conj(h, x)
                if y not in orbit:
                    orbit.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(orbit)


def matrix_conj(h, x):
    return h @ x @ h.inverse()


def conjugacy_classes(group, gens, conj=matrix_conj):
    """Partition of ``group`` into classes, sorted canonically."""
    gens = list(dict.fromkeys(gens))
    inverses = {}
    remaining = set(group)
    classes = []
    for g in sorted(group, key=_elem_key):
        if g not in remaining:
            continue
        cls = conjugacy_class(g, gens, lambda h, x: _cached_conj(h, x, inverses, conj))
        remaining -= cls
        classes.append(cls)
    return classes


def _cached_conj(h, x, cache, conj):
    if conj is matrix_conj:
        if h not in cache:
            cache[h] = h.inverse()
        return h @ x @ cache[h]
    return conj(h, x)


def _elem_key(x):
    if isinstance(x, tuple):
        return tuple(_elem_key(y) for y in x)
    return x.rows


def intertwiner_solve(pairs, seed=0, trials=INTERTWINER_TRIALS):
    """An invertible X with X M_i = N_i X for all i, or None.

    The conditions are linear in the entries of X.  Invertible elements of
    the solution space are searched exhaustively when the space has
    dimension <= 2 over a field of <= 81 elements, otherwise by seeded
    random sampling with ``trials`` attempts.
    """
    pairs = list(pairs)
    if not pairs:
        raise DimensionMismatch("need at least one pair")
    K = pairs[0][0].field
    n = pairs[0][0].shape[0]
    for M, N in pairs:
        if M.shape != (n, n) or N.shape != (n, n) or M.field != K or N.field != K:
            raise DimensionMismatch("all matrices must be square of one size over one field")
    rows = []
    # unknown x_{ab} at index a*n+b; (XM - NX)_{ij} = sum_k x_{ik} M_{kj} - N_{ik} x_{kj}
    for M, N in pairs:
        for i in range(n):
            for j in range(n):
                row = [K.zero] * (n * n)
                for k in range(n):
                    row[i * n + k] = K.add(row[i * n + k], M.rows[k][j])
                    row[k * n + j] = K.sub(row[k * n + j], N.rows[i][k])
                rows.append(row)
    basis = linalg.kernel(K, rows, n * n)
    if not basis:
        return None

    def build(coeffs):
        v = [K.zero] * (n * n)
        for c, b in zip(coeffs, basis):
            if c != K.zero:
                v = [K.add(x, K.mul(c, y)) for x, y in zip(v, b)]
        return FiniteMatrix(K, [v[i * n:(i + 1) * n] for i in range(n)])

    elems = list(K.elements())
    if len(basis) <= 2 and K.order <= 81:
        for coeffs in itertools.product(elems, repeat=len(basis)):
            if all(c == K.zero for c in coeffs):
                continue
            X = build(coeffs)
            if X.is_invertible():
                return X
        return None
    rng = random.Random(seed)
    for _ in range(trials):
        X = build([rng.choice(elems) for _ in basis])
        if X.is_invertible():
            return X
    return None
