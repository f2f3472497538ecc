"""Finite-level Chebotarev and strong-multiplicity-one experiments mod ell.

Frobenius matrices come from ``torsion_frobenius_matrix``.  Each place uses
its own torsion basis, so a matrix is only meaningful up to conjugacy, and
the group generated by the observed matrices is a proxy for the true image
(reports carry ``generated_subgroup_proxy``).  For pairs the joint position
of (rho_1, rho_2) matters; it is known exactly when phi2 = phi1 (same
computation) and when phi2 = twist2(phi1, gamma) (basis transported by the
explicit conjugation), and is otherwise a further proxy
(``bases_aligned = False``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from drinfeld_lab.algebra.places import Place, power_residue_symbol, residue_field
from drinfeld_lab.drinfeld import reduce_at, twist2
from drinfeld_lab.errors import AnomalyError, BadInput, RankMismatch
from drinfeld_lab.experiments.groups import (
    DEFAULT_GROUP_CAP,
    conjugacy_classes,
    intertwiner_solve,
    matrix_group,
    pair_group,
)
from drinfeld_lab.experiments.scan import good_places, parallel_map
from drinfeld_lab.torsion import DEFAULT_TORSION_CAP, torsion_frobenius_matrix


def _frobenius_matrix(task):
    phi, P, ell, cap = task
    return torsion_frobenius_matrix(reduce_at(phi, P), ell, cap=cap).frobenius


def frobenius_matrices(phi, ell, places, torsion_cap=DEFAULT_TORSION_CAP, jobs=1):
    return parallel_map(_frobenius_matrix, [(phi, P, ell, torsion_cap) for P in places], jobs)


def render_charpoly(K, coeffs):
    terms = []
    n = len(coeffs) - 1
    for i in range(n, -1, -1):
        c = coeffs[i]
        if c == K.zero:
            continue
        mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
        s = K.render(c)
        if not mono:
            terms.append(s)
        elif s == "1":
            terms.append(mono)
        else:
            terms.append(f"({s})*{mono}" if "+" in s else f"{s}*{mono}")
    return " + ".join(terms) if terms else "0"


def _scan_places(modules, ell, D):
    places, _ = good_places(modules, D)
    return [P for P in places if P.generator != ell.generator]


@dataclass
class ChebotarevReport:
    ell: str
    granularity: str
    group_order: int
    places: int
    entries: list
    max_deviation: float
    deviation_trajectory: list
    generated_subgroup_proxy: bool = True

    def to_dict(self):
        return {
            "ell": self.ell,
            "granularity": self.granularity,
            "group_order": self.group_order,
            "places": self.places,
            "entries": self.entries,
            "max_deviation": self.max_deviation,
            "deviation_trajectory": self.deviation_trajectory,
            "generated_subgroup_proxy": self.generated_subgroup_proxy,
        }


def chebotarev_report(phi, ell, D, granularity="charpoly", group_cap=DEFAULT_GROUP_CAP,
                      torsion_cap=DEFAULT_TORSION_CAP, jobs=1, places=None):
    """Empirical Frobenius frequencies versus |C|/|G| in the generated group."""
    if not isinstance(ell, Place):
        ell = Place(ell)
    if granularity not in ("class", "charpoly"):
        raise BadInput(f"unknown granularity {granularity!r}")
    if places is None:
        places = _scan_places([phi], ell, D)
    if not places:
        raise BadInput("no good places coprime to ell up to the degree bound")
    mats = frobenius_matrices(phi, ell, places, torsion_cap, jobs)
    K = residue_field(ell.generator)
    G = matrix_group(mats, cap=group_cap)

    if granularity == "class":
        classes = conjugacy_classes(G, mats)
        index = {g: i for i, cls in enumerate(classes) for g in cls}
        labels = []
        for cls in classes:
            rep = min(cls, key=lambda m: m.rows)
            labels.append(f"{render_charpoly(K, rep.charpoly())} | rep {[[K.render(x) for x in r] for r in rep.rows]}")
        sizes = [len(cls) for cls in classes]

        def key_of(m):
            return index[m]
    else:
        by_cp = {}
        for g in G:
            cp = g.charpoly()
            by_cp[cp] = by_cp.get(cp, 0) + 1
        keys = sorted(by_cp)
        index = {cp: i for i, cp in enumerate(keys)}
        labels = [render_charpoly(K, cp) for cp in keys]
        sizes = [by_cp[cp] for cp in keys]

        def key_of(m):
            return index[m.charpoly()]

    order = len(G)
    predicted = [Fraction(s, order) for s in sizes]
    observed = [key_of(m) for m in mats]
    degrees = [P.degree for P in places]

    def deviation_upto(d):
        sub = [o for o, dd in zip(observed, degrees) if dd <= d]
        if not sub:
            return None
        counts = [0] * len(sizes)
        for o in sub:
            counts[o] += 1
        return max(abs(c / len(sub) - float(p)) for c, p in zip(counts, predicted))

    counts = [0] * len(sizes)
    for o in observed:
        counts[o] += 1
    entries = [
        {"label": lab, "size": s, "predicted": float(p), "count": c, "empirical": c / len(observed)}
        for lab, s, p, c in zip(labels, sizes, predicted, counts)
    ]
    return ChebotarevReport(
        ell=str(ell),
        granularity=granularity,
        group_order=order,
        places=len(places),
        entries=entries,
        max_deviation=max(abs(e["empirical"] - e["predicted"]) for e in entries),
        deviation_trajectory=[deviation_upto(d) for d in range(1, D + 1)],
    )


@dataclass
class SMOReport:
    ell: str
    group_order: int
    places: int
    exact_proportion: float
    empirical_frequency: float
    deviation: float
    bases_aligned: bool
    isomorphism_witnessed: bool
    generated_subgroup_proxy: bool = True

    def to_dict(self):
        return {
            "ell": self.ell,
            "group_order": self.group_order,
            "places": self.places,
            "exact_proportion": self.exact_proportion,
            "empirical_frequency": self.empirical_frequency,
            "deviation": self.deviation,
            "bases_aligned": self.bases_aligned,
            "finite_level_isomorphism_witnessed": self.isomorphism_witnessed,
            "generated_subgroup_proxy": self.generated_subgroup_proxy,
        }


def _scalar(K, c, M):
    return type(M)(K, [[K.mul(c, x) for x in row] for row in M.rows])


def smo_experiment(phi1, phi2, ell, D, twist_gamma=None, group_cap=DEFAULT_GROUP_CAP,
                   torsion_cap=DEFAULT_TORSION_CAP, jobs=1, seed=0):
    """Equal-charpoly frequency mod ell versus the exact proportion of the
    equal-charpoly set X in the generated product group.

    Pass ``twist_gamma`` when phi2 = twist2(phi1, gamma): phi2's basis is then
    transported from phi1's through x -> c^{-1} x (c^(q-1) = gamma), which
    turns its Frobenius matrix into chi^{-1} M1; the transported matrix is
    checked to be conjugate to phi2's independently computed one.
    """
    if phi1.rank != phi2.rank:
        raise RankMismatch(f"ranks {phi1.rank} and {phi2.rank} differ")
    if not isinstance(ell, Place):
        ell = Place(ell)
    K = residue_field(ell.generator)
    ctx = phi1.ctx
    places = _scan_places([phi1, phi2], ell, D)
    if not places:
        raise BadInput("no common good places coprime to ell up to the degree bound")
    m1 = frobenius_matrices(phi1, ell, places, torsion_cap, jobs)
    if phi2 == phi1:
        m2 = list(m1)
        aligned = True
    else:
        m2_own = frobenius_matrices(phi2, ell, places, torsion_cap, jobs)
        if twist_gamma is not None:
            if twist2(phi1, twist_gamma) != phi2:
                raise BadInput("phi2 is not twist2(phi1, gamma) for the given gamma")
            m2 = []
            for P, a, b in zip(places, m1, m2_own):
                chi = power_residue_symbol(twist_gamma, P)
                moved = _scalar(K, K.embed_fq(ctx.inv(chi)), a)
                if intertwiner_solve([(b, moved)], seed=seed) is None:
                    raise AnomalyError(f"transported Frobenius not conjugate to the computed one at {P}")
                m2.append(moved)
            aligned = True
        else:
            m2 = m2_own
            aligned = False
    pairs = list(zip(m1, m2))
    G = pair_group(pairs, cap=group_cap)
    in_x = sum(1 for g, h in G if g.charpoly() == h.charpoly())
    exact = Fraction(in_x, len(G))
    equal = [a.charpoly() == b.charpoly() for a, b in pairs]
    empirical = sum(equal) / len(equal)
    witnessed = all(equal) and intertwiner_solve(pairs, seed=seed) is not None
    return SMOReport(
        ell=str(ell),
        group_order=len(G),
        places=len(places),
        exact_proportion=float(exact),
        empirical_frequency=empirical,
        deviation=abs(empirical - float(exact)),
        bases_aligned=aligned,
        isomorphism_witnessed=witnessed,
    )
