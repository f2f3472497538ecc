"""Counting estimates of place densities at a finite cutoff."""

from __future__ import annotations

from dataclasses import dataclass

from drinfeld_lab.algebra.places import places_up_to


@dataclass
class DensityEstimate:
    """#{P in S : N(P) <= x} / #{P : N(P) <= x} with x = q^D.

    ``trajectory[j]`` is the same ratio at cutoff q^(j+1), so convergence
    (or its absence) is visible.
    """

    cutoff: int
    numerator: int
    denominator: int
    ratio: float
    trajectory: list

    def upper_density(self):
        """Max of the trajectory over cutoffs D/2..D, an estimator of the limsup."""
        D = len(self.trajectory)
        lo = max(1, (D + 1) // 2)
        window = [x for x in self.trajectory[lo - 1:] if x is not None]
        return max(window) if window else None

    def to_dict(self):
        return {
            "cutoff": self.cutoff,
            "numerator": self.numerator,
            "denominator": self.denominator,
            "ratio": self.ratio,
            "trajectory": self.trajectory,
            "upper_density": self.upper_density(),
        }


def density_estimate(member, ctx, D, domain=None):
    """Density of {P : member(P)} among places of degree <= D.

    ``domain`` restricts the denominator (e.g. to good places); it defaults
    to every finite place.
    """
    num = den = 0
    trajectory = []
    places = places_up_to(ctx, D)
    by_degree = {}
    for P in places:
        if domain is not None and not domain(P):
            continue
        hit = bool(member(P))
        by_degree.setdefault(P.degree, []).append(hit)
    for d in range(1, D + 1):
        hits = by_degree.get(d, [])
        num += sum(hits)
        den += len(hits)
        trajectory.append(num / den if den else None)
    return DensityEstimate(
        cutoff=ctx.q ** D,
        numerator=num,
        denominator=den,
        ratio=num / den if den else 0.0,
        trajectory=trajectory,
    )
