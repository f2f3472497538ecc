"""Place-by-place scans comparing Frobenius data of two Drinfeld modules."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from drinfeld_lab.algebra.places import places_up_to, power_residue_symbol
from drinfeld_lab.drinfeld import has_good_reduction, twist2
from drinfeld_lab.errors import BadInput, RankMismatch, WrongRank
from drinfeld_lab.frobenius import charpoly_at

WITNESS_CAP = 20


def parallel_map(fn, items, jobs=1):
    """map(fn, items) in input order, optionally over worker processes."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def good_places(modules, D):
    """Places of degree <= D where every module has good reduction, and the
    number skipped per degree."""
    good, skipped = [], {}
    for P in places_up_to(modules[0].ctx, D):
        if all(has_good_reduction(m, P) for m in modules):
            good.append(P)
        else:
            skipped[P.degree] = skipped.get(P.degree, 0) + 1
    return good, skipped


def _charpolys(task):
    modules, P = task
    return tuple(charpoly_at(m, P) for m in modules)


def scan_charpolys(modules, D, jobs=1):
    """[(place, (charpoly per module))] over the common good places."""
    places, skipped = good_places(modules, D)
    results = parallel_map(_charpolys, [(tuple(modules), P) for P in places], jobs)
    return list(zip(places, results)), skipped


@dataclass
class AgreementReport:
    max_degree: int
    mode: str
    per_degree: list
    density: float
    witnesses: list
    rows: list = field(repr=False, default_factory=list)
    character: dict = None

    def degree_densities(self):
        return {d["degree"]: d["density"] for d in self.per_degree}

    def to_dict(self):
        out = {
            "max_degree": self.max_degree,
            "mode": self.mode,
            "per_degree": self.per_degree,
            "density": self.density,
            "witnesses": self.witnesses,
        }
        if self.character is not None:
            out["character"] = self.character
        return out


def _row(P, cp1, cp2, symbol=None):
    return {
        "degree": P.degree,
        "place": str(P),
        "a_P_phi1": str(cp1.trace),
        "a_P_phi2": str(cp2.trace),
        "norm1": str(cp1.norm),
        "norm2": str(cp2.norm),
        "symbol": symbol,
        "equal_trace": cp1.trace == cp2.trace,
        "equal_charpoly": cp1.coeffs == cp2.coeffs,
    }


def _per_degree(rows, skipped, D, key):
    out = []
    for d in range(1, D + 1):
        sub = [r for r in rows if r["degree"] == d]
        n = len(sub)
        eq_t = sum(r["equal_trace"] for r in sub)
        eq_c = sum(r["equal_charpoly"] for r in sub)
        hits = sum(r[key] for r in sub)
        out.append({
            "degree": d,
            "scanned": n,
            "equal_trace": eq_t,
            "equal_charpoly": eq_c,
            "skipped_bad": skipped.get(d, 0),
            "density": hits / n if n else None,
        })
    return out


def scan_traces(phi1, phi2, D, mode="trace", jobs=1):
    if phi1.rank != phi2.rank:
        raise RankMismatch(f"ranks {phi1.rank} and {phi2.rank} differ")
    if mode not in ("trace", "charpoly"):
        raise BadInput(f"unknown mode {mode!r}")
    data, skipped = scan_charpolys([phi1, phi2], D, jobs)
    rows = [_row(P, a, b) for P, (a, b) in data]
    key = "equal_trace" if mode == "trace" else "equal_charpoly"
    hits = sum(r[key] for r in rows)
    witnesses = [r for r in rows if not r[key]][:WITNESS_CAP]
    return AgreementReport(
        max_degree=D,
        mode=mode,
        per_degree=_per_degree(rows, skipped, D, key),
        density=hits / len(rows) if rows else 0.0,
        witnesses=[{k: w[k] for k in ("degree", "place", "a_P_phi1", "a_P_phi2")} for w in witnesses],
        rows=rows,
    )


def twist_agreement(phi, gamma, D, jobs=1):
    """Compare phi with twist2(phi, gamma) place by place against the
    power residue symbol chi = (gamma / P)_{q-1}.

    The twist acts on Frobenius by chi^{-1}: a_P(phi^gamma) = chi^{-1} a_P(phi)
    and norm(phi^gamma) = chi^{-2} norm(phi).  The agreement set
    {a_P(phi^gamma) = a_P(phi)} is split into {chi = 1} and
    {a_P = 0, chi != 1}.
    """
    if phi.rank != 2:
        raise WrongRank("twist experiments need a rank-2 module")
    ctx = phi.ctx
    tw = twist2(phi, gamma)
    data, skipped = scan_charpolys([phi, tw], D, jobs)
    rows = []
    n_trace_rel = n_norm_rel = n_chi1 = n_zero = n_agree = 0
    trajectory = []
    for P, (a, b) in data:
        chi = power_residue_symbol(gamma, P)
        ci = ctx.inv(chi)
        row = _row(P, a, b, symbol=chi)
        trace_ok = b.trace == a.trace.scale(ci)
        norm_ok = b.norm == a.norm.scale(ctx.mul(ci, ci))
        row["trace_relation"] = trace_ok
        row["norm_relation"] = norm_ok
        rows.append(row)
        n_trace_rel += trace_ok
        n_norm_rel += norm_ok
        if chi == 1:
            n_chi1 += 1
        elif not a.trace:
            n_zero += 1
        n_agree += row["equal_trace"]
    n = len(rows)
    for d in range(1, D + 1):
        sub = [r for r in rows if r["degree"] <= d]
        trajectory.append(sum(r["equal_trace"] for r in sub) / len(sub) if sub else None)
    lo = max(1, (D + 1) // 2)
    window = [x for x in trajectory[lo - 1:] if x is not None]
    character = {
        "gamma": str(gamma),
        "places": n,
        "trace_relation_holds": n_trace_rel == n,
        "norm_relation_holds": n_norm_rel == n,
        "chi_trivial_density": n_chi1 / n if n else 0.0,
        "zero_trace_nontrivial_density": n_zero / n if n else 0.0,
        "agreement_density": n_agree / n if n else 0.0,
        "decomposition_exact": n_agree == n_chi1 + n_zero,
        "agreement_trajectory": trajectory,
        "upper_density_estimate": max(window) if window else None,
    }
    witnesses = [r for r in rows if not r["equal_trace"]][:WITNESS_CAP]
    return AgreementReport(
        max_degree=D,
        mode="trace",
        per_degree=_per_degree(rows, skipped, D, "equal_trace"),
        density=n_agree / n if n else 0.0,
        witnesses=[{k: w[k] for k in ("degree", "place", "a_P_phi1", "a_P_phi2", "symbol")} for w in witnesses],
        rows=rows,
        character=character,
    )
