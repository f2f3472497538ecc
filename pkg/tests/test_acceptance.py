"""Acceptance checks, one test per criterion.

Each test records a line ``criterion N: PASS`` or ``criterion N: FAIL`` with
the measured numbers and elapsed time, then asserts.  The lines are printed
in a summary section at the end of every pytest run.  Run on its own with

    pytest tests/test_acceptance.py -v

or as a script: ``python tests/test_acceptance.py``.
"""

import json
import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from drinfeld_lab.algebra.fields import ExtensionField, FieldContext  # noqa: E402
from drinfeld_lab.algebra.linalg import FiniteMatrix  # noqa: E402
from drinfeld_lab.algebra.parse import parse_poly  # noqa: E402
from drinfeld_lab.algebra.places import make_place, places_up_to, residue_field  # noqa: E402
from drinfeld_lab.algebra.poly import FunctionField, random_poly  # noqa: E402
from drinfeld_lab.cli import main as cli_main  # noqa: E402
from drinfeld_lab.drinfeld import has_good_reduction, make_drinfeld, reduce_at, sparse_phi_image, twist2  # noqa: E402
from drinfeld_lab.errors import CharacteristicDivision  # noqa: E402
from drinfeld_lab.experiments.chebotarev import chebotarev_report, smo_experiment  # noqa: E402
from drinfeld_lab.experiments.newton import charpoly_from_elementary, newton_reconstruct, power_traces  # noqa: E402
from drinfeld_lab.experiments.scan import scan_charpolys, scan_traces, twist_agreement  # noqa: E402
from drinfeld_lab.frobenius import charpoly_at, verify_charpoly, weil_det_check  # noqa: E402
from drinfeld_lab.isogeny import isogeny_solve, verify_isogeny  # noqa: E402
from drinfeld_lab.torsion import torsion_frobenius_matrix  # noqa: E402
from support import (  # noqa: E402
    ACCEPTANCE_LINES,
    Timer,
    field_law_failures,
    poly_ring_failures,
    random_rational,
    skew_ring_failures,
    tau_rule_failures,
)

F3 = FieldContext(3)
T3 = parse_poly(F3, "T")
WEIL_MODULES = (["1", "1"], ["T", "T+1"], ["T^2+2", "2*T+1"])


def report(n, ok, detail, elapsed, limit=None):
    within = limit is None or elapsed < limit
    verdict = "PASS" if ok and within else "FAIL"
    budget = f"{elapsed:.1f}s" if limit is None else f"{elapsed:.1f}s of {limit}s"
    line = f"criterion {n}: {verdict} ({detail}; {budget})"
    ACCEPTANCE_LINES.append(line)
    print(line, flush=True)
    return ok and within


def good_places(modules, D):
    return [P for P in places_up_to(modules[0].ctx, D) if all(has_good_reduction(m, P) for m in modules)]


def test_criterion_01_algebra_laws():
    r = random.Random(1)
    f9 = FieldContext(3, 2)
    f3_4 = ExtensionField(F3, parse_poly(F3, "T^4+T+2").c)
    K = residue_field(parse_poly(F3, "T^3+2*T+1"))
    F = FunctionField(F3)
    with Timer() as t:
        failures = {
            "F_3": field_law_failures(F3, lambda g: g.randrange(3), 500, r),
            "F_9": field_law_failures(f9, lambda g: g.randrange(9), 500, r),
            "F_81": field_law_failures(f3_4, f3_4.random_element, 500, r),
            "A": poly_ring_failures(F3, 500, r),
            "F": field_law_failures(F, lambda g: random_rational(F3, g, 2), 500, r),
            "skew": skew_ring_failures(K, K.random_element, 500, r),
        }
    bad = {k: len(v) for k, v in failures.items() if v}
    assert report(1, not bad, f"500 cases x {len(failures)} structures, failures {bad or 0}", t.elapsed, 10)


def test_criterion_02_tau_rule():
    r = random.Random(2)
    F = FunctionField(F3)
    f9 = ExtensionField(F3, parse_poly(F3, "T^2+1").c)
    with Timer() as t:
        bad = tau_rule_failures(F, lambda g: random_rational(F3, g), 200, r)
        bad += tau_rule_failures(f9, f9.random_element, 200, r)
    assert report(2, not bad, f"400 alphas, {len(bad)} failures", t.elapsed, 1)


def test_criterion_03_homomorphism():
    r = random.Random(3)
    modules = [make_drinfeld(F3, len(c), c) for c in (["1"], ["T+1"], ["1", "1"], ["T", "T+1"])]
    bad = 0
    with Timer() as t:
        for i in range(100):
            phi = modules[i % len(modules)]
            a, b = random_poly(F3, 4, r), random_poly(F3, 4, r)
            if sparse_phi_image(phi, a * b) != sparse_phi_image(phi, a) * sparse_phi_image(phi, b):
                bad += 1
    assert report(3, bad == 0, f"100 pairs, ranks 1-2, {bad} failures", t.elapsed, 10)


def test_criterion_04_torsion_cardinality():
    cases = [
        (FieldContext(2), ["1"]), (FieldContext(2), ["T", "T+1"]),
        (F3, ["T+1"]), (F3, ["1", "1"]),
    ]
    checked = bad = 0
    with Timer() as t:
        for ctx, coeffs in cases:
            phi = make_drinfeld(ctx, len(coeffs), coeffs)
            for P in good_places([phi], 3):
                phiR = reduce_at(phi, P)
                for ell in places_up_to(ctx, 1):
                    if ell.generator == P.generator:
                        continue
                    data = torsion_frobenius_matrix(phiR, ell)
                    checked += 1
                    bad += data.cardinality != ctx.q ** phi.rank
    assert report(4, bad == 0, f"{checked} (P, ell) pairs, {bad} wrong sizes", t.elapsed, 60)


def test_criterion_05_charpoly_verification():
    phi = make_drinfeld(F3, 2, ["T", "T+1"])
    bad = []
    with Timer() as t:
        data, _ = scan_charpolys([phi], 5)
        for P, (cp,) in data:
            ok = cp.verified and verify_charpoly(reduce_at(phi, P), cp)
            ok = ok and cp.trace.degree <= P.degree // 2
            quo, rem = divmod(cp.norm, P.generator)
            ok = ok and not rem and quo.degree == 0
            if not ok:
                bad.append(str(P))
    assert report(5, not bad, f"{len(data)} places, failures {bad[:5]}", t.elapsed, 120)


def test_criterion_06_weil_determinant():
    bad, n = [], 0
    with Timer() as t:
        for coeffs in WEIL_MODULES:
            phi = make_drinfeld(F3, 2, coeffs)
            for P in good_places([phi], 5):
                n += 1
                if not weil_det_check(phi, P, sign=1):
                    bad.append((coeffs, str(P)))
    assert report(6, not bad, f"{n} (module, place) pairs, sign +1, failures {bad[:3]}", t.elapsed, 120)


def test_criterion_07_mod_ell_consistency():
    ell = make_place(T3)
    bad, n = [], 0
    with Timer() as t:
        for coeffs in (["1", "1"], ["T+1", "2"]):
            phi = make_drinfeld(F3, 2, coeffs)
            for P in good_places([phi], 4):
                if P.generator == T3:
                    continue
                n += 1
                data = torsion_frobenius_matrix(reduce_at(phi, P), ell)
                if data.frobenius.charpoly() != charpoly_at(phi, P).reduce_mod(ell):
                    bad.append(str(P))
    assert report(7, not bad, f"{n} places, mismatches {bad[:5]}", t.elapsed, 120)


def test_criterion_08_newton():
    r = random.Random(8)
    bad = raised = expected = 0
    with Timer() as t:
        for _ in range(200):
            p = r.choice([3, 5, 7])
            F = FieldContext(p)
            n = r.randint(2, p - 1)
            M = FiniteMatrix(F, [[r.randrange(p) for _ in range(n)] for _ in range(n)])
            cp = charpoly_from_elementary(F, newton_reconstruct(F, power_traces(M, n), n))
            bad += cp != list(M.charpoly())
        for p in (2, 3, 5, 7):
            F = FieldContext(p)
            for n in range(max(2, p), 9):
                expected += 1
                M = FiniteMatrix(F, [[r.randrange(p) for _ in range(n)] for _ in range(n)])
                try:
                    newton_reconstruct(F, power_traces(M, n), n)
                except CharacteristicDivision:
                    raised += 1
    ok = bad == 0 and raised == expected
    assert report(8, ok, f"200 matrices, {bad} mismatches; {raised}/{expected} p <= n cases raised",
                  t.elapsed, 10)


def _pipeline(phi1, phi2, D, N):
    scan = scan_traces(phi1, phi2, D, mode="charpoly")
    u = isogeny_solve(phi1, phi2, N)
    ok_u = u is not None and verify_isogeny(phi1, phi2, u)
    return scan.density, u, ok_u


def test_criterion_09a_twist_pipeline():
    phi = make_drinfeld(F3, 2, ["T", "T+1"])
    delta = parse_poly(F3, "T+1")
    with Timer() as t:
        density, u, ok_u = _pipeline(phi, twist2(phi, delta ** (F3.q - 1)), 5, 2)
    ok = density == 1.0 and ok_u
    assert report("9 (twist by delta^(q-1))", ok, f"charpoly agreement {density:.3f}, u = {u}", t.elapsed, 60)


@pytest.mark.xfail(strict=True, reason="phi and its coefficientwise q-power are not isogenous for "
                   "non-constant coefficients; see the decisions ledger")
def test_criterion_09b_frobenius_conjugate_pipeline():
    phi = make_drinfeld(F3, 2, ["T", "T+1"])
    with Timer() as t:
        density, u, ok_u = _pipeline(phi, phi.frobenius_conjugate(), 5, 2)
    ok = density == 1.0 and ok_u
    assert report("9 (coefficientwise q-power)", ok, f"charpoly agreement {density:.3f}, u = {u}",
                  t.elapsed, 60)


def test_criterion_10_twist_character():
    phi = make_drinfeld(F3, 2, ["1", "1"])
    with Timer() as t:
        exact = twist_agreement(phi, T3, 6).character
        big = twist_agreement(phi, T3, 8).character
    relations = exact["trace_relation_holds"] and exact["norm_relation_holds"]
    decomposes = exact["decomposition_exact"] and big["decomposition_exact"]
    target = 0.5 + big["zero_trace_nontrivial_density"]
    close = abs(big["agreement_density"] - target) <= 0.1
    detail = (f"relations {relations} at {exact['places']} places, decomposition {decomposes}, "
              f"D=8 agreement {big['agreement_density']:.4f} vs {target:.4f}")
    assert report(10, relations and decomposes and close, detail, t.elapsed, 300)


def test_criterion_11_carlitz_chebotarev():
    carlitz = make_drinfeld(F3, 1, ["1"])
    with Timer() as t:
        rep = chebotarev_report(carlitz, make_place(T3), 8)
    freqs = [round(e["empirical"], 4) for e in rep.entries]
    ok = rep.group_order == 2 and all(abs(e["empirical"] - 0.5) <= 0.1 for e in rep.entries)
    assert report(11, ok, f"{rep.places} places, frequencies {freqs}", t.elapsed, 120)


def test_criterion_12_smo():
    phi = make_drinfeld(F3, 2, ["1", "1"])
    with Timer() as t:
        same = smo_experiment(phi, phi, T3, 6)
        tw = smo_experiment(phi, twist2(phi, T3), T3, 6, twist_gamma=T3)
    ok = same.exact_proportion == 1.0 and same.deviation <= 0.1 and tw.deviation <= 0.1
    detail = (f"self exact {same.exact_proportion} dev {same.deviation:.4f}; "
              f"twist exact {tw.exact_proportion} (|G| = {tw.group_order}) dev {tw.deviation:.4f}")
    assert report(12, ok, detail, t.elapsed, 300)


def test_criterion_13_determinism(tmp_path):
    phi = {"p": 3, "rank": 2, "coeffs": ["T", "T+1"]}
    pair = {"p": 3, "modules": [phi, {"p": 3, "rank": 2, "coeffs": ["1", "1"]}]}
    carlitz = {"p": 3, "rank": 1, "coeffs": ["1"]}
    cfgs = {}
    for name, data in (("phi", phi), ("pair", pair), ("carlitz", carlitz)):
        cfgs[name] = tmp_path / f"{name}.json"
        cfgs[name].write_text(json.dumps(data))
    commands = [
        ["charpoly", "--config", cfgs["phi"], "-D", "3"],
        ["scan", "--config", cfgs["pair"], "-D", "3", "--mode", "charpoly"],
        ["twist", "--config", cfgs["phi"], "--gamma", "T", "-D", "3"],
        ["isogeny", "--config", cfgs["pair"], "--tau-bound", "1"],
        ["torsion", "--config", cfgs["phi"], "--place", "T+2", "--ell", "T"],
        ["chebotarev", "--config", cfgs["carlitz"], "--ell", "T", "-D", "4"],
        ["smo", "--config", cfgs["phi"], "--gamma", "T", "--ell", "T", "-D", "3"],
        ["density", "--config", cfgs["phi"], "--gamma", "T", "-D", "4"],
        ["newton", "-p", "5", "-n", "3", "--traces", "1,2,3"],
    ]
    differing = []
    with Timer() as t:
        for argv in commands:
            argv = [str(a) for a in argv]
            outs = [tmp_path / f"{argv[0]}-{k}" for k in range(2)]
            for out in outs:
                assert cli_main(argv + ["--out", str(out)]) == 0
            for f in sorted(outs[0].iterdir()):
                if f.read_bytes() != (outs[1] / f.name).read_bytes():
                    differing.append(f"{argv[0]}/{f.name}")
    ok = not differing
    assert report(13, ok, f"{len(commands)} commands run twice, differing {differing or 'none'}", t.elapsed)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
