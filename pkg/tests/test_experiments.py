import json

import pytest

from drinfeld_lab.algebra import linalg
from drinfeld_lab.algebra.fields import FieldContext
from drinfeld_lab.algebra.linalg import FiniteMatrix
from drinfeld_lab.algebra.parse import parse_poly
from drinfeld_lab.algebra.places import make_place, places_up_to, power_residue_symbol, residue_field
from drinfeld_lab.drinfeld import make_drinfeld, twist2
from drinfeld_lab.errors import BadInput, CharacteristicDivision, DimensionMismatch, GroupCapExceeded, RankMismatch
from drinfeld_lab.experiments.chebotarev import chebotarev_report, smo_experiment
from drinfeld_lab.experiments.density import density_estimate
from drinfeld_lab.experiments.groups import conjugacy_classes, intertwiner_solve, matrix_group
from drinfeld_lab.experiments.newton import charpoly_from_elementary, newton_reconstruct, power_traces
from drinfeld_lab.experiments.reports import rows_to_csv, to_json
from drinfeld_lab.experiments.scan import scan_traces, twist_agreement
from support import rng

F3 = FieldContext(3)


def random_matrix(K, n, r):
    return FiniteMatrix(K, [[K.random_element(r) if hasattr(K, "random_element") else r.randrange(K.order)
                             for _ in range(n)] for _ in range(n)])


def random_invertible(K, n, r):
    while True:
        M = random_matrix(K, n, r)
        if M.is_invertible():
            return M


def det_oracle(F, M, c):
    """det(c I - M) by cofactor expansion, independent of the library's elimination."""
    n = len(M)
    A = [[F.sub(c if i == j else 0, M[i][j]) for j in range(n)] for i in range(n)]

    def det(rows):
        if len(rows) == 1:
            return rows[0][0]
        acc = 0
        for j, x in enumerate(rows[0]):
            if x:
                minor = [row[:j] + row[j + 1:] for row in rows[1:]]
                term = F.mul(x, det(minor))
                acc = F.add(acc, term) if j % 2 == 0 else F.sub(acc, term)
        return acc

    return det(A)


# density ---------------------------------------------------------------------

def test_density_of_all_and_of_nothing():
    assert density_estimate(lambda P: True, F3, 4).ratio == 1.0
    assert density_estimate(lambda P: False, F3, 4).ratio == 0.0


def test_kummer_set_has_density_one_half():
    T = parse_poly(F3, "T")
    est = density_estimate(lambda P: power_residue_symbol(T, P) == 1, F3, 8,
                           domain=lambda P: P.generator != T)
    assert abs(est.ratio - 0.5) <= 0.1
    assert len(est.trajectory) == 8 and est.upper_density() >= est.ratio - 1e-12


# newton ----------------------------------------------------------------------

def test_newton_examples():
    assert newton_reconstruct(F3, [0, 2], 2) == [0, 2]
    assert newton_reconstruct(F3, [2, 2], 2) == [2, 1]
    assert charpoly_from_elementary(F3, [2, 1]) == [1, 1, 1]  # (X - 1)^2 = X^2 - 2X + 1
    with pytest.raises(CharacteristicDivision) as info:
        newton_reconstruct(F3, [1, 2, 0], 3)
    assert info.value.k == 3


def test_newton_matches_determinant_oracle():
    r = rng(12)
    for _ in range(100):
        p = r.choice([3, 5, 7])
        F = FieldContext(p)
        n = r.randint(2, p - 1)
        M = random_matrix(F, n, r)
        cp = charpoly_from_elementary(F, newton_reconstruct(F, power_traces(M, n), n))
        assert cp == list(M.charpoly())
        for c in range(p):
            value = 0
            for k in reversed(range(n + 1)):
                value = F.add(F.mul(value, c), cp[k])
            assert value == det_oracle(F, M.rows, c)


def test_newton_refuses_p_at_most_n():
    for p in (2, 3, 5):
        F = FieldContext(p)
        for n in range(p, p + 3):
            with pytest.raises(CharacteristicDivision):
                newton_reconstruct(F, [0] * n, n)


# groups ----------------------------------------------------------------------

def test_intertwiner_examples():
    K = residue_field(parse_poly(F3, "T^2+1"))
    r = rng(13)
    Ms = [random_invertible(K, 2, r) for _ in range(3)]
    X = intertwiner_solve([(M, M) for M in Ms])
    assert X is not None and X.is_invertible()
    X0 = random_invertible(K, 2, r)
    Ns = [X0 @ M @ X0.inverse() for M in Ms]
    X = intertwiner_solve(list(zip(Ms, Ns)))
    assert X is not None
    assert all(X @ M == N @ X for M, N in zip(Ms, Ns))
    shifted = FiniteMatrix(K, [[K.add(Ms[0].rows[0][0], K.one), Ms[0].rows[0][1]], list(Ms[0].rows[1])])
    assert shifted.trace() != Ms[0].trace()
    assert intertwiner_solve([(Ms[0], shifted)]) is None
    with pytest.raises(DimensionMismatch):
        intertwiner_solve([(Ms[0], FiniteMatrix.identity(K, 3))])


def test_group_closure_and_classes():
    F = FieldContext(3)
    gens = [FiniteMatrix(F, [[1, 1], [0, 1]]), FiniteMatrix(F, [[0, 2], [1, 0]])]
    G = matrix_group(gens)
    assert len(G) == 24  # SL_2(F_3)
    classes = conjugacy_classes(G, gens)
    assert sum(len(c) for c in classes) == 24 and len(classes) == 7
    with pytest.raises(GroupCapExceeded):
        matrix_group(gens, cap=10)


# chebotarev and smo ----------------------------------------------------------

def test_carlitz_frobenius_equidistributes_mod_t():
    carlitz = make_drinfeld(F3, 1, ["1"])
    rep = chebotarev_report(carlitz, make_place(parse_poly(F3, "T")), 5)
    assert rep.group_order == 2
    assert all(abs(e["predicted"] - 0.5) < 1e-12 for e in rep.entries)
    assert rep.max_deviation <= 0.1
    assert sum(e["count"] for e in rep.entries) == rep.places


def test_chebotarev_trivial_image():
    carlitz = make_drinfeld(F3, 1, ["1"])
    ell = make_place(parse_poly(F3, "T"))
    ones = [P for P in places_up_to(F3, 3) if P.generator(0) == 1]
    for gran in ("class", "charpoly"):
        rep = chebotarev_report(carlitz, ell, 3, granularity=gran, places=ones)
        assert rep.group_order == 1 and len(rep.entries) == 1
        assert rep.entries[0]["empirical"] == 1.0 == rep.entries[0]["predicted"]
    with pytest.raises(BadInput):
        chebotarev_report(carlitz, ell, 3, granularity="bogus")


def test_smo_self_pair_is_exact():
    phi = make_drinfeld(F3, 2, ["1", "1"])
    rep = smo_experiment(phi, phi, parse_poly(F3, "T"), 3)
    assert rep.exact_proportion == 1.0 == rep.empirical_frequency
    assert rep.bases_aligned and rep.isomorphism_witnessed


def test_smo_twist_pair_uses_transported_bases():
    phi = make_drinfeld(F3, 2, ["1", "1"])
    T = parse_poly(F3, "T")
    rep = smo_experiment(phi, twist2(phi, T), T, 3, twist_gamma=T)
    assert rep.bases_aligned and rep.group_order == 48
    assert rep.exact_proportion == 0.75
    with pytest.raises(BadInput):
        smo_experiment(phi, twist2(phi, T + 1), T, 2, twist_gamma=T)
    with pytest.raises(RankMismatch):
        smo_experiment(phi, make_drinfeld(F3, 1, ["1"]), T, 2)


# scans and reports -----------------------------------------------------------

def test_scan_against_itself():
    phi = make_drinfeld(F3, 2, ["T", "T+1"])
    rep = scan_traces(phi, phi, 3, mode="charpoly")
    assert rep.density == 1.0 and all(d["density"] == 1.0 for d in rep.per_degree)
    with pytest.raises(BadInput):
        scan_traces(phi, phi, 2, mode="bogus")


def test_twist_disagrees_exactly_where_symbol_and_trace_are_nontrivial():
    phi = make_drinfeld(F3, 2, ["T+1", "1"])
    T = parse_poly(F3, "T")
    rep = twist_agreement(phi, T, 5)
    ch = rep.character
    assert ch["trace_relation_holds"] and ch["norm_relation_holds"] and ch["decomposition_exact"]
    for row in rep.rows:
        nontrivial = row["symbol"] != 1
        assert (not row["equal_trace"]) == (nontrivial and row["a_P_phi1"] != "0")


def test_square_twist_agrees_everywhere():
    phi = make_drinfeld(F3, 2, ["T+1", "1"])
    rep = twist_agreement(phi, parse_poly(F3, "(T+2)^2"), 4)
    assert rep.density == 1.0 and rep.character["chi_trivial_density"] == 1.0


def test_report_serialization_is_stable():
    phi = make_drinfeld(F3, 2, ["1", "1"])
    rep = scan_traces(phi, phi, 2)
    text = to_json(rep)
    assert json.loads(text)["density"] == 1.0
    assert text == to_json(scan_traces(phi, phi, 2))
    csv_text = rows_to_csv(rep.rows, ["degree", "place", "equal_trace"])
    assert csv_text.splitlines()[0] == "degree,place,equal_trace"
    assert "true" in csv_text


def test_parallel_scan_matches_serial():
    phi1 = make_drinfeld(F3, 2, ["T", "T+1"])
    phi2 = make_drinfeld(F3, 2, ["1", "1"])
    a = scan_traces(phi1, phi2, 3, jobs=1)
    b = scan_traces(phi1, phi2, 3, jobs=2)
    assert to_json(a) == to_json(b) and a.rows == b.rows


def test_linear_algebra_rank_of_random_matrices_over_f9():
    F9 = FieldContext(3, 2)
    r = rng(14)
    for _ in range(30):
        rows = [[r.randrange(9) for _ in range(4)] for _ in range(4)]
        ker = linalg.kernel(F9, rows, 4)
        assert linalg.rank(F9, rows) + len(ker) == 4
