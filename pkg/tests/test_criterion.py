import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dgss.criterion import (
    AuditVerdict,
    Verdict,
    anisotropy_audit,
    dgss_check,
    snf_pattern_check,
    totally_isotropic_check,
)
from dgss.graph import OrientedGraph, skew_adjacency
from dgss.linalg import matvec, transpose
from dgss.search import enumerate_oriented_graphs, random_controllable_self_converse
from dgss.spectral import graph_walk_matrix


# -- SNF pattern -------------------------------------------------------------


def test_pattern_examples():
    r = snf_pattern_check([1, 1, 1, 1, 2, 2, 18], 7)
    assert r.matches and r.d == 9 and r.ones_count == 4 and r.twos_count == 2
    r = snf_pattern_check([1, 2], 2)
    assert r.matches and r.d == 1 and r.twos_count == 0
    r = snf_pattern_check([1, 1, 2, 4], 4)
    assert not r.matches and "twice an odd" in r.failure_reason


@pytest.mark.parametrize(
    "d_list, reason",
    [
        ([1, 1, 1, 2], "leading 1"),  # n=4 wants only two 1's
        ([1, 2, 2, 6], "leading 1"),
        ([1, 1, 1, 6, 6], "positions"),
        ([1, 1, 1, 2, 0], "singular"),
    ],
)
def test_pattern_failures(d_list, reason):
    r = snf_pattern_check(d_list, len(d_list))
    assert not r.matches and reason in r.failure_reason and r.d is None


def test_pattern_n1_and_length():
    r = snf_pattern_check([1], 1)
    assert r.matches and r.d is None
    assert not snf_pattern_check([3], 1).matches
    with pytest.raises(ValueError):
        snf_pattern_check([1, 2], 3)


def test_pattern_matches_large_odd_d():
    d = 3**40 * 7
    r = snf_pattern_check([1, 1, 1, 2, 2, 2 * d], 6)
    assert r.matches and r.d == d


@pytest.mark.parametrize("n", [2, 3, 4])
def test_pattern_equivalent_to_odd_quotient(n):
    """Match iff |det W| / 2^floor(n/2) is an odd integer and the leading factors fit."""
    from dgss.linalg import determinant, smith_normal_form

    for g in enumerate_oriented_graphs(n):
        w = graph_walk_matrix(g)
        det = determinant(w)
        if det == 0:
            continue
        d = smith_normal_form(w).d
        r = snf_pattern_check(d, n)
        q, rem = divmod(abs(det), 2 ** (n // 2))
        head_ok = d[: (n + 1) // 2] == [1] * ((n + 1) // 2) and d[(n + 1) // 2 : n - 1] == [2] * (n // 2 - 1)
        assert r.matches == (rem == 0 and q % 2 == 1 and head_ok)
        if r.matches:
            assert abs(det) == 2 ** (n // 2) * r.d


# -- dgss_check --------------------------------------------------------------


def test_check_examples_3_4(example3, example4):
    for g in (example3, example4):
        rep = dgss_check(g)
        assert rep.verdict is Verdict.CERTIFIED
        assert rep.snf == [1, 1, 1, 1, 2, 2, 18]
        assert abs(rep.det_w) == 72
        assert rep.pattern.d == 9
        assert rep.audits == []


def test_check_cyclic_triangle(cyclic_triangle):
    # row sums of S are all zero, so S e = 0
    assert all(sum(r) == 0 for r in skew_adjacency(cyclic_triangle))
    rep = dgss_check(cyclic_triangle)
    assert rep.verdict is Verdict.SINGULAR_WALK_MATRIX
    assert rep.self_converse and rep.det_w == 0


def test_check_not_self_converse():
    g = OrientedGraph.from_arcs(4, [(0, 1), (0, 2), (1, 2), (0, 3)])
    assert dgss_check(g).verdict is Verdict.NOT_SELF_CONVERSE


def test_check_pattern_mismatch(example1):
    rep = dgss_check(example1)
    assert rep.verdict is Verdict.PATTERN_MISMATCH
    assert rep.snf == [1, 1, 5, 10, 10]
    assert rep.pattern.failure_reason


def test_check_single_vertex():
    rep = dgss_check(OrientedGraph(1, frozenset()))
    assert rep.verdict is Verdict.CERTIFIED and rep.pattern.d is None


def test_check_with_audit(example3):
    rep = dgss_check(example3, audit=True)
    assert [a.p for a in rep.audits] == [3]
    (a,) = rep.audits
    assert a.verdict is AuditVerdict.ANISOTROPIC and a.lemma7_holds
    assert rep.unaudited_cofactor == 1


def test_check_audit_reports_unfactored_cofactor(example3):
    rep = dgss_check(example3, audit=True, factor_bound=2)
    assert rep.audits == [] and rep.unaudited_cofactor == 9


def test_report_json_schema(example3):
    js = dgss_check(example3, audit=True).to_json()
    assert list(js) == [
        "verdict", "n", "det_w", "snf", "self_converse", "anti_automorphism",
        "pattern", "audits", "unaudited_cofactor",
    ]
    assert js["verdict"] == "Certified"
    assert js["det_w"] == "-72"
    assert js["snf"] == ["1", "1", "1", "1", "2", "2", "18"]
    assert js["anti_automorphism"] == [3, 1, 5, 0, 6, 2, 4]
    assert js["pattern"] == {"matches": True, "d": "9", "reason": None}
    assert js["audits"] == [{"p": "3", "rank_p": 6, "verdict": "Anisotropic", "vTv": js["audits"][0]["vTv"], "lemma7": True}]
    assert js["audits"][0]["vTv"] != "0"
    assert js["unaudited_cofactor"] == "1"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_certified_consistency(n):
    for g in enumerate_oriented_graphs(n):
        rep = dgss_check(g)
        if rep.verdict is Verdict.CERTIFIED:
            assert rep.self_converse and rep.det_w != 0 and rep.pattern.matches
            assert abs(rep.det_w) == 2 ** (n // 2) * rep.pattern.d


# -- anisotropy audit --------------------------------------------------------


def test_audit_examples(example3, single_arc):
    a = anisotropy_audit(example3, 3)
    assert a.rank_p == 6 and a.verdict is AuditVerdict.ANISOTROPIC and a.lemma7_holds
    wt = transpose(graph_walk_matrix(example3))
    assert all(x % 3 == 0 for x in matvec(wt, a.kernel_vector))
    assert all(x % 3 == 0 for x in matvec(skew_adjacency(example3), a.kernel_vector))

    a = anisotropy_audit(example3, 5)
    assert a.rank_p == 7 and a.verdict is AuditVerdict.NOT_APPLICABLE and a.kernel_vector is None

    a = anisotropy_audit(single_arc, 3)
    assert a.verdict is AuditVerdict.NOT_APPLICABLE


def test_audit_errors(example3, cyclic_triangle):
    with pytest.raises(ValueError):
        anisotropy_audit(example3, 2)
    with pytest.raises(ValueError):
        anisotropy_audit(example3, 9)
    with pytest.raises(ValueError, match="singular"):
        anisotropy_audit(cyclic_triangle, 3)


def test_audit_scaling_invariance():
    checked = 0
    for g, _, _ in random_controllable_self_converse(60, 9, seed=2):
        for p in (3, 5, 7, 11, 13):
            a = anisotropy_audit(g, p)
            if a.kernel_vector is None:
                continue
            checked += 1
            for c in range(1, p):
                v = [c * x % p for x in a.kernel_vector]
                assert (sum(x * x for x in v) % p != 0) == (a.verdict is AuditVerdict.ANISOTROPIC)
    assert checked > 0


def test_isotropic_kernel_exists_without_self_converseness():
    """Anisotropy is special to self-converse graphs: find an isotropic non-self-converse case."""
    from dgss.graph import anti_automorphism
    from dgss.linalg import determinant

    found = False
    for g in enumerate_oriented_graphs(4):
        if anti_automorphism(g) is not None or determinant(graph_walk_matrix(g)) == 0:
            continue
        for p in (3, 5, 7, 11, 13):
            if anisotropy_audit(g, p).verdict is AuditVerdict.ISOTROPIC:
                found = True
                break
        if found:
            break
    assert found


# -- totally isotropic -------------------------------------------------------


def test_totally_isotropic_examples():
    assert totally_isotropic_check([[1, 2]], 5)
    assert not totally_isotropic_check([[1, 0]], 7)
    assert totally_isotropic_check([[0, 0, 0]], 3)
    assert not totally_isotropic_check([[1, 2], [1, 3]], 5)
    with pytest.raises(ValueError):
        totally_isotropic_check([[1, 2], [1]], 5)
    with pytest.raises(ValueError):
        totally_isotropic_check([], 5)


@settings(max_examples=100)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=5))
def test_totally_isotropic_scalar_multiples(v):
    # span of a single vector is totally isotropic iff v.v = 0
    assert totally_isotropic_check([v, [3 * x for x in v]], 7) == (sum(x * x for x in v) % 7 == 0)
