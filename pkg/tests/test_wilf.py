import itertools
import json

import pytest

from patwilf import (
    D4, BudgetError, ContractError, DomainError, Permutation, Verdict, build_multi_pair,
    build_pair, check_equiv, d4_apply, search_nontrivial, transpose, trivial_witness,
)

from helpers import avoiders_312


def P(s):
    return Permutation.parse(s)


def test_check_equiv_counterexample_pair():
    report = check_equiv(["312", "32415"], ["312", "24315"], "inv", 10)
    assert report.verdict is Verdict.EQUIVALENT_UP_TO_N
    assert report.trivial_witness is None
    assert report.summary() == "EQUIVALENT up to n=10; nontrivial"
    assert [n for n, *_ in report.per_n] == list(range(11))


def test_check_equiv_identity():
    report = check_equiv(["312", "1432"], ["1432", "312"], "des", 7)
    assert report.equivalent and report.trivial_witness is D4.R0


def test_check_equiv_distinguishes():
    report = check_equiv(["312", "1432"], ["312", "2314", "2143"], "inv", 5)
    assert report.verdict is Verdict.DISTINGUISHED_AT_N
    assert report.distinguished_at == 4
    _, left, right, equal = report.per_n[4]
    assert (left.eval_at_one(), right.eval_at_one(), equal) == (13, 12, False)
    assert all(eq for _, _, _, eq in report.per_n[:4])


def test_check_equiv_oracle_fallback():
    # no 312: enumeration is used; 123 and 321 first differ at n = 3
    report = check_equiv(["123"], ["321"], "inv", 5)
    assert report.method == "brute"
    assert report.distinguished_at == 3
    assert report.trivial_witness is None
    # classical: 132 and 213 are related by R180, which preserves inv
    report = check_equiv(["132"], ["213"], "inv", 6)
    assert report.equivalent and report.trivial_witness is D4.R180
    with pytest.raises(BudgetError):
        check_equiv(["123"], ["321"], "inv", 12)


def test_report_json():
    report = check_equiv(["312", "32415"], ["312", "24315"], "inv", 4)
    data = json.loads(report.to_json())
    assert data["left"] == ["312", "32415"] and data["witness"] is None
    assert data["verdict"] == "EQUIVALENT_UP_TO_N"
    assert data["per_n"][3] == {"n": 3, "left": ["1", "2", "1", "1"], "right": ["1", "2", "1", "1"], "equal": True}


def test_trivial_witness_examples():
    left = [P("312"), P("1432")]
    right = [transpose(p) for p in left]
    assert trivial_witness(left, right, "inv") is (D4.R0 if right == left else D4.r_m1)
    assert trivial_witness(["312", "32415"], ["312", "24315"], "inv") is None
    assert trivial_witness(["312"], ["312"], "des") is D4.R0


def test_trivial_witness_maps_left_to_right():
    pats = [P("312"), P("1432")]
    for f in D4:
        image = [d4_apply(f, p) for p in pats]
        w = trivial_witness(pats, image, "inv", symmetries=list(D4))
        assert w is not None
        assert sorted(d4_apply(w, p) for p in pats) == sorted(image)


def test_trivial_witness_symmetric():
    sets = [("312", p) for p in avoiders_312(4)] + [("312", p) for p in avoiders_312(5)[::3]]
    for stat in ("inv", "des"):
        for a, b in itertools.combinations(sets, 2):
            assert (trivial_witness(a, b, stat) is None) == (trivial_witness(b, a, stat) is None)


def test_build_pair_examples():
    assert build_pair(["213", "e"], [True, False]) == (P("32415"), P("24315"))
    blocks = ["21", "1"]
    pi, pi2 = build_pair(blocks, [True, False])
    assert pi == pi2 == P("32154")
    for blocks in (["1", "e"], ["132", "21"], ["e"]):
        a, b = build_pair(blocks, [False] * len(blocks))
        assert a == b
    with pytest.raises(DomainError):
        build_pair(["312"], [True])
    with pytest.raises(ValueError):
        build_pair(["1"], [])


def test_build_multi_pair_examples():
    assert build_multi_pair([["12", "e"], ["1", "1"]]) == ([P("2314"), P("2143")], [P("2314"), P("2143")])
    assert build_multi_pair([["213", "e"]], [[True, False]]) == ([P("32415")], [P("24315")])
    left, right = build_multi_pair([["213", "e"], ["1", "1"]], [[True, False], [False, False]])
    assert (left, right) == ([P("32415"), P("2143")], [P("24315"), P("2143")])
    report = check_equiv(["312", *left], ["312", *right], "inv", 9)
    assert report.equivalent


def test_search_finds_counterexample():
    reports = search_nontrivial("inv", 5, 2, 9)
    assert reports
    assert any(r.covers(["312", "32415"], ["312", "24315"]) for r in reports)
    for r in reports:
        assert r.verdict is Verdict.EQUIVALENT_UP_TO_N
        assert r.trivial_witness is None
        assert trivial_witness(r.left, r.right, "inv") is None
        assert r.corollary_guaranteed


def test_search_short_patterns_is_empty():
    assert search_nontrivial("inv", 3, 2, 9) == []


def test_search_dedups_orbits():
    reports = search_nontrivial("des", 5, 2, 8)
    keys = [r.orbit[0] for r in reports]
    assert len(keys) == len(set(keys))
    for a, b in itertools.combinations(reports, 2):
        assert not a.covers(b.left, b.right)


def test_search_budget_and_contract():
    with pytest.raises(BudgetError):
        search_nontrivial("inv", 7, 3, 9, max_candidates=10)
    with pytest.raises(BudgetError):
        search_nontrivial("inv", 5, 2, 40)
    with pytest.raises(ContractError):
        search_nontrivial("maj", 5, 2, 6)


@pytest.mark.parametrize("stat", ["inv", "des"])
def test_construction_sound(stat):
    # every block-transpose pair up to length 5 agrees, trivial or not
    by_size = {s: avoiders_312(s) for s in range(5)}
    for r in (1, 2):
        for sizes in itertools.product(range(5), repeat=r):
            if sum(sizes) + r > 5:
                continue
            for blocks in itertools.product(*(by_size[s] for s in sizes)):
                for flips in itertools.product((False, True), repeat=r):
                    pi, pi2 = build_pair(blocks, flips)
                    assert check_equiv(["312", pi], ["312", pi2], stat, 8).equivalent, (blocks, flips)
