import pytest

from radosearch.bounds import PreconditionError
from radosearch.registry import (
    COROLLARIES,
    KnownValue,
    Source,
    all_ones_identities,
    all_ones_neg,
    all_ones_pos,
    conjecture_check,
    conjecture_value,
    corollary_value,
    is_t_regular_candidate,
    known_R,
    registry_entries,
    schur_pos_3,
    schur_pos_3_lr_claim,
    three_color_neg,
)
from radosearch.equation import Equation
from radosearch.search import rado_number
from radosearch.store import Certificate, CertificateStore


def test_known_schur_numbers():
    assert known_R((1, 1), 2).value == 5
    assert known_R((1, 1), 3).value == 14
    assert known_R((1, 1), 5).value == 161
    assert known_R((1, 1), 3).source is Source.CITED


def test_known_all_ones_two_colors():
    hit = known_R((1, 1, 1, 1), 2)
    assert hit.value == 19 and hit.source is Source.CITED
    assert known_R((1, 1, 1), 2).value == 11


def test_known_algebraic():
    hit = known_R((1, 1, 1), 3)
    assert hit.value == 43 and hit.source is Source.DERIVED_BY_ALGEBRA
    assert known_R((1, 1, 1, 1), 3).value == 94
    assert known_R((1, 1, 1, 1, 1), 3).value == 173


def test_unknown_is_none():
    assert known_R((2, 1), 3) is None
    assert known_R((1, 1), 6) is None


def test_store_backed_lookup(tmp_path):
    store = CertificateStore(tmp_path)
    assert known_R((2, 1), 2, store) is None
    res = rado_number(Equation((2, 1), 0), 2, 30)
    store.store(Certificate("good", (2, 1), 0, 2, res.witness.colors, exact=True))
    hit = known_R((2, 1), 2, store)
    assert hit.value == res.value == 11
    assert hit.source is Source.DERIVED_BY_SEARCH and hit.witness == res.witness


def test_registry_values_match_search():
    # entries small enough to search agree with the engine
    for coeffs, t in [((1, 1), 2), ((1, 1), 3), ((1, 1, 1), 2), ((1, 1, 1, 1), 2), ((1, 1, 1), 3)]:
        assert rado_number(Equation(coeffs, 0), t, 60).value == known_R(coeffs, t).value


def test_known_value_validation():
    with pytest.raises(ValueError):
        KnownValue((1, 1), 2, 5, Source.CITED)
    with pytest.raises(ValueError):
        KnownValue((1, 1), 2, 5, Source.DERIVED_BY_SEARCH, "x")
    assert all(e.citation for e in registry_entries())


def test_closed_forms():
    assert all_ones_neg(3, 1) == 9
    assert all_ones_neg(3, 2) == 13
    assert all_ones_neg(4, 1) == 21
    assert three_color_neg(2, 1) == 27
    assert three_color_neg(2, 5) == 79
    assert three_color_neg(3, 1) == 85
    assert all_ones_pos(3, 14) == 12
    assert schur_pos_3(2) == 2
    assert schur_pos_3(14) == 14
    assert schur_pos_3(15) == 14
    assert schur_pos_3(28) == 27


def test_lr_claim_differs():
    assert schur_pos_3_lr_claim(2) == 1 != schur_pos_3(2)
    assert schur_pos_3_lr_claim(1) == schur_pos_3(1) == 1


def test_corollary_value():
    assert corollary_value("all_ones_neg", k=3, m=2) == 13
    assert corollary_value("all_ones_neg", k=4, b=2) == 21
    assert corollary_value("three_color_neg", num_left=2, m=5) == 79
    assert corollary_value("schur_pos_3", b=28) == 27
    assert set(COROLLARIES) == {"all_ones_neg", "three_color_neg", "all_ones_pos", "schur_pos_3"}
    with pytest.raises(KeyError):
        corollary_value("nope", b=1)
    with pytest.raises(PreconditionError):
        corollary_value("all_ones_neg", k=4, b=3)
    with pytest.raises(PreconditionError):
        corollary_value("three_color_neg", num_left=7, m=1)


def test_conjecture_value():
    assert conjecture_value((1, 1), -5, 14) == 79
    assert conjecture_value((1, 1), 28, 14) == 27
    assert conjecture_value((1, 1, 1), -2, 11) == 21
    with pytest.raises(PreconditionError):
        conjecture_value((1, 1), 0, 5)
    with pytest.raises(PreconditionError):
        conjecture_value((2, 1), 3, 11)


@pytest.mark.parametrize("k", [3, 4, 5, 6])
@pytest.mark.parametrize("m", [1, 2, 3, 7, 20])
def test_all_ones_identities(k, m):
    assert all_ones_identities(k, m)


def test_conjecture_check_agrees():
    rep = conjecture_check((1, 1), 2, (-2, -1, 1, 3, 9), cap=60)
    assert rep.verdict == "agree"
    assert rep.excellent_length == 4 and rep.excellence_matches
    assert [r.searched for r in rep.rows] == [13, 9, 1, 3, 8]
    assert all(r.conjectured == r.searched for r in rep.rows)


def test_conjecture_check_uses_store(tmp_path):
    store = CertificateStore(tmp_path)
    conjecture_check((2, 1), 2, (-2, 4), cap=60, store=store)
    keys = {c.key for c in store}
    assert "good_c2-1_b-2_t2_n20" in keys and "good_c2-1_b0_t2_n10" in keys
    again = conjecture_check((2, 1), 2, (-2, 4), cap=60, store=store)
    assert again.verdict == "agree"
    assert again.rows[0].R_source == "DerivedBySearch"


def test_conjecture_check_inconclusive_when_cap_small():
    rep = conjecture_check((1, 1), 2, (-2,), cap=10)
    assert rep.rows[0].verdict == "inconclusive"
    assert rep.verdict == "inconclusive"


def test_conjecture_check_rejects_bad_shift():
    with pytest.raises(PreconditionError):
        conjecture_check((2, 1), 2, (3,), cap=20)


def test_regular_candidate():
    assert is_t_regular_candidate((1, 1))
    assert is_t_regular_candidate((3, 1))
    assert not is_t_regular_candidate((2, 2))
