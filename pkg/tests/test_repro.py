import csv
import io
import json

import pytest

from radosearch.repro import (
    CONJECTURE_CASES,
    INCONCLUSIVE,
    MATCH,
    MISMATCH,
    CLAIM_CONFIRMED_LR_AGREES,
    CLAIM_CONFIRMED_LR_REFUTED,
    Report,
    Row,
    Searcher,
    conjecture_rows,
    positive_rows,
    reproduce_report,
)
from radosearch.store import CertificateStore


@pytest.fixture(scope="module")
def store(tmp_path_factory):
    return CertificateStore(tmp_path_factory.mktemp("store"))


@pytest.mark.parametrize("scope", ["basics", "negative", "positive"])
def test_scope_consistent(scope, store):
    rep = reproduce_report(scope, store=store)
    assert rep.ok and not rep.inconclusive
    assert rep.rows and {r.scope for r in rep.rows} == {scope}
    assert any(r.status == MATCH for r in rep.rows)


def test_scope_aliases(store):
    assert {r.scope for r in reproduce_report("section-2", store=store).rows} == {"negative"}
    assert {r.scope for r in reproduce_report("section-3", store=store).rows} == {"positive"}
    with pytest.raises(ValueError):
        reproduce_report("section-9")


def test_lr_claim_rows():
    rows = positive_rows(Searcher(), lr_range=range(1, 16))
    lr = {r.equation: r for r in rows if r.other_value is not None}
    b2 = lr["x1 + x2 = x3 + 2"]
    assert (b2.formula_value, b2.search_value, b2.other_value) == (2, 2, 1)
    assert b2.status == CLAIM_CONFIRMED_LR_REFUTED
    assert lr["x1 + x2 = x3 + 1"].status == CLAIM_CONFIRMED_LR_AGREES
    assert lr["x1 + x2 = x3 + 15"].status == CLAIM_CONFIRMED_LR_AGREES


def test_conjecture_rows_small():
    cases = [((1, 1), 2, (-2, -1, 3, 9)), ((2, 1), 2, (-2, 4))]
    rows = conjecture_rows(Searcher(), cases)
    assert [r.status for r in rows] == [MATCH] * len(rows)
    assert len(rows) == 2 + 4 + 2


def test_conjecture_cases_respect_divisibility():
    for coeffs, _, shifts in CONJECTURE_CASES:
        s = sum(coeffs) - 1
        assert all(b != 0 and b % s == 0 for b in shifts)


def test_inconclusive_row_under_tiny_budget():
    rows = conjecture_rows(Searcher(budget=0.01), [((2, 1), 3, (-2,))])
    assert rows[-1].status == INCONCLUSIVE


def test_report_ok_flags():
    rep = Report("x", [Row("x", "c", "e", 2, 5, 5, MATCH)])
    assert rep.ok and not rep.inconclusive
    rep.rows.append(Row("x", "c", "e", 2, 5, None, INCONCLUSIVE))
    assert rep.ok and rep.inconclusive
    rep.rows.append(Row("x", "c", "e", 2, 5, 6, MISMATCH))
    assert not rep.ok


def test_exports(store):
    rep = reproduce_report("basics", store=store)
    table = list(csv.DictReader(io.StringIO(rep.to_csv())))
    assert len(table) == len(rep.rows)
    assert table[0]["scope"] == "basics"
    doc = json.loads(rep.to_json())
    assert doc["scope"] == "basics" and len(doc["rows"]) == len(rep.rows)
    md = rep.to_markdown()
    assert md.startswith("| scope |") and "all rows consistent" in md
