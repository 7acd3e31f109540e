import json

import pytest

from monomial_mckay.errors import InvalidParameter, UnsupportedCase
from monomial_mckay.group_core import IDENTITY, Case, CaseTag, MonomialElement, closure, standard_group
from monomial_mckay.mckay_verify import (
    chi_crepant_formula,
    chi_geometric,
    class_count_formula,
    geometric_euler,
    sweep,
    verify,
    verify_case,
)
from fractions import Fraction

from oracles import brute_class_count, brute_group


def valid_pairs(limit=40):
    for r in range(1, limit + 1):
        yield Case.I, r
        yield Case.II, r
        if r % 3:
            yield Case.III, r
            yield Case.IV, r
    yield Case.V, 1


def test_formula_examples():
    assert chi_crepant_formula(Case.IV, 1) == 9
    assert chi_crepant_formula(Case.V) == 6
    assert chi_crepant_formula(Case.I, 5) == 4
    assert class_count_formula(Case.I, 4) == 5
    assert class_count_formula(Case.III, 2) == 5
    assert class_count_formula(Case.V) == 6
    assert chi_crepant_formula(CaseTag(Case.II, 3)) == 9


def test_formulas_reject_bad_parameters():
    with pytest.raises(InvalidParameter):
        chi_crepant_formula(Case.III, 3)
    with pytest.raises(InvalidParameter):
        class_count_formula(Case.I, 0)
    with pytest.raises(UnsupportedCase):
        chi_crepant_formula(Case.ABELIAN, 2)


@pytest.mark.parametrize("case, r", list(valid_pairs(60)))
def test_formula_consistency(case, r):
    assert chi_crepant_formula(case, r) == class_count_formula(case, r)


@pytest.mark.parametrize("case, r", [(Case.I, 2), (Case.I, 7), (Case.II, 4), (Case.III, 4), (Case.IV, 2), (Case.V, 1)])
def test_formula_matches_matrix_oracle(case, r):
    assert class_count_formula(case, r) == brute_class_count(brute_group(case.value, r))


def test_chi_geometric_examples():
    g3 = closure(standard_group(Case.III, 2))
    parts = geometric_euler(g3)
    assert parts.value == 5
    assert (parts.triangles, parts.transposition_points, parts.full_points) == (4, 3, 1)

    g4 = closure(standard_group(Case.IV, 1))
    parts = geometric_euler(g4)
    assert parts.value == 9 and parts.full_points == 3 and parts.transposition_points == 0

    g1 = closure(standard_group(Case.I, 2))
    parts = geometric_euler(g1)
    assert parts.value == 4 and parts.transposition_points == 2


def test_chi_geometric_abelian_and_unsupported():
    g = closure([MonomialElement.diagonal(7, (1, 2, 4))])
    assert chi_geometric(g) == 7
    odd = closure([MonomialElement((0, 2, 1), (Fraction(1, 4), Fraction(1, 8), Fraction(1, 8)))])
    with pytest.raises(UnsupportedCase):
        chi_geometric(odd)


def test_verify_examples():
    for case, r, value in [(Case.V, 1, 6), (Case.IV, 1, 9), (Case.II, 3, 9)]:
        report = verify_case(case, r)
        assert report.values == (value,) * 5
        assert report.verdict


def test_verify_abelian():
    report = verify(closure([IDENTITY]))
    assert report.tag.case is Case.ABELIAN
    assert report.values == (1,) * 5


def test_verify_rejects_wrong_tag():
    g = closure(standard_group(Case.II, 3))
    with pytest.raises(UnsupportedCase):
        verify(g, CaseTag(Case.I, 3))


def test_report_json_keys():
    d = verify_case(Case.I, 3).to_dict()
    assert list(d) == [
        "case", "r", "group_order", "diagonal_order", "chi_formula", "chi_geometric",
        "classes_formula", "classes_bruteforce", "orbifold_euler", "verdict",
    ]
    assert json.loads(json.dumps(d)) == d


def test_verdict_is_false_on_any_mismatch():
    report = verify_case(Case.I, 3)
    report.chi_geometric += 1
    assert not report.verdict


def test_sweep_examples():
    table = sweep(CaseTag(Case.I), range(1, 11))
    assert len(table.rows) == 10 and table.ok
    assert [row.r for row in table.rows] == list(range(1, 11))

    bad = sweep(Case.III, [3, 6])
    assert not bad.ok
    assert all(row.error.startswith("InvalidParameter") for row in bad.rows)

    v = sweep(Case.V, [1])
    assert len(v.rows) == 1 and v.ok


def test_sweep_collects_errors_without_aborting():
    table = sweep(Case.IV, [1, 3, 2])
    assert [row.r for row in table.rows] == [1, 2, 3]
    assert [row.ok for row in table.rows] == [True, True, False]
    assert table.failures[0].to_dict()["verdict"] is False
