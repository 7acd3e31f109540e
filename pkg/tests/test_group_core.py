from fractions import Fraction

import numpy as np
import pytest

from monomial_mckay.errors import CapExceeded, InvalidParameter, NotDiagonal, NotSpecialLinear
from monomial_mckay.group_core import (
    IDENTITY,
    C,
    Case,
    CaseTag,
    H,
    MonomialElement,
    S,
    T,
    age,
    classify,
    closure,
    commuting_pair_count,
    compose,
    conjugacy_classes,
    determinant_phase,
    diagonal_subgroup,
    fixed_subspace_dim,
    inverse,
    orbifold_euler,
    standard_group,
)

from oracles import (
    brute_class_count,
    brute_commuting_pairs,
    brute_group,
    element_matrix,
    fixed_dim,
)

F = Fraction


def diag(r, a, b, c):
    return MonomialElement.diagonal(r, (a, b, c))


# -- element arithmetic ------------------------------------------------------


def test_compose_examples():
    assert compose(S, S) == IDENTITY
    assert compose(compose(T, T), T) == IDENTITY
    assert compose(H(3), H(3)).phases == (F(0), F(2, 3), F(1, 3))


def test_inverse_examples():
    assert inverse(IDENTITY) == IDENTITY
    assert inverse(S) == S
    assert inverse(diag(7, 1, 2, 4)) == diag(7, 6, 5, 3)


def test_determinant_phase_examples():
    assert determinant_phase(IDENTITY) == 0
    assert determinant_phase(S) == 0
    assert determinant_phase(MonomialElement((0, 1, 2), (0, F(1, 2), 0))) == F(1, 2)


@pytest.mark.parametrize(
    "a, b",
    [(S, T), (T, S), (H(5), S), (compose(S, T), diag(4, 1, 2, 1)), (C, compose(T, H(7)))],
)
def test_compose_matches_matrix_product(a, b):
    got = element_matrix(compose(a, b))
    assert np.allclose(got, element_matrix(a) @ element_matrix(b))


@pytest.mark.parametrize("a", [S, T, H(5), compose(S, T), compose(T, diag(6, 1, 2, 3))])
def test_inverse_matches_matrix_inverse(a):
    assert np.allclose(element_matrix(inverse(a)), np.linalg.inv(element_matrix(a)))


@pytest.mark.parametrize("a", [S, T, C, H(4), compose(S, H(5)), MonomialElement((1, 0, 2), (0, 0, 0))])
def test_determinant_phase_matches_numeric_det(a):
    det = np.linalg.det(element_matrix(a))
    want = np.exp(2j * np.pi * float(determinant_phase(a)))
    assert np.isclose(det, want)


def test_age_examples():
    assert age(IDENTITY) == 0
    assert age(C) == 1
    assert age(diag(5, 0, 2, 3)) == 1
    with pytest.raises(NotDiagonal):
        age(S)


def test_bad_perm_rejected():
    with pytest.raises(InvalidParameter):
        MonomialElement((0, 0, 1), (0, 0, 0))


# -- fixed spaces ------------------------------------------------------------


@pytest.mark.parametrize(
    "elems",
    [[IDENTITY], [S], [C], [T], [S, T], [H(4)], [compose(S, H(2))], [diag(2, 0, 1, 1), S]],
)
def test_fixed_subspace_dim_matches_oracle(elems):
    assert fixed_subspace_dim(elems) == fixed_dim([element_matrix(g) for g in elems])


def test_fixed_subspace_dim_examples():
    assert fixed_subspace_dim([IDENTITY]) == 3
    assert fixed_subspace_dim([S]) == 1  # only (0, 1, -1): S negates x
    assert fixed_subspace_dim([C]) == 0


# -- closure and standard groups ---------------------------------------------


def test_closure_examples():
    assert closure([IDENTITY]).order == 1
    assert closure(standard_group(Case.I, 3)).order == 6
    g5 = closure(standard_group(Case.V, 1))
    assert g5.order == 6 and g5.is_abelian()


def test_closure_cap_and_sl_check():
    with pytest.raises(CapExceeded):
        closure(standard_group(Case.II, 5), cap=10)
    with pytest.raises(NotSpecialLinear):
        closure([MonomialElement((0, 1, 2), (F(1, 2), 0, 0))])
    with pytest.raises(InvalidParameter):
        closure([S], cap=0)


def test_standard_group_examples():
    assert set(standard_group(Case.I, 5).generators) == {diag(5, 0, 1, 4), S}
    assert set(standard_group(Case.IV, 1).generators) == {S, T, C}
    with pytest.raises(InvalidParameter, match="divisible by 3"):
        standard_group(Case.III, 3)
    with pytest.raises(InvalidParameter):
        standard_group(Case.I, 0)
    with pytest.raises(InvalidParameter):
        standard_group(Case.V, 2)


@pytest.mark.parametrize(
    "case, r, order",
    [("I", 1, 2), ("I", 4, 8), ("II", 3, 18), ("III", 2, 24), ("IV", 1, 18), ("IV", 2, 72), ("V", 1, 6)],
)
def test_group_orders_match_matrix_closure(case, r, order):
    g = closure(standard_group(Case(case), r))
    assert g.order == order == len(brute_group(case, r))


def test_diagonal_subgroup_examples():
    g1 = diagonal_subgroup(closure(standard_group(Case.I, 5)))
    assert g1.order == 5
    g2 = diagonal_subgroup(closure(standard_group(Case.II, 2)))
    assert {tuple(x.phases) for x in g2} == {
        (F(a, 2), F(b, 2), F(c, 2)) for a in (0, 1) for b in (0, 1) for c in (0, 1) if (a + b + c) % 2 == 0
    }
    g5 = diagonal_subgroup(closure(standard_group(Case.V, 1)))
    assert set(g5) == {IDENTITY, C, compose(C, C)}


# -- classes and commuting pairs ----------------------------------------------


def test_conjugacy_class_examples():
    assert conjugacy_classes(closure(standard_group(Case.V, 1))).class_count == 6
    assert conjugacy_classes(closure(standard_group(Case.IV, 1))).class_count == 9
    assert conjugacy_classes(closure(standard_group(Case.I, 5))).class_count == 4


def test_commuting_pair_examples():
    assert commuting_pair_count(closure(standard_group(Case.V, 1))) == 36
    assert commuting_pair_count(closure([IDENTITY])) == 1
    assert commuting_pair_count(closure(standard_group(Case.I, 3))) == 18


@pytest.mark.parametrize(
    "case, r", [("I", 2), ("I", 5), ("II", 2), ("II", 3), ("III", 2), ("IV", 1), ("IV", 2), ("V", 1)]
)
def test_classes_and_pairs_match_brute_force(case, r):
    g = closure(standard_group(Case(case), r))
    mats = brute_group(case, r)
    assert conjugacy_classes(g).class_count == brute_class_count(mats)
    assert commuting_pair_count(g) == brute_commuting_pairs(mats)


def test_class_partition_is_a_partition():
    g = closure(standard_group(Case.III, 4))
    part = conjugacy_classes(g)
    flat = sorted(i for cls in part.classes for i in cls)
    assert flat == list(range(g.order))
    assert sum(part.class_sizes()) == g.order
    assert all(g.order % size == 0 for size in part.class_sizes())


def test_orbifold_euler_examples():
    assert orbifold_euler(closure(standard_group(Case.V, 1))) == 6
    assert orbifold_euler(closure(standard_group(Case.IV, 1))) == 9
    assert orbifold_euler(closure([IDENTITY])) == 1


# -- classification -----------------------------------------------------------


def test_classify_examples():
    assert classify(closure(standard_group(Case.II, 4))) == CaseTag(Case.II, 4)
    assert classify(closure(standard_group(Case.IV, 2))) == CaseTag(Case.IV, 2)
    assert classify(closure([IDENTITY])).case is Case.ABELIAN


@pytest.mark.parametrize(
    "case, r",
    [(c, r) for c in ("I", "II") for r in (2, 3, 4, 5, 6, 9)]
    + [(c, r) for c in ("III", "IV") for r in (1, 2, 4, 5, 7)]
    + [("V", 1)],
)
def test_classify_recovers_standard_families(case, r):
    assert classify(closure(standard_group(Case(case), r))) == CaseTag(Case(case), r)


def test_classify_r1_coincidence():
    tag = classify(closure(standard_group(Case.II, 1)))
    assert tag.same_group_type(CaseTag(Case.II, 1))
    assert tag.same_group_type(CaseTag(Case.I, 1))


def test_classify_unsupported_and_abelian():
    abelian = closure([diag(7, 1, 2, 4)])
    tag = classify(abelian)
    assert tag.case is Case.ABELIAN and tag.r == 7
    # a transposition whose fixed coordinate carries a nontrivial phase
    odd = closure([MonomialElement((0, 2, 1), (F(1, 4), F(1, 8), F(1, 8)))])
    assert classify(odd).case is Case.UNSUPPORTED


def test_case_parse():
    assert Case.parse("iv") is Case.IV
    assert Case.parse(" V ") is Case.V
    with pytest.raises(InvalidParameter):
        Case.parse("VI")
