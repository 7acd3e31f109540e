import pytest

from monomial_mckay.errors import UnsupportedCase
from monomial_mckay.group_core import Case, CaseTag, closure, diagonal_subgroup, standard_group
from monomial_mckay.junior_fan import (
    fixed_locus,
    junior_set,
    lattice_of,
    local_resolution_euler,
    overlattice,
    symmetric_triangulation,
    symmetry_action,
)

from oracles import brute_class_count, brute_group, orbifold_fixed_point_formula

S_KEY = ((0, 1, 2), (0, 2, 1))
ROT_KEY = ((0, 1, 2), (1, 2, 0), (2, 0, 1))
FULL_KEY = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))


def summary(case, r):
    g = closure(standard_group(Case(case), r))
    gp = diagonal_subgroup(g)
    w = symmetry_action(g)
    tri = symmetric_triangulation(junior_set(gp), w)
    return fixed_locus(tri, w, CaseTag(Case(case), r), overlattice(gp)), tri


def expected_count(case, r):
    return {
        "I": 1 if r % 2 else 2,
        "II": r,
        "III": 3 * r - 2,
        "IV": 3 + 9 * (r - 1),
        "V": 3,
    }[case]


def test_examples():
    assert summary("I", 5)[0].isolated_points_total == 1
    assert summary("II", 3)[0].isolated_points_total == 3
    iv = summary("IV", 1)[0]
    assert iv.isolated_points_total == 3 and iv.full_points == 3 and iv.transposition_points == 0


@pytest.mark.parametrize(
    "case, r",
    [(c, r) for c in ("I", "II") for r in range(1, 9)]
    + [(c, r) for c in ("III", "IV") for r in (1, 2, 4, 5, 7, 8)]
    + [("V", 1)],
)
def test_counts_per_family(case, r):
    fl, _ = summary(case, r)
    assert fl.isolated_points_total == expected_count(case, r)
    assert fl.full_points == {"III": 1, "IV": 3}.get(case, 0)
    if fl.w_order == 2:
        assert fl.full_points == 0


def test_hand_computed_fixed_loci():
    # C^3 itself with x -> -x, (y, z) -> (-z, -y): the fixed line meets nothing else
    fl, _ = summary("I", 1)
    assert fl.euler_by_subgroup[S_KEY] == 1
    # the central P^2 for case IV, r = 1: a transposition fixes a line and a point,
    # the rotation fixes three points, all of S3 fixes one
    fl, _ = summary("IV", 1)
    assert fl.euler_by_subgroup[S_KEY] == 3
    assert fl.euler_by_subgroup[ROT_KEY] == 3
    assert fl.euler_by_subgroup[FULL_KEY] == 1
    assert fl.exact_strata[FULL_KEY] == 1 and fl.exact_strata[ROT_KEY] == 2


@pytest.mark.parametrize(
    "case, r", [("I", 2), ("I", 3), ("II", 2), ("II", 3), ("III", 2), ("IV", 1), ("IV", 2), ("V", 1)]
)
def test_fixed_loci_reproduce_brute_force_class_count(case, r):
    fl, tri = summary(case, r)
    f_s = fl.euler_by_subgroup[S_KEY]
    f_rot = fl.euler_by_subgroup.get(ROT_KEY)
    value = orbifold_fixed_point_formula(len(tri.triangles), f_s, f_rot, fl.w_order)
    assert value == brute_class_count(brute_group(case, r))
    assert fl.stratified_euler == value


def test_curves_recorded():
    fl, _ = summary("II", 3)
    assert fl.fixed_curve_count > 0


def test_lattice_recovered_from_triangulation():
    g = closure(standard_group(Case.IV, 4))
    gp = diagonal_subgroup(g)
    tri = symmetric_triangulation(junior_set(gp), symmetry_action(g))
    assert lattice_of(tri) == overlattice(gp)


def test_unsupported_tag_rejected():
    _, tri = summary("I", 3)
    g = closure(standard_group(Case.I, 3))
    with pytest.raises(UnsupportedCase):
        fixed_locus(tri, symmetry_action(g), CaseTag(Case.UNSUPPORTED))


def test_local_resolution_euler():
    assert local_resolution_euler("Z2") == 2
    assert local_resolution_euler("S3") == 3
    for bad in ("Z3", "", None, 2):
        with pytest.raises(ValueError):
            local_resolution_euler(bad)
