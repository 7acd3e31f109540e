"""Euler numbers of crepant resolutions against conjugacy-class counts.

Three independent routes to the same integer are compared for each group:
the closed formulas of the five families, the Euler number assembled from
the equivariant triangulation and its fixed loci, and brute-force group
enumeration (conjugacy classes and the commuting-pair orbifold count).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import InvalidParameter, MonomialMcKayError, UnsupportedCase
from .group_core import (
    Case,
    CaseTag,
    FiniteMonomialGroup,
    check_case_parameter,
    classify,
    closure,
    conjugacy_classes,
    diagonal_subgroup,
    orbifold_euler,
    standard_group,
)
from .junior_fan import (
    fixed_locus,
    junior_set,
    local_resolution_euler,
    overlattice,
    symmetric_triangulation,
    symmetry_action,
    verify_triangulation,
)

_CASE_ORDER = {c: i for i, c in enumerate([Case.I, Case.II, Case.III, Case.IV, Case.V, Case.ABELIAN])}


def _tag_and_r(tag, r) -> tuple[Case, int]:
    if isinstance(tag, CaseTag):
        case = tag.case
        r = tag.r if r is None else r
    elif isinstance(tag, Case):
        case = tag
    else:
        case = Case.parse(str(tag))
    if r is None:
        r = 1
    if case in (Case.ABELIAN, Case.UNSUPPORTED):
        raise UnsupportedCase(f"no closed formula for case {case.value}")
    check_case_parameter(case, r)
    return case, r


def _exact(num: int, den: int, what: str) -> int:
    q, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"{what}: {num}/{den} is not an integer")
    return q


def chi_crepant_formula(tag, r: int | None = None) -> int:
    """Euler number of the crepant resolution from the case formulas."""
    case, r = _tag_and_r(tag, r)
    if case is Case.I:
        k = 1 if r % 2 else 2
        return _exact(r - k, 2, "case I") + 2 * k
    if case is Case.II:
        return _exact(r * r - r, 2, "case II") + 2 * r
    if case is Case.III:
        return _exact(r * r - 3 * (r - 1) - 1, 6, "case III") + 3 + 2 * (r - 1)
    if case is Case.IV:
        return _exact(r * r - 3 * r + 2, 2, "case IV") + 6 * r + 3
    return 6


def class_count_formula(tag, r: int | None = None) -> int:
    """Number of conjugacy classes from the case-by-case class enumeration."""
    case, r = _tag_and_r(tag, r)
    if case is Case.I:
        m, odd = divmod(r, 2)
        return m + 2 if odd else m + 3
    if case is Case.II:
        return _exact(r * r - r, 2, "case II") + 2 * r
    if case is Case.III:
        return 2 * (r - 1) + _exact(r * r - 3 * (r - 1) - 1, 6, "case III") + 3
    if case is Case.IV:
        return _exact(r * r - 3 * r + 2, 2, "case IV") + 6 * r + 3
    return 6


def _resolve_tag(g: FiniteMonomialGroup, tag: CaseTag | None) -> CaseTag:
    found = classify(g)
    if tag is None:
        tag = found
    elif not found.same_group_type(tag):
        raise UnsupportedCase(f"group classifies as {found}, not {tag}")
    if tag.case is Case.UNSUPPORTED:
        raise UnsupportedCase("group is not of monomial type I-V")
    return tag


@dataclass
class GeometricEuler:
    """Pieces of the geometric Euler number, kept for reporting."""

    value: int
    triangles: int
    w_order: int
    transposition_points: int
    full_points: int
    stratified: Fraction


def geometric_euler(g: FiniteMonomialGroup, tag: CaseTag | None = None) -> GeometricEuler:
    tag = _resolve_tag(g, tag)
    gprime = diagonal_subgroup(g)
    n = overlattice(gprime)
    j = junior_set(gprime)
    w = symmetry_action(g)
    tri = symmetric_triangulation(j, w)
    report = verify_triangulation(tri, n, w)
    if not report.ok:
        raise MonomialMcKayError(f"triangulation check failed: {report.summary()}")
    chi_y = len(tri.triangles)
    if w.order == 1:
        return GeometricEuler(chi_y, chi_y, 1, 0, 0, Fraction(chi_y))

    fl = fixed_locus(tri, w, tag, n)
    p2, p6 = fl.transposition_points, fl.full_points
    free = _exact(chi_y - p2 - p6, w.order, "free part of Y / W")
    if w.order == 6:
        per_orbit = _exact(p2, 3, "transposition points in orbits of three")
    else:
        per_orbit = p2
    value = free + per_orbit * local_resolution_euler("Z2") + p6 * local_resolution_euler("S3")
    if fl.stratified_euler != value:
        raise ArithmeticError(
            f"stratified Euler number {fl.stratified_euler} disagrees with the orbit count {value}"
        )
    return GeometricEuler(value, chi_y, w.order, p2, p6, fl.stratified_euler)


def chi_geometric(g: FiniteMonomialGroup, tag: CaseTag | None = None) -> int:
    """Euler number of the crepant resolution built from the triangulation."""
    return geometric_euler(g, tag).value


@dataclass
class McKayReport:
    tag: CaseTag
    r: int
    group_order: int
    diagonal_order: int
    chi_formula: int
    chi_geometric: int
    class_count_formula: int
    class_count_bruteforce: int
    orbifold_euler: int

    @property
    def values(self) -> tuple[int, ...]:
        return (
            self.chi_formula,
            self.chi_geometric,
            self.class_count_formula,
            self.class_count_bruteforce,
            self.orbifold_euler,
        )

    @property
    def verdict(self) -> bool:
        return len(set(self.values)) == 1

    def to_dict(self) -> dict:
        return {
            "case": self.tag.case.value,
            "r": self.r,
            "group_order": self.group_order,
            "diagonal_order": self.diagonal_order,
            "chi_formula": self.chi_formula,
            "chi_geometric": self.chi_geometric,
            "classes_formula": self.class_count_formula,
            "classes_bruteforce": self.class_count_bruteforce,
            "orbifold_euler": self.orbifold_euler,
            "verdict": self.verdict,
        }


def verify(g: FiniteMonomialGroup, tag: CaseTag | None = None) -> McKayReport:
    tag = _resolve_tag(g, tag)
    partition = conjugacy_classes(g)
    if tag.case is Case.ABELIAN:
        # every element is its own class; the formula is the group order
        chi_formula = classes_formula = g.order
    else:
        chi_formula = chi_crepant_formula(tag)
        classes_formula = class_count_formula(tag)
    return McKayReport(
        tag=tag,
        r=tag.r if tag.r is not None else 1,
        group_order=g.order,
        diagonal_order=g.diagonal_order,
        chi_formula=chi_formula,
        chi_geometric=chi_geometric(g, tag),
        class_count_formula=classes_formula,
        class_count_bruteforce=partition.class_count,
        orbifold_euler=orbifold_euler(g, partition),
    )


@dataclass
class SweepRow:
    tag: CaseTag
    r: int
    report: McKayReport | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.report is not None and self.report.verdict

    def to_dict(self) -> dict:
        if self.report is not None:
            return self.report.to_dict()
        return {"case": self.tag.case.value, "r": self.r, "error": self.error, "verdict": False}


@dataclass
class SweepTable:
    rows: list[SweepRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return bool(self.rows) and all(row.ok for row in self.rows)

    @property
    def failures(self) -> list[SweepRow]:
        return [row for row in self.rows if not row.ok]


def verify_case(case: Case, r: int) -> McKayReport:
    spec = standard_group(case, r)
    return verify(closure(spec), spec.label)


def sweep(tag, r_values: Iterable[int]) -> SweepTable:
    """One report per r; invalid parameters and failures are recorded, not raised."""
    case = tag.case if isinstance(tag, CaseTag) else Case.parse(str(tag)) if not isinstance(tag, Case) else tag
    rows = []
    for r in sorted(set(r_values)):
        row = SweepRow(CaseTag(case, r), r)
        try:
            row.report = verify_case(case, r)
        except InvalidParameter as exc:
            row.error = f"InvalidParameter: {exc}"
        except (MonomialMcKayError, ArithmeticError, AssertionError) as exc:
            row.error = f"{type(exc).__name__}: {exc}"
        rows.append(row)
    rows.sort(key=lambda row: (_CASE_ORDER.get(row.tag.case, 99), row.r))
    return SweepTable(rows)
