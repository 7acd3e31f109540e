"""Fixed loci of W acting on the toric resolution of C^3 / G'.

The resolution is a disjoint union of torus orbits ``O_tau``, one per cone of
the fan (the zero cone, the rays through the vertices, the edges and the
triangles of the triangulation).  On ``O_tau = C^3 / (N + C tau)`` a lift
``(sigma, phi)`` of ``w`` acts affinely by ``u -> Q u + phi`` with
``(Q u)_i = u_sigma(i)``; the choice of lift is irrelevant since G' acts by
translations in N.  For a subgroup K of W the fixed set on each invariant
orbit is either finite or a finite union of subtori cosets.  Only the finite
parts carry Euler characteristic, so ``chi(Y^K)`` is a finite count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from ..errors import UnsupportedCase
from ..group_core import IDENTITY_PERM, Case, CaseTag, Perm3, perm_compose, perm_inverse
from . import _linalg
from .lattice import Overlattice
from .triangulation import SymmetryAction, Triangulation

Subgroup = frozenset  # of Perm3


# ---------------------------------------------------------------------------
# cones and their orbits


@dataclass(frozen=True)
class Cone:
    """A cone of the fan, given by sorted vertex indices (empty for the origin)."""

    vertices: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.vertices)


def fan_cones(t: Triangulation) -> list[Cone]:
    cones = [Cone(())]
    cones += [Cone((i,)) for i in range(len(t.vertices))]
    cones += [Cone(e) for e in t.edges]
    cones += [Cone(tri) for tri in t.triangles]
    return cones


def _cone_image(t: Triangulation, cone: Cone, perm: Perm3) -> Cone:
    idx = t.vertex_index
    return Cone(tuple(sorted(idx[t.vertices[i].permuted(perm)] for i in cone.vertices)))


def _mod1_vec(v) -> tuple[Fraction, ...]:
    return tuple(x - (x.numerator // x.denominator) for x in v)


def _permute(perm: Perm3, v):
    return [v[perm[0]], v[perm[1]], v[perm[2]]]


@dataclass
class _Orbit:
    """Lambda-coordinates of ``O_tau``: a basis of pi(N) and the projection pi."""

    proj: list[list[Fraction]]  # rows annihilating span(tau)
    basis: list[list[Fraction]]  # Z-basis of pi(N) in R^s

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, v) -> list[Fraction]:
        pv = _linalg.matvec(self.proj, v)
        x = _linalg.coordinates(self.basis, pv)
        assert x is not None
        return x

    def affine(self, perm: Perm3, phases) -> tuple[list[list[int]], list[Fraction]]:
        """Integer matrix M and translation t of a lift acting on Lambda-coordinates."""
        cols = []
        for b in self.basis:
            pre = _linalg.solve(self.proj, b)
            image = self.coords(_permute(perm, pre))
            cols.append(image)
        m = _linalg.transpose(cols)
        assert all(x.denominator == 1 for row in m for x in row), "action does not preserve N"
        return [[int(x) for x in row] for row in m], self.coords(list(phases))


def _orbit(t: Triangulation, n: Overlattice, cone: Cone) -> _Orbit:
    span = [list(t.vertices[i].coords) for i in cone.vertices]
    proj = _linalg.nullspace(span, 3) if span else [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    # rows of ``proj`` are functionals vanishing on span(tau)
    proj = [list(r) for r in proj]
    images = [_linalg.matvec(proj, g) for g in n.basis]
    basis = _linalg.lattice_basis(images)
    return _Orbit(proj, basis)


@dataclass(frozen=True)
class OrbitFixedSet:
    """Fixed set of a subgroup on one orbit: finite points or a positive-dimensional family."""

    cone: Cone
    points: tuple[tuple[Fraction, ...], ...]  # Lambda-coordinates mod 1, when finite
    family_dim: int  # dimension of the common fixed space (0 for finite sets)
    nonempty: bool

    @property
    def finite_count(self) -> int:
        return len(self.points) if self.family_dim == 0 else 0


def _solve_mod1(rows: list[list[int]], rhs: list[Fraction], s: int) -> list[tuple[Fraction, ...]]:
    """All x in (R/Z)^s with ``row . x = rhs`` mod 1 for every row (full column rank)."""
    # choose s independent rows
    chosen, chosen_rhs = [], []
    for row, b in zip(rows, rhs):
        if _linalg.rank(chosen + [row]) > len(chosen):
            chosen.append(row)
            chosen_rhs.append(b)
        if len(chosen) == s:
            break
    assert len(chosen) == s
    dd = abs(_linalg.det(chosen))
    d = int(dd)
    assert d == dd and d > 0
    found = set()
    for lam in product(range(d), repeat=s):
        target = [b + l for b, l in zip(chosen_rhs, lam)]
        x = _linalg.solve(chosen, target)
        found.add(_mod1_vec(x))
    out = []
    for x in sorted(found):
        ok = True
        for row, b in zip(rows, rhs):
            val = sum((a * xi for a, xi in zip(row, x)), Fraction(0)) - b
            if val.denominator != 1:
                ok = False
                break
        if ok:
            out.append(x)
    return out


def _orbit_fixed(orbit: _Orbit, cone: Cone, w: SymmetryAction, k: Subgroup) -> OrbitFixedSet:
    s = orbit.dim
    if s == 0:
        return OrbitFixedSet(cone, ((),), 0, True)
    rows: list[list[int]] = []
    rhs: list[Fraction] = []
    for perm in sorted(k):
        if perm == IDENTITY_PERM:
            continue
        m, tvec = orbit.affine(perm, w.lift(perm))
        for i in range(s):
            rows.append([int(i == j) - m[i][j] for j in range(s)])
            rhs.append(tvec[i])
    if not rows:
        return OrbitFixedSet(cone, (), s, True)
    family = s - _linalg.rank(rows)
    if family > 0:
        # nonempty iff the affine system has a solution modulo Z^s
        return OrbitFixedSet(cone, (), family, _has_solution_mod1(rows, rhs))
    pts = tuple(_solve_mod1(rows, rhs, s))
    return OrbitFixedSet(cone, pts, 0, bool(pts))


def _has_solution_mod1(rows, rhs) -> bool:
    """Is ``rows @ x = rhs + lambda`` solvable with x real and lambda integral?

    Equivalently ``L (rhs + lambda) = 0`` for a basis L of the left kernel.
    """
    left = _linalg.nullspace(_linalg.transpose(rows), len(rows))
    if not left:
        return True
    scale = math.lcm(1, *(x.denominator for v in left for x in v))
    lint = [[int(x * scale) for x in v] for v in left]
    target = [-sum((a * b for a, b in zip(v, rhs)), Fraction(0)) for v in lint]
    if any(x.denominator != 1 for x in target):
        return False
    return _integer_solvable(lint, [int(x) for x in target])


def _integer_solvable(a: list[list[int]], b: list[int]) -> bool:
    """Does ``a @ x = b`` have an integer solution?  Column-style Hermite reduction."""
    m = len(a)
    n = len(a[0]) if a else 0
    cols = [[a[i][j] for i in range(m)] for j in range(n)]
    b = list(b)
    for i in range(m):
        active = [c for c in cols if c[i] != 0]
        rest = [c for c in cols if c[i] == 0]
        while len(active) > 1:
            active.sort(key=lambda c: abs(c[i]))
            piv = active[0]
            nxt = [piv]
            for c in active[1:]:
                q = c[i] // piv[i]
                red = [x - q * y for x, y in zip(c, piv)]
                (nxt if red[i] != 0 else rest).append(red)
            active = nxt
        if active:
            piv = active[0]
            if b[i] % piv[i] != 0:
                return False
            q = b[i] // piv[i]
            b = [x - q * y for x, y in zip(b, piv)]
        elif b[i] != 0:
            return False
        cols = rest
    return not any(b)


# ---------------------------------------------------------------------------
# strata


def _conjugacy_class_count(k: Subgroup) -> int:
    seen = set()
    classes = 0
    for x in k:
        if x in seen:
            continue
        classes += 1
        for g in k:
            seen.add(perm_compose(perm_compose(perm_inverse(g), x), g))
    return classes


@dataclass
class FixedStrata:
    """Exact fixed-point data of every subgroup of W on the resolution.

    ``euler_fixed[K]`` is chi(Y^K); ``euler_exact[K]`` is the Euler number of
    the points whose stabiliser is exactly K (Moebius inversion).
    """

    subgroups: list[Subgroup]
    fixed: dict[Subgroup, list[OrbitFixedSet]]
    euler_fixed: dict[Subgroup, int]
    euler_exact: dict[Subgroup, int]
    w_order: int

    def stabilizer_type(self, k: Subgroup) -> str:
        n = len(k)
        return {1: "trivial", 2: "Z2", 3: "Z3", 6: "S3"}[n]

    def quotient_resolution_euler(self) -> Fraction:
        """Euler number of a crepant resolution of Y / W, stratum by stratum."""
        total = Fraction(0)
        for k in self.subgroups:
            total += Fraction(self.euler_exact[k] * len(k), self.w_order) * _conjugacy_class_count(k)
        return total

    def curves(self, k: Subgroup) -> list[OrbitFixedSet]:
        return [f for f in self.fixed[k] if f.family_dim == 1 and f.nonempty]


def fixed_strata(t: Triangulation, n: Overlattice, w: SymmetryAction) -> FixedStrata:
    subgroups = w.subgroups()
    cones = fan_cones(t)
    orbits: dict[Cone, _Orbit] = {}
    fixed: dict[Subgroup, list[OrbitFixedSet]] = {}
    euler_fixed: dict[Subgroup, int] = {}
    for k in subgroups:
        if len(k) == 1:
            # every orbit of positive dimension is a free family
            fixed[k] = [OrbitFixedSet(Cone(tri), ((),), 0, True) for tri in t.triangles]
            euler_fixed[k] = len(t.triangles)
            continue
        found = []
        for cone in cones:
            if any(_cone_image(t, cone, p) != cone for p in k):
                continue
            if cone not in orbits:
                orbits[cone] = _orbit(t, n, cone)
            found.append(_orbit_fixed(orbits[cone], cone, w, k))
        fixed[k] = found
        euler_fixed[k] = sum(f.finite_count for f in found)
    euler_exact: dict[Subgroup, int] = {}
    for k in sorted(subgroups, key=len, reverse=True):
        euler_exact[k] = euler_fixed[k] - sum(
            euler_exact[h] for h in subgroups if len(h) > len(k) and k < h
        )
    return FixedStrata(subgroups, fixed, euler_fixed, euler_exact, w.order)


def lattice_of(t: Triangulation) -> Overlattice:
    """Recover N from a triangulation: the vertices of any basic triangle span it."""
    d = t.denominator
    residues = {(0, 0, 0)}
    frontier = [(0, 0, 0)]
    gens = {tuple(a % d for a in p.num) for p in t.triangle_points(t.triangles[0])}
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = tuple((a + b) % d for a, b in zip(x, g))
            if y not in residues:
                residues.add(y)
                frontier.append(y)
    return Overlattice(d, frozenset(residues))


# ---------------------------------------------------------------------------
# summary in the transposition / full-symmetry bookkeeping


TRANSPOSITION = "transposition"
FULL = "full"


@dataclass(frozen=True)
class FixedLocusSummary:
    """Fixed-point counts of W on the resolution, in orbifold bookkeeping.

    ``full`` points are the points fixed by the rotation subgroup A3 (counted
    by Euler number); transposition-type points are, for each transposition
    s, the Euler number of Y^s minus that of Y^A3.  With these weights
    ``(chi(Y) - p2 - p6)/|W| + c2 * p2 + 3 * p6`` is the orbifold Euler number
    of (Y, W), where c2 = 2/3 for |W| = 6 and 2 for |W| = 2.
    """

    isolated_points_total: int
    points_by_stabilizer: dict
    fixed_curve_count: int
    w_order: int
    euler_by_subgroup: dict  # chi(Y^K) keyed by sorted tuples of permutations
    exact_strata: dict  # Euler numbers of points with stabiliser exactly K
    stratified_euler: Fraction  # sum over strata, independent of the bookkeeping

    @property
    def transposition_points(self) -> int:
        return self.points_by_stabilizer[TRANSPOSITION]

    @property
    def full_points(self) -> int:
        return self.points_by_stabilizer[FULL]


_SUPPORTED = {Case.ABELIAN, Case.I, Case.II, Case.III, Case.IV, Case.V}


def fixed_locus(
    t: Triangulation, w: SymmetryAction, tag: CaseTag, n: Overlattice | None = None
) -> FixedLocusSummary:
    if tag.case not in _SUPPORTED:
        raise UnsupportedCase(f"fixed-point analysis is only available for cases I-V, got {tag}")
    if n is None:
        n = lattice_of(t)
    strata = fixed_strata(t, n, w)
    key = lambda k: tuple(sorted(k))  # noqa: E731
    transpositions = [k for k in strata.subgroups if len(k) == 2]
    rotation = [k for k in strata.subgroups if len(k) == 3]
    p6 = strata.euler_fixed[rotation[0]] if rotation else 0
    p2 = sum(strata.euler_fixed[k] - p6 for k in transpositions)
    curves = sum(len(strata.curves(k)) for k in transpositions)
    return FixedLocusSummary(
        isolated_points_total=p2 + p6,
        points_by_stabilizer={TRANSPOSITION: p2, FULL: p6},
        fixed_curve_count=curves,
        w_order=w.order,
        euler_by_subgroup={key(k): strata.euler_fixed[k] for k in strata.subgroups},
        exact_strata={key(k): strata.euler_exact[k] for k in strata.subgroups},
        stratified_euler=strata.quotient_resolution_euler(),
    )


_LOCAL_EULER = {"Z2": 2, TRANSPOSITION: 2, "S3": 3, FULL: 3}


def local_resolution_euler(stabilizer_type: str) -> int:
    """Euler number of the crepant resolution of C^3 / K at a point of type K."""
    try:
        return _LOCAL_EULER[stabilizer_type]
    except (KeyError, TypeError):
        raise ValueError(
            f"unknown stabiliser type {stabilizer_type!r}; expected 'Z2' or 'S3'"
        ) from None
