"""W-equivariant unimodular triangulations of the junior simplex.

Points of the junior simplex are handled through their integer numerators
``(A, B, C)`` with ``A + B + C = d``; planar predicates use ``(A, B)``.  The
triangulation is the Delaunay subdivision for the Euclidean metric of R^3
restricted to the plane ``x + y + z = 1``.  Coordinate permutations are
isometries of that metric, so the subdivision is invariant under every W.
Cocircular cells (lattice-empty quadrilaterals) are then split by the
lexicographically least diagonal choice compatible with their stabiliser.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from ..errors import SymmetryBroken
from ..group_core import IDENTITY_PERM, FiniteMonomialGroup, Perm3, perm_compose
from .lattice import JuniorSet, LatticePoint, Overlattice, corners, delta_lattice_points, is_basic


@dataclass(frozen=True)
class SymmetryAction:
    """Coordinate permutations W = G / G' with the phases of one lift each."""

    perms: tuple[Perm3, ...]
    lifts: tuple[tuple[Fraction, Fraction, Fraction], ...]

    @classmethod
    def trivial(cls) -> "SymmetryAction":
        zero = Fraction(0)
        return cls((IDENTITY_PERM,), ((zero, zero, zero),))

    @property
    def order(self) -> int:
        return len(self.perms)

    def lift(self, perm: Perm3) -> tuple[Fraction, Fraction, Fraction]:
        return self.lifts[self.perms.index(perm)]

    def subgroups(self) -> list[frozenset[Perm3]]:
        """Every subgroup of W, smallest first."""
        found = set()
        for k in range(1, len(self.perms) + 1):
            for subset in combinations(self.perms, k):
                s = frozenset(subset) | {IDENTITY_PERM}
                if all(perm_compose(a, b) in s for a in s for b in s):
                    found.add(frozenset(s))
        return sorted(found, key=lambda s: (len(s), sorted(s)))


def symmetry_action(g: FiniteMonomialGroup) -> SymmetryAction:
    perms = tuple(sorted(g.perm_image))
    return SymmetryAction(perms, tuple(g.lift(p).phases for p in perms))


@dataclass(frozen=True)
class Triangulation:
    vertices: tuple[LatticePoint, ...]
    triangles: tuple[tuple[int, int, int], ...]

    @property
    def denominator(self) -> int:
        return self.vertices[0].den

    @cached_property
    def vertex_index(self) -> dict[LatticePoint, int]:
        return {p: i for i, p in enumerate(self.vertices)}

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        es = set()
        for a, b, c in self.triangles:
            es.update({(a, b), (a, c), (b, c)})
        return tuple(sorted(es))

    def triangle_points(self, tri: Sequence[int]) -> tuple[LatticePoint, ...]:
        return tuple(self.vertices[i] for i in tri)

    def permuted_triangles(self, perm: Perm3) -> set[tuple[int, ...]]:
        idx = self.vertex_index
        out = set()
        for tri in self.triangles:
            out.add(tuple(sorted(idx[self.vertices[i].permuted(perm)] for i in tri)))
        return out


# ---------------------------------------------------------------------------
# exact planar predicates on numerators


def _orient(p, q, r) -> int:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _lift(p) -> int:
    return p[0] * p[0] + p[1] * p[1] + p[2] * p[2]


def _incircle(a, b, c, p) -> int:
    """> 0 iff p is strictly inside the circumcircle of the ccw triangle abc."""
    hp = _lift(p)
    rows = []
    for q in (a, b, c):
        rows.append((q[0] - p[0], q[1] - p[1], _lift(q) - hp))
    (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = rows
    return a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1)


class _Delaunay:
    """Bowyer-Watson insertion inside the convex hull triangle of three points."""

    def __init__(self, pts: Sequence[tuple[int, int, int]], hull: tuple[int, int, int]):
        self.pts = pts
        a, b, c = hull
        if _orient(pts[a], pts[b], pts[c]) < 0:
            b, c = c, b
        self.tris: dict[int, tuple[int, int, int]] = {}
        self.edge: dict[tuple[int, int], int] = {}
        self._next = 0
        self.last = self._add((a, b, c))

    def _add(self, tri) -> int:
        tid = self._next
        self._next += 1
        self.tris[tid] = tri
        a, b, c = tri
        self.edge[(a, b)] = tid
        self.edge[(b, c)] = tid
        self.edge[(c, a)] = tid
        return tid

    def _remove(self, tid: int) -> None:
        a, b, c = self.tris.pop(tid)
        for e in ((a, b), (b, c), (c, a)):
            if self.edge.get(e) == tid:
                del self.edge[e]

    def _locate(self, p) -> int:
        pts = self.pts
        tid = self.last if self.last in self.tris else next(iter(self.tris))
        for _ in range(4 * len(self.tris) + 8):
            a, b, c = self.tris[tid]
            for u, v in ((a, b), (b, c), (c, a)):
                if _orient(pts[u], pts[v], p) < 0:
                    nxt = self.edge.get((v, u))
                    if nxt is None:
                        raise ValueError("point outside the hull")
                    tid = nxt
                    break
            else:
                return tid
        # visibility walk should not cycle on a Delaunay mesh; fall back to a scan
        for tid, (a, b, c) in self.tris.items():
            if min(_orient(pts[a], pts[b], p), _orient(pts[b], pts[c], p), _orient(pts[c], pts[a], p)) >= 0:
                return tid
        raise ValueError("point outside the hull")

    def insert(self, k: int) -> None:
        pts = self.pts
        p = pts[k]
        start = self._locate(p)
        cavity = {start}
        stack = [start]
        while stack:
            tid = stack.pop()
            a, b, c = self.tris[tid]
            for u, v in ((a, b), (b, c), (c, a)):
                nb = self.edge.get((v, u))
                if nb is None or nb in cavity:
                    continue
                x, y, z = self.tris[nb]
                if _incircle(pts[x], pts[y], pts[z], p) > 0:
                    cavity.add(nb)
                    stack.append(nb)
        boundary = []
        for tid in cavity:
            a, b, c = self.tris[tid]
            for u, v in ((a, b), (b, c), (c, a)):
                nb = self.edge.get((v, u))
                if nb is None or nb not in cavity:
                    boundary.append((u, v))
        for tid in cavity:
            self._remove(tid)
        for u, v in boundary:
            o = _orient(pts[u], pts[v], p)
            if o == 0:
                continue  # p splits this hull edge
            if o < 0:
                raise AssertionError("cavity is not star-shaped")
            self.last = self._add((u, v, k))


def _polygon_triangulations(poly: Sequence[int]) -> list[list[tuple[int, int, int]]]:
    """All triangulations of a convex polygon given in cyclic order."""
    n = len(poly)
    if n < 3:
        return [[]]
    if n == 3:
        return [[tuple(poly)]]
    out = []
    a, b = poly[0], poly[-1]
    for k in range(1, n - 1):
        for left in _polygon_triangulations(poly[: k + 1]):
            for right in _polygon_triangulations(poly[k:]):
                out.append(left + right + [(a, poly[k], b)])
    return out


def _canon(tri: Iterable[int]) -> tuple[int, int, int]:
    return tuple(sorted(tri))


def symmetric_triangulation(j: JuniorSet, w: SymmetryAction) -> Triangulation:
    """Equivariant triangulation of the junior simplex with vertex set Phi + corners."""
    points = j.points
    pset = set(points)
    for perm in w.perms:
        for p in points:
            if p.permuted(perm) not in pset:
                raise SymmetryBroken(f"{p} is mapped outside Phi by the permutation {perm}")
    index = {p: i for i, p in enumerate(points)}
    nums = [p.num for p in points]
    hull = tuple(index[c] for c in corners(j.denominator))

    mesh = _Delaunay(nums, hull)
    for k in range(len(points)):
        if k not in hull:
            mesh.insert(k)

    # merge triangles across cocircular edges into Delaunay cells
    parent = {tid: tid for tid in mesh.tris}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (u, v), tid in mesh.edge.items():
        other = mesh.edge.get((v, u))
        if other is None or u > v:
            continue
        x, y, z = mesh.tris[tid]
        opp = next(q for q in mesh.tris[other] if q not in (u, v))
        if _incircle(nums[x], nums[y], nums[z], nums[opp]) == 0:
            parent[find(tid)] = find(other)

    cells: dict[int, list[int]] = {}
    for tid in mesh.tris:
        cells.setdefault(find(tid), []).append(tid)

    triangles: set[tuple[int, int, int]] = set()
    polygons: dict[tuple[int, ...], list[int]] = {}
    for members in cells.values():
        if len(members) == 1:
            triangles.add(_canon(mesh.tris[members[0]]))
            continue
        directed = set()
        for tid in members:
            a, b, c = mesh.tris[tid]
            directed.update({(a, b), (b, c), (c, a)})
        succ = {u: v for (u, v) in directed if (v, u) not in directed}
        start = min(succ)
        cycle = [start]
        while succ[cycle[-1]] != start:
            cycle.append(succ[cycle[-1]])
        polygons[tuple(sorted(cycle))] = cycle

    done = set()
    for key in sorted(polygons):
        if key in done:
            continue
        cycle = polygons[key]
        vset = set(key)
        stab = [
            perm for perm in w.perms
            if {index[points[i].permuted(perm)] for i in vset} == vset
        ]

        def image(tris, perm):
            return {_canon(index[points[i].permuted(perm)] for i in t) for t in tris}

        options = []
        for tris in _polygon_triangulations(cycle):
            canon = {_canon(t) for t in tris}
            if all(image(canon, perm) == canon for perm in stab):
                options.append(sorted(canon))
        if not options:
            raise SymmetryBroken(
                f"no triangulation of the cocircular cell {[str(points[i]) for i in cycle]} "
                "is invariant under its stabiliser"
            )
        chosen = min(options)
        for perm in w.perms:
            img_key = tuple(sorted(index[points[i].permuted(perm)] for i in key))
            if img_key in done:
                continue
            triangles.update(image(chosen, perm))
            done.add(img_key)

    return Triangulation(tuple(points), tuple(sorted(triangles)))


# ---------------------------------------------------------------------------
# verification


@dataclass
class TriangulationReport:
    ok: bool
    checks: dict[str, bool]
    failure: str | None = None
    witness: tuple = ()
    triangle_count: int = 0
    group_order: int = 0

    def summary(self) -> str:
        status = "ok" if self.ok else f"FAILED ({self.failure}: {self.witness})"
        return f"{self.triangle_count} triangles for |G'| = {self.group_order}: {status}"


def _inside_closed(tri_nums, q) -> bool:
    a, b, c = tri_nums
    o = _orient(a, b, c)
    s = (_orient(a, b, q), _orient(b, c, q), _orient(c, a, q))
    return all(x >= 0 for x in s) if o > 0 else all(x <= 0 for x in s)


def _lattice_points_in(tri_nums, n: Overlattice):
    d = n.denominator
    xs = [p[0] for p in tri_nums]
    ys = [p[1] for p in tri_nums]
    for A in range(min(xs), max(xs) + 1):
        for B in range(min(ys), max(ys) + 1):
            q = (A, B, d - A - B)
            if q[2] < 0 or not n.contains_numerators(q):
                continue
            if _inside_closed(tri_nums, q):
                yield q


def verify_triangulation(t: Triangulation, n: Overlattice, w: SymmetryAction) -> TriangulationReport:
    """Check every structural property of an equivariant crepant triangulation.

    The first violated property is reported together with witness cells.
    """
    d = n.denominator
    checks: dict[str, bool] = {}
    first: list = []

    def record(name, ok, witness=()):
        checks[name] = ok
        if not ok and not first:
            first.append((name, witness))

    verts = t.vertices
    nums = [p.num for p in verts]
    expected = set(delta_lattice_points(n))
    vset = set(verts)
    record("vertex_set", vset == expected and len(vset) == len(verts),
           tuple(sorted(str(p) for p in vset ^ expected)))
    used = {i for tri in t.triangles for i in tri}
    unused = tuple(i for i in range(len(verts)) if i not in used)
    record("no_unused_vertices", not unused, unused)
    bad_junior = tuple(
        str(p) for p in verts
        if p.den != d or sum(p.num) != d or min(p.num) < 0 or p not in n
    )
    record("junior_vertices", not bad_junior, bad_junior)

    degenerate = tuple(tri for tri in t.triangles if _orient(*(nums[i] for i in tri)) == 0)
    record("nondegenerate", not degenerate, degenerate[:3])

    area = sum(abs(_orient(*(nums[i] for i in tri))) for tri in t.triangles)
    record("area", area == d * d, (area, d * d))

    # pseudo-manifold test: interior edges shared by two triangles on opposite sides
    incident: dict[tuple[int, int], list[int]] = {}
    for tri in t.triangles:
        for a, b in combinations(tri, 2):
            incident.setdefault((a, b), []).append(next(x for x in tri if x not in (a, b)))
    bad_edges = []
    for (a, b), opp in incident.items():
        on_boundary = any(nums[a][k] == 0 and nums[b][k] == 0 for k in range(3))
        if on_boundary:
            if len(opp) != 1:
                bad_edges.append((a, b))
        elif len(opp) != 2 or _orient(nums[a], nums[b], nums[opp[0]]) * _orient(nums[a], nums[b], nums[opp[1]]) >= 0:
            bad_edges.append((a, b))
    record("coverage", area == d * d and not bad_edges, tuple(bad_edges[:3]))

    nonempty = []
    for tri in t.triangles:
        tn = [nums[i] for i in tri]
        extra = [q for q in _lattice_points_in(tn, n) if q not in tn]
        if extra:
            nonempty.append((tri, extra[0]))
    record("lattice_empty", not nonempty, tuple(nonempty[:3]))

    not_basic = tuple(tri for tri in t.triangles if not is_basic(t.triangle_points(tri), n))
    record("basic", not not_basic, not_basic[:3])

    record("count_equals_index", len(t.triangles) == n.index, (len(t.triangles), n.index))

    tri_set = set(t.triangles)
    broken = []
    if vset == expected:
        for perm in w.perms:
            if t.permuted_triangles(perm) != tri_set:
                broken.append(perm)
    else:
        broken = list(w.perms)
    record("equivariant", not broken, tuple(broken))

    ok = all(checks.values())
    failure, witness = first[0] if first else (None, ())
    return TriangulationReport(ok, checks, failure, witness, len(t.triangles), n.index)
