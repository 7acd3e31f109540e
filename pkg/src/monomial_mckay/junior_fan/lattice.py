"""The overlattice N of a diagonal group and its points on the junior simplex."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from ..errors import NotDiagonal
from ..group_core import FiniteMonomialGroup, MonomialElement, age
from . import _linalg


@dataclass(frozen=True, order=True)
class LatticePoint:
    """A point ``num / den`` of N; on the junior simplex ``sum(num) == den``."""

    num: tuple[int, int, int]
    den: int

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(Fraction(a, self.den) for a in self.num)

    @property
    def is_corner(self) -> bool:
        return sorted(self.num) == [0, 0, self.den]

    @property
    def has_zero_coord(self) -> bool:
        return 0 in self.num

    def permuted(self, perm: Sequence[int]) -> "LatticePoint":
        n = self.num
        return LatticePoint((n[perm[0]], n[perm[1]], n[perm[2]]), self.den)

    def __str__(self) -> str:
        return "(" + ", ".join(f"{a}/{self.den}" for a in self.num) + ")"


def corners(d: int) -> tuple[LatticePoint, LatticePoint, LatticePoint]:
    return (
        LatticePoint((d, 0, 0), d),
        LatticePoint((0, d, 0), d),
        LatticePoint((0, 0, d), d),
    )


@dataclass(frozen=True)
class Overlattice:
    """``N = Z^3 + sum Z v`` over the phase vectors ``v`` of a diagonal group.

    Membership is decided on residues: ``p`` lies in N iff ``d * p`` is
    integral and ``d * p mod d`` is the scaled phase vector of a group element.
    """

    denominator: int
    residues: frozenset[tuple[int, int, int]]

    @property
    def index(self) -> int:
        return len(self.residues)

    def contains_numerators(self, num: Sequence[int]) -> bool:
        d = self.denominator
        return (num[0] % d, num[1] % d, num[2] % d) in self.residues

    def __contains__(self, p) -> bool:
        if isinstance(p, LatticePoint):
            p = p.coords
        d = self.denominator
        scaled = [Fraction(x) * d for x in p]
        if any(x.denominator != 1 for x in scaled):
            return False
        return self.contains_numerators([int(x) for x in scaled])

    @cached_property
    def generators(self) -> list[list[Fraction]]:
        d = self.denominator
        gens = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
        gens += [[Fraction(a, d) for a in res] for res in sorted(self.residues) if any(res)]
        return gens

    @cached_property
    def basis(self) -> list[list[Fraction]]:
        return _linalg.lattice_basis(self.generators)


def _require_diagonal(gprime: FiniteMonomialGroup | Iterable[MonomialElement]) -> list[MonomialElement]:
    elems = list(gprime.elements if isinstance(gprime, FiniteMonomialGroup) else gprime)
    for g in elems:
        if not g.is_diagonal:
            raise NotDiagonal(f"expected a diagonal group, found {g}")
    return elems


def _exponent(elems: Sequence[MonomialElement]) -> int:
    return math.lcm(1, *(g.denominator for g in elems))


def overlattice(gprime: FiniteMonomialGroup | Iterable[MonomialElement]) -> Overlattice:
    elems = _require_diagonal(gprime)
    d = _exponent(elems)
    residues = frozenset(tuple(int(q * d) for q in g.phases) for g in elems)
    return Overlattice(d, residues)


@dataclass(frozen=True)
class JuniorSet:
    """Age-one points of N: ``phi1`` (all coordinates nonzero) and ``phi2``."""

    denominator: int
    phi1: tuple[LatticePoint, ...]
    phi2: tuple[LatticePoint, ...]

    @property
    def phi(self) -> tuple[LatticePoint, ...]:
        return tuple(sorted(self.phi1 + self.phi2))

    @property
    def corners(self) -> tuple[LatticePoint, ...]:
        return corners(self.denominator)

    @property
    def points(self) -> tuple[LatticePoint, ...]:
        return tuple(sorted(self.phi1 + self.phi2 + self.corners))

    def kind(self, p: LatticePoint) -> str:
        if p.is_corner:
            return "corner"
        if p in self.phi1:
            return "phi1"
        if p in self.phi2:
            return "phi2"
        raise KeyError(str(p))


def junior_set(gprime: FiniteMonomialGroup | Iterable[MonomialElement]) -> JuniorSet:
    elems = _require_diagonal(gprime)
    d = _exponent(elems)
    phi1, phi2 = [], []
    for g in elems:
        if age(g) != 1:
            continue
        p = LatticePoint(tuple(int(q * d) for q in g.phases), d)
        (phi2 if p.has_zero_coord else phi1).append(p)
    return JuniorSet(d, tuple(sorted(phi1)), tuple(sorted(phi2)))


def delta_lattice_points(n: Overlattice) -> tuple[LatticePoint, ...]:
    """All points of N on the junior simplex, by scanning ``a + b + c = d``."""
    d = n.denominator
    found = []
    for a in range(d + 1):
        for b in range(d + 1 - a):
            num = (a, b, d - a - b)
            if n.contains_numerators(num):
                found.append(LatticePoint(num, d))
    return tuple(sorted(found))


def is_basic(tri: Sequence[LatticePoint], n: Overlattice) -> bool:
    """Do the three vertices form a Z-basis of N?

    Tested by the volume criterion ``|det(w1, w2, w3)| == 1 / [N : Z^3]``.
    """
    d = n.denominator
    (a, b, c), (e, f, g), (h, i, j) = (tuple(p.num) for p in tri)
    for p in tri:
        if p.den != d:
            raise ValueError("vertex denominators do not match the lattice")
    num_det = a * (f * j - g * i) - b * (e * j - g * h) + c * (e * i - f * h)
    return abs(num_det) * n.index == d**3
