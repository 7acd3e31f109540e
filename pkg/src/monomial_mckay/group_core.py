"""Exact algebra of monomial matrices in SL(3, C).

A monomial element is a pair ``(perm, phases)``.  Its matrix has the entry
``exp(2*pi*i*phases[i])`` in row ``i``, column ``perm[i]`` and zeros elsewhere,
so diagonal matrices are exactly the elements with the identity permutation.
Phases are :class:`fractions.Fraction` values reduced into ``[0, 1)``; nothing
in this module touches floating point.

Group-level work (closure, conjugacy classes, commuting pairs) runs on a packed
integer encoding ``(p0, p1, p2, a0, a1, a2)`` with phases ``a_i / D`` for a
common denominator ``D``; the public objects are materialised from it.
"""

from __future__ import annotations

import enum
import math
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from typing import Iterable, Sequence

from .errors import CapExceeded, InvalidParameter, NotDiagonal, NotSpecialLinear

Perm3 = tuple[int, int, int]
Phases = tuple[Fraction, Fraction, Fraction]

IDENTITY_PERM: Perm3 = (0, 1, 2)
DEFAULT_CAP = 1_000_000

_ZERO = Fraction(0)
_HALF = Fraction(1, 2)


def _mod1(q) -> Fraction:
    q = Fraction(q)
    return q - math.floor(q)


def perm_is_odd(p: Sequence[int]) -> bool:
    inversions = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
    return inversions % 2 == 1


def perm_compose(p: Perm3, q: Perm3) -> Perm3:
    """Permutation part of ``(p, .) * (q, .)``: ``i -> q[p[i]]``."""
    return (q[p[0]], q[p[1]], q[p[2]])


def perm_inverse(p: Perm3) -> Perm3:
    inv = [0, 0, 0]
    for i, j in enumerate(p):
        inv[j] = i
    return (inv[0], inv[1], inv[2])


def permute_coords(p: Perm3, v: Sequence) -> tuple:
    """Coordinate action induced on the torus: ``(Qv)_i = v[p[i]]``."""
    return (v[p[0]], v[p[1]], v[p[2]])


@dataclass(frozen=True, order=True)
class MonomialElement:
    perm: Perm3
    phases: Phases

    def __post_init__(self):
        perm = tuple(int(i) for i in self.perm)
        if sorted(perm) != [0, 1, 2]:
            raise InvalidParameter(f"perm must be a bijection of {{0,1,2}}, got {self.perm!r}")
        if len(self.phases) != 3:
            raise InvalidParameter("phases must have exactly three entries")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "phases", tuple(_mod1(q) for q in self.phases))

    @classmethod
    def diagonal(cls, r: int, exponents: Iterable[int]) -> "MonomialElement":
        """The diagonal element written ``1/r(a, b, c)``."""
        return cls(IDENTITY_PERM, tuple(Fraction(a, r) for a in exponents))

    @property
    def is_diagonal(self) -> bool:
        return self.perm == IDENTITY_PERM

    @property
    def denominator(self) -> int:
        return math.lcm(*(q.denominator for q in self.phases))

    def __str__(self) -> str:
        ph = ", ".join(str(q) for q in self.phases)
        if self.is_diagonal:
            return f"diag({ph})"
        return f"mono{list(self.perm)}({ph})"


IDENTITY = MonomialElement(IDENTITY_PERM, (_ZERO, _ZERO, _ZERO))


def compose(a: MonomialElement, b: MonomialElement) -> MonomialElement:
    """Element whose matrix is ``matrix(a) @ matrix(b)``."""
    sa, pa, pb = a.perm, a.phases, b.phases
    return MonomialElement(
        perm_compose(sa, b.perm),
        (pa[0] + pb[sa[0]], pa[1] + pb[sa[1]], pa[2] + pb[sa[2]]),
    )


def inverse(a: MonomialElement) -> MonomialElement:
    inv = [_ZERO, _ZERO, _ZERO]
    for i, j in enumerate(a.perm):
        inv[j] = -a.phases[i]
    return MonomialElement(perm_inverse(a.perm), tuple(inv))


def determinant_phase(a: MonomialElement) -> Fraction:
    """``arg(det) / 2pi`` reduced mod 1; zero exactly on SL(3, C)."""
    total = sum(a.phases, _ZERO)
    if perm_is_odd(a.perm):
        total += _HALF
    return _mod1(total)


def age(d: MonomialElement) -> Fraction:
    if not d.is_diagonal:
        raise NotDiagonal(f"age is only defined for diagonal elements, got {d}")
    return sum(d.phases, _ZERO)


def fixed_subspace_dim(elems: Iterable[MonomialElement]) -> int:
    """Complex dimension of the common fixed space of ``elems`` on C^3.

    ``g v = v`` reads ``v_i = exp(2 pi i phi_i) v_{perm(i)}``, so along each
    orbit of the generated permutation group the arguments of a fixed vector
    are forced up to one free scalar.  An orbit contributes a dimension iff
    the forced arguments are consistent.
    """
    elems = list(elems)
    arg: dict[int, Fraction] = {}
    dim = 0
    for start in range(3):
        if start in arg:
            continue
        arg[start] = _ZERO
        orbit = [start]
        queue = deque([start])
        consistent = True
        while queue:
            i = queue.popleft()
            for g in elems:
                j = g.perm[i]
                # v_j = exp(-2 pi i phi_i) v_i
                want = _mod1(arg[i] - g.phases[i])
                if j not in arg:
                    arg[j] = want
                    orbit.append(j)
                    queue.append(j)
                elif arg[j] != want:
                    consistent = False
        dim += consistent
    return dim


# ---------------------------------------------------------------------------
# case tags and the standard generators


class Case(str, enum.Enum):
    ABELIAN = "abelian"
    I = "I"  # noqa: E741
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    UNSUPPORTED = "unsupported"

    @classmethod
    def parse(cls, text: str) -> "Case":
        try:
            return cls(text.strip())
        except ValueError:
            for case in cls:
                if case.name.lower() == text.strip().lower():
                    return case
        raise InvalidParameter(f"unknown case {text!r}; expected one of I, II, III, IV, V, abelian")


@dataclass(frozen=True)
class CaseTag:
    case: Case
    r: int | None = None

    def __str__(self) -> str:
        return self.case.value if self.r is None else f"{self.case.value}(r={self.r})"

    def same_group_type(self, other: "CaseTag") -> bool:
        """Equality up to the r=1 coincidence of cases I and II (both are <S>)."""
        if self == other:
            return True
        degenerate = {CaseTag(Case.I, 1), CaseTag(Case.II, 1)}
        return self in degenerate and other in degenerate


def _diag(r: int, a: int, b: int, c: int) -> MonomialElement:
    return MonomialElement.diagonal(r, (a, b, c))


S = MonomialElement((0, 2, 1), (_HALF, _HALF, _HALF))
T = MonomialElement((1, 2, 0), (_ZERO, _ZERO, _ZERO))
C = _diag(3, 1, 1, 1)


def H(r: int) -> MonomialElement:
    return _diag(r, 0, 1, -1)


def H_prime(r: int) -> MonomialElement:
    return _diag(r, 1, -1, 0)


@dataclass(frozen=True)
class GroupSpec:
    generators: tuple[MonomialElement, ...]
    label: CaseTag | None = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))


def check_case_parameter(case: Case, r: int) -> None:
    if case in (Case.ABELIAN, Case.UNSUPPORTED):
        raise InvalidParameter(f"no standard group for case {case.value}")
    if not isinstance(r, int) or r < 1:
        raise InvalidParameter(f"r must be a positive integer, got {r!r}")
    if case in (Case.III, Case.IV) and r % 3 == 0:
        raise InvalidParameter(f"r must not be divisible by 3 for case {case.value} (got r={r})")
    if case is Case.V and r != 1:
        raise InvalidParameter("case V has no parameter; use r=1")


def standard_group(case: Case | CaseTag, r: int | None = None) -> GroupSpec:
    """Generators of the five monomial families; trivial generators are dropped."""
    if isinstance(case, CaseTag):
        case, r = case.case, case.r
    if r is None:
        r = 1
    check_case_parameter(case, r)
    gens = {
        Case.I: [H(r), S],
        Case.II: [H(r), H_prime(r), S],
        Case.III: [H(r), S, T],
        Case.IV: [H(r), S, T, C],
        Case.V: [C, S],
    }[case]
    gens = [g for g in gens if g != IDENTITY]
    return GroupSpec(tuple(gens), CaseTag(case, r))


# ---------------------------------------------------------------------------
# packed arithmetic

Packed = tuple[int, int, int, int, int, int]


def _pack(g: MonomialElement, D: int) -> Packed:
    p = g.perm
    a = [int(q * D) for q in g.phases]
    return (p[0], p[1], p[2], a[0], a[1], a[2])


def _unpack(x: Packed, D: int) -> MonomialElement:
    return MonomialElement((x[0], x[1], x[2]), (Fraction(x[3], D), Fraction(x[4], D), Fraction(x[5], D)))


def _pmul(a: Packed, b: Packed, D: int) -> Packed:
    a0, a1, a2 = a[0], a[1], a[2]
    return (
        b[a0], b[a1], b[a2],
        (a[3] + b[3 + a0]) % D, (a[4] + b[3 + a1]) % D, (a[5] + b[3 + a2]) % D,
    )


def _pinv(a: Packed, D: int) -> Packed:
    out = [0] * 6
    for i in range(3):
        j = a[i]
        out[j] = i
        out[3 + j] = (-a[3 + i]) % D
    return tuple(out)


# ---------------------------------------------------------------------------
# finite groups


@dataclass(frozen=True)
class FiniteMonomialGroup:
    """A finite group of monomial matrices with canonically ordered elements."""

    elements: tuple[MonomialElement, ...]
    generators: tuple[MonomialElement, ...]
    denominator: int
    label: CaseTag | None = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: MonomialElement) -> bool:
        return g in self.index

    @cached_property
    def index(self) -> dict[MonomialElement, int]:
        return {g: i for i, g in enumerate(self.elements)}

    @cached_property
    def packed(self) -> list[Packed]:
        return [_pack(g, self.denominator) for g in self.elements]

    @cached_property
    def packed_index(self) -> dict[Packed, int]:
        return {x: i for i, x in enumerate(self.packed)}

    @cached_property
    def diagonal_elements(self) -> tuple[MonomialElement, ...]:
        return tuple(g for g in self.elements if g.is_diagonal)

    @property
    def diagonal_order(self) -> int:
        return len(self.diagonal_elements)

    @cached_property
    def perm_image(self) -> frozenset[Perm3]:
        return frozenset(g.perm for g in self.elements)

    @cached_property
    def exponent_denominator(self) -> int:
        """lcm of the phase denominators of the diagonal part."""
        return math.lcm(1, *(g.denominator for g in self.diagonal_elements))

    def lift(self, perm: Perm3) -> MonomialElement:
        """Canonical (least) element with the given permutation part."""
        for g in self.elements:
            if g.perm == perm:
                return g
        raise KeyError(perm)

    def is_abelian(self) -> bool:
        return commuting_pair_count(self) == self.order**2


def _check_generators(gens: Sequence[MonomialElement]) -> None:
    for g in gens:
        if determinant_phase(g) != 0:
            raise NotSpecialLinear(f"generator {g} has determinant phase {determinant_phase(g)}, not in SL(3,C)")


def closure(spec: GroupSpec | Sequence[MonomialElement], cap: int = DEFAULT_CAP) -> FiniteMonomialGroup:
    """Breadth-first closure of the generators under composition.

    Raises :class:`CapExceeded` once more than ``cap`` distinct elements have
    been produced.
    """
    if cap < 1:
        raise InvalidParameter("cap must be at least 1")
    if isinstance(spec, GroupSpec):
        gens, label = spec.generators, spec.label
    else:
        gens, label = tuple(spec), None
    _check_generators(gens)
    D = math.lcm(1, *(g.denominator for g in gens))
    pgens = [_pack(g, D) for g in gens]
    ident = _pack(IDENTITY, D)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for y in pgens:
            z = _pmul(x, y, D)
            if z not in seen:
                seen.add(z)
                if len(seen) > cap:
                    raise CapExceeded(f"closure produced more than {cap} elements")
                queue.append(z)
    # packed order agrees with the canonical (perm, phases) order
    fracs = [Fraction(k, D) for k in range(D)]
    elements = tuple(
        MonomialElement((x[0], x[1], x[2]), (fracs[x[3]], fracs[x[4]], fracs[x[5]]))
        for x in sorted(seen)
    )
    return FiniteMonomialGroup(elements, tuple(gens), D, label)


def _subgroup(g: FiniteMonomialGroup, elements: Iterable[MonomialElement], gens=None) -> FiniteMonomialGroup:
    elements = tuple(sorted(elements))
    return FiniteMonomialGroup(elements, tuple(gens if gens is not None else elements), g.denominator)


def diagonal_subgroup(g: FiniteMonomialGroup) -> FiniteMonomialGroup:
    """The normal abelian subgroup G' of diagonal elements (verified)."""
    diag = g.diagonal_elements
    sub = _subgroup(g, diag)
    D = g.denominator
    # diagonal elements of a group always form a subgroup; normality only
    # needs checking against the generators
    pdiag = {_pack(d, D) for d in diag}
    for gen in g.generators:
        x = _pack(gen, D)
        xi = _pinv(x, D)
        for y in pdiag:
            if _pmul(_pmul(x, y, D), xi, D) not in pdiag:
                raise AssertionError("diagonal part is not normal")
    return sub


# ---------------------------------------------------------------------------
# conjugacy and commuting pairs


@dataclass(frozen=True)
class ConjugacyPartition:
    classes: tuple[tuple[int, ...], ...]

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


def conjugacy_classes(g: FiniteMonomialGroup) -> ConjugacyPartition:
    """Orbits of the conjugation action, found by exhaustive orbit search.

    Conjugation by the generators (and their inverses) generates the whole
    conjugation action, so the orbits are the conjugacy classes.  Classes
    come out ordered by their least element index.
    """
    D = g.denominator
    pidx = g.packed_index
    conj = []
    for h in g.generators:
        ph = _pack(h, D)
        conj.append((ph, _pinv(ph, D)))
    label = [-1] * g.order
    classes = []
    for start, x in enumerate(g.packed):
        if label[start] >= 0:
            continue
        cid = len(classes)
        label[start] = cid
        members = [start]
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for ph, phi in conj:
                for a, b in ((ph, phi), (phi, ph)):
                    z = _pmul(_pmul(a, y, D), b, D)
                    k = pidx[z]
                    if label[k] < 0:
                        label[k] = cid
                        members.append(k)
                        queue.append(z)
        classes.append(tuple(sorted(members)))
    return ConjugacyPartition(tuple(classes))


def commuting_pair_count(g: FiniteMonomialGroup) -> int:
    """``#{(x, y) in G x G : xy = yx}``.

    With ``x = (s, f)`` and ``y = (t, h)``, ``xy = yx`` iff the permutations
    commute and ``f - f o t == h - h o s`` (mod 1).  Pairs are therefore
    counted per pair of permutation cosets by matching the two difference
    histograms, which is exact and linear in ``|G|`` per coset pair.
    """
    D = g.denominator
    cosets: dict[Perm3, list[tuple[int, int, int]]] = {}
    for x in g.packed:
        cosets.setdefault(x[:3], []).append(x[3:])
    total = 0
    for s, fs in cosets.items():
        for t, hs in cosets.items():
            if perm_compose(s, t) != perm_compose(t, s):
                continue
            left = Counter(
                tuple((f[i] - f[t[i]]) % D for i in range(3)) for f in fs
            )
            right = Counter(
                tuple((h[i] - h[s[i]]) % D for i in range(3)) for h in hs
            )
            total += sum(n * right[v] for v, n in left.items())
    return total


def orbifold_euler(g: FiniteMonomialGroup, partition: ConjugacyPartition | None = None) -> int:
    """Orbifold Euler characteristic of (C^3, G).

    Every common fixed set of a commuting pair is a linear subspace of C^3
    with Euler characteristic 1, so the sum over commuting pairs divided by
    ``|G|`` is just the commuting-pair count over the order.
    """
    pairs = commuting_pair_count(g)
    value, rem = divmod(pairs, g.order)
    if rem:
        raise ArithmeticError(f"{pairs} commuting pairs not divisible by |G| = {g.order}")
    if partition is None:
        partition = conjugacy_classes(g)
    if value != partition.class_count:
        raise AssertionError(
            f"Burnside identity failed: {pairs}/{g.order} != {partition.class_count} classes"
        )
    return value


# ---------------------------------------------------------------------------
# classification


def _is_cyclic(diag: Sequence[MonomialElement]) -> bool:
    n = len(diag)
    return any(d.denominator == n for d in diag) or n == 1


def _all_junior_shift_group(r: int) -> set[MonomialElement]:
    """All ``1/r(a, b, c)`` with ``a + b + c = 0 (mod r)``: the order r^2 group."""
    return {
        _diag(r, a, b, (-a - b) % r)
        for a in range(r)
        for b in range(r)
    }


def _transposition_fixed_coord(p: Perm3) -> int | None:
    fixed = [i for i in range(3) if p[i] == i]
    return fixed[0] if len(fixed) == 1 else None


def classify(g: FiniteMonomialGroup) -> CaseTag:
    """Identify which monomial family ``g`` belongs to from structural invariants."""
    diag = g.diagonal_elements
    dset = set(diag)
    n = len(diag)
    image = g.perm_image
    if len(image) == 1:
        return CaseTag(Case.ABELIAN, g.exponent_denominator)

    # every non-identity permutation must normalise G'
    D = g.denominator
    pdiag = {_pack(d, D) for d in diag}
    seen_perms = set()
    for x in g.packed:
        if x[:3] == IDENTITY_PERM or x[:3] in seen_perms:
            continue
        seen_perms.add(x[:3])
        xi = _pinv(x, D)
        if any(_pmul(_pmul(x, y, D), xi, D) not in pdiag for y in pdiag):
            return CaseTag(Case.UNSUPPORTED)

    unsupported = CaseTag(Case.UNSUPPORTED)
    if len(image) == 2:
        (swap,) = [p for p in image if p != IDENTITY_PERM]
        fixed = _transposition_fixed_coord(swap)
        if fixed is None:
            return unsupported
        if dset == {IDENTITY, C, compose(C, C)}:
            return CaseTag(Case.V, 1)
        if _is_cyclic(diag) and all(d.phases[fixed] == 0 for d in diag):
            return CaseTag(Case.I, n)
        r = math.isqrt(n)
        if r * r == n and dset == _all_junior_shift_group(r):
            return CaseTag(Case.II, r)
        return unsupported
    if len(image) == 6:
        if C not in dset:
            r = math.isqrt(n)
            if r * r == n and r % 3 and dset == _all_junior_shift_group(r):
                return CaseTag(Case.III, r)
            return unsupported
        if n % 3:
            return unsupported
        r = math.isqrt(n // 3)
        if 3 * r * r != n or r % 3 == 0:
            return unsupported
        if C in dset and _all_junior_shift_group(r) <= dset:
            return CaseTag(Case.IV, r)
        return unsupported
    return unsupported


def all_perms() -> list[Perm3]:
    return [tuple(p) for p in permutations(range(3))]
