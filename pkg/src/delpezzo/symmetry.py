"""Automorphisms of the degree-5 del Pezzo lattice and their orbit structure.

Two generator families: coordinate permutations of the four exceptional
classes, and the quadratic involutions based at three of the four points
(L -> 2L - Ei - Ej - Ek).  Their closure has order 120 and acts on the ten
(-1)-classes; the orbit computations below back the transitivity statements
used to normalize cover data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .covers import BidoubleData
from .curves import ALL_MINUS_ONE_CLASSES
from .lattice import (
    E,
    K,
    L,
    DivisorClass,
    InternalFaultError,
    intersect,
)

Matrix = tuple[tuple[int, ...], ...]

GROUP_CAP = 1000

_GRAM: Matrix = (
    (1, 0, 0, 0, 0),
    (0, -1, 0, 0, 0),
    (0, 0, -1, 0, 0),
    (0, 0, 0, -1, 0),
    (0, 0, 0, 0, -1),
)


def _columns_to_matrix(images: list[DivisorClass]) -> Matrix:
    return tuple(tuple(images[j].coeffs[i] for j in range(5)) for i in range(5))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(5)) for j in range(5))
        for i in range(5)
    )


@dataclass(frozen=True)
class LatticeAutomorphism:
    """Integer 5x5 matrix acting on standard-basis coefficient vectors."""

    matrix: Matrix
    name: str = ""

    def __post_init__(self):
        transpose = tuple(tuple(self.matrix[j][i] for j in range(5)) for i in range(5))
        if _mat_mul(_mat_mul(transpose, _GRAM), self.matrix) != _GRAM:
            raise ValueError(f"matrix does not preserve the intersection form: {self.matrix}")
        if self.apply(K) != K:
            raise ValueError("automorphism must fix the canonical class")

    def apply(self, d: DivisorClass) -> DivisorClass:
        return DivisorClass(
            tuple(sum(self.matrix[i][j] * d.coeffs[j] for j in range(5)) for i in range(5))
        )

    def compose(self, other: "LatticeAutomorphism") -> "LatticeAutomorphism":
        """self after other (matrix product)."""
        return LatticeAutomorphism(_mat_mul(self.matrix, other.matrix))

    def preserves_gram(self) -> bool:
        transpose = tuple(tuple(self.matrix[j][i] for j in range(5)) for i in range(5))
        return _mat_mul(_mat_mul(transpose, _GRAM), self.matrix) == _GRAM


IDENTITY = LatticeAutomorphism(_columns_to_matrix([L, *E]), name="id")


def perm_automorphism(s: dict[int, int] | tuple[int, int, int, int]) -> LatticeAutomorphism:
    """Automorphism sending Ei -> E_{s(i)} and fixing L.

    `s` is a permutation of {1,2,3,4}, given as a mapping or as the one-line
    tuple (s(1), s(2), s(3), s(4)).
    """
    if not isinstance(s, dict):
        s = {i + 1: v for i, v in enumerate(s)}
    if sorted(s) != [1, 2, 3, 4] or sorted(s.values()) != [1, 2, 3, 4]:
        raise ValueError(f"not a permutation of 1..4: {s}")
    images = [L] + [E[s[i] - 1] for i in (1, 2, 3, 4)]
    name = "".join(str(s[i]) for i in (1, 2, 3, 4))
    return LatticeAutomorphism(_columns_to_matrix(images), name=f"perm:{name}")


def cremona_automorphism(base: set[int] | frozenset[int] | tuple[int, ...]) -> LatticeAutomorphism:
    """Quadratic involution based at three points: L -> 2L - Ei - Ej - Ek,
    Ei -> L - Ej - Ek for i in the base, the remaining class fixed."""
    base = frozenset(base)
    if len(base) != 3 or not base <= {1, 2, 3, 4}:
        raise ValueError(f"base must be a 3-subset of {{1,2,3,4}}, got {set(base)}")
    images = [2 * L - sum((E[i - 1] for i in base), DivisorClass((0, 0, 0, 0, 0)))]
    for i in (1, 2, 3, 4):
        if i in base:
            j, k = sorted(base - {i})
            images.append(L - E[j - 1] - E[k - 1])
        else:
            images.append(E[i - 1])
    name = "".join(str(i) for i in sorted(base))
    return LatticeAutomorphism(_columns_to_matrix(images), name=f"cremona:{name}")


@lru_cache(maxsize=1)
def generate_group() -> tuple[LatticeAutomorphism, ...]:
    """Closure of the permutation and quadratic generators under composition."""
    generators = [perm_automorphism(p) for p in itertools.permutations((1, 2, 3, 4))]
    generators += [cremona_automorphism(b) for b in itertools.combinations((1, 2, 3, 4), 3)]
    seen: dict[Matrix, LatticeAutomorphism] = {IDENTITY.matrix: IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        new_frontier = []
        for g in frontier:
            for gen in generators:
                h = gen.compose(g)
                if h.matrix not in seen:
                    if len(seen) >= GROUP_CAP:
                        raise InternalFaultError("group closure exceeded the cap")
                    seen[h.matrix] = h
                    new_frontier.append(h)
        frontier = new_frontier
    return tuple(seen.values())


def line_orbits(group: tuple[LatticeAutomorphism, ...] | None = None) -> list[set[DivisorClass]]:
    """Orbit partition of the ten (-1)-classes of the general configuration."""
    group = group or generate_group()
    remaining = set(ALL_MINUS_ONE_CLASSES)
    orbits = []
    while remaining:
        seed = remaining.pop()
        orbit = {g.apply(seed) for g in group}
        remaining -= orbit
        orbits.append(orbit)
    return orbits


@dataclass(frozen=True)
class LineTransitivityReport:
    transitive_on_lines: bool
    stabilizer_transitive_on_disjoint: bool
    transitive_on_disjoint_pairs: bool

    def all_hold(self) -> bool:
        return (
            self.transitive_on_lines
            and self.stabilizer_transitive_on_disjoint
            and self.transitive_on_disjoint_pairs
        )


def line_transitivity_report() -> LineTransitivityReport:
    """Three orbit facts on the ten lines: the group is transitive; the
    stabilizer of a line is transitive on the six lines disjoint from it; and
    the action is transitive on ordered disjoint pairs."""
    group = generate_group()
    lines = ALL_MINUS_ONE_CLASSES

    transitive = len(line_orbits(group)) == 1

    stab_ok = True
    for line in lines:
        stabilizer = [g for g in group if g.apply(line) == line]
        disjoint = [c for c in lines if c != line and intersect(c, line) == 0]
        seed = disjoint[0]
        orbit = {g.apply(seed) for g in stabilizer}
        if orbit != set(disjoint):
            stab_ok = False
            break

    pairs = [
        (a, b) for a in lines for b in lines
        if a != b and intersect(a, b) == 0
    ]
    seed_pair = pairs[0]
    pair_orbit = {(g.apply(seed_pair[0]), g.apply(seed_pair[1])) for g in group}
    pairs_ok = pair_orbit == set(pairs)

    return LineTransitivityReport(
        transitive_on_lines=transitive,
        stabilizer_transitive_on_disjoint=stab_ok,
        transitive_on_disjoint_pairs=pairs_ok,
    )


def transport_cover_data(data: BidoubleData, g: LatticeAutomorphism) -> BidoubleData:
    """Apply a lattice automorphism to every branch component."""
    if not data.cfg.is_general:
        raise ValueError("cover-data transport is defined on the general configuration")
    return BidoubleData(
        d1=tuple(g.apply(c) for c in data.d1),
        d2=tuple(g.apply(c) for c in data.d2),
        d3=tuple(g.apply(c) for c in data.d3),
        cfg=data.cfg,
    )


def same_family(a: BidoubleData, b: BidoubleData) -> bool:
    """Branch data define the same family when the three branch classes agree
    up to permutation of the indices (each compared as a divisor class)."""
    if a.cfg != b.cfg:
        return False
    return sorted(x.coeffs for x in a.branch_classes) == sorted(
        x.coeffs for x in b.branch_classes
    )
