"""Negative curves and ruling pencils of each surface configuration.

The candidate (-2)-classes of a configuration are the collinearity class
L - Ei - Ej - Ek and the differences Ei - Ej for consecutive chain points; a
full sweep of the root system in the tests confirms no other (-2)-class
survives the irreducibility filter.  (-1)-curves are the ten lattice classes
with C^2 = C.K = -1, filtered by non-negative pairing against the irreducible
(-2)-curves.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .lattice import (
    E,
    K,
    L,
    DivisorClass,
    SurfaceConfiguration,
    intersect,
)


class CurveKind(Enum):
    MINUS_ONE = -1
    MINUS_TWO = -2


@dataclass(frozen=True)
class NegativeCurve:
    cls: DivisorClass
    kind: CurveKind

    def __post_init__(self):
        sq = intersect(self.cls, self.cls)
        k = intersect(self.cls, K)
        expected = (-1, -1) if self.kind is CurveKind.MINUS_ONE else (-2, 0)
        if (sq, k) != expected:
            raise ValueError(f"{self.cls} has (C^2, C.K) = {(sq, k)}, not {expected}")


#: The ten (-1)-classes of the lattice: E1..E4 and L - Ei - Ej.
ALL_MINUS_ONE_CLASSES: tuple[DivisorClass, ...] = tuple(E) + tuple(
    L - E[i] - E[j] for i, j in itertools.combinations(range(4), 2)
)


def lattice_roots() -> tuple[DivisorClass, ...]:
    """All 20 classes with C^2 = -2, C.K = 0 (the A4 root system in K-perp)."""
    roots = []
    for i, j in itertools.permutations(range(4), 2):
        roots.append(E[i] - E[j])
    for i, j, k in itertools.combinations(range(4), 3):
        base = L - E[i] - E[j] - E[k]
        roots.append(base)
        roots.append(-base)
    return tuple(roots)


def _sort_key(d: DivisorClass) -> tuple[int, ...]:
    return d.coeffs


@lru_cache(maxsize=None)
def minus_two_curves(cfg: SurfaceConfiguration) -> tuple[NegativeCurve, ...]:
    """Irreducible (-2)-curves: chain differences plus the collinearity class."""
    classes: list[DivisorClass] = []
    if len(cfg.collinear) == 3:
        i, j, k = sorted(cfg.collinear)
        classes.append(L - E[i - 1] - E[j - 1] - E[k - 1])
    for chain in cfg.chains:
        for a, b in zip(chain, chain[1:]):
            classes.append(E[a - 1] - E[b - 1])
    classes.sort(key=_sort_key)
    return tuple(NegativeCurve(c, CurveKind.MINUS_TWO) for c in classes)


@lru_cache(maxsize=None)
def minus_one_curves(cfg: SurfaceConfiguration) -> tuple[NegativeCurve, ...]:
    """The (-1)-classes that remain irreducible curves in this configuration."""
    walls = [t.cls for t in minus_two_curves(cfg)]
    kept = [
        c for c in ALL_MINUS_ONE_CLASSES
        if all(intersect(c, w) >= 0 for w in walls)
    ]
    kept.sort(key=_sort_key)
    return tuple(NegativeCurve(c, CurveKind.MINUS_ONE) for c in kept)


def negative_curves(cfg: SurfaceConfiguration) -> tuple[NegativeCurve, ...]:
    return minus_one_curves(cfg) + minus_two_curves(cfg)


def negative_curve_classes(cfg: SurfaceConfiguration) -> tuple[DivisorClass, ...]:
    return tuple(c.cls for c in negative_curves(cfg))


def is_irreducible(d: DivisorClass, cfg: SurfaceConfiguration) -> bool:
    """Mori-cone test for a (-1)- or (-2)-class: pair >= 0 with every other
    irreducible negative curve of the configuration."""
    sq = intersect(d, d)
    k = intersect(d, K)
    if (sq, k) not in ((-1, -1), (-2, 0)):
        raise ValueError(f"{d} is not a (-1)- or (-2)-type class: (C^2, C.K) = {(sq, k)}")
    return all(
        intersect(d, c.cls) >= 0
        for c in negative_curves(cfg)
        if c.cls != d
    )


def incidence_graph(cfg: SurfaceConfiguration) -> tuple[tuple[DivisorClass, ...], tuple[tuple[int, ...], ...]]:
    """Pairing matrix over minus-one then minus-two curves, with its row order."""
    curves = negative_curve_classes(cfg)
    matrix = tuple(tuple(intersect(a, b) for b in curves) for a in curves)
    return curves, matrix


def ruling_candidates() -> tuple[DivisorClass, ...]:
    """All lattice classes with f^2 = 0 and -K.f = 2.

    Writing f = a*L - sum(bi*Ei), Cauchy-Schwarz forces a in {1, 2}; the
    solutions are the four L - Ei and 2L - E1 - E2 - E3 - E4.
    """
    found = []
    for a in (1, 2):
        target_sum, target_sq = 3 * a - 2, a * a
        for bs in itertools.product(range(-2, 3), repeat=4):
            if sum(bs) == target_sum and sum(b * b for b in bs) == target_sq:
                found.append(DivisorClass((a, *(-b for b in bs))))
    found.sort(key=_sort_key)
    return tuple(found)


@lru_cache(maxsize=None)
def ruling_classes(cfg: SurfaceConfiguration, require_minus_two_orthogonal: bool = False) -> tuple[DivisorClass, ...]:
    """Classes of base-point-free pencils of rational curves.

    Keeps every f with f^2 = 0, -K.f = 2 that moves in a pencil with no fixed
    part: h^0 >= 2 with an empty fixed-part reduction, the latter equivalent
    to f.C >= 0 against every irreducible negative curve.  With the flag set,
    additionally f.T = 0 for every (-2)-curve T, i.e. every (-2)-curve lies
    in a fiber.
    """
    from .cohomology import h0_with_trace  # deferred: cohomology builds on this module

    thetas = [t.cls for t in minus_two_curves(cfg)]
    kept = []
    for f in ruling_candidates():
        trace = h0_with_trace(f, cfg)
        if trace.steps or trace.value < 2:
            continue
        if require_minus_two_orthogonal and any(intersect(f, t) != 0 for t in thetas):
            continue
        kept.append(f)
    return tuple(kept)
