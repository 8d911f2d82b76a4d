"""h^0 of divisor classes via fixed-part reduction plus Riemann-Roch.

The reduction loop subtracts irreducible negative curves that pair negatively
with the class; such curves are fixed components and carry no sections, so h^0
is invariant along the loop.  On exit the class pairs >= 0 with every negative
curve, hence is nef, and h^0 equals chi (h^1 = h^2 = 0 for nef classes on a
weak del Pezzo surface).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .lattice import (
    MINUS_K,
    DivisorClass,
    GENERAL,
    InternalFaultError,
    SurfaceConfiguration,
    anticanonical_class,
    intersect,
)
from .curves import minus_two_curves, negative_curve_classes

REDUCTION_CAP = 10_000


@dataclass
class ReductionTrace:
    """Record of one fixed-part reduction: subtracted curves and the nef result."""

    start: DivisorClass
    steps: list[tuple[DivisorClass, int]] = field(default_factory=list)
    result: DivisorClass | None = None
    value: int | None = None


def _ceil_div(num: int, den: int) -> int:
    return -((-num) // den)


def _reduce_to_nef(d: DivisorClass, cfg: SurfaceConfiguration, trace: ReductionTrace) -> DivisorClass | None:
    """Strip fixed negative curves; None means h^0 = 0 was detected."""
    walls = negative_curve_classes(cfg)
    for _ in range(REDUCTION_CAP):
        if intersect(d, MINUS_K) < 0:
            return None
        for wall in walls:
            pairing = intersect(d, wall)
            if pairing < 0:
                mult = _ceil_div(pairing, intersect(wall, wall))
                d = d - mult * wall
                trace.steps.append((wall, mult))
                break
        else:
            return d
    raise InternalFaultError(f"reduction cap exceeded; trace: {trace.steps}")


def _is_nonnegative_minus_two_combination(d: DivisorClass, cfg: SurfaceConfiguration) -> bool:
    """Solve d = sum(n_T * T) over the (-2)-curves; the T are independent."""
    thetas = [t.cls for t in minus_two_curves(cfg)]
    if not thetas:
        return d.is_zero()
    # Gram system: pairing with each theta determines the coefficients.
    n = len(thetas)
    gram = [[intersect(a, b) for b in thetas] for a in thetas]
    rhs = [intersect(d, t) for t in thetas]
    coeffs = _solve_exact(gram, rhs)
    if coeffs is None or any(x < 0 or x.denominator != 1 for x in coeffs):
        return False
    combo = d
    for x, t in zip(coeffs, thetas):
        combo = combo - int(x) * t
    return combo.is_zero()


def _solve_exact(matrix: list[list[int]], rhs: list[int]) -> list[Fraction] | None:
    """Gaussian elimination over the rationals; None if singular."""
    n = len(matrix)
    a = [[Fraction(matrix[i][j]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def h0_with_trace(d: DivisorClass, cfg: SurfaceConfiguration) -> ReductionTrace:
    from .lattice import riemann_roch_chi

    trace = ReductionTrace(start=d)
    if intersect(d, MINUS_K) < 0:
        # Effective classes pair >= 0 with the nef class -K, so h^0 = 0.
        trace.value = 0
        return trace
    nef = _reduce_to_nef(d, cfg, trace)
    if nef is None:
        trace.value = 0
        return trace
    trace.result = nef
    degree = intersect(nef, MINUS_K)
    if degree > 0:
        trace.value = riemann_roch_chi(nef)
    elif nef.is_zero() or _is_nonnegative_minus_two_combination(nef, cfg):
        trace.value = 1
    else:
        trace.value = 0
    return trace


def h0(d: DivisorClass, cfg: SurfaceConfiguration) -> int:
    value = h0_with_trace(d, cfg).value
    assert value is not None
    return value


def is_effective(d: DivisorClass, cfg: SurfaceConfiguration) -> bool:
    return h0(d, cfg) >= 1


def find_half_anticanonical_pencils(coefficient_bound: int,
                                    require_effective_complement: bool = True) -> list[DivisorClass]:
    """Scan the general configuration for classes d with h^0(d) > 1 whose double
    is dominated by the anticanonical class (-K - 2d effective).

    An exhaustive scan over |coefficients| <= bound; expected empty.
    """
    if coefficient_bound < 1:
        raise ValueError("coefficient bound must be positive")
    minus_k = anticanonical_class(GENERAL)
    violations = []
    span = range(-coefficient_bound, coefficient_bound + 1)
    for c0 in span:
        for c1 in span:
            for c2 in span:
                for c3 in span:
                    for c4 in span:
                        d = DivisorClass((c0, c1, c2, c3, c4))
                        if h0(d, GENERAL) <= 1:
                            continue
                        if not require_effective_complement or is_effective(minus_k - 2 * d, GENERAL):
                            violations.append(d)
    return violations
