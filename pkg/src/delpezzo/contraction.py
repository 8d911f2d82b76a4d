"""Contraction of the (-2)-curves: Q-pullback and intersections downstairs.

A class on the singular anticanonical image is named by a representative
divisor class upstairs; its numerical pullback is the unique Q-class
rep + sum(x_i * T_i) orthogonal to every contracted (-2)-curve T_i.  The Gram
matrix of the T_i is negative definite, so the correcting system always has a
unique rational solution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cohomology import _solve_exact
from .curves import minus_two_curves
from .lattice import (
    DivisorClass,
    InternalFaultError,
    QDivisorClass,
    SurfaceConfiguration,
    intersect,
)


@dataclass(frozen=True)
class SigmaClass:
    """A divisor class on the contracted surface, named by an upstairs representative.

    Two representatives name the same class iff they differ by an integer
    combination of (-2)-curves.
    """

    rep: DivisorClass
    cfg: SurfaceConfiguration

    def __str__(self) -> str:
        return f"push({self.rep})@{self.cfg.name}"


def mumford_pullback(s: SigmaClass) -> QDivisorClass:
    """The Q-class upstairs pairing 0 with every (-2)-curve of the configuration."""
    thetas = [t.cls for t in minus_two_curves(s.cfg)]
    result = s.rep.as_q()
    if not thetas:
        return result
    gram = [[intersect(a, b) for b in thetas] for a in thetas]
    rhs = [-intersect(s.rep, t) for t in thetas]
    coeffs = _solve_exact(gram, rhs)
    if coeffs is None:
        raise InternalFaultError("(-2) Gram matrix is singular")
    for x, theta in zip(coeffs, thetas):
        result = result + x * theta
    return result


def sigma_intersect(s: SigmaClass, t: SigmaClass) -> int | Fraction:
    """Intersection number on the singular model, independent of representatives."""
    if s.cfg != t.cfg:
        raise ValueError(f"configurations differ: {s.cfg} vs {t.cfg}")
    return intersect(mumford_pullback(s), mumford_pullback(t))


def singularity_types(cfg: SurfaceConfiguration) -> tuple[str, ...]:
    """ADE labels of the contracted points: connected (-2)-chains give A_k."""
    thetas = [t.cls for t in minus_two_curves(cfg)]
    labels = []
    unseen = set(range(len(thetas)))
    while unseen:
        stack = [unseen.pop()]
        component = {stack[0]}
        while stack:
            i = stack.pop()
            for j in list(unseen):
                if intersect(thetas[i], thetas[j]) != 0:
                    unseen.remove(j)
                    component.add(j)
                    stack.append(j)
        labels.append(f"A{len(component)}")
    return tuple(sorted(labels))
