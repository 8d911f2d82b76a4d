"""Picard lattice of a 4-point blow-up of the plane, with exact arithmetic.

The lattice has rank 5 with orthogonal basis (L, E1, E2, E3, E4), Gram form
diag(+1, -1, -1, -1, -1).  Divisor classes are integer coefficient vectors in
this basis; Q-classes carry exact rational coefficients.  A surface
configuration records which of the four blown-up points are collinear and
which sit infinitely near a previous one; it induces the unimodular change of
basis to the "curve basis" of actual exceptional curves (strict transforms).

No floating point is used anywhere: integers are exact, rationals are
`fractions.Fraction`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

RANK = 5

Coeff = Union[int, Fraction]


class InternalFaultError(RuntimeError):
    """An invariant the toolkit relies on was violated (never expected)."""


def _as_int(x: Coeff) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise TypeError(f"expected exact integer/rational coefficient, got {x!r}")
    if isinstance(x, Fraction):
        if x.denominator != 1:
            raise ValueError(f"non-integral coefficient {x}")
        return int(x)
    return x


@dataclass(frozen=True)
class DivisorClass:
    """Integer class c0*L + c1*E1 + ... + c4*E4 in the standard basis."""

    coeffs: tuple[int, int, int, int, int]

    def __post_init__(self):
        if len(self.coeffs) != RANK:
            raise ValueError(f"need {RANK} coefficients, got {len(self.coeffs)}")
        object.__setattr__(self, "coeffs", tuple(_as_int(c) for c in self.coeffs))

    def dot(self, other: "DivisorClass | QDivisorClass") -> Coeff:
        return intersect(self, other)

    def __add__(self, other):
        if isinstance(other, DivisorClass):
            return DivisorClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))
        if isinstance(other, QDivisorClass):
            return self.as_q() + other
        return NotImplemented

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return DivisorClass(tuple(-a for a in self.coeffs))

    def __rmul__(self, n):
        if isinstance(n, int):
            return DivisorClass(tuple(n * a for a in self.coeffs))
        if isinstance(n, Fraction):
            return QDivisorClass(tuple(n * a for a in self.coeffs))
        return NotImplemented

    __mul__ = __rmul__

    def as_q(self) -> "QDivisorClass":
        return QDivisorClass(tuple(Fraction(a) for a in self.coeffs))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def __str__(self) -> str:
        return render_class(self.coeffs)


@dataclass(frozen=True)
class QDivisorClass:
    """Exact-rational class in the standard basis (Mumford pullbacks live here)."""

    coeffs: tuple[Fraction, Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        if len(self.coeffs) != RANK:
            raise ValueError(f"need {RANK} coefficients, got {len(self.coeffs)}")
        if any(isinstance(c, float) for c in self.coeffs):
            raise TypeError("coefficients must be exact integers or Fractions, not floats")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    def dot(self, other: "DivisorClass | QDivisorClass") -> Coeff:
        return intersect(self, other)

    def __add__(self, other):
        if isinstance(other, (DivisorClass, QDivisorClass)):
            oc = other.coeffs
            return QDivisorClass(tuple(a + b for a, b in zip(self.coeffs, oc)))
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return QDivisorClass(tuple(-a for a in self.coeffs))

    def __rmul__(self, n):
        if isinstance(n, (int, Fraction)):
            return QDivisorClass(tuple(n * a for a in self.coeffs))
        return NotImplemented

    __mul__ = __rmul__

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coeffs)

    def as_integral(self) -> DivisorClass:
        if not self.is_integral():
            raise ValueError(f"{self} is not an integral class")
        return DivisorClass(tuple(int(a) for a in self.coeffs))

    def __str__(self) -> str:
        return render_class(self.coeffs)


AnyClass = Union[DivisorClass, QDivisorClass]


def intersect(a: AnyClass, b: AnyClass) -> Coeff:
    """Signature (1,4) pairing: a0*b0 - sum(ai*bi).  Integer when both are."""
    ac, bc = a.coeffs, b.coeffs
    value = ac[0] * bc[0] - sum(ac[i] * bc[i] for i in range(1, RANK))
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value)
    return value


def divisor(c0: int, c1: int, c2: int, c3: int, c4: int) -> DivisorClass:
    return DivisorClass((c0, c1, c2, c3, c4))


L = divisor(1, 0, 0, 0, 0)
E = (
    divisor(0, 1, 0, 0, 0),
    divisor(0, 0, 1, 0, 0),
    divisor(0, 0, 0, 1, 0),
    divisor(0, 0, 0, 0, 1),
)
ZERO = divisor(0, 0, 0, 0, 0)
K = divisor(-3, 1, 1, 1, 1)
MINUS_K = -K


# ---------------------------------------------------------------------------
# Surface configurations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SurfaceConfiguration:
    """Position data of the four blown-up points.

    `collinear` is the set of point indices lying on one line, `chains` the
    ordered infinitely-near chains (each later point infinitely near the
    previous one).  The seven supported configurations are in CONFIGURATIONS.
    """

    name: str
    collinear: frozenset[int]
    chains: tuple[tuple[int, ...], ...]

    @property
    def is_general(self) -> bool:
        return not self.collinear and not self.chains

    def chain_successor(self, i: int) -> int | None:
        """Point infinitely near point i, if any."""
        for chain in self.chains:
            for pos, j in enumerate(chain[:-1]):
                if j == i:
                    return chain[pos + 1]
        return None

    def __str__(self) -> str:
        return self.name


def _cfg(name: str, collinear: Iterable[int] = (), chains: Sequence[Sequence[int]] = ()) -> SurfaceConfiguration:
    return SurfaceConfiguration(
        name=name,
        collinear=frozenset(collinear),
        chains=tuple(tuple(chain) for chain in chains),
    )


CONFIGURATIONS: dict[str, SurfaceConfiguration] = {
    "GENERAL": _cfg("GENERAL"),
    "P1": _cfg("P1", {1, 2, 3}),
    "P2": _cfg("P2", {1, 2, 3}, [(2, 3)]),
    "P3": _cfg("P3", {1, 2, 3}, [(1, 2, 3)]),
    "P4": _cfg("P4", {1, 2, 3}, [(3, 4)]),
    "P5": _cfg("P5", {1, 2, 3}, [(2, 3, 4)]),
    "P6": _cfg("P6", {1, 2, 3}, [(1, 2, 3, 4)]),
}

GENERAL = CONFIGURATIONS["GENERAL"]


def get_configuration(name: str) -> SurfaceConfiguration:
    try:
        return CONFIGURATIONS[name.upper()]
    except KeyError:
        raise ValueError(
            f"unknown configuration {name!r}; expected one of {sorted(CONFIGURATIONS)}"
        ) from None


def canonical_class(cfg: SurfaceConfiguration) -> DivisorClass:
    """K = -3L + E1 + E2 + E3 + E4; the same vector in every configuration."""
    del cfg
    return K


def anticanonical_class(cfg: SurfaceConfiguration) -> DivisorClass:
    del cfg
    return MINUS_K


# ---------------------------------------------------------------------------
# Curve basis
# ---------------------------------------------------------------------------

def exceptional_curve_class(cfg: SurfaceConfiguration, i: int) -> DivisorClass:
    """Class of the actual exceptional curve over point i (strict transform).

    Interior chain members give E_i - E_next (a (-2)-class); chain tails and
    isolated points give E_i itself.
    """
    succ = cfg.chain_successor(i)
    if succ is None:
        return E[i - 1]
    return E[i - 1] - E[succ - 1]


@lru_cache(maxsize=None)
def _curve_to_standard_matrix(cfg: SurfaceConfiguration) -> tuple[tuple[int, ...], ...]:
    """Columns are the standard coordinates of (l, e1..e4) in the curve basis."""
    cols = [L.coeffs] + [exceptional_curve_class(cfg, i).coeffs for i in range(1, 5)]
    return tuple(tuple(cols[j][i] for j in range(RANK)) for i in range(RANK))


@lru_cache(maxsize=None)
def _standard_to_curve_matrix(cfg: SurfaceConfiguration) -> tuple[tuple[int, ...], ...]:
    m = _curve_to_standard_matrix(cfg)
    inv = _invert_unimodular(m)
    return inv


def _invert_unimodular(m: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    """Exact inverse of an integer matrix; result must be integral."""
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise InternalFaultError("singular basis-change matrix")
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    inv = tuple(tuple(a[i][n + j] for j in range(n)) for i in range(n))
    if any(x.denominator != 1 for row in inv for x in row):
        raise InternalFaultError("basis-change matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


def _apply_matrix(m: tuple[tuple[int, ...], ...], v: Sequence[Coeff]) -> tuple[Coeff, ...]:
    return tuple(sum(m[i][j] * v[j] for j in range(RANK)) for i in range(RANK))


def to_curve_basis(d: AnyClass, cfg: SurfaceConfiguration) -> tuple[Coeff, ...]:
    """Coordinates of d in the basis (l, e1..e4) of actual curves."""
    return _apply_matrix(_standard_to_curve_matrix(cfg), d.coeffs)


def from_curve_basis(v: Sequence[Coeff], cfg: SurfaceConfiguration) -> AnyClass:
    """Class with curve-basis coordinates v, as a standard-basis class."""
    if len(v) != RANK:
        raise ValueError(f"need {RANK} coordinates, got {len(v)}")
    coords = _apply_matrix(_curve_to_standard_matrix(cfg), tuple(v))
    if all(isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1) for x in coords):
        return DivisorClass(tuple(int(x) for x in coords))
    return QDivisorClass(tuple(Fraction(x) for x in coords))


# ---------------------------------------------------------------------------
# Riemann-Roch
# ---------------------------------------------------------------------------

def riemann_roch_chi(d: DivisorClass) -> int:
    """chi(D) = 1 + (D^2 - D.K)/2 on a rational surface."""
    num = intersect(d, d) - intersect(d, K)
    if num % 2 != 0:
        raise InternalFaultError(f"parity violation in chi({d})")
    return 1 + num // 2


# ---------------------------------------------------------------------------
# Parsing and rendering
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"([+-]?)(\d*)(l|e[1-4])", re.IGNORECASE)


def parse_class_label(text: str, cfg: SurfaceConfiguration | None = None,
                      basis: str = "standard") -> DivisorClass:
    """Parse a whitespace-free class label such as ``3l-e1-e2-2e3-e4``.

    With ``basis="curve"`` the letters refer to the actual exceptional curves
    of the given configuration and the result is converted to the standard
    basis.
    """
    compact = text.replace(" ", "").lower()
    if not compact:
        raise ValueError("empty class label")
    pos = 0
    coords = [0] * RANK
    for match in _TERM_RE.finditer(compact):
        if match.start() != pos:
            break
        if pos > 0 and not match.group(1):
            break  # terms after the first need an explicit sign
        sign = -1 if match.group(1) == "-" else 1
        mult = int(match.group(2)) if match.group(2) else 1
        sym = match.group(3)
        index = 0 if sym == "l" else int(sym[1])
        coords[index] += sign * mult
        pos = match.end()
    if pos != len(compact):
        raise ValueError(f"cannot parse class label {text!r} at position {pos}")
    if basis == "standard":
        return DivisorClass(tuple(coords))
    if basis == "curve":
        if cfg is None:
            raise ValueError("curve-basis labels need a configuration")
        result = from_curve_basis(tuple(coords), cfg)
        assert isinstance(result, DivisorClass)
        return result
    raise ValueError(f"unknown basis {basis!r}")


def render_class(coords: Sequence[Coeff], symbols: Sequence[str] = ("l", "e1", "e2", "e3", "e4")) -> str:
    """Human-readable rendering, e.g. ``3l-e1-e2-2e3-e4`` or ``l3+2/3e3+1/3c``."""
    parts: list[str] = []
    for coeff, sym in zip(coords, symbols):
        if coeff == 0:
            continue
        sign = "-" if coeff < 0 else "+"
        mag = -coeff if coeff < 0 else coeff
        body = sym if mag == 1 else f"{mag}{sym}"
        parts.append(f"{sign}{body}")
    if not parts:
        return "0"
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


def _coeff_to_json(c: Coeff):
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return int(c)


def _coeff_from_json(x) -> Coeff:
    if isinstance(x, str):
        num, _, den = x.partition("/")
        return Fraction(int(num), int(den) if den else 1)
    if isinstance(x, int):
        return x
    raise ValueError(f"bad coefficient {x!r} (floats are not accepted)")


def class_to_json(d: AnyClass, cfg: SurfaceConfiguration, basis: str = "standard") -> dict:
    """JSON form: coefficient array plus explicit basis and configuration tags."""
    if basis == "standard":
        coords: Sequence[Coeff] = d.coeffs
    elif basis == "curve":
        coords = to_curve_basis(d, cfg)
    else:
        raise ValueError(f"unknown basis {basis!r}")
    return {"coeffs": [_coeff_to_json(c) for c in coords], "basis": basis, "config": cfg.name}


def class_from_json(obj: dict) -> tuple[AnyClass, SurfaceConfiguration]:
    cfg = get_configuration(obj.get("config", "GENERAL"))
    coords = [_coeff_from_json(x) for x in obj["coeffs"]]
    basis = obj.get("basis", "standard")
    if basis == "curve":
        return from_curve_basis(coords, cfg), cfg
    if basis != "standard":
        raise ValueError(f"unknown basis {basis!r}")
    if all(isinstance(c, int) or c.denominator == 1 for c in coords):
        return DivisorClass(tuple(int(c) for c in coords)), cfg
    return QDivisorClass(tuple(Fraction(c) for c in coords)), cfg
