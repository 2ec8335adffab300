"""Exact arithmetic on the projective line over the rationals.

Points are reduced integer pairs ``[a : b]``; the point at infinity is an
ordinary value ``[1 : 0]``, and every formula is written homogeneously so no
case split on infinity ever appears.  The cross-ratio convention is fixed
once here, ``cross_ratio(0, 1, inf, x) == x``, and everything downstream
inherits it.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from collections.abc import Sequence

from .errors import DegenerateInputError, ParseError, ValidationError

__all__ = [
    "Rat",
    "ProjPoint",
    "Mobius",
    "ZERO",
    "ONE",
    "INFINITY",
    "cross",
    "cross_ratio",
    "cross_ratio_solve",
    "mobius_from_triple",
    "parse_point",
    "format_point",
]

# Exact scalar: arbitrary-precision reduced fraction with positive denominator.
Rat = Fraction


class ProjPoint:
    """A point ``[a : b]`` of the projective line, in reduced canonical form.

    Normalization: gcd(|a|, |b|) = 1, and b > 0 unless b = 0, in which case
    a = 1.  So 0 is [0:1], 1 is [1:1], infinity is [1:0], and equal points
    have equal coordinate pairs.
    """

    __slots__ = ("a", "b")

    a: int
    b: int

    def __init__(self, a: int, b: int = 1):
        if b == 0 and a == 0:
            raise ValidationError("[0 : 0] is not a projective point")
        g = math.gcd(a, b)
        a //= g
        b //= g
        if b < 0 or (b == 0 and a < 0):
            a, b = -a, -b
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("ProjPoint is immutable")

    @classmethod
    def from_rational(cls, value: Rat | int) -> "ProjPoint":
        q = Fraction(value)
        return cls(q.numerator, q.denominator)

    @classmethod
    def infinity(cls) -> "ProjPoint":
        return cls(1, 0)

    @property
    def is_infinity(self) -> bool:
        return self.b == 0

    def to_rational(self) -> Rat:
        if self.b == 0:
            raise ValueError("the point at infinity has no rational value")
        return Fraction(self.a, self.b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __repr__(self) -> str:
        return f"ProjPoint({self.a}, {self.b})"

    def __str__(self) -> str:
        return format_point(self)


ZERO = ProjPoint(0, 1)
ONE = ProjPoint(1, 1)
INFINITY = ProjPoint(1, 0)


def cross(p: ProjPoint, q: ProjPoint) -> int:
    """The determinant ``a_p b_q - a_q b_p``; zero exactly when p = q."""
    return p.a * q.b - q.a * p.b


def _require_distinct(points: Sequence[ProjPoint]) -> None:
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if points[i] == points[j]:
                raise DegenerateInputError(
                    f"points {i + 1} and {j + 1} coincide at {points[i]}"
                )


def cross_ratio(
    z1: ProjPoint, z2: ProjPoint, z3: ProjPoint, z4: ProjPoint
) -> ProjPoint:
    """The cross-ratio [(z4-z1)(z2-z3) : (z4-z3)(z2-z1)] of distinct points.

    Equals the image of z4 under the fractional-linear map sending
    (z1, z2, z3) to (0, 1, infinity); in particular
    ``cross_ratio(ZERO, ONE, INFINITY, x) == x``.  Pairwise distinct inputs
    are required and guarantee a value outside {0, 1, infinity}.
    """
    _require_distinct((z1, z2, z3, z4))
    return ProjPoint(cross(z4, z1) * cross(z2, z3), cross(z4, z3) * cross(z2, z1))


def cross_ratio_solve(
    value: ProjPoint,
    points: Sequence[ProjPoint | None],
    slot: int,
) -> ProjPoint:
    """The point w making ``cross_ratio(points with w at slot) == value``.

    ``points`` has four entries; the one at ``slot`` is ignored and may be
    None.  The cross-ratio is fractional-linear in each argument, so the
    constraint is a linear equation in the homogeneous pair of w; the unique
    solution is returned un-verified (the caller decides whether w colliding
    with another point matters).  A constraint satisfied by every point
    raises :class:`DegenerateInputError`.
    """
    if len(points) != 4:
        raise ValueError("need exactly four slots")
    if not 0 <= slot < 4:
        raise ValueError("slot must be in 0..3")

    def residual(aw: int, bw: int) -> int:
        raw = [(p.a, p.b) if p is not None else None for p in points]
        raw[slot] = (aw, bw)
        (a1, b1), (a2, b2), (a3, b3), (a4, b4) = raw
        num = (a4 * b1 - a1 * b4) * (a2 * b3 - a3 * b2)
        den = (a4 * b3 - a3 * b4) * (a2 * b1 - a1 * b2)
        return value.b * num - value.a * den

    alpha = residual(1, 0)
    beta = residual(0, 1)
    if alpha == 0 and beta == 0:
        raise DegenerateInputError(
            "the cross-ratio constraint does not determine the point"
        )
    return ProjPoint(-beta, alpha)


class Mobius:
    """An invertible fractional-linear map, stored as a reduced 2x2 matrix.

    The matrix [[a, b], [c, d]] sends [x : y] to [ax + by : cx + dy].
    Canonical form divides out the content and makes the first nonzero
    entry positive, so equal maps have equal matrices.
    """

    __slots__ = ("matrix",)

    matrix: tuple[int, int, int, int]

    def __init__(self, a: int, b: int, c: int, d: int):
        if a * d - b * c == 0:
            raise ValidationError("the matrix of a projective map must be invertible")
        g = math.gcd(math.gcd(a, b), math.gcd(c, d))
        entries = (a // g, b // g, c // g, d // g)
        lead = next(e for e in entries if e != 0)
        if lead < 0:
            entries = tuple(-e for e in entries)
        object.__setattr__(self, "matrix", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Mobius is immutable")

    @classmethod
    def identity(cls) -> "Mobius":
        return cls(1, 0, 0, 1)

    @property
    def determinant(self) -> int:
        a, b, c, d = self.matrix
        return a * d - b * c

    @property
    def is_identity(self) -> bool:
        return self.matrix == (1, 0, 0, 1)

    def apply(self, z: ProjPoint) -> ProjPoint:
        a, b, c, d = self.matrix
        return ProjPoint(a * z.a + b * z.b, c * z.a + d * z.b)

    def compose(self, other: "Mobius") -> "Mobius":
        """The map applying ``other`` first, then this one."""
        a, b, c, d = self.matrix
        e, f, g, h = other.matrix
        return Mobius(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __matmul__(self, other: "Mobius") -> "Mobius":
        return self.compose(other)

    def inverse(self) -> "Mobius":
        a, b, c, d = self.matrix
        return Mobius(d, -b, -c, a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mobius):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        a, b, c, d = self.matrix
        return f"Mobius({a}, {b}, {c}, {d})"


def mobius_from_triple(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> Mobius:
    """The unique map sending (p, q, r) to (0, 1, infinity).

    The three points must be pairwise distinct.  Composing with its inverse
    moves any frame onto any other, which is how configurations are brought
    to canonical form.
    """
    _require_distinct((p, q, r))
    x = q.a * r.b - r.a * q.b
    y = q.a * p.b - p.a * q.b
    return Mobius(p.b * x, -p.a * x, r.b * y, -r.a * y)


_POINT_BRACKET = re.compile(r"^\[\s*(-?\d+)\s*:\s*(-?\d+)\s*\]$")
_POINT_RATIO = re.compile(r"^(-?\d+)\s*/\s*(-?\d+)$")
_POINT_INT = re.compile(r"^-?\d+$")


def parse_point(text: str) -> ProjPoint:
    """Parse ``"inf"``, ``"-2"``, ``"3/4"``, or ``"[a:b]"`` into a point."""
    s = text.strip()
    if s in ("inf", "Inf", "INF", "oo"):
        return INFINITY
    m = _POINT_BRACKET.match(s)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        if a == 0 and b == 0:
            raise ParseError("[0:0] is not a projective point")
        return ProjPoint(a, b)
    m = _POINT_RATIO.match(s)
    if m:
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return ProjPoint(num, den)
    if _POINT_INT.match(s):
        return ProjPoint(int(s), 1)
    raise ParseError(f"cannot read {text!r} as a point of the projective line")


def format_point(p: ProjPoint) -> str:
    """Inverse of :func:`parse_point`: ``inf``, an integer, or ``a/b``."""
    if p.b == 0:
        return "inf"
    if p.b == 1:
        return str(p.a)
    return f"{p.a}/{p.b}"
