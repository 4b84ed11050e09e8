"""Exact coordinates and symmetries of the triangular/rhombille lattice.

Everything downstream works in *doubled axial coordinates*: a point (a, b)
sits at the Cartesian position (a/2)*e1 + (b/2)*e2 with e1 = (1, 0) and
e2 = (1/2, sqrt(3)/2).  True lattice vertices have a, b both even; rhomb
centers (diagonal midpoints) have at least one odd coordinate.  Keeping the
doubling explicit means every anchor is a pair of ints and dictionary keys
stay exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import NamedTuple, Union

Rational = Union[int, Fraction]


@total_ordering
class ExactScalar:
    """A number p + q*sqrt(3) with rational p, q.  Immutable, exact."""

    __slots__ = ("p", "q")

    def __init__(self, p: Rational = 0, q: Rational = 0) -> None:
        object.__setattr__(self, "p", Fraction(p))
        object.__setattr__(self, "q", Fraction(q))

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("ExactScalar is immutable")

    def __repr__(self) -> str:
        return f"ExactScalar({self.p}, {self.q})"

    def __str__(self) -> str:
        return f"{self.p}+{self.q}√3"

    @classmethod
    def coerce(cls, x: "Rational | ExactScalar") -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        return cls(x)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExactScalar(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self.p == other.p and self.q == other.q

    def __hash__(self) -> int:
        return hash((self.p, self.q))

    def sign(self) -> int:
        """Exact sign of p + q*sqrt(3): compares p^2 against 3*q^2."""
        p, q = self.p, self.q
        if q == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return (q > 0) - (q < 0)
        if p > 0 and q > 0:
            return 1
        if p < 0 and q < 0:
            return -1
        # Opposite signs: the sign follows whichever term dominates.
        lhs, rhs = p * p, 3 * q * q
        if p > 0:  # q < 0
            return (lhs > rhs) - (lhs < rhs)
        return (rhs > lhs) - (rhs < lhs)

    def __lt__(self, other: "Rational | ExactScalar") -> bool:
        return (self - ExactScalar.coerce(other)).sign() < 0

    def __add__(self, other: "Rational | ExactScalar") -> "ExactScalar":
        o = ExactScalar.coerce(other)
        return ExactScalar(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.p, -self.q)

    def __sub__(self, other: "Rational | ExactScalar") -> "ExactScalar":
        return self + (-ExactScalar.coerce(other))

    def __rsub__(self, other: "Rational | ExactScalar") -> "ExactScalar":
        return (-self) + ExactScalar.coerce(other)

    def __mul__(self, other: "Rational | ExactScalar") -> "ExactScalar":
        o = ExactScalar.coerce(other)
        return ExactScalar(self.p * o.p + 3 * self.q * o.q,
                           self.p * o.q + self.q * o.p)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        norm = self.p * self.p - 3 * self.q * self.q
        if norm == 0:
            raise ZeroDivisionError("ExactScalar is zero")
        return ExactScalar(self.p / norm, -self.q / norm)

    def __truediv__(self, other: "Rational | ExactScalar") -> "ExactScalar":
        return self * ExactScalar.coerce(other).inverse()

    def __rtruediv__(self, other: "Rational | ExactScalar") -> "ExactScalar":
        return ExactScalar.coerce(other) * self.inverse()

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def __float__(self) -> float:
        return float(self.p) + float(self.q) * 3.0 ** 0.5


SQRT3 = ExactScalar(0, 1)
HALF = Fraction(1, 2)


class LatticePoint(NamedTuple):
    """Doubled axial coordinates; Cartesian = (a/2)*e1 + (b/2)*e2."""

    a: int
    b: int

    def __add__(self, other: "LatticePoint") -> "LatticePoint":  # type: ignore[override]
        return LatticePoint(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "LatticePoint":
        return LatticePoint(-self.a, -self.b)

    def scaled(self, k: int) -> "LatticePoint":
        return LatticePoint(self.a * k, self.b * k)

    def is_vertex(self) -> bool:
        """True lattice vertices have both doubled coordinates even."""
        return self.a % 2 == 0 and self.b % 2 == 0

    def norm2(self) -> Fraction:
        """Squared Euclidean length, exact (rational for lattice data)."""
        a, b = Fraction(self.a), Fraction(self.b)
        return (a * a + a * b + b * b) / 4


ORIGIN = LatticePoint(0, 0)


def to_cartesian(pt: LatticePoint) -> tuple[ExactScalar, ExactScalar]:
    """Exact Cartesian pair for a doubled-coordinate point."""
    x = ExactScalar(Fraction(pt.a, 2) + Fraction(pt.b, 4))
    y = ExactScalar(0, Fraction(pt.b, 4))
    return x, y


def rot1(v: LatticePoint) -> LatticePoint:
    """Rotate a doubled-coordinate vector by +60 degrees about the origin."""
    return LatticePoint(-v.b, v.a + v.b)


def rotate_vec(v: LatticePoint, k: int) -> LatticePoint:
    for _ in range(k % 6):
        v = rot1(v)
    return v


def rotate6(pt: LatticePoint, k: int, center: LatticePoint = ORIGIN) -> LatticePoint:
    """Rotate by 60*k degrees about ``center`` (exact; lattice-closed)."""
    return center + rotate_vec(pt - center, k)


def _reflect0(v: LatticePoint) -> LatticePoint:
    # Mirror across the x-axis: e1 -> e1, e2 -> e1 - e2.
    return LatticePoint(v.a + v.b, -v.b)


def reflect(pt: LatticePoint, axis_r: int, center: LatticePoint = ORIGIN) -> LatticePoint:
    """Mirror across the line through ``center`` at angle 30*axis_r degrees."""
    return center + rotate_vec(_reflect0(pt - center), axis_r)


def direction_step(r: int) -> LatticePoint:
    """Unit lattice step at angle 60*r degrees, in doubled coordinates."""
    return rotate_vec(LatticePoint(2, 0), r)


def vertex_class(pt: LatticePoint) -> int:
    """Rhombille tripartition class (0 marks the 6-valent star vertices).

    Only defined for true lattice vertices.  Class-0 vertices are the ones
    where six rhombs of the rhombille tiling meet at 60-degree corners.
    """
    if not pt.is_vertex():
        raise ValueError(f"{pt} is not a lattice vertex")
    return ((pt.a - pt.b) // 2) % 3
