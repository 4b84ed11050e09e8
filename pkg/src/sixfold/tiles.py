"""The two diamond tile types: poses, vertices, edges, and edge labels.

Both kinds are geometrically identical 60/120 rhombs; they differ only by
decoration.  A tile's pose is (anchor, orientation): the anchor is the rhomb
center in doubled coordinates and the orientation r in 0..5 points the
polarity arrow along the long diagonal at angle 30 + 60*r degrees.
orientation mod 3 is the rhomb axis; adding 3 flips the arrow.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .lattice import (
    ExactScalar,
    LatticePoint,
    rotate_vec,
    to_cartesian,
    vertex_class,
)


class TileKind(enum.Enum):
    ACUTE = "acute"
    OBTUSE = "obtuse"


# Half-diagonal vectors per orientation, doubled coords.  HALF_LONG[r] has
# length sqrt(3)/2 at angle 30 + 60*r; HALF_SHORT[r] has length 1/2 at 90
# degrees clockwise from it.
HALF_LONG = tuple(rotate_vec(LatticePoint(1, 1), r) for r in range(6))
HALF_SHORT = tuple(rotate_vec(LatticePoint(1, -1), r) for r in range(6))

# anchor parity (a mod 2, b mod 2) -> axis (orientation mod 3)
AXIS_BY_PARITY = {(1, 1): 0, (1, 0): 1, (0, 1): 2}


def axis_of_anchor(anchor: LatticePoint) -> int:
    parity = (anchor.a % 2, anchor.b % 2)
    try:
        return AXIS_BY_PARITY[parity]
    except KeyError:
        raise ValueError(f"{anchor} is a lattice vertex, not a rhomb center") from None


@dataclass(frozen=True)
class Tile:
    kind: TileKind
    orientation: int  # 0..5
    anchor: LatticePoint
    scale_exponent: int = 0

    def __post_init__(self):
        if not 0 <= self.orientation < 6:
            raise ValueError("orientation must be in 0..5")
        if self.orientation % 3 != axis_of_anchor(self.anchor):
            raise ValueError(
                f"orientation {self.orientation} incompatible with anchor {self.anchor}"
            )

    @property
    def edge_length(self) -> int:
        return 3 ** self.scale_exponent

    def half_long(self) -> LatticePoint:
        return HALF_LONG[self.orientation].scaled(self.edge_length)

    def half_short(self) -> LatticePoint:
        return HALF_SHORT[self.orientation].scaled(self.edge_length)

    @property
    def tail(self) -> LatticePoint:
        return self.anchor - self.half_long()

    @property
    def head(self) -> LatticePoint:
        return self.anchor + self.half_long()


def vertices(t: Tile) -> tuple[LatticePoint, LatticePoint, LatticePoint, LatticePoint]:
    """Four vertices, counterclockwise, starting at the arrow tail."""
    c, long_, short = t.anchor, t.half_long(), t.half_short()
    return (c - long_, c + short, c + long_, c - short)


def area2(t: Tile) -> int:
    """Tile area in units of sqrt(3)/2 (the unit-diamond area)."""
    return 9 ** t.scale_exponent


def shoelace_area(pts: Iterable[LatticePoint]) -> ExactScalar:
    """Exact polygon area from doubled-coordinate vertices."""
    pts = list(pts)
    total = ExactScalar(0)
    for i, p in enumerate(pts):
        q = pts[(i + 1) % len(pts)]
        px, py = to_cartesian(p)
        qx, qy = to_cartesian(q)
        total = total + (px * qy - qx * py)
    return total * Fraction(1, 2)


EdgeKey = tuple[tuple[int, int], tuple[int, int]]


def edge_key(u: LatticePoint, v: LatticePoint) -> EdgeKey:
    """Canonical, orientation-independent key for the segment u-v."""
    a, b = (u.a, u.b), (v.a, v.b)
    return (a, b) if a <= b else (b, a)


def edges(t: Tile) -> list[tuple[EdgeKey, int]]:
    """The four boundary edges with local indices 0..3 (CCW from the tail)."""
    vs = vertices(t)
    return [(edge_key(vs[i], vs[(i + 1) % 4]), i) for i in range(4)]


def directed_edges(t: Tile) -> list[tuple[LatticePoint, LatticePoint, int]]:
    vs = vertices(t)
    return [(vs[i], vs[(i + 1) % 4], i) for i in range(4)]


TriangleKey = tuple[tuple[int, int], ...]


def _tri_key(pts: Iterable[LatticePoint]) -> TriangleKey:
    return tuple(sorted((p.a, p.b) for p in pts))


def triangles(t: Tile, half: str | None = None) -> list[TriangleKey]:
    """Unit-triangle footprint of a unit tile (both halves or one).

    ``half`` is None for the whole rhomb, "low" for the tail half or "high"
    for the head half (the cut runs along the short diagonal).
    """
    if t.scale_exponent != 0:
        raise ValueError("triangle footprint only defined for unit tiles")
    c, long_, short = t.anchor, t.half_long(), t.half_short()
    low = _tri_key([c - short, c + short, c - long_])
    high = _tri_key([c - short, c + short, c + long_])
    if half is None:
        return [low, high]
    if half == "low":
        return [low]
    if half == "high":
        return [high]
    raise ValueError(f"bad half tag {half!r}")


def is_rhombille_tile(t: Tile) -> bool:
    """Whether a unit tile is a rhomb of the global rhombille tiling.

    Holds iff neither short-diagonal endpoint is a 6-valent (class-0)
    vertex; the long-diagonal ends are then class 0 automatically.
    """
    if t.scale_exponent != 0:
        return False
    c, short = t.anchor, t.half_short()
    return vertex_class(c - short) != 0 and vertex_class(c + short) != 0


@dataclass(frozen=True)
class LabelTable:
    """Edge decoration symbols plus an involutive compatibility relation.

    ``symbols`` maps (kind value, edge_index) to a symbol id; ``partner``
    maps each symbol to the unique symbol it may face across an edge.
    """

    symbols: dict
    partner: dict

    def __post_init__(self):
        for s, t in self.partner.items():
            if self.partner.get(t) != s:
                raise ValueError("compatibility relation is not involutive")

    def label(self, kind: TileKind, edge_index: int) -> int:
        return self.symbols[(kind.value, edge_index)]

    def compatible(self, s: int, t: int) -> bool:
        return self.partner.get(s) == t

    def n_symbols(self) -> int:
        return len(set(self.symbols.values()))

    def to_json(self) -> dict:
        return {
            "symbols": [[k, i, s] for (k, i), s in sorted(self.symbols.items())],
            "partner": [[a, b] for a, b in sorted(self.partner.items())],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LabelTable":
        symbols = {(k, i): s for k, i, s in obj["symbols"]}
        partner = {a: b for a, b in obj["partner"]}
        return cls(symbols=symbols, partner=partner)


def edge_label(t: Tile, edge_index: int, table: LabelTable) -> int:
    """Decoration symbol on the given edge; pose-independent."""
    if not 0 <= edge_index < 4:
        raise ValueError("edge_index must be in 0..3")
    return table.label(t.kind, edge_index)
