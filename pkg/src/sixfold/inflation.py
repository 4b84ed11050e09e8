"""Inflation rule sets and patch generation with overlap deduplication.

Inflation maps a patch of unit tiles to a patch of unit tiles: every tile is
scaled by 3 about the global origin and replaced by the children listed in
the rule table for its kind.  Child placements are stored once, in a
canonical parent frame (tail at the origin, orientation 1), and mapped into
place by the parent pose.

A 3x parent decomposes into 7 whole unit rhombs plus 4 rhombs cut in half by
the parent edges (one per edge, at the edge middle).  The cut rhombs carry
half coverage tags and merge with the matching half emitted by the adjacent
parent; unmatched halves survive at the patch boundary flagged boundary_half
and count with weight 1/2 in area bookkeeping.
"""

from __future__ import annotations

import enum
import hashlib
import json
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable, Iterable, Optional

from .lattice import LatticePoint, rotate_vec
from .tiles import (
    HALF_LONG,
    HALF_SHORT,
    Tile,
    TileKind,
    axis_of_anchor,
    is_rhombille_tile,
    triangles,
)

SCALE = 3


class Variation(enum.Enum):
    V1 = 1
    V2 = 2


class Coverage(enum.Enum):
    WHOLE = "whole"
    HALF_LOW = "low"    # tail half of the child lies inside the parent
    HALF_HIGH = "high"  # head half of the child lies inside the parent


class OverlapConflict(Exception):
    """Two parents emitted incompatible tiles at the same position."""


class SearchBudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class ChildPlacement:
    offset: LatticePoint        # child anchor relative to the parent tail
    orientation_delta: int      # child orientation minus parent orientation, mod 6
    kind: TileKind
    coverage: Coverage

    def __post_init__(self):
        if self.coverage is not Coverage.WHOLE and self.kind is not TileKind.OBTUSE:
            raise ValueError("only obtuse children may be halves")


@dataclass(frozen=True)
class TileMeta:
    born: int = 1
    color: Optional[str] = None
    half: Optional[str] = None            # None, "low" or "high" (tile's own frame)
    parents: tuple = ()                   # ((parent_key, slot), ...), sorted

    @property
    def boundary_half(self) -> bool:
        return self.half is not None


Key = tuple[int, int, int]  # (anchor.a, anchor.b, axis)


def tile_key(t: Tile) -> Key:
    return (t.anchor.a, t.anchor.b, t.orientation % 3)


class Patch:
    """Deduplicated tile collection with exact overlap bookkeeping."""

    def __init__(self, variation: Optional[Variation] = None, generation: int = 1):
        self.variation = variation
        self.generation = generation
        self.tiles: dict[Key, tuple[Tile, TileMeta]] = {}
        self._triangles: dict = {}

    def __len__(self) -> int:
        return len(self.tiles)

    def add(self, tile: Tile, meta: TileMeta = TileMeta()) -> None:
        """Insert a tile, rejecting geometric overlap with what is present."""
        key = tile_key(tile)
        if key in self.tiles:
            raise OverlapConflict(f"duplicate tile at {key}")
        for tri in triangles(tile, meta.half):
            owner = self._triangles.get(tri)
            if owner is not None:
                raise OverlapConflict(f"tiles {owner} and {key} overlap on {tri}")
            self._triangles[tri] = key
        self.tiles[key] = (tile, meta)

    def items_sorted(self) -> list[tuple[Key, Tile, TileMeta]]:
        return [(k, t, m) for k, (t, m) in sorted(self.tiles.items())]

    def whole_tiles(self) -> list[Tile]:
        return [t for _, t, m in self.items_sorted() if m.half is None]

    def total_area2(self) -> int:
        """Total area in units of sqrt(3)/4 (halves contribute 1)."""
        return sum(1 if m.half else 2 for _, m in self.tiles.values())

    def area_weighted_counts(self) -> tuple[Fraction, Fraction]:
        """(acute, obtuse) tile counts with boundary halves at weight 1/2."""
        acute2 = obtuse2 = 0
        for t, m in self.tiles.values():
            w = 1 if m.half else 2
            if t.kind is TileKind.ACUTE:
                acute2 += w
            else:
                obtuse2 += w
        return Fraction(acute2, 2), Fraction(obtuse2, 2)

    def copy(self) -> "Patch":
        out = Patch(self.variation, self.generation)
        out.tiles = dict(self.tiles)
        out._triangles = dict(self._triangles)
        return out

    def translated(self, v: LatticePoint) -> "Patch":
        out = Patch(self.variation, self.generation)
        for _, t, m in self.items_sorted():
            out.add(replace(t, anchor=t.anchor + v), meta=m)
        return out


@dataclass(frozen=True)
class InflationRule:
    variation: Variation
    children_of_acute: tuple[ChildPlacement, ...]
    children_of_obtuse: tuple[ChildPlacement, ...]

    def children_of(self, kind: TileKind) -> tuple[ChildPlacement, ...]:
        return self.children_of_acute if kind is TileKind.ACUTE else self.children_of_obtuse

    def corner_slots(self, kind: TileKind) -> tuple[int, ...]:
        """Slots of children touching the parent's 60-degree corners."""
        corners = {LatticePoint(0, 0), LatticePoint(-6, 12)}
        out = []
        for i, pl in enumerate(self.children_of(kind)):
            tile = _canonical_child_tile(pl)
            long_ = tile.half_long()
            if tile.anchor - long_ in corners or tile.anchor + long_ in corners:
                out.append(i)
        return tuple(out)


# The canonical parent: orientation 1 (arrow straight up), tail at the
# origin, scale exponent 1 -> anchor at 3*HALF_LONG[1].
CANONICAL_PARENT_ANCHOR = HALF_LONG[1].scaled(3)


def _canonical_child_tile(pl: ChildPlacement) -> Tile:
    return Tile(pl.kind, (1 + pl.orientation_delta) % 6, pl.offset)


def _scaled_parent_triangles(tail: LatticePoint, orientation: int) -> set:
    """Unit-triangle footprint of the 3x rhomb with the given tail pose."""
    tris: set = set()
    anchor = tail + HALF_LONG[orientation].scaled(3)
    parent = Tile(TileKind.ACUTE, orientation, anchor, scale_exponent=1)
    # Enumerate unit triangles in the bounding box and keep the ones on the
    # inside of all four (lattice-aligned) parent edges.
    from .tiles import directed_edges, vertices

    vs = vertices(parent)
    xs = [v.a for v in vs]
    ys = [v.b for v in vs]
    planes = [(u, v - u) for u, v, _ in directed_edges(parent)]

    def inside(p: LatticePoint) -> bool:
        # CCW polygon: interior points have every edge cross product >= 0.
        for origin, d in planes:
            r = p - origin
            cross = d.a * r.b - d.b * r.a
            if cross < 0:
                return False
        return True

    for a in range(min(xs) - 2, max(xs) + 3):
        for b in range(min(ys) - 2, max(ys) + 3):
            v = LatticePoint(a, b)
            if not v.is_vertex():
                continue
            for d1, d2 in (((2, 0), (0, 2)), ((2, 0), (2, -2))):
                tri = (v, v + LatticePoint(*d1), v + LatticePoint(*d2))
                if all(inside(p) for p in tri):
                    tris.add(tuple(sorted((p.a, p.b) for p in tri)))
    return tris


def validate_rule(rule: InflationRule) -> None:
    """Structural checks: exact area coverage and the (5,4)/(4,5) counts."""
    parent_tris = _scaled_parent_triangles(LatticePoint(0, 0), 1)
    for kind, want in ((TileKind.ACUTE, (Fraction(5), Fraction(4))),
                       (TileKind.OBTUSE, (Fraction(4), Fraction(5)))):
        seen: dict = {}
        acute2 = obtuse2 = 0
        for pl in rule.children_of(kind):
            tile = _canonical_child_tile(pl)
            half = None if pl.coverage is Coverage.WHOLE else pl.coverage.value
            for tri in triangles(tile, half):
                if tri in seen:
                    raise ValueError(f"rule children overlap on {tri}")
                seen[tri] = pl
            w = 2 if half is None else 1
            if pl.kind is TileKind.ACUTE:
                acute2 += w
            else:
                obtuse2 += w
        if set(seen) != parent_tris:
            raise ValueError(f"children of {kind} do not tile the 3x parent")
        if (Fraction(acute2, 2), Fraction(obtuse2, 2)) != want:
            raise ValueError(
                f"children of {kind} have counts ({acute2}/2, {obtuse2}/2), want {want}"
            )


@lru_cache(maxsize=1024)
def _xformed_placements(rule: InflationRule, kind: TileKind, orientation: int):
    """Placements pre-rotated for a parent with the given orientation."""
    out = []
    for slot, pl in enumerate(rule.children_of(kind)):
        out.append((
            rotate_vec(pl.offset, orientation - 1),
            (orientation + pl.orientation_delta) % 6,
            pl.kind,
            pl.coverage,
            slot,
        ))
    return tuple(out)


def _dot4(u: LatticePoint, v: LatticePoint) -> int:
    # 16x the Euclidean dot product of doubled-coordinate vectors.
    return 4 * u.a * v.a + 2 * (u.a * v.b + u.b * v.a) + 4 * u.b * v.b


def _emit_children(tile: Tile, meta: TileMeta, rule: InflationRule,
                   generation: int, color_fn) -> list[tuple[Tile, str | None, TileMeta]]:
    """Children of one (possibly half) parent, in global coordinates."""
    r = tile.orientation
    scaled_tail = tile.anchor.scaled(SCALE) - HALF_LONG[r].scaled(SCALE)
    scaled_anchor = tile.anchor.scaled(SCALE)
    axis_vec = HALF_LONG[r]
    parent_key = tile_key(tile)
    out = []
    for d_anchor, child_or, child_kind, coverage, slot in _xformed_placements(rule, tile.kind, r):
        child = Tile(child_kind, child_or, scaled_tail + d_anchor)
        half = None if coverage is Coverage.WHOLE else coverage.value
        if meta.half is not None:
            # Parent is itself a boundary half: keep only the children on the
            # retained side of the cut (the scaled short diagonal).
            keep_sign = -1 if meta.half == "low" else 1
            tags = []
            for tag in (["low", "high"] if half is None else [half]):
                tri = triangles(child, tag)[0]
                sides = {_sign(_dot4(LatticePoint(*p) - scaled_anchor, axis_vec)) for p in tri}
                if sides <= {keep_sign, 0}:
                    tags.append(tag)
            if not tags:
                continue
            half = None if len(tags) == 2 else tags[0]
        color = color_fn(meta, child_kind, slot, generation) if color_fn else None
        child_meta = TileMeta(born=generation, color=color, half=half,
                              parents=((parent_key, slot),))
        out.append((child, half, child_meta))
    return out


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _merge_child(acc: dict, child: Tile, half: str | None, meta: TileMeta) -> None:
    key = tile_key(child)
    prev = acc.get(key)
    if prev is None:
        acc[key] = (child, meta)
        return
    ptile, pmeta = prev
    if ptile.kind is not child.kind or ptile.orientation != child.orientation:
        raise OverlapConflict(
            f"conflicting tiles at {key}: {ptile.kind.value}/{ptile.orientation} "
            f"vs {child.kind.value}/{child.orientation}"
        )
    if pmeta.half is None or half is None or pmeta.half == half:
        raise OverlapConflict(f"overlapping coverage at {key}")
    # Two complementary halves fuse into a whole tile.
    parents = tuple(sorted(pmeta.parents + meta.parents))
    colors = sorted(c for c in (pmeta.color, meta.color) if c is not None)
    acc[key] = (child, TileMeta(born=meta.born, color=colors[0] if colors else None,
                                half=None, parents=parents))


def inflate(p: Patch, rule: InflationRule, color_fn: Callable | None = None,
            parallel: bool = False) -> Patch:
    """Replace every tile of ``p`` by its children; dedup across parents.

    The merge is insert-or-verify-equal on (anchor, axis) keys, so the result
    is independent of parent processing order; ``parallel`` fans the emission
    out over a thread pool and merges in canonical key order.
    """
    generation = p.generation + 1
    parents = p.items_sorted()

    def emit(item):
        _, tile, meta = item
        return _emit_children(tile, meta, rule, generation, color_fn)

    if parallel and len(parents) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor() as pool:
            batches = list(pool.map(emit, parents, chunksize=64))
    else:
        batches = [emit(item) for item in parents]

    acc: dict = {}
    for batch in batches:
        for child, half, meta in batch:
            _merge_child(acc, child, half, meta)

    out = Patch(p.variation, generation)
    for key in sorted(acc):
        tile, meta = acc[key]
        out.add(tile, meta)
    return out


SEED_ANCHOR = LatticePoint(3, 0)
SEED_ORIENTATION = 1


def seed_patch(variation: Variation, seed_kind: TileKind) -> Patch:
    p = Patch(variation, generation=1)
    color = "yellow" if seed_kind is TileKind.OBTUSE else "red"
    p.add(Tile(seed_kind, SEED_ORIENTATION, SEED_ANCHOR), TileMeta(born=1, color=color))
    return p


def generate(variation: Variation, seed_kind: TileKind, generations: int,
             parallel: bool = False, color: bool = True) -> Patch:
    """n-1 inflations of a single unit seed tile; deterministic."""
    if generations < 1:
        raise ValueError("generations must be >= 1")
    rule_ = rule(variation)
    color_fn = _default_color_update if color else None
    p = seed_patch(variation, seed_kind)
    for _ in range(generations - 1):
        p = inflate(p, rule_, color_fn=color_fn, parallel=parallel)
    return p


def _default_color_update(parent_meta: TileMeta, child_kind: TileKind,
                          slot: int, generation: int) -> str:
    """Five-color bookkeeping carried through inflation (see render module).

    All obtuse tiles are yellow; acute corner children go pink; acute
    children of pink parents go green; everything else red.  The blue ribbon
    is a geometric overlay applied at labeling time, not here.
    """
    if child_kind is TileKind.OBTUSE:
        return "yellow"
    if slot in _corner_slot_cache():
        return "pink"
    if parent_meta.color == "pink":
        return "green"
    return "red"


_CORNER_SLOTS: set | None = None


def _corner_slot_cache() -> set:
    global _CORNER_SLOTS
    if _CORNER_SLOTS is None:
        r = rule(Variation.V1)
        slots = set(r.corner_slots(TileKind.ACUTE)) | set(r.corner_slots(TileKind.OBTUSE))
        _CORNER_SLOTS = slots
    return _CORNER_SLOTS


def periodic_rhombille(radius: int, kind: TileKind = TileKind.OBTUSE,
                       flip: bool = False) -> Patch:
    """A patch of the periodic rhombille tiling, consistently decorated.

    Every rhomb of the fixed rhombille tessellation whose anchor lies within
    ``radius`` (in edge units) of the origin, all of one kind, with the
    polarity arrow chosen per axis; this is periodic with the sqrt(3)
    superlattice.
    """
    p = Patch(None, generation=1)
    r2 = Fraction(radius * radius)
    bound = 2 * radius + 2
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            anchor = LatticePoint(a, b)
            if anchor.is_vertex():
                continue
            if anchor.norm2() > r2:
                continue
            orientation = axis_of_anchor(anchor) + (3 if flip else 0)
            tile = Tile(kind, orientation, anchor)
            if is_rhombille_tile(tile):
                p.add(tile, TileMeta(born=1, color="yellow"))
    return p


# ---------------------------------------------------------------------------
# Shipped rule data


def _load_data(name: str) -> dict:
    text = resources.files("sixfold.data").joinpath(name).read_text()
    obj = json.loads(text)
    payload = {k: v for k, v in obj.items() if k != "sha256"}
    digest = hashlib.sha256(
        json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()
    if digest != obj["sha256"]:
        raise ValueError(f"checksum mismatch in {name}")
    return obj


def _placement_from_json(row: list) -> ChildPlacement:
    a, b, delta, kind, cov = row
    return ChildPlacement(LatticePoint(a, b), delta, TileKind(kind), Coverage(cov))


def placement_to_json(pl: ChildPlacement) -> list:
    return [pl.offset.a, pl.offset.b, pl.orientation_delta,
            pl.kind.value, pl.coverage.value]


@lru_cache(maxsize=None)
def rule(variation: Variation) -> InflationRule:
    """The shipped, validated inflation rule for the given variation."""
    obj = _load_data("rules.json")
    entry = obj["variations"][variation.name]
    r = InflationRule(
        variation=variation,
        children_of_acute=tuple(_placement_from_json(x) for x in entry["acute"]),
        children_of_obtuse=tuple(_placement_from_json(x) for x in entry["obtuse"]),
    )
    validate_rule(r)
    return r


def discover_rules(budget: int = 2_000_000, witnesses_per_class: int = 1):
    """Exhaustive search for self-consistent inflation schemes.

    Re-exported from the discovery submodule; see there for the search
    space and the long-diagonal signature classification.
    """
    from . import _discovery

    return _discovery.discover_rules(budget=budget,
                                     witnesses_per_class=witnesses_per_class)
