"""Matching-rule validation, label derivation, and symmetry scans.

Labels live on (kind, edge index) pairs; an interior edge is valid when the
two symbols facing each other across it are partners in the label table.
The shipped table is not hand-copied from artwork: it is derived from a
generated patch by the coarsest partner-consistent merging of edge contexts
(derive_labels) and frozen as data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .lattice import LatticePoint, rotate6
from .tiles import LabelTable, Tile, TileKind, edge_key, vertices
from .inflation import Patch, tile_key

Context = tuple[str, int]  # (kind value, edge index)


class InconsistentPatch(Exception):
    pass


class WindowTooLarge(Exception):
    pass


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    boundary_edges: int = 0
    interior_edges: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "interior_edges": self.interior_edges,
            "boundary_edges": self.boundary_edges,
            "violations": [
                {"edge": list(map(list, e)), "tiles": [list(k1), list(k2)],
                 "labels": [l1, l2]}
                for e, (k1, k2), (l1, l2) in self.violations
            ],
        }


@dataclass
class SymmetryReport:
    translations_found: list = field(default_factory=list)
    max_sixfold_radius: dict = field(default_factory=dict)
    window_tiles: int = 0
    shifts_tested: int = 0

    def to_json(self) -> dict:
        return {
            "translations_found": [list(v) for v in self.translations_found],
            "max_sixfold_radius": {str(list(c)): str(r)
                                   for c, r in self.max_sixfold_radius.items()},
            "window_tiles": self.window_tiles,
            "shifts_tested": self.shifts_tested,
        }


def _exposed_edges(tile: Tile, half: str | None):
    vs = vertices(tile)
    idxs = range(4)
    if half == "low":
        idxs = (3, 0)
    elif half == "high":
        idxs = (1, 2)
    return [(edge_key(vs[i], vs[(i + 1) % 4]), i) for i in idxs]


def _edge_incidence(p: Patch) -> dict:
    by_edge: dict = {}
    for key, tile, meta in p.items_sorted():
        for ek, i in _exposed_edges(tile, meta.half):
            by_edge.setdefault(ek, []).append((key, tile, i))
    return by_edge


def validate(p: Patch, table: LabelTable) -> ValidationReport:
    """Check every interior edge for label compatibility."""
    report = ValidationReport()
    for ek, incid in sorted(_edge_incidence(p).items()):
        if len(incid) == 1:
            report.boundary_edges += 1
            continue
        if len(incid) > 2:
            raise InconsistentPatch(f"edge {ek} shared by {len(incid)} tiles")
        report.interior_edges += 1
        (k1, t1, i1), (k2, t2, i2) = incid
        l1 = table.label(t1.kind, i1)
        l2 = table.label(t2.kind, i2)
        if not table.compatible(l1, l2):
            report.violations.append((ek, (k1, k2), (l1, l2)))
    return report


def derive_labels(p: Patch) -> LabelTable:
    """Edge-symbol table derived from a patch's interior adjacencies.

    Starts from one symbol per (kind, edge index) context and merges
    contexts exactly when forced: if one context faces two different
    contexts somewhere in the patch, those two must carry the same symbol.
    The fixpoint is the finest table whose partner relation is single
    valued, hence involutive; it validates the source patch by
    construction.
    """
    contexts = [(k.value, i) for k in TileKind for i in range(4)]
    parent = {c: c for c in contexts}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            return True
        return False

    pairs = set()
    interior = 0
    for ek, incid in _edge_incidence(p).items():
        if len(incid) != 2:
            continue
        interior += 1
        (_, t1, i1), (_, t2, i2) = incid
        pairs.add(frozenset(((t1.kind.value, i1), (t2.kind.value, i2))))
    if interior == 0:
        # Nothing observed: the trivial table (every context its own
        # self-compatible symbol).
        symbols = {c: n for n, c in enumerate(contexts)}
        return LabelTable(symbols=symbols, partner={n: n for n in symbols.values()})

    changed = True
    while changed:
        changed = False
        partner_of: dict = {}
        for pair in pairs:
            items = sorted(pair)
            a, b = (items[0], items[-1]) if len(items) == 2 else (items[0], items[0])
            for x, y in ((a, b), (b, a)):
                rx, ry = find(x), find(y)
                if rx in partner_of and partner_of[rx] != ry:
                    changed |= union(partner_of[rx], ry)
                else:
                    partner_of[rx] = ry

    # canonical numbering by first appearance over sorted contexts
    numbering: dict = {}
    symbols = {}
    for c in contexts:
        r = find(c)
        if r not in numbering:
            numbering[r] = len(numbering)
        symbols[c] = numbering[r]
    partner = {}
    for pair in pairs:
        items = sorted(pair)
        a, b = (items[0], items[-1])
        sa, sb = symbols[a], symbols[b]
        partner[sa] = sb
        partner[sb] = sa
    # contexts never seen on an interior edge keep a fresh self-partner
    for c in contexts:
        s = symbols[c]
        partner.setdefault(s, s)
    return LabelTable(symbols=symbols, partner=partner)


def tables_equivalent(t1: LabelTable, t2: LabelTable) -> bool:
    """Equality up to renaming: same context partition, conjugate partners."""
    contexts = sorted(t1.symbols)
    if sorted(t2.symbols) != contexts:
        return False
    mapping: dict = {}
    for c in contexts:
        a, b = t1.symbols[c], t2.symbols[c]
        if mapping.setdefault(a, b) != b:
            return False
    inverse: dict = {}
    for a, b in mapping.items():
        if inverse.setdefault(b, a) != a:
            return False
    return all(mapping[t1.partner[a]] == t2.partner[b] for a, b in mapping.items())


@dataclass(frozen=True)
class StarConfig:
    center: LatticePoint
    arrows_out: int  # tiles whose tail sits at the center
    arrows_in: int


@dataclass(frozen=True)
class HexagonConfig:
    center: LatticePoint
    orientations: tuple


def find_stars_and_hexagons(p: Patch):
    """6-fold stars of acute tiles and 3-fold hexagons of obtuse tiles.

    A star is a vertex where six acute tiles meet with their 60-degree
    corners; a hexagon is a vertex where three obtuse tiles meet with their
    120-degree corners.  Only whole tiles participate.
    """
    long_ends: dict = {}
    short_ends: dict = {}
    for _, tile, meta in p.items_sorted():
        if meta.half is not None:
            continue
        long_ = tile.half_long()
        short = tile.half_short()
        for v, sgn in ((tile.anchor - long_, 1), (tile.anchor + long_, -1)):
            long_ends.setdefault(v, []).append((tile, sgn))
        for v in (tile.anchor - short, tile.anchor + short):
            short_ends.setdefault(v, []).append(tile)
    stars = []
    for v, tiles in sorted(long_ends.items()):
        if len(tiles) == 6 and all(t.kind is TileKind.ACUTE for t, _ in tiles):
            out = sum(1 for _, sgn in tiles if sgn == 1)
            stars.append(StarConfig(v, out, 6 - out))
    hexagons = []
    for v, tiles in sorted(short_ends.items()):
        if len(tiles) == 3 and all(t.kind is TileKind.OBTUSE for t in tiles):
            hexagons.append(HexagonConfig(
                v, tuple(sorted(t.orientation for t in tiles))))
    return stars, hexagons


def patch_center(p: Patch) -> LatticePoint:
    """A lattice point near the patch centroid (rounded doubled coords)."""
    n = len(p.tiles)
    if n == 0:
        return LatticePoint(0, 0)
    sa = sum(t.anchor.a for t, _ in p.tiles.values())
    sb = sum(t.anchor.b for t, _ in p.tiles.values())
    return LatticePoint(round(sa / n), round(sb / n))


def _lattice_shifts(max_shift: int):
    """Even (full-lattice) translation vectors with length <= max_shift."""
    out = []
    m = 2 * max_shift + 2
    lim = Fraction(max_shift * max_shift)
    for a in range(-m, m + 1, 2):
        for b in range(-m, m + 1, 2):
            if a == 0 and b == 0:
                continue
            v = LatticePoint(a, b)
            if v.norm2() <= lim:
                out.append(v)
    return sorted(out, key=lambda v: (v.norm2(), v.a, v.b))


def translation_scan(p: Patch, window_radius: int, max_shift: int,
                     center: LatticePoint | None = None) -> SymmetryReport:
    """Exhaustive lattice-translation scan of a window of ``p``.

    Tiles in the window are compared, shifted, against the full patch
    (kind and orientation both).  A shifted tile falling off the covered
    region of ``p`` means the window does not fit with the required margin.
    """
    if center is None:
        center = patch_center(p)
    report = SymmetryReport()
    r2 = Fraction(window_radius * window_radius)
    window = [(k, t) for k, (t, m) in sorted(p.tiles.items())
              if m.half is None and (t.anchor - center).norm2() <= r2]
    report.window_tiles = len(window)
    if not window:
        return report
    tiles = p.tiles
    triangles_owned = p._triangles
    for shift in _lattice_shifts(max_shift):
        report.shifts_tested += 1
        matched = True
        for key, tile in window:
            skey = (key[0] + shift.a, key[1] + shift.b, key[2])
            hit = tiles.get(skey)
            if hit is not None:
                stile, smeta = hit
                if (smeta.half is None and stile.kind is tile.kind
                        and stile.orientation == tile.orientation):
                    continue
                matched = False
                break
            # No tile at the shifted key: distinguish a genuine structural
            # mismatch from the window leaving the covered region.
            from .tiles import triangles as tile_triangles
            from dataclasses import replace
            shifted = replace(tile, anchor=tile.anchor + shift)
            if all(tri in triangles_owned for tri in tile_triangles(shifted)):
                matched = False
                break
            raise WindowTooLarge(
                f"window + shift {shift} leaves the patch (margin too small)")
        if matched:
            report.translations_found.append(shift)
    return report


def sixfold_radius(p: Patch, center: LatticePoint) -> Fraction:
    """Largest window radius around ``center`` with exact 6-fold symmetry."""
    dists = sorted({(t.anchor - center).norm2()
                    for t, m in p.tiles.values() if m.half is None})
    best = Fraction(0)
    tiles = p.tiles
    for d in dists:
        ring = [(k, t) for k, (t, m) in p.tiles.items()
                if m.half is None and (t.anchor - center).norm2() == d]
        ok = True
        for key, tile in ring:
            img_anchor = rotate6(tile.anchor, 1, center)
            img_or = (tile.orientation + 1) % 6
            hit = tiles.get((img_anchor.a, img_anchor.b, img_or % 3))
            if hit is None or hit[0].kind is not tile.kind \
                    or hit[0].orientation != img_or or hit[1].half is not None:
                ok = False
                break
        if not ok:
            break
        best = d
    return best
