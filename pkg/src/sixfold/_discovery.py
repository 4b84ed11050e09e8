"""Search machinery behind discover_rules and the shipped rule tables.

The subdivision geometry of a 3x parent is forced once the diagonal run is
pinned (three unit rhombs along the long diagonal; one rhomb cut in half at
the middle of each edge).  What remains free is the decoration: which child
rhombs are acute/obtuse and which way every polarity arrow points.

Consistency with "the parents tile the plane" is decided by closing the set
of adjacency types.  When two parents share an edge, their inflations can
interact only along the scaled shared edge: the two boundary halves emitted
at its middle must be the same tile, and the whole children flanking the
first and last thirds of the edge form new parent-level adjacency types for
the next generation.  The closure over pose-normalized types is finite
(a few dozen), so each candidate costs microseconds, and a depth-first
search with on-demand variable branching enumerates all consistent
decorations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .lattice import LatticePoint, rotate_vec, vertex_class
from .tiles import Tile, TileKind, axis_of_anchor, edge_key, triangles, vertices
from .inflation import (
    ChildPlacement,
    Coverage,
    HALF_LONG,
    InflationRule,
    OverlapConflict,
    Patch,
    SearchBudgetExceeded,
    TileMeta,
    Variation,
    _scaled_parent_triangles,
    inflate,
)

TAIL = LatticePoint(0, 0)
HEAD = LatticePoint(-6, 12)
DIAGONAL_ANCHORS = (LatticePoint(-1, 2), LatticePoint(-3, 6), LatticePoint(-5, 10))


@dataclass(frozen=True)
class GeometrySlot:
    index: int
    anchor: LatticePoint
    axis: int
    inside_tri: tuple | None  # None for whole rhombs, else the retained triangle


def _pairing_edge(tri: tuple) -> tuple[LatticePoint, LatticePoint]:
    pts = [LatticePoint(*xy) for xy in tri]
    for i in range(3):
        for j in range(i + 1, 3):
            if vertex_class(pts[i]) != 0 and vertex_class(pts[j]) != 0:
                return pts[i], pts[j]
    raise AssertionError("triangle without pairing edge")


@lru_cache(maxsize=1)
def forced_slots() -> tuple[GeometrySlot, ...]:
    """The rhombille-forced subdivision of the canonical parent.

    7 whole rhombs and 4 boundary halves, in sorted anchor order; the same
    geometry serves both parent kinds (the tiles differ only by decoration).
    """
    groups: dict[LatticePoint, list] = {}
    for tri in _scaled_parent_triangles(LatticePoint(0, 0), 1):
        u, v = _pairing_edge(tri)
        mid = LatticePoint((u.a + v.a) // 2, (u.b + v.b) // 2)
        groups.setdefault(mid, []).append(tri)
    slots = []
    for i, anchor in enumerate(sorted(groups)):
        tris = groups[anchor]
        inside = tris[0] if len(tris) == 1 else None
        slots.append(GeometrySlot(i, anchor, axis_of_anchor(anchor), inside))
    return tuple(slots)


def slot_segments(slot: GeometrySlot) -> list:
    """Rhomb-edge segments of a slot exposed inside the parent."""
    probe = Tile(TileKind.OBTUSE, slot.axis, slot.anchor)
    vs = vertices(probe)
    segs = [edge_key(vs[i], vs[(i + 1) % 4]) for i in range(4)]
    if slot.inside_tri is None:
        return segs
    tri_pts = set(slot.inside_tri)
    return [s for s in segs if set(s) <= tri_pts]


@lru_cache(maxsize=1)
def interior_slot_pairs() -> tuple[tuple[int, int], ...]:
    """Slot pairs sharing a unit edge inside the canonical parent."""
    slots = forced_slots()
    by_seg: dict = {}
    for s in slots:
        for seg in slot_segments(s):
            by_seg.setdefault(seg, []).append(s.index)
    pairs = sorted({tuple(sorted(v)) for v in by_seg.values() if len(v) == 2})
    return tuple(pairs)


# For each canonical parent edge (0..3, counterclockwise from the tail):
# the slots owning the first third, the cut rhomb at the middle, and the
# last third of the edge.
@lru_cache(maxsize=1)
def edge_profile() -> tuple[tuple[int, int, int], ...]:
    slots = forced_slots()
    parent = Tile(TileKind.ACUTE, 1, HALF_LONG[1].scaled(3), scale_exponent=1)
    vs = vertices(parent)
    out = []
    for i in range(4):
        a, b = vs[i], vs[(i + 1) % 4]
        step = LatticePoint((b.a - a.a) // 3, (b.b - a.b) // 3)
        first_seg = edge_key(a, a + step)
        last_seg = edge_key(b - step, b)
        mid = a + step + LatticePoint(step.a // 2, step.b // 2)
        first = last = half = None
        for s in slots:
            if s.inside_tri is None:
                segs = slot_segments(s)
                if first_seg in segs:
                    first = s.index
                if last_seg in segs:
                    last = s.index
            elif s.anchor == mid:
                half = s.index
        assert first is not None and last is not None and half is not None
        out.append((first, half, last))
    return tuple(out)


def _coverage_for(anchor: LatticePoint, orientation: int, inside_tri: tuple | None) -> Coverage:
    if inside_tri is None:
        return Coverage.WHOLE
    tile = Tile(TileKind.OBTUSE, orientation, anchor)
    if triangles(tile, "low")[0] == inside_tri:
        return Coverage.HALF_LOW
    return Coverage.HALF_HIGH


Assignment = dict  # (kind_value, slot_index) -> (TileKind, orientation 0..5)


def build_rule(variation: Variation, assign: Assignment) -> InflationRule:
    """Assemble an InflationRule from per-slot (kind, orientation) data."""
    def table(parent_kind: TileKind):
        out = []
        for slot in forced_slots():
            kind, orientation = assign[(parent_kind.value, slot.index)]
            out.append(ChildPlacement(
                offset=slot.anchor,
                orientation_delta=(orientation - 1) % 6,
                kind=kind,
                coverage=_coverage_for(slot.anchor, orientation, slot.inside_tri),
            ))
        return tuple(out)

    return InflationRule(variation, table(TileKind.ACUTE), table(TileKind.OBTUSE))


# ---------------------------------------------------------------------------
# Pose arithmetic for the type closure


def _edge_index_of(t_or: int, anchor: LatticePoint, seg) -> int:
    probe = Tile(TileKind.OBTUSE, t_or, anchor)
    vs = vertices(probe)
    for i in range(4):
        if edge_key(vs[i], vs[(i + 1) % 4]) == seg:
            return i
    raise AssertionError("segment is not an edge of the tile")


def _shared_segment(a1: LatticePoint, o1: int, a2: LatticePoint, o2: int):
    t1 = Tile(TileKind.OBTUSE, o1, a1)
    t2 = Tile(TileKind.OBTUSE, o2, a2)
    segs1 = {edge_key(u, v) for u, v, _ in _dir_edges(t1)}
    for u, v, _ in _dir_edges(t2):
        k = edge_key(u, v)
        if k in segs1:
            return k
    return None


def _dir_edges(t: Tile):
    vs = vertices(t)
    return [(vs[i], vs[(i + 1) % 4], i) for i in range(4)]


# Adjacency type: both parent poses, normalized by rotation+translation so
# the first tile has orientation 1 and anchor (1, 0).
TypeKey = tuple

_TYPE_GEOMETRY: dict = {}


def _type_geometry(key: TypeKey):
    """Assignment-independent data for processing one adjacency type."""
    k1, k2, o2, a2a, a2b = key
    o1, a1 = 1, LatticePoint(1, 0)
    a2 = LatticePoint(a2a, a2b)
    seg = _shared_segment(a1, o1, a2, o2)
    i1 = _edge_index_of(o1, a1, seg)
    i2 = _edge_index_of(o2, a2, seg)
    prof = edge_profile()
    slots = forced_slots()
    hs1, hs2 = prof[i1][1], prof[i2][1]
    half_req = ((k1, hs1, slots[hs1].axis + o1 - 1),
                (k2, hs2, slots[hs2].axis + o2 - 1))
    new_req = []
    for end1, end2 in ((0, 2), (2, 0)):
        s1 = prof[i1][end1]
        s2 = prof[i2][end2]
        tail1 = a1.scaled(3) - HALF_LONG[o1].scaled(3)
        tail2 = a2.scaled(3) - HALF_LONG[o2].scaled(3)
        anch1 = tail1 + rotate_vec(slots[s1].anchor, o1 - 1)
        anch2 = tail2 + rotate_vec(slots[s2].anchor, o2 - 1)
        new_req.append(((k1, s1, o1 - 1, anch1), (k2, s2, o2 - 1, anch2)))
    return half_req, new_req, (i1, i2)


def same_corner_contacts(key: TypeKey) -> bool:
    """Contact filter encoding the star/hexagon matching geometry.

    Acute tiles meet 60-degree corner to 60-degree corner (edge pairs
    {0,3} at the tail or {1,2} at the head, so six of them close into a
    star); obtuse tiles meet 120-degree corner to corner (edge pairs {0,1}
    or {2,3}, three closing into a hexagon).  Mixed-kind contacts are
    unconstrained.
    """
    geo = _TYPE_GEOMETRY.get(key)
    if geo is None:
        geo = _type_geometry(key)
        _TYPE_GEOMETRY[key] = geo
    i1, i2 = geo[2]
    k1, k2 = key[0], key[1]
    if k1 == k2 == "acute":
        return {i1, i2} in ({0, 3}, {1, 2})
    if k1 == k2 == "obtuse":
        return {i1, i2} in ({0, 1}, {2, 3})
    return True


def normalize_type(k1: str, o1: int, a1: LatticePoint,
                   k2: str, o2: int, a2: LatticePoint) -> TypeKey:
    best = None
    for (ka, oa, pa), (kb, ob, pb) in (((k1, o1, a1), (k2, o2, a2)),
                                       ((k2, o2, a2), (k1, o1, a1))):
        r = (1 - oa) % 6
        pa_r = rotate_vec(pa, r)
        pb_r = rotate_vec(pb, r)
        shift = LatticePoint(1 - pa_r.a, -pa_r.b)
        key = (ka, kb, (ob + r) % 6, pb_r.a + shift.a, pb_r.b + shift.b)
        if best is None or key < best:
            best = key
    return best


class Unassigned(Exception):
    def __init__(self, var):
        self.var = var


class SearchState:
    """DFS over slot decorations with lazily generated closure obligations.

    Variables are ("kind"|"pol", parent_kind_value, slot_index).  Kinds of
    the acute parent's diagonal children are pinned acute with the word's
    polarities; halves are pinned obtuse.  Count constraints (5A/4O and
    4A/5O area-weighted) prune as soon as a table's kinds complete.
    """

    def __init__(self, word: str, budget_state: dict,
                 kinds_like: InflationRule | None = None,
                 type_filter=None):
        self.slots = forced_slots()
        self.vals: dict = {}
        self.budget = budget_state
        self.type_filter = type_filter
        diag = {a: (1 if ch == "X" else 4) for a, ch in zip(DIAGONAL_ANCHORS, word)}
        self.domains: dict = {}
        for pk in ("acute", "obtuse"):
            for s in self.slots:
                kv, pv = ("kind", pk, s.index), ("pol", pk, s.index)
                if s.inside_tri is not None:
                    self.domains[kv] = (TileKind.OBTUSE,)
                elif pk == "acute" and s.anchor in diag:
                    self.domains[kv] = (TileKind.ACUTE,)
                    self.domains[pv] = ((diag[s.anchor] - s.axis) % 6,)
                else:
                    self.domains[kv] = (TileKind.ACUTE, TileKind.OBTUSE)
                self.domains.setdefault(pv, (0, 3))
                if kinds_like is not None:
                    table = (kinds_like.children_of_acute if pk == "acute"
                             else kinds_like.children_of_obtuse)
                    self.domains[kv] = (table[s.index].kind,)

    # -- variable access -----------------------------------------------------

    def _get(self, var):
        if var in self.vals:
            return self.vals[var]
        dom = self.domains[var]
        if len(dom) == 1:
            return dom[0]
        raise Unassigned(var)

    def kind_of(self, pk: str, idx: int) -> TileKind:
        return self._get(("kind", pk, idx))

    def pol_of(self, pk: str, idx: int) -> int:
        return self._get(("pol", pk, idx))

    def orientation_of(self, pk: str, idx: int) -> int:
        return (self.slots[idx].axis + self.pol_of(pk, idx)) % 6

    def _kind_counts_ok(self, pk: str) -> bool:
        want_acute2 = 10 if pk == "acute" else 8
        lo = hi = 0
        for s in self.slots:
            w = 1 if s.inside_tri is not None else 2
            var = ("kind", pk, s.index)
            val = self.vals.get(var)
            if val is None and len(self.domains[var]) == 1:
                val = self.domains[var][0]
            if val is TileKind.ACUTE:
                lo += w
                hi += w
            elif val is None:
                hi += w
        return lo <= want_acute2 <= hi

    # -- closure step ---------------------------------------------------------

    def child_pose(self, parent_kind: str, parent_or: int, parent_anchor: LatticePoint,
                   slot_idx: int):
        slot = self.slots[slot_idx]
        tail = parent_anchor.scaled(3) - HALF_LONG[parent_or].scaled(3)
        anchor = tail + rotate_vec(slot.anchor, parent_or - 1)
        orientation = (self.orientation_of(parent_kind, slot_idx)
                       + parent_or - 1) % 6
        return self.kind_of(parent_kind, slot_idx).value, orientation, anchor

    def process_type(self, key: TypeKey) -> list[TypeKey]:
        """Check one adjacency type; return newly induced types.

        Raises OverlapConflict on a half mismatch, Unassigned when a needed
        variable has no value yet.  The assignment-independent geometry per
        type is memoized: edge indices, the half slots whose orientations
        must agree, and the pose skeletons of the flanking children.
        """
        geo = _TYPE_GEOMETRY.get(key)
        if geo is None:
            geo = _type_geometry(key)
            _TYPE_GEOMETRY[key] = geo
        if self.type_filter is not None and not self.type_filter(key):
            raise OverlapConflict(f"contact filter rejects {key}")
        half_req, new_req = geo[0], geo[1]
        (pk1, hs1, add1), (pk2, hs2, add2) = half_req
        if (self.pol_of(pk1, hs1) + add1) % 6 != (self.pol_of(pk2, hs2) + add2) % 6:
            raise OverlapConflict(f"half mismatch across {key}")
        new = []
        for (pka, sa, adda, ancha), (pkb, sb, addb, anchb) in new_req:
            ca = (self.kind_of(pka, sa).value,
                  (self.slots[sa].axis + self.pol_of(pka, sa) + adda) % 6, ancha)
            cb = (self.kind_of(pkb, sb).value,
                  (self.slots[sb].axis + self.pol_of(pkb, sb) + addb) % 6, anchb)
            new.append(normalize_type(*ca, *cb))
        return new

    # -- search ----------------------------------------------------------------

    def search(self, on_solution) -> None:
        """Depth-first search, propagating the closure eagerly.

        Pending adjacency types are drained before the next interior-pair
        seed is introduced, so every variable choice is validated against
        all constraints reachable from what is already known.
        """
        origin = LatticePoint(1, 0)
        seeds = [(pk, ia, ib)
                 for pk in ("acute", "obtuse")
                 for ia, ib in interior_slot_pairs()]
        seen: set = set()

        def tick():
            self.budget["nodes"] += 1
            if self.budget["nodes"] > self.budget["budget"]:
                raise SearchBudgetExceeded(
                    f"discovery budget {self.budget['budget']} exhausted")

        def branch(var, cont):
            for val in self.domains[var]:
                self.vals[var] = val
                if var[0] != "kind" or self._kind_counts_ok(var[1]):
                    cont()
                del self.vals[var]

        def go(si: int, stack: tuple):
            tick()
            if stack:
                key = stack[-1]
                var = new = None
                try:
                    new = self.process_type(key)
                except OverlapConflict:
                    return
                except Unassigned as u:
                    var = u.var
                if var is not None:
                    branch(var, lambda: go(si, stack))
                    return
                added = [t for t in new if t not in seen]
                for t in added:
                    seen.add(t)
                go(si, stack[:-1] + tuple(added))
                for t in added:
                    seen.discard(t)
                return
            if si == len(seeds):
                self.finish(on_solution)
                return
            pk, ia, ib = seeds[si]
            var = t = None
            try:
                pa = self.child_pose(pk, 1, origin, ia)
                pb = self.child_pose(pk, 1, origin, ib)
                t = normalize_type(*pa, *pb)
            except Unassigned as u:
                var = u.var
            if var is not None:
                branch(var, lambda: go(si, stack))
                return
            if t in seen:
                go(si + 1, stack)
                return
            seen.add(t)
            go(si + 1, (t,))
            seen.discard(t)

        import sys
        if sys.getrecursionlimit() < 20000:
            sys.setrecursionlimit(20000)
        go(0, ())

    def finish(self, on_solution) -> None:
        # Queue drained: every reachable adjacency type is consistent.  Fill
        # any untouched variables (there normally are none: the interior
        # pairs reference every slot) and emit.
        free = [v for v in self.domains if v not in self.vals
                and len(self.domains[v]) > 1]
        if free:
            var = free[0]
            for val in self.domains[var]:
                self.vals[var] = val
                if var[0] == "kind" and not self._kind_counts_ok(var[1]):
                    del self.vals[var]
                    continue
                self.finish(on_solution)
                del self.vals[var]
            return
        if not (self._kind_counts_ok("acute") and self._kind_counts_ok("obtuse")):
            return
        assign: Assignment = {}
        for pk in ("acute", "obtuse"):
            for s in self.slots:
                assign[(pk, s.index)] = (self.kind_of(pk, s.index),
                                         self.orientation_of(pk, s.index))
        on_solution(assign)


# ---------------------------------------------------------------------------
# Public search API


WORDS = ("XXX", "XXY", "XYX", "XYY", "YXX", "YXY", "YYX", "YYY")


def signature_of(rule: InflationRule) -> str:
    by_anchor = {p.offset: p for p in rule.children_of_acute}
    word = ""
    for a in DIAGONAL_ANCHORS:
        pl = by_anchor[a]
        word += "X" if (1 + pl.orientation_delta) % 6 == 1 else "Y"
    return word


def one_d_rule_of(word: str) -> tuple[str, str]:
    """The 1D substitution induced by a diagonal signature word."""
    swapped = word.translate(str.maketrans("XY", "YX"))
    return word, swapped[::-1]


@dataclass
class Discovery:
    signature: str
    rule: InflationRule


class _StopSearch(Exception):
    pass


def solve_word(word: str, budget_state: dict,
               kinds_like: InflationRule | None = None,
               limit: int | None = None,
               accept=None, type_filter=None) -> list[Discovery]:
    """Consistent decorated schemes with the given diagonal word.

    The decoration space is large (the closure admits every assignment the
    plane can absorb, far more than the matching rules will), so callers
    normally pass a ``limit`` or an ``accept`` predicate; enumeration order
    is deterministic.
    """
    out: list[Discovery] = []

    def on_solution(assign: Assignment):
        rule = build_rule(Variation.V1, assign)
        d = Discovery(signature=word, rule=rule)
        if accept is not None and not accept(d):
            return
        out.append(d)
        if limit is not None and len(out) >= limit:
            raise _StopSearch

    try:
        SearchState(word, budget_state, kinds_like=kinds_like,
                    type_filter=type_filter).search(on_solution)
    except _StopSearch:
        pass
    return out


def discover_rules(budget: int = 2_000_000, witnesses_per_class: int = 1):
    """Search all 8 diagonal polarity words for consistent schemes.

    Returns (solutions, classification).  classification maps each
    realizable signature word to its found schemes; per word the search
    stops after ``witnesses_per_class`` witnesses, since the full decoration
    space per class is combinatorially large.  The spec's table corresponds
    to the 8 realizable words.
    """
    budget_state = {"nodes": 0, "budget": budget}
    solutions: list[Discovery] = []
    for word in WORDS:
        solutions.extend(solve_word(word, budget_state, limit=witnesses_per_class))
    classification: dict[str, list[Discovery]] = {}
    for sol in solutions:
        classification.setdefault(sol.signature, []).append(sol)
    return solutions, classification


# ---------------------------------------------------------------------------
# Concrete-rule closure utilities (no search variables): the full set of
# adjacency types a rule can ever produce, and label statistics over it.


def _assignment_of(rule: InflationRule) -> Assignment:
    assign: Assignment = {}
    for pk, table in (("acute", rule.children_of_acute),
                      ("obtuse", rule.children_of_obtuse)):
        for i, pl in enumerate(table):
            assign[(pk, i)] = (pl.kind, (1 + pl.orientation_delta) % 6)
    return assign


def closure_types(rule: InflationRule) -> set:
    """All pose-normalized adjacency types reachable from one seed tile.

    Conflict-free closure or OverlapConflict; equivalent to (and much
    faster than) inflating two-tile patches.
    """
    assign = _assignment_of(rule)
    slots = forced_slots()
    origin = LatticePoint(1, 0)

    def child(pk, parent_or, parent_anchor, idx):
        kind, orientation = assign[(pk, idx)]
        tail = parent_anchor.scaled(3) - HALF_LONG[parent_or].scaled(3)
        anchor = tail + rotate_vec(slots[idx].anchor, parent_or - 1)
        return kind.value, (orientation + parent_or - 1) % 6, anchor

    stack = []
    for pk in ("acute", "obtuse"):
        for ia, ib in interior_slot_pairs():
            stack.append(normalize_type(*child(pk, 1, origin, ia),
                                        *child(pk, 1, origin, ib)))
    seen: set = set()
    while stack:
        key = stack.pop()
        if key in seen:
            continue
        seen.add(key)
        geo = _TYPE_GEOMETRY.get(key)
        if geo is None:
            geo = _type_geometry(key)
            _TYPE_GEOMETRY[key] = geo
        (pk1, hs1, add1), (pk2, hs2, add2) = geo[0]
        if (assign[(pk1, hs1)][1] - slots[hs1].axis + add1) % 6 != \
           (assign[(pk2, hs2)][1] - slots[hs2].axis + add2) % 6:
            raise OverlapConflict(f"half mismatch across {key}")
        for (pka, sa, adda, ancha), (pkb, sb, addb, anchb) in geo[1]:
            ka, oa = assign[(pka, sa)]
            kb, ob = assign[(pkb, sb)]
            t = normalize_type(ka.value, (oa + adda) % 6, ancha,
                               kb.value, (ob + addb) % 6, anchb)
            if t not in seen:
                stack.append(t)
    return seen


def type_context_pair(key: TypeKey):
    """((kind, edge index), (kind, edge index)) for one adjacency type."""
    k1, k2, o2, a2a, a2b = key
    a1, o1 = LatticePoint(1, 0), 1
    a2 = LatticePoint(a2a, a2b)
    seg = _shared_segment(a1, o1, a2, o2)
    return ((k1, _edge_index_of(o1, a1, seg)), (k2, _edge_index_of(o2, a2, seg)))


def closure_label_stats(rule: InflationRule):
    """Forced-merge label table statistics over the full closure.

    Returns (n_symbols, rejects_flip, types): the label partition obtained
    by merging (kind, edge) contexts that are forced together by the
    closure's adjacency types, and whether some occurring acute-acute
    contact becomes invalid when one tile is flipped by 180 degrees.
    """
    types = closure_types(rule)
    pairs = {frozenset(type_context_pair(t)) for t in types}
    contexts = [(k, i) for k in ("acute", "obtuse") for i in range(4)]
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

    changed = True
    while changed:
        changed = False
        partner_of: dict = {}
        for pair in pairs:
            items = sorted(pair)
            a, b = items[0], items[-1]
            for x, y in ((a, b), (b, a)):
                rx, ry = find(x), find(y)
                if rx in partner_of and partner_of[rx] != ry:
                    changed |= union(partner_of[rx], ry)
                else:
                    partner_of[rx] = ry
    classes = {c: find(c) for c in contexts}
    partner = {}
    for pair in pairs:
        items = sorted(pair)
        a, b = items[0], items[-1]
        partner[classes[a]] = classes[b]
        partner[classes[b]] = classes[a]
    n_symbols = len(set(classes.values()))
    rejects_flip = False
    for t in types:
        (k1, i1), (k2, i2) = type_context_pair(t)
        if k1 == "acute" and k2 == "acute":
            flipped = classes[(k2, (i2 + 2) % 4)]
            if partner.get(classes[(k1, i1)]) != flipped:
                rejects_flip = True
                break
    return n_symbols, rejects_flip, types


# ---------------------------------------------------------------------------
# Independent, inflate()-based consistency check (used to cross-validate the
# fast closure above on shipped rules).


def _adjacent_pairs(patch: Patch):
    by_edge: dict = {}
    for key, tile, meta in patch.items_sorted():
        vs = vertices(tile)
        idxs = range(4)
        if meta.half == "low":
            idxs = (3, 0)
        elif meta.half == "high":
            idxs = (1, 2)
        for i in idxs:
            by_edge.setdefault(edge_key(vs[i], vs[(i + 1) % 4]), []).append(key)
    out = []
    for keys in by_edge.values():
        if len(keys) == 2:
            out.append((patch.tiles[keys[0]][0], patch.tiles[keys[1]][0]))
    return out


def rule_is_consistent(rule: InflationRule, max_types: int = 4000) -> bool:
    """Close the adjacency types by actually inflating two-tile patches."""
    seen: set = set()
    stack = []
    try:
        for kind in (TileKind.ACUTE, TileKind.OBTUSE):
            p = Patch(None, 1)
            p.add(Tile(kind, 1, LatticePoint(1, 0)), TileMeta())
            for a, b in _adjacent_pairs(inflate(p, rule)):
                stack.append(normalize_type(a.kind.value, a.orientation, a.anchor,
                                            b.kind.value, b.orientation, b.anchor))
        while stack:
            key = stack.pop()
            if key in seen:
                continue
            seen.add(key)
            if len(seen) > max_types:
                raise SearchBudgetExceeded("adjacency closure did not stabilize")
            k1, k2, o2, a2a, a2b = key
            p = Patch(None, 1)
            p.add(Tile(TileKind(k1), 1, LatticePoint(1, 0)), TileMeta())
            p.add(Tile(TileKind(k2), o2, LatticePoint(a2a, a2b)), TileMeta())
            for a, b in _adjacent_pairs(inflate(p, rule)):
                k = normalize_type(a.kind.value, a.orientation, a.anchor,
                                   b.kind.value, b.orientation, b.anchor)
                if k not in seen:
                    stack.append(k)
    except OverlapConflict:
        return False
    return True
