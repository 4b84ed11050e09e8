"""Multigrid (hexagrid) dual: three line families with word-derived spacings.

A grid family k consists of lines normal to the lattice direction e_k, at
exact rational offsets measured along e_k.  Offsets are cumulative sums of
spacing tokens A = 1+2*delta, B = 2-2*delta, C = 3/2 (a = A/2 at word
boundaries), produced from a two-sided substitution word mirrored about the
6-fold center.  Everything stays rational: for this normal arrangement, a
point on lines of two families has a rational coordinate along the third,
so genericity (no triple points) is decided exactly.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .lattice import LatticePoint
from .inflation import Patch, TileMeta, Variation
from .seqsub import V1_RULE, V2_RULE, expand
from .tiles import Tile, TileKind, axis_of_anchor


class DeltaOutOfRange(Exception):
    pass


class NonGenericGrid(Exception):
    pass


class EpsRational:
    """A number r + c*eps with eps an infinitesimal; ordered lexicographically.

    Grid offsets use these so that symmetric (singular) grids resolve
    coherently: each family gets a distinct eps coefficient, which breaks
    every would-be triple point in the same direction and keeps the dual on
    the rhombille superposition.  Exact throughout.
    """

    __slots__ = ("r", "c")

    def __init__(self, r=0, c=0):
        self.r = Fraction(r)
        self.c = Fraction(c)

    def __repr__(self):
        return f"EpsRational({self.r}, {self.c})"

    def _key(self):
        return (self.r, self.c)

    def __eq__(self, other):
        other = _as_eps(other)
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other):
        return self._key() < _as_eps(other)._key()

    def __le__(self, other):
        return self._key() <= _as_eps(other)._key()

    def __gt__(self, other):
        return self._key() > _as_eps(other)._key()

    def __ge__(self, other):
        return self._key() >= _as_eps(other)._key()

    def __add__(self, other):
        other = _as_eps(other)
        return EpsRational(self.r + other.r, self.c + other.c)

    __radd__ = __add__

    def __neg__(self):
        return EpsRational(-self.r, -self.c)

    def __sub__(self, other):
        return self + (-_as_eps(other))

    def __rsub__(self, other):
        return _as_eps(other) + (-self)


def _as_eps(x) -> "EpsRational":
    if isinstance(x, EpsRational):
        return x
    return EpsRational(x)


TOKEN_NAMES = ("A", "B", "C", "a")


def token_values(delta: Fraction) -> dict[str, Fraction]:
    delta = Fraction(delta)
    if not (0 < delta < Fraction(1, 2)):
        raise DeltaOutOfRange(f"delta must lie strictly between 0 and 1/2, got {delta}")
    a_full = 1 + 2 * delta
    return {"A": a_full, "B": 2 - 2 * delta, "C": Fraction(3, 2), "a": a_full / 2}


LETTER_TOKENS = {"X": ("a", "B", "C", "a"), "Y": ("a", "C", "B", "a")}


def spacing_tokens(word: str) -> list[str]:
    """Token letters for a word, with adjacent half-tokens merged to A."""
    tokens: list[str] = []
    for ch in word:
        try:
            block = LETTER_TOKENS[ch]
        except KeyError:
            raise ValueError(f"letter {ch!r} not in alphabet") from None
        if tokens and tokens[-1] == "a" and block[0] == "a":
            tokens[-1] = "A"
            tokens.extend(block[1:])
        else:
            tokens.extend(block)
    return tokens


def spacing_sequence(word: str, delta: Fraction):
    """(token letters, cumulative offsets) for a word; offsets start at 0."""
    values = token_values(Fraction(delta))
    tokens = spacing_tokens(word)
    offsets = [Fraction(0)]
    for t in tokens:
        offsets.append(offsets[-1] + values[t])
    return tokens, offsets


@dataclass(frozen=True)
class GridFamily:
    index: int
    offsets: tuple      # strictly increasing Fractions
    gap_tokens: tuple   # token letter of each gap between consecutive lines

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.offsets, self.offsets[1:])):
            raise ValueError("offsets must be strictly increasing")

    def line_context(self, i: int) -> tuple[str, str]:
        """(token below, token above) around line i; '-' beyond the ends."""
        below = self.gap_tokens[i - 1] if i > 0 else "-"
        above = self.gap_tokens[i] if i < len(self.gap_tokens) else "-"
        return below, above

    def position_class(self, i: int) -> str:
        """Within-window position of line i: "L" (1/2 + delta) or "H" (1 - delta).

        An A gap below a line puts it at the low position, a B gap at the
        high one, and C gaps carry the previous position forward, so the
        class is the last non-C spacing letter below the line (a counts as
        half an A).  Streams with no A or B at all default to "L".
        """
        for jj in range(i - 1, -1, -1):
            tok = self.gap_tokens[jj]
            if tok in ("A", "a"):
                return "L"
            if tok == "B":
                return "H"
        return "L"

    def strip_index(self, coord) -> int:
        """Number of lines at offsets < coord (coord must avoid lines)."""
        return bisect.bisect_left(self.offsets, coord)


@dataclass(frozen=True)
class Hexagrid:
    families: tuple     # three GridFamily
    delta: Fraction
    word: str
    metadata: dict = field(default_factory=dict, compare=False)

    def lines_per_family(self) -> int:
        return len(self.families[0].offsets)


def rule_for(variation: Variation):
    return V1_RULE if variation is Variation.V1 else V2_RULE


# Default per-family infinitesimal coefficients: distinct values make every
# grid generic and resolve singular configurations coherently.
DEFAULT_EPS = (Fraction(0), Fraction(1), Fraction(2))


def _family_offsets(tokens, values, start: EpsRational):
    offsets = [start]
    for t in tokens:
        offsets.append(offsets[-1] + values[t])
    return offsets


def _two_sided_tokens(word: str):
    """Tokens of the word mirrored about the 6-fold center.

    The positive side carries the word's tokens; the opposite side carries
    them reversed (the spatially flipped word); the two boundary half
    tokens meeting at the center merge into one A gap spanning it.
    """
    pos = spacing_tokens(word)
    return pos[::-1][:-1] + ["A"] + pos[1:]


def build_grid_from_tokens(tokens, delta: Fraction,
                           centering=(0, 0, 0), eps=DEFAULT_EPS,
                           metadata: dict | None = None) -> Hexagrid:
    """A hexagrid with one explicit token stream shared by all families."""
    values = token_values(Fraction(delta))
    families = []
    for k in range(3):
        start = EpsRational(Fraction(centering[k]), Fraction(eps[k]))
        families.append(GridFamily(k, tuple(_family_offsets(tokens, values, start)),
                                   tuple(tokens)))
    meta = dict(metadata or {})
    meta.setdefault("centering", [str(Fraction(c)) for c in centering])
    meta.setdefault("eps", [str(Fraction(e)) for e in eps])
    return Hexagrid(tuple(families), Fraction(delta), "", meta)


def build_grid(variation: Variation, depth: int, delta: Fraction,
               centering=(0, 0, 0), eps=DEFAULT_EPS,
               two_sided: bool = False) -> Hexagrid:
    """Substitution-word grid for a variation; exact and always generic.

    All three families carry the same word construction; ``two_sided``
    mirrors the word about the 6-fold center (the grid is reversed on the
    opposite side).  Offsets are r + c*eps with distinct default eps
    coefficients per family: symmetric grids are singular at eps = 0, and
    the infinitesimal shift is the documented, genericity-restoring
    centering choice (recorded in the metadata).
    """
    delta = Fraction(delta)
    word = expand(rule_for(variation), "X", depth)
    tokens = _two_sided_tokens(word) if two_sided else spacing_tokens(word)
    values = token_values(delta)
    span = sum(values[t] for t in spacing_tokens(word))
    families = []
    for k in range(3):
        start = EpsRational(Fraction(centering[k]) - (span if two_sided else 0),
                            Fraction(eps[k]))
        families.append(GridFamily(k, tuple(_family_offsets(tokens, values, start)),
                                   tuple(tokens)))
    meta = {"variation": variation.name, "depth": depth, "delta": str(delta),
            "two_sided": two_sided,
            "centering": [str(Fraction(c)) for c in centering],
            "eps": [str(Fraction(e)) for e in eps]}
    return Hexagrid(tuple(families), delta, word, meta)


# The rational coordinate of a (family j, family k) intersection along the
# third family m: with unit normals e0, e1, e2 at 0/60/120 degrees,
# e1 = e0 + e2, so  <p, e_m> is a signed combination of the two offsets.
def third_coordinate(j: int, oj: Fraction, k: int, ok: Fraction) -> Fraction:
    pair = {j: oj, k: ok}
    if 0 in pair and 1 in pair:
        return pair[1] - pair[0]          # <p, e2>
    if 1 in pair and 2 in pair:
        return pair[1] - pair[2]          # <p, e0>
    if 0 in pair and 2 in pair:
        return pair[0] + pair[2]          # <p, e1>
    raise ValueError("families must differ")


def check_genericity(g: Hexagrid) -> list:
    """Exact triple-point scan; an empty list means dualization is safe."""
    triples = []
    for j, k in ((0, 1), (1, 2), (0, 2)):
        m = 3 - j - k
        third = set(g.families[m].offsets)
        for oj in g.families[j].offsets:
            for ok in g.families[k].offsets:
                s = third_coordinate(j, oj, k, ok)
                if s in third:
                    triples.append((j, oj, k, ok, m, s))
    return triples


# Dual edge vectors (doubled coordinates): d_k points along the family-k
# normal, so dual rhombs have edges normal to the grid lines.
DUAL_EDGE = (LatticePoint(2, 0), LatticePoint(0, 2), LatticePoint(-2, 2))


_DUAL_DECORATION: dict | None = None


def _dual_decoration_table() -> dict:
    global _DUAL_DECORATION
    if _DUAL_DECORATION is None:
        from .inflation import _load_data

        obj = _load_data("dualmap.json")
        _DUAL_DECORATION = {k: tuple(v) for k, v in obj["map"].items()}
    return _DUAL_DECORATION


def default_decoration(cell):
    """Fitted map from line position classes to (kind, polarity flip).

    The position class of each crossing line follows from its adjacent
    spacing letters (GridFamily.position_class); the shipped 12-entry law
    (scripts/refit_dual_map.py) was extracted from a dual aligned
    tile-for-tile with a substitution patch and reproduces its decoration
    exactly.
    """
    table = _dual_decoration_table()
    key = f"{cell.j}{cell.k}:{cell.pos_j}{cell.pos_k}"
    entry = table.get(key)
    if entry is None:
        entry = table["*"]
    kind, flip = entry
    return TileKind(kind), bool(flip)


class DualCell(NamedTuple):
    j: int
    k: int
    ij: int
    ik: int
    anchor: LatticePoint
    axis: int
    pos_j: str           # position class of line ij ("L"/"H")
    pos_k: str
    context_j: tuple     # (token below, token above)
    context_k: tuple


def dual_cells(g: Hexagrid):
    """One DualCell per in-scope pairwise line intersection.

    The first and last line of each family sit at window boundaries (they
    are construction artifacts of the cumulative offsets), and an
    intersection whose third-family coordinate leaves that family's span
    would get a saturated strip index; both kinds of fringe intersections
    are skipped, so every emitted cell is faithfully placed.
    """
    fams = g.families
    for j, k in ((0, 1), (1, 2), (0, 2)):
        m = 3 - j - k
        fam_j, fam_k, fam_m = fams[j], fams[k], fams[m]
        lo, hi = fam_m.offsets[0], fam_m.offsets[-1]
        nj, nk = len(fam_j.offsets), len(fam_k.offsets)
        for ij, oj in enumerate(fam_j.offsets):
            if ij in (0, nj - 1):
                continue
            for ik, ok in enumerate(fam_k.offsets):
                if ik in (0, nk - 1):
                    continue
                s = third_coordinate(j, oj, k, ok)
                if not (lo < s < hi):
                    continue
                im = fam_m.strip_index(s)
                base = (DUAL_EDGE[j].scaled(ij) + DUAL_EDGE[k].scaled(ik)
                        + DUAL_EDGE[m].scaled(im))
                anchor = base + LatticePoint(
                    (DUAL_EDGE[j].a + DUAL_EDGE[k].a) // 2,
                    (DUAL_EDGE[j].b + DUAL_EDGE[k].b) // 2)
                yield DualCell(j, k, ij, ik, anchor, axis_of_anchor(anchor),
                               fam_j.position_class(ij), fam_k.position_class(ik),
                               fam_j.line_context(ij), fam_k.line_context(ik))


def dualize(g: Hexagrid, decoration=None) -> Patch:
    """de Bruijn dualization: one unit rhomb per in-scope intersection.

    Tile kind and polarity come from the decoration map applied to the
    spacing-letter data of the two crossing lines.
    """
    if check_genericity(g):
        raise NonGenericGrid("grid has triple points; shift the centering")
    if decoration is None:
        decoration = default_decoration
    patch = Patch(None, generation=1)
    for cell in dual_cells(g):
        kind, flip = decoration(cell)
        tile = Tile(kind, cell.axis + (3 if flip else 0), cell.anchor)
        patch.add(tile, TileMeta(born=1))
    return patch
