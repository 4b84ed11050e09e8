"""1D substitution system on the alphabet {X, Y} with image length 3.

X stands for an up-polarity acute tile along a long diagonal, Y for a
down-polarity one; the 2D inflation rules project onto these words.  The
8-row rule table is stored verbatim and the mechanical mirror/dual
relations between its columns are verified, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

ALPHABET = "XY"
_SWAP = str.maketrans("XY", "YX")


@dataclass(frozen=True)
class SubRule:
    image_of_x: str
    image_of_y: str

    def __post_init__(self):
        for img in (self.image_of_x, self.image_of_y):
            if len(img) != 3 or any(ch not in ALPHABET for ch in img):
                raise ValueError(f"image {img!r} must be 3 letters over X/Y")

    def image(self, letter: str) -> str:
        if letter == "X":
            return self.image_of_x
        if letter == "Y":
            return self.image_of_y
        raise ValueError(f"letter {letter!r} not in alphabet")

    def mirror(self) -> "SubRule":
        """Spatial 180-degree flip: reverse the images and swap letters."""
        return SubRule(self.image_of_y.translate(_SWAP)[::-1],
                       self.image_of_x.translate(_SWAP)[::-1])

    def dual(self) -> "SubRule":
        """Global polarity swap: X and Y exchange roles."""
        return SubRule(self.image_of_y.translate(_SWAP),
                       self.image_of_x.translate(_SWAP))

    def count_matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Rows = (X, Y) counts contributed per X-letter, per Y-letter."""
        return (
            (self.image_of_x.count("X"), self.image_of_x.count("Y")),
            (self.image_of_y.count("X"), self.image_of_y.count("Y")),
        )


V1_RULE = SubRule("XYY", "XXY")
V2_RULE = SubRule("YXX", "YYX")


def expand(rule: SubRule, word: str, depth: int) -> str:
    """Apply the substitution letterwise ``depth`` times."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    for _ in range(depth):
        word = "".join(rule.image(ch) for ch in word)
    return word


def letter_counts(rule: SubRule, seed: str, depth: int) -> tuple[int, int]:
    """Exact (X, Y) counts of expand(rule, seed, depth), via matrix power."""
    nx = seed.count("X")
    ny = seed.count("Y")
    if nx + ny != len(seed):
        raise ValueError("seed must be a word over X/Y")
    (xx, xy), (yx, yy) = rule.count_matrix()
    for _ in range(depth):
        nx, ny = nx * xx + ny * yx, nx * xy + ny * yy
    return nx, ny


@dataclass(frozen=True)
class Classification:
    periodic: bool
    period: int | None
    depth: int
    word_length: int

    def __str__(self) -> str:
        if self.periodic:
            return f"Periodic({self.period})"
        return f"AperiodicAtDepth({self.depth})"


def smallest_period(word: str) -> int | None:
    """Smallest p <= len/2 with word[i] == word[i+p] for all i, or None."""
    n = len(word)
    for p in range(1, n // 2 + 1):
        if word[p:] == word[:-p]:
            return p
    return None


def classify(rule: SubRule, depth: int) -> Classification:
    """Expand seed X to ``depth`` and scan all candidate periods.

    Reports AperiodicAtDepth when no period up to half the expanded length
    exists; this is desk-scale evidence, never a proof.
    """
    if depth < 4:
        raise ValueError("classification needs depth >= 4")
    word = expand(rule, "X", depth)
    p = smallest_period(word)
    return Classification(periodic=p is not None, period=p,
                          depth=depth, word_length=len(word))


@dataclass(frozen=True)
class TableRow:
    name: str
    substitution: tuple[str, str]   # (letter, image), as printed
    mirror: tuple[str, str]
    dual: tuple[str, str]
    dual_mirror: tuple[str, str]

    def primary_rule(self) -> SubRule:
        """The full rule from the substitution + mirror cells."""
        images = {self.substitution[0]: self.substitution[1],
                  self.mirror[0]: self.mirror[1]}
        return SubRule(images["X"], images["Y"])

    def dual_rule(self) -> SubRule:
        images = {self.dual[0]: self.dual[1],
                  self.dual_mirror[0]: self.dual_mirror[1]}
        return SubRule(images["X"], images["Y"])


TABLE8 = (
    TableRow("variation 1", ("X", "XYY"), ("Y", "XXY"), ("Y", "YXX"), ("X", "YYX")),
    TableRow("variation 2", ("Y", "YYX"), ("X", "YXX"), ("X", "XXY"), ("Y", "XYY")),
    TableRow("periodic 1", ("X", "XXX"), ("Y", "YYY"), ("Y", "XXX"), ("X", "YYY")),
    TableRow("periodic 2", ("X", "XYX"), ("Y", "YXY"), ("X", "YXY"), ("Y", "XYX")),
)


def _swap_cell(cell: tuple[str, str]) -> tuple[str, str]:
    letter, image = cell
    return letter.translate(_SWAP), image.translate(_SWAP)


def _mirror_cell(cell: tuple[str, str]) -> tuple[str, str]:
    letter, image = cell
    return letter.translate(_SWAP), image.translate(_SWAP)[::-1]


def table8():
    """The 8-rule table verbatim plus verified mechanical relations.

    Returns (rows, relations).  relations[row_name] records, per derived
    column, whether the printed cell equals the mechanical transform of the
    substitution cell: the mirror column is expected to hold everywhere;
    the printed dual cells of the periodic rows do not arise from the
    letter-swap transform, and are flagged False rather than repaired.
    """
    relations = {}
    for row in TABLE8:
        relations[row.name] = {
            "mirror": _mirror_cell(row.substitution) == row.mirror,
            "dual": _swap_cell(row.substitution) == row.dual,
            "dual_mirror": _mirror_cell(row.dual) == row.dual_mirror,
        }
    return TABLE8, relations


def all_table_rules() -> dict[str, SubRule]:
    """The 8 distinct rules covered by the table (primary + dual per row)."""
    out = {}
    for row in TABLE8:
        out[row.name] = row.primary_rule()
        out[row.name + " dual"] = row.dual_rule()
    return out


def parse_rule(text: str) -> SubRule:
    """Parse "X:XYY,Y:XXY" into a SubRule."""
    images = {}
    for part in text.split(","):
        letter, _, image = part.strip().partition(":")
        images[letter.strip().upper()] = image.strip().upper()
    if set(images) != {"X", "Y"}:
        raise ValueError("rule must define images for X and Y")
    return SubRule(images["X"], images["Y"])
