"""Spacetime patches of a block code acting on a subshift.

Stacking x, phi(x), phi^2(x), ... as rows of a two-dimensional picture
turns questions about the code into questions about a 2D configuration:
how many n-wide, k-tall rectangles occur, which cell sets determine which
others, and whether low rectangle count forces a periodicity vector.
Rows are indexed upward from 0 (the base point), columns left to right.

Each application of the code eats one radius off both ends of the
generating word, so a full-height patch of width n needs a word of length
n + 2(k-1)r; every row is then read off centered.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .blockcode import (
    DEFAULT_TABLE_BUDGET,
    BlockCode,
    apply_to_word,
    minimized,
)
from .errors import BudgetExceededError
from .shiftlang import ShiftPresentation


@dataclass(frozen=True)
class SpacetimePatch:
    """One n-wide, k-tall rectangle of a spacetime configuration.

    Identity (equality, hashing, dedup) is the cell content alone; the
    generating word and code name ride along for reporting.
    """

    width: int
    height: int
    rows: tuple[str, ...]
    source_word: str = field(default="", compare=False)
    code_name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.height != len(self.rows):
            raise ValueError("height must match the number of rows")
        if any(len(r) != self.width for r in self.rows):
            raise ValueError("every row must have length equal to width")

    def cell(self, col: int, row: int) -> str:
        return self.rows[row][col]

    def as_text(self) -> str:
        """Plain-text grid, base row first."""
        return "\n".join(self.rows)


def build_patches(
    domain: ShiftPresentation,
    code: BlockCode,
    n: int,
    k: int,
    word_budget: int = DEFAULT_TABLE_BUDGET,
    code_name: str = "",
) -> tuple[SpacetimePatch, ...]:
    """All distinct n-by-k patches of the code's spacetime over the domain.

    Enumerates every legal generating word, iterates the code k-1 times,
    and keeps the central n columns of each row.  The result is exactly
    the set of n x k rectangles occurring in configurations (x, code(x),
    code^2(x), ...), deduplicated, in first-seen order of the sorted word
    enumeration.
    """
    if n < 1 or k < 1:
        raise ValueError("patch dimensions must be positive")
    if code.domain != domain:
        raise ValueError("code is not defined on the given presentation")
    phi = minimized(code)
    r = phi.rule.radius
    length = n + 2 * (k - 1) * r
    words = domain.count_words(length)
    if words > word_budget:
        raise BudgetExceededError("generating words", word_budget, words, "build_patches")
    seen = {}
    for w in domain.words_of_length(length):
        rows = []
        current = w
        for _ in range(k):
            margin = (len(current) - n) // 2
            rows.append(current[margin : margin + n])
            if len(rows) < k:
                current = apply_to_word(phi, current)
        patch = SpacetimePatch(n, k, tuple(rows), source_word=w, code_name=code_name)
        if patch not in seen:
            seen[patch] = patch
    return tuple(seen.values())


def rectangle_complexity(
    domain: ShiftPresentation,
    code: BlockCode,
    n: int,
    k: int,
    word_budget: int = DEFAULT_TABLE_BUDGET,
) -> int:
    return len(build_patches(domain, code, n, k, word_budget))


# -- coding relation ---------------------------------------------------------


def _resolve_cells(cells, width: int, height: int, origin_col: int):
    resolved = []
    for col, row in cells:
        c = col + origin_col
        if not (0 <= c < width):
            raise ValueError(f"cell column {col} falls outside patch width {width}")
        if not (0 <= row < height):
            raise ValueError(f"cell row {row} falls outside patch height {height}")
        resolved.append((c, row))
    return tuple(sorted(set(resolved)))


def coding_check(patches, cells_a, cells_b, origin_col: int | None = None) -> bool:
    """Does agreement on cell set A force agreement on cell set B?

    True iff any two patches that agree on every A-cell also agree on
    every B-cell.  Columns in the cell sets are relative to origin_col,
    which defaults to the central column so symmetric segments like
    {-k..k} x {0} read naturally.
    """
    patches = tuple(patches)
    if not patches:
        raise ValueError("coding_check needs a nonempty patch family")
    width, height = patches[0].width, patches[0].height
    if origin_col is None:
        origin_col = width // 2
    a = _resolve_cells(cells_a, width, height, origin_col)
    b = _resolve_cells(cells_b, width, height, origin_col)
    groups: dict[tuple, tuple] = {}
    for p in patches:
        key = tuple(p.cell(c, r) for c, r in a)
        val = tuple(p.cell(c, r) for c, r in b)
        prev = groups.get(key)
        if prev is None:
            groups[key] = val
        elif prev != val:
            return False
    return True


def horizontal_segment(radius: int, row: int = 0):
    """The cell set {-radius..radius} x {row}."""
    return tuple((c, row) for c in range(-radius, radius + 1))


# -- low-complexity periodicity audit ------------------------------------------


@dataclass(frozen=True)
class CyrKraVerdict:
    """Outcome of the rectangle-count periodicity criterion.

    status is one of "BelowThreshold" (count <= nk/2 and a vector was
    found), "BelowThresholdNoVectorFound" (count under threshold but no
    consistent vector in range; at finite scale this flags a bug or an
    undersized window, never a theorem counterexample), "AboveThreshold".
    """

    status: str
    vector: tuple[int, int] | None
    patch_count: int
    threshold_doubled: int  # compare 2*count against n*k exactly

    @property
    def found(self) -> bool:
        return self.vector is not None


def _vector_consistent(patch: SpacetimePatch, di: int, dj: int) -> bool:
    for y in range(patch.height):
        y2 = y + dj
        if not (0 <= y2 < patch.height):
            continue
        for x in range(patch.width):
            x2 = x + di
            if 0 <= x2 < patch.width and patch.rows[y2][x2] != patch.rows[y][x]:
                return False
    return True


def cyr_kra_audit(patches, n: int, k: int) -> CyrKraVerdict:
    """Check count <= nk/2 and search for a periodicity vector.

    The vector search covers (i, j) with |i| < n and 0 <= j < k, skipping
    the zero vector and keeping only one representative of each +-v pair
    (j > 0, or j = 0 with i > 0).  A vector passes when every patch agrees
    with its own (i, j)-translate on their overlap; this is patch-local
    evidence for genuine periodicity of the infinite configuration, which
    is all finite data can certify.
    """
    patches = tuple(patches)
    count = len(patches)
    if 2 * count > n * k:
        return CyrKraVerdict("AboveThreshold", None, count, 2 * count)
    for dj in range(k):
        for di in range(-(n - 1), n):
            if dj == 0 and di <= 0:
                continue
            if all(_vector_consistent(p, di, dj) for p in patches):
                return CyrKraVerdict("BelowThreshold", (di, dj), count, 2 * count)
    return CyrKraVerdict("BelowThresholdNoVectorFound", None, count, 2 * count)


# -- vertical periods -----------------------------------------------------------


def _least_period(column: str) -> int:
    k = len(column)
    for p in range(1, k + 1):
        if all(column[y] == column[y + p] for y in range(k - p)):
            return p
    return k


def uniform_vertical_period(patches) -> int | None:
    """Common vertical period of all columns, when certified in-window.

    Collects every height-k column across the patch family; if each has
    least period p with 2p <= k (the window sees at least two full
    periods, so the period is not an artifact of truncation), returns the
    lcm of the periods.  None means not concluded at this window height.
    """
    patches = tuple(patches)
    if not patches:
        raise ValueError("uniform_vertical_period needs a nonempty patch family")
    periods = set()
    for patch in patches:
        for x in range(patch.width):
            column = "".join(patch.rows[y][x] for y in range(patch.height))
            p = _least_period(column)
            if 2 * p > patch.height:
                return None
            periods.add(p)
    return math.lcm(*periods)
