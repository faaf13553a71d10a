"""Colored closed braids.

A 3-fold simple covering of S^3 branched over a closed braid is recorded as
a Fox coloring: every arc carries a transposition of the symmetric group on
three letters.  Colors are pushed downward through the word; at a crossing
the understrand leaving the crossing carries ``o * u * o`` where ``o`` is the
overstrand color and ``u`` the incoming understrand color.

Crossing convention: in the positive letter ``s_i`` the strand at position
``i`` passes over the strand at position ``i + 1``; in ``-s_i`` the strand at
position ``i + 1`` is the overstrand.  Positions are 1-based.
"""

from __future__ import annotations

import enum
import functools
import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from covercalc.perm import Perm


class Color(enum.Enum):
    R = "R"
    Y = "Y"
    B = "B"

    @property
    def transposition(self) -> Perm:
        return _TRANSPOSITIONS[self]

    def conjugate(self, other: Color) -> Color:
        """Return ``self * other * self``."""
        return _CONJ[self, other]

    def third(self, other: Color) -> Color:
        """The color different from both ``self`` and ``other`` (requires them distinct)."""
        if self is other:
            raise ValueError("third color undefined for equal colors")
        return self.conjugate(other)

    @classmethod
    def parse(cls, letter: str) -> Color:
        try:
            return cls(letter.upper())
        except ValueError:
            raise ValueError(f"unknown color {letter!r}; expected one of R, Y, B") from None


_TRANSPOSITIONS = {
    Color.R: Perm.from_cycles(3, [(1, 2)]),
    Color.Y: Perm.from_cycles(3, [(2, 3)]),
    Color.B: Perm.from_cycles(3, [(1, 3)]),
}
_BY_PERM = {p: c for c, p in _TRANSPOSITIONS.items()}
_CONJ = {
    (o, u): _BY_PERM[o.transposition * u.transposition * o.transposition]
    for o in Color
    for u in Color
}
COLORS = tuple(Color)


class BraidParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"token {position}: {message}")
        self.position = position


class ClosureViolation(ValueError):
    """The bottom colors of a braid differ from its top colors."""


class ColoringError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        object.__setattr__(self, "letters", tuple(self.letters))
        for pos, letter in enumerate(self.letters):
            if letter == 0 or abs(letter) > self.strands - 1:
                raise ValueError(
                    f"letter {pos}: generator index {abs(letter)} out of range 1..{self.strands - 1}"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        toks = [f"strands={self.strands}"]
        toks += [f"s{x}" if x > 0 else f"-s{-x}" for x in self.letters]
        return " ".join(toks)

    def replace(self, start: int, stop: int, new: Sequence[int]) -> BraidWord:
        return BraidWord(self.strands, self.letters[:start] + tuple(new) + self.letters[stop:])

    def permutation(self) -> Perm:
        """Bottom position reached by the strand starting at each top position."""
        where = list(range(1, self.strands + 1))  # where[p-1] = current position of strand p
        at = list(range(1, self.strands + 1))  # at[q-1] = strand currently at position q
        for letter in self.letters:
            i = abs(letter)
            a, b = at[i - 1], at[i]
            at[i - 1], at[i] = b, a
            where[a - 1], where[b - 1] = i + 1, i
        return Perm(tuple(where))


_GEN_RE = re.compile(r"^(-?)s([0-9]+)$")


def parse_braid(text: str) -> BraidWord:
    """Parse ``strands=N`` followed by whitespace separated ``sK`` / ``-sK`` tokens."""
    tokens = text.split()
    if not tokens or not tokens[0].startswith("strands="):
        raise BraidParseError("missing header 'strands=N'", 0)
    try:
        strands = int(tokens[0].split("=", 1)[1])
    except ValueError:
        raise BraidParseError(f"malformed header {tokens[0]!r}", 0) from None
    if strands < 1:
        raise BraidParseError("strand count must be positive", 0)
    letters = []
    for pos, tok in enumerate(tokens[1:], start=1):
        m = _GEN_RE.match(tok)
        if not m:
            raise BraidParseError(f"malformed token {tok!r}", pos)
        k = int(m.group(2))
        if not 1 <= k <= strands - 1:
            raise BraidParseError(f"index out of range: {tok!r} with {strands} strands", pos)
        letters.append(-k if m.group(1) else k)
    return BraidWord(strands, tuple(letters))


def push_colors(letter: int, row: Sequence[Color]) -> tuple[Color, ...]:
    """Colors of the row just below ``letter`` given the row just above it."""
    i = abs(letter) - 1
    out = list(row)
    if letter > 0:
        over, under = row[i], row[i + 1]
        out[i], out[i + 1] = over.conjugate(under), over
    else:
        over, under = row[i + 1], row[i]
        out[i], out[i + 1] = over, over.conjugate(under)
    return tuple(out)


@dataclass(frozen=True)
class CrossingColors:
    index: int
    letter: int
    over: Color
    under_in: Color
    under_out: Color

    @property
    def tricolored(self) -> bool:
        return len({self.over, self.under_in, self.under_out}) == 3

    @property
    def monochromatic(self) -> bool:
        return self.over is self.under_in is self.under_out

    def satisfies_wirtinger(self) -> bool:
        return self.tricolored or self.monochromatic


@dataclass(frozen=True)
class ColoredBraid:
    """A braid word with a coloring of its closure.

    Construction propagates ``top`` through the word and raises
    :class:`ClosureViolation` unless the bottom row equals the top row.
    """

    word: BraidWord
    top: tuple[Color, ...]

    def __post_init__(self):
        object.__setattr__(self, "top", tuple(self.top))
        if len(self.top) != self.word.strands:
            raise ColoringError(
                f"{len(self.top)} top colors for {self.word.strands} strands"
            )
        if self.rows[-1] != self.top:
            raise ClosureViolation(
                "bottom colors " + _fmt(self.rows[-1]) + " differ from top colors " + _fmt(self.top)
            )

    @cached_property
    def rows(self) -> tuple[tuple[Color, ...], ...]:
        """``rows[k]`` holds the strand colors just above letter ``k``."""
        rows = [self.top]
        for letter in self.word.letters:
            rows.append(push_colors(letter, rows[-1]))
        return tuple(rows)

    @property
    def arc_colors(self) -> tuple[tuple[Color, ...], ...]:
        return self.rows

    def crossings(self) -> list[CrossingColors]:
        out = []
        for k, letter in enumerate(self.word.letters):
            row, below = self.rows[k], self.rows[k + 1]
            i = abs(letter) - 1
            if letter > 0:
                out.append(CrossingColors(k, letter, row[i], row[i + 1], below[i]))
            else:
                out.append(CrossingColors(k, letter, row[i + 1], row[i], below[i + 1]))
        return out

    def colors_used(self) -> frozenset[Color]:
        return frozenset(c for row in self.rows for c in row)

    def serialize(self) -> str:
        return f"{self.word}\ncolors={_fmt(self.top)}\n"


def _fmt(colors: Iterable[Color]) -> str:
    return "".join(c.value for c in colors)


def parse_colored_braid(text: str) -> ColoredBraid:
    """Read the two-line ColoredBraid file format (braid line, ``colors=...`` line)."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    color_lines = [ln for ln in lines if ln.startswith("colors=")]
    if len(color_lines) != 1:
        raise ColoringError("expected exactly one 'colors=' line")
    word = parse_braid(" ".join(ln for ln in lines if not ln.startswith("colors=")))
    letters = color_lines[0].split("=", 1)[1].strip()
    return propagate_coloring(word, [Color.parse(ch) for ch in letters])


def propagate_coloring(word: BraidWord, top_colors: Sequence[Color]) -> ColoredBraid:
    if len(top_colors) != word.strands:
        raise ColoringError(f"{len(top_colors)} top colors for {word.strands} strands")
    return ColoredBraid(word, tuple(top_colors))


@dataclass(frozen=True)
class Representation:
    """The image in the symmetric group on three letters of a simple coloring."""

    colors: frozenset[Color]
    transitive: bool

    @property
    def image_order(self) -> int:
        return 6 if len(self.colors) >= 2 else 2


def check_simple_transitive(cb: ColoredBraid) -> Representation:
    used = cb.colors_used()
    return Representation(used, len(used) >= 2)


# Colors as elements of Z/3: o*u*o corresponds to 2o - u, for any labelling.
_Z3 = {Color.R: 0, Color.Y: 1, Color.B: 2}
_FROM_Z3 = {v: c for c, v in _Z3.items()}


def _fixed_point_space(word: BraidWord) -> list[tuple[int, ...]]:
    """Basis of the top colorings (over Z/3) that survive closure."""
    s = word.strands
    forms = [[int(i == j) for j in range(s)] for i in range(s)]
    for letter in word.letters:
        i = abs(letter) - 1
        a, b = forms[i], forms[i + 1]
        if letter > 0:
            forms[i], forms[i + 1] = [(2 * x - y) % 3 for x, y in zip(a, b)], a
        else:
            forms[i], forms[i + 1] = b, [(2 * y - x) % 3 for x, y in zip(a, b)]
    rows = [[(forms[i][j] - (i == j)) % 3 for j in range(s)] for i in range(s)]
    pivots = []
    r = 0
    for col in range(s):
        piv = next((k for k in range(r, s) if rows[k][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        scale = rows[r][col]  # 1 and 2 are their own inverses mod 3
        rows[r] = [(x * scale) % 3 for x in rows[r]]
        for k in range(s):
            if k != r and rows[k][col]:
                f = rows[k][col]
                rows[k] = [(x - f * y) % 3 for x, y in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
    basis = []
    for free in (c for c in range(s) if c not in pivots):
        vec = [0] * s
        vec[free] = 1
        for row_idx, pc in enumerate(pivots):
            vec[pc] = (-rows[row_idx][free]) % 3
        basis.append(tuple(vec))
    return basis


@functools.lru_cache(maxsize=None)
def _coefficient_grid(dim: int) -> np.ndarray:
    grid = np.array(list(itertools.product(range(3), repeat=dim)), dtype=np.int64)
    return grid.reshape(-1, dim)


def coloring_codes(word: BraidWord) -> np.ndarray:
    """Transitive top colorings as sorted base-3 integers.

    Position 1 is the most significant digit and R, Y, B are the digits
    0, 1, 2, so numeric order matches lexicographic order of color tuples.
    """
    s = word.strands
    basis = np.array(_fixed_point_space(word), dtype=np.int64).reshape(-1, s)
    vectors = (_coefficient_grid(basis.shape[0]) @ basis) % 3
    weights = 3 ** np.arange(s - 1, -1, -1, dtype=np.int64)
    codes = np.sort(vectors @ weights)
    constant = (3**s - 1) // 2 * np.arange(3, dtype=np.int64)
    return codes[~np.isin(codes, constant)]


def decode_coloring(code: int, strands: int) -> tuple[Color, ...]:
    digits = []
    for _ in range(strands):
        code, digit = divmod(int(code), 3)
        digits.append(_FROM_Z3[digit])
    return tuple(reversed(digits))


def coloring_assignments(word: BraidWord) -> list[tuple[Color, ...]]:
    """Top color tuples of all transitive colorings of the closure, sorted."""
    return [decode_coloring(c, word.strands) for c in coloring_codes(word)]


def enumerate_colorings(word: BraidWord) -> list[ColoredBraid]:
    """All transitive simple colorings of the closed braid.

    Solved as the fixed space of the word's linear action on colorings mod 3
    rather than by trying every top assignment.
    """
    return [ColoredBraid(word, top) for top in coloring_assignments(word)]


def closure_components(word: BraidWord) -> tuple[tuple[int, ...], ...]:
    """Strand positions grouped by the link component of the closure they lie on."""
    return word.permutation().cycles
