"""Local moves on colored braids and the reduction to the standard link.

Two kinds of local replacement are used.  Montesinos moves swap one
rational 2-string tangle for another with the same boundary colors; the
3-fold cover of the ball is a ball on both sides, which the tangle
certificate checks through the Euler characteristic of the boundary cover.
Isotopy moves replace a braid by an equal braid; they are certified by
comparing the Artin action on the free group, which is faithful.

Every move is journalled in a :class:`MoveLog` with hashes of the states
before and after, and :func:`replay` re-executes a journal from its input.
"""

from __future__ import annotations

import hashlib
from functools import cached_property
from dataclasses import dataclass, replace
from typing import Callable, NamedTuple, Sequence, Union

from covercalc.diagram import (
    COLORS,
    BraidWord,
    Color,
    ColoredBraid,
    check_simple_transitive,
    push_colors,
)
from covercalc.perm import Perm


class RewriteError(ValueError):
    pass


class MonochromaticCrossing(RewriteError):
    pass


class NotTransitive(RewriteError):
    pass


class NotPositive(RewriteError):
    pass


class ReplayMismatch(RewriteError):
    pass


BORROMEAN = "borromean"
WHITEHEAD = "whitehead"
VARIANTS = (BORROMEAN, WHITEHEAD)


# ------------------------------------------------------------ braid equality


def _reduce(word: list[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _invert(word: Sequence[int]) -> list[int]:
    return [-x for x in reversed(word)]


def artin_action(word: BraidWord) -> tuple[tuple[int, ...], ...]:
    """Images of the free generators under the braid, as reduced words."""
    images = [(j,) for j in range(1, word.strands + 1)]
    for letter in word.letters:
        i = abs(letter) - 1
        a, b = images[i], images[i + 1]
        if letter > 0:
            images[i], images[i + 1] = _reduce([*a, *b, *_invert(a)]), a
        else:
            images[i], images[i + 1] = b, _reduce([*_invert(b), *a, *b])
    return tuple(images)


def braids_equal(u: BraidWord, v: BraidWord) -> bool:
    return u.strands == v.strands and artin_action(u) == artin_action(v)


# ------------------------------------------------------- tangle certificates


@dataclass(frozen=True)
class TangleCertificate:
    labels: tuple[Color, ...]
    euler_characteristic: int
    component_chis: tuple[int, ...]
    deficiencies: tuple[int, ...]

    @property
    def connected(self) -> bool:
        return len(self.component_chis) == 1

    @property
    def certified(self) -> bool:
        """Boundary cover is a single sphere."""
        return self.connected and self.euler_characteristic == 2

    @property
    def note(self) -> str:
        if self.certified:
            return "boundary cover is a sphere"
        kinds = {0: "torus", 2: "sphere"}
        parts = " + ".join(kinds.get(c, f"chi={c}") for c in self.component_chis)
        return f"disconnected boundary cover: {parts}"


def tangle_cover_certificate(labels: Sequence[Color]) -> TangleCertificate:
    """Euler characteristic of the 3-fold cover of a sphere branched at 4 points.

    ``labels`` are ordered (top1, top2, bottom1, bottom2); the boundary
    relation requires ``top1 * top2 == bottom1 * bottom2``.
    """
    labels = tuple(labels)
    if len(labels) != 4:
        raise RewriteError(f"a 2-string tangle has 4 boundary points, got {len(labels)}")
    perms = [c.transposition for c in labels]
    if perms[0] * perms[1] != perms[2] * perms[3]:
        raise RewriteError("boundary labels are inconsistent: top product differs from bottom product")
    deficiencies = tuple(3 - p.num_cycles() for p in perms)
    chi = 3 * 2 - sum(deficiencies)
    orbits = _orbits(perms, 3)
    comp_chis = []
    for orb in orbits:
        d = len(orb)
        local = 0
        for p in perms:
            cyc = sum(1 for c in p.cycles if c[0] in orb)
            local += d - cyc
        comp_chis.append(2 * d - local)
    return TangleCertificate(labels, chi, tuple(sorted(comp_chis)), deficiencies)


def _orbits(perms: Sequence[Perm], degree: int) -> list[frozenset[int]]:
    seen: set[int] = set()
    out = []
    for start in range(1, degree + 1):
        if start in seen:
            continue
        orb = {start}
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for p in perms:
                y = p(x)
                if y not in orb:
                    orb.add(y)
                    frontier.append(y)
        seen |= orb
        out.append(frozenset(orb))
    return out


# ----------------------------------------------------------------- templates


@dataclass(frozen=True)
class TemplateCheck:
    same_boundary: bool
    after_tricolored: bool
    certificates: tuple[TangleCertificate, ...] = ()
    equal_braids: bool | None = None

    @property
    def passed(self) -> bool:
        ok = self.same_boundary and self.after_tricolored
        if self.certificates:
            ok = ok and all(c.certified for c in self.certificates)
        if self.equal_braids is not None:
            ok = ok and self.equal_braids
        return ok


@dataclass(frozen=True)
class MoveTemplate:
    """A local replacement on ``width`` adjacent strands.

    Letters are numbered relative to the leftmost strand of the ball.
    ``kind`` is ``"montesinos"`` for tangle swaps and ``"isotopy"`` for
    replacements by an equal braid.
    """

    name: str
    width: int
    before: tuple[int, ...]
    after: tuple[int, ...]
    kind: str
    trivial: bool = True  # both sides are rational tangles

    def check(self, top: Sequence[Color]) -> TemplateCheck:
        top = tuple(top)
        if len(top) != self.width:
            raise RewriteError(f"{self.name}: expected {self.width} boundary colors")
        before = _local_rows(self.before, top)
        after = _local_rows(self.after, top)
        tricolored = all(
            row[abs(x) - 1] is not row[abs(x)] for x, row in zip(self.after, after)
        )
        certs: tuple[TangleCertificate, ...] = ()
        equal = None
        if self.kind == "montesinos":
            certs = (
                tangle_cover_certificate((*top, *before[-1])),
                tangle_cover_certificate((*top, *after[-1])),
            )
        else:
            equal = braids_equal(BraidWord(self.width, self.before), BraidWord(self.width, self.after))
        return TemplateCheck(before[-1] == after[-1], tricolored, certs, equal)

    def place(self, index: int) -> list[int]:
        """The replacement letters with the ball's leftmost strand at ``index``."""
        return [(abs(x) + index - 1) * (1 if x > 0 else -1) for x in self.after]


def _local_rows(letters: Sequence[int], top: tuple[Color, ...]) -> list[tuple[Color, ...]]:
    rows = [top]
    for letter in letters:
        rows.append(push_colors(letter, rows[-1]))
    return rows


FLIPS = {
    (1,): MoveTemplate("flip", 2, (1,), (-1, -1), "montesinos"),
    (-1,): MoveTemplate("flip", 2, (-1,), (1, 1), "montesinos"),
    (-1, -1): MoveTemplate("flip", 2, (-1, -1), (1,), "montesinos"),
    (1, 1): MoveTemplate("flip", 2, (1, 1), (-1,), "montesinos"),
}

# A strand of another color passes across a monochromatic crossing; the
# replacement equals the original crossing as a braid and all five of its
# crossings are tricolored.
SLIDES = {
    ("right", 1): MoveTemplate("slide", 3, (1,), (-2, 1, 2, 1, -2), "isotopy"),
    ("right", -1): MoveTemplate("slide", 3, (-1,), (2, -1, -2, -1, 2), "isotopy"),
    ("left", 1): MoveTemplate("slide", 3, (2,), (-1, 2, 1, 2, -1), "isotopy"),
    ("left", -1): MoveTemplate("slide", 3, (-2,), (1, -2, -1, -2, 1), "isotopy"),
}

STABILIZE = MoveTemplate("stabilize", 2, (), (1, -1), "isotopy")

TEMPLATES: tuple[MoveTemplate, ...] = (*FLIPS.values(), *SLIDES.values(), STABILIZE)


# ------------------------------------------------------------------ the log


def state_hash(state) -> str:
    return hashlib.sha256(state.serialize().encode()).hexdigest()[:16]


@dataclass(frozen=True)
class LogEntry:
    name: str
    site: tuple[int, ...]
    before: str
    after: str
    note: str = ""

    def line(self) -> str:
        site = ",".join(map(str, self.site)) or "-"
        return f"{self.name}\t{site}\t{self.before}\t{self.after}\t{self.note}"

    @classmethod
    def parse(cls, line: str) -> LogEntry:
        parts = line.rstrip("\n").split("\t")
        if len(parts) != 5:
            raise RewriteError(f"malformed journal line: {line!r}")
        name, site, before, after, note = parts
        site_t = () if site == "-" else tuple(int(x) for x in site.split(","))
        return cls(name, site_t, before, after, note)


@dataclass(frozen=True)
class MoveLog:
    entries: tuple[LogEntry, ...] = ()

    def __add__(self, other: MoveLog) -> MoveLog:
        return MoveLog(self.entries + other.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def named(self, name: str) -> list[LogEntry]:
        return [e for e in self.entries if e.name == name]

    def serialize(self) -> str:
        return "".join(e.line() + "\n" for e in self.entries)

    @classmethod
    def parse(cls, text: str) -> MoveLog:
        return cls(tuple(LogEntry.parse(ln) for ln in text.splitlines() if ln.strip()))


def _entry(name, site, before, after, note="") -> LogEntry:
    return LogEntry(name, tuple(site), state_hash(before), state_hash(after), note)


# ------------------------------------------------------------- braid moves

Site = Union[int, tuple[int, int]]


def _apply_template(cb: ColoredBraid, start: int, stop: int, new: Sequence[int]) -> ColoredBraid:
    return ColoredBraid(cb.word.replace(start, stop, new), cb.top)


def montesinos_flip(cb: ColoredBraid, site: Site) -> tuple[ColoredBraid, LogEntry]:
    """Trade a tricolored crossing for two of the opposite sign, or back.

    ``site`` is a crossing index, or ``(index, width)`` with width 2 to
    contract a pair of equal letters.  The log entry records the site as
    ``(index, width)``; :func:`inverse_site` gives the site undoing it.
    """
    index, width = (site, 1) if isinstance(site, int) else site
    letters = cb.word.letters
    if not 0 <= index <= len(letters) - width or width not in (1, 2):
        raise RewriteError(f"no crossing block at {index} of width {width}")
    block = letters[index : index + width]
    if width == 2 and block[0] != block[1]:
        raise RewriteError(f"letters at {index} and {index + 1} differ")
    i = abs(block[0])
    crossings = cb.crossings()[index : index + width]
    if any(not c.tricolored for c in crossings):
        raise MonochromaticCrossing(f"crossing {index} is not tricolored")
    sign = 1 if block[0] > 0 else -1
    new = FLIPS[tuple(sign for _ in block)].place(i)
    out = _apply_template(cb, index, index + width, new)
    return out, _entry("flip", (index, width), cb, out, note=f"s{i}")


def inverse_site(entry: LogEntry) -> tuple[int, int]:
    """Where to flip again to undo a logged flip."""
    index, width = entry.site
    return index, 3 - width


def make_positive(cb: ColoredBraid) -> tuple[ColoredBraid, MoveLog]:
    """Flip every negative crossing, scanning left to right."""
    entries = []
    k = 0
    while k < len(cb.word):
        if cb.word.letters[k] < 0:
            if not cb.crossings()[k].tricolored:
                raise MonochromaticCrossing(f"negative crossing {k} is not tricolored")
            cb, entry = montesinos_flip(cb, k)
            entries.append(entry)
            k += 2
        else:
            k += 1
    return cb, MoveLog(tuple(entries))


def _slide_site(cb: ColoredBraid, k: int) -> tuple[str, int]:
    """Nearest strand whose color differs from a monochromatic crossing."""
    letter = cb.word.letters[k]
    i = abs(letter) - 1
    row = cb.rows[k]
    a = row[i]
    for dist in range(1, len(row)):
        right, left = i + 1 + dist, i - dist
        if right < len(row) and row[right] is not a:
            return "right", right
        if left >= 0 and row[left] is not a:
            return "left", left
    raise NotTransitive("a monochromatic row: the coloring uses a single color")


def _slide_letters(letter: int, side: str, j: int) -> list[int]:
    """Replacement for ``letter`` using the strand at 0-based position ``j``."""
    i = abs(letter)
    sign = 1 if letter > 0 else -1
    template = SLIDES[(side, sign)]
    if side == "right":
        start = i
        conj = [-(p) for p in range(j, i + 1, -1)]  # brings the strand from j+1 to i+2 (1-based)
    else:
        start = i - 1
        conj = list(range(j + 1, i - 1))  # brings the strand from j+1 to i-1
    inv = [-x for x in reversed(conj)]
    return conj + template.place(start) + inv


def slide(cb: ColoredBraid, site: tuple[int, int]) -> tuple[ColoredBraid, LogEntry]:
    k, j = site
    if not 0 <= k < len(cb.word):
        raise RewriteError(f"no crossing {k}")
    letter = cb.word.letters[k]
    i = abs(letter) - 1
    if not cb.crossings()[k].monochromatic:
        raise RewriteError(f"crossing {k} is already tricolored")
    row = cb.rows[k]
    if not 0 <= j < len(row) or row[j] is row[i] or j in (i, i + 1):
        raise RewriteError(f"strand {j} cannot be slid across crossing {k}")
    side = "right" if j > i else "left"
    between = range(i + 2, j) if side == "right" else range(j + 1, i)
    if any(row[p] is not row[i] for p in between):
        raise RewriteError("slide must use the nearest strand of another color")
    new = _slide_letters(letter, side, j)
    out = _apply_template(cb, k, k + 1, new)
    return out, _entry("slide", (k, j), cb, out, note=f"+{len(new) - 1}")


def make_tricolored(cb: ColoredBraid) -> tuple[ColoredBraid, MoveLog]:
    if not check_simple_transitive(cb).transitive:
        raise NotTransitive("the coloring uses a single color")
    entries = []
    k = 0
    while k < len(cb.word):
        if cb.crossings()[k].monochromatic:
            _, j = _slide_site(cb, k)
            before_len = len(cb.word)
            cb, entry = slide(cb, (k, j))
            entries.append(entry)
            k += len(cb.word) - before_len + 1
        else:
            k += 1
    return cb, MoveLog(tuple(entries))


def stabilize(cb: ColoredBraid, site: tuple[int, int] | None = None) -> tuple[ColoredBraid, LogEntry]:
    """Insert a cancelling pair of crossings between strands of different colors."""
    if site is None:
        row = cb.top
        pos = next((p for p in range(len(row) - 1) if row[p] is not row[p + 1]), None)
        if pos is None:
            raise NotTransitive("no adjacent strands of different colors")
        site = (0, pos + 1)
    k, i = site
    if cb.rows[k][i - 1] is cb.rows[k][i]:
        raise MonochromaticCrossing(f"strands {i} and {i + 1} share a color at row {k}")
    out = _apply_template(cb, k, k, [i, -i])
    return out, _entry("stabilize", (k, i), cb, out)


# ------------------------------------------------------------ standard form


class Comp(NamedTuple):
    label: str
    color: Color


class Incidence(NamedTuple):
    vertical: str
    horizontal: str
    kind: str  # "horizontal" while a crossing remains, "special" once eliminated


class Special(NamedTuple):
    vertical: str
    horizontal: str
    template: str
    closed: int  # closed special components inside the peanut
    origin: str  # "eliminated" or "expanded"


PEANUT = {BORROMEAN: ("borromean-peanut", 2), WHITEHEAD: ("whitehead-peanut", 0)}


@dataclass(frozen=True)
class StandardState:
    """Intermediate diagram during standardization."""

    strands: int
    variant: str
    pending: tuple[tuple[int, int, Color, Color], ...]  # (crossing, index, left color, right color)
    horizontals: tuple[Comp, ...] = ()
    smalls: tuple[tuple[int, str, Color], ...] = ()  # (crossing, stage, color)
    verticals: tuple[Comp, ...] = ()
    incidences: tuple[Incidence, ...] = ()
    specials: tuple[Special, ...] = ()

    def color_of(self, label: str) -> Color:
        for c in (*self.horizontals, *self.verticals):
            if c.label == label:
                return c.color
        raise KeyError(label)

    def serialize(self) -> str:
        return self._text

    @cached_property
    def _text(self) -> str:
        lines = [f"state strands={self.strands} variant={self.variant}"]
        lines += [f"pending {k} {i} {a.value}{b.value}" for k, i, a, b in self.pending]
        lines += [f"small {k} {stage} {c.value}" for k, stage, c in self.smalls]
        lines += [f"h {c.label} {c.color.value}" for c in self.horizontals]
        lines += [f"v {c.label} {c.color.value}" for c in self.verticals]
        lines += [f"inc {x.vertical} {x.horizontal} {x.kind}" for x in self.incidences]
        lines += [f"sp {s.vertical} {s.horizontal} {s.template} {s.closed} {s.origin}" for s in self.specials]
        return "\n".join(lines) + "\n"


def _h(p: int) -> str:
    return f"H{p}"


def _v(k: int, side: int) -> str:
    return f"V{k}.{side}"


def _first_color_avoiding(*avoid: Color) -> Color:
    return next(c for c in COLORS if c not in avoid)


def begin_standard(cb: ColoredBraid, variant: str) -> StandardState:
    if variant not in VARIANTS:
        raise RewriteError(f"unknown variant {variant!r}")
    if not check_simple_transitive(cb).transitive:
        raise NotTransitive("the coloring uses a single color")
    pending = []
    for c in cb.crossings():
        if c.letter < 0:
            raise NotPositive(f"crossing {c.index} is negative")
        if not c.tricolored:
            raise MonochromaticCrossing(f"crossing {c.index} is not tricolored")
        i = c.letter
        row = cb.rows[c.index]
        pending.append((c.index + 1, i, row[i - 1], row[i]))
    horizontals = tuple(Comp(_h(p + 1), col) for p, col in enumerate(cb.top))
    return StandardState(cb.word.strands, variant, tuple(pending), horizontals)


def replace_crossing(st: StandardState, site: tuple[int]) -> StandardState:
    """A crossing becomes a small circle around the two strands."""
    (k,) = site
    hit = [p for p in st.pending if p[0] == k]
    if not hit:
        raise RewriteError(f"no pending crossing {k}")
    _, i, a, b = hit[0]
    return replace(
        st,
        pending=tuple(p for p in st.pending if p[0] != k),
        smalls=st.smalls + ((k, f"around{i}", a.conjugate(b)),),
    )


def triple_split(st: StandardState, site: tuple[int]) -> StandardState:
    """A small circle becomes two big circles and a small circle linking both."""
    (k,) = site
    hit = [s for s in st.smalls if s[0] == k and s[1].startswith("around")]
    if not hit:
        raise RewriteError(f"no small circle from crossing {k}")
    _, stage, c = hit[0]
    i = int(stage[len("around") :])
    left, right = st.color_of(_h(i)), st.color_of(_h(i + 1))
    v1 = Comp(_v(k, 1), _first_color_avoiding(left, c))
    v2 = Comp(_v(k, 2), _first_color_avoiding(right, c))
    return replace(
        st,
        smalls=tuple(s for s in st.smalls if s[0] != k) + ((k, "linking", c),),
        verticals=st.verticals + (v1, v2),
        incidences=st.incidences
        + (Incidence(v1.label, _h(i), "horizontal"), Incidence(v2.label, _h(i + 1), "horizontal")),
    )


def absorb(st: StandardState, site: tuple[int]) -> StandardState:
    """The linking small circle is isotoped to a new horizontal component."""
    (k,) = site
    hit = [s for s in st.smalls if s[0] == k and s[1] == "linking"]
    if not hit:
        raise RewriteError(f"no linking circle from crossing {k}")
    c = hit[0][2]
    label = _h(st.strands + k)
    return replace(
        st,
        smalls=tuple(s for s in st.smalls if s[0] != k),
        horizontals=st.horizontals + (Comp(label, c),),
        incidences=st.incidences
        + (Incidence(_v(k, 1), label, "horizontal"), Incidence(_v(k, 2), label, "horizontal")),
    )


def _incident_to(st: StandardState, k: int) -> list[Incidence]:
    prefix = f"V{k}."
    return [x for x in st.incidences if x.kind == "horizontal" and x.vertical.startswith(prefix)]


def eliminate(st: StandardState, site: tuple[int]) -> StandardState:
    """Replace the horizontal crossings of one crossing's verticals by peanuts."""
    (k,) = site
    targets = _incident_to(st, k)
    if not targets:
        raise RewriteError(f"no horizontal crossings on the verticals of crossing {k}")
    template, closed = PEANUT[st.variant]
    marked = set(targets)
    for x in targets:
        if st.color_of(x.vertical) is st.color_of(x.horizontal):
            raise MonochromaticCrossing(f"horizontal crossing {x.vertical}/{x.horizontal} is not 3-colored")
    return replace(
        st,
        incidences=tuple(Incidence(x.vertical, x.horizontal, "special") if x in marked else x for x in st.incidences),
        specials=st.specials + tuple(Special(x.vertical, x.horizontal, template, closed, "eliminated") for x in targets),
    )


def expand(st: StandardState, site: tuple[int, ...] = ()) -> StandardState:
    """Fill every vertical/horizontal pair with a peanut so both rotations act."""
    template, closed = PEANUT[st.variant]
    have = {(s.vertical, s.horizontal) for s in st.specials}
    extra = tuple(
        Special(v.label, h.label, template, closed, "expanded")
        for v in st.verticals
        for h in st.horizontals
        if (v.label, h.label) not in have
    )
    return replace(st, specials=st.specials + extra)


@dataclass(frozen=True)
class StandardLink:
    n: int
    m: int
    variant: str
    horizontals: tuple[Comp, ...]  # index j of the list is the coordinate 2*pi*j/n
    verticals: tuple[Comp, ...]  # index j is the coordinate 2*pi*j/m
    specials: tuple[Special, ...]
    incidences: tuple[Incidence, ...]

    VERSION = 1

    @property
    def color_data(self) -> dict[str, Color]:
        return {c.label: c.color for c in (*self.horizontals, *self.verticals)}

    def horizontal_crossings(self) -> list[Incidence]:
        return [x for x in self.incidences if x.kind == "horizontal"]

    def serialize(self) -> str:
        lines = [
            f"standard-link v{self.VERSION}",
            f"variant={self.variant}",
            f"n={self.n}",
            f"m={self.m}",
        ]
        lines += [f"horizontal\t{j}\t{c.label}\t{c.color.value}" for j, c in enumerate(self.horizontals)]
        lines += [f"vertical\t{j}\t{c.label}\t{c.color.value}" for j, c in enumerate(self.verticals)]
        lines += [f"incidence\t{x.vertical}\t{x.horizontal}\t{x.kind}" for x in self.incidences]
        lines += [
            f"special\t{s.vertical}\t{s.horizontal}\t{s.template}\tclosed={s.closed}\t{s.origin}"
            for s in self.specials
        ]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> StandardLink:
        head: dict[str, str] = {}
        hs, vs, incs, sps = [], [], [], []
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0] != f"standard-link v{cls.VERSION}":
            raise RewriteError("missing standard-link header")
        for ln in lines[1:]:
            parts = ln.split("\t")
            if parts[0] == "horizontal":
                hs.append(Comp(parts[2], Color.parse(parts[3])))
            elif parts[0] == "vertical":
                vs.append(Comp(parts[2], Color.parse(parts[3])))
            elif parts[0] == "incidence":
                incs.append(Incidence(*parts[1:4]))
            elif parts[0] == "special":
                sps.append(Special(parts[1], parts[2], parts[3], int(parts[4].split("=")[1]), parts[5]))
            elif "=" in ln:
                key, val = ln.split("=", 1)
                head[key] = val
            else:
                raise RewriteError(f"unrecognised line {ln!r}")
        link = cls(int(head["n"]), int(head["m"]), head["variant"], tuple(hs), tuple(vs), tuple(sps), tuple(incs))
        if (link.n, link.m) != (len(hs), len(vs)):
            raise RewriteError("component counts disagree with n and m")
        return link

    def n_special_components(self) -> int:
        return sum(s.closed for s in self.specials)


def finish(st: StandardState) -> StandardLink:
    if st.pending or st.smalls:
        raise RewriteError("standardization is incomplete")
    if any(x.kind == "horizontal" for x in st.incidences):
        raise RewriteError("horizontal crossings remain")
    return StandardLink(
        len(st.horizontals), len(st.verticals), st.variant, st.horizontals, st.verticals, st.specials, st.incidences
    )


def standardize(cb: ColoredBraid, variant: str = BORROMEAN) -> tuple[StandardLink, MoveLog]:
    st = begin_standard(cb, variant)
    entries = [_entry("begin", (), cb, st, note=variant)]

    def step(name: str, fn: Callable, site: tuple[int, ...], note: str = ""):
        nonlocal st
        new = fn(st, site)
        entries.append(_entry(name, site, st, new, note))
        st = new

    crossings = [p[0] for p in st.pending]
    for k in crossings:
        step("replace-crossing", replace_crossing, (k,))
    for k in crossings:
        step("triple-split", triple_split, (k,))
    for k in crossings:
        step("absorb", absorb, (k,))
    for k in crossings:
        pairs = [
            f"{x.vertical}/{x.horizontal}={st.color_of(x.vertical).value}{st.color_of(x.horizontal).value}"
            for x in _incident_to(st, k)
        ]
        step("eliminate", eliminate, (k,), " ".join(pairs))
    step("expand", expand, ())
    return finish(st), MoveLog(tuple(entries))


# -------------------------------------------------------------------- replay

_BRAID_MOVES = {
    "flip": lambda cb, site: montesinos_flip(cb, tuple(site))[0],
    "slide": lambda cb, site: slide(cb, tuple(site))[0],
    "stabilize": lambda cb, site: stabilize(cb, tuple(site))[0],
}
_STANDARD_MOVES = {
    "replace-crossing": replace_crossing,
    "triple-split": triple_split,
    "absorb": absorb,
    "eliminate": eliminate,
    "expand": expand,
}


def replay(cb: ColoredBraid, log: MoveLog):
    """Re-run a journal from its input; returns the final braid or standard link."""
    state: object = cb
    for n, e in enumerate(log):
        if state_hash(state) != e.before:
            raise ReplayMismatch(f"entry {n} ({e.name}): input hash differs")
        if e.name in _BRAID_MOVES:
            state = _BRAID_MOVES[e.name](state, e.site)
        elif e.name == "begin":
            state = begin_standard(state, e.note)
        elif e.name in _STANDARD_MOVES:
            state = _STANDARD_MOVES[e.name](state, e.site)
        else:
            raise ReplayMismatch(f"entry {n}: unknown move {e.name!r}")
        if state_hash(state) != e.after:
            raise ReplayMismatch(f"entry {n} ({e.name}): output hash differs")
    return finish(state) if isinstance(state, StandardState) else state


def normalize(cb: ColoredBraid, variant: str = BORROMEAN) -> tuple[StandardLink, MoveLog]:
    """Tricolor, make positive, then standardize, with one combined journal."""
    cb, log1 = make_tricolored(cb)
    cb, log2 = make_positive(cb)
    link, log3 = standardize(cb, variant)
    return link, log1 + log2 + log3


def eliminations_tricolored(log: MoveLog) -> bool:
    """The checkpoint: every horizontal crossing was 3-colored when eliminated."""
    entries = log.named("eliminate")
    for e in entries:
        for token in e.note.split():
            colors = token.rsplit("=", 1)[1]
            if len(colors) != 2 or colors[0] == colors[1]:
                return False
    return bool(entries) or not log.named("absorb")


def eliminated_crossings(log: MoveLog) -> int:
    return sum(len(e.note.split()) for e in log.named("eliminate"))
