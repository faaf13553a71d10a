"""Exact arithmetic for the two crystallographic groups generated by half-turns.

``Uhat`` is generated by half-turns about the lines (t,0,1), (1,t,0), (0,1,t)
and preserves the tessellation by 2x2x2 cubes with odd vertices.  ``Utilde``
uses the lines (t,0,3), (3,t,0), (0,3,t) and preserves the 6x6x6 cubes whose
vertices are odd multiples of three.  The inclusion of ``Utilde`` in ``Uhat``
induces the 27-sheeted map ``t`` branched over the Borromean rings.

Every element is ``x -> L x + v`` with ``L`` a diagonal sign matrix of
determinant one and ``v`` an integer vector.  Products are read left to
right: ``g * h`` applies ``g`` first.  Both groups are extensions of the
Klein four-group of linear parts by a translation lattice, so membership and
cosets reduce to integer lattice arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form

Vec = tuple[int, int, int]
Signs = tuple[int, int, int]

IDENTITY_SIGNS: Signs = (1, 1, 1)
POINT_GROUP: tuple[Signs, ...] = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))
AXIS_NAMES = "xyz"


class CrystalError(ValueError):
    pass


class NotASubgroup(CrystalError):
    pass


@dataclass(frozen=True)
class AffineIsometry:
    linear: Signs
    translation: Vec = (0, 0, 0)

    def __post_init__(self):
        if self.linear not in POINT_GROUP:
            raise CrystalError(f"linear part {self.linear} is not a rotation in the Klein four-group")

    def __call__(self, p: Sequence[int]) -> Vec:
        return tuple(s * x + v for s, x, v in zip(self.linear, p, self.translation))

    def __mul__(self, other: AffineIsometry) -> AffineIsometry:
        """``self`` first, then ``other``."""
        linear = tuple(a * b for a, b in zip(self.linear, other.linear))
        return AffineIsometry(linear, other(self.translation))

    def inverse(self) -> AffineIsometry:
        return AffineIsometry(self.linear, tuple(-s * v for s, v in zip(self.linear, self.translation)))

    def is_identity(self) -> bool:
        return self.linear == IDENTITY_SIGNS and self.translation == (0, 0, 0)

    def is_translation(self) -> bool:
        return self.linear == IDENTITY_SIGNS

    def is_half_turn(self) -> bool:
        return not self.is_translation() and (self * self).is_identity()

    def axis(self) -> Axis:
        """The fixed line of a half-turn."""
        if not self.is_half_turn():
            raise CrystalError(f"{self} is not a half-turn")
        d = self.linear.index(1)
        coords = []
        for i in _transverse(d):
            if self.translation[i] % 2:
                raise CrystalError("half-turn axis off the integer grid")
            coords.append(self.translation[i] // 2)
        return Axis(d, tuple(coords))

    @classmethod
    def translation_by(cls, v: Sequence[int]) -> AffineIsometry:
        return cls(IDENTITY_SIGNS, tuple(v))

    def __str__(self) -> str:
        terms = []
        for s, name, v in zip(self.linear, "xyz", self.translation):
            sign = "+" if s > 0 else "-"
            terms.append(f"{v}{sign}{name}" if v else f"{sign.strip('+')}{name}")
        return "(" + ", ".join(terms) + ")"


def _transverse(direction: int) -> tuple[int, int]:
    return tuple(i for i in range(3) if i != direction)


@dataclass(frozen=True, order=True)
class Axis:
    """A line parallel to a coordinate axis, given by its two other coordinates."""

    direction: int
    coords: tuple[int, int]

    def half_turn(self) -> AffineIsometry:
        linear = [-1, -1, -1]
        linear[self.direction] = 1
        v = [0, 0, 0]
        for i, c in zip(_transverse(self.direction), self.coords):
            v[i] = 2 * c
        return AffineIsometry(tuple(linear), tuple(v))

    def image(self, g: AffineIsometry) -> Axis:
        p = [0, 0, 0]
        for i, c in zip(_transverse(self.direction), self.coords):
            p[i] = c
        q = g(p)
        return Axis(self.direction, tuple(q[i] for i in _transverse(self.direction)))

    def point(self, t: int = 0) -> Vec:
        p = [t, t, t]
        for i, c in zip(_transverse(self.direction), self.coords):
            p[i] = c
        return tuple(p)

    def __str__(self) -> str:
        parts = ["t", "t", "t"]
        for i, c in zip(_transverse(self.direction), self.coords):
            parts[i] = str(c)
        return "(" + ",".join(parts) + ")"


class Lattice:
    """Full-rank integer lattice with a canonical (Hermite) basis."""

    def __init__(self, vectors: Iterable[Sequence[int]], dim: int = 3):
        vecs = [list(v) for v in vectors if any(v)]
        if not vecs:
            raise CrystalError("lattice needs generators")
        hnf = hermite_normal_form(Matrix(vecs).T)
        if hnf.shape != (dim, dim) or hnf.det() == 0:
            raise CrystalError("translation lattice is not of full rank")
        # columns of an upper triangular matrix
        self.basis = tuple(tuple(int(hnf[r, c]) for r in range(dim)) for c in range(dim))
        self.dim = dim

    @property
    def covolume(self) -> int:
        out = 1
        for i in range(self.dim):
            out *= self.basis[i][i]
        return abs(out)

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative of ``v`` modulo the lattice."""
        w = list(v)
        for i in reversed(range(self.dim)):
            col = self.basis[i]
            q = w[i] // col[i]
            if q:
                w = [a - q * b for a, b in zip(w, col)]
        return tuple(w)

    def __contains__(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def __eq__(self, other) -> bool:
        return isinstance(other, Lattice) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def project(self, keep: Sequence[int]) -> Lattice:
        return Lattice([[b[i] for i in keep] for b in self.basis], dim=len(keep))

    def __repr__(self) -> str:
        return f"Lattice({self.basis})"


class GroupHandle:
    """A group generated by isometries with diagonal linear parts."""

    def __init__(self, generators: Sequence[AffineIsometry], name: str = "G"):
        if not generators:
            raise CrystalError("group needs generators")
        self.generators = tuple(generators)
        self.name = name
        self.coset_reps = self._point_group_transversal()
        self.lattice = Lattice(self._schreier_translations())

    def _point_group_transversal(self) -> dict[Signs, AffineIsometry]:
        identity = AffineIsometry(IDENTITY_SIGNS)
        reps = {IDENTITY_SIGNS: identity}
        frontier = [identity]
        while frontier:
            g = frontier.pop(0)
            for s in self.generators:
                h = g * s
                if h.linear not in reps:
                    reps[h.linear] = h
                    frontier.append(h)
        return reps

    def _schreier_translations(self) -> list[Vec]:
        out = []
        for rep in self.coset_reps.values():
            for s in self.generators:
                prod = rep * s
                t = prod * self.coset_reps[prod.linear].inverse()
                assert t.is_translation()
                out.append(t.translation)
        # a group of pure translations has only the generators themselves
        return out if any(any(v) for v in out) else [g.translation for g in self.generators]

    @property
    def point_group(self) -> frozenset[Signs]:
        return frozenset(self.coset_reps)

    def contains(self, g: AffineIsometry) -> bool:
        rep = self.coset_reps.get(g.linear)
        if rep is None:
            return False
        diff = (rep.inverse() * g).translation
        return diff in self.lattice

    __contains__ = contains

    def lattice_by_closure(self, depth: int) -> Lattice:
        """Translation lattice from all generator products up to ``depth`` letters."""
        identity = AffineIsometry(IDENTITY_SIGNS)
        layer = {identity}
        seen = {identity}
        for _ in range(depth):
            layer = {g * s for g in layer for s in self.generators} - seen
            seen |= layer
        return Lattice([g.translation for g in seen if g.is_translation()])

    def axis_key(self, axis: Axis) -> tuple:
        """Canonical label of the orbit of a line under this group."""
        keep = _transverse(axis.direction)
        plane = self._projected(axis.direction)
        p = axis.point()
        keys = []
        for rep in self.coset_reps.values():
            q = rep(p)
            keys.append(plane.reduce([q[i] for i in keep]))
        return (axis.direction, min(keys))

    def _projected(self, direction: int) -> Lattice:
        cache = self.__dict__.setdefault("_plane_cache", {})
        if direction not in cache:
            cache[direction] = self.lattice.project(_transverse(direction))
        return cache[direction]

    def half_turn_axes(self, lo: int, hi: int) -> list[Axis]:
        """Half-turn axes of the group whose transverse coordinates lie in [lo, hi)."""
        out = []
        for d in range(3):
            for c in itertools.product(range(lo, hi), repeat=2):
                axis = Axis(d, c)
                if self.contains(axis.half_turn()):
                    out.append(axis)
        return out

    def __repr__(self) -> str:
        return f"GroupHandle({self.name}, generators={len(self.generators)})"


def generators(which: str) -> list[AffineIsometry]:
    """Half-turn generators of ``"Uhat"`` or ``"Utilde"``."""
    scale = {"Uhat": 1, "Utilde": 3}.get(which)
    if scale is None:
        raise CrystalError(f"unknown group {which!r}; expected 'Uhat' or 'Utilde'")
    # a = (t,0,s), b = (s,t,0), c = (0,s,t)
    return [
        Axis(0, (0, scale)).half_turn(),
        Axis(1, (scale, 0)).half_turn(),
        Axis(2, (0, scale)).half_turn(),
    ]


def membership(g: AffineIsometry, group: GroupHandle) -> bool:
    if not isinstance(group, GroupHandle):
        raise CrystalError("membership needs an initialised GroupHandle")
    return group.contains(g)


def coset_representatives(group: GroupHandle, sub: GroupHandle) -> list[AffineIsometry]:
    """One element from each coset ``g * sub`` of the subgroup.

    Enumerated per linear part over the finite quotient of the two
    translation lattices, then merged by a membership test.
    """
    for h in sub.generators:
        if not group.contains(h):
            raise NotASubgroup(f"{sub.name} generator {h} is not in {group.name}")
    k, rem = divmod(sub.lattice.covolume, group.lattice.covolume)
    if rem:
        raise NotASubgroup("translation lattices are not nested")
    lattice_reps = {}
    for c in itertools.product(range(k), repeat=3):
        v = tuple(sum(ci * b[j] for ci, b in zip(c, group.lattice.basis)) for j in range(3))
        lattice_reps.setdefault(sub.lattice.reduce(v), v)
    reps: list[AffineIsometry] = []
    for linear in sorted(group.coset_reps, reverse=True):
        base = group.coset_reps[linear]
        for v in lattice_reps.values():
            g = base * AffineIsometry.translation_by(v)
            if not any(sub.contains(r.inverse() * g) for r in reps):
                reps.append(g)
    return reps


def index(group: GroupHandle, sub: GroupHandle) -> int:
    return len(coset_representatives(group, sub))


def is_normal(sub: GroupHandle, group: GroupHandle) -> bool:
    for h in sub.generators:
        if not group.contains(h):
            raise NotASubgroup(f"{sub.name} is not contained in {group.name}")
    return all(sub.contains(g.inverse() * h * g) for h in sub.generators for g in group.generators)


# ---------------------------------------------------------------- the map t


@dataclass(frozen=True)
class AxisOrbit:
    id: int
    direction: int
    axes: tuple[Axis, ...]
    kind: str  # "branch" or "pseudo"
    downstairs: int

    @property
    def representative(self) -> Axis:
        return self.axes[0]

    @property
    def local_degree(self) -> int:
        return 1 if self.kind == "pseudo" else 2


@dataclass(frozen=True)
class PairRecord:
    pseudo: AxisOrbit
    branch: AxisOrbit
    pseudo_axis: Axis
    branch_axis: Axis
    face: tuple[int, int]  # (coordinate index, value) of the cube face holding the rectangle
    width: int


@dataclass(frozen=True)
class SublinkCertificate:
    pairs: tuple[PairRecord, ...]
    checks: tuple[tuple[str, bool], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)


@dataclass(frozen=True)
class FiberPoint:
    coset: AffineIsometry
    orbit: int
    local_degree: int


@dataclass(frozen=True)
class DegreeReport:
    degree: int
    fibers: dict[int, tuple[FiberPoint, ...]]  # downstairs component -> fiber over a generic point

    def branching_type(self, component: int):
        from covercalc.permcalc import BranchingType

        return BranchingType(tuple(p.local_degree for p in self.fibers[component]))

    def sheets_over(self, component: int) -> int:
        return sum(p.local_degree for p in self.fibers[component])

    def points_on(self, component: int, orbit: int) -> int:
        return sum(1 for p in self.fibers[component] if p.orbit == orbit)


# Named axes of the doubled Borromean sublink: the primed axes of Utilde and,
# beside each of them in the same face of the 6x6x6 cube, an axis of Uhat only.
A_PRIME, B_PRIME, C_PRIME = Axis(0, (0, 3)), Axis(1, (3, 0)), Axis(2, (0, 3))
A_TILDE, B_TILDE, C_TILDE = Axis(0, (2, 3)), Axis(1, (3, 2)), Axis(2, (2, 3))
SUBLINK_PAIRS = ((A_PRIME, A_TILDE), (B_PRIME, B_TILDE), (C_PRIME, C_TILDE))


class CrystalCover:
    """The map ``E^3/Utilde -> E^3/Uhat`` with its preimage link."""

    CELL = (-3, 3)  # half-open transverse range of the 6x6x6 fundamental cube

    def __init__(self):
        self.uhat = GroupHandle(generators("Uhat"), "Uhat")
        self.utilde = GroupHandle(generators("Utilde"), "Utilde")

    @cached_property
    def cosets(self) -> list[AffineIsometry]:
        return coset_representatives(self.uhat, self.utilde)

    @cached_property
    def orbits(self) -> list[AxisOrbit]:
        buckets: dict[tuple, list[Axis]] = {}
        for axis in self.uhat.half_turn_axes(*self.CELL):
            buckets.setdefault(self.utilde.axis_key(axis), []).append(axis)
        down_keys: dict[tuple, int] = {}
        out = []
        for n, (_, axes) in enumerate(sorted(buckets.items(), key=lambda kv: (kv[1][0].direction, kv[1][0]))):
            rep = axes[0]
            kind = "pseudo" if self.utilde.contains(rep.half_turn()) else "branch"
            down = down_keys.setdefault(self.uhat.axis_key(rep), len(down_keys))
            out.append(AxisOrbit(n, rep.direction, tuple(axes), kind, down))
        return out

    def orbit_of(self, axis: Axis) -> AxisOrbit:
        key = self.utilde.axis_key(axis)
        for orb in self.orbits:
            if self.utilde.axis_key(orb.representative) == key:
                return orb
        raise CrystalError(f"{axis} is not a half-turn axis of Uhat")

    def downstairs_components(self) -> list[int]:
        return sorted({o.downstairs for o in self.orbits})

    def degree_report(self) -> DegreeReport:
        """Fiber of ``t`` over a generic point of each Borromean component.

        Points over ``y`` on the axis ``l`` are the classes of ``g`` modulo
        Utilde on one side and the half-turn ``r`` about ``l`` on the other;
        a class has local degree 2 when ``g`` and ``r * g`` are different
        Utilde-cosets and 1 when they coincide.
        """
        fibers = {}
        for comp in self.downstairs_components():
            base = next(o.representative for o in self.orbits if o.downstairs == comp)
            r = base.half_turn()
            remaining = list(self.cosets)
            points = []
            while remaining:
                g = remaining.pop(0)
                partner = r * g
                twin = next((h for h in remaining if self.utilde.contains(h.inverse() * partner)), None)
                if self.utilde.contains(g.inverse() * partner):
                    degree = 1
                elif twin is not None:
                    remaining.remove(twin)
                    degree = 2
                else:
                    raise CrystalError("coset pairing failed")
                orbit = self.orbit_of(base.image(g))
                points.append(FiberPoint(g, orbit.id, degree))
            fibers[comp] = tuple(points)
        degrees = {sum(p.local_degree for p in pts) for pts in fibers.values()}
        if len(degrees) != 1:
            raise CrystalError(f"degree-sum mismatch across components: {degrees}")
        return DegreeReport(degrees.pop(), fibers)


_DEFAULT: CrystalCover | None = None


def default_cover() -> CrystalCover:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = CrystalCover()
    return _DEFAULT


def axis_orbits() -> list[AxisOrbit]:
    return default_cover().orbits


def doubled_borromean_sublink(cover: CrystalCover | None = None) -> SublinkCertificate:
    cover = cover or default_cover()
    pairs = []
    checks = []
    used_orbits = set()
    for primed, tilde in SUBLINK_PAIRS:
        p_orb, t_orb = cover.orbit_of(primed), cover.orbit_of(tilde)
        shared = next(
            i for i, a, b in zip(_transverse(primed.direction), primed.coords, tilde.coords) if a == b
        )
        face_value = primed.point()[shared]
        other = next(i for i in _transverse(primed.direction) if i != shared)
        width = abs(primed.point()[other] - tilde.point()[other])
        name = AXIS_NAMES[primed.direction]
        checks += [
            (f"{name}: distinct orbits", p_orb.id != t_orb.id),
            (f"{name}: primed axis is pseudo", p_orb.kind == "pseudo"),
            (f"{name}: neighbour axis is branch", t_orb.kind == "branch"),
            (f"{name}: parallel", primed.direction == tilde.direction),
            (f"{name}: rectangle lies in a cube face", abs(face_value) == cover.CELL[1]),
            (f"{name}: same Borromean component", p_orb.downstairs == t_orb.downstairs),
            (
                f"{name}: no axis of the group strictly between",
                not any(
                    a.direction == primed.direction
                    and a.point()[shared] == face_value
                    and min(primed.point()[other], tilde.point()[other])
                    < a.point()[other]
                    < max(primed.point()[other], tilde.point()[other])
                    for a in cover.uhat.half_turn_axes(-6, 7)
                ),
            ),
        ]
        used_orbits |= {p_orb.id, t_orb.id}
        pairs.append(PairRecord(p_orb, t_orb, primed, tilde, (shared, face_value), width))
    checks.append(("three pairs", len(pairs) == 3))
    checks.append(("six distinct orbits", len(used_orbits) == 6))
    checks.append(
        ("pairs over distinct Borromean components", len({p.pseudo.downstairs for p in pairs}) == 3)
    )
    return SublinkCertificate(tuple(pairs), tuple(checks))


def covering_degree_t(cover: CrystalCover | None = None) -> DegreeReport:
    return (cover or default_cover()).degree_report()


def orbit_report(cover: CrystalCover | None = None) -> str:
    cover = cover or default_cover()
    lines = []
    for o in cover.orbits:
        reps = " ".join(str(a) for a in o.axes)
        lines.append(
            f"orbit {o.id}\tdirection={AXIS_NAMES[o.direction]}\tclass={o.kind}\tdownstairs={o.downstairs}\taxes={reps}"
        )
    return "\n".join(lines) + "\n"
