"""Permutation monodromy and branching bookkeeping.

Branching data of a composite covering is tracked per branch component as a
multiset of local degrees.  Over a component of a degree ``D`` covering the
multiset always sums to ``D``: a meridian disk downstairs lifts to disks
whose local degrees add up to the number of sheets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from covercalc.perm import Perm


class InventoryError(ValueError):
    pass


# ---------------------------------------------------------------- branching types


@dataclass(frozen=True, order=True)
class BranchingType:
    """Multiset of local degrees, stored sorted."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted(self.parts))
        if not parts or parts[0] < 1:
            raise ValueError(f"branching type needs positive parts: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> BranchingType:
        return cls(tuple(parts))

    @classmethod
    def parse(cls, text: str) -> BranchingType:
        return cls(tuple(int(t) for t in text.strip("{} ").split(",")))

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.parts)

    def repeated(self, n: int) -> BranchingType:
        return BranchingType(self.parts * n)

    def __add__(self, other: BranchingType) -> BranchingType:
        return BranchingType(self.parts + other.parts)

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


def compose_branching(upper: BranchingType, lower_local_degree: int) -> BranchingType:
    """Local degrees seen through a lower map of the given local degree."""
    if lower_local_degree < 1:
        raise ValueError("local degree must be positive")
    return BranchingType(tuple(p * lower_local_degree for p in upper.parts))


# ---------------------------------------------------------------- inventories


@dataclass(frozen=True)
class BranchComponent:
    label: str
    type: BranchingType
    tags: frozenset[str] = frozenset()

    def with_(self, **changes) -> BranchComponent:
        data = {"label": self.label, "type": self.type, "tags": self.tags, **changes}
        return BranchComponent(**data)


@dataclass(frozen=True)
class BranchInventory:
    """Branch components of a covering of the given degree."""

    degree: int
    components: tuple[BranchComponent, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        labels = [c.label for c in self.components]
        dupes = {x for x in labels if labels.count(x) > 1}
        if dupes:
            raise InventoryError(f"duplicate labels: {sorted(dupes)}")
        for c in self.components:
            if c.type.total != self.degree:
                raise InventoryError(
                    f"component {c.label}: type {{{c.type}}} sums to {c.type.total}, degree is {self.degree}"
                )

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, label: str) -> BranchComponent:
        for c in self.components:
            if c.label == label:
                return c
        raise KeyError(label)

    def __contains__(self, label: str) -> bool:
        return any(c.label == label for c in self.components)

    @property
    def labels(self) -> list[str]:
        return [c.label for c in self.components]

    def local_degrees(self) -> frozenset[int]:
        return frozenset(p for c in self.components for p in c.type.parts)

    def tagged(self, tag: str) -> list[BranchComponent]:
        return [c for c in self.components if tag in c.tags]

    def serialize(self) -> str:
        lines = [f"degree={self.degree}"]
        for c in self.components:
            lines.append(f"{c.label}\ttype={c.type}\ttags={','.join(sorted(c.tags))}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> BranchInventory:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("degree="):
            raise InventoryError("missing 'degree=D' header")
        degree = int(lines[0].split("=", 1)[1])
        comps = []
        for ln in lines[1:]:
            label, type_field, tag_field = ln.split("\t")
            tags = tag_field.split("=", 1)[1]
            comps.append(
                BranchComponent(
                    label,
                    BranchingType.parse(type_field.split("=", 1)[1]),
                    frozenset(t for t in tags.split(",") if t),
                )
            )
        return cls(degree, tuple(comps))

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "components": [
                {"label": c.label, "type": list(c.type.parts), "tags": sorted(c.tags)}
                for c in self.components
            ],
        }


# ---------------------------------------------------------------- dihedral disk covers


@dataclass(frozen=True)
class DiskRep:
    """Images of the two meridians ``x, y`` of a twice-punctured disk."""

    k: int
    rho_x: Perm
    rho_y: Perm

    def __post_init__(self):
        for name, p in (("rho_x", self.rho_x), ("rho_y", self.rho_y)):
            if p.degree != self.k:
                raise ValueError(f"{name} has degree {p.degree}, expected {self.k}")
            if not p.is_involution():
                raise ValueError(f"{name} is not an involution")

    @property
    def boundary(self) -> Perm:
        """Monodromy around the boundary circle, i.e. the image of ``xy``."""
        return self.rho_x * self.rho_y

    def is_transitive(self) -> bool:
        orbit = {1}
        frontier = [1]
        while frontier:
            p = frontier.pop()
            for g in (self.rho_x, self.rho_y):
                q = g(p)
                if q not in orbit:
                    orbit.add(q)
                    frontier.append(q)
        return len(orbit) == self.k


def dihedral_rep(k: int) -> DiskRep:
    """Reflections of the regular k-gon giving a {1,2}-branched disk cover.

    ``x -> (1,2)(3,k)(4,k-1)...`` and ``y -> (2,k)(3,k-1)(4,k-2)...``.  For
    ``k = 2`` the second list is empty and ``y`` maps to the identity.
    """
    if k < 2:
        raise ValueError("dihedral representation needs k >= 2")
    x_pairs = [(1, 2)] + [(j, k + 3 - j) for j in range(3, k + 1) if j < k + 3 - j]
    y_pairs = [(j, k + 2 - j) for j in range(2, k + 1) if j < k + 2 - j]
    return DiskRep(k, Perm.from_cycles(k, x_pairs), Perm.from_cycles(k, y_pairs))


def euler_char_disk_cover(rep: DiskRep) -> int:
    """Riemann-Hurwitz count for the cover of the disk branched at two points."""
    return rep.k * 1 - sum(rep.k - g.num_cycles() for g in (rep.rho_x, rep.rho_y))


def boundary_is_k_cycle(rep: DiskRep) -> bool:
    return rep.boundary.is_k_cycle()


# ---------------------------------------------------------------- inventory surgery


def torus_modification(
    inventory: BranchInventory,
    axis_label: str,
    k: int,
    new_labels: tuple[str, str] | None = None,
    tags: Iterable[str] = (),
) -> BranchInventory:
    """Replace a cyclic axis of order ``k`` by the two {1,2}-branched circles.

    Over the solid torus around the axis the k-fold cyclic cover is swapped
    for the dihedral cover with the same boundary behaviour, so the axis
    (local degree k on every sheet) becomes two circles whose local degrees
    are the cycle types of the two reflections.
    """
    if axis_label not in inventory:
        raise InventoryError(f"no component labelled {axis_label!r}")
    axis = inventory[axis_label]
    if k < 2 or set(axis.type.parts) != {k}:
        raise InventoryError(f"component {axis_label!r} has type {{{axis.type}}}, expected copies of {k}")
    rep = dihedral_rep(k)
    sheets_above = len(axis.type.parts)
    labels = new_labels or (f"{axis_label}.A", f"{axis_label}.B")
    base_tags = frozenset(tags) or (axis.tags - {"axis"}) | {"repair"}
    new = [
        BranchComponent(label, BranchingType(g.cycle_type()).repeated(sheets_above), base_tags)
        for label, g in zip(labels, (rep.rho_x, rep.rho_y))
    ]
    comps = []
    for c in inventory.components:
        if c.label == axis_label:
            comps.extend(new)
        else:
            comps.append(c)
    return BranchInventory(inventory.degree, tuple(comps))


def quotient_by_rotation(
    inventory: BranchInventory,
    order: int,
    orbits: Sequence[Sequence[str]],
    axis_label: str,
    axis_tags: Iterable[str] = ("axis",),
    names: Mapping[str, str] | None = None,
) -> BranchInventory:
    """Compose with the cyclic quotient by a rotation of the given order.

    ``orbits`` lists how the rotation permutes the components; components
    not mentioned are invariant.  The rotation acts freely on every link
    component, so over an image component each of the ``order`` lifts of a
    meridian disk carries the type of the orbit member it lands on.  The
    rotation axis is appended with local degree ``order`` on every sheet.
    ``names`` renames an image component, keyed by its orbit's first label.
    """
    if order < 2:
        raise InventoryError("a rotation quotient needs order >= 2")
    seen: set[str] = set()
    for orbit in orbits:
        if not orbit:
            raise InventoryError("empty orbit")
        for label in orbit:
            if label not in inventory:
                raise InventoryError(f"orbit mentions unknown component {label!r}")
            if label in seen:
                raise InventoryError(f"component {label!r} in two orbits")
            seen.add(label)
        if order % len(orbit):
            raise InventoryError(f"orbit of size {len(orbit)} under a rotation of order {order}")
    full = [list(o) for o in orbits] + [[c.label] for c in inventory.components if c.label not in seen]
    full.sort(key=lambda o: inventory.labels.index(o[0]))
    names = dict(names or {})
    comps = []
    for orbit in full:
        members = [inventory[label] for label in orbit]
        totals = {m.type.total for m in members}
        if len(totals) != 1:
            raise InventoryError(f"inconsistent orbit types in {orbit}")
        stab = order // len(orbit)
        merged = BranchingType(tuple(p for m in members for p in m.type.parts * stab))
        tags = frozenset().union(*(m.tags for m in members))
        label = names.get(orbit[0], orbit[0])
        comps.append(BranchComponent(label, merged, tags))
    comps.append(
        BranchComponent(axis_label, BranchingType((order,) * inventory.degree), frozenset(axis_tags))
    )
    return BranchInventory(inventory.degree * order, tuple(comps))


# ---------------------------------------------------------------- regular coverings

#: Fixed enumeration of the six elements of the symmetric group on {1,2,3}.
SIGMA3: tuple[Perm, ...] = tuple(
    Perm.parse(text, 3) for text in ("()", "(1 2)", "(2 3)", "(1 3)", "(1 2 3)", "(1 3 2)")
)


def regular_representation(g: Perm) -> Perm:
    """Action of ``g`` on the six elements of Sigma_3 by right multiplication.

    Element number ``i`` of :data:`SIGMA3` goes to the number of
    ``SIGMA3[i] * g``.  Under left-to-right products this is a homomorphism
    into Sigma_6.
    """
    if g.degree != 3:
        raise ValueError(f"expected a permutation of degree 3, got degree {g.degree}")
    index = {h: i for i, h in enumerate(SIGMA3, start=1)}
    return Perm(tuple(index[h * g] for h in SIGMA3))


@dataclass(frozen=True)
class IndexTwoDatum:
    """Sign homomorphism of Sigma_3 onto {+1, -1} and its index-2 kernel."""

    kernel: tuple[Perm, ...] = field(default_factory=lambda: tuple(g for g in SIGMA3 if g.sign() == 1))

    @property
    def index(self) -> int:
        return len(SIGMA3) // len(self.kernel)

    @staticmethod
    def sign(g: Perm) -> int:
        return g.sign()


def pseudo_branch_double_cover(inventory: BranchInventory) -> tuple[IndexTwoDatum, BranchInventory]:
    """Branch data of the 2-fold covering ``u`` from the associated regular cover.

    The regular 6-fold covering factors through the given 3-fold one by a
    2-fold map branched exactly over the pseudo-branch components (those on
    which a meridian's transposition has a fixed sheet).
    """
    if not any({"branch", "pseudo"} & c.tags for c in inventory.components):
        raise InventoryError("inventory has no branch/pseudo tags")
    pseudo = [
        BranchComponent(c.label, BranchingType.of(2), c.tags)
        for c in inventory.components
        if "pseudo" in c.tags
    ]
    return IndexTwoDatum(), BranchInventory(2, tuple(pseudo))


def permutation_group_order(generators: Sequence[Perm]) -> int:
    """Order of the group generated, by closure (fine for small groups)."""
    if not generators:
        return 1
    identity = Perm.identity(generators[0].degree)
    elems = {identity}
    frontier = [identity]
    while frontier:
        g = frontier.pop()
        for s in generators:
            h = g * s
            if h not in elems:
                elems.add(h)
                frontier.append(h)
    return len(elems)

