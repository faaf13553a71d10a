"""Finite permutations on {1..k}.

Products are read left to right: ``p * q`` applies ``p`` first, then ``q``.
With this convention the product of the two dihedral reflections used for
disk covers is the cycle ``(1, k, k-1, ..., 2)`` exactly as written.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True)
class Perm:
    """A bijection of ``{1, ..., degree}`` stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> Perm:
        return cls(tuple(range(1, degree + 1)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Perm:
        images = list(range(1, degree + 1))
        seen: set[int] = set()
        for cycle in cycles:
            for point in cycle:
                if not 1 <= point <= degree:
                    raise ValueError(f"point {point} outside 1..{degree}")
                if point in seen:
                    raise ValueError(f"point {point} occurs twice")
                seen.add(point)
            for a, b in zip(cycle, list(cycle[1:]) + list(cycle[:1])):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> Perm:
        """Read cycle notation such as ``(1 2)(3 4)``; ``()`` is the identity."""
        stripped = re.sub(r"\s+", " ", text.strip())
        if not stripped or _CYCLE_RE.sub("", stripped).strip():
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(stripped):
            points = [int(tok) for tok in body.replace(",", " ").split()]
            if len(points) > 1:
                cycles.append(points)
        largest = max((p for c in cycles for p in c), default=0)
        if degree is None:
            degree = max(largest, 1)
        return cls.from_cycles(degree, cycles)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: Perm) -> Perm:
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Perm(tuple(other.images[i - 1] for i in self.images))

    def inverse(self) -> Perm:
        inv = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Perm(tuple(inv))

    def __pow__(self, n: int) -> Perm:
        base = self if n >= 0 else self.inverse()
        result = Perm.identity(self.degree)
        for _ in range(abs(n)):
            result = result * base
        return result

    @cached_property
    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """All cycles including fixed points, each starting at its least element."""
        seen = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            nxt = self(start)
            while nxt != start:
                cycle.append(nxt)
                seen.add(nxt)
                nxt = self(nxt)
            out.append(tuple(cycle))
        return tuple(out)

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles))

    def num_cycles(self) -> int:
        return len(self.cycles)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def is_involution(self) -> bool:
        return (self * self).is_identity()

    def is_k_cycle(self) -> bool:
        return self.cycle_type() == (self.degree,)

    def sign(self) -> int:
        return -1 if (self.degree - self.num_cycles()) % 2 else 1

    def __str__(self) -> str:
        moved = [c for c in self.cycles if len(c) > 1]
        if not moved:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in moved)

    def __repr__(self) -> str:
        return f"Perm({self}, degree={self.degree})"


def transposition(degree: int, i: int, j: int) -> Perm:
    return Perm.from_cycles(degree, [(i, j)])
