"""Permutations of {1..n} in one-line image notation.

Everything here is 1-indexed: ``Permutation((3, 1, 4, 2))`` sends 1 to 3,
2 to 1, and so on.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _itertools_permutations
from typing import Iterator, Sequence


class PermutationError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        n = len(images)
        if n == 0:
            raise PermutationError("permutation must have positive degree")
        seen: dict[int, int] = {}
        for i, v in enumerate(images, start=1):
            if not 1 <= v <= n:
                raise PermutationError(f"image of {i} is {v}, outside 1..{n}")
            if v in seen:
                raise PermutationError(
                    f"images of {seen[v]} and {i} are both {v}; not a bijection"
                )
            seen[v] = i

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> Permutation:
        images = list(range(1, n + 1))
        for cyc in cycles:
            for k, v in enumerate(cyc):
                images[v - 1] = cyc[(k + 1) % len(cyc)]
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __len__(self) -> int:
        return len(self.images)

    def __iter__(self) -> Iterator[int]:
        return iter(self.images)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, start=1))

    def power(self, k: int) -> Permutation:
        result = Permutation.identity(self.n)
        base = self if k >= 0 else inverse(self)
        for _ in range(abs(k)):
            result = compose(base, result)
        return result

    def to_list(self) -> list[int]:
        return list(self.images)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p o q``: apply ``q`` first, then ``p``."""
    if p.n != q.n:
        raise PermutationError(f"degree mismatch: {p.n} vs {q.n}")
    return Permutation(tuple(p(q(i)) for i in range(1, q.n + 1)))


def inverse(p: Permutation) -> Permutation:
    images = [0] * p.n
    for i, v in enumerate(p.images, start=1):
        images[v - 1] = i
    return Permutation(tuple(images))


def cycles(p: Permutation) -> list[tuple[int, ...]]:
    """Cycle decomposition including fixed points.

    Each cycle starts at its smallest element and the list is sorted by those
    minima, so two equal permutations always give identical output.
    """
    seen = [False] * (p.n + 1)
    out = []
    for start in range(1, p.n + 1):
        if seen[start]:
            continue
        cyc = []
        k = start
        while not seen[k]:
            seen[k] = True
            cyc.append(k)
            k = p(k)
        out.append(tuple(cyc))
    return out


def fixed_points(p: Permutation) -> set[int]:
    return {i for i, v in enumerate(p.images, start=1) if v == i}


def is_full_cycle(p: Permutation) -> bool:
    return len(cycles(p)) == 1


def support_partition(p: Permutation) -> list[frozenset[int]]:
    return [frozenset(c) for c in cycles(p)]


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic order of image tuples."""
    for images in _itertools_permutations(range(1, n + 1)):
        yield Permutation(images)
