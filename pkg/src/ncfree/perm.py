"""Permutations of [n] = {1, ..., n} and set partitions of [n].

Conventions used throughout the package:

- Ground sets are 1-based.  A permutation of size n acts on {1, ..., n}.
- Composition is right-to-left: ``(a * b)(i) == a(b(i))``, so the right
  factor acts first.  Every ``inverse() * g`` expression in the higher
  layers relies on this one convention.
- Cycle decompositions are canonical: each cycle is written starting from
  its minimum element and cycles are sorted by those minima.
  ``cycle_string`` and ``Permutation.parse`` round-trip this form.
- ``metric_length`` is n minus the number of cycles.  It is the word
  length of the permutation in the generating set of all transpositions,
  and it is the metric all of the geodesic ("non-crossing") conditions in
  this package are phrased in.

Permutations and set partitions are immutable values with structural
equality; all operations are pure and safe for concurrent use.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator

__all__ = [
    "Permutation",
    "SetPartition",
    "compose",
    "metric_length",
    "full_cycle",
    "restrict",
    "orbit_partition",
    "partition_join",
    "separates_points",
]


class Permutation:
    """A bijection of [n], stored as the tuple of images of 1, ..., n.

    >>> a = Permutation((2, 1, 4, 3))
    >>> a(1), a(3)
    (2, 4)
    >>> a.cycle_string()
    '(1,2)(3,4)'
    >>> a * a == Permutation.identity(4)
    True
    """

    __slots__ = ("image", "_cycles", "_inverse", "_hash")

    image: tuple[int, ...]

    def __init__(self, image: Iterable[int]):
        image = tuple(image)
        n = len(image)
        if n == 0:
            raise ValueError("permutations act on [n] with n >= 1")
        seen = [False] * n
        for v in image:
            if not (1 <= v <= n) or seen[v - 1]:
                raise ValueError(f"not a bijection of [{n}]: {image!r}")
            seen[v - 1] = True
        self.image = image
        self._cycles: tuple[tuple[int, ...], ...] | None = None
        self._inverse: Permutation | None = None
        self._hash: int | None = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Iterable[int]]) -> "Permutation":
        """Build a permutation of [n] from disjoint cycles.

        Points of [n] not mentioned in any cycle are fixed.

        >>> Permutation.from_cycles(4, [(1, 3), (2,)]).cycle_string()
        '(1,3)(2)(4)'
        """
        image = list(range(1, n + 1))
        touched = [False] * n
        for cycle in cycles:
            cycle = tuple(cycle)
            for i, pt in enumerate(cycle):
                if not (1 <= pt <= n):
                    raise ValueError(f"cycle point {pt} outside [{n}]")
                if touched[pt - 1]:
                    raise ValueError(f"cycles are not disjoint at {pt}")
                touched[pt - 1] = True
                image[pt - 1] = cycle[(i + 1) % len(cycle)]
        return cls(image)

    @classmethod
    def parse(cls, text: str, size: int | None = None) -> "Permutation":
        """Parse cycle notation like ``(1,2,12,9,8)(3,4)(5,10,11)(6)(7)``.

        Whitespace is optional everywhere.  Points absent from the text
        are fixed; ``size`` defaults to the largest point mentioned.

        >>> Permutation.parse("(1, 3)(2)") == Permutation.from_cycles(3, [(1, 3)])
        True
        """
        stripped = re.sub(r"\s+", "", text)
        if not re.fullmatch(r"(\(\d+(,\d+)*\))*", stripped):
            raise ValueError(f"malformed cycle notation: {text!r}")
        cycles = [
            tuple(int(p) for p in group.split(","))
            for group in re.findall(r"\(([^()]*)\)", stripped)
            if group
        ]
        if size is None:
            size = max((max(c) for c in cycles), default=0)
            if size == 0:
                raise ValueError("cannot infer size from empty cycle notation")
        return cls.from_cycles(size, cycles)

    # -- basic structure ------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    @property
    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Canonical cycle decomposition, singletons included."""
        if self._cycles is None:
            image = self.image
            n = len(image)
            seen = [False] * n
            cycles = []
            for start in range(1, n + 1):
                if seen[start - 1]:
                    continue
                cycle = []
                j = start
                while not seen[j - 1]:
                    seen[j - 1] = True
                    cycle.append(j)
                    j = image[j - 1]
                cycles.append(tuple(cycle))
            self._cycles = tuple(cycles)
        return self._cycles

    @property
    def cycle_count(self) -> int:
        return len(self.cycles)

    @property
    def metric_length(self) -> int:
        """n minus the number of cycles; additive along geodesics."""
        return len(self.image) - len(self.cycles)

    def inverse(self) -> "Permutation":
        if self._inverse is None:
            image = self.image
            inv = [0] * len(image)
            for i, v in enumerate(image):
                inv[v - 1] = i + 1
            result = Permutation(inv)
            result._inverse = self
            self._inverse = result
        return self._inverse

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition, right factor first: ``(a * b)(i) == a(b(i))``."""
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.size != self.size:
            raise ValueError(
                f"size mismatch: cannot compose size {self.size} with {other.size}"
            )
        image = self.image
        return Permutation(image[j - 1] for j in other.image)

    # -- text form ------------------------------------------------------

    def cycle_string(self) -> str:
        return "".join("(" + ",".join(map(str, c)) + ")" for c in self.cycles)

    def __repr__(self) -> str:
        return f"Permutation[{self.cycle_string()}]"

    # -- value semantics ------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.image == other.image

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.image)
        return self._hash

    def __lt__(self, other: "Permutation") -> bool:
        # lexicographic order on one-line images; used for deterministic sorts
        return self.image < other.image


class SetPartition:
    """A partition of [n] into disjoint blocks, in canonical form.

    Blocks are sorted tuples, listed by their minima.

    >>> v = SetPartition.of_blocks(3, [(3, 1), (2,)])
    >>> v.blocks
    ((1, 3), (2,))
    >>> v.metric_length
    1
    """

    __slots__ = ("size", "blocks", "_index", "_hash")

    def __init__(self, size: int, blocks: Iterable[Iterable[int]]):
        if size < 1:
            raise ValueError("partitions live on [n] with n >= 1")
        canon = sorted(tuple(sorted(b)) for b in blocks)
        seen = [False] * size
        for block in canon:
            if not block:
                raise ValueError("empty block")
            for pt in block:
                if not (1 <= pt <= size) or seen[pt - 1]:
                    raise ValueError(f"blocks do not partition [{size}]: {canon!r}")
                seen[pt - 1] = True
        if not all(seen):
            raise ValueError(f"blocks do not cover [{size}]: {canon!r}")
        self.size = size
        self.blocks = tuple(canon)
        self._index: tuple[int, ...] | None = None
        self._hash: int | None = None

    @classmethod
    def of_blocks(cls, size: int, blocks: Iterable[Iterable[int]]) -> "SetPartition":
        return cls(size, blocks)

    @classmethod
    def singletons(cls, n: int) -> "SetPartition":
        return cls(n, ((i,) for i in range(1, n + 1)))

    @classmethod
    def full(cls, n: int) -> "SetPartition":
        return cls(n, (tuple(range(1, n + 1)),))

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def metric_length(self) -> int:
        """n minus the number of blocks."""
        return self.size - len(self.blocks)

    def block_index(self, i: int) -> int:
        """Index into ``blocks`` of the block containing i."""
        if self._index is None:
            index = [0] * self.size
            for bi, block in enumerate(self.blocks):
                for pt in block:
                    index[pt - 1] = bi
            self._index = tuple(index)
        return self._index[i - 1]

    def block_containing(self, i: int) -> tuple[int, ...]:
        return self.blocks[self.block_index(i)]

    def join(self, other: "SetPartition") -> "SetPartition":
        return partition_join(self, other)

    def leq(self, other: "SetPartition") -> bool:
        """Refinement order: every block of self lies inside a block of other."""
        if other.size != self.size:
            raise ValueError("size mismatch in partition comparison")
        return all(
            set(block) <= set(other.block_containing(block[0]))
            for block in self.blocks
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SetPartition)
            and self.size == other.size
            and self.blocks == other.blocks
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.size, self.blocks))
        return self._hash

    def __repr__(self) -> str:
        body = "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return f"SetPartition[{body}]"


# -- module-level operations -------------------------------------------


def compose(a: Permutation, b: Permutation) -> Permutation:
    """Composition with the right factor acting first: result(i) = a(b(i))."""
    return a * b


def metric_length(a: Permutation) -> int:
    return a.metric_length


def full_cycle(n: int) -> Permutation:
    """The cycle (1, 2, ..., n)."""
    if n < 1:
        raise ValueError("full cycle needs n >= 1")
    return Permutation(tuple(range(2, n + 1)) + (1,))


def restrict(a: Permutation, points: Iterable[int]) -> Permutation:
    """First-return map of ``a`` on a nonempty subset of its ground set.

    The result is relabelled order-preservingly onto [k], k = len(points):
    the image of the j-th smallest point is the rank of the first point of
    the subset hit by iterating ``a``.

    >>> c = Permutation.parse("(1,2,3,4,5)")
    >>> restrict(c, {2, 4, 5}).cycle_string()
    '(1,2,3)'
    """
    pts = sorted(set(points))
    if not pts:
        raise ValueError("restriction to the empty set")
    rank = {pt: i + 1 for i, pt in enumerate(pts)}
    if pts[-1] > a.size:
        raise ValueError(f"point {pts[-1]} outside [{a.size}]")
    inside = set(pts)
    image = []
    for pt in pts:
        j = a(pt)
        while j not in inside:
            j = a(j)
        image.append(rank[j])
    return Permutation(image)


def orbit_partition(a: Permutation) -> SetPartition:
    """The set partition whose blocks are the cycles of ``a``."""
    return SetPartition(a.size, a.cycles)


def partition_join(u: SetPartition, v: SetPartition) -> SetPartition:
    """Least common coarsening of two partitions of the same set."""
    if u.size != v.size:
        raise ValueError("size mismatch in partition join")
    n = u.size
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part in (u, v):
        for block in part.blocks:
            root = find(block[0] - 1)
            for pt in block[1:]:
                other = find(pt - 1)
                if other != root:
                    parent[other] = root
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i + 1)
    return SetPartition(n, groups.values())


def separates_points(a: Permutation, points: Iterable[int]) -> bool:
    """True when no cycle of ``a`` contains two of the given points.

    >>> separates_points(Permutation.parse("(1,3,4)(2)"), {2, 4})
    True
    >>> separates_points(Permutation.parse("(1,3,4)(2)"), {3, 4})
    False
    """
    pts = list(points)
    cycle_of = [0] * a.size
    for ci, cycle in enumerate(a.cycles):
        for pt in cycle:
            cycle_of[pt - 1] = ci
    seen = set()
    for pt in pts:
        if not (1 <= pt <= a.size):
            raise ValueError(f"point {pt} outside [{a.size}]")
        ci = cycle_of[pt - 1]
        if ci in seen:
            return False
        seen.add(ci)
    return True


# -- raw 0-based helpers for the exhaustive scans ----------------------
#
# The verification suites sweep through S_n for n up to 9; they work on
# plain image tuples (0-based) and only wrap survivors in Permutation.


def _cycle_count0(image0: tuple[int, ...]) -> int:
    seen = bytearray(len(image0))
    count = 0
    for i in range(len(image0)):
        if not seen[i]:
            count += 1
            j = i
            while not seen[j]:
                seen[j] = 1
                j = image0[j]
    return count


def _inverse0(image0: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(image0)
    for i, v in enumerate(image0):
        inv[v] = i
    return tuple(inv)


def _compose0(a0: tuple[int, ...], b0: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(a0[x] for x in b0)


def _cycles0(image0: tuple[int, ...]) -> list[tuple[int, ...]]:
    seen = bytearray(len(image0))
    cycles = []
    for i in range(len(image0)):
        if not seen[i]:
            cycle = []
            j = i
            while not seen[j]:
                seen[j] = 1
                cycle.append(j)
                j = image0[j]
            cycles.append(tuple(cycle))
    return cycles


def _restrict0(image0: tuple[int, ...], pts0: tuple[int, ...]) -> tuple[int, ...]:
    """First-return map on sorted 0-based points, relabelled to 0..k-1."""
    rank = {pt: i for i, pt in enumerate(pts0)}
    out = []
    for pt in pts0:
        j = image0[pt]
        while j not in rank:
            j = image0[j]
        out.append(rank[j])
    return tuple(out)


def _iter_permutations0(n: int) -> Iterator[tuple[int, ...]]:
    import itertools

    return itertools.permutations(range(n))
