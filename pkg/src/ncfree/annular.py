"""Non-crossing permutations of the disc and the annulus.

The disc case: pi on [n] is non-crossing when it sits on a geodesic from
the identity to the full cycle gamma_n = (1,...,n), i.e.

    #(pi) + #(pi^-1 gamma_n) + #(gamma_n) == n + 2.

The annulus (p, q): the base permutation is gamma_pq = (1,...,p)(p+1,...,p+q),
the outer circle carrying 1..p and the inner circle p+1..p+q.  A permutation
belongs to the annular non-crossing class when it has at least one through
cycle (a cycle meeting both circles) and

    #(pi) + #(pi^-1 gamma_pq) + #(gamma_pq) == p + q + 2.

Partitioned permutations (V, pi) with pi <= V extend this to the two-point
setting: the annular family consists of the disc-type elements (0_pi, pi)
for pi annular non-crossing, together with the "tunnel" elements where pi
is a pair of disc non-crossing permutations, one per circle, and exactly
one block of V glues one cycle from each circle.

Enumeration is by brute-force filtering of S_{p+q} (a deliberate choice:
the filters are the definitions, so the enumerators cannot drift from
them), memoized per size/shape, in lexicographic order on one-line images.
The default bound keeps p + q <= 10.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .perm import (
    Permutation,
    SetPartition,
    _cycle_count0,
    full_cycle,
    orbit_partition,
    partition_join,
    separates_points,
)

__all__ = [
    "ENUMERATION_BOUND",
    "AnnulusShape",
    "Composition",
    "PartitionedPermutation",
    "gamma_pq",
    "is_nc_disc",
    "has_through_cycle",
    "is_snc",
    "enumerate_nc",
    "enumerate_snc",
    "enumerate_psnc",
    "count_snc_pairings",
    "fatten",
    "tau_of",
    "kreweras",
    "kreweras_cycle_ids",
    "main_summand_filter",
    "pp_product",
    "pp_leq",
    "element_record",
]

# Enumerators refuse sizes above this unless the caller raises the bound
# explicitly.  S_10 is the largest symmetric group the brute filter
# sweeps in acceptable time.
ENUMERATION_BOUND = 10


@dataclass(frozen=True)
class AnnulusShape:
    """An annulus with p outer and q inner boundary points, both >= 1."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 1 or self.q < 1:
            raise ValueError("annulus needs at least one point on each circle")

    @property
    def total(self) -> int:
        return self.p + self.q

    def gamma(self) -> Permutation:
        return gamma_pq(self.p, self.q)


def gamma_pq(p: int, q: int) -> Permutation:
    """The permutation (1,...,p)(p+1,...,p+q)."""
    if p < 1 or q < 1:
        raise ValueError("gamma_pq needs p, q >= 1")
    image = list(range(2, p + 1)) + [1] + list(range(p + 2, p + q + 1)) + [p + 1]
    return Permutation(image)


@dataclass(frozen=True)
class Composition:
    """An ordered tuple of positive parts, optionally split into two runs.

    ``split = r`` marks the first r parts as the outer-circle groups; it is
    absent for disc use.  ``boundary_points`` are the partial sums
    n_1, n_1 + n_2, ...; these are the group endpoints every separation
    filter in the package refers to.
    """

    parts: tuple[int, ...]
    split: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts or any(n < 1 for n in self.parts):
            raise ValueError("composition parts must be positive")
        if self.split is not None and not 0 < self.split < len(self.parts):
            raise ValueError("split must leave parts on both sides")

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def part_count(self) -> int:
        return len(self.parts)

    @property
    def boundary_points(self) -> tuple[int, ...]:
        out, acc = [], 0
        for n in self.parts:
            acc += n
            out.append(acc)
        return tuple(out)

    def _require_split(self) -> int:
        if self.split is None:
            raise ValueError("this operation needs a split composition")
        return self.split

    @property
    def p(self) -> int:
        """Total size of the outer-circle groups."""
        return sum(self.parts[: self._require_split()])

    @property
    def q(self) -> int:
        """Total size of the inner-circle groups."""
        return sum(self.parts[self._require_split() :])

    def shape(self) -> AnnulusShape:
        return AnnulusShape(self.p, self.q)


# -- membership tests --------------------------------------------------


def is_nc_disc(a: Permutation) -> bool:
    """Disc non-crossing test via the geodesic identity.

    >>> is_nc_disc(Permutation.parse("(1,2)(3,4)"))
    True
    >>> is_nc_disc(Permutation.parse("(1,3)(2,4)"))
    False
    """
    n = a.size
    k = a.inverse() * full_cycle(n)
    return a.cycle_count + k.cycle_count == n + 1


def has_through_cycle(a: Permutation, shape: AnnulusShape) -> bool:
    """True when some cycle of ``a`` meets both circles of the shape."""
    p = shape.p
    return any(c[0] <= p and max(c) > p for c in a.cycles)


def is_snc(a: Permutation, shape: AnnulusShape) -> bool:
    """Annular non-crossing test: through cycle plus the geodesic identity."""
    if a.size != shape.total:
        raise ValueError(f"size {a.size} does not match shape {shape}")
    if not has_through_cycle(a, shape):
        return False
    k = a.inverse() * shape.gamma()
    return a.cycle_count + k.cycle_count == shape.total


# -- enumeration -------------------------------------------------------

_nc_cache: dict[int, tuple[Permutation, ...]] = {}
_snc_cache: dict[tuple[int, int], tuple[Permutation, ...]] = {}
_psnc_cache: dict[tuple[int, int], tuple["PartitionedPermutation", ...]] = {}


def _check_bound(total: int, bound: int | None) -> None:
    limit = ENUMERATION_BOUND if bound is None else bound
    if total > limit:
        raise ValueError(
            f"enumeration size {total} exceeds the bound {limit}; "
            "pass a larger bound explicitly if you really mean it"
        )
    if total < 1:
        raise ValueError("enumeration needs a positive size")


def enumerate_nc(n: int, bound: int | None = None) -> tuple[Permutation, ...]:
    """All disc non-crossing permutations of [n], ordered lexicographically
    by one-line image.  Memoized; the returned tuple is shared."""
    _check_bound(n, bound)
    cached = _nc_cache.get(n)
    if cached is None:
        gamma0 = tuple(range(1, n)) + (0,)
        out = []
        target = n + 1
        for img0 in itertools.permutations(range(n)):
            inv = [0] * n
            for i, v in enumerate(img0):
                inv[v] = i
            k0 = tuple(inv[g] for g in gamma0)
            if _cycle_count0(img0) + _cycle_count0(k0) == target:
                out.append(Permutation(v + 1 for v in img0))
        cached = _nc_cache[n] = tuple(out)
    return cached


def _scan_cycles0(image0: tuple[int, ...], p: int) -> tuple[int, bool]:
    """Cycle count and through-cycle flag in one traversal (0-based)."""
    seen = bytearray(len(image0))
    count = 0
    through = False
    for i in range(len(image0)):
        if not seen[i]:
            count += 1
            j = i
            low = high = False
            while not seen[j]:
                seen[j] = 1
                if j < p:
                    low = True
                else:
                    high = True
                j = image0[j]
            if low and high:
                through = True
    return count, through


def enumerate_snc(shape: AnnulusShape, bound: int | None = None) -> tuple[Permutation, ...]:
    """All annular non-crossing permutations of the shape, in lexicographic
    order on one-line images.  Memoized per shape."""
    _check_bound(shape.total, bound)
    key = (shape.p, shape.q)
    cached = _snc_cache.get(key)
    if cached is None:
        p, n = shape.p, shape.total
        gamma0 = tuple(range(1, p)) + (0,) + tuple(range(p + 1, n)) + (p,)
        out = []
        target = n
        for img0 in itertools.permutations(range(n)):
            count, through = _scan_cycles0(img0, p)
            if not through:
                continue
            inv = [0] * n
            for i, v in enumerate(img0):
                inv[v] = i
            k0 = tuple(inv[g] for g in gamma0)
            if count + _cycle_count0(k0) == target:
                out.append(Permutation(v + 1 for v in img0))
        cached = _snc_cache[key] = tuple(out)
    return cached


class PartitionedPermutation:
    """A pair (V, pi) with every cycle of pi inside a block of V.

    ``length`` is 2|V| - |pi| in the partition/permutation metrics; it is
    additive exactly when ``pp_product`` is defined.  ``kind`` reports
    "disc" when V = 0_pi (each block a single cycle) and "tunnel" otherwise.
    """

    __slots__ = ("partition", "perm", "_block_cycles", "_hash")

    def __init__(self, partition: SetPartition, perm: Permutation):
        if partition.size != perm.size:
            raise ValueError("partition and permutation sizes differ")
        for cycle in perm.cycles:
            bi = partition.block_index(cycle[0])
            if any(partition.block_index(pt) != bi for pt in cycle[1:]):
                raise ValueError(
                    f"cycle {cycle} is not contained in a block of {partition!r}"
                )
        self.partition = partition
        self.perm = perm
        self._block_cycles: tuple[tuple[tuple[int, ...], ...], ...] | None = None
        self._hash: int | None = None

    @classmethod
    def disc(cls, perm: Permutation) -> "PartitionedPermutation":
        """The element (0_pi, pi)."""
        return cls(orbit_partition(perm), perm)

    @property
    def size(self) -> int:
        return self.perm.size

    @property
    def length(self) -> int:
        return 2 * self.partition.metric_length - self.perm.metric_length

    @property
    def kind(self) -> str:
        return "disc" if self.partition.block_count == self.perm.cycle_count else "tunnel"

    def block_cycles(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """Cycles of ``perm`` grouped by block of ``partition``.

        Groups follow block order; cycles inside a group are ordered by
        their minima.  For the annular elements enumerated here this puts
        the outer-circle cycle of a tunnel block first.
        """
        if self._block_cycles is None:
            per_block: list[list[tuple[int, ...]]] = [
                [] for _ in range(self.partition.block_count)
            ]
            for cycle in self.perm.cycles:
                per_block[self.partition.block_index(cycle[0])].append(cycle)
            self._block_cycles = tuple(tuple(group) for group in per_block)
        return self._block_cycles

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PartitionedPermutation)
            and self.perm == other.perm
            and self.partition == other.partition
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.partition, self.perm))
        return self._hash

    def __repr__(self) -> str:
        return f"PartitionedPermutation[{self.partition!r}, {self.perm!r}]"


def enumerate_psnc(
    shape: AnnulusShape, bound: int | None = None
) -> tuple[PartitionedPermutation, ...]:
    """All annular partitioned permutations of the shape.

    Disc-type elements come first, in ``enumerate_snc`` order; then the
    tunnel elements, ordered by (outer factor, inner factor, glued pair).
    Memoized per shape.
    """
    _check_bound(shape.total, bound)
    key = (shape.p, shape.q)
    cached = _psnc_cache.get(key)
    if cached is None:
        p, q, n = shape.p, shape.q, shape.total
        out = [PartitionedPermutation.disc(a) for a in enumerate_snc(shape, bound)]
        for outer in enumerate_nc(p, bound):
            for inner in enumerate_nc(q, bound):
                image = list(outer.image) + [v + p for v in inner.image]
                perm = Permutation(image)
                out_cycles = outer.cycles
                in_cycles = tuple(
                    tuple(pt + p for pt in c) for c in inner.cycles
                )
                for i, c1 in enumerate(out_cycles):
                    for c2 in in_cycles:
                        blocks = [c1 + c2]
                        blocks.extend(c for j, c in enumerate(out_cycles) if j != i)
                        blocks.extend(c for c in in_cycles if c is not c2)
                        out.append(
                            PartitionedPermutation(SetPartition(n, blocks), perm)
                        )
        cached = _psnc_cache[key] = tuple(out)
    return cached


# -- pairings ----------------------------------------------------------


def _pairings0(points: tuple[int, ...]) -> Iterator[list[tuple[int, int]]]:
    """All perfect matchings of an even 0-based point list."""
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for i, partner in enumerate(rest):
        remaining = rest[:i] + rest[i + 1 :]
        for tail in _pairings0(remaining):
            tail.append((first, partner))
            yield tail


def count_snc_pairings(
    p: int, q: int, separated_at: Iterable[int] | None = None
) -> int:
    """Count annular non-crossing pairings of the (p, q) shape.

    With ``separated_at`` given, only pairings pi whose complement
    pi^-1 gamma_pq puts the listed points into pairwise distinct cycles
    are counted.  Enumeration is over all (p+q-1)!! pairings; the test
    applied to each is the annular membership definition itself.
    """
    n = p + q
    if n % 2:
        return 0
    pts = None if separated_at is None else tuple(separated_at)
    gamma0 = tuple(range(1, p)) + (0,) + tuple(range(p + 1, n)) + (p,)
    half = n // 2
    count = 0
    for pairs in _pairings0(tuple(range(n))):
        img0 = [0] * n
        through = False
        for a, b in pairs:
            img0[a] = b
            img0[b] = a
            if (a < p) != (b < p):
                through = True
        if not through:
            continue
        k0 = tuple(img0[g] for g in gamma0)  # pairings are involutions
        if _cycle_count0(k0) != half:
            continue
        if pts is not None:
            cycle_of = [0] * n
            seen = bytearray(n)
            label = 0
            for i in range(n):
                if not seen[i]:
                    label += 1
                    j = i
                    while not seen[j]:
                        seen[j] = 1
                        cycle_of[j] = label
                        j = k0[j]
            hit = set()
            ok = True
            for pt in pts:
                c = cycle_of[pt - 1]
                if c in hit:
                    ok = False
                    break
                hit.add(c)
            if not ok:
                continue
        count += 1
    return count


# -- fattening ---------------------------------------------------------


def fatten(a: Permutation, comp: Composition) -> Permutation:
    """Inflate ``a`` along the parts of ``comp``.

    Part k becomes the interval T_k ending at the k-th partial sum; inside
    each interval points step forward by one, and the last point of T_k
    jumps to the first point of T_{a(k)}.

    >>> fatten(Permutation.parse("(1,3)(2)"), Composition((2, 3, 4))).cycle_string()
    '(1,2,6,7,8,9)(3,4,5)'
    """
    if a.size != comp.part_count:
        raise ValueError(
            f"permutation of size {a.size} does not match {comp.part_count} parts"
        )
    partial = [0]
    for n in comp.parts:
        partial.append(partial[-1] + n)
    total = partial[-1]
    image = [i + 2 for i in range(total)]
    for k in range(1, comp.part_count + 1):
        image[partial[k] - 1] = partial[a(k) - 1] + 1
    return Permutation(image)


def tau_of(comp: Composition) -> Permutation:
    """The interval permutation with one cycle per part of ``comp``.

    >>> tau_of(Composition((3, 2, 4, 2, 1))).cycle_string()
    '(1,2,3)(4,5)(6,7,8,9)(10,11)(12)'
    """
    return fatten(Permutation.identity(comp.part_count), comp)


# -- complements and the separation filter -----------------------------

_kreweras_cache: dict[tuple[int, int, Permutation], Permutation] = {}
_kreweras_ids_cache: dict[tuple[int, int, Permutation], tuple[int, ...]] = {}


def kreweras(shape: AnnulusShape, a: Permutation) -> Permutation:
    """The complement a^-1 gamma_pq, memoized per (shape, a)."""
    key = (shape.p, shape.q, a)
    cached = _kreweras_cache.get(key)
    if cached is None:
        cached = _kreweras_cache[key] = a.inverse() * shape.gamma()
    return cached


def kreweras_cycle_ids(shape: AnnulusShape, a: Permutation) -> tuple[int, ...]:
    """Cycle labels of the complement, one per ground point."""
    key = (shape.p, shape.q, a)
    cached = _kreweras_ids_cache.get(key)
    if cached is None:
        k = kreweras(shape, a)
        ids = [0] * k.size
        for ci, cycle in enumerate(k.cycles):
            for pt in cycle:
                ids[pt - 1] = ci
        cached = _kreweras_ids_cache[key] = tuple(ids)
    return cached


def main_summand_filter(
    shape: AnnulusShape, comp: Composition, vp: PartitionedPermutation
) -> bool:
    """True when the complement of ``vp.perm`` separates the part endpoints.

    ``comp`` must be a split composition matching the shape.
    """
    if comp.p != shape.p or comp.q != shape.q:
        raise ValueError(f"composition {comp} does not fill shape {shape}")
    if vp.size != shape.total:
        raise ValueError("partitioned permutation does not match the shape")
    return separates_points(kreweras(shape, vp.perm), comp.boundary_points)


# -- the product and partial order ------------------------------------


def pp_product(
    a: PartitionedPermutation, b: PartitionedPermutation
) -> PartitionedPermutation | None:
    """Product of partitioned permutations.

    The candidate is (V join U, pi sigma); it is the value exactly when both
    lengths add, otherwise the product is undefined and None is returned.

    >>> s = Permutation.parse("(1,2)")
    >>> left = PartitionedPermutation.disc(s)
    >>> right = PartitionedPermutation.disc(s.inverse() * gamma_pq(1, 1))
    >>> pp_product(left, right)
    PartitionedPermutation[SetPartition[{1,2}], Permutation[(1)(2)]]
    """
    if a.size != b.size:
        raise ValueError("size mismatch in partitioned permutation product")
    joined = partition_join(a.partition, b.partition)
    prod = a.perm * b.perm
    if a.length + b.length == 2 * joined.metric_length - prod.metric_length:
        return PartitionedPermutation(joined, prod)
    return None


def pp_leq(a: PartitionedPermutation, b: PartitionedPermutation) -> bool:
    """Order by existence of a completing factor.

    Only the canonical witness (0_w, w) with w = a.perm^-1 b.perm needs
    testing: any defined product forcing ``b`` uses exactly that factor.
    """
    if a.size != b.size:
        raise ValueError("size mismatch in partitioned permutation comparison")
    w = a.perm.inverse() * b.perm
    return pp_product(a, PartitionedPermutation.disc(w)) == b


# -- serialization -----------------------------------------------------


def element_record(vp: PartitionedPermutation) -> dict:
    """JSON-ready record of one enumerated element."""
    return {
        "perm": vp.perm.cycle_string(),
        "partition": [list(b) for b in vp.partition.blocks],
        "kind": vp.kind,
    }
