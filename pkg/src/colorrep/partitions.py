"""Set partitions of finite ground sets.

Ground-set elements are positive integers; ``[n]`` means ``{1, ..., n}``.
Spin configurations are tuples of bits with ``sigma[i - 1]`` the spin at ``i``.
"""
from __future__ import annotations

from collections import Counter
from math import factorial
from typing import Iterable, Iterator, Sequence

from .errors import SizeLimitError, ValidationError

MAX_ENUMERATION_N = 12

PartitionShape = tuple  # block sizes, non-increasing


class SetPartition:
    """An immutable partition with canonically ordered blocks.

    Blocks are sorted internally and ordered by their minimum element, so two
    partitions are equal iff their block tuples are equal.  The restricted
    growth string relative to the sorted ground set is available as ``rgs``.
    """

    __slots__ = ("blocks", "ground", "_hash")

    def __init__(self, blocks: Iterable[Iterable[int]]):
        bl = [tuple(sorted(b)) for b in blocks]
        if any(len(b) == 0 for b in bl):
            raise ValidationError("partition blocks must be nonempty")
        bl.sort(key=lambda b: b[0])
        ground = tuple(sorted(e for b in bl for e in b))
        if len(set(ground)) != len(ground):
            raise ValidationError("partition blocks must be disjoint")
        self.blocks: tuple = tuple(bl)
        self.ground: tuple = ground
        self._hash = hash(self.blocks)

    @classmethod
    def from_rgs(cls, rgs: Sequence[int], ground: Sequence[int] | None = None) -> "SetPartition":
        if ground is None:
            ground = range(1, len(rgs) + 1)
        groups: dict = {}
        for e, label in zip(ground, rgs):
            groups.setdefault(label, []).append(e)
        return cls(groups.values())

    @classmethod
    def parse(cls, text: str) -> "SetPartition":
        """Parse the canonical text form, e.g. ``"1,2|3"``."""
        return cls([int(e) for e in blk.split(",")] for blk in text.strip().split("|"))

    @property
    def n(self) -> int:
        return len(self.ground)

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def rgs(self) -> tuple:
        label = {}
        for k, b in enumerate(self.blocks):
            for e in b:
                label[e] = k
        return tuple(label[e] for e in self.ground)

    def __eq__(self, other):
        if not isinstance(other, SetPartition):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.ground, self.rgs) < (other.ground, other.rgs)

    def __str__(self):
        return "|".join(",".join(map(str, b)) for b in self.blocks)

    def __repr__(self):
        return f"SetPartition({str(self)!r})"

    def block_of(self, i: int) -> tuple:
        for b in self.blocks:
            if i in b:
                return b
        raise KeyError(i)

    def restrict(self, subset: Iterable[int]) -> "SetPartition":
        return restrict(self, subset)

    def refines(self, other: "SetPartition") -> bool:
        return refines(self, other)

    @property
    def shape(self) -> PartitionShape:
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))


def bell_number(n: int) -> int:
    """Bell number via the triangle recurrence."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def iter_rgs(n: int) -> Iterator[tuple]:
    """Restricted growth strings of length n in lexicographic order."""
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(i, mx):
        if i == n:
            yield tuple(a)
            return
        for v in range(mx + 2):
            a[i] = v
            yield from rec(i + 1, max(mx, v))

    a[0] = 0
    yield from rec(1, 0)


def iter_partitions(n: int) -> Iterator[SetPartition]:
    if not 1 <= n <= MAX_ENUMERATION_N:
        raise SizeLimitError(f"partition enumeration needs 1 <= n <= {MAX_ENUMERATION_N}, got {n}")
    for rgs in iter_rgs(n):
        yield SetPartition.from_rgs(rgs)


def enumerate_partitions(n: int) -> list:
    """All of B_n in restricted-growth lexicographic order."""
    return list(iter_partitions(n))


def restrict(pi: SetPartition, subset: Iterable[int]) -> SetPartition:
    t = set(subset)
    if not t:
        raise ValidationError("cannot restrict to the empty set")
    if not t <= set(pi.ground):
        raise ValidationError("restriction set is not contained in the ground set")
    return SetPartition(
        [e for e in b if e in t] for b in pi.blocks if any(e in t for e in b)
    )


def restricted_block_sizes(pi: SetPartition, subset: Iterable[int]) -> list:
    """Block sizes of ``pi`` restricted to ``subset``; empty list for the empty set."""
    t = set(subset)
    sizes = []
    for b in pi.blocks:
        k = sum(1 for e in b if e in t)
        if k:
            sizes.append(k)
    return sizes


def refines(finer: SetPartition, coarser: SetPartition) -> bool:
    """True iff every block of ``finer`` lies inside a block of ``coarser``."""
    if finer.ground != coarser.ground:
        raise ValidationError("partitions live on different ground sets")
    owner = {}
    for k, b in enumerate(coarser.blocks):
        for e in b:
            owner[e] = k
    return all(len({owner[e] for e in b}) == 1 for b in finer.blocks)


def is_constant_on_blocks(pi: SetPartition, sigma: Sequence[int]) -> bool:
    """The relation pi ⊲ sigma: sigma is constant on every block."""
    return all(len({sigma[e - 1] for e in b}) == 1 for b in pi.blocks)


class UnionFind:
    def __init__(self, elements: Iterable[int]):
        self.parent = {e: e for e in elements}

    def find(self, e):
        root = e
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[e] != root:
            self.parent[e], e = root, self.parent[e]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb

    def groups(self) -> list:
        out: dict = {}
        for e in self.parent:
            out.setdefault(self.find(e), []).append(e)
        return list(out.values())


def partition_from_edges(graph, w: Sequence[int]) -> SetPartition:
    """Connected components of the open-edge subgraph (V, {e : w_e = 1})."""
    if len(w) != len(graph.edges):
        raise ValidationError("edge configuration length does not match edge count")
    uf = UnionFind(range(1, graph.n + 1))
    for (i, j), open_ in zip(graph.edges, w):
        if open_:
            uf.union(i, j)
    return SetPartition(uf.groups())


def singletons(n: int) -> SetPartition:
    return SetPartition([i] for i in range(1, n + 1))


def single_block_partition(block: Iterable[int], n: int) -> SetPartition:
    """pi[T]: T is one block, everything else a singleton; pi[∅] is all singletons."""
    t = set(block)
    if len(t) == 1:
        raise ValidationError("pi[T] is only defined for |T| >= 2 or T empty")
    if not t <= set(range(1, n + 1)):
        raise ValidationError("block is not a subset of [n]")
    if not t:
        return singletons(n)
    return SetPartition([sorted(t)] + [[i] for i in range(1, n + 1) if i not in t])


def odd_block_indicator(subset: Iterable[int], pi: SetPartition) -> int:
    """1 iff pi restricted to ``subset`` has at most one odd-sized block."""
    odd = sum(1 for k in restricted_block_sizes(pi, subset) if k % 2)
    return int(odd <= 1)


def odd_block(subset: Iterable[int], pi: SetPartition):
    """The block of ``pi`` carrying the unique odd block of pi|_S, else None.

    Only defined for odd |S|; returns the full block of ``pi`` (not its trace on S).
    """
    s = set(subset)
    if len(s) % 2 == 0:
        return None
    found = None
    for b in pi.blocks:
        if sum(1 for e in b if e in s) % 2:
            if found is not None:
                return None
            found = b
    return found


def only_even_blocks(subset: Iterable[int], pi: SetPartition) -> int:
    return int(all(k % 2 == 0 for k in restricted_block_sizes(pi, subset)))


def apply_permutation(tau: Sequence[int], pi: SetPartition) -> SetPartition:
    """tau ∘ pi for tau given in one-line notation on [n] (``tau[i - 1]`` is the image of i)."""
    if sorted(tau) != list(range(1, len(tau) + 1)):
        raise ValidationError("tau is not a permutation of [n]")
    return SetPartition([tau[e - 1] for e in b] for b in pi.blocks)


def shape(pi: SetPartition) -> PartitionShape:
    return pi.shape


def integer_partitions(n: int, largest: int | None = None) -> Iterator[tuple]:
    """Integer partitions of n, non-increasing parts, reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - k, k):
            yield (k,) + rest


def shape_representative(sizes: Sequence[int]) -> SetPartition:
    """Consecutive blocks with the given sizes, e.g. (2, 1, 1) -> {12|3|4}."""
    blocks, start = [], 1
    for k in sizes:
        blocks.append(range(start, start + k))
        start += k
    return SetPartition(blocks)


def shape_representatives(n: int) -> list:
    """One partition per S_n-orbit of B_n, coarsest shape first."""
    return [shape_representative(s) for s in integer_partitions(n)]


def orbit_size(sizes: Sequence[int]) -> int:
    """Number of set partitions of [sum(sizes)] with the given block sizes."""
    n = sum(sizes)
    denom = 1
    for k in sizes:
        denom *= factorial(k)
    for mult in Counter(sizes).values():
        denom *= factorial(mult)
    return factorial(n) // denom
