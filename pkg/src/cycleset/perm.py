"""Permutations of {0, ..., n-1} and fully materialized permutation groups.

A permutation is a tuple ``p`` of length ``n`` containing each of
``0, ..., n-1`` exactly once, read as the map ``i -> p[i]``.  Composition is
"right factor first": ``compose(a, b)`` is the map ``i -> a[b[i]]``.

Groups are materialized in full by breadth-first closure.  Degrees stay tiny
(at most about 12), where listing every element beats stabilizer chains and
keeps every question (orbits, blocks, nilpotency) a direct scan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

Perm = tuple[int, ...]

DEFAULT_ORDER_CAP = 10**6


class OrderCapExceeded(RuntimeError):
    """Raised when group materialization would exceed the element cap."""


def is_permutation(word: Sequence[int]) -> bool:
    """Return True if ``word`` lists each of 0..n-1 exactly once.

    >>> is_permutation((1, 0, 2))
    True
    >>> is_permutation((1, 1, 2))
    False
    """
    return sorted(word) == list(range(len(word)))


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(a: Sequence[int], b: Sequence[int]) -> Perm:
    """Compose two permutations, applying the right factor first.

    >>> compose((1, 2, 0), (1, 0, 2))
    (2, 1, 0)
    """
    if len(a) != len(b):
        raise ValueError(f"degree mismatch: {len(a)} != {len(b)}")
    return tuple(a[x] for x in b)


def inverse(p: Sequence[int]) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def power(p: Perm, k: int) -> Perm:
    """k-th compositional power; negative k uses the inverse."""
    n = len(p)
    if k < 0:
        p, k = inverse(p), -k
    out = identity(n)
    while k:
        if k & 1:
            out = compose(out, p)
        p = compose(p, p)
        k >>= 1
    return out


def cycles(p: Sequence[int]) -> list[tuple[int, ...]]:
    """Disjoint cycles of ``p`` including fixed points, anchored at minima."""
    seen = [False] * len(p)
    out = []
    for s in range(len(p)):
        if seen[s]:
            continue
        cyc = [s]
        seen[s] = True
        x = p[s]
        while x != s:
            cyc.append(x)
            seen[x] = True
            x = p[x]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    """Multiset of cycle lengths, sorted in decreasing order.

    >>> cycle_type((1, 0, 3, 4, 2))
    (3, 2)
    """
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def perm_order(p: Sequence[int]) -> int:
    return math.lcm(*(len(c) for c in cycles(p))) if len(p) else 1


def fixed_points(p: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(p) if x == i)


def from_cycles(n: int, cycs: Iterable[Sequence[int]]) -> Perm:
    """Build a permutation of degree ``n`` from pairwise disjoint cycles."""
    out = list(range(n))
    seen: set[int] = set()
    for cyc in cycs:
        for x in cyc:
            if not 0 <= x < n:
                raise ValueError(f"point {x} out of range for degree {n}")
            if x in seen:
                raise ValueError(f"point {x} repeated across cycles")
            seen.add(x)
        for i, x in enumerate(cyc):
            out[x] = cyc[(i + 1) % len(cyc)]
    return tuple(out)


def prime_support(n: int) -> frozenset[int]:
    """Set of primes dividing ``n``; empty for n = 1.

    >>> sorted(prime_support(12))
    [2, 3]
    >>> prime_support(1)
    frozenset()
    """
    if n < 1:
        raise ValueError("positive integer required")
    out = set()
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.add(n)
    return frozenset(out)


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class PermGroup:
    """A permutation group given by generators, materialized on demand."""

    degree: int
    generators: tuple[Perm, ...]
    max_order: int = field(default=DEFAULT_ORDER_CAP, compare=False, repr=False)

    @cached_property
    def elements(self) -> tuple[Perm, ...]:
        """Every element, sorted lexicographically for reproducibility."""
        els = {identity(self.degree)}
        frontier = list(els)
        while frontier:
            new = []
            for g in frontier:
                for s in self.generators:
                    h = compose(g, s)
                    if h not in els:
                        els.add(h)
                        new.append(h)
                        if len(els) > self.max_order:
                            raise OrderCapExceeded(
                                f"group order exceeds cap {self.max_order}"
                            )
            frontier = new
        return tuple(sorted(els))

    @cached_property
    def element_set(self) -> frozenset[Perm]:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in self.element_set

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.elements)

    @cached_property
    def orbits(self) -> tuple[tuple[int, ...], ...]:
        """Orbit partition, orbits sorted by least point."""
        parent = list(range(self.degree))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for i, j in enumerate(g):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
        buckets: dict[int, list[int]] = {}
        for i in range(self.degree):
            buckets.setdefault(find(i), []).append(i)
        return tuple(sorted((tuple(sorted(b)) for b in buckets.values())))

    @property
    def is_transitive(self) -> bool:
        return len(self.orbits) == 1

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.generators
        return all(
            compose(a, b) == compose(b, a) for a in gens for b in gens
        )

    def subgroup(self, gens: Iterable[Perm]) -> "PermGroup":
        return PermGroup(self.degree, tuple(gens), max_order=self.max_order)

    def lower_central_series(self) -> tuple[frozenset[Perm], ...]:
        """Lower central series as element sets, stopping once stable."""
        whole = self.element_set
        series = [whole]
        current = whole
        while True:
            comms = {
                compose(compose(inverse(g), inverse(h)), compose(g, h))
                for g in whole
                for h in current
            }
            nxt = self.subgroup(tuple(sorted(comms))).element_set
            if nxt == current:
                series.append(nxt)
                break
            series.append(nxt)
            current = nxt
            if len(nxt) == 1:
                break
        return tuple(series)

    @cached_property
    def is_nilpotent(self) -> bool:
        return len(self.lower_central_series()[-1]) == 1

    # -- block systems ------------------------------------------------------

    def minimal_block_systems(self) -> tuple["BlockSystem", ...]:
        """Minimal nontrivial block systems of a transitive group.

        Uses pairwise seeding: for each pair {a, b} the finest system putting
        a and b in a common block is grown by union-find under the generators;
        minimal systems are the inclusion-minimal nontrivial results.
        """
        if not self.is_transitive:
            raise ValueError("block systems require a transitive group")
        n = self.degree
        candidates: set[tuple[tuple[int, ...], ...]] = set()
        for a, b in combinations(range(n), 2):
            part = self._finest_system_joining(a, b)
            if part is not None:
                candidates.add(part)
        minimal = [
            part
            for part in candidates
            if not any(other != part and _refines(other, part) for other in candidates)
        ]
        return tuple(BlockSystem(n, part) for part in sorted(minimal))

    def _finest_system_joining(
        self, a: int, b: int
    ) -> tuple[tuple[int, ...], ...] | None:
        n = self.degree
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x: int, y: int) -> bool:
            rx, ry = find(x), find(y)
            if rx == ry:
                return False
            parent[rx] = ry
            return True

        union(a, b)
        changed = True
        while changed:
            changed = False
            for g in self.generators:
                for x in range(n):
                    for y in range(x + 1, n):
                        if find(x) == find(y) and union(g[x], g[y]):
                            changed = True
        buckets: dict[int, list[int]] = {}
        for i in range(n):
            buckets.setdefault(find(i), []).append(i)
        if len(buckets) == 1:
            return None
        return tuple(sorted(tuple(sorted(blk)) for blk in buckets.values()))

    def block_systems(self) -> tuple["BlockSystem", ...]:
        """All nontrivial block systems of a transitive group.

        Scans candidate blocks through point 0 (size a proper divisor of the
        degree) for invariance under every element; feasible because elements
        are materialized.
        """
        if not self.is_transitive:
            raise ValueError("block systems require a transitive group")
        n = self.degree
        out = []
        rest = [x for x in range(n) if x != 0]
        els = self.elements
        for d in range(2, n):
            if n % d != 0:
                continue
            for extra in combinations(rest, d - 1):
                blk = frozenset((0,) + extra)
                images = set()
                ok = True
                for g in els:
                    img = frozenset(g[x] for x in blk)
                    if img & blk and img != blk:
                        ok = False
                        break
                    images.add(img)
                if ok:
                    part = tuple(sorted(tuple(sorted(b)) for b in images))
                    out.append(BlockSystem(n, part))
        return tuple(sorted(set(out), key=lambda s: s.blocks))


def _refines(finer: tuple[tuple[int, ...], ...], coarser: tuple[tuple[int, ...], ...]) -> bool:
    cls = {}
    for idx, blk in enumerate(coarser):
        for x in blk:
            cls[x] = idx
    return all(len({cls[x] for x in blk}) == 1 for blk in finer)


def generate(gens: Iterable[Sequence[int]], max_order: int = DEFAULT_ORDER_CAP) -> PermGroup:
    """Group generated by ``gens`` (nonempty, equal degrees)."""
    gen_tuple = tuple(tuple(g) for g in gens)
    if not gen_tuple:
        raise ValueError("at least one generator required")
    n = len(gen_tuple[0])
    for g in gen_tuple:
        if len(g) != n:
            raise ValueError("generators must share a degree")
        if not is_permutation(g):
            raise ValueError(f"not a permutation: {g}")
    return PermGroup(n, gen_tuple, max_order=max_order)


@dataclass(frozen=True)
class BlockSystem:
    """A G-invariant partition into equally sized blocks."""

    degree: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen = sorted(x for blk in self.blocks for x in blk)
        if seen != list(range(self.degree)):
            raise ValueError("blocks must partition the point set")
        sizes = {len(blk) for blk in self.blocks}
        if len(sizes) != 1:
            raise ValueError("blocks must have equal size")

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    @cached_property
    def _block_of(self) -> tuple[int, ...]:
        out = [0] * self.degree
        for idx, blk in enumerate(self.blocks):
            for x in blk:
                out[x] = idx
        return tuple(out)

    def block_of(self, x: int) -> int:
        return self._block_of[x]

    def action_of(self, p: Perm) -> Perm:
        """Induced permutation of block indices; ValueError if not invariant."""
        out = [-1] * self.num_blocks
        for idx, blk in enumerate(self.blocks):
            images = {self._block_of[p[x]] for x in blk}
            if len(images) != 1:
                raise ValueError("permutation does not preserve the block system")
            out[idx] = images.pop()
        if not is_permutation(out):
            raise ValueError("permutation does not preserve the block system")
        return tuple(out)
