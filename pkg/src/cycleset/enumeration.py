"""Exhaustive, isomorphism-free enumeration of cycle sets of a given size.

The search fills the table row by row.  Placing a row triggers constraint
propagation: for every pair of known rows x, y the cycloid law pins the rows
indexed by x.y and y.x to each other (sigma_{x.y} o sigma_x = sigma_{y.x} o
sigma_y), so as soon as one of those two rows is known the other is forced
outright, and when neither is known the pair is parked until one appears.
The partial diagonal is kept injective throughout.  Every emitted table is
canonicalized; deduplication happens on canonical forms, so the output is
one representative per isomorphism class, sorted, independent of work
splitting and scheduling.

Optional symmetry breaking restricts row 0 to one representative per
conjugacy class per length of the cycle through point 0 (every class of
tables contains such a relabeling); it changes only speed, never the set of
canonical forms, and is cross-checked against the brute-force oracle.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Callable, Iterable, Sequence

from . import canon
from .canon import SearchCancelled
from .core import CycleSet, Table, validate_table
from .perm import Perm, cycle_type

ENGINE_VERSION = "cycleset-enum/1"
DEFAULT_MAX_N = 8
MAX_N_ENV = "CYCLESET_MAX_N"


def size_cap() -> int:
    raw = os.environ.get(MAX_N_ENV)
    return int(raw) if raw else DEFAULT_MAX_N


@dataclass(frozen=True)
class EnumerationFilter:
    """Conjunction of optional per-class conditions; None means no constraint.
    All conditions are isomorphism invariants, so filtering representatives
    filters classes."""

    indecomposable: bool | None = None
    latin: bool | None = None
    simple: bool | None = None
    irretractable: bool | None = None
    nilpotent_group: bool | None = None
    squaring_cycle_type: tuple[int, ...] | None = None
    group_order: int | Callable[[int], bool] | None = None

    def matches(self, X: CycleSet) -> bool:
        if self.indecomposable is not None and X.is_indecomposable != self.indecomposable:
            return False
        if self.latin is not None and X.is_latin != self.latin:
            return False
        if self.irretractable is not None and X.is_irretractable != self.irretractable:
            return False
        if self.squaring_cycle_type is not None:
            if cycle_type(X.squaring_map) != tuple(
                sorted(self.squaring_cycle_type, reverse=True)
            ):
                return False
        if self.group_order is not None:
            order = X.perm_group.order
            if callable(self.group_order):
                if not self.group_order(order):
                    return False
            elif order != self.group_order:
                return False
        if self.nilpotent_group is not None and X.perm_group.is_nilpotent != self.nilpotent_group:
            return False
        if self.simple is not None and X.is_simple != self.simple:
            return False
        return True

    def describe(self) -> dict:
        out: dict = {}
        for name in (
            "indecomposable",
            "latin",
            "simple",
            "irretractable",
            "nilpotent_group",
        ):
            v = getattr(self, name)
            if v is not None:
                out[name] = v
        if self.squaring_cycle_type is not None:
            out["squaring_cycle_type"] = list(self.squaring_cycle_type)
        if self.group_order is not None:
            out["group_order"] = (
                getattr(self.group_order, "__name__", "predicate")
                if callable(self.group_order)
                else self.group_order
            )
        return out


@dataclass(frozen=True)
class Census:
    """Deduplicated enumeration result.  ``representatives`` are canonical
    tables, sorted; ``elapsed`` is informational and excluded from the
    byte-level identity of the census."""

    n: int
    filter_desc: tuple[tuple[str, object], ...]
    representatives: tuple[Table, ...]
    engine_version: str
    elapsed: float = field(compare=False)

    @property
    def count(self) -> int:
        return len(self.representatives)

    def cycle_sets(self) -> tuple[CycleSet, ...]:
        return tuple(CycleSet(t) for t in self.representatives)

    def canonical_bytes(self) -> bytes:
        payload = {
            "n": self.n,
            "filter": {k: v for k, v in self.filter_desc},
            "count": self.count,
            "representatives": [
                [list(row) for row in t] for t in self.representatives
            ],
            "engine_version": self.engine_version,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()


def _partitions(n: int, largest: int | None = None) -> Iterable[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    if largest is None:
        largest = n
    for part in range(min(n, largest), 0, -1):
        for rest in _partitions(n - part, part):
            yield (part,) + rest


def _rep_with_marked_cycle(parts: Sequence[int], marked: int, n: int) -> Perm:
    """Permutation with cycle type ``parts`` whose cycle through 0 has length
    ``marked``; cycles laid out on consecutive points, largest first after
    the marked one."""
    rest = list(parts)
    rest.remove(marked)
    rest.sort(reverse=True)
    images = list(range(n))
    start = 0
    for length in [marked] + rest:
        for i in range(length):
            images[start + i] = start + (i + 1) % length
        start += length
    return tuple(images)


def first_row_representatives(n: int) -> tuple[Perm, ...]:
    """One candidate first row per (cycle type, length of the cycle through
    point 0).  Any table can be relabeled so that its row 0 is one of these,
    so searching only these first rows loses no isomorphism class."""
    out = []
    for parts in _partitions(n):
        for marked in sorted(set(parts)):
            out.append(_rep_with_marked_cycle(parts, marked, n))
    return tuple(sorted(set(out)))


def _diagonal_stabilizer(n: int, diagonal: Perm) -> tuple[Perm, ...]:
    """Relabelings that fix point 0 and commute with ``diagonal``.  Relabeling
    a table by one of these keeps its diagonal and keeps row 0 in place, so
    the group permutes the fixed-diagonal tables of each isomorphism class."""
    out = []
    for phi in permutations(range(n)):
        if phi[0] != 0:
            continue
        if all(phi[diagonal[x]] == diagonal[phi[x]] for x in range(n)):
            out.append(phi)
    return tuple(out)


def _slice_first_rows(n: int, diagonal: Perm) -> tuple[Perm, ...]:
    """Row-0 candidates for a fixed-diagonal search, one per conjugation
    orbit of the diagonal stabilizer.  For any table in the slice, conjugating
    by the stabilizer element that canonicalizes its row 0 gives an isomorphic
    table still in the slice whose row 0 is the chosen representative, so the
    restriction loses no isomorphism class."""
    stab = _diagonal_stabilizer(n, diagonal)
    reps: list[Perm] = []
    seen: set[Perm] = set()
    for p in permutations(range(n)):
        if p[0] != diagonal[0] or p in seen:
            continue
        reps.append(p)
        for phi in stab:
            q = [0] * n
            for i in range(n):
                q[phi[i]] = phi[p[i]]
            seen.add(tuple(q))
    return tuple(reps)


def _search(
    n: int,
    prefix: Sequence[Perm],
    emit: Callable[[Table], None],
    first_rows: Sequence[Perm] | None = None,
    diagonal: Perm | None = None,
    cancel=None,
    depth_limit: int | None = None,
) -> None:
    """Backtracking core.  ``prefix`` pins the first rows (empty for a full
    search); ``first_rows`` restricts candidates for row 0; ``diagonal``
    constrains every row x to map x to diagonal[x].  With ``depth_limit``
    set, the search stops as soon as the first depth_limit rows are known
    and emits just those rows (the work-splitting mode)."""
    all_perms = tuple(permutations(range(n)))
    if diagonal is not None:
        by_level = tuple(
            tuple(p for p in all_perms if p[x] == diagonal[x]) for x in range(n)
        )
    else:
        by_level = None

    rows: list[Perm | None] = [None] * n
    diag_used = [False] * n
    pending: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    counter = [0]

    def force(y: int, q: Perm, trail: list, queue: list) -> bool:
        if diagonal is not None and q[y] != diagonal[y]:
            return False
        v = q[y]
        if diag_used[v]:
            return False
        rows[y] = q
        trail.append((0, y))
        diag_used[v] = True
        trail.append((1, v))
        queue.append(y)
        return True

    def pair(x: int, j: int, trail: list, queue: list) -> bool:
        rx = rows[x]
        rj = rows[j]
        a = rx[j]
        b = rj[x]
        ra = rows[a]
        rb = rows[b]
        if ra is not None:
            if rb is not None:
                for i in range(n):
                    if ra[rx[i]] != rb[rj[i]]:
                        return False
                return True
            q = [0] * n
            for i in range(n):
                q[rj[i]] = ra[rx[i]]
            return force(b, tuple(q), trail, queue)
        if rb is not None:
            q = [0] * n
            for i in range(n):
                q[rx[i]] = rb[rj[i]]
            return force(a, tuple(q), trail, queue)
        pending[a].append((x, j))
        trail.append((2, a))
        return True

    def place(x: int, p: Perm, trail: list) -> bool:
        queue: list[int] = []
        if not force(x, p, trail, queue):
            return False
        qi = 0
        while qi < len(queue):
            r = queue[qi]
            qi += 1
            for j in range(n):
                if j == r or rows[j] is None:
                    continue
                if not pair(r, j, trail, queue):
                    return False
            for px, pj in pending[r]:
                if not pair(px, pj, trail, queue):
                    return False
        return True

    def undo(trail: list) -> None:
        for kind, v in reversed(trail):
            if kind == 0:
                rows[v] = None
            elif kind == 1:
                diag_used[v] = False
            else:
                pending[v].pop()

    def extend(d: int) -> None:
        counter[0] += 1
        if cancel is not None and counter[0] % 512 == 0 and cancel.is_set():
            raise SearchCancelled
        while d < n and rows[d] is not None:
            d += 1
        if depth_limit is not None and d >= depth_limit:
            emit(tuple(rows[:depth_limit]))  # type: ignore[arg-type]
            return
        if d == n:
            emit(tuple(rows))  # type: ignore[arg-type]
            return
        if d == 0 and first_rows is not None:
            cands: Sequence[Perm] = first_rows
        elif by_level is not None:
            cands = by_level[d]
        else:
            cands = all_perms
        for p in cands:
            trail: list = []
            if place(d, p, trail):
                extend(d + 1)
            undo(trail)

    # replay the pinned prefix, tolerating rows it already forced
    trail: list = []
    ok = True
    for i, p in enumerate(prefix):
        if rows[i] is not None:
            if rows[i] != p:
                ok = False
                break
            continue
        if not place(i, p, trail):
            ok = False
            break
    if ok:
        extend(0)
    undo(trail)


def split_work(
    n: int, prefix_depth: int, symmetry_breaking: bool = True
) -> tuple[tuple[Perm, ...], ...]:
    """Consistent row prefixes of the given depth.  Searching each prefix
    independently and merging the deduplicated results reproduces the
    unsplit search: prefixes are mutually exclusive and jointly cover it."""
    if prefix_depth >= n:
        raise ValueError("prefix depth must be below n")
    if prefix_depth == 0:
        return ((),)
    first = first_row_representatives(n) if symmetry_breaking else None
    prefixes: list[tuple[Perm, ...]] = []
    _search(
        n,
        (),
        prefixes.append,  # type: ignore[arg-type]
        first_rows=first,
        depth_limit=prefix_depth,
    )
    return tuple(prefixes)


def _canon_emit_factory(out: set, cancel=None) -> Callable[[Table], None]:
    # canon takes a plain callable, not an Event
    poll = cancel.is_set if cancel is not None else None

    def emit(t: Table) -> None:
        out.add(canon.canonical_form(t, cancel=poll))

    return emit


def _census_task(args: tuple) -> list[Table]:
    n, prefix, first_rows, diagonal = args
    out: set[Table] = set()
    _search(
        n,
        prefix,
        _canon_emit_factory(out),
        first_rows=first_rows,
        diagonal=diagonal,
    )
    return sorted(out)


def enumerate_cycle_sets(
    n: int,
    filt: EnumerationFilter | None = None,
    *,
    symmetry_breaking: bool = True,
    jobs: int = 1,
    diagonal: Perm | None = None,
    cancel=None,
    progress: Callable[[str], None] | None = None,
) -> Census:
    """Census of all cycle sets of size n up to isomorphism, filtered."""
    if n < 1:
        raise ValueError("size must be >= 1")
    cap = size_cap()
    if n > cap:
        raise ValueError(
            f"size {n} exceeds the enumeration cap {cap} (set {MAX_N_ENV} to raise it)"
        )
    if diagonal is not None and len(diagonal) != n:
        raise ValueError("diagonal constraint has wrong degree")
    filt = filt or EnumerationFilter()
    start = time.monotonic()

    if not symmetry_breaking:
        first_rows = None
    elif diagonal is None:
        first_rows = first_row_representatives(n)
    else:
        first_rows = _slice_first_rows(n, diagonal)

    canon_set: set[Table] = set()
    if jobs <= 1:
        _search(
            n,
            (),
            _canon_emit_factory(canon_set, cancel=cancel),
            first_rows=first_rows,
            diagonal=diagonal,
            cancel=cancel,
        )
    else:
        if first_rows is not None:
            starts: Sequence[Perm] = first_rows
        elif diagonal is not None:
            starts = tuple(
                p for p in permutations(range(n)) if p[0] == diagonal[0]
            )
        else:
            starts = tuple(permutations(range(n)))
        tasks = [(n, (p,), None, diagonal) for p in starts]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            done = 0
            for part in pool.map(_census_task, tasks):
                canon_set.update(part)
                done += 1
                if progress is not None:
                    progress(f"task {done}/{len(tasks)} merged")

    for t in canon_set:
        validate_table(t)
    reps = [CycleSet(t) for t in sorted(canon_set)]
    kept = tuple(X.table for X in reps if filt.matches(X))
    return Census(
        n=n,
        filter_desc=tuple(sorted(filt.describe().items())),
        representatives=kept,
        engine_version=ENGINE_VERSION,
        elapsed=time.monotonic() - start,
    )


def scan_cycle_sets(
    n: int,
    visit: Callable[[Table], None],
    *,
    symmetry_breaking: bool = True,
    diagonal: Perm | None = None,
    cancel=None,
) -> int:
    """Stream every completed table of the search to ``visit`` without
    canonicalizing or deduplicating.  With symmetry breaking on, at least one
    table of every isomorphism class (within the optional diagonal slice) is
    visited, though a class may be seen many times.  This is the tool of
    choice when the property being checked is isomorphism-invariant and the
    size makes canonical labeling the dominant cost of a full census.
    Exceptions raised by ``visit`` abort the scan and propagate.  Returns the
    number of tables visited."""
    if n < 1:
        raise ValueError("size must be >= 1")
    cap = size_cap()
    if n > cap:
        raise ValueError(
            f"size {n} exceeds the enumeration cap {cap} (set {MAX_N_ENV} to raise it)"
        )
    if diagonal is not None and len(diagonal) != n:
        raise ValueError("diagonal constraint has wrong degree")

    if not symmetry_breaking:
        first_rows = None
    elif diagonal is None:
        first_rows = first_row_representatives(n)
    else:
        first_rows = _slice_first_rows(n, diagonal)

    count = 0

    def emit(t: Table) -> None:
        nonlocal count
        count += 1
        visit(t)

    _search(
        n,
        (),
        emit,
        first_rows=first_rows,
        diagonal=diagonal,
        cancel=cancel,
    )
    return count


# ---------------------------------------------------------------------------
# independent brute-force oracle


def _naive_valid(t: Sequence[Perm], n: int) -> bool:
    for x in range(n):
        for y in range(n):
            txy = t[x][y]
            tyx = t[y][x]
            for z in range(n):
                if t[txy][t[x][z]] != t[tyx][t[y][z]]:
                    return False
    return len({t[x][x] for x in range(n)}) == n


def _naive_relabel(t: Sequence[Perm], rho: Perm, inv: Perm, n: int) -> Table:
    return tuple(
        tuple(rho[t[inv[i]][inv[j]]] for j in range(n)) for i in range(n)
    )


def _naive_canonical(t: Sequence[Perm], perms: Sequence[Perm], n: int) -> Table:
    best = None
    for rho in perms:
        inv = [0] * n
        for i, v in enumerate(rho):
            inv[v] = i
        cand = _naive_relabel(t, rho, tuple(inv), n)
        if best is None or cand < best:
            best = cand
    return best  # type: ignore[return-value]


def brute_force_census(n: int, filt: EnumerationFilter | None = None) -> Census:
    """Scan every tuple of row permutations and keep the valid tables,
    deduplicated by pairwise relabeling tests.  Independent of the main
    engine: element-form cycloid check, no propagation, no symmetry
    breaking.  Only feasible for n <= 4."""
    if n < 1:
        raise ValueError("size must be >= 1")
    if n > 4:
        raise ValueError("brute-force oracle is limited to n <= 4")
    filt = filt or EnumerationFilter()
    start = time.monotonic()
    perms = tuple(permutations(range(n)))
    valid = [t for t in product(perms, repeat=n) if _naive_valid(t, n)]

    invs = []
    for rho in perms:
        inv = [0] * n
        for i, v in enumerate(rho):
            inv[v] = i
        invs.append(tuple(inv))

    reps: list[Table] = []
    for t in valid:
        if not any(
            any(
                _naive_relabel(t, rho, invs[k], n) == r
                for k, rho in enumerate(perms)
            )
            for r in reps
        ):
            reps.append(tuple(tuple(row) for row in t))
    canon_reps = sorted(_naive_canonical(t, perms, n) for t in reps)
    kept = tuple(
        t for t in canon_reps if filt.matches(CycleSet(t))
    )
    return Census(
        n=n,
        filter_desc=tuple(sorted(filt.describe().items())),
        representatives=kept,
        engine_version="cycleset-brute/1",
        elapsed=time.monotonic() - start,
    )
