"""Lex-minimal canonical labeling for square operation tables.

The canonical form of a table ``t`` over {0..n-1} is the lexicographically
least row-major flattening of ``rho . t . rho^-1`` over all relabelings
``rho``.  Candidates are scanned with an early-exit comparison: a relabeling
is abandoned at the first cell where it is strictly worse than the incumbent,
so the full table is materialized only for genuine improvements.  This keeps
the worst case (highly symmetric tables, where branchy searches degenerate)
at a flat n! * small cost, which is fine at the degrees used here.
"""

from __future__ import annotations

from itertools import permutations
from typing import Callable, Sequence

from .perm import Perm, inverse

Table = tuple[tuple[int, ...], ...]


class SearchCancelled(RuntimeError):
    """Raised when a cooperative cancellation callback fires."""


def relabel_table(table: Sequence[Sequence[int]], rho: Sequence[int]) -> Table:
    """Relabel points of a table: entry (i, j) becomes rho[t[inv(i)][inv(j)]]."""
    inv = inverse(rho)
    n = len(rho)
    return tuple(
        tuple(rho[table[inv[i]][inv[j]]] for j in range(n)) for i in range(n)
    )


def canonical_relabeling(
    table: Sequence[Sequence[int]],
    cancel: Callable[[], bool] | None = None,
) -> tuple[Perm, Table]:
    """Return (rho, canonical table) with the lex-least relabeled flattening."""
    n = len(table)
    rows = tuple(tuple(r) for r in table)
    best_rho = tuple(range(n))
    best = rows
    best_flat = [v for row in rows for v in row]
    label = [0] * n
    step = 0
    for pre in permutations(range(n)):
        # pre[i] is the original point that receives label i
        step += 1
        if cancel is not None and step % 1024 == 0 and cancel():
            raise SearchCancelled("canonical labeling cancelled")
        for new, old in enumerate(pre):
            label[old] = new
        pos = 0
        verdict = 0
        for i in range(n):
            row = rows[pre[i]]
            for j in range(n):
                v = label[row[pre[j]]]
                b = best_flat[pos]
                if v != b:
                    verdict = v - b
                    break
                pos += 1
            if verdict:
                break
        if verdict < 0:
            best_rho = tuple(label)
            best = relabel_table(rows, best_rho)
            best_flat = [v for row in best for v in row]
    return best_rho, best


def canonical_form(
    table: Sequence[Sequence[int]], cancel: Callable[[], bool] | None = None
) -> Table:
    return canonical_relabeling(table, cancel)[1]
