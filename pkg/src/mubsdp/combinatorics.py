"""Enumeration primitives: partitions, set partitions, tableaux, counting sequences.

Conventions used throughout the package:

* An integer partition is a tuple of weakly decreasing positive ints; the
  empty partition is ``()``.
* A set partition of ``{0, ..., n-1}`` is a tuple of tuples: parts are sorted
  by their minimum, elements inside a part ascending.  This canonical form is
  unique per partition.
* A tableau is a tuple of row tuples with 1-based entry values.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from math import comb, factorial
from typing import Iterator

Partition = tuple[int, ...]
SetPartition = tuple[tuple[int, ...], ...]
Tableau = tuple[tuple[int, ...], ...]


def integer_partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in descending lexicographic order.

    The first element is always ``(n,)``; ``n == 0`` gives ``[()]``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")

    @cache
    def gen(remaining: int, max_part: int) -> tuple[Partition, ...]:
        if remaining == 0:
            return ((),)
        out = []
        for first in range(min(remaining, max_part), 0, -1):
            for rest in gen(remaining - first, first):
                out.append((first,) + rest)
        return tuple(out)

    return list(gen(n, n))


def iter_set_partitions(n: int, max_parts: int) -> Iterator[SetPartition]:
    """Set partitions of ``{0,...,n-1}`` with at most ``max_parts`` parts.

    Generated via restricted growth strings, so parts come out sorted by
    minimum element with ascending contents (the canonical form).
    """
    if n == 0:
        yield ()
        return

    parts: list[list[int]] = []

    def extend(i: int) -> Iterator[SetPartition]:
        if i == n:
            yield tuple(tuple(p) for p in parts)
            return
        for p in parts:
            p.append(i)
            yield from extend(i + 1)
            p.pop()
        if len(parts) < max_parts:
            parts.append([i])
            yield from extend(i + 1)
            parts.pop()

    yield from extend(0)


def set_partitions(n: int, max_parts: int) -> list[SetPartition]:
    return list(iter_set_partitions(n, max_parts))


def set_partitions_of(elements: tuple[int, ...], max_parts: int) -> list[SetPartition]:
    """Canonical set partitions of an arbitrary ascending element tuple."""
    out = []
    for p in iter_set_partitions(len(elements), max_parts):
        out.append(tuple(tuple(elements[i] for i in part) for part in p))
    return out


@dataclass(frozen=True)
class OrbitClass:
    """Orbit of words in ``([d] x [k])^t`` under relabeling bases and elements.

    ``P`` partitions the positions by assigned basis; ``Q[i]`` refines part
    ``P[i]`` by assigned basis element.
    """

    P: SetPartition
    Q: tuple[SetPartition, ...]

    def word(self) -> tuple[tuple[int, int], ...]:
        """The canonical word of this class: letters are (basis, element) pairs."""
        n = sum(len(p) for p in self.P)
        letters: list[tuple[int, int]] = [(-1, -1)] * n
        for b, sub in enumerate(self.Q):
            for e, cell in enumerate(sub):
                for pos in cell:
                    letters[pos] = (b, e)
        return tuple(letters)


def orbit_classes(t: int, k: int, d: int) -> list[OrbitClass]:
    """All orbits of ``([d] x [k])^t`` under basis/element relabeling.

    One class per pair (P, Q); order is deterministic: P in restricted-growth
    order, then the refinements Q_i lexicographically per part.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    out = []
    for P in iter_set_partitions(t, min(k, t)):
        per_part = [set_partitions_of(part, min(d, len(part))) for part in P]
        stack: list[tuple[SetPartition, ...]] = [()]
        for options in per_part:
            stack = [chosen + (q,) for chosen in stack for q in options]
        for Q in stack:
            out.append(OrbitClass(P, Q))
    return out


def classify_word(word: tuple[tuple[int, int], ...]) -> OrbitClass:
    """The orbit class of a word of (basis, element) letters."""
    by_basis: dict[int, list[int]] = {}
    for pos, (b, _) in enumerate(word):
        by_basis.setdefault(b, []).append(pos)
    parts = sorted(by_basis.values(), key=lambda p: p[0])
    Q = []
    for positions in parts:
        by_elem: dict[int, list[int]] = {}
        for pos in positions:
            by_elem.setdefault(word[pos][1], []).append(pos)
        Q.append(tuple(tuple(c) for c in sorted(by_elem.values(), key=lambda c: c[0])))
    return OrbitClass(tuple(tuple(p) for p in parts), tuple(Q))


def semistandard_tableaux(shape: Partition, content: tuple[int, ...]) -> list[Tableau]:
    """All semistandard tableaux of the given shape and content composition.

    ``content[a-1]`` is the number of entries equal to ``a``; zero components
    are allowed (the value simply does not occur).  Returns ``[()]`` for the
    empty shape with empty/zero content, ``[]`` when none exist.
    """
    n = sum(shape)
    if n != sum(content):
        raise ValueError("shape and content have different weights")
    if n == 0:
        return [()]

    rows = len(shape)
    remaining = list(content)
    grid = [[0] * shape[r] for r in range(rows)]
    out: list[Tableau] = []

    def fill(r: int, c: int) -> None:
        if r == rows:
            out.append(tuple(tuple(row) for row in grid))
            return
        nr, nc = (r, c + 1) if c + 1 < shape[r] else (r + 1, 0)
        lo = 1
        if c > 0:
            lo = max(lo, grid[r][c - 1])
        if r > 0 and len(grid[r - 1]) > c:
            lo = max(lo, grid[r - 1][c] + 1)
        for v in range(lo, len(remaining) + 1):
            if remaining[v - 1] == 0:
                continue
            remaining[v - 1] -= 1
            grid[r][c] = v
            fill(nr, nc)
            remaining[v - 1] += 1
        grid[r][c] = 0

    fill(0, 0)
    return out


@cache
def bell_number(n: int) -> int:
    """Number of set partitions of an n-element set: B = 1, 1, 2, 5, 15, ..."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    return sum(comb(n - 1, j) * bell_number(j) for j in range(n))


def refinement_pair_count(n: int) -> int:
    """Number of pairs (P, P') with P' a refinement of the set partition P.

    Counted by direct enumeration over set partitions; meant for desk-scale n.
    The sequence starts 1, 1, 3, 12, 60, 358, 2471.
    """
    total = 0
    for P in iter_set_partitions(n, max(n, 1)):
        prod = 1
        for part in P:
            prod *= bell_number(len(part))
        total += prod
    return total


def hook_length_count(shape: Partition) -> int:
    """Number of standard Young tableaux of ``shape`` via the hook length formula."""
    n = sum(shape)
    if n == 0:
        return 1
    prod = 1
    for r, row_len in enumerate(shape):
        for c in range(row_len):
            arm = row_len - c - 1
            leg = sum(1 for rr in shape[r + 1 :] if rr > c)
            prod *= arm + leg + 1
    return factorial(n) // prod


def multinomial(n: int, parts: tuple[int, ...]) -> int:
    if sum(parts) != n:
        raise ValueError("parts must sum to n")
    out = factorial(n)
    for p in parts:
        out //= factorial(p)
    return out
