"""Symmetric-group representation machinery built on tabloids and polytabloids.

The decomposition used everywhere downstream: the permutation module of
tabloids with shape ``mu`` splits into one copy of the irreducible module
``S^lambda`` per semistandard tableau of shape ``lambda`` and content ``mu``.
The generator of the copy attached to a tableau ``tau`` is obtained by acting
with ``tau`` on the signed column-stabilizer sum of the row-major tableau.

Tabloids are tuples of sorted row tuples; rows keep their positional index
(so equal-length rows are *not* interchangeable), and empty rows are kept so
row indices stay aligned with content components.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cache
from typing import Iterator

from .combinatorics import (
    Partition,
    SetPartition,
    Tableau,
    integer_partitions,
    hook_length_count,
    semistandard_tableaux,
    set_partitions,
)

Tabloid = tuple[tuple[int, ...], ...]
TabloidVector = dict[Tabloid, int]
WordVector = dict[tuple, int]


def canonical_tableau(shape: Partition) -> Tableau:
    """Row-major filling with 1..n; the fixed generator tableau of its shape."""
    rows = []
    nxt = 1
    for length in shape:
        rows.append(tuple(range(nxt, nxt + length)))
        nxt += length
    return tuple(rows)


def _perm_sign(seq: tuple[int, ...], sorted_seq: tuple[int, ...]) -> int:
    """Sign of the permutation taking sorted_seq to seq."""
    index = {v: i for i, v in enumerate(sorted_seq)}
    perm = [index[v] for v in seq]
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def column_stabilizer(tableau: Tableau) -> Iterator[tuple[dict[int, int], int]]:
    """All (entry permutation, sign) pairs of the column stabilizer.

    The tableau must have distinct entries.  Yields one mapping per element of
    the product of the column symmetric groups.
    """
    if not tableau:
        yield {}, 1
        return
    width = len(tableau[0])
    columns = []
    for c in range(width):
        col = tuple(row[c] for row in tableau if len(row) > c)
        columns.append(col)
    pools = [list(itertools.permutations(col)) for col in columns]
    for arrangement in itertools.product(*pools):
        mapping: dict[int, int] = {}
        sign = 1
        for col, perm in zip(columns, arrangement):
            sign *= _perm_sign(perm, col)
            for src, dst in zip(col, perm):
                mapping[src] = dst
        yield mapping, sign


def as_tabloid(tableau: Tableau) -> Tabloid:
    return tuple(tuple(sorted(row)) for row in tableau)


@cache
def polytabloid(shape: Partition) -> TabloidVector:
    """Signed column-stabilizer sum of the canonical tableau of ``shape``."""
    t = canonical_tableau(shape)
    acc: dict[Tabloid, int] = {}
    for mapping, sign in column_stabilizer(t):
        tab = as_tabloid(tuple(tuple(mapping[v] for v in row) for row in t))
        acc[tab] = acc.get(tab, 0) + sign
    return {tab: c for tab, c in acc.items() if c != 0}


def act_on_tabloid(tau: Tableau, tabloid: Tabloid, n_rows: int) -> Tabloid:
    """Send a content-(1^n) tabloid into the module of shape = content(tau).

    Row ``a`` of the result collects the values whose cell in the (sorted-row
    representative of the) tabloid carries entry ``a`` in ``tau``.  Only the
    sum over all row-equivalents of ``tau`` is canonical; callers always
    aggregate over ``row_equivalents(tau)``.
    """
    rows: list[list[int]] = [[] for _ in range(n_rows)]
    for r, row in enumerate(tabloid):
        for c, value in enumerate(row):
            rows[tau[r][c] - 1].append(value)
    return tuple(tuple(sorted(row)) for row in rows)


def row_equivalents(tau: Tableau) -> list[Tableau]:
    """All distinct tableaux obtained by permuting entries inside rows."""
    per_row = [sorted(set(itertools.permutations(row))) for row in tau]
    return [tuple(combo) for combo in itertools.product(*per_row)]


def generator_vector(tau: Tableau, shape: Partition, n_rows: int) -> TabloidVector:
    """The module generator attached to ``tau``: tau acting on the polytabloid.

    ``shape`` is the shape of ``tau`` (a partition of n); the result lives in
    the tabloid module whose row sizes are the content of ``tau``, padded to
    ``n_rows`` rows.
    """
    base = polytabloid(shape)
    acc: dict[Tabloid, int] = {}
    for tau_prime in row_equivalents(tau):
        for tabloid, sign in base.items():
            image = act_on_tabloid(tau_prime, tabloid, n_rows)
            acc[image] = acc.get(image, 0) + sign
    return {tab: c for tab, c in acc.items() if c != 0}


@cache
def slot_label_family(
    alphabet: int, n_slots: int
) -> dict[Partition, list[tuple[Tableau, dict[tuple[int, ...], int]]]]:
    """Decomposition data for assigning ``n_slots`` distinct labels out of
    ``alphabet`` many.

    The tabloid module here has an L-shape: one row of unused labels plus one
    singleton row per slot.  For every partition ``lam`` of ``alphabet`` and
    semistandard tableau ``tau`` of that shape with the L-shaped content, the
    entry maps each assignment (a tuple of 0-based labels, one per slot) to an
    integer coefficient.  Families with no tableaux are omitted.
    """
    if n_slots > alphabet:
        raise ValueError("more slots than labels")
    content = (alphabet - n_slots,) + (1,) * n_slots
    out: dict[Partition, list[tuple[Tableau, dict[tuple[int, ...], int]]]] = {}
    for lam in integer_partitions(alphabet):
        entries = []
        for tau in semistandard_tableaux(lam, content):
            vec = generator_vector(tau, lam, n_rows=n_slots + 1)
            assignments: dict[tuple[int, ...], int] = {}
            for tabloid, coeff in vec.items():
                key = tuple(tabloid[s + 1][0] - 1 for s in range(n_slots))
                assignments[key] = assignments.get(key, 0) + coeff
            assignments = {a: c for a, c in assignments.items() if c != 0}
            if assignments:
                entries.append((tau, assignments))
        if entries:
            out[lam] = entries
    return out


SkLabel = tuple[SetPartition, Tableau]


def sk_representative_set(
    k: int, t: int
) -> dict[Partition, list[tuple[SkLabel, WordVector]]]:
    """Representative set for relabeling ``k`` symbols acting on words ``[k]^t``.

    Words are tuples of 0-based symbols.  For each partition of ``k``, the
    block lists one vector per (set partition P of positions, semistandard
    tableau) pair; the vector is supported on the words whose equal-positions
    pattern is exactly P.
    """
    blocks: dict[Partition, list[tuple[SkLabel, WordVector]]] = {}
    for P in set_partitions(t, min(k, t)):
        family = slot_label_family(k, len(P))
        for lam, entries in family.items():
            for tau, assignments in entries:
                vec: WordVector = {}
                for labels, coeff in assignments.items():
                    word = [0] * t
                    for part, label in zip(P, labels):
                        for pos in part:
                            word[pos] = label
                    vec[tuple(word)] = coeff
                blocks.setdefault(lam, []).append(((P, tau), vec))
    return blocks


def specht_dimension_rank(shape: Partition) -> int:
    """Rank of the span of all standard polytabloids; equals the hook count."""
    n = sum(shape)
    vectors = []
    for tau in semistandard_tableaux(shape, (1,) * n):
        acc: dict[Tabloid, int] = {}
        for mapping, sign in column_stabilizer(tau):
            tab = as_tabloid(tuple(tuple(mapping[v] for v in row) for row in tau))
            acc[tab] = acc.get(tab, 0) + sign
        vectors.append({t_: c for t_, c in acc.items() if c != 0})
    return sparse_rank(vectors)


def sparse_rank(vectors: list[dict]) -> int:
    """Exact rank of sparse rational vectors via Gaussian elimination."""
    pivots: dict[object, dict] = {}
    rank = 0
    for vec in vectors:
        row = {key: Fraction(c) for key, c in vec.items() if c}
        while row:
            lead = min(row)
            if lead in pivots:
                pivot = pivots[lead]
                factor = row[lead] / pivot[lead]
                for key, value in pivot.items():
                    new = row.get(key, Fraction(0)) - factor * value
                    if new:
                        row[key] = new
                    else:
                        row.pop(key, None)
            else:
                pivots[lead] = row
                rank += 1
                break
    return rank


def block_dimension_identity(k: int, t: int) -> bool:
    """Check sum of multiplicity x irreducible-dimension over blocks = k^t."""
    blocks = sk_representative_set(k, t)
    total = sum(len(vs) * hook_length_count(lam) for lam, vs in blocks.items())
    return total == k**t
