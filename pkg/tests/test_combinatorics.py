import itertools
from math import factorial

import pytest

from mubsdp.combinatorics import (
    OrbitClass,
    bell_number,
    classify_word,
    hook_length_count,
    integer_partitions,
    orbit_classes,
    refinement_pair_count,
    semistandard_tableaux,
    set_partitions,
)


def brute_partitions(n):
    """Independent oracle: partitions via exhaustive composition filtering."""
    found = set()

    def rec(remaining, prefix):
        if remaining == 0:
            found.add(tuple(prefix))
            return
        start = prefix[-1] if prefix else remaining
        for part in range(min(start, remaining), 0, -1):
            rec(remaining - part, prefix + [part])

    rec(n, [])
    return found


def test_integer_partitions_small():
    assert integer_partitions(1) == [(1,)]
    assert integer_partitions(3) == [(3,), (2, 1), (1, 1, 1)]
    assert len(integer_partitions(6)) == 11


def test_integer_partitions_exhaustive_and_order():
    for n in range(1, 9):
        parts = integer_partitions(n)
        assert set(parts) == brute_partitions(n)
        assert parts == sorted(parts, reverse=True)
        assert parts[0] == (n,)


def brute_set_partition_count(n, max_parts):
    """Independent oracle: count label-vectors up to relabeling."""
    seen = set()
    for labels in itertools.product(range(n), repeat=n):
        relabel = {}
        canon = tuple(relabel.setdefault(x, len(relabel)) for x in labels)
        if len(set(canon)) <= max_parts:
            seen.add(canon)
    return len(seen)


def test_set_partitions_counts():
    assert len(set_partitions(3, 3)) == 5
    assert set_partitions(3, 1) == [((0, 1, 2),)]
    assert len(set_partitions(4, 2)) == 8
    for n in range(1, 6):
        for max_parts in range(1, n + 1):
            assert len(set_partitions(n, max_parts)) == brute_set_partition_count(n, max_parts)


def test_set_partitions_canonical_form():
    for p in set_partitions(5, 5):
        mins = [part[0] for part in p]
        assert mins == sorted(mins)
        for part in p:
            assert list(part) == sorted(part)


def test_bell_numbers_match_enumeration():
    for n in range(9):
        assert bell_number(n) == len(set_partitions(n, max(n, 1)))
    assert bell_number(8) == 4140
    assert bell_number(9) == 21147


def test_refinement_pair_count_values():
    assert [refinement_pair_count(n) for n in range(7)] == [1, 1, 3, 12, 60, 358, 2471]


def test_orbit_classes_counts():
    assert len(orbit_classes(1, 3, 3)) == 1
    assert len(orbit_classes(2, 2, 2)) == 3
    assert len(orbit_classes(4, 4, 4)) == 60
    # caps bind when k or d is small
    assert len(orbit_classes(4, 1, 1)) == 1


def test_orbit_classes_match_refinement_counts():
    for t in range(1, 6):
        assert len(orbit_classes(t, t, t)) == refinement_pair_count(t)


def brute_word_orbits(t, k, d):
    """Independent oracle: orbits of ([d]x[k])^t under all relabelings."""
    orbits = set()
    for word in itertools.product(itertools.product(range(d), range(k)), repeat=t):
        bmap, emaps = {}, {}
        canon = []
        for e, b in word:
            nb = bmap.setdefault(b, len(bmap))
            ne = emaps.setdefault((nb, e), len([x for x in emaps if x[0] == nb]))
            canon.append((nb, ne))
        orbits.add(tuple(canon))
    return orbits


def test_orbit_classes_against_brute_force():
    for t, k, d in [(1, 2, 2), (2, 2, 2), (3, 2, 2), (2, 3, 2), (3, 3, 3)]:
        assert len(orbit_classes(t, k, d)) == len(brute_word_orbits(t, k, d))


def test_orbit_class_roundtrip():
    for t in range(1, 5):
        for k, d in [(2, 2), (3, 3), (4, 4), (2, 4), (4, 2)]:
            if t > 4:
                continue
            for cls in orbit_classes(t, k, d):
                assert classify_word(cls.word()) == cls


def test_orbit_class_word_within_caps():
    for cls in orbit_classes(3, 2, 2):
        word = cls.word()
        assert max(b for b, _ in word) < 2
        assert all(e < 2 for _, e in word)


def test_semistandard_tableaux_examples():
    k = 5
    one_row = semistandard_tableaux((k,), (k - 2, 1, 1))
    assert one_row == [((1, 1, 1, 2, 3),)]
    assert len(semistandard_tableaux((2, 1), (1, 1, 1))) == 2
    assert semistandard_tableaux((1, 1, 1), (2, 1, 0)) == []


def test_semistandard_tableaux_zero_content_components():
    # value 1 absent: fillings shift to 2, 3
    tabs = semistandard_tableaux((1, 1), (0, 1, 1))
    assert tabs == [((2,), (3,))]


def test_semistandard_rows_and_columns():
    for tab in semistandard_tableaux((3, 2, 1), (2, 2, 1, 1)):
        for row in tab:
            assert list(row) == sorted(row)
        for c in range(3):
            col = [row[c] for row in tab if len(row) > c]
            assert all(a < b for a, b in zip(col, col[1:]))


def test_hook_length_count():
    assert hook_length_count((4,)) == 1
    assert hook_length_count((2, 1)) == 2
    assert hook_length_count((3, 2)) == 5
    for n in range(1, 7):
        total = sum(hook_length_count(p) ** 2 for p in integer_partitions(n))
        assert total == factorial(n)


def test_hook_length_matches_standard_tableaux():
    for n in range(1, 7):
        for shape in integer_partitions(n):
            standard = semistandard_tableaux(shape, (1,) * n)
            assert hook_length_count(shape) == len(standard)
