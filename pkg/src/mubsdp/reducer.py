"""Moment-value engine: canonical words, substitution rules, variable discovery.

A word is a product of projector letters ``(basis, element)``.  The linear
functional being modeled is tracial and invariant under relabeling bases and,
per basis, elements; a word's value therefore only depends on its canonical
form (lexicographically smallest relabeled rotation in the graded order that
compares basis sequences before element sequences).

Values are rewritten through the projector relations:

1. adjacent letters in the same basis multiply to ``delta * letter``;
2. a basis occurring once integrates out, contributing ``1/d``;
3. an element occurring once inside a repeated basis is replaced through the
   resolution of identity, lowering the count of single elements;
4. ``x y x`` with the same outer letter contracts to ``x / d``;
5. ``x u x v x`` may swap ``u`` and ``v`` when that lowers the canonical form
   or exposes rule 4.

Normalization is folded in: the empty word evaluates to ``d`` and a single
letter to ``1``.  Words surviving all rules are the free moment variables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

Letter = tuple[int, int]
Word = tuple[Letter, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class CycleDetected(RuntimeError):
    """Raised when rewriting fails to make progress within the step budget."""


def grlex_key(word: Word) -> tuple:
    """Degree first, then the basis sequence, then the element sequence."""
    return (len(word), tuple(b for b, _ in word), tuple(e for _, e in word))


def graded_lex_less(w1: Word, w2: Word) -> bool:
    return grlex_key(w1) < grlex_key(w2)


def relabel_canonical(word: Word) -> Word:
    """Smallest relabeling of bases and per-basis elements, no rotation."""
    bmap: dict[int, int] = {}
    emaps: list[dict[int, int]] = []
    bs = []
    es = []
    for b, e in word:
        nb = bmap.setdefault(b, len(bmap))
        if nb == len(emaps):
            emaps.append({})
        em = emaps[nb]
        es.append(em.setdefault(e, len(em)))
        bs.append(nb)
    return tuple(zip(bs, es))


def canonicalize(word: Word) -> Word:
    """Trace-and-relabeling canonical form: minimum over all rotations.

    The greedy first-occurrence relabeling is exact per rotation because the
    graded order compares the whole basis sequence before any element, and
    element relabelings of distinct bases are independent.
    """
    n = len(word)
    if n == 0:
        return word
    best: tuple | None = None
    for s in range(n):
        bmap: dict[int, int] = {}
        emaps: list[dict[int, int]] = []
        bs = []
        es = []
        for p in range(n):
            b, e = word[s + p - n] if s + p >= n else word[s + p]
            nb = bmap.setdefault(b, len(bmap))
            if nb == len(emaps):
                emaps.append({})
            em = emaps[nb]
            es.append(em.setdefault(e, len(em)))
            bs.append(nb)
        key = (tuple(bs), tuple(es))
        if best is None or key < best:
            best = key
    return tuple(zip(best[0], best[1]))


def iter_canonical_words(n: int, k: int, d: int) -> Iterator[Word]:
    """All relabel-canonical words of length ``n``: one per word orbit.

    Bases appear in first-occurrence order bounded by ``k``; elements within
    each basis likewise bounded by ``d``.
    """
    if n == 0:
        yield ()
        return
    word: list[Letter] = []
    elem_counts: list[int] = []

    def rec(i: int) -> Iterator[Word]:
        if i == n:
            yield tuple(word)
            return
        n_bases = len(elem_counts)
        for b in range(min(n_bases + 1, k)):
            fresh_basis = b == n_bases
            if fresh_basis:
                elem_counts.append(0)
            e_limit = min(elem_counts[b] + 1, d)
            for e in range(e_limit):
                fresh_elem = e == elem_counts[b]
                if fresh_elem:
                    elem_counts[b] += 1
                word.append((b, e))
                yield from rec(i + 1)
                word.pop()
                if fresh_elem:
                    elem_counts[b] -= 1
            if fresh_basis:
                elem_counts.pop()

    yield from rec(0)


def iter_trace_representatives(n: int, k: int, d: int) -> Iterator[Word]:
    """One canonical word per trace class (rotation-minimal representatives)."""
    for word in iter_canonical_words(n, k, d):
        if canonicalize(word) == word:
            yield word


@dataclass(frozen=True)
class LinearForm:
    """Rational affine combination ``const + sum coeff * variable``."""

    const: Fraction = ZERO
    coeffs: tuple[tuple[Word, Fraction], ...] = ()

    @staticmethod
    def constant(value) -> "LinearForm":
        return LinearForm(Fraction(value), ())

    @staticmethod
    def variable(word: Word) -> "LinearForm":
        return LinearForm(ZERO, ((word, ONE),))

    def coeff_dict(self) -> dict[Word, Fraction]:
        return dict(self.coeffs)

    def is_constant(self) -> bool:
        return not self.coeffs

    def is_zero(self) -> bool:
        return self.const == 0 and not self.coeffs

    def scale(self, factor) -> "LinearForm":
        f = Fraction(factor)
        if f == 0:
            return LinearForm()
        return LinearForm(self.const * f, tuple((w, c * f) for w, c in self.coeffs))

    def __add__(self, other: "LinearForm") -> "LinearForm":
        acc = dict(self.coeffs)
        for w, c in other.coeffs:
            s = acc.get(w, ZERO) + c
            if s:
                acc[w] = s
            else:
                acc.pop(w, None)
        return LinearForm(self.const + other.const, tuple(sorted(acc.items(), key=lambda wc: grlex_key(wc[0]))))

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + other.scale(-1)

    def evaluate(self, values: dict[Word, float]) -> float:
        return float(self.const) + sum(float(c) * values[w] for w, c in self.coeffs)

    def substitute(self, assignments: dict[Word, "LinearForm"]) -> "LinearForm":
        """Replace variables by forms, repeatedly, until none of them remain."""
        form = self
        while any(w in assignments for w, _ in form.coeffs):
            out = LinearForm(form.const, ())
            for w, c in form.coeffs:
                if w in assignments:
                    out = out + assignments[w].scale(c)
                else:
                    out = out + LinearForm(ZERO, ((w, c),))
            form = out
        return form


def _form_from_terms(const: Fraction, acc: dict[Word, Fraction]) -> LinearForm:
    items = tuple(sorted(((w, c) for w, c in acc.items() if c), key=lambda wc: grlex_key(wc[0])))
    return LinearForm(const, items)


class MomentReducer:
    """Rewrites words to linear forms over irreducible moment variables.

    Results are memoized per canonical word; the variable registry grows as
    irreducible words are found and is shared by matrix assembly and the
    constraint sweep.
    """

    def __init__(self, d: int, k: int, step_limit: int = 10_000):
        if d < 2 or k < 2:
            raise ValueError("need d >= 2 and k >= 2")
        self.d = d
        self.k = k
        self.step_limit = step_limit
        self._memo: dict[Word, LinearForm] = {}
        self.variables: list[Word] = []
        self._steps = 0

    def reduce_word(self, word: Word) -> LinearForm:
        self._steps = 0
        return self._reduce(canonicalize(word))

    def _reduce(self, canon: Word) -> LinearForm:
        cached = self._memo.get(canon)
        if cached is not None:
            return cached
        self._steps += 1
        if self._steps > self.step_limit:
            raise CycleDetected(f"no progress after {self.step_limit} steps")
        result = self._apply_rules(canon)
        self._memo[canon] = result
        return result

    def _apply_rules(self, w: Word) -> LinearForm:
        n = len(w)
        d = self.d
        if n == 0:
            return LinearForm.constant(d)
        if n == 1:
            return LinearForm.constant(1)

        # rule 1: cyclically adjacent letters in the same basis
        for a in range(n):
            b1, e1 = w[a]
            nxt = a + 1 if a + 1 < n else 0
            b2, e2 = w[nxt]
            if b1 == b2:
                if e1 != e2:
                    return LinearForm()
                shorter = w[:nxt] + w[nxt + 1 :]
                return self._reduce(canonicalize(shorter))

        basis_positions: dict[int, list[int]] = {}
        for pos, (b, _) in enumerate(w):
            basis_positions.setdefault(b, []).append(pos)

        # rule 2: a basis occurring exactly once integrates out
        for pos, (b, _) in enumerate(w):
            if len(basis_positions[b]) == 1:
                shorter = w[:pos] + w[pos + 1 :]
                return self._reduce(canonicalize(shorter)).scale(Fraction(1, d))

        # rule 3: single element inside a repeated basis
        letter_counts: dict[Letter, int] = {}
        for letter in w:
            letter_counts[letter] = letter_counts.get(letter, 0) + 1
        singles = [lt for lt, cnt in letter_counts.items() if cnt == 1]
        if singles:
            b, e = max(singles)
            pos = w.index((b, e))
            present = {ee for bb, ee in w if bb == b}
            dropped = self._reduce(canonicalize(w[:pos] + w[pos + 1 :]))
            total = dropped
            for e2 in sorted(present - {e}):
                swapped = w[:pos] + ((b, e2),) + w[pos + 1 :]
                total = total - self._reduce(canonicalize(swapped))
            return total.scale(Fraction(1, 1 + d - len(present)))

        # rule 4: x y x with identical outer letter, cyclically
        if n >= 3:
            for a in range(n):
                p2 = a + 2 if a + 2 < n else a + 2 - n
                if w[a] == w[p2]:
                    p1 = a + 1 if a + 1 < n else 0
                    keep = [w[i] for i in range(n) if i not in (p1, p2)]
                    return self._reduce(canonicalize(tuple(keep))).scale(
                        Fraction(1, d)
                    )

        # rule 5: swap the two gaps between three equal letters when that
        # lowers the canonical form or exposes rule 4
        occurrences: dict[Letter, list[int]] = {}
        for pos, letter in enumerate(w):
            occurrences.setdefault(letter, []).append(pos)
        for letter, positions in occurrences.items():
            if len(positions) < 3:
                continue
            for p1, p2, p3 in itertools.combinations(positions, 3):
                u = w[p1 + 1 : p2]
                v = w[p2 + 1 : p3]
                if not u or not v:
                    continue
                swapped = w[: p1 + 1] + v + (letter,) + u + w[p3:]
                canon = canonicalize(swapped)
                if grlex_key(canon) < grlex_key(w) or _has_contraction(swapped):
                    return self._reduce(canon)

        self.variables.append(w)
        return LinearForm.variable(w)

    def discover_variables(self, degree: int) -> list[Word]:
        """Reduce every trace representative of exactly ``degree`` letters.

        Returns the irreducible variables found so far, smallest first.  All
        values of lower degree reachable through the rules are memoized as a
        side effect.
        """
        for word in iter_trace_representatives(degree, self.k, self.d):
            self.reduce_word(word)
        return sorted(self.variables, key=grlex_key)


def _has_contraction(w: Word) -> bool:
    """Does some rotation expose rule 4 (equal letters two apart)?"""
    n = len(w)
    if n < 3:
        return False
    for a in range(n):
        p2 = a + 2 if a + 2 < n else a + 2 - n
        if w[a] == w[p2]:
            return True
    return False


@dataclass(frozen=True)
class ConstraintRow:
    """A linear form required to vanish, with its generator provenance."""

    form: LinearForm
    provenance: str


@dataclass
class LinearSystem:
    """Row-echelon store over the moment variables plus a constant column."""

    pivots: dict[object, LinearForm] = field(default_factory=dict)
    contradiction: LinearForm | None = None

    @staticmethod
    def _lead(form: LinearForm):
        if form.coeffs:
            # pivot on the graded-lex largest variable
            return max((w for w, _ in form.coeffs), key=grlex_key)
        return None

    def residual(self, form: LinearForm) -> LinearForm:
        changed = True
        while changed:
            changed = False
            for w, c in form.coeffs:
                pivot = self.pivots.get(w)
                if pivot is not None:
                    form = form + pivot.scale(-c)
                    changed = True
                    break
        return form

    def add(self, form: LinearForm) -> bool:
        """Insert a row; returns True when it was independent of the store."""
        form = self.residual(form)
        if form.is_zero():
            return False
        lead = self._lead(form)
        if lead is None:
            if self.contradiction is None:
                self.contradiction = form
                return True
            return False
        coeff = dict(form.coeffs)[lead]
        self.pivots[lead] = form.scale(1 / coeff)
        return True

    def substitution(self) -> dict[Word, LinearForm]:
        """Express each pivot variable through strictly smaller variables."""
        out = {}
        for lead, form in self.pivots.items():
            rest = LinearForm(form.const, tuple((w, c) for w, c in form.coeffs if w != lead))
            out[lead] = rest.scale(-1)
        return out


def ideal_sweep_constraints(
    reducer: MomentReducer, budget: int, bases_only: bool = False
) -> tuple[list[ConstraintRow], LinearSystem]:
    """Evaluate the defining relations against all monomial multipliers.

    Relations are instantiated jointly with the multiplier, up to symmetry:
    products are enumerated as trace representatives and parsed for each
    relation pattern at every rotation.  The resolution-of-identity family
    is enumerated as (relabel-canonical multiplier, basis) pairs; it is
    skipped in bases-only mode, where multipliers keep element 0 everywhere.
    Returns the independent nonzero rows in discovery order plus the echelon
    system holding them.
    """
    d, k = reducer.d, reducer.k
    d_eff = 1 if bases_only else d
    rows: list[ConstraintRow] = []
    system = LinearSystem()

    def consider(form: LinearForm, provenance: str) -> None:
        if form.is_zero():
            return
        if system.add(form):
            rows.append(ConstraintRow(form, provenance))

    if not bases_only:
        for deg in range(0, budget):
            for p in iter_canonical_words(deg, k, d):
                bases = {b for b, _ in p}
                choices = sorted(bases)
                if len(bases) < k:
                    choices.append(len(bases))
                for j in choices:
                    total = LinearForm.constant(0) - reducer.reduce_word(p)
                    for i in range(d):
                        total = total + reducer.reduce_word(((j, i),) + p)
                    consider(total, f"resolution j={j} p={p}")

    for deg in range(2, budget + 1):
        for m in iter_trace_representatives(deg, k, d_eff):
            for s in range(deg):
                rot = m[s:] + m[:s]
                b1, e1 = rot[0]
                b2, e2 = rot[1]
                if b1 == b2:
                    lhs = reducer.reduce_word(rot)
                    if e1 == e2:
                        rhs = reducer.reduce_word(rot[:1] + rot[2:])
                        consider(lhs - rhs, f"projector {rot}")
                    else:
                        consider(lhs, f"orthogonal {rot}")

    for deg in range(3, budget + 1):
        for m in iter_trace_representatives(deg, k, d_eff):
            for s in range(deg):
                rot = m[s:] + m[:s]
                if rot[0] == rot[2] and rot[1][0] != rot[0][0]:
                    lhs = reducer.reduce_word(rot)
                    rhs = reducer.reduce_word(rot[:1] + rot[3:]).scale(
                        Fraction(1, d)
                    )
                    consider(lhs - rhs, f"overlap {rot}")

    for deg in range(5, budget + 1):
        for m in iter_trace_representatives(deg, k, d_eff):
            for s in range(deg):
                rot = m[s:] + m[:s]
                x = rot[0]
                for lu in range(1, 4):
                    for lv in range(1, 4):
                        p2 = 1 + lu
                        p3 = 2 + lu + lv
                        if p3 > deg - 1:
                            continue
                        if rot[p2] != x or rot[p3] != x:
                            continue
                        u = rot[1:p2]
                        v = rot[p2 + 1 : p3]
                        swapped = rot[:1] + v + (x,) + u + rot[p3:]
                        lhs = reducer.reduce_word(rot)
                        rhs = reducer.reduce_word(swapped)
                        consider(lhs - rhs, f"commutator {rot} u={lu} v={lv}")

    return rows, system


@dataclass(frozen=True)
class InfeasibilityWitness:
    residual: LinearForm
    provenance: tuple[str, ...]


def detect_linear_infeasibility(
    rows: list[ConstraintRow],
) -> InfeasibilityWitness | None:
    """Rational elimination; a row collapsing to a nonzero constant is a
    proof that no assignment satisfies the constraints."""
    system = LinearSystem()
    provenance: list[str] = []
    for row in rows:
        if system.add(row.form):
            provenance.append(row.provenance)
        if system.contradiction is not None:
            return InfeasibilityWitness(
                residual=system.contradiction, provenance=tuple(provenance)
            )
    return None
