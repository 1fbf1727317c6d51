"""Representative sets for basis+element relabeling acting on moment-matrix rows.

Full level: the group relabels the k bases and, independently per basis, the d
elements; it acts on words of (basis, element) letters.  Rows split by orbit
class (P, Q); inside a class the module factors into one label-assignment
module per part (elements) times one for the bases, and each factor decomposes
through `slot_label_family`.  Blocks are indexed by multipartitions: one
partition of the "slot budget" per partition of d.

Half level: the first letter is pinned to (basis 0, element 0); the group
shrinks to relabelings fixing that letter.  A class then contributes the
tensor product of a (d-1)-symbol family for the pinned basis's remaining
element slots with a full wreath family over the remaining parts and k-1
bases.  Blocks are indexed by (partition of d-1, multipartition of k-1).

Bases-only variants restrict rows to words using element 0 everywhere and
reduce under basis relabeling alone; blocks are indexed by partitions of k
(of k-1 at half levels).

Representative vectors keep their tensor factorization: a basis-assignment
factor over the parts plus one element-assignment factor per part.  Matrix
assembly consumes the factors; `expand` produces the flat word vector.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .combinatorics import (
    OrbitClass,
    Partition,
    SetPartition,
    Tableau,
    hook_length_count,
    integer_partitions,
    multinomial,
    orbit_classes,
    set_partitions,
)
from .specht import slot_label_family

Letter = tuple[int, int]
Word = tuple[Letter, ...]
WordVector = dict[Word, int]
MultiPartition = tuple[Partition, ...]


@dataclass(frozen=True)
class WreathLabel:
    """Identifies one representative vector inside a block."""

    orbit: OrbitClass
    j: tuple[int, ...]
    sigma: tuple[Tableau, ...]
    tau: tuple[Tableau, ...]
    prefix_tau: Tableau | None = None  # half level only: the pinned-basis tableau


@dataclass(frozen=True)
class RepVector:
    """A representative vector in factored form.

    ``parts`` lists, per part, the element cells (tuples of word positions);
    part i is assigned basis ``beta[i]`` with coefficient table
    ``basis_factor``; its cells get distinct elements with coefficient tables
    ``elem_factors[i]``.  ``elem_keys[i]`` is a hashable identity of that
    factor, shared between vectors built from the same tableau data, so pair
    tables can be cached globally.
    """

    parts: tuple[tuple[tuple[int, ...], ...], ...]
    word_len: int
    basis_factor: tuple[tuple[tuple[int, ...], int], ...]
    elem_factors: tuple[tuple[tuple[tuple[int, ...], int], ...], ...]
    elem_keys: tuple[object, ...]

    @cached_property
    def expanded(self) -> WordVector:
        out: WordVector = {}
        for beta, cb in self.basis_factor:
            pools = []
            for factor in self.elem_factors:
                pools.append(factor)
            for picks in itertools.product(*pools):
                coeff = cb
                letters: list[Letter] = [(-1, -1)] * self.word_len
                for i, (eps, ce) in enumerate(picks):
                    coeff *= ce
                    for s, cell in enumerate(self.parts[i]):
                        for pos in cell:
                            letters[pos] = (beta[i], eps[s])
                word = tuple(letters)
                out[word] = out.get(word, 0) + coeff
        return {w: c for w, c in out.items() if c != 0}


@dataclass
class WreathRepSet:
    """Blocks of representative vectors, keyed by block label.

    Full level keys are multipartitions; half level keys are
    (partition, multipartition) pairs; bases-only keys are partitions.
    """

    d: int
    k: int
    word_len: int
    mode: str  # "full", "half", "bases", "bases_half"
    blocks: dict[object, list[tuple[object, RepVector]]] = field(default_factory=dict)

    def multiplicities(self) -> dict[object, int]:
        return {key: len(vs) for key, vs in self.blocks.items()}

    def sum_of_squares(self) -> int:
        return sum(len(vs) ** 2 for vs in self.blocks.values())

    def block_sizes(self) -> list[int]:
        return sorted(self.multiplicities().values(), reverse=True)


def gamma_profile(j: tuple[int, ...], r: int, k: int, n_nu: int) -> tuple[Partition, ...]:
    """Slot-budget partitions per d-partition index for a choice ``j``.

    ``j`` maps each of the ``r`` parts to an index < ``n_nu``.  Index 0 (the
    single-row partition of d) also absorbs the ``k - r`` unused bases.
    Returned entries drop zero components; empty budgets give ``()``.
    """
    counts = [0] * n_nu
    for a in j:
        counts[a] += 1
    out: list[Partition] = []
    first = () if k == r else (k - r,)
    out.append(first + (1,) * counts[0] if (k > r or counts[0]) else ())
    for a in range(1, n_nu):
        out.append((1,) * counts[a])
    return tuple(out)


def _trivial_family():
    return {(): [((), {(): 1})]}


def _iter_class_vectors(parts, Qs, K: int, d: int, nu_list: list[Partition]):
    """Representative data for one orbit class over ``K`` basis labels.

    Yields (multipartition, j, sigma, tau, basis_factor, elem_factors,
    elem_keys).  The basis factor maps per-part label tuples (0-based, within
    ``K``) to coefficients; element factors are per part over cell tuples.
    """
    r = len(parts)
    n_nu = len(nu_list)
    part_options = []
    for part, sub in zip(parts, Qs):
        q = len(sub)
        family = slot_label_family(d, q)
        opts = []
        for nu_idx, nu in enumerate(nu_list):
            for tau, assignments in family.get(nu, []):
                key = ("d", d, q, nu, tau)
                opts.append((nu_idx, tau, tuple(assignments.items()), key))
        part_options.append(opts)
    if any(not opts for opts in part_options):
        return

    for combo in itertools.product(*part_options):
        j = tuple(c[0] for c in combo)
        sigma = tuple(c[1] for c in combo)
        elem_factors = tuple(c[2] for c in combo)
        elem_keys = tuple(c[3] for c in combo)

        groups: dict[int, list[int]] = {}
        for i, a in enumerate(j):
            groups.setdefault(a, []).append(i)

        # Basis labels are pooled in consecutive blocks per d-partition index,
        # sized by the slot budgets.  Pool positions depend only on the block
        # label, which keeps representative vectors of different classes and
        # different j coherent copies of the same irreducible.
        label_sets: list[list[int]] = []
        basis_families = []
        offset = 0
        for a in range(n_nu):
            members = groups.get(a, [])
            size = len(members) + (K - r if a == 0 else 0)
            labels = list(range(offset, offset + size))
            offset += size
            label_sets.append(labels)
            basis_families.append(
                slot_label_family(len(labels), len(members))
                if labels
                else _trivial_family()
            )

        lam_choices = []
        for a in range(n_nu):
            per_lam = []
            for lam, entries in basis_families[a].items():
                for tau, assignments in entries:
                    per_lam.append((lam, tau, assignments))
            lam_choices.append(per_lam)

        for basis_combo in itertools.product(*lam_choices):
            Lambda = tuple(bc[0] for bc in basis_combo)
            taus = tuple(bc[1] for bc in basis_combo)

            basis_factor: dict[tuple[int, ...], int] = {}
            for picks in itertools.product(*(bc[2].items() for bc in basis_combo)):
                coeff = 1
                beta = [0] * r
                for a, (assignment, c) in enumerate(picks):
                    coeff *= c
                    members = sorted(groups.get(a, []))
                    for s, i in enumerate(members):
                        beta[i] = label_sets[a][assignment[s]]
                key = tuple(beta)
                basis_factor[key] = basis_factor.get(key, 0) + coeff
            basis_factor = {b: c for b, c in basis_factor.items() if c != 0}
            if basis_factor:
                yield Lambda, j, sigma, taus, basis_factor, elem_factors, elem_keys


def wreath_representative_set(
    d: int,
    k: int,
    t: int,
    classes: list[OrbitClass] | None = None,
    nu_list: list[Partition] | None = None,
) -> WreathRepSet:
    """Representative set for the full action on length-``t`` words.

    ``classes`` restricts to a subset of orbit classes (used after pruning);
    ``nu_list`` exists as a test hook and must normally stay at its default,
    the descending list of partitions of d (single row first).
    """
    if nu_list is None:
        nu_list = integer_partitions(d)
    if classes is None:
        classes = orbit_classes(t, k, d)
    rep = WreathRepSet(d=d, k=k, word_len=t, mode="full")
    for cls in classes:
        for Lambda, j, sigma, taus, bf, efs, ekeys in _iter_class_vectors(
            cls.P, cls.Q, k, d, nu_list
        ):
            label = WreathLabel(orbit=cls, j=j, sigma=sigma, tau=taus)
            vec = RepVector(
                parts=cls.Q,
                word_len=t,
                basis_factor=tuple(sorted(bf.items())),
                elem_factors=efs,
                elem_keys=ekeys,
            )
            rep.blocks.setdefault(Lambda, []).append((label, vec))
    return rep


def half_level_representative_set(
    d: int,
    k: int,
    t: int,
    classes: list[OrbitClass] | None = None,
    nu_list: list[Partition] | None = None,
) -> WreathRepSet:
    """Representative set for words of length ``t + 1`` whose first letter is
    pinned to (basis 0, element 0).

    The stabilizer of the pin still relabels elements 1..d-1 of basis 0, all
    elements of the other bases, and the bases 1..k-1 among themselves.
    Blocks are keyed by (partition of d-1, multipartition of k-1).
    """
    if nu_list is None:
        nu_list = integer_partitions(d)
    if classes is None:
        classes = orbit_classes(t + 1, k, d)
    rep = WreathRepSet(d=d, k=k, word_len=t + 1, mode="half")
    for cls in classes:
        pinned_sub = cls.Q[0]
        assert cls.P[0][0] == 0 and pinned_sub[0][0] == 0
        free_slots = len(pinned_sub) - 1
        prefix_family = slot_label_family(d - 1, free_slots)

        prefix_entries = []
        for lam_prime, entries in prefix_family.items():
            for tau_p, assignments in entries:
                # pinned cell takes element 0; free cells shift up by one
                factor = {
                    (0,) + tuple(x + 1 for x in labels): coeff
                    for labels, coeff in assignments.items()
                }
                key = ("dm1", d, free_slots, lam_prime, tau_p)
                prefix_entries.append((lam_prime, tau_p, tuple(factor.items()), key))

        rest_entries = list(
            _iter_class_vectors(cls.P[1:], cls.Q[1:], k - 1, d, nu_list)
        )

        for lam_prime, tau_p, prefix_factor, prefix_key in prefix_entries:
            for Lambda, j, sigma, taus, bf, efs, ekeys in rest_entries:
                label = WreathLabel(
                    orbit=cls, j=j, sigma=sigma, tau=taus, prefix_tau=tau_p
                )
                basis_factor = tuple(
                    sorted(
                        ((0,) + tuple(b + 1 for b in beta), c)
                        for beta, c in bf.items()
                    )
                )
                vec = RepVector(
                    parts=cls.Q,
                    word_len=t + 1,
                    basis_factor=basis_factor,
                    elem_factors=(prefix_factor,) + efs,
                    elem_keys=(prefix_key,) + ekeys,
                )
                rep.blocks.setdefault((lam_prime, Lambda), []).append((label, vec))
    return rep


def bases_only_representative_set(
    k: int, t: int, classes: list[SetPartition] | None = None
) -> WreathRepSet:
    """Representative set for basis relabeling on element-0 words of length t.

    Classes are plain set partitions of the positions; blocks are keyed by
    partitions of k.  Used for the relaxation restricted to one element per
    basis (d plays no role in the vectors, only in the moment values).
    """
    if classes is None:
        classes = set_partitions(t, min(k, t))
    rep = WreathRepSet(d=1, k=k, word_len=t, mode="bases")
    trivial_elem = (((0,), 1),)
    for P in classes:
        r = len(P)
        family = slot_label_family(k, r)
        for lam, entries in family.items():
            for tau, assignments in entries:
                vec = RepVector(
                    parts=tuple((part,) for part in P),
                    word_len=t,
                    basis_factor=tuple(sorted(assignments.items())),
                    elem_factors=tuple(trivial_elem for _ in range(r)),
                    elem_keys=tuple("e0" for _ in range(r)),
                )
                rep.blocks.setdefault(lam, []).append(((P, tau), vec))
    return rep


def bases_only_half_representative_set(
    k: int, t: int, classes: list[SetPartition] | None = None
) -> WreathRepSet:
    """Bases-only representative set with the first letter pinned to basis 0.

    Words have length ``t + 1``; the part containing position 0 keeps basis 0
    and the remaining parts carry a representative family over the other
    ``k - 1`` bases.  Blocks are keyed by partitions of k-1.
    """
    if classes is None:
        classes = set_partitions(t + 1, min(k, t + 1))
    rep = WreathRepSet(d=1, k=k, word_len=t + 1, mode="bases_half")
    trivial_elem = (((0,), 1),)
    for P in classes:
        r = len(P)
        if r - 1 > k - 1:
            continue
        family = slot_label_family(k - 1, r - 1)
        for lam, entries in family.items():
            for tau, assignments in entries:
                basis_factor = tuple(
                    sorted(
                        ((0,) + tuple(b + 1 for b in labels), coeff)
                        for labels, coeff in assignments.items()
                    )
                )
                vec = RepVector(
                    parts=tuple((part,) for part in P),
                    word_len=t + 1,
                    basis_factor=basis_factor,
                    elem_factors=tuple(trivial_elem for _ in range(r)),
                    elem_keys=tuple("e0" for _ in range(r)),
                )
                rep.blocks.setdefault(lam, []).append(((P, tau), vec))
    return rep


def _full_block_dimension(Lambda: MultiPartition, k: int, nu_list: list[Partition]) -> int:
    weights = tuple(sum(lam) for lam in Lambda)
    dim = multinomial(k, weights)
    for lam, nu in zip(Lambda, nu_list):
        dim *= hook_length_count(lam) * hook_length_count(nu) ** sum(lam)
    return dim


def total_dimension_check(rep: WreathRepSet) -> tuple[bool, object | None]:
    """Does sum(multiplicity x irreducible dimension) match the space dimension?

    The target is (d k)^t for the full level, (d k)^(word_len - 1) at half
    levels (the pinned letter is fixed), and the same with d = 1 in the
    bases-only variants.  Only meaningful over all classes, without pruning.
    """
    nu_list = integer_partitions(rep.d)
    if rep.mode == "full":
        target = (rep.d * rep.k) ** rep.word_len
        total = sum(
            len(vs) * _full_block_dimension(key, rep.k, nu_list)
            for key, vs in rep.blocks.items()
        )
    elif rep.mode == "half":
        target = (rep.d * rep.k) ** (rep.word_len - 1)
        total = 0
        for (lam_prime, Lambda), vs in rep.blocks.items():
            dim = hook_length_count(lam_prime)
            dim *= _full_block_dimension(Lambda, rep.k - 1, nu_list)
            total += len(vs) * dim
    elif rep.mode == "bases":
        target = rep.k**rep.word_len
        total = sum(
            len(vs) * hook_length_count(key) for key, vs in rep.blocks.items()
        )
    else:
        target = rep.k ** (rep.word_len - 1)
        total = sum(
            len(vs) * hook_length_count(key) for key, vs in rep.blocks.items()
        )
    if total == target:
        return True, None
    worst = max(rep.blocks, key=lambda key: len(rep.blocks[key]), default=None)
    return False, worst
