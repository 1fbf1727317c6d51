import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from mubsdp.reducer import (
    ConstraintRow,
    LinearForm,
    MomentReducer,
    canonicalize,
    detect_linear_infeasibility,
    graded_lex_less,
    grlex_key,
    ideal_sweep_constraints,
    iter_canonical_words,
    iter_trace_representatives,
    relabel_canonical,
)

# letters are (basis, element), 0-based


def W(*letters):
    return tuple(letters)


def test_graded_lex_order():
    assert graded_lex_less(W((0, 0)), W((0, 0), (0, 0)))
    # basis sequence decides before elements
    assert graded_lex_less(W((0, 1), (1, 0)), W((1, 0), (0, 1)))
    # bases tie, element sequence decides
    assert graded_lex_less(W((0, 0), (0, 1)), W((0, 1), (0, 0)))


def test_canonicalize_single_letter():
    assert canonicalize(W((1, 2))) == W((0, 0))


def test_canonicalize_rotation_and_relabel():
    assert canonicalize(W((1, 0), (0, 0))) == W((0, 0), (1, 0))
    # same basis twice, distinct elements, arbitrary labels
    assert canonicalize(W((0, 1), (4, 2), (0, 1))) == W((0, 0), (0, 0), (1, 0))


def brute_canonical(word):
    """Minimum over all rotations and all relabelings, by brute force."""
    n = len(word)
    bases = sorted({b for b, _ in word})
    best = None
    for s in range(n):
        rot = word[s:] + word[:s]
        for bperm in itertools.permutations(range(len(bases))):
            bmap = {b: bperm[i] for i, b in enumerate(bases)}
            elems = {b: sorted({e for bb, e in word if bb == b}) for b in bases}
            pools = [
                itertools.permutations(range(len(elems[b]))) for b in bases
            ]
            for eperms in itertools.product(*pools):
                emap = {}
                for b, ep in zip(bases, eperms):
                    for i, e in enumerate(elems[b]):
                        emap[(b, e)] = ep[i]
                cand = tuple((bmap[b], emap[(b, e)]) for b, e in rot)
                key = grlex_key(cand)
                if best is None or key < grlex_key(best):
                    best = cand
    return best


def test_canonicalize_is_orbit_minimum():
    rng = random.Random(3)
    for _ in range(120):
        n = rng.randint(1, 5)
        word = tuple((rng.randint(0, 2), rng.randint(0, 2)) for _ in range(n))
        assert canonicalize(word) == brute_canonical(word)


def test_iter_canonical_words_counts():
    from mubsdp.combinatorics import orbit_classes

    for n, k, d in [(1, 2, 2), (2, 2, 2), (3, 2, 2), (3, 3, 2), (4, 2, 3)]:
        words = list(iter_canonical_words(n, k, d))
        assert len(words) == len(orbit_classes(n, k, d))
        assert len(set(words)) == len(words)
        for w in words:
            assert relabel_canonical(w) == w


def test_trace_representatives_are_rotation_minimal():
    reps = list(iter_trace_representatives(4, 2, 2))
    seen = set()
    for w in reps:
        assert canonicalize(w) == w
        seen.add(w)
    # every canonical word maps onto some representative
    for w in iter_canonical_words(4, 2, 2):
        assert canonicalize(w) in seen


def test_reduce_orthogonal_pair_is_zero():
    red = MomentReducer(3, 3)
    assert red.reduce_word(W((0, 0), (0, 1))).is_zero()


def test_reduce_single_and_empty():
    red = MomentReducer(3, 3)
    assert red.reduce_word(()) == LinearForm.constant(3)
    assert red.reduce_word(W((2, 1))) == LinearForm.constant(1)


def test_reduce_overlap_triple():
    for d in (2, 3, 6):
        red = MomentReducer(d, 4)
        form = red.reduce_word(W((0, 0), (1, 0), (0, 0)))
        assert form == LinearForm.constant(Fraction(1, d))


def test_reduce_three_basis_chain():
    for d in (2, 3, 6):
        red = MomentReducer(d, 4)
        form = red.reduce_word(W((0, 0), (1, 0), (2, 0)))
        assert form == LinearForm.constant(Fraction(1, d * d))


def test_first_variable_is_squared_chain():
    red = MomentReducer(3, 3)
    for deg in range(1, 7):
        red.discover_variables(deg)
    variables = sorted(red.variables, key=grlex_key)
    assert len(variables) == 1
    assert variables[0] == W((0, 0), (1, 0), (2, 0), (0, 0), (1, 0), (2, 0))
    # and it reduces to itself
    form = red.reduce_word(variables[0])
    assert form == LinearForm.variable(variables[0])


def test_no_variables_below_degree_six():
    red = MomentReducer(2, 3)
    for deg in range(1, 6):
        red.discover_variables(deg)
    assert red.variables == []


def random_group_element(d, k, rng):
    beta = list(range(k))
    rng.shuffle(beta)
    alphas = []
    for _ in range(k):
        a = list(range(d))
        rng.shuffle(a)
        alphas.append(a)
    return alphas, beta


def act(word, alphas, beta):
    # relabel bases by beta and elements of target basis by alpha
    return tuple((beta[b], alphas[beta[b]][e]) for b, e in word)


def test_reduction_well_defined_on_orbits():
    rng = random.Random(11)
    for d, k in [(2, 2), (2, 3), (3, 2), (3, 3)]:
        red = MomentReducer(d, k)
        for deg in range(1, 6):
            for w in itertools.islice(iter_trace_representatives(deg, k, d), 40):
                base = red.reduce_word(w)
                for _ in range(4):
                    alphas, beta = random_group_element(d, k, rng)
                    shift = rng.randrange(deg)
                    moved = act(w[shift:] + w[:shift], alphas, beta)
                    assert red.reduce_word(moved) == base


def two_mub_projector_model():
    """Explicit rank-1 projectors for two unbiased bases in dimension 2."""
    std = [np.array([[1, 0], [0, 0]]), np.array([[0, 0], [0, 1]])]
    had = [
        np.array([[0.5, 0.5], [0.5, 0.5]]),
        np.array([[0.5, -0.5], [-0.5, 0.5]]),
    ]
    return {0: std, 1: had}


def model_value(word, model):
    mat = np.eye(2)
    for b, e in word:
        mat = mat @ model[b][e]
    return float(np.trace(mat))


def test_reduction_matches_projector_model():
    model = two_mub_projector_model()
    red = MomentReducer(2, 2)
    letters = [(b, e) for b in range(2) for e in range(2)]
    # values of the free variables in the model
    var_values = {}
    for deg in range(1, 6):
        for word in itertools.product(letters, repeat=deg):
            form = red.reduce_word(word)
            for v, _ in form.coeffs:
                if v not in var_values:
                    var_values[v] = model_value(v, model)
            assert form.evaluate(var_values) == pytest.approx(
                model_value(word, model), abs=1e-10
            )


def test_sweep_rows_vanish_on_projector_model():
    model = two_mub_projector_model()
    red = MomentReducer(2, 2)
    red.discover_variables(5)
    rows, _system = ideal_sweep_constraints(red, 5)
    var_values = {v: model_value(v, model) for v in red.variables}
    for row in rows:
        for v, _ in row.form.coeffs:
            var_values.setdefault(v, model_value(v, model))
        assert row.form.evaluate(var_values) == pytest.approx(0.0, abs=1e-10)


def test_detect_linear_infeasibility_empty():
    assert detect_linear_infeasibility([]) is None


def test_detect_linear_infeasibility_contradiction():
    x = W((0, 0), (1, 0), (2, 0), (0, 0), (1, 0), (2, 0))
    rows = [
        ConstraintRow(LinearForm.variable(x), "a"),
        ConstraintRow(LinearForm.constant(1) + LinearForm.variable(x), "b"),
    ]
    witness = detect_linear_infeasibility(rows)
    assert witness is not None
    assert witness.residual.is_constant()
    assert witness.residual.const != 0


def test_reduce_is_idempotent_on_variables():
    red = MomentReducer(2, 4)
    red.discover_variables(6)
    for v in red.variables:
        assert red.reduce_word(v) == LinearForm.variable(v)
