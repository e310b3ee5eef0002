from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from soergel import coxeter
from soergel.coxeter import INF, BraidMove, CoxeterMatrix
from soergel.errors import ConfigError, PreconditionViolation

S, R = 0, 1


# -- independent oracle: concrete faithful actions ---------------------------------
# Dihedral m: s(i) = -i, r(i) = 2 - i on Z/2m (on Z for m = inf), stored as (sign, shift).
# A3: adjacent transpositions of {0,1,2,3}.

def dihedral_element(word, m):
    sign, shift = 1, 0
    for a in word:
        c = 0 if a == S else 2
        # x -> sign*x + shift, then apply x -> -x + c on the right: g(x) = sign*(-x + c) + shift
        sign, shift = -sign, sign * c + shift
    if m != INF:
        shift %= 2 * m
    return sign, shift


def perm_element(word, n=4):
    p = list(range(n))
    for a in word:
        p[a], p[a + 1] = p[a + 1], p[a]
    return tuple(p)


def oracle_lengths(concrete, rank, max_len):
    """Minimal word length of each element reached by words of length <= max_len (BFS)."""
    seen = {concrete(()): 0}
    frontier = [()]
    for n in range(1, max_len + 1):
        nxt = []
        for w in frontier:
            for a in range(rank):
                v = w + (a,)
                g = concrete(v)
                if g not in seen:
                    seen[g] = n
                    nxt.append(v)
        frontier = nxt
    return seen


SYSTEMS = [
    (CoxeterMatrix.dihedral(2), lambda w: dihedral_element(w, 2)),
    (CoxeterMatrix.dihedral(3), lambda w: dihedral_element(w, 3)),
    (CoxeterMatrix.dihedral(4), lambda w: dihedral_element(w, 4)),
    (CoxeterMatrix.dihedral(6), lambda w: dihedral_element(w, 6)),
    (CoxeterMatrix.dihedral(INF), lambda w: dihedral_element(w, INF)),
    (CoxeterMatrix.from_orders(3, {(0, 1): 3, (1, 2): 3, (0, 2): 2}), perm_element),
]
IDS = ["m2", "m3", "m4", "m6", "minf", "A3"]


@pytest.mark.parametrize("cm,concrete", SYSTEMS, ids=IDS)
def test_length_and_equality_match_concrete_action(cm, concrete):
    lengths = oracle_lengths(concrete, cm.rank, 7)
    words = [w for n in range(6) for w in itertools.product(range(cm.rank), repeat=n)]
    for w in words:
        assert coxeter.length(w, cm) == lengths[concrete(w)]
        assert concrete(coxeter.reduce(w, cm)) == concrete(w)
    for u, w in itertools.combinations(words[:60], 2):
        assert coxeter.equal(u, w, cm) == (concrete(u) == concrete(w))


@pytest.mark.parametrize("cm,concrete", SYSTEMS, ids=IDS)
def test_reduced_expressions_are_all_minimal_words(cm, concrete):
    lengths = oracle_lengths(concrete, cm.rank, 6)
    for w in coxeter.elements_up_to(cm, 4):
        g, n = concrete(w), len(w)
        want = {v for v in itertools.product(range(cm.rank), repeat=n) if concrete(v) == g}
        assert coxeter.reduced_expressions(w, cm) == want
        assert lengths[g] == n


@pytest.mark.parametrize("cm,concrete", SYSTEMS, ids=IDS)
def test_elements_up_to_counts_match_concrete(cm, concrete):
    lengths = oracle_lengths(concrete, cm.rank, 5)
    elems = coxeter.elements_up_to(cm, 5)
    assert len(elems) == len(set(elems)) == len(lengths)
    assert sorted(len(w) for w in elems) == sorted(lengths.values())


def test_length_examples():
    cm = CoxeterMatrix.dihedral(3)
    assert coxeter.length((), cm) == 0
    assert coxeter.length((S, S), cm) == 0
    assert coxeter.length((S, R, S), cm) == 3


def test_descends_right_examples():
    cm = CoxeterMatrix.dihedral(3)
    assert coxeter.descends_right((S,), S, cm)
    assert not coxeter.descends_right((), S, cm)
    assert coxeter.descends_right((S, R), R, cm)
    assert not coxeter.descends_right((S, R), S, cm)


def test_reduced_expressions_examples():
    assert coxeter.reduced_expressions((S, R, S), CoxeterMatrix.dihedral(3)) == {(S, R, S), (R, S, R)}
    assert coxeter.reduced_expressions((), CoxeterMatrix.dihedral(3)) == {()}
    assert coxeter.reduced_expressions((S, R), CoxeterMatrix.dihedral(2)) == {(S, R), (R, S)}


def test_canonical_examples():
    cm = CoxeterMatrix.dihedral(3)
    assert coxeter.canonical((R, S, R), cm) == (S, R, S)
    assert coxeter.canonical((S, S, R), cm) == (R,)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=8))
def test_canonical_idempotent_and_reduced(w):
    cm = SYSTEMS[-1][0]
    c = coxeter.canonical(w, cm)
    assert coxeter.canonical(c, cm) == c
    assert coxeter.is_reduced(c, cm)
    assert perm_element(c) == perm_element(w)
    assert c == min(coxeter.reduced_expressions(c, cm))


@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_braid_path_reaches_word_ending_in_s(m):
    cm = CoxeterMatrix.dihedral(m)
    for t in coxeter.elements_up_to(cm, m):
        for s in (S, R):
            if not coxeter.descends_right(t, s, cm):
                continue
            path = coxeter.braid_path(t, s, cm)
            words = coxeter.replay(t, path, cm)
            assert words[-1][-1] == s
            assert all(coxeter.equal(w, t, cm) and len(w) == len(t) for w in words)
            assert (path == []) == (t[-1] == s)


def test_braid_path_single_move():
    cm = CoxeterMatrix.dihedral(3)
    path = coxeter.braid_path((S, R, S), R, cm)
    assert path == [BraidMove(0, S, R)]
    assert coxeter.replay((S, R, S), path, cm) == [(S, R, S), (R, S, R)]


def test_braid_path_preconditions():
    cm = CoxeterMatrix.dihedral(3)
    with pytest.raises(PreconditionViolation):
        coxeter.braid_path((S, S), S, cm)
    with pytest.raises(PreconditionViolation):
        coxeter.braid_path((S, R), S, cm)


def test_invalid_matrices_rejected():
    with pytest.raises(ConfigError):
        CoxeterMatrix.dihedral(5)
    with pytest.raises(ConfigError):
        CoxeterMatrix(((1, 3), (2, 1)))
    with pytest.raises(ConfigError):
        CoxeterMatrix(((2, 3), (3, 1)))
    with pytest.raises(PreconditionViolation):
        CoxeterMatrix.dihedral(3).check_word((0, 2))


@pytest.mark.parametrize("cm,concrete", SYSTEMS, ids=IDS)
def test_exchange_condition(cm, concrete):
    for w in coxeter.elements_up_to(cm, 4):
        for s in range(cm.rank):
            assert abs(coxeter.length(w + (s,), cm) - len(w)) == 1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 1), max_size=7), st.lists(st.integers(0, 1), max_size=7))
def test_canonical_respects_concatenation(u, v):
    cm = CoxeterMatrix.dihedral(4)
    whole = coxeter.canonical(tuple(u) + tuple(v), cm)
    assert whole == coxeter.canonical(coxeter.canonical(u, cm) + coxeter.canonical(v, cm), cm)


@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_alternating_reduced_expression_counts(m):
    cm = CoxeterMatrix.dihedral(m)
    for k in range(1, m):
        assert len(coxeter.reduced_expressions(coxeter.alternating(S, R, k), cm)) == 1
    assert len(coxeter.reduced_expressions(coxeter.alternating(S, R, m), cm)) == 2
