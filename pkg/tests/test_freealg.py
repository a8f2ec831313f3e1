import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from spfk.freealg import (
    FreePoly,
    LetterRegistry,
    antipode_convolution,
    antishuffle,
    concat,
    mirror,
    q_shuffle,
    shuffle,
    sort_with_sign,
)

A, B, C = 0, 1, 2


def w(*letters):
    return FreePoly.from_word(tuple(letters))


words_st = st.lists(st.integers(0, 2), max_size=3).map(tuple)


def test_concat_examples():
    assert concat(w(A), w(B)) == w(A, B)
    assert concat(w(A, B), FreePoly.unit()) == w(A, B)
    assert concat(w(A) + w(B), w(C)) == w(A, C) + w(B, C)


def test_shuffle_examples():
    assert shuffle(w(A), w(B)) == w(A, B) + w(B, A)
    assert shuffle(w(A, B), w(C)) == w(A, B, C) + w(A, C, B) + w(C, A, B)
    assert shuffle(w(A), w(A)) == w(A, A).scale(2)
    assert shuffle(FreePoly.unit(), w(A, B)) == w(A, B)


def test_q_shuffle_examples():
    assert q_shuffle(w(A), w(B), -1) == w(A, B) - w(B, A)
    assert q_shuffle(w(A), w(B), 1) == shuffle(w(A), w(B))
    # hand-run recursion: ab sh_{-1} c = a(b sh c) + (-1)^2 c(ab)
    assert q_shuffle(w(A, B), w(C), -1) == w(A, B, C) - w(A, C, B) + w(C, A, B)


def _antishuffle_oracle(u, v):
    """Interleavings with the inversion sign of crossing letter pairs."""
    out = {}
    p, q = len(u), len(v)
    for positions in itertools.combinations(range(p + q), p):
        merged = [None] * (p + q)
        for idx, pos in enumerate(positions):
            merged[pos] = ("u", idx)
        vslots = [i for i in range(p + q) if merged[i] is None]
        for idx, pos in enumerate(vslots):
            merged[pos] = ("v", idx)
        # count pairs where a v letter precedes a u letter
        crossings = 0
        for i in range(p + q):
            for j in range(i + 1, p + q):
                if merged[i][0] == "v" and merged[j][0] == "u":
                    crossings += 1
        word = tuple(u[i] if side == "u" else v[i] for side, i in merged)
        out[word] = out.get(word, 0) + (-1) ** crossings
    return FreePoly(out)


@settings(max_examples=150, deadline=None)
@given(words_st, words_st)
def test_antishuffle_matches_interleaving_oracle(u, v):
    assert antishuffle(FreePoly.from_word(u), FreePoly.from_word(v)) == _antishuffle_oracle(u, v)


@settings(max_examples=150, deadline=None)
@given(words_st, words_st)
def test_shuffle_mass(u, v):
    # distinct letters => total coefficient mass C(p+q, p); relabel to force it
    u = tuple(range(len(u)))
    v = tuple(range(len(u), len(u) + len(v)))
    total = sum(c for _, c in shuffle(FreePoly.from_word(u), FreePoly.from_word(v)).terms())
    assert total == math.comb(len(u) + len(v), len(u))


@settings(max_examples=120, deadline=None)
@given(words_st, words_st)
def test_antishuffle_graded_anticommutativity(u, v):
    lhs = q_shuffle(FreePoly.from_word(u), FreePoly.from_word(v), -1)
    rhs = q_shuffle(FreePoly.from_word(v), FreePoly.from_word(u), -1)
    sign = (-1) ** (len(u) * len(v))
    assert lhs == rhs.scale(sign)


def _all_words(alphabet, max_len):
    out = [()]
    for length in range(1, max_len + 1):
        out.extend(itertools.product(range(alphabet), repeat=length))
    return out


def test_shuffle_commutative_exhaustive():
    polys = [FreePoly.from_word(word) for word in _all_words(3, 3)]
    for p, q in itertools.product(polys, repeat=2):
        assert shuffle(p, q) == shuffle(q, p)


def test_shuffle_associative_exhaustive():
    polys = [FreePoly.from_word(word) for word in _all_words(3, 3)]
    for p in polys:
        for q in polys:
            pq = shuffle(p, q)
            for r in polys:
                assert shuffle(pq, r) == shuffle(p, shuffle(q, r))


def test_antishuffle_associative_exhaustive():
    polys = [FreePoly.from_word(word) for word in _all_words(3, 3)]
    for p in polys:
        for q in polys:
            pq = antishuffle(p, q)
            for r in polys:
                assert antishuffle(pq, r) == antishuffle(p, antishuffle(q, r))


def test_mirror():
    assert mirror((A, B, C)) == (C, B, A)
    assert mirror(()) == ()
    assert mirror((A,)) == (A,)


def test_antipode_single_letter():
    assert antipode_convolution((A,)).is_zero()


def test_antipode_two_letters():
    # ab - (a sh b) + ba = 0
    expansion = w(A, B) - shuffle(w(A), w(B)) + w(B, A)
    assert antipode_convolution((A, B)) == expansion
    assert expansion.is_zero()


def test_antipode_three_letters_expanded():
    word = (A, B, C)
    total = FreePoly.zero()
    for cut in range(4):
        u, v = word[:cut], word[cut:]
        term = shuffle(FreePoly.from_word(mirror(u)), FreePoly.from_word(v))
        total = total + term.scale((-1) ** cut)
    assert antipode_convolution(word) == total
    assert total.is_zero()


def test_antipode_empty_word_is_unit():
    assert antipode_convolution(()) == FreePoly.unit()


def test_antipode_exhaustive_small():
    for word in _all_words(3, 4):
        if word:
            assert antipode_convolution(word).is_zero()


def test_freepoly_canonical():
    p = FreePoly({(A,): Fraction(1), (B,): Fraction(0)})
    assert p.num_terms() == 1
    assert (p - p).is_zero()
    q = FreePoly({(A,): 1})
    assert p == q
    assert p.canonical_string() == "1/1:0"
    assert FreePoly.zero().canonical_string() == "0"
    # term order: length first, then ids
    r = w(1, 0) + w(0) + w(2)
    assert [term for term, _ in r.terms()] == [(0,), (2,), (1, 0)]


def test_sort_with_sign():
    assert sort_with_sign((2, 1)) == ((1, 2), -1)
    assert sort_with_sign((1, 2, 3)) == ((1, 2, 3), 1)
    assert sort_with_sign((3, 1, 2)) == ((1, 2, 3), 1)
    assert sort_with_sign((1, 1)) == ((1, 1), 0)


def test_registry_injective_and_stable():
    reg = LetterRegistry()
    a = reg.letter("a1")
    b = reg.letter("b1")
    assert a != b
    assert reg.letter("a1") == a
    assert reg.label_of(a) == "a1"
    assert len(reg) == 2


def test_registry_alternating():
    reg = LetterRegistry()
    lid, sign = reg.alternating_letter((1, 2, 3, 4))
    lid2, sign2 = reg.alternating_letter((2, 1, 3, 4))
    assert lid == lid2 and sign == 1 and sign2 == -1
    assert reg.alternating_letter((1, 1, 2, 3)) is None
