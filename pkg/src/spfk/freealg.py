"""Words over an abstract alphabet and the free algebra with concatenation,
shuffle, and q-shuffle products.

A word is a plain tuple of non-negative letter ids.  Structured labels
(index pairs, index tuples, barred symbols) live in a LetterRegistry, so the
algebra core never inspects what a letter means.  FreePoly values are
immutable; every operation returns a new instance.
"""
from __future__ import annotations

import functools
import threading
from fractions import Fraction

from .core import Ring

Word = tuple


def word_key(w: Word):
    """Total order on words: length first, then lexicographic on ids."""
    return (len(w), w)


def mirror(w: Word) -> Word:
    """Letters reversed: mirror((a,b,c)) == (c,b,a)."""
    return tuple(reversed(w))


class FreePoly:
    """Finite formal sum of words with rational coefficients.

    Canonical: zero coefficients are never stored, and equality is term-map
    equality.  The word product is deliberately not an operator; use
    concat(), shuffle(), or q_shuffle() explicitly.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for w, c in terms.items():
                if c:
                    clean[tuple(w)] = c
        self._terms = clean

    @staticmethod
    def _make(terms: dict) -> "FreePoly":
        # Trusted constructor: terms must already be canonical (no zeros).
        obj = object.__new__(FreePoly)
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls) -> "FreePoly":
        return cls._make({})

    @classmethod
    def unit(cls) -> "FreePoly":
        return cls._make({(): 1})

    @classmethod
    def from_word(cls, w: Word, coeff=1) -> "FreePoly":
        if not coeff:
            return cls.zero()
        return cls._make({tuple(w): coeff})

    @classmethod
    def from_letter(cls, lid: int, coeff=1) -> "FreePoly":
        return cls.from_word((lid,), coeff)

    def coeff(self, w: Word) -> Fraction:
        return self._terms.get(tuple(w), 0)

    def terms(self):
        """Canonically ordered (word, coefficient) pairs."""
        return sorted(self._terms.items(), key=lambda kv: word_key(kv[0]))

    def num_terms(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "FreePoly") -> "FreePoly":
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return FreePoly._make(out)

    def __neg__(self) -> "FreePoly":
        return FreePoly._make({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "FreePoly") -> "FreePoly":
        return self + (-other)

    def scale(self, c) -> "FreePoly":
        if not c:
            return FreePoly.zero()
        return FreePoly._make({w: cc * c for w, cc in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreePoly):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def canonical_string(self) -> str:
        parts = []
        for w, c in self.terms():
            frac = Fraction(c)
            parts.append(f"{frac.numerator}/{frac.denominator}:{'.'.join(map(str, w))}")
        return ";".join(parts) if parts else "0"

    def __repr__(self) -> str:
        if not self._terms:
            return "FreePoly(0)"
        bits = [f"{c}*{''.join(map(str, w)) or 'e'}" for w, c in self.terms()]
        return "FreePoly(" + " + ".join(bits) + ")"


def concat(p: FreePoly, q: FreePoly) -> FreePoly:
    """Bilinear extension of word concatenation (the non-commutative product)."""
    out: dict = {}
    for u, cu in p._terms.items():
        for v, cv in q._terms.items():
            w = u + v
            s = out.get(w, 0) + cu * cv
            if s:
                out[w] = s
            else:
                out.pop(w, None)
    return FreePoly._make(out)


@functools.lru_cache(maxsize=1 << 18)
def _shuffle_words(u: Word, v: Word) -> dict:
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out: dict = {}
    for w, c in _shuffle_words(u[1:], v).items():
        key = (u[0],) + w
        out[key] = out.get(key, 0) + c
    for w, c in _shuffle_words(u, v[1:]).items():
        key = (v[0],) + w
        out[key] = out.get(key, 0) + c
    return out


def shuffle(p: FreePoly, q: FreePoly) -> FreePoly:
    """Bilinear extension of the recursive shuffle product.

    Base case: the empty word is the unit.  Multiplicities are retained,
    e.g. shuffle(a, a) = 2aa.
    """
    out: dict = {}
    for u, cu in p._terms.items():
        for v, cv in q._terms.items():
            c = cu * cv
            for w, mult in _shuffle_words(u, v).items():
                s = out.get(w, 0) + c * mult
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
    return FreePoly._make(out)


@functools.lru_cache(maxsize=1 << 18)
def _q_shuffle_words(u: Word, v: Word, qval) -> dict:
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out: dict = {}
    for w, c in _q_shuffle_words(u[1:], v, qval).items():
        key = (u[0],) + w
        out[key] = out.get(key, 0) + c
    factor = qval ** len(u)
    for w, c in _q_shuffle_words(u, v[1:], qval).items():
        key = (v[0],) + w
        s = out.get(key, 0) + c * factor
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return out


def q_shuffle(p: FreePoly, q: FreePoly, qval) -> FreePoly:
    """q-deformed shuffle; qval=1 is the shuffle, qval=-1 the antishuffle."""
    out: dict = {}
    for u, cu in p._terms.items():
        for v, cv in q._terms.items():
            c = cu * cv
            for w, mult in _q_shuffle_words(u, v, qval).items():
                s = out.get(w, 0) + c * mult
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
    return FreePoly._make(out)


def antishuffle(p: FreePoly, q: FreePoly) -> FreePoly:
    return q_shuffle(p, q, -1)


def antipode_convolution(w: Word) -> FreePoly:
    """Sum over factorizations w = uv of (-1)^|u| * shuffle(mirror(u), v).

    Zero for every non-empty word, the unit for the empty word: the map
    S(w) = (-1)^|w| mirror(w) convolved with the identity annihilates
    positive degrees.
    """
    w = tuple(w)
    out = FreePoly.zero()
    for cut in range(len(w) + 1):
        u, v = w[:cut], w[cut:]
        term = shuffle(FreePoly.from_word(mirror(u)), FreePoly.from_word(v))
        out = out + (term if cut % 2 == 0 else -term)
    return out


def sort_with_sign(idx) -> tuple[tuple, int]:
    """Sorted tuple and the sign of the sorting permutation; sign 0 on repeats."""
    seq = list(idx)
    sign = 1
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(seq)):
        if seq[i - 1] == seq[i]:
            return tuple(seq), 0
    return tuple(seq), sign


class LetterRegistry:
    """Injective label -> letter id mapping, stable within a session.

    Supports concurrent reads; writes are serialized by a lock.  Index-tuple
    labels go through alternating_letter(), which canonicalizes an arbitrary
    tuple to (id of the sorted tuple, permutation sign) and maps tuples with
    repeated indices to None, so antisymmetrization stays a registry concern.
    """

    def __init__(self):
        self._ids: dict = {}
        self._labels: list = []
        self._lock = threading.Lock()

    def letter(self, label) -> int:
        lid = self._ids.get(label)
        if lid is not None:
            return lid
        with self._lock:
            lid = self._ids.get(label)
            if lid is None:
                lid = len(self._labels)
                self._ids[label] = lid
                self._labels.append(label)
            return lid

    def label_of(self, lid: int):
        return self._labels[lid]

    def alternating_letter(self, idx) -> tuple[int, int] | None:
        canon, sign = sort_with_sign(idx)
        if sign == 0:
            return None
        return self.letter(("alt", canon)), sign

    def __len__(self) -> int:
        return len(self._labels)


class ShuffleRing(Ring):
    """FreePoly under the shuffle product: a commutative ring with unit the
    empty word.  This is the ambient ring of the symbolic identity checks."""

    commutative = True
    zero = FreePoly.zero()
    one = FreePoly.unit()

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return shuffle(a, b)

    def eq(self, a, b) -> bool:
        return a == b

    def scale_int(self, a, n: int):
        return a.scale(n)

    def div_int(self, a, n: int):
        return a.scale(Fraction(1, n))

    def is_zero(self, a) -> bool:
        return a.is_zero()


class AntishuffleRing(Ring):
    """FreePoly under the antishuffle (q = -1) product.

    Only graded-commutative: odd-degree elements anticommute, so this is not
    a commutative ring.  Kernels multiply entries in a fixed canonical order;
    callers must ensure the entries they feed in are even-degree (central)
    wherever commutativity matters.
    """

    commutative = False
    zero = FreePoly.zero()
    one = FreePoly.unit()

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return antishuffle(a, b)

    def eq(self, a, b) -> bool:
        return a == b

    def scale_int(self, a, n: int):
        return a.scale(n)

    def div_int(self, a, n: int):
        return a.scale(Fraction(1, n))

    def is_zero(self, a) -> bool:
        return a.is_zero()


SHUFFLE_RING = ShuffleRing()
ANTISHUFFLE_RING = AntishuffleRing()
