"""Grassmann algebra (anticommuting generators) and square-zero commutative
algebra over a generic coefficient ring.

Elements are finite maps from generator bitmasks to ring coefficients, with
at most 64 generators so products sign themselves with population counts.
eta_i^2 = 0 holds structurally: a bitmask never repeats a generator.
"""
from __future__ import annotations

import math

from .core import Ring

MAX_GENERATORS = 64
_FULL = (1 << MAX_GENERATORS) - 1


def wedge_sign(a_mask: int, b_mask: int) -> int:
    """Sign of eta_A * eta_B for disjoint masks: parity of pairs (i,j),
    i in A, j in B, with i > j."""
    inversions = 0
    b = b_mask
    while b:
        low = b & -b
        idx = low.bit_length() - 1
        inversions += (a_mask >> (idx + 1)).bit_count()
        b ^= low
    return -1 if inversions & 1 else 1


def _check_mask(mask: int):
    if mask < 0 or mask > _FULL:
        raise ValueError("generator capacity exceeded (64 generators)")


class _NilpotentElement:
    """Shared plumbing for the two bitmask-indexed algebras."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: Ring, terms=None):
        clean = {}
        if terms:
            for mask, c in terms.items():
                _check_mask(mask)
                if not ring.is_zero(c):
                    clean[mask] = c
        self.ring = ring
        self._terms = clean

    @classmethod
    def _make(cls, ring, terms):
        obj = object.__new__(cls)
        obj.ring = ring
        obj._terms = terms
        return obj

    @classmethod
    def one(cls, ring: Ring):
        return cls._make(ring, {0: ring.one})

    @classmethod
    def zero(cls, ring: Ring):
        return cls._make(ring, {})

    @classmethod
    def generator(cls, ring: Ring, i: int):
        if not 0 <= i < MAX_GENERATORS:
            raise ValueError("generator capacity exceeded (64 generators)")
        return cls._make(ring, {1 << i: ring.one})

    def coeff(self, mask: int):
        return self._terms.get(mask, self.ring.zero)

    def terms(self):
        return sorted(self._terms.items())

    def num_terms(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other):
        self._check_compat(other)
        ring = self.ring
        out = dict(self._terms)
        for mask, c in other._terms.items():
            s = ring.add(out.get(mask, ring.zero), c)
            if ring.is_zero(s):
                out.pop(mask, None)
            else:
                out[mask] = s
        return type(self)._make(ring, out)

    def __neg__(self):
        ring = self.ring
        return type(self)._make(ring, {m: ring.neg(c) for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coeff):
        ring = self.ring
        if ring.is_zero(coeff):
            return type(self).zero(ring)
        return type(self)._make(ring, {m: ring.mul(c, coeff) for m, c in self._terms.items()})

    def scale_int(self, n: int):
        ring = self.ring
        if n == 0:
            return type(self).zero(ring)
        return type(self)._make(ring, {m: ring.scale_int(c, n) for m, c in self._terms.items()})

    def div_int(self, n: int):
        ring = self.ring
        return type(self)._make(ring, {m: ring.div_int(c, n) for m, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        if self.ring is not other.ring:
            return False
        if set(self._terms) != set(other._terms):
            return False
        return all(self.ring.eq(c, other._terms[m]) for m, c in self._terms.items())

    __hash__ = None

    def _check_compat(self, other):
        if type(other) is not type(self) or other.ring is not self.ring:
            raise TypeError("operands must share algebra type and ring")

    def __repr__(self):
        name = type(self).__name__
        if not self._terms:
            return f"{name}(0)"
        bits = []
        for mask, c in self.terms():
            gens = "".join(str(i) for i in range(MAX_GENERATORS) if mask >> i & 1)
            bits.append(f"{c!r}*[{gens or '1'}]")
        return f"{name}(" + " + ".join(bits) + ")"


class GrassmannElement(_NilpotentElement):
    """Element of the Grassmann algebra: signed product, eta_i eta_j = -eta_j eta_i."""

    def __mul__(self, other):
        self._check_compat(other)
        ring = self.ring
        out: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                if ma & mb:
                    continue
                mask = ma | mb
                c = ring.mul(ca, cb)
                if wedge_sign(ma, mb) < 0:
                    c = ring.neg(c)
                s = ring.add(out.get(mask, ring.zero), c)
                if ring.is_zero(s):
                    out.pop(mask, None)
                else:
                    out[mask] = s
        return GrassmannElement._make(ring, out)


class SquareZeroElement(_NilpotentElement):
    """Element of the square-zero commutative algebra: xi_i^2 = 0, no signs."""

    def __mul__(self, other):
        self._check_compat(other)
        ring = self.ring
        out: dict = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                if ma & mb:
                    continue
                mask = ma | mb
                s = ring.add(out.get(mask, ring.zero), ring.mul(ca, cb))
                if ring.is_zero(s):
                    out.pop(mask, None)
                else:
                    out[mask] = s
        return SquareZeroElement._make(ring, out)


def wedge_mul(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    return a * b


def sz_mul(a: SquareZeroElement, b: SquareZeroElement) -> SquareZeroElement:
    return a * b


def grassmann_generators(ring: Ring, n: int) -> list[GrassmannElement]:
    return [GrassmannElement.generator(ring, i) for i in range(n)]


def sz_generators(ring: Ring, n: int) -> list[SquareZeroElement]:
    return [SquareZeroElement.generator(ring, i) for i in range(n)]


def mask_of(indices) -> int:
    """Bitmask of a strictly increasing 1-based index list."""
    mask = 0
    prev = 0
    for i in indices:
        if i <= prev:
            raise ValueError("indices must be strictly increasing")
        if i > MAX_GENERATORS:
            raise ValueError("generator capacity exceeded (64 generators)")
        mask |= 1 << (i - 1)
        prev = i
    return mask


def berezin_extract(T: _NilpotentElement, indices):
    """Coefficient of eta_{i1}...eta_{ir} in T for strictly increasing indices.

    Equals the iterated left derivative taken in reversed index order; an
    absent mask extracts zero.
    """
    return T.coeff(mask_of(indices))


def exp_even(H: _NilpotentElement):
    """exp(H) = sum H^n / n! for a nilpotent H whose terms all have even
    degree >= 2 (such an H is central, so the series is unambiguous).

    Raises on odd-degree or constant terms; the coefficient ring must support
    division by n!.
    """
    for mask in H._terms:
        deg = mask.bit_count()
        if deg == 0 or deg % 2:
            raise ValueError("non-central exponent: terms must have even degree >= 2")
    out = type(H).one(H.ring) + H
    power = H
    k = 1
    while True:
        k += 1
        power = power * H
        if power.is_zero():
            return out
        out = out + power.div_int(math.factorial(k))


def ordered_product(factors) -> _NilpotentElement:
    """Left-to-right product of the given factors (at least one required)."""
    factors = list(factors)
    if not factors:
        raise ValueError("ordered_product needs at least one factor")
    out = factors[0]
    for f in factors[1:]:
        out = out * f
    return out


def quadratic_grassmann(ring: Ring, n: int, entry) -> GrassmannElement:
    """Sum over i<j of entry(i, j) * eta_i eta_j on 1-based generators."""
    terms = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            c = entry(i, j)
            if not ring.is_zero(c):
                terms[mask_of((i, j))] = c
    return GrassmannElement._make(ring, terms)


def quadratic_sz(ring: Ring, n: int, entry) -> SquareZeroElement:
    """Sum over i<j of entry(i, j) * xi_i xi_j on 1-based generators."""
    terms = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            c = entry(i, j)
            if not ring.is_zero(c):
                terms[mask_of((i, j))] = c
    return SquareZeroElement._make(ring, terms)
