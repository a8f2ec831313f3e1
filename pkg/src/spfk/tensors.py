"""Alternating and symmetric tensors with exact Pfaffian, hafnian,
hyperpfaffian and hyperhafnian kernels, plus determinant/permanent plumbing.

All kernels are generic over a commutative Ring.  The Pfaffian is computed
by two structurally different algorithms (first-row recursion and blocked
enumeration) and cross-asserted internally; the hyper kernels have
independent Grassmann/square-zero power oracles.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .core import QQ, RationalField, Ring
from .freealg import sort_with_sign
from .multilinear import GrassmannElement, SquareZeroElement, mask_of

MAX_BLOCKED = 20
MAX_GENERIC_DET = 8


def inversion_sign(seq) -> int:
    """Sign of the permutation written in one-line notation."""
    inv = 0
    n = len(seq)
    for i in range(n):
        for j in range(i + 1, n):
            if seq[i] > seq[j]:
                inv += 1
    return -1 if inv & 1 else 1


@functools.lru_cache(maxsize=16)
def signed_permutations(n: int) -> tuple:
    """All permutations of (1..n) as 1-based tuples with their signs."""
    if n > MAX_GENERIC_DET:
        raise ValueError(f"size cap exceeded: permutation sums limited to n <= {MAX_GENERIC_DET}")
    return tuple(
        (perm, inversion_sign(perm)) for perm in itertools.permutations(range(1, n + 1))
    )


class _Tensor:
    __slots__ = ("ring", "order", "dim", "_entries")

    def __init__(self, ring: Ring, order: int, dim: int, entries=None):
        if order < 1:
            raise ValueError("order must be >= 1")
        if dim < 0:
            raise ValueError("dim must be >= 0")
        self.ring = ring
        self.order = order
        self.dim = dim
        clean = {}
        if entries:
            for idx, c in entries.items():
                idx = tuple(idx)
                self._validate_index(idx)
                if not ring.is_zero(c):
                    clean[idx] = c
        self._entries = clean

    def _validate_index(self, idx):
        if len(idx) != self.order:
            raise ValueError(f"index length {len(idx)} != order {self.order}")
        prev = 0
        for i in idx:
            if i <= prev:
                raise ValueError("stored indices must be strictly increasing")
            prev = i
        if prev > self.dim:
            raise ValueError("index out of range")

    def entry(self, sorted_idx) -> object:
        """Stored coefficient at a strictly increasing tuple (zero if absent)."""
        return self._entries.get(tuple(sorted_idx), self.ring.zero)

    def entries(self):
        return sorted(self._entries.items())

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        if (self.ring, self.order, self.dim) != (other.ring, other.order, other.dim):
            return False
        if set(self._entries) != set(other._entries):
            return False
        return all(self.ring.eq(c, other._entries[k]) for k, c in self._entries.items())

    __hash__ = None

    def __add__(self, other):
        if type(other) is not type(self) or (self.ring, self.order, self.dim) != (
            other.ring,
            other.order,
            other.dim,
        ):
            raise TypeError("tensor shapes/rings differ")
        ring = self.ring
        out = dict(self._entries)
        for idx, c in other._entries.items():
            s = ring.add(out.get(idx, ring.zero), c)
            if ring.is_zero(s):
                out.pop(idx, None)
            else:
                out[idx] = s
        t = type(self).__new__(type(self))
        t.ring, t.order, t.dim, t._entries = ring, self.order, self.dim, out
        return t

    def restrict(self, indices):
        """Sub-tensor on the strictly increasing index list, reindexed to 1..len."""
        indices = tuple(indices)
        prev = 0
        for i in indices:
            if i <= prev:
                raise ValueError("restriction indices must be strictly increasing")
            prev = i
        if prev > self.dim:
            raise ValueError("restriction index out of range")
        pos = {v: p + 1 for p, v in enumerate(indices)}
        sub = {}
        index_set = set(indices)
        for idx, c in self._entries.items():
            if all(i in index_set for i in idx):
                sub[tuple(pos[i] for i in idx)] = c
        t = type(self).__new__(type(self))
        t.ring, t.order, t.dim, t._entries = self.ring, self.order, len(indices), sub
        return t


class AltTensor(_Tensor):
    """Order-k alternating tensor on dimension d, stored on sorted tuples.

    The accessor returns sign(sigma) times the stored value for the sorting
    permutation sigma; repeated indices give zero.
    """

    def get(self, idx):
        canon, sign = sort_with_sign(idx)
        if sign == 0:
            return self.ring.zero
        c = self._entries.get(canon, self.ring.zero)
        return self.ring.neg(c) if sign < 0 else c

    @classmethod
    def from_function(cls, ring: Ring, order: int, dim: int, fn) -> "AltTensor":
        entries = {}
        for idx in itertools.combinations(range(1, dim + 1), order):
            entries[idx] = fn(idx)
        return cls(ring, order, dim, entries)

    @classmethod
    def from_matrix(cls, ring: Ring, rows) -> "AltTensor":
        """Skew matrix rows -> order-2 tensor (upper triangle is read)."""
        d = len(rows)
        entries = {}
        for i in range(d):
            if len(rows[i]) != d:
                raise ValueError("matrix must be square")
            for j in range(i + 1, d):
                entries[(i + 1, j + 1)] = rows[i][j]
        return cls(ring, 2, d, entries)


class SymTensor(_Tensor):
    """Order-k square-free symmetric tensor: accessor is permutation-invariant
    and repeated indices give zero (hafnians never read the diagonal)."""

    def get(self, idx):
        canon, sign = sort_with_sign(idx)
        if sign == 0:
            return self.ring.zero
        return self._entries.get(canon, self.ring.zero)

    @classmethod
    def from_function(cls, ring: Ring, order: int, dim: int, fn) -> "SymTensor":
        entries = {}
        for idx in itertools.combinations(range(1, dim + 1), order):
            entries[idx] = fn(idx)
        return cls(ring, order, dim, entries)


@dataclass(frozen=True)
class DenseMatrix:
    """Rectangular matrix, row-major, no symmetry assumed."""

    rows: int
    cols: int
    data: tuple

    @classmethod
    def from_rows(cls, rows) -> "DenseMatrix":
        data = tuple(tuple(r) for r in rows)
        if not data:
            return cls(0, 0, ())
        ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        return cls(len(data), ncols, data)

    def at(self, i: int, j: int):
        """1-based access."""
        return self.data[i - 1][j - 1]

    def submatrix(self, row_idx, col_idx) -> "DenseMatrix":
        """1-based row/column selections, in the order given."""
        rows = tuple(tuple(self.data[i - 1][j - 1] for j in col_idx) for i in row_idx)
        return DenseMatrix(len(row_idx), len(tuple(col_idx)), rows)


def enumerate_blocked(n: int, k: int):
    """Partitions of {1..kn} into n blocks of size k, blocks internally
    increasing with increasing minima, each with the sign of the concatenated
    sequence.  Yields (blocks, sign) deterministically.
    """
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if n * k > MAX_BLOCKED:
        raise ValueError(f"size cap exceeded: kn = {n * k} > {MAX_BLOCKED}")

    def rec(remaining, acc):
        if not remaining:
            flat = [i for block in acc for i in block]
            yield tuple(acc), inversion_sign(flat)
            return
        head = remaining[0]
        rest = remaining[1:]
        for comb in itertools.combinations(rest, k - 1):
            block = (head,) + comb
            comb_set = set(comb)
            nxt = tuple(x for x in rest if x not in comb_set)
            yield from rec(nxt, acc + [block])

    yield from rec(tuple(range(1, n * k + 1)), [])


def blocked_count(n: int, k: int) -> int:
    """|E_{kn,k}| = (kn)! / ((k!)^n n!)."""
    return math.factorial(n * k) // (math.factorial(k) ** n * math.factorial(n))


def enumerate_block_assignments(n: int, k: int):
    """Ordered variant of enumerate_blocked: blocks are internally increasing
    but carry no increasing-minima constraint, so each of the
    (kn)!/(k!)^n assignments of disjoint k-sets to the n positions appears
    once.  This is the index set of iterated Laplace expansions along
    consecutive k-column groups.
    """
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    if n * k > MAX_BLOCKED:
        raise ValueError(f"size cap exceeded: kn = {n * k} > {MAX_BLOCKED}")

    def rec(remaining, acc):
        if not remaining:
            flat = [i for block in acc for i in block]
            yield tuple(acc), inversion_sign(flat)
            return
        for block in itertools.combinations(remaining, k):
            block_set = set(block)
            nxt = tuple(x for x in remaining if x not in block_set)
            yield from rec(nxt, acc + [block])

    yield from rec(tuple(range(1, n * k + 1)), [])


def _pf_recursive(M: AltTensor, idx: tuple):
    ring = M.ring
    if not idx:
        return ring.one
    i0 = idx[0]
    out = ring.zero
    for t in range(1, len(idx)):
        entry = M.get((i0, idx[t]))
        if ring.is_zero(entry):
            continue
        rest = idx[1:t] + idx[t + 1 :]
        term = ring.mul(entry, _pf_recursive(M, rest))
        out = ring.add(out, term if t % 2 == 1 else ring.neg(term))
    return out


def _pf_blocked(M: AltTensor):
    ring = M.ring
    out = ring.zero
    for blocks, sign in enumerate_blocked(M.dim // 2, 2):
        term = ring.product(M.entry(b) for b in blocks)
        out = ring.add(out, term if sign > 0 else ring.neg(term))
    return out


def pfaffian(M: AltTensor):
    """Pfaffian of an order-2 alternating tensor of even dimension.

    Computed both by first-row recursive expansion and by blocked-partition
    enumeration; the two results are cross-asserted before returning.
    """
    if M.order != 2:
        raise ValueError("pfaffian needs an order-2 tensor")
    if M.dim % 2:
        raise ValueError("pfaffian needs even dimension")
    via_recursion = _pf_recursive(M, tuple(range(1, M.dim + 1)))
    via_enumeration = _pf_blocked(M)
    if not M.ring.eq(via_recursion, via_enumeration):
        raise AssertionError("pfaffian internal cross-check failed")
    return via_recursion


def hafnian(S: SymTensor):
    """Sum over perfect matchings of an order-2 symmetric tensor, no signs."""
    if S.order != 2:
        raise ValueError("hafnian needs an order-2 tensor")
    if S.dim % 2:
        raise ValueError("hafnian needs even dimension")
    ring = S.ring
    out = ring.zero
    for blocks, _sign in enumerate_blocked(S.dim // 2, 2):
        out = ring.add(out, ring.product(S.entry(b) for b in blocks))
    return out


def hyperpfaffian(M: AltTensor):
    """Signed sum over blocked partitions of products of order-k entries."""
    if M.dim % M.order:
        raise ValueError(f"order {M.order} must divide dimension {M.dim}")
    ring = M.ring
    n = M.dim // M.order
    out = ring.zero
    for blocks, sign in enumerate_blocked(n, M.order):
        term = ring.product(M.entry(b) for b in blocks)
        out = ring.add(out, term if sign > 0 else ring.neg(term))
    return out


def hyperhafnian(S: SymTensor):
    """Unsigned analog of the hyperpfaffian for symmetric tensors."""
    if S.dim % S.order:
        raise ValueError(f"order {S.order} must divide dimension {S.dim}")
    ring = S.ring
    n = S.dim // S.order
    out = ring.zero
    for blocks, _sign in enumerate_blocked(n, S.order):
        out = ring.add(out, ring.product(S.entry(b) for b in blocks))
    return out


def grassmann_pf_oracle(M: AltTensor):
    """Independent hyperpfaffian: the top coefficient of Omega^n / n! where
    Omega = sum_I M_I eta_I in the Grassmann algebra of rank dim."""
    if M.dim % M.order:
        raise ValueError(f"order {M.order} must divide dimension {M.dim}")
    ring = M.ring
    n = M.dim // M.order
    omega = GrassmannElement(
        ring, {mask_of(idx): c for idx, c in M._entries.items()}
    )
    power = GrassmannElement.one(ring)
    for _ in range(n):
        power = power * omega
    top = power.coeff((1 << M.dim) - 1) if M.dim else power.coeff(0)
    return ring.div_int(top, math.factorial(n))


def sz_hf_oracle(S: SymTensor):
    """Independent hyperhafnian via the square-zero power G^n / n!."""
    if S.dim % S.order:
        raise ValueError(f"order {S.order} must divide dimension {S.dim}")
    ring = S.ring
    n = S.dim // S.order
    g = SquareZeroElement(ring, {mask_of(idx): c for idx, c in S._entries.items()})
    power = SquareZeroElement.one(ring)
    for _ in range(n):
        power = power * g
    top = power.coeff((1 << S.dim) - 1) if S.dim else power.coeff(0)
    return ring.div_int(top, math.factorial(n))


def _det_bareiss(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m = [list(r) for r in rows]
    sign = 1
    prev = Fraction(1)
    for c in range(n - 1):
        if m[c][c] == 0:
            for r in range(c + 1, n):
                if m[r][c] != 0:
                    m[c], m[r] = m[r], m[c]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for r in range(c + 1, n):
            for cc in range(c + 1, n):
                m[r][cc] = (m[r][cc] * m[c][c] - m[r][c] * m[c][cc]) / prev
            m[r][c] = Fraction(0)
        prev = m[c][c]
    return sign * m[n - 1][n - 1]


def _perm_expansion(M: DenseMatrix, ring: Ring, signed: bool):
    n = M.rows
    if n > MAX_GENERIC_DET:
        raise ValueError(f"size cap exceeded: permutation expansion limited to n <= {MAX_GENERIC_DET}")
    out = ring.zero
    for perm in itertools.permutations(range(n)):
        term = ring.product(M.data[i][perm[i]] for i in range(n))
        if signed and inversion_sign(perm) < 0:
            term = ring.neg(term)
        out = ring.add(out, term)
    return out


def determinant(M: DenseMatrix, ring: Ring = QQ):
    """Exact determinant: fraction-free elimination over the rationals,
    permutation expansion (n <= 8) for generic rings."""
    if M.rows != M.cols:
        raise ValueError("determinant needs a square matrix")
    if isinstance(ring, RationalField):
        return _det_bareiss([[Fraction(x) for x in row] for row in M.data])
    return _perm_expansion(M, ring, signed=True)


def permanent(M: DenseMatrix, ring: Ring = QQ):
    """Exact permanent by permutation expansion (n <= 8)."""
    if M.rows != M.cols:
        raise ValueError("permanent needs a square matrix")
    return _perm_expansion(M, ring, signed=False)


def tensor_to_json(t: _Tensor) -> dict:
    """Tensor JSON: {"order":k,"dim":d,"entries":[{"idx":[...],"num":"..","den":".."}]}.

    Only rational-coefficient tensors serialize; indices are 1-based strictly
    increasing and unspecified entries are zero.
    """
    entries = []
    for idx, c in t.entries():
        frac = Fraction(c)
        entries.append(
            {"idx": list(idx), "num": str(frac.numerator), "den": str(frac.denominator)}
        )
    return {"order": t.order, "dim": t.dim, "entries": entries}


def tensor_from_json(obj: dict, kind: str) -> _Tensor:
    """Parse the tensor JSON format; kind is "alt" or "sym"."""
    if not isinstance(obj, dict):
        raise ValueError("tensor JSON must be an object")
    try:
        order = int(obj["order"])
        dim = int(obj["dim"])
        raw = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed tensor JSON: {exc}") from exc
    if not isinstance(raw, list):
        raise ValueError("malformed tensor JSON: entries must be a list")
    entries = {}
    for item in raw:
        try:
            idx = tuple(int(i) for i in item["idx"])
            num = int(item["num"])
            den = int(item["den"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed tensor entry: {exc}") from exc
        if den == 0:
            raise ValueError("malformed tensor entry: zero denominator")
        entries[idx] = Fraction(num, den)
    cls = AltTensor if kind == "alt" else SymTensor
    return cls(QQ, order, dim, entries)
