import itertools
import json
import math
from fractions import Fraction

import pytest

from spfk.core import QQ, SeededSampler, mix_seed
from spfk.freealg import SHUFFLE_RING, FreePoly
from spfk.tensors import (
    AltTensor,
    DenseMatrix,
    SymTensor,
    blocked_count,
    determinant,
    enumerate_block_assignments,
    enumerate_blocked,
    grassmann_pf_oracle,
    hafnian,
    hyperhafnian,
    hyperpfaffian,
    inversion_sign,
    permanent,
    pfaffian,
    signed_permutations,
    sz_hf_oracle,
    tensor_from_json,
    tensor_to_json,
)


def _random_alt(seed, order, dim):
    sampler = SeededSampler(seed)
    combos = list(itertools.combinations(range(1, dim + 1), order))
    vals = sampler.positive_distinct(len(combos), 1000)
    return AltTensor(QQ, order, dim, dict(zip(combos, vals)))


def _random_sym(seed, order, dim):
    sampler = SeededSampler(seed)
    combos = list(itertools.combinations(range(1, dim + 1), order))
    vals = sampler.positive_distinct(len(combos), 1000)
    return SymTensor(QQ, order, dim, dict(zip(combos, vals)))


def test_enumerate_blocked_matchings_of_four():
    got = list(enumerate_blocked(2, 2))
    assert got == [
        (((1, 2), (3, 4)), 1),
        (((1, 3), (2, 4)), -1),
        (((1, 4), (2, 3)), 1),
    ]


def test_enumerate_blocked_single_block():
    assert list(enumerate_blocked(1, 4)) == [(((1, 2, 3, 4),), 1)]
    assert list(enumerate_blocked(0, 3)) == [((), 1)]


def test_enumerate_blocked_count_vs_brute_force():
    # filter S_8 by the membership conditions directly
    brute = 0
    for perm in itertools.permutations(range(1, 9)):
        ok = all(perm[4 * i] < perm[4 * i + 1] < perm[4 * i + 2] < perm[4 * i + 3] for i in range(2))
        ok = ok and perm[0] < perm[4]
        if ok:
            brute += 1
    assert brute == 35
    assert sum(1 for _ in enumerate_blocked(2, 4)) == 35
    assert blocked_count(2, 4) == 35


def test_enumerate_blocked_counts_formula():
    for k in range(1, 13):
        for n in range(0, 13):
            if 0 < k * n <= 12:
                assert sum(1 for _ in enumerate_blocked(n, k)) == blocked_count(n, k)


def test_enumerate_blocked_cap():
    with pytest.raises(ValueError, match="size cap"):
        list(enumerate_blocked(11, 2))


def test_block_assignments_ordered_count():
    # ordered variant: (kn)!/(k!)^n assignments
    assert sum(1 for _ in enumerate_block_assignments(2, 2)) == 6
    assert sum(1 for _ in enumerate_block_assignments(2, 4)) == 70
    signs = dict(enumerate_block_assignments(2, 2))
    assert signs[((1, 2), (3, 4))] == 1
    assert signs[((3, 4), (1, 2))] == 1
    assert signs[((2, 4), (1, 3))] == -1


def test_pfaffian_2x2_symbolic():
    a = FreePoly.from_letter(0)
    M = AltTensor(SHUFFLE_RING, 2, 2, {(1, 2): a})
    assert pfaffian(M) == a


def test_pfaffian_4x4_closed_form():
    # six independent letters m_ij; Pf = m12 m34 - m13 m24 + m14 m23
    letters = {}
    next_id = 0
    for i in range(1, 5):
        for j in range(i + 1, 5):
            letters[(i, j)] = FreePoly.from_letter(next_id)
            next_id += 1
    M = AltTensor(SHUFFLE_RING, 2, 4, letters)
    from spfk.freealg import shuffle

    expected = (
        shuffle(letters[(1, 2)], letters[(3, 4)])
        - shuffle(letters[(1, 3)], letters[(2, 4)])
        + shuffle(letters[(1, 4)], letters[(2, 3)])
    )
    assert pfaffian(M) == expected


def test_pfaffian_all_ones_d6():
    M = AltTensor(QQ, 2, 6, {t: Fraction(1) for t in itertools.combinations(range(1, 7), 2)})
    value = pfaffian(M)
    rows = [[M.get((i, j)) for j in range(1, 7)] for i in range(1, 7)]
    assert value ** 2 == determinant(DenseMatrix.from_rows(rows))


def test_pfaffian_errors():
    M = AltTensor(QQ, 2, 3, {(1, 2): Fraction(1)})
    with pytest.raises(ValueError, match="even"):
        pfaffian(M)
    T = AltTensor(QQ, 4, 4, {(1, 2, 3, 4): Fraction(1)})
    with pytest.raises(ValueError, match="order-2"):
        pfaffian(T)


def test_pfaffian_squared_is_determinant():
    for d in (2, 4, 6):
        M = _random_alt(mix_seed(3, d), 2, d)
        rows = [[M.get((i, j)) for j in range(1, d + 1)] for i in range(1, d + 1)]
        assert pfaffian(M) ** 2 == determinant(DenseMatrix.from_rows(rows))


def test_hafnian_examples():
    q = Fraction(5, 3)
    assert hafnian(SymTensor(QQ, 2, 2, {(1, 2): q})) == q
    ones4 = SymTensor(QQ, 2, 4, {t: Fraction(1) for t in itertools.combinations(range(1, 5), 2)})
    assert hafnian(ones4) == 3
    ones6 = SymTensor(QQ, 2, 6, {t: Fraction(1) for t in itertools.combinations(range(1, 7), 2)})
    assert hafnian(ones6) == 15


def test_hafnian_of_all_ones_counts_matchings():
    # cross-module link: hafnian of the all-ones off-diagonal tensor is (2n-1)!!
    from spfk.core import odd_double_factorial

    for n in (1, 2, 3, 4):
        ones = SymTensor(
            QQ, 2, 2 * n,
            {t: Fraction(1) for t in itertools.combinations(range(1, 2 * n + 1), 2)},
        )
        assert hafnian(ones) == odd_double_factorial(n)


def test_hyperpfaffian_examples():
    single = AltTensor(QQ, 4, 4, {(1, 2, 3, 4): Fraction(7, 2)})
    assert hyperpfaffian(single) == Fraction(7, 2)
    M = _random_alt(21, 2, 6)
    assert hyperpfaffian(M) == pfaffian(M)


def test_hyperhafnian_examples():
    single = SymTensor(QQ, 4, 4, {(1, 2, 3, 4): Fraction(2, 9)})
    assert hyperhafnian(single) == Fraction(2, 9)
    S = _random_sym(23, 2, 6)
    assert hyperhafnian(S) == hafnian(S)
    ones = SymTensor(QQ, 4, 8, {t: Fraction(1) for t in itertools.combinations(range(1, 9), 4)})
    assert hyperhafnian(ones) == 35


def test_hyper_kernels_match_power_oracles():
    for k, d in ((2, 4), (2, 6), (2, 8), (4, 4), (4, 8), (6, 6)):
        M = _random_alt(mix_seed(31, (k, d)), k, d)
        assert hyperpfaffian(M) == grassmann_pf_oracle(M), (k, d)
        S = _random_sym(mix_seed(37, (k, d)), k, d)
        assert hyperhafnian(S) == sz_hf_oracle(S), (k, d)


def test_grassmann_oracle_examples():
    M = _random_alt(41, 2, 4)
    expected = (
        M.entry((1, 2)) * M.entry((3, 4))
        - M.entry((1, 3)) * M.entry((2, 4))
        + M.entry((1, 4)) * M.entry((2, 3))
    )
    assert grassmann_pf_oracle(M) == expected
    ones4 = SymTensor(QQ, 2, 4, {t: Fraction(1) for t in itertools.combinations(range(1, 5), 2)})
    assert sz_hf_oracle(ones4) == 3


def test_hyperpfaffian_divisibility_error():
    M = AltTensor(QQ, 4, 6, {})
    with pytest.raises(ValueError, match="divide"):
        hyperpfaffian(M)


def test_determinant_and_permanent_symbolic():
    a, b, c, d = (FreePoly.from_letter(i) for i in range(4))
    M = DenseMatrix.from_rows([[a, b], [c, d]])
    from spfk.freealg import shuffle

    assert determinant(M, SHUFFLE_RING) == shuffle(a, d) - shuffle(b, c)
    assert permanent(M, SHUFFLE_RING) == shuffle(a, d) + shuffle(b, c)


def test_determinant_vandermonde():
    xs = [Fraction(v) for v in (1, 2, 3, 4)]
    rows = [[x ** p for p in range(4)] for x in xs]
    expected = Fraction(1)
    for i in range(4):
        for j in range(i + 1, 4):
            expected *= xs[j] - xs[i]
    assert determinant(DenseMatrix.from_rows(rows)) == expected == 12


def test_determinant_bareiss_matches_permutation_expansion():
    sampler = SeededSampler(47)
    vals = sampler.positive_distinct(25, 500)
    rows = [vals[5 * i : 5 * i + 5] for i in range(5)]
    M = DenseMatrix.from_rows(rows)
    by_bareiss = determinant(M)
    by_perms = Fraction(0)
    for perm, sign in signed_permutations(5):
        prod = Fraction(1)
        for i in range(5):
            prod *= rows[i][perm[i] - 1]
        by_perms += sign * prod
    assert by_bareiss == by_perms
    assert permanent(M) == sum(
        math.prod(rows[i][perm[i] - 1] for i in range(5)) for perm, _ in signed_permutations(5)
    )


def test_determinant_errors():
    M = DenseMatrix.from_rows([[Fraction(1), Fraction(2)]])
    with pytest.raises(ValueError, match="square"):
        determinant(M)
    with pytest.raises(ValueError, match="square"):
        permanent(M)


def test_restrict():
    M = _random_alt(53, 2, 4)
    sub = M.restrict((1, 3))
    assert sub.dim == 2
    assert sub.entry((1, 2)) == M.entry((1, 3))
    full = M.restrict((1, 2, 3, 4))
    assert full == M
    for i, j in itertools.combinations(range(1, 5), 2):
        assert pfaffian(M.restrict((i, j))) == M.entry((i, j))
    with pytest.raises(ValueError):
        M.restrict((3, 1))
    with pytest.raises(ValueError):
        M.restrict((1, 5))


def test_alt_get_signs():
    M = AltTensor(QQ, 2, 3, {(1, 2): Fraction(4)})
    assert M.get((2, 1)) == -4
    assert M.get((1, 1)) == 0
    S = SymTensor(QQ, 2, 3, {(1, 2): Fraction(4)})
    assert S.get((2, 1)) == 4
    assert S.get((2, 2)) == 0


def test_inversion_sign():
    assert inversion_sign((1, 2, 3)) == 1
    assert inversion_sign((2, 1, 3)) == -1
    assert inversion_sign(()) == 1


def test_tensor_json_roundtrip(tmp_path):
    M = _random_alt(59, 4, 8)
    obj = tensor_to_json(M)
    path = tmp_path / "t.json"
    path.write_text(json.dumps(obj))
    back = tensor_from_json(json.loads(path.read_text()), "alt")
    assert back == M
    assert hyperpfaffian(back) == hyperpfaffian(M)


def test_tensor_json_errors():
    with pytest.raises(ValueError, match="malformed"):
        tensor_from_json({"order": 2}, "alt")
    with pytest.raises(ValueError):
        tensor_from_json({"order": 2, "dim": 2, "entries": [{"idx": [2, 1], "num": "1", "den": "1"}]}, "alt")
    with pytest.raises(ValueError, match="zero denominator"):
        tensor_from_json({"order": 2, "dim": 2, "entries": [{"idx": [1, 2], "num": "1", "den": "0"}]}, "alt")


def test_shuffle_ring_pfaffian_equals_permutation_sum():
    # pairing tensor (a_i b_j - a_j b_i) over the shuffle ring, order 4
    n = 2
    d = 2 * n
    a = lambda i: i - 1
    b = lambda i: d + i - 1
    Q = AltTensor.from_function(
        SHUFFLE_RING,
        2,
        d,
        lambda ij: FreePoly({(a(ij[0]), b(ij[1])): 1, (a(ij[1]), b(ij[0])): -1}),
    )
    acc = {}
    for perm, sign in signed_permutations(d):
        word = tuple(a(perm[j]) if j % 2 == 0 else b(perm[j]) for j in range(d))
        acc[word] = acc.get(word, 0) + sign
    assert pfaffian(Q) == FreePoly(acc)
