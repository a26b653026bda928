import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_dual_words, naive_distribution
from qqrcodes import gf2linalg as gl
from qqrcodes.gf2linalg import EnumerationCapError, LinearCode, WeightDistribution


@st.composite
def codes(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), max_size=n + 2))
    return LinearCode.from_rows(rows, n), rows


def test_rank_examples():
    assert gl.rank([0b011, 0b110, 0b101], 3) == 2
    assert gl.rank([], 4) == 0
    assert gl.rank([0, 0], 4) == 0
    basis, r = gl.rref_rank([0b1100, 0b0110], 4)
    assert r == 2 and len(basis) == 2


def test_bits_roundtrip():
    assert gl.bits_to_int([1, 0, 1, 1]) == 0b1101
    assert gl.int_to_bits(0b1101, 4) == [1, 0, 1, 1]


def test_full_and_zero():
    assert LinearCode.full_space(5).k == 5
    assert LinearCode.zero(5).k == 0
    assert gl.dual(LinearCode.zero(5)) == LinearCode.full_space(5)
    assert gl.weight_distribution(LinearCode.zero(3)).counts == (1, 0, 0, 0)


def test_repetition_and_parity():
    rep = LinearCode.from_rows([0b111], 3)
    par = gl.dual(rep)
    assert par.k == 2
    assert gl.weight_distribution(par).counts == (1, 0, 3, 0)
    assert gl.min_distance(rep) == 3


def test_hamming_7_4():
    rows = [0b1000110, 0b0100101, 0b0010011, 0b0001111]
    H = LinearCode.from_rows(rows, 7)
    assert gl.weight_distribution(H).counts == (1, 0, 0, 7, 7, 0, 0, 1)
    assert gl.macwilliams(gl.weight_distribution(H), 7, 4).counts == (1, 0, 0, 0, 7, 0, 0, 0)


@settings(max_examples=150, deadline=None)
@given(codes())
def test_distribution_matches_naive(code_rows):
    C, _ = code_rows
    assert list(gl.weight_distribution(C).counts) == naive_distribution(C.generator, C.n)


@settings(max_examples=100, deadline=None)
@given(codes(10))
def test_dual_matches_brute_force(code_rows):
    C, rows = code_rows
    D = gl.dual(C)
    assert D.k == C.n - C.k
    words = brute_dual_words(rows, C.n)
    assert len(words) == 1 << D.k
    assert all(D.contains(v) for v in words)
    assert gl.dual(D) == C


@settings(max_examples=100, deadline=None)
@given(codes(10), codes(10))
def test_sum_and_intersection(a, b):
    C1, C2 = a[0], b[0]
    if C1.n != C2.n:
        C2 = LinearCode.from_rows([r & ((1 << C1.n) - 1) for r in C2.generator], C1.n)
    total, meet = gl.sum_and_intersection(C1, C2)
    assert total.k + meet.k == C1.k + C2.k
    words1 = {C1.encode(m) for m in range(1 << C1.k)}
    words2 = {C2.encode(m) for m in range(1 << C2.k)}
    assert {meet.encode(m) for m in range(1 << meet.k)} == words1 & words2


def test_sum_length_mismatch():
    with pytest.raises(ValueError):
        gl.sum_and_intersection(LinearCode.zero(3), LinearCode.zero(4))


def test_macwilliams_involution_random():
    rng = random.Random(7)
    for _ in range(1000):
        n = rng.randint(1, 10)
        C = LinearCode.from_rows([rng.getrandbits(n) for _ in range(rng.randint(0, n))], n)
        W = gl.weight_distribution(C)
        Wd = gl.macwilliams(W, n, C.k)
        assert Wd == gl.weight_distribution(gl.dual(C))
        assert gl.macwilliams(Wd, n, n - C.k) == W


def test_macwilliams_rejects_non_code():
    with pytest.raises(ValueError):
        gl.macwilliams(WeightDistribution((1, 3, 0, 0)), 3, 2)
    with pytest.raises(ValueError):
        gl.macwilliams(WeightDistribution((1, 1)), 3, 1)
    with pytest.raises(ValueError):
        gl.macwilliams(WeightDistribution((1, 2, 1)), 2, 1)


def test_cap_error():
    C = LinearCode.full_space(12)
    with pytest.raises(EnumerationCapError, match="cap"):
        gl.weight_distribution(C, cap=10)
    assert gl.weight_distribution(C, cap=12).size == 4096


def test_min_distance_zero_code():
    with pytest.raises(ValueError):
        gl.min_distance(LinearCode.zero(4))


def test_parallel_matches_serial():
    rng = random.Random(9)
    C = LinearCode.from_rows([rng.getrandbits(30) for _ in range(16)], 30)
    assert gl.weight_distribution(C, workers=4) == gl.weight_distribution(C)


def test_sample_weights_deterministic():
    C = LinearCode.from_rows([0b1111, 0b0011], 4)
    a = gl.sample_weights(C, 200, seed=3)
    assert a == gl.sample_weights(C, 200, seed=3)
    assert set(a) <= {0, 2, 4} and sum(a.values()) == 200


def test_distribution_text_forms():
    W = WeightDistribution((1, 0, 3, 0))
    assert W.bracket() == "[1, 0, 3, 0]"
    assert WeightDistribution.parse(W.bracket()) == W
    assert W.csv().splitlines()[:2] == ["weight,count", "0,1"]
    assert W.min_weight() == 2 and W.reversed().counts == (0, 3, 0, 1)


def test_encode_contains():
    C = LinearCode.from_rows([0b1100, 0b0110], 4)
    assert C.contains(0b1010) and not C.contains(0b0001)
    assert {C.encode(m) for m in range(4)} == {0, 0b1100, 0b0110, 0b1010}
