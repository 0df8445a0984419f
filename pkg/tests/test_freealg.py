import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qaffine_verify.freealg import (Gen, NCPoly, check_support, embed, multiply_legs, random_word,
                                    reduce_word, tensor, tensor_mul, weight_truncate)
from qaffine_verify.scalar import ScalarPoly

g = NCPoly.gen
G1 = ScalarPoly.unit("g1")


def test_zero_mode_pair_cancels():
    assert g("k1", "+", 0) * g("k1", "-", 0) == NCPoly.one()
    assert g("k2", "-", 0) * g("k2", "+", 0) == NCPoly.one()


def test_non_adjacent_pair_survives():
    x = g("k1", "+", 0) * g("e", "+", 1) * g("k1", "-", 0)
    (key,) = x.terms
    assert len(key[0]) == 3


def test_different_families_do_not_cancel():
    x = g("k1", "+", 0) * g("k2", "-", 0)
    assert x.weight() == 0 and len(next(iter(x.terms))[0]) == 2


def test_bilinearity():
    e1, f0 = g("e", "+", 1), g("f", "+", 0)
    assert (e1 + f0) * e1 == e1 * e1 + f0 * e1


def test_mode_support():
    with pytest.raises(ValueError):
        check_support(Gen("e", "+", 0))
    with pytest.raises(ValueError):
        check_support(Gen("f", "-", 0))
    with pytest.raises(ValueError):
        check_support(Gen("k1", "+", -1))
    with pytest.raises(ValueError):
        check_support(Gen("k1", "-", 2))
    for ok in (Gen("f", "+", 0), Gen("e", "-", 0), Gen("k2", "-", -3)):
        check_support(ok)


def test_weight_truncate_examples():
    x = g("e", "+", 2) * g("f", "+", 0) + g("e", "+", 1)
    assert weight_truncate(x, 1) == g("e", "+", 1)
    y = x + g("k1", "+", 0) * g("f", "+", 0)
    assert weight_truncate(y, 0) == g("k1", "+", 0) * g("f", "+", 0)
    with pytest.raises(ValueError):
        weight_truncate(x, -1)


def test_tensor_unit_legs():
    k = g("k1", "+", 0)
    e = g("e", "+", 1)
    one = NCPoly.one()
    assert tensor_mul(tensor(k, one), tensor(one, e)) == tensor(k, e)


def test_tensor_scalar_centrality():
    a, b, c, d = g("e", "+", 1), g("f", "+", 1), g("k1", "+", 1), g("k2", "+", 2)
    lhs = tensor_mul(tensor(a * G1, b), tensor(c, d))
    assert lhs == tensor(a * c, b * d) * G1


def test_tensor_leg_cancellation():
    kp, km = g("k1", "+", 0), g("k1", "-", 0)
    assert tensor_mul(tensor(kp, km), tensor(km, kp)) == NCPoly.one(2)


def test_leg_count_mismatch():
    with pytest.raises(ValueError):
        tensor_mul(NCPoly.one(2), NCPoly.one(3))


def test_embed_and_multiply_legs():
    e, f = g("e", "+", 1), g("f", "-", -1)
    x = embed(e, 0, 2) * embed(f, 1, 2)
    assert x == tensor(e, f)
    assert multiply_legs(x) == e * f


def test_inverse_of_zero_mode_word():
    x = g("k1", "+", 0) * g("k2", "-", 0) * ScalarPoly.unit("q", 2)
    assert x * x.inverse() == NCPoly.one()
    with pytest.raises(ZeroDivisionError):
        g("e", "+", 1).inverse()


# -- properties --------------------------------------------------------------

seeds = st.integers(0, 10 ** 6)


def rand_poly(rng, legs=1):
    terms = {}
    for _ in range(rng.randint(1, 3)):
        key = tuple(reduce_word(random_word(rng, rng.randint(0, 4))) for _ in range(legs))
        terms[key] = ScalarPoly.const(rng.randint(-3, 3)) * ScalarPoly.unit("q", rng.randint(-2, 2))
    return NCPoly(terms, legs)


@settings(max_examples=200)
@given(seeds, st.sampled_from([1, 2, 3]))
def test_associativity(seed, legs):
    rng = random.Random(seed)
    x, y, z = (rand_poly(rng, legs) for _ in range(3))
    assert (x * y) * z == x * (y * z)


@settings(max_examples=200)
@given(seeds)
def test_weight_subadditive(seed):
    rng = random.Random(seed)
    x, y = rand_poly(rng), rand_poly(rng)
    assert (x * y).weight() <= x.weight() + y.weight()


def reduce_by_first_pair(word, start):
    """Naive rewriting: repeatedly cancel the first cancellable pair at or
    after ``start`` (wrapping), giving a different reduction order."""
    w = list(word)
    while True:
        n = len(w)
        for off in range(n - 1):
            i = (start + off) % (n - 1) if n > 1 else 0
            a, b = w[i], w[i + 1]
            if a.mode == 0 and b.mode == 0 and a.fam == b.fam and a.fam[0] == "k" and a.sign != b.sign:
                del w[i:i + 2]
                break
        else:
            return tuple(w)


@settings(max_examples=300)
@given(seeds, st.integers(0, 20))
def test_reduction_confluence(seed, start):
    rng = random.Random(seed)
    word = random_word(rng, rng.randint(2, 12), zero_bias=0.8)
    assert reduce_by_first_pair(word, start) == reduce_word(word)


@settings(max_examples=100)
@given(seeds, st.integers(0, 5))
def test_truncation_idempotent(seed, W):
    x = rand_poly(random.Random(seed))
    assert weight_truncate(weight_truncate(x, W), W) == weight_truncate(x, W)
