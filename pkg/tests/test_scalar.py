from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qaffine_verify.scalar import (ASCENDING, DESCENDING, ONE, ZERO, ScalarMatrix, ScalarPoly,
                                   expand_rational, ring_arith, zpoly_mul)

Q = ScalarPoly.unit("q")
G1 = ScalarPoly.unit("g1")


def test_inverse_unit_cancels():
    assert ring_arith("mul", Q, Q.inverse()) == ONE


def test_difference_of_squares():
    assert ring_arith("mul", ONE - Q ** 2, ONE + Q ** 2) == ONE - Q ** 4


def test_zero_pruning():
    assert ring_arith("eq", Q - Q, ZERO)
    assert not (Q - Q).terms


def test_neg_and_add():
    assert ring_arith("add", Q, ring_arith("neg", Q)) == ZERO


def test_unknown_op():
    with pytest.raises(ValueError):
        ring_arith("div", Q, Q)


def test_inverse_needs_monomial():
    assert (Fraction(3, 2) * Q ** -2).inverse() == Fraction(2, 3) * Q ** 2
    with pytest.raises(ZeroDivisionError):
        (ONE + Q).inverse()


def test_negative_power():
    assert Q ** -3 * Q ** 3 == ONE
    with pytest.raises(ZeroDivisionError):
        (ONE + Q) ** -1


def test_substitute_is_simultaneous():
    g2 = ScalarPoly.unit("g2")
    x = G1 * g2 ** 2
    assert x.substitute({"g1": g2, "g2": G1}) == g2 * G1 ** 2


def test_evaluate():
    assert (Q + Q ** -1).evaluate({"q": 2}) == ScalarPoly.const(Fraction(5, 2))


def series_dict(s):
    return {n: s[n] for n in range(s.window[0], s.window[1] + 1) if s[n]}


def test_expand_geometric():
    s = expand_rational({0: 1}, {0: 1, 1: -Q ** 2}, ASCENDING, (0, 3))
    assert series_dict(s) == {0: ONE, 1: Q ** 2, 2: Q ** 4, 3: Q ** 6}
    assert s.support == "lower"


def test_expand_long_division():
    s = expand_rational({0: Q, 1: -Q}, {0: 1, 1: -Q ** 2}, ASCENDING, (0, 1))
    assert series_dict(s) == {0: Q, 1: Q ** 3 - Q}


def test_expand_descending():
    s = expand_rational({0: 1}, {0: 1, 1: -Q ** 2}, DESCENDING, (-3, -1))
    assert series_dict(s) == {-1: -Q ** -2, -2: -Q ** -4, -3: -Q ** -6}
    assert s.support == "upper"


def test_expand_rejects_non_invertible_leading_term():
    with pytest.raises(ZeroDivisionError):
        expand_rational({0: 1}, {0: ONE + Q, 1: ONE}, ASCENDING, (0, 2))
    with pytest.raises(ValueError):
        expand_rational({0: 1}, {0: 1}, "sideways", (0, 2))


def test_matrix_inverse_and_kron():
    m = ScalarMatrix.from_rows([[ONE, Q], [ZERO, Q]])
    assert m * m.inverse() == ScalarMatrix.identity(2)
    i4 = ScalarMatrix.identity(2).kron(ScalarMatrix.identity(2))
    assert i4 == ScalarMatrix.identity(4)


# -- properties --------------------------------------------------------------

units = st.sampled_from(["q", "a", "g1", "g2"])
monos = st.builds(lambda c, d, u1, e1, u2, e2: ScalarPoly.monomial(Fraction(c, d), **{u1: e1})
                  * ScalarPoly.unit(u2, e2),
                  st.integers(-5, 5), st.integers(1, 4), units, st.integers(-3, 3),
                  units, st.integers(-3, 3))
polys = st.lists(monos, max_size=4).map(lambda ms: sum(ms, ZERO))


@settings(max_examples=1000)
@given(polys, polys, polys)
def test_commutative_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + ZERO == x and x * ONE == x
    assert x + (-x) == ZERO


dens = st.tuples(st.sampled_from([ONE, Q, -Q ** 2, Fraction(2, 3) * G1]),
                 st.sampled_from([ONE, -Q ** 2, Q + ONE, ZERO]),
                 st.sampled_from([ZERO, Q, G1 ** -1]))


@settings(max_examples=200)
@given(polys, polys, dens, st.sampled_from([ASCENDING, DESCENDING]))
def test_expand_round_trip(n0, n1, den, direction):
    d0, d1, d2 = den
    den_map = {0: d0, 1: d1, 2: d2} if direction == ASCENDING else {0: d2, 1: d1, 2: d0}
    den_map = {k: v for k, v in den_map.items() if v}
    if direction == ASCENDING and min(den_map) != 0 or direction == DESCENDING and max(den_map) != 2:
        return
    num = {0: n0, 1: n1}
    window = (-2, 6) if direction == ASCENDING else (-6, 2)
    s = expand_rational(num, den_map, direction, window)
    prod = zpoly_mul(den_map, dict(s.coeffs))
    lo, hi = window
    span = max(den_map) - min(den_map)
    # exponents whose contributions all come from in-window coefficients
    exact = range(lo + max(den_map), hi + min(den_map) + 1) if direction == ASCENDING else \
        range(lo + max(den_map), hi + min(den_map) + 1)
    for n in exact:
        assert prod.get(n, ZERO) == num.get(n, ZERO), (n, span)
