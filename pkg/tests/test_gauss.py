from fractions import Fraction

from qaffine_verify.dist import FormalDist, dist_compare
from qaffine_verify.gauss import (GaussFactors, Mat2, gauss_decompose, gauss_recompose, is_identity,
                                  mat_compare, mat_inverse, mat_mul)
from qaffine_verify.realizations import build_L_symbolic, current, symbolic_factors
from qaffine_verify.scalar import ONE, ScalarPoly

W0 = ((0, 0),)


def c(x):
    return FormalDist.constant(ScalarPoly.const(x), 1, W0)


def scalar_mat(a, b, d, e):
    return Mat2(c(a), c(b), c(d), c(e))


def values(M):
    return [M[ij][(0,)] for ij in ((1, 1), (1, 2), (2, 1), (2, 2))]


def same(A, B, window):
    return all(not v for v in mat_compare(A, B, window).values())


def test_identity_and_permutation():
    A = scalar_mat(1, 2, 3, 10)
    I = Mat2.identity(ONE)
    assert same(mat_mul(A, I), A, W0)
    P = scalar_mat(0, 1, 1, 0)
    assert is_identity(mat_mul(P, P), W0)


def test_lower_times_upper():
    b, cc = ScalarPoly.unit("q"), ScalarPoly.unit("a")
    lower = Mat2(c(1), c(0), FormalDist.constant(cc), c(1))
    upper = Mat2(c(1), FormalDist.constant(b), c(0), c(1))
    assert values(mat_mul(lower, upper)) == [ONE, b, cc, cc * b + 1]


def test_scalar_decomposition():
    g = gauss_decompose(scalar_mat(1, 2, 3, 10))
    assert [g.e[(0,)], g.k1[(0,)], g.k2[(0,)], g.f[(0,)]] == [ScalarPoly.const(x) for x in (3, 1, 4, 2)]


def test_scalar_inverse():
    inv = mat_inverse(scalar_mat(1, 2, 3, 10))
    quarter = Fraction(1, 4)
    assert values(inv) == [ScalarPoly.const(x * quarter) for x in (10, -2, -3, 1)]
    assert values(mat_inverse(Mat2.identity(ONE))) == [ONE, ScalarPoly(), ScalarPoly(), ONE]


def test_symbolic_round_trip():
    W = 3
    win = ((-W, W),)
    g = symbolic_factors("+", W)
    back = gauss_decompose(gauss_recompose(g, win, W), win, W)
    for comp in ("e", "k1", "k2", "f"):
        assert dist_compare(back.component(comp), g.component(comp), win) == []


def test_zero_mode_of_e_plus_vanishes():
    L = build_L_symbolic("+", 3)
    g = gauss_decompose(L, ((-3, 3),), 3)
    assert not g.e[(0,)]
    assert not L[(2, 1)][(0,)]


def test_recompose_entry_order():
    W = 2
    win = ((-W, W),)
    g = symbolic_factors("-", W)
    L = gauss_recompose(g, win, W)
    k1 = current("k1", "-", W)
    term = L[(2, 2)][(1,)]
    # the (2,2) entry is e k1 f + k2: every word with an e letter has it first
    for (word,) in term.terms:
        if any(x.fam == "e" for x in word):
            assert word[0].fam == "e"
    assert dist_compare(L[(1, 1)], k1, win) == []


def test_recompose_diagonal_when_e_f_vanish():
    W = 2
    win = ((-W, W),)
    zero = current("e", "+", W).map(lambda x: x * 0)
    g = GaussFactors(zero, current("k1", "+", W), current("k2", "+", W), zero.map(lambda x: x))
    L = gauss_recompose(g, win, W)
    assert L[(1, 2)].is_zero() and L[(2, 1)].is_zero()


def test_symbolic_inverse_both_sides():
    W = 4
    win = ((-W, W),)
    for sign in ("+", "-"):
        L = build_L_symbolic(sign, W)
        M = mat_inverse(L, win, W)
        assert is_identity(mat_mul(M, L, win, W), win)
        assert is_identity(mat_mul(L, M, win, W), win)


def test_uniqueness_across_expansion_windows():
    W = 3
    small = gauss_decompose(build_L_symbolic("+", W, (-W, W)), ((-W, W),), W)
    wide = gauss_decompose(build_L_symbolic("+", W, (-W - 2, W + 2)), ((-W - 2, W + 2),), W)
    for comp in ("e", "k1", "k2", "f"):
        assert dist_compare(small.component(comp), wide.component(comp), ((-W, W),)) == []
