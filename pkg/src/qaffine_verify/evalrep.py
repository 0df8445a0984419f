"""The two-dimensional evaluation representation at level zero.

L(z) is R(z/a) viewed as a 2x2 matrix (auxiliary space) of 2x2 matrices
(the representation space), with `a` the evaluation parameter. Which
tensor factor of R plays the auxiliary role is a choice; `build_eval_L`
tries it and keeps only choices meeting the zero-mode triangularity
constraints. '+' entries are expanded in the direction `plus_direction`
(default: powers of z^-1, matching the symbolic currents), '-' entries in
the other one.

All checks compare exact coefficients of (z, w) distributions whose
coefficients are 2x2 (or 8x8) scalar matrices.
"""
from __future__ import annotations

from dataclasses import dataclass

from .dist import (FormalDist, SupportError, WindowError, delta_dist, dist_compare, dist_inverse,
                   dist_mul)
from .gauss import GaussFactors, Mat2, gauss_decompose, gauss_recompose, mat_compare
from .realizations import _pair_dist, embed_pair, r_entries, rational_matrix_series
from .report import FAIL, PASS, Check, Mismatch, equality_check, inconclusive
from .scalar import ASCENDING, DESCENDING, ONE, ScalarMatrix, ScalarPoly

A = ScalarPoly.unit("a")
Q = ScalarPoly.unit("q")
FACTOR_CHOICES = ("first-leg", "second-leg")


class TriangularityError(ValueError):
    """No factor choice satisfies the zero-mode constraints."""


def other(direction: str) -> str:
    return DESCENDING if direction == ASCENDING else ASCENDING


def sign_direction(sign: str, plus_direction: str = DESCENDING) -> str:
    return plus_direction if sign == "+" else other(plus_direction)


@dataclass(frozen=True)
class EvalCurrent:
    sign: str
    factor_choice: str
    direction: str
    matrix: FormalDist  # 4x4 coefficients on aux (x) V
    L: Mat2  # 2x2 over distributions with 2x2 coefficients

    def zero_mode(self, i: int, j: int) -> ScalarMatrix:
        return self.L[(i, j)][(0,)]


def _swap_factors(entries: dict) -> dict:
    def sw(k):
        a, b = divmod(k, 2)
        return 2 * b + a
    return {(sw(i), sw(j)): v for (i, j), v in entries.items()}


def _blocks(M: FormalDist) -> Mat2:
    """Split a 4x4-coefficient distribution into auxiliary blocks."""
    out = []
    for i in range(2):
        for j in range(2):
            def block(m, i=i, j=j):
                return ScalarMatrix(2, {(k, l): m[(2 * i + k, 2 * j + l)]
                                        for k in range(2) for l in range(2)})
            out.append(M.map(block, ScalarMatrix(2)))
    return Mat2(*out)


def eval_L(sign: str, factor_choice: str, window, plus_direction: str = DESCENDING) -> EvalCurrent:
    """L(z) without validation (see `build_eval_L`)."""
    entries = r_entries(A)
    if factor_choice == "second-leg":
        entries = _swap_factors(entries)
    elif factor_choice != "first-leg":
        raise ValueError(f"unknown factor choice {factor_choice!r}")
    direction = sign_direction(sign, plus_direction)
    M = rational_matrix_series(entries, 4, direction, window)
    return EvalCurrent(sign, factor_choice, direction, M, _blocks(M))


def triangularity_violation(cur: EvalCurrent):
    """(entry, nonzero zero-mode) breaking the triangularity constraint, or None."""
    ij = (2, 1) if cur.sign == "+" else (1, 2)
    c = cur.zero_mode(*ij)
    return (ij, c) if c else None


def build_eval_L(sign: str, factor_choice: str | None = None, window=(-12, 12),
                 plus_direction: str = DESCENDING) -> EvalCurrent:
    """L(z) for one sign, checked against the zero-mode constraints.

    With ``factor_choice=None`` both choices are tried and the admissible
    one returned.
    """
    choices = FACTOR_CHOICES if factor_choice is None else (factor_choice,)
    rejected = []
    for ch in choices:
        cur = eval_L(sign, ch, window, plus_direction)
        bad = triangularity_violation(cur)
        if bad is None:
            return cur
        rejected.append((ch, bad))
    msg = "; ".join(f"{ch}: entry {ij} zero mode {c}" for ch, (ij, c) in rejected)
    raise TriangularityError(f"no admissible factor choice for sign {sign}: {msg}")


def factor_choice_table(window=(-2, 2), plus_direction: str = DESCENDING) -> dict:
    """For each sign and choice: None if admissible, else the violating entry."""
    return {(s, ch): triangularity_violation(eval_L(s, ch, window, plus_direction))
            for s in ("+", "-") for ch in FACTOR_CHOICES}


@dataclass
class EvalModel:
    """Both L matrices of the representation and their Gauss components."""

    plus: EvalCurrent
    minus: EvalCurrent
    window: tuple
    plus_direction: str

    def current(self, sign: str) -> EvalCurrent:
        return self.plus if sign == "+" else self.minus

    def gauss(self, sign: str) -> GaussFactors:
        cache = self.__dict__.setdefault("_gauss", {})
        if sign not in cache:
            cache[sign] = gauss_decompose(self.current(sign).L, (self.window,), None, sign)
        return cache[sign]


def eval_model(window=(-12, 12), plus_direction: str = DESCENDING, factor_choice=None) -> EvalModel:
    return EvalModel(build_eval_L("+", factor_choice, window, plus_direction),
                     build_eval_L("-", factor_choice, window, plus_direction),
                     window, plus_direction)


def margin_window(N: int) -> tuple:
    """Window for one-variable inputs so (z, w) products are exact on |exp| <= N."""
    return (-2 * N - 2, 2 * N + 2)


# -- closed forms of the Gauss components (an independent oracle) -----------

def gauss_closed_forms(factor_choice: str = "first-leg") -> dict:
    """Rational entries {component: {(i, j): (num, den)}} in z, 0-based.

    With b = q(a - z)/(a - q^2 z), for the first-leg choice:
    k1 = diag(1, b),  k2 = diag((q^2 a - z)/(q(a - z)), 1),
    e = a(1 - q^2)/(q(a - z)) E_01,  f = z(1 - q^2)/(q(a - z)) E_10.
    The second-leg choice exchanges the scalar factors of e and f.
    """
    q2 = Q * Q
    one = {0: ONE}
    qaz = {0: A * Q, 1: -Q}
    ea = ({0: A * (ONE - q2)}, qaz)
    fz = ({1: ONE - q2}, qaz)
    if factor_choice == "second-leg":
        ea, fz = fz, ea
    elif factor_choice != "first-leg":
        raise ValueError(f"unknown factor choice {factor_choice!r}")
    return {
        "k1": {(0, 0): (one, one), (1, 1): (qaz, {0: A, 1: -q2})},
        "k2": {(0, 0): ({0: q2 * A, 1: -ONE}, qaz), (1, 1): (one, one)},
        "e": {(0, 1): ea},
        "f": {(1, 0): fz},
    }


def closed_form_series(component: str, sign: str, window, plus_direction=DESCENDING,
                       factor_choice="first-leg") -> FormalDist:
    ent = gauss_closed_forms(factor_choice)[component]
    return rational_matrix_series(ent, 2, sign_direction(sign, plus_direction), window)


# -- prefactors and small helpers ------------------------------------------------

def diag_series(num: dict, den: dict, direction: str, N: int) -> FormalDist:
    """g(z/w) for a rational g(x), expanded in x, on |exp| <= N, with
    scalar-identity 2x2 coefficients."""
    s = rational_matrix_series({(0, 0): (num, den), (1, 1): (num, den)}, 2, direction, (-N, N))
    return _pair_like(s)


def _pair_like(s: FormalDist) -> FormalDist:
    iv = s.support[0]
    neg = (None if iv[1] is None else -iv[1], None if iv[0] is None else -iv[0])
    dbl = (None if iv[0] is None else 2 * iv[0], None if iv[1] is None else 2 * iv[1])
    coeffs = {(k[0], -k[0]): v for k, v in s.coeffs.items()}
    return FormalDist(2, coeffs, (iv, neg, (0, 0), dbl), [(k[0], -k[0]) for k in s.domain],
                      ScalarMatrix(2))


def poly2(terms: dict) -> FormalDist:
    """Finite (z, w) polynomial with scalar-identity coefficients."""
    coeffs = {k: ScalarMatrix.identity(2, v) for k, v in terms.items()}
    return FormalDist.from_coeffs(coeffs, ((min(k[0] for k in terms), max(k[0] for k in terms)),
                                           (min(k[1] for k in terms), max(k[1] for k in terms))))


def _compare_check(name, anchor, lhs, rhs, box, where="", transform=None):
    try:
        return equality_check(name, anchor, dist_compare(lhs, rhs, box, transform), where)
    except WindowError as exc:
        return inconclusive(name, anchor, str(exc))


def _prod(*ds, window=None, inner=None):
    """Left-to-right product, exact on ``window``; intermediate results are
    kept on the (larger) ``inner`` box so later factors can still reach them."""
    out = ds[0]
    for i, d in enumerate(ds[1:], start=2):
        out = dist_mul(out, d, window if i == len(ds) else (inner or window))
    return out


# -- RLL --------------------------------------------------------------------------

def _L_on(cur: EvalCurrent, slot: int, var: int) -> FormalDist:
    return cur.matrix.map(lambda m: embed_pair(m, slot, 2), ScalarMatrix(8)).lift(var)


def r_ratio(direction: str, N: int) -> FormalDist:
    """R12(z/w) on (C^2)^(x3), expanded in powers of z/w in ``direction``."""
    R = rational_matrix_series(r_entries(), 4, direction, (-N, N))
    return _pair_dist(R, 0, 1, "z/w")


def rll_r_direction(plus_direction: str = DESCENDING) -> str:
    """Expansion direction of R(z/w) in every RLL relation.

    The mixed relation only admits one finite expansion, that of L+(z);
    the same-sign relations hold in either direction and use it too.
    """
    return plus_direction


def rll_sides(model: EvalModel, s1: str, s2: str, N: int, r_direction: str | None = None,
              box=None):
    box = box or ((-N, N), (-N, N))
    r_direction = r_direction or rll_r_direction(model.plus_direction)
    R = r_ratio(r_direction, 2 * N + 2)
    L1 = _L_on(model.current(s1), 0, 0)
    L2 = _L_on(model.current(s2), 1, 1)
    lhs = dist_mul(R, dist_mul(L1, L2), box)
    rhs = dist_mul(dist_mul(L2, L1), R, box)
    return lhs, rhs


def check_rll(N: int = 5, model: EvalModel | None = None, box=None, transform=None) -> list:
    """Every RLL relation family at level zero on |exp| <= N (or on ``box``)."""
    model = model or eval_model(margin_window(N))
    box = box or ((-N, N), (-N, N))
    checks = []
    zp, zm = model.plus, model.minus
    tri = []
    for cur, ij in ((zp, (2, 1)), (zm, (1, 2))):
        c = cur.zero_mode(*ij)
        if c:
            tri.append(((0,), c, ScalarMatrix(2)))
    checks.append(equality_check("rll.zero-mode-triangularity", "zero modes l+21[0] = l-12[0] = 0",
                                 tri))
    inv = []
    for i in (1, 2):
        a, b = zp.zero_mode(i, i), zm.zero_mode(i, i)
        I = ScalarMatrix.identity(2)
        for prod, tag in ((a * b, f"l+{i}{i}[0] l-{i}{i}[0]"), (b * a, f"l-{i}{i}[0] l+{i}{i}[0]")):
            if prod != I:
                inv.append(((0,), prod, I))
    checks.append(equality_check("rll.zero-mode-inverses", "l+ii[0] l-ii[0] = l-ii[0] l+ii[0] = 1",
                                 inv))
    for s1, s2, name, anchor in (("+", "+", "rll.exchange++", "R(z/w) L+1(z) L+2(w) = L+2(w) L+1(z) R(z/w)"),
                                 ("-", "-", "rll.exchange--", "R(z/w) L-1(z) L-2(w) = L-2(w) L-1(z) R(z/w)"),
                                 ("+", "-", "rll.exchange+-", "R(z/w) L+1(z) L-2(w) = L-2(w) L+1(z) R(z/w), level 0")):
        try:
            lhs, rhs = rll_sides(model, s1, s2, N, box=box)
        except SupportError as exc:
            checks.append(inconclusive(name, anchor, str(exc)))
            continue
        checks.append(_compare_check(name, anchor, lhs, rhs, box, transform=transform))
    return checks


# -- Drinfeld relations -----------------------------------------------------------

def drinfeld_currents(model: EvalModel) -> dict:
    """k1+-, k2+-, their inverses and X+- = e+ - e-, f+ - f- (level zero)."""
    win = (model.window,)
    out = {}
    for s in ("+", "-"):
        g = model.gauss(s)
        out[f"k1{s}"] = g.k1
        out[f"k2{s}"] = g.k2
        out[f"k1{s}^-1"] = dist_inverse(g.k1, win)
        out[f"k2{s}^-1"] = dist_inverse(g.k2, win)
        out[f"e{s}"] = g.e
        out[f"f{s}"] = g.f
    out["X+"] = out["e+"] - out["e-"]
    out["X-"] = out["f+"] - out["f-"]
    return out


def _xq(c1, c0):
    """Linear polynomial c1*x + c0 in x."""
    return {1: c1, 0: c0}


def drinfeld_relations(model: EvalModel, N: int, box=None):
    """Yield (name, anchor, thunk, box) where thunk() returns (lhs, rhs)."""
    cur = drinfeld_currents(model)
    box = box or ((-N, N), (-N, N))
    qi = Q.inverse()
    M = 2 * N + 2
    Z = lambda name: cur[name].lift(0)
    Wv = lambda name: cur[name].lift(1)
    inner = ((-2 * N, 2 * N), (-2 * N, 2 * N))
    mul = lambda *ds: _prod(*ds, window=box, inner=inner)
    dirof = {s: sign_direction(s, model.plus_direction) for s in ("+", "-")}
    I2 = ScalarMatrix.identity(2)

    def zero_modes():
        bad_l, bad_r = [], []
        for i in (1, 2):
            a, b = cur[f"k{i}+"][(0,)], cur[f"k{i}-"][(0,)]
            bad_l.append(a * b)
            bad_r.append(b * a)
        lhs = FormalDist.from_coeffs({(i,): m for i, m in enumerate(bad_l + bad_r)}, ((0, 3),))
        rhs = FormalDist.from_coeffs({(i,): I2 for i in range(4)}, ((0, 3),))
        return lhs, rhs

    yield ("drinfeld.k-zero-mode-inverses", "k+i0 k-i0 = k-i0 k+i0 = 1", zero_modes, ((0, 3),))

    for i in (1, 2):
        for s in ("+", "-"):
            k = f"k{i}{s}"
            yield (f"drinfeld.k{i}{s}k{i}{s}-commute", f"k{s}{i}(z)k{s}{i}(w) = k{s}{i}(w)k{s}{i}(z)",
                   lambda k=k: (mul(Z(k), Wv(k)), mul(Wv(k), Z(k))), box)
        kp, km = f"k{i}+", f"k{i}-"
        yield (f"drinfeld.k{i}+k{i}--commute", f"k+{i}(z)k-{i}(w) = k-{i}(w)k+{i}(z)",
               lambda kp=kp, km=km: (mul(Z(kp), Wv(km)), mul(Wv(km), Z(kp))), box)

    # (z-w)/(zq-wq^-1) k^s'_1(z) k^s_2(w) = k^s_2(w) k^s'_1(z) (same), s' = -s at level zero
    pref = ({1: ONE, 0: -ONE}, _xq(Q, -qi))
    for s in ("+", "-"):
        t = "-" if s == "+" else "+"
        k1, k2 = f"k1{t}", f"k2{s}"

        def k1k2(k1=k1, k2=k2, t=t):
            p = diag_series(*pref, dirof[t], M)
            return mul(p, Z(k1), Wv(k2)), mul(Wv(k2), Z(k1), p)
        yield (f"drinfeld.k1{t}k2{s}-exchange",
               f"(z-w)/(zq-wq^-1) k{t}1(z)k{s}2(w) = k{s}2(w)k{t}1(z)(z-w)/(zq-wq^-1)", k1k2, box)

    # conjugation of X+- by k^s_i(z): prefactor g(z/w) expanded like k^s_i(z)
    g1 = (_xq(Q, -qi), {1: ONE, 0: -ONE})  # (xq - q^-1)/(x - 1)
    g2 = (_xq(qi, -Q), {1: ONE, 0: -ONE})  # (xq^-1 - q)/(x - 1)
    for s in ("+", "-"):
        for i, g in ((1, g1), (2, g2)):
            k, ki = f"k{i}{s}", f"k{i}{s}^-1"

            def conj_plus(k=k, ki=ki, g=g, s=s):
                p = diag_series(*g, dirof[s], M)
                return mul(Z(k), Wv("X+"), Z(ki)), mul(p, Wv("X+"))

            def conj_minus(k=k, ki=ki, g=g, s=s):
                p = diag_series(*g, dirof[s], M)
                return mul(Z(ki), Wv("X-"), Z(k)), mul(p, Wv("X-"))
            yield (f"drinfeld.k{i}{s}-conjugates-X+", f"k{s}{i}(z) X+(w) k{s}{i}(z)^-1 = g{i}(z/w) X+(w)",
                   conj_plus, box)
            yield (f"drinfeld.k{i}{s}-conjugates-X-", f"k{s}{i}(z)^-1 X-(w) k{s}{i}(z) = g{i}(z/w) X-(w)",
                   conj_minus, box)

    for s, (a1, b1, a2, b2) in (("+", (Q, -qi, qi, -Q)), ("-", (qi, -Q, Q, -qi))):
        x = f"X{s}"

        def xx(x=x, a1=a1, b1=b1, a2=a2, b2=b2):
            left = poly2({(1, 0): a1, (0, 1): b1})
            right = poly2({(1, 0): a2, (0, 1): b2})
            return mul(left, Z(x), Wv(x)), mul(Wv(x), Z(x), right)
        yield (f"drinfeld.X{s}X{s}-exchange", f"(zq^(+-1) - wq^(-+1)) X{s}(z)X{s}(w) = X{s}(w)X{s}(z)(zq^(-+1) - wq^(+-1))",
               xx, box)

    def bracket():
        lhs = mul(Z("X+"), Wv("X-")) - mul(Wv("X-"), Z("X+"))
        big = ((-M, M), (-M, M))
        delta = delta_dist(big, I2)
        minus_part = mul(delta, Wv("k2-"), Wv("k1-^-1"))
        plus_part = mul(delta, Z("k2+"), Z("k1+^-1"))
        rhs = (minus_part - plus_part).map(lambda m: m * (Q - qi), ScalarMatrix(2))
        return lhs, rhs
    yield ("drinfeld.X+X--bracket", "[X+(z), X-(w)] = (q-q^-1)(d(z/w)k-2(w)k-1(w)^-1 - d(z/w)k+2(z)k+1(z)^-1)",
           bracket, box)


def check_drinfeld(N: int = 5, model: EvalModel | None = None, box=None, transform=None) -> list:
    """Every Drinfeld relation at level zero on |exp| <= N (or on ``box``)."""
    model = model or eval_model(margin_window(N))
    checks = []
    for name, anchor, thunk, cbox in drinfeld_relations(model, N, box):
        try:
            lhs, rhs = thunk()
        except SupportError as exc:
            checks.append(inconclusive(name, anchor, str(exc)))
            continue
        checks.append(_compare_check(name, anchor, lhs, rhs, cbox, transform=transform))
    return checks


def check_gauss_roundtrip(N: int = 5, model: EvalModel | None = None) -> list:
    """Recomposed Gauss components reproduce L+- and match the closed forms."""
    model = model or eval_model(margin_window(N))
    checks = []
    box = ((-N, N),)
    for s in ("+", "-"):
        g = model.gauss(s)
        back = gauss_recompose(g, (model.window,))
        pairs = []
        for ij, mm in mat_compare(back, model.current(s).L, box).items():
            pairs.extend(mm)
        checks.append(equality_check(f"eval.gauss-roundtrip{s}", "L = lower . diag . upper", pairs))
        for comp in ("e", "f", "k1", "k2"):
            closed = closed_form_series(comp, s, model.window, model.plus_direction,
                                        model.current(s).factor_choice)
            checks.append(_compare_check(f"eval.gauss-closed-form.{comp}{s}",
                                         "Gauss component equals its rational closed form",
                                         g.component(comp), closed, box))
    return checks


# -- counterexample -------------------------------------------------------------

def antipode_correction(model: EvalModel, sign: str = "+") -> FormalDist:
    """f(z) k2(z)^-1 e(z) in the representation."""
    g = model.gauss(sign)
    win = (model.window,)
    return _prod(g.f, dist_inverse(g.k2, win), g.e, window=win)


def counterexample_eval(N: int = 5, model: EvalModel | None = None, sign: str = "+",
                        transform=None) -> Check:
    """The correction term separating the two antipodes has a nonzero
    coefficient; the check passes when a witness exists.

    ``transform`` maps coefficients before inspection (e.g. substituting
    q = 1).
    """
    model = model or eval_model(margin_window(N))
    corr = antipode_correction(model, sign)
    name = f"counterexample.eval{sign}"
    anchor = "S(k1) - k1^-1 = f k2^-1 e is nonzero in the representation"
    order = range(0, -N - 1, -1) if model.current(sign).direction == DESCENDING else range(0, N + 1)
    for p in order:
        c = corr[(p,)]
        if transform is not None:
            c = transform(c)
        if c:
            return Check(name, anchor, PASS, [Mismatch((p,), str(c), "0", "witness")])
    return Check(name, anchor, FAIL, [])
