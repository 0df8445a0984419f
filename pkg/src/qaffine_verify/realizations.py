"""Both realizations and their Hopf structures, symbolically.

Conventions used throughout (all currents are windowed `FormalDist`s in z):

* The mode n of any current sits at z^-n. '+' currents only have modes
  n >= 0 (so they are series in z^-1) and '-' currents modes n <= 0.
  e+ and f- have no zero mode.
* R(x) is expanded in whichever direction makes a relation's products
  finite; the symbolic side never needs R.
* Central units: g1 and g2 are q^(c/2) on tensor legs 1 and 2 (g3 on a
  third leg for coassociativity). The one-leg algebra uses g1 as its own
  q^(c/2).
* Coproduct arguments: leg 1 is evaluated at z*g2^(+-1) and leg 2 at
  z*g1^(-+1). This is the reading under which the closed formulas agree
  with the Gauss components of the matrix coproduct; ``labels="swapped"``
  selects the other labelling for comparison.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .dist import FormalDist, dist_inverse, dist_mul, geometric
from .freealg import FAMILIES, Gen, NCPoly, apply_legwise, embed, multiply_legs, weight_truncate
from .gauss import GaussFactors, Mat2, gauss_decompose, gauss_recompose, mat_inverse, mat_mul
from .scalar import ONE, ZERO, ScalarMatrix, ScalarPoly, expand_rational, ASCENDING

G1 = ScalarPoly.unit("g1")
G2 = ScalarPoly.unit("g2")
G3 = ScalarPoly.unit("g3")
Q = ScalarPoly.unit("q")

CURRENTS = ("e", "f", "k1", "k2")


def _sgn(sign: str) -> int:
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return 1 if sign == "+" else -1


# -- R(z) -------------------------------------------------------------------

def r_entries(scale: ScalarPoly = ONE) -> dict:
    """Rational entries of R(z/scale) as {(i, j): (num, den)} polynomials in z.

    Indices are 0-based in the basis v1v1, v1v2, v2v1, v2v2.
    """
    q2 = Q * Q
    den = {0: scale, 1: -q2}
    return {
        (0, 0): ({0: ONE}, {0: ONE}),
        (3, 3): ({0: ONE}, {0: ONE}),
        (1, 1): ({0: scale * Q, 1: -Q}, den),
        (2, 2): ({0: scale * Q, 1: -Q}, den),
        (1, 2): ({1: ONE - q2}, den),
        (2, 1): ({0: scale * (ONE - q2)}, den),
    }


def rational_matrix_series(entries: dict, n: int, direction: str, window) -> FormalDist:
    """Expand every entry of a rational matrix and collect a one-variable
    distribution with ScalarMatrix coefficients."""
    lo, hi = window
    coeffs: dict = {}
    support = None
    for ij, (num, den) in entries.items():
        s = expand_rational(num, den, direction, window)
        for p, c in s.coeffs.items():
            coeffs.setdefault(p, {})[ij] = c
        if s.support != "finite":
            iv = (s.bound, None) if s.support == "lower" else (None, s.bound)
            support = iv if support is None else (
                (min(support[0], iv[0]), None) if iv[1] is None else (None, max(support[1], iv[1])))
    if support is None:
        support = (0, 0)
    out = {(p,): ScalarMatrix(n, ent) for p, ent in coeffs.items()}
    return FormalDist(1, out, [support], [(p,) for p in range(lo, hi + 1)], ScalarMatrix(n))


def r_matrix(window=(0, 6), direction: str = ASCENDING) -> FormalDist:
    """R(z) as printed, expanded in powers of z (or z^-1 for descending)."""
    return rational_matrix_series(r_entries(), 4, direction, window)


def embed_pair(M: ScalarMatrix, i: int, j: int, n: int = 3) -> ScalarMatrix:
    """Act with a 4x4 matrix on tensor factors i < j of (C^2)^(x n)."""
    out: dict = {}
    for (r, c), v in M.entries.items():
        ri, rj = divmod(r, 2)
        ci, cj = divmod(c, 2)
        for rest in range(2 ** (n - 2)):
            bits = [(rest >> b) & 1 for b in range(n - 2)]
            row = []
            col = []
            it = iter(bits)
            for slot in range(n):
                if slot == i:
                    row.append(ri)
                    col.append(ci)
                elif slot == j:
                    row.append(rj)
                    col.append(cj)
                else:
                    b = next(it)
                    row.append(b)
                    col.append(b)
            ri_ = int("".join(map(str, row)), 2)
            ci_ = int("".join(map(str, col)), 2)
            out[(ri_, ci_)] = v
    return ScalarMatrix(2 ** n, out)


def _pair_dist(R: FormalDist, i: int, j: int, placement: str) -> FormalDist:
    """Place a one-variable 4x4 R on factors (i, j) of C^2^(x3) as a (z, w)
    distribution: argument z, w, or z*w."""
    iv = R.support[0]
    zero = ScalarMatrix(8)
    if placement == "z":
        return R.map(lambda m: embed_pair(m, i, j), zero).lift(0)
    if placement == "w":
        return R.map(lambda m: embed_pair(m, i, j), zero).lift(1)
    if placement == "zw":
        coeffs = {(k[0], k[0]): embed_pair(v, i, j) for k, v in R.coeffs.items()}
        dom = [(k[0], k[0]) for k in R.domain]
        sup = (iv, iv, (None if iv[0] is None else 2 * iv[0], None if iv[1] is None else 2 * iv[1]),
               (0, 0))
        return FormalDist(2, coeffs, sup, dom, zero)
    if placement == "z/w":
        coeffs = {(k[0], -k[0]): embed_pair(v, i, j) for k, v in R.coeffs.items()}
        dom = [(k[0], -k[0]) for k in R.domain]
        neg = (None if iv[1] is None else -iv[1], None if iv[0] is None else -iv[0])
        sup = (iv, neg, (0, 0),
               (None if iv[0] is None else 2 * iv[0], None if iv[1] is None else 2 * iv[1]))
        return FormalDist(2, coeffs, sup, dom, zero)
    raise ValueError(placement)


def ybe_sides(window, R: FormalDist | None = None):
    """Both sides of R12(z) R13(zw) R23(w) = R23(w) R13(zw) R12(z)."""
    (zlo, zhi), (wlo, whi) = window
    hi = max(zhi, whi, 0)
    if R is None:
        R = r_matrix((0, hi))
    r12 = _pair_dist(R, 0, 1, "z")
    r13 = _pair_dist(R, 0, 2, "zw")
    r23 = _pair_dist(R, 1, 2, "w")
    inner = ((min(zlo, 0), zhi), (min(wlo, 0), whi))
    lhs = dist_mul(dist_mul(r12, r13, inner), r23, window)
    rhs = dist_mul(dist_mul(r23, r13, inner), r12, window)
    return lhs, rhs


# -- symbolic currents --------------------------------------------------------

def current_support(fam: str, sign: str):
    """Support interval of a current's z-exponents."""
    if sign == "+":
        return (None, -1) if fam == "e" else (None, 0)
    return (1, None) if fam == "f" else (0, None)


def default_window(W: int):
    return (-W, W)


def current(fam: str, sign: str, W: int, window=None) -> FormalDist:
    """Generating series of the free generators of one family and sign,
    with every mode of weight <= W; higher modes are exact zeros modulo the
    weight cutoff."""
    if fam not in FAMILIES:
        raise ValueError(f"unknown current {fam!r}")
    lo, hi = window or default_window(W)
    iv = current_support(fam, sign)
    coeffs = {}
    for p in range(lo, hi + 1):
        inside = (iv[0] is None or p >= iv[0]) and (iv[1] is None or p <= iv[1])
        if inside and abs(p) <= W:
            coeffs[(p,)] = NCPoly.gen(fam, sign, -p)
    return FormalDist(1, coeffs, [iv], [(p,) for p in range(lo, hi + 1)], NCPoly.zero(1))


def symbolic_factors(sign: str, W: int, window=None) -> GaussFactors:
    return GaussFactors(*(current(f, sign, W, window) for f in ("e", "k1", "k2", "f")), sign)


def build_L_symbolic(sign: str, W: int, window=None) -> Mat2:
    """L(z) = lower . diag . upper over the free currents of one sign."""
    window = window or default_window(W)
    return gauss_recompose(symbolic_factors(sign, W, window), (window,), W)


def _on_leg(d: FormalDist, leg: int, unit: ScalarPoly, legs: int = 2) -> FormalDist:
    return d.shift(0, unit).map(lambda c: embed(c, leg, legs), NCPoly.zero(legs))


def _shift_units(sign: str, labels: str):
    s = _sgn(sign)
    if labels == "rs":
        return G2 ** s, G1 ** (-s)
    if labels == "swapped":
        return G1 ** s, G2 ** (-s)
    raise ValueError(f"unknown label convention {labels!r}")


def rs_coproduct(L: Mat2, sign: str, W: int, window=None, labels: str = "rs") -> Mat2:
    """Matrix coproduct: entry (i, j) is sum_k l_ik(z u1) (x) l_kj(z u2)."""
    window = window or default_window(W)
    u1, u2 = _shift_units(sign, labels)
    A = L.map(lambda d: _on_leg(d, 0, u1))
    B = L.map(lambda d: _on_leg(d, 1, u2))
    return mat_mul(A, B, (window,), W)


def rs_counit(L: Mat2) -> Mat2:
    """Apply the counit to every coefficient (zero-mode k words go to 1)."""
    return L.map(lambda d: d.map(lambda c: NCPoly.scalar(counit_word_poly(c)), NCPoly.zero(1)))


@dataclass(frozen=True)
class HopfImage:
    gen: str
    sign: str
    structure: str
    value: FormalDist


def _inv(d: FormalDist, window, W):
    return dist_inverse(d, (window,), W)


def closed_coproduct(fam: str, sign: str, W: int, window=None, labels: str = "rs") -> HopfImage:
    """Closed coproduct formula of one current, as a two-leg distribution."""
    window = window or default_window(W)
    win = (window,)
    u1, u2 = _shift_units(sign, labels)
    e, k1, k2, f = (current(x, sign, W, window) for x in ("e", "k1", "k2", "f"))
    mul = lambda a, b: dist_mul(a, b, win, W)

    def leg1(d):
        return _on_leg(d, 0, u1)

    def leg2(d):
        return _on_leg(d, 1, u2)

    F1, E2 = leg1(f), leg2(e)
    series = geometric(mul(F1, E2), win, W, sign=-1)
    if fam == "k1":
        K1a, K1b = leg1(k1), leg2(k1)
        value = mul(K1a, K1b) + mul(mul(mul(K1a, F1), E2), K1b)
    elif fam == "k2":
        value = mul(mul(leg1(k2), series), leg2(k2))
    elif fam == "e":
        tail = mul(mul(mul(leg1(k2), series), leg1(_inv(k1, window, W))), E2)
        value = leg1(e) + tail
    elif fam == "f":
        tail = mul(mul(mul(F1, leg2(_inv(k1, window, W))), series), leg2(k2))
        value = leg2(f) + tail
    else:
        raise ValueError(f"unknown current {fam!r}")
    return HopfImage(fam, sign, "closed", value.truncate(W))


def closed_antipode(fam: str, sign: str, W: int, window=None, printed: bool = False) -> HopfImage:
    """Closed antipode formula of one current.

    For f two readings exist: the default places k1 before the series,
    -f k2^-1 k1 sum (-f k2^-1 e k1)^n; ``printed=True`` places it after the
    series, -f k2^-1 {sum (-f k2^-1 e k1)^n} k1. They differ from weight 1 on.
    """
    window = window or default_window(W)
    win = (window,)
    e, k1, k2, f = (current(x, sign, W, window) for x in ("e", "k1", "k2", "f"))
    mul = lambda a, b: dist_mul(a, b, win, W)
    k1i, k2i = _inv(k1, window, W), _inv(k2, window, W)
    fk2i = mul(f, k2i)
    if fam == "k1":
        value = k1i + mul(fk2i, e)
    elif fam in ("k2", "e"):
        z_series = geometric(mul(mul(k1, fk2i), e), win, W, sign=-1)
        tail = mul(mul(mul(z_series, k1), k2i), e)
        value = k2i - mul(fk2i, tail) if fam == "k2" else -tail
    elif fam == "f":
        y_series = geometric(mul(mul(fk2i, e), k1), win, W, sign=-1)
        if printed:
            value = -mul(mul(fk2i, y_series), k1)
        else:
            value = -mul(mul(fk2i, k1), y_series)
    else:
        raise ValueError(f"unknown current {fam!r}")
    return HopfImage(fam, sign, "closed", value.truncate(W))


def old_drinfeld_antipode(fam: str, sign: str, W: int, window=None) -> HopfImage:
    """S'(k_i(z)) = k_i(z)^-1 of the older Drinfeld-current Hopf structure."""
    if fam not in ("k1", "k2"):
        raise ValueError("only the k currents are used with this antipode")
    window = window or default_window(W)
    return HopfImage(fam, sign, "old", _inv(current(fam, sign, W, window), window, W))


def rs_transport_coproduct(sign: str, W: int, window=None, labels: str = "rs") -> GaussFactors:
    """Gauss components of the matrix coproduct of L(z)."""
    window = window or default_window(W)
    L = build_L_symbolic(sign, W, window)
    return gauss_decompose(rs_coproduct(L, sign, W, window, labels), (window,), W, sign)


def rs_transport_antipode(sign: str, W: int, window=None) -> GaussFactors:
    """Images of the Gauss components under S(L) = L^-1.

    S reverses products, so the components of L^-1 are read off with the
    opposite-algebra Gauss formulas.
    """
    window = window or default_window(W)
    L = build_L_symbolic(sign, W, window)
    M = mat_inverse(L, (window,), W)
    return gauss_decompose(M, (window,), W, sign, opposite=True)


# -- phi ----------------------------------------------------------------------

def phi_map(W: int, window=None, gamma: ScalarPoly = G1) -> dict:
    """X+(z) = e+(z/g) - e-(zg), X-(z) = f+(zg) - f-(z/g)."""
    window = window or default_window(W)
    gi = gamma.inverse()
    xp = current("e", "+", W, window).shift(0, gi) - current("e", "-", W, window).shift(0, gamma)
    xm = current("f", "+", W, window).shift(0, gamma) - current("f", "-", W, window).shift(0, gi)
    return {"X+": xp, "X-": xm}


def phi_coproduct(W: int, window=None, labels: str = "rs") -> dict:
    """Coproduct of X+- by linearity; the central unit becomes g1*g2."""
    window = window or default_window(W)
    g = G1 * G2
    gi = g.inverse()
    d = {(fam, s): closed_coproduct(fam, s, W, window, labels).value
         for fam in ("e", "f") for s in ("+", "-")}
    return {
        "X+": d[("e", "+")].shift(0, gi) - d[("e", "-")].shift(0, g),
        "X-": d[("f", "+")].shift(0, g) - d[("f", "-")].shift(0, gi),
    }


# -- counit -------------------------------------------------------------------

def counit_gen(g: Gen) -> int:
    return 1 if g.is_zero_mode_k() else 0


def counit_word_poly(x: NCPoly) -> ScalarPoly:
    """Counit of a one-leg element as a scalar."""
    out = ZERO
    for (w,), v in x.terms.items():
        if all(counit_gen(g) for g in w):
            out = out + v
    return out


def apply_counit(x: NCPoly, leg: int, scalar_map=None) -> NCPoly:
    """Apply the counit on one leg, dropping that leg."""
    out: dict = {}
    for k, v in x.terms.items():
        if not all(counit_gen(g) for g in k[leg]):
            continue
        nk = k[:leg] + k[leg + 1:]
        c = scalar_map(v) if scalar_map else v
        s = out.get(nk)
        out[nk] = c if s is None else s + c
    return NCPoly({k: v for k, v in out.items() if v}, x.legs - 1)


# -- mode-level Hopf structure -------------------------------------------------

def _sub(**images):
    imgs = {k: v for k, v in images.items()}
    return lambda c: c.substitute(imgs)


class HopfStructure:
    """Coproduct, antipode and counit on single generator modes, read off
    from the current-level closed formulas at weight cutoff W."""

    def __init__(self, W: int, labels: str = "rs", printed_antipode: bool = False):
        self.W = W
        self.labels = labels
        self.printed_antipode = printed_antipode
        self._delta: dict = {}
        self._anti: dict = {}
        self.overrides: dict = {}

    @lru_cache(maxsize=None)
    def _coproduct_dist(self, fam, sign):
        return closed_coproduct(fam, sign, self.W, default_window(self.W), self.labels).value

    @lru_cache(maxsize=None)
    def _antipode_dist(self, fam, sign):
        return closed_antipode(fam, sign, self.W, default_window(self.W), self.printed_antipode).value

    def delta(self, g: Gen) -> NCPoly:
        if g in self.overrides.get("delta", {}):
            return self.overrides["delta"][g]
        if g.weight > self.W:
            return NCPoly.zero(2)
        out = self._delta.get(g)
        if out is None:
            out = self._delta[g] = self._coproduct_dist(g.fam, g.sign)[(-g.mode,)]
        return out

    def antipode(self, g: Gen) -> NCPoly:
        if g in self.overrides.get("antipode", {}):
            return self.overrides["antipode"][g]
        if g.weight > self.W:
            return NCPoly.zero(1)
        out = self._anti.get(g)
        if out is None:
            out = self._anti[g] = self._antipode_dist(g.fam, g.sign)[(-g.mode,)]
        return out

    def delta_relabelled(self, g: Gen) -> NCPoly:
        """Coproduct with its legs renamed 1 -> 2, 2 -> 3 (scalars g1 -> g2, g2 -> g3)."""
        return self.delta(g).map_scalars(_sub(g1=G2, g2=G3))

    @staticmethod
    def identity(g: Gen) -> NCPoly:
        return NCPoly.word((g,))

    # axioms, each returning (lhs, rhs) for one generator

    def coassociativity(self, g: Gen):
        d = self.delta(g)
        lhs = apply_legwise(d, [(self.delta, 2, False), (self.identity, 1, False)],
                            _sub(g1=G1 * G2, g2=G3), self.W)
        rhs = apply_legwise(d, [(self.identity, 1, False), (self.delta_relabelled, 2, False)],
                            _sub(g2=G2 * G3), self.W)
        return lhs, rhs

    def counit_left(self, g: Gen):
        return apply_counit(self.delta(g), 0, _sub(g1=ONE, g2=G1)), self.identity(g)

    def counit_right(self, g: Gen):
        return apply_counit(self.delta(g), 1, _sub(g2=ONE)), self.identity(g)

    def antipode_left(self, g: Gen):
        x = apply_legwise(self.delta(g), [(self.antipode, 1, True), (self.identity, 1, False)],
                          None, self.W)
        lhs = multiply_legs(x.map_scalars(_sub(g1=G1.inverse(), g2=G1)))
        return weight_truncate(lhs, self.W), NCPoly.scalar(counit_gen(g))

    def antipode_right(self, g: Gen):
        x = apply_legwise(self.delta(g), [(self.identity, 1, False), (self.antipode, 1, True)],
                          None, self.W)
        lhs = multiply_legs(x.map_scalars(_sub(g2=G1.inverse())))
        return weight_truncate(lhs, self.W), NCPoly.scalar(counit_gen(g))


def generator_modes(W: int, families=CURRENTS, signs=("+", "-")):
    """Every generator mode of weight <= W."""
    out = []
    for fam in families:
        for sign in signs:
            lo, hi = current_support(fam, sign)
            for p in range(-W, W + 1):
                if (lo is None or p >= lo) and (hi is None or p <= hi):
                    out.append(Gen(fam, sign, -p))
    return out
