"""Windowed formal distributions in one (z) or two (z, w) spectral variables.

A `FormalDist` stores exact coefficients on a finite set of exponents, its
*domain*, together with an outer bound on where the full (infinite)
distribution can be nonzero, its *support*. The support is a list of
integer intervals, one per linear form of the exponent: z alone in one
variable; z, w, z+w and z-w in two. These four forms describe every
support that occurs here (one-sided currents, delta(z/w), expansions of
rational functions of z/w) and keep the bookkeeping to interval
arithmetic.

A coefficient at exponent t is *known* if t is in the domain or lies
outside the support. Products only produce coefficients whose every
contributing pair is known, so everything stored is exact.
"""
from __future__ import annotations

import itertools
from typing import Callable, Iterable, Mapping

from .freealg import NCPoly
from .scalar import ScalarMatrix, ScalarPoly, ScalarSeries

FORMS = {
    1: ((1,),),
    2: ((1, 0), (0, 1), (1, 1), (1, -1)),
}
# extreme rays of every cone cut out by sign conditions on the forms
_RAYS = {
    1: ((1,), (-1,)),
    2: ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1), (1, -1), (-1, 1)),
}
VARS = ("z", "w")

FULL = (None, None)


class SupportError(ValueError):
    """A product would need infinitely many terms per coefficient."""


class WindowError(ValueError):
    """A requested exponent is not known exactly."""


# -- interval helpers ---------------------------------------------------------

def _iadd(a, b):
    return (None if a[0] is None or b[0] is None else a[0] + b[0],
            None if a[1] is None or b[1] is None else a[1] + b[1])


def _ineg(a):
    return (None if a[1] is None else -a[1], None if a[0] is None else -a[0])


def _icap(a, b):
    lo = a[0] if b[0] is None else b[0] if a[0] is None else max(a[0], b[0])
    hi = a[1] if b[1] is None else b[1] if a[1] is None else min(a[1], b[1])
    return (lo, hi)


def _ihull(a, b):
    lo = None if a[0] is None or b[0] is None else min(a[0], b[0])
    hi = None if a[1] is None or b[1] is None else max(a[1], b[1])
    return (lo, hi)


def _icontains(a, x):
    return (a[0] is None or x >= a[0]) and (a[1] is None or x <= a[1])


def _ihalf(a):
    # integer points x with 2x in a
    return (None if a[0] is None else -((-a[0]) // 2), None if a[1] is None else a[1] // 2)


def _rec_ok(iv, sign):
    """Does the recession cone of interval ``iv`` contain sign*R>=0?"""
    if sign == 0:
        return True
    return iv[1] is None if sign > 0 else iv[0] is None


def _dot(f, x):
    return sum(a * b for a, b in zip(f, x))


def zero_like(c):
    if isinstance(c, NCPoly):
        return NCPoly.zero(c.legs)
    if isinstance(c, ScalarMatrix):
        return ScalarMatrix(c.n)
    return ScalarPoly()


def one_like(c):
    """Multiplicative unit of the coefficient ring ``c`` lives in."""
    if isinstance(c, NCPoly):
        return NCPoly.one(c.legs)
    if isinstance(c, ScalarMatrix):
        return ScalarMatrix.identity(c.n)
    return ScalarPoly.const(1)


def box(window) -> list:
    """All integer points of a box given as ((lo, hi), ...) per variable."""
    return [tuple(p) for p in itertools.product(*(range(lo, hi + 1) for lo, hi in window))]


class FormalDist:
    """Windowed formal distribution; see the module docstring."""

    __slots__ = ("nvars", "coeffs", "support", "domain", "zero")

    def __init__(self, nvars: int, coeffs: Mapping[tuple, object], support,
                 domain: Iterable[tuple], zero=None):
        self.nvars = nvars
        self.support = tuple(tuple(iv) for iv in support)
        if len(self.support) != len(FORMS[nvars]):
            raise ValueError("support needs one interval per linear form")
        self.domain = frozenset(domain)
        c = {}
        for k, v in coeffs.items():
            if k not in self.domain:
                raise ValueError(f"coefficient at {k} outside the domain")
            if not self.in_support(k):
                if v:
                    raise ValueError(f"nonzero coefficient at {k} outside the support")
                continue
            if v:
                c[k] = v
        self.coeffs = c
        if zero is None:
            zero = zero_like(next(iter(c.values()))) if c else 0
        self.zero = zero

    # construction -------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Mapping, window, support=None, zero=None) -> "FormalDist":
        """Coefficients known on the whole box ``window``.

        ``support`` defaults to the per-variable hull of the nonzero
        exponents (i.e. a finite distribution).
        """
        nvars = len(window)
        if support is None:
            support = finite_support(coeffs.keys(), nvars)
        elif len(support) == nvars and nvars == 2:
            support = support_from_vars(*support)
        return cls(nvars, dict(coeffs), support, box(window), zero)

    @classmethod
    def constant(cls, c, nvars: int = 1, window=None) -> "FormalDist":
        origin = (0,) * nvars
        window = window or ((0, 0),) * nvars
        return cls(nvars, {origin: c}, [(0, 0)] * len(FORMS[nvars]), box(window), zero_like(c))

    @classmethod
    def from_series(cls, s: ScalarSeries) -> "FormalDist":
        if s.support == "lower":
            iv = (s.bound, None)
        elif s.support == "upper":
            iv = (None, s.bound)
        else:
            iv = (0, 0)
        return cls(1, {(n,): c for n, c in s.coeffs.items()}, [iv],
                   [(n,) for n in range(s.window[0], s.window[1] + 1)], ScalarPoly())

    # queries ------------------------------------------------------------

    def in_support(self, t) -> bool:
        return all(_icontains(iv, _dot(f, t)) for f, iv in zip(FORMS[self.nvars], self.support))

    def known(self, t) -> bool:
        return t in self.domain or not self.in_support(t)

    def __getitem__(self, t):
        if isinstance(t, int):
            t = (t,)
        if t in self.domain:
            return self.coeffs.get(t, self.zero)
        if not self.in_support(t):
            return self.zero
        raise WindowError(f"coefficient at {t} is not known exactly")

    def var_interval(self, i: int):
        """Support interval of variable i."""
        return self.support[i]

    def support_class(self, i: int = 0) -> str:
        lo, hi = self.support[i]
        if lo is not None and hi is not None:
            return "finite"
        if lo is not None:
            return "lower-bounded"
        if hi is not None:
            return "upper-bounded"
        if self.nvars == 2 and self.support[2] == (0, 0):
            return "two-sided-delta"
        return "two-sided"

    def bounding_box(self):
        if not self.domain:
            return None
        return tuple((min(p[i] for p in self.domain), max(p[i] for p in self.domain))
                     for i in range(self.nvars))

    def is_zero(self) -> bool:
        return not self.coeffs

    # unary operations -----------------------------------------------------

    def map(self, fn: Callable, zero=None) -> "FormalDist":
        out = {}
        for k, v in self.coeffs.items():
            c = fn(v)
            if c:
                out[k] = c
        if zero is None:
            zero = fn(self.zero) if not isinstance(self.zero, int) else None
        return FormalDist(self.nvars, out, self.support, self.domain, zero)

    def __neg__(self):
        return self.map(lambda c: -c)

    def lmul(self, c) -> "FormalDist":
        """Left multiplication of every coefficient by a constant."""
        return self.map(lambda v: c * v if not isinstance(c, NCPoly) else c.mul(v))

    def rmul(self, c) -> "FormalDist":
        return self.map(lambda v: v * c if not isinstance(v, NCPoly) else v.mul(c))

    def restrict(self, window) -> "FormalDist":
        pts = {p for p in self.domain if all(lo <= x <= hi for x, (lo, hi) in zip(p, window))}
        return FormalDist(self.nvars, {k: v for k, v in self.coeffs.items() if k in pts},
                          self.support, pts, self.zero)

    def with_support(self, support) -> "FormalDist":
        """Tighten the support bound (caller guarantees correctness)."""
        return FormalDist(self.nvars, self.coeffs, support, self.domain, self.zero)

    def lift(self, var: int, nvars: int = 2) -> "FormalDist":
        """View a one-variable distribution as a distribution in (z, w)."""
        if self.nvars != 1 or nvars != 2:
            raise ValueError("lift maps one variable to two")
        iv = self.support[0]
        if var == 0:
            support = (iv, (0, 0), iv, iv)
            emb = lambda n: (n, 0)
        else:
            support = ((0, 0), iv, iv, _ineg(iv))
            emb = lambda n: (0, n)
        return FormalDist(2, {emb(k[0]): v for k, v in self.coeffs.items()}, support,
                          [emb(k[0]) for k in self.domain], self.zero)

    def shift(self, var: int, unit: ScalarPoly) -> "FormalDist":
        """Substitute var -> var*unit: the coefficient at n picks up unit**n."""
        if not unit.is_monomial():
            raise ValueError("shifts are by monomial units only")
        powers = {}

        def scaled(k, v):
            n = k[var]
            if n == 0:
                return v
            p = powers.get(n)
            if p is None:
                p = powers[n] = unit ** n
            return v * p

        out = {k: scaled(k, v) for k, v in self.coeffs.items()}
        return FormalDist(self.nvars, out, self.support, self.domain, self.zero)

    # binary operations ------------------------------------------------------

    def _linear(self, other: "FormalDist", sign: int) -> "FormalDist":
        if other.nvars != self.nvars:
            raise ValueError("variable mismatch")
        support = tuple(_ihull(a, b) for a, b in zip(self.support, other.support))
        pts = {t for t in self.domain | other.domain if self.known(t) and other.known(t)}
        out = {}
        for t in pts:
            a = self.coeffs.get(t)
            b = other.coeffs.get(t)
            if b is not None and sign < 0:
                b = -b
            c = b if a is None else a if b is None else a + b
            if c is not None and c:
                out[t] = c
        zero = self.zero if not isinstance(self.zero, int) else other.zero
        return FormalDist(self.nvars, out, support, pts, zero)

    def __add__(self, other):
        return self._linear(other, 1)

    def __sub__(self, other):
        return self._linear(other, -1)

    def __mul__(self, other):
        return dist_mul(self, other)

    def truncate(self, max_weight: int) -> "FormalDist":
        return self.map(lambda c: c.truncate(max_weight) if isinstance(c, NCPoly) else c)

    def __repr__(self):
        bb = self.bounding_box()
        return (f"FormalDist(nvars={self.nvars}, support={self.support}, "
                f"box={bb}, nonzero={len(self.coeffs)})")


def finite_support(keys, nvars):
    keys = list(keys)
    if not keys:
        return [(0, 0)] * len(FORMS[nvars])
    out = []
    for f in FORMS[nvars]:
        vals = [_dot(f, k) for k in keys]
        out.append((min(vals), max(vals)))
    return out


def support_from_vars(zi, wi):
    """Four-form support implied by independent z and w intervals."""
    return (zi, wi, _iadd(zi, wi), _iadd(zi, _ineg(wi)))


def compatible(A: FormalDist, B: FormalDist) -> bool:
    """True when every product coefficient is a finite sum."""
    forms = FORMS[A.nvars]
    for d in _RAYS[A.nvars]:
        if all(_rec_ok(ia, _dot(f, d)) and _rec_ok(ib, -_dot(f, d))
               for f, ia, ib in zip(forms, A.support, B.support)):
            return False
    return True


def _region(t, A: FormalDist, B: FormalDist):
    """Integer exponents a with a in supp(A) and t - a in supp(B)."""
    forms = FORMS[A.nvars]
    cons = [_icap(ia, _iadd((_dot(f, t), _dot(f, t)), _ineg(ib)))
            for f, ia, ib in zip(forms, A.support, B.support)]
    if A.nvars == 1:
        lo, hi = cons[0]
        if lo is None or hi is None:
            raise SupportError("unbounded convolution")
        return [(a,) for a in range(lo, hi + 1)]
    Z, Wv, S, D = cons
    for _ in range(6):
        Z = _icap(Z, _iadd(S, _ineg(Wv)))
        Z = _icap(Z, _iadd(D, Wv))
        Z = _icap(Z, _ihalf(_iadd(S, D)))
        Wv = _icap(Wv, _iadd(S, _ineg(Z)))
        Wv = _icap(Wv, _iadd(Z, _ineg(D)))
        Wv = _icap(Wv, _ihalf(_iadd(S, _ineg(D))))
        S = _icap(S, _iadd(Z, Wv))
        D = _icap(D, _iadd(Z, _ineg(Wv)))
    if None in Z or None in Wv:
        raise SupportError("unbounded convolution")
    pts = []
    for a in range(Z[0], Z[1] + 1):
        for b in range(Wv[0], Wv[1] + 1):
            if _icontains(S, a + b) and _icontains(D, a - b):
                pts.append((a, b))
    return pts


def dist_mul(A: FormalDist, B: FormalDist, window=None, max_weight: int | None = None,
             opposite: bool = False) -> FormalDist:
    """Exact product A*B on every exponent where it is determined.

    ``window`` (a box) limits the exponents computed. ``max_weight`` is
    forwarded to free-algebra coefficient products. ``opposite`` multiplies
    coefficients in reverse order (B's coefficient first).
    """
    if A.nvars != B.nvars:
        raise ValueError("variable mismatch")
    if not compatible(A, B):
        raise SupportError(
            f"support classes {A.support} and {B.support} give infinite convolutions")
    nv = A.nvars
    support = tuple(_iadd(a, b) for a, b in zip(A.support, B.support))
    ba, bb = A.bounding_box(), B.bounding_box()
    if ba is None or bb is None:
        return FormalDist(nv, {}, support, [], A.zero)
    targets_box = [(x[0] + y[0], x[1] + y[1]) for x, y in zip(ba, bb)]
    if window is not None:
        targets_box = [(max(lo, wl), min(hi, wh)) for (lo, hi), (wl, wh) in zip(targets_box, window)]
    nc = isinstance(A.zero, NCPoly) or isinstance(B.zero, NCPoly)
    out = {}
    dom = []
    for t in box(targets_box):
        acc = None
        exact = True
        for a in _region(t, A, B):
            b = tuple(x - y for x, y in zip(t, a))
            if a not in A.domain or b not in B.domain:
                exact = False
                break
            ca = A.coeffs.get(a)
            if ca is None:
                continue
            cb = B.coeffs.get(b)
            if cb is None:
                continue
            x, y = (cb, ca) if opposite else (ca, cb)
            p = x.mul(y, max_weight) if nc else x * y
            acc = p if acc is None else acc + p
        if not exact:
            continue
        dom.append(t)
        if acc is not None and acc:
            out[t] = acc
    zero = A.zero if not isinstance(A.zero, int) else B.zero
    return FormalDist(nv, out, support, dom, zero)


def dist_shift(A: FormalDist, var: int, unit: ScalarPoly) -> FormalDist:
    return A.shift(var, unit)


def delta_dist(window, c=None) -> FormalDist:
    """delta(z/w) = sum_m z^m w^-m on a (z, w) box; ``c`` is the coefficient
    (default the scalar 1)."""
    c = ScalarPoly.const(1) if c is None else c
    pts = box(window)
    coeffs = {p: c for p in pts if p[0] + p[1] == 0}
    return FormalDist(2, coeffs, (FULL, FULL, (0, 0), FULL), pts, zero_like(c))


def dist_compare(A: FormalDist, B: FormalDist, window, transform=None) -> list:
    """Mismatching coefficients on a box: list of (exponent, lhs, rhs).

    Raises WindowError if a point of the window is not known exactly on
    either side. ``transform`` maps coefficients before comparison (used
    by the rational spot-check mode).
    """
    bad = []
    for t in box(window):
        a, b = A[t], B[t]
        if transform is not None:
            a, b = transform(a), transform(b)
        if not _equal(a, b):
            bad.append((t, a, b))
    return bad


def _equal(a, b) -> bool:
    if isinstance(a, int) and a == 0:
        return not b
    if isinstance(b, int) and b == 0:
        return not a
    return a == b


def geometric(X: FormalDist, window=None, max_weight=None, sign: int = -1,
              max_terms: int = 10_000) -> FormalDist:
    """sum_{n>=0} (sign*X)^n, for X whose support excludes the origin on one side.

    The series stops once the support of (sign*X)^n no longer meets the
    window, which happens after finitely many steps.
    """
    window = window or X.bounding_box()
    step = X if sign > 0 else -X
    if X.coeffs:
        one = one_like(next(iter(X.coeffs.values())))
    else:
        one = ScalarPoly.const(1) if isinstance(X.zero, int) else one_like(X.zero)
    total = FormalDist.constant(one, X.nvars, window)
    if not X.coeffs:
        return total
    term = total
    for _ in range(max_terms):
        term = dist_mul(term, step, window, max_weight)
        if not any(term.in_support(t) for t in box(window)):
            return total
        total = total + term
    raise RuntimeError("geometric series failed to terminate; support touches the origin")


def _strip_origin(iv):
    lo, hi = iv
    if lo == 0:
        return (1, hi)
    if hi == 0:
        return (lo, -1)
    raise SupportError("leading term is not at an end of the support")


def dist_inverse(x: FormalDist, window=None, max_weight=None) -> FormalDist:
    """Inverse of a one-variable series with an invertible constant term.

    Writes x = x0 (1 + u) with u = x0^-1 (x - x0) and returns
    sum_m (-u)^m x0^-1.
    """
    if x.nvars != 1:
        raise ValueError("inverse is implemented for one-variable series")
    origin = (0,)
    window = window or x.bounding_box()
    x0 = x[origin]
    try:
        x0inv = x0.inverse()
    except (ZeroDivisionError, AttributeError) as exc:
        raise ZeroDivisionError(f"leading term {x0} is not invertible") from exc
    rest = {k: v for k, v in x.coeffs.items() if k != origin}
    supp = _strip_origin(x.support[0])
    rest_d = FormalDist(1, rest, [supp], x.domain, x.zero)
    u = rest_d.lmul(x0inv)
    if not u.coeffs:
        return FormalDist(1, {origin: x0inv}, [(0, 0)], box(window), x.zero)
    g = geometric(u, window, max_weight, sign=-1)
    inv = FormalDist.constant(x0inv, 1, window)
    return dist_mul(g, inv, window, max_weight)
