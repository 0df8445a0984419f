"""Exact commutative coefficients.

`ScalarPoly` is a Laurent polynomial over the rationals in a fixed set of
commuting formal units: the deformation parameter ``q``, the evaluation
parameter ``a`` and one central unit ``g1, g2, g3`` per tensor leg (the
value of q^(c/2) on that leg).

`ScalarMatrix` is a sparse square matrix over `ScalarPoly`; it is the
coefficient type of the R-matrix and of the evaluation representation.

`expand_rational` turns a quotient of polynomials in one spectral variable
into a windowed series, expanded either in ascending or descending powers.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

UNITS = ("q", "a", "g1", "g2", "g3")
_NU = len(UNITS)
_ZERO_EXP = (0,) * _NU

ASCENDING = "ascending"
DESCENDING = "descending"


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class ScalarPoly:
    """Laurent polynomial in the formal units with rational coefficients.

    Values are immutable. Zero coefficients are never stored.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def const(cls, c) -> "ScalarPoly":
        if isinstance(c, ScalarPoly):
            return c
        return cls({_ZERO_EXP: _norm(Fraction(c))} if c != 0 else {})

    @classmethod
    def monomial(cls, coeff=1, **exps) -> "ScalarPoly":
        e = [0] * _NU
        for name, k in exps.items():
            e[UNITS.index(name)] = k
        return cls({tuple(e): _norm(Fraction(coeff))})

    @classmethod
    def unit(cls, name: str, exp: int = 1) -> "ScalarPoly":
        return cls.monomial(1, **{name: exp})

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, 0) + v
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        return _raw(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return ZERO
        if len(other.terms) == 1 and len(self.terms) >= 1:
            (ko, vo), = other.terms.items()
            if ko == _ZERO_EXP:
                if vo == 1:
                    return self
                return _raw({k: _norm(v * vo) for k, v in self.terms.items()})
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                s = out.get(k, 0) + v1 * v2
                if s == 0:
                    out.pop(k, None)
                else:
                    out[k] = s
        return _raw({k: _norm(v) for k, v in out.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # structure ----------------------------------------------------------

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> "ScalarPoly":
        """Inverse of a monomial; any other polynomial is not a unit."""
        if len(self.terms) != 1:
            raise ZeroDivisionError(f"{self} is not an invertible monomial")
        (k, v), = self.terms.items()
        return _raw({tuple(-e for e in k): _norm(1 / Fraction(v))})

    def substitute(self, images: Mapping[str, "ScalarPoly"]) -> "ScalarPoly":
        """Ring map sending each named unit to a monomial image."""
        imgs = []
        for i, name in enumerate(UNITS):
            img = images.get(name)
            if img is None:
                continue
            if not img.is_monomial():
                raise ValueError(f"unit image for {name} must be a monomial")
            imgs.append((i, img))
        if not imgs:
            return self
        out = ZERO
        for k, v in self.terms.items():
            e = list(k)
            factor = ONE
            for i, img in imgs:
                if e[i]:
                    factor = factor * img ** e[i]
                    e[i] = 0
            out = out + _raw({tuple(e): v}) * factor
        return out

    def evaluate(self, values: Mapping[str, object]) -> "ScalarPoly":
        """Substitute rational numbers for some units (spot checks)."""
        out = ZERO
        idx = {UNITS.index(n): Fraction(v) for n, v in values.items()}
        for k, v in self.terms.items():
            c = Fraction(v)
            e = list(k)
            for i, val in idx.items():
                if e[i]:
                    if val == 0 and e[i] < 0:
                        raise ZeroDivisionError("negative power of a unit set to 0")
                    c *= val ** e[i]
                    e[i] = 0
            out = out + _raw({tuple(e): _norm(c)})
        return out

    def degree(self, name: str) -> tuple[int, int]:
        i = UNITS.index(name)
        es = [k[i] for k in self.terms]
        return (min(es), max(es)) if es else (0, 0)

    # display ------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            v = self.terms[k]
            mono = "*".join(
                (n if e == 1 else f"{n}^{e}") for n, e in zip(UNITS, k) if e
            )
            if not mono:
                parts.append(str(v))
            elif v == 1:
                parts.append(mono)
            elif v == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{v}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"ScalarPoly({self})"


def _raw(terms: dict) -> ScalarPoly:
    p = ScalarPoly.__new__(ScalarPoly)
    p.terms = terms
    p._hash = None
    return p


def _coerce(x):
    if isinstance(x, ScalarPoly):
        return x
    if isinstance(x, (int, Rational)):
        return ScalarPoly.const(x)
    return NotImplemented


ZERO = ScalarPoly()
ONE = ScalarPoly.const(1)
q = ScalarPoly.unit("q")


def ring_arith(op: str, x: ScalarPoly, y: ScalarPoly | None = None):
    """Dispatch helper: ``op`` in add, mul, neg, eq."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    if op == "eq":
        return x == y
    raise ValueError(f"unknown op {op!r}")


def random_poly(rng: random.Random, nterms: int = 3, span: int = 2,
                units: Iterable[str] = ("q", "g1")) -> ScalarPoly:
    """Small random Laurent polynomial, used by property tests and spot checks."""
    out = ZERO
    for _ in range(nterms):
        exps = {u: rng.randint(-span, span) for u in units}
        out = out + ScalarPoly.monomial(Fraction(rng.randint(-4, 4), rng.randint(1, 3)), **exps)
    return out


# ---------------------------------------------------------------------------
# polynomials in a spectral variable and their directional expansion


ZPoly = Mapping[int, ScalarPoly]   # exponent of the spectral variable -> coeff


@dataclass(frozen=True)
class ScalarSeries:
    """Windowed expansion in one spectral variable.

    ``support`` is ``lower`` (ascending expansion), ``upper`` (descending)
    or ``finite``; ``bound`` is the lowest (resp. highest) exponent that can
    be nonzero. Only exponents inside ``window`` are stored.
    """

    var: str
    coeffs: dict
    support: str
    bound: int | None
    window: tuple[int, int]

    def __getitem__(self, n: int) -> ScalarPoly:
        lo, hi = self.window
        if not lo <= n <= hi:
            raise KeyError(f"exponent {n} outside window {self.window}")
        return self.coeffs.get(n, ZERO)


def zpoly(coeffs: Mapping[int, object]) -> dict:
    """Normalise a {power: coeff} map into ScalarPoly coefficients."""
    out = {}
    for k, v in coeffs.items():
        v = ScalarPoly.const(v) if not isinstance(v, ScalarPoly) else v
        if v:
            out[k] = v
    return out


def zpoly_mul(x: Mapping[int, ScalarPoly], y: Mapping[int, ScalarPoly]) -> dict:
    out: dict = {}
    for i, a in x.items():
        for j, b in y.items():
            out[i + j] = out.get(i + j, ZERO) + a * b
    return {k: v for k, v in out.items() if v}


def expand_rational(num: Mapping[int, object], den: Mapping[int, object],
                    direction: str, window: tuple[int, int],
                    var: str = "z") -> ScalarSeries:
    """Expand num/den in ascending or descending powers of ``var``.

    The leading coefficient of ``den`` in the chosen direction (lowest
    power for ascending, highest for descending) must be an invertible
    monomial. The result S satisfies den*S == num on every exponent whose
    computation only involves in-window coefficients of S.
    """
    num = zpoly(num)
    den = zpoly(den)
    if not den:
        raise ZeroDivisionError("zero denominator")
    lo, hi = window
    if direction == ASCENDING:
        d0 = min(den)
        lead = den[d0]
        sgn = 1
    elif direction == DESCENDING:
        d0 = max(den)
        lead = den[d0]
        sgn = -1
    else:
        raise ValueError(f"unknown direction {direction!r}")
    try:
        inv = lead.inverse()
    except ZeroDivisionError as exc:
        raise ZeroDivisionError(
            f"denominator leading term {lead} is not invertible ({direction})") from exc
    support = "lower" if direction == ASCENDING else "upper"
    if not num:
        return ScalarSeries(var, {}, "finite", None, window)
    n0 = (min(num) if sgn == 1 else max(num)) - d0
    # walk from the series' starting exponent towards the far end of the window
    stop = hi if sgn == 1 else lo
    coeffs: dict = {}
    n = n0
    while (n <= stop) if sgn == 1 else (n >= stop):
        acc = num.get(n + d0, ZERO)
        for k, dk in den.items():
            if k == d0:
                continue
            prev = n + d0 - k
            c = coeffs.get(prev)
            if c is not None:
                acc = acc - dk * c
        c = acc * inv
        if c:
            coeffs[n] = c
        n += sgn
    kept = {k: v for k, v in coeffs.items() if lo <= k <= hi}
    return ScalarSeries(var, kept, support, n0, window)


# ---------------------------------------------------------------------------


class ScalarMatrix:
    """Sparse n-by-n matrix over ScalarPoly (noncommutative under `*`)."""

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: Mapping[tuple[int, int], object] | None = None):
        self.n = n
        ent = {}
        for k, v in (entries or {}).items():
            v = v if isinstance(v, ScalarPoly) else ScalarPoly.const(v)
            if v:
                ent[k] = v
        self.entries = ent

    @classmethod
    def identity(cls, n: int, scale=1) -> "ScalarMatrix":
        return cls(n, {(i, i): scale for i in range(n)})

    @classmethod
    def from_rows(cls, rows) -> "ScalarMatrix":
        n = len(rows)
        return cls(n, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r)})

    def __getitem__(self, ij):
        return self.entries.get(ij, ZERO)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, ZERO) + v
        return ScalarMatrix(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return ScalarMatrix(self.n, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Rational, ScalarPoly)):
            s = ScalarPoly.const(other) if not isinstance(other, ScalarPoly) else other
            return ScalarMatrix(self.n, {k: v * s for k, v in self.entries.items()})
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        rows: dict = {}
        for (i, k), v in self.entries.items():
            rows.setdefault(k, []).append((i, v))
        out: dict = {}
        for (k, j), w in other.entries.items():
            for i, v in rows.get(k, ()):
                out[(i, j)] = out.get((i, j), ZERO) + v * w
        return ScalarMatrix(self.n, out)

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if not isinstance(other, ScalarMatrix):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __hash__(self):
        return hash((self.n, frozenset(self.entries.items())))

    def __bool__(self):
        return bool(self.entries)

    def kron(self, other: "ScalarMatrix") -> "ScalarMatrix":
        m = other.n
        out = {}
        for (i, j), v in self.entries.items():
            for (k, l), w in other.entries.items():
                out[(i * m + k, j * m + l)] = v * w
        return ScalarMatrix(self.n * m, out)

    def transpose(self) -> "ScalarMatrix":
        return ScalarMatrix(self.n, {(j, i): v for (i, j), v in self.entries.items()})

    def map(self, fn) -> "ScalarMatrix":
        return ScalarMatrix(self.n, {k: fn(v) for k, v in self.entries.items()})

    def inverse(self) -> "ScalarMatrix":
        """Gauss-Jordan inverse; every pivot must be an invertible monomial."""
        n = self.n
        a = [[self[(i, j)] for j in range(n)] + [ONE if i == j else ZERO for j in range(n)]
             for i in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col].is_monomial()), None)
            if piv is None:
                raise ZeroDivisionError("matrix has no monomial pivot; not invertible here")
            a[col], a[piv] = a[piv], a[col]
            inv = a[col][col].inverse()
            a[col] = [x * inv for x in a[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return ScalarMatrix(n, {(i, j): a[i][n + j] for i in range(n) for j in range(n)})

    def __str__(self):
        rows = []
        for i in range(self.n):
            rows.append("[" + ", ".join(str(self[(i, j)]) for j in range(self.n)) + "]")
        return "[" + ", ".join(rows) + "]"

    __repr__ = __str__
