"""Free noncommutative algebra on the current modes.

Generators are the modes ``e(sign)[n]``, ``f(sign)[n]``, ``k1(sign)[n]``,
``k2(sign)[n]``. The mode index n is minus the power of z it multiplies,
and its weight is |n|. The only rewrite is zero-mode inversion,
``k_i+[0] k_i-[0] = k_i-[0] k_i+[0] = 1``; every other word is free.

`NCPoly` carries 1, 2 or 3 tensor legs: a key is a tuple with one reduced
word per leg, and multiplication is leg-wise. Scalars are `ScalarPoly`, so
the central units commute with everything on every leg.
"""
from __future__ import annotations

import random
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

from .scalar import ONE, ScalarPoly

FAMILIES = ("e", "f", "k1", "k2")
SIGNS = ("+", "-")


class Gen(NamedTuple):
    fam: str
    sign: str
    mode: int

    @property
    def weight(self) -> int:
        return abs(self.mode)

    def is_zero_mode_k(self) -> bool:
        return self.mode == 0 and self.fam in ("k1", "k2")

    def inverse(self) -> "Gen":
        if not self.is_zero_mode_k():
            raise ZeroDivisionError(f"{self} has no inverse in the free algebra")
        return Gen(self.fam, "-" if self.sign == "+" else "+", 0)

    def __str__(self):
        return f"{self.fam}{self.sign}[{self.mode}]"


def check_support(g: Gen) -> None:
    """Reject modes outside the convention: e+ and f- lack a zero mode,
    '+' currents carry modes n >= 0, '-' currents modes n <= 0."""
    if g.fam not in FAMILIES or g.sign not in SIGNS:
        raise ValueError(f"unknown generator {g!r}")
    if g.sign == "+" and g.mode < 0 or g.sign == "-" and g.mode > 0:
        raise ValueError(f"{g} violates the mode support of its current")
    if g.mode == 0 and (g.fam, g.sign) in (("e", "+"), ("f", "-")):
        raise ValueError(f"{g}: this current has no zero mode")


Word = tuple  # tuple[Gen, ...]

_weight_cache: dict = {}


def word_weight(word: Word) -> int:
    w = _weight_cache.get(word)
    if w is None:
        w = sum(abs(g.mode) for g in word)
        _weight_cache[word] = w
    return w


def key_weight(key: tuple) -> int:
    return sum(word_weight(w) for w in key)


def _cancels(x: Gen, y: Gen) -> bool:
    return x.mode == 0 and y.mode == 0 and x.fam == y.fam and x.fam[0] == "k" and x.sign != y.sign


def concat(u: Word, v: Word) -> Word:
    """Concatenate two reduced words, cancelling zero-mode pairs at the seam."""
    i, j = len(u), 0
    while i > 0 and j < len(v) and _cancels(u[i - 1], v[j]):
        i -= 1
        j += 1
    if i == len(u):
        return u + v if j == 0 else u + v[j:]
    return u[:i] + v[j:]


def reduce_word(word: Iterable[Gen]) -> Word:
    """Normal form of an arbitrary word (stack reduction)."""
    out: list = []
    for g in word:
        if out and _cancels(out[-1], g):
            out.pop()
        else:
            out.append(g)
    return tuple(out)


class NCPoly:
    """Element of the free algebra (``legs`` = 1) or of its tensor powers."""

    __slots__ = ("legs", "terms")

    def __init__(self, terms: Mapping[tuple, ScalarPoly] | None = None, legs: int = 1):
        self.legs = legs
        t = {}
        for k, v in (terms or {}).items():
            if len(k) != legs:
                raise ValueError(f"key {k} does not have {legs} legs")
            v = v if isinstance(v, ScalarPoly) else ScalarPoly.const(v)
            if v:
                t[k] = v
        self.terms = t

    # construction -------------------------------------------------------

    @classmethod
    def one(cls, legs: int = 1) -> "NCPoly":
        return _raw({((),) * legs: ONE}, legs)

    @classmethod
    def zero(cls, legs: int = 1) -> "NCPoly":
        return _raw({}, legs)

    @classmethod
    def gen(cls, fam: str, sign: str, mode: int, coeff: ScalarPoly | int = 1) -> "NCPoly":
        g = Gen(fam, sign, mode)
        check_support(g)
        return cls({((g,),): coeff})

    @classmethod
    def word(cls, gens: Sequence[Gen], coeff=1) -> "NCPoly":
        return cls({(reduce_word(gens),): coeff})

    @classmethod
    def scalar(cls, c, legs: int = 1) -> "NCPoly":
        return cls({((),) * legs: c}, legs)

    # arithmetic ---------------------------------------------------------

    def _check(self, other: "NCPoly"):
        if other.legs != self.legs:
            raise ValueError(f"leg-count mismatch: {self.legs} vs {other.legs}")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return _raw(out, self.legs)

    __radd__ = __add__

    def __neg__(self):
        return _raw({k: -v for k, v in self.terms.items()}, self.legs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            return self.mul(other)
        s = other if isinstance(other, ScalarPoly) else ScalarPoly.const(other)
        if not s:
            return _raw({}, self.legs)
        return _raw({k: v * s for k, v in self.terms.items()}, self.legs)

    def __rmul__(self, other):
        # scalars are central
        return self * other

    def mul(self, other: "NCPoly", max_weight: int | None = None) -> "NCPoly":
        """Leg-wise product, dropping keys heavier than ``max_weight``."""
        self._check(other)
        out: dict = {}
        legs = self.legs
        if max_weight is not None:
            right = [(k, v, key_weight(k)) for k, v in other.terms.items()]
        for k1, v1 in self.terms.items():
            if max_weight is not None:
                w1 = key_weight(k1)
                if w1 > max_weight:
                    continue
            for item in (right if max_weight is not None else other.terms.items()):
                if max_weight is not None:
                    k2, v2, w2 = item
                    if w1 + w2 > max_weight:
                        continue
                else:
                    k2, v2 = item
                if legs == 1:
                    k = (concat(k1[0], k2[0]),)
                else:
                    k = tuple(concat(a, b) for a, b in zip(k1, k2))
                c = v1 * v2
                s = out.get(k)
                s = c if s is None else s + c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return _raw(out, legs)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.legs == other.legs and self.terms == other.terms

    def __hash__(self):
        return hash((self.legs, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # structure ----------------------------------------------------------

    def weight(self) -> int:
        return max((key_weight(k) for k in self.terms), default=0)

    def truncate(self, max_weight: int) -> "NCPoly":
        return weight_truncate(self, max_weight)

    def inverse(self) -> "NCPoly":
        """Inverse of a single term whose letters are all zero-mode k's."""
        if len(self.terms) != 1:
            raise ZeroDivisionError("only single-term elements can be inverted here")
        (k, v), = self.terms.items()
        inv = tuple(tuple(g.inverse() for g in reversed(w)) for w in k)
        return _raw({inv: v.inverse()}, self.legs)

    def map_scalars(self, fn: Callable[[ScalarPoly], ScalarPoly]) -> "NCPoly":
        out: dict = {}
        for k, v in self.terms.items():
            c = fn(v)
            if c:
                out[k] = c
        return _raw(out, self.legs)

    def letters(self) -> set:
        return {g for k in self.terms for w in k for g in w}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=_sort_key):
            v = self.terms[k]
            mono = " (x) ".join("*".join(str(g) for g in w) or "1" for w in k)
            cs = str(v)
            if cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


def _raw(terms: dict, legs: int) -> NCPoly:
    p = NCPoly.__new__(NCPoly)
    p.terms = terms
    p.legs = legs
    return p


def _sort_key(key):
    return (key_weight(key), tuple(tuple((g.fam, g.sign, g.mode) for g in w) for w in key))


TensorPoly = NCPoly


def nc_mul(x: NCPoly, y: NCPoly, max_weight: int | None = None) -> NCPoly:
    return x.mul(y, max_weight)


def tensor_mul(x: NCPoly, y: NCPoly, max_weight: int | None = None) -> NCPoly:
    if x.legs != y.legs:
        raise ValueError(f"leg-count mismatch: {x.legs} vs {y.legs}")
    return x.mul(y, max_weight)


def weight_truncate(x: NCPoly, W: int) -> NCPoly:
    if W < 0:
        raise ValueError("weight cutoff must be >= 0")
    return _raw({k: v for k, v in x.terms.items() if key_weight(k) <= W}, x.legs)


def tensor(*polys: NCPoly) -> NCPoly:
    """Outer tensor product; legs are concatenated."""
    out = {(): ONE}
    for p in polys:
        nxt: dict = {}
        for k1, v1 in out.items():
            for k2, v2 in p.terms.items():
                k = k1 + k2
                c = v1 * v2
                s = nxt.get(k)
                nxt[k] = c if s is None else s + c
        out = {k: v for k, v in nxt.items() if v}
    return _raw(out, sum(p.legs for p in polys))


def embed(x: NCPoly, leg: int, legs: int) -> NCPoly:
    """Place a one-leg element on ``leg`` (0-based) of a ``legs``-fold tensor."""
    if x.legs != 1:
        raise ValueError("embed expects a one-leg element")
    out = {}
    for (w,), v in x.terms.items():
        k = [()] * legs
        k[leg] = w
        out[tuple(k)] = v
    return _raw(out, legs)


def multiply_legs(x: NCPoly) -> NCPoly:
    """The multiplication map A(x)A -> A (legs multiplied left to right)."""
    out: dict = {}
    for k, v in x.terms.items():
        w = ()
        for part in k:
            w = concat(w, part)
        s = out.get((w,))
        s = v if s is None else s + v
        if s:
            out[(w,)] = s
        else:
            out.pop((w,), None)
    return _raw(out, 1)


def apply_legwise(x: NCPoly, maps: Sequence[tuple], scalar_map=None,
                  max_weight: int | None = None) -> NCPoly:
    """Apply one (anti)homomorphism per leg and tensor the results.

    ``maps[i]`` is ``(image, out_legs, anti)``: ``image(gen)`` returns an
    NCPoly with ``out_legs`` legs, ``anti`` reverses the product order.
    ``scalar_map`` transforms the coefficient of every term.
    """
    legs = sum(m[1] for m in maps)
    acc: dict = {}
    cache: dict = {}
    for k, v in x.terms.items():
        factors = []
        for word, (image, out_legs, anti) in zip(k, maps):
            ck = (id(image), word, anti)
            val = cache.get(ck)
            if val is None:
                val = NCPoly.one(out_legs)
                for g in (reversed(word) if anti else word):
                    val = val.mul(image(g), max_weight)
                cache[ck] = val
            factors.append(val)
        t = tensor(*factors)
        c = scalar_map(v) if scalar_map else v
        for tk, tv in t.terms.items():
            if max_weight is not None and key_weight(tk) > max_weight:
                continue
            s = acc.get(tk)
            acc[tk] = tv * c if s is None else s + tv * c
    return _raw({k: v for k, v in acc.items() if v}, legs)


def random_word(rng: random.Random, length: int, max_mode: int = 2,
                zero_bias: float = 0.5) -> Word:
    """Random unreduced word with plenty of cancellable zero-mode pairs."""
    gens = []
    for _ in range(length):
        if rng.random() < zero_bias:
            gens.append(Gen(rng.choice(("k1", "k2")), rng.choice(SIGNS), 0))
        else:
            fam = rng.choice(FAMILIES)
            sign = rng.choice(SIGNS)
            n = rng.randint(1, max_mode)
            gens.append(Gen(fam, sign, n if sign == "+" else -n))
    return tuple(gens)
