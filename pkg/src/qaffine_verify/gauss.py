"""2x2 matrices of formal distributions and their Gauss decomposition.

    L = [[1, 0], [e, 1]] . diag(k1, k2) . [[1, f], [0, 1]]
      = [[k1, k1 f], [e k1, e k1 f + k2]]

Entries never commute, so every formula keeps the printed factor order.
All inverses are of one-variable series with an invertible constant term
and are expanded as terminating geometric series (see `dist_inverse`).
"""
from __future__ import annotations

from dataclasses import dataclass

from .dist import FORMS, FormalDist, box, dist_compare, dist_inverse, dist_mul, one_like, zero_like


class Mat2:
    """2x2 matrix over FormalDist, indexed (i, j) with i, j in {1, 2}."""

    __slots__ = ("e",)

    def __init__(self, e11, e12, e21, e22):
        self.e = {(1, 1): e11, (1, 2): e12, (2, 1): e21, (2, 2): e22}

    def __getitem__(self, ij) -> FormalDist:
        return self.e[ij]

    def entries(self):
        return [self.e[(1, 1)], self.e[(1, 2)], self.e[(2, 1)], self.e[(2, 2)]]

    def map(self, fn) -> "Mat2":
        return Mat2(*(fn(x) for x in self.entries()))

    def replace(self, ij, value) -> "Mat2":
        ent = dict(self.e)
        ent[ij] = value
        return Mat2(ent[(1, 1)], ent[(1, 2)], ent[(2, 1)], ent[(2, 2)])

    @classmethod
    def identity(cls, one, nvars: int = 1, window=None) -> "Mat2":
        """Identity matrix whose unit entries are the constant ``one``."""
        i = FormalDist.constant(one, nvars, window)
        o = FormalDist(nvars, {}, [(0, 0)] * len(FORMS[nvars]), box(window or ((0, 0),) * nvars),
                       zero_like(one))
        return cls(i, o, o, i)

    def __repr__(self):
        return "Mat2(" + ", ".join(repr(x) for x in self.entries()) + ")"


def mat_mul(A: Mat2, B: Mat2, window=None, max_weight=None) -> Mat2:
    """Ordinary 2x2 product; entry products keep A's factor on the left."""
    out = []
    for i in (1, 2):
        for j in (1, 2):
            acc = dist_mul(A[(i, 1)], B[(1, j)], window, max_weight)
            acc = acc + dist_mul(A[(i, 2)], B[(2, j)], window, max_weight)
            out.append(acc)
    return Mat2(*out)


@dataclass(frozen=True)
class GaussFactors:
    e: FormalDist
    k1: FormalDist
    k2: FormalDist
    f: FormalDist
    sign: str = "+"

    def component(self, name: str) -> FormalDist:
        return getattr(self, name)


def gauss_decompose(L: Mat2, window=None, max_weight=None, sign: str = "+",
                    opposite: bool = False) -> GaussFactors:
    """Gauss components of L.

    k1 = l11, e = l21 l11^-1, f = l11^-1 l12, k2 = l22 - l21 l11^-1 l12.

    With ``opposite`` the same formulas are evaluated in the opposite
    algebra (every product reversed): e = l11^-1 l21, f = l12 l11^-1,
    k2 = l22 - l12 l11^-1 l21. An anti-homomorphism such as the antipode
    maps Gauss components of L to these.
    """
    window = window or L[(1, 1)].bounding_box()

    def mul(a, b):
        return dist_mul(b, a, window, max_weight) if opposite else dist_mul(a, b, window, max_weight)

    l11, l12, l21, l22 = L.entries()
    inv = dist_inverse(l11, window, max_weight)
    e = mul(l21, inv)
    f = mul(inv, l12)
    k2 = l22 - mul(mul(l21, inv), l12)
    return GaussFactors(e, l11, k2, f, sign)


def gauss_recompose(g: GaussFactors, window=None, max_weight=None) -> Mat2:
    window = window or g.k1.bounding_box()
    k1f = dist_mul(g.k1, g.f, window, max_weight)
    ek1 = dist_mul(g.e, g.k1, window, max_weight)
    ek1f = dist_mul(ek1, g.f, window, max_weight)
    return Mat2(g.k1, k1f, ek1, ek1f + g.k2)


def mat_inverse(L: Mat2, window=None, max_weight=None) -> Mat2:
    """L^-1 = [[1, -f], [0, 1]] diag(k1^-1, k2^-1) [[1, 0], [-e, 1]]

              = [[k1^-1 + f k2^-1 e, -f k2^-1], [-k2^-1 e, k2^-1]].
    """
    window = window or L[(1, 1)].bounding_box()
    g = gauss_decompose(L, window, max_weight)
    k1i = dist_inverse(g.k1, window, max_weight)
    k2i = dist_inverse(g.k2, window, max_weight)
    fk2i = dist_mul(g.f, k2i, window, max_weight)
    k2ie = dist_mul(k2i, g.e, window, max_weight)
    m11 = k1i + dist_mul(fk2i, g.e, window, max_weight)
    return Mat2(m11, -fk2i, -k2ie, k2i)


def mat_compare(A: Mat2, B: Mat2, window, transform=None) -> dict:
    """Per-entry mismatch lists; empty lists everywhere means equal."""
    return {ij: dist_compare(A[ij], B[ij], window, transform) for ij in A.e}


def is_identity(M: Mat2, window) -> bool:
    one = None
    for x in M.entries():
        if x.coeffs:
            one = one_like(next(iter(x.coeffs.values())))
            break
    if one is None:
        return False
    I = Mat2.identity(one, M[(1, 1)].nvars, window)
    return all(not v for v in mat_compare(M, I, window).values())
