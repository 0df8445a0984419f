"""Suite orchestration: configuration, the identity suites, fault injection."""
from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass, replace
from fractions import Fraction

from . import evalrep as ev
from .dist import FormalDist, SupportError, WindowError, dist_compare
from .freealg import Gen, NCPoly
from .gauss import Mat2, mat_compare, mat_inverse, mat_mul
from .realizations import (G1, G2, HopfStructure, build_L_symbolic, generator_modes, old_drinfeld_antipode,
                           phi_coproduct, r_matrix, rs_transport_antipode, rs_transport_coproduct,
                           closed_antipode, closed_coproduct, ybe_sides)
from .report import (FAIL, PASS, Check, Mismatch, VerificationReport,
                     equality_check, inconclusive)
from .scalar import UNITS, ScalarMatrix, ScalarPoly

SUITES = ("ybe", "rll-eval", "drinfeld-eval", "coproduct-transport", "antipode-transport",
          "hopf-axioms", "counterexample", "faults", "all")
ALL_ORDER = SUITES[:-1]
SIGN_CHOICES = {"plus": ("+",), "minus": ("-",), "both": ("+", "-")}
DEFAULT_WEIGHT = 3
DEFAULT_RADIUS = 5
CURRENT_ORDER = ("k1", "k2", "e", "f")


class ConfigError(ValueError):
    """Invalid suite configuration (a usage error, not a verification failure)."""


def default_weight() -> int:
    raw = os.environ.get("QAV_DEFAULT_WEIGHT")
    if raw is None or raw == "":
        return DEFAULT_WEIGHT
    try:
        w = int(raw)
    except ValueError as exc:
        raise ConfigError(f"QAV_DEFAULT_WEIGHT must be an integer, got {raw!r}") from exc
    if w < 0:
        raise ConfigError("QAV_DEFAULT_WEIGHT must be >= 0")
    return w


@dataclass(frozen=True)
class SuiteConfig:
    suite: str = "all"
    weight: int = DEFAULT_WEIGHT
    zmin: int = -DEFAULT_RADIUS
    zmax: int = DEFAULT_RADIUS
    wmin: int | None = None
    wmax: int | None = None
    sign: str = "both"
    fmt: str = "text"
    spot_check: int | None = None

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        if self.weight < 0:
            raise ConfigError("weight cutoff must be >= 0")
        if self.zmin > self.zmax:
            raise ConfigError("zmin must not exceed zmax")
        if (self.wmin is None) != (self.wmax is None):
            raise ConfigError("give both wmin and wmax, or neither")
        if self.wmin is not None and self.wmin > self.wmax:
            raise ConfigError("wmin must not exceed wmax")
        if self.sign not in SIGN_CHOICES:
            raise ConfigError(f"sign must be one of {', '.join(SIGN_CHOICES)}")
        if self.fmt not in ("text", "json"):
            raise ConfigError("format must be text or json")

    @property
    def signs(self) -> tuple:
        return SIGN_CHOICES[self.sign]

    @property
    def zwin(self) -> tuple:
        return (self.zmin, self.zmax)

    @property
    def wwin(self) -> tuple:
        return (self.zmin, self.zmax) if self.wmin is None else (self.wmin, self.wmax)

    @property
    def box(self) -> tuple:
        return (self.zwin, self.wwin)

    @property
    def radius(self) -> int:
        return max(abs(x) for x in self.zwin + self.wwin)

    def params(self) -> dict:
        return {"weight": self.weight, "zmin": self.zmin, "zmax": self.zmax,
                "wmin": self.wwin[0], "wmax": self.wwin[1], "sign": self.sign,
                "spot_check": self.spot_check}


# -- spot checks ------------------------------------------------------------------

def spot_values(seed: int) -> dict:
    """Random nonzero rationals for every formal unit."""
    rng = random.Random(seed)
    out = {}
    for u in UNITS:
        num = rng.choice([x for x in range(-9, 10) if x])
        out[u] = Fraction(num, rng.randint(1, 9))
    return out


def spot_transform(seed: int | None):
    """Coefficient map substituting the spot-check values, or None."""
    if seed is None:
        return None
    vals = spot_values(seed)

    def tr(c):
        if isinstance(c, ScalarPoly):
            return c.evaluate(vals)
        if isinstance(c, ScalarMatrix):
            return c.map(lambda x: x.evaluate(vals))
        if isinstance(c, NCPoly):
            return c.map_scalars(lambda x: x.evaluate(vals))
        return c
    return tr


# -- helpers -------------------------------------------------------------------------

def compare(name, anchor, lhs, rhs, box, transform=None, where="") -> Check:
    try:
        return equality_check(name, anchor, dist_compare(lhs, rhs, box, transform), where)
    except (WindowError, SupportError) as exc:
        return inconclusive(name, anchor, str(exc))


def symbolic_window(cfg: SuiteConfig) -> tuple:
    """z window for symbolic work: the requested one, widened to contain 0
    (zero modes are needed for every product)."""
    return (min(cfg.zmin, 0), max(cfg.zmax, 0))


# -- ybe -------------------------------------------------------------------------------

YBE_ANCHOR = "R12(z) R13(zw) R23(w) = R23(w) R13(zw) R12(z)"


def ybe_check(box, R: FormalDist | None = None, transform=None) -> Check:
    try:
        lhs, rhs = ybe_sides(box, R)
    except SupportError as exc:
        return inconclusive("ybe.R12R13R23", YBE_ANCHOR, str(exc))
    return compare("ybe.R12R13R23", YBE_ANCHOR, lhs, rhs, box, transform)


def suite_ybe(cfg: SuiteConfig, tr=None) -> list:
    (zlo, zhi), (wlo, whi) = cfg.box
    # R(x) is a power series in x: negative exponents are known zeros
    box = ((zlo, max(zhi, 0)), (wlo, max(whi, 0)))
    return [ybe_check(box, None, tr)]


# -- evaluation representation -------------------------------------------------------------

def factor_choice_check(model: ev.EvalModel) -> Check:
    """Exactly one way of reading R(z/a) as L(z) meets the zero-mode constraints."""
    table = ev.factor_choice_table(plus_direction=model.plus_direction)
    mm = []
    for s in ("+", "-"):
        ok = [ch for ch in ev.FACTOR_CHOICES if table[(s, ch)] is None]
        if len(ok) != 1:
            mm.append(Mismatch((), f"admissible={ok}", "exactly one", f"sign {s}"))
    return Check("eval.factor-choice", "exactly one contraction of R(z/a) is triangular at z^0",
                 FAIL if mm else PASS, mm)


def suite_rll(cfg: SuiteConfig, tr=None, model=None) -> list:
    N = cfg.radius
    model = model or ev.eval_model(ev.margin_window(N))
    return [factor_choice_check(model)] + ev.check_rll(N, model, cfg.box, tr)


def suite_drinfeld(cfg: SuiteConfig, tr=None, model=None) -> list:
    N = cfg.radius
    model = model or ev.eval_model(ev.margin_window(N))
    gate = ev.check_rll(N, model, cfg.box, tr)
    checks = ev.check_gauss_roundtrip(N, model)
    if any(c.status != PASS for c in gate):
        bad = ", ".join(c.name for c in gate if c.status != PASS)
        for name, anchor, _, _ in ev.drinfeld_relations(model, N, cfg.box):
            checks.append(inconclusive(name, anchor, f"RLL gate failed: {bad}"))
        return checks
    return checks + ev.check_drinfeld(N, model, cfg.box, tr)


# -- transport ------------------------------------------------------------------------------

COPRODUCT_ANCHOR = "closed coproduct formula = Gauss component of the matrix coproduct"
ANTIPODE_ANCHOR = "closed antipode formula = Gauss component of L^-1"


def coproduct_checks(sign: str, W: int, window, box, closed=None, labels="rs", tr=None) -> list:
    """``closed`` maps a current to a replacement closed-form value (fault injection)."""
    closed = closed or {}
    try:
        rs = rs_transport_coproduct(sign, W, window, labels="rs")
    except SupportError as exc:
        return [inconclusive(f"coproduct.{f}{sign}", COPRODUCT_ANCHOR, str(exc)) for f in CURRENT_ORDER]
    out = []
    for fam in CURRENT_ORDER:
        value = closed.get(fam) or closed_coproduct(fam, sign, W, window, labels).value
        out.append(compare(f"coproduct.{fam}{sign}", COPRODUCT_ANCHOR,
                           rs.component(fam).truncate(W), value, box, tr))
    return out


def coproduct_x_checks(W: int, window, box, tr=None) -> list:
    """Coproduct of X+- by linearity, from the matrix side and the closed side."""
    g = {s: rs_transport_coproduct(s, W, window) for s in ("+", "-")}
    u = G1 * G2
    ui = u.inverse()
    rs = {
        "X+": g["+"].e.truncate(W).shift(0, ui) - g["-"].e.truncate(W).shift(0, u),
        "X-": g["+"].f.truncate(W).shift(0, u) - g["-"].f.truncate(W).shift(0, ui),
    }
    closed = phi_coproduct(W, window)
    return [compare(f"coproduct.{x}", "coproduct of X+- by linearity, both sides", rs[x], closed[x],
                    box, tr) for x in ("X+", "X-")]


def suite_coproduct(cfg: SuiteConfig, tr=None) -> list:
    W, window = cfg.weight, symbolic_window(cfg)
    box = (cfg.zwin,)
    out = []
    for s in cfg.signs:
        out += coproduct_checks(s, W, window, box, tr=tr)
    if cfg.sign == "both":
        out += coproduct_x_checks(W, window, box, tr)
    return out


def antipode_checks(sign: str, W: int, window, box, closed=None, printed_f=False, tr=None) -> list:
    closed = closed or {}
    L = build_L_symbolic(sign, W, window)
    M = mat_inverse(L, (window,), W)
    out = []
    for name, prod in ((f"antipode.inverse-left{sign}", mat_mul(M, L, (window,), W)),
                       (f"antipode.inverse-right{sign}", mat_mul(L, M, (window,), W))):
        one = NCPoly.one(1)
        I = Mat2.identity(one, 1, (window,))
        pairs = []
        for ij, mm in mat_compare(prod.map(lambda d: d.truncate(W)), I, box).items():
            pairs += [(t, a, b) for t, a, b in mm]
        out.append(equality_check(name, "L^-1 L = L L^-1 = I", pairs))
    rs = rs_transport_antipode(sign, W, window)
    for fam in CURRENT_ORDER:
        value = closed.get(fam) or closed_antipode(fam, sign, W, window, printed=printed_f).value
        out.append(compare(f"antipode.{fam}{sign}", ANTIPODE_ANCHOR,
                           rs.component(fam).truncate(W), value, box, tr))
    return out


def suite_antipode(cfg: SuiteConfig, tr=None) -> list:
    W, window = cfg.weight, symbolic_window(cfg)
    out = []
    for s in cfg.signs:
        out += antipode_checks(s, W, window, (cfg.zwin,), tr=tr)
    return out


# -- Hopf axioms ----------------------------------------------------------------------------

AXIOMS = (
    ("coassociativity", "(D (x) id) D = (id (x) D) D"),
    ("counit_left", "(eps (x) id) D = id"),
    ("counit_right", "(id (x) eps) D = id"),
    ("antipode_left", "m (S (x) id) D = eps 1"),
    ("antipode_right", "m (id (x) S) D = eps 1"),
)


def hopf_checks(W: int, signs, zwin=None, H: HopfStructure | None = None, tr=None) -> list:
    H = H or HopfStructure(W)
    gens = generator_modes(W, signs=signs)
    if zwin is not None:
        gens = [g for g in gens if zwin[0] <= -g.mode <= zwin[1]]
    out = []
    for axiom, anchor in AXIOMS:
        for fam in CURRENT_ORDER:
            for s in signs:
                pairs = []
                for g in gens:
                    if g.fam != fam or g.sign != s:
                        continue
                    lhs, rhs = getattr(H, axiom)(g)
                    if tr is not None:
                        lhs, rhs = tr(lhs), tr(rhs)
                    if lhs != rhs:
                        pairs.append(((g.mode,), lhs, rhs))
                out.append(equality_check(f"hopf.{axiom}.{fam}{s}", anchor, pairs,
                                          "generator mode"))
    return out


def suite_hopf(cfg: SuiteConfig, tr=None) -> list:
    return hopf_checks(cfg.weight, cfg.signs, cfg.zwin, tr=tr)


# -- counterexample ----------------------------------------------------------------------------

CE_ANCHOR = "new antipode of k1 differs from the plain inverse k1^-1 at weight 1"


def counterexample_symbolic(sign: str, W: int, window, tr=None) -> Check:
    name = f"counterexample.symbolic{sign}"
    p = -1 if sign == "+" else 1
    if W < 1:
        return inconclusive(name, CE_ANCHOR, "needs weight cutoff >= 1")
    # the witness sits at a fixed exponent; widen like the zero modes
    window = (min(window[0], p), max(window[1], p))
    new = closed_antipode("k1", sign, W, window).value
    old = old_drinfeld_antipode("k1", sign, W, window).value
    a, b = new[(p,)], old[(p,)]
    if tr is not None:
        a, b = tr(a), tr(b)
    if a == b:
        return Check(name, CE_ANCHOR, FAIL, [])
    return Check(name, CE_ANCHOR, PASS, [Mismatch((p,), str(a), str(b), "witness")])


def suite_counterexample(cfg: SuiteConfig, tr=None, model=None) -> list:
    window = symbolic_window(cfg)
    out = [counterexample_symbolic(s, cfg.weight, window, tr) for s in cfg.signs]
    N = cfg.radius
    model = model or ev.eval_model(ev.margin_window(N))
    out += [ev.counterexample_eval(N, model, s, tr) for s in cfg.signs]
    return out


# -- fault injection --------------------------------------------------------------------------

def perturb(c):
    """A different coefficient of the same type."""
    if isinstance(c, NCPoly):
        return c + NCPoly.scalar(ScalarPoly.unit("q"), c.legs) if not c else c * 2
    if isinstance(c, ScalarMatrix):
        return c + ScalarMatrix.identity(c.n) if not c else c * 2
    return c + 1 if not c else c * 2


def corrupt(d: FormalDist, t: tuple) -> FormalDist:
    """``d`` with the single coefficient at ``t`` changed."""
    coeffs = dict(d.coeffs)
    coeffs[t] = perturb(d[t])
    return FormalDist(d.nvars, coeffs, d.support, d.domain | {t}, d.zero)


def _corrupt_eval(model: ev.EvalModel, sign: str, t: tuple, entry) -> ev.EvalModel:
    cur = model.current(sign)

    def bump(m):
        ent = dict(m.entries)
        ent[entry] = m[entry] + ScalarPoly.unit("q")
        return ScalarMatrix(m.n, ent)
    coeffs = dict(cur.matrix.coeffs)
    coeffs[t] = bump(cur.matrix[t])
    M = FormalDist(1, coeffs, cur.matrix.support, cur.matrix.domain, cur.matrix.zero)
    new = replace(cur, matrix=M, L=ev._blocks(M))
    return replace(model, plus=new) if sign == "+" else replace(model, minus=new)


def _corrupt_eval_gauss(model: ev.EvalModel, sign: str, comp: str, t: tuple) -> ev.EvalModel:
    g = model.gauss(sign)
    bad = replace(g, **{comp: corrupt(g.component(comp), t)})
    m2 = replace(model)
    m2.__dict__["_gauss"] = dict(model.__dict__.get("_gauss", {}))
    m2.__dict__["_gauss"][sign] = bad
    return m2


class _CorruptHopf(HopfStructure):
    """HopfStructure with one generator image replaced."""

    def __init__(self, W, which, g, value):
        super().__init__(W)
        self.overrides = {which: {g: value}}


@dataclass(frozen=True)
class Plant:
    name: str
    target: str
    run: object  # () -> list[Check]


def plants(cfg: SuiteConfig) -> list:
    """At least twelve distinct single-coefficient corruptions."""
    W = max(cfg.weight, 2)
    window = (min(-W, cfg.zmin, 0), max(W, cfg.zmax, 0))
    box = (window,)
    N = max(2, min(cfg.radius, 3))
    model = ev.eval_model(ev.margin_window(N))
    ebox = ((-N, N), (-N, N))
    out = []

    R = r_matrix((0, 3))
    coeffs = dict(R.coeffs)
    m = coeffs[(1,)]
    coeffs[(1,)] = ScalarMatrix(4, {**m.entries, (1, 1): m[(1, 1)] + 1})
    Rbad = FormalDist(1, coeffs, R.support, R.domain, R.zero)
    out.append(Plant("R entry (2,2) at z^1", "ybe", lambda: [ybe_check(((0, 3), (0, 3)), Rbad)]))
    coeffs2 = dict(R.coeffs)
    m0 = coeffs2[(0,)]
    coeffs2[(0,)] = ScalarMatrix(4, {**m0.entries, (2, 1): m0[(2, 1)] * 2})
    Rbad2 = FormalDist(1, coeffs2, R.support, R.domain, R.zero)
    out.append(Plant("R entry (3,2) at z^0", "ybe", lambda: [ybe_check(((0, 3), (0, 3)), Rbad2)]))

    pd = model.plus_direction
    tplus = (-1,) if pd == ev.DESCENDING else (1,)
    tminus = (1,) if pd == ev.DESCENDING else (-1,)
    out.append(Plant("eval L+ entry (2,2) first mode", "rll-eval",
                     lambda: ev.check_rll(N, _corrupt_eval(model, "+", tplus, (1, 1)), ebox)))
    out.append(Plant("eval L- entry (1,4) first mode", "rll-eval",
                     lambda: ev.check_rll(N, _corrupt_eval(model, "-", tminus, (0, 3)), ebox)))
    out.append(Plant("eval e+ Gauss component first mode", "drinfeld-eval",
                     lambda: ev.check_drinfeld(N, _corrupt_eval_gauss(model, "+", "e", tplus), ebox)))
    out.append(Plant("eval k2- Gauss component zero mode", "drinfeld-eval",
                     lambda: ev.check_drinfeld(N, _corrupt_eval_gauss(model, "-", "k2", (0,)), ebox)))

    def coprod_plant(fam, sign, p):
        def run():
            good = closed_coproduct(fam, sign, W, window).value
            return coproduct_checks(sign, W, window, box, {fam: corrupt(good, (p,))})
        return run
    out.append(Plant("closed coproduct k1+ at z^-1", "coproduct-transport", coprod_plant("k1", "+", -1)))
    out.append(Plant("closed coproduct k2- at z^2", "coproduct-transport", coprod_plant("k2", "-", 2)))
    out.append(Plant("closed coproduct e+ at z^-2", "coproduct-transport", coprod_plant("e", "+", -2)))
    out.append(Plant("closed coproduct f- at z^1", "coproduct-transport", coprod_plant("f", "-", 1)))

    def anti_plant(fam, sign, p):
        def run():
            good = closed_antipode(fam, sign, W, window).value
            return antipode_checks(sign, W, window, box, {fam: corrupt(good, (p,))})
        return run
    out.append(Plant("closed antipode k1+ at z^0", "antipode-transport", anti_plant("k1", "+", 0)))
    out.append(Plant("closed antipode k2- at z^1", "antipode-transport", anti_plant("k2", "-", 1)))
    out.append(Plant("closed antipode e+ at z^-2", "antipode-transport", anti_plant("e", "+", -2)))
    out.append(Plant("closed antipode f- at z^2", "antipode-transport", anti_plant("f", "-", 2)))

    def hopf_plant(which, g):
        def run():
            H0 = HopfStructure(W)
            val = H0.delta(g) if which == "delta" else H0.antipode(g)
            H = _CorruptHopf(W, which, g, val * 2)
            return hopf_checks(W, (g.sign,), None, H)
        return run
    out.append(Plant("mode coproduct of e+[1]", "hopf-axioms", hopf_plant("delta", Gen("e", "+", 1))))
    out.append(Plant("mode antipode of f-[-1]", "hopf-axioms", hopf_plant("antipode", Gen("f", "-", -1))))
    out.append(Plant("mode coproduct of k1-[0]", "hopf-axioms", hopf_plant("delta", Gen("k1", "-", 0))))
    return out


def run_plant(p: Plant) -> Check:
    """Passes when the corrupted run fails with at least one located mismatch."""
    name = f"faults.{p.target}.{p.name.replace(' ', '-')}"
    anchor = f"planted corruption is detected by {p.target}"
    try:
        checks = p.run()
    except (SupportError, WindowError) as exc:
        return inconclusive(name, anchor, str(exc))
    failed = [c for c in checks if c.status == FAIL]
    located = [m for c in failed for m in c.mismatches if m.location != ()]
    if located:
        c0 = next(c for c in failed if any(m.location != () for m in c.mismatches))
        m = next(m for m in c0.mismatches if m.location != ())
        return Check(name, anchor, PASS, [Mismatch(m.location, m.lhs, m.rhs, f"caught by {c0.name}")])
    return Check(name, anchor, FAIL, [])


def suite_faults(cfg: SuiteConfig, tr=None) -> list:
    return [run_plant(p) for p in plants(cfg)]


# -- entry point --------------------------------------------------------------------------------

RUNNERS = {
    "ybe": suite_ybe,
    "rll-eval": suite_rll,
    "drinfeld-eval": suite_drinfeld,
    "coproduct-transport": suite_coproduct,
    "antipode-transport": suite_antipode,
    "hopf-axioms": suite_hopf,
    "counterexample": suite_counterexample,
    "faults": suite_faults,
}


def run_checks(cfg: SuiteConfig) -> list:
    tr = spot_transform(cfg.spot_check)
    names = ALL_ORDER if cfg.suite == "all" else (cfg.suite,)
    checks = []
    for n in names:
        checks += RUNNERS[n](cfg, tr)
    return checks


def run_suite(cfg: SuiteConfig) -> VerificationReport:
    t0 = time.perf_counter()
    checks = run_checks(cfg)
    ms = int(round((time.perf_counter() - t0) * 1000))
    return VerificationReport(cfg.suite, cfg.params(), checks, ms)
