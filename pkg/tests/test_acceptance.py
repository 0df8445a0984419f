"""Acceptance criteria: exact equality, fixed time budgets.

Each test prints one ``criterion N: PASS|FAIL`` line (visible under
``pytest -v``) before asserting.
"""
import time

from qaffine_verify.realizations import old_drinfeld_antipode, closed_antipode
from qaffine_verify.report import PASS
from qaffine_verify.suites import ALL_ORDER, SuiteConfig, run_suite


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def report_line(capsys, n, title, ok, seconds, detail=""):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}  ({seconds:.2f} s){detail}"
    with capsys.disabled():
        print("\n" + line)


def failing(report):
    return [(c.name, c.status) for c in report.checks if c.status != PASS]


def run_criterion(capsys, n, title, cfg, budget, expect_names=()):
    report, dt = timed(lambda: run_suite(cfg))
    names = {c.name for c in report.checks}
    missing = [x for x in expect_names if x not in names]
    ok = report.status == PASS and dt < budget and not missing
    report_line(capsys, n, title, ok, dt, f"  checks={len(report.checks)}")
    assert not missing, missing
    assert report.status == PASS, failing(report)[:5]
    assert dt < budget


def test_criterion_1_yang_baxter(capsys):
    run_criterion(capsys, 1, "Yang-Baxter on z, w in [0..6]",
                  SuiteConfig(suite="ybe", zmin=0, zmax=6, wmin=0, wmax=6), 5)


def test_criterion_2_rll(capsys):
    run_criterion(capsys, 2, "RLL relations, evaluation representation, |exp| <= 5",
                  SuiteConfig(suite="rll-eval", zmin=-5, zmax=5), 30,
                  ["rll.exchange++", "rll.exchange--", "rll.exchange+-", "rll.zero-mode-inverses"])


def test_criterion_3_drinfeld(capsys):
    run_criterion(capsys, 3, "Drinfeld relations incl. delta bracket, |exp| <= 5",
                  SuiteConfig(suite="drinfeld-eval", zmin=-5, zmax=5), 60,
                  ["drinfeld.X+X--bracket", "drinfeld.X+X+-exchange", "drinfeld.X-X--exchange"])


def test_criterion_4_coproduct_transport(capsys):
    names = [f"coproduct.{f}{s}" for f in ("k1", "k2", "e", "f") for s in "+-"]
    run_criterion(capsys, 4, "coproduct transport at W=4, generic g1, g2",
                  SuiteConfig(suite="coproduct-transport", weight=4, zmin=-4, zmax=4), 120, names)


def test_criterion_5_antipode_transport(capsys):
    names = [f"antipode.{f}{s}" for f in ("k1", "k2", "e", "f") for s in "+-"]
    run_criterion(capsys, 5, "antipode transport at W=4",
                  SuiteConfig(suite="antipode-transport", weight=4, zmin=-4, zmax=4), 120, names)


def test_criterion_6_hopf_axioms(capsys):
    names = [f"hopf.{a}.{f}{s}" for a in ("coassociativity", "counit_left", "counit_right",
                                          "antipode_left", "antipode_right")
             for f in ("k1", "k2", "e", "f") for s in "+-"]
    run_criterion(capsys, 6, "Hopf axioms at W=3",
                  SuiteConfig(suite="hopf-axioms", weight=3, zmin=-3, zmax=3), 300, names)


def test_criterion_7_counterexample(capsys):
    def run():
        diffs = {}
        for sign, p in (("+", -1), ("-", 1)):
            new = closed_antipode("k1", sign, 1).value[(p,)]
            old = old_drinfeld_antipode("k1", sign, 1).value[(p,)]
            diffs[sign] = new - old
        return diffs, run_suite(SuiteConfig(suite="counterexample", weight=1))
    (diffs, report), dt = timed(run)
    witnesses = {c.name: c.mismatches for c in report.checks}
    ok = (all(diffs.values()) and report.status == PASS
          and all(witnesses[f"counterexample.eval{s}"] for s in "+-"))
    report_line(capsys, 7, "antipode counterexample, symbolic and in the representation", ok, dt)
    assert all(diffs.values())
    assert report.status == PASS, failing(report)
    for s in "+-":
        (m,) = witnesses[f"counterexample.eval{s}"]
        assert m.where == "witness" and m.lhs != "0"


MONOTONE_CONFIGS = [
    dict(weight=2, zmin=-5, zmax=5),
    dict(weight=3, zmin=-4, zmax=4),
    dict(weight=2, zmin=-3, zmax=2),
    dict(weight=1, zmin=-1, zmax=1),
    dict(weight=3, zmin=0, zmax=3, wmin=-2, wmax=2),
]


def test_criterion_8_monotonicity_and_faults(capsys):
    def run():
        base = {n: run_suite(SuiteConfig(suite=n, weight=3)) for n in ALL_ORDER if n != "faults"}
        shrunk = {}
        for i, kw in enumerate(MONOTONE_CONFIGS):
            for n, r in base.items():
                if r.status == PASS:
                    shrunk[(i, n)] = run_suite(SuiteConfig(suite=n, **kw))
        faults = run_suite(SuiteConfig(suite="faults", weight=3))
        return base, shrunk, faults
    (base, shrunk, faults), dt = timed(run)
    regress = [(kw, n, failing(r)[:2]) for (i, n), r in shrunk.items()
               for kw in [MONOTONE_CONFIGS[i]] if r.status != PASS]
    plants = faults.checks
    located = [c for c in plants if c.status == PASS and c.mismatches and c.mismatches[0].location]
    ok = (all(r.status == PASS for r in base.values()) and not regress
          and len(plants) >= 12 and len(located) == len(plants))
    report_line(capsys, 8, "monotonicity at W-1 and smaller windows; planted faults detected", ok, dt,
                f"  plants={len(plants)} located={len(located)} reruns={len(shrunk)}")
    assert all(r.status == PASS for r in base.values())
    assert not regress, regress
    assert len(plants) >= 12
    assert len(located) == len(plants), [c.name for c in plants if c not in located]


def test_fault_plants_are_distinct_and_cover_every_target():
    checks = run_suite(SuiteConfig(suite="faults", weight=2)).checks
    names = [c.name for c in checks]
    assert len(names) >= 12 and len(set(names)) == len(names)
    targets = {n.split(".")[1] for n in names}
    assert targets == {"ybe", "rll-eval", "drinfeld-eval", "coproduct-transport",
                       "antipode-transport", "hopf-axioms"}
