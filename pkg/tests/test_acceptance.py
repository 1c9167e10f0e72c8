"""End-to-end acceptance gate.

One test per headline guarantee, numbered 1..8. Each prints a single
[PASS]/[FAIL] line with the measured evidence before asserting, so the
pytest summary doubles as a checklist. Two tests fail on purpose and
are left red rather than loosened:

* criterion 1: the embedded reference snapshot prints the same three
  randomness cells for snova-iii-m100 as for snova-i-m80, while the
  closed form gives the values consistent with every other row. Three
  cells therefore miss the +/-1 tolerance by design of the snapshot,
  not of the model.
* criterion 3: the pipeline closed form charges all conditional-add
  and multiply-subtract calls at full slice length, while the
  instrumented loop shortens the final slice of each elimination step.
  The gap is a fixed per-step amount, so the 1% relative bound holds
  from roughly m=15 upward and the m=4 clause fails.

Everything else is green. Runtime budgets are printed for information
and never asserted.
"""

import random
import time

from mge import costmodel as cm
from mge import probelab as pl
from mge.gf import field_new
from mge.linalg import (
    gaussian_elimination,
    masked_solve,
    random_system,
    singular_system,
)
from mge.masking import DEFAULT_SEED, MaskingContext

TOL_OPS = 2
TOL_RAND = 1


def _report(num: int, ok: bool, detail: str, t0: float) -> bool:
    tag = "PASS" if ok else "FAIL"
    print(f"[{tag}] criterion {num}: {detail} ({time.perf_counter() - t0:.2f}s)")
    return ok


def _cell(rows, label, n):
    for r in rows:
        if r.label == label and r.n == n:
            return r
    raise AssertionError(f"missing row {label} n={n}")


def test_criterion_1_randomness_table():
    t0 = time.perf_counter()
    rows = cm.cost_table()
    bad = [b for b in cm.verify_rows(rows, tol_ops=10**9, tol_rand=TOL_RAND)
           if b["column"] == "rand"]

    anchors = [("uov-ip", 2, 742), ("uov-ip", 3, 2226), ("uov-ip", 4, 4452),
               ("mayo-i", 2, 1112), ("qruov-i-q7-m100", 2, 3102),
               ("mayo-iii", 2, 3680)]
    anchor_bad = [(lab, n, _cell(rows, lab, n).rand_scaled, want)
                  for lab, n, want in anchors
                  if _cell(rows, lab, n).rand_scaled != want]

    ok = not bad and not anchor_bad
    detail = (f"{93 - len(bad)}/93 randomness cells within +/-{TOL_RAND}, "
              f"{len(anchors) - len(anchor_bad)}/{len(anchors)} spot anchors exact")
    if bad:
        cells = ", ".join(f"{b['label']} n={b['n']} model {b['got']} "
                          f"vs printed {b['want']}" for b in bad)
        detail += f"; snapshot disagrees on: {cells}"
    _report(1, ok, detail, t0)
    assert not anchor_bad, anchor_bad
    assert not bad, bad


def test_criterion_2_operations_table():
    t0 = time.perf_counter()
    rows = cm.cost_table()
    bad = [b for b in cm.verify_rows(rows, tol_ops=TOL_OPS, tol_rand=10**9)
           if b["column"] == "ops"]

    anchors = [("uov-ip", 2, 105), ("uov-ip", 3, 260),
               ("uov-iii", 2, 428), ("mayo-i", 2, 300)]
    anchor_bad = [(lab, n, _cell(rows, lab, n).ops_scaled, want)
                  for lab, n, want in anchors
                  if abs(_cell(rows, lab, n).ops_scaled - want) > TOL_OPS]

    ok = not bad and not anchor_bad
    _report(2, ok,
            f"{93 - len(bad)}/93 operations cells within +/-{TOL_OPS}, "
            f"{len(anchors) - len(anchor_bad)}/{len(anchors)} anchors within tolerance",
            t0)
    assert not anchor_bad, anchor_bad
    assert not bad, bad


def test_criterion_3_counter_vs_formula():
    t0 = time.perf_counter()
    plain = ["refresh", "strong_refresh", "full_add", "sec_mult", "sec_and",
             "sec_or", "sec_nonzero", "b2m", "b2minv"]
    rowg = ["sec_cond_add", "sec_scalar_mult", "sec_mult_sub"]

    unit_bad = []
    for n in (2, 3, 4, 5):
        for w in (4, 8):
            for g in plain:
                chk = cm.counter_vs_formula(g, n, w)
                if not chk.exact:
                    unit_bad.append((g, n, w, None))
            for g in rowg:
                for l in (1, 2, 10):
                    chk = cm.counter_vs_formula(g, n, w, size=l)
                    if not chk.exact:
                        unit_bad.append((g, n, w, l))

    pipe = {m: cm.counter_vs_formula("pipeline", 2, 8, size=m)
            for m in (4, 44, 64)}
    pipe_bad = {m: c for m, c in pipe.items()
                if c.ops_rel >= 0.01 or c.bits_rel >= 0.01}

    ok = not unit_bad and not pipe_bad
    detail = (f"{144 - len(unit_bad)}/144 unit-gadget grid cells exact; "
              "pipeline rel err " +
              ", ".join(f"m={m} ops {c.ops_rel:.3%} bits {c.bits_rel:.3%}"
                        for m, c in sorted(pipe.items())))
    if pipe_bad:
        detail += ("; closed form charges full-length row calls, so the "
                   "fixed per-step gap breaches 1% at small m")
    _report(3, ok, detail, t0)
    assert not unit_bad, unit_bad
    assert not pipe_bad, {m: (c.ops_rel, c.bits_rel)
                          for m, c in pipe_bad.items()}


def test_criterion_4_oracle_equivalence():
    t0 = time.perf_counter()
    gf256 = field_new(8)
    gf16 = field_new(4)
    rng = random.Random(0xACCE97)
    total = agree = 0
    first_bad = None

    def compare(field, n, sysm):
        nonlocal total, agree, first_bad
        ctx = MaskingContext(field, n, seed=rng.getrandbits(64))
        got = masked_solve(ctx, sysm)
        want = gaussian_elimination(sysm)
        total += 1
        same = (got.x == want.x and got.singular == want.singular
                and got.fail_index == want.fail_index)
        if same:
            agree += 1
        elif first_bad is None:
            first_bad = (field.q, n, sysm.a, sysm.b, got, want)

    for n in (2, 3, 4):
        for _ in range(1000):
            compare(gf256, n, random_system(gf256, 10, rng, invertible=False))
        for _ in range(1000):
            compare(gf16, n, random_system(gf16, 8, rng, invertible=False))
    for i in range(1000):
        compare(gf16, 2 + i % 3, singular_system(gf16, 6, rng))

    ok = agree == total
    _report(4, ok,
            f"{agree}/{total} solves agree with the reference oracle, "
            "aborts and abort indices included", t0)
    assert ok, first_bad


def test_criterion_5_exhaustive_first_order():
    t0 = time.perf_counter()
    gf16 = field_new(4)
    targets = ["refresh", "strong_refresh", "sec_mult", "sec_and",
               "sec_nonzero", "b2m", "b2minv", "sec_cond_add",
               "sec_scalar_mult", "sec_mult_sub"]
    broken = ["refresh_broken", "sec_mult_broken", "sec_nonzero_broken"]

    clean_bad = []
    for name in targets:
        secrets = pl._fit_secrets(pl.lookup(name), gf16)
        assert len(secrets) >= 8, (name, len(secrets))
        verdicts = pl.exhaustive_first_order(name, gf16, 2, secrets=secrets)
        fails = [v.point_id for v in verdicts if not v.passed]
        if fails:
            clean_bad.append((name, fails))

    broken_ok = {}
    for name in broken:
        verdicts = pl.exhaustive_first_order(name, gf16, 2)
        broken_ok[name] = sum(not v.passed for v in verdicts)

    undetected = [name for name, k in broken_ok.items() if k == 0]
    ok = not clean_bad and not undetected
    _report(5, ok,
            f"{len(targets) - len(clean_bad)}/{len(targets)} gadgets have "
            "secret-independent exact distributions at every point; "
            "broken variants flagged at " +
            ", ".join(f"{k} point(s) [{name}]"
                      for name, k in broken_ok.items()),
            t0)
    assert not clean_bad, clean_bad
    assert not undetected, undetected


def test_criterion_6_statistical_pipeline():
    t0 = time.perf_counter()
    gf16 = field_new(4)
    kw = dict(n=2, m=4, samples_per_class=50_000, threshold=4.5,
              seed=DEFAULT_SEED)

    masked = pl.statistical_fixed_vs_random("solve", gf16, **kw)
    masked_bad = [v for v in masked if not v.passed]
    masked_max = max(abs(v.statistic) for v in masked)

    unmasked = pl.statistical_fixed_vs_random("solve_unmasked", gf16, **kw)
    unmasked_hits = [v for v in unmasked if not v.passed]
    unmasked_max = max(abs(v.statistic) for v in unmasked)

    ok = not masked_bad and bool(unmasked_hits)
    _report(6, ok,
            f"masked pipeline max |t| = {masked_max:.2f} over "
            f"{len(masked)} points (threshold 4.5) at 10^5 traces; "
            f"unmasked oracle flagged at {len(unmasked_hits)}/"
            f"{len(unmasked)} points, max |t| = {unmasked_max:.1f}",
            t0)
    assert not masked_bad, [(v.point_id, v.statistic) for v in masked_bad]
    assert unmasked_hits, "unmasked path produced no detectable point"


def test_criterion_7_relative_cost_claims():
    t0 = time.perf_counter()
    rows = cm.cost_table()
    ratios = []
    for mayo, uov in (("mayo-iii", "uov-iii"), ("mayo-v", "uov-v")):
        for n in (2, 3, 4):
            a = _cell(rows, mayo, n)
            b = _cell(rows, uov, n)
            ratios.append((mayo, uov, n, a.ops_total / b.ops_total,
                           a.rand_bits / b.rand_bits))

    bad = [r for r in ratios
           if not (2.2 <= r[3] <= 2.4 and 1.1 <= r[4] <= 1.3)]
    ops_span = (min(r[3] for r in ratios), max(r[3] for r in ratios))
    rand_span = (min(r[4] for r in ratios), max(r[4] for r in ratios))
    ok = not bad
    _report(7, ok,
            f"mayo/uov ops ratios in [{ops_span[0]:.3f}, {ops_span[1]:.3f}] "
            f"(claim 2.3 +/- 0.1), randomness ratios in "
            f"[{rand_span[0]:.3f}, {rand_span[1]:.3f}] (claim 1.2 +/- 0.1)",
            t0)
    assert ok, bad


def test_criterion_8_cycle_counts_substituted():
    # Hardware cycle counts are out of scope at desk scale. Substitute:
    # the counter model must track the instrumented pipeline at the
    # tabulated size, and masking must cost measurably more wall time
    # than the reference path.
    t0 = time.perf_counter()
    chk = cm.counter_vs_formula("pipeline", 2, 8, size=44)
    model_ok = chk.ops_rel < 0.01 and chk.bits_rel < 0.01

    gf16 = field_new(4)
    rng = random.Random(7)
    systems = [random_system(gf16, 8, rng) for _ in range(20)]
    w0 = time.perf_counter()
    for sysm in systems:
        gaussian_elimination(sysm)
    t_plain = time.perf_counter() - w0
    ctx = MaskingContext(gf16, 2, seed=1)
    w0 = time.perf_counter()
    for sysm in systems:
        masked_solve(ctx, sysm)
    t_masked = time.perf_counter() - w0
    ratio = t_masked / max(t_plain, 1e-9)

    ok = model_ok and ratio > 1.0
    _report(8, ok,
            "cycle counts substituted by the counter model "
            f"(pipeline m=44 rel err ops {chk.ops_rel:.3%} bits "
            f"{chk.bits_rel:.3%}) and a qualitative slowdown check "
            f"(masked/unmasked wall ratio {ratio:.0f}x at n=2)", t0)
    assert ok, (chk.ops_rel, chk.bits_rel, ratio)
