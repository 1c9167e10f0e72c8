"""First-order probing checks for the gadget zoo and the solver.

Probe granularity: one point per unit operation that produces a
share-derived wire, matching the cost-counter charging. Vector-level
copies collapse to a single point carrying share 0 (each copied wire
duplicates a wire already visible upstream). Points are identified by
stable label tuples (gadget, tag, *indices); the sequence of labels is
data-independent, so one labeled run fixes point identities for a whole
campaign. Labels whose tag starts with "pub" are sanctioned public
outputs (pivot liveness bits, opened solution entries) and are skipped
by the checkers.

Two checking modes:

* exhaustive: enumerate every input sharing and every randomness tape,
  build the exact per-point value distribution for each secret, and
  demand identical distributions across secrets. This is the real
  first-order probing condition, feasible for one-coefficient gadgets
  on small fields.

* statistical: fixed-vs-random sampling with Welch's t on the first
  moment and on the non-centered second moment per point (the second
  moment catches equal-mean distribution splits). A point fails when
  either |t| crosses the threshold.

Three deliberately broken registry entries exist for checker-power
tests: refresh_broken reuses a live share as its mask, sec_mult_broken
multiplies a sharing by itself without refreshing one operand, and
sec_nonzero_broken collapses its input into a single wire first.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from .gf import FieldSpec, field_new
from .linalg import gaussian_elimination, masked_solve, random_system
from .masking import (
    DEFAULT_SEED,
    DomainTape,
    MaskingContext,
    ReplayTape,
    SeededTape,
    b2m,
    b2minv,
    refresh,
    sec_and,
    sec_mult,
    sec_nonzero,
    strong_refresh,
)
from .rowops import sec_cond_add, sec_mult_sub, sec_scalar_mult

ENUMERATION_CAP = 1 << 28


class EnumerationTooLarge(ValueError):
    """Exhaustive domain exceeds the enumeration cap."""


class UnknownGadget(KeyError):
    pass


def label_id(label) -> str:
    g, tag = label[0], label[1]
    if len(label) > 2:
        idx = ",".join(str(i) for i in label[2:])
        return f"{g}.{tag}[{idx}]"
    return f"{g}.{tag}"


def is_public(label) -> bool:
    return label[1].startswith("pub")


@dataclass(frozen=True)
class ProbeTrace:
    ids: tuple
    labels: tuple
    values: tuple


@dataclass(frozen=True)
class LeakVerdict:
    point_id: str
    mode: str
    statistic: float | None
    samples: int
    passed: bool

    def to_dict(self) -> dict:
        return {
            "point_id": self.point_id,
            "mode": self.mode,
            "statistic": self.statistic,
            "samples": self.samples,
            "pass": self.passed,
        }


# ---------------------------------------------------------------- registry


@dataclass(frozen=True)
class GadgetSpec:
    """One checkable gadget: input kinds, runner, default secrets.

    kinds entries: "bool" (field-element sharing), "bit" (one-bit
    sharing), "mult" (multiplicative sharing, nonzero secret), "row1"
    (one-coefficient shared row). secrets holds >= 8 assignments, one
    value per input, covering zero and edge cases where the input
    domain allows them.
    """

    name: str
    kinds: tuple
    run: object
    secrets: tuple
    broken: bool = False


def _wrap_row(share):
    return [[s] for s in share]


def _run_cond_add(ctx, b, x, y):
    sec_cond_add(ctx, b, _wrap_row(x), _wrap_row(y))


def _run_scalar_mult(ctx, p, x):
    sec_scalar_mult(ctx, p, _wrap_row(x))


def _run_mult_sub(ctx, c, x, y):
    sec_mult_sub(ctx, c, _wrap_row(x), _wrap_row(y))


def _run_self_mult(ctx, x):
    # broken by construction: both operands alias one sharing, so the
    # cross products touch both shares of the same secret
    sec_mult(ctx, x, x)


def _run_refresh_reused(ctx, x):
    n = ctx.n
    c = ctx.counters
    y = list(x)
    c.ops += n
    tr = ctx.trace
    if tr is not None:
        ctx.emit(y[0], ("refresh_broken", "cp"))
    for i in range(1, n):
        r = y[0]  # stale mask: a live share stands in for a fresh draw
        y[0] ^= r
        y[i] ^= r
        c.ops += 2
        if tr is not None:
            ctx.emit(r, ("refresh_broken", "r", i))
            ctx.emit(y[0], ("refresh_broken", "y0", i))
            ctx.emit(y[i], ("refresh_broken", "yi", i))
    return y


def _run_nonzero_unmasked(ctx, x):
    u = 0
    for v in x:
        u ^= v
    ctx.counters.ops += ctx.n - 1
    if ctx.trace is not None:
        ctx.emit(u, ("snz_broken", "collapse"))
    t = [0] * ctx.n
    t[0] = u
    return sec_nonzero(ctx, t)


_B = (0, 1, 2, 5, 7, 8, 0xA, 0xF)
_NZ = (1, 2, 3, 5, 8, 0xA, 0xD, 0xF)

REGISTRY: dict[str, GadgetSpec] = {}


def _register(name, kinds, run, secrets, broken=False):
    REGISTRY[name] = GadgetSpec(name, tuple(kinds), run, tuple(secrets),
                                broken)


_register("refresh", ("bool",), refresh, [(s,) for s in _B])
_register("strong_refresh", ("bool",), strong_refresh, [(s,) for s in _B])
_register("sec_mult", ("bool", "bool"), sec_mult,
          [(0, 0), (0, 5), (1, 1), (1, 0xF), (3, 7), (5, 0xA), (0xF, 0xF),
           (9, 2), (0xB, 0x6)])
_register("sec_and", ("bool", "bool"), sec_and,
          [(0, 0), (0, 5), (1, 1), (1, 0xF), (3, 7), (5, 0xA), (0xF, 0xF),
           (9, 2), (0xB, 0x6)])
_register("sec_nonzero", ("bool",), sec_nonzero,
          [(s,) for s in (0, 1, 2, 4, 5, 7, 8, 0xA, 0xF)])
_register("b2m", ("bool",), b2m, [(s,) for s in _NZ])
_register("b2minv", ("bool",), b2minv, [(s,) for s in _NZ])
_register("sec_cond_add", ("bit", "bool", "bool"), _run_cond_add,
          [(0, 0, 0), (1, 0, 0), (0, 5, 9), (1, 5, 9), (1, 0xF, 0xF),
           (0, 1, 0xF), (1, 0, 7), (1, 1, 1), (0, 0xA, 3)])
_register("sec_scalar_mult", ("mult", "bool"), _run_scalar_mult,
          [(1, 0), (1, 5), (2, 0), (2, 9), (0xF, 0xF), (3, 1), (7, 0xA),
           (5, 5)])
_register("sec_mult_sub", ("bool", "bool", "bool"), _run_mult_sub,
          [(0, 0, 0), (1, 1, 1), (0, 5, 9), (2, 7, 3), (0xF, 0xF, 0xF),
           (5, 0, 0xA), (8, 2, 0), (1, 0xF, 0), (6, 6, 6)])
_register("refresh_broken", ("bool",), _run_refresh_reused,
          [(s,) for s in _B], broken=True)
_register("sec_mult_broken", ("bool",), _run_self_mult,
          [(s,) for s in _B], broken=True)
_register("sec_nonzero_broken", ("bool",), _run_nonzero_unmasked,
          [(s,) for s in (0, 1, 2, 4, 5, 7, 8, 0xA, 0xF)], broken=True)


def gadget_names(include_broken: bool = True) -> list[str]:
    return [k for k, v in REGISTRY.items() if include_broken or not v.broken]


def lookup(name: str) -> GadgetSpec:
    key = name.replace("-", "_")
    try:
        return REGISTRY[key]
    except KeyError:
        raise UnknownGadget(name) from None


# -------------------------------------------------------- input enumeration


def _fit_secrets(spec: GadgetSpec, field: FieldSpec) -> tuple:
    """Default secret assignments restricted to the field's domain.

    The registry defaults target GF(16); on smaller fields the
    out-of-range assignments are dropped rather than wrapped, keeping
    every component a legal input of its kind.
    """

    def fits(kind, v):
        if kind == "bit":
            return v in (0, 1)
        if kind == "mult":
            return 1 <= v < field.q
        return 0 <= v < field.q

    kept = tuple(
        sec for sec in spec.secrets
        if all(fits(kind, sec[i]) for i, kind in enumerate(spec.kinds))
    )
    if len(kept) < 2:
        raise ValueError(
            f"fewer than two default secrets of {spec.name} fit GF({field.q})")
    return kept


def _sharings(kind: str, field: FieldSpec, n: int, value: int):
    """All sharings of one secret value for the given input kind."""
    if kind == "bit":
        space = range(2)
    elif kind == "mult":
        space = range(1, field.q)
    else:
        space = range(field.q)
    out = []
    for head in itertools.product(space, repeat=n - 1):
        if kind == "mult":
            acc = value
            for h in head:
                acc = field.mul(acc, field.inv(h))
            if acc == 0:
                continue
            out.append(list(head) + [acc])
        else:
            acc = value
            for h in head:
                acc ^= h
            out.append(list(head) + [acc])
    return out


def _random_sharing(kind: str, field: FieldSpec, n: int, value: int, rng):
    if kind == "mult":
        shares = [rng.randrange(1, field.q) for _ in range(n - 1)]
        acc = value
        for h in shares:
            acc = field.mul(acc, field.inv(h))
        return shares + [acc]
    space = 2 if kind == "bit" else field.q
    shares = [rng.randrange(space) for _ in range(n - 1)]
    acc = value
    for h in shares:
        acc ^= h
    return shares + [acc]


def _random_secret(kind: str, field: FieldSpec, rng) -> int:
    if kind == "bit":
        return rng.randrange(2)
    if kind == "mult":
        return rng.randrange(1, field.q)
    return rng.randrange(field.q)


def _tape_schedule(spec: GadgetSpec, field: FieldSpec, n: int):
    """Draw schedule plus point labels from one instrumented run."""
    tape = DomainTape()
    ctx = MaskingContext(field, n, tape=tape)
    ctx.trace = []
    ctx.trace_labels = []
    first = _fit_secrets(spec, field)[0]
    args = [
        _sharings(kind, field, n, first[i])[0]
        for i, kind in enumerate(spec.kinds)
    ]
    spec.run(ctx, *args)
    return tape.schedule, list(ctx.trace_labels)


def record_trace(name: str, field: FieldSpec | None = None, n: int = 2,
                 secrets: tuple | None = None,
                 seed: int = DEFAULT_SEED) -> ProbeTrace:
    """One labeled run on a seeded tape with randomly drawn sharings."""
    spec = lookup(name)
    if field is None:
        field = field_new(4)
    if secrets is None:
        secrets = _fit_secrets(spec, field)[0]
    rng = random.Random(seed)
    ctx = MaskingContext(field, n, seed=seed)
    ctx.trace = []
    ctx.trace_labels = []
    args = [
        _random_sharing(kind, field, n, secrets[i], rng)
        for i, kind in enumerate(spec.kinds)
    ]
    spec.run(ctx, *args)
    labels = tuple(ctx.trace_labels)
    return ProbeTrace(
        ids=tuple(label_id(l) for l in labels),
        labels=labels,
        values=tuple(ctx.trace),
    )


# ------------------------------------------------------------- exhaustive


def exhaustive_first_order(name: str, field: FieldSpec | None = None,
                           n: int = 2, secrets: tuple | None = None,
                           cap: int = ENUMERATION_CAP) -> list[LeakVerdict]:
    """Exact per-point value distributions across secrets must coincide.

    Enumerates every input sharing and every tape assignment for every
    secret. Raises EnumerationTooLarge when the run count would exceed
    the cap.
    """
    spec = lookup(name)
    if field is None:
        field = field_new(4)
    if secrets is None:
        secrets = _fit_secrets(spec, field)
    schedule, labels = _tape_schedule(spec, field, n)
    domains = [
        range(1, 1 << w) if nonzero else range(1 << w)
        for (w, nonzero) in schedule
    ]
    tapes = list(itertools.product(*domains))

    per_secret_inputs = []
    total = 0
    for sec in secrets:
        input_sets = [
            _sharings(kind, field, n, sec[i])
            for i, kind in enumerate(spec.kinds)
        ]
        combos = 1
        for s in input_sets:
            combos *= len(s)
        total += combos * len(tapes)
        per_secret_inputs.append(input_sets)
    if total > cap:
        raise EnumerationTooLarge(f"{total} runs exceed cap {cap}")

    npoints = len(labels)
    hists = [[{} for _ in range(npoints)] for _ in secrets]
    runs_per_secret = []
    replay = ReplayTape([])
    for si, input_sets in enumerate(per_secret_inputs):
        h = hists[si]
        runs = 0
        for args in itertools.product(*input_sets):
            for tape_vals in tapes:
                replay.rewind(tape_vals)
                ctx = MaskingContext(field, n, tape=replay)
                trace = []
                ctx.trace = trace
                spec.run(ctx, *args)
                for idx in range(npoints):
                    v = trace[idx]
                    d = h[idx]
                    d[v] = d.get(v, 0) + 1
                runs += 1
        runs_per_secret.append(runs)
    # equal run counts keep raw histograms directly comparable
    assert len(set(runs_per_secret)) == 1

    verdicts = []
    base = hists[0]
    for idx in range(npoints):
        if is_public(labels[idx]):
            continue
        same = all(hists[si][idx] == base[idx] for si in range(1, len(secrets)))
        stat = 0.0
        if not same:
            # report the largest total-variation distance to the first secret
            runs = runs_per_secret[0]
            for si in range(1, len(secrets)):
                keys = set(base[idx]) | set(hists[si][idx])
                tv = sum(
                    abs(base[idx].get(k, 0) - hists[si][idx].get(k, 0))
                    for k in keys
                ) / (2 * runs)
                stat = max(stat, tv)
        verdicts.append(LeakVerdict(
            point_id=label_id(labels[idx]),
            mode="exhaustive",
            statistic=stat,
            samples=sum(runs_per_secret),
            passed=same,
        ))
    return verdicts


# ------------------------------------------------------------- statistical


class _MomentAccumulator:
    """Running first/second/fourth power sums per probe point."""

    __slots__ = ("count", "s1", "s2", "s4")

    def __init__(self, npoints: int):
        self.count = 0
        self.s1 = np.zeros(npoints)
        self.s2 = np.zeros(npoints)
        self.s4 = np.zeros(npoints)

    def add(self, values: list) -> None:
        v = np.asarray(values, dtype=np.float64)
        v2 = v * v
        self.count += 1
        self.s1 += v
        self.s2 += v2
        self.s4 += v2 * v2

    def moments(self):
        nsamp = self.count
        mean = self.s1 / nsamp
        var = np.maximum(self.s2 / nsamp - mean * mean, 0.0) * nsamp / (nsamp - 1)
        mean2 = self.s2 / nsamp
        var2 = np.maximum(self.s4 / nsamp - mean2 * mean2, 0.0) * nsamp / (nsamp - 1)
        return mean, var, mean2, var2


def _welch(m_a, v_a, n_a, m_b, v_b, n_b):
    num = m_a - m_b
    den = np.sqrt(v_a / n_a + v_b / n_b)
    t = np.zeros_like(num)
    nz = den > 0
    t[nz] = num[nz] / den[nz]
    # zero variance with differing means: finite sentinel keeps JSON valid
    t[(~nz) & (num != 0)] = 1e12
    return t


def statistical_fixed_vs_random(target: str, field: FieldSpec | None = None,
                                n: int = 2, m: int = 4,
                                samples_per_class: int = 10_000,
                                threshold: float = 4.5,
                                seed: int = DEFAULT_SEED) -> list[LeakVerdict]:
    """Fixed-vs-random Welch t per point on v and v^2.

    target is a registry gadget, "solve" (masked pipeline on random
    invertible systems) or "solve_unmasked" (the reference path traced
    at its data-dependent examination points).
    """
    if field is None:
        field = field_new(4)
    rng = random.Random(seed)
    campaign = SeededTape(seed ^ 0x5EED)

    if target in ("solve", "solve_unmasked"):
        fixed_sys = random_system(field, m, rng)

        def labeled_run():
            return _solve_trace(target, field, n, fixed_sys, campaign,
                                want_labels=True)

        def run(fixed: bool):
            sysm = fixed_sys if fixed else random_system(field, m, rng)
            return _solve_trace(target, field, n, sysm, campaign)
    else:
        spec = lookup(target)
        fixed_secret = _fit_secrets(spec, field)[0]

        def labeled_run():
            return _gadget_trace(spec, field, n, fixed_secret, rng, campaign,
                                 want_labels=True)

        def run(fixed: bool):
            sec = fixed_secret if fixed else tuple(
                _random_secret(kind, field, rng) for kind in spec.kinds)
            return _gadget_trace(spec, field, n, sec, rng, campaign)

    _, labels = labeled_run()
    npoints = len(labels)
    acc_fixed = _MomentAccumulator(npoints)
    acc_rand = _MomentAccumulator(npoints)
    for _ in range(samples_per_class):
        acc_fixed.add(run(True))
        acc_rand.add(run(False))

    mf, vf, m2f, v2f = acc_fixed.moments()
    mr, vr, m2r, v2r = acc_rand.moments()
    nf, nr = acc_fixed.count, acc_rand.count
    t1 = np.abs(_welch(mf, vf, nf, mr, vr, nr))
    t2 = np.abs(_welch(m2f, v2f, nf, m2r, v2r, nr))
    stat = np.maximum(t1, t2)

    verdicts = []
    for idx in range(npoints):
        if is_public(labels[idx]):
            continue
        s = float(stat[idx])
        verdicts.append(LeakVerdict(
            point_id=label_id(labels[idx]),
            mode="statistical",
            statistic=s,
            samples=nf + nr,
            passed=s < threshold,
        ))
    return verdicts


def _gadget_trace(spec, field, n, secret, rng, campaign, want_labels=False):
    ctx = MaskingContext(field, n, tape=campaign.spawn())
    ctx.trace = []
    if want_labels:
        ctx.trace_labels = []
    args = [
        _random_sharing(kind, field, n, secret[i], rng)
        for i, kind in enumerate(spec.kinds)
    ]
    spec.run(ctx, *args)
    if want_labels:
        return ctx.trace, list(ctx.trace_labels)
    return ctx.trace


def _solve_trace(target, field, n, sysm, campaign, want_labels=False):
    if target == "solve":
        ctx = MaskingContext(field, n, tape=campaign.spawn())
        ctx.trace = []
        if want_labels:
            ctx.trace_labels = []
        masked_solve(ctx, sysm)
        if want_labels:
            return ctx.trace, list(ctx.trace_labels)
        return ctx.trace
    trace = []
    labels = [] if want_labels else None
    gaussian_elimination(sysm, trace=trace, trace_labels=labels)
    if want_labels:
        return trace, labels
    return trace


def leak_summary(verdicts: list[LeakVerdict]) -> dict:
    failed = [v for v in verdicts if not v.passed]
    worst = max((v.statistic for v in verdicts if v.statistic is not None),
                default=0.0)
    return {
        "points": len(verdicts),
        "failed": len(failed),
        "worst_statistic": worst,
        "pass": not failed,
    }
