"""Closed-form operation and randomness counts, plus the scheme table.

t_cost / r_cost return the per-gadget closed forms in exact integer
arithmetic. The elimination total composes them:

  T_ech = P(m) (T_nonzero + 1)            step 1: liveness + flip, per try
        + S(m) T_cond_add(1)              step 1: conditional row adds
        + m (T_nonzero + T_full_add + 1)  step 2: reveal liveness bit
        + m T_b2minv                      step 3: pivot inverse
        + C(m) T_scalar_mult(1)           step 3: scale pivot row
        + P(m) T_strong_refresh           step 4: refresh the factor
        + S(m) T_mult_sub(1)              step 4: eliminate below

with P(m) = (m^2-m)/2, C(m) = (m^2+3m)/2 and S(m) = (2m^3+3m^2+m)/6.
S(m) counts every slice as if it ran at the per-column maximum; the
instrumented pipeline executes (m^2-m)/2 + m fewer unit calls of
cond_add and mult_sub per matrix, so measured ops run slightly under
these forms (exact relation: measured = form - m*(T_ca(1)+T_ms(1))).

The scheme comparison table scales ops by 1/8192 and random bits by
1/1000. Reproducing the tabulated integers requires one charging
variant: inside the table, scalar multiplication charges the refresh
without its output copy (4n^2-2n per coefficient instead of 5n^2-3n),
so tabulated_pipeline_ops subtracts C(m)(n^2-n) from T_ech. Randomness
needs no variant. PRINTED_TABLE is the frozen snapshot being
reproduced; KNOWN_SNAPSHOT_DEVIATIONS lists the cells where the
snapshot itself is internally inconsistent (one row duplicates the
randomness of a smaller parameter set) and cannot be matched.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .gf import field_new
from .masking import (
    MaskingContext,
    b2m,
    b2minv,
    bool_share,
    full_add,
    refresh,
    sec_and,
    sec_mult,
    sec_nonzero,
    sec_not,
    sec_or,
    strong_refresh,
)
from .linalg import random_system, sec_back_sub, sec_row_ech, share_system
from .rowops import row_share, sec_cond_add, sec_mult_sub, sec_scalar_mult

OPS_DIVISOR = 8192
RAND_DIVISOR = 1000

_SIZED = {"sec_cond_add", "sec_scalar_mult", "sec_mult_sub",
          "sec_row_ech", "sec_back_sub", "pipeline"}
_NEEDS_W = {"sec_nonzero", "sec_row_ech", "pipeline"}

GADGETS = (
    "refresh", "strong_refresh", "full_add", "sec_mult", "sec_and",
    "sec_not", "sec_or", "sec_nonzero", "b2m", "b2minv",
    "sec_cond_add", "sec_scalar_mult", "sec_mult_sub",
    "sec_row_ech", "sec_back_sub", "pipeline",
)


def w_eff(q: int) -> int:
    """Bits needed for one element of a size-q field."""
    return (q - 1).bit_length()


def _levels(w: int) -> int:
    # the closed forms count ceil(log2(w+1)) fold levels
    return w.bit_length()


def _check_args(gadget: str, size, w, n=2):
    if gadget not in GADGETS:
        raise ValueError(f"unknown gadget {gadget!r}")
    if n < 2:
        raise ValueError(f"forms assume n >= 2 shares, got {n}")
    if gadget in _SIZED:
        if size is None:
            raise ValueError(f"{gadget} needs a size")
    elif size is not None:
        raise ValueError(f"{gadget} takes no size")
    if gadget in _NEEDS_W and w is None:
        raise ValueError(f"{gadget} needs w")


def t_cost(gadget: str, n: int, size: int | None = None,
           w: int | None = None) -> int:
    """Closed-form op count; size is l for row gadgets, m for matrix ones."""
    _check_args(gadget, size, w, n)
    if gadget == "refresh":
        return 4 * n - 3
    if gadget == "strong_refresh":
        return (3 * n * n - 3 * n) // 2
    if gadget == "full_add":
        return (3 * n * n - n - 2) // 2
    if gadget in ("sec_mult", "sec_and"):
        return (7 * n * n - 5 * n) // 2
    if gadget == "sec_not":
        return 1
    if gadget == "sec_or":
        return 2 * n + (7 * n * n - 5 * n) // 2 + 1
    if gadget == "sec_nonzero":
        return (5 * n * n + 2 * n - 1) + _levels(w) * (5 * n * n - n + 2)
    if gadget == "b2m":
        return (5 * n * n - 7 * n + 4) // 2
    if gadget == "b2minv":
        return (5 * n * n - 5 * n + 4) // 2
    if gadget == "sec_cond_add":
        return (5 * n * n - 3 * n) * size
    if gadget == "sec_scalar_mult":
        return (5 * n * n - 3 * n) * size
    if gadget == "sec_mult_sub":
        return (7 * n * n - 3 * n) // 2 * size
    if gadget == "sec_back_sub":
        return size * (3 * n * n - n - 2) // 2 + n * size * (size - 1)
    m = size
    pairs = (m * m - m) // 2
    slices = (m * m + 3 * m) // 2
    ssum = (2 * m ** 3 + 3 * m * m + m) // 6
    t_nz = t_cost("sec_nonzero", n, w=w)
    ech = (
        pairs * (t_nz + 1)
        + ssum * t_cost("sec_cond_add", n, 1)
        + m * (t_nz + t_cost("full_add", n) + 1)
        + m * t_cost("b2minv", n)
        + slices * t_cost("sec_scalar_mult", n, 1)
        + pairs * t_cost("strong_refresh", n)
        + ssum * t_cost("sec_mult_sub", n, 1)
    )
    if gadget == "sec_row_ech":
        return ech
    return ech + t_cost("sec_back_sub", n, m)


def r_cost(gadget: str, n: int, size: int | None = None,
           w: int | None = None) -> int:
    """Closed-form randomness in bits; same size conventions as t_cost."""
    _check_args(gadget, size, w, n)
    if gadget == "sec_not":
        return 0
    if w is None:
        raise ValueError("r_cost needs w")
    h = (n * n - n) // 2 * w
    if gadget == "refresh":
        return (n - 1) * w
    if gadget in ("strong_refresh", "full_add", "sec_mult", "sec_and",
                  "sec_or", "b2m", "b2minv"):
        return h
    if gadget == "sec_nonzero":
        levels = _levels(w)
        return (levels * levels - levels) // 2 * (n * n - n)
    if gadget in ("sec_cond_add", "sec_scalar_mult"):
        return (n * n - n) * size * w
    if gadget == "sec_mult_sub":
        return h * size
    if gadget == "sec_back_sub":
        return size * h
    m = size
    pairs = (m * m - m) // 2
    slices = (m * m + 3 * m) // 2
    ssum = (2 * m ** 3 + 3 * m * m + m) // 6
    r_nz = r_cost("sec_nonzero", n, w=w)
    ech = (
        pairs * r_nz
        + ssum * 2 * h
        + m * (r_nz + 2 * h)
        + slices * 2 * h
        + pairs * h
        + ssum * h
    )
    if gadget == "sec_row_ech":
        return ech
    return ech + r_cost("sec_back_sub", n, m, w=w)


def tabulated_pipeline_ops(n: int, m: int, w: int) -> int:
    """Pipeline ops under the table's scalar-mult charging variant."""
    slices = (m * m + 3 * m) // 2
    return t_cost("pipeline", n, m, w=w) - slices * (n * n - n)


def _div_round(a: int, d: int) -> int:
    # round half up without floating point
    return (2 * a + d) // (2 * d)


# ------------------------------------------------------------- parameters


@dataclass(frozen=True)
class ParamSet:
    label: str
    scheme: str
    level: str
    q: int
    m: int

    @property
    def w(self) -> int:
        return w_eff(self.q)


PARAM_SETS = (
    ParamSet("uov-ip", "uov", "Ip", 256, 44),
    ParamSet("uov-is", "uov", "Is", 16, 64),
    ParamSet("uov-iii", "uov", "III", 256, 72),
    ParamSet("uov-v", "uov", "V", 256, 96),
    ParamSet("mayo-i", "mayo", "I", 16, 64),
    ParamSet("mayo-iii", "mayo", "III", 16, 96),
    ParamSet("mayo-v", "mayo", "V", 16, 128),
    ParamSet("qruov-i-q7-m100", "qruov", "I", 7, 100),
    ParamSet("qruov-i-q31-m60", "qruov", "I", 31, 60),
    ParamSet("qruov-i-q31-m70", "qruov", "I", 31, 70),
    ParamSet("qruov-i-q127-m54", "qruov", "I", 127, 54),
    ParamSet("qruov-iii-q7-m140", "qruov", "III", 7, 140),
    ParamSet("qruov-iii-q31-m87", "qruov", "III", 31, 87),
    ParamSet("qruov-iii-q31-m100", "qruov", "III", 31, 100),
    ParamSet("qruov-iii-q127-m78", "qruov", "III", 127, 78),
    ParamSet("qruov-v-q7-m190", "qruov", "V", 7, 190),
    ParamSet("qruov-v-q31-m114", "qruov", "V", 31, 114),
    ParamSet("qruov-v-q31-m120", "qruov", "V", 31, 120),
    ParamSet("qruov-v-q127-m105", "qruov", "V", 127, 105),
    ParamSet("snova-i-m68", "snova", "I", 16, 68),
    ParamSet("snova-i-m72", "snova", "I", 16, 72),
    ParamSet("snova-i-m80", "snova", "I", 16, 80),
    ParamSet("snova-iii-m100", "snova", "III", 16, 100),
    ParamSet("snova-iii-m99", "snova", "III", 16, 99),
    ParamSet("snova-iii-m128", "snova", "III", 16, 128),
    ParamSet("snova-v-m132", "snova", "V", 16, 132),
    ParamSet("snova-v-m135", "snova", "V", 16, 135),
    ParamSet("snova-v-m160", "snova", "V", 16, 160),
    ParamSet("mqsign-i", "mqsign", "I", 256, 46),
    ParamSet("mqsign-iii", "mqsign", "III", 256, 72),
    ParamSet("mqsign-v", "mqsign", "V", 256, 96),
)

PRESETS = {p.label: p for p in PARAM_SETS}

# Frozen snapshot being reproduced: label -> ((ops n=2,3,4), (rand n=2,3,4)).
PRINTED_TABLE = {
    "uov-ip": ((105, 260, 482), (742, 2226, 4452)),
    "uov-is": ((300, 747, 1392), (1112, 3336, 6671)),
    "uov-iii": ((428, 1065, 1986), (3146, 9437, 18873)),
    "uov-v": ((985, 2459, 4590), (7360, 22079, 44158)),
    "mayo-i": ((300, 747, 1392), (1112, 3336, 6671)),
    "mayo-iii": ((973, 2434, 4546), (3680, 11040, 22079)),
    "mayo-v": ((2263, 5670, 10597), (8638, 25914, 51827)),
    "qruov-i-q7-m100": ((1084, 2717, 5076), (3102, 9306, 18612)),
    "qruov-i-q31-m60": ((249, 619, 1155), (1147, 3441, 6881)),
    "qruov-i-q31-m70": ((388, 968, 1806), (1806, 5417, 10834)),
    "qruov-i-q127-m54": ((184, 457, 852), (1175, 3524, 7048)),
    "qruov-iii-q7-m140": ((2922, 7333, 13712), (8431, 25292, 50584)),
    "qruov-iii-q31-m87": ((730, 1825, 3407), (3432, 10295, 20590)),
    "qruov-iii-q31-m100": ((1097, 2744, 5125), (5184, 15550, 31100)),
    "qruov-iii-q127-m78": ((531, 1327, 2476), (3472, 10415, 20829)),
    "qruov-v-q7-m190": ((7217, 18131, 33918), (20942, 62825, 125650)),
    "qruov-v-q31-m114": ((1610, 4032, 7533), (7646, 22937, 45873)),
    "qruov-v-q31-m120": ((1872, 4689, 8761), (8904, 26710, 53419)),
    "qruov-v-q127-m105": ((1265, 3166, 5914), (8373, 25119, 50237)),
    "snova-i-m68": ((357, 890, 1660), (1329, 3987, 7974)),
    "snova-i-m72": ((421, 1051, 1961), (1573, 4719, 9437)),
    "snova-i-m80": ((572, 1428, 2666), (2147, 6439, 12877)),
    "snova-iii-m100": ((1097, 2744, 5125), (2147, 6439, 12877)),
    "snova-iii-m99": ((1065, 2664, 4976), (4031, 12093, 24186)),
    "snova-iii-m128": ((2263, 5670, 10597), (8638, 25914, 51827)),
    "snova-v-m132": ((2477, 6209, 11604), (9465, 28395, 56789)),
    "snova-v-m135": ((2647, 6634, 12400), (10119, 30356, 60712)),
    "snova-v-m160": ((4369, 10959, 20489), (16773, 50317, 100634)),
    "mqsign-i": ((119, 294, 547), (845, 2534, 5068)),
    "mqsign-iii": ((428, 1065, 1986), (3146, 9437, 18873)),
    "mqsign-v": ((985, 2459, 4590), (7360, 22079, 44158)),
}

# snova-iii-m100 prints the randomness of snova-i-m80 (m=80) in all three
# share columns; the m=100 formulas cannot reproduce those duplicated cells.
KNOWN_SNAPSHOT_DEVIATIONS = (
    ("snova-iii-m100", "rand", 2),
    ("snova-iii-m100", "rand", 3),
    ("snova-iii-m100", "rand", 4),
)


@dataclass(frozen=True)
class CostRow:
    label: str
    scheme: str
    level: str
    q: int
    m: int
    n: int
    ops_total: int
    ops_scaled: int
    rand_bits: int
    rand_scaled: int


def cost_row(param: ParamSet, n: int) -> CostRow:
    w = param.w
    ops = tabulated_pipeline_ops(n, param.m, w)
    rand = r_cost("pipeline", n, param.m, w=w)
    return CostRow(
        label=param.label, scheme=param.scheme, level=param.level,
        q=param.q, m=param.m, n=n,
        ops_total=ops, ops_scaled=_div_round(ops, OPS_DIVISOR),
        rand_bits=rand, rand_scaled=_div_round(rand, RAND_DIVISOR),
    )


def cost_table(orders=(2, 3, 4), params=None) -> list[CostRow]:
    """Rows in table order, each parameter set over ascending n."""
    if params is None:
        params = PARAM_SETS
    return [cost_row(p, n) for p in params for n in sorted(orders)]


CSV_HEADER = "scheme,level,q,m,n,ops_total,ops_scaled,rand_bits,rand_scaled"


def to_csv(rows: list[CostRow]) -> str:
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            f"{r.scheme},{r.level},{r.q},{r.m},{r.n},{r.ops_total},"
            f"{r.ops_scaled},{r.rand_bits},{r.rand_scaled}"
        )
    return "\n".join(lines) + "\n"


def verify_rows(rows: list[CostRow], tol_ops: int = 2,
                tol_rand: int = 1) -> list[dict]:
    """Mismatches of scaled cells against PRINTED_TABLE beyond tolerance."""
    bad = []
    for r in rows:
        want = PRINTED_TABLE.get(r.label)
        if want is None or r.n not in (2, 3, 4):
            continue
        ops_want = want[0][r.n - 2]
        rand_want = want[1][r.n - 2]
        if abs(r.ops_scaled - ops_want) > tol_ops:
            bad.append({"label": r.label, "q": r.q, "m": r.m, "n": r.n,
                        "column": "ops", "got": r.ops_scaled,
                        "want": ops_want})
        if abs(r.rand_scaled - rand_want) > tol_rand:
            bad.append({"label": r.label, "q": r.q, "m": r.m, "n": r.n,
                        "column": "rand", "got": r.rand_scaled,
                        "want": rand_want})
    return bad


# --------------------------------------------- counters versus the forms


@dataclass(frozen=True)
class CounterCheck:
    gadget: str
    n: int
    w: int
    size: int | None
    ops_run: int
    ops_form: int
    bits_run: int
    bits_form: int
    draws_run: int

    @property
    def ops_rel(self) -> float:
        return abs(self.ops_run - self.ops_form) / self.ops_form

    @property
    def bits_rel(self) -> float:
        if self.bits_form == 0:
            return 0.0 if self.bits_run == 0 else float("inf")
        return abs(self.bits_run - self.bits_form) / self.bits_form

    @property
    def exact(self) -> bool:
        return self.ops_run == self.ops_form and self.bits_run == self.bits_form


def counter_vs_formula(gadget: str, n: int, w: int = 8,
                       size: int | None = None, seed: int = 1) -> CounterCheck:
    """Run one gadget on random inputs and compare counter deltas."""
    _check_args(gadget, size, w if gadget in _NEEDS_W else w)
    field = field_new(w)
    ctx = MaskingContext(field, n, seed=seed)
    rng = random.Random(seed ^ 0x5A5A5A)

    def sh(v=None):
        if v is None:
            v = rng.randrange(field.q)
        return bool_share(ctx, v)

    def row(l):
        return row_share(ctx, [rng.randrange(field.q) for _ in range(l)])

    if gadget in ("sec_row_ech", "sec_back_sub", "pipeline"):
        sysm = random_system(field, size, rng)
        rows = share_system(ctx, sysm)
        if gadget == "sec_back_sub":
            fail = sec_row_ech(ctx, rows)
            assert fail is None
        before = ctx.counters.snapshot()
        if gadget == "sec_row_ech":
            assert sec_row_ech(ctx, rows) is None
        elif gadget == "sec_back_sub":
            sec_back_sub(ctx, rows)
        else:
            assert sec_row_ech(ctx, rows) is None
            sec_back_sub(ctx, rows)
    else:
        args = None
        if gadget in ("refresh", "strong_refresh", "full_add", "sec_nonzero"):
            args = (sh(),)
        elif gadget == "sec_not":
            args = (sh(rng.randrange(2)),)
        elif gadget in ("sec_mult", "sec_and", "sec_or"):
            args = (sh(), sh())
        elif gadget in ("b2m", "b2minv"):
            args = (sh(rng.randrange(1, field.q)),)
        elif gadget == "sec_cond_add":
            args = (sh(rng.randrange(2)), row(size), row(size))
        elif gadget == "sec_scalar_mult":
            p = b2minv(ctx, sh(rng.randrange(1, field.q)))
            args = (p, row(size))
        elif gadget == "sec_mult_sub":
            args = (sh(), row(size), row(size))
        fn = {
            "refresh": refresh, "strong_refresh": strong_refresh,
            "full_add": full_add, "sec_mult": sec_mult, "sec_and": sec_and,
            "sec_not": sec_not, "sec_or": sec_or, "sec_nonzero": sec_nonzero,
            "b2m": b2m, "b2minv": b2minv, "sec_cond_add": sec_cond_add,
            "sec_scalar_mult": sec_scalar_mult, "sec_mult_sub": sec_mult_sub,
        }[gadget]
        before = ctx.counters.snapshot()
        fn(ctx, *args)
    after = ctx.counters.snapshot()
    kw = {"w": w} if gadget in _NEEDS_W else {}
    return CounterCheck(
        gadget=gadget, n=n, w=w, size=size,
        ops_run=after[0] - before[0],
        ops_form=t_cost(gadget, n, size, **kw),
        bits_run=after[2] - before[2],
        bits_form=r_cost(gadget, n, size, w=w),
        draws_run=after[1] - before[1],
    )
