"""Row echelon solving: plain reference path and the masked pipeline.

Both paths work on the augmented m x (m+1) matrix and follow the same
schedule: (1) for each candidate row below, add it into the pivot row
if the pivot is still zero, (2) reveal whether the pivot is nonzero and
abort if not, (3) scale the pivot row by the pivot inverse, (4)
eliminate the pivot column below, then back-substitute bottom-up. The
masked path keeps every matrix entry Boolean-shared; the only values it
ever opens are the per-column pivot-liveness bit and, during back
substitution, the solution coefficients themselves.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import FieldSpec
from .masking import (
    MaskingContext,
    b2minv,
    full_add,
    sec_nonzero,
    sec_not,
    strong_refresh,
)
from .rowops import (
    LengthMismatch,
    LengthZero,
    row_share,
    sec_cond_add,
    sec_mult_sub,
    sec_scalar_mult,
)


@dataclass(frozen=True)
class LinearSystem:
    """Square system A x = b over one field; validated on construction."""

    field: FieldSpec
    m: int
    a: tuple
    b: tuple

    def __init__(self, field: FieldSpec, a, b):
        m = len(a)
        if m == 0:
            raise LengthZero("empty system")
        rows = []
        for row in a:
            if len(row) != m:
                raise LengthMismatch(f"matrix row of length {len(row)}, want {m}")
            for v in row:
                if not 0 <= v < field.q:
                    raise ValueError(f"entry {v!r} outside [0, {field.q})")
            rows.append(tuple(row))
        if len(b) != m:
            raise LengthMismatch(f"rhs of length {len(b)}, want {m}")
        for v in b:
            if not 0 <= v < field.q:
                raise ValueError(f"entry {v!r} outside [0, {field.q})")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "a", tuple(rows))
        object.__setattr__(self, "b", tuple(b))


@dataclass(frozen=True)
class SolveOutcome:
    x: tuple | None
    singular: bool = False
    fail_index: int | None = None


def gaussian_elimination(system: LinearSystem, pivot_tries: int | None = None,
                         trace=None, trace_labels=None) -> SolveOutcome:
    """Reference solver; mirrors the masked schedule value for value.

    The optional trace collects the data-dependent control values this
    path examines (pivots, elimination factors, solution entries); the
    point sequence is data-independent so traces are comparable.
    """
    field = system.field
    mul = field.mul
    m = system.m

    def emit(v, label):
        if trace is not None:
            trace.append(v)
            if trace_labels is not None:
                trace_labels.append(label)

    t = [list(system.a[j]) + [system.b[j]] for j in range(m)]
    for j in range(m):
        last = m if pivot_tries is None else min(m, j + 1 + pivot_tries)
        for k in range(j + 1, last):
            emit(t[j][j], ("uge", "try", j, k))
            if t[j][j] == 0:
                for i in range(j, m + 1):
                    t[j][i] ^= t[k][i]
        emit(t[j][j], ("uge", "pivot", j))
        if t[j][j] == 0:
            return SolveOutcome(None, singular=True, fail_index=j)
        inv = field.inv(t[j][j])
        for i in range(j, m + 1):
            t[j][i] = mul(inv, t[j][i])
        for k in range(j + 1, m):
            c = t[k][j]
            emit(c, ("uge", "factor", j, k))
            for i in range(j, m + 1):
                t[k][i] ^= mul(c, t[j][i])
    x = [0] * m
    for j in range(m - 1, -1, -1):
        x[j] = t[j][m]
        emit(x[j], ("uge", "x", j))
        for k in range(j):
            t[k][m] ^= mul(t[k][j], x[j])
    return SolveOutcome(tuple(x))


# ------------------------------------------------------------ masked path


def _pivot(row, j):
    return [s[j] for s in row]


def _tail(row, j):
    return [s[j:] for s in row]


def _write_tail(row, j, new):
    for i, s in enumerate(row):
        s[j:] = new[i]


def share_system(ctx: MaskingContext, system: LinearSystem) -> list:
    """Share the augmented matrix row-wise (not part of gadget costs)."""
    return [
        row_share(ctx, list(system.a[j]) + [system.b[j]])
        for j in range(system.m)
    ]


def sec_row_ech(ctx: MaskingContext, rows: list,
                pivot_tries: int | None = None) -> int | None:
    """In-place shared row echelon; returns the failing column or None.

    Abort is immediate: the first column whose revealed liveness bit is
    zero stops the computation.
    """
    m = len(rows)
    c = ctx.counters
    for j in range(m):
        last = m if pivot_tries is None else min(m, j + 1 + pivot_tries)
        for k in range(j + 1, last):
            nz = sec_nonzero(ctx, _pivot(rows[j], j))
            b = sec_not(ctx, nz)
            merged = sec_cond_add(ctx, b, _tail(rows[j], j), _tail(rows[k], j))
            _write_tail(rows[j], j, merged)
        live = full_add(ctx, sec_nonzero(ctx, _pivot(rows[j], j)))
        c.ops += 1  # public liveness test
        if live == 0:
            return j
        pinv = b2minv(ctx, _pivot(rows[j], j))
        _write_tail(rows[j], j, sec_scalar_mult(ctx, pinv, _tail(rows[j], j)))
        for k in range(j + 1, m):
            s = strong_refresh(ctx, _pivot(rows[k], j))
            updated = sec_mult_sub(ctx, s, _tail(rows[j], j), _tail(rows[k], j))
            _write_tail(rows[k], j, updated)
    return None


def sec_back_sub(ctx: MaskingContext, rows: list) -> list[int]:
    """Open solution entries bottom-up, folding each into rows above.

    Pivots are unit after sec_row_ech, so the opened augmented entry of
    row j is x_j; rows above absorb x_j times their column-j entry.
    """
    m = len(rows)
    n = ctx.n
    mul = ctx.field.mul
    c = ctx.counters
    tr = ctx.trace
    x = [0] * m
    for j in range(m - 1, -1, -1):
        x[j] = full_add(ctx, [s[m] for s in rows[j]])
        for k in range(j):
            row = rows[k]
            for i in range(n):
                row[i][m] ^= mul(x[j], row[i][j])
                if tr is not None:
                    ctx.emit(row[i][m], ("sbs", "upd", j, k, i))
            c.ops += 2 * n
    return x


def masked_solve(ctx: MaskingContext, system: LinearSystem,
                 pivot_tries: int | None = None) -> SolveOutcome:
    """Share, eliminate, back-substitute. Opens only sanctioned values."""
    rows = share_system(ctx, system)
    fail = sec_row_ech(ctx, rows, pivot_tries=pivot_tries)
    if fail is not None:
        return SolveOutcome(None, singular=True, fail_index=fail)
    return SolveOutcome(tuple(sec_back_sub(ctx, rows)))


# --------------------------------------------------------- test utilities


def random_system(field: FieldSpec, m: int, rng,
                  invertible: bool = True) -> LinearSystem:
    """Uniform random system; rejection-sample until invertible if asked."""
    while True:
        a = [[rng.randrange(field.q) for _ in range(m)] for _ in range(m)]
        b = [rng.randrange(field.q) for _ in range(m)]
        sys_ = LinearSystem(field, a, b)
        if not invertible:
            return sys_
        if gaussian_elimination(sys_).x is not None:
            return sys_


def singular_system(field: FieldSpec, m: int, rng) -> LinearSystem:
    """Structurally rank-deficient: A = B (m x m-1) times C (m-1 x m)."""
    if m < 2:
        return LinearSystem(field, [[0]], [rng.randrange(field.q)])
    mul = field.mul
    bmat = [[rng.randrange(field.q) for _ in range(m - 1)] for _ in range(m)]
    cmat = [[rng.randrange(field.q) for _ in range(m)] for _ in range(m - 1)]
    a = [
        [0] * m
        for _ in range(m)
    ]
    for r in range(m):
        for t in range(m - 1):
            brt = bmat[r][t]
            if brt == 0:
                continue
            crow = cmat[t]
            arow = a[r]
            for s in range(m):
                arow[s] ^= mul(brt, crow[s])
    b = [rng.randrange(field.q) for _ in range(m)]
    return LinearSystem(field, a, b)


def residual(system: LinearSystem, x) -> list[int]:
    """A x - b; all zeros iff x solves the system."""
    mul = system.field.mul
    out = []
    for j in range(system.m):
        acc = 0
        for k in range(system.m):
            acc ^= mul(system.a[j][k], x[k])
        out.append(acc ^ system.b[j])
    return out
