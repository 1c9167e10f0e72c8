"""Gadgets on shared rows.

A SharedRow is share-major: a list of n equal-length coefficient lists
whose elementwise XOR is the encoded row. The three gadgets here are
the row-level building blocks of the elimination pipeline: conditional
row addition, scaling by a multiplicatively shared factor, and
multiply-accumulate by a Boolean-shared factor.
"""

from __future__ import annotations

from .masking import MaskingContext, refresh, sec_and, sec_mult, strong_refresh

SharedRow = list


class LengthMismatch(ValueError):
    """Rows or sharings whose share counts or lengths disagree."""


class LengthZero(ValueError):
    """Empty rows are not valid gadget inputs."""


def _check_row(row, n: int) -> int:
    if len(row) != n:
        raise LengthMismatch(f"expected {n} shares, got {len(row)}")
    l = len(row[0])
    if l == 0:
        raise LengthZero("row of length 0")
    for s in row:
        if len(s) != l:
            raise LengthMismatch("share vectors differ in length")
    return l


def row_share(ctx: MaskingContext, values: list[int]) -> SharedRow:
    """Share a public row coefficient-wise (share-major result)."""
    if len(values) == 0:
        raise LengthZero("row of length 0")
    n = ctx.n
    row = [[0] * len(values) for _ in range(n)]
    tr = ctx.trace
    for k, v in enumerate(values):
        acc = v
        for i in range(n - 1):
            r = ctx.rand()
            row[i][k] = r
            acc ^= r
            if tr is not None:
                ctx.emit(r, ("rshare", "r", k, i))
        row[n - 1][k] = acc
        if tr is not None:
            ctx.emit(acc, ("rshare", "last", k))
    ctx.counters.ops += (n - 1) * len(values)
    return row


def row_unshare(row: SharedRow) -> list[int]:
    out = list(row[0])
    for s in row[1:]:
        for k, v in enumerate(s):
            out[k] ^= v
    return out


def sec_cond_add(ctx: MaskingContext, b: list[int], x: SharedRow,
                 y: SharedRow) -> SharedRow:
    """x + b*y for a shared bit b: ops (5n^2-3n)l, bits (n^2-n)lw.

    b is extended share-locally to a full-width mask, then every
    coefficient goes through AND, XOR into x, and a strong refresh.
    """
    n = ctx.n
    l = _check_row(x, n)
    if _check_row(y, n) != l:
        raise LengthMismatch("row lengths differ")
    w = ctx.field.w
    ones = (1 << w) - 1
    # sign-extend each bit share to w bits; local move, not charged
    ext = [(-(bi & 1)) & ones for bi in b]
    tr = ctx.trace
    if tr is not None:
        ctx.emit(ext[0], ("scad", "ext"))
    out = [[0] * l for _ in range(n)]
    c = ctx.counters
    for k in range(l):
        yk = [y[i][k] for i in range(n)]
        a = sec_and(ctx, yk, ext)
        s = [x[i][k] ^ a[i] for i in range(n)]
        c.ops += n
        if tr is not None:
            ctx.emit(s[0], ("scad", "s", k))
        s = strong_refresh(ctx, s)
        for i in range(n):
            out[i][k] = s[i]
    return out


def sec_scalar_mult(ctx: MaskingContext, p: list[int],
                    x: SharedRow) -> SharedRow:
    """Scale a row by multiplicatively shared p: ops (5n^2-3n)l.

    One factor share at a time; every coefficient is refreshed after
    each factor so randomness totals (n^2-n)lw bits.
    """
    n = ctx.n
    l = _check_row(x, n)
    if len(p) != n:
        raise LengthMismatch(f"expected {n} factor shares, got {len(p)}")
    mul = ctx.field.mul
    c = ctx.counters
    tr = ctx.trace
    y = [list(s) for s in x]  # working copy, not charged
    if tr is not None:
        ctx.emit(y[0][0], ("ssm", "cp"))
    for j in range(n):
        pj = p[j]
        for k in range(l):
            col = [mul(pj, y[i][k]) for i in range(n)]
            c.ops += n
            if tr is not None:
                ctx.emit(col[0], ("ssm", "mul", j, k))
            col = refresh(ctx, col)
            for i in range(n):
                y[i][k] = col[i]
    return y


def sec_mult_sub(ctx: MaskingContext, factor: list[int], row: SharedRow,
                 base: SharedRow) -> SharedRow:
    """base + factor*row coefficient-wise: ops (7n^2-3n)l/2."""
    n = ctx.n
    l = _check_row(row, n)
    if _check_row(base, n) != l:
        raise LengthMismatch("row lengths differ")
    c = ctx.counters
    tr = ctx.trace
    out = [[0] * l for _ in range(n)]
    for k in range(l):
        rk = [row[i][k] for i in range(n)]
        t = sec_mult(ctx, factor, rk)
        for i in range(n):
            out[i][k] = base[i][k] ^ t[i]
        c.ops += n
        if tr is not None:
            ctx.emit(out[0][k], ("sms", "z", k))
    return out
