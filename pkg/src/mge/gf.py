"""Arithmetic in small binary fields GF(2^w), 1 <= w <= 8.

Field elements are plain Python ints in [0, 2^w), read as polynomials
over GF(2) (bit i is the coefficient of x^i). Addition is XOR and costs
nothing to set up; multiplication and inversion go through a FieldSpec,
which fixes the reduction polynomial and precomputes log/exp tables.

A FieldSpec is immutable after construction and safe to share between
threads. Obtain one through field_new(), which caches per (w, poly).
"""

from __future__ import annotations


class WidthOutOfRange(ValueError):
    """Field width outside the supported range 1..8."""


class ReduciblePolynomial(ValueError):
    """Modulus is not an irreducible polynomial of degree w."""


class ZeroInverse(ZeroDivisionError):
    """Multiplicative inverse of zero requested."""


# Degree-w irreducible defaults. 0x11B is the usual x^8+x^4+x^3+x+1.
DEFAULT_POLY = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x83,
    8: 0x11B,
}


def _gf2_poly_mod(a: int, b: int) -> int:
    """Remainder of a divided by b, both GF(2)[x] polynomials as ints."""
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def poly_is_irreducible(poly: int, w: int) -> bool:
    """Trial division by every polynomial of degree 1..w//2."""
    if poly.bit_length() != w + 1:
        return False
    if w == 1:
        return True
    for deg in range(1, w // 2 + 1):
        for low in range(1 << deg):
            if _gf2_poly_mod(poly, (1 << deg) | low) == 0:
                return False
    return True


def _mul_ref(a: int, b: int, poly: int, w: int) -> int:
    # shift-and-add with eager reduction; table-free, used only at init
    top = 1 << w
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return acc


class FieldSpec:
    """One binary field: width, modulus, and the lookup tables."""

    __slots__ = ("w", "poly", "q", "_exp", "_log", "_inv")

    def __init__(self, w: int, poly: int | None = None):
        if not isinstance(w, int) or not 1 <= w <= 8:
            raise WidthOutOfRange(f"w must be an int in 1..8, got {w!r}")
        if poly is None:
            poly = DEFAULT_POLY[w]
        if not poly_is_irreducible(poly, w):
            raise ReduciblePolynomial(
                f"0x{poly:X} is not an irreducible polynomial of degree {w}"
            )
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "poly", poly)
        q = 1 << w
        object.__setattr__(self, "q", q)

        # The multiplicative group is cyclic of order q-1; find a generator
        # and lay out exp twice over so mul needs no modular reduction.
        gen = 1
        for cand in range(2, q):
            x, order = cand, 1
            while True:
                x = _mul_ref(x, cand, poly, w)
                if x == cand:
                    break
                order += 1
            if order == q - 1:
                gen = cand
                break
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            exp[i + q - 1] = x
            log[x] = i
            x = _mul_ref(x, gen, poly, w)
        object.__setattr__(self, "_exp", exp)
        object.__setattr__(self, "_log", log)

        # inversion is x^(q-2); freeze the results into a table
        inv = [0] * q
        for v in range(1, q):
            inv[v] = self.pow(v, q - 2)
        object.__setattr__(self, "_inv", inv)

    def __setattr__(self, name, value):
        raise AttributeError("FieldSpec is immutable")

    def __repr__(self):
        return f"FieldSpec(w={self.w}, poly=0x{self.poly:X})"

    def mul(self, a: int, b: int) -> int:
        """Product of two elements. Inputs must lie in [0, q)."""
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def pow(self, a: int, e: int) -> int:
        """a**e by square and multiply; a=0 maps to 0 for e>0, 1 for e=0."""
        if e == 0:
            return 1
        if a == 0:
            return 0
        acc = 1
        base = a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("0 has no multiplicative inverse")
        return self._inv[a]


_FIELD_CACHE: dict[tuple[int, int], FieldSpec] = {}


def field_new(w: int, poly: int | None = None) -> FieldSpec:
    """Construct (or fetch the cached) FieldSpec for GF(2^w) mod poly."""
    if poly is None:
        if not isinstance(w, int) or not 1 <= w <= 8:
            raise WidthOutOfRange(f"w must be an int in 1..8, got {w!r}")
        poly = DEFAULT_POLY[w]
    key = (w, poly)
    spec = _FIELD_CACHE.get(key)
    if spec is None:
        spec = FieldSpec(w, poly)
        _FIELD_CACHE[key] = spec
    return spec


def gf_add(x: int, y: int) -> int:
    """Sum in any binary field: carryless, so simply XOR."""
    return x ^ y


def gf_mul(field: FieldSpec, x: int, y: int) -> int:
    return field.mul(x, y)


def gf_inv(field: FieldSpec, x: int) -> int:
    return field.inv(x)
