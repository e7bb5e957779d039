"""Exact arithmetic in rings of cyclotomic integers.

Elements of Z[zeta_e] are integer coefficient tuples of length phi(e) in the
power basis 1, zeta, ..., zeta^(phi(e)-1), reduced modulo the e-th cyclotomic
polynomial.  Text form uses the letter z for zeta, e.g. "1+2z" or "z^2-3".

Complex embeddings (zeta -> exp(2*pi*i*m/e) for units m mod e) are available
two ways: fast double-precision values with a rigorous forward error bound,
and exact rational interval enclosures of |value|^2 built from Taylor series
for cos/sin with certified remainders (pi itself enclosed via Machin's
formula).  The interval route is the slow path used only when the float
error bound cannot decide a comparison.
"""

from __future__ import annotations

import cmath
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_div_exact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # exact long division of integer polynomials, divisor monic, remainder 0
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        q = num[i]
        out[i - dd] = q
        if q:
            for j, c in enumerate(den):
                num[i - dd + j] -= q * c
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, constant first."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n):
        if d < n:
            num = _poly_div_exact(num, cyclotomic_polynomial(d))
    return tuple(num)


def reduce_mod_cyclotomic(coeffs, e: int) -> tuple[int, ...]:
    """Remainder of an integer polynomial in zeta_e modulo the e-th cyclotomic
    polynomial, padded to length phi(e)."""
    mod = cyclotomic_polynomial(e)
    deg = len(mod) - 1
    rem = list(coeffs)
    for i in range(len(rem) - 1, deg - 1, -1):
        q = rem[i]
        if q:
            for j, c in enumerate(mod):
                rem[i - deg + j] -= q * c
    rem = rem[:deg]
    return tuple(rem + [0] * (deg - len(rem)))


def cyc_zero(e: int) -> tuple[int, ...]:
    return (0,) * euler_phi(e)


def cyc_int(k: int, e: int) -> tuple[int, ...]:
    return (k,) + (0,) * (euler_phi(e) - 1)


def cyc_add(a, b) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def cyc_mul(a, b, e: int) -> tuple[int, ...]:
    conv = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                conv[i + j] += x * y
    return reduce_mod_cyclotomic(conv, e)


def cyc_pow(a, k: int, e: int) -> tuple[int, ...]:
    result = cyc_int(1, e)
    base = tuple(a)
    while k:
        if k & 1:
            result = cyc_mul(result, base, e)
        base = cyc_mul(base, base, e)
        k >>= 1
    return result


def galois_image(a, m: int, e: int) -> tuple[int, ...]:
    """Apply zeta -> zeta^m (m a unit mod e) to a reduced element."""
    if gcd(m, e) != 1:
        raise ValueError(f"{m} is not a unit mod {e}")
    out = [0] * max(e, 1)
    for i, c in enumerate(a):
        out[(m * i) % e if e > 1 else 0] += c
    return reduce_mod_cyclotomic(out, e)


def units_mod(e: int) -> list[int]:
    return [m for m in range(1, max(e, 2)) if gcd(m, e) == 1] if e > 1 else [1]


def parse_cyclotomic(text: str, e: int) -> tuple[int, ...]:
    """Parse integer polynomials in z (= zeta_e), e.g. "1+2z" or "-z^2+3"."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty cyclotomic literal")
    coeffs: dict[int, int] = {}
    for term in re.findall(r"[+-]?[^+-]+", s):
        m = re.fullmatch(r"([+-]?)(\d*)(?:(z)(?:\^(\d+))?)?", term)
        if not m or (not m.group(2) and not m.group(3)):
            raise ValueError(f"bad term {term!r} in cyclotomic literal {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        power = 0 if not m.group(3) else (int(m.group(4)) if m.group(4) else 1)
        coeffs[power] = coeffs.get(power, 0) + sign * coef
    top = max(coeffs)
    vec = [coeffs.get(i, 0) for i in range(top + 1)]
    return reduce_mod_cyclotomic(vec, e)


def format_cyclotomic(a) -> str:
    parts = []
    for i, c in enumerate(a):
        if c == 0:
            continue
        if i == 0:
            parts.append(f"{c:+d}")
        else:
            z = "z" if i == 1 else f"z^{i}"
            if c == 1:
                parts.append(f"+{z}")
            elif c == -1:
                parts.append(f"-{z}")
            else:
                parts.append(f"{c:+d}{z}")
    if not parts:
        return "0"
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


# -- complex embeddings, fast path ------------------------------------------

def embedding_abs_floats(a, e: int) -> tuple[list[float], float]:
    """|sigma_m(a)| for all units m mod e in doubles, plus an absolute error
    bound valid for every returned value (covers rounding in the root of
    unity, the Horner loop and the final abs)."""
    total = sum(abs(int(c)) for c in a)
    if total >= 2**970:  # keep float conversion far from overflow
        return [], float("inf")
    err = float(total) * len(a) * (e + 8) * 2.0**-50
    values = []
    for m in units_mod(e):
        root = cmath.exp(2j * cmath.pi * m / e) if e > 1 else complex(1.0)
        acc = complex(0.0)
        for c in reversed(a):
            acc = acc * root + c
        values.append(abs(acc))
    return values, err


# -- exact rational interval enclosures --------------------------------------

Interval = tuple[Fraction, Fraction]


def _iadd(a: Interval, b: Interval) -> Interval:
    return (a[0] + b[0], a[1] + b[1])


def _iscale(a: Interval, c: Fraction) -> Interval:
    x, y = c * a[0], c * a[1]
    return (x, y) if x <= y else (y, x)


def _isquare(a: Interval) -> Interval:
    lo, hi = a
    if lo >= 0:
        return (lo * lo, hi * hi)
    if hi <= 0:
        return (hi * hi, lo * lo)
    return (Fraction(0), max(lo * lo, hi * hi))


def _atan_inv_fixed(x: int, prec: int) -> tuple[int, int]:
    # arctan(1/x) * 2^prec by the power series in integer fixed point;
    # returns (scaled value, error bound in units of 2^-prec)
    power = (1 << prec) // x
    xx = x * x
    total = 0
    k = 0
    while power > 0:
        term = power // (2 * k + 1)
        total += -term if k & 1 else term
        power //= xx
        k += 1
    return total, 4 * k + 4


@lru_cache(maxsize=None)
def pi_interval(bits: int) -> Interval:
    """Rational enclosure of pi via Machin's formula, in fixed point."""
    prec = bits + 10
    a, ea = _atan_inv_fixed(5, prec)
    b, eb = _atan_inv_fixed(239, prec)
    value = 16 * a - 4 * b
    err = 16 * ea + 4 * eb
    return (Fraction(value - err, 1 << prec), Fraction(value + err, 1 << prec))


def _fx_mul(a: tuple[int, int], b: tuple[int, int], scale: int) -> tuple[int, int]:
    # fixed-point product with error units: value in [(v-u), (v+u)] / scale
    va, ua = a
    vb, ub = b
    v = va * vb // scale
    u = (abs(va) * ub + abs(vb) * ua + ua * ub) // scale + 2
    return v, u


@lru_cache(maxsize=None)
def cos_sin_2pi(j: int, e: int, bits: int) -> tuple[Interval, Interval]:
    """Enclosures of cos(2*pi*j/e) and sin(2*pi*j/e).

    Taylor series in integer fixed point (value plus error-unit bookkeeping);
    the tail is bounded by twice the next term once the term ratio drops
    below one half.  Pure integer arithmetic keeps high precisions cheap.
    """
    j %= e
    prec = bits + 40
    scale = 1 << prec
    pi_lo, pi_hi = pi_interval(prec)
    pi_v = (pi_lo.numerator << prec) // pi_lo.denominator
    pi_u = ((pi_hi - pi_lo).numerator << prec) // (pi_hi - pi_lo).denominator + 2
    x = ((2 * j) * pi_v // e, (2 * j) * pi_u // e + 2)
    x2 = _fx_mul(x, x, scale)
    x2_hi = x2[0] + x2[1]
    cos_v, cos_u = scale, 0
    sin_v, sin_u = x
    ct: tuple[int, int] = (scale, 0)  # running magnitude of the cos term
    st: tuple[int, int] = x
    sign = 1
    k = 0
    limit = 1 << 24  # error-unit sanity cap
    while True:
        k += 1
        sign = -sign
        ct = _fx_mul(ct, x2, scale)
        ct = (ct[0] // ((2 * k - 1) * (2 * k)), ct[1] // ((2 * k - 1) * (2 * k)) + 2)
        cos_v += sign * ct[0]
        cos_u += ct[1]
        st = _fx_mul(st, x2, scale)
        st = (st[0] // ((2 * k) * (2 * k + 1)), st[1] // ((2 * k) * (2 * k + 1)) + 2)
        sin_v += sign * st[0]
        sin_u += st[1]
        c_next = (abs(ct[0]) + ct[1]) * x2_hi // scale // ((2 * k + 1) * (2 * k + 2)) + 1
        s_next = (abs(st[0]) + st[1]) * x2_hi // scale // ((2 * k + 2) * (2 * k + 3)) + 1
        if (2 * k + 1) * (2 * k + 2) * scale >= 2 * x2_hi and max(c_next, s_next) <= (
            1 << 30
        ):
            break
    if max(cos_u, sin_u) > limit:
        raise ArithmeticError("error units exceeded the sanity cap")
    c_err = cos_u + 2 * c_next
    s_err = sin_u + 2 * s_next
    return (
        (Fraction(cos_v - c_err, scale), Fraction(cos_v + c_err, scale)),
        (Fraction(sin_v - s_err, scale), Fraction(sin_v + s_err, scale)),
    )


def embedding_abs_sq_intervals(a, e: int, bits: int) -> list[Interval]:
    """Exact rational enclosures of |sigma_m(a)|^2 for all units m mod e."""
    out = []
    for m in units_mod(e):
        re_part: Interval = (Fraction(0), Fraction(0))
        im_part: Interval = (Fraction(0), Fraction(0))
        for i, c in enumerate(a):
            if c == 0:
                continue
            cos_iv, sin_iv = cos_sin_2pi(m * i, e, bits) if e > 1 else (
                (Fraction(1), Fraction(1)),
                (Fraction(0), Fraction(0)),
            )
            re_part = _iadd(re_part, _iscale(cos_iv, Fraction(c)))
            im_part = _iadd(im_part, _iscale(sin_iv, Fraction(c)))
        out.append(_iadd(_isquare(re_part), _isquare(im_part)))
    return out
