"""Fixed-point-count generating polynomials and their iteration at zero.

For a set of permutations, the indicatrix is the probability generating
polynomial of the fixed-point count: coefficient k is the proportion of
elements with exactly k fixed points.  Its constant term is the proportion of
fixed-point-free elements, so 1 - constant term is the fixed-point proportion
of the set, and iterating the polynomial at 0 tracks the fixed-point
proportion of iterated wreath-product cosets.

Iteration is exact in Fractions while denominators stay below a bit cap, then
switches to outward-rounded dyadic interval arithmetic (iterating a degree-d
polynomial roughly cubes denominators, so exact iteration blows up doubly
exponentially).  All returned enclosures are guaranteed to contain the true
value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .perms import PermSet, ResourceCapError, trace

DENOMINATOR_BIT_CAP = 128
WORKING_PRECISION = 256
MAX_PRECISION = 4096
MAX_ITERATION_STEPS = 200_000


class PrecisionExhaustedError(Exception):
    """The hard precision cap was reached before a comparison could be decided."""


class _Diverges:
    """Sentinel: the fixed-point proportion stays at 1, no finite index exists."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "DIVERGES"


DIVERGES = _Diverges()


@dataclass(frozen=True)
class IntervalRational:
    """A closed rational interval [lo, hi] enclosing one real value."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("interval with lo > hi")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def is_exact(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, x) -> bool:
        return self.lo <= Fraction(x) <= self.hi


@dataclass(frozen=True)
class IndicatrixPoly:
    """Probability generating polynomial of fixed-point counts.

    coeffs[k] = Prob(count = k); all coefficients nonnegative, summing to 1.
    Trailing zeros are trimmed but the constant term is always present.
    """

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        while len(cs) > 1 and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)
        if any(c < 0 for c in self.coeffs):
            raise ValueError("negative coefficient in indicatrix")
        if sum(self.coeffs) != 1:
            raise ValueError("indicatrix coefficients must sum to 1")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __repr__(self) -> str:
        return f"IndicatrixPoly({to_text(self)!r})"


def indicatrix_of(s: PermSet) -> IndicatrixPoly:
    """Indicatrix of a permutation set: coefficient k counts trace-k elements."""
    if len(s) == 0:
        raise ValueError("indicatrix of empty set")
    counts = [0] * (s.degree + 1)
    for p in s:
        counts[trace(p)] += 1
    total = len(s)
    return IndicatrixPoly(tuple(Fraction(c, total) for c in counts))


def value_at(f: IndicatrixPoly, x) -> Fraction:
    """Exact Horner evaluation."""
    x = Fraction(x)
    acc = Fraction(0)
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


def derivative_at_one(f: IndicatrixPoly) -> Fraction:
    """Sum of k * coeffs[k]; equals the mean trace of the source set."""
    return sum((Fraction(k) * c for k, c in enumerate(f.coeffs)), Fraction(0))


def derivative_value(f: IndicatrixPoly, x) -> Fraction:
    x = Fraction(x)
    return sum((Fraction(k) * c * x ** (k - 1) for k, c in enumerate(f.coeffs) if k >= 1), Fraction(0))


def second_derivative_value(f: IndicatrixPoly, x) -> Fraction:
    x = Fraction(x)
    return sum(
        (Fraction(k * (k - 1)) * c * x ** (k - 2) for k, c in enumerate(f.coeffs) if k >= 2),
        Fraction(0),
    )


def compose(f: IndicatrixPoly, g: IndicatrixPoly, max_degree: int = 64) -> IndicatrixPoly:
    """Coefficient array of f(g(x)); only for small composite degree (test use)."""
    if f.degree * g.degree > max_degree:
        raise ResourceCapError(
            f"composite degree {f.degree * g.degree} exceeds {max_degree}"
        )
    # Horner on polynomial coefficients
    acc = [Fraction(0)]
    for c in reversed(f.coeffs):
        nxt = [Fraction(0)] * (len(acc) + g.degree)
        for i, a in enumerate(acc):
            if a == 0:
                continue
            for j, b in enumerate(g.coeffs):
                nxt[i + j] += a * b
        while len(nxt) > 1 and nxt[-1] == 0:
            nxt.pop()
        nxt[0] += c
        acc = nxt
    return IndicatrixPoly(tuple(acc))


def _round_down(x: Fraction, bits: int) -> Fraction:
    return Fraction((x.numerator << bits) // x.denominator, 1 << bits)


def _round_up(x: Fraction, bits: int) -> Fraction:
    return Fraction(-((-x.numerator << bits) // x.denominator), 1 << bits)


def iterate_at_zero(f: IndicatrixPoly, n: int, precision: int = 128) -> IntervalRational:
    """Enclosure of the n-th iterate of f at 0, of width <= 2^(-precision+2).

    Exact rational iteration is used until denominators exceed the bit cap,
    then endpoint iteration with outward dyadic rounding (valid because the
    coefficients are nonnegative, so f is increasing on [0, 1]).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if precision < 32:
        raise ValueError("precision must be >= 32 bits")
    x = Fraction(0)
    done = 0
    for _ in range(n):
        nxt = value_at(f, x)
        if nxt.denominator.bit_length() > DENOMINATOR_BIT_CAP:
            break
        x = nxt
        done += 1
    if done == n:
        return IntervalRational(x, x)

    target_width = Fraction(1, 1 << (precision - 2))
    wp = max(WORKING_PRECISION, precision + 64 + n.bit_length())
    while wp <= MAX_PRECISION:
        lo, hi = x, x
        for _ in range(done, n):
            lo = _round_down(value_at(f, lo), wp)
            hi = _round_up(value_at(f, hi), wp)
        if hi - lo <= target_width:
            return IntervalRational(lo, hi)
        wp *= 2
    raise PrecisionExhaustedError(
        f"could not reach width 2^-{precision - 2} within {MAX_PRECISION} bits"
    )


def epsilon_index(f: IndicatrixPoly, epsilon) -> int | _Diverges:
    """Smallest n with 1 - f^n(0) < epsilon, or DIVERGES if the constant term is 0.

    Intended for indicatrices of cosets of transitive groups, where the
    iterates at 0 converge to 1 whenever the constant term is positive.
    Comparisons against epsilon are decided from certified enclosures; if an
    enclosure straddles epsilon the scan restarts at doubled precision, up to
    the hard cap.
    """
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must be in (0, 1)")
    if f.coeffs[0] == 0:
        return DIVERGES
    wp = WORKING_PRECISION
    while True:
        result = _epsilon_scan(f, epsilon, wp)
        if result is not None:
            return result
        if wp >= MAX_PRECISION:
            raise PrecisionExhaustedError(
                f"enclosure straddles epsilon={epsilon} at {MAX_PRECISION} bits"
            )
        wp = min(2 * wp, MAX_PRECISION)


def _epsilon_scan(f: IndicatrixPoly, epsilon: Fraction, wp: int) -> int | None:
    """One scan at fixed precision; None means an enclosure straddled epsilon."""
    x = Fraction(0)
    lo = hi = x
    exact = True
    for n in range(1, MAX_ITERATION_STEPS + 1):
        if exact:
            x = value_at(f, x)
            if x.denominator.bit_length() > DENOMINATOR_BIT_CAP:
                exact = False
                lo = _round_down(x, wp)
                hi = _round_up(x, wp)
        else:
            lo = _round_down(value_at(f, lo), wp)
            hi = _round_up(value_at(f, hi), wp)
        if exact:
            if 1 - x < epsilon:
                return n
        else:
            if 1 - lo < epsilon:
                return n
            if 1 - hi >= epsilon:
                continue
            return None
    raise ValueError(
        f"no index below epsilon={epsilon} within {MAX_ITERATION_STEPS} iterations;"
        " is the source a coset of a transitive group?"
    )


def max_epsilon_index_over_cosets(degree: int, epsilon) -> int:
    """Max epsilon index over all cosets H*s (H transitive in S_degree) having a
    fixed-point-free element.  Exhaustive, so only degrees up to 4 are allowed.
    """
    from .perms import close_under_composition, coset, fpp, is_transitive, symmetric_group

    if degree > 4:
        raise ValueError("exhaustive coset enumeration supported only for degree <= 4")
    sym = symmetric_group(degree)
    groups = {}
    for a in sym:
        for b in sym:
            g = close_under_composition([a, b])
            groups.setdefault(tuple(p.images for p in g), g)
    best = 0
    for g in groups.values():
        if not is_transitive(g):
            continue
        seen = set()
        for rep in sym:
            cs = coset(g, rep)
            key = tuple(p.images for p in cs)
            if key in seen:
                continue
            seen.add(key)
            if fpp(cs) == 1:
                continue
            idx = epsilon_index(indicatrix_of(cs), epsilon)
            assert idx is not DIVERGES
            best = max(best, idx)
    return best


def to_text(f: IndicatrixPoly) -> str:
    """Text form like "2/3 + 1/3*x^3"."""
    parts = []
    for k, c in enumerate(f.coeffs):
        if c == 0 and not (k == 0 and len(f.coeffs) == 1):
            continue
        if k == 0:
            parts.append(str(c))
        elif k == 1:
            parts.append(f"{c}*x")
        else:
            parts.append(f"{c}*x^{k}")
    return " + ".join(parts)


def from_text(text: str) -> IndicatrixPoly:
    coeffs: dict[int, Fraction] = {}
    for term in text.split("+"):
        term = term.strip()
        if "*" in term:
            c_str, x_str = term.split("*")
            k = 1 if x_str.strip() == "x" else int(x_str.strip().split("^")[1])
        else:
            c_str, k = term, 0
        coeffs[k] = coeffs.get(k, Fraction(0)) + Fraction(c_str.strip())
    top = max(coeffs)
    return IndicatrixPoly(tuple(coeffs.get(k, Fraction(0)) for k in range(top + 1)))


def to_json(f: IndicatrixPoly) -> str:
    """JSON array of coefficient strings "p/q", dense from the constant term."""
    return json.dumps([f"{c.numerator}/{c.denominator}" for c in f.coeffs])


def from_json(text: str) -> IndicatrixPoly:
    return IndicatrixPoly(tuple(Fraction(s) for s in json.loads(text)))
