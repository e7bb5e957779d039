"""Galois model and periodic-regime classification for x^d + c over Q(zeta_e).

The splitting field of x^d + c - t picks up the d-th roots of unity, and the
Galois group over the base is generated by affine maps i -> m*i + j on Z/d:
translations form the geometric part (a d-cycle group), while the multiplier
m ranges over the units fixing the base field's roots of unity.  An affine
element has a fixed point exactly when gcd(m-1, d) divides j, which drives
the trichotomy: the periodic proportion of the reduced maps always has
liminf 0; it tends to 0 when every multiplier coset contains a fixed-point-
free element, and has limsup 1 when some multiplier's whole coset fixes
points.  All of this is conditional on the critical orbit of 0 being
infinite, which is tested exactly on the cyclotomic integers with a
certified escape-radius argument.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from . import cyclotomic as cyc
from .perms import PermSet, Permutation, coset, permset


class Preperiodicity(enum.Enum):
    PREPERIODIC = "preperiodic"
    NOT_PREPERIODIC = "not-preperiodic"
    UNDECIDED = "undecided"


class CosetStatus(enum.Enum):
    ALL_HAVE_FIXED_POINTS = "all-have-fixed-points"
    HAS_FIXED_POINT_FREE = "has-fpf-element"


@dataclass(frozen=True)
class CycSetting:
    """The map x^d + c over Q(zeta_e); c is a reduced cyclotomic integer."""

    d: int
    e: int
    c: tuple[int, ...]

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("need degree d >= 2")
        if self.e < 1:
            raise ValueError("need conductor e >= 1")
        if len(self.c) != cyc.euler_phi(self.e):
            raise ValueError(
                f"c must have {cyc.euler_phi(self.e)} coefficients for e={self.e}"
            )

    @classmethod
    def make(cls, d: int, e: int, c) -> "CycSetting":
        if isinstance(c, int):
            c_vec = cyc.cyc_int(c, e)
        elif isinstance(c, str):
            c_vec = cyc.parse_cyclotomic(c, e)
        else:
            c_vec = cyc.reduce_mod_cyclotomic(list(c), e)
        return cls(d=d, e=e, c=c_vec)

    def __str__(self) -> str:
        return f"d={self.d} e={self.e} c={cyc.format_cyclotomic(self.c)}"


def parse_setting(text: str) -> CycSetting:
    """Parse "d=3 e=1 c=1" (c may be a z-polynomial like "1+2z")."""
    fields: dict[str, str] = {}
    for tok in text.split():
        if "=" not in tok:
            raise ValueError(f"bad token {tok!r} in setting {text!r}")
        key, val = tok.split("=", 1)
        fields[key] = val
    try:
        d = int(fields["d"])
        e = int(fields.get("e", "1"))
        c = fields["c"]
    except KeyError as missing:
        raise ValueError(f"setting {text!r} missing {missing}") from None
    return CycSetting.make(d, e, c)


@dataclass(frozen=True)
class AffineElement:
    """The map i -> m*i + j on Z/d (m a unit); the action on the d roots."""

    m: int
    j: int
    d: int

    def __post_init__(self):
        if gcd(self.m, self.d) != 1:
            raise ValueError(f"multiplier {self.m} not a unit mod {self.d}")
        if not (0 <= self.m < self.d and 0 <= self.j < self.d):
            raise ValueError("m and j must be reduced mod d")

    def apply(self, i: int) -> int:
        return (self.m * i + self.j) % self.d

    def as_permutation(self) -> Permutation:
        return Permutation(tuple(self.apply(i) for i in range(self.d)))

    def has_fixed_point(self) -> bool:
        return self.j % gcd(self.m - 1, self.d) == 0


@dataclass(frozen=True)
class GaloisData:
    """Multipliers A, the translation group, and the full affine group list."""

    d: int
    e: int
    A: tuple[int, ...]
    G: PermSet
    B1: tuple[AffineElement, ...]

    def coset_permset(self, m: int) -> PermSet:
        """The coset {i -> m*i + j : j} flattened to permutations of Z/d."""
        if m not in self.A:
            raise ValueError(f"multiplier {m} not in A={self.A}")
        rep = AffineElement(m % self.d, 0, self.d).as_permutation()
        return coset(self.G, rep)

    def b1_permset(self) -> PermSet:
        return permset((a.as_permutation() for a in self.B1), kind="group")


def galois_A(d: int, e: int) -> tuple[int, ...]:
    """Units m mod d with m = 1 mod gcd(e, d): the multipliers available over
    Q(zeta_e).  (Intersecting cyclotomic fields leaves exactly the residues
    congruent to 1 modulo the shared conductor; the even/odd subtleties take
    care of themselves because units mod an even d are odd.)"""
    if d < 2 or e < 1:
        raise ValueError("need d >= 2 and e >= 1")
    g = gcd(e, d)
    return tuple(m for m in range(1, d) if gcd(m, d) == 1 and m % g == 1 % g)


def build_B1(s: CycSetting) -> GaloisData:
    """All affine elements {i -> m*i + j : m in A, j in Z/d} for the setting."""
    A = galois_A(s.d, s.e)
    translations = [AffineElement(1, j, s.d).as_permutation() for j in range(s.d)]
    G = permset(translations, kind="group")
    B1 = tuple(
        AffineElement(m, j, s.d) for m in A for j in range(s.d)
    )
    return GaloisData(d=s.d, e=s.e, A=A, G=G, B1=B1)


def b_n_permset(d: int, e: int, n: int, cap: int = 1_000_000) -> PermSet:
    """The full model group at level n as explicit permutations of d^n points:
    the union over multipliers of the n-fold wreath coset of each multiplier's
    level-1 coset.  Brute force, for exact conjugacy-class counts."""
    from .wreath import coset_wreath, wreath_order

    data = build_B1(CycSetting.make(d, e, 0))
    expected = len(data.A) * wreath_order(d, d, n)
    if expected > cap:
        raise ValueError(f"B_n enumeration needs {expected} elements, cap is {cap}")
    elems = []
    for m in data.A:
        level = data.coset_permset(m)
        current = level
        for _ in range(n - 1):
            current = coset_wreath(current, level, cap=cap)
        elems.extend(current.elements)
    return permset(elems, kind="group")


def coset_status(m: int, d: int) -> CosetStatus:
    """Whether every translate of multiplier m fixes a point.

    i -> m*i + j has a fixed point iff d | (m-1)i + j for some i, i.e. iff
    gcd(m-1, d) divides j; so the whole coset fixes points iff gcd(m-1,d)=1.
    """
    if gcd(m, d) != 1:
        raise ValueError(f"multiplier {m} not a unit mod {d}")
    if gcd(m - 1, d) == 1:
        return CosetStatus.ALL_HAVE_FIXED_POINTS
    return CosetStatus.HAS_FIXED_POINT_FREE


def fixed_point_free_witness(m: int, d: int) -> int | None:
    """Smallest j making i -> m*i + j fixed-point-free, or None."""
    g = gcd(m - 1, d)
    if g == 1:
        return None
    return 1  # any j not divisible by g; 1 works whenever g > 1


@dataclass(frozen=True)
class CosetReport:
    m: int
    status: CosetStatus
    fpf_witness_j: int | None


@dataclass(frozen=True)
class RegimeReport:
    """Trichotomy verdict for the periodic-point proportion over primes."""

    d: int
    e: int
    liminf_zero: bool  # always true under the not-preperiodic hypothesis
    limit_zero: bool
    limsup_one: bool
    witness_m: int | None  # multiplier whose whole coset fixes points
    cosets: tuple[CosetReport, ...]

    def label(self) -> str:
        return "(a)+(c)" if self.limsup_one else "(a)+(b)"


def classify_regime(s: CycSetting, preper: Preperiodicity) -> RegimeReport:
    """Apply the trichotomy; requires the critical orbit of 0 to be infinite."""
    if preper is not Preperiodicity.NOT_PREPERIODIC:
        raise ValueError(
            f"classification needs '0 is not preperiodic'; got {preper.value}"
        )
    A = galois_A(s.d, s.e)
    cosets = tuple(
        CosetReport(m, coset_status(m, s.d), fixed_point_free_witness(m, s.d))
        for m in A
    )
    full = [r.m for r in cosets if r.status is CosetStatus.ALL_HAVE_FIXED_POINTS]
    limsup_one = bool(full)
    return RegimeReport(
        d=s.d,
        e=s.e,
        liminf_zero=True,
        limit_zero=not limsup_one,
        limsup_one=limsup_one,
        witness_m=min(full) if full else None,
        cosets=cosets,
    )


# -- critical orbit of 0 ------------------------------------------------------

ESCAPE_GUARD = 1e-6
_SLOW_BITS = (64, 128, 256, 512)
# Orbits escaping in one embedding while bounded in another never satisfy the
# all-embeddings escape criterion, yet their coefficients double each step;
# past this total bit size the verdict is settled as undecided.
ORBIT_BIT_BUDGET = 250_000


@dataclass(frozen=True)
class OrbitReport:
    verdict: Preperiodicity
    steps: int
    repeat_index: int | None = None  # earlier index the repeat collided with
    escape_index: int | None = None  # first iterate certified past the radius


def _sqrt_upper(x, bits: int = 64) -> Fraction:
    x = Fraction(x)
    s = isqrt(x.numerator * x.denominator << (2 * bits))
    return Fraction(s + 1, x.denominator << bits)


def _sqrt_lower(x, bits: int = 64) -> Fraction:
    x = Fraction(x)
    if x < 0:
        return Fraction(0)
    s = isqrt(x.numerator * x.denominator << (2 * bits))
    return Fraction(s, x.denominator << bits)


def _exceeds_radius(z, c, e: int) -> bool:
    """Certified check that every embedding of z exceeds 1 + max |embedding of c|.

    Double precision with a forward error bound decides almost always; inside
    the guard band the comparison is redone with exact rational interval
    enclosures at increasing precision.  Undecidable cases count as "no",
    which only delays the escape certificate, never falsifies it.
    """
    if e <= 2:
        zi, ci = abs(z[0]), abs(c[0])
        return zi > 1 + ci
    z_vals, z_err = cyc.embedding_abs_floats(z, e)
    c_vals, c_err = cyc.embedding_abs_floats(c, e)
    if z_vals and c_vals:
        radius_hi = 1 + max(c_vals) + c_err
        radius_lo = 1 + max(c_vals) - c_err
        if min(z_vals) - z_err > radius_hi * (1 + ESCAPE_GUARD):
            return True
        if min(z_vals) + z_err <= radius_lo * (1 - ESCAPE_GUARD):
            return False
    for bits in _SLOW_BITS:
        z_sq = cyc.embedding_abs_sq_intervals(z, e, bits)
        z_lo = min(_sqrt_lower(iv[0], bits) for iv in z_sq)
        z_hi = min(_sqrt_upper(iv[1], bits) for iv in z_sq)
        c_sq = cyc.embedding_abs_sq_intervals(c, e, bits)
        r_hi = 1 + max(_sqrt_upper(iv[1], bits) for iv in c_sq)
        r_lo = 1 + max(_sqrt_lower(iv[0], bits) for iv in c_sq)
        if z_lo > r_hi:
            return True
        if z_hi <= r_lo:
            return False
    return False


def zero_orbit_report(s: CycSetting, max_iter: int) -> OrbitReport:
    """Iterate 0 under x -> x^d + c exactly; detect a repeat or certify escape."""
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    zero = cyc.cyc_zero(s.e)
    if s.c == zero:
        return OrbitReport(Preperiodicity.PREPERIODIC, steps=0, repeat_index=0)
    seen = {zero: 0}
    z = zero
    for step in range(1, max_iter + 1):
        z = cyc.cyc_add(cyc.cyc_pow(z, s.d, s.e), s.c)
        if z in seen:
            return OrbitReport(
                Preperiodicity.PREPERIODIC, steps=step, repeat_index=seen[z]
            )
        seen[z] = step
        if sum(abs(x).bit_length() for x in z) > ORBIT_BIT_BUDGET:
            return OrbitReport(Preperiodicity.UNDECIDED, steps=step)
        if _exceeds_radius(z, s.c, s.e):
            return OrbitReport(
                Preperiodicity.NOT_PREPERIODIC, steps=step, escape_index=step
            )
    return OrbitReport(Preperiodicity.UNDECIDED, steps=max_iter)


def is_zero_preperiodic(s: CycSetting, max_iter: int) -> Preperiodicity:
    return zero_orbit_report(s, max_iter).verdict
