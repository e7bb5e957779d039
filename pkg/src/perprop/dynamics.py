"""Dynamics of reduced maps on the projective line over a finite field.

Points are indexed 0..q-1 for field elements (by their base-p integer
encoding) with index q for the point at infinity, so a map becomes a flat
successor array and prime sweeps are cache-friendly vector passes.  Two
independent periodic-point algorithms are provided on purpose: a three-color
cycle traversal of the graph, and iteration of the image sets until the
sizes stabilize (the stable set is the intersection of all forward images).
Their agreement is part of the test suite, and the image-size sequence is
the quantity the effective bounds control.

Power maps x^d + c over prime fields take a vectorized fast path; extension
fields and general rational maps (prime fields only, good reduction checked
by a Euclidean gcd plus degree comparison) evaluate pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .perms import ResourceCapError
from .powermap import CycSetting
from .residue_fields import Element, PrimeOfK, ResidueField, reduce_cyclotomic

MEMORY_CAP_POINTS = 20_000_000


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^1(F_q): a field element or infinity (value None)."""

    value: Optional[Element]

    @classmethod
    def finite(cls, x: Element) -> "ProjPoint":
        return cls(tuple(x))

    @classmethod
    def infinity(cls) -> "ProjPoint":
        return cls(None)

    @property
    def is_infinity(self) -> bool:
        return self.value is None


@dataclass(frozen=True)
class ReducedMap:
    """A self-map of P^1 over a finite field with good reduction.

    kind "power_plus_c" is the x^d + c fast path (good reduction automatic);
    kind "general" holds numerator/denominator coefficient tuples over a
    prime field, certified coprime with full degree at construction.
    """

    field: ResidueField
    kind: str
    degree: int
    c: Optional[Element] = None
    num_coeffs: Optional[tuple[Element, ...]] = None
    den_coeffs: Optional[tuple[Element, ...]] = None
    wild: bool = False

    def apply(self, point: ProjPoint) -> ProjPoint:
        F = self.field
        if self.kind == "power_plus_c":
            if point.is_infinity:
                return ProjPoint.infinity()
            return ProjPoint.finite(F.add(F.pow(point.value, self.degree), self.c))
        num, den = self.num_coeffs, self.den_coeffs
        if point.is_infinity:
            dn, dd = len(num) - 1, len(den) - 1
            if dn > dd:
                return ProjPoint.infinity()
            if dn < dd:
                return ProjPoint.finite(F.zero)
            return ProjPoint.finite(F.mul(num[-1], F.inv(den[-1])))
        top = _horner(F, num, point.value)
        bottom = _horner(F, den, point.value)
        if bottom == F.zero:
            return ProjPoint.infinity()  # numerator nonzero by good reduction
        return ProjPoint.finite(F.mul(top, F.inv(bottom)))


def _horner(F: ResidueField, coeffs: tuple[Element, ...], x: Element) -> Element:
    acc = F.zero
    for c in reversed(coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc


def reduce_map(s: CycSetting, P: PrimeOfK) -> ReducedMap:
    """The reduction of x^d + c at the prime P (wild when p <= d)."""
    c_bar = reduce_cyclotomic(s.c, P)
    return ReducedMap(
        field=P.field,
        kind="power_plus_c",
        degree=s.d,
        c=c_bar,
        wild=P.p <= s.d,
    )


def power_map(field: ResidueField, d: int, c: Element, wild: Optional[bool] = None) -> ReducedMap:
    if d < 1:
        raise ValueError("degree must be >= 1")
    return ReducedMap(
        field=field,
        kind="power_plus_c",
        degree=d,
        c=tuple(c),
        wild=field.p <= d if wild is None else wild,
    )


def general_map(field: ResidueField, num_coeffs, den_coeffs) -> ReducedMap:
    """A rational map p(x)/q(x) over a prime field; raises unless the
    reduction is good (coprime numerator and denominator of full degree)."""
    if field.f != 1:
        raise ValueError("general rational maps are supported over prime fields only")
    num = _strip_elems(field, num_coeffs)
    den = _strip_elems(field, den_coeffs)
    if den == (field.zero,):
        raise ValueError("zero denominator")
    if num == (field.zero,):
        raise ValueError("zero numerator")
    ints_num = [c[0] for c in num]
    ints_den = [c[0] for c in den]
    if _int_poly_gcd_degree(ints_num, ints_den, field.p) != 0:
        raise ValueError("bad reduction: numerator and denominator share a root")
    return ReducedMap(
        field=field,
        kind="general",
        degree=max(len(num), len(den)) - 1,
        num_coeffs=num,
        den_coeffs=den,
    )


def _strip_elems(field: ResidueField, coeffs) -> tuple[Element, ...]:
    out = [tuple(c) if not isinstance(c, int) else field.from_int(c) for c in coeffs]
    while len(out) > 1 and out[-1] == field.zero:
        out.pop()
    return tuple(out)


def _int_poly_gcd_degree(a: list[int], b: list[int], p: int) -> int:
    a = [x % p for x in a]
    b = [x % p for x in b]

    def strip(u):
        while len(u) > 1 and u[-1] == 0:
            u.pop()
        return u

    a, b = strip(a), strip(b)
    while b != [0]:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b) and a != [0]:
            shift = len(a) - len(b)
            factor = a[-1] * inv % p
            for i, c in enumerate(b):
                a[shift + i] = (a[shift + i] - factor * c) % p
            a = strip(a)
            if a == [0]:
                break
        a, b = b, a
    return len(a) - 1


@dataclass
class FunctionalGraph:
    """successor[i] = index of the image of point i; index size-1 is infinity."""

    size: int
    successor: np.ndarray

    def infinity_index(self) -> int:
        return self.size - 1


def build_graph(m: ReducedMap, cap: int = MEMORY_CAP_POINTS) -> FunctionalGraph:
    """Evaluate the map at every point of P^1(F_q)."""
    q = m.field.q
    size = q + 1
    if size > cap:
        raise ResourceCapError(f"graph needs {size} points, cap is {cap}")
    if m.kind == "power_plus_c" and m.field.f == 1:
        succ = _power_successors_prime_field(m.field.p, m.degree, m.c[0])
    else:
        F = m.field
        succ = np.empty(size, dtype=np.int64)
        for idx in range(q):
            image = m.apply(ProjPoint.finite(F.element_from_index(idx)))
            succ[idx] = q if image.is_infinity else F.index_of(image.value)
        image = m.apply(ProjPoint.infinity())
        succ[q] = q if image.is_infinity else F.index_of(image.value)
    return FunctionalGraph(size=size, successor=succ)


def _power_successors_prime_field(p: int, d: int, c: int) -> np.ndarray:
    x = np.arange(p, dtype=np.int64)
    result = np.ones(p, dtype=np.int64)
    base = x.copy()
    k = d
    while k:
        if k & 1:
            result = result * base % p
        k >>= 1
        if k:
            base = base * base % p
    succ = np.empty(p + 1, dtype=np.int64)
    succ[:p] = (result + c) % p
    succ[p] = p  # infinity is fixed for a polynomial map
    return succ


def periodic_by_cycles(g: FunctionalGraph) -> frozenset[int]:
    """Points on cycles, by an iterative three-color traversal (no recursion)."""
    succ = g.successor.tolist()
    state = bytearray(g.size)  # 0 untouched, 1 on current path, 2 finished
    periodic: set[int] = set()
    for start in range(g.size):
        if state[start]:
            continue
        path = []
        v = start
        while state[v] == 0:
            state[v] = 1
            path.append(v)
            v = succ[v]
        if state[v] == 1:  # met the current path again: new cycle through v
            periodic.add(v)
            u = succ[v]
            while u != v:
                periodic.add(u)
                u = succ[u]
        for u in path:
            state[u] = 2
    return frozenset(periodic)


def periodic_by_image_iteration(g: FunctionalGraph) -> tuple[frozenset[int], tuple[int, ...]]:
    """Iterate forward images until the sizes stabilize; the stable set is the
    periodic set.  Returns (stable set, size sequence including the repeat)."""
    current = np.arange(g.size, dtype=np.int64)
    sizes = [g.size]
    while True:
        nxt = np.unique(g.successor[current])
        sizes.append(int(nxt.size))
        if nxt.size == current.size:
            return frozenset(int(i) for i in nxt), tuple(sizes)
        current = nxt


def image_size_sequence(g: FunctionalGraph, max_entries: int) -> tuple[int, ...]:
    """First entries of the image-size sequence, stopping at stability or at
    max_entries, whichever comes first."""
    sizes = [g.size]
    current = np.arange(g.size, dtype=np.int64)
    while len(sizes) < max_entries:
        nxt = np.unique(g.successor[current])
        sizes.append(int(nxt.size))
        if nxt.size == current.size:
            break
        current = nxt
    return tuple(sizes)


def image_size_at(g: FunctionalGraph, n: int) -> int:
    """|n-th forward image of the whole space| (stops early once stable)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    current = np.arange(g.size, dtype=np.int64)
    for _ in range(n):
        mask = np.zeros(g.size, dtype=bool)
        mask[g.successor[current]] = True
        nxt = np.flatnonzero(mask)
        if nxt.size == current.size:
            return int(nxt.size)
        current = nxt
    return int(current.size)


def iterated_map_image_count(g: FunctionalGraph, n: int) -> int:
    """|image of the n-th compositional power| by binary composition; same
    value as image_size_at but O(log n) array passes, for large n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    t_power = g.successor
    result = None
    m = n
    while m:
        if m & 1:
            result = t_power if result is None else t_power[result]
        m >>= 1
        if m:
            t_power = t_power[t_power]
    mask = np.zeros(g.size, dtype=bool)
    mask[result] = True
    return int(np.count_nonzero(mask))


def periodic_count(g: FunctionalGraph) -> int:
    """|periodic set| by successor pointer doubling: after at least size steps
    every point has entered its cycle, so the image is exactly the cycles."""
    t = g.successor
    steps = 1
    while steps < g.size:
        t = t[t]
        steps *= 2
    mask = np.zeros(g.size, dtype=bool)
    mask[t] = True
    return int(np.count_nonzero(mask))


def is_bijective(g: FunctionalGraph) -> bool:
    mask = np.zeros(g.size, dtype=bool)
    mask[g.successor] = True
    return bool(mask.all())
