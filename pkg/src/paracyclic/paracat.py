"""The paracyclic category at a finite truncation, and its cyclic quotient.

Objects are parasimplices: for n >= 0 the ordered set ZZ x [n] with the
dictionary order and the shift action (k, a) + 1 = (k + 1, a).  Elements are
encoded as absolute integers e = k * (n + 1) + a, so the order is the integer
order and the shift action is addition of n + 1.

A morphism Par(m) -> Par(n) is a weakly monotone, shift-equivariant map.  It
is determined by the images v_0 <= v_1 <= ... <= v_m <= v_0 + (n + 1) of one
period, and every such map is uniquely a canonical map (v_0 in the zeroth
period, 0 <= v_0 <= n) followed by a power of the shift.  ``ParaMap`` stores
exactly that decomposition; erasing the power of the shift gives the cyclic
category, whose morphisms ``CycMap`` are the shift orbits.

The duality ``dualize_map`` sends f to f^v(x') = max { x | f(x) <= x' },
which exchanges injections and surjections and retracts injections.  Its
square is conjugation by the successor automorphism (not the identity); its
fourth power is the identity on the nose.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterator, List, Literal, Sequence, Tuple

from .errors import NotMonotone, ResourceBound, TypeMismatch

DEFAULT_HOM_CAP = 10**6

Kind = Literal["all", "inj", "surj"]


@dataclass(frozen=True)
class Parasimplex:
    """The parasimplex ZZ x [n]; elements are pairs (period, slot)."""

    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be non-negative")

    @property
    def period(self) -> int:
        return self.n + 1

    def abs_of(self, element: Sequence[int]) -> int:
        period, slot = element
        if not 0 <= slot <= self.n:
            raise ValueError(f"slot {slot} out of range for Par({self.n})")
        return period * self.period + slot

    def element_of(self, abs_index: int) -> Tuple[int, int]:
        period, slot = divmod(abs_index, self.period)
        return (period, slot)

    def identity(self) -> "ParaMap":
        return ParaMap(self.n, self.n, tuple(range(self.period)), 0)

    def successor_map(self) -> "ParaMap":
        """The automorphism x |-> x + 1 in the element order (not the shift)."""
        return ParaMap.from_values(self.n, self.n, tuple(range(1, self.period + 1)))

    def shift_map(self, k: int = 1) -> "ParaMap":
        """The shift automorphism x |-> x + k * (n + 1)."""
        return ParaMap(self.n, self.n, tuple(range(self.period)), k)

    def to_json(self) -> dict:
        return {"n": self.n}

    @classmethod
    def from_json(cls, data: dict) -> "Parasimplex":
        return cls(int(data["n"]))


@dataclass(frozen=True)
class ParaMap:
    """A shift-equivariant weakly monotone map Par(m) -> Par(n).

    ``values`` is the canonical representative: absolute images of the
    elements (0, 0), ..., (0, m), with values[0] in the zeroth period.
    ``shift`` is the power of the shift composed after the canonical map,
    so the map acts by e |-> values[e mod (m+1)] + (e div (m+1) + shift)*(n+1).
    """

    m: int
    n: int
    values: Tuple[int, ...]
    shift: int = 0

    def __post_init__(self):
        src_period, tgt_period = self.m + 1, self.n + 1
        if len(self.values) != src_period:
            raise NotMonotone(f"expected {src_period} values, got {len(self.values)}")
        if not 0 <= self.values[0] < tgt_period:
            raise NotMonotone("canonical form requires values[0] in the zeroth period")
        for a in range(src_period - 1):
            if self.values[a] > self.values[a + 1]:
                raise NotMonotone(f"values not weakly increasing at position {a}")
        if self.values[-1] > self.values[0] + tgt_period:
            raise NotMonotone("period wrap constraint v_m <= v_0 + 1 violated")

    @classmethod
    def from_values(cls, m: int, n: int, raw_values: Sequence[int], shift: int = 0) -> "ParaMap":
        """Build from any one-period value list, normalizing to canonical form."""
        tgt_period = n + 1
        lead_period = raw_values[0] // tgt_period
        canonical = tuple(v - lead_period * tgt_period for v in raw_values)
        return cls(m, n, canonical, shift + lead_period)

    @property
    def src(self) -> Parasimplex:
        return Parasimplex(self.m)

    @property
    def tgt(self) -> Parasimplex:
        return Parasimplex(self.n)

    def __call__(self, abs_index: int) -> int:
        period, slot = divmod(abs_index, self.m + 1)
        return self.values[slot] + (period + self.shift) * (self.n + 1)

    def canonical(self) -> "ParaMap":
        return ParaMap(self.m, self.n, self.values, 0)

    def to_json(self) -> dict:
        tgt = self.tgt
        return {
            "m": self.m,
            "n": self.n,
            "values": [list(tgt.element_of(v)) for v in self.values],
            "shift": self.shift,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ParaMap":
        m, n = int(data["m"]), int(data["n"])
        tgt = Parasimplex(n)
        values = tuple(tgt.abs_of(v) for v in data["values"])
        return cls(m, n, values, int(data.get("shift", 0)))


@dataclass(frozen=True)
class CycMap:
    """A morphism of the cyclic category: the shift orbit of a ParaMap."""

    m: int
    n: int
    values: Tuple[int, ...]

    @property
    def rep(self) -> ParaMap:
        return ParaMap(self.m, self.n, self.values, 0)

    def to_json(self) -> dict:
        data = self.rep.to_json()
        del data["shift"]
        return data


def compose(g: ParaMap, f: ParaMap) -> ParaMap:
    """The composite g after f; strictly associative on the nose."""
    if f.n != g.m:
        raise TypeMismatch(f"cannot compose Par({f.m})->Par({f.n}) with Par({g.m})->Par({g.n})")
    raw = [g(v) + f.shift * (g.n + 1) for v in f.values]
    return ParaMap.from_values(f.m, g.n, raw)


def compose_cyc(g: CycMap, f: CycMap) -> CycMap:
    return cyc_canonicalize(compose(g.rep, f.rep))


def shift_action(f: ParaMap, k: int) -> ParaMap:
    return ParaMap(f.m, f.n, f.values, f.shift + k)


def cyc_canonicalize(f: ParaMap) -> CycMap:
    return CycMap(f.m, f.n, f.values)


def classify(f: ParaMap) -> str:
    """One of 'injective', 'surjective', 'both', 'neither'."""
    tgt_period = f.n + 1
    strict = all(f.values[a] < f.values[a + 1] for a in range(f.m)) and (
        f.values[-1] < f.values[0] + tgt_period
    )
    onto = {v % tgt_period for v in f.values} == set(range(tgt_period))
    if strict and onto:
        return "both"
    if strict:
        return "injective"
    if onto:
        return "surjective"
    return "neither"


def is_injective(f: ParaMap) -> bool:
    return classify(f) in ("injective", "both")


def is_surjective(f: ParaMap) -> bool:
    return classify(f) in ("surjective", "both")


def hom_count(m: int, n: int, kind: Kind = "all") -> int:
    """Closed-form size of the cyclic hom-set (canonical representatives).

    Injections and surjections swap under the duality, so their counts are
    mirror images of one another; all three forms are cross-checked against
    the enumerator in the tests.
    """
    if kind == "all":
        return (m + 1) * comb(m + n + 1, m + 1)
    if kind == "inj":
        return (n + 1) * comb(n, m) if m <= n else 0
    if kind == "surj":
        return (m + 1) * comb(m, n) if n <= m else 0
    raise ValueError(f"unknown kind {kind!r}")


def iter_hom(m: int, n: int, kind: Kind = "all") -> Iterator[CycMap]:
    """Generate canonical representatives of Hom(Par(m), Par(n)) / shift."""
    tgt_period = n + 1
    for lead in range(tgt_period):
        # remaining values live in the closed interval [lead, lead + period]
        window = range(lead, lead + tgt_period + 1)
        if kind == "inj":
            tail_pool = range(lead + 1, lead + tgt_period)
            for tail in itertools.combinations(tail_pool, m):
                yield CycMap(m, n, (lead,) + tail)
            continue
        for tail in itertools.combinations_with_replacement(window, m):
            if tail and tail[0] < lead:
                continue
            values = (lead,) + tail
            if kind == "surj" and {v % tgt_period for v in values} != set(range(tgt_period)):
                continue
            yield CycMap(m, n, values)


def enumerate_hom(m: int, n: int, kind: Kind = "all", cap: int = DEFAULT_HOM_CAP) -> List[CycMap]:
    """Duplicate-free list of canonical representatives, capped.

    The full paracyclic hom-set is this list times the shift action.
    """
    if m < 0 or n < 0:
        raise ValueError("objects need m, n >= 0")
    bound = (m + 1) * comb(m + n + 1, m + 1)
    if bound > cap:
        raise ResourceBound(f"hom-set has {bound} representatives, cap is {cap}")
    out = list(iter_hom(m, n, kind))
    return out


def dualize_map(f: ParaMap) -> ParaMap:
    """The dual map f^v : Par(n) -> Par(m), f^v(x') = max { x | f(x) <= x' }.

    Contravariantly functorial and exchanges the injective and surjective
    classifications; for injective f it retracts: dualize_map(f) o f = id.
    """
    src_period, tgt_period = f.m + 1, f.n + 1
    raw = []
    for x_prime in range(tgt_period):
        best = None
        for a in range(src_period):
            # largest k with values[a] + (k + shift) * tgt_period <= x'
            k = (x_prime - f.values[a]) // tgt_period - f.shift
            candidate = k * src_period + a
            if best is None or candidate > best:
                best = candidate
        raw.append(best)
    return ParaMap.from_values(f.n, f.m, raw)


def embed_simplex(slot_images: Sequence[int], n: int) -> ParaMap:
    """Embed a weakly monotone map [m] -> [n] as a zero-period paracyclic map."""
    m = len(slot_images) - 1
    if m < 0:
        raise NotMonotone("empty map data")
    for a in range(m):
        if slot_images[a] > slot_images[a + 1]:
            raise NotMonotone(f"not weakly monotone at position {a}")
    if not all(0 <= v <= n for v in slot_images):
        raise NotMonotone(f"values must lie in [0, {n}]")
    return ParaMap(m, n, tuple(slot_images), 0)
