"""Paracyclic preorders, convex equivalence relations, and amalgams.

A paracyclic preorder with finite fundamental domain is stored by the tuple
of its class sizes: ``sizes = (s_0, ..., s_k)`` means one period has
``m + 1 = sum(sizes)`` elements e_0, ..., e_m grouped into k + 1 consecutive
equivalence classes, classes strictly ordered, and the shift action moving
everything by one period.  Elements are coded as absolute integers
``e = period_index * (m + 1) + slot`` just like parasimplex elements.

A convex shift-equivariant equivalence relation containing the class
relation is stored by its set of surviving class boundaries (``gaps``):
boundary ``b`` sits after class ``b``, cyclically, and two elements are
related exactly when no surviving boundary separates them.  The poset of
all such relations under inclusion is then literally the poset of
non-empty subsets of {0, ..., k} under reverse inclusion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from .errors import (
    BaseMismatch,
    NotEssentiallySurjective,
    NotMonotone,
    ResourceBound,
)
from .paracat import ParaMap, Parasimplex

GapSet = Tuple[int, ...]


@dataclass(frozen=True)
class ParaPreorder:
    """A linear preorder with free shift action and finite fundamental domain."""

    sizes: Tuple[int, ...]

    def __post_init__(self):
        if not self.sizes or any(s <= 0 for s in self.sizes):
            raise ValueError("sizes must be a non-empty tuple of positive integers")
        object.__setattr__(self, "sizes", tuple(self.sizes))

    @classmethod
    def from_parasimplex(cls, n: int) -> "ParaPreorder":
        return cls((1,) * (n + 1))

    @property
    def period(self) -> int:
        return sum(self.sizes)

    @property
    def num_classes(self) -> int:
        return len(self.sizes)

    @property
    def k(self) -> int:
        return len(self.sizes) - 1

    @property
    def is_parasimplex(self) -> bool:
        return all(s == 1 for s in self.sizes)

    def class_of_slot(self, slot: int) -> int:
        bound = 0
        for c, s in enumerate(self.sizes):
            bound += s
            if slot < bound:
                return c
        raise ValueError(f"slot {slot} out of range")

    def class_position(self, abs_index: int) -> int:
        """Absolute class index period * (k+1) + class of the element."""
        period, slot = divmod(abs_index, self.period)
        return period * self.num_classes + self.class_of_slot(slot)

    def leq(self, i: int, j: int) -> bool:
        return self.class_position(i) <= self.class_position(j)

    def equivalent(self, i: int, j: int) -> bool:
        return self.class_position(i) == self.class_position(j)

    def class_members(self, c: int) -> range:
        start = sum(self.sizes[:c])
        return range(start, start + self.sizes[c])

    def boundary_slot(self, b: int) -> int:
        """Slot of the last element of class b; the gap after it crosses boundary b."""
        return sum(self.sizes[: b + 1]) - 1

    def to_json(self) -> dict:
        return {"sizes": list(self.sizes)}

    @classmethod
    def from_json(cls, data: dict) -> "ParaPreorder":
        return cls(tuple(int(s) for s in data["sizes"]))


@dataclass(frozen=True)
class PreordMap:
    """A shift-equivariant, weakly monotone, essentially surjective map.

    Stored like ParaMap: canonical one-period value list (values[0] in the
    zeroth period of the target) plus a shift offset.
    """

    src: ParaPreorder
    tgt: ParaPreorder
    values: Tuple[int, ...]
    shift: int = 0

    def __post_init__(self):
        validate_map_data(self.src, self.tgt, self.values)

    @classmethod
    def from_values(cls, src, tgt, raw_values: Sequence[int], shift: int = 0) -> "PreordMap":
        lead = raw_values[0] // tgt.period
        canonical = tuple(v - lead * tgt.period for v in raw_values)
        return cls(src, tgt, canonical, shift + lead)

    def __call__(self, abs_index: int) -> int:
        period, slot = divmod(abs_index, self.src.period)
        return self.values[slot] + (period + self.shift) * self.tgt.period

    def canonical(self) -> "PreordMap":
        return PreordMap(self.src, self.tgt, self.values, 0)

    def class_image(self, class_position: int) -> int:
        """The induced map on absolute class positions."""
        period, c = divmod(class_position, self.src.num_classes)
        slot = next(iter(self.src.class_members(c)))
        return self.tgt.class_position(self(slot)) + period * self.tgt.num_classes

    def to_json(self) -> dict:
        return {
            "src": self.src.to_json(),
            "tgt": self.tgt.to_json(),
            "values": [list(divmod(v, self.tgt.period)) for v in self.values],
            "shift": self.shift,
        }

    @classmethod
    def from_json(cls, data: dict) -> "PreordMap":
        src = ParaPreorder.from_json(data["src"])
        tgt = ParaPreorder.from_json(data["tgt"])
        values = tuple(p * tgt.period + s for p, s in data["values"])
        return cls(src, tgt, values, int(data.get("shift", 0)))


def validate_map_data(src: ParaPreorder, tgt: ParaPreorder, values: Sequence[int]) -> None:
    if len(values) != src.period:
        raise NotMonotone(f"expected {src.period} values, got {len(values)}")
    if not 0 <= values[0] < tgt.period:
        raise NotMonotone("canonical form requires values[0] in the zeroth period")
    for a in range(len(values) - 1):
        if not tgt.leq(values[a], values[a + 1]):
            raise NotMonotone(f"values not weakly monotone at position {a}")
        # equivalent elements must stay equivalent (monotone both ways)
        if src.equivalent(a, a + 1) and not tgt.equivalent(values[a], values[a + 1]):
            raise NotMonotone(f"class of positions {a}, {a + 1} is torn apart")
    if not tgt.leq(values[-1], values[0] + tgt.period):
        raise NotMonotone("period wrap constraint violated")
    hit = {tgt.class_position(v) % tgt.num_classes for v in values}
    if hit != set(range(tgt.num_classes)):
        raise NotEssentiallySurjective(
            f"classes {sorted(set(range(tgt.num_classes)) - hit)} of the target are not hit"
        )


def is_valid_morphism(src: ParaPreorder, tgt: ParaPreorder, raw_values: Sequence[int],
                      shift: int = 0) -> PreordMap:
    """Validate raw map data; raises NotMonotone or NotEssentiallySurjective."""
    lead = raw_values[0] // tgt.period
    canonical = tuple(v - lead * tgt.period for v in raw_values)
    return PreordMap(src, tgt, canonical, shift + lead)


def compose_preord(g: PreordMap, f: PreordMap) -> PreordMap:
    if f.tgt != g.src:
        raise BaseMismatch("cannot compose: middle objects disagree")
    raw = [g(v) + f.shift * g.tgt.period for v in f.values]
    return PreordMap.from_values(f.src, g.tgt, raw)


def identity_map(base: ParaPreorder) -> PreordMap:
    return PreordMap(base, base, tuple(range(base.period)), 0)


def shift_map(base: ParaPreorder, k: int = 1) -> PreordMap:
    return PreordMap(base, base, tuple(range(base.period)), k)


# ---------------------------------------------------------------------------
# convex relations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConvexRelation:
    """A convex shift-equivariant equivalence relation containing the classes.

    ``gaps`` lists the class boundaries that survive (stay unmerged); it is
    never empty, so the shift of an element is never related to the element.
    """

    base: ParaPreorder
    gaps: frozenset

    def __post_init__(self):
        object.__setattr__(self, "gaps", frozenset(self.gaps))
        if not self.gaps:
            raise ValueError("gap set must be non-empty")
        if not all(0 <= b <= self.base.k for b in self.gaps):
            raise ValueError("gap out of boundary range")

    def _crossings_before(self, class_position: int) -> int:
        period, c = divmod(class_position, self.base.num_classes)
        return period * len(self.gaps) + sum(1 for b in self.gaps if b < c)

    def related(self, i: int, j: int) -> bool:
        """Whether elements i, j (absolute codes) are merged by the relation."""
        a = self.base.class_position(i)
        b = self.base.class_position(j)
        if a > b:
            a, b = b, a
        return self._crossings_before(b) == self._crossings_before(a)

    def quotient_class(self, abs_index: int) -> int:
        """Index of the merged class, counted from the one starting at boundary max(gaps)."""
        pos = self.base.class_position(abs_index)
        period, c = divmod(pos, self.base.num_classes)
        sorted_gaps = sorted(self.gaps)
        for r, b in enumerate(sorted_gaps):
            if c <= b:
                return period * len(self.gaps) + r
        return (period + 1) * len(self.gaps)

    @property
    def num_quotient_classes(self) -> int:
        return len(self.gaps)

    def gap_key(self) -> GapSet:
        return tuple(sorted(self.gaps))

    def leq(self, other: "ConvexRelation") -> bool:
        """Inclusion of relations: fewer surviving boundaries means larger."""
        if self.base != other.base:
            raise BaseMismatch("relations over different bases")
        return other.gaps <= self.gaps

    def to_json(self) -> dict:
        return {"sizes": list(self.base.sizes), "gaps": sorted(self.gaps)}

    @classmethod
    def from_json(cls, data: dict) -> "ConvexRelation":
        return cls(ParaPreorder(tuple(data["sizes"])), frozenset(data["gaps"]))


def least_relation(base: ParaPreorder) -> ConvexRelation:
    """The class relation itself: every boundary survives."""
    return ConvexRelation(base, frozenset(range(base.num_classes)))


def diagonal_relation(base: ParaPreorder) -> ConvexRelation:
    """Alias for the least element; on a parasimplex this is equality."""
    return least_relation(base)


@dataclass(frozen=True)
class ConvPoset:
    """The poset of convex relations on a base, ordered by inclusion."""

    base: ParaPreorder
    members: Tuple[ConvexRelation, ...]

    def leq(self, a: ConvexRelation, b: ConvexRelation) -> bool:
        return a.leq(b)

    @property
    def least(self) -> ConvexRelation:
        return least_relation(self.base)

    def covers(self) -> Iterator[Tuple[ConvexRelation, ConvexRelation]]:
        """Covering pairs a < b: one boundary dropped."""
        for a in self.members:
            for dropped in sorted(a.gaps):
                if len(a.gaps) > 1:
                    yield a, ConvexRelation(self.base, a.gaps - {dropped})

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def enumerate_conv(base: ParaPreorder) -> ConvPoset:
    """All convex relations: non-empty subsets of the k + 1 class boundaries."""
    boundaries = range(base.num_classes)
    members = []
    for size in range(base.num_classes, 0, -1):
        for gaps in itertools.combinations(boundaries, size):
            members.append(ConvexRelation(base, frozenset(gaps)))
    return ConvPoset(base, tuple(members))


def quotient_by_sim(base: ParaPreorder) -> Tuple[Parasimplex, PreordMap]:
    """The quotient by the class relation, with its projection."""
    return quotient_by_relation(base, least_relation(base))


def quotient_by_relation(base: ParaPreorder, rel: ConvexRelation) -> Tuple[Parasimplex, PreordMap]:
    """Quotient parasimplex Par(|gaps| - 1) and the class projection.

    The projection's kernel relation is exactly ``rel``.
    """
    if rel.base != base:
        raise BaseMismatch("relation lives over a different base")
    quotient = Parasimplex(rel.num_quotient_classes - 1)
    target = ParaPreorder.from_parasimplex(quotient.n)
    values = tuple(rel.quotient_class(slot) for slot in range(base.period))
    return quotient, PreordMap.from_values(base, target, values)


def pullback_relation(r: PreordMap, rel: ConvexRelation) -> ConvexRelation:
    """Pull a relation on the target back along r: a ~ b iff r(a) ~ r(b)."""
    if rel.base != r.tgt:
        raise BaseMismatch("relation does not live over the target of the map")
    src = r.src
    gaps = set()
    for b in range(src.num_classes):
        last = src.boundary_slot(b)
        # last + 1 is the first element of the next class (next period at the wrap)
        if not rel.related(r(last), r(last + 1)):
            gaps.add(b)
    return ConvexRelation(src, frozenset(gaps))


def induced_quotient_map(rel: ConvexRelation, coarser: ConvexRelation) -> ParaMap:
    """The surjection base/rel -> base/coarser for rel <= coarser.

    Returned in canonical form (it always is, because the least surviving
    boundary of the coarser relation is at least the least of the finer).
    """
    if rel.base != coarser.base:
        raise BaseMismatch("relations over different bases")
    if not rel.leq(coarser):
        raise ValueError("second relation must contain the first")
    src_gaps = sorted(rel.gaps)
    tgt_gaps = sorted(coarser.gaps)
    values = []
    for b in src_gaps:
        higher = [r for r, g in enumerate(tgt_gaps) if g >= b]
        values.append(higher[0] if higher else len(tgt_gaps))
    return ParaMap(len(src_gaps) - 1, len(tgt_gaps) - 1, tuple(values), 0)


def enumerate_preord_maps(src: ParaPreorder, tgt: ParaPreorder,
                          cap: int = 10**5) -> List[PreordMap]:
    """Canonical representatives of all morphisms src -> tgt.

    The full hom-set is this list times the shift action (postcomposition
    with powers of the shift).
    """
    found: List[PreordMap] = []

    def extend(prefix: Tuple[int, ...]):
        if len(found) > cap:
            raise ResourceBound(f"morphism enumeration exceeded cap {cap}")
        if len(prefix) == src.period:
            try:
                found.append(PreordMap(src, tgt, prefix))
            except (NotMonotone, NotEssentiallySurjective):
                pass
            return
        if not prefix:
            for v in range(tgt.period):
                extend((v,))
            return
        # the wrap bound is a preorder bound: inside the wrapping class the
        # absolute code may exceed values[0] + period, so scan generously
        # and let the constructor reject overshoots
        for v in range(prefix[-1] - tgt.period, prefix[0] + 2 * tgt.period):
            if tgt.leq(prefix[-1], v) and tgt.leq(v, prefix[0] + tgt.period):
                extend(prefix + (v,))

    extend(())
    return found


# ---------------------------------------------------------------------------
# amalgams
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Amalgam:
    """A paracyclic preorder structure on the disjoint union of two preorders.

    ``positions`` places each class j of the right factor relative to the
    absolute classes of the left factor: even code 2a means "merged with
    left class a", odd code 2a + 1 means "strictly inside the gap after
    left class a".  The encoding extends shift-equivariantly.  Only
    structures whose two zeroth classes share a fundamental domain are
    represented, which keeps the collection finite.
    """

    left: ParaPreorder
    right: ParaPreorder
    positions: Tuple[int, ...]

    @property
    def _stride(self) -> int:
        return 2 * self.left.num_classes

    def right_position(self, class_position: int) -> int:
        period, j = divmod(class_position, self.right.num_classes)
        return self.positions[j] + period * self._stride

    def left_position(self, class_position: int) -> int:
        return 2 * class_position

    def _key(self, side: int, abs_index: int):
        # side 0 = left, 1 = right; returns (position, tiebreak)
        if side == 0:
            pos = self.left_position(self.left.class_position(abs_index))
            return (pos, 0)
        cpos = self.right.class_position(abs_index)
        pos = self.right_position(cpos)
        return (pos, 0 if pos % 2 == 0 else cpos)

    def leq(self, u: Tuple[int, int], v: Tuple[int, int]) -> bool:
        """Order on the union; elements are (side, absolute index) pairs."""
        return self._key(*u) <= self._key(*v)

    def equivalent(self, u, v) -> bool:
        return self._key(*u) == self._key(*v)

    def relation_table(self, radius: int = 1):
        """The order restricted to pairs (period-0 element, element within radius periods)."""
        pairs = set()
        lefties = [(0, s) for s in range(self.left.period)]
        righties = [(1, s) for s in range(self.right.period)]
        window = [
            (side, s + t * (self.left.period if side == 0 else self.right.period))
            for side, s in lefties + righties
            for t in range(-radius, radius + 1)
        ]
        for u in lefties + righties:
            for v in window:
                if self.leq(u, v):
                    pairs.add((u, v))
                if self.leq(v, u):
                    pairs.add((v, u))
        return frozenset(pairs)

    def contains(self, other: "Amalgam") -> bool:
        """Relation inclusion, decided on a one-period window (sound: any two
        elements more than a period apart are strictly ordered in every
        amalgam)."""
        return other.relation_table() <= self.relation_table()

    def to_preorder(self) -> ParaPreorder:
        """The underlying preorder of the union, one period read off in order."""
        stride = self._stride
        entries = []  # (key, element count)
        for a in range(self.left.num_classes):
            entries.append(((2 * a, 0), self.left.sizes[a]))
        for j0 in range(self.right.num_classes):
            # unwrap: find the shift of class j0 whose position lies in [0, stride)
            pos = self.positions[j0]
            shift, pos = divmod(pos, stride)
            cpos = j0 - shift * self.right.num_classes
            tie = 0 if pos % 2 == 0 else cpos
            entries.append(((pos, tie), self.right.sizes[j0]))
        entries.sort()
        sizes = []
        index = 0
        while index < len(entries):
            key, total = entries[index][0], entries[index][1]
            index += 1
            while index < len(entries) and entries[index][0][0] == key[0] and key[0] % 2 == 0:
                total += entries[index][1]
                index += 1
            sizes.append(total)
        return ParaPreorder(tuple(sizes))


def enumerate_amalgams(left: ParaPreorder, right: ParaPreorder,
                       cap: int = 12) -> List[Amalgam]:
    """All amalgam structures whose zeroth classes share a fundamental domain.

    Returned as a list ordered by position tuples; the poset order is
    relation inclusion (``Amalgam.contains``).
    """
    if left.period + right.period > cap:
        raise ResourceBound(f"combined period exceeds cap {cap}")
    stride = 2 * left.num_classes
    kr = right.num_classes
    results = []

    def extend(prefix: Tuple[int, ...]):
        if len(prefix) == kr:
            last, first = prefix[-1], prefix[0]
            # the period wrap: class k_r must stay below class 0 shifted by a
            # period, with equality allowed only inside a gap
            if last > first + stride or (last == first + stride and last % 2 == 0):
                return
            results.append(Amalgam(left, right, prefix))
            return
        if not prefix:
            for pos in range(-stride + 1, stride):
                extend((pos,))
            return
        for pos in range(prefix[-1], prefix[0] + stride + 1):
            if pos == prefix[-1] and pos % 2 == 0:
                continue  # two right classes merged with the same left class
            extend(prefix + (pos,))

    extend(())
    return results


def join_amalgam(a: Amalgam, b: Amalgam, universe: Optional[List[Amalgam]] = None
                 ) -> Optional[Amalgam]:
    """Least upper bound in the amalgam poset, when it exists.

    Computed as the unique minimal common upper bound among all amalgams;
    tests check it agrees with the transitive closure of the union of the
    two relations whenever it exists.
    """
    if (a.left, a.right) != (b.left, b.right):
        raise BaseMismatch("amalgams of different pairs")
    if universe is None:
        universe = enumerate_amalgams(a.left, a.right)
    uppers = [k for k in universe if k.contains(a) and k.contains(b)]
    minimal = [k for k in uppers if not any(k.contains(o) and k != o for o in uppers)]
    return minimal[0] if len(minimal) == 1 else None
