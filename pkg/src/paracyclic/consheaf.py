"""Constructible sheaves on corner spaces as poset representations.

Because exit paths of a corner space are captured by its poset of convex
relations, a constructible sheaf valued in finite-dimensional vector spaces
is the same thing as a functor from that poset to matrices.  A sheaf stores
one vector-space dimension per stratum and one matrix per covering edge
(dropping a single surviving boundary); the only law is path independence
around the diamonds of the poset.

Sections over an open union of strata (an upward closed set) are computed
as the kernel of the block matrix of compatibility constraints; bases are
returned in reduced echelon form so repeated runs agree exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Tuple

import numpy as np

from ._linalg import Field, field_from_token
from .errors import (
    BaseMismatch,
    DimensionMismatch,
    NotFunctorial,
    NotUpwardClosed,
)
from .preord import (
    ConvexRelation,
    ParaPreorder,
    PreordMap,
    enumerate_conv,
    pullback_relation,
)

GapKey = Tuple[int, ...]


def gap_key(rel_or_gaps) -> GapKey:
    if isinstance(rel_or_gaps, ConvexRelation):
        return tuple(sorted(rel_or_gaps.gaps))
    return tuple(sorted(rel_or_gaps))


def key_order(key: GapKey):
    """Deterministic listing order: least stratum (most gaps) first."""
    return (-len(key), key)


@dataclass(frozen=True)
class FinVect:
    """A finite-dimensional vector space over a prime field or the rationals."""

    field: Field
    dim: int


@dataclass(frozen=True, eq=False)
class StratSheaf:
    """A functor from the convex-relation poset to matrices over a field.

    ``dims`` assigns a dimension to every stratum (keyed by the sorted gap
    tuple); ``maps`` holds one matrix per covering edge, keyed by
    (finer key, coarser key) where the coarser key drops exactly one gap.
    """

    base: ParaPreorder
    field: Field
    dims: Mapping[GapKey, int]
    maps: Mapping[Tuple[GapKey, GapKey], np.ndarray]

    def value(self, stratum) -> FinVect:
        return FinVect(self.field, self.dims[gap_key(stratum)])

    def keys(self) -> List[GapKey]:
        return sorted(self.dims, key=key_order)

    def edge_map(self, fine, coarse) -> np.ndarray:
        """The functor on an arbitrary relation fine <= coarse.

        Composes covering-edge matrices along the chain that drops the
        largest surplus gap first; path independence makes the chain
        irrelevant.
        """
        fine, coarse = gap_key(fine), gap_key(coarse)
        if not set(coarse) <= set(fine):
            raise ValueError("edge goes from finer to coarser strata only")
        matrix = self.field.identity(self.dims[fine])
        current = fine
        for dropped in sorted(set(fine) - set(coarse), reverse=True):
            nxt = tuple(b for b in current if b != dropped)
            matrix = self.field.matmul(self.maps[(current, nxt)], matrix)
            current = nxt
        return matrix

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "field": self.field.name,
            "values": {",".join(map(str, k)): self.dims[k] for k in self.keys()},
            "maps": [
                {
                    "from": list(src),
                    "to": list(dst),
                    "matrix": self.field.mat_to_json(mat),
                }
                for (src, dst), mat in sorted(self.maps.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "StratSheaf":
        base = ParaPreorder.from_json(data["base"])
        fld = field_from_token(data["field"])
        dims = {
            tuple(int(b) for b in key.split(",")): int(dim)
            for key, dim in data["values"].items()
        }
        maps = {}
        for entry in data["maps"]:
            src, dst = tuple(entry["from"]), tuple(entry["to"])
            maps[(src, dst)] = fld.mat_from_json(
                entry["matrix"], (dims[dst], dims[src])
            )
        return validate_sheaf(base, fld, dims, maps)


def covering_edges(base: ParaPreorder) -> List[Tuple[GapKey, GapKey]]:
    edges = []
    for rel in enumerate_conv(base):
        key = gap_key(rel)
        if len(key) == 1:
            continue
        for dropped in key:
            edges.append((key, tuple(b for b in key if b != dropped)))
    return edges


def validate_sheaf(base, field, dims, maps) -> StratSheaf:
    """Check shapes and path independence on all diamonds; raises on failure."""
    expected_keys = {gap_key(rel) for rel in enumerate_conv(base)}
    if set(dims) != expected_keys:
        raise DimensionMismatch("dimension table does not cover the stratum poset")
    if any(d < 0 for d in dims.values()):
        raise DimensionMismatch("negative dimension")
    edges = covering_edges(base)
    if set(maps) != set(edges):
        raise DimensionMismatch("matrix table does not match the covering edges")
    for (src, dst), mat in maps.items():
        if mat.shape != (dims[dst], dims[src]):
            raise DimensionMismatch(
                f"edge {src}->{dst} expects shape {(dims[dst], dims[src])}, got {mat.shape}"
            )
    sheaf = StratSheaf(base, field, dict(dims), dict(maps))
    for key in sheaf.keys():
        key_set = set(key)
        if len(key) < 3:
            continue
        for b1 in key:
            for b2 in key:
                if b1 >= b2:
                    continue
                mid1 = tuple(b for b in key if b != b1)
                mid2 = tuple(b for b in key if b != b2)
                bottom = tuple(b for b in key if b not in (b1, b2))
                one = field.matmul(maps[(mid1, bottom)], maps[(key, mid1)])
                two = field.matmul(maps[(mid2, bottom)], maps[(key, mid2)])
                if not field.equal(one, two):
                    raise NotFunctorial(f"diamond {key} -> {bottom} does not commute")
    return sheaf


def constant_sheaf(base: ParaPreorder, field: Field, dim: int) -> StratSheaf:
    dims = {gap_key(rel): dim for rel in enumerate_conv(base)}
    maps = {edge: field.identity(dim) for edge in covering_edges(base)}
    return StratSheaf(base, field, dims, maps)


def stalk(sheaf: StratSheaf, rel: ConvexRelation) -> FinVect:
    if rel.base != sheaf.base:
        raise BaseMismatch("stratum lives over a different base")
    return sheaf.value(rel)


# ---------------------------------------------------------------------------
# open unions of strata
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UpSet:
    """An upward closed set of strata: the open unions of the stratification."""

    base: ParaPreorder
    members: FrozenSet[GapKey]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(gap_key(k) for k in self.members))
        for key in self.members:
            for b in key:
                smaller = tuple(x for x in key if x != b)
                if smaller and smaller not in self.members:
                    raise NotUpwardClosed(
                        f"{key} is a member but the larger stratum {smaller} is not"
                    )

    def sorted_members(self) -> List[GapKey]:
        return sorted(self.members, key=key_order)

    def __contains__(self, key):
        return gap_key(key) in self.members

    def __and__(self, other: "UpSet") -> "UpSet":
        return UpSet(self.base, self.members & other.members)

    def __or__(self, other: "UpSet") -> "UpSet":
        return UpSet(self.base, self.members | other.members)


def up_closure(base: ParaPreorder, seeds: Iterable) -> UpSet:
    members = set()
    stack = [gap_key(s) for s in seeds]
    while stack:
        key = stack.pop()
        if key in members or not key:
            continue
        members.add(key)
        stack.extend(tuple(x for x in key if x != b) for b in key if len(key) > 1)
    return UpSet(base, frozenset(members))


def whole_space(base: ParaPreorder) -> UpSet:
    return UpSet(base, frozenset(gap_key(rel) for rel in enumerate_conv(base)))


def enumerate_upsets(base: ParaPreorder) -> List[UpSet]:
    """Every upward closed set of strata (small posets only)."""
    keys = [gap_key(rel) for rel in enumerate_conv(base)]
    out = []
    for mask in range(1 << len(keys)):
        chosen = {keys[i] for i in range(len(keys)) if mask >> i & 1}
        try:
            out.append(UpSet(base, frozenset(chosen)))
        except NotUpwardClosed:
            continue
    return out


@dataclass(frozen=True, eq=False)
class SectionSpace:
    """Solutions of the compatibility constraints over an up-set.

    ``layout`` lists the strata in coordinate order; ``basis`` rows are the
    compatible families in reduced echelon form.
    """

    field: Field
    layout: Tuple[GapKey, ...]
    offsets: Tuple[int, ...]
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def component(self, vector_index: int, key: GapKey) -> np.ndarray:
        i = self.layout.index(key)
        lo, hi = self.offsets[i], self.offsets[i + 1]
        return self.basis[vector_index, lo:hi]


def sections(sheaf: StratSheaf, open_set: UpSet) -> SectionSpace:
    """The limit of the sheaf over an up-set, as an explicit kernel."""
    if open_set.base != sheaf.base:
        raise BaseMismatch("up-set lives over a different base")
    layout = tuple(open_set.sorted_members())
    offsets = [0]
    for key in layout:
        offsets.append(offsets[-1] + sheaf.dims[key])
    total = offsets[-1]
    fld = sheaf.field
    rows = []
    for src, dst in covering_edges(sheaf.base):
        if src not in open_set.members or dst not in open_set.members:
            continue
        block = fld.zeros(sheaf.dims[dst], total)
        i, j = layout.index(src), layout.index(dst)
        mat = sheaf.maps[(src, dst)]
        block[:, offsets[i]:offsets[i] + sheaf.dims[src]] = mat
        sub = fld.neg(fld.identity(sheaf.dims[dst]))
        block[:, offsets[j]:offsets[j] + sheaf.dims[dst]] = sub
        rows.append(block)
    if rows:
        system = np.concatenate(rows, axis=0)
    else:
        system = fld.zeros(0, total)
    return SectionSpace(fld, layout, tuple(offsets), fld.right_kernel(system))


def restriction_matrix(sheaf: StratSheaf, big: SectionSpace, small: SectionSpace) -> np.ndarray:
    """Coordinates of restricted basis vectors in the smaller section basis."""
    fld = sheaf.field
    out = fld.zeros(big.dim, small.dim)
    for i in range(big.dim):
        restricted = np.concatenate(
            [big.component(i, key) for key in small.layout]
        ) if small.layout else fld.zeros(1, 0)[0]
        coeffs = fld.solve_in_span(small.basis, restricted)
        if coeffs is None:
            raise NotFunctorial("restriction of a section is not a section")
        out[i] = coeffs
    return out


def pullback_sheaf(r: PreordMap, sheaf: StratSheaf) -> StratSheaf:
    """Pull a sheaf on the source's corner space back along the point map.

    For r: I' -> I, precomposition maps the corner space of I into the one
    of I', so a sheaf over I' induces one over I whose stratum values are
    read off through the relation pullback.
    """
    if sheaf.base != r.src:
        raise BaseMismatch("sheaf does not live over the source of the map")
    target_base = r.tgt
    back: Dict[GapKey, GapKey] = {}
    for rel in enumerate_conv(target_base):
        back[gap_key(rel)] = gap_key(pullback_relation(r, rel))
    dims = {key: sheaf.dims[back[key]] for key in back}
    maps = {}
    for src, dst in covering_edges(target_base):
        maps[(src, dst)] = sheaf.edge_map(back[src], back[dst])
    return StratSheaf(target_base, sheaf.field, dims, maps)


def gluing_check(sheaf: StratSheaf, u1: UpSet, u2: UpSet,
                 section_cache: dict = None) -> dict:
    """Verify sections(U1 u U2) is the fiber product over the intersection.

    The comparison map is a coordinate projection, hence injective; the
    check is exact equality of dimensions plus explicit restriction
    compatibility of bases.  Pass a dict as ``section_cache`` to reuse
    section computations across many pairs over the same sheaf.
    """
    def cached_sections(open_set: UpSet) -> SectionSpace:
        if section_cache is None:
            return sections(sheaf, open_set)
        key = open_set.members
        if key not in section_cache:
            section_cache[key] = sections(sheaf, open_set)
        return section_cache[key]

    union = u1 | u2
    inter = u1 & u2
    s_union = cached_sections(union)
    s1 = cached_sections(u1)
    s2 = cached_sections(u2)
    s_inter = cached_sections(inter)

    fld = sheaf.field
    r1 = restriction_matrix(sheaf, s_union, s1)            # (dim union, dim U1)
    r2 = restriction_matrix(sheaf, s_union, s2)
    r_inter = restriction_matrix(sheaf, s_union, s_inter)
    r1_to_inter = restriction_matrix(sheaf, s1, s_inter)   # (dim U1, dim overlap)
    r2_to_inter = restriction_matrix(sheaf, s2, s_inter)

    # fiber product of the two section spaces over the overlap
    pair_constraints = np.concatenate(
        [r1_to_inter.T, fld.neg(r2_to_inter.T)], axis=1
    )
    fp_dim = int(fld.right_kernel(pair_constraints).shape[0])

    via_u1 = fld.matmul(r1_to_inter.T, r1.T)
    via_u2 = fld.matmul(r2_to_inter.T, r2.T)
    compatible = fld.equal(via_u1, via_u2) and fld.equal(via_u1, r_inter.T)
    passed = (s_union.dim == fp_dim) and compatible
    return {
        "passed": bool(passed),
        "dim_union": s_union.dim,
        "dim_fiber_product": fp_dim,
        "dim_left": s1.dim,
        "dim_right": s2.dim,
        "dim_overlap": s_inter.dim,
        "restrictions_agree": bool(compatible),
    }


# ---------------------------------------------------------------------------
# random valid sheaves (interval modules conjugated by isomorphisms)
# ---------------------------------------------------------------------------

def random_sheaf(rng, base: ParaPreorder, field: Field, max_intervals: int = 4) -> StratSheaf:
    """A random functor: a sum of interval modules, conjugated stratum-wise.

    An interval module is supported on an order-convex set of strata with
    identity edge maps inside and zero maps outside; sums of these satisfy
    path independence, and conjugation by random isomorphisms keeps that
    while scrambling the matrices.
    """
    poset = enumerate_conv(base)
    keys = [gap_key(rel) for rel in poset]
    rel_of = {gap_key(rel): rel for rel in poset}

    supports = []
    for _ in range(rng.randrange(1, max_intervals + 1)):
        # a down-set intersected with an up-set is order convex
        lower, upper = rng.choice(keys), rng.choice(keys)
        supports.append({
            k for k in keys
            if rel_of[k].leq(rel_of[lower]) and rel_of[upper].leq(rel_of[k])
        })

    dims = {k: sum(1 for s in supports if k in s) for k in keys}
    maps = {}
    for src, dst in covering_edges(base):
        mat = field.zeros(dims[dst], dims[src])
        src_rows = [i for i, s in enumerate(supports) if src in s]
        dst_rows = [i for i, s in enumerate(supports) if dst in s]
        for j, interval in enumerate(src_rows):
            if interval in dst_rows:
                mat[dst_rows.index(interval), j] = field.one
        maps[(src, dst)] = mat
    conjugators = {k: field.random_invertible(rng, dims[k]) for k in keys}
    maps = {
        (src, dst): field.matmul(
            conjugators[dst], field.matmul(mat, field.inverse(conjugators[src]))
        )
        for (src, dst), mat in maps.items()
    }
    return validate_sheaf(base, field, dims, maps)
