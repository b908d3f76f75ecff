"""Filtered 2-periodic chain complexes and the row-shift rotation.

A 2-periodic complex is a pair of spaces V0, V1 with differentials in both
directions squaring to zero; the shift swaps the degrees and negates the
differentials, so the double shift is the identity on the nose.  A
filtration is a chain of complexes; faces delete a step (quotienting by
the first step via mapping cones), degeneracies repeat one, and the
rotation replaces the chain by its quotients by the first step followed by
the shifted first step.  Iterating the rotation n + 1 times returns the
original filtration up to quasi-isomorphism, which the homology
fingerprint certifies degree by degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ._linalg import Field, field_from_token
from .errors import IndexOutOfRange, NotAComplex

Dims = Tuple[int, int]


@dataclass(frozen=True, eq=False)
class TwoPeriodicComplex:
    """Spaces V0, V1 with d0: V0 -> V1 and d1: V1 -> V0, both composites zero."""

    field: Field
    d0: np.ndarray
    d1: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, TwoPeriodicComplex):
            return NotImplemented
        return (self.field == other.field
                and self.field.equal(self.d0, other.d0)
                and self.field.equal(self.d1, other.d1))

    def __post_init__(self):
        v1, v0 = self.d0.shape
        if self.d1.shape != (v0, v1):
            raise NotAComplex(f"differential shapes {self.d0.shape}, {self.d1.shape} disagree")
        fld = self.field
        if self.d1.size and self.d0.size:
            if (fld.matmul(self.d1, self.d0).any()
                    or fld.matmul(self.d0, self.d1).any()):
                raise NotAComplex("differentials do not square to zero")

    @property
    def dims(self) -> Dims:
        return (self.d0.shape[1], self.d0.shape[0])

    @classmethod
    def from_dims(cls, field: Field, v0: int, v1: int, d0=None, d1=None):
        d0 = field.zeros(v1, v0) if d0 is None else d0
        d1 = field.zeros(v0, v1) if d1 is None else d1
        return cls(field, d0, d1)

    def to_json(self) -> dict:
        return {
            "field": self.field.name,
            "dims": list(self.dims),
            "d0": self.field.mat_to_json(self.d0),
            "d1": self.field.mat_to_json(self.d1),
        }

    @classmethod
    def from_json(cls, data: dict) -> "TwoPeriodicComplex":
        fld = field_from_token(data["field"])
        v0, v1 = data["dims"]
        return cls(
            fld,
            fld.mat_from_json(data["d0"], (v1, v0)),
            fld.mat_from_json(data["d1"], (v0, v1)),
        )


def zero_complex(field: Field) -> TwoPeriodicComplex:
    return TwoPeriodicComplex.from_dims(field, 0, 0)


@dataclass(frozen=True, eq=False)
class ComplexMap:
    """A chain map between 2-periodic complexes."""

    src: TwoPeriodicComplex
    tgt: TwoPeriodicComplex
    f0: np.ndarray
    f1: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, ComplexMap):
            return NotImplemented
        fld = self.src.field
        return (self.src == other.src and self.tgt == other.tgt
                and fld.equal(self.f0, other.f0) and fld.equal(self.f1, other.f1))

    def __post_init__(self):
        fld = self.src.field
        s0, s1 = self.src.dims
        t0, t1 = self.tgt.dims
        if self.f0.shape != (t0, s0) or self.f1.shape != (t1, s1):
            raise NotAComplex("chain map has wrong shapes")
        if not fld.equal(fld.matmul(self.f1, self.src.d0),
                         fld.matmul(self.tgt.d0, self.f0)):
            raise NotAComplex("map does not commute with d0")
        if not fld.equal(fld.matmul(self.f0, self.src.d1),
                         fld.matmul(self.tgt.d1, self.f1)):
            raise NotAComplex("map does not commute with d1")

    def to_json(self) -> dict:
        fld = self.src.field
        return {"f0": fld.mat_to_json(self.f0), "f1": fld.mat_to_json(self.f1)}


def identity_chain_map(x: TwoPeriodicComplex) -> ComplexMap:
    v0, v1 = x.dims
    return ComplexMap(x, x, x.field.identity(v0), x.field.identity(v1))


def zero_chain_map(src: TwoPeriodicComplex, tgt: TwoPeriodicComplex) -> ComplexMap:
    fld = src.field
    return ComplexMap(src, tgt, fld.zeros(tgt.dims[0], src.dims[0]),
                      fld.zeros(tgt.dims[1], src.dims[1]))


def compose_chain_maps(g: ComplexMap, f: ComplexMap) -> ComplexMap:
    fld = f.src.field
    return ComplexMap(f.src, g.tgt, fld.matmul(g.f0, f.f0), fld.matmul(g.f1, f.f1))


def shift(x: TwoPeriodicComplex) -> TwoPeriodicComplex:
    """Swap the degrees and negate both differentials; shift o shift = id."""
    fld = x.field
    return TwoPeriodicComplex(fld, fld.neg(x.d1), fld.neg(x.d0))


def shift_map(f: ComplexMap) -> ComplexMap:
    return ComplexMap(shift(f.src), shift(f.tgt), f.f1, f.f0)


def _block(fld: Field, rows: Sequence[Sequence[np.ndarray]]) -> np.ndarray:
    parts = [np.concatenate(list(row), axis=1) for row in rows]
    return np.concatenate(parts, axis=0)


def cone(f: ComplexMap) -> TwoPeriodicComplex:
    """The mapping cone: degree i is src_{i+1} (+) tgt_i."""
    fld = f.src.field
    s0, s1 = f.src.dims
    t0, t1 = f.tgt.dims
    d0 = _block(fld, [
        [fld.neg(f.src.d1), fld.zeros(s0, t0)],
        [f.f1, f.tgt.d0],
    ])
    d1 = _block(fld, [
        [fld.neg(f.src.d0), fld.zeros(s1, t1)],
        [f.f0, f.tgt.d1],
    ])
    return TwoPeriodicComplex(fld, d0, d1)


def cone_functor_map(f: ComplexMap, g: ComplexMap, through: ComplexMap) -> ComplexMap:
    """cone(f) -> cone(g) for g = through o f, acting by id on the source part."""
    fld = f.src.field
    s0, s1 = f.src.dims
    h0 = _block(fld, [
        [fld.identity(s1), fld.zeros(s1, f.tgt.dims[0])],
        [fld.zeros(through.tgt.dims[0], s1), through.f0],
    ])
    h1 = _block(fld, [
        [fld.identity(s0), fld.zeros(s0, f.tgt.dims[1])],
        [fld.zeros(through.tgt.dims[1], s0), through.f1],
    ])
    return ComplexMap(cone(f), cone(g), h0, h1)


def cone_boundary_map(f: ComplexMap) -> ComplexMap:
    """The connecting projection cone(f) -> shift(src)."""
    fld = f.src.field
    s0, s1 = f.src.dims
    t0, t1 = f.tgt.dims
    h0 = _block(fld, [[fld.identity(s1), fld.zeros(s1, t0)]])
    h1 = _block(fld, [[fld.identity(s0), fld.zeros(s0, t1)]])
    return ComplexMap(cone(f), shift(f.src), h0, h1)


def homology_dims(x: TwoPeriodicComplex) -> Dims:
    fld = x.field
    v0, v1 = x.dims
    r0, r1 = fld.rank(x.d0), fld.rank(x.d1)
    return (v0 - r0 - r1, v1 - r1 - r0)


def euler_characteristic(x: TwoPeriodicComplex) -> int:
    h0, h1 = homology_dims(x)
    return h0 - h1


def is_quasi_iso(f: ComplexMap) -> bool:
    return homology_dims(cone(f)) == (0, 0)


# ---------------------------------------------------------------------------
# filtrations
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FilteredObject:
    """A chain X_1 -> X_2 -> ... -> X_n of 2-periodic complexes."""

    field: Field
    objects: Tuple[TwoPeriodicComplex, ...]
    maps: Tuple[ComplexMap, ...]

    def __eq__(self, other):
        if not isinstance(other, FilteredObject):
            return NotImplemented
        return self.objects == other.objects and self.maps == other.maps

    def __post_init__(self):
        if len(self.maps) != max(len(self.objects) - 1, 0):
            raise ValueError("a chain of n objects needs n - 1 maps")
        for i, m in enumerate(self.maps):
            if m.src != self.objects[i] or m.tgt != self.objects[i + 1]:
                raise ValueError(f"map {i} does not connect its neighbours")

    @property
    def length(self) -> int:
        return len(self.objects)

    def composite(self, i: int, j: int) -> ComplexMap:
        """The composite X_i -> X_j for 1 <= i <= j <= n (1-based)."""
        out = identity_chain_map(self.objects[i - 1])
        for k in range(i - 1, j - 1):
            out = compose_chain_maps(self.maps[k], out)
        return out

    def to_json(self) -> dict:
        return {
            "field": self.field.name,
            "objects": [x.to_json() for x in self.objects],
            "maps": [m.to_json() for m in self.maps],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FilteredObject":
        fld = field_from_token(data["field"])
        objects = tuple(TwoPeriodicComplex.from_json(x) for x in data["objects"])
        maps = []
        for i, entry in enumerate(data["maps"]):
            src, tgt = objects[i], objects[i + 1]
            maps.append(ComplexMap(
                src, tgt,
                fld.mat_from_json(entry["f0"], (tgt.dims[0], src.dims[0])),
                fld.mat_from_json(entry["f1"], (tgt.dims[1], src.dims[1])),
            ))
        return cls(fld, objects, tuple(maps))


def face(filtration: FilteredObject, i: int) -> FilteredObject:
    """Delete the i-th step (0-based faces on a length-n filtration).

    Face 0 quotients every later step by the first (as mapping cones);
    faces 1..n-1 skip a step and compose through; face n drops the last.
    """
    n = filtration.length
    if n < 1:
        raise IndexOutOfRange("cannot take a face of the empty filtration")
    if not 0 <= i <= n:
        raise IndexOutOfRange(f"face index {i} outside 0..{n}")
    fld = filtration.field
    if i == 0:
        cones = [cone(filtration.composite(1, j)) for j in range(2, n + 1)]
        maps = [
            cone_functor_map(
                filtration.composite(1, j),
                filtration.composite(1, j + 1),
                filtration.maps[j - 1],
            )
            for j in range(2, n)
        ]
        return FilteredObject(fld, tuple(cones), tuple(maps))
    if i == n:
        return FilteredObject(fld, filtration.objects[:-1], filtration.maps[:-1])
    t = i - 1  # zero-based position of the deleted object, 0 <= t <= n - 2
    objects = filtration.objects[:t] + filtration.objects[t + 1:]
    if t == 0:
        maps = filtration.maps[1:]
    else:
        maps = (
            filtration.maps[:t - 1]
            + (compose_chain_maps(filtration.maps[t], filtration.maps[t - 1]),)
            + filtration.maps[t + 1:]
        )
    return FilteredObject(fld, objects, maps)


def degeneracy(filtration: FilteredObject, i: int) -> FilteredObject:
    """Insert a redundant step: repeat X_i (i >= 1) or prepend zero (i = 0)."""
    n = filtration.length
    if not 0 <= i <= n:
        raise IndexOutOfRange(f"degeneracy index {i} outside 0..{n}")
    fld = filtration.field
    if i == 0:
        zero = zero_complex(fld)
        return FilteredObject(
            fld,
            (zero,) + filtration.objects,
            (zero_chain_map(zero, filtration.objects[0]),) + filtration.maps
            if filtration.objects else (),
        )
    objects = (
        filtration.objects[:i]
        + (filtration.objects[i - 1],)
        + filtration.objects[i:]
    )
    maps = (
        filtration.maps[:i - 1]
        + (identity_chain_map(filtration.objects[i - 1]),)
        + filtration.maps[i - 1:]
    )
    return FilteredObject(fld, objects, maps)


def rotate(filtration: FilteredObject) -> FilteredObject:
    """Shift the rows: (X_2/X_1 -> ... -> X_n/X_1 -> X_1 shifted)."""
    n = filtration.length
    if n < 1:
        raise IndexOutOfRange("cannot rotate the empty filtration")
    fld = filtration.field
    first = filtration.objects[0]
    if n == 1:
        return FilteredObject(fld, (shift(first),), ())
    quotients = [cone(filtration.composite(1, j)) for j in range(2, n + 1)]
    maps: List[ComplexMap] = [
        cone_functor_map(
            filtration.composite(1, j),
            filtration.composite(1, j + 1),
            filtration.maps[j - 1],
        )
        for j in range(2, n)
    ]
    maps.append(cone_boundary_map(filtration.composite(1, n)))
    return FilteredObject(fld, tuple(quotients) + (shift(first),), tuple(maps))


def fingerprint(filtration: FilteredObject) -> tuple:
    """Homology dimensions of every step and of every composite's cone."""
    steps = tuple(homology_dims(x) for x in filtration.objects)
    cones = tuple(
        homology_dims(cone(filtration.composite(i, j)))
        for i in range(1, filtration.length + 1)
        for j in range(i + 1, filtration.length + 1)
    )
    return (steps, cones)


def rotation_periodicity_check(filtration: FilteredObject) -> dict:
    """Compare the fingerprint after n + 1 rotations with the original.

    For length 1 the double rotation is the double shift, the identity on
    the nose; the report carries the explicit equivalence certified by
    is_quasi_iso.
    """
    n = filtration.length
    rotated = filtration
    for _ in range(n + 1):
        rotated = rotate(rotated)
    before = fingerprint(filtration)
    after = fingerprint(rotated)
    report = {
        "length": n,
        "fingerprint_before": before,
        "fingerprint_after": after,
        "passed": before == after,
    }
    if n == 1:
        double = rotate(rotate(filtration))
        on_the_nose = (
            filtration.field.equal(double.objects[0].d0, filtration.objects[0].d0)
            and filtration.field.equal(double.objects[0].d1, filtration.objects[0].d1)
        )
        certificate = identity_chain_map(filtration.objects[0])
        report["double_rotation_is_identity"] = bool(on_the_nose)
        report["certificate_is_quasi_iso"] = bool(is_quasi_iso(certificate))
        report["passed"] = report["passed"] and on_the_nose
    return report


# ---------------------------------------------------------------------------
# seeded random complexes, chain maps, and filtrations
# ---------------------------------------------------------------------------

def random_complex(rng, field: Field, max_dim: int = 4) -> TwoPeriodicComplex:
    """A random complex: d1 is sampled from the exact solution space."""
    v0 = rng.randrange(0, max_dim + 1)
    v1 = rng.randrange(0, max_dim + 1)
    d0 = field.random_matrix(rng, v1, v0)
    kernel = field.right_kernel(d0)              # rows span ker d0
    left_kernel = field.right_kernel(d0.T)       # rows span ker d0^T
    coeffs = field.random_matrix(rng, kernel.shape[0], left_kernel.shape[0])
    d1 = field.matmul(kernel.T, field.matmul(coeffs, left_kernel))
    if 0 in d1.shape or kernel.shape[0] == 0 or left_kernel.shape[0] == 0:
        d1 = field.zeros(v0, v1)
    return TwoPeriodicComplex(field, d0, d1)


def random_chain_map(rng, field: Field, src: TwoPeriodicComplex,
                     tgt: TwoPeriodicComplex) -> ComplexMap:
    """A random solution of the chain-map equations, via one exact kernel."""
    s0, s1 = src.dims
    t0, t1 = tgt.dims
    unknowns = t0 * s0 + t1 * s1

    def f0_index(r, c):
        return r * s0 + c

    def f1_index(r, c):
        return t0 * s0 + r * s1 + c

    rows = []
    # f1 d0 - d0' f0 = 0, one row per (r, c) in (t1, s0)
    for r in range(t1):
        for c in range(s0):
            row = field.zeros(1, unknowns)[0]
            for k in range(s1):
                row[f1_index(r, k)] = row[f1_index(r, k)] + src.d0[k, c]
            for k in range(t0):
                row[f0_index(k, c)] = row[f0_index(k, c)] - tgt.d0[r, k]
            rows.append(row)
    # f0 d1 - d1' f1 = 0, one row per (r, c) in (t0, s1)
    for r in range(t0):
        for c in range(s1):
            row = field.zeros(1, unknowns)[0]
            for k in range(s0):
                row[f0_index(r, k)] = row[f0_index(r, k)] + src.d1[k, c]
            for k in range(t1):
                row[f1_index(k, c)] = row[f1_index(k, c)] - tgt.d1[r, k]
            rows.append(row)
    if rows and unknowns:
        system = np.stack(rows, axis=0)
        if hasattr(field, "p"):
            system = system % field.p
        basis = field.right_kernel(system)
    else:
        basis = field.identity(unknowns)
    flat = field.zeros(1, unknowns)[0]
    for b in range(basis.shape[0]):
        scale = rng.randrange(field.p) if hasattr(field, "p") else rng.randrange(-3, 4)
        flat = flat + basis[b] * scale
    if hasattr(field, "p"):
        flat = flat % field.p
    f0 = flat[:t0 * s0].reshape(t0, s0) if t0 * s0 else field.zeros(t0, s0)
    f1 = flat[t0 * s0:].reshape(t1, s1) if t1 * s1 else field.zeros(t1, s1)
    return ComplexMap(src, tgt, f0, f1)


def random_filtration(rng, field: Field, length: int, max_dim: int = 4) -> FilteredObject:
    objects = [random_complex(rng, field, max_dim) for _ in range(length)]
    maps = [
        random_chain_map(rng, field, objects[i], objects[i + 1])
        for i in range(length - 1)
    ]
    return FilteredObject(field, tuple(objects), tuple(maps))
