"""Representations of the surjection subcategory versus sheaf systems.

A representation assigns a vector space to every object Par(n), n <= N, a
matrix to every canonical surjection representative, and an invertible
"shift" matrix per object recording the action of the shift automorphism;
an arbitrary truncated surjection (canonical, k) acts by t^k M(canonical).

``realize_sheaf`` turns a representation into a constructible sheaf on the
corner space of any preorder, stratum by stratum through the quotient
parasimplices.  A compatible family of such sheaves over many preorders,
together with comparison isomorphisms along preorder maps, is a
``SheafSystem``; ``recover_rep`` extracts the representation back from the
system, exactly.  ``build_conv_tilde`` and
``check_localization_adjunction`` verify that collapsing the marked
(Cartesian) edges of the stratum-pair category is the surjection
subcategory, through the adjunction with fully faithful right adjoint.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ._linalg import Field, field_from_token
from .consheaf import StratSheaf, gap_key, covering_edges, validate_sheaf
from .errors import (
    BaseMismatch,
    IncompleteSystem,
    ResourceBound,
    TruncationExceeded,
)
from .paracat import CycMap, ParaMap, Parasimplex, compose, enumerate_hom
from .preord import (
    ConvexRelation,
    ParaPreorder,
    PreordMap,
    compose_preord,
    enumerate_conv,
    enumerate_preord_maps,
    identity_map,
    induced_quotient_map,
    least_relation,
    pullback_relation,
    quotient_by_relation,
    shift_map,
)

GapKey = Tuple[int, ...]


def surjection_reps(m: int, n: int) -> List[CycMap]:
    return enumerate_hom(m, n, "surj")


@dataclass(frozen=True, eq=False)
class ParaRep:
    """A functor from the truncated surjection subcategory to matrices.

    ``gen[(m, n)]`` maps the value tuple of each canonical surjection
    representative Par(m) -> Par(n) to its matrix (shape dims[n] x dims[m]);
    ``shifts[n]`` is the invertible image of the shift automorphism.
    """

    N: int
    field: Field
    dims: Tuple[int, ...]
    gen: Mapping[Tuple[int, int], Mapping[Tuple[int, ...], np.ndarray]]
    shifts: Tuple[np.ndarray, ...]

    @property
    def is_cyclic(self) -> bool:
        return all(self.field.equal(t, self.field.identity(t.shape[0]))
                   for t in self.shifts)

    def shift_power(self, n: int, k: int) -> np.ndarray:
        t = self.shifts[n]
        if k < 0:
            t, k = self.field.inverse(t), -k
        out = self.field.identity(self.dims[n])
        for _ in range(k):
            out = self.field.matmul(t, out)
        return out

    def evaluate(self, f: ParaMap) -> np.ndarray:
        """The matrix of an arbitrary truncated surjection (canonical, k)."""
        if f.m > self.N or f.n > self.N:
            raise TruncationExceeded(f"map {f.m}->{f.n} outside truncation {self.N}")
        base = self.gen[(f.m, f.n)][f.values]
        if f.shift == 0:
            return base
        return self.field.matmul(self.shift_power(f.n, f.shift), base)

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "field": self.field.name,
            "spaces": {str(n): self.dims[n] for n in range(self.N + 1)},
            "gen_maps": [
                {
                    "m": m,
                    "n": n,
                    "values": list(values),
                    "matrix": self.field.mat_to_json(mat),
                }
                for (m, n), table in sorted(self.gen.items())
                for values, mat in sorted(table.items())
            ],
            "shifts": [self.field.mat_to_json(t) for t in self.shifts],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ParaRep":
        fld = field_from_token(data["field"])
        N = int(data["N"])
        dims = tuple(int(data["spaces"][str(n)]) for n in range(N + 1))
        gen: Dict[Tuple[int, int], Dict[Tuple[int, ...], np.ndarray]] = {}
        for entry in data["gen_maps"]:
            m, n = int(entry["m"]), int(entry["n"])
            gen.setdefault((m, n), {})[tuple(entry["values"])] = fld.mat_from_json(
                entry["matrix"], (dims[n], dims[m])
            )
        shifts = tuple(
            fld.mat_from_json(data["shifts"][n], (dims[n], dims[n]))
            for n in range(N + 1)
        )
        return cls(N, fld, dims, gen, shifts)


class CycRep(ParaRep):
    """A representation whose shift matrices are all the identity."""


def validate_rep(rep: ParaRep) -> dict:
    """Exhaustively check functoriality over the truncation; returns a report."""
    violations = []
    fld = rep.field
    for n in range(rep.N + 1):
        if not fld.is_invertible(rep.shifts[n]):
            violations.append(("shift-not-invertible", n))
        ident = Parasimplex(n).identity()
        table = rep.gen.get((n, n), {})
        if ident.values not in table:
            violations.append(("missing-identity", n))
        elif not fld.equal(table[ident.values], fld.identity(rep.dims[n])):
            violations.append(("identity-not-identity", n))
    if isinstance(rep, CycRep):
        for n in range(rep.N + 1):
            if not fld.equal(rep.shifts[n], fld.identity(rep.dims[n])):
                violations.append(("cyclic-shift-not-identity", n))
    for (m, n), table in rep.gen.items():
        for values, mat in table.items():
            if mat.shape != (rep.dims[n], rep.dims[m]):
                violations.append(("bad-shape", (m, n), values))
            # the shift automorphism is central: t_n M = M t_m
            left = fld.matmul(rep.shifts[n], mat)
            right = fld.matmul(mat, rep.shifts[m])
            if not fld.equal(left, right):
                violations.append(("shift-not-natural", (m, n), values))
    for m, n, p in itertools.product(range(rep.N + 1), repeat=3):
        for g in surjection_reps(n, p):
            for f in surjection_reps(m, n):
                h = compose(g.rep, f.rep)
                lhs = fld.matmul(rep.evaluate(g.rep), rep.evaluate(f.rep))
                rhs = rep.evaluate(h)
                if not fld.equal(lhs, rhs):
                    violations.append(
                        ("composition", (m, n, p), f.values, g.values)
                    )
    return {"passed": not violations, "violations": violations}


# ---------------------------------------------------------------------------
# realization: representations to sheaves
# ---------------------------------------------------------------------------

def realize_sheaf(rep: ParaRep, base: ParaPreorder) -> StratSheaf:
    """The constructible sheaf with stalk V_{n(E)} at stratum E.

    The map along a covering edge is the representation applied to the
    induced surjection of quotient parasimplices.
    """
    if base.k > rep.N:
        raise TruncationExceeded(
            f"quotients of {base.sizes} reach Par({base.k}) > Par({rep.N})"
        )
    rel_of = {gap_key(rel): rel for rel in enumerate_conv(base)}
    dims = {key: rep.dims[len(key) - 1] for key in rel_of}
    maps = {}
    for src, dst in covering_edges(base):
        q = induced_quotient_map(rel_of[src], rel_of[dst])
        maps[(src, dst)] = rep.evaluate(q)
    return validate_sheaf(base, rep.field, dims, maps)


def _quotient_class_representatives(rel: ConvexRelation) -> List[int]:
    """One period-zero element per quotient class, in quotient order."""
    base = rel.base
    reps = {}
    for slot in range(base.period):
        cls = rel.quotient_class(slot)
        if 0 <= cls < rel.num_quotient_classes and cls not in reps:
            reps[cls] = slot
    return [reps[c] for c in range(rel.num_quotient_classes)]


def comparison_iso(rep: ParaRep, r: PreordMap, rel: ConvexRelation) -> np.ndarray:
    """The matrix identifying the pulled-back stalk with the stalk at rel.

    For r: I' -> I and rel on I, the induced map of quotient parasimplices
    I'/pullback(rel) -> I/rel is an isomorphism; its image under the
    representation is the comparison.
    """
    if rel.base != r.tgt:
        raise BaseMismatch("relation does not live over the target of r")
    back = pullback_relation(r, rel)
    _, proj_tgt = quotient_by_relation(r.tgt, rel)
    values = tuple(proj_tgt(r(slot)) for slot in _quotient_class_representatives(back))
    bar = ParaMap.from_values(len(back.gaps) - 1, len(rel.gaps) - 1, values)
    return rep.evaluate(bar)


@dataclass(frozen=True, eq=False)
class SheafSystem:
    """Sheaves over a family of preorders plus comparison isomorphisms.

    ``comparisons[key(r)][gap key of E]`` is the iso from the sheaf value
    over the source at pullback(E) to the sheaf value over the target at E,
    for each morphism r in the family.
    """

    field: Field
    objects: Tuple[ParaPreorder, ...]
    sheaves: Mapping[Tuple[int, ...], StratSheaf]
    morphisms: Tuple[PreordMap, ...]
    comparisons: Mapping[tuple, Mapping[GapKey, np.ndarray]]

    @staticmethod
    def morphism_key(r: PreordMap) -> tuple:
        return (r.src.sizes, r.tgt.sizes, r.values, r.shift)

    def sheaf_over(self, base: ParaPreorder) -> StratSheaf:
        try:
            return self.sheaves[base.sizes]
        except KeyError:
            raise IncompleteSystem(f"no sheaf over {base.sizes}") from None

    def comparison(self, r: PreordMap, rel: ConvexRelation) -> np.ndarray:
        key = self.morphism_key(r)
        if key not in self.comparisons:
            raise IncompleteSystem(f"no comparison data for morphism {key}")
        return self.comparisons[key][gap_key(rel)]


def realize_system(rep: ParaRep,
                   objects: Optional[Sequence[ParaPreorder]] = None,
                   morphisms: Optional[Sequence[PreordMap]] = None) -> SheafSystem:
    """The sheaf system realized by a representation.

    Defaults to the parasimplex preorders Par(0..N) with all canonical
    surjection representatives and the shift automorphisms between them.
    """
    if objects is None:
        objects = [ParaPreorder.from_parasimplex(n) for n in range(rep.N + 1)]
    if morphisms is None:
        morphisms = []
        for tgt_obj in objects:
            morphisms.append(shift_map(tgt_obj))
            for src_obj in objects:
                for c in _canonical_maps_between(src_obj, tgt_obj):
                    morphisms.append(c)
                    morphisms.append(PreordMap(c.src, c.tgt, c.values, 1))
    sheaves = {base.sizes: realize_sheaf(rep, base) for base in objects}
    comparisons = {}
    for r in morphisms:
        table = {}
        for rel in enumerate_conv(r.tgt):
            table[gap_key(rel)] = comparison_iso(rep, r, rel)
        comparisons[SheafSystem.morphism_key(r)] = table
    return SheafSystem(rep.field, tuple(objects), sheaves, tuple(morphisms), comparisons)


def _canonical_maps_between(src: ParaPreorder, tgt: ParaPreorder) -> List[PreordMap]:
    if src.is_parasimplex and tgt.is_parasimplex:
        return [
            PreordMap(src, tgt, c.values)
            for c in surjection_reps(src.k, tgt.k)
        ]
    return enumerate_preord_maps(src, tgt)


def validate_system(system: SheafSystem) -> dict:
    """Check comparison squares and the cocycle law on composable pairs."""
    violations = []
    fld = system.field
    by_key = {SheafSystem.morphism_key(r): r for r in system.morphisms}
    for r in system.morphisms:
        sheaf_src = system.sheaf_over(r.src)
        sheaf_tgt = system.sheaf_over(r.tgt)
        for rel in enumerate_conv(r.tgt):
            phi = system.comparison(r, rel)
            if not fld.is_invertible(phi):
                violations.append(("comparison-not-iso", SheafSystem.morphism_key(r)))
        for src_key, dst_key in covering_edges(r.tgt):
            rel_src = ConvexRelation(r.tgt, frozenset(src_key))
            rel_dst = ConvexRelation(r.tgt, frozenset(dst_key))
            back_src = gap_key(pullback_relation(r, rel_src))
            back_dst = gap_key(pullback_relation(r, rel_dst))
            one = fld.matmul(system.comparison(r, rel_dst),
                             sheaf_src.edge_map(back_src, back_dst))
            two = fld.matmul(sheaf_tgt.maps[(src_key, dst_key)],
                             system.comparison(r, rel_src))
            if not fld.equal(one, two):
                violations.append(
                    ("comparison-square", SheafSystem.morphism_key(r), src_key)
                )
    for r2 in system.morphisms:
        for r in system.morphisms:
            if r2.tgt != r.src:
                continue
            composite = compose_preord(r, r2)
            key = SheafSystem.morphism_key(composite)
            if key not in system.comparisons:
                continue
            for rel in enumerate_conv(r.tgt):
                back = pullback_relation(r, rel)
                lhs = system.comparisons[key][gap_key(rel)]
                rhs = fld.matmul(system.comparison(r, rel),
                                 system.comparison(r2, back))
                if not fld.equal(lhs, rhs):
                    violations.append(
                        ("cocycle", SheafSystem.morphism_key(r2),
                         SheafSystem.morphism_key(r), gap_key(rel))
                    )
    return {"passed": not violations, "violations": violations}


def recover_rep(system: SheafSystem, N: int,
                cyclic: bool = False) -> ParaRep:
    """Extract the representation from a sheaf system, exactly.

    The space at n is the stalk at the least stratum over Par(n); the
    matrix of a canonical surjection q is the structure map of the source
    sheaf from its least stratum to the kernel relation of q, composed with
    the comparison; the shift matrix is the comparison of the shift
    automorphism at the least stratum.
    """
    bases = []
    for n in range(N + 1):
        base = ParaPreorder.from_parasimplex(n)
        if base.sizes not in system.sheaves:
            raise IncompleteSystem(f"system lacks a sheaf over Par({n})")
        bases.append(base)
    fld = system.field
    dims = tuple(
        system.sheaf_over(bases[n]).dims[gap_key(least_relation(bases[n]))]
        for n in range(N + 1)
    )
    gen: Dict[Tuple[int, int], Dict[Tuple[int, ...], np.ndarray]] = {}
    for m in range(N + 1):
        for n in range(N + 1):
            table = {}
            for c in surjection_reps(m, n):
                r = PreordMap(bases[m], bases[n], c.values)
                kernel = pullback_relation(r, least_relation(bases[n]))
                sheaf_m = system.sheaf_over(bases[m])
                structure = sheaf_m.edge_map(
                    gap_key(least_relation(bases[m])), gap_key(kernel)
                )
                phi = system.comparison(r, least_relation(bases[n]))
                table[c.values] = fld.matmul(phi, structure)
            if table:
                gen[(m, n)] = table
    shifts = tuple(
        system.comparison(shift_map(bases[n]), least_relation(bases[n]))
        for n in range(N + 1)
    )
    cls = CycRep if cyclic else ParaRep
    return cls(N, fld, dims, gen, shifts)


# ---------------------------------------------------------------------------
# the marked category of stratum pairs and its localization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConvTildeEdge:
    src: Tuple[Tuple[int, ...], GapKey]
    tgt: Tuple[Tuple[int, ...], GapKey]
    map: PreordMap
    cartesian: bool


@dataclass(frozen=True)
class ConvTilde:
    """Objects (preorder, relation) and morphisms compatible with relations.

    Morphisms are listed by canonical representative; in the paracyclic
    variant the full hom-sets are representatives times the shift action,
    in the cyclic variant the representatives are the orbits themselves.
    An edge is marked Cartesian exactly when the induced map of quotient
    parasimplices is an isomorphism.
    """

    N: int
    variant: str
    objects: Tuple[Tuple[Tuple[int, ...], GapKey], ...]
    edges: Tuple[ConvTildeEdge, ...]


def _preorders_up_to(period: int) -> List[ParaPreorder]:
    out = []
    for total in range(1, period + 1):
        for cuts in itertools.product((0, 1), repeat=total - 1):
            sizes, run = [], 1
            for c in cuts:
                if c:
                    sizes.append(run)
                    run = 1
                else:
                    run += 1
            sizes.append(run)
            out.append(ParaPreorder(tuple(sizes)))
    return out


def respects_relations(r: PreordMap, rel_src: ConvexRelation,
                       rel_tgt: ConvexRelation) -> bool:
    """Whether r descends to a map of quotients I/E -> J/E'."""
    for slot in range(r.src.period):
        if rel_src.related(slot, slot + 1) and not rel_tgt.related(r(slot), r(slot + 1)):
            return False
    return True


def induced_on_quotients(r: PreordMap, rel_src: ConvexRelation,
                         rel_tgt: ConvexRelation) -> ParaMap:
    """The induced map of quotient parasimplices for a relation-respecting r."""
    _, proj = quotient_by_relation(r.tgt, rel_tgt)
    values = tuple(
        proj(r(slot)) for slot in _quotient_class_representatives(rel_src)
    )
    return ParaMap.from_values(
        len(rel_src.gaps) - 1, len(rel_tgt.gaps) - 1, values
    )


def build_conv_tilde(N: int, variant: str = "para", cap: int = 20000) -> ConvTilde:
    """All objects with period <= N, with relation-respecting morphisms."""
    if variant not in ("para", "cyc"):
        raise ValueError("variant must be 'para' or 'cyc'")
    bases = _preorders_up_to(N)
    objects = []
    rel_table = {}
    for base in bases:
        for rel in enumerate_conv(base):
            objects.append((base.sizes, gap_key(rel)))
            rel_table[(base.sizes, gap_key(rel))] = rel
    edges = []
    for src_obj, tgt_obj in itertools.product(objects, repeat=2):
        rel_src = rel_table[src_obj]
        rel_tgt = rel_table[tgt_obj]
        for r in enumerate_preord_maps(rel_src.base, rel_tgt.base):
            if not respects_relations(r, rel_src, rel_tgt):
                continue
            # the induced quotient map is onto, so it is invertible exactly
            # when the two quotients have the same size
            cartesian = len(rel_src.gaps) == len(rel_tgt.gaps)
            edges.append(ConvTildeEdge(src_obj, tgt_obj, r, cartesian))
            if len(edges) > cap:
                raise ResourceBound(f"edge enumeration exceeded cap {cap}")
    return ConvTilde(N, variant, tuple(objects), tuple(edges))


def check_localization_adjunction(N: int, variant: str = "para") -> dict:
    """Verify the quotient / least-stratum adjunction and its localization.

    Checks, exhaustively over the truncation:
      (a) both triangle identities for the unit (projection to the
          quotient) and the identity counit;
      (b) the right adjoint J |-> (J, least) is fully faithful: morphisms
          between images are exactly the surjections of parasimplices;
      (c) the marked (Cartesian) edges are precisely those inverted by the
          quotient functor, are closed under composition, and include the
          identities.
    """
    tilde = build_conv_tilde(N, variant)
    rel_table = {
        (sizes, key): ConvexRelation(ParaPreorder(sizes), frozenset(key))
        for sizes, key in tilde.objects
    }
    failures = []

    # (a) triangle identities
    for obj in tilde.objects:
        rel = rel_table[obj]
        quotient, proj = quotient_by_relation(rel.base, rel)
        # unit edge: (I, E) -> (I/E, least); it must respect relations
        target_rel = least_relation(proj.tgt)
        if not respects_relations(proj, rel, target_rel):
            failures.append(("unit-not-a-morphism", obj))
            continue
        # L(unit) must be the identity of I/E (counit is the identity)
        bar = induced_on_quotients(proj, rel, target_rel)
        if bar != Parasimplex(quotient.n).identity():
            failures.append(("triangle-L", obj))
        # second triangle: the unit at (J, least) must be the identity map
        if rel.base.is_parasimplex and rel == least_relation(rel.base):
            if proj != identity_map(rel.base):
                failures.append(("triangle-R", obj))

    # (b) full faithfulness of J -> (J, least)
    parasimplices = [b for b in _preorders_up_to(N) if b.is_parasimplex]
    for j_obj, j_prime in itertools.product(parasimplices, repeat=2):
        rel_j = least_relation(j_obj)
        rel_jp = least_relation(j_prime)
        conv_homs = {
            e.map.values
            for e in tilde.edges
            if e.src == (j_obj.sizes, gap_key(rel_j))
            and e.tgt == (j_prime.sizes, gap_key(rel_jp))
        }
        surj_homs = {c.values for c in surjection_reps(j_obj.k, j_prime.k)}
        if conv_homs != surj_homs:
            failures.append(("not-fully-faithful", j_obj.sizes, j_prime.sizes))

    # (c) Cartesian edges: marked iff inverted by L; closed under composition
    for e in tilde.edges:
        bar = induced_on_quotients(e.map, rel_table[e.src], rel_table[e.tgt])
        is_iso = (
            bar.m == bar.n
            and sorted(v % (bar.n + 1) for v in bar.values) == list(range(bar.n + 1))
            and all(bar.values[a] < bar.values[a + 1] for a in range(bar.m))
        )
        if is_iso != e.cartesian:
            failures.append(("marking-mismatch", e.src, e.tgt, e.map.values))
    if variant == "para":
        # the quotient functor commutes with the shift action on hom-sets
        for e in tilde.edges[::7]:
            shifted = PreordMap(e.map.src, e.map.tgt, e.map.values, e.map.shift + 1)
            bar = induced_on_quotients(e.map, rel_table[e.src], rel_table[e.tgt])
            bar_shifted = induced_on_quotients(
                shifted, rel_table[e.src], rel_table[e.tgt]
            )
            if bar_shifted != ParaMap(bar.m, bar.n, bar.values, bar.shift + 1):
                failures.append(("shift-equivariance", e.src, e.tgt, e.map.values))
    for obj in tilde.objects:
        rel = rel_table[obj]
        ident = identity_map(rel.base)
        marked_identity = any(
            e.src == obj and e.tgt == obj and e.map == ident and e.cartesian
            for e in tilde.edges
        )
        if not marked_identity:
            failures.append(("identity-not-marked", obj))
    by_src: Dict[tuple, List[ConvTildeEdge]] = {}
    for e in tilde.edges:
        by_src.setdefault(e.src, []).append(e)
    for e in tilde.edges:
        if not e.cartesian:
            continue
        for e2 in by_src.get(e.tgt, []):
            if not e2.cartesian:
                continue
            composite = compose_preord(e2.map, e.map).canonical()
            found = any(
                f.src == e.src and f.tgt == e2.tgt and f.map == composite
                and f.cartesian
                for f in tilde.edges
            )
            if not found:
                failures.append(("marked-composite-missing", e.src, e2.tgt))

    return {
        "passed": not failures,
        "variant": variant,
        "N": N,
        "objects": len(tilde.objects),
        "edges": len(tilde.edges),
        "failures": failures,
    }


# ---------------------------------------------------------------------------
# structured random representations
# ---------------------------------------------------------------------------

def cell_rep(j: int, scale, field: Field, N: int) -> ParaRep:
    """The representation spanned by surjections out of Par(j).

    Basis of the space at n: canonical surjection representatives
    Par(j) -> Par(n); a map acts by postcomposition, picking up ``scale``
    to the power of the shift offset, so the shift matrix is scale times
    the identity.
    """
    basis = {n: [c.values for c in surjection_reps(j, n)] for n in range(N + 1)}
    dims = tuple(len(basis[n]) for n in range(N + 1))
    gen = {}
    for m in range(N + 1):
        for n in range(N + 1):
            table = {}
            for c in surjection_reps(m, n):
                mat = field.zeros(dims[n], dims[m])
                for col, b_values in enumerate(basis[m]):
                    composite = compose(c.rep, ParaMap(j, m, b_values))
                    row = basis[n].index(composite.values)
                    mat[row, col] = _scalar_power(field, scale, composite.shift)
                table[c.values] = mat
            gen[(m, n)] = table
    shifts = tuple(
        _scale_matrix(field, scale, dims[n]) for n in range(N + 1)
    )
    return ParaRep(N, field, dims, gen, shifts)


def character_rep(scale, field: Field, N: int) -> CycRep:
    """The one-dimensional representation f |-> scale^(m - n)."""
    dims = (1,) * (N + 1)
    gen = {}
    for m in range(N + 1):
        for n in range(N + 1):
            value = _scalar_power(field, scale, m - n)
            gen[(m, n)] = {
                c.values: _scale_matrix(field, value, 1)
                for c in surjection_reps(m, n)
            }
    shifts = tuple(field.identity(1) for _ in range(N + 1))
    return CycRep(N, field, dims, gen, shifts)


def constant_rep(dim: int, field: Field, N: int) -> CycRep:
    dims = (dim,) * (N + 1)
    gen = {
        (m, n): {c.values: field.identity(dim) for c in surjection_reps(m, n)}
        for m in range(N + 1) for n in range(N + 1)
    }
    shifts = tuple(field.identity(dim) for _ in range(N + 1))
    return CycRep(N, field, dims, gen, shifts)


def direct_sum(reps: Sequence[ParaRep]) -> ParaRep:
    first = reps[0]
    field, N = first.field, first.N
    dims = tuple(sum(r.dims[n] for r in reps) for n in range(N + 1))
    gen = {}
    for m in range(N + 1):
        for n in range(N + 1):
            table = {}
            for c in surjection_reps(m, n):
                mat = field.zeros(dims[n], dims[m])
                ro = co = 0
                for r in reps:
                    block = r.gen[(m, n)][c.values]
                    mat[ro:ro + r.dims[n], co:co + r.dims[m]] = block
                    ro += r.dims[n]
                    co += r.dims[m]
                table[c.values] = mat
            gen[(m, n)] = table
    shifts = []
    for n in range(N + 1):
        t = field.zeros(dims[n], dims[n])
        ro = 0
        for r in reps:
            t[ro:ro + r.dims[n], ro:ro + r.dims[n]] = r.shifts[n]
            ro += r.dims[n]
        shifts.append(t)
    cls = CycRep if all(isinstance(r, CycRep) for r in reps) else ParaRep
    return cls(N, field, dims, gen, tuple(shifts))


def conjugate_rep(rep: ParaRep, conjugators: Sequence[np.ndarray]) -> ParaRep:
    field = rep.field
    inverses = [field.inverse(u) for u in conjugators]
    gen = {
        (m, n): {
            values: field.matmul(conjugators[n], field.matmul(mat, inverses[m]))
            for values, mat in table.items()
        }
        for (m, n), table in rep.gen.items()
    }
    shifts = tuple(
        field.matmul(conjugators[n], field.matmul(rep.shifts[n], inverses[n]))
        for n in range(rep.N + 1)
    )
    cls = CycRep if isinstance(rep, CycRep) else ParaRep
    return cls(rep.N, field, rep.dims, gen, shifts)


def random_rep(rng, field: Field, N: int, cyclic: bool = False) -> ParaRep:
    """A seeded random valid representation with dims <= 4 at every level.

    Built as a direct sum of characters, a surjection cell, and constants
    (a menu keeping every dimension at most 4), then conjugated by random
    isomorphisms so the matrices carry no visible block structure.
    """
    def char():
        return character_rep(_random_unit(rng, field), field, N)

    def cell():
        scale = field.one if cyclic else _random_unit(rng, field)
        return cell_rep(1, scale, field, N)

    def const():
        return constant_rep(1, field, N)

    menu = [
        lambda: [char()],
        lambda: [char(), char()],
        lambda: [char(), cell()],
        lambda: [char(), char(), cell()],
        lambda: [char(), char(), const()],
        lambda: [char(), cell(), const()],
    ]
    pieces = rng.choice(menu)()
    total = direct_sum(pieces)
    conjugators = [field.random_invertible(rng, total.dims[n]) for n in range(N + 1)]
    out = conjugate_rep(total, conjugators)
    if cyclic:
        return CycRep(out.N, out.field, out.dims, out.gen, out.shifts)
    return out


def _random_unit(rng, field: Field):
    from fractions import Fraction

    if hasattr(field, "p"):
        return rng.randrange(1, field.p)
    return Fraction(rng.choice([1, 2, 3, -1, -2]), rng.choice([1, 2, 3]))


def _scalar_power(field: Field, scale, k: int):
    from fractions import Fraction

    if hasattr(field, "p"):
        s = int(scale) % field.p
        if k < 0:
            s, k = pow(s, field.p - 2, field.p), -k
        return pow(s, k, field.p)
    value = Fraction(scale) ** abs(k)
    return value if k >= 0 else 1 / value


def _scale_matrix(field: Field, scale, n: int) -> np.ndarray:
    from fractions import Fraction

    out = field.identity(n)
    for i in range(n):
        if hasattr(field, "p"):
            out[i, i] = int(scale) % field.p
        else:
            out[i, i] = Fraction(scale)
    return out
