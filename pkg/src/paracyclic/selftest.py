"""The full verification suite behind the ``selftest`` command.

Each criterion function returns a report dictionary with a boolean
``passed``; ``run_all`` executes every criterion with one seed and
aggregates.  Every randomized check derives its generator from the seed,
so two runs with the same seed produce identical reports.

Criterion 3 is expected to fail in its first clause: the duality that
satisfies the published retraction formula squares to conjugation by the
successor automorphism, and no functorial duality with those properties
can square to the identity on the nose (see README and the tests for the
exact statements).  The failure is reported honestly rather than patched
over.
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Optional

import numpy as np

from ._linalg import PrimeField
from .consheaf import (
    enumerate_upsets,
    gap_key,
    gluing_check,
    random_sheaf,
    stalk,
)
from .corner import (
    alpha_eval,
    pullback_point,
    stratum_of,
    validate_point,
    witness_point,
)
from .equivalence import (
    check_localization_adjunction,
    random_rep,
    realize_sheaf,
    realize_system,
    recover_rep,
    validate_rep,
)
from .extreal import ExtReal, POS_INF
from .paracat import (
    ParaMap,
    Parasimplex,
    classify,
    compose,
    dualize_map,
    enumerate_hom,
    shift_action,
)
from .preord import (
    ConvexRelation,
    ParaPreorder,
    compose_preord,
    enumerate_conv,
    enumerate_preord_maps,
    pullback_relation,
    quotient_by_relation,
)
from .sdot import (
    cone,
    euler_characteristic,
    random_chain_map,
    random_complex,
    random_filtration,
    rotation_periodicity_check,
)


def _brute_force_hom_values(m: int, n: int) -> List[tuple]:
    """Independent enumerator: raw tuples filtered by the definitions."""
    period = n + 1
    out = []
    for values in itertools.product(range(2 * period), repeat=m + 1):
        if not 0 <= values[0] < period:
            continue
        if any(values[a] > values[a + 1] for a in range(m)):
            continue
        if values[-1] > values[0] + period:
            continue
        out.append(values)
    return out


def criterion_1(seed: int = 0) -> dict:
    """Hom-count table against the brute-force enumerator and closed form."""
    mismatches = []
    table = {}
    for m in range(4):
        for n in range(4):
            generated = enumerate_hom(m, n)
            closed = (m + 1) * comb(m + n + 1, m + 1)
            brute = _brute_force_hom_values(m, n)
            table[f"{m},{n}"] = len(generated)
            if not (len(generated) == closed == len(brute)):
                mismatches.append((m, n, len(generated), closed, len(brute)))
            if sorted(c.values for c in generated) != sorted(brute):
                mismatches.append((m, n, "value sets differ"))
    return {
        "id": 1,
        "title": "cyclic hom-set counts",
        "passed": not mismatches,
        "details": {"table": table, "mismatches": mismatches},
    }


def criterion_2(seed: int = 0) -> dict:
    """Category axioms via exhaustive composition tables plus spot checks.

    The tables record canonical composite and wrap offset for every
    composable pair with objects <= Par(3).  Associativity of arbitrary
    shift offsets reduces to associativity of the tables because offsets
    enter composition additively; the wrap comparison below is therefore
    exhaustive over all offsets at once.  A seeded sample re-checks the
    reduction against the real composition on map objects with offsets
    |k| <= 2, exhaustively for objects <= Par(1).
    """
    rng = random.Random(seed)
    objs = range(4)
    reps = {}
    index = {}
    for a in objs:
        for b in objs:
            reps[(a, b)] = [c.rep for c in enumerate_hom(a, b)]
            index[(a, b)] = {f.values: i for i, f in enumerate(reps[(a, b)])}

    idx_tab: Dict[tuple, np.ndarray] = {}
    wrap_tab: Dict[tuple, np.ndarray] = {}
    for a, b, c in itertools.product(objs, repeat=3):
        fs, gs = reps[(a, b)], reps[(b, c)]
        idx = np.zeros((len(gs), len(fs)), dtype=np.int32)
        wrap = np.zeros((len(gs), len(fs)), dtype=np.int32)
        for i, g in enumerate(gs):
            for j, f in enumerate(fs):
                h = compose(g, f)
                idx[i, j] = index[(a, c)][h.values]
                wrap[i, j] = h.shift
        idx_tab[(a, b, c)] = idx
        wrap_tab[(a, b, c)] = wrap

    failures = []
    # units
    for a, b in itertools.product(objs, repeat=2):
        ident_a = index[(a, a)][Parasimplex(a).identity().values]
        ident_b = index[(b, b)][Parasimplex(b).identity().values]
        n_ab = len(reps[(a, b)])
        if not (idx_tab[(a, a, b)][:, ident_a] == np.arange(n_ab)).all():
            failures.append(("unit-right", a, b))
        if not (idx_tab[(a, b, b)][ident_b, :] == np.arange(n_ab)).all():
            failures.append(("unit-left", a, b))
        if wrap_tab[(a, a, b)][:, ident_a].any() or wrap_tab[(a, b, b)][ident_b, :].any():
            failures.append(("unit-wrap", a, b))
    # associativity, vectorized over all triples
    for a, b, c, d in itertools.product(objs, repeat=4):
        n_ab, n_bc, n_cd = len(reps[(a, b)]), len(reps[(b, c)]), len(reps[(c, d)])
        if 0 in (n_ab, n_bc, n_cd):
            continue
        gf_idx = idx_tab[(a, b, c)]                     # (n_bc, n_ab)
        gf_wrap = wrap_tab[(a, b, c)]
        h_grid = np.arange(n_cd)[:, None, None]
        left_idx = idx_tab[(a, c, d)][h_grid, gf_idx[None, :, :]]
        left_wrap = wrap_tab[(a, c, d)][h_grid, gf_idx[None, :, :]] + gf_wrap[None, :, :]
        hg_idx = idx_tab[(b, c, d)]                     # (n_cd, n_bc)
        hg_wrap = wrap_tab[(b, c, d)]
        f_grid = np.arange(n_ab)[None, None, :]
        right_idx = idx_tab[(a, b, d)][hg_idx[:, :, None], f_grid]
        right_wrap = wrap_tab[(a, b, d)][hg_idx[:, :, None], f_grid] + hg_wrap[:, :, None]
        if not (left_idx == right_idx).all() or not (left_wrap == right_wrap).all():
            failures.append(("associativity", a, b, c, d))
    # object-level composition with explicit offsets: exhaustive on Par(<=1)
    small = [0, 1]
    for a, b, c, d in itertools.product(small, repeat=4):
        for f, g, h in itertools.product(reps[(a, b)], reps[(b, c)], reps[(c, d)]):
            for kf, kg, kh in itertools.product((-2, 0, 2), (-1, 1), (0, 2)):
                fs, gs, hs = shift_action(f, kf), shift_action(g, kg), shift_action(h, kh)
                if compose(hs, compose(gs, fs)) != compose(compose(hs, gs), fs):
                    failures.append(("offset-associativity", a, b, c, d))
    # seeded spot checks at full size
    for _ in range(2000):
        a, b, c, d = (rng.randrange(4) for _ in range(4))
        f = shift_action(rng.choice(reps[(a, b)]), rng.randrange(-2, 3))
        g = shift_action(rng.choice(reps[(b, c)]), rng.randrange(-2, 3))
        h = shift_action(rng.choice(reps[(c, d)]), rng.randrange(-2, 3))
        if compose(h, compose(g, f)) != compose(compose(h, g), f):
            failures.append(("sampled-associativity", a, b, c, d))
    # cyclic composition is independent of representatives (objects <= 2)
    for a, b, c in itertools.product(range(3), repeat=3):
        for f, g in itertools.product(reps[(a, b)], reps[(b, c)]):
            expected = compose(g, f).values
            for kf, kg in itertools.product((-2, -1, 1, 2), repeat=2):
                got = compose(shift_action(g, kg), shift_action(f, kf)).values
                if got != expected:
                    failures.append(("cyc-representative", a, b, c))
    return {
        "id": 2,
        "title": "category axioms (paracyclic and cyclic)",
        "passed": not failures,
        "details": {"failures": failures[:10]},
    }


def criterion_3(seed: int = 0) -> dict:
    """Duality: involution clause, classification swap, retraction.

    The involution clause is checked exactly as stated and fails: the
    double dual is conjugation by the successor automorphism.  The other
    two clauses pass exhaustively.
    """
    involution_failures = []
    swap_failures = []
    retraction_failures = []
    swap = {"injective": "surjective", "surjective": "injective",
            "both": "both", "neither": "neither"}
    for m in range(4):
        for n in range(4):
            for c in enumerate_hom(m, n):
                f = c.rep
                if dualize_map(dualize_map(f)) != f:
                    involution_failures.append((m, n, f.values))
                if classify(dualize_map(f)) != swap[classify(f)]:
                    swap_failures.append((m, n, f.values))
                if classify(f) in ("injective", "both"):
                    if compose(dualize_map(f), f) != Parasimplex(m).identity():
                        retraction_failures.append((m, n, f.values))
    # objects are fixed by the duality on the nose
    objects_fixed = all(
        dualize_map(Parasimplex(n).identity()) == Parasimplex(n).identity()
        for n in range(4)
    )
    clauses = {
        "objects_fixed": objects_fixed,
        "involution_on_morphisms": not involution_failures,
        "swaps_classification": not swap_failures,
        "retraction_for_injections": not retraction_failures,
    }
    return {
        "id": 3,
        "title": "duality (involution, swap, retraction)",
        "passed": all(clauses.values()),
        "details": {
            "clauses": clauses,
            "involution_counterexamples": involution_failures[:3],
            "note": (
                "the involution clause cannot hold for any functorial duality "
                "with the retraction property: the double dual equals "
                "conjugation by the successor automorphism"
            ),
        },
    }


def criterion_4(seed: int = 0) -> dict:
    """Stratum counts and gap-count bookkeeping up to Par(6)."""
    failures = []
    for n in range(7):
        base = ParaPreorder.from_parasimplex(n)
        poset = enumerate_conv(base)
        if len(poset) != 2 ** (n + 1) - 1:
            failures.append(("count", n, len(poset)))
        for rel in poset:
            quotient, _ = quotient_by_relation(base, rel)
            if quotient.n + 1 != len(rel.gaps):
                failures.append(("gap-count", n, sorted(rel.gaps)))
    return {
        "id": 4,
        "title": "convex relation posets",
        "passed": not failures,
        "details": {"failures": failures},
    }


def _preorders_up_to(period: int) -> List[ParaPreorder]:
    out = []
    for total in range(1, period + 1):
        for cuts in itertools.product((0, 1), repeat=total - 1):
            sizes, run = [], 1
            for cut in cuts:
                if cut:
                    sizes.append(run)
                    run = 1
                else:
                    run += 1
            sizes.append(run)
            out.append(ParaPreorder(tuple(sizes)))
    return out


def _sample_points(rng, base: ParaPreorder, per_stratum: int = 1) -> list:
    """A witness point per stratum plus seeded rational perturbations."""
    points = []
    for rel in enumerate_conv(base):
        points.append(witness_point(rel))
        for _ in range(per_stratum):
            gaps = []
            for j in range(base.period):
                reference = witness_point(rel).gaps[j]
                if reference.is_pos_inf:
                    gaps.append(POS_INF)
                else:
                    gaps.append(ExtReal(Fraction(rng.randrange(-6, 7),
                                                 rng.randrange(1, 4))))
            points.append(validate_point(base, gaps))
    return points


def criterion_5(seed: int = 0) -> dict:
    """Corner-space functoriality for fundamental-domain periods <= 3."""
    rng = random.Random(seed)
    bases = _preorders_up_to(3)
    maps = {
        (src.sizes, tgt.sizes): enumerate_preord_maps(src, tgt)
        for src in bases for tgt in bases
    }
    points = {base.sizes: _sample_points(rng, base) for base in bases}
    failures = []
    for src in bases:
        for tgt in bases:
            for r in maps[(src.sizes, tgt.sizes)]:
                for point in points[tgt.sizes]:
                    pulled = pullback_point(r, point)
                    if stratum_of(pulled) != pullback_relation(r, stratum_of(point)):
                        failures.append(("square", src.sizes, tgt.sizes, r.values))
    for a in bases:
        for b in bases:
            for c in bases:
                for f in maps[(a.sizes, b.sizes)][:3]:
                    for g in maps[(b.sizes, c.sizes)][:3]:
                        gf = compose_preord(g, f)
                        for point in points[c.sizes][:4]:
                            if pullback_point(f, pullback_point(g, point)) != (
                                pullback_point(gf, point)
                            ):
                                failures.append(
                                    ("composition", a.sizes, b.sizes, c.sizes)
                                )
    return {
        "id": 5,
        "title": "corner-space functoriality",
        "passed": not failures,
        "details": {"failures": failures[:10]},
    }


def criterion_6(seed: int = 0) -> dict:
    """Localization adjunction in both variants for periods <= 3."""
    reports = {}
    passed = True
    for variant in ("para", "cyc"):
        for N in (1, 2, 3):
            report = check_localization_adjunction(N, variant)
            reports[f"{variant}-{N}"] = {
                "passed": report["passed"],
                "objects": report["objects"],
                "edges": report["edges"],
                "failures": report["failures"][:3],
            }
            passed = passed and report["passed"]
    return {
        "id": 6,
        "title": "localization adjunction",
        "passed": passed,
        "details": reports,
    }


def criterion_7(seed: int = 0) -> dict:
    """Round trip of representations through sheaf systems, N = 3, F_101."""
    rng = random.Random(seed)
    field = PrimeField(101)
    failures = []
    stalk_bases = [ParaPreorder.from_parasimplex(n) for n in range(4)] + [
        ParaPreorder((2, 1)), ParaPreorder((1, 2, 1)),
    ]
    for kind in ("para", "cyc"):
        for trial in range(20):
            rep = random_rep(rng, field, 3, cyclic=(kind == "cyc"))
            system = realize_system(rep)
            recovered = recover_rep(system, 3, cyclic=(kind == "cyc"))
            if rep.dims != recovered.dims:
                failures.append((kind, trial, "dims"))
                continue
            for key, table in rep.gen.items():
                for values, mat in table.items():
                    if not field.equal(mat, recovered.gen[key][values]):
                        failures.append((kind, trial, "generator", key, values))
            for n in range(4):
                if not field.equal(rep.shifts[n], recovered.shifts[n]):
                    failures.append((kind, trial, "shift", n))
            if not validate_rep(recovered)["passed"]:
                failures.append((kind, trial, "recovered-invalid"))
            if kind == "cyc" and not recovered.is_cyclic:
                failures.append((kind, trial, "not-cyclic"))
            # stalks of realized sheaves match the representation values
            if trial < 3:
                for base in stalk_bases:
                    sheaf = realize_sheaf(rep, base)
                    for rel in enumerate_conv(base):
                        expected = rep.dims[len(rel.gaps) - 1]
                        if stalk(sheaf, rel).dim != expected:
                            failures.append((kind, trial, "stalk", base.sizes))
    return {
        "id": 7,
        "title": "representation round trip and stalks",
        "passed": not failures,
        "details": {"failures": failures[:10]},
    }


def criterion_8(seed: int = 0) -> dict:
    """Sheaf gluing over every up-set pair, 20 seeded random sheaves.

    The twenty sheaves are spread five per base Par(0)..Par(3); for each
    the check runs over all unordered pairs of up-sets.
    """
    rng = random.Random(seed)
    field = PrimeField(101)
    failures = []
    checked = 0
    for n in range(4):
        base = ParaPreorder.from_parasimplex(n)
        upsets = enumerate_upsets(base)
        pairs = [(u1, u2) for i, u1 in enumerate(upsets) for u2 in upsets[i:]]
        for trial in range(5):
            sheaf = random_sheaf(rng, base, field)
            cache: dict = {}
            for u1, u2 in pairs:
                report = gluing_check(sheaf, u1, u2, section_cache=cache)
                checked += 1
                if not report["passed"]:
                    failures.append((n, trial, sorted(u1.members),
                                     sorted(u2.members), report))
    return {
        "id": 8,
        "title": "sheaf gluing over all up-set pairs",
        "passed": not failures,
        "details": {"pairs_checked": checked, "failures": failures[:3]},
    }


def criterion_9(seed: int = 0) -> dict:
    """Rotation periodicity and cone additivity for filtered complexes."""
    rng = random.Random(seed)
    field = PrimeField(2)
    failures = []
    # explicit double rotation at length 1
    for _ in range(5):
        filt = random_filtration(rng, field, 1, max_dim=6)
        report = rotation_periodicity_check(filt)
        if not (report["passed"] and report["double_rotation_is_identity"]
                and report["certificate_is_quasi_iso"]):
            failures.append(("length-1", report))
    # fingerprints across fifty seeded random filtrations
    for trial in range(50):
        length = 1 + trial % 3
        filt = random_filtration(rng, field, length, max_dim=6)
        report = rotation_periodicity_check(filt)
        if not report["passed"]:
            failures.append(("fingerprint", trial, length))
    # Euler additivity of mapping cones
    for trial in range(100):
        x = random_complex(rng, field, 4)
        y = random_complex(rng, field, 4)
        f = random_chain_map(rng, field, x, y)
        if euler_characteristic(cone(f)) != (
            euler_characteristic(y) - euler_characteristic(x)
        ):
            failures.append(("euler", trial))
    return {
        "id": 9,
        "title": "filtration rotation periodicity",
        "passed": not failures,
        "details": {"failures": failures[:5]},
    }


CRITERIA: Dict[int, Callable[[int], dict]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}


def run_all(seed: int = 0, only: Optional[List[int]] = None) -> dict:
    """Run the verification suite; deterministic for a fixed seed."""
    chosen = sorted(only) if only else sorted(CRITERIA)
    reports = []
    for number in chosen:
        start = time.perf_counter()
        report = CRITERIA[number](seed)
        report["seconds"] = round(time.perf_counter() - start, 3)
        reports.append(report)
    return {
        "seed": seed,
        "passed": all(r["passed"] for r in reports),
        "reports": reports,
    }
