import itertools
import random

import pytest

from paracyclic._linalg import PrimeField, QQ
from paracyclic.consheaf import (
    StratSheaf,
    UpSet,
    constant_sheaf,
    covering_edges,
    enumerate_upsets,
    gap_key,
    gluing_check,
    pullback_sheaf,
    random_sheaf,
    restriction_matrix,
    sections,
    stalk,
    up_closure,
    validate_sheaf,
    whole_space,
)
from paracyclic.errors import (
    BaseMismatch,
    DimensionMismatch,
    NotFunctorial,
    NotUpwardClosed,
)
from paracyclic.preord import (
    ConvexRelation,
    ParaPreorder,
    enumerate_conv,
    least_relation,
)

from oracles import oracle_kernel_dim_by_enumeration
from test_preord import all_preord_maps, small_preorders

F5 = PrimeField(5)
PAR1 = ParaPreorder((1, 1))
PAR2 = ParaPreorder((1, 1, 1))


class TestValidateSheaf:
    def test_constant_valid(self):
        sheaf = constant_sheaf(PAR2, F5, 2)
        assert validate_sheaf(sheaf.base, sheaf.field, sheaf.dims, sheaf.maps)

    def test_noncommuting_diamond_rejected(self):
        sheaf = constant_sheaf(PAR1, F5, 1)
        maps = dict(sheaf.maps)
        maps[((0, 1), (0,))] = F5.matrix([[2]])
        # (0,1) -> (0,) -> none; only diamonds of height 2 exist on Par(2)
        sheaf2 = constant_sheaf(PAR2, F5, 1)
        maps2 = dict(sheaf2.maps)
        maps2[((0, 1, 2), (0, 1))] = F5.matrix([[3]])
        with pytest.raises(NotFunctorial):
            validate_sheaf(PAR2, F5, sheaf2.dims, maps2)

    def test_missing_edges_rejected(self):
        sheaf = constant_sheaf(PAR1, F5, 1)
        maps = dict(sheaf.maps)
        maps.popitem()
        with pytest.raises(DimensionMismatch):
            validate_sheaf(PAR1, F5, sheaf.dims, maps)

    def test_wrong_shape_rejected(self):
        sheaf = constant_sheaf(PAR1, F5, 1)
        maps = dict(sheaf.maps)
        maps[((0, 1), (0,))] = F5.zeros(2, 1)
        with pytest.raises(DimensionMismatch):
            validate_sheaf(PAR1, F5, sheaf.dims, maps)

    def test_random_sheaves_valid(self):
        rng = random.Random(11)
        for base in [PAR1, PAR2, ParaPreorder((2, 1))]:
            for _ in range(5):
                random_sheaf(rng, base, F5)

    def test_json_round_trip(self):
        rng = random.Random(3)
        sheaf = random_sheaf(rng, PAR1, F5)
        again = StratSheaf.from_json(sheaf.to_json())
        assert again.dims == sheaf.dims
        for edge in sheaf.maps:
            assert F5.equal(again.maps[edge], sheaf.maps[edge])


class TestUpSets:
    def test_rejects_non_upward_closed(self):
        with pytest.raises(NotUpwardClosed):
            UpSet(PAR1, frozenset({(0, 1)}))

    def test_closure(self):
        up = up_closure(PAR1, [(0, 1)])
        assert up.members == {(0, 1), (0,), (1,)}

    def test_enumerate_counts(self):
        # antichain counts of the boolean poset minus its top
        assert len(enumerate_upsets(ParaPreorder((1,)))) == 2
        assert len(enumerate_upsets(PAR1)) == 5
        assert len(enumerate_upsets(PAR2)) == 19

    def test_maximal_pair_is_up_closed(self):
        UpSet(PAR1, frozenset({(0,), (1,)}))


class TestSections:
    def test_constant_over_everything_is_value_at_least(self):
        sheaf = constant_sheaf(PAR1, F5, 3)
        space = sections(sheaf, whole_space(PAR1))
        assert space.dim == 3

    def test_two_maximal_strata_give_product(self):
        sheaf = constant_sheaf(PAR1, F5, 2)
        space = sections(sheaf, UpSet(PAR1, frozenset({(0,), (1,)})))
        assert space.dim == 4

    def test_empty_up_set(self):
        sheaf = constant_sheaf(PAR1, F5, 2)
        assert sections(sheaf, UpSet(PAR1, frozenset())).dim == 0

    def test_up_set_containing_least_sees_only_least(self):
        rng = random.Random(5)
        for _ in range(5):
            sheaf = random_sheaf(rng, PAR2, F5)
            total = sections(sheaf, whole_space(PAR2))
            assert total.dim == sheaf.dims[gap_key(least_relation(PAR2))]

    def test_dim_matches_enumeration_oracle(self):
        rng = random.Random(17)
        F2 = PrimeField(2)
        base = PAR1
        for _ in range(4):
            sheaf = random_sheaf(rng, base, F2, max_intervals=2)
            for up in enumerate_upsets(base):
                space = sections(sheaf, up)
                layout = space.layout
                offsets = space.offsets
                width = offsets[-1]
                if width == 0 or width > 10:
                    continue
                rows = []
                for src, dst in covering_edges(base):
                    if src not in up.members or dst not in up.members:
                        continue
                    for r in range(sheaf.dims[dst]):
                        row = [0] * width
                        i, j = layout.index(src), layout.index(dst)
                        for c in range(sheaf.dims[src]):
                            row[offsets[i] + c] = int(sheaf.maps[(src, dst)][r, c])
                        row[offsets[j] + r] = (row[offsets[j] + r] - 1) % 2
                        rows.append(row)
                assert space.dim == oracle_kernel_dim_by_enumeration(rows, width, 2)

    def test_restriction_monotone(self):
        # restrictions factor: whole -> mid -> small equals whole -> small
        rng = random.Random(23)
        sheaf = random_sheaf(rng, PAR2, F5)
        big = sections(sheaf, whole_space(PAR2))
        upsets = enumerate_upsets(PAR2)
        for mid_set in upsets[:10]:
            mid = sections(sheaf, mid_set)
            to_mid = restriction_matrix(sheaf, big, mid)
            assert to_mid.shape == (big.dim, mid.dim)
            for small_set in upsets:
                if not small_set.members <= mid_set.members:
                    continue
                small = sections(sheaf, small_set)
                direct = restriction_matrix(sheaf, big, small)
                via = restriction_matrix(sheaf, mid, small)
                assert F5.equal(F5.matmul(via.T, to_mid.T), direct.T)


class TestStalk:
    def test_constant(self):
        sheaf = constant_sheaf(PAR2, F5, 2)
        for rel in enumerate_conv(PAR2):
            assert stalk(sheaf, rel).dim == 2

    def test_least_stratum_equals_global_sections(self):
        rng = random.Random(29)
        for _ in range(3):
            sheaf = random_sheaf(rng, PAR1, F5)
            assert stalk(sheaf, least_relation(PAR1)).dim == sections(
                sheaf, whole_space(PAR1)
            ).dim

    def test_base_mismatch(self):
        sheaf = constant_sheaf(PAR2, F5, 1)
        with pytest.raises(BaseMismatch):
            stalk(sheaf, least_relation(PAR1))


class TestPullbackSheaf:
    def test_identity(self):
        from paracyclic.preord import identity_map

        rng = random.Random(31)
        sheaf = random_sheaf(rng, PAR1, F5)
        pulled = pullback_sheaf(identity_map(PAR1), sheaf)
        assert pulled.dims == sheaf.dims
        for edge in sheaf.maps:
            assert F5.equal(pulled.maps[edge], sheaf.maps[edge])

    def test_constant_stays_constant(self):
        for f in all_preord_maps(PAR2, PAR1):
            pulled = pullback_sheaf(f, constant_sheaf(PAR2, F5, 2))
            assert set(pulled.dims.values()) == {2}

    def test_stalks_match_image_stratum(self):
        from paracyclic.preord import pullback_relation

        rng = random.Random(37)
        for src in small_preorders():
            for tgt in small_preorders():
                for f in all_preord_maps(src, tgt)[:2]:
                    sheaf = random_sheaf(rng, src, F5, max_intervals=2)
                    pulled = pullback_sheaf(f, sheaf)
                    for rel in enumerate_conv(tgt):
                        assert stalk(pulled, rel).dim == stalk(
                            sheaf, pullback_relation(f, rel)
                        ).dim

    def test_preserves_validity(self):
        rng = random.Random(41)
        for f in all_preord_maps(PAR2, PAR1)[:4]:
            sheaf = random_sheaf(rng, PAR2, F5)
            pulled = pullback_sheaf(f, sheaf)
            validate_sheaf(pulled.base, pulled.field, pulled.dims, pulled.maps)


class TestGluing:
    def test_disjoint_union_is_direct_sum(self):
        sheaf = constant_sheaf(PAR1, F5, 2)
        u1 = UpSet(PAR1, frozenset({(0,)}))
        u2 = UpSet(PAR1, frozenset({(1,)}))
        report = gluing_check(sheaf, u1, u2)
        assert report["passed"]
        assert report["dim_union"] == report["dim_left"] + report["dim_right"] == 4

    def test_nested_up_sets(self):
        sheaf = constant_sheaf(PAR2, F5, 3)
        u2 = whole_space(PAR2)
        u1 = up_closure(PAR2, [(0, 1)])
        report = gluing_check(sheaf, u1, u2)
        assert report["passed"] and report["dim_union"] == report["dim_right"]

    def test_random_pairs_pass(self):
        rng = random.Random(43)
        upsets = enumerate_upsets(PAR2)
        for _ in range(4):
            sheaf = random_sheaf(rng, PAR2, F5)
            for u1, u2 in itertools.islice(itertools.combinations(upsets, 2), 40):
                assert gluing_check(sheaf, u1, u2)["passed"]

    def test_rationals_backend(self):
        rng = random.Random(47)
        sheaf = random_sheaf(rng, PAR1, QQ, max_intervals=2)
        for u1, u2 in itertools.combinations(enumerate_upsets(PAR1), 2):
            assert gluing_check(sheaf, u1, u2)["passed"]
