import itertools
import random
from fractions import Fraction as Q

import pytest

from nestofan.geometry import f_vector, fan_equal, is_unimodular, refines, simplex_fan, validate_fan
from nestofan.moduli import (
    as_plain,
    b_A,
    blowup_base,
    blowup_centers,
    blowup_fan,
    chamber_signature,
    check_lemma_join,
    g_A,
    hassett_weight_A_prime,
    is_toric_chamber,
    lm_fan,
    lm_weights,
    product_fan_symmetries,
    random_toric_weight,
    unmatched_singletons,
    validate_weight,
    verify_lemma_join,
    verify_thm1,
    verify_thm2,
    verify_thm3_part1,
    verify_thm3_part2,
    weight_floor,
)
from nestofan.nesto import complete_building_set, nested_fan, subdivide_along, sym_fan, validate_building_set
from nestofan.nesto import sym_building_set

from conftest import HEXAGON_RAYS, weights

S = frozenset


class TestWeights:
    def test_floor(self):
        assert weight_floor(2, 5) == (Q(8, 9), Q(8, 9), Q(5, 9), Q(1, 3), Q(1, 3))
        assert weight_floor(1, 4) == (Q(5, 6), Q(1, 2), Q(1, 3), Q(1, 3))
        # the floor sums to exactly d + 1 here
        assert sum(weight_floor(2, 5)) == 3

    def test_floor_range(self):
        with pytest.raises(ValueError, match="requires n > d\\+2"):
            weight_floor(1, 3)

    def test_validate(self):
        assert validate_weight(weights(2, 5, 1, 1, 1, 1, 1))
        assert validate_weight(weights(2, 5, 1, 1, 1, Q(1, 2), Q(1, 2)))
        assert not validate_weight(weights(2, 5, 1, 1, 1, Q(1, 4), Q(1, 4)))
        assert not validate_weight(weights(2, 5, 1, 1, 1, 1, Q(5, 4)))

    def test_lm(self):
        assert lm_weights(2, 5).a == (1, 1, 1, Q(1, 2), Q(1, 2))
        assert lm_weights(1, 5).a == (1, 1, Q(1, 3), Q(1, 3), Q(1, 3))
        for d in range(1, 4):
            for n in range(d + 3, 10):
                assert validate_weight(lm_weights(d, n))

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            weights(2, 5, 1, 1, 1)


class TestLoci:
    def test_examples(self):
        assert g_A(weights(2, 5, 1, 1, 1, 1, 1)) == {S({3, 4}), S({3, 5}), S({4, 5})}
        assert g_A(weights(2, 5, 1, 1, 1, Q(1, 2), Q(1, 2))) == {S({3, 4}), S({3, 5})}

    def test_floor_pairs_of_light_points(self):
        for d, n in [(1, 5), (2, 6), (3, 8)]:
            a = weights(d, n, *weight_floor(d, n))
            assert not any(i.isdisjoint({d + 1}) for i in g_A(a))

    def test_lm_exact(self):
        for d, n in [(1, 5), (2, 6), (3, 7), (2, 8)]:
            light = range(d + 2, n + 1)
            expected = {
                S(c) | {d + 1} for k in range(1, n - d - 1) for c in itertools.combinations(light, k)
            }
            assert g_A(lm_weights(d, n)) == expected

    def test_toric(self):
        assert is_toric_chamber(lm_weights(2, 5))
        assert not is_toric_chamber(weights(2, 5, 1, 1, 1, 1, 1))
        assert is_toric_chamber(weights(2, 6, 1, 1, 1, Q(1, 2), Q(1, 4), Q(1, 4)))

    def test_toric_centers_contain_d_plus_1(self):
        rng = random.Random(0)
        for _ in range(100):
            d = rng.randint(1, 3)
            n = rng.randint(d + 3, 8)
            a = random_toric_weight(d, n, rng)
            assert validate_weight(a) and is_toric_chamber(a)
            assert all(d + 1 in i for i in g_A(a))
            assert all(x.denominator <= 24 for x in a.a)


class TestBuildingSetOfWeights:
    def test_lm_2_5(self):
        b = b_A(lm_weights(2, 5))
        assert b.members == {S({4}), S({5})}
        assert validate_building_set(b) == []

    def test_lm_general(self):
        for d, n in [(1, 6), (2, 7), (3, 7)]:
            b = b_A(lm_weights(d, n))
            light = list(range(d + 2, n + 1))
            proper = {S(c) for k in range(1, len(light)) for c in itertools.combinations(light, k)}
            assert b.members == proper

    def test_quarter_weights(self):
        b = b_A(weights(2, 6, 1, 1, 1, Q(1, 3), Q(1, 3), Q(1, 3)))
        assert len(b.members) == 6

    def test_rejects_non_toric(self):
        with pytest.raises(ValueError):
            b_A(weights(2, 5, 1, 1, 1, 1, 1))


class TestBlowup:
    def test_hexagon(self):
        f = blowup_fan(lm_weights(2, 5))
        assert set(f.rays) == HEXAGON_RAYS
        assert fan_equal(f, sym_fan(complete_building_set([1, 2]), 2))

    def test_d1_permutohedral(self):
        f = blowup_fan(lm_weights(1, 5))
        assert f_vector(f) == (1, 6, 6)
        assert fan_equal(f, nested_fan(complete_building_set([3, 4, 5])))

    def test_no_centers(self):
        a = weights(2, 5, 1, 1, Q(5, 9), Q(1, 3), Q(1, 3))
        assert g_A(a) == set()
        assert blowup_fan(a) == blowup_base(a)

    def test_labels(self):
        assert blowup_base(lm_weights(2, 6)).labels == ((4, 1), (5, 1), (6, 1), (4, 2), (5, 2), (6, 2))

    def test_ray_count(self):
        rng = random.Random(4)
        for _ in range(40):
            d = rng.randint(1, 3)
            n = rng.randint(d + 3, 7)
            a = random_toric_weight(d, n, rng)
            # for d = 1 a center {d+1, i} is a ray, whose subdivision adds nothing
            new = sum(1 for i in g_A(a) if d > 1 or len(i) > 2)
            assert len(blowup_fan(a).rays) == d * (n - d - 1) + new

    def test_tie_order_exhaustive(self):
        # every permutation within each size class, checked against the default order
        for a in (lm_weights(2, 6), lm_weights(1, 5), lm_weights(3, 7)):
            base = blowup_base(a)
            ref = blowup_fan(a)
            centers = blowup_centers(a)
            classes = [list(g) for _, g in itertools.groupby(centers, key=len)]
            d = a.d
            seen = 0
            for combo in itertools.product(*(itertools.permutations(c) for c in classes)):
                order = [c for part in combo for c in part]
                sched = [[(i, k) for i in sorted(c - {d + 1}) for k in range(1, d + 1)] for c in order]
                assert fan_equal(subdivide_along(base, sched), ref)
                seen += 1
            assert seen > 1

    def test_shuffled_ties(self):
        a = lm_weights(2, 7)
        ref = blowup_fan(a)
        for seed in range(5):
            assert fan_equal(blowup_fan(a, random.Random(seed)), ref)

    def test_valid(self):
        for d, n in [(1, 6), (2, 6), (3, 7)]:
            f = lm_fan(d, n)
            assert validate_fan(f) == [] and is_unimodular(f)


class TestTheorems:
    @pytest.mark.parametrize("d, n", [(1, 5), (2, 5), (3, 6), (1, 6), (2, 6), (2, 7)])
    def test_thm1(self, d, n):
        assert verify_thm1(d, n)

    def test_thm1_range(self):
        with pytest.raises(ValueError, match="requires n > d\\+2"):
            verify_thm1(1, 3)

    def test_thm2_lm_matches_thm1(self):
        for d, n in [(1, 5), (2, 5), (2, 6), (3, 7)]:
            assert verify_thm2(lm_weights(d, n)) == verify_thm1(d, n) is True

    def test_thm2_quarter(self):
        assert verify_thm2(weights(2, 6, 1, 1, 1, Q(1, 2), Q(1, 4), Q(1, 4)))

    def test_thm2_fails_with_unmatched_singletons(self):
        a = weights(2, 5, 1, 1, Q(5, 9), Q(1, 3), Q(1, 3))
        assert validate_weight(a) and is_toric_chamber(a)
        assert unmatched_singletons(a) == [4, 5]
        assert f_vector(blowup_fan(a)) == (1, 4, 4)
        assert f_vector(sym_fan(as_plain(b_A(a)), 2)) == (1, 6, 6)
        assert verify_thm2(a) is False

    def test_thm2_fewer_subdivisions_fails(self):
        a = weights(2, 6, 1, 1, Q(2, 3), Q(1, 2), Q(1, 4), Q(1, 4))
        assert len(g_A(a)) < len(g_A(lm_weights(2, 6)))
        assert unmatched_singletons(a) == [5, 6]
        assert verify_thm2(a) is False

    def test_thm2_d1_always(self):
        rng = random.Random(9)
        for _ in range(40):
            n = rng.randint(4, 8)
            assert verify_thm2(random_toric_weight(1, n, rng))

    def test_thm2_holds_without_unmatched_singletons(self):
        rng = random.Random(2)
        checked = 0
        for _ in range(120):
            d = rng.randint(2, 3)
            n = rng.randint(d + 3, 7)
            a = random_toric_weight(d, n, rng)
            assert verify_thm2(a) == (not unmatched_singletons(a))
            checked += not unmatched_singletons(a)
        assert checked > 20

    def test_thm2_rejects_non_toric(self):
        with pytest.raises(ValueError):
            verify_thm2(weights(2, 5, 1, 1, 1, 1, 1))


class TestLemma:
    def test_hexagon(self, hexagon):
        r = check_lemma_join(hexagon, method="pairs")
        assert r.ok and r.cones == 13 and r.pairs == 169

    def test_sigma2(self, p2):
        assert verify_lemma_join(p2)

    @pytest.mark.parametrize("d, n", [(1, 6), (2, 6), (3, 7), (1, 7)])
    def test_routes_agree(self, d, n):
        f = lm_fan(d, n)
        syms = product_fan_symmetries(f, n - d - 1, d)
        assert syms
        full = check_lemma_join(f, method="pairs")
        reduced = check_lemma_join(f, syms, method="pairs")
        rays = check_lemma_join(f, method="rays")
        assert full.ok and reduced.ok and rays.ok
        assert reduced.representatives < full.representatives

    @pytest.mark.parametrize("method", ["pairs", "rays"])
    def test_detects_corrupt_stars(self, hexagon, method):
        f = hexagon
        masks = dict(f.face_masks)
        ray = 1 << 0
        masks[ray] |= 1 << 5 if not masks[ray] >> 5 & 1 else 0
        masks[ray] ^= 1 << 0
        f.__dict__["face_masks"] = masks
        assert not check_lemma_join(f, method=method).ok

    def test_detects_missing_join(self, p2, ):
        # drop a 2-cone from the face table but keep its rays' stars
        f = p2
        masks = dict(f.face_masks)
        del masks[0b011]
        f.__dict__["face_masks"] = masks
        assert not check_lemma_join(f, method="pairs").ok
        assert not check_lemma_join(f, method="rays").ok

    def test_symmetries_are_automorphisms(self):
        f = lm_fan(2, 7)
        for perm in product_fan_symmetries(f, 4, 2):
            rays = {tuple(f.rays[i]) for i in range(len(f.rays))}
            assert len(set(perm)) == len(perm)
            cones = {tuple(sorted(perm[i] for i in c)) for c in f.max_cones}
            assert cones == set(f.max_cones)
            assert rays == set(f.rays)


class TestHassett:
    def test_a_prime(self):
        assert hassett_weight_A_prime(lm_weights(2, 5)) == (1, 1, Q(1, 2), Q(1, 2))
        assert hassett_weight_A_prime(lm_weights(1, 5)) == (1, 1, Q(1, 3), Q(1, 3), Q(1, 3))
        for d, n in [(1, 6), (2, 8), (3, 7)]:
            assert len(hassett_weight_A_prime(lm_weights(d, n))) == n - d + 1

    def test_signature(self):
        assert chamber_signature([Q(1, 2), Q(1, 2), 1]) == {S({0}), S({1}), S({2}), S({0, 1})}

    def test_part1_lm_2_5(self):
        rep = verify_thm3_part1(lm_weights(2, 5))
        checks = {c["name"]: c for c in rep["checks"]}
        assert checks["sum_exceeds_two"]["pass"]
        assert checks["sum_exceeds_two"]["detail"] == "1 + a_3 + ... + a_n = 3"
        assert {"dominance[printed_1/(n-2)]", "dominance[variant_1/(n-d-1)]",
                "coarse_chamber[printed_a_{d+3}]", "coarse_chamber[shifted_a_{d+2}]"} <= set(checks)

    def test_part1_d1_printed_dominance_fails(self):
        rep = verify_thm3_part1(lm_weights(1, 5))
        checks = {c["name"]: c for c in rep["checks"]}
        assert checks["sum_exceeds_two"]["pass"]
        assert not checks["dominance[printed_1/(n-2)]"]["pass"]
        assert "(1, 1/3, 1/3, 1/3, 1/3)" in checks["dominance[printed_1/(n-2)]"]["detail"]

    def test_part1_skips_1_3(self):
        a = weights(1, 3, 1, 1, 1)
        rep = verify_thm3_part1(a)
        assert [c["name"] for c in rep["checks"]] == ["skipped"]

    def test_part2(self):
        assert verify_thm3_part2(lm_weights(1, 6))
        assert verify_thm3_part2(weights(2, 6, 1, 1, 1, Q(1, 2), Q(1, 4), Q(1, 4)))
        a = weights(2, 6, 1, 1, Q(2, 3), Q(1, 2), Q(1, 4), Q(1, 4))
        assert verify_thm3_part2(a)

    def test_part2_lm_is_permutohedral(self):
        a = lm_weights(1, 6)
        f = nested_fan(b_A(a))
        assert fan_equal(f, nested_fan(complete_building_set([3, 4, 5, 6])))

    def test_part2_singletons_only(self):
        a = weights(2, 6, 1, 1, Q(1, 2), Q(1, 3), Q(1, 4), Q(1, 4))
        b = b_A(a)
        if all(len(m) == 1 for m in b.members):
            assert fan_equal(nested_fan(b), simplex_fan(b.ground))
        assert verify_thm3_part2(a)

    def test_sym_building_set_refines_base(self):
        b = complete_building_set([4, 5, 6])
        s = sym_building_set(b, 2)
        assert refines(nested_fan(s), s.base)
