import random
from itertools import combinations

import pytest

from transfer_systems.basis import minimal_basis
from transfer_systems.closure import close_mask, closure, precompute_tables
from transfer_systems.lattice import build_chain_product
from transfer_systems.rainbows import (Block, RainbowError,
                                       RainbowOpError, ap3_count, apply_arc_op,
                                       apply_block_op, brute_force_max_rainbow,
                                       canonical_max_rainbows, complete_rainbow,
                                       conjectured_cpnqm_complexity,
                                       cpnq_complexity, cpnq_witness_rainbow,
                                       double_rainbow_augmented, dr_number,
                                       elementary_abelian_lower, excluded_rainbow,
                                       gaussian_binomial, is_composable,
                                       is_partial_rainbow, left_block,
                                       normalize_to_composable, outer_block,
                                       rainbow, rainbow_size, right_block,
                                       sr_number, square_free_complexity_lower,
                                       trinomial)

from .oracles import DR_TABLE, SR_TABLE


def arcs_of(r):
    return tuple((a.x, a.y) for a in r.arcs)


def random_rainbow(rng, n, max_arcs=None):
    limit = (n + 1) // 2 if max_arcs is None else max_arcs
    k = rng.randrange(0, limit)
    while True:
        pts = sorted(rng.sample(range(n + 1), 2 * k))
        try:
            return rainbow(n, [(pts[i], pts[2 * k - 1 - i]) for i in range(k)])
        except RainbowError:
            continue


class TestTrinomial:
    def test_worked_values(self):
        assert trinomial(4, 1, 4) == 4
        assert trinomial(4, 2, 3) == 12
        assert trinomial(4, 0, 4) == 1

    def test_whole_range_arc(self):
        for n in range(1, 10):
            assert trinomial(n, 0, n) == 1

    def test_out_of_range(self):
        with pytest.raises(RainbowError):
            trinomial(4, 3, 2)
        with pytest.raises(RainbowError):
            trinomial(4, 0, 5)


class TestRainbowSizes:
    def test_empty(self):
        assert rainbow_size(rainbow(5, [])) == 0

    def test_complete_n7(self):
        assert rainbow_size(complete_rainbow(7)) == 393

    def test_excluded_n6(self):
        assert rainbow_size(excluded_rainbow(6, 0)) == 126
        assert rainbow_size(excluded_rainbow(4, 0)) == 16
        assert rainbow_size(excluded_rainbow(4, 2)) == 13

    def test_nesting_enforced(self):
        with pytest.raises(RainbowError):
            rainbow(4, [(0, 2), (1, 3)])
        with pytest.raises(RainbowError):
            rainbow(4, [(0, 2), (2, 3)])


class TestCanonicalMaxima:
    def test_odd_complete(self):
        assert arcs_of(canonical_max_rainbows(7)[0]) == ((0, 7), (1, 6), (2, 5), (3, 4))

    def test_n8_middle_exclusion(self):
        (r,) = canonical_max_rainbows(8)
        assert arcs_of(r) == ((0, 8), (1, 7), (2, 6), (3, 5))

    def test_n6_two_maximizers(self):
        got = canonical_max_rainbows(6)
        assert [arcs_of(r) for r in got] == [
            ((1, 6), (2, 5), (3, 4)),
            ((0, 5), (1, 4), (2, 3)),
        ]

    def test_closed_form_small_values(self):
        assert [square_free_complexity_lower(n) for n in range(2, 7)] == [2, 7, 16, 51, 126]

    def test_brute_force_agreement(self):
        for n in range(1, 13):
            bf = brute_force_max_rainbow(n)
            assert bf.size == square_free_complexity_lower(n)
            assert sorted(map(arcs_of, bf.argmax)) \
                == sorted(map(arcs_of, canonical_max_rainbows(n)))
            for r in bf.argmax:
                assert len(r) == (n + 1) // 2

    def test_brute_force_guard(self):
        with pytest.raises(RainbowError):
            brute_force_max_rainbow(15)


class TestArcOps:
    def test_translate_right(self):
        r = rainbow(8, [(0, 7)])
        got = apply_arc_op(r, "translate_right", 0)
        assert arcs_of(got) == ((1, 8),)
        assert rainbow_size(got) >= rainbow_size(r)

    def test_centered_arc_cannot_translate(self):
        r = rainbow(8, [(2, 6)])
        for op in ("translate_left", "translate_right"):
            with pytest.raises(RainbowOpError, match="condition"):
                apply_arc_op(r, op, 0)

    def test_occupied_endpoint(self):
        r = rainbow(4, [(0, 3), (1, 2)])
        with pytest.raises(RainbowOpError, match="occupied"):
            apply_arc_op(r, "translate_right", 1)

    def test_all_legal_ops_never_decrease(self):
        rng = random.Random(97)
        ops = ["translate_left", "translate_right", "contract_left",
               "contract_right", "expand_left", "expand_right"]
        applied = 0
        for _ in range(400):
            n = rng.randrange(2, 11)
            r = random_rainbow(rng, n)
            for i in range(len(r.arcs)):
                for op in ops:
                    try:
                        out = apply_arc_op(r, op, i)
                    except RainbowOpError:
                        continue
                    applied += 1
                    assert rainbow_size(out) >= rainbow_size(r), (op, arcs_of(r), n)
        assert applied > 200

    def test_contract_left_ratio(self):
        # size ratio (y-x)/(x+1) >= 1 whenever the condition holds
        r = rainbow(9, [(1, 7)])
        out = apply_arc_op(r, "contract_left", 0)
        assert rainbow_size(out) * (1 + 1) == rainbow_size(r) * (7 - 1)
        assert rainbow_size(out) >= rainbow_size(r)


class TestBlocks:
    def test_block_decomposition(self):
        r = rainbow(12, [(0, 12), (1, 11), (3, 10), (5, 9), (6, 7)])
        assert left_block(r) == Block(0, 1)
        assert right_block(r) == Block(0, 3)
        assert outer_block(r) == Block(0, 1)

    def test_reflect_preserves_size(self):
        rng = random.Random(13)
        for _ in range(200):
            n = rng.randrange(1, 12)
            r = random_rainbow(rng, n)
            if not r.arcs:
                continue
            out = apply_block_op(r, "reflect")
            assert rainbow_size(out) == rainbow_size(r)
            assert arcs_of(apply_block_op(out, "reflect")) == arcs_of(r)

    def test_contract_outer_block(self):
        r = rainbow(9, [(0, 8), (1, 7), (3, 6), (4, 5)])
        out = apply_block_op(r, "block_contract_left", outer_block(r))
        assert arcs_of(out) == ((1, 8), (2, 7), (3, 6), (4, 5))
        assert rainbow_size(out) >= rainbow_size(r)

    def test_expand_inner_block(self):
        arcs = [(i, 21 - i) for i in range(8)] + [(9, 13), (10, 11)]
        r = rainbow(21, arcs)
        out = apply_block_op(r, "block_expand_left", Block(8, 8))
        assert (8, 13) in arcs_of(out)
        assert rainbow_size(out) >= rainbow_size(r)

    def test_translate_block_conditions(self):
        r = rainbow(9, [(0, 7), (1, 5), (3, 4)])
        out = apply_block_op(r, "block_translate_right", Block(0, 1))
        assert arcs_of(out) == ((1, 8), (2, 6), (3, 4))
        with pytest.raises(RainbowOpError, match="condition"):
            apply_block_op(out, "block_translate_right", Block(0, 1))

    def test_empty_rainbow_has_no_blocks(self):
        r = rainbow(5, [])
        with pytest.raises(RainbowOpError, match="no block"):
            apply_block_op(r, "reflect")
        with pytest.raises(RainbowOpError, match="no block"):
            apply_block_op(r, "block_translate_left", Block(0, 0))

    def test_legal_block_ops_never_decrease(self):
        rng = random.Random(41)
        applied = 0
        for _ in range(300):
            n = rng.randrange(2, 12)
            r = random_rainbow(rng, n)
            if not r.arcs:
                continue
            blocks = [Block(i, j) for i in range(len(r.arcs))
                      for j in range(i, len(r.arcs))]
            for op in ("block_translate_left", "block_translate_right",
                       "block_contract_left", "block_expand_left"):
                for b in blocks:
                    try:
                        out = apply_block_op(r, op, b)
                    except RainbowOpError:
                        continue
                    applied += 1
                    assert rainbow_size(out) >= rainbow_size(r), (op, b, arcs_of(r), n)
        assert applied > 50


class TestNormalization:
    def test_already_composable(self):
        res = normalize_to_composable(rainbow(7, [(1, 6), (2, 4)]))
        assert res.ops_used == []
        assert is_composable(res.result)

    def test_one_translate_right(self):
        res = normalize_to_composable(rainbow(9, [(0, 7), (1, 5), (3, 4)]))
        assert res.ops_used == ["block_translate_right"]
        assert is_composable(res.result)

    def test_one_translate_left(self):
        res = normalize_to_composable(rainbow(9, [(2, 9), (4, 8), (5, 6)]))
        assert res.ops_used == ["block_translate_left"]

    def test_inner_translate(self):
        res = normalize_to_composable(rainbow(9, [(0, 9), (3, 8), (4, 6)]))
        assert res.ops_used == ["block_translate_left"]
        assert arcs_of(res.result) == ((0, 9), (2, 7), (4, 6))

    def test_precondition(self):
        with pytest.raises(RainbowError):
            normalize_to_composable(complete_rainbow(7))

    def test_fuzz(self):
        rng = random.Random(2024)
        for _ in range(2000):
            n = rng.randrange(1, 13)
            r = random_rainbow(rng, n)
            res = normalize_to_composable(r)
            assert is_composable(res.result)
            assert len(res.ops_used) <= 4
            assert rainbow_size(res.result) >= rainbow_size(r)


class TestGridRainbowNumbers:
    def test_sr_table(self):
        for n, row in SR_TABLE.items():
            for m, expected in zip(range(2, 12), row):
                assert sr_number(n, m) == expected, (n, m)

    def test_dr_table(self):
        for n, row in DR_TABLE.items():
            for m, expected in row.items():
                assert dr_number(n, m) == expected, (n, m)

    def test_closed_form_vs_enumeration_everywhere(self):
        # sr_number/dr_number assert the agreement internally
        for n in range(1, 12):
            for m in range(1, n + 1):
                sr_number(n, m)
                if m >= 2 and (n + m) % 2 == 0:
                    dr_number(n, m)

    def test_symmetry(self):
        assert sr_number(4, 3) == sr_number(3, 4)
        assert dr_number(6, 4) == dr_number(4, 6)

    def test_sr_minus_dr(self):
        for m in range(2, 10):
            for n in range(m, 12):
                if (n + m) % 2 == 0:
                    assert sr_number(n, m) - dr_number(n, m) == (m + 1) // 2

    def test_domain_errors(self):
        with pytest.raises(RainbowError):
            dr_number(3, 2)
        with pytest.raises(RainbowError):
            dr_number(4, 1)
        with pytest.raises(RainbowError):
            sr_number(0, 1)


class TestArithmeticProgressions:
    def test_brute_force(self):
        for n in range(1, 13):
            brute = sum(
                1
                for a, b, c in combinations(range(n + 1), 3)
                if b - a == c - b
            )
            assert ap3_count(n) == brute

    def test_examples(self):
        assert ap3_count(1) == 0
        assert ap3_count(4) == 4
        assert ap3_count(5) == 6


class TestWitnessRainbows:
    def test_complexity_formula(self):
        assert [cpnq_complexity(n) for n in range(6)] == [1, 2, 4, 5, 7, 8]

    def test_witness_sizes(self):
        assert len(cpnq_witness_rainbow(2)) == 4
        assert len(cpnq_witness_rainbow(3)) == 5

    def test_witness_is_minimal_basis_of_its_closure(self):
        for n in range(0, 5):
            witness = cpnq_witness_rainbow(n)
            lat = witness.lattice
            tables = precompute_tables(lat)
            system = closure(tables, witness.arrows)
            basis = minimal_basis(system, tables)
            assert len(basis) == len(witness)
            mask = 0
            for a in witness.arrows:
                mask |= 1 << lat.arrow_index[(a.source, a.target)]
            for a in witness.arrows:
                i = lat.arrow_index[(a.source, a.target)]
                assert close_mask(tables, mask & ~(1 << i)) != system.mask

    def test_partial_rainbow_detection(self):
        lat = build_chain_product([2])
        tables = precompute_tables(lat)
        from transfer_systems.basis import GeneratingSet
        from transfer_systems.lattice import Arrow
        chain_basis = GeneratingSet(lat, frozenset({Arrow(0, 1), Arrow(1, 2)}))
        assert not is_partial_rainbow(lat, chain_basis)
        empty = GeneratingSet(lat, frozenset())
        assert is_partial_rainbow(lat, empty)
        for n in range(0, 5):
            w = cpnq_witness_rainbow(n)
            assert is_partial_rainbow(w.lattice, w)


class TestDoubleRainbowAugmentation:
    def test_2_2_realizes_seven(self):
        aug = double_rainbow_augmented(2, 2)
        assert len(aug) == 7
        tables = precompute_tables(aug.lattice)
        system = closure(tables, aug.arrows)
        assert len(minimal_basis(system, tables)) == 7

    def test_4_2_shape(self):
        aug = double_rainbow_augmented(4, 2)
        assert len(aug) == 13

    def test_size_formula(self):
        for n in range(2, 9):
            for m in range(2, n + 1):
                if (n + m) % 2 == 0:
                    assert len(double_rainbow_augmented(n, m)) == dr_number(n, m) + 2

    def test_is_minimal_generating_set(self):
        for n, m in [(2, 2), (3, 3), (4, 2)]:
            aug = double_rainbow_augmented(n, m)
            lat = aug.lattice
            tables = precompute_tables(lat)
            mask = 0
            for a in aug.arrows:
                mask |= 1 << lat.arrow_index[(a.source, a.target)]
            full = close_mask(tables, mask)
            for a in aug.arrows:
                i = lat.arrow_index[(a.source, a.target)]
                assert close_mask(tables, mask & ~(1 << i)) != full

    def test_domain(self):
        with pytest.raises(RainbowError):
            double_rainbow_augmented(3, 2)
        with pytest.raises(RainbowError):
            double_rainbow_augmented(2, 1)


class TestConjecturedComplexity:
    def test_values(self):
        assert conjectured_cpnqm_complexity(2, 2) == 7
        assert conjectured_cpnqm_complexity(3, 3) == 14
        assert conjectured_cpnqm_complexity(4, 3) == 20
        assert conjectured_cpnqm_complexity(3, 4) == 20

    def test_lower_bound_on_small_grids(self):
        from transfer_systems.basis import complexity
        for n, m in [(2, 2), (3, 2)]:
            lat = build_chain_product([n, m])
            got = complexity(lat)
            assert got.value >= conjectured_cpnqm_complexity(n, m)

    def test_2_2_equality_observed(self):
        from transfer_systems.basis import complexity
        got = complexity(build_chain_product([2, 2]))
        assert got.value == conjectured_cpnqm_complexity(2, 2) == 7

    @pytest.mark.slow
    def test_lower_bound_on_larger_grid(self):
        # [4]x[2] holds 1.2M transfer systems; takes tens of minutes
        from transfer_systems.basis import complexity
        got = complexity(build_chain_product([4, 2]), jobs=2)
        assert got.value >= conjectured_cpnqm_complexity(4, 2) == 13


class TestGaussianBinomials:
    def test_values(self):
        assert gaussian_binomial(2, 1, 2) == 3
        assert gaussian_binomial(2, 1, 3) == 4
        for n in range(6):
            assert gaussian_binomial(n, 0, 5) == 1

    def test_matches_subspace_lattice(self):
        from transfer_systems.lattice import build_subspace_lattice
        lat = build_subspace_lattice(2, 3)
        for k in range(4):
            assert gaussian_binomial(3, k, 2) == sum(
                1 for e in lat.elements if e.rank == k
            )

    def test_domain(self):
        with pytest.raises(RainbowError):
            gaussian_binomial(3, 4, 2)
        with pytest.raises(RainbowError):
            gaussian_binomial(3, 1, 4)

    def test_elementary_abelian_lower_matches_enumeration_dim2(self):
        from transfer_systems.basis import complexity
        from transfer_systems.lattice import build_subspace_lattice
        lat = build_subspace_lattice(2, 2)
        got = complexity(lat)
        assert got.value == elementary_abelian_lower(2, 2) == 3


class TestRiordanStyleInequality:
    def test_strict_inequality(self):
        # the shifted multinomial sum stays below the centered one
        ns = [n for n in range(3, 21, 2)] + [n for n in range(8, 21, 2)]
        for n in ns:
            top = (n - 1) // 2
            shifted = sum(trinomial(n, i + 1, n - i) for i in range(top + 1))
            centered = sum(trinomial(n, i, n - i) for i in range(top + 1))
            assert shifted < centered, n
