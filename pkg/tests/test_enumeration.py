import pytest

from transfer_systems.basis import basis_size
from transfer_systems.closure import precompute_tables
from transfer_systems.enumeration import (BudgetExceeded, count, distribution,
                                          enumerate_systems)
from transfer_systems.lattice import build_chain_product, build_subspace_lattice

from .oracles import naive_all_closed, s3_lattice, small_battery, tiny_battery


class TestCounts:
    def test_cpq_is_ten(self):
        assert count(build_chain_product([1, 1])) == 10

    def test_chain_counts(self):
        # 2, 5, 14, 42, 132: the next Catalan numbers
        got = [count(build_chain_product([n])) for n in range(1, 6)]
        assert got == [2, 5, 14, 42, 132]

    def test_trivial_group(self):
        res = enumerate_systems(build_chain_product([0]))
        assert res.total_count == 1
        assert res.stratum_counts == [1]

    def test_matches_exhaustive_oracle(self):
        for lat in tiny_battery():
            got = enumerate_systems(lat)
            closed = naive_all_closed(lat)
            assert got.total_count == len(closed)
            enumerated = {s.mask for _, s in got.systems}
            assert len(enumerated) == len(closed)


class TestStrata:
    def test_stratum_zero_is_empty_system(self):
        for lat in small_battery():
            res = enumerate_systems(lat)
            assert res.stratum_counts[0] == 1
            assert res.systems[0] == (0, res.systems[0][1])
            assert res.systems[0][1].mask == 0

    def test_sum_and_no_trailing_zeros(self):
        for lat in small_battery() + [s3_lattice()]:
            res = enumerate_systems(lat, store=False)
            assert sum(res.stratum_counts) == res.total_count
            assert res.stratum_counts[-1] != 0

    def test_chain3_strata(self):
        # frozen from the exhaustive oracle plus brute-force basis sizes
        assert distribution(build_chain_product([3])) == [1, 6, 6, 1]

    def test_grid_max_stratum(self):
        res = enumerate_systems(build_chain_product([2, 1]), store=False)
        assert res.max_stratum() == 4

    def test_two_power_lower_bound(self):
        for lat in small_battery() + [s3_lattice(), build_subspace_lattice(2, 2)]:
            res = enumerate_systems(lat, store=False)
            assert 2 ** res.max_stratum() <= res.total_count

    def test_stratum_equals_minimal_basis_size(self):
        for lat in small_battery() + [s3_lattice()]:
            tables = precompute_tables(lat)
            res = enumerate_systems(lat, tables=tables)
            for stratum, system in res.systems:
                assert basis_size(system, tables) == stratum


class TestDeterminism:
    def test_jobs_do_not_change_result(self):
        for lat in [build_chain_product([2, 1]), s3_lattice()]:
            base = enumerate_systems(lat, jobs=1)
            for jobs in (2, 8):
                other = enumerate_systems(lat, jobs=jobs)
                assert other.total_count == base.total_count
                assert other.stratum_counts == base.stratum_counts
                assert [(i, s.mask) for i, s in other.systems] \
                    == [(i, s.mask) for i, s in base.systems]

    def test_count_jobs_invariance(self):
        for lat in tiny_battery():
            assert count(lat, jobs=1) == count(lat, jobs=8)


class TestCompleteSystem:
    def test_complete_is_unique_maximum(self):
        for lat in small_battery():
            tables = precompute_tables(lat)
            res = enumerate_systems(lat, tables=tables)
            masks = [s.mask for _, s in res.systems]
            assert tables.full_mask in masks
            assert sum(1 for m in masks if m == tables.full_mask) == 1
            assert all(m & ~tables.full_mask == 0 for m in masks)


class TestLimits:
    def test_budget_exceeded(self):
        with pytest.raises(BudgetExceeded) as info:
            enumerate_systems(build_chain_product([3]), max_systems=5)
        err = info.value
        assert err.budget == 5
        assert sum(err.partial_strata) > 5
        assert err.partial_strata[0] == 1

    def test_spill_matches_memory(self, tmp_path):
        lat = build_chain_product([4])
        memory = enumerate_systems(lat, store=False)
        spilled = enumerate_systems(lat, store=False,
                                    spill_dir=str(tmp_path), spill_threshold=0)
        assert spilled.total_count == memory.total_count
        assert spilled.stratum_counts == memory.stratum_counts

    def test_spill_with_store_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            enumerate_systems(build_chain_product([3]), store=True,
                              spill_dir=str(tmp_path), spill_threshold=0)

    def test_progress_reporting(self):
        events = []
        enumerate_systems(build_chain_product([2]), store=False,
                          progress=lambda layer, frontier, total:
                          events.append((layer, frontier, total)))
        assert events[0] == (0, 1, 1)
        assert [e[0] for e in events] == list(range(len(events)))
