import numpy as np
import pytest

from blockpart import (
    Partition,
    alternating_partition,
    brute_force_partition,
    build_csr,
    evaluate,
    model_block_count,
    model_memory_1dvbr,
    model_memory_vbr,
    onedvbr_memory_bits,
    optimal_partition,
    overlap_partition,
    strict_partition,
    trivial_partition,
)

from conftest import random_csr, random_partition, planted_model


def identity(n):
    return build_csr(n, n, [(i, i, 1.0) for i in range(n)])


class TestOptimalPartition:
    def test_identity_memory(self):
        A = identity(4)
        model = model_memory_1dvbr(1, 1, 4)
        got = optimal_partition(A, trivial_partition(4), model, 4)
        assert got.spl.tolist() == [0, 2, 4]
        # brute force over all 8 contiguous partitions agrees, at 21 bits
        oracle = brute_force_partition(A, trivial_partition(4), model, 4)
        t_cols = trivial_partition(4)
        assert evaluate(model, A, got, t_cols) == evaluate(model, A, oracle, t_cols)
        assert onedvbr_memory_bits(A, got, 1, 1) == 21

    def test_identical_rows_merge(self):
        A = build_csr(2, 2, [(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, 1.0)])
        got = optimal_partition(A, trivial_partition(2), model_block_count(2, 2), 2)
        assert got.spl.tolist() == [0, 2]

    def test_single_row(self):
        A = build_csr(1, 3, [(0, 1, 1.0)])
        for model in (model_block_count(1, 3), model_memory_1dvbr(64, 64, 1)):
            assert optimal_partition(A, trivial_partition(3), model, 1).spl.tolist() == [0, 1]

    def test_u_max_one_is_trivial(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            A = random_csr(7, 5, 0.4, rng)
            got = optimal_partition(A, trivial_partition(5), model_block_count(1, 1), 1)
            assert got.is_trivial()

    def test_matches_brute_force(self):
        rng = np.random.default_rng(1)
        for trial in range(60):
            m, n = int(rng.integers(1, 9)), int(rng.integers(1, 9))
            A = random_csr(m, n, [0.1, 0.3, 0.6][trial % 3], rng)
            cols = random_partition(n, 3, rng)
            w_cap = int(cols.widths().max())
            u_max = 1 + trial % 4
            for model in (
                model_block_count(u_max, w_cap),
                model_memory_vbr(64, 64, u_max, w_cap),
                planted_model(u_max, w_cap, rng),
            ):
                fast = optimal_partition(A, cols, model, u_max)
                slow = brute_force_partition(A, cols, model, u_max)
                a = evaluate(model, A, fast, cols)
                b = evaluate(model, A, slow, cols)
                if model.exact:
                    assert a == b
                else:
                    assert a == pytest.approx(b, rel=1e-9)

    def test_rejects_umax_beyond_model(self):
        A = identity(3)
        with pytest.raises(ValueError, match="exceeds model table range"):
            optimal_partition(A, trivial_partition(3), model_block_count(2, 3), 3)

    def test_rejects_wide_column_part(self):
        A = identity(3)
        with pytest.raises(ValueError, match="column part"):
            optimal_partition(A, Partition([0, 3]), model_block_count(2, 2), 2)

    def test_all_zero_rows(self):
        A = build_csr(5, 5, [])
        got = optimal_partition(A, trivial_partition(5), model_block_count(3, 1), 3)
        assert got.is_trivial()


class TestBruteForce:
    def test_single_row(self):
        A = build_csr(1, 1, [(0, 0, 1.0)])
        assert brute_force_partition(A, trivial_partition(1), model_block_count(1, 1), 1).spl.tolist() == [0, 1]

    def test_beats_trivial(self):
        rng = np.random.default_rng(2)
        model = model_block_count(3, 1)
        for _ in range(10):
            A = random_csr(6, 6, 0.4, rng)
            cols = trivial_partition(6)
            best = brute_force_partition(A, cols, model, 3)
            assert evaluate(model, A, best, cols) <= evaluate(model, A, trivial_partition(6), cols)

    def test_tie_breaks_lexicographically(self):
        # all-zero matrix: every partition costs zero blocks
        A = build_csr(3, 3, [])
        got = brute_force_partition(A, trivial_partition(3), model_block_count(3, 1), 3)
        assert got.is_trivial()

    def test_rejects_large_matrix(self):
        A = build_csr(21, 1, [])
        with pytest.raises(ValueError, match="20 rows"):
            brute_force_partition(A, trivial_partition(1), model_block_count(1, 1), 1)


class TestStrictPartition:
    def test_identity_stays_trivial(self):
        assert strict_partition(identity(4)).is_trivial()

    def test_identical_rows_grouped(self):
        A = build_csr(4, 3, [(i, j, 1.0) for i in range(4) for j in (0, 2)])
        assert strict_partition(A).spl.tolist() == [0, 4]

    def test_example_matrix(self, example_matrix):
        # rows 4 and 5 share the pattern {2, 7}; everything else differs
        assert strict_partition(example_matrix).spl.tolist() == [0, 1, 2, 3, 4, 6, 7, 8]

    def test_optional_cap(self):
        A = build_csr(4, 3, [(i, j, 1.0) for i in range(4) for j in (0, 2)])
        assert strict_partition(A, u_max=2).spl.tolist() == [0, 2, 4]

    def test_empty(self):
        assert strict_partition(build_csr(0, 3, [])).spl.tolist() == [0]


class TestOverlapPartition:
    def test_merges_at_half(self):
        A = build_csr(2, 3, [(0, 0, 1.0), (0, 1, 1.0), (1, 1, 1.0), (1, 2, 1.0)])
        # overlap 1 >= 0.5 * min(2, 2)
        assert overlap_partition(A, 0.5, 4).spl.tolist() == [0, 2]

    def test_splits_at_point_six(self):
        A = build_csr(2, 3, [(0, 0, 1.0), (0, 1, 1.0), (1, 1, 1.0), (1, 2, 1.0)])
        # overlap 1 < 0.6 * min(2, 2)
        assert overlap_partition(A, 0.6, 4).spl.tolist() == [0, 1, 2]

    def test_height_cap_binds(self):
        A = build_csr(6, 2, [(i, 0, 1.0) for i in range(6)])
        got = overlap_partition(A, 0.5, 2)
        assert got.spl.tolist() == [0, 2, 4, 6]
        assert int(got.widths().max()) <= 2

    def test_heights_never_exceed_cap(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            A = random_csr(int(rng.integers(1, 15)), 8, 0.5, rng)
            u_max = int(rng.integers(1, 5))
            got = overlap_partition(A, float(rng.uniform(0.1, 1.0)), u_max)
            assert int(got.widths().max()) <= u_max

    def test_comparison_is_against_first_row(self):
        # rows: {0,1}, {1,2}, {2,3}: row 2 overlaps row 1 but not row 0
        A = build_csr(3, 4, [(0, 0, 1.0), (0, 1, 1.0), (1, 1, 1.0), (1, 2, 1.0),
                             (2, 2, 1.0), (2, 3, 1.0)])
        got = overlap_partition(A, 0.5, 4)
        # row 1 joins row 0's group; row 2 shares nothing with row 0, so it splits
        assert got.spl.tolist() == [0, 2, 3]

    def test_rejects_bad_rho(self):
        A = identity(2)
        for rho in (0.0, -0.5, 1.5):
            with pytest.raises(ValueError, match="rho"):
                overlap_partition(A, rho, 2)

    def test_strict_refines_overlap(self):
        # identical adjacent rows always land in one part for both
        rng = np.random.default_rng(4)
        for _ in range(30):
            m = int(rng.integers(2, 10))
            A = random_csr(m, 6, 0.5, rng)
            strict = strict_partition(A)
            laxer = overlap_partition(A, 1.0, m)
            inv = laxer.assignments()
            for i in range(1, m):
                same_pattern = (
                    len(A.row_cols(i)) == len(A.row_cols(i - 1))
                    and bool((A.row_cols(i) == A.row_cols(i - 1)).all())
                )
                if same_pattern:
                    assert inv[i] == inv[i - 1]


class TestAlternating:
    def test_block_diagonal(self):
        entries = [(i, j, 1.0) for b in (0, 2) for i in (b, b + 1) for j in (b, b + 1)]
        A = build_csr(4, 4, entries)
        model = model_memory_vbr(64, 64, 2, 2)
        rows, cols = alternating_partition(A, model, 2, 2, rounds=3)
        # oracle: exhaustive minimum over all (row, column) partition pairs
        best = min(
            evaluate(model, A, p, q)
            for p in _partitions_capped(4, 2)
            for q in _partitions_capped(4, 2)
        )
        assert evaluate(model, A, rows, cols) == best
        assert rows.spl.tolist() == [0, 2, 4]
        assert cols.spl.tolist() == [0, 2, 4]

    def test_all_zero(self):
        A = build_csr(3, 3, [])
        rows, cols = alternating_partition(A, model_block_count(3, 3), 3, 3)
        assert evaluate(model_block_count(3, 3), A, rows, cols) == 0
        assert rows.is_trivial() and cols.is_trivial()

    def test_objective_never_increases(self):
        rng = np.random.default_rng(5)
        model = model_memory_vbr(64, 64, 8, 8)
        for _ in range(50):
            A = random_csr(8, 8, float(rng.uniform(0.1, 0.6)), rng)
            trace = []
            alternating_partition(A, model, 8, 8, rounds=5, objective_trace=trace)
            assert all(b <= a for a, b in zip(trace, trace[1:]))

    def test_rejects_bad_rounds(self):
        with pytest.raises(ValueError):
            alternating_partition(identity(2), model_block_count(2, 2), 2, 2, rounds=0)


def _partitions_capped(r, cap):
    def extend(splits):
        if splits[-1] == r:
            yield Partition(splits)
            return
        for u in range(1, min(cap, r - splits[-1]) + 1):
            yield from extend(splits + [splits[-1] + u])

    yield from extend([0])
