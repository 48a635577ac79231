import numpy as np
import pytest

from blockpart import build_csr, read_matrix_market, write_matrix_market
from blockpart.mmio import parse_matrix_market

from conftest import random_csr


class TestParse:
    def test_single_entry(self):
        text = "%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 5.0\n"
        A = parse_matrix_market(text)
        assert (A.m, A.n, A.nnz) == (1, 1, 1)
        assert A.val.tolist() == [5.0]

    def test_symmetric_mirrors(self):
        text = "%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n2 1 3.0\n"
        A = parse_matrix_market(text)
        assert A.nnz == 2
        assert A.to_dense().tolist() == [[0.0, 3.0], [3.0, 0.0]]

    def test_symmetric_diagonal_not_doubled(self):
        text = "%%MatrixMarket matrix coordinate real symmetric\n2 2 2\n1 1 4.0\n2 1 3.0\n"
        A = parse_matrix_market(text)
        assert A.to_dense().tolist() == [[4.0, 3.0], [3.0, 0.0]]

    def test_pattern_field(self):
        text = "%%MatrixMarket matrix coordinate pattern general\n2 3 2\n1 3\n2 1\n"
        A = parse_matrix_market(text)
        assert A.to_dense().tolist() == [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]

    def test_integer_field_widened(self):
        text = "%%MatrixMarket matrix coordinate integer general\n1 1 1\n1 1 7\n"
        A = parse_matrix_market(text)
        assert A.val.dtype == np.float64
        assert A.val.tolist() == [7.0]

    def test_comments_and_blanks_skipped(self):
        text = ("%%MatrixMarket matrix coordinate real general\n"
                "% produced by hand\n\n2 2 1\n% entry follows\n1 2 -1.5\n")
        A = parse_matrix_market(text)
        assert A.to_dense().tolist() == [[0.0, -1.5], [0.0, 0.0]]

    def test_duplicates_summed(self):
        text = "%%MatrixMarket matrix coordinate real general\n1 1 2\n1 1 1.0\n1 1 2.5\n"
        assert parse_matrix_market(text).val.tolist() == [3.5]

    def test_unsupported_header_quoted(self):
        bad = "%%MatrixMarket matrix coordinate complex general\n1 1 0\n"
        with pytest.raises(ValueError, match="unsupported header.*complex"):
            parse_matrix_market(bad)
        with pytest.raises(ValueError, match="unsupported header"):
            parse_matrix_market("%%MatrixMarket matrix array real general\n1 1\n")
        with pytest.raises(ValueError, match="unsupported header"):
            parse_matrix_market("%%MatrixMarket matrix coordinate real skew-symmetric\n1 1 0\n")

    def test_malformed_line_numbered(self):
        text = "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n1 nope 2.0\n"
        with pytest.raises(ValueError, match=":4:"):
            parse_matrix_market(text)

    def test_wrong_entry_count(self):
        text = "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n"
        with pytest.raises(ValueError, match="declares 2"):
            parse_matrix_market(text)


class TestRoundTrip:
    def test_random_matrices(self, tmp_path):
        rng = np.random.default_rng(0)
        for t in range(50):
            A = random_csr(int(rng.integers(1, 12)), int(rng.integers(1, 12)),
                           float(rng.uniform(0, 0.8)), rng)
            path = tmp_path / f"m{t}.mtx"
            write_matrix_market(path, A)
            assert read_matrix_market(path) == A

    def test_preserves_awkward_values(self, tmp_path):
        A = build_csr(2, 2, [(0, 0, 1 / 3), (1, 1, -2.2250738585072014e-308)])
        path = tmp_path / "awkward.mtx"
        write_matrix_market(path, A)
        assert read_matrix_market(path) == A
