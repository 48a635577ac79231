"""Compressed sparse row matrices and contiguous partitions.

Everything in this package is built on two small immutable types: a CSR
matrix and a contiguous partition of an index range, stored as a vector of
split points. Both validate their invariants on construction and expose
read-only numpy arrays.
"""

import numpy as np

__all__ = [
    "CsrMatrix",
    "Partition",
    "build_csr",
    "transpose",
    "row_pattern",
    "csr_memory_bits",
    "trivial_partition",
]


def _frozen(arr, dtype):
    out = np.ascontiguousarray(arr, dtype=dtype)
    out.flags.writeable = False
    return out


class CsrMatrix:
    """Immutable sparse matrix in compressed sparse row form.

    Attributes
    ----------
    m, n : int
        Row and column counts.
    pos : int64 array, shape (m + 1,)
        Offsets of each row's slice of ``idx`` and ``val``.
    idx : int64 array, shape (nnz,)
        Column indices, strictly increasing within each row.
    val : float64 array, shape (nnz,)
        Stored values. Explicitly stored zeros are legal and count
        toward ``nnz``.
    """

    __slots__ = ("m", "n", "pos", "idx", "val")

    def __init__(self, m, n, pos, idx, val):
        pos = _frozen(pos, np.int64)
        idx = _frozen(idx, np.int64)
        val = _frozen(val, np.float64)
        if m < 0 or n < 0:
            raise ValueError(f"negative dimensions {m}x{n}")
        if pos.shape != (m + 1,):
            raise ValueError(f"pos has length {len(pos)}, expected {m + 1}")
        if pos[0] != 0 or np.any(np.diff(pos) < 0) or pos[m] != len(idx):
            raise ValueError("pos must start at 0, be non-decreasing, and end at nnz")
        if len(idx) != len(val):
            raise ValueError(f"idx/val length mismatch: {len(idx)} vs {len(val)}")
        if len(idx) and (idx.min() < 0 or idx.max() >= n):
            raise ValueError("column index out of range")
        # strictly increasing inside each row: differences may only be
        # negative at row boundaries
        if len(idx) > 1:
            drops = np.nonzero(np.diff(idx) <= 0)[0] + 1
            if len(drops) and not np.all(np.isin(drops, pos)):
                raise ValueError("column indices must be strictly increasing within a row")
        self.m = int(m)
        self.n = int(n)
        self.pos = pos
        self.idx = idx
        self.val = val

    @property
    def nnz(self):
        return int(self.pos[self.m])

    def row_cols(self, i):
        """Column indices stored in row ``i`` (sorted, read-only view)."""
        return self.idx[self.pos[i]:self.pos[i + 1]]

    def row_vals(self, i):
        return self.val[self.pos[i]:self.pos[i + 1]]

    def to_dense(self):
        dense = np.zeros((self.m, self.n))
        for i in range(self.m):
            dense[i, self.row_cols(i)] = self.row_vals(i)
        return dense

    def __eq__(self, other):
        if not isinstance(other, CsrMatrix):
            return NotImplemented
        return (
            self.m == other.m
            and self.n == other.n
            and np.array_equal(self.pos, other.pos)
            and np.array_equal(self.idx, other.idx)
            and np.array_equal(self.val, other.val)
        )

    def __repr__(self):
        return f"CsrMatrix({self.m}x{self.n}, nnz={self.nnz})"


class Partition:
    """Contiguous partition of ``range(size)`` into ``K`` parts.

    Stored as ``K + 1`` strictly increasing split points, with part ``k``
    covering the half-open range ``[spl[k], spl[k + 1])``.
    """

    __slots__ = ("spl",)

    def __init__(self, spl):
        spl = _frozen(spl, np.int64)
        if len(spl) == 0 or spl[0] != 0:
            raise ValueError("split points must start at 0")
        if np.any(np.diff(spl) <= 0):
            raise ValueError("split points must be strictly increasing")
        self.spl = spl

    @property
    def size(self):
        """Number of indices covered (the last split point)."""
        return int(self.spl[-1])

    @property
    def num_parts(self):
        return len(self.spl) - 1

    def widths(self):
        """Length of each part, as an int64 array of length K."""
        return np.diff(self.spl)

    def assignments(self):
        """Length-``size`` array mapping each index to its part."""
        return np.repeat(np.arange(self.num_parts, dtype=np.int64), self.widths())

    def inverse(self, i):
        """Part index containing ``i``."""
        if i < 0 or i >= self.size:
            raise IndexError(f"index {i} outside partitioned range [0, {self.size})")
        return int(np.searchsorted(self.spl, i, side="right")) - 1

    def is_trivial(self):
        return self.num_parts == self.size

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self.spl, other.spl)

    def __repr__(self):
        return f"Partition({self.spl.tolist()})"


def trivial_partition(r):
    """Partition of ``range(r)`` with every index in its own part."""
    if r < 0:
        raise ValueError(f"negative range size {r}")
    return Partition(np.arange(r + 1, dtype=np.int64))


def build_csr(m, n, entries):
    """Assemble a CSR matrix from (row, col, value) triples.

    Entries are sorted row-major; duplicate coordinates are summed.
    Out-of-range coordinates are rejected, naming the offending entry.
    """
    entries = list(entries)
    if not entries:
        return CsrMatrix(m, n, np.zeros(m + 1, np.int64), [], [])
    rows = np.array([e[0] for e in entries], dtype=np.int64)
    cols = np.array([e[1] for e in entries], dtype=np.int64)
    vals = np.array([e[2] for e in entries], dtype=np.float64)
    bad = np.nonzero((rows < 0) | (rows >= m) | (cols < 0) | (cols >= n))[0]
    if len(bad):
        b = int(bad[0])
        raise ValueError(
            f"entry {b} at (row, col)=({rows[b]}, {cols[b]}) is outside a {m}x{n} matrix"
        )
    keys = rows * n + cols
    uniq, inverse = np.unique(keys, return_inverse=True)
    summed = np.bincount(inverse, weights=vals, minlength=len(uniq))
    urows = uniq // n
    ucols = uniq % n
    pos = np.zeros(m + 1, dtype=np.int64)
    np.cumsum(np.bincount(urows, minlength=m), out=pos[1:])
    return CsrMatrix(m, n, pos, ucols, summed)


def transpose(A):
    """Transpose of ``A``, again in CSR form.

    Two-pass counting transpose: column counts give the new offsets, and a
    stable counting sort of the entries by column preserves row order, so
    the new rows come out sorted.
    """
    row_of = np.repeat(np.arange(A.m, dtype=np.int64), np.diff(A.pos))
    order = np.argsort(A.idx, kind="stable")
    pos_t = np.zeros(A.n + 1, dtype=np.int64)
    np.cumsum(np.bincount(A.idx, minlength=A.n), out=pos_t[1:])
    return CsrMatrix(A.n, A.m, pos_t, row_of[order], A.val[order])


def row_pattern(A, i, col_partition):
    """Sorted distinct column-part indices with a stored entry in row ``i``."""
    if col_partition.size != A.n:
        raise ValueError(
            f"column partition covers {col_partition.size} columns, matrix has {A.n}"
        )
    cols = A.row_cols(i)
    parts = col_partition.assignments()[cols] if len(cols) else cols
    return np.unique(parts)


def csr_memory_bits(A, s_index, s_value):
    """Bits needed to store ``A`` in CSR with the given index/value widths."""
    if s_index <= 0 or s_value <= 0:
        raise ValueError("index and value widths must be positive")
    nnz = A.nnz
    return (A.m + 1) * s_index + nnz * s_index + nnz * s_value
