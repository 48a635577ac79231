#!/usr/bin/env python3
"""Tour of the blocked formats on a small worked example.

Groups similar adjacent rows of an 8x9 matrix, converts it to 1D-VBR and
VBR, and compares the storage accounting of all three formats.
"""
from blockpart import (
    Partition,
    build_csr,
    csr_memory_bits,
    onedvbr_get,
    onedvbr_memory_bits,
    stored_counts,
    strict_partition,
    to_1dvbr,
    to_vbr,
    trivial_partition,
    vbr_memory_bits,
)

# A small matrix with imperfect block structure: rows 1-3 share most of
# their pattern, rows 4-5 are identical, rows 6-7 nearly so.
rows = [
    [2, 3, 4, 8],
    [0, 1, 3, 4, 5, 7],
    [0, 5],
    [0, 1, 3, 4, 5],
    [2, 7],
    [2, 7],
    [1, 4, 5, 6, 8],
    [0, 1, 4, 5, 6, 8],
]
A = build_csr(8, 9, [(i, j, 1.0) for i, cols in enumerate(rows) for j in cols])
print("matrix:", A)
print(A.to_dense().astype(int))

# The strict partitioner only groups identical adjacent rows.
strict = strict_partition(A)
print("\nstrict row splits:", strict.spl.tolist())

# A hand-chosen coarser grouping stores fewer block indices but must fill
# the holes inside each block with explicit zeros.
grouped = Partition([0, 1, 4, 6, 8])
B = to_1dvbr(A, grouped)
blocks, values = stored_counts(B)
print(f"\n1D-VBR under {grouped.spl.tolist()}: {blocks} blocks, {values} stored values")
print("  block row 1 columns:", B.idx[B.pos[1]:B.pos[2]].tolist())
print("  fill-in zeros:", values - A.nnz)
print("  entry (2, 0) via block lookup:", onedvbr_get(B, 2, 0))

# Grouping columns as well produces VBR. Here we also pair the columns.
col_pairs = Partition([0, 2, 4, 6, 8, 9])
V = to_vbr(A, grouped, col_pairs)
print(f"\nVBR with paired columns: {len(V.idx)} blocks, {len(V.val)} stored values")

# Storage accounting at 64-bit indices and values.
print("\nbits to store A:")
print("  CSR:    ", csr_memory_bits(A, 64, 64))
print("  1D-VBR: ", onedvbr_memory_bits(A, grouped, 64, 64))
print("  VBR:    ", vbr_memory_bits(A, grouped, col_pairs, 64, 64))
print("  (1D-VBR trivial rows:", onedvbr_memory_bits(A, trivial_partition(8), 64, 64), ")")
