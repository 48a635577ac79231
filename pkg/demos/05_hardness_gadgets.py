#!/usr/bin/env python3
"""The hardness gadgets, executably.

Two-dimensional aligned blocking is NP-hard: a graph's maximum cut hides
inside the optimal partition of a gadget-tiled matrix. This demo builds
the gadgets and checks their bookkeeping by counting actual blocks.
"""
from blockpart import (
    GadgetParams,
    Partition,
    block_count,
    build_count_gadget,
    build_gadget,
    build_mini_pair,
    build_reduction_matrix,
    gadget_case_cost,
    symmetric_embed,
    value_count,
)
from blockpart.gadgets import (
    HAPPY_CASES,
    SAD_CASES,
    MINI_PAIR_COL_SPLITS,
    case_col_partition,
    case_row_partition,
    mini_pair_row_partition,
)

s = 1
p = GadgetParams(s)
print(f"index weight s={s}: filler width {p.mu1}, pattern repeats {p.mu2}/{p.mu3}, "
      f"gadget side {p.mu}")

G = build_gadget("B1", p)
print("gadget B1:", G)

# The partition cases split only the first three rows/columns; pairing
# them (the "happy" cases) is strictly cheaper than any alternative.
print("\ncase costs (value count + s * block count):")
for case in HAPPY_CASES[:1] + SAD_CASES[:3]:
    rows, cols = case_row_partition(case, p), case_col_partition(case, p)
    nv, ni = value_count(G, rows, cols), block_count(G, rows, cols)
    assert (nv, ni) == gadget_case_cost("B1", case, p)
    kind = "happy" if case in HAPPY_CASES else "sad"
    print(f"  {kind:5s} {str(case):32s} -> {nv} + {s}*{ni} = {nv + s * ni}")

# The 6x3 mini pair shows why cuts matter: opposite cut sides admit a
# cheaper column grouping.
M = build_mini_pair("V1", "V2")
for sides in (("V1", "V1"), ("V1", "V2")):
    rows = mini_pair_row_partition(*sides)
    cost = min(value_count(M, rows, Partition(spl)) + s * block_count(M, rows, Partition(spl))
               for spl in MINI_PAIR_COL_SPLITS)
    print(f"mini pair, cut sides {sides}: cost {cost}")

# Pure block-count version: isolating a corner zero saves a block.
C = build_count_gadget("B1", 2, 2)
iso = (Partition([0, 1, 3, 4, 5]), Partition([0, 2, 3, 4, 5]))
non = (Partition([0, 1, 3, 4, 5]), Partition([0, 1, 3, 4, 5]))
print("\ncount gadget blocks: isolating split", block_count(C, *iso),
      "| non-isolating", block_count(C, *non))

# Full reduction for a 4-vertex, 4-edge graph, plus the symmetric
# embedding used when rows and columns must share one partition.
edges = [(0, 1), (0, 2), (0, 3), (1, 2)]
A = build_reduction_matrix(4, edges, p)
print("\nreduction matrix for K4 minus an edge:", A)
S = symmetric_embed(A)
print("symmetric embedding:", S, "(stored entries doubled:", S.nnz == 2 * A.nnz, ")")
