"""Row partitioners: optimal dynamic programming, an exhaustive oracle,
and the strict / overlap / alternating heuristics.

All partitioners take a matrix in CSR form and return a contiguous
Partition of its rows. Column partitions are produced by running a row
partitioner on the transpose.
"""

import math

from .costs import evaluate, CostModel
from .sparse import Partition, transpose, trivial_partition

__all__ = [
    "optimal_partition",
    "brute_force_partition",
    "strict_partition",
    "overlap_partition",
    "alternating_partition",
]


def optimal_partition(A, col_partition, model, u_max):
    """Row partition minimizing ``model`` under a fixed column partition.

    Single backward pass over the rows. The running sums needed to price a
    candidate part are maintained incrementally: a length-L workspace
    remembers the most recent row containing each column part, which lets
    us record, per row, the change in each rank's column-factor sum as the
    candidate part grows downward. Runs in O(R * (u_max * m + nnz) + n)
    time and O(R * m + L) extra space.

    The per-column-part alpha term is a constant under a fixed column
    partition, so it is ignored here; ``evaluate`` includes it.
    """
    if u_max < 1:
        raise ValueError(f"u_max must be at least 1, got {u_max}")
    if u_max > model.u_max:
        raise ValueError(f"u_max {u_max} exceeds model table range {model.u_max}")
    if col_partition.size != A.n:
        raise ValueError(
            f"column partition covers {col_partition.size} columns, matrix has {A.n}"
        )
    widths = col_partition.widths()
    if len(widths) and int(widths.max()) > model.w_max:
        l = int(widths.argmax())
        raise ValueError(
            f"column part {l} has width {int(widths.max())} > model range {model.w_max}"
        )

    m = A.m
    rank = model.rank
    alpha_row = model.alpha_row
    beta_row = model.beta_row
    # column factor of each part, per rank
    col_factor = [[model.beta_col[r][w - 1] for w in widths.tolist()] for r in range(rank)]
    col_part = col_partition.assignments().tolist()
    pos = A.pos.tolist()
    idx = A.idx.tolist()

    best = [math.inf] * (m + 1)
    best[m] = 0
    next_split = [0] * (m + 1)
    delta = [[0] * (m + 1) for _ in range(rank)]
    last_row = [m] * col_partition.num_parts

    for i in range(m - 1, -1, -1):
        prev_l = -1
        for p in range(pos[i], pos[i + 1]):
            l = col_part[idx[p]]
            if l == prev_l:
                continue
            prev_l = l
            seen_at = last_row[l]
            for r in range(rank):
                f = col_factor[r][l]
                delta[r][i] += f
                delta[r][seen_at] -= f
            last_row[l] = i
        sums = [0] * rank
        for i_next in range(i + 1, min(i + u_max, m) + 1):
            u = i_next - i
            cost = alpha_row[u - 1]
            for r in range(rank):
                sums[r] += delta[r][i_next - 1]
                cost += sums[r] * beta_row[r][u - 1]
            total = cost + best[i_next]
            if total < best[i]:
                best[i] = total
                next_split[i] = i_next
    splits = [0]
    i = 0
    while i != m:
        i = next_split[i]
        splits.append(i)
    return Partition(splits)


def brute_force_partition(A, col_partition, model, u_max):
    """Exhaustive minimizer over all contiguous row partitions.

    Test oracle only: enumeration is exponential, so matrices beyond 20
    rows are rejected. Ties go to the lexicographically smallest split
    sequence (candidates are generated in that order).
    """
    if A.m > 20:
        raise ValueError(f"brute force limited to 20 rows, got {A.m}")
    if u_max < 1:
        raise ValueError(f"u_max must be at least 1, got {u_max}")

    m = A.m
    best_obj = None
    best_splits = None

    def extend(splits):
        nonlocal best_obj, best_splits
        i = splits[-1]
        if i == m:
            obj = evaluate(model, A, Partition(splits), col_partition)
            if best_obj is None or obj < best_obj:
                best_obj = obj
                best_splits = list(splits)
            return
        for u in range(1, min(u_max, m - i) + 1):
            splits.append(i + u)
            extend(splits)
            splits.pop()

    extend([0])
    return Partition(best_splits)


def strict_partition(A, u_max=None):
    """Group maximal runs of adjacent rows with identical column patterns.

    Patterns are compared by coiterating the rows' sorted index slices.
    The classic heuristic has no height cap; pass ``u_max`` to impose one.
    """
    splits = [0]
    if A.m == 0:
        return Partition(splits)
    run = 1
    for i in range(1, A.m):
        prev = A.row_cols(i - 1)
        cur = A.row_cols(i)
        same = len(prev) == len(cur) and bool((prev == cur).all())
        if same and (u_max is None or run < u_max):
            run += 1
        else:
            splits.append(i)
            run = 1
    splits.append(A.m)
    return Partition(splits)


def overlap_partition(A, rho, u_max):
    """Greedy top-to-bottom grouping of rows with overlapping patterns.

    Row i' joins the current group when the group is not full and
    ``|v_g & v_i'| >= rho * min(|v_g|, |v_i'|)``, where g is the group's
    first row. One length-n workspace stamps v_g with the leader's row
    number, so each stored index is read at most twice.
    """
    if not 0 < rho <= 1:
        raise ValueError(f"rho must be in (0, 1], got {rho}")
    if u_max < 1:
        raise ValueError(f"u_max must be at least 1, got {u_max}")
    if A.m == 0:
        return Partition([0])

    idx = A.idx.tolist()
    pos = A.pos.tolist()
    stamp = [-1] * A.n
    splits = [0]
    leader = 0
    for p in range(pos[0], pos[1]):
        stamp[idx[p]] = 0
    leader_len = pos[1] - pos[0]
    for i in range(1, A.m):
        lo, hi = pos[i], pos[i + 1]
        overlap = 0
        for p in range(lo, hi):
            if stamp[idx[p]] == leader:
                overlap += 1
        if i - leader == u_max or overlap < rho * min(leader_len, hi - lo):
            splits.append(i)
            leader = i
            leader_len = hi - lo
            for p in range(lo, hi):
                stamp[idx[p]] = i
    splits.append(A.m)
    return Partition(splits)


def _swap_axes(model):
    return CostModel(
        alpha_row=model.alpha_col,
        alpha_col=model.alpha_row,
        beta_row=model.beta_col,
        beta_col=model.beta_row,
    )


def alternating_partition(A, model, u_max, w_max, rounds=3, objective_trace=None):
    """Alternate optimal row and column partitioning for the 2D problem.

    Starts from the trivial column partition and runs ``rounds``
    half-steps, rows first (the default 3 gives rows, columns, rows).
    Each half-step is globally optimal with the other axis held fixed and
    the incumbent is always feasible, so the objective never increases.
    Pass a list as ``objective_trace`` to record it after each half-step.
    """
    if rounds < 1:
        raise ValueError(f"rounds must be at least 1, got {rounds}")
    if w_max > model.w_max or u_max > model.u_max:
        raise ValueError("u_max/w_max exceed the model's table ranges")
    At = transpose(A)
    swapped = _swap_axes(model)
    row_part = trivial_partition(A.m)
    col_part = trivial_partition(A.n)
    for step in range(rounds):
        if step % 2 == 0:
            row_part = optimal_partition(A, col_part, model, u_max)
        else:
            col_part = optimal_partition(At, row_part, swapped, w_max)
        if objective_trace is not None:
            objective_trace.append(evaluate(model, A, row_part, col_part))
    return row_part, col_part
