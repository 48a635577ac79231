"""Blocking cost models: block/entry counts, storage formulas, and the
generic separable partition cost.

A cost model scores a pair of contiguous partitions (rows, columns) as

    sum_k alpha_row[u_k] + sum_l alpha_col[w_l]
        + sum_k sum_{l in pattern(k)} sum_r beta_row[r][u_k] * beta_col[r][w_l]

where u_k and w_l are part heights/widths and pattern(k) is the set of
column parts holding a stored entry in row part k. The number of terms R
is the model's rank. Counting and storage costs are exact integers;
measured (fitted) costs are floats.
"""

from dataclasses import dataclass

from .sparse import trivial_partition

__all__ = [
    "CostModel",
    "block_count",
    "value_count",
    "vbr_memory_bits",
    "onedvbr_memory_bits",
    "evaluate",
    "model_block_count",
    "model_memory_1dvbr",
    "model_memory_vbr",
    "cost_model_to_csv",
    "cost_model_from_csv",
]


@dataclass(frozen=True)
class CostModel:
    """Rank-R separable partition cost.

    ``alpha_row[u - 1]`` is the per-part cost of a row part of height u,
    for u in 1..u_max; likewise ``alpha_col`` for column parts up to
    w_max. ``beta_row[r][u - 1]`` and ``beta_col[r][w - 1]`` are the
    factors whose products, summed over r, give the per-block cost.
    """

    alpha_row: tuple
    alpha_col: tuple
    beta_row: tuple
    beta_col: tuple

    def __post_init__(self):
        object.__setattr__(self, "alpha_row", tuple(self.alpha_row))
        object.__setattr__(self, "alpha_col", tuple(self.alpha_col))
        object.__setattr__(self, "beta_row", tuple(tuple(t) for t in self.beta_row))
        object.__setattr__(self, "beta_col", tuple(tuple(t) for t in self.beta_col))
        if not self.alpha_row or not self.alpha_col:
            raise ValueError("alpha tables must cover at least size 1")
        if len(self.beta_row) != len(self.beta_col) or not self.beta_row:
            raise ValueError("beta_row and beta_col must list the same rank >= 1")
        for t in self.beta_row:
            if len(t) != self.u_max:
                raise ValueError("beta_row tables must match alpha_row range")
        for t in self.beta_col:
            if len(t) != self.w_max:
                raise ValueError("beta_col tables must match alpha_col range")

    @property
    def rank(self):
        return len(self.beta_row)

    @property
    def u_max(self):
        return len(self.alpha_row)

    @property
    def w_max(self):
        return len(self.alpha_col)

    @property
    def exact(self):
        """True when every table entry is an integer (exact argmin math)."""
        tables = (self.alpha_row, self.alpha_col) + self.beta_row + self.beta_col
        return all(isinstance(v, int) for t in tables for v in t)


def _check_partitions(A, rows, cols):
    if rows.size != A.m:
        raise ValueError(f"row partition covers {rows.size} rows, matrix has {A.m}")
    if cols.size != A.n:
        raise ValueError(f"column partition covers {cols.size} columns, matrix has {A.n}")


def _blocked_counts(A, rows, cols):
    """(number of nonzero blocks, number of stored block entries).

    Walks each block row once, marking column parts in a last-seen
    workspace of length L, so the work is O(nnz + blocks).
    """
    pos = A.pos.tolist()
    idx = A.idx.tolist()
    spl = rows.spl.tolist()
    col_part = cols.assignments().tolist()
    col_width = cols.widths().tolist()
    last_seen = [-1] * cols.num_parts
    n_index = 0
    n_value = 0
    for k in range(rows.num_parts):
        r0, r1 = spl[k], spl[k + 1]
        u = r1 - r0
        width_sum = 0
        blocks = 0
        for p in range(pos[r0], pos[r1]):
            l = col_part[idx[p]]
            if last_seen[l] != k:
                last_seen[l] = k
                blocks += 1
                width_sum += col_width[l]
        n_index += blocks
        n_value += u * width_sum
    return n_index, n_value


def block_count(A, rows, cols):
    """Number of nonzero blocks induced by the two partitions."""
    _check_partitions(A, rows, cols)
    return _blocked_counts(A, rows, cols)[0]


def value_count(A, rows, cols):
    """Number of entries covered by all nonzero blocks (stored zeros included)."""
    _check_partitions(A, rows, cols)
    return _blocked_counts(A, rows, cols)[1]


def vbr_memory_bits(A, rows, cols, s_index, s_value):
    """Bits used by the VBR representation of ``A`` under the partitions."""
    _check_partitions(A, rows, cols)
    n_index, n_value = _blocked_counts(A, rows, cols)
    k = rows.num_parts
    l = cols.num_parts
    return (3 * (k + 1) + (l + 1) + n_index) * s_index + n_value * s_value


def onedvbr_memory_bits(A, rows, s_index, s_value):
    """Bits used by the 1D-VBR representation (trivial column partition)."""
    n_index, n_value = _blocked_counts(A, rows, trivial_partition(A.n))
    k = rows.num_parts
    return (3 * (k + 1) + n_index) * s_index + n_value * s_value


def evaluate(model, A, rows, cols):
    """Exact cost of (rows, cols) under ``model``.

    Integer tables produce an integer result; float tables a float.
    Part sizes beyond the model's table range are rejected.
    """
    _check_partitions(A, rows, cols)
    u_list = rows.widths().tolist()
    w_list = cols.widths().tolist()
    for k, u in enumerate(u_list):
        if u > model.u_max:
            raise ValueError(f"row part {k} has height {u} > model range {model.u_max}")
    for l, w in enumerate(w_list):
        if w > model.w_max:
            raise ValueError(f"column part {l} has width {w} > model range {model.w_max}")

    total = sum(model.alpha_row[u - 1] for u in u_list)
    total += sum(model.alpha_col[w - 1] for w in w_list)

    rank = model.rank
    beta_row = model.beta_row
    beta_col = [[beta_col_r[w - 1] for w in w_list] for beta_col_r in model.beta_col]
    pos = A.pos.tolist()
    idx = A.idx.tolist()
    spl = rows.spl.tolist()
    col_part = cols.assignments().tolist()
    last_seen = [-1] * cols.num_parts
    for k in range(rows.num_parts):
        u = u_list[k]
        sums = [0] * rank
        for p in range(pos[spl[k]], pos[spl[k + 1]]):
            l = col_part[idx[p]]
            if last_seen[l] != k:
                last_seen[l] = k
                for r in range(rank):
                    sums[r] += beta_col[r][l]
        for r in range(rank):
            total += beta_row[r][u - 1] * sums[r]
    return total


def model_block_count(u_max, w_max):
    """Rank-1 model whose value is exactly the nonzero block count."""
    if u_max < 1 or w_max < 1:
        raise ValueError("table sizes must be positive")
    return CostModel(
        alpha_row=(0,) * u_max,
        alpha_col=(0,) * w_max,
        beta_row=((1,) * u_max,),
        beta_col=((1,) * w_max,),
    )


def model_memory_1dvbr(s_index, s_value, u_max):
    """Rank-2 model of 1D-VBR storage bits.

    Each row part pays 3*s_index (its share of the three offset arrays),
    each block s_index, and each stored entry s_value. The value differs
    from the true bit count by the partition-independent constant
    3*s_index, so minimizers coincide.
    """
    if u_max < 1:
        raise ValueError("table sizes must be positive")
    if s_index <= 0 or s_value <= 0:
        raise ValueError("index and value widths must be positive")
    return CostModel(
        alpha_row=(3 * s_index,) * u_max,
        alpha_col=(0,),
        beta_row=((1,) * u_max, tuple(u * s_value for u in range(1, u_max + 1))),
        beta_col=((s_index,), (1,)),
    )


def model_memory_vbr(s_index, s_value, u_max, w_max):
    """Rank-2 model of VBR storage bits (constant offset 4*s_index)."""
    if u_max < 1 or w_max < 1:
        raise ValueError("table sizes must be positive")
    if s_index <= 0 or s_value <= 0:
        raise ValueError("index and value widths must be positive")
    return CostModel(
        alpha_row=(3 * s_index,) * u_max,
        alpha_col=(s_index,) * w_max,
        beta_row=((1,) * u_max, tuple(u * s_value for u in range(1, u_max + 1))),
        beta_col=((s_index,) * w_max, tuple(range(1, w_max + 1))),
    )


def _render(v):
    # exact decimal text: ints stay ints, floats use shortest round-trip
    return repr(int(v)) if isinstance(v, int) else repr(float(v))


def _parse(tok):
    try:
        return int(tok)
    except ValueError:
        return float(tok)


def cost_model_to_csv(model):
    lines = [
        "alpha_row," + ",".join(_render(v) for v in model.alpha_row),
        "alpha_col," + ",".join(_render(v) for v in model.alpha_col),
    ]
    for r in range(model.rank):
        lines.append(f"beta_row r={r + 1}," + ",".join(_render(v) for v in model.beta_row[r]))
        lines.append(f"beta_col r={r + 1}," + ",".join(_render(v) for v in model.beta_col[r]))
    return "\n".join(lines) + "\n"


def cost_model_from_csv(text):
    rows = {}
    order = []
    for line in text.splitlines():
        if not line.strip():
            continue
        label, _, rest = line.partition(",")
        rows[label.strip()] = tuple(_parse(t) for t in rest.split(","))
        order.append(label.strip())
    ranks = sorted(int(label.split("r=")[1]) for label in order if label.startswith("beta_row"))
    if "alpha_row" not in rows or "alpha_col" not in rows or not ranks:
        raise ValueError("cost model CSV must define alpha_row, alpha_col, and beta tables")
    return CostModel(
        alpha_row=rows["alpha_row"],
        alpha_col=rows["alpha_col"],
        beta_row=tuple(rows[f"beta_row r={r}"] for r in ranks),
        beta_col=tuple(rows[f"beta_col r={r}"] for r in ranks),
    )
