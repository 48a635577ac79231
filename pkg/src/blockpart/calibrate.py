"""Empirical cost-model calibration and the amortization metric.

The runtime of a blocked multiply is modeled as an affine function of the
partition shape: a per-row-part cost, a per-column-part cost, and a
per-block cost for each block size. Calibration times synthetic
block-grid matrices in four shapes per block size, fits the coefficients
by least squares weighted to minimize relative error, and compresses the
block-cost table to a low rank with a small Jacobi SVD.
"""

import csv
import io
import math
import time
from dataclasses import dataclass

import numpy as np

from .costs import CostModel
from .formats import to_vbr
from .kernels import spmv_vbr
from .sparse import build_csr, Partition

__all__ = [
    "TimingSample",
    "VARIANTS",
    "synth_block_matrix",
    "run_calibration",
    "fit_cost_model",
    "critical_point",
    "jacobi_svd",
    "time_min",
    "samples_to_csv",
    "samples_from_csv",
    "default_clock",
]

VARIANTS = ("base", "double-blocks", "double-rows", "double-cols")


@dataclass(frozen=True)
class TimingSample:
    """One timed multiply of a synthetic u x w block-grid matrix."""

    u: int
    w: int
    m_rows: int
    blocks_per_row: int
    seconds: float
    variant: str

    def __post_init__(self):
        if self.seconds <= 0:
            raise ValueError("measured time must be positive")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")


def default_clock():
    """Monotonic nanoseconds; the clock is injectable everywhere."""
    return time.perf_counter_ns()


def time_min(fn, trials, clock=None, warmup=1, time_budget=None):
    """Minimum wall time of ``fn`` over ``trials`` runs after warm-up.

    ``time_budget`` (seconds) caps total measurement time; at least one
    timed run always happens.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    clock = clock or default_clock
    for _ in range(warmup):
        fn()
    best = math.inf
    spent = 0.0
    for _ in range(trials):
        t0 = clock()
        fn()
        dt = (clock() - t0) / 1e9
        best = min(best, dt)
        spent += dt
        if time_budget is not None and spent >= time_budget:
            break
    return best


def _grid_csr(u, w, n_block_rows, n_block_cols, blocks_per_row, rng):
    if blocks_per_row > n_block_cols:
        raise ValueError(
            f"cannot place {blocks_per_row} distinct blocks in {n_block_cols} block columns"
        )
    entries = []
    for k in range(n_block_rows):
        picks = np.sort(rng.choice(n_block_cols, size=blocks_per_row, replace=False))
        for l in picks:
            for di in range(u):
                for dj in range(w):
                    entries.append((k * u + di, int(l) * w + dj, rng.uniform(0.1, 1.0)))
    A = build_csr(n_block_rows * u, n_block_cols * w, entries)
    rows = Partition(np.arange(n_block_rows + 1) * u)
    cols = Partition(np.arange(n_block_cols + 1) * w)
    return A, rows, cols


def _variant_shape(u, w, blocks_per_row, min_bytes, variant):
    """(block rows, block columns, blocks per row) of one measurement.

    The base grid is the smallest square-ish one whose value storage
    reaches ``min_bytes``; its column count leaves room for the doubled
    block count. The other variants double one quantity each, so the
    shape is recoverable from a sample's fields (see fit_cost_model).
    """
    k0 = max(1, math.ceil(min_bytes / (8 * u * w * blocks_per_row)))
    l0 = max(math.ceil(k0 * u / w), 2 * blocks_per_row)
    if variant == "base":
        return k0, l0, blocks_per_row
    if variant == "double-blocks":
        return k0, l0, 2 * blocks_per_row
    if variant == "double-rows":
        return 2 * k0, l0, blocks_per_row
    if variant == "double-cols":
        return k0, 2 * l0, blocks_per_row
    raise ValueError(f"unknown variant {variant!r}")


def synth_block_matrix(u, w, blocks_per_row=8, min_bytes=256 * 1024, seed=0):
    """Random block-grid matrix with aligned dense u x w blocks.

    Every block row holds ``blocks_per_row`` blocks at distinct random
    block columns; the grid is sized so the dense value storage reaches
    ``min_bytes``. Deterministic for a fixed seed. Returns the matrix and
    its (row, column) partition pair.
    """
    if u < 1 or w < 1 or blocks_per_row < 1:
        raise ValueError("block shape parameters must be positive")
    k, l, b = _variant_shape(u, w, blocks_per_row, min_bytes, "base")
    return _grid_csr(u, w, k, l, b, np.random.default_rng(seed))


def run_calibration(u_max, w_max, blocks_per_row=8, min_bytes=256 * 1024,
                    trials=3, warmup=1, clock=None, seed=0, time_budget=None):
    """Time the four measurement variants for every block size.

    Runs strictly sequentially. Returns the samples to feed
    ``fit_cost_model``.
    """
    rng = np.random.default_rng(seed)
    samples = []
    for u in range(1, u_max + 1):
        for w in range(1, w_max + 1):
            for variant in VARIANTS:
                k, l, b = _variant_shape(u, w, blocks_per_row, min_bytes, variant)
                A, rows, cols = _grid_csr(u, w, k, l, b, rng)
                B = to_vbr(A, rows, cols)
                x = rng.standard_normal(A.n)
                y = np.zeros(A.m)
                seconds = time_min(lambda: spmv_vbr(y, B, x), trials,
                                   clock=clock, warmup=warmup, time_budget=time_budget)
                samples.append(TimingSample(u, w, A.m, b, seconds, variant))
    return samples


def _sample_design(sample):
    """(K, L, blocks) implied by a sample under the measurement design."""
    k = sample.m_rows // sample.u
    base_b = sample.blocks_per_row
    k0 = k
    if sample.variant == "double-blocks":
        base_b //= 2
    if sample.variant == "double-rows":
        k0 //= 2
    l0 = max(math.ceil(k0 * sample.u / sample.w), 2 * base_b)
    l = 2 * l0 if sample.variant == "double-cols" else l0
    return k, l, k * sample.blocks_per_row


def fit_cost_model(samples, rank):
    """Fit the affine runtime model and truncate its block table to ``rank``.

    Every sample contributes one equation

        seconds = K * alpha_row[u] + L * alpha_col[w] + blocks * beta[u, w]

    with K, L, and the block count reconstructed by ``_sample_design``.
    Each equation is divided by its measured time so the least-squares fit
    minimizes relative error. The fitted beta table is made monotone by a
    running maximum along both axes, then factored by a one-sided Jacobi
    SVD and truncated to the requested rank.

    A design missing any (u, w, variant) cell is rejected, naming the
    missing cells.
    """
    if not samples:
        raise ValueError("no samples")
    u_max = max(s.u for s in samples)
    w_max = max(s.w for s in samples)
    have = {(s.u, s.w, s.variant) for s in samples}
    missing = [
        (u, w, v)
        for u in range(1, u_max + 1)
        for w in range(1, w_max + 1)
        for v in VARIANTS
        if (u, w, v) not in have
    ]
    if missing:
        raise ValueError(f"sample design incomplete; missing cells: {missing}")
    if not 1 <= rank <= min(u_max, w_max):
        raise ValueError(f"rank must be in 1..{min(u_max, w_max)}, got {rank}")

    n_unknowns = u_max + w_max + u_max * w_max
    design = np.zeros((len(samples), n_unknowns))
    target = np.zeros(len(samples))
    for row, s in enumerate(samples):
        k, l, blocks = _sample_design(s)
        design[row, s.u - 1] = k / s.seconds
        design[row, u_max + s.w - 1] = l / s.seconds
        design[row, u_max + w_max + (s.u - 1) * w_max + (s.w - 1)] = blocks / s.seconds
        target[row] = 1.0
    coef, *_ = np.linalg.lstsq(design, target, rcond=None)

    alpha_row = coef[:u_max]
    alpha_col = coef[u_max:u_max + w_max]
    beta = coef[u_max + w_max:].reshape(u_max, w_max)
    beta = np.maximum.accumulate(np.maximum.accumulate(beta, axis=0), axis=1)

    left, sing, right = jacobi_svd(beta)
    beta_row = tuple(tuple(float(v) for v in left[:, r] * sing[r]) for r in range(rank))
    beta_col = tuple(tuple(float(v) for v in right[:, r]) for r in range(rank))
    return CostModel(
        alpha_row=tuple(float(v) for v in alpha_row),
        alpha_col=tuple(float(v) for v in alpha_col),
        beta_row=beta_row,
        beta_col=beta_col,
    )


def jacobi_svd(M, tol=1e-12, max_sweeps=60):
    """One-sided Jacobi SVD of a small dense matrix.

    Returns (U, s, V) with M = U @ diag(s) @ V.T and s sorted descending.
    Columns are rotated pairwise until every off-diagonal inner product is
    below ``tol`` relative to the column norms.
    """
    M = np.asarray(M, dtype=np.float64)
    transposed = M.shape[0] < M.shape[1]
    A = (M.T if transposed else M).copy()
    n = A.shape[1]
    V = np.eye(n)
    for _ in range(max_sweeps):
        converged = True
        for p in range(n - 1):
            for q in range(p + 1, n):
                app = float(A[:, p] @ A[:, p])
                aqq = float(A[:, q] @ A[:, q])
                apq = float(A[:, p] @ A[:, q])
                if abs(apq) <= tol * math.sqrt(app * aqq) or apq == 0.0:
                    continue
                converged = False
                diff = aqq - app
                if abs(diff) > 1e150 * abs(apq):
                    t = apq / diff  # tiny rotation; tau itself would overflow
                else:
                    tau = diff / (2.0 * apq)
                    t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                rot = np.array([[c, s], [-s, c]])
                A[:, [p, q]] = A[:, [p, q]] @ rot
                V[:, [p, q]] = V[:, [p, q]] @ rot
        if converged:
            break
    sing = np.linalg.norm(A, axis=0)
    U = np.zeros_like(A)
    nonzero = sing > 0
    U[:, nonzero] = A[:, nonzero] / sing[nonzero]
    order = np.argsort(-sing)
    U, sing, V = U[:, order], sing[order], V[:, order]
    if transposed:
        return V, sing, U
    return U, sing, V


def critical_point(t_partition, t_convert, t_blocked_multiply, t_csr_multiply):
    """Multiplications needed before partitioning pays for itself.

    Infinite when the blocked multiply is not faster than CSR.
    """
    for name, t in (("partition", t_partition), ("convert", t_convert),
                    ("blocked multiply", t_blocked_multiply), ("csr multiply", t_csr_multiply)):
        if t < 0:
            raise ValueError(f"{name} time must be non-negative, got {t}")
    if t_blocked_multiply >= t_csr_multiply:
        return math.inf
    return (t_partition + t_convert) / (t_csr_multiply - t_blocked_multiply)


_SAMPLE_FIELDS = ("u", "w", "m_rows", "blocks_per_row", "variant", "seconds")


def samples_to_csv(samples):
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(_SAMPLE_FIELDS)
    for s in samples:
        writer.writerow([s.u, s.w, s.m_rows, s.blocks_per_row, s.variant, repr(s.seconds)])
    return out.getvalue()


def samples_from_csv(text):
    reader = csv.DictReader(io.StringIO(text))
    return [
        TimingSample(
            u=int(row["u"]),
            w=int(row["w"]),
            m_rows=int(row["m_rows"]),
            blocks_per_row=int(row["blocks_per_row"]),
            seconds=float(row["seconds"]),
            variant=row["variant"],
        )
        for row in reader
    ]
