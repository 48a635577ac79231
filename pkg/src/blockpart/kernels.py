"""Sparse matrix-vector multiply kernels for CSR, VBR, and 1D-VBR.

The blocked kernels walk the value stream sequentially and load each
input-vector element once per block column, accumulating block rows top
down and blocks left to right. Pass a dict as ``counter`` to tally the
multiply-add count actually executed (key ``"madds"``).
"""

import numpy as np

__all__ = ["spmv_csr", "spmv_vbr", "spmv_1dvbr"]


def spmv_csr(A, x):
    """Reference y = A @ x with row-major accumulation order."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (A.n,):
        raise ValueError(f"x has shape {x.shape}, expected ({A.n},)")
    row_of = np.repeat(np.arange(A.m, dtype=np.int64), np.diff(A.pos))
    return np.bincount(row_of, weights=A.val * x[A.idx], minlength=A.m)


def spmv_vbr(y, B, x, counter=None):
    """Add B @ x into y in place and return y."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (B.n,):
        raise ValueError(f"x has shape {x.shape}, expected ({B.n},)")
    if y.shape != (B.m,):
        raise ValueError(f"y has shape {y.shape}, expected ({B.m},)")
    spl_rows = B.spl_rows
    spl_cols = B.spl_cols
    pos = B.pos
    idx = B.idx
    val = B.val
    madds = 0
    for k in range(len(spl_rows) - 1):
        r0, r1 = int(spl_rows[k]), int(spl_rows[k + 1])
        u = r1 - r0
        p = int(B.ofs[k])
        acc = y[r0:r1]
        for q in range(int(pos[k]), int(pos[k + 1])):
            l = int(idx[q])
            c0, c1 = int(spl_cols[l]), int(spl_cols[l + 1])
            w = c1 - c0
            # column-major block: column j is u consecutive values
            block = val[p:p + u * w].reshape(w, u)
            acc += block.T @ x[c0:c1]
            p += u * w
            madds += u * w
    if counter is not None:
        counter["madds"] = counter.get("madds", 0) + madds
    return y


def spmv_1dvbr(y, B, x, counter=None):
    """Add B @ x into y in place and return y.

    All blocks in a block row share height u and a constant stride, so
    the whole block row is one gather and one small matmul.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (B.n,):
        raise ValueError(f"x has shape {x.shape}, expected ({B.n},)")
    if y.shape != (B.m,):
        raise ValueError(f"y has shape {y.shape}, expected ({B.m},)")
    spl_rows = B.spl_rows
    madds = 0
    for k in range(len(spl_rows) - 1):
        q0, q1 = int(B.pos[k]), int(B.pos[k + 1])
        if q0 == q1:
            continue
        r0, r1 = int(spl_rows[k]), int(spl_rows[k + 1])
        u = r1 - r0
        blocks = B.val[int(B.ofs[k]):int(B.ofs[k + 1])].reshape(q1 - q0, u)
        y[r0:r1] += blocks.T @ x[B.idx[q0:q1]]
        madds += u * (q1 - q0)
    if counter is not None:
        counter["madds"] = counter.get("madds", 0) + madds
    return y
