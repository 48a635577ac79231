"""Matrix Market coordinate file reader and writer.

Supports real, integer, and pattern fields with general or symmetric
symmetry. Indices are 1-based on disk and 0-based in memory; duplicate
coordinates are summed on read.
"""

from .sparse import build_csr

__all__ = ["read_matrix_market", "write_matrix_market", "parse_matrix_market"]


def parse_matrix_market(text, name="<string>"):
    lines = text.splitlines()
    if not lines:
        raise ValueError(f"{name}: empty file")
    header = lines[0].strip()
    parts = header.split()
    if len(parts) != 5 or parts[0] != "%%MatrixMarket":
        raise ValueError(f"{name}: unsupported header {header!r}")
    _, obj, layout, field, symmetry = (p.lower() for p in parts)
    if obj != "matrix" or layout != "coordinate":
        raise ValueError(f"{name}: unsupported header {header!r}")
    if field not in ("real", "integer", "pattern"):
        raise ValueError(f"{name}: unsupported header {header!r}")
    if symmetry not in ("general", "symmetric"):
        raise ValueError(f"{name}: unsupported header {header!r}")

    want = 2 if field == "pattern" else 3
    size = None
    entries = []
    declared = 0
    file_entries = 0
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        tokens = line.split()
        if size is None:
            if len(tokens) != 3:
                raise ValueError(f"{name}:{lineno}: malformed size line {line!r}")
            try:
                m, n, declared = (int(t) for t in tokens)
            except ValueError:
                raise ValueError(f"{name}:{lineno}: malformed size line {line!r}") from None
            size = (m, n)
            continue
        if len(tokens) != want:
            raise ValueError(f"{name}:{lineno}: expected {want} fields, got {line!r}")
        try:
            i = int(tokens[0]) - 1
            j = int(tokens[1]) - 1
            v = 1.0 if field == "pattern" else float(tokens[2])
        except ValueError:
            raise ValueError(f"{name}:{lineno}: malformed entry {line!r}") from None
        entries.append((i, j, v))
        file_entries += 1
        if symmetry == "symmetric" and i != j:
            entries.append((j, i, v))

    if size is None:
        raise ValueError(f"{name}: missing size line")
    if file_entries != declared:
        raise ValueError(f"{name}: size line declares {declared} entries, found {file_entries}")
    return build_csr(size[0], size[1], entries)


def read_matrix_market(path):
    """Read a coordinate Matrix Market file as a CSR matrix."""
    with open(path, "r", encoding="ascii") as fh:
        return parse_matrix_market(fh.read(), name=str(path))


def write_matrix_market(path, A, comment=None):
    """Write ``A`` as a general real coordinate Matrix Market file.

    Values are rendered with shortest round-trip precision, so a
    read-back reproduces the matrix exactly.
    """
    with open(path, "w", encoding="ascii") as fh:
        fh.write("%%MatrixMarket matrix coordinate real general\n")
        if comment:
            fh.write(f"% {comment}\n")
        fh.write(f"{A.m} {A.n} {A.nnz}\n")
        for i in range(A.m):
            for q in range(A.pos[i], A.pos[i + 1]):
                fh.write(f"{i + 1} {int(A.idx[q]) + 1} {float(A.val[q])!r}\n")
