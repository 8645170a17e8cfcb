"""Read and write parity-check matrices.

Plain-text format::

    rows cols field          # field is 2 or 4
    1 0 w w2                 # one matrix row per line
    ...

GF(4) entries are written ``0``, ``1``, ``w``, ``w2``. Blank lines and text
after ``#`` are ignored.

alist format (binary matrices only; MacKay's sparse interchange format)::

    n m
    max_col_degree max_row_degree
    <n column degrees>
    <m row degrees>
    <n lines: 1-based row indices of each column, zero padded>
    <m lines: 1-based column indices of each row, zero padded>
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

import numpy as np

from . import gf
from .exceptions import ParseError


def _lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            out.append((no, tokens))
    return out


def _ints(tokens: list[str], line: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", line) from None


def parse_plain(text: str) -> tuple[np.ndarray, int]:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input", 1)
    no, head = lines[0]
    if len(head) != 3:
        raise ParseError("header must be 'rows cols field'", no)
    rows, cols, field = _ints(head, no)
    if field not in (2, 4):
        raise ParseError(f"field must be 2 or 4, got {field}", no)
    body = lines[1:]
    if len(body) != rows:
        where = body[rows][0] if len(body) > rows else (body[-1][0] + 1 if body else no + 1)
        raise ParseError(f"expected {rows} matrix rows, found {len(body)}", where)
    M = np.zeros((rows, cols), dtype=np.uint8)
    for i, (lno, tokens) in enumerate(body):
        if len(tokens) != cols:
            raise ParseError(f"expected {cols} entries, found {len(tokens)}", lno)
        try:
            row = gf.gf4(tokens)
        except (KeyError, ValueError):
            raise ParseError(f"bad entry in {' '.join(tokens)!r}", lno) from None
        if field == 2 and row.max(initial=0) > 1:
            raise ParseError("binary matrix entries must be 0 or 1", lno)
        M[i] = row
    return M, field


def parse_alist(text: str) -> np.ndarray:
    lines = _lines(text)
    if len(lines) < 4:
        raise ParseError("truncated alist header", lines[-1][0] if lines else 1)
    (l0, h0), (l1, h1), (l2, h2), (l3, h3) = lines[:4]
    if len(h0) != 2:
        raise ParseError("alist header must be 'n m'", l0)
    n, m = _ints(h0, l0)
    _ints(h1, l1)
    col_deg = _ints(h2, l2)
    row_deg = _ints(h3, l3)
    if len(col_deg) != n:
        raise ParseError(f"expected {n} column degrees, found {len(col_deg)}", l2)
    if len(row_deg) != m:
        raise ParseError(f"expected {m} row degrees, found {len(row_deg)}", l3)
    body = lines[4:]
    if len(body) < n + m:
        raise ParseError(f"expected {n + m} index lines, found {len(body)}", body[-1][0] if body else l3)
    H = np.zeros((m, n), dtype=np.uint8)
    for j in range(n):
        lno, tokens = body[j]
        idx = [v for v in _ints(tokens, lno) if v != 0]
        if len(idx) != col_deg[j] or any(not 1 <= v <= m for v in idx):
            raise ParseError(f"bad index list for column {j + 1}", lno)
        H[np.array(idx, dtype=np.intp) - 1, j] = 1
    for i in range(m):
        lno, tokens = body[n + i]
        idx = [v for v in _ints(tokens, lno) if v != 0]
        if len(idx) != row_deg[i] or any(not 1 <= v <= n for v in idx):
            raise ParseError(f"bad index list for row {i + 1}", lno)
        if sorted(np.flatnonzero(H[i]) + 1) != sorted(idx):
            raise ParseError(f"row {i + 1} disagrees with the column lists", lno)
    return H


def parse_matrix(text: str) -> tuple[np.ndarray, int]:
    """Parse either format; the header length tells them apart."""
    lines = _lines(text)
    if not lines:
        raise ParseError("empty input", 1)
    if len(lines[0][1]) == 2:
        return parse_alist(text), 2
    return parse_plain(text)


def read_matrix(path) -> tuple[np.ndarray, int]:
    return parse_matrix(Path(path).read_text())


def format_plain(H, field: int) -> str:
    H = np.asarray(H, dtype=np.uint8)
    rows = [f"{H.shape[0]} {H.shape[1]} {field}"]
    for row in H:
        rows.append(" ".join(gf.gf4_symbol(a) for a in row))
    return "\n".join(rows) + "\n"


def format_alist(H) -> str:
    H = np.asarray(H, dtype=np.uint8)
    m, n = H.shape
    cols = [np.flatnonzero(H[:, j]) + 1 for j in range(n)]
    rows = [np.flatnonzero(H[i]) + 1 for i in range(m)]
    # an empty index list is still written as a single 0
    dv = max((len(c) for c in cols), default=0)
    dc = max((len(r) for r in rows), default=0)

    def pad(v, width):
        return " ".join(str(x) for x in list(v) + [0] * (width - len(v)))

    out = [f"{n} {m}", f"{dv} {dc}", " ".join(str(len(c)) for c in cols), " ".join(str(len(r)) for r in rows)]
    out += [pad(c, max(dv, 1)) for c in cols]
    out += [pad(r, max(dc, 1)) for r in rows]
    return "\n".join(out) + "\n"


def bundled(name: str) -> Path:
    """Path of a matrix file shipped in ``lnqec/data``."""
    path = resources.files("lnqec") / "data" / name
    return Path(str(path))


BUNDLED = {
    "rep3_gf4": "rep3_gf4.txt",
    "rep3_gf4_scrambled": "rep3_gf4_scrambled.txt",
    "rep3": "rep3.txt",
    "rep4": "rep4.txt",
    "rep5": "rep5.txt",
    "hamming74": "hamming74.alist",
    "hamming74_redundant": "hamming74_redundant.alist",
    "hamming_gf4": "hamming_gf4.txt",
    "hexacode": "hexacode_gf4.txt",
    "ag43": "ag43_1080.alist",
}
