"""Exact arithmetic and linear algebra over GF(2) and GF(4).

Binary matrices are plain ``uint8`` arrays of zeros and ones at the API
boundary. Internally, Gaussian elimination packs each row into a Python
integer (bit ``j`` is column ``j``) so a row operation is a single XOR over
the whole row.

An element of GF(4) = {0, 1, w, w^2 = w + 1} is written ``a = z + w*x`` and
stored as the two-bit integer ``z | (x << 1)``::

    0 -> 0    1 -> 1    w -> 2    w^2 -> 3

so field addition is XOR and the split of a matrix ``H = H_Z + w*H_X`` into
its binary Z- and X-parts is a pair of bit masks.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

import numpy as np

from .exceptions import DimensionMismatch, RankDeficient, SingularMatrix

ZERO, ONE, OMEGA, OMEGA2 = 0, 1, 2, 3

GF4_MUL = np.array(
    [
        [0, 0, 0, 0],
        [0, 1, 2, 3],
        [0, 2, 3, 1],
        [0, 3, 1, 2],
    ],
    dtype=np.uint8,
)
GF4_INV = np.array([0, 1, 3, 2], dtype=np.uint8)  # entry 0 is unused

_SYMBOLS = {"0": ZERO, "1": ONE, "w": OMEGA, "w2": OMEGA2, "ω": OMEGA, "ω2": OMEGA2, "ω²": OMEGA2}
_NAMES = ("0", "1", "w", "w2")


# ---------------------------------------------------------------------------
# GF(4) element-level helpers


def gf4(values) -> np.ndarray:
    """Coerce integers 0..3 or symbols ``0, 1, w, w2`` to a GF(4) array."""
    arr = np.asarray(values, dtype=object)
    if arr.size and isinstance(arr.flat[0], str):
        arr = np.vectorize(lambda s: _SYMBOLS[s.strip()], otypes=[np.uint8])(arr)
    out = np.asarray(arr, dtype=np.int64)
    if out.size and (out.min() < 0 or out.max() > 3):
        raise ValueError("GF(4) entries must lie in 0..3")
    return out.astype(np.uint8)


def gf4_symbol(a: int) -> str:
    return _NAMES[int(a)]


def gf4_mul(a, b) -> np.ndarray:
    """Entrywise product with numpy broadcasting."""
    return GF4_MUL[np.asarray(a, dtype=np.uint8), np.asarray(b, dtype=np.uint8)]


def gf4_split(a) -> tuple[np.ndarray, np.ndarray]:
    """Return the binary parts ``(z, x)`` with ``a = z + w*x``."""
    a = np.asarray(a, dtype=np.uint8)
    return a & 1, (a >> 1) & 1


def gf4_join(z, x) -> np.ndarray:
    z = np.asarray(z, dtype=np.uint8) & 1
    x = np.asarray(x, dtype=np.uint8) & 1
    return z | (x << 1)


def trace(a):
    """Trace map GF(4) -> GF(2), ``Tr(a) = a + a^2``.

    For ``a = z + w*x`` this is simply ``x``, since ``Tr(1) = 0`` and
    ``Tr(w) = 1``. Works entrywise on arrays.
    """
    out = (np.asarray(a, dtype=np.uint8) >> 1) & 1
    return int(out) if out.ndim == 0 else out


def trace_vec(a) -> np.ndarray:
    return np.atleast_1d(trace(np.asarray(a, dtype=np.uint8)))


def gf4_matmul(A, B) -> np.ndarray:
    """Matrix product over GF(4), evaluated as binary products of bit planes."""
    A = np.asarray(A, dtype=np.uint8)
    B = np.asarray(B, dtype=np.uint8)
    az, ax = (A & 1).astype(np.int64), ((A >> 1) & 1).astype(np.int64)
    bz, bx = (B & 1).astype(np.int64), ((B >> 1) & 1).astype(np.int64)
    xx = ax @ bx
    z = (az @ bz + xx) & 1
    x = (az @ bx + ax @ bz + xx) & 1
    return gf4_join(z, x)


def weight(v) -> int | np.ndarray:
    """Hamming weight along the last axis."""
    return np.count_nonzero(np.asarray(v), axis=-1)


# ---------------------------------------------------------------------------
# GF(2)


def gf2_matmul(A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    return ((A @ B) & 1).astype(np.uint8)


def _pack(M: np.ndarray) -> list[int]:
    M = np.asarray(M, dtype=np.uint8) & 1
    if M.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {M.shape}")
    packed = np.packbits(M, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def _unpack(rows: Iterable[int], ncols: int) -> np.ndarray:
    nbytes = (ncols + 7) // 8
    rows = list(rows)
    if not rows:
        return np.zeros((0, ncols), dtype=np.uint8)
    buf = b"".join(r.to_bytes(nbytes, "little") for r in rows)
    bits = np.unpackbits(np.frombuffer(buf, dtype=np.uint8).reshape(len(rows), nbytes), axis=1, bitorder="little")
    return bits[:, :ncols].copy()


def _lowbit(v: int) -> int:
    return (v & -v).bit_length() - 1


class _Echelon2:
    """Incremental row echelon basis over GF(2).

    Each inserted row is reduced against the basis; the pivot of a basis
    vector is its lowest set bit, so the pivot set equals the leftmost-pivot
    set of the reduced row echelon form. ``combo`` records, as a bitmask over
    input row indices, which input rows sum to each basis vector.
    """

    def __init__(self) -> None:
        self.basis: dict[int, tuple[int, int]] = {}

    def reduce(self, v: int, combo: int) -> tuple[int, int]:
        while v:
            p = _lowbit(v)
            if p not in self.basis:
                break
            b, c = self.basis[p]
            v ^= b
            combo ^= c
        return v, combo

    def insert(self, v: int, combo: int) -> tuple[bool, int]:
        v, combo = self.reduce(v, combo)
        if v:
            self.basis[_lowbit(v)] = (v, combo)
            return True, combo
        return False, combo

    def reduced(self) -> list[tuple[int, int, int]]:
        """Back-substitute to reduced row echelon form; returns (pivot, row, combo) sorted by pivot."""
        piv = sorted(self.basis)
        rows = {p: list(self.basis[p]) for p in piv}
        for p in reversed(piv):
            bp, cp = rows[p]
            for q in piv:
                if q >= p:
                    break
                if (rows[q][0] >> p) & 1:
                    rows[q][0] ^= bp
                    rows[q][1] ^= cp
        return [(p, rows[p][0], rows[p][1]) for p in piv]


def gf2_rank(M) -> int:
    ech = _Echelon2()
    for i, r in enumerate(_pack(M)):
        ech.insert(r, 1 << i)
    return len(ech.basis)


def gf2_rref(M) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form (zero rows dropped) and leftmost pivot columns."""
    M = np.asarray(M, dtype=np.uint8)
    ech = _Echelon2()
    for i, r in enumerate(_pack(M)):
        ech.insert(r, 1 << i)
    red = ech.reduced()
    return _unpack([r for _, r, _ in red], M.shape[1]), tuple(p for p, _, _ in red)


def gf2_inverse(M) -> np.ndarray:
    M = np.asarray(M, dtype=np.uint8)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"inverse needs a square matrix, got shape {M.shape}")
    n = M.shape[0]
    ech = _Echelon2()
    for i, r in enumerate(_pack(M)):
        ech.insert(r, 1 << i)
    if len(ech.basis) < n:
        raise SingularMatrix(f"rank {len(ech.basis)} < {n}")
    # Reduced rows are unit vectors e_p = sum of input rows in combo, so the
    # combo of pivot p is row p of the inverse.
    return _unpack([c for _, _, c in ech.reduced()], n)


def gf2_kernel(M) -> np.ndarray:
    """Basis of ``{c : M c^T = 0}`` as rows."""
    M = np.asarray(M, dtype=np.uint8)
    n = M.shape[1]
    R, piv = gf2_rref(M)
    free = [j for j in range(n) if j not in set(piv)]
    K = np.zeros((len(free), n), dtype=np.uint8)
    for row, f in enumerate(free):
        K[row, f] = 1
        K[row, list(piv)] = R[:, f]
    return K


def gf2_row_basis(M) -> tuple[list[int], list[tuple[int, np.ndarray]]]:
    """Split rows into a greedy independent set and dependents.

    Rows are scanned in order; a row is kept if it is independent of the
    rows kept before it. Returns ``(kept, dependents)`` where each dependent
    is ``(row_index, coeffs)`` and ``coeffs`` (over the kept rows, in order)
    reproduces it as a sum of kept rows.
    """
    M = np.asarray(M, dtype=np.uint8)
    ech = _Echelon2()
    kept: list[int] = []
    deps: list[tuple[int, int]] = []
    for i, r in enumerate(_pack(M)):
        ok, combo = ech.insert(r, 1 << i)
        if ok:
            kept.append(i)
        else:
            deps.append((i, combo ^ (1 << i)))
    out = [(i, np.array([(c >> j) & 1 for j in kept], dtype=np.uint8)) for i, c in deps]
    return kept, out


# ---------------------------------------------------------------------------
# GF(4)


class _Echelon4:
    """GF(4) counterpart of :class:`_Echelon2` on numpy rows (leading entry normalised to 1)."""

    def __init__(self, ncols: int, nrows: int) -> None:
        self.ncols = ncols
        self.nrows = nrows
        self.basis: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    def insert(self, v: np.ndarray, combo: np.ndarray) -> tuple[bool, np.ndarray]:
        v = v.copy()
        combo = combo.copy()
        while True:
            nz = np.flatnonzero(v)
            if nz.size == 0:
                return False, combo
            p = int(nz[0])
            if p not in self.basis:
                inv = GF4_INV[v[p]]
                self.basis[p] = (GF4_MUL[inv, v], GF4_MUL[inv, combo])
                return True, combo
            b, c = self.basis[p]
            f = v[p]
            v ^= GF4_MUL[f, b]
            combo ^= GF4_MUL[f, c]

    def reduced(self) -> list[tuple[int, np.ndarray, np.ndarray]]:
        piv = sorted(self.basis)
        rows = {p: [self.basis[p][0].copy(), self.basis[p][1].copy()] for p in piv}
        for p in reversed(piv):
            bp, cp = rows[p]
            for q in piv:
                if q >= p:
                    break
                f = rows[q][0][p]
                if f:
                    rows[q][0] ^= GF4_MUL[f, bp]
                    rows[q][1] ^= GF4_MUL[f, cp]
        return [(p, rows[p][0], rows[p][1]) for p in piv]


def _echelon4(M: np.ndarray) -> tuple[_Echelon4, list[int], list[tuple[int, np.ndarray]]]:
    M = gf4(M)
    if M.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got shape {M.shape}")
    m, n = M.shape
    ech = _Echelon4(n, m)
    kept, deps = [], []
    for i in range(m):
        combo = np.zeros(m, dtype=np.uint8)
        combo[i] = 1
        ok, combo = ech.insert(M[i], combo)
        if ok:
            kept.append(i)
        else:
            combo[i] = 0
            deps.append((i, combo))
    return ech, kept, deps


def gf4_rank(M) -> int:
    return len(_echelon4(M)[0].basis)


def gf4_rref(M) -> tuple[np.ndarray, tuple[int, ...]]:
    M = gf4(M)
    red = _echelon4(M)[0].reduced()
    R = np.array([r for _, r, _ in red], dtype=np.uint8).reshape(len(red), M.shape[1])
    return R, tuple(p for p, _, _ in red)


def gf4_kernel(M) -> np.ndarray:
    M = gf4(M)
    n = M.shape[1]
    R, piv = gf4_rref(M)
    free = [j for j in range(n) if j not in set(piv)]
    K = np.zeros((len(free), n), dtype=np.uint8)
    for row, f in enumerate(free):
        K[row, f] = 1
        K[row, list(piv)] = R[:, f]  # -x = x in characteristic 2
    return K


def gf4_row_basis(M) -> tuple[list[int], list[tuple[int, np.ndarray]]]:
    """GF(4) version of :func:`gf2_row_basis`; coefficients are GF(4) elements."""
    _, kept, deps = _echelon4(M)
    return kept, [(i, c[kept]) for i, c in deps]


def gf4_is_invertible(M) -> bool:
    M = gf4(M)
    return M.ndim == 2 and M.shape[0] == M.shape[1] and gf4_rank(M) == M.shape[0]


# ---------------------------------------------------------------------------


def pivot_columns(M, field: int = 2) -> tuple[int, ...]:
    """Leftmost pivot columns of a full-row-rank matrix over GF(2) or GF(4).

    The submatrix on the returned columns is invertible. Raises
    :class:`RankDeficient` when the rows are dependent.
    """
    M = np.asarray(M, dtype=np.uint8)
    if field == 2:
        _, piv = gf2_rref(M)
    elif field == 4:
        _, piv = gf4_rref(M)
    else:
        raise ValueError(f"unsupported field GF({field})")
    if len(piv) < M.shape[0]:
        raise RankDeficient(f"row rank {len(piv)} < {M.shape[0]} rows")
    return piv


def permutation_inverse(perm: Sequence[int]) -> np.ndarray:
    return np.argsort(np.asarray(perm))
