"""Import parity-check matrices and build the assisted-code constructions.

Two constructions are supported:

* :class:`TracePcm` turns any parity-check matrix ``H`` of a linear
  ``[n, k, d]_4`` code into the trace parity-check matrix ``[H; wH]`` and
  its binary blocks. It uses ``2(n-k)`` phase-noise-only auxiliary qubits
  and ``k`` fully noisy data qubits.
* :class:`BinaryPairCode` combines parity-check matrices of an
  ``[n0, k, d0]`` and an ``[n1, k, d1]`` binary code into a block-diagonal
  construction with ``n0 + n1 - 2k`` auxiliary qubits.

Both expose the same attributes (``A``, ``A_inv``, ``N_Z``, ``N_X``,
``l0``, ``l1``, ``k``, ``aux``, ``physical``) so the frame and state-vector
layers can treat them uniformly.

No parity-check matrix has to be in standard form. Columns are permuted so
that the first ``n - k`` are linearly independent, and the permutation is
kept so qubit labels can be mapped back to the input columns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

import numpy as np

from . import gf
from .exceptions import (
    BudgetExceeded,
    DimensionMismatch,
    InternalRankError,
    NoCodewords,
    ZeroMatrix,
)

DEFAULT_CODEWORD_BUDGET = 2**24


@dataclass(frozen=True, eq=False)
class LinearCode:
    """A linear code given by a full-rank parity-check matrix.

    ``H`` holds the independent rows of the imported matrix with its columns
    permuted by ``perm`` (column ``j`` of ``H`` is input column ``perm[j]``),
    such that the first ``n - k`` columns are linearly independent. Rows that
    depended on earlier rows are kept in ``redundant_rows`` (same column
    order) together with ``redundant_coeffs``: row ``i`` of
    ``redundant_rows`` equals ``redundant_coeffs[i] @ H``.
    """

    H: np.ndarray
    perm: np.ndarray
    redundant_rows: np.ndarray
    redundant_coeffs: np.ndarray
    row_order: np.ndarray  # input row index of each row of vstack(H, redundant_rows)
    d: int | None = None
    field: int = 2

    @property
    def n(self) -> int:
        return self.H.shape[1]

    @property
    def k(self) -> int:
        return self.n - self.H.shape[0]

    @property
    def redundancy(self) -> int:
        return self.redundant_rows.shape[0]

    @property
    def t(self) -> int | None:
        return None if self.d is None else (self.d - 1) // 2

    @property
    def full_H(self) -> np.ndarray:
        """Independent rows followed by redundant rows (permuted columns)."""
        return np.vstack([self.H, self.redundant_rows])

    def unpermuted(self) -> np.ndarray:
        """The matrix exactly as it was imported."""
        full = self.full_H
        out = np.empty_like(full)
        out[self.row_order] = full
        return out[:, gf.permutation_inverse(self.perm)]

    def with_distance(self, d: int | None) -> LinearCode:
        return replace(self, d=d)

    def __repr__(self) -> str:
        d = "?" if self.d is None else self.d
        extra = f", {self.redundancy} redundant rows" if self.redundancy else ""
        return f"{type(self).__name__}([{self.n},{self.k},{d}]_{self.field}{extra})"


class LinearCodeBin(LinearCode):
    pass


class LinearCodeQuat(LinearCode):
    pass


def _import(H: np.ndarray, field_order: int, d: int | None) -> LinearCode:
    if H.ndim != 2:
        raise DimensionMismatch(f"parity-check matrix must be 2-D, got shape {H.shape}")
    m, n = H.shape
    if m > 0 and not H.any():
        raise ZeroMatrix("parity-check matrix has no nonzero entry")
    if field_order == 2:
        kept, deps = gf.gf2_row_basis(H)
    else:
        kept, deps = gf.gf4_row_basis(H)
    base = H[kept]
    piv = gf.pivot_columns(base, field_order) if len(kept) else ()
    rest = [j for j in range(n) if j not in set(piv)]
    perm = np.array(list(piv) + rest, dtype=np.intp)
    dep_idx = [i for i, _ in deps]
    coeffs = np.array([c for _, c in deps], dtype=np.uint8).reshape(len(deps), len(kept))
    cls = LinearCodeBin if field_order == 2 else LinearCodeQuat
    return cls(
        H=base[:, perm].copy(),
        perm=perm,
        redundant_rows=H[dep_idx][:, perm].reshape(len(deps), n).copy(),
        redundant_coeffs=coeffs,
        row_order=np.array(kept + dep_idx, dtype=np.intp),
        d=d,
        field=field_order,
    )


def import_binary(H, d: int | None = None) -> LinearCodeBin:
    """Import a binary parity-check matrix, possibly with dependent rows."""
    H = np.asarray(H, dtype=np.uint8)
    if H.size and H.max() > 1:
        raise ValueError("binary matrix entries must be 0 or 1")
    return _import(H, 2, d)


def import_quaternary(H, d: int | None = None) -> LinearCodeQuat:
    """Import a parity-check matrix over GF(4) (entries 0..3 or symbols)."""
    return _import(gf.gf4(H), 4, d)


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TracePcm:
    """Trace parity-check matrix ``H_Q = [H; wH] = H_Z + w H_X`` and its blocks."""

    code: LinearCodeQuat
    H_Q: np.ndarray
    H_Z: np.ndarray
    H_X: np.ndarray
    A_Z: np.ndarray
    A_X: np.ndarray
    N_Z: np.ndarray
    N_X: np.ndarray
    A: np.ndarray
    A_inv: np.ndarray

    @property
    def n(self) -> int:
        return self.code.n

    @property
    def k(self) -> int:
        return self.code.k

    @property
    def l0(self) -> int:
        return self.n - self.k

    @property
    def l1(self) -> int:
        return self.n - self.k

    @property
    def aux(self) -> int:
        return 2 * (self.n - self.k)

    @property
    def physical(self) -> int:
        return 2 * self.n - self.k

    def __repr__(self) -> str:
        return f"TracePcm({self.code!r}, aux={self.aux}, physical={self.physical})"


def build_trace_pcm(code: LinearCodeQuat) -> TracePcm:
    H = code.H
    r = H.shape[0]
    H_Q = np.vstack([H, gf.gf4_mul(gf.OMEGA, H)])
    H_Z, H_X = gf.gf4_split(H_Q)
    A = np.hstack([H_Z[:, :r], H_X[:, :r]])
    try:
        A_inv = gf.gf2_inverse(A)
    except gf.SingularMatrix as exc:  # pragma: no cover - excluded by construction
        raise InternalRankError("block A of the trace parity-check matrix is singular") from exc
    return TracePcm(
        code=code,
        H_Q=H_Q,
        H_Z=H_Z,
        H_X=H_X,
        A_Z=H_Z[:, :r],
        A_X=H_X[:, :r],
        N_Z=H_Z[:, r:],
        N_X=H_X[:, r:],
        A=A,
        A_inv=A_inv,
    )


@dataclass(frozen=True, eq=False)
class BinaryPairCode:
    """Block-diagonal construction from two binary codes of equal dimension.

    ``code0`` (parity checks ``H_Z = [A_Z | B_Z]``) detects phase errors on
    the first ``n0 - k`` auxiliary qubits together with bit errors on the
    data qubits. ``code1`` (``H_X = [A_X | B_X]``) detects phase errors on
    the remaining auxiliary qubits together with data phase errors.
    """

    code0: LinearCodeBin
    code1: LinearCodeBin
    A: np.ndarray
    N_Z: np.ndarray
    N_X: np.ndarray
    A_inv: np.ndarray
    A_Z_inv: np.ndarray = field(repr=False)
    A_X_inv: np.ndarray = field(repr=False)

    @property
    def H_Z(self) -> np.ndarray:
        return self.code0.H

    @property
    def H_X(self) -> np.ndarray:
        return self.code1.H

    @property
    def k(self) -> int:
        return self.code0.k

    @property
    def l0(self) -> int:
        return self.code0.n - self.k

    @property
    def l1(self) -> int:
        return self.code1.n - self.k

    @property
    def aux(self) -> int:
        return self.l0 + self.l1

    @property
    def physical(self) -> int:
        return self.code0.n + self.code1.n - self.k

    def __repr__(self) -> str:
        return f"BinaryPairCode({self.code0!r}, {self.code1!r}, aux={self.aux}, physical={self.physical})"


def build_binary_pair(code0: LinearCodeBin, code1: LinearCodeBin) -> BinaryPairCode:
    if code0.k != code1.k:
        raise DimensionMismatch(f"codes must share k, got {code0.k} and {code1.k}")
    k = code0.k
    r0, r1 = code0.n - k, code1.n - k
    A_Z, B_Z = code0.H[:, :r0], code0.H[:, r0:]
    A_X, B_X = code1.H[:, :r1], code1.H[:, r1:]
    A_Z_inv = gf.gf2_inverse(A_Z)
    A_X_inv = gf.gf2_inverse(A_X)
    A = np.zeros((r0 + r1, r0 + r1), dtype=np.uint8)
    A[:r0, :r0] = A_Z
    A[r0:, r0:] = A_X
    A_inv = np.zeros_like(A)
    A_inv[:r0, :r0] = A_Z_inv
    A_inv[r0:, r0:] = A_X_inv
    N_Z = np.vstack([B_Z, np.zeros((r1, k), dtype=np.uint8)])
    N_X = np.vstack([np.zeros((r0, k), dtype=np.uint8), B_X])
    return BinaryPairCode(code0, code1, A, N_Z, N_X, A_inv, A_Z_inv, A_X_inv)


# ---------------------------------------------------------------------------


def codewords(code: LinearCode, budget: int = DEFAULT_CODEWORD_BUDGET, chunk: int = 1 << 16):
    """Yield all codewords in chunks of rows (columns in the code's permuted order)."""
    q = code.field
    K = gf.gf2_kernel(code.H) if q == 2 else gf.gf4_kernel(code.H)
    dim = K.shape[0]
    total = q**dim
    if total > budget:
        raise BudgetExceeded(f"{total} codewords exceed the enumeration budget {budget}")
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // (q ** np.arange(dim, dtype=np.int64))) % q
        if q == 2:
            yield gf.gf2_matmul(digits, K)
        else:
            yield gf.gf4_matmul(digits.astype(np.uint8), K)


def min_distance(code: LinearCode, budget: int = DEFAULT_CODEWORD_BUDGET) -> int:
    """Exact minimum distance by exhaustive enumeration of the kernel."""
    if code.k == 0:
        raise NoCodewords("a k = 0 code has no nonzero codewords")
    best = code.n + 1
    for block in codewords(code, budget):
        w = gf.weight(block)
        w = w[w > 0]
        if w.size:
            best = min(best, int(w.min()))
    return best


@dataclass(frozen=True)
class ParamSummary:
    physical_qubits: int
    logical_qubits: int
    aux_qubits: int
    t: int | tuple[int | None, int | None] | None


def parameter_summary(construction) -> ParamSummary:
    """Qubit counts and correctable-weight bound(s) of a construction."""
    if isinstance(construction, LinearCodeQuat):
        construction = build_trace_pcm(construction)
    if isinstance(construction, TracePcm):
        t = construction.code.t
    elif isinstance(construction, BinaryPairCode):
        t = (construction.code0.t, construction.code1.t)
    else:
        raise TypeError(f"unsupported construction {type(construction).__name__}")
    return ParamSummary(construction.physical, construction.k, construction.aux, t)


def enumerate_errors(n: int, t: int, alphabet: int):
    """Yield ``(weight, array of all words of that weight)`` for weights 0..t.

    ``alphabet`` is 2 or 4; nonzero symbols range over 1..alphabet-1.
    """
    symbols = np.arange(1, alphabet, dtype=np.uint8)
    for w in range(t + 1):
        supports = list(itertools.combinations(range(n), w))
        if not supports:
            continue
        combos = list(itertools.product(symbols, repeat=w))
        vals = np.array(combos, dtype=np.uint8).reshape(len(combos), w)
        out = np.zeros((len(supports) * len(vals), n), dtype=np.uint8)
        for s_i, supp in enumerate(supports):
            out[s_i * len(vals) : (s_i + 1) * len(vals)][:, list(supp)] = vals
        yield w, out
