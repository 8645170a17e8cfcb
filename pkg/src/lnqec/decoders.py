"""Syndrome decoders: bounded-distance lookup tables and sum-product BP.

Decoders share one batch interface, ``decode_batch(syndromes) ->
(estimates, ok)``: a row of ``estimates`` is the inferred error word, and
``ok`` is False where the decoder gave up. A failed lookup is an ordinary
outcome here, never an exception, because Monte Carlo runs need to count it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import gf
from .codes import DEFAULT_CODEWORD_BUDGET, BinaryPairCode, LinearCode, LinearCodeQuat, TracePcm, build_trace_pcm, enumerate_errors
from .exceptions import BudgetExceeded, DistanceViolation, LengthMismatch, NoRedundantRows
from .frame import trace_syndrome

TABLE_BUDGET = DEFAULT_CODEWORD_BUDGET


def _keys(syndromes: np.ndarray) -> np.ndarray | list[bytes]:
    s = np.atleast_2d(np.asarray(syndromes, dtype=np.uint8))
    m = s.shape[1]
    if m <= 62:
        weights = (1 << np.arange(m, dtype=np.int64)) if m else np.zeros(0, dtype=np.int64)
        return s.astype(np.int64) @ weights
    packed = np.packbits(s, axis=1)
    return [row.tobytes() for row in packed]


@dataclass(eq=False)
class SyndromeTable:
    """Map from syndrome to the unique error word of weight at most ``t``.

    ``alphabet`` is 4 for trace syndromes of GF(4) words and 2 for binary
    syndromes.
    """

    t: int
    n: int
    alphabet: int
    syndrome_length: int
    patterns: np.ndarray
    _keys: np.ndarray | dict = field(repr=False)
    _order: np.ndarray | None = field(repr=False, default=None)

    def __len__(self) -> int:
        return self.patterns.shape[0]

    def lookup(self, syndromes) -> np.ndarray:
        """Row index into ``patterns`` for each syndrome, or -1 if absent."""
        keys = _keys(syndromes)
        if isinstance(self._keys, dict):
            return np.array([self._keys.get(k, -1) for k in keys], dtype=np.int64)
        sorted_keys = self._keys
        pos = np.searchsorted(sorted_keys, keys)
        pos = np.minimum(pos, max(len(sorted_keys) - 1, 0))
        hit = sorted_keys[pos] == keys
        return np.where(hit, self._order[pos], -1)

    def decode_batch(self, syndromes) -> tuple[np.ndarray, np.ndarray]:
        idx = self.lookup(syndromes)
        ok = idx >= 0
        est = self.patterns[np.where(ok, idx, 0)] if len(self) else np.zeros((idx.size, self.n), dtype=np.uint8)
        est[~ok] = 0
        return est, ok


def _syndrome_fn(construction):
    if isinstance(construction, LinearCodeQuat):
        construction = build_trace_pcm(construction)
    if isinstance(construction, TracePcm):
        return construction.n, 4, construction.aux, lambda e: trace_syndrome(construction, e)
    if isinstance(construction, LinearCode) and construction.field == 2:
        H = construction.H
        return construction.n, 2, H.shape[0], lambda e: gf.gf2_matmul(e, H.T)
    raise TypeError(f"cannot build a syndrome table for {type(construction).__name__}")


def table_size(n: int, t: int, alphabet: int) -> int:
    from math import comb

    return sum(comb(n, w) * (alphabet - 1) ** w for w in range(t + 1))


def build_table(construction, t: int, budget: int = TABLE_BUDGET) -> SyndromeTable:
    """Enumerate every error word of weight at most ``t`` with its syndrome.

    ``construction`` is a :class:`TracePcm` (or quaternary code; GF(4) words
    and trace syndromes) or a binary :class:`LinearCode` (binary words and
    ``H e^T``). Raises :class:`DistanceViolation` if two words collide, which
    means ``t`` exceeds ``(d - 1) // 2``.
    """
    n, alphabet, m, syndrome = _syndrome_fn(construction)
    size = table_size(n, t, alphabet)
    if size > budget:
        raise BudgetExceeded(f"table with {size} entries exceeds budget {budget}")
    words = np.concatenate([block for _, block in enumerate_errors(n, t, alphabet)], axis=0)
    syn = syndrome(words)
    keys = _keys(syn)
    if isinstance(keys, list):
        lut: dict = {}
        for i, key in enumerate(keys):
            if key in lut:
                raise DistanceViolation(f"words {words[lut[key]].tolist()} and {words[i].tolist()} share a syndrome")
            lut[key] = i
        return SyndromeTable(t, n, alphabet, m, words, lut)
    order = np.argsort(keys, kind="stable")
    sk = keys[order]
    dup = np.flatnonzero(sk[1:] == sk[:-1])
    if dup.size:
        a, b = order[dup[0]], order[dup[0] + 1]
        raise DistanceViolation(f"words {words[a].tolist()} and {words[b].tolist()} share a syndrome")
    return SyndromeTable(t, n, alphabet, m, words, sk, order)


def decode_table(table: SyndromeTable, syndrome) -> np.ndarray | None:
    """The stored error word for ``syndrome``, or None when it is not in the table."""
    syndrome = np.asarray(syndrome, dtype=np.uint8).reshape(-1)
    if syndrome.size != table.syndrome_length:
        raise LengthMismatch(f"syndrome has {syndrome.size} bits, table expects {table.syndrome_length}")
    idx = int(table.lookup(syndrome[None, :])[0])
    return None if idx < 0 else table.patterns[idx].copy()


# ---------------------------------------------------------------------------
# sum-product


@dataclass(frozen=True)
class SumProductConfig:
    max_iterations: int = 50
    prior: float | tuple[float, ...] = 0.05
    early_stop: bool = True
    llr_clamp: float = 25.0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        p = np.asarray(self.prior, dtype=float)
        if np.any(p <= 0) or np.any(p >= 1):
            raise ValueError("prior probabilities must lie strictly between 0 and 1")


def sp_decode(H, syndrome, cfg: SumProductConfig = SumProductConfig()) -> tuple[np.ndarray, bool]:
    """Syndrome-based sum-product decoding on the Tanner graph of ``H``.

    Messages are log-likelihood ratios (positive favours "no error") clamped
    to ``+-cfg.llr_clamp``. A check node with syndrome bit 1 flips the sign of
    its outgoing messages. A posterior LLR of exactly zero decides "no error".
    Returns the hard decision and whether it reproduces the syndrome.
    """
    H = np.asarray(H, dtype=np.uint8)
    s = np.asarray(syndrome, dtype=np.uint8).reshape(-1)
    m, n = H.shape
    if s.size != m:
        raise LengthMismatch(f"syndrome has {s.size} bits, H has {m} rows")
    rows, cols = np.nonzero(H)
    p = np.broadcast_to(np.asarray(cfg.prior, dtype=float), (n,))
    clamp = cfg.llr_clamp
    prior_llr = np.clip(np.log((1 - p) / p), -clamp, clamp)
    check_sign = 1.0 - 2.0 * s[rows]

    def decide(post):
        e = (post < 0).astype(np.uint8)
        return e, bool(np.array_equal(gf.gf2_matmul(H, e), s))

    if rows.size == 0:
        e, ok = decide(prior_llr)
        return e, ok

    v2c = prior_llr[cols].copy()
    e, ok = decide(prior_llr)
    if ok and cfg.early_stop:
        return e, True
    for _ in range(cfg.max_iterations):
        # check update: tanh rule with leave-one-out via log-magnitudes and sign parity
        t = np.tanh(np.clip(v2c, -clamp, clamp) / 2)
        mag = np.log(np.maximum(np.abs(t), 1e-300))
        neg = (t < 0).astype(np.int64)
        zero = np.abs(t) < 1e-300
        mag_sum = np.bincount(rows, weights=mag, minlength=m)
        neg_sum = np.bincount(rows, weights=neg, minlength=m).astype(np.int64)
        zero_cnt = np.bincount(rows, weights=zero, minlength=m).astype(np.int64)
        other_mag = np.exp(mag_sum[rows] - mag)
        other_mag = np.where(zero_cnt[rows] - zero > 0, 0.0, other_mag)
        other_sign = 1.0 - 2.0 * ((neg_sum[rows] - neg) & 1)
        prod = np.clip(other_sign * other_mag, -np.tanh(clamp / 2), np.tanh(clamp / 2))
        c2v = check_sign * 2 * np.arctanh(prod)
        post = prior_llr + np.bincount(cols, weights=c2v, minlength=n)
        e, ok = decide(post)
        if ok and cfg.early_stop:
            return e, True
        v2c = np.clip(post[cols] - c2v, -clamp, clamp)
    return e, ok


def extend_syndrome(code: LinearCode, base_syndrome) -> np.ndarray:
    """Append the syndrome bits of the redundant rows, computed from the base bits.

    A redundant row is a known sum of independent rows, so its syndrome bit
    is the same sum of measured bits. The result equals ``full_H e^T``.
    """
    if code.redundancy == 0:
        raise NoRedundantRows(f"{code!r} has no redundant rows")
    s = np.asarray(base_syndrome, dtype=np.uint8)
    if s.shape[-1] != code.H.shape[0]:
        raise LengthMismatch(f"syndrome has {s.shape[-1]} bits, expected {code.H.shape[0]}")
    extra = gf.gf2_matmul(s, code.redundant_coeffs.T)
    return np.concatenate([s, extra], axis=-1)


@dataclass(eq=False)
class SumProductDecoder:
    """Batch wrapper around :func:`sp_decode` for a binary code.

    With ``use_redundant`` the decoder runs on ``code.full_H`` and extends
    each measured syndrome first. Distinct syndromes are decoded once per
    batch.
    """

    code: LinearCode
    config: SumProductConfig = SumProductConfig()
    use_redundant: bool = True

    @property
    def n(self) -> int:
        return self.code.n

    def decode_batch(self, syndromes) -> tuple[np.ndarray, np.ndarray]:
        syndromes = np.atleast_2d(np.asarray(syndromes, dtype=np.uint8))
        redundant = self.use_redundant and self.code.redundancy > 0
        H = self.code.full_H if redundant else self.code.H
        uniq, inverse = np.unique(syndromes, axis=0, return_inverse=True)
        est = np.zeros((uniq.shape[0], self.n), dtype=np.uint8)
        ok = np.zeros(uniq.shape[0], dtype=bool)
        for i, s in enumerate(uniq):
            full = extend_syndrome(self.code, s) if redundant else s
            est[i], ok[i] = sp_decode(H, full, self.config)
        inverse = inverse.reshape(-1)
        return est[inverse], ok[inverse]


def table_decoder(construction, t: int | None = None, budget: int = TABLE_BUDGET) -> SyndromeTable:
    """Lookup table using ``t`` or, failing that, the code's known distance."""
    code = construction.code if isinstance(construction, TracePcm) else construction
    if t is None:
        if code.t is None:
            raise ValueError(f"{code!r} has no known distance; pass t explicitly")
        t = code.t
    return build_table(construction, t, budget)


@dataclass(eq=False)
class PairDecoder:
    """One binary decoder per code of a :class:`~lnqec.codes.BinaryPairCode`.

    ``decode_batch`` takes the two recovered syndromes and returns both
    estimates with a joint ``ok`` flag.
    """

    decoder0: object
    decoder1: object

    def decode_batch(self, syndromes) -> tuple[tuple[np.ndarray, np.ndarray], np.ndarray]:
        s0, s1 = syndromes
        est0, ok0 = self.decoder0.decode_batch(s0)
        est1, ok1 = self.decoder1.decode_batch(s1)
        return (est0, est1), ok0 & ok1


def make_decoder(construction, method: str = "table", t=None, config: SumProductConfig | None = None):
    """Decoder matching a construction.

    ``method`` is ``"table"`` or ``"bp"``. For a binary pair ``t`` may be a
    pair ``(t0, t1)``. Sum-product is only available for binary codes.
    """
    if isinstance(construction, BinaryPairCode):
        t0, t1 = t if isinstance(t, tuple) else (t, t)
        if method == "bp":
            cfg = config or SumProductConfig()
            return PairDecoder(SumProductDecoder(construction.code0, cfg), SumProductDecoder(construction.code1, cfg))
        return PairDecoder(table_decoder(construction.code0, t0), table_decoder(construction.code1, t1))
    if method == "bp":
        if isinstance(construction, LinearCode) and construction.field == 2:
            return SumProductDecoder(construction, config or SumProductConfig())
        raise ValueError("sum-product decoding is only provided for binary codes")
    if method != "table":
        raise ValueError(f"unknown decoding method {method!r}")
    return table_decoder(construction, t)
