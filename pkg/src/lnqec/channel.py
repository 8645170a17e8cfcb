"""Noise models, single trials and Monte Carlo estimates of the logical error rate.

Auxiliary qubits only ever suffer phase errors, so every sampled error has
``e_Xl = 0``. Each data qubit gets one categorical draw over I/X/Z/Y.

Randomness is counter based. Trial ``i`` under master seed ``s`` reads the
uniforms at positions ``[i * D, (i + 1) * D)`` of a Philox stream keyed by
``s``, where ``D`` is the number of qubits rounded up to a multiple of four.
A trial therefore sees the same numbers however the run is split into
blocks or spread over worker processes.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np
from scipy.stats import binomtest

from . import gf
from .codes import BinaryPairCode, LinearCodeQuat, TracePcm, build_trace_pcm
from .exceptions import DimensionMismatch, LengthMismatch
from .frame import PauliError, closed_form_outcome, recover_syndromes

BLOCK = 1 << 15
EXACT_LIMIT = 1 << 20
MISCORRECTION = "miscorrection"
DECODE_FAILURE = "decode_failure"


@dataclass(frozen=True)
class NoiseModel:
    """Independent Pauli noise: phase flips on auxiliary qubits, I/X/Z/Y on data qubits."""

    aux_pz: float = 0.0
    data_px: float = 0.0
    data_pz: float = 0.0
    data_py: float = 0.0

    def __post_init__(self):
        for name in ("aux_pz", "data_px", "data_pz", "data_py"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} = {v} is not a probability")
        if self.data_px + self.data_pz + self.data_py > 1.0 + 1e-12:
            raise ValueError("data_px + data_pz + data_py exceeds 1")

    @classmethod
    def depolarizing(cls, p: float, aux_pz: float | None = None) -> NoiseModel:
        """Data depolarizing at rate ``p`` (``p/3`` per Pauli); auxiliary phase flips at ``aux_pz`` (default ``p``)."""
        return cls(p if aux_pz is None else aux_pz, p / 3, p / 3, p / 3)

    @property
    def is_noiseless(self) -> bool:
        return self.aux_pz == 0 and self.data_px == 0 and self.data_pz == 0 and self.data_py == 0


def _as_construction(construction):
    return build_trace_pcm(construction) if isinstance(construction, LinearCodeQuat) else construction


def _stride(construction) -> int:
    return -(-(construction.aux + construction.k) // 4) * 4


def _stream_key(seed: int) -> np.ndarray:
    return np.random.SeedSequence(seed).generate_state(2, np.uint64)


def trial_uniforms(seed: int, start: int, count: int, width: int) -> np.ndarray:
    """Uniforms for trials ``start .. start + count - 1``, one row of ``width`` per trial.

    ``width`` must be a multiple of 4 so that each trial starts on a fresh
    Philox counter.
    """
    if width % 4:
        raise ValueError("width must be a multiple of 4")
    bitgen = np.random.Philox(key=_stream_key(seed))
    bitgen.advance(start * width // 4)
    return np.random.Generator(bitgen).random((count, width))


def errors_from_uniforms(model: NoiseModel, construction, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Turn rows of uniforms into ``(e_X, e_Z)`` bit arrays over the physical qubits."""
    aux, k = construction.aux, construction.k
    u = np.atleast_2d(u)
    if u.shape[1] < aux + k:
        raise LengthMismatch(f"need {aux + k} uniforms per trial, got {u.shape[1]}")
    ua, ud = u[:, :aux], u[:, aux : aux + k]
    px, pxz = model.data_px, model.data_px + model.data_pz
    pxzy = pxz + model.data_py
    x = ud < px
    z = (ud >= px) & (ud < pxz)
    y = (ud >= pxz) & (ud < pxzy)
    e_X = np.zeros((u.shape[0], aux + k), dtype=np.uint8)
    e_Z = np.zeros_like(e_X)
    e_X[:, aux:] = x | y
    e_Z[:, :aux] = ua < model.aux_pz
    e_Z[:, aux:] = z | y
    return e_X, e_Z


def sample_error(model: NoiseModel, construction, rng: np.random.Generator) -> PauliError:
    construction = _as_construction(construction)
    e_X, e_Z = errors_from_uniforms(model, construction, rng.random((1, construction.aux + construction.k)))
    return PauliError.for_construction(construction, e_X[0], e_Z[0])


def sample_errors(model: NoiseModel, construction, seed: int, start: int, count: int):
    """Errors of trials ``start .. start + count - 1`` as ``(e_X, e_Z)`` arrays."""
    construction = _as_construction(construction)
    return errors_from_uniforms(model, construction, trial_uniforms(seed, start, count, _stride(construction)))


# ---------------------------------------------------------------------------
# trials


@dataclass(frozen=True, eq=False)
class TrialResult:
    """One decoding round.

    ``estimate`` is a GF(4) word for a trace parity-check construction and a
    pair of binary words for a binary pair, or None on decode failure.
    ``success`` means the estimate reproduces the error on the data qubits
    and the phase errors on the auxiliary qubits.
    """

    error: PauliError
    estimate: object
    success: bool
    failure_kind: str | None


def _targets(construction, e_X: np.ndarray, e_Z: np.ndarray):
    """What a perfect decoder would report: the error word(s) seen by the code(s)."""
    l0, aux = construction.l0, construction.aux
    hi = np.concatenate([e_Z[:, :l0], e_X[:, aux:]], axis=1)
    lo = np.concatenate([e_Z[:, l0:aux], e_Z[:, aux:]], axis=1)
    if isinstance(construction, BinaryPairCode):
        return hi, lo
    return gf.gf4_mul(gf.OMEGA2, hi) ^ lo


def _batch_syndromes(construction, e_X: np.ndarray, e_Z: np.ndarray):
    """Closed-form auxiliary readout for a batch, multiplied back by ``A``.

    Vectorised form of :func:`closed_form_outcome` followed by
    :func:`recover_syndromes` for errors with ``e_Xl = 0``.
    """
    aux = construction.aux
    col = gf.gf2_matmul(e_X[:, aux:], construction.N_Z.T) ^ gf.gf2_matmul(e_Z[:, aux:], construction.N_X.T)
    readout = e_Z[:, :aux] ^ gf.gf2_matmul(col, construction.A_inv.T)
    if isinstance(construction, BinaryPairCode):
        l0 = construction.l0
        A_Z = construction.H_Z[:, :l0]
        A_X = construction.H_X[:, : construction.l1]
        return gf.gf2_matmul(readout[:, :l0], A_Z.T), gf.gf2_matmul(readout[:, l0:], A_X.T)
    return gf.gf2_matmul(readout, construction.A.T)


def _compare(construction, target, est, ok):
    if isinstance(construction, BinaryPairCode):
        match = np.all(est[0] == target[0], axis=1) & np.all(est[1] == target[1], axis=1)
    else:
        match = np.all(est == target, axis=1)
    success = ok & match
    kind = np.where(success, 0, np.where(ok, 1, 2)).astype(np.uint8)
    return success, kind


def decode_errors(construction, decoder, e_X, e_Z):
    """Run the frame pipeline on a batch of errors.

    Returns ``(success, kind)`` where ``kind`` is 0 for success, 1 for a
    miscorrection and 2 for a decode failure.
    """
    construction = _as_construction(construction)
    e_X = np.atleast_2d(np.asarray(e_X, dtype=np.uint8))
    e_Z = np.atleast_2d(np.asarray(e_Z, dtype=np.uint8))
    if e_X[:, : construction.aux].any():
        raise ValueError("sampled errors must not put bit errors on auxiliary qubits")
    est, ok = decoder.decode_batch(_batch_syndromes(construction, e_X, e_Z))
    return _compare(construction, _targets(construction, e_X, e_Z), est, ok)


def run_trial(construction, decoder, model: NoiseModel, rng: np.random.Generator, error: PauliError | None = None) -> TrialResult:
    """Sample (or take) one error, decode it through the Pauli frame, and compare.

    The path is the unvectorised one: closed-form outcome, syndrome recovery
    via ``A``, one decoder call.
    """
    construction = _as_construction(construction)
    err = sample_error(model, construction, rng) if error is None else error
    outcome = closed_form_outcome(construction, err)
    syn = recover_syndromes(outcome, construction)
    if isinstance(construction, BinaryPairCode):
        (est0, est1), ok = decoder.decode_batch((syn[0][None, :], syn[1][None, :]))
        est = (est0, est1)
    else:
        est, ok = decoder.decode_batch(syn[None, :])
    target = _targets(construction, err.e_X[None, :], err.e_Z[None, :])
    success, kind = _compare(construction, target, est, ok)
    if not ok[0]:
        estimate = None
    elif isinstance(construction, BinaryPairCode):
        estimate = (est[0][0], est[1][0])
    else:
        estimate = est[0]
    failure = (None, MISCORRECTION, DECODE_FAILURE)[int(kind[0])]
    return TrialResult(err, estimate, bool(success[0]), failure)


# ---------------------------------------------------------------------------
# Monte Carlo


@dataclass(frozen=True)
class MonteCarloReport:
    trials: int
    failures: int
    miscorrections: int
    decode_failures: int
    rate: float
    ci_low: float
    ci_high: float
    seed: int
    wall_clock: float

    def as_dict(self) -> dict:
        return asdict(self)


def wilson_interval(failures: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    ci = binomtest(failures, trials).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)


def _run_blocks(args) -> tuple[int, int]:
    construction, decoder, model, seed, ranges = args
    mis = fail = 0
    for start, count in ranges:
        e_X, e_Z = sample_errors(model, construction, seed, start, count)
        _, kind = decode_errors(construction, decoder, e_X, e_Z)
        mis += int(np.count_nonzero(kind == 1))
        fail += int(np.count_nonzero(kind == 2))
    return mis, fail


def monte_carlo(
    construction,
    decoder,
    model: NoiseModel,
    trials: int,
    seed: int = 0,
    workers: int = 1,
    block: int = BLOCK,
) -> MonteCarloReport:
    """Estimate the logical error rate from ``trials`` independent trials.

    The failure count depends only on ``(seed, trials)``: ``workers`` and
    ``block`` change how the work is scheduled, not which errors are drawn.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    construction = _as_construction(construction)
    t0 = time.perf_counter()
    ranges = [(s, min(block, trials - s)) for s in range(0, trials, block)]
    if model.is_noiseless:
        mis = fail = 0
    elif workers <= 1 or len(ranges) == 1:
        mis, fail = _run_blocks((construction, decoder, model, seed, ranges))
    else:
        chunks = [ranges[i::workers] for i in range(workers)]
        jobs = [(construction, decoder, model, seed, c) for c in chunks if c]
        with ProcessPoolExecutor(max_workers=len(jobs)) as pool:
            parts = list(pool.map(_run_blocks, jobs))
        mis = sum(p[0] for p in parts)
        fail = sum(p[1] for p in parts)
    failures = mis + fail
    lo, hi = wilson_interval(failures, trials)
    return MonteCarloReport(
        trials=trials,
        failures=failures,
        miscorrections=mis,
        decode_failures=fail,
        rate=failures / trials,
        ci_low=lo,
        ci_high=hi,
        seed=seed,
        wall_clock=time.perf_counter() - t0,
    )


def exact_failure_probability(construction, decoder, model: NoiseModel, limit: int = EXACT_LIMIT) -> float:
    """Failure probability summed over every error pattern the model can produce.

    Enumerates ``2^aux * 4^k`` patterns, so only small constructions qualify.
    """
    construction = _as_construction(construction)
    aux, k = construction.aux, construction.k
    total = 2**aux * 4**k
    if total > limit:
        raise ValueError(f"{total} error patterns exceed the enumeration limit {limit}")
    idx = np.arange(total, dtype=np.int64)
    aux_bits = ((idx[:, None] >> np.arange(aux)) & 1).astype(np.uint8)
    paulis = ((idx[:, None] >> (aux + 2 * np.arange(k))) & 3).astype(np.uint8)  # 0=I 1=X 2=Z 3=Y
    e_X = np.concatenate([np.zeros_like(aux_bits), ((paulis == 1) | (paulis == 3)).astype(np.uint8)], axis=1)
    e_Z = np.concatenate([aux_bits, ((paulis == 2) | (paulis == 3)).astype(np.uint8)], axis=1)
    p_aux = np.where(aux_bits == 1, model.aux_pz, 1 - model.aux_pz)
    table = np.array([1 - model.data_px - model.data_pz - model.data_py, model.data_px, model.data_pz, model.data_py])
    prob = np.prod(p_aux, axis=1) * np.prod(table[paulis], axis=1)
    success, _ = decode_errors(construction, decoder, e_X, e_Z)
    return float(prob[~success].sum())


@dataclass(frozen=True)
class AsymmetricComparison:
    biased: MonteCarloReport
    symmetric: MonteCarloReport
    physical_biased: int
    physical_symmetric: int
    logical: int

    def rows(self) -> list[dict]:
        return [
            {"construction": "biased", "physical": self.physical_biased, "logical": self.logical, **self.biased.as_dict()},
            {"construction": "symmetric", "physical": self.physical_symmetric, "logical": self.logical, **self.symmetric.as_dict()},
        ]


def asymmetric_compare(
    pair_biased: BinaryPairCode,
    pair_symmetric: BinaryPairCode,
    model: NoiseModel,
    trials: int,
    seed: int = 0,
    decoders=None,
    workers: int = 1,
) -> AsymmetricComparison:
    """Run both pairs on the same noise and seed; reports the rates next to the qubit counts."""
    if pair_biased.k != pair_symmetric.k:
        raise DimensionMismatch(f"pairs protect {pair_biased.k} and {pair_symmetric.k} logical qubits")
    if decoders is None:
        from .decoders import make_decoder

        decoders = (make_decoder(pair_biased), make_decoder(pair_symmetric))
    rb = monte_carlo(pair_biased, decoders[0], model, trials, seed, workers)
    rs = monte_carlo(pair_symmetric, decoders[1], model, trials, seed, workers)
    return AsymmetricComparison(rb, rs, pair_biased.physical, pair_symmetric.physical, pair_biased.k)
