"""Pauli errors as bit vectors and the closed-form result of decoding.

Qubits are ordered auxiliary register first, then the ``k`` data qubits::

    e_X = (e_Xl | e_Xr)            e_Xl: aux,  e_Xr: data
    e_Z = (e_Zl0 | e_Zl1 | e_Zr)   e_Zl0: first l0 aux, e_Zl1: next l1 aux

For a trace parity-check construction ``l0 = l1 = n - k``; for a binary
pair ``l0 = n0 - k`` and ``l1 = n1 - k``.

Everything here is classical bookkeeping. States are described only up to
global phase; :mod:`lnqec.statevec` checks these formulas against a direct
simulation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf
from .codes import BinaryPairCode, TracePcm
from .exceptions import LengthMismatch, PreconditionViolated


def _bits(v) -> np.ndarray:
    return np.asarray(v, dtype=np.uint8).reshape(-1) & 1


@dataclass(frozen=True, eq=False)
class PauliError:
    """Bit-error and phase-error locations on the physical qubits.

    ``l0`` and ``l1`` give the sizes of the two halves of the auxiliary
    register; the data register holds the remaining qubits.
    """

    e_X: np.ndarray
    e_Z: np.ndarray
    l0: int
    l1: int

    def __post_init__(self):
        object.__setattr__(self, "e_X", _bits(self.e_X))
        object.__setattr__(self, "e_Z", _bits(self.e_Z))
        if self.e_X.size != self.e_Z.size:
            raise LengthMismatch(f"e_X has {self.e_X.size} bits, e_Z has {self.e_Z.size}")
        if self.e_X.size < self.l0 + self.l1:
            raise LengthMismatch("error vectors shorter than the auxiliary register")

    @classmethod
    def zero(cls, construction) -> PauliError:
        z = np.zeros(construction.physical, dtype=np.uint8)
        return cls(z, z, construction.l0, construction.l1)

    @classmethod
    def for_construction(cls, construction, e_X, e_Z) -> PauliError:
        err = cls(e_X, e_Z, construction.l0, construction.l1)
        if err.e_X.size != construction.physical:
            raise LengthMismatch(f"expected {construction.physical} bits, got {err.e_X.size}")
        return err

    @classmethod
    def from_segments(cls, e_Xl, e_Xr, e_Zl0, e_Zl1, e_Zr) -> PauliError:
        e_Xl, e_Zl0, e_Zl1 = _bits(e_Xl), _bits(e_Zl0), _bits(e_Zl1)
        return cls(
            np.concatenate([e_Xl, _bits(e_Xr)]),
            np.concatenate([e_Zl0, e_Zl1, _bits(e_Zr)]),
            e_Zl0.size,
            e_Zl1.size,
        )

    @property
    def aux(self) -> int:
        return self.l0 + self.l1

    @property
    def e_Xl(self) -> np.ndarray:
        return self.e_X[: self.aux]

    @property
    def e_Xr(self) -> np.ndarray:
        return self.e_X[self.aux :]

    @property
    def e_Zl(self) -> np.ndarray:
        return self.e_Z[: self.aux]

    @property
    def e_Zl0(self) -> np.ndarray:
        return self.e_Z[: self.l0]

    @property
    def e_Zl1(self) -> np.ndarray:
        return self.e_Z[self.l0 : self.aux]

    @property
    def e_Zr(self) -> np.ndarray:
        return self.e_Z[self.aux :]

    @property
    def aux_bit_free(self) -> bool:
        """True when the auxiliary qubits carry no bit errors (the less-noisy channel)."""
        return not self.e_Xl.any()

    def __xor__(self, other: PauliError) -> PauliError:
        return PauliError(self.e_X ^ other.e_X, self.e_Z ^ other.e_Z, self.l0, self.l1)


@dataclass(frozen=True, eq=False)
class FrameOutcome:
    """X-basis readout of the auxiliary register and the Pauli left on the data."""

    aux_outcome: np.ndarray
    residual_X: np.ndarray
    residual_Z: np.ndarray

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FrameOutcome)
            and np.array_equal(self.aux_outcome, other.aux_outcome)
            and np.array_equal(self.residual_X, other.residual_X)
            and np.array_equal(self.residual_Z, other.residual_Z)
        )


def _check(err: PauliError, construction) -> None:
    if err.e_X.size != construction.physical or (err.l0, err.l1) != (construction.l0, construction.l1):
        raise LengthMismatch(
            f"error on {err.e_X.size} qubits split ({err.l0}, {err.l1}) does not fit a construction with "
            f"{construction.physical} qubits split ({construction.l0}, {construction.l1})"
        )


def assemble_error_word(err: PauliError, construction: TracePcm) -> np.ndarray:
    """The GF(4) word ``w^2 (e_Zl0, e_Xr) + (e_Zl1, e_Zr)`` of length n.

    Its weight is the number of erroneous qubits when the auxiliary qubits
    carry no bit errors.
    """
    _check(err, construction)
    hi = np.concatenate([err.e_Zl0, err.e_Xr])
    lo = np.concatenate([err.e_Zl1, err.e_Zr])
    return gf.gf4_mul(gf.OMEGA2, hi) ^ lo


def error_word_parts(err: PauliError) -> tuple[np.ndarray, np.ndarray]:
    """Binary words ``(e_Zl0, e_Xr)`` and ``(e_Zl1, e_Zr)`` seen by the two codes of a pair."""
    return np.concatenate([err.e_Zl0, err.e_Xr]), np.concatenate([err.e_Zl1, err.e_Zr])


def trace_syndrome(pcm: TracePcm, e) -> np.ndarray:
    """``Tr(H_Q e^T)`` computed from binary matrices as ``H_Z Tr(e) + H_X Tr(w e)``.

    Accepts one word or a batch of words (one per row).
    """
    e = np.asarray(e, dtype=np.uint8)
    if e.shape[-1] != pcm.n:
        raise LengthMismatch(f"word length {e.shape[-1]} != n = {pcm.n}")
    tr = gf.trace(e)
    tr_w = gf.trace(gf.gf4_mul(gf.OMEGA, e))
    return gf.gf2_matmul(tr, pcm.H_Z.T) ^ gf.gf2_matmul(tr_w, pcm.H_X.T)


def direct_trace_syndrome(pcm: TracePcm, e) -> np.ndarray:
    """``Tr(H_Q e^T)`` evaluated with GF(4) arithmetic; used as a cross-check."""
    e = np.asarray(e, dtype=np.uint8)
    if e.shape[-1] != pcm.n:
        raise LengthMismatch(f"word length {e.shape[-1]} != n = {pcm.n}")
    return gf.trace(gf.gf4_matmul(e, pcm.H_Q.T))


def general_outcome(construction, err: PauliError) -> FrameOutcome:
    """General closed form, valid with bit errors on the auxiliary register too.

    With ``delta = e_Xl A^{-1}``::

        aux_outcome = e_Zl + A^{-1} (N_Z e_Xr + N_X e_Zr + N_Z N_X^T delta^T)
        residual_X  = delta N_X + e_Xr
        residual_Z  = delta N_Z + e_Zr

    which for a trace parity-check matrix is the same as
    ``A^{-1} (Tr(H_Q e^T) + N_Z N_X^T delta^T)``.
    """
    _check(err, construction)
    A_inv, N_Z, N_X = construction.A_inv, construction.N_Z, construction.N_X
    delta = gf.gf2_matmul(err.e_Xl, A_inv)
    col = gf.gf2_matmul(N_Z, err.e_Xr) ^ gf.gf2_matmul(N_X, err.e_Zr) ^ gf.gf2_matmul(N_Z, gf.gf2_matmul(N_X.T, delta))
    aux = err.e_Zl ^ gf.gf2_matmul(A_inv, col)
    return FrameOutcome(
        aux_outcome=aux,
        residual_X=gf.gf2_matmul(delta, N_X) ^ err.e_Xr,
        residual_Z=gf.gf2_matmul(delta, N_Z) ^ err.e_Zr,
    )


def closed_form_outcome_quat(pcm: TracePcm, err: PauliError) -> FrameOutcome:
    """Decoded state for a trace parity-check construction, written via the trace syndrome."""
    _check(err, pcm)
    e = assemble_error_word(err, pcm)
    delta = gf.gf2_matmul(err.e_Xl, pcm.A_inv)
    correction = gf.gf2_matmul(pcm.N_Z, gf.gf2_matmul(pcm.N_X.T, delta))
    aux = gf.gf2_matmul(pcm.A_inv, trace_syndrome(pcm, e) ^ correction)
    return FrameOutcome(
        aux_outcome=aux,
        residual_X=gf.gf2_matmul(delta, pcm.N_X) ^ err.e_Xr,
        residual_Z=gf.gf2_matmul(delta, pcm.N_Z) ^ err.e_Zr,
    )


def closed_form_outcome_bin(pair: BinaryPairCode, err: PauliError) -> FrameOutcome:
    """Decoded state for a binary pair; only defined without aux bit errors."""
    _check(err, pair)
    if not err.aux_bit_free:
        raise PreconditionViolated("the binary closed form assumes no bit errors on auxiliary qubits")
    w0, w1 = error_word_parts(err)
    aux0 = gf.gf2_matmul(pair.A_Z_inv, gf.gf2_matmul(pair.H_Z, w0))
    aux1 = gf.gf2_matmul(pair.A_X_inv, gf.gf2_matmul(pair.H_X, w1))
    return FrameOutcome(np.concatenate([aux0, aux1]), err.e_Xr.copy(), err.e_Zr.copy())


def closed_form_outcome(construction, err: PauliError) -> FrameOutcome:
    if isinstance(construction, TracePcm):
        return closed_form_outcome_quat(construction, err)
    if isinstance(construction, BinaryPairCode):
        return closed_form_outcome_bin(construction, err)
    raise TypeError(f"unsupported construction {type(construction).__name__}")


def recover_syndromes(outcome: FrameOutcome, construction):
    """Multiply the auxiliary readout by ``A``.

    Returns the trace syndrome for a trace parity-check construction, and
    the pair ``(H_Z (e_Zl0, e_Xr)^T, H_X (e_Zl1, e_Zr)^T)`` for a binary pair.
    """
    aux = np.asarray(outcome.aux_outcome, dtype=np.uint8)
    if aux.size != construction.aux:
        raise LengthMismatch(f"readout has {aux.size} bits, expected {construction.aux}")
    if isinstance(construction, BinaryPairCode):
        r0 = construction.l0
        return (
            gf.gf2_matmul(construction.H_Z[:, :r0], aux[:r0]),
            gf.gf2_matmul(construction.H_X[:, : construction.l1], aux[r0:]),
        )
    return gf.gf2_matmul(construction.A, aux)
