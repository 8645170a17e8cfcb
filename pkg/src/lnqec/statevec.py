"""Brute-force state-vector check of the encoder/decoder identity.

States are complex numpy vectors of length ``2**N`` with qubit 0 as the most
significant bit, so ``|q0 q1 ... >`` has index ``q0 * 2**(N-1) + ...``. The
auxiliary register always comes first.

The encoder ``Q = sum_mu |mu A><mu A| (x) X^{mu N_X} Z^{mu N_Z}`` is applied
one auxiliary basis state at a time: for basis state ``|v>`` the data
register receives the Pauli labelled by ``mu = v A^{-1}``. This never builds
the ``2**N`` square matrix, except in :func:`encoder_matrix`, which exists to
test the fast path.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from . import gf
from .codes import BinaryPairCode
from .exceptions import CapExceeded, DimensionMismatch, NotProductState
from .frame import FrameOutcome, PauliError, closed_form_outcome_bin, general_outcome

DEFAULT_CAP = 14
FIDELITY_TOL = 1e-10
PRODUCT_TOL = 1e-9


def qubit_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    return int(os.environ.get("LNQEC_CAP", DEFAULT_CAP))


def _check_cap(n_qubits: int, cap: int | None) -> None:
    limit = qubit_cap(cap)
    if n_qubits > limit:
        raise CapExceeded(
            f"{n_qubits} qubits exceed the state-vector cap of {limit}; use a smaller code or raise the cap (LNQEC_CAP)"
        )


def _bits_to_int(bits) -> int:
    out = 0
    for b in np.asarray(bits, dtype=np.uint8).reshape(-1):
        out = (out << 1) | int(b)
    return out


def _int_to_bits(value: int, width: int) -> np.ndarray:
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.uint8)


def _all_bits(width: int) -> np.ndarray:
    """Rows are the binary expansions (MSB first) of 0 .. 2**width - 1."""
    idx = np.arange(2**width, dtype=np.int64)
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] >> shifts) & 1).astype(np.uint8)


def _masks(rows: np.ndarray) -> np.ndarray:
    """Interpret each bit row as an integer, MSB first."""
    width = rows.shape[-1]
    weights = (1 << np.arange(width - 1, -1, -1, dtype=np.int64)) if width else np.zeros(0, dtype=np.int64)
    return rows.astype(np.int64) @ weights


def _parity(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64).copy()
    out = np.zeros_like(x)
    while x.any():
        out ^= x & 1
        x >>= 1
    return out


def random_state(n_qubits: int, rng: np.random.Generator) -> np.ndarray:
    """Normalised complex Gaussian vector (Haar distributed)."""
    v = rng.normal(size=2**n_qubits) + 1j * rng.normal(size=2**n_qubits)
    return v / np.linalg.norm(v)


def basis_state(bits) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.uint8).reshape(-1)
    v = np.zeros(2**bits.size, dtype=complex)
    v[_bits_to_int(bits)] = 1.0
    return v


def x_basis_state(bits) -> np.ndarray:
    """``|b_0>_X (x) |b_1>_X (x) ...`` with ``|0>_X = |+>`` and ``|1>_X = |->``."""
    bits = np.asarray(bits, dtype=np.uint8).reshape(-1)
    if bits.size == 0:
        return np.ones(1, dtype=complex)
    idx = np.arange(2**bits.size, dtype=np.int64)
    sign = _parity(idx & _bits_to_int(bits))
    return (1 - 2 * sign).astype(complex) / np.sqrt(2**bits.size)


def prepare_plus_aux(aux_count: int, psi, cap: int | None = None) -> np.ndarray:
    """``|0>_X^{aux_count} (x) |psi>``."""
    psi = np.asarray(psi, dtype=complex)
    n_data = int(np.log2(psi.size))
    if 2**n_data != psi.size:
        raise DimensionMismatch(f"state length {psi.size} is not a power of two")
    _check_cap(aux_count + n_data, cap)
    return np.kron(x_basis_state(np.zeros(aux_count, dtype=np.uint8)), psi)


def _pauli_apply(state: np.ndarray, xmask, zmask, z_first: bool = True) -> np.ndarray:
    """Apply ``X^x Z^z`` (``z_first``) or ``Z^z X^x`` along the last axis.

    ``xmask`` and ``zmask`` broadcast against the leading axes of ``state``.
    """
    dim = state.shape[-1]
    j = np.arange(dim, dtype=np.int64)
    xmask = np.asarray(xmask, dtype=np.int64)[..., None]
    zmask = np.asarray(zmask, dtype=np.int64)[..., None]
    src = j ^ xmask
    gathered = np.take_along_axis(state, np.broadcast_to(src, state.shape), axis=-1)
    # (X^x Z^z s)[j] = (-1)^{z.(j^x)} s[j^x];  (Z^z X^x s)[j] = (-1)^{z.j} s[j^x]
    sign = _parity((src if z_first else j) & zmask)
    return gathered * (1 - 2 * sign)


def apply_pauli(err: PauliError, state) -> np.ndarray:
    """Apply ``X^{e_X} Z^{e_Z}`` to the full register."""
    state = np.asarray(state, dtype=complex)
    if state.size != 2**err.e_X.size:
        raise DimensionMismatch(f"state of length {state.size} vs error on {err.e_X.size} qubits")
    return _pauli_apply(state, _bits_to_int(err.e_X), _bits_to_int(err.e_Z))


def _data_paulis(construction) -> tuple[np.ndarray, np.ndarray]:
    """Per auxiliary basis state v: the X and Z masks of ``X^{mu N_X} Z^{mu N_Z}``, ``mu = v A^{-1}``."""
    v = _all_bits(construction.aux)
    mu = gf.gf2_matmul(v, construction.A_inv)
    return _masks(gf.gf2_matmul(mu, construction.N_X)), _masks(gf.gf2_matmul(mu, construction.N_Z))


def apply_encoder(construction, state, direction: str = "forward") -> np.ndarray:
    """Apply ``Q`` (``direction="forward"``) or ``Q^dagger`` (``"inverse"``)."""
    state = np.asarray(state, dtype=complex)
    aux, k = construction.aux, construction.k
    if state.size != 2 ** (aux + k):
        raise DimensionMismatch(f"state of length {state.size} does not match {aux} + {k} qubits")
    if direction not in ("forward", "inverse"):
        raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    xm, zm = _data_paulis(construction)
    blocks = state.reshape(2**aux, 2**k)
    out = _pauli_apply(blocks, xm, zm, z_first=(direction == "forward"))
    return out.reshape(-1)


def encoder_matrix(construction) -> np.ndarray:
    """Explicit ``Q`` from its projector-sum definition (small registers only)."""
    aux, k = construction.aux, construction.k
    _check_cap(aux + k, 8)
    Q = np.zeros((2 ** (aux + k),) * 2, dtype=complex)
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    Z = np.diag([1.0, -1.0]).astype(complex)
    for mu in _all_bits(aux):
        v = basis_state(gf.gf2_matmul(mu, construction.A))
        proj = np.outer(v, v.conj())
        xs = gf.gf2_matmul(mu, construction.N_X)
        zs = gf.gf2_matmul(mu, construction.N_Z)
        op = np.ones((1, 1), dtype=complex)
        for xb, zb in zip(xs, zs):
            op = np.kron(op, (X if xb else np.eye(2)) @ (Z if zb else np.eye(2)))
        Q += np.kron(proj, op)
    return Q


def projector_sum(construction) -> np.ndarray:
    """``sum_mu |mu A><mu A|`` on the auxiliary register."""
    aux = construction.aux
    _check_cap(aux, 8)
    total = np.zeros((2**aux, 2**aux), dtype=complex)
    for mu in _all_bits(aux):
        v = basis_state(gf.gf2_matmul(mu, construction.A))
        total += np.outer(v, v.conj())
    return total


def _hadamard_all(blocks: np.ndarray, aux: int) -> np.ndarray:
    """Hadamard on every auxiliary qubit; ``blocks`` has shape (2**aux, rest)."""
    out = blocks.copy()
    rest = out.shape[1]
    for q in range(aux):
        t = out.reshape(2**q, 2, 2 ** (aux - q - 1), rest)
        a, b = t[:, 0].copy(), t[:, 1].copy()
        t[:, 0] = (a + b) / np.sqrt(2)
        t[:, 1] = (a - b) / np.sqrt(2)
    return out


def measure_aux_x_basis(state, aux_count: int, tol: float = PRODUCT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Read the auxiliary register in the X basis when its outcome is deterministic.

    Returns the outcome bits and the normalised data state. Raises
    :class:`NotProductState` when more than ``tol`` of the probability lies
    outside the most likely outcome, i.e. the auxiliary register is not a
    single X-basis product state factored off the data.
    """
    state = np.asarray(state, dtype=complex)
    blocks = state.reshape(2**aux_count, -1)
    h = _hadamard_all(blocks, aux_count)
    probs = np.einsum("ij,ij->i", h, h.conj()).real
    best = int(np.argmax(probs))
    leak = probs.sum() - probs[best]
    if leak > tol:
        raise NotProductState(f"auxiliary register is not a product X-basis state (leaked weight {leak:.3e})")
    return _int_to_bits(best, aux_count), h[best] / np.sqrt(probs[best])


def fidelity(a, b) -> float:
    """``|<a|b>|``, insensitive to global phase."""
    return float(abs(np.vdot(a, b)))


def predicted_state(outcome: FrameOutcome, psi) -> np.ndarray:
    data = _pauli_apply(np.asarray(psi, dtype=complex), _bits_to_int(outcome.residual_X), _bits_to_int(outcome.residual_Z))
    return np.kron(x_basis_state(outcome.aux_outcome), data)


def simulate_decoding(construction, err: PauliError, psi, cap: int | None = None) -> np.ndarray:
    """``Q^dagger X^{e_X} Z^{e_Z} Q |0>_X^aux |psi>``."""
    state = prepare_plus_aux(construction.aux, psi, cap)
    state = apply_encoder(construction, state, "forward")
    state = apply_pauli(err, state)
    return apply_encoder(construction, state, "inverse")


def expected_outcome(construction, err: PauliError) -> FrameOutcome:
    if isinstance(construction, BinaryPairCode) and err.aux_bit_free:
        return closed_form_outcome_bin(construction, err)
    return general_outcome(construction, err)


@dataclass
class OracleReport:
    construction: str
    checks: int = 0
    failures: list[dict] = field(default_factory=list)
    min_fidelity: float = 1.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def merge(self, other: OracleReport) -> None:
        self.checks += other.checks
        self.failures.extend(other.failures)
        self.min_fidelity = min(self.min_fidelity, other.min_fidelity)

    def as_dict(self) -> dict:
        return {
            "construction": self.construction,
            "checks": self.checks,
            "failures": self.failures[:20],
            "failure_count": len(self.failures),
            "min_fidelity": self.min_fidelity,
            "passed": self.passed,
        }


def verify_lemma1(
    construction,
    err: PauliError,
    trials: int = 5,
    rng: np.random.Generator | None = None,
    cap: int | None = None,
    predict=expected_outcome,
) -> OracleReport:
    """Compare the simulated decoded state with the closed form for random inputs.

    Each trial draws a Haar-random data state, simulates encoding, the error
    and decoding, and requires fidelity ``>= 1 - 1e-10`` with the predicted
    state as well as a deterministic X-basis readout equal to the predicted
    ``aux_outcome``.
    """
    _check_cap(construction.physical, cap)
    rng = rng if rng is not None else np.random.default_rng(0)
    outcome = predict(construction, err)
    report = OracleReport(repr(construction))
    for _ in range(trials):
        psi = random_state(construction.k, rng)
        sim = simulate_decoding(construction, err, psi, cap)
        fid = fidelity(sim, predicted_state(outcome, psi))
        report.checks += 1
        report.min_fidelity = min(report.min_fidelity, fid)
        problem = None
        if fid < 1 - FIDELITY_TOL:
            problem = f"fidelity {fid:.12f}"
        else:
            try:
                bits, _ = measure_aux_x_basis(sim, construction.aux)
                if not np.array_equal(bits, outcome.aux_outcome):
                    problem = "readout differs from predicted aux_outcome"
            except NotProductState as exc:
                problem = str(exc)
        if problem:
            report.failures.append({"e_X": err.e_X.tolist(), "e_Z": err.e_Z.tolist(), "problem": problem})
    return report


def all_errors(construction, aux_bit_errors: bool = True):
    """Every ``(e_X, e_Z)`` pair, optionally with ``e_Xl`` forced to zero."""
    phys, aux = construction.physical, construction.aux
    x_rows = _all_bits(phys) if aux_bit_errors else np.hstack(
        [np.zeros((2**construction.k, aux), dtype=np.uint8), _all_bits(construction.k)]
    )
    z_rows = _all_bits(phys)
    for ex in x_rows:
        for ez in z_rows:
            yield PauliError(ex, ez, construction.l0, construction.l1)


def verify_exhaustive(
    construction,
    trials: int = 5,
    seed: int = 0,
    aux_bit_errors: bool = True,
    cap: int | None = None,
) -> OracleReport:
    _check_cap(construction.physical, cap)
    rng = np.random.default_rng(seed)
    report = OracleReport(repr(construction))
    for err in all_errors(construction, aux_bit_errors):
        report.merge(verify_lemma1(construction, err, trials, rng, cap))
    return report
