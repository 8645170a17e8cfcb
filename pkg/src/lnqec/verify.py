"""Named consistency checks over one construction, as run by ``lnqec verify``.

Each check returns a :class:`Check`; :func:`verify_construction` collects
them. The state-vector oracle is the expensive one. The others are cheap
algebraic identities that catch a construction whose blocks disagree with
its parity-check matrices, which the oracle alone cannot see: a corrupted
``N_Z`` still defines a valid encoder, just not the one for this code.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from . import gf, statevec
from .codes import BinaryPairCode, TracePcm
from .decoders import build_table
from .exceptions import DistanceViolation
from .frame import (
    PauliError,
    assemble_error_word,
    closed_form_outcome,
    direct_trace_syndrome,
    error_word_parts,
    general_outcome,
    recover_syndromes,
    trace_syndrome,
)

PASS, FAIL, SKIP = "pass", "fail", "skipped"
RANDOM_SAMPLES = 10_000
EXHAUSTIVE_LIMIT = 1 << 16


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""
    count: int = 0


@dataclass
class VerifyReport:
    construction: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.checks if c.status == FAIL]

    def as_dict(self) -> dict:
        return {"construction": self.construction, "passed": self.passed, "checks": [asdict(c) for c in self.checks]}


def _result(name: str, bad: int, count: int, detail: str = "") -> Check:
    return Check(name, PASS if bad == 0 else FAIL, detail or f"{bad} of {count} mismatched", count)


def _sample_errors(construction, rng, aux_bit_errors: bool):
    """All errors when there are few enough, otherwise a random sample."""
    phys = construction.physical
    if 4**phys <= EXHAUSTIVE_LIMIT:
        yield from statevec.all_errors(construction, aux_bit_errors)
        return
    for _ in range(RANDOM_SAMPLES):
        e_X = rng.integers(0, 2, phys, dtype=np.uint8)
        if not aux_bit_errors:
            e_X[: construction.aux] = 0
        yield PauliError(e_X, rng.integers(0, 2, phys, dtype=np.uint8), construction.l0, construction.l1)


def check_state_vector_oracle(construction, trials: int, seed: int, cap: int | None, aux_bit_errors: bool = True) -> Check:
    name = "state_vector_oracle" if aux_bit_errors else "binary_closed_form_oracle"
    rep = statevec.verify_exhaustive(construction, trials, seed, aux_bit_errors, cap)
    detail = f"min fidelity {rep.min_fidelity:.15f}"
    if rep.failures:
        detail = f"{len(rep.failures)} failures, first: {rep.failures[0]}"
    return Check(name, PASS if rep.passed else FAIL, detail, rep.checks)


def check_a_invertible(construction) -> Check:
    I = np.eye(construction.aux, dtype=np.uint8)
    ok = np.array_equal(gf.gf2_matmul(construction.A, construction.A_inv), I)
    ok &= np.array_equal(gf.gf2_matmul(construction.A_inv, construction.A), I)
    return Check("a_invertible", PASS if ok else FAIL, "" if ok else "A A^-1 != I", 1)


def check_blocks(construction) -> Check:
    """``A``, ``N_Z`` and ``N_X`` are the blocks the parity-check matrices say they are."""
    problems = []
    if isinstance(construction, TracePcm):
        r = construction.aux // 2
        if not np.array_equal(construction.H_Q, construction.H_Z ^ gf.gf4_mul(gf.OMEGA, construction.H_X)):
            problems.append("H_Q != H_Z + w H_X")
        if not np.array_equal(construction.H_Q[:r], construction.code.H):
            problems.append("top half of H_Q is not H")
        expect_A = np.hstack([construction.H_Z[:, :r], construction.H_X[:, :r]])
        expect_NZ, expect_NX = construction.H_Z[:, r:], construction.H_X[:, r:]
    else:
        l0, l1, k = construction.l0, construction.l1, construction.k
        expect_A = np.zeros((l0 + l1, l0 + l1), dtype=np.uint8)
        expect_A[:l0, :l0] = construction.H_Z[:, :l0]
        expect_A[l0:, l0:] = construction.H_X[:, :l1]
        expect_NZ = np.vstack([construction.H_Z[:, l0:], np.zeros((l1, k), dtype=np.uint8)])
        expect_NX = np.vstack([np.zeros((l0, k), dtype=np.uint8), construction.H_X[:, l1:]])
    for label, got, want in (("A", construction.A, expect_A), ("N_Z", construction.N_Z, expect_NZ), ("N_X", construction.N_X, expect_NX)):
        if got.shape != want.shape or not np.array_equal(got, want):
            problems.append(f"{label} block disagrees with the parity-check matrix")
    return Check("block_consistency", FAIL if problems else PASS, "; ".join(problems), 1)


def check_closed_form(construction, rng) -> Check:
    """The specialised closed form agrees with the general one wherever it applies."""
    bad = count = 0
    aux_bits = isinstance(construction, TracePcm)
    for err in _sample_errors(construction, rng, aux_bit_errors=aux_bits):
        count += 1
        bad += closed_form_outcome(construction, err) != general_outcome(construction, err)
    return _result("closed_form_consistency", bad, count)


def check_syndrome_recovery(construction, rng) -> Check:
    """``A`` times the closed-form readout equals the syndrome computed from the matrices directly."""
    bad = count = 0
    for err in _sample_errors(construction, rng, aux_bit_errors=False):
        count += 1
        got = recover_syndromes(closed_form_outcome(construction, err), construction)
        if isinstance(construction, TracePcm):
            want = direct_trace_syndrome(construction, assemble_error_word(err, construction))
            bad += not np.array_equal(got, want)
        else:
            w0, w1 = error_word_parts(err)
            bad += not (
                np.array_equal(got[0], gf.gf2_matmul(construction.H_Z, w0))
                and np.array_equal(got[1], gf.gf2_matmul(construction.H_X, w1))
            )
    return _result("syndrome_recovery", bad, count)


def check_trace_syndrome(pcm: TracePcm, rng, samples: int = RANDOM_SAMPLES) -> Check:
    """Binary Z/X-matrix syndrome against GF(4) arithmetic on random words."""
    words = rng.integers(0, 4, (samples, pcm.n), dtype=np.uint8)
    bad = int(np.count_nonzero(np.any(trace_syndrome(pcm, words) != direct_trace_syndrome(pcm, words), axis=1)))
    return _result("trace_syndrome_equivalence", bad, samples)


def check_injectivity(construction) -> Check:
    """Distinct syndromes for all correctable words (skipped without a known distance)."""
    targets = [construction] if isinstance(construction, TracePcm) else [construction.code0, construction.code1]
    total = 0
    for target in targets:
        code = target.code if isinstance(target, TracePcm) else target
        if code.t is None:
            return Check("syndrome_injectivity", SKIP, "minimum distance unknown")
        try:
            total += len(build_table(target, code.t))
        except DistanceViolation as exc:
            return Check("syndrome_injectivity", FAIL, str(exc), total)
    return Check("syndrome_injectivity", PASS, "", total)


def verify_construction(construction, trials: int = 5, seed: int = 0, cap: int | None = None) -> VerifyReport:
    """Run every check; raises :class:`~lnqec.exceptions.CapExceeded` before doing any work if too big."""
    statevec._check_cap(construction.physical, cap)
    rng = np.random.default_rng(seed)
    report = VerifyReport(repr(construction))
    report.checks.append(check_blocks(construction))
    report.checks.append(check_a_invertible(construction))
    if isinstance(construction, TracePcm):
        report.checks.append(check_trace_syndrome(construction, rng))
    report.checks.append(check_syndrome_recovery(construction, rng))
    report.checks.append(check_closed_form(construction, rng))
    report.checks.append(check_injectivity(construction))
    if isinstance(construction, BinaryPairCode):
        report.checks.append(check_state_vector_oracle(construction, trials, seed, cap, aux_bit_errors=False))
    report.checks.append(check_state_vector_oracle(construction, trials, seed, cap, aux_bit_errors=True))
    return report
