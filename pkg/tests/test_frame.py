from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lnqec import codes, gf
from lnqec.exceptions import LengthMismatch, PreconditionViolated
from lnqec.frame import (
    PauliError,
    assemble_error_word,
    closed_form_outcome,
    closed_form_outcome_bin,
    closed_form_outcome_quat,
    direct_trace_syndrome,
    error_word_parts,
    general_outcome,
    recover_syndromes,
    trace_syndrome,
)

from .conftest import load

W, W2 = gf.OMEGA, gf.OMEGA2
QUAT_CODES = ["rep3_gf4", "rep3_gf4_scrambled", "hamming_gf4", "hexacode"]


def err(pcm, e_X, e_Z):
    return PauliError.for_construction(pcm, e_X, e_Z)


def random_error(construction, rng, aux_bits=False):
    e_X = rng.integers(0, 2, construction.physical, dtype=np.uint8)
    if not aux_bits:
        e_X[: construction.aux] = 0
    return err(construction, e_X, rng.integers(0, 2, construction.physical, dtype=np.uint8))


class TestSegments:
    def test_accessors(self):
        e = PauliError.from_segments([1, 0, 1, 1], [0], [1, 0], [0, 1], [1])
        assert (e.l0, e.l1, e.aux) == (2, 2, 4)
        assert e.e_Xl.tolist() == [1, 0, 1, 1] and e.e_Xr.tolist() == [0]
        assert e.e_Zl0.tolist() == [1, 0] and e.e_Zl1.tolist() == [0, 1] and e.e_Zr.tolist() == [1]
        assert not e.aux_bit_free

    @given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4), st.data())
    def test_reassembly_round_trip(self, l0, l1, k, data):
        bits = st.lists(st.integers(0, 1), min_size=l0 + l1 + k, max_size=l0 + l1 + k)
        e_X, e_Z = data.draw(bits), data.draw(bits)
        e = PauliError(e_X, e_Z, l0, l1)
        back = PauliError.from_segments(e.e_Xl, e.e_Xr, e.e_Zl0, e.e_Zl1, e.e_Zr)
        assert back.e_X.tolist() == e_X and back.e_Z.tolist() == e_Z

    def test_length_mismatch(self, rep3_pcm):
        with pytest.raises(LengthMismatch):
            PauliError([0, 0], [0, 0, 0], 1, 1)
        with pytest.raises(LengthMismatch):
            assemble_error_word(PauliError([0] * 4, [0] * 4, 2, 2), rep3_pcm)


class TestErrorWord:
    def test_zero(self, rep3_pcm):
        assert assemble_error_word(PauliError.zero(rep3_pcm), rep3_pcm).tolist() == [0, 0, 0]

    def test_phase_on_first_aux(self, rep3_pcm):
        e = err(rep3_pcm, [0] * 5, [1, 0, 0, 0, 0])
        assert assemble_error_word(e, rep3_pcm).tolist() == [W2, 0, 0]

    def test_y_on_data(self, rep3_pcm):
        e = err(rep3_pcm, [0, 0, 0, 0, 1], [0, 0, 0, 0, 1])
        assert assemble_error_word(e, rep3_pcm).tolist() == [0, 0, W]

    def test_weight_counts_erroneous_qubits(self, rep3_pcm, rng):
        # with e_Xl = 0 the word has a nonzero symbol per position (aux pair or data qubit) hit
        for _ in range(50):
            e = random_error(rep3_pcm, rng)
            word = assemble_error_word(e, rep3_pcm)
            hit = np.concatenate([e.e_Zl0 | e.e_Zl1, e.e_Xr | e.e_Zr])
            assert np.array_equal(word != 0, hit.astype(bool))


class TestTraceSyndrome:
    @pytest.mark.parametrize("word, syn", [([0, 0, 0], [0, 0, 0, 0]), ([W, 0, 0], [1, 0, 1, 0]), ([W2, 0, 0], [1, 0, 0, 0])])
    def test_examples(self, rep3_pcm, word, syn):
        assert trace_syndrome(rep3_pcm, word).tolist() == syn
        assert direct_trace_syndrome(rep3_pcm, word).tolist() == syn

    @pytest.mark.parametrize("name", QUAT_CODES)
    def test_prop2_equivalence(self, name, rng):
        pcm = codes.build_trace_pcm(load(name))
        words = rng.integers(0, 4, (10_000, pcm.n), dtype=np.uint8)
        assert np.array_equal(trace_syndrome(pcm, words), direct_trace_syndrome(pcm, words))

    def test_length_mismatch(self, rep3_pcm):
        with pytest.raises(LengthMismatch):
            trace_syndrome(rep3_pcm, [0, 0])


class TestQuaternaryClosedForm:
    def test_zero(self, rep3_pcm):
        out = closed_form_outcome_quat(rep3_pcm, PauliError.zero(rep3_pcm))
        assert not out.aux_outcome.any() and not out.residual_X.any() and not out.residual_Z.any()

    def test_phase_on_first_aux(self, rep3_pcm):
        out = closed_form_outcome_quat(rep3_pcm, err(rep3_pcm, [0] * 5, [1, 0, 0, 0, 0]))
        assert out.aux_outcome.tolist() == [1, 0, 0, 0]
        assert out.residual_X.tolist() == [0] and out.residual_Z.tolist() == [0]

    def test_bit_error_on_first_aux(self, rep3_pcm):
        # residuals pick up row 0 of N_X (= 0) and N_Z (= 1); the N_Z N_X^T term vanishes
        out = closed_form_outcome_quat(rep3_pcm, err(rep3_pcm, [1, 0, 0, 0, 0], [0] * 5))
        assert out.residual_X.tolist() == [0] and out.residual_Z.tolist() == [1]
        assert out.aux_outcome.tolist() == [0, 0, 0, 0]

    def test_bit_error_on_third_aux(self, rep3_pcm):
        # delta = (0,0,1,0): N_X^T delta = 1, so the correction adds column N_Z = (1,1,0,0)
        out = closed_form_outcome_quat(rep3_pcm, err(rep3_pcm, [0, 0, 1, 0, 0], [0] * 5))
        assert out.aux_outcome.tolist() == [1, 1, 0, 0]
        assert out.residual_X.tolist() == [1] and out.residual_Z.tolist() == [0]

    @pytest.mark.parametrize("name", QUAT_CODES)
    def test_matches_general_form(self, name, rng):
        pcm = codes.build_trace_pcm(load(name))
        for _ in range(300):
            e = random_error(pcm, rng, aux_bits=True)
            assert closed_form_outcome_quat(pcm, e) == general_outcome(pcm, e)

    @pytest.mark.parametrize("name", QUAT_CODES)
    def test_specialisation_without_aux_bit_errors(self, name, rng):
        pcm = codes.build_trace_pcm(load(name))
        for _ in range(300):
            e = random_error(pcm, rng)
            out = closed_form_outcome(pcm, e)
            syn = trace_syndrome(pcm, assemble_error_word(e, pcm))
            assert np.array_equal(out.aux_outcome, gf.gf2_matmul(pcm.A_inv, syn))
            assert np.array_equal(out.residual_X, e.e_Xr) and np.array_equal(out.residual_Z, e.e_Zr)
            assert np.array_equal(recover_syndromes(out, pcm), direct_trace_syndrome(pcm, assemble_error_word(e, pcm)))

    @settings(max_examples=60)
    @given(st.integers(0, 2**32 - 1))
    def test_linearity(self, seed):
        pcm = codes.build_trace_pcm(load("hexacode"))
        rng = np.random.default_rng(seed)
        a, b = random_error(pcm, rng), random_error(pcm, rng)
        oa, ob, oab = (closed_form_outcome(pcm, e) for e in (a, b, a ^ b))
        assert np.array_equal(oab.aux_outcome, oa.aux_outcome ^ ob.aux_outcome)
        assert np.array_equal(oab.residual_X, oa.residual_X ^ ob.residual_X)
        assert np.array_equal(oab.residual_Z, oa.residual_Z ^ ob.residual_Z)


class TestBinaryClosedForm:
    def test_zero(self, rep3_pair):
        out = closed_form_outcome_bin(rep3_pair, PauliError.zero(rep3_pair))
        assert not out.aux_outcome.any()

    def test_data_bit_error(self, rep3_pair):
        # H = [[1,1,0],[1,0,1]]: A_Z^-1 = [[0,1],[1,1]], B_Z = (0,1)^T, so A_Z^-1 B_Z = (1,1)
        out = closed_form_outcome_bin(rep3_pair, err(rep3_pair, [0, 0, 0, 0, 1], [0] * 5))
        assert out.aux_outcome.tolist() == [1, 1, 0, 0]
        assert out.residual_X.tolist() == [1] and out.residual_Z.tolist() == [0]

    def test_aux_bit_error_rejected(self, rep3_pair):
        with pytest.raises(PreconditionViolated):
            closed_form_outcome_bin(rep3_pair, err(rep3_pair, [0, 1, 0, 0, 0], [0] * 5))

    def test_matches_general_form_and_recovery(self, rng):
        h = load("hamming74")
        r = load("rep3")
        for pair in (codes.build_binary_pair(h, h), codes.build_binary_pair(r, load("rep5"))):
            for _ in range(300):
                e = random_error(pair, rng)
                out = closed_form_outcome(pair, e)
                assert out == general_outcome(pair, e)
                w0, w1 = error_word_parts(e)
                s0, s1 = recover_syndromes(out, pair)
                assert np.array_equal(s0, gf.gf2_matmul(pair.H_Z, w0))
                assert np.array_equal(s1, gf.gf2_matmul(pair.H_X, w1))


def test_recover_zero_and_unit(rep3_pcm):
    from lnqec.frame import FrameOutcome

    zero = FrameOutcome(np.zeros(4, dtype=np.uint8), np.zeros(1, dtype=np.uint8), np.zeros(1, dtype=np.uint8))
    assert not recover_syndromes(zero, rep3_pcm).any()
    unit = FrameOutcome(np.array([1, 0, 0, 0], dtype=np.uint8), zero.residual_X, zero.residual_Z)
    assert recover_syndromes(unit, rep3_pcm).tolist() == [1, 0, 0, 0]
