import numpy as np
import pytest

from trinecode import qmath, trine
from trinecode.measurement import born_channel, sqrt_measurement, validate_povm

import oracles

SQ2, SQ3 = np.sqrt(2), np.sqrt(3)
C = trine.CONSTANTS


def test_constants():
    assert C.cos_half_gamma ** 2 + C.sin_half_gamma ** 2 == pytest.approx(1, abs=1e-15)
    assert 0 < C.epsilon < 0.5
    assert C.a == pytest.approx(1.04197, abs=1e-5)
    assert C.srm_success == pytest.approx((3 + 2 * SQ2) / 6, abs=1e-15)


def test_letter_states():
    assert np.allclose(trine.letter_state(0).vector, [1, 0])
    v = [trine.letter_state(x).vector for x in range(3)]
    assert np.vdot(v[0], v[1]).real == pytest.approx(-0.5)
    assert np.vdot(v[1], v[2]).real == pytest.approx(-0.5)
    with pytest.raises(ValueError):
        trine.letter_state(3)


@pytest.mark.parametrize("x", range(3))
def test_codeword_matches_closed_form(x):
    psi = trine.codeword_state(x).vector
    closed = trine.codeword_vector(2 * np.pi * x / 3)
    assert np.max(np.abs(psi - closed)) <= 1e-12
    assert np.allclose(psi.imag, 0)


def test_codeword_examples():
    assert np.allclose(trine.codeword_state(0).vector, [1, 0, 0, 0])
    assert np.allclose(trine.codeword_state(1).vector, [1 / 4, SQ3 / 4, SQ3 / 4, 3 / 4])
    w0, w1 = trine.codeword_state(0).vector, trine.codeword_state(1).vector
    assert np.vdot(w0, w1).real == pytest.approx(0.25)


def test_acc_povm():
    w = trine.acc_vectors()
    assert np.allclose(w[0], [0, -np.sqrt(2 / 3)])
    assert abs(np.vdot(w[1], trine.letter_state(1).vector)) ** 2 <= 1e-15
    assert np.max(np.abs(sum(trine.acc_povm().elements) - np.eye(2))) <= 1e-12


def test_c1_basis():
    n0, n1 = trine.c1_vectors()
    assert abs(np.vdot(n0, n1)) <= 1e-12
    psi0 = trine.letter_state(0).vector
    assert abs(np.vdot(n0, psi0)) ** 2 == pytest.approx((2 + SQ3) / 4, abs=1e-12)
    assert abs(np.vdot(n1, psi0)) ** 2 == pytest.approx(float(oracles.EPS), abs=1e-12)


def test_srm_closed_form_orthonormal():
    v = np.array(trine.srm_vectors())
    assert np.max(np.abs(v.conj() @ v.T - np.eye(3))) <= 1e-12
    words = [trine.codeword_state(x).vector for x in range(3)]
    assert abs(np.vdot(v[0], words[0])) ** 2 == pytest.approx(0.97140, abs=1e-5)
    assert abs(np.vdot(v[1], words[0])) ** 2 == pytest.approx(0.0142978, abs=1e-7)
    assert validate_povm(trine.srm_povm_closed_form(complete=True)).passed


def test_srm_closed_form_equals_generic_sqrt_measurement():
    generic = sqrt_measurement(trine.codeword_ensemble())
    for a, b in zip(trine.srm_vectors(), generic.rank_one_vectors()):
        assert np.max(np.abs(qmath.fix_phase(a) - qmath.fix_phase(b))) <= 1e-10


@pytest.mark.parametrize("kind", ["acc", "c1", "srm"])
def test_ideal_channel_matches_closed_form(kind):
    ideal = np.asarray(trine.ideal_channel(kind))
    closed = np.asarray(trine.closed_form_channel(kind))
    assert np.max(np.abs(ideal - closed)) <= 1e-12
    assert np.allclose(ideal.sum(axis=1), 1, atol=1e-12)


def test_ideal_channel_values():
    assert np.allclose(np.asarray(trine.ideal_channel("acc"))[0], [0, 0.5, 0.5], atol=1e-15)
    assert np.diag(np.asarray(trine.ideal_channel("srm"))) == pytest.approx([0.97140] * 3, abs=1e-5)
    with pytest.raises(ValueError):
        trine.ideal_channel("bogus")


def test_all_vectors_real():
    vecs = list(trine.acc_vectors()) + list(trine.c1_vectors()) + list(trine.srm_vectors())
    vecs += [trine.letter_state(x).vector for x in range(3)]
    vecs += [trine.codeword_state(x).vector for x in range(3)]
    assert all(np.max(np.abs(v.imag)) == 0 for v in vecs)


def test_rotated_sets_at_zero_offset():
    born = born_channel(trine.rotated_codewords(0.0), trine.srm_povm_closed_form())
    assert np.allclose(np.asarray(born), np.asarray(trine.ideal_channel("srm")), atol=1e-12)
