"""The qubit trine: letter states, length-2 code words and their measurements.

Two-qubit vectors use the ordering ``|00>, |01>, |10>, |11>`` throughout,
first letter most significant. Every constructed vector is real; its
global phase is fixed so the first non-zero amplitude is positive, except
where the closed forms below pin a sign explicitly.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import acos, pi, sqrt

import numpy as np

from . import qmath
from .measurement import (
    NULL,
    ChannelMatrix,
    Ensemble,
    LabeledState,
    Povm,
    born_channel,
    bsc,
)

SQRT2 = sqrt(2.0)
SQRT3 = sqrt(3.0)
SQRT6 = sqrt(6.0)

LETTERS = (0, 1, 2)
CODEWORDS = ((0, 0), (1, 1), (2, 2))


@dataclass(frozen=True)
class TrineConstants:
    kappa: float = -0.5
    cos_half_gamma: float = (SQRT2 + 1) / SQRT6
    sin_half_gamma: float = (SQRT2 - 1) / SQRT6
    cos_half_gamma_acc: float = 1 / SQRT3  # cot(pi/3)
    a: float = (4 + SQRT2) / (3 * SQRT3)
    b: float = -(2 - SQRT2) / (3 * SQRT3)
    epsilon: float = (2 - SQRT3) / 4

    @property
    def gamma(self):
        return 2 * acos(self.cos_half_gamma)

    @property
    def gamma_acc(self):
        return 2 * acos(self.cos_half_gamma_acc)

    @property
    def sin_half_gamma_acc(self):
        return sqrt(1 - self.cos_half_gamma_acc ** 2)

    @property
    def srm_success(self):
        """Diagonal of the collective-decoding channel, cos^2(gamma/2)."""
        return self.cos_half_gamma ** 2

    @property
    def srm_confusion(self):
        """Each off-diagonal entry, sin^2(gamma/2) / 2."""
        return 0.5 * self.sin_half_gamma ** 2


CONSTANTS = TrineConstants()


def _check_letter(x):
    if x not in LETTERS:
        raise ValueError(f"trine letter must be 0, 1 or 2, got {x!r}")


def letter_vector(phi):
    """Real qubit ``cos(phi/2)|0> + sin(phi/2)|1>``.

    ``phi = 2 pi x / 3`` gives the trine letter ``x`` up to sign; shifting
    ``phi`` rotates the whole letter set.
    """
    return np.array([np.cos(phi / 2), np.sin(phi / 2)], dtype=complex)


def codeword_vector(phi):
    """``letter_vector(phi)`` tensored with itself, written out in closed form."""
    c, s = np.cos(phi), np.sin(phi)
    return np.array([(1 + c) / 2, s / 2, s / 2, (1 - c) / 2], dtype=complex)


def letter_state(x):
    _check_letter(x)
    v = {
        0: (1.0, 0.0),
        1: (-0.5, -SQRT3 / 2),
        2: (-0.5, SQRT3 / 2),
    }[x]
    return LabeledState(x, np.array(v, dtype=complex))


def codeword_state(x):
    _check_letter(x)
    psi = letter_state(x).vector
    return LabeledState((x, x), qmath.tensor(psi, psi))


def letter_ensemble(letters=LETTERS):
    return Ensemble(tuple(letter_state(x) for x in letters))


def codeword_ensemble():
    return Ensemble(tuple(codeword_state(x) for x in LETTERS))


def acc_vectors():
    """The three measurement vectors attaining the accessible information."""
    c = CONSTANTS.cos_half_gamma_acc
    s = CONSTANTS.sin_half_gamma_acc
    r = 1 / SQRT2
    return (
        np.array([0.0, -s], dtype=complex),
        np.array([-r, r * c], dtype=complex),
        np.array([r, r * c], dtype=complex),
    )


def acc_povm():
    return Povm.from_vectors(acc_vectors(), LETTERS)


def c1_vectors():
    """Orthonormal basis discriminating letters 0 and 1 at the C1 limit."""
    p = sqrt(2 + SQRT3) / SQRT3
    m = sqrt(2 - SQRT3) / SQRT3
    psi0, psi1 = letter_state(0).vector, letter_state(1).vector
    return p * psi0 + m * psi1, m * psi0 + p * psi1


def c1_basis():
    return Povm.from_vectors(c1_vectors(), (0, 1))


def srm_vectors():
    a, b = CONSTANTS.a, CONSTANTS.b
    words = [codeword_state(x).vector for x in LETTERS]
    return tuple(
        a * words[y] + b * sum(words[x] for x in LETTERS if x != y) for y in LETTERS
    )


def singlet():
    return np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / SQRT2


def srm_povm_closed_form(complete=False):
    """Collective decoder for the three code words.

    Outcome labels are ``(y, y)``. With ``complete=True`` the singlet
    projector is appended as a ``"null"`` outcome so the elements resolve
    the two-qubit identity.
    """
    vecs = srm_vectors()
    labels = CODEWORDS
    if complete:
        vecs = vecs + (singlet(),)
        labels = labels + (NULL,)
    return Povm.from_vectors(vecs, labels)


@lru_cache(maxsize=None)
def _ideal(kind):
    if kind == "acc":
        return born_channel(letter_ensemble(), acc_povm())
    if kind == "c1":
        return born_channel(letter_ensemble((0, 1)), c1_basis())
    if kind == "srm":
        return born_channel(codeword_ensemble(), srm_povm_closed_form())
    raise ValueError(f"unknown channel kind {kind!r}; expected acc, c1 or srm")


def ideal_channel(kind):
    """Noiseless channel of one of the three decoders.

    ``acc``: trine letters with the accessible-information POVM.
    ``c1``: letters 0 and 1 with the orthonormal C1 basis (a BSC).
    ``srm``: code words with the collective square-root decoder.
    """
    return _ideal(kind)


def closed_form_channel(kind):
    """The same channels written directly from their closed-form entries."""
    if kind == "acc":
        return ChannelMatrix(0.5 * (np.ones((3, 3)) - np.eye(3)), LETTERS, LETTERS)
    if kind == "c1":
        return bsc(CONSTANTS.epsilon)
    if kind == "srm":
        p = np.full((3, 3), CONSTANTS.srm_confusion)
        np.fill_diagonal(p, CONSTANTS.srm_success)
        return ChannelMatrix(p, CODEWORDS, CODEWORDS)
    raise ValueError(f"unknown channel kind {kind!r}")


def rotated_letters(offset):
    """Trine letters with every encoding parameter shifted by ``offset``."""
    return Ensemble(tuple(
        LabeledState(x, letter_vector(2 * pi * x / 3 + offset)) for x in LETTERS
    ))


def rotated_codewords(offset):
    return Ensemble(tuple(
        LabeledState((x, x), codeword_vector(2 * pi * x / 3 + offset)) for x in LETTERS
    ))
