"""Mutual information, single-letter limits and superadditive coding gains.

All information quantities are in bits.
"""

from dataclasses import dataclass, field
from itertools import combinations, product
from math import log2, pi, sqrt

import numpy as np
from scipy.optimize import minimize
from scipy.spatial.transform import Rotation

from . import trine
from .measurement import (
    Ensemble,
    LabeledState,
    Povm,
    born_channel,
    bsc,
    sqrt_measurement,
    validate_povm,
)
from .trine import CONSTANTS

GOLDEN = (sqrt(5) - 1) / 2


@dataclass(frozen=True)
class InfoResult:
    bits: float
    n: int = 1
    meta: str = ""
    per_letter: float = field(init=False)

    def __post_init__(self):
        if self.bits < -1e-12:
            raise ValueError(f"negative information {self.bits}")
        object.__setattr__(self, "per_letter", self.bits / self.n)


@dataclass(frozen=True)
class SweepCurve:
    offsets: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if len(self.offsets) != len(self.values):
            raise ValueError("offsets and values differ in length")
        if np.any(np.diff(self.offsets) <= 0):
            raise ValueError("offsets must be strictly increasing")

    def value_at(self, offset, tol=1e-12):
        idx = np.flatnonzero(np.abs(self.offsets - offset) <= tol)
        if idx.size == 0:
            raise KeyError(offset)
        return float(self.values[idx[0]])


def binary_entropy(p):
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * log2(p) - (1 - p) * log2(1 - p)


def entropy(p):
    p = np.asarray(p, dtype=float)
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


def mutual_information(priors, channel):
    """Shannon mutual information ``I(X:Y)`` of a channel under input ``priors``.

    Terms with ``P(y|x) = 0`` contribute nothing.
    """
    p = np.asarray(channel, dtype=float)
    priors = np.asarray(priors, dtype=float)
    if priors.shape != (p.shape[0],):
        raise ValueError(f"{priors.size} priors for a channel with {p.shape[0]} inputs")
    q = priors @ p
    total = 0.0
    for x, px in enumerate(priors):
        if px == 0:
            continue
        row = p[x]
        nz = row > 0
        total += px * float(np.sum(row[nz] * np.log2(row[nz] / q[nz])))
    return float(max(total, 0.0))


def uniform(n):
    return np.full(n, 1.0 / n)


def binary_c1(kappa):
    """Capacity of two pure letters with overlap ``kappa``, decoded letter by letter."""
    if not 0.0 <= kappa <= 1.0:
        raise ValueError("overlap must lie in [0, 1]")
    eps = (1 - sqrt(max(0.0, 1 - kappa * kappa))) / 2
    return 1.0 - binary_entropy(eps)


def c1_trine():
    return mutual_information(uniform(2), bsc(CONSTANTS.epsilon))


def _real_qubit_povm(angles):
    """Weights making ``sum_k w_k |theta_k><theta_k| = I``; ``None`` if infeasible."""
    angles = np.asarray(angles, dtype=float)
    c, s = np.cos(angles), np.sin(angles)
    if angles.size == 2:
        if abs(np.cos(angles[0] - angles[1])) > 1e-9:
            return None
        return np.ones(2)
    a = np.vstack([c * c, c * s, s * s])
    try:
        w = np.linalg.solve(a, np.array([1.0, 0.0, 1.0]))
    except np.linalg.LinAlgError:
        return None
    if np.any(w < -1e-12):
        return None
    return np.clip(w, 0.0, None)


def _povm_from_angles(angles, weights):
    vecs = [sqrt(w) * np.array([np.cos(t), np.sin(t)]) for t, w in zip(angles, weights)]
    return Povm.from_vectors(vecs)


def _info_for_angles(ensemble, angles):
    w = _real_qubit_povm(angles)
    if w is None:
        return -1.0
    vecs = ensemble.vectors().real
    c, s = np.cos(angles), np.sin(angles)
    amp = c[None, :] * vecs[0][:, None] + s[None, :] * vecs[1][:, None]
    p = amp ** 2 * w[None, :]
    return mutual_information(ensemble.priors, p / p.sum(axis=1, keepdims=True))


def _golden_max(f, lo, hi, iters=60):
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def accessible_info_optimize(ensemble, max_outcomes=3, grid=48, rounds=3):
    """Maximise mutual information over real rank-1 POVMs on a qubit.

    POVM vectors are ``sqrt(w_k) (cos t_k, sin t_k)``; the weights follow
    from the three completeness equations, so only the angles are searched.
    Three outcomes suffice for real qubit ensembles, so larger
    ``max_outcomes`` is capped at 3. Two-outcome (projective) measurements are
    always tried as well.

    The search runs a coarse angle grid followed by ``rounds`` sweeps of
    per-coordinate golden-section refinement.

    Returns
    -------
    povm : Povm
    bits : float
    """
    if ensemble.dim != 2:
        raise ValueError("optimiser handles qubit ensembles only")
    if np.max(np.abs(ensemble.vectors().imag)) > 1e-12:
        raise ValueError("optimiser handles real-amplitude ensembles only")
    if max_outcomes < ensemble.dim:
        raise ValueError("need at least as many outcomes as the dimension")
    n_out = min(max_outcomes, 3)

    # projective: a single angle
    ts = np.linspace(0, pi / 2, 4 * grid, endpoint=False)
    vals = [_info_for_angles(ensemble, [t, t + pi / 2]) for t in ts]
    t0 = ts[int(np.argmax(vals))]
    step = ts[1] - ts[0]
    t_best, best = _golden_max(
        lambda t: _info_for_angles(ensemble, [t, t + pi / 2]), t0 - step, t0 + step, 80
    )
    best_angles = np.array([t_best, t_best + pi / 2])

    if n_out == 3:
        ts = np.linspace(0, pi, grid, endpoint=False)
        step = ts[1] - ts[0]
        cand = None
        for i, j, k in combinations(range(grid), 3):
            angles = ts[[i, j, k]]
            v = _info_for_angles(ensemble, angles)
            if cand is None or v > cand[0]:
                cand = (v, angles)
        if cand is not None and cand[0] >= 0:
            v3, angles = cand[0], cand[1].copy()
            width = step
            for _ in range(rounds):
                for k in range(3):
                    def f(t, k=k):
                        trial = angles.copy()
                        trial[k] = t
                        return _info_for_angles(ensemble, trial)
                    t, v = _golden_max(f, angles[k] - width, angles[k] + width)
                    if v >= v3:
                        angles[k], v3 = t, v
                width /= 2
            if v3 > best:
                best, best_angles = v3, angles

    weights = _real_qubit_povm(best_angles)
    keep = weights > 1e-12
    povm = _povm_from_angles(best_angles[keep], weights[keep])
    report = validate_povm(povm)
    if not report:
        raise RuntimeError(f"optimiser produced an invalid POVM: {report}")
    return povm, float(mutual_information(ensemble.priors, born_channel(ensemble, povm)))


SWEEP_KINDS = ("acc_polarization", "srm_collective")


def default_grid(points=121):
    return np.linspace(-pi / 3, pi / 3, points)


def offset_sweep(kind, grid=None):
    """Mutual information as the signal set is rotated against a fixed decoder.

    ``acc_polarization`` rotates the trine letters and measures with the
    accessible-information POVM; ``srm_collective`` shifts the code-word
    parameter of all three code words and decodes with the square-root
    measurement. Both curves peak at zero offset and have period 2 pi / 3.
    """
    grid = default_grid() if grid is None else np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError("empty offset grid")
    if kind == "acc_polarization":
        povm, make = trine.acc_povm(), trine.rotated_letters
    elif kind == "srm_collective":
        povm, make = trine.srm_povm_closed_form(complete=True), trine.rotated_codewords
    else:
        raise ValueError(f"unknown sweep kind {kind!r}; expected one of {SWEEP_KINDS}")
    vals = [mutual_information(uniform(3), born_channel(make(off), povm)) for off in grid]
    return SweepCurve(grid, np.array(vals))


def superadditivity_report():
    i_acc = mutual_information(uniform(3), trine.ideal_channel("acc"))
    c1 = c1_trine()
    i2 = mutual_information(uniform(3), trine.ideal_channel("srm"))
    return {
        "I_acc": i_acc,
        "C1": c1,
        "I2": i2,
        "I2_per_letter": i2 / 2,
        "gain": i2 / 2 - c1,
    }


def binary_letters(kappa):
    """Two real letters with overlap ``kappa``."""
    return (np.array([1.0, 0.0], dtype=complex),
            np.array([kappa, sqrt(max(0.0, 1 - kappa * kappa))], dtype=complex))


def binary_words(kappa, words):
    letters = binary_letters(kappa)
    states = []
    for w in words:
        v = letters[w[0]]
        for c in w[1:]:
            v = np.kron(v, letters[c])
        states.append(LabeledState(tuple(w), v))
    return states


LENGTH3_WORDS = ((0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1))


def _srm_info(states, priors):
    ens = Ensemble(tuple(states), priors)
    return mutual_information(ens.priors, born_channel(ens, sqrt_measurement(ens, complete=True)))


def _span_coords(states):
    """Coordinates of real states in an orthonormal basis of their span."""
    m = np.column_stack([s.vector.real for s in states])
    q, _ = np.linalg.qr(m)
    return q.T @ m


def _projective_info(coords, priors, rotvec):
    r = Rotation.from_rotvec(rotvec).as_matrix()
    p = (r.T @ coords).T ** 2
    return mutual_information(priors, p / p.sum(axis=1, keepdims=True))


def _best_projective_info(states, starts=6, seed=0):
    """Best information from a von Neumann measurement in the 3-d span, over
    measurement orientation and input priors jointly (Nelder-Mead restarts)."""
    coords = _span_coords(states)
    if coords.shape[0] != 3:
        raise ValueError("expected three linearly independent real states")
    rng = np.random.default_rng(seed)

    def priors_of(z):
        e = np.exp(np.append(z, 0.0))
        return e / e.sum()

    def neg(z):
        return -_projective_info(coords, priors_of(z[3:]), z[:3])

    # orientation of the square-root measurement as the first start
    srm = sqrt_measurement(Ensemble(tuple(states)))
    basis = np.column_stack([v.real for v in srm.vectors])
    q, _ = np.linalg.qr(np.column_stack([s.vector.real for s in states]))
    r0 = q.T @ basis
    if np.linalg.det(r0) < 0:
        r0[:, 0] *= -1
    x0s = [np.append(Rotation.from_matrix(r0).as_rotvec(), [0.0, 0.0])]
    x0s += [np.append(rng.normal(size=3), 0.3 * rng.normal(size=2)) for _ in range(starts - 1)]
    best = None
    for x0 in x0s:
        res = minimize(neg, x0, method="Nelder-Mead",
                       options={"xatol": 1e-9, "fatol": 1e-13, "maxiter": 4000})
        if best is None or res.fun < best.fun:
            best = res
    return -best.fun, priors_of(best.x[3:])


def binary_block_gain(kappa, length, decoder=None, prior_step=0.01):
    """Per-letter gain of a short binary block code over ``binary_c1(kappa)``.

    length 3
        Words ``001, 010, 100, 111`` (pairwise Hamming distance 2) with
        uniform priors, decoded by the square-root measurement.
    length 2
        Every three-word subset of ``{00, 01, 10, 11}``. With
        ``decoder="srm"`` priors are searched on a simplex grid of
        ``prior_step`` and decoding uses the square-root measurement; with
        the default ``decoder="optimal"`` the von Neumann measurement in the
        span of the words is optimised jointly with the priors.

    Returns
    -------
    dict
        ``gain`` (bits per letter), ``info`` (bits per block), ``c1``,
        ``words`` and ``priors`` of the best configuration.
    """
    if not 0.0 < kappa < 1.0:
        raise ValueError("overlap must lie strictly between 0 and 1")
    c1 = binary_c1(kappa)
    if length == 3:
        decoder = decoder or "srm"
        if decoder != "srm":
            raise ValueError("length-3 study uses the square-root measurement")
        states = binary_words(kappa, LENGTH3_WORDS)
        info = _srm_info(states, uniform(4))
        return {"gain": info / 3 - c1, "info": info, "c1": c1,
                "words": LENGTH3_WORDS, "priors": uniform(4)}
    if length != 2:
        raise ValueError("length must be 2 or 3")
    decoder = decoder or "optimal"
    best = None
    for words in combinations(tuple(product((0, 1), repeat=2)), 3):
        states = binary_words(kappa, words)
        if decoder == "optimal":
            info, priors = _best_projective_info(states)
        elif decoder == "srm":
            info, priors = -1.0, None
            steps = int(round(1 / prior_step))
            for i in range(1, steps):
                for j in range(1, steps - i):
                    pr = np.array([i, j, steps - i - j]) / steps
                    v = _srm_info(states, pr)
                    if v > info:
                        info, priors = v, pr
        else:
            raise ValueError(f"unknown decoder {decoder!r}")
        if best is None or info > best[0]:
            best = (info, words, priors)
    info, words, priors = best
    return {"gain": info / 2 - c1, "info": info, "c1": c1, "words": words, "priors": priors}
