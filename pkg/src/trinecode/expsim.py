"""Optics model and seeded photon-counting simulation of the trine experiments.

Counting statistics use ``numpy.random.Generator`` on the ``PCG64``
bit generator; a ``CountTable`` is reproducible from its seed.
"""

import csv
import io
import json
from dataclasses import asdict, dataclass, field, replace
from math import atan, pi, sqrt

import numpy as np

from . import trine
from .infotheory import InfoResult, mutual_information, uniform
from .measurement import ChannelMatrix

RNG_ALGORITHM = "numpy.random.PCG64"

# average visibilities reported for each measurement
REPORTED_VISIBILITY = {"acc_pol": 0.9916, "acc_loc": 0.9905, "srm": 0.9848}
MEASURED_BITS = {"acc_pol": 0.560, "acc_loc": 0.557, "c1": 0.644, "srm": 1.312}

EXPERIMENTS = ("acc_pol", "acc_loc", "c1", "srm")
# decoders that close an interferometer; the C1 readout is a waveplate and
# polarizer (or bare path detection) and has no fringe to degrade
INTERFEROMETRIC = {"acc_pol": True, "acc_loc": True, "c1": False, "srm": True}


def hwp_matrix(theta):
    """Half-wave plate with fast axis at ``theta`` from vertical, basis ``(H, V)``."""
    c, s = np.cos(2 * theta), np.sin(2 * theta)
    return np.array([[-c, s], [s, c]])


def pbs_matrix():
    """Polarizing beam splitter on modes ``(H_A, V_A, H_B, V_B)``.

    Horizontal light is transmitted, vertical light is reflected into the
    other path with a factor ``i``.
    """
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = 1.0
    m[3, 1] = 1j
    m[2, 2] = 1.0
    m[1, 3] = 1j
    return m


def bs_matrix():
    """Lossless 50:50 beam splitter on two paths."""
    return np.array([[1, 1j], [1j, 1]], dtype=complex) / sqrt(2.0)


def phase_matrix(delta):
    return np.diag([1.0, np.exp(1j * delta)])


@dataclass(frozen=True)
class OpticsElement:
    kind: str
    param: float = 0.0
    ports: tuple = ()

    def matrix(self):
        if self.kind == "hwp":
            return hwp_matrix(self.param).astype(complex)
        if self.kind == "pbs":
            return pbs_matrix()
        if self.kind == "bs_50_50":
            return bs_matrix()
        if self.kind == "phase":
            return phase_matrix(self.param)
        raise ValueError(f"unknown optics element {self.kind!r}")


def encoder_angles(phi):
    """Half-wave plate angles ``(theta_0, theta_1, theta_2)`` encoding code word ``phi``.

    The formulas are 0/0 at ``phi = 0`` (for ``theta_2``) and ``phi = pi``
    (for ``theta_1``); there the one-sided limit from inside ``(0, pi)`` is
    used. The affected amplitude vanishes at those points, so the choice
    does not change the output state.
    """
    c, s = np.cos(phi), np.sin(phi)
    t0 = 0.5 * atan(sqrt(max(0.0, (1 - c) / (1 + c)))) if 1 + c > 1e-15 else pi / 4
    t1 = 0.5 * atan(-s / (1 + c)) if 1 + c > 1e-15 else -pi / 4
    t2 = 0.5 * atan(-s / (1 - c)) if 1 - c > 1e-15 else -pi / 4
    return t0, t1, t2


def encoder_state(phi):
    """Polarization-location state produced by the three-waveplate encoder."""
    t0, t1, t2 = encoder_angles(phi)
    c0, s0 = np.cos(2 * t0), np.sin(2 * t0)
    c1, s1 = np.cos(2 * t1), np.sin(2 * t1)
    c2, s2 = np.cos(2 * t2), np.sin(2 * t2)
    return np.array([c0 * c1, -s0 * s2, -c0 * s1, s0 * c2], dtype=complex)


@dataclass(frozen=True)
class NoiseModel:
    """Imperfections of the counting experiment.

    ``visibility`` contracts each channel row toward uniform:
    ``P' = v P + (1 - v) / |Y|`` with ``v = visibility`` (``contraction="linear"``,
    the fringe-contrast law of a two-port interferometer) or
    ``v = visibility**2`` (``"squared"``). Dark counts (per detector) and
    background (shared by all detectors) add a uniform floor.
    """

    visibility: float = 1.0
    dark_rate: float = 0.0
    background_rate: float = 0.0
    detector_efficiency: float = 1.0
    contraction: str = "linear"

    def __post_init__(self):
        if not 0.0 <= self.visibility <= 1.0:
            raise ValueError("visibility must lie in [0, 1]")
        if self.dark_rate < 0 or self.background_rate < 0:
            raise ValueError("count rates must be non-negative")
        if not 0.0 < self.detector_efficiency <= 1.0:
            raise ValueError("detector efficiency must lie in (0, 1]")
        if self.contraction not in ("linear", "squared"):
            raise ValueError("contraction must be 'linear' or 'squared'")

    @classmethod
    def nominal(cls, visibility=1.0):
        """Detector figures of the reported setup: 100/s dark, 300/s background, 70 %."""
        return cls(visibility, 100.0, 300.0, 0.7)

    @property
    def coherence(self):
        return self.visibility if self.contraction == "linear" else self.visibility ** 2

    def without_floor(self):
        return replace(self, dark_rate=0.0, background_rate=0.0)


DEFAULT_SIGNAL_RATE = 1e6
DEFAULT_DURATION = 5.0


def noisy_channel(ideal, nm, signal_rate=DEFAULT_SIGNAL_RATE, duration=DEFAULT_DURATION):
    """Expected channel seen through the noise model.

    The floor weight per row is the expected noise count over the expected
    total count, with ``signal_rate * detector_efficiency * duration``
    signal photons per input.
    """
    p = np.asarray(ideal, dtype=float)
    n_out = p.shape[1]
    v = nm.coherence
    p = v * p + (1.0 - v) / n_out
    noise = (nm.dark_rate * n_out + nm.background_rate) * duration
    signal = signal_rate * nm.detector_efficiency * duration
    if noise > 0:
        f = noise / (signal + noise)
        p = (1.0 - f) * p + f / n_out
    p = p / p.sum(axis=1, keepdims=True)
    labels = getattr(ideal, "input_labels", None), getattr(ideal, "output_labels", None)
    return ChannelMatrix(p, *labels)


def _label_str(lab):
    if isinstance(lab, tuple):
        return "".join(str(c) for c in lab)
    return str(lab)


@dataclass(frozen=True)
class CountTable:
    counts: np.ndarray
    duration: float
    seed: int
    input_labels: tuple = None
    output_labels: tuple = None
    noise: NoiseModel = field(default_factory=NoiseModel)

    def __post_init__(self):
        c = np.array(self.counts, dtype=np.int64)
        if c.ndim != 2 or np.any(c < 0):
            raise ValueError("counts must be a non-negative 2-D table")
        c.setflags(write=False)
        object.__setattr__(self, "counts", c)
        if self.input_labels is None:
            object.__setattr__(self, "input_labels", tuple(range(c.shape[0])))
        if self.output_labels is None:
            object.__setattr__(self, "output_labels", tuple(range(c.shape[1])))

    def to_csv(self):
        """Rows ``input,outcome,count`` in input-major order."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["input", "outcome", "count"])
        for i, xin in enumerate(self.input_labels):
            for j, yout in enumerate(self.output_labels):
                w.writerow([_label_str(xin), _label_str(yout), int(self.counts[i, j])])
        return buf.getvalue()

    def sidecar(self):
        return {
            "duration": self.duration,
            "seed": self.seed,
            "rng": RNG_ALGORITHM,
            "noise_model": asdict(self.noise),
        }

    def sidecar_json(self):
        return json.dumps(self.sidecar(), indent=2, sort_keys=True)

    @classmethod
    def from_csv(cls, text, sidecar):
        rows = list(csv.DictReader(io.StringIO(text)))
        ins = list(dict.fromkeys(r["input"] for r in rows))
        outs = list(dict.fromkeys(r["outcome"] for r in rows))
        counts = np.zeros((len(ins), len(outs)), dtype=np.int64)
        for r in rows:
            counts[ins.index(r["input"]), outs.index(r["outcome"])] = int(r["count"])
        meta = json.loads(sidecar) if isinstance(sidecar, str) else sidecar
        return cls(counts, meta["duration"], meta["seed"], tuple(ins), tuple(outs),
                   NoiseModel(**meta["noise_model"]))


def simulate_counts(channel, mean_total, duration, nm, seed):
    """Photon counts for each input of ``channel``.

    Per input the number of detected signal photons is
    ``Poisson(mean_total * detector_efficiency * duration)``, split
    multinomially over outcomes; every detector then adds
    ``Poisson(dark_rate * duration)`` dark counts and an equal share of
    ``Poisson``-distributed background. Inputs are drawn in row order from
    one generator seeded with ``seed``.
    """
    if mean_total < 0 or duration <= 0:
        raise ValueError("need mean_total >= 0 and duration > 0")
    p = np.asarray(channel, dtype=float)
    n_in, n_out = p.shape
    rng = np.random.Generator(np.random.PCG64(seed))
    counts = np.zeros((n_in, n_out), dtype=np.int64)
    floor = (nm.dark_rate + nm.background_rate / n_out) * duration
    for x in range(n_in):
        n = rng.poisson(mean_total * nm.detector_efficiency * duration)
        counts[x] = rng.multinomial(n, p[x] / p[x].sum())
        if floor > 0:
            counts[x] += rng.poisson(floor, size=n_out)
    return CountTable(counts, duration, seed,
                      getattr(channel, "input_labels", None),
                      getattr(channel, "output_labels", None), nm)


def estimate_channel(ct):
    """Row-normalised channel estimate and its multinomial standard errors."""
    c = ct.counts.astype(float)
    totals = c.sum(axis=1, keepdims=True)
    if np.any(totals == 0):
        raise ValueError("every input needs at least one count")
    p = c / totals
    stderr = np.sqrt(p * (1 - p) / totals)
    return ChannelMatrix(p, ct.input_labels, ct.output_labels), stderr


def ideal_for(kind):
    if kind in ("acc_pol", "acc_loc"):
        return trine.ideal_channel("acc")
    if kind == "c1":
        return trine.ideal_channel("c1")
    if kind == "srm":
        # drop the never-firing singlet port; the decoder has three detectors
        return trine.ideal_channel("srm")
    raise ValueError(f"unknown experiment {kind!r}; expected one of {EXPERIMENTS}")


def model_channel(kind, nm, signal_rate=DEFAULT_SIGNAL_RATE, duration=DEFAULT_DURATION):
    """Expected channel for an experiment, including the noise floor."""
    if not INTERFEROMETRIC[kind]:
        nm = replace(nm, visibility=1.0)
    return noisy_channel(ideal_for(kind), nm, signal_rate, duration)


def model_information(kind, nm, **kw):
    ch = model_channel(kind, nm, **kw)
    return mutual_information(uniform(ch.shape[0]), ch)


def reproduce_experiment(kind, nm, seed, mean_total=DEFAULT_SIGNAL_RATE,
                         duration=DEFAULT_DURATION, return_counts=False):
    """Simulate one experiment end to end and report the estimated information.

    ideal channel -> visibility contraction -> seeded counts with dark and
    background photons -> estimated channel -> mutual information under
    uniform inputs. The floor enters once, through the sampled counts.
    Visibility is ignored for the ``c1`` readout, which has no interferometer.
    """
    if kind not in EXPERIMENTS:
        raise ValueError(f"unknown experiment {kind!r}; expected one of {EXPERIMENTS}")
    eff_nm = nm if INTERFEROMETRIC[kind] else replace(nm, visibility=1.0)
    coherent = noisy_channel(ideal_for(kind), eff_nm.without_floor())
    ct = simulate_counts(coherent, mean_total, duration, eff_nm, seed)
    est, _ = estimate_channel(ct)
    bits = mutual_information(uniform(est.shape[0]), est)
    n = 2 if kind == "srm" else 1
    res = InfoResult(bits, n, f"{kind} seed={seed} V={nm.visibility}")
    return (res, ct) if return_counts else res


def calibrate_visibility(target, kind="srm", base=None, lo=0.97, hi=1.0, tol=1e-10, **kw):
    """Visibility at which the expected information equals ``target`` (bisection).

    Raises ``ValueError`` when ``target`` is not bracketed by ``[lo, hi]``.
    """
    base = NoiseModel.nominal() if base is None else base

    def f(v):
        return model_information(kind, replace(base, visibility=v), **kw) - target

    flo, fhi = f(lo), f(hi)
    if flo > 0 or fhi < 0:
        raise ValueError(f"target {target} not bracketed by visibilities [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
