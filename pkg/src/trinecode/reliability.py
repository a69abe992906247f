"""Random-coding error exponents and finite-length error bounds.

Compares plain classical coding over the binary symmetric channel of the
C1 scheme with quantum-classical hybrid coding (QCHC), where pairs of
letters are decoded collectively and the resulting ternary symmetric
channel carries an outer classical code of half the length.

Logarithms are base 2 throughout, so exponents are in bits and
``P_e <= 2**(-n * E_r)``.
"""

import csv
import io
import warnings
from dataclasses import dataclass
from math import ceil, log2, sqrt

import numpy as np

from .infotheory import binary_entropy, mutual_information, uniform
from .trine import CONSTANTS, closed_form_channel

LOG2_3 = log2(3.0)
BELOW_R0 = "below_R0"
ABOVE_R0 = "above_R0"
SCHEMES = ("classical", "qchc")

RHO_MIN = 1e-6
GOLDEN = (sqrt(5) - 1) / 2


@dataclass(frozen=True)
class ExponentResult:
    er: float
    rho_star: float = None
    regime: str = None
    warning: str = None

    def __float__(self):
        return self.er


def bsc_epsilon():
    return CONSTANTS.epsilon


def ternary_channel():
    """Ternary symmetric channel of the collective decoder."""
    return closed_form_channel("srm")


def capacity(channel, priors=None):
    p = np.asarray(channel)
    priors = uniform(p.shape[0]) if priors is None else priors
    return mutual_information(priors, p)


def e0(rho, priors, channel):
    """Gallager's function ``E_0(rho, P)`` in bits, for ``0 < rho <= 1``."""
    if not 0.0 < rho <= 1.0:
        raise ValueError(f"rho must lie in (0, 1], got {rho}")
    p = np.asarray(channel, dtype=float)
    priors = np.asarray(priors, dtype=float)
    inner = priors @ np.power(p, 1.0 / (1.0 + rho))
    return float(-log2(np.sum(np.power(inner, 1.0 + rho))))


def _golden_max(f, lo, hi, tol=1e-10, max_iter=200):
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    # the maximiser may sit on the boundary rho = 1
    cands = [(fc, c), (fd, d), (f(hi), hi)]
    return max(cands)[::-1]


def er_general(rate, channel, priors="uniform"):
    """Random-coding exponent ``max_rho [E_0(rho) - rho R]`` for uniform inputs.

    The maximisation over ``rho`` in ``(1e-6, 1]`` uses golden-section
    search, valid because ``E_0 - rho R`` is concave in ``rho``. Only the
    uniform input distribution is supported; it is optimal for the
    symmetric channels considered here.

    A rate at or above the channel's mutual information returns ``er = 0``
    with a warning attached.
    """
    if priors != "uniform":
        raise NotImplementedError("only uniform input distributions are supported")
    if rate < 0:
        raise ValueError("rate must be non-negative")
    p = np.asarray(channel, dtype=float)
    q = uniform(p.shape[0])
    cap = mutual_information(q, p)
    if rate >= cap:
        msg = f"rate {rate} is not below the channel's mutual information {cap:.6f}"
        warnings.warn(msg, stacklevel=2)
        return ExponentResult(0.0, None, None, msg)
    rho, val = _golden_max(lambda r: e0(r, q, p) - r * rate, RHO_MIN, 1.0)
    regime = BELOW_R0 if rho >= 1.0 - 1e-6 else ABOVE_R0
    return ExponentResult(max(val, 0.0), rho, regime)


def _bisect(f, lo, hi, tol=1e-12, max_iter=200):
    """Root of a monotone ``f`` on ``[lo, hi]`` (sign change required)."""
    flo = f(lo)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= tol:
            break
    return 0.5 * (lo + hi)


def tilted_bsc(eps, rho):
    s = 1.0 / (1.0 + rho)
    return eps ** s / (eps ** s + (1 - eps) ** s)


def er_bsc_closed(rate, eps):
    """Closed-form exponent for the binary symmetric channel.

    Below the critical rate ``R_0 = 1 - H(eps_1)`` the exponent is the
    straight line ``1 - 2 log2(sqrt(eps) + sqrt(1-eps)) - R``. Above it the
    tilted crossover ``eps_rho`` solving ``R = 1 - H(eps_rho)`` is found by
    bisection and the exponent is the divergence ``D(eps_rho || eps)``.
    """
    if not 0.0 < eps < 0.5:
        raise ValueError("crossover probability must lie in (0, 1/2)")
    cap = 1.0 - binary_entropy(eps)
    if not 0.0 <= rate < cap:
        raise ValueError(f"rate must lie in [0, {cap:.6f})")
    eps1 = tilted_bsc(eps, 1.0)
    r0 = 1.0 - binary_entropy(eps1)
    if rate <= r0:
        er = 1.0 - 2.0 * log2(sqrt(eps) + sqrt(1 - eps)) - rate
        return ExponentResult(er, 1.0, BELOW_R0)
    # 1 - H(t) falls from R_0 to the capacity-achieving point as t rises to eps
    t = _bisect(lambda t: 1.0 - binary_entropy(t) - rate, eps, eps1)
    er = t * log2(t / eps) + (1 - t) * log2((1 - t) / (1 - eps))
    rho = _rho_from_tilt(lambda r: tilted_bsc(eps, r), t)
    return ExponentResult(er, rho, ABOVE_R0)


def tilted_ternary(rho):
    s = 1.0 / (1.0 + rho)
    c2 = CONSTANTS.cos_half_gamma ** 2
    s2 = CONSTANTS.sin_half_gamma ** 2
    return s2 ** s / (0.5 * (2 * c2) ** s + s2 ** s)


def ternary_rate(g):
    return LOG2_3 - g - binary_entropy(g)


def er_ternary_closed(rate):
    """Closed-form exponent for the collective decoder's ternary symmetric channel.

    Below ``R_0`` the exponent is ``log2 3 - 2 log2(cos(g/2) + sqrt2 sin(g/2)) - R``;
    above, the tilted confusion mass ``G`` solving ``R = log2 3 - G - H(G)``
    gives ``G log2(G / sin^2(g/2)) + (1-G) log2((1-G) / cos^2(g/2))``.
    """
    c, s = CONSTANTS.cos_half_gamma, CONSTANTS.sin_half_gamma
    s2 = s * s
    cap = ternary_rate(s2)
    if not 0.0 <= rate < cap:
        raise ValueError(f"rate must lie in [0, {cap:.6f})")
    g1 = tilted_ternary(1.0)
    r0 = ternary_rate(g1)
    if rate <= r0:
        er = LOG2_3 - 2.0 * log2(c + sqrt(2.0) * s) - rate
        return ExponentResult(er, 1.0, BELOW_R0)
    g = _bisect(lambda g: ternary_rate(g) - rate, s2, g1)
    er = g * log2(g / s2) + (1 - g) * log2((1 - g) / (c * c))
    rho = _rho_from_tilt(tilted_ternary, g)
    return ExponentResult(er, rho, ABOVE_R0)


def _rho_from_tilt(tilt, target):
    """Invert a monotone tilt map on ``(0, 1]``."""
    return _bisect(lambda r: tilt(r) - target, 0.0, 1.0)


def critical_rate(kind):
    if kind == "classical":
        return 1.0 - binary_entropy(tilted_bsc(bsc_epsilon(), 1.0))
    if kind == "qchc":
        return ternary_rate(tilted_ternary(1.0))
    raise ValueError(f"unknown scheme {kind!r}")


def scheme_rate(k_over_n, scheme):
    """Channel rate for a code of rate ``k/n`` bits per letter."""
    if scheme == "classical":
        return k_over_n
    if scheme == "qchc":
        return k_over_n * LOG2_3
    raise ValueError(f"unknown scheme {scheme!r}; expected classical or qchc")


def ceiling(scheme):
    """Largest ``k/n`` each scheme can carry."""
    if scheme == "classical":
        return 1.0 - binary_entropy(bsc_epsilon())
    if scheme == "qchc":
        return ternary_rate(CONSTANTS.sin_half_gamma ** 2) / LOG2_3
    raise ValueError(f"unknown scheme {scheme!r}")


def scheme_exponent(k_over_n, scheme):
    rate = scheme_rate(k_over_n, scheme)
    if k_over_n >= ceiling(scheme):
        raise ValueError(f"k/n = {k_over_n} is at or above the {scheme} ceiling {ceiling(scheme):.4f}")
    if scheme == "classical":
        return er_bsc_closed(rate, bsc_epsilon()).er
    return er_ternary_closed(rate).er


def log2_error_bound(n, k_over_n, scheme):
    """Base-2 logarithm of ``error_bound``; does not underflow at long lengths."""
    if n < 1:
        raise ValueError("code length must be positive")
    if scheme == "qchc" and n % 2:
        raise ValueError("hybrid coding needs an even code length")
    er = scheme_exponent(k_over_n, scheme)
    blocks = n if scheme == "classical" else n / 2
    return -blocks * er


def error_bound(n, k_over_n, scheme):
    """Random-coding bound on the block error probability at length ``n``.

    classical: ``2**(-n E_r^C(k/n))``;
    qchc: ``2**(-(n/2) E_r^QC((k/n) log2 3))`` over ``n/2`` letter pairs.
    Very long codes underflow to 0; use ``log2_error_bound`` to compare them.
    """
    return 2.0 ** log2_error_bound(n, k_over_n, scheme)


def codelength_for(target_pe, k_over_n, scheme):
    """Smallest length (even for qchc) whose error bound reaches ``target_pe``."""
    if not 0.0 < target_pe <= 1.0:
        raise ValueError("target error probability must lie in (0, 1]")
    er = scheme_exponent(k_over_n, scheme)
    step = 1 if scheme == "classical" else 2
    if er <= 0:
        raise ValueError("zero exponent: no finite length reaches the target")
    blocks = -log2(target_pe) / er
    n = max(step, step * ceil(blocks - 1e-12))
    while n > step and error_bound(n - step, k_over_n, scheme) <= target_pe:
        n -= step
    while error_bound(n, k_over_n, scheme) > target_pe:
        n += step
    return n


CSV_COLUMNS = ("scheme", "k_over_n", "R", "n", "Er", "Pe_bound")


def qchc_compare(rates, lengths):
    """Table of both schemes' bounds over code rates and even lengths.

    Returns a list of dict rows with keys ``CSV_COLUMNS``, ordered by
    scheme, then rate, then length.
    """
    rows = []
    for scheme in SCHEMES:
        for k in rates:
            er = scheme_exponent(k, scheme)
            for n in lengths:
                if scheme == "qchc" and n % 2:
                    raise ValueError("lengths must be even for the hybrid scheme")
                rows.append({
                    "scheme": scheme,
                    "k_over_n": k,
                    "R": scheme_rate(k, scheme),
                    "n": int(n),
                    "Er": er,
                    "Pe_bound": error_bound(n, k, scheme),
                })
    return rows


def rows_to_csv(rows, columns=CSV_COLUMNS):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (f"{v:.10g}" if isinstance(v, float) else v) for k, v in r.items()})
    return buf.getvalue()


def decoding_complexity(n):
    """Operation count ``(n log2 n)**2`` with unit constant."""
    return (n * log2(n)) ** 2


def effective_rate(rate, n, tau0):
    """Information rate in bits/s when decoding costs ``(n log2 n)**2`` steps of ``tau0`` s.

    The constant in front of the operation count is unknown and set to 1,
    so only ratios between settings are meaningful.
    """
    if n < 2:
        raise ValueError("code length must be at least 2")
    if tau0 <= 0:
        raise ValueError("step time must be positive")
    return rate * n / (decoding_complexity(n) * tau0)
