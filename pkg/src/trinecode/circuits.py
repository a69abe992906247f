"""Two-level (Givens) decomposition and two-qubit circuit compilation.

Qubits are numbered 1 and 2; qubit 1 is the most significant bit of the
basis index (``|q1 q2>``), which matches the letter ordering of the code
words.
"""

import re
from dataclasses import dataclass
from math import sqrt

import numpy as np

from . import qmath
from .measurement import NULL, naimark_extend
from .trine import CONSTANTS, CODEWORDS, acc_povm

UNITARY_TOL = 1e-12
ON_ZERO, ON_ONE = 0, 1

X = np.array([[0, 1], [1, 0]], dtype=complex)

# computational basis index -> decoded code word, for decoder_unitary()
DECODER_OUTCOMES = (CODEWORDS[0], CODEWORDS[2], NULL, CODEWORDS[1])


@dataclass(frozen=True)
class TwoLevelRotation:
    """A unitary acting as ``block`` on ``span{|i>, |j>}`` and as identity elsewhere."""

    i: int
    j: int
    block: np.ndarray

    def __post_init__(self):
        if not 0 <= self.i < self.j:
            raise ValueError(f"need 0 <= i < j, got ({self.i}, {self.j})")
        block = np.asarray(self.block, dtype=complex)
        if block.shape != (2, 2) or qmath.unitarity_error(block) > UNITARY_TOL:
            raise ValueError("rotation block must be a 2x2 unitary")
        object.__setattr__(self, "block", block)

    def matrix(self, dim):
        m = np.eye(dim, dtype=complex)
        idx = [self.i, self.j]
        m[np.ix_(idx, idx)] = self.block
        return m


@dataclass(frozen=True)
class GateOp:
    """Single-qubit gate on ``target``, optionally conditioned on ``control``.

    ``control`` is ``(qubit, polarity)`` with polarity ``ON_ZERO`` (open
    circle) or ``ON_ONE`` (filled circle).
    """

    target: int
    matrix: np.ndarray
    control: tuple = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (2, 2) or qmath.unitarity_error(m) > UNITARY_TOL:
            raise ValueError("gate matrix must be a 2x2 unitary")
        object.__setattr__(self, "matrix", m)
        if self.control is not None:
            q, pol = self.control
            if q == self.target or pol not in (ON_ZERO, ON_ONE):
                raise ValueError(f"bad control {self.control!r}")
            object.__setattr__(self, "control", (int(q), int(pol)))

    @property
    def kind(self):
        return "single_qubit" if self.control is None else "controlled_single_qubit"

    def full_matrix(self, n_qubits=2):
        dim = 2 ** n_qubits
        m = np.zeros((dim, dim), dtype=complex)
        shift = n_qubits - self.target
        for col in range(dim):
            bits = [(col >> (n_qubits - q)) & 1 for q in range(1, n_qubits + 1)]
            if self.control is not None and bits[self.control[0] - 1] != self.control[1]:
                m[col, col] = 1.0
                continue
            tb = (col >> shift) & 1
            for nb in (0, 1):
                row = (col & ~(1 << shift)) | (nb << shift)
                m[row, col] += self.matrix[nb, tb]
        return m


@dataclass(frozen=True)
class GateSequence:
    """Gates in time order: ``gates[0]`` acts first."""

    gates: tuple
    n_qubits: int = 2

    @property
    def dim(self):
        return 2 ** self.n_qubits

    def __len__(self):
        return len(self.gates)

    def matrix(self):
        m = np.eye(self.dim, dtype=complex)
        for g in self.gates:
            m = g.full_matrix(self.n_qubits) @ m
        return m

    def to_text(self):
        return "\n".join(format_gate(g) for g in self.gates)

    @classmethod
    def from_text(cls, text, n_qubits=2):
        gates = [parse_gate(line) for line in text.splitlines() if line.strip()]
        return cls(tuple(gates), n_qubits)


def _fmt_complex(z):
    z = complex(z)
    if abs(z.imag) < 1e-15:
        return repr(float(z.real))
    return repr(z).strip("()")


def format_gate(g):
    """One line: ``CTRL q1=0 TARGET q2 U=[[a,b],[c,d]]`` (``CTRL`` omitted if uncontrolled)."""
    rows = ",".join("[" + ",".join(_fmt_complex(z) for z in row) + "]" for row in g.matrix)
    head = "" if g.control is None else f"CTRL q{g.control[0]}={g.control[1]} "
    return f"{head}TARGET q{g.target} U=[{rows}]"


_GATE_RE = re.compile(
    r"^\s*(?:CTRL\s+q(?P<cq>\d+)=(?P<pol>[01])\s+)?TARGET\s+q(?P<tq>\d+)\s+U=\[\[(?P<r0>[^\]]*)\],\[(?P<r1>[^\]]*)\]\]\s*$"
)


def parse_gate(line):
    m = _GATE_RE.match(line)
    if m is None:
        raise ValueError(f"cannot parse gate line {line!r}")
    rows = [[complex(tok.replace(" ", "")) for tok in m.group(r).split(",")] for r in ("r0", "r1")]
    control = None if m.group("cq") is None else (int(m.group("cq")), int(m.group("pol")))
    return GateOp(int(m.group("tq")), np.array(rows), control)


def decoder_unitary():
    """4x4 unitary turning the collective measurement into a basis measurement.

    Rows are, up to sign, the decoding vectors: row ``k`` is the
    measurement vector read out as basis state ``k``; ``DECODER_OUTCOMES``
    gives the code word each basis state announces (``|10>`` is the
    singlet, which never fires on a valid code word).
    """
    c, s = CONSTANTS.cos_half_gamma, CONSTANTS.sin_half_gamma
    r = 1 / sqrt(2.0)
    return np.array([
        [c, 0, 0, -s],
        [-r * s, 0.5, 0.5, -r * c],
        [0, r, -r, 0],
        [-r * s, -0.5, -0.5, -r * c],
    ], dtype=complex)


def two_level_decompose(u, tol=1e-10):
    """Factor a unitary into two-level rotations by Givens elimination.

    Columns are cleared left to right; in column ``i`` the rotation on
    ``(i, j)`` nulls entry ``(j, i)`` for ``j = i+1, ...`` while leaving a
    positive real pivot. The final 2x2 block (including any residual phase)
    is emitted whole, so at most ``d(d-1)/2`` rotations appear.

    Returns
    -------
    list of TwoLevelRotation
        ``rots`` with ``u = rots[0].matrix @ rots[1].matrix @ ...``.
    """
    u = np.asarray(u, dtype=complex)
    d = u.shape[0]
    if u.shape != (d, d) or qmath.unitarity_error(u) > tol:
        raise ValueError("input is not unitary")
    v = u.copy()
    rots = []

    def apply(i, j, t):
        idx = [i, j]
        v[idx, :] = t @ v[idx, :]
        # store the inverse: u = T1^dag T2^dag ...
        rots.append(TwoLevelRotation(i, j, qmath.dagger(t)))

    for i in range(d - 2):
        for j in range(i + 1, d):
            a, b = v[i, i], v[j, i]
            if abs(b) <= 1e-15:
                continue
            r = np.hypot(abs(a), abs(b))
            t = np.array([[np.conj(a), np.conj(b)], [-b, a]]) / r
            apply(i, j, t)
            v[j, i] = 0.0
        a = v[i, i]
        if abs(a - 1.0) > 1e-15:
            apply(i, i + 1, np.diag([np.conj(a) / abs(a), 1.0]))
        v[i, :] = 0.0
        v[:, i] = 0.0
        v[i, i] = 1.0
    w = v[d - 2:, d - 2:]
    if d >= 2 and np.max(np.abs(w - np.eye(2))) > 1e-15:
        rots.append(TwoLevelRotation(d - 2, d - 1, w))
    return rots


def rotations_matrix(rots, dim):
    m = np.eye(dim, dtype=complex)
    for r in rots:
        m = m @ r.matrix(dim)
    return m


def _rotation_gates(rot):
    """Gates (time order) realising one two-level rotation on two qubits."""
    i, j = rot.i, rot.j
    diff = i ^ j
    if diff == 0b01:  # qubit 2 differs, qubit 1 shared
        return [GateOp(2, rot.block, (1, (i >> 1) & 1))]
    if diff == 0b10:
        return [GateOp(1, rot.block, (2, i & 1))]
    # both bits differ: move |j> next to |i> with a controlled-NOT, rotate, move back
    if (i, j) == (0, 3):
        swap = GateOp(1, X, (2, ON_ONE))  # |01> <-> |11>
        inner = GateOp(2, rot.block, (1, ON_ZERO))  # acts on (|00>, |01>)
    elif (i, j) == (1, 2):
        swap = GateOp(2, X, (1, ON_ONE))  # |10> <-> |11>
        inner = GateOp(1, rot.block, (2, ON_ONE))  # acts on (|01>, |11>)
    else:
        raise ValueError(f"indices ({i}, {j}) out of range for two qubits")
    return [swap, inner, swap]


def compile_two_qubit(rots):
    """Translate two-level rotations on a 4-dim space into controlled gates.

    Rotations between Gray-adjacent basis states become a single
    controlled gate whose control polarity is the shared bit; the others
    are conjugated by a controlled-NOT, giving three gates.
    """
    gates = []
    for rot in reversed(rots):  # rightmost factor acts first
        if rot.j > 3:
            raise ValueError("two-qubit compilation needs indices below 4")
        gates.extend(_rotation_gates(rot))
    return GateSequence(tuple(gates), 2)


def simulate_gates(seq, psi):
    psi = qmath.ket(psi)
    if psi.size != seq.dim:
        raise ValueError(f"state has dimension {psi.size}, circuit acts on {seq.dim}")
    for g in seq.gates:
        psi = g.full_matrix(seq.n_qubits) @ psi
    return psi


def decoder_circuit():
    return compile_two_qubit(two_level_decompose(decoder_unitary()))


def outcome_distribution(seq, psi, outcome_map):
    """Probability of each labelled outcome after running ``seq`` on ``psi``."""
    probs = np.abs(simulate_gates(seq, psi)) ** 2
    out = {}
    for k, lab in enumerate(outcome_map):
        key = NULL if lab is None else lab
        out[key] = out.get(key, 0.0) + float(probs[k])
    return out


def acc_extension():
    return naimark_extend(acc_povm())


def acc_circuit():
    """Circuit for the accessible-information measurement on qubit 1, ancilla qubit 2.

    Prepare ``|psi> (x) |0>``, run the gates, measure both qubits;
    ``acc_extension().outcome_map`` labels the basis states.
    """
    return compile_two_qubit(two_level_decompose(acc_extension().unitary))
