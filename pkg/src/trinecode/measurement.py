"""POVMs, Born-rule channels, the square-root measurement and Naimark dilation."""

from dataclasses import dataclass, field
from itertools import product
from math import ceil

import numpy as np

from . import qmath
from .qmath import dagger, proj

PSD_TOL = 1e-10
COMPLETENESS_TOL = 1e-10
ROW_SUM_TOL = 1e-9

NULL = "null"


@dataclass(frozen=True)
class LabeledState:
    """A pure signal state tagged with the input symbol it encodes."""

    label: object
    vector: np.ndarray

    def __post_init__(self):
        v = qmath.ket(self.vector)
        n = np.linalg.norm(v)
        if abs(n - 1.0) > 1e-12:
            raise ValueError(f"state {self.label!r} has norm {n!r}, expected 1")
        object.__setattr__(self, "vector", v)

    @property
    def dim(self):
        return self.vector.size


@dataclass(frozen=True)
class Ensemble:
    states: tuple
    priors: np.ndarray = None

    def __post_init__(self):
        states = tuple(self.states)
        if not states:
            raise ValueError("ensemble needs at least one state")
        dims = {s.dim for s in states}
        if len(dims) != 1:
            raise ValueError(f"states have mixed dimensions {sorted(dims)}")
        if self.priors is None:
            priors = np.full(len(states), 1.0 / len(states))
        else:
            priors = np.asarray(self.priors, dtype=float)
        if priors.shape != (len(states),):
            raise ValueError("one prior per state required")
        if np.any(priors < 0) or abs(priors.sum() - 1.0) > 1e-12:
            raise ValueError("priors must be non-negative and sum to 1")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "priors", priors)

    @property
    def dim(self):
        return self.states[0].dim

    @property
    def labels(self):
        return [s.label for s in self.states]

    def vectors(self):
        """States as the columns of a ``dim x n`` matrix."""
        return np.column_stack([s.vector for s in self.states])

    def density(self):
        v = self.vectors()
        return (v * self.priors) @ dagger(v)

    def transformed(self, u):
        """Apply the same unitary to every state."""
        u = np.asarray(u)
        return Ensemble(
            tuple(LabeledState(s.label, u @ s.vector) for s in self.states), self.priors
        )

    def with_priors(self, priors):
        return Ensemble(self.states, priors)


def product_ensemble(letters, length=2, priors=None):
    """All ``length``-fold tensor products of the letter states (labels are tuples)."""
    states = []
    weights = []
    for combo in product(range(len(letters.states)), repeat=length):
        vec = qmath.tensor(*(letters.states[i].vector for i in combo))
        states.append(LabeledState(tuple(letters.states[i].label for i in combo), vec))
        weights.append(np.prod([letters.priors[i] for i in combo]))
    return Ensemble(tuple(states), priors if priors is not None else np.array(weights))


@dataclass(frozen=True)
class Povm:
    """A measurement given by PSD elements summing to the identity.

    ``vectors`` is filled for rank-1 POVMs built from unnormalised vectors
    ``m_y`` with ``E_y = |m_y><m_y|``; it is ``None`` otherwise.
    """

    elements: tuple
    labels: tuple = None
    vectors: tuple = None

    def __post_init__(self):
        elements = tuple(np.asarray(e, dtype=complex) for e in self.elements)
        if not elements:
            raise ValueError("POVM needs at least one element")
        shapes = {e.shape for e in elements}
        if len(shapes) != 1 or len(next(iter(shapes))) != 2:
            raise ValueError("POVM elements must be square matrices of one size")
        labels = tuple(range(len(elements))) if self.labels is None else tuple(self.labels)
        if len(labels) != len(elements):
            raise ValueError("one label per element required")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "labels", labels)
        if self.vectors is not None:
            object.__setattr__(self, "vectors", tuple(qmath.ket(v) for v in self.vectors))

    @classmethod
    def from_vectors(cls, vectors, labels=None):
        vectors = [qmath.ket(v) for v in vectors]
        return cls(tuple(proj(v) for v in vectors), labels, tuple(vectors))

    @property
    def dim(self):
        return self.elements[0].shape[0]

    def __len__(self):
        return len(self.elements)

    def is_rank_one(self, tol=PSD_TOL):
        if self.vectors is not None:
            return True
        return all(np.sum(qmath.eig_hermitian(e, 1e-9)[0] > tol) <= 1 for e in self.elements)

    def rank_one_vectors(self, tol=PSD_TOL):
        """Vectors ``m_y`` with ``E_y = |m_y><m_y|``; raises for higher-rank elements."""
        if self.vectors is not None:
            return self.vectors
        out = []
        for e in self.elements:
            w, v = qmath.eig_hermitian(e, 1e-9)
            if np.sum(w > tol) > 1:
                raise ValueError("POVM has an element of rank > 1")
            out.append(np.sqrt(max(w[0], 0.0)) * v[:, 0])
        return tuple(out)

    def completed(self, label=NULL):
        """Append ``I - sum(E)`` as an extra outcome when it is non-zero."""
        rest = np.eye(self.dim) - sum(self.elements)
        if np.max(np.abs(rest)) <= COMPLETENESS_TOL:
            return self
        vectors = None
        if self.vectors is not None:
            w, v = qmath.eig_hermitian(rest, 1e-9)
            if np.sum(w > PSD_TOL) == 1:
                vectors = self.vectors + (np.sqrt(w[0]) * v[:, 0],)
        return Povm(self.elements + (rest,), self.labels + (label,), vectors)


def product_povm(a, b):
    """Tensor product of two measurements; outcome labels are pairs."""
    elements = []
    labels = []
    for (la, ea), (lb, eb) in product(zip(a.labels, a.elements), zip(b.labels, b.elements)):
        elements.append(np.kron(ea, eb))
        labels.append((la, lb))
    vectors = None
    if a.vectors is not None and b.vectors is not None:
        vectors = tuple(np.kron(va, vb) for va, vb in product(a.vectors, b.vectors))
    return Povm(tuple(elements), tuple(labels), vectors)


@dataclass(frozen=True)
class ChannelMatrix:
    """Conditional probabilities ``p[x, y] = P(y|x)``."""

    p: np.ndarray
    input_labels: tuple = None
    output_labels: tuple = None

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        if p.ndim != 2:
            raise ValueError("channel matrix must be 2-D")
        if np.any(p < -ROW_SUM_TOL) or np.any(p > 1 + ROW_SUM_TOL):
            raise ValueError("channel entries must lie in [0, 1]")
        rows = p.sum(axis=1)
        if np.max(np.abs(rows - 1.0)) > ROW_SUM_TOL:
            raise ValueError(f"channel rows must sum to 1 (max deviation {np.max(np.abs(rows - 1)):.2e})")
        p = np.clip(p, 0.0, 1.0)
        p.setflags(write=False)
        object.__setattr__(self, "p", p)
        ins = tuple(range(p.shape[0])) if self.input_labels is None else tuple(self.input_labels)
        outs = tuple(range(p.shape[1])) if self.output_labels is None else tuple(self.output_labels)
        if len(ins) != p.shape[0] or len(outs) != p.shape[1]:
            raise ValueError("label counts do not match the channel shape")
        object.__setattr__(self, "input_labels", ins)
        object.__setattr__(self, "output_labels", outs)

    @property
    def shape(self):
        return self.p.shape

    def __array__(self, dtype=None, copy=None):
        return self.p if dtype is None else self.p.astype(dtype)

    def drop_outputs(self, labels, tol=1e-10):
        """Remove outcomes that never fire (e.g. a kernel outcome)."""
        keep = [i for i, lab in enumerate(self.output_labels) if lab not in set(labels)]
        dropped = [i for i in range(self.p.shape[1]) if i not in keep]
        if dropped and np.max(self.p[:, dropped]) > tol:
            raise ValueError("cannot drop an outcome with non-zero probability")
        p = self.p[:, keep]
        return ChannelMatrix(p / p.sum(axis=1, keepdims=True), self.input_labels,
                             tuple(self.output_labels[i] for i in keep))


def bsc(eps):
    """Binary symmetric channel with crossover probability ``eps``."""
    return ChannelMatrix([[1 - eps, eps], [eps, 1 - eps]])


def ternary_symmetric(diag):
    off = (1.0 - diag) / 2.0
    p = np.full((3, 3), off)
    np.fill_diagonal(p, diag)
    return ChannelMatrix(p)


def born_channel(ensemble, povm):
    """Channel ``P(y|x) = Tr(E_y |psi_x><psi_x|)``.

    Raises
    ------
    ValueError
        If the ensemble and POVM live in different dimensions, or the POVM is
        not complete on the states (rows would not sum to 1).
    """
    if ensemble.dim != povm.dim:
        raise ValueError(f"dimension mismatch: ensemble {ensemble.dim}, POVM {povm.dim}")
    vecs = ensemble.vectors()
    p = np.empty((len(ensemble.states), len(povm)))
    for y, e in enumerate(povm.elements):
        p[:, y] = np.real(np.einsum("ix,ij,jx->x", np.conj(vecs), e, vecs))
    p[np.abs(p) < 1e-15] = 0.0
    return ChannelMatrix(p, tuple(ensemble.labels), povm.labels)


def sqrt_measurement(ensemble, complete=False, tol=qmath.KERNEL_TOL):
    """Square-root ("pretty good") measurement for a pure-state ensemble.

    The measurement vectors are ``m_y = rho^(-1/2) sqrt(p_y) |psi_y>`` with
    ``rho = sum_x p_x |psi_x><psi_x|``. For uniform priors the factor
    ``sqrt(p_y)`` cancels against ``rho`` and this equals the unweighted
    form ``(sum_x |psi_x><psi_x|)^(-1/2) |psi_y>``. Non-uniform priors give
    the weighted generalisation.

    Parameters
    ----------
    ensemble : Ensemble
    complete : bool
        If true, append the projector onto the kernel of ``rho`` as an
        outcome labelled ``"null"`` so the elements resolve the full identity.
    tol : float
        Eigenvalue threshold separating support from kernel.

    Returns
    -------
    Povm
        Rank-1 POVM whose outcome labels are the ensemble labels.
    """
    rho = ensemble.density()
    if np.max(qmath.eig_hermitian(rho)[0]) <= tol:
        raise ValueError("degenerate ensemble: density operator has no support")
    root = qmath.psd_inv_sqrt(rho, tol)
    vecs = [root @ (np.sqrt(p) * s.vector) for p, s in zip(ensemble.priors, ensemble.states)]
    povm = Povm.from_vectors(vecs, ensemble.labels)
    return povm.completed() if complete else povm


@dataclass(frozen=True)
class PovmReport:
    completeness_residual: float
    min_eigenvalue: float
    passed: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self,
            "passed",
            self.completeness_residual <= COMPLETENESS_TOL and self.min_eigenvalue >= -PSD_TOL,
        )

    def __bool__(self):
        return self.passed


def validate_povm(povm):
    residual = float(np.max(np.abs(sum(povm.elements) - np.eye(povm.dim))))
    # Hermitian part; a non-Hermitian element shows up as completeness failure
    min_eig = min(float(np.linalg.eigvalsh(0.5 * (e + dagger(e)))[0]) for e in povm.elements)
    return PovmReport(residual, min_eig)


@dataclass(frozen=True)
class NaimarkExtension:
    """Projective dilation of a rank-1 POVM.

    ``unitary`` acts on ``system (x) ancilla`` (system index most
    significant). Preparing ``|psi> (x) |0>`` and measuring the computational
    basis, basis state ``k`` signals POVM outcome ``outcome_map[k]``;
    entries that are ``None`` never fire for inputs from the system space.
    """

    unitary: np.ndarray
    outcome_map: tuple
    system_dim: int
    ancilla_dim: int

    def embed(self, psi):
        anc = qmath.basis(self.ancilla_dim, 0)
        return qmath.tensor(psi, anc)

    def probabilities(self, psi):
        out = self.unitary @ self.embed(psi)
        return np.abs(out) ** 2

    def channel(self, ensemble, labels):
        """Outcome statistics of the dilation for every ensemble state, in ``labels`` order."""
        col = {lab: k for k, lab in enumerate(self.outcome_map) if lab is not None}
        p = np.array([[self.probabilities(s.vector)[col[lab]] for lab in labels]
                      for s in ensemble.states])
        return ChannelMatrix(p, tuple(ensemble.labels), tuple(labels))


def _complete_columns(iso):
    """Extend an isometry (orthonormal columns) to a square unitary.

    Gram-Schmidt over the standard basis in index order; deterministic.
    """
    n, k = iso.shape
    cols = [iso[:, j] for j in range(k)]
    for i in range(n):
        if len(cols) == n:
            break
        v = qmath.basis(n, i)
        for c in cols:
            v = v - (np.vdot(c, v)) * c
        for c in cols:  # second pass for numerical orthogonality
            v = v - (np.vdot(c, v)) * c
        nv = np.linalg.norm(v)
        if nv > 1e-8:
            cols.append(v / nv)
    return np.column_stack(cols)


def naimark_extend(povm, ancilla_dim=None):
    """Dilate a rank-1 POVM to a projective measurement on system + ancilla.

    Outcome ``y`` is assigned to basis state ``|s, a>`` in the order
    ``(0,0), (1,0), ..., (d-1,0), (0,1), ...``, so a projective measurement
    with ``N <= d`` outcomes leaves the ancilla in ``|0>``.

    Raises
    ------
    ValueError
        If an element has rank > 1 or there are more outcomes than the
        extended space holds.
    """
    d = povm.dim
    n = len(povm)
    vectors = povm.rank_one_vectors()
    d_anc = ancilla_dim if ancilla_dim is not None else max(2, ceil(n / d))
    big = d * d_anc
    if n > big:
        raise ValueError(f"{n} outcomes do not fit in a {big}-dimensional extension")
    slots = [s * d_anc + a for a in range(d_anc) for s in range(d)][:n]
    # rows of the isometry: <slot_y| U |s, 0> = <m_y | s>
    iso = np.zeros((big, d), dtype=complex)
    for y, m in zip(slots, vectors):
        iso[y, :] = np.conj(m)
    err = np.max(np.abs(dagger(iso) @ iso - np.eye(d)))
    if err > COMPLETENESS_TOL:
        raise ValueError(f"POVM is not complete (residual {err:.2e})")
    inputs = [s * d_anc for s in range(d)]
    rest = [i for i in range(big) if i not in inputs]
    completed = _complete_columns(iso)
    u = np.zeros((big, big), dtype=complex)
    u[:, inputs] = completed[:, :d]
    u[:, rest] = completed[:, d:]
    outcome_map = [None] * big
    for y, lab in zip(slots, povm.labels):
        outcome_map[y] = lab
    if np.all(np.abs(u.imag) < 1e-15):
        u = u.real.astype(complex)
    return NaimarkExtension(u, tuple(outcome_map), d, d_anc)


def letter_marginals(joint, letters, length=2):
    """Per-position letter channels implied by a joint channel over words.

    ``joint`` has inputs labelled by letter tuples and outputs labelled by
    outcome tuples (non-tuple outputs such as ``"null"`` are ignored).
    Position ``k``'s channel ``P(y_k | x_k)`` averages the joint marginal
    uniformly over the other input positions.
    """
    n_in = len(letters)
    out_letters = sorted({lab[k] for lab in joint.output_labels if isinstance(lab, tuple)
                          for k in range(length)}, key=repr)
    margs = []
    for k in range(length):
        m = np.zeros((n_in, len(out_letters)))
        counts = np.zeros(n_in)
        for i, xin in enumerate(joint.input_labels):
            xi = letters.index(xin[k])
            counts[xi] += 1
            for j, yout in enumerate(joint.output_labels):
                if isinstance(yout, tuple):
                    m[xi, out_letters.index(yout[k])] += joint.p[i, j]
        margs.append(m / counts[:, None])
    return margs, out_letters


def factorization_check(letter_ensemble, povm, length=2):
    """Largest violation of ``P(y1 y2|x1 x2) = P(y1|x1) P(y2|x2)``.

    The product ensemble over all letter words is measured with ``povm``
    (outcome labels must be letter tuples; any other label is a null outcome
    whose probability is compared against zero). The single-letter channels
    are the implied marginals. Separable measurements on product states give
    zero; a collective decoder shows a finite deviation.
    """
    words = product_ensemble(letter_ensemble, length)
    joint = born_channel(words, povm)
    letters = letter_ensemble.labels
    margs, out_letters = letter_marginals(joint, letters, length)
    worst = 0.0
    for i, xin in enumerate(joint.input_labels):
        xi = [letters.index(c) for c in xin]
        for j, yout in enumerate(joint.output_labels):
            if not isinstance(yout, tuple):
                continue
            yi = [out_letters.index(c) for c in yout]
            prod_p = np.prod([margs[k][xi[k], yi[k]] for k in range(length)])
            worst = max(worst, abs(joint.p[i, j] - prod_p))
    # letter-pair outcomes the POVM never lists have joint probability zero
    listed = {lab for lab in joint.output_labels if isinstance(lab, tuple)}
    for i, xin in enumerate(joint.input_labels):
        xi = [letters.index(c) for c in xin]
        for yout in product(out_letters, repeat=length):
            if yout in listed:
                continue
            yi = [out_letters.index(c) for c in yout]
            worst = max(worst, np.prod([margs[k][xi[k], yi[k]] for k in range(length)]))
    return float(worst)
