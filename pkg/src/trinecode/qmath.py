"""Small dense complex linear algebra.

Vectors and operators are plain complex ``numpy`` arrays. Everything here
works in dimensions of at most a few qubits, so no attempt is made at
sparse or blocked algorithms.
"""

import numpy as np

HERMITIAN_TOL = 1e-12
KERNEL_TOL = 1e-10
MAX_DIM = 16


class NotHermitianError(ValueError):
    pass


class NotPositiveError(ValueError):
    pass


def ket(amps):
    """Return ``amps`` as a 1-D complex array."""
    v = np.asarray(amps, dtype=complex)
    if v.ndim != 1 or v.size == 0:
        raise ValueError("a ket must be a non-empty 1-D amplitude list")
    return v


def basis(dim, index):
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def dagger(m):
    return np.conj(np.asarray(m)).T


def proj(v):
    """Rank-1 operator ``|v><v|``."""
    v = ket(v)
    return np.outer(v, np.conj(v))


def tensor(*vectors):
    """Kronecker product of kets.

    Index ``i * dim(b) + j`` of ``tensor(a, b)`` holds ``a[i] * b[j]``, so the
    first factor is the most significant digit (``|00>, |01>, |10>, |11>``
    for two qubits).
    """
    if not vectors:
        raise ValueError("tensor needs at least one factor")
    out = ket(vectors[0])
    for v in vectors[1:]:
        out = np.kron(out, ket(v))
    return out


def hermiticity_error(m):
    m = np.asarray(m)
    return float(np.max(np.abs(m - dagger(m)))) if m.size else 0.0


def is_hermitian(m, tol=HERMITIAN_TOL):
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and hermiticity_error(m) <= tol


def is_unitary(m, tol=1e-10):
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return unitarity_error(m) <= tol


def unitarity_error(m):
    m = np.asarray(m)
    return float(np.max(np.abs(dagger(m) @ m - np.eye(m.shape[0]))))


def eig_hermitian(m, tol=HERMITIAN_TOL):
    """Eigendecomposition of a small Hermitian matrix.

    Parameters
    ----------
    m : array_like, shape (d, d)
        Hermitian within ``tol`` (max-abs of ``m - m^dagger``).
    tol : float
        Hermiticity tolerance.

    Returns
    -------
    eigenvalues : ndarray, shape (d,)
        Real eigenvalues in descending order.
    eigenvectors : ndarray, shape (d, d)
        Orthonormal eigenvectors as columns, matching ``eigenvalues``.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] > MAX_DIM:
        raise ValueError(f"dimension {m.shape[0]} exceeds supported maximum {MAX_DIM}")
    if not is_hermitian(m, tol):
        raise NotHermitianError(
            f"matrix is not Hermitian (max |M - M^dagger| = {hermiticity_error(m):.3e})"
        )
    herm = 0.5 * (m + dagger(m))
    w, v = np.linalg.eigh(herm)
    order = np.argsort(w)[::-1]
    return w[order], v[:, order]


def psd_inv_sqrt(m, tol=KERNEL_TOL):
    """Inverse square root of a PSD matrix restricted to its support.

    Eigenvalues below ``tol`` are treated as kernel and mapped to zero, so the
    result ``R`` satisfies ``R @ m @ R`` = projector onto the support of ``m``.

    Raises
    ------
    NotPositiveError
        If an eigenvalue is below ``-tol``.
    """
    w, v = eig_hermitian(m)
    if w[-1] < -tol:
        raise NotPositiveError(f"matrix has negative eigenvalue {w[-1]:.3e}")
    inv = np.zeros_like(w)
    support = w > tol
    inv[support] = 1.0 / np.sqrt(w[support])
    return (v * inv) @ dagger(v)


def support_projector(m, tol=KERNEL_TOL):
    w, v = eig_hermitian(m)
    keep = v[:, w > tol]
    return keep @ dagger(keep)


def fix_phase(v, tol=1e-14):
    """Rotate the global phase so the first non-negligible amplitude is real and >= 0."""
    v = ket(v)
    nz = np.flatnonzero(np.abs(v) > tol)
    if nz.size == 0:
        return v.copy()
    a = v[nz[0]]
    return v * (np.conj(a) / abs(a))


def random_unitary(dim, rng):
    """Haar-random unitary from a seeded ``numpy.random.Generator``."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_hermitian(dim, rng):
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (z + dagger(z))
