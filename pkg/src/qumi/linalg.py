"""Small dense linear algebra for one- and two-qubit operators.

Basis ordering for two qubits is |++>, |+->, |-+>, |--> with subsystem A
as the slow (left) index.
"""

import math

import numpy as np

from .errors import NotHermitian

HERMITIAN_TOL = 1e-10
# off-diagonal entries below this are dropped; dividing by them overflows
TINY = 1e-150

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)
# spin-1/2 operators S_i = sigma_i / 2
SPIN = tuple(0.5 * s for s in PAULI)


def hermitian_eigensystem(m, tol: float = 1e-12, max_sweeps: int = 100):
    """Eigen-decompose a small Hermitian matrix with cyclic Jacobi rotations.

    Parameters
    ----------
    m : array_like
        Square Hermitian matrix (real or complex).
    tol : float
        Stop once the Frobenius norm of the off-diagonal part drops below this.
    max_sweeps : int
        Hard cap on the number of full sweeps.

    Returns
    -------
    eigenvalues : ndarray
        Real, ascending.
    eigenvectors : ndarray
        Unitary matrix whose k-th column belongs to ``eigenvalues[k]``.
    """
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    dev = float(np.max(np.abs(arr - arr.conj().T))) if arr.size else 0.0
    if dev > HERMITIAN_TOL:
        raise NotHermitian(f"max |M - M^dagger| = {dev:.3g}")
    n = arr.shape[0]
    # plain Python scalars: at n <= 4 this beats per-rotation numpy calls
    a = (0.5 * (arr + arr.conj().T)).tolist()
    v = np.eye(n, dtype=complex).tolist()
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]
    sqrt = math.sqrt

    for _ in range(max_sweeps):
        off = sqrt(2.0 * sum(abs(a[p][q]) ** 2 for p, q in pairs))
        if off < tol:
            break
        for p, q in pairs:
            apq = a[p][q]
            mag = abs(apq)
            if mag < TINY:
                a[p][q] = a[q][p] = 0j
                continue
            ph = apq / mag
            phc = ph.conjugate()
            theta = (a[q][q].real - a[p][p].real) / (2.0 * mag)
            t = 1.0 / (abs(theta) + math.hypot(theta, 1.0))
            if theta < 0.0:
                t = -t
            c = 1.0 / sqrt(t * t + 1.0)
            s = t * c
            # A <- A R, V <- V R with R = diag(1, conj(ph)) [[c, s], [-s, c]] on (p, q)
            for row, vrow in zip(a, v):
                x, y = row[p], row[q]
                row[p] = c * x - s * phc * y
                row[q] = s * x + c * phc * y
                x, y = vrow[p], vrow[q]
                vrow[p] = c * x - s * phc * y
                vrow[q] = s * x + c * phc * y
            # A <- R^dagger A
            rp, rq = a[p], a[q]
            for k in range(n):
                x, y = rp[k], rq[k]
                rp[k] = c * x - s * ph * y
                rq[k] = s * x + c * ph * y
            a[p][q] = a[q][p] = 0j

    w = np.array([a[i][i].real for i in range(n)])
    order = np.argsort(w, kind="stable")
    return w[order], np.array(v, dtype=complex)[:, order]


def eigvalsh(m) -> np.ndarray:
    return hermitian_eigensystem(m)[0]


def eigvalsh_batch(ms, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Ascending eigenvalues of a stack (N, n, n) of Hermitian matrices.

    Same cyclic Jacobi scheme as :func:`hermitian_eigensystem`, with every
    rotation applied across the whole stack at once.
    """
    a = np.array(ms, dtype=complex)
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise ValueError(f"expected shape (N, n, n), got {a.shape}")
    dev = float(np.max(np.abs(a - a.conj().transpose(0, 2, 1)))) if a.size else 0.0
    if dev > HERMITIAN_TOL:
        raise NotHermitian(f"max |M - M^dagger| = {dev:.3g}")
    a = 0.5 * (a + a.conj().transpose(0, 2, 1))
    n = a.shape[1]
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * sum(np.abs(a[:, p, q]) ** 2 for p, q in pairs)) if pairs else np.zeros(1)
        if off.size == 0 or off.max() < tol:
            break
        for p, q in pairs:
            apq = a[:, p, q]
            mag = np.abs(apq)
            live = mag >= TINY
            safe = np.where(live, mag, 1.0)
            ph = np.where(live, apq / safe, 1.0)
            phc = ph.conj()
            theta = (a[:, q, q].real - a[:, p, p].real) / (2.0 * safe)
            t = np.where(live, np.sign(theta + (theta == 0)) / (np.abs(theta) + np.hypot(theta, 1.0)), 0.0)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            x, y = a[:, :, p].copy(), a[:, :, q]
            a[:, :, p] = c[:, None] * x - (s * phc)[:, None] * y
            a[:, :, q] = s[:, None] * x + (c * phc)[:, None] * y
            x, y = a[:, p, :].copy(), a[:, q, :]
            a[:, p, :] = c[:, None] * x - (s * ph)[:, None] * y
            a[:, q, :] = s[:, None] * x + (c * ph)[:, None] * y
            a[:, p, q] = a[:, q, p] = 0.0
    return np.sort(np.diagonal(a, axis1=1, axis2=2).real, axis=1)


def singular_system_3x3(w):
    """Singular values (descending) and matching right singular vectors.

    Computed from the eigen-decomposition of W^T W; tiny negative
    eigenvalues from round-off are clipped before the square root.
    """
    w = np.asarray(w, dtype=float)
    if w.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {w.shape}")
    vals, vecs = hermitian_eigensystem(w.T @ w)
    vals = np.clip(vals[::-1], 0.0, None)
    vecs = vecs[:, ::-1].real
    return np.sqrt(vals), vecs


def singular_values_3x3(w) -> tuple[float, float, float]:
    s = singular_system_3x3(w)[0]
    return float(s[0]), float(s[1]), float(s[2])


def kron(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise ValueError("kron expects two 2x2 operands")
    return np.kron(a, b)


def partial_trace(m, keep: str) -> np.ndarray:
    """Reduce a 4x4 two-qubit operator to subsystem ``keep`` ('A' or 'B')."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    t = m.reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijik->jk", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def spin_along(n) -> np.ndarray:
    """Spin component S.n as a 2x2 matrix."""
    n = np.asarray(n, dtype=float)
    return n[0] * SPIN[0] + n[1] * SPIN[1] + n[2] * SPIN[2]
