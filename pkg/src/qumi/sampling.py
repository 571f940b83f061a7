"""Random states, directions and local unitaries for property checks."""

import numpy as np

from . import linalg
from .linalg import PAULI
from .states import (
    DensityMatrix2Q,
    Direction,
    bell_diagonal_eigenvalues,
    bloch_norms,
    pure_state,
    single_qubit_from_bloch,
    validate,
    x_state,
)


def random_state(rng: np.random.Generator) -> DensityMatrix2Q:
    """G G^dagger / Tr(G G^dagger) with standard complex normal G (full rank a.s.)."""
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    m = g @ g.conj().T
    m = m / np.trace(m).real
    return validate(0.5 * (m + m.conj().T))


def random_state_with_bloch(rng: np.random.Generator, min_norm: float) -> DensityMatrix2Q:
    while True:
        rho = random_state(rng)
        if min(bloch_norms(rho)) > min_norm:
            return rho


def random_direction(rng: np.random.Generator) -> Direction:
    return Direction.from_vector(rng.standard_normal(3))


def random_single_qubit(rng: np.random.Generator) -> np.ndarray:
    """Uniform in the Bloch ball."""
    v = rng.standard_normal(3)
    v *= 0.5 * rng.random() ** (1 / 3) / np.linalg.norm(v)
    return single_qubit_from_bloch(v)


def random_product_state(rng: np.random.Generator) -> DensityMatrix2Q:
    return validate(linalg.kron(random_single_qubit(rng), random_single_qubit(rng)))


def random_su2(rng: np.random.Generator) -> np.ndarray:
    q = rng.standard_normal(4)
    q /= np.linalg.norm(q)
    return q[0] * np.eye(2) - 1j * (q[1] * PAULI[0] + q[2] * PAULI[1] + q[3] * PAULI[2])


def rotation_of(u: np.ndarray) -> np.ndarray:
    """SO(3) matrix R with U (sigma.n) U^dagger = sigma.(R n)."""
    return np.array([[0.5 * np.trace(PAULI[i] @ u @ PAULI[j] @ u.conj().T).real
                      for j in range(3)] for i in range(3)])


def apply_local(rho: DensityMatrix2Q, ua: np.ndarray, ub: np.ndarray) -> DensityMatrix2Q:
    u = np.kron(ua, ub)
    return validate(u @ rho.matrix @ u.conj().T)


def random_bell_diagonal_params(rng: np.random.Generator) -> tuple[float, float, float]:
    """Uniform in the physical tetrahedron (rejection from the cube)."""
    while True:
        f = rng.uniform(-1.0, 1.0, 3)
        if bell_diagonal_eigenvalues(*f).min() >= 0.0:
            return tuple(float(x) for x in f)


def random_schmidt_state(rng: np.random.Generator, q: float) -> DensityMatrix2Q:
    """sqrt(q)|++> + sqrt(1-q)|--> rotated by random local unitaries."""
    psi = np.array([np.sqrt(q), 0.0, 0.0, np.sqrt(1.0 - q)], dtype=complex)
    psi = np.kron(random_su2(rng), random_su2(rng)) @ psi
    return pure_state(psi)


def random_x_state_discord_region(rng: np.random.Generator, s_range=(0.1, 0.5)):
    """X-state with r = 0 and |c1| >= |c2|, c1^2 <= c3^2.

    Returns ``(state, (c1, c2, c3, r, s))``.
    """
    while True:
        s = rng.uniform(*s_range)
        c1, c2, c3 = rng.uniform(-1.0, 1.0, 3)
        if abs(c1) < abs(c2) or c1 * c1 > c3 * c3:
            continue
        d00 = (1 + s + c3) / 4
        d11 = (1 - s - c3) / 4
        d22 = (1 + s - c3) / 4
        d33 = (1 - s + c3) / 4
        if min(d00, d11, d22, d33) <= 0:
            continue
        if d00 * d33 < ((c1 - c2) / 4) ** 2 or d11 * d22 < ((c1 + c2) / 4) ** 2:
            continue
        params = (float(c1), float(c2), float(c3), 0.0, float(s))
        return x_state(*params), params
