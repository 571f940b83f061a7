"""Two-qubit density matrices: validation, Pauli decomposition, named families."""

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from . import linalg
from .errors import NotHermitian, NotPositive, ParamOutOfRange, TraceNotOne, ZeroVector
from .linalg import I2, PAULI, SPIN

TRACE_TOL = 1e-10
PSD_TOL = 1e-9
UNIT_TOL = 1e-12
BLOCH_ZERO_THRESHOLD = 1e-9


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Direction:
    """Unit vector on the Bloch sphere."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        norm2 = self.x * self.x + self.y * self.y + self.z * self.z
        if abs(norm2 - 1.0) > UNIT_TOL:
            raise ParamOutOfRange(f"direction is not unit: |n|^2 = {norm2!r}")

    @classmethod
    def from_vector(cls, v) -> "Direction":
        v = np.asarray(v, dtype=float)
        norm = float(np.linalg.norm(v))
        if norm == 0.0 or not np.isfinite(norm):
            raise ZeroVector("cannot normalize a zero vector")
        v = v / norm
        return cls(float(v[0]), float(v[1]), float(v[2]))

    @classmethod
    def from_angles(cls, theta: float, phi: float) -> "Direction":
        st = np.sin(theta)
        return cls.from_vector([st * np.cos(phi), st * np.sin(phi), np.cos(theta)])

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __neg__(self) -> "Direction":
        return Direction(-self.x, -self.y, -self.z)

    def angle_to(self, other: "Direction", *, axis: bool = False) -> float:
        """Angle in radians; with ``axis=True`` antipodes count as equal."""
        c = float(np.dot(self.as_array(), other.as_array()))
        if axis:
            c = abs(c)
        return float(np.arccos(np.clip(c, -1.0, 1.0)))


E1 = Direction(1.0, 0.0, 0.0)
E2 = Direction(0.0, 1.0, 0.0)
E3 = Direction(0.0, 0.0, 1.0)


@dataclass(frozen=True, eq=False)
class DensityMatrix2Q:
    """A validated 4x4 two-qubit density matrix. Build it with :func:`validate`."""

    matrix: np.ndarray
    min_eigenvalue: float = field(default=0.0)

    def reduced(self, keep: str) -> np.ndarray:
        return linalg.partial_trace(self.matrix, keep)

    def eigenvalues(self) -> np.ndarray:
        return linalg.eigvalsh(self.matrix)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


@dataclass(frozen=True, eq=False)
class PauliDecomposition:
    """Bloch vectors <S^A>, <S^B> (spin units, |v| <= 1/2) and C_ij = 4 Tr(S^A_i S^B_j rho)."""

    bloch_a: np.ndarray
    bloch_b: np.ndarray
    corr: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "bloch_a", _frozen(np.asarray(self.bloch_a, dtype=float).reshape(3)))
        object.__setattr__(self, "bloch_b", _frozen(np.asarray(self.bloch_b, dtype=float).reshape(3)))
        object.__setattr__(self, "corr", _frozen(np.asarray(self.corr, dtype=float).reshape(3, 3)))


def validate(matrix, *, hermitian_tol: float = linalg.HERMITIAN_TOL,
             trace_tol: float = TRACE_TOL, psd_tol: float = PSD_TOL) -> DensityMatrix2Q:
    """Check a 4x4 matrix is a density matrix; never repairs entries."""
    m = np.array(matrix, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    dev = float(np.max(np.abs(m - m.conj().T)))
    if dev > hermitian_tol:
        raise NotHermitian(f"max |M - M^dagger| = {dev:.3g}")
    w = linalg.hermitian_eigensystem(0.5 * (m + m.conj().T))[0]
    tr = np.trace(m).real
    if abs(tr - 1.0) > trace_tol:
        raise TraceNotOne(f"trace = {tr:.12g}")
    if w[0] < -psd_tol:
        raise NotPositive(w[0])
    return DensityMatrix2Q(_frozen(m), float(w[0]))


def bloch_vector(rho_single) -> np.ndarray:
    """<S> of a single-qubit density matrix, from rho = I/2 + 2 <S>.S."""
    r = np.asarray(rho_single, dtype=complex)
    if r.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {r.shape}")
    return np.array([np.trace(s @ r).real for s in SPIN])


def single_qubit_from_bloch(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return 0.5 * I2 + 2.0 * linalg.spin_along(v)


def pauli_decompose(rho: DensityMatrix2Q) -> PauliDecomposition:
    m = np.asarray(rho.matrix if isinstance(rho, DensityMatrix2Q) else rho, dtype=complex)
    bloch_a = [np.trace(np.kron(s, I2) @ m).real for s in SPIN]
    bloch_b = [np.trace(np.kron(I2, s) @ m).real for s in SPIN]
    corr = [[4.0 * np.trace(np.kron(si, sj) @ m).real for sj in SPIN] for si in SPIN]
    return PauliDecomposition(bloch_a, bloch_b, corr)


def pauli_matrix(d: PauliDecomposition) -> np.ndarray:
    """Unvalidated operator (I + alpha.sigma (x) I + I (x) beta.sigma + sum C_ij sigma_i (x) sigma_j) / 4."""
    alpha = 2.0 * np.asarray(d.bloch_a)
    beta = 2.0 * np.asarray(d.bloch_b)
    m = np.eye(4, dtype=complex)
    for i in range(3):
        m += alpha[i] * np.kron(PAULI[i], I2) + beta[i] * np.kron(I2, PAULI[i])
        for j in range(3):
            m += d.corr[i, j] * np.kron(PAULI[i], PAULI[j])
    return m / 4.0


def from_pauli(d: PauliDecomposition) -> DensityMatrix2Q:
    return validate(pauli_matrix(d))


def bell_diagonal(f1: float, f2: float, f3: float) -> DensityMatrix2Q:
    """I/4 + sum_i f_i S_i (x) S_i, i.e. correlation matrix diag(f1, f2, f3)."""
    return from_pauli(PauliDecomposition(np.zeros(3), np.zeros(3), np.diag([f1, f2, f3])))


def bell_diagonal_eigenvalues(f1: float, f2: float, f3: float) -> np.ndarray:
    """Closed-form spectrum of the Bell-diagonal state, in the singlet-first order."""
    return np.array([
        1 - f1 - f2 - f3,
        1 - f1 + f2 + f3,
        1 + f1 - f2 + f3,
        1 + f1 + f2 - f3,
    ]) / 4.0


def x_state(c1: float, c2: float, c3: float, r: float, s: float) -> DensityMatrix2Q:
    return from_pauli(PauliDecomposition([0.0, 0.0, r / 2.0], [0.0, 0.0, s / 2.0],
                                         np.diag([c1, c2, c3])))


SINGLET_VECTOR = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / np.sqrt(2.0)


def werner(p: float) -> DensityMatrix2Q:
    if not 0.0 <= p <= 1.0:
        raise ParamOutOfRange(f"Werner weight p must lie in [0, 1], got {p}")
    singlet = np.outer(SINGLET_VECTOR, SINGLET_VECTOR.conj())
    return validate(p * singlet + (1.0 - p) * np.eye(4) / 4.0)


def singlet() -> DensityMatrix2Q:
    return werner(1.0)


def pure_state(amplitudes) -> DensityMatrix2Q:
    psi = np.asarray(amplitudes, dtype=complex).reshape(4)
    norm = float(np.linalg.norm(psi))
    if norm < 1e-12:
        raise ZeroVector("all amplitudes are zero")
    psi = psi / norm
    return validate(np.outer(psi, psi.conj()))


def product_state(rho_a, rho_b) -> DensityMatrix2Q:
    return validate(linalg.kron(rho_a, rho_b))


def bloch_norms(rho: DensityMatrix2Q) -> tuple[float, float]:
    d = pauli_decompose(rho)
    return float(np.linalg.norm(d.bloch_a)), float(np.linalg.norm(d.bloch_b))


FAMILIES = ("bell_diagonal", "x_state", "werner", "pure")
_PURE_KEYS = ("amp0", "amp1", "amp2", "amp3")


def from_family(name: str, params: Mapping[str, float]) -> DensityMatrix2Q:
    """Build a named family member from a flat name -> number mapping.

    ``pure`` takes ``amp0..amp3`` (real parts) and optional ``amp0_im..amp3_im``
    in the |++>, |+->, |-+>, |--> order.
    """
    params = dict(params)

    def take(*keys, defaults=None):
        defaults = defaults or {}
        extra = set(params) - set(keys) - set(defaults)
        if extra:
            raise ParamOutOfRange(f"unknown parameter(s) for {name}: {sorted(extra)}")
        missing = [k for k in keys if k not in params]
        if missing:
            raise ParamOutOfRange(f"missing parameter(s) for {name}: {missing}")
        out = [float(params[k]) for k in keys]
        out += [float(params.get(k, v)) for k, v in defaults.items()]
        return out

    if name == "bell_diagonal":
        return bell_diagonal(*take("f1", "f2", "f3"))
    if name == "x_state":
        return x_state(*take("c1", "c2", "c3", "r", "s"))
    if name == "werner":
        return werner(*take("p"))
    if name == "pure":
        vals = take(*_PURE_KEYS, defaults={k + "_im": 0.0 for k in _PURE_KEYS})
        return pure_state([complex(re, im) for re, im in zip(vals[:4], vals[4:])])
    raise ParamOutOfRange(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")
