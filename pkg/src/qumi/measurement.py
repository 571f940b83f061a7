"""Projective spin measurements on two qubits.

Joint outcome probabilities are available through two independent routes:
:func:`joint_probabilities` traces explicit projectors against the density
matrix, while :func:`pauli_probabilities` evaluates the closed Pauli-form
expression (vectorised over many direction pairs). Each is the other's oracle.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import InvalidDistribution
from .linalg import I2
from .states import DensityMatrix2Q, Direction, PauliDecomposition, validate

CLIP_TOL = 1e-12
DEGENERATE_PROB = 1e-12

_SIGNS = np.array([1.0, -1.0])


def projector(n: Direction, outcome: int) -> np.ndarray:
    """1/2 + outcome * S.n"""
    if outcome not in (1, -1):
        raise ValueError(f"outcome must be +1 or -1, got {outcome}")
    return 0.5 * I2 + outcome * linalg.spin_along(n.as_array())


def _as_matrix(rho) -> np.ndarray:
    return rho.matrix if isinstance(rho, DensityMatrix2Q) else np.asarray(rho, dtype=complex)


@dataclass(frozen=True)
class ProbabilityTable2x2:
    """p(eps_A, eps_B) for eps = +1, -1."""

    p_pp: float
    p_pm: float
    p_mp: float
    p_mm: float

    @classmethod
    def from_raw(cls, raw) -> "ProbabilityTable2x2":
        """Clip round-off negatives (>= -1e-12) to zero and renormalise."""
        p = np.asarray(raw, dtype=float).reshape(4)
        if p.min() < -CLIP_TOL:
            raise InvalidDistribution(f"probability {p.min():.3g} below -{CLIP_TOL:g}")
        p = np.clip(p, 0.0, None)
        total = p.sum()
        if abs(total - 1.0) > 1e-10:
            raise InvalidDistribution(f"probabilities sum to {total:.12g}")
        p = p / total
        return cls(*(float(x) for x in p))

    def as_array(self) -> np.ndarray:
        """2x2 array indexed [A outcome, B outcome], index 0 meaning +1."""
        return np.array([[self.p_pp, self.p_pm], [self.p_mp, self.p_mm]])

    def flip_a(self) -> "ProbabilityTable2x2":
        return ProbabilityTable2x2(self.p_mp, self.p_mm, self.p_pp, self.p_pm)


def joint_probabilities_raw(rho, a: Direction, b: Direction) -> np.ndarray:
    """Unclipped Tr[(P^A (x) P^B) rho] as a 2x2 array."""
    m = _as_matrix(rho)
    out = np.empty((2, 2))
    for i, ea in enumerate((1, -1)):
        pa = projector(a, ea)
        for j, eb in enumerate((1, -1)):
            out[i, j] = np.trace(np.kron(pa, projector(b, eb)) @ m).real
    return out


def joint_probabilities(rho, a: Direction, b: Direction) -> ProbabilityTable2x2:
    return ProbabilityTable2x2.from_raw(joint_probabilities_raw(rho, a, b))


def pauli_probabilities(d: PauliDecomposition, a, b) -> np.ndarray:
    """Pauli-form joint probabilities for broadcast arrays of unit vectors.

    ``a`` and ``b`` have shape (..., 3); the result has shape (..., 2, 2)
    and is not clipped:

        p = (1 + eA 2<S^A>.a + eB 2<S^B>.b + eA eB a.C.b) / 4
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    ma = 2.0 * (a @ d.bloch_a)
    mb = 2.0 * (b @ d.bloch_b)
    cab = np.einsum("...i,ij,...j->...", a, d.corr, b)
    ma, mb, cab = np.broadcast_arrays(ma, mb, cab)
    ea = _SIGNS[:, None]
    eb = _SIGNS[None, :]
    return 0.25 * (1.0 + ea * ma[..., None, None] + eb * mb[..., None, None]
                   + ea * eb * cab[..., None, None])


def joint_probabilities_pauli(d: PauliDecomposition, a: Direction, b: Direction) -> ProbabilityTable2x2:
    return ProbabilityTable2x2.from_raw(pauli_probabilities(d, a.as_array(), b.as_array()))


def marginals(t: ProbabilityTable2x2) -> tuple[tuple[float, float], tuple[float, float]]:
    p = t.as_array()
    pa = p.sum(axis=1)
    pb = p.sum(axis=0)
    return (float(pa[0]), float(pa[1])), (float(pb[0]), float(pb[1]))


def dephase(rho, projectors_a, projectors_b) -> np.ndarray:
    """sum_{mu,nu} (P_mu (x) Q_nu) rho (P_mu (x) Q_nu); either list may be [I]."""
    m = _as_matrix(rho)
    out = np.zeros((4, 4), dtype=complex)
    for pa in projectors_a:
        for pb in projectors_b:
            k = np.kron(pa, pb)
            out += k @ m @ k
    return out


def post_measurement_state(rho, a: Direction, b: Direction) -> DensityMatrix2Q:
    pa = [projector(a, 1), projector(a, -1)]
    pb = [projector(b, 1), projector(b, -1)]
    return validate(dephase(rho, pa, pb))


def post_measurement_state_A(rho, a: Direction) -> DensityMatrix2Q:
    """State after measuring only spin A along ``a`` (outcome not recorded)."""
    return validate(dephase(rho, [projector(a, 1), projector(a, -1)], [I2]))


@dataclass(frozen=True, eq=False)
class ConditionalEnsemble:
    """Outcome probabilities and post-selected states for a measurement on A.

    A branch whose probability is below 1e-12 has its state set to ``None``.
    """

    p_plus: float
    p_minus: float
    rho_plus: DensityMatrix2Q | None
    rho_minus: DensityMatrix2Q | None

    @property
    def degenerate(self) -> bool:
        return self.rho_plus is None or self.rho_minus is None

    def branches(self):
        return ((self.p_plus, self.rho_plus), (self.p_minus, self.rho_minus))


def conditional_branches(rho, a: Direction) -> list[tuple[float, np.ndarray | None]]:
    """Unvalidated (p_mu, rho_mu) pairs; rho_mu is None below 1e-12."""
    m = _as_matrix(rho)
    out = []
    for outcome in (1, -1):
        k = np.kron(projector(a, outcome), I2)
        unnorm = k @ m @ k
        p = float(np.trace(unnorm).real)
        out.append((p, unnorm / p if p >= DEGENERATE_PROB else None))
    return out


def conditional_branches_batch(rho, dirs) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`conditional_branches` for unit vectors ``dirs`` (N, 3).

    Returns probabilities (N, 2) and unnormalised branch operators (N, 2, 4, 4).
    """
    m = _as_matrix(rho)
    dirs = np.asarray(dirs, dtype=float)
    sn = np.einsum("ni,ijk->njk", dirs, np.stack(linalg.SPIN))
    proj = 0.5 * I2 + _SIGNS[None, :, None, None] * sn[:, None]          # (N, 2, 2, 2)
    k = np.einsum("nmij,kl->nmikjl", proj, I2).reshape(len(dirs), 2, 4, 4)
    unnorm = k @ m @ k
    probs = np.trace(unnorm, axis1=-2, axis2=-1).real
    return probs, unnorm


def conditional_states_A(rho, a: Direction) -> ConditionalEnsemble:
    (pp, rp), (pm, rm) = conditional_branches(rho, a)
    total = pp + pm
    return ConditionalEnsemble(
        pp / total, pm / total,
        None if rp is None else validate(rp),
        None if rm is None else validate(rm),
    )
