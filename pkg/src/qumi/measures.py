"""Information measures for two-qubit states, in bits.

Q_LHV compares the quantum mutual information with the classical mutual
information of spin-component outcomes along directions fixed by the Bloch
vectors. When a Bloch vector vanishes its direction is free and the
classical information is maximised over it instead.
"""

import enum
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from . import linalg
from .errors import ConsistencyError, InvalidDistribution, NotPositive, ParamOutOfRange, PreconditionViolated
from .measurement import (
    ProbabilityTable2x2,
    DEGENERATE_PROB,
    conditional_branches,
    conditional_branches_batch,
    dephase,
    joint_probabilities,
    marginals,
    pauli_probabilities,
    post_measurement_state_A,
)
from .optimizer import SearchConfig, extremize_one_direction, extremize_two_directions
from .states import (
    PSD_TOL,
    DensityMatrix2Q,
    Direction,
    bell_diagonal_eigenvalues,
    pauli_decompose,
)

NON_UNIQUE = "NonUnique"
DISTRIBUTION_TOL = 1e-8
CROSS_CHECK_TOL = 1e-9


class BlochCase(str, enum.Enum):
    BOTH_NONZERO = "BothBlochNonzero"
    A_ZERO = "OneBlochZero(A)"
    B_ZERO = "OneBlochZero(B)"
    BOTH_ZERO = "BothBlochZero"


def _xlog2x(p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    safe = np.where(p > 0.0, p, 1.0)
    return np.where(p > 0.0, p * np.log2(safe), 0.0)


def shannon_entropy(p) -> float:
    """Base-2 Shannon entropy with 0 log 0 = 0."""
    p = np.asarray(p, dtype=float).ravel()
    if p.size == 0 or np.any(p < 0.0) or abs(p.sum() - 1.0) > DISTRIBUTION_TOL:
        raise InvalidDistribution(f"not a probability vector: {p}")
    return max(0.0, float(-_xlog2x(p).sum()))


def binary_entropy(x: float) -> float:
    return shannon_entropy([x, 1.0 - x])


def von_neumann_entropy(rho) -> float:
    m = rho.matrix if isinstance(rho, DensityMatrix2Q) else np.asarray(rho, dtype=complex)
    if m.shape not in ((2, 2), (4, 4)):
        raise ValueError(f"expected a 2x2 or 4x4 density matrix, got shape {m.shape}")
    w = linalg.eigvalsh(m)
    if w[0] < -PSD_TOL:
        raise NotPositive(w[0])
    return shannon_entropy(np.clip(w, 0.0, None))


def quantum_mutual_information(rho) -> float:
    m = rho.matrix if isinstance(rho, DensityMatrix2Q) else np.asarray(rho, dtype=complex)
    return (von_neumann_entropy(linalg.partial_trace(m, "A"))
            + von_neumann_entropy(linalg.partial_trace(m, "B"))
            - von_neumann_entropy(m))


def mutual_information_from_table(t: ProbabilityTable2x2) -> float:
    pa, pb = marginals(t)
    return shannon_entropy(pa) + shannon_entropy(pb) - shannon_entropy(t.as_array())


def _mutual_information_batch(p: np.ndarray) -> np.ndarray:
    """Mutual information of (..., 2, 2) tables; no validation, negatives clipped."""
    p = np.clip(p, 0.0, None)
    h_joint = -_xlog2x(p).sum(axis=(-2, -1))
    h_a = -_xlog2x(p.sum(axis=-1)).sum(axis=-1)
    h_b = -_xlog2x(p.sum(axis=-2)).sum(axis=-1)
    return h_a + h_b - h_joint


def classical_mutual_information(rho, a: Direction, b: Direction) -> float:
    return mutual_information_from_table(joint_probabilities(rho, a, b))


def quantumness_at(rho, a: Direction, b: Direction) -> float:
    return quantum_mutual_information(rho) - classical_mutual_information(rho, a, b)


def classical_capacity_closed_form(c: float, *, tol: float = 1e-9) -> float:
    """max over a, b of I(a, b) when both Bloch vectors vanish: 1 - H2((1 + C)/2).

    ``c`` is the largest singular value of the correlation matrix.
    """
    if not (-tol <= c <= 1.0 + tol):
        raise ParamOutOfRange(f"C must lie in [0, 1], got {c}")
    c = min(max(c, 0.0), 1.0)
    return 1.0 - binary_entropy((1.0 + c) / 2.0)


def bloch_case(rho, threshold: float = 1e-9) -> BlochCase:
    d = pauli_decompose(rho)
    za = np.linalg.norm(d.bloch_a) < threshold
    zb = np.linalg.norm(d.bloch_b) < threshold
    if za and zb:
        return BlochCase.BOTH_ZERO
    if za:
        return BlochCase.A_ZERO
    if zb:
        return BlochCase.B_ZERO
    return BlochCase.BOTH_NONZERO


@dataclass(frozen=True)
class LhvResult:
    i_quantum: float
    i_lhv: float
    q_lhv: float
    case_tag: BlochCase
    optimal_a: Direction | None
    optimal_b: Direction | None


def q_lhv(rho: DensityMatrix2Q, cfg: SearchConfig | None = None) -> LhvResult:
    """Q_LHV = I_Q - I_LHV with the Bloch-vector case dispatch.

    Both Bloch vectors nonzero: I_LHV = I(a, b) at the normalised Bloch
    directions, no optimisation. One vanishes: maximise over that spin's
    direction with the other fixed. Both vanish: closed form in the largest
    singular value of the correlation matrix.
    """
    cfg = cfg or SearchConfig()
    d = pauli_decompose(rho)
    i_q = quantum_mutual_information(rho)
    case = bloch_case(rho, cfg.bloch_zero_threshold)

    if case is BlochCase.BOTH_NONZERO:
        a = Direction.from_vector(d.bloch_a)
        b = Direction.from_vector(d.bloch_b)
        i_lhv = classical_mutual_information(rho, a, b)
    elif case is BlochCase.A_ZERO:
        b = Direction.from_vector(d.bloch_b)
        bv = b.as_array()
        res = extremize_one_direction(
            lambda av: _mutual_information_batch(pauli_probabilities(d, av, bv)),
            "max", cfg, vectorized=True, check_antipodal=True)
        a, i_lhv = res.direction, res.value
    elif case is BlochCase.B_ZERO:
        a = Direction.from_vector(d.bloch_a)
        av = a.as_array()
        res = extremize_one_direction(
            lambda bv: _mutual_information_batch(pauli_probabilities(d, av, bv)),
            "max", cfg, vectorized=True, check_antipodal=True)
        b, i_lhv = res.direction, res.value
    else:
        s, vecs = linalg.singular_system_3x3(d.corr)
        i_lhv = classical_capacity_closed_form(float(s[0]))
        if s[0] > cfg.bloch_zero_threshold:
            v = vecs[:, 0]
            a = Direction.from_vector(d.corr @ v)
            b = Direction.from_vector(v)
        else:
            a = b = None
    return LhvResult(i_q, i_lhv, i_q - i_lhv, case, a, b)


def q_mid(rho: DensityMatrix2Q, cfg: SearchConfig | None = None) -> float | str:
    """Measurement-induced disturbance, dephasing in the eigenbases of the reduced states.

    Returns ``NON_UNIQUE`` when either reduced state is maximally mixed, since
    its eigenbasis, and hence the measurement, is then undefined.
    """
    cfg = cfg or SearchConfig()
    if bloch_case(rho, cfg.bloch_zero_threshold) is not BlochCase.BOTH_NONZERO:
        return NON_UNIQUE
    proj = []
    for keep in ("A", "B"):
        vecs = linalg.hermitian_eigensystem(rho.reduced(keep))[1]
        proj.append([np.outer(vecs[:, k], vecs[:, k].conj()) for k in range(2)])
    dephased = dephase(rho, proj[0], proj[1])
    return quantum_mutual_information(rho) - quantum_mutual_information(dephased)


def conditional_entropy_A(rho, a: Direction) -> float:
    """sum_mu p_mu S(rho_mu) for a projective measurement of spin A along ``a``."""
    return sum(p * von_neumann_entropy(r) for p, r in conditional_branches(rho, a) if r is not None)


def conditional_entropy_A_batch(rho, dirs) -> np.ndarray:
    """:func:`conditional_entropy_A` for a stack of unit vectors (N, 3)."""
    probs, unnorm = conditional_branches_batch(rho, dirs)
    live = probs >= DEGENERATE_PROB
    safe = np.where(live, probs, 1.0)
    states = (unnorm / safe[..., None, None])[live]
    ent = np.zeros_like(probs)
    if len(states):
        w = linalg.eigvalsh_batch(states)
        if w[:, 0].min() < -PSD_TOL:
            raise NotPositive(w[:, 0].min())
        ent[live] = -_xlog2x(np.clip(w, 0.0, None)).sum(axis=1)
    return (probs * ent).sum(axis=1)


def conditional_entropy_A_via_dephasing(rho, a: Direction) -> float:
    """Same quantity as S(rho'^AB(a)) - S(rho'^A(a)) from the A-dephased state."""
    dephased = post_measurement_state_A(rho, a)
    return von_neumann_entropy(dephased) - von_neumann_entropy(dephased.reduced("A"))


class DiscordResult(NamedTuple):
    value: float
    direction: Direction


def quantum_discord_A(rho: DensityMatrix2Q, cfg: SearchConfig | None = None) -> DiscordResult:
    cfg = cfg or SearchConfig()
    res = extremize_one_direction(lambda dirs: conditional_entropy_A_batch(rho, dirs), "min", cfg,
                                  vectorized=True, check_antipodal=True)
    check = conditional_entropy_A_via_dephasing(rho, res.direction)
    if abs(check - res.value) > CROSS_CHECK_TOL:
        raise ConsistencyError(
            f"conditional entropy {res.value!r} disagrees with dephasing route {check!r}")
    value = von_neumann_entropy(rho.reduced("A")) - von_neumann_entropy(rho) + res.value
    return DiscordResult(value, res.direction)


class SymmetricDiscordResult(NamedTuple):
    value: float
    a: Direction
    b: Direction


def symmetric_discord(rho: DensityMatrix2Q, cfg: SearchConfig | None = None) -> SymmetricDiscordResult:
    """I_Q minus the two-direction maximum of the classical mutual information."""
    cfg = cfg or SearchConfig()
    d = pauli_decompose(rho)
    res = extremize_two_directions(
        lambda av, bv: _mutual_information_batch(pauli_probabilities(d, av, bv)),
        "max", cfg, vectorized=True, check_antipodal=True)
    a, b = res.directions
    return SymmetricDiscordResult(quantum_mutual_information(rho) - res.value, a, b)


class BellDiagonalForms(NamedTuple):
    i_q: float
    q_lhv: float


def bell_diagonal_closed_forms(f1: float, f2: float, f3: float) -> BellDiagonalForms:
    lam = bell_diagonal_eigenvalues(f1, f2, f3)
    if lam.min() < -PSD_TOL:
        raise NotPositive(lam.min())
    h = shannon_entropy(np.clip(lam, 0.0, None))
    c = max(abs(f1), abs(f2), abs(f3))
    i_q = 2.0 - h
    return BellDiagonalForms(i_q, i_q - classical_capacity_closed_form(c))


def discord_condition_x_state(c1: float, c2: float, c3: float, r: float) -> bool:
    """Whether the optimal discord measurement on A is along e3 (needs |c1| >= |c2|)."""
    if abs(c1) < abs(c2):
        raise PreconditionViolated("reorder axes so that |c1| >= |c2|")
    return c1 * c1 + r * r <= c3 * c3


@dataclass(frozen=True)
class MeasureReport:
    i_quantum: float
    i_lhv: float
    q_lhv: float
    case_tag: BlochCase
    optimal_a: Direction | None
    optimal_b: Direction | None
    q_mid: float | str
    q_discord_a: float
    q_sym: float

    def to_dict(self, digits: int = 12) -> dict:
        def num(x):
            return float(f"{x:.{digits}g}")

        out = asdict(self)
        for key in ("i_quantum", "i_lhv", "q_lhv", "q_discord_a", "q_sym"):
            out[key] = num(out[key])
        if not isinstance(self.q_mid, str):
            out["q_mid"] = num(self.q_mid)
        out["case_tag"] = self.case_tag.value
        for key in ("optimal_a", "optimal_b"):
            v = getattr(self, key)
            out[key] = None if v is None else [num(x) + 0.0 for x in v.as_array()]
        return out


def full_report(rho: DensityMatrix2Q, cfg: SearchConfig | None = None) -> MeasureReport:
    cfg = cfg or SearchConfig()
    lhv = q_lhv(rho, cfg)
    return MeasureReport(
        i_quantum=lhv.i_quantum,
        i_lhv=lhv.i_lhv,
        q_lhv=lhv.q_lhv,
        case_tag=lhv.case_tag,
        optimal_a=lhv.optimal_a,
        optimal_b=lhv.optimal_b,
        q_mid=q_mid(rho, cfg),
        q_discord_a=quantum_discord_A(rho, cfg).value,
        q_sym=symmetric_discord(rho, cfg).value,
    )

