"""Invariant suites behind ``qumi verify``.

Each suite samples states or directions with a seeded generator, compares
two independent computations and reports the worst deviation against a
fixed tolerance.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import linalg, measurement, measures, optimizer, sampling, states
from .measurement import joint_probabilities_raw, pauli_probabilities, post_measurement_state
from .optimizer import SearchConfig
from .states import E3, Direction


@dataclass(frozen=True)
class Level:
    name: str
    samples: int          # generic random-state count
    triples: int          # measurement identity
    bell_states: int      # closed-form and symmetric-discord suites
    cfg: SearchConfig


LEVELS = {
    "quick": Level("quick", 50, 50, 50, SearchConfig(grid_polar=16, grid_azimuthal=32)),
    "full": Level("full", 200, 1000, 50, SearchConfig()),
}


@dataclass(frozen=True)
class SuiteResult:
    name: str
    count: int
    worst: float
    tol: float
    note: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.worst < self.tol)

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        rel = "<" if self.passed else ">="
        extra = f"  {self.note}" if self.note else ""
        tol = f"{self.tol:.0e}".replace("e-0", "e-").replace("e+0", "e")
        return f"{status:4}  {self.name}: n={self.count}, max |Δ| = {self.worst:.3e} {rel} {tol}{extra}"


def _max(xs) -> float:
    xs = list(xs)
    return float(max(xs)) if xs else 0.0


# linalg


def suite_eigensystem(rng, level):
    worst = []
    for _ in range(level.samples):
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        h = g + g.conj().T
        w, v = linalg.hermitian_eigensystem(h)
        worst.append(np.abs((v * w) @ v.conj().T - h).max())
        worst.append(abs(w.sum() - np.trace(h).real))
    return SuiteResult("linalg: eigen reconstruction and trace", level.samples, _max(worst), 1e-9)


def suite_orthogonal_svd(rng, level):
    worst = []
    for _ in range(level.samples):
        q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
        worst.append(np.abs(np.array(linalg.singular_values_3x3(q)) - 1.0).max())
    return SuiteResult("linalg: singular values of orthogonal matrices", level.samples, _max(worst), 1e-10)


def suite_partial_trace_linear(rng, level):
    worst = []
    for _ in range(level.samples):
        m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        n = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        al, be = rng.standard_normal(2)
        for keep in "AB":
            lhs = linalg.partial_trace(al * m + be * n, keep)
            rhs = al * linalg.partial_trace(m, keep) + be * linalg.partial_trace(n, keep)
            worst.append(np.abs(lhs - rhs).max())
    return SuiteResult("linalg: partial trace linearity", level.samples, _max(worst), 1e-12)


# states


def suite_pauli_round_trip(rng, level):
    n = max(level.samples, 1000 if level.name == "full" else 0)
    worst = []
    for _ in range(n):
        rho = sampling.random_state(rng)
        back = states.from_pauli(states.pauli_decompose(rho))
        worst.append(np.abs(back.matrix - rho.matrix).max())
    return SuiteResult("states: Pauli decomposition round trip", n, _max(worst), 1e-10)


def bell_spectrum_grid(points: int = 20):
    """(f, closed-form eigenvalues) over the physical part of a points^3 grid."""
    axis = np.linspace(-1.0, 1.0, points)
    for f1 in axis:
        for f2 in axis:
            for f3 in axis:
                lam = states.bell_diagonal_eigenvalues(f1, f2, f3)
                if lam.min() >= 0.0:
                    yield (f1, f2, f3), lam


def suite_bell_spectrum(rng, level):
    worst, count = [], 0
    for f, lam in bell_spectrum_grid(20):
        w = linalg.eigvalsh(states.bell_diagonal(*f).matrix)
        worst.append(np.abs(np.sort(lam) - w).max())
        count += 1
    return SuiteResult("states: Bell-diagonal spectrum on 20^3 grid", count, _max(worst), 1e-10)


def suite_variance(rng, level):
    worst = []
    for _ in range(level.samples):
        rho1 = sampling.random_single_qubit(rng)
        b = sampling.random_direction(rng).as_array()
        sb = linalg.spin_along(b)
        var = np.trace(sb @ sb @ rho1).real - np.trace(sb @ rho1).real ** 2
        expect = 0.25 - float(states.bloch_vector(rho1) @ b) ** 2
        worst.append(abs(var - expect))
        # projectors along the Bloch direction commute with the state
        n = Direction.from_vector(states.bloch_vector(rho1))
        p = measurement.projector(n, 1)
        worst.append(np.abs(p @ rho1 - rho1 @ p).max())
    return SuiteResult("states: variance formula and Bloch eigenbasis", level.samples, _max(worst), 1e-10)


def suite_families_valid(rng, level):
    count = 0
    for _ in range(level.samples):
        states.bell_diagonal(*sampling.random_bell_diagonal_params(rng))
        sampling.random_x_state_discord_region(rng)
        states.werner(rng.random())
        states.pure_state(rng.standard_normal(4) + 1j * rng.standard_normal(4))
        count += 4
    return SuiteResult("states: generated family members validate", count, 0.0, 1e-12)


# measurement


def suite_measurement_identity(rng, level):
    worst, min_q = [], np.inf
    for _ in range(level.triples):
        rho = sampling.random_state(rng)
        a, b = sampling.random_direction(rng), sampling.random_direction(rng)
        i_post = measures.quantum_mutual_information(post_measurement_state(rho, a, b))
        i_cls = measures.classical_mutual_information(rho, a, b)
        worst.append(abs(i_post - i_cls))
        min_q = min(min_q, measures.quantum_mutual_information(rho) - i_cls)
    res = SuiteResult("measurement: I_Q(post-measurement) = I(a,b)", level.triples, _max(worst), 1e-9,
                      f"min Q(a,b) = {min_q:.2e}")
    if min_q < -1e-9:
        return SuiteResult(res.name, res.count, max(res.worst, -min_q), res.tol, res.note)
    return res


def suite_probability_paths(rng, level):
    worst, min_raw = [], np.inf
    for _ in range(level.triples):
        rho = sampling.random_state(rng)
        d = states.pauli_decompose(rho)
        a, b = sampling.random_direction(rng), sampling.random_direction(rng)
        p1 = joint_probabilities_raw(rho, a, b)
        p2 = pauli_probabilities(d, a.as_array(), b.as_array())
        worst.append(np.abs(p1 - p2).max())
        min_raw = min(min_raw, p1.min(), p2.min())
        # antipodal: flipping a swaps table rows
        flipped = joint_probabilities_raw(rho, -a, b)
        worst.append(np.abs(flipped - p1[::-1]).max())
    note = f"min raw probability = {min_raw:.2e}"
    worst_all = _max(worst)
    if min_raw < -1e-12:
        worst_all = max(worst_all, 1.0)
    return SuiteResult("measurement: projector vs Pauli-form probabilities", level.triples, worst_all, 1e-12, note)


def suite_rotation_covariance(rng, level):
    worst = []
    for _ in range(level.samples):
        rho = sampling.random_state(rng)
        a, b = sampling.random_direction(rng), sampling.random_direction(rng)
        ua, ub = sampling.random_su2(rng), sampling.random_su2(rng)
        ra, rb = sampling.rotation_of(ua), sampling.rotation_of(ub)
        rotated = sampling.apply_local(rho, ua, ub)
        a2 = Direction.from_vector(ra @ a.as_array())
        b2 = Direction.from_vector(rb @ b.as_array())
        worst.append(np.abs(joint_probabilities_raw(rotated, a2, b2)
                            - joint_probabilities_raw(rho, a, b)).max())
    return SuiteResult("measurement: rotation covariance", level.samples, _max(worst), 1e-10)


# measures


def suite_closed_form_vs_brute_force(rng, level):
    worst = []
    for _ in range(level.bell_states):
        f = sampling.random_bell_diagonal_params(rng)
        d = states.pauli_decompose(states.bell_diagonal(*f))
        brute = optimizer.extremize_two_directions(
            lambda av, bv: measures._mutual_information_batch(pauli_probabilities(d, av, bv)),
            "max", level.cfg, vectorized=True).value
        closed = measures.classical_capacity_closed_form(max(abs(x) for x in f))
        worst.append(abs(brute - closed))
    return SuiteResult("measures: closed-form vs brute-force", level.bell_states, _max(worst), 1e-4)


def suite_mid_equivalence(rng, level):
    worst = []
    for _ in range(level.samples):
        rho = sampling.random_state_with_bloch(rng, 0.05)
        worst.append(abs(measures.q_mid(rho, level.cfg) - measures.q_lhv(rho, level.cfg).q_lhv))
    return SuiteResult("measures: Q_MID = Q_LHV (both Bloch vectors nonzero)", level.samples, _max(worst), 1e-12)


def suite_symmetric_equivalence(rng, level):
    worst = []
    for _ in range(level.bell_states):
        f = sampling.random_bell_diagonal_params(rng)
        rho = states.bell_diagonal(*f)
        worst.append(abs(measures.symmetric_discord(rho, level.cfg).value
                         - measures.bell_diagonal_closed_forms(*f).q_lhv))
    return SuiteResult("measures: Q_SYM = Q_LHV (Bell-diagonal)", level.bell_states, _max(worst), 1e-5)


def suite_discord_equivalence(rng, level):
    worst, worst_angle = [], 0.0
    for _ in range(level.bell_states):
        rho, _ = sampling.random_x_state_discord_region(rng)
        disc = measures.quantum_discord_A(rho, level.cfg)
        worst.append(abs(disc.value - measures.q_lhv(rho, level.cfg).q_lhv))
        worst_angle = max(worst_angle, disc.direction.angle_to(E3, axis=True))
    value = _max(worst)
    if worst_angle >= 1e-3:
        value = max(value, 1.0)
    return SuiteResult("measures: Q_D = Q_LHV (X-states, r=0)", level.bell_states, value, 1e-5,
                       f"max angle(a_m, e3) = {worst_angle:.1e}")


def suite_pure_states(rng, level):
    worst = []
    for _ in range(level.bell_states):
        q = rng.uniform(0.5, 1.0)
        rho = sampling.random_schmidt_state(rng, q)
        h = measures.binary_entropy(q)
        rep = measures.full_report(rho, level.cfg)
        worst += [abs(x - h) for x in (rep.q_lhv, rep.q_mid, rep.q_sym, rep.q_discord_a)]
    return SuiteResult("measures: pure Schmidt states", level.bell_states, _max(worst), 1e-5)


def suite_product_states(rng, level):
    worst = []
    n = min(level.samples, 100)
    for _ in range(n):
        rep = measures.full_report(sampling.random_product_state(rng), level.cfg)
        worst += [abs(x) for x in (rep.i_quantum, rep.i_lhv, rep.q_lhv, rep.q_discord_a, rep.q_sym)]
        if rep.q_mid != measures.NON_UNIQUE:
            worst.append(abs(rep.q_mid))
    return SuiteResult("measures: product states vanish", n, _max(worst), 1e-9)


def suite_local_unitary(rng, level):
    worst = []
    n = max(5, level.samples // 10)
    for _ in range(n):
        rho = sampling.random_state_with_bloch(rng, 0.05)
        rotated = sampling.apply_local(rho, sampling.random_su2(rng), sampling.random_su2(rng))
        r1, r2 = measures.full_report(rho, level.cfg), measures.full_report(rotated, level.cfg)
        for key in ("i_quantum", "i_lhv", "q_lhv", "q_mid", "q_discord_a", "q_sym"):
            worst.append(abs(getattr(r1, key) - getattr(r2, key)))
    return SuiteResult("measures: local-unitary invariance", n, _max(worst), 1e-9)


# optimizer


def suite_determinism(rng, level):
    rho = sampling.random_state(rng)
    d = states.pauli_decompose(rho)
    obj = lambda av, bv: measures._mutual_information_batch(pauli_probabilities(d, av, bv))  # noqa: E731
    r1 = optimizer.extremize_two_directions(obj, "max", level.cfg, vectorized=True)
    r2 = optimizer.extremize_two_directions(obj, "max", level.cfg, vectorized=True)
    same = r1 == r2
    return SuiteResult("optimizer: determinism", 2, 0.0 if same else 1.0, 1e-300)


def suite_monotone(rng, level):
    worst = 0.0
    for _ in range(max(5, level.samples // 10)):
        d = states.pauli_decompose(sampling.random_state(rng))
        hist = []
        optimizer.extremize_two_directions(
            lambda av, bv: measures._mutual_information_batch(pauli_probabilities(d, av, bv)),
            "max", level.cfg, vectorized=True, history=hist)
        worst = max(worst, -float(np.min(np.diff(hist))) if len(hist) > 1 else 0.0)
    return SuiteResult("optimizer: refinement monotonicity", max(5, level.samples // 10), max(worst, 0.0), 1e-15)


SUITES: list[Callable] = [
    suite_eigensystem,
    suite_orthogonal_svd,
    suite_partial_trace_linear,
    suite_pauli_round_trip,
    suite_bell_spectrum,
    suite_variance,
    suite_families_valid,
    suite_measurement_identity,
    suite_probability_paths,
    suite_rotation_covariance,
    suite_closed_form_vs_brute_force,
    suite_mid_equivalence,
    suite_symmetric_equivalence,
    suite_discord_equivalence,
    suite_pure_states,
    suite_product_states,
    suite_local_unitary,
    suite_determinism,
    suite_monotone,
]


def run(level: str = "quick", seed: int = 0, report: Callable[[str], None] | None = None) -> list[SuiteResult]:
    lv = LEVELS[level]
    results = []
    for i, suite in enumerate(SUITES):
        res = suite(np.random.default_rng([seed, i]), lv)
        results.append(res)
        if report is not None:
            report(res.line())
    return results
