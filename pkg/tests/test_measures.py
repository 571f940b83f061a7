import numpy as np
import pytest

from qumi import measures, sampling, states
from qumi.errors import InvalidDistribution, ParamOutOfRange, PreconditionViolated
from qumi.measures import NON_UNIQUE, BlochCase
from qumi.states import E1, E3

SCHMIDT = [np.sqrt(0.8), 0, 0, np.sqrt(0.2)]
H_08 = 0.7219280948873623


def test_shannon_entropy():
    assert measures.shannon_entropy([1, 0]) == 0
    assert measures.shannon_entropy([0.5, 0.5]) == pytest.approx(1.0)
    assert measures.shannon_entropy([0.8, 0.2]) == pytest.approx(H_08, abs=1e-12)
    for bad in ([0.5, 0.6], [1.1, -0.1]):
        with pytest.raises(InvalidDistribution):
            measures.shannon_entropy(bad)


def test_von_neumann_entropy():
    assert measures.von_neumann_entropy(states.pure_state(SCHMIDT).matrix) == pytest.approx(0, abs=1e-12)
    assert measures.von_neumann_entropy(np.eye(4) / 4) == pytest.approx(2.0)
    assert measures.von_neumann_entropy(states.werner(0.5).matrix) == pytest.approx(1.548795, abs=1e-6)


def test_quantum_mutual_information(rng):
    assert measures.quantum_mutual_information(sampling.random_product_state(rng)) == pytest.approx(0, abs=1e-12)
    assert measures.quantum_mutual_information(states.singlet()) == pytest.approx(2.0)
    assert measures.quantum_mutual_information(states.werner(0.5)) == pytest.approx(0.451205, abs=1e-6)


def test_classical_mutual_information_examples():
    s = states.singlet()
    assert measures.classical_mutual_information(states.werner(0), E1, E3) == pytest.approx(0, abs=1e-12)
    assert measures.classical_mutual_information(s, E3, E3) == pytest.approx(1.0)
    assert measures.classical_mutual_information(s, E3, E1) == pytest.approx(0, abs=1e-12)
    assert measures.quantumness_at(s, E3, E3) == pytest.approx(1.0)


def test_capacity_closed_form():
    assert measures.classical_capacity_closed_form(0.0) == 0
    assert measures.classical_capacity_closed_form(1.0) == pytest.approx(1.0)
    assert measures.classical_capacity_closed_form(0.5) == pytest.approx(0.188722, abs=1e-6)
    cs = np.linspace(0, 1, 21)
    assert np.all(np.diff([measures.classical_capacity_closed_form(c) for c in cs]) > 0)
    with pytest.raises(ParamOutOfRange):
        measures.classical_capacity_closed_form(1.5)


def test_q_lhv_cases(quick_cfg):
    pure = measures.q_lhv(states.pure_state(SCHMIDT), quick_cfg)
    assert pure.case_tag is BlochCase.BOTH_NONZERO
    assert pure.i_lhv == pytest.approx(H_08, abs=1e-9) and pure.q_lhv == pytest.approx(H_08, abs=1e-9)
    singlet = measures.q_lhv(states.singlet(), quick_cfg)
    assert singlet.case_tag is BlochCase.BOTH_ZERO
    assert (singlet.i_lhv, singlet.q_lhv) == pytest.approx((1.0, 1.0))
    assert measures.q_lhv(states.x_state(0.2, 0.1, 0.5, 0.0, 0.3), quick_cfg).case_tag is BlochCase.A_ZERO
    assert measures.q_lhv(states.x_state(0.2, 0.1, 0.5, 0.3, 0.0), quick_cfg).case_tag is BlochCase.B_ZERO


def test_q_lhv_one_zero_mirror(quick_cfg):
    # swapping the roles of A and B mirrors the one-zero case
    a_zero = measures.q_lhv(states.x_state(0.3, -0.2, 0.4, 0.0, 0.25), quick_cfg)
    b_zero = measures.q_lhv(states.x_state(0.3, -0.2, 0.4, 0.25, 0.0), quick_cfg)
    assert a_zero.q_lhv == pytest.approx(b_zero.q_lhv, abs=1e-9)


def test_q_lhv_case_one_is_quantumness_at_bloch_directions(rng, quick_cfg):
    rho = sampling.random_state_with_bloch(rng, 0.05)
    lhv = measures.q_lhv(rho, quick_cfg)
    assert lhv.q_lhv == measures.quantumness_at(rho, lhv.optimal_a, lhv.optimal_b)
    assert lhv.q_lhv == pytest.approx(lhv.i_quantum - lhv.i_lhv, abs=1e-12)


def test_q_mid_examples(quick_cfg):
    assert measures.q_mid(states.pure_state(SCHMIDT), quick_cfg) == pytest.approx(H_08, abs=1e-9)
    assert measures.q_mid(states.singlet(), quick_cfg) == NON_UNIQUE
    x = states.x_state(0, 0, 0.5, 0.3, 0.2)
    want = measures.quantum_mutual_information(x) - measures.classical_mutual_information(x, E3, E3)
    assert measures.q_mid(x, quick_cfg) == pytest.approx(want, abs=1e-12)


def test_discord_examples(rng, quick_cfg):
    assert measures.quantum_discord_A(sampling.random_product_state(rng), quick_cfg).value == pytest.approx(0, abs=1e-9)
    assert measures.quantum_discord_A(states.singlet(), quick_cfg).value == pytest.approx(1.0, abs=1e-9)
    rho = states.bell_diagonal(-0.2, -0.2, -0.8)
    disc = measures.quantum_discord_A(rho, quick_cfg)
    assert disc.direction.angle_to(E3, axis=True) < 1e-3
    assert disc.value == pytest.approx(measures.q_lhv(rho, quick_cfg).q_lhv, abs=1e-5)


def test_conditional_entropy_routes_agree(rng):
    rho = sampling.random_state(rng)
    dirs = [sampling.random_direction(rng) for _ in range(8)]
    batch = measures.conditional_entropy_A_batch(rho, np.array([d.as_array() for d in dirs]))
    for d, hb in zip(dirs, batch):
        h = measures.conditional_entropy_A(rho, d)
        assert h == pytest.approx(measures.conditional_entropy_A_via_dephasing(rho, d), abs=1e-10)
        assert h == pytest.approx(hb, abs=1e-12)


def test_symmetric_discord_examples(rng, quick_cfg):
    assert measures.symmetric_discord(sampling.random_product_state(rng), quick_cfg).value == pytest.approx(0, abs=1e-9)
    assert measures.symmetric_discord(states.singlet(), quick_cfg).value == pytest.approx(1.0, abs=1e-9)
    sym = measures.symmetric_discord(states.bell_diagonal(0.3, -0.1, 0.2), quick_cfg)
    assert sym.value == pytest.approx(measures.bell_diagonal_closed_forms(0.3, -0.1, 0.2).q_lhv, abs=1e-5)


def test_bell_diagonal_closed_forms(quick_cfg):
    assert measures.bell_diagonal_closed_forms(0, 0, 0) == pytest.approx((0, 0), abs=1e-12)
    assert measures.bell_diagonal_closed_forms(-1, -1, -1) == pytest.approx((2, 1))
    assert measures.bell_diagonal_closed_forms(-0.5, -0.5, -0.5) == pytest.approx((0.451205, 0.262483), abs=1e-6)
    f = (0.3, -0.1, 0.2)
    rho = states.bell_diagonal(*f)
    closed = measures.bell_diagonal_closed_forms(*f)
    assert closed.i_q == pytest.approx(measures.quantum_mutual_information(rho), abs=1e-9)
    assert closed.q_lhv == pytest.approx(measures.q_lhv(rho, quick_cfg).q_lhv, abs=1e-9)


def test_discord_condition():
    assert measures.discord_condition_x_state(0.2, 0.1, 0.8, 0)
    assert not measures.discord_condition_x_state(0.8, 0.1, 0.2, 0)
    assert measures.discord_condition_x_state(0, 0, 0.5, 0)
    with pytest.raises(PreconditionViolated):
        measures.discord_condition_x_state(0.1, 0.2, 0.8, 0)


def test_full_report_examples(quick_cfg):
    rep = measures.full_report(states.werner(0.0), quick_cfg)
    assert rep.case_tag is BlochCase.BOTH_ZERO and rep.q_mid == NON_UNIQUE
    assert max(abs(rep.i_quantum), abs(rep.q_lhv), abs(rep.q_sym), abs(rep.q_discord_a)) < 1e-9
    rep = measures.full_report(states.pure_state(SCHMIDT), quick_cfg)
    assert rep.q_lhv == pytest.approx(H_08, abs=1e-9) and rep.q_mid == pytest.approx(H_08, abs=1e-9)
    d = rep.to_dict()
    assert d["case_tag"] == "BothBlochNonzero" and len(d["optimal_a"]) == 3


def test_local_unitary_invariance(rng, quick_cfg):
    rho = sampling.random_state_with_bloch(rng, 0.05)
    rotated = sampling.apply_local(rho, sampling.random_su2(rng), sampling.random_su2(rng))
    r1, r2 = measures.full_report(rho, quick_cfg), measures.full_report(rotated, quick_cfg)
    for key in ("i_quantum", "i_lhv", "q_lhv", "q_mid", "q_discord_a", "q_sym"):
        assert getattr(r1, key) == pytest.approx(getattr(r2, key), abs=1e-9)
