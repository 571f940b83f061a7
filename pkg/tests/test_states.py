import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qumi import sampling, states
from qumi.errors import NotHermitian, NotPositive, ParamOutOfRange, TraceNotOne, ZeroVector
from qumi.states import Direction


def test_direction_unit_check():
    with pytest.raises(ParamOutOfRange):
        Direction(1.0, 1.0, 0.0)
    with pytest.raises(ZeroVector):
        Direction.from_vector([0, 0, 0])
    d = Direction.from_angles(np.pi / 2, 0.0)
    assert d.angle_to(states.E1) == pytest.approx(0.0, abs=1e-12)
    assert (-d).angle_to(d, axis=True) == pytest.approx(0.0, abs=1e-7)


@pytest.mark.parametrize("bad, err", [
    (np.diag([0.5, 0.5, 0.0, 0.0]) + np.triu(np.ones((4, 4)), 1) * 0.1, NotHermitian),
    (np.eye(4) * 0.9 / 4, TraceNotOne),
    (np.diag([0.6, 0.6, -0.1, -0.1]), NotPositive),
])
def test_validate_rejects(bad, err):
    with pytest.raises(err) as exc:
        states.validate(bad)
    assert exc.value.tag == err.__name__


def test_validate_is_read_only():
    rho = states.werner(0.3)
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 1.0


def test_singlet_decomposition():
    d = states.pauli_decompose(states.singlet())
    assert np.allclose(d.bloch_a, 0) and np.allclose(d.bloch_b, 0)
    assert np.allclose(d.corr, -np.eye(3))


def test_x_state_example():
    rho = states.x_state(0.0, 0.0, 0.5, 0.3, 0.2)
    assert np.allclose(rho.matrix, np.diag([0.5, 0.15, 0.1, 0.25]))
    d = states.pauli_decompose(rho)
    assert np.allclose(d.bloch_a, [0, 0, 0.15]) and np.allclose(d.bloch_b, [0, 0, 0.1])


def test_werner_range():
    assert np.allclose(states.werner(0.0).matrix, np.eye(4) / 4)
    for p in (-0.1, 1.1):
        with pytest.raises(ParamOutOfRange):
            states.werner(p)


def test_bell_diagonal_unphysical():
    with pytest.raises(NotPositive):
        states.bell_diagonal(1.0, 1.0, 1.0)


def test_pure_state_normalises_and_rejects_zero():
    rho = states.pure_state([2, 0, 0, 0])
    assert rho.matrix[0, 0] == pytest.approx(1.0)
    with pytest.raises(ZeroVector):
        states.pure_state([0, 0, 0, 0])


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_pauli_round_trip(seed):
    rho = sampling.random_state(np.random.default_rng(seed))
    back = states.pauli_matrix(states.pauli_decompose(rho))
    assert np.abs(back - rho.matrix).max() < 1e-12


def test_bloch_vector_round_trip(rng):
    v = 0.3 * sampling.random_direction(rng).as_array()
    assert np.allclose(states.bloch_vector(states.single_qubit_from_bloch(v)), v)


def test_family_parameters():
    assert np.allclose(states.from_family("werner", {"p": 0.5}).matrix, states.werner(0.5).matrix)
    with pytest.raises(ParamOutOfRange):
        states.from_family("werner", {"p": 0.5, "q": 1})
    with pytest.raises(ParamOutOfRange):
        states.from_family("x_state", {"c1": 0.1})
    with pytest.raises(ParamOutOfRange):
        states.from_family("ghz", {})
    rho = states.from_family("pure", {"amp0": 1, "amp1": 0, "amp2": 0, "amp3": 0, "amp3_im": 1})
    assert rho.matrix[0, 3] == pytest.approx(-0.5j)


def test_bell_diagonal_spectrum_order():
    lam = states.bell_diagonal_eigenvalues(-1, -1, -1)
    assert np.allclose(lam, [1, 0, 0, 0])


def test_reference_spectra_and_bloch_vectors():
    assert np.allclose(states.werner(0.5).eigenvalues(), [0.125, 0.125, 0.125, 0.625], atol=1e-12)
    assert np.allclose(states.singlet().matrix, np.outer(states.SINGLET_VECTOR, states.SINGLET_VECTOR))
    rho = states.pure_state([np.sqrt(0.8), 0, 0, np.sqrt(0.2)])
    assert np.allclose(states.pauli_decompose(rho).bloch_a, [0, 0, 0.3])
    assert rho.eigenvalues()[-2] < 1e-10
    assert np.allclose(states.bloch_vector(np.eye(2) / 2), 0)
    assert np.allclose(states.bloch_vector(np.diag([1.0, 0.0])), [0, 0, 0.5])
    assert np.allclose(states.bloch_vector(np.diag([0.8, 0.2])), [0, 0, 0.3])
    with pytest.raises(NotPositive):
        states.x_state(1, 1, 1, 0, 0)


def test_variance_is_minimal_along_bloch_vector(rng):
    from qumi.linalg import spin_along
    for _ in range(20):
        r = sampling.random_single_qubit(rng)
        v = states.bloch_vector(r)
        b = sampling.random_direction(rng).as_array()
        sb = spin_along(b)
        var = np.trace(sb @ sb @ r).real - np.trace(sb @ r).real ** 2
        assert var == pytest.approx(0.25 - np.dot(v, b) ** 2, abs=1e-10)
