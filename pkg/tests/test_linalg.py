import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qumi import linalg
from qumi.errors import NotHermitian

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def _hermitian(re, im):
    m = re + 1j * im
    return 0.5 * (m + m.conj().T)


@settings(max_examples=60, deadline=None)
@given(arrays(float, (4, 4), elements=finite), arrays(float, (4, 4), elements=finite))
def test_eigensystem_matches_numpy(re, im):
    h = _hermitian(re, im)
    w, v = linalg.hermitian_eigensystem(h)
    scale = max(1.0, np.abs(h).max())
    assert np.allclose(w, np.linalg.eigvalsh(h), atol=1e-10 * scale)
    assert np.allclose(v.conj().T @ v, np.eye(4), atol=1e-10)
    assert np.allclose(v @ np.diag(w) @ v.conj().T, h, atol=1e-9 * scale)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.data())
def test_eigenvalues_any_small_size(n, data):
    re = data.draw(arrays(float, (n, n), elements=finite))
    im = data.draw(arrays(float, (n, n), elements=finite))
    h = _hermitian(re, im)
    w = linalg.eigvalsh(h)
    assert np.all(np.diff(w) >= 0)
    assert w.sum() == pytest.approx(np.trace(h).real, abs=1e-9 * max(1.0, np.abs(h).max()))


def test_degenerate_and_diagonal_inputs():
    for m in (np.eye(4), np.zeros((4, 4)), np.diag([3.0, 1.0, 2.0, 1.0])):
        w, v = linalg.hermitian_eigensystem(m)
        assert np.allclose(w, np.sort(np.diag(m)))
        assert np.allclose(v.conj().T @ v, np.eye(4))


def test_tiny_off_diagonal_entries_do_not_overflow():
    h = np.diag([1.0, 2.0, 3.0, 4.0]).astype(complex)
    h[0, 1], h[1, 0] = 1e-200, 1e-200
    with np.errstate(over="raise", invalid="raise", divide="raise"):
        assert np.allclose(linalg.eigvalsh(h), [1, 2, 3, 4])
        assert np.allclose(linalg.eigvalsh_batch(h[None]), [[1, 2, 3, 4]])


def test_non_hermitian_rejected():
    m = np.zeros((2, 2), dtype=complex)
    m[0, 1] = 1.0
    with pytest.raises(NotHermitian):
        linalg.hermitian_eigensystem(m)
    with pytest.raises(NotHermitian):
        linalg.eigvalsh_batch(m[None])


def test_batch_matches_scalar(rng):
    g = rng.standard_normal((64, 4, 4)) + 1j * rng.standard_normal((64, 4, 4))
    h = g + g.conj().transpose(0, 2, 1)
    batch = linalg.eigvalsh_batch(h)
    assert np.allclose(batch, np.linalg.eigvalsh(h), atol=1e-12)
    assert np.allclose(batch[7], linalg.eigvalsh(h[7]), atol=1e-12)


def test_singular_values_of_rotation_and_diagonal(rng):
    q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    assert np.allclose(linalg.singular_values_3x3(q), 1.0, atol=1e-12)
    s, vecs = linalg.singular_system_3x3(np.diag([0.2, -0.9, 0.5]))
    assert np.allclose(s, [0.9, 0.5, 0.2])
    assert abs(vecs[1, 0]) == pytest.approx(1.0)


def test_singular_values_match_numpy(rng):
    for _ in range(20):
        w = rng.uniform(-1, 1, (3, 3))
        assert np.allclose(linalg.singular_values_3x3(w), np.linalg.svd(w, compute_uv=False), atol=1e-10)


def test_partial_trace_of_product(rng):
    a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    ab = linalg.kron(a, b)
    assert np.allclose(linalg.partial_trace(ab, "A"), a * np.trace(b))
    assert np.allclose(linalg.partial_trace(ab, "B"), b * np.trace(a))
    with pytest.raises(ValueError):
        linalg.partial_trace(ab, "C")


def test_spin_along_axes():
    assert np.allclose(linalg.spin_along([0, 0, 1]), np.diag([0.5, -0.5]))
    assert np.allclose(linalg.spin_along([1, 0, 0]), 0.5 * linalg.SIGMA_X)
