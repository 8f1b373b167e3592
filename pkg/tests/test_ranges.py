import io

import numpy as np
import pytest

from conftest import ginibre
from dwroberts.example import EXAMPLE_MATRIX
from dwroberts.linalg_core import InvalidInputError, adjoint
from dwroberts.ranges import (
    compress,
    contains_zero,
    nr_profile,
    nr_support,
    nr_support_many,
    nr_symmetry_defect,
    theta_grid,
    write_nr_csv,
)

JORDAN = np.array([[0, 1], [0, 0]])


def _brute_support(A, theta, rng, samples=20000):
    # max Re(e^{-i theta} <Ax,x>) over random unit vectors: a lower bound that converges to h
    X = rng.standard_normal((samples, A.shape[0])) + 1j * rng.standard_normal((samples, A.shape[0]))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    vals = np.einsum("ki,ij,kj->k", X.conj(), A, X)
    return np.max((np.exp(-1j * theta) * vals).real)


def test_support_closed_forms():
    assert nr_support(np.eye(3), 0) == pytest.approx(1)
    assert nr_support(np.eye(3), np.pi) == pytest.approx(-1)
    np.testing.assert_allclose(nr_support_many(JORDAN, theta_grid(16)), 0.5, atol=1e-15)
    assert nr_support(np.diag([1, 0]), 0) == pytest.approx(1)
    assert nr_support(np.diag([1, 0]), np.pi) == pytest.approx(0, abs=1e-15)


def test_support_against_sampled_states(rng):
    A = ginibre(rng, 3)
    for theta in (0.3, 2.0, 4.4):
        h = nr_support(A, theta)
        lower = _brute_support(A, theta, rng)
        assert lower <= h + 1e-12
        assert h - lower <= 5e-2


def test_support_homogeneous_and_translation(rng):
    A = ginibre(rng, 4)
    th = theta_grid(32)
    np.testing.assert_allclose(nr_support_many(2.5 * A, th), 2.5 * nr_support_many(A, th), atol=1e-12)
    shift = 0.3 - 0.7j
    want = nr_support_many(A, th) + (np.exp(-1j * th) * shift).real
    np.testing.assert_allclose(nr_support_many(A + shift * np.eye(4), th), want, atol=1e-12)


def test_support_rotation_and_unitary_invariance(rng):
    A = ginibre(rng, 4)
    th = theta_grid(64)
    Q, _ = np.linalg.qr(ginibre(rng, 4))
    np.testing.assert_allclose(nr_support_many(adjoint(Q) @ A @ Q, th), nr_support_many(A, th), atol=1e-12)
    # W(e^{i a} A) = e^{i a} W(A): h shifts by a
    a = 2 * np.pi * 5 / 64
    np.testing.assert_allclose(nr_support_many(np.exp(1j * a) * A, th), nr_support_many(A, th - a), atol=1e-12)


def test_profile_points_are_supporting(rng):
    A = ginibre(rng, 5)
    prof = nr_profile(A, 72)
    assert prof.boundary.shape == (72,)
    np.testing.assert_allclose((np.exp(-1j * prof.thetas) * prof.boundary).real, prof.support, atol=1e-12)
    np.testing.assert_allclose(np.linalg.norm(prof.vectors, axis=1), 1, atol=1e-13)


def test_profile_hermitian_segment():
    prof = nr_profile(np.diag([1.0, -1.0]), 8)
    assert np.all(np.abs(prof.boundary.imag) <= 1e-15)
    assert np.all(np.abs(prof.boundary.real) <= 1 + 1e-15)


def test_profile_example_is_circular():
    h = nr_profile(EXAMPLE_MATRIX, 720).support
    assert np.max(np.abs(h - h[0])) <= 1e-6


def test_profile_rejects_small_grid():
    with pytest.raises(InvalidInputError):
        nr_profile(JORDAN, 4)


def test_symmetry_defect():
    assert nr_symmetry_defect(np.diag([1, -1])) <= 1e-12
    assert nr_symmetry_defect(np.diag([1, 0])) == pytest.approx(1, abs=1e-12)
    assert nr_symmetry_defect(EXAMPLE_MATRIX) <= 1e-6
    with pytest.raises(InvalidInputError):
        nr_symmetry_defect(JORDAN, 9)


def test_contains_zero():
    assert not contains_zero(np.diag([1, 2]))
    assert contains_zero(JORDAN)
    assert contains_zero(np.diag([1, -1]))
    assert not contains_zero(np.diag([1, 1e-3]) + 0j)


def test_compress():
    A = np.arange(9).reshape(3, 3) + 1j
    np.testing.assert_array_equal(compress(A, np.eye(3)), A)
    assert compress(np.diag([1, 0]), [1, 0]).tolist() == [[1]]
    with pytest.raises(InvalidInputError):
        compress(A, [[1, 1], [0, 1], [0, 0]])


def test_compress_reproduces_quadratic_form(rng):
    A = ginibre(rng, 5)
    Q, _ = np.linalg.qr(ginibre(rng, 5)[:, :2])
    B = compress(A, Q)
    for _ in range(5):
        x = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        y = Q @ x
        assert np.vdot(x, B @ x) == pytest.approx(np.vdot(y, A @ y), abs=1e-12)


def test_nr_csv():
    buf = io.StringIO()
    text = write_nr_csv(nr_profile(JORDAN, 720), buf)
    rows = text.strip().split("\n")
    assert rows[0] == "theta,h,re,im"
    assert len(rows) == 721
    assert all(abs(float(r.split(",")[1]) - 0.5) <= 1e-9 for r in rows[1:])
    assert buf.getvalue() == text
