import numpy as np
import pytest

from qnopt.errors import DimensionMismatch, ZeroStep
from qnopt.updates import (
    EPS_CURV,
    DiagonalHessian,
    diagonal_update,
    mbfgs3_full_update,
    modified_y,
    safeguarded_direction,
    y3_scalar,
)


def test_y3_vanishes_on_quadratics():
    rng = np.random.default_rng(3)
    for _ in range(50):
        n = int(rng.integers(2, 20))
        q = rng.standard_normal((n, n))
        a = q @ q.T + np.eye(n)
        b = rng.standard_normal(n)
        x1 = rng.standard_normal(n)
        x2 = x1 + rng.standard_normal(n)
        f1 = 0.5 * float(x1 @ a @ x1) + float(b @ x1)
        f2 = 0.5 * float(x2 @ a @ x2) + float(b @ x2)
        y3 = y3_scalar(f1, f2, a @ x1 + b, a @ x2 + b, x2 - x1)
        assert abs(y3) <= 1e-10 * max(1.0, abs(f1))


def test_y3_cubic_hand_value():
    # f = t^3 between t=1 and t=2: 2(1-8) + (12+3) = 1 over |s|^2 = 1
    y3 = y3_scalar(1.0, 8.0, np.array([3.0]), np.array([12.0]), np.array([1.0]))
    assert y3 == 1.0


def test_y3_zero_step_raises():
    with pytest.raises(ZeroStep):
        y3_scalar(1.0, 2.0, np.ones(3), np.ones(3), np.zeros(3))


def test_modified_y():
    y = np.array([1.0, -2.0])
    s = np.array([0.5, 4.0])
    np.testing.assert_array_equal(modified_y(y, 2.0, s), [2.0, 6.0])
    np.testing.assert_array_equal(modified_y(y, 0.0, s), y)
    with pytest.raises(DimensionMismatch):
        modified_y(np.ones(2), 1.0, np.ones(3))


def test_diagonal_update_single_entry():
    h = DiagonalHessian(b=np.array([3.0]))
    h2 = diagonal_update(h, np.array([0.5]), np.array([4.75]))
    np.testing.assert_allclose(h2.b, [9.5])


def test_diagonal_update_two_entries():
    h = DiagonalHessian(b=np.array([1.0, 1.0]))
    h2 = diagonal_update(h, np.array([1.0, 1.0]), np.array([2.0, 3.0]))
    np.testing.assert_allclose(h2.b, [2.5, 2.5])
    # a zero step component receives only the constant shift
    h = DiagonalHessian(b=np.array([2.0, 2.0]))
    h2 = diagonal_update(h, np.array([1.0, 0.0]), np.array([2.0, 7.0]))
    np.testing.assert_allclose(h2.b, [2.0, 1.0])


def test_weak_secant_identity_random():
    rng = np.random.default_rng(5)
    for _ in range(200):
        n = int(rng.integers(1, 40))
        h = DiagonalHessian(b=rng.standard_normal(n) * 3.0)
        s = rng.standard_normal(n)
        if float(s @ s) == 0.0:
            continue
        ys = rng.standard_normal(n) * 2.0
        h2 = diagonal_update(h, s, ys)
        sy = float(s @ ys)
        assert abs(float((s * s) @ h2.b) - sy) <= 1e-10 * max(1.0, abs(sy))


def test_diagonal_update_clamping():
    h = DiagonalHessian(b=np.array([0.5, 0.5]), eps_b=1e-6)
    s = np.array([1.0, 0.0])
    ys = np.array([-5.0, 0.0])
    plain = diagonal_update(h, s, ys)
    assert np.all(plain.b < 0.0)  # stored entries may go negative
    clamped = diagonal_update(h, s, ys, clamp_stored=True)
    np.testing.assert_array_equal(clamped.b, [1e-6, 1e-6])
    assert clamped.eps_b == h.eps_b


def test_diagonal_update_errors():
    h = DiagonalHessian(b=np.ones(3))
    with pytest.raises(ZeroStep):
        diagonal_update(h, np.zeros(3), np.ones(3))
    with pytest.raises(DimensionMismatch):
        diagonal_update(h, np.ones(2), np.ones(2))


def test_safeguarded_direction_componentwise_fallback():
    h = DiagonalHessian(b=np.array([2.0, 1e-9, -5.0]), eps_b=1e-6)
    g = np.array([4.0, 3.0, 7.0])
    np.testing.assert_array_equal(safeguarded_direction(h, g), [-2.0, -3.0, -7.0])


def test_safeguarded_direction_is_descent():
    rng = np.random.default_rng(9)
    for _ in range(100):
        n = int(rng.integers(1, 30))
        h = DiagonalHessian(b=rng.standard_normal(n) * 5.0)
        g = rng.standard_normal(n)
        if float(g @ g) == 0.0:
            continue
        d = safeguarded_direction(h, g)
        assert float(g @ d) < 0.0
    with pytest.raises(DimensionMismatch):
        safeguarded_direction(DiagonalHessian(b=np.ones(2)), np.ones(3))


def test_full_update_satisfies_secant_equation():
    rng = np.random.default_rng(13)
    for _ in range(30):
        n = int(rng.integers(2, 15))
        q = rng.standard_normal((n, n))
        big_b = q @ q.T + n * np.eye(n)
        s = rng.standard_normal(n)
        m = rng.standard_normal((n, n))
        ys = (m @ m.T + np.eye(n)) @ s  # guarantees s'y* > 0
        b_new = mbfgs3_full_update(big_b, s, ys)
        np.testing.assert_allclose(b_new @ s, ys, rtol=1e-9, atol=1e-9)
        np.testing.assert_allclose(b_new, b_new.T, atol=1e-12)
        assert np.all(np.linalg.eigvalsh(b_new) > 0.0)


def test_full_update_skips_on_bad_curvature():
    big_b = np.diag([2.0, 3.0])
    s = np.array([1.0, 0.0])
    for ys in (np.array([0.0, 1.0]), np.array([-1.0, 0.0])):
        assert float(s @ ys) <= EPS_CURV * np.linalg.norm(s) * np.linalg.norm(ys)
        np.testing.assert_array_equal(mbfgs3_full_update(big_b, s, ys), big_b)
    with pytest.raises(DimensionMismatch):
        mbfgs3_full_update(np.eye(3), np.ones(2), np.ones(2))
