import math

import numpy as np
import pytest

from layerfield import (
    BoundaryTrace,
    DiskField,
    HalfPlaneField,
    Point2,
    PolarPoint,
    StencilError,
    UndersamplingError,
    ValidationError,
    WindowTooSmallError,
    disk_from_boundary,
    halfplane_poisson_eval,
    kelvin_argument,
    laplacian_residual,
    radial_derivative,
)


def test_point_validation():
    with pytest.raises(ValidationError):
        Point2(math.nan, 0.0)
    with pytest.raises(ValidationError):
        PolarPoint(-0.1, 0.0)
    p = PolarPoint(1.0, 3 * math.pi)
    assert p.theta == pytest.approx(math.pi)


def test_halfplane_eval_basics():
    f = HalfPlaneField.single_mode(1.0)
    assert f.eval(Point2(0.0, 0.0)) == pytest.approx(1.0)
    assert f.eval((math.log(2.0), 0.0)) == pytest.approx(0.5)
    with pytest.raises(ValidationError):
        f.eval((-0.1, 0.0))
    with pytest.raises(ValidationError):
        HalfPlaneField(modes=[(1.0, -1.0, 0.0)])


def test_disk_eval_basics():
    d = DiskField.single_mode(2)
    assert d.eval(PolarPoint(0.5, 0.0)) == pytest.approx(0.25)
    assert d.eval((0.5, math.pi / 2)) == pytest.approx(-0.25)
    with pytest.raises(ValidationError):
        d.eval((1.5, 0.0))


def test_disk_from_boundary_projects_modes():
    theta = np.arange(16) * 2 * math.pi / 16
    field = disk_from_boundary(BoundaryTrace(theta, np.cos(2 * theta)), 4)
    assert field.cos_coeffs[2] == pytest.approx(1.0, abs=1e-12)
    mask = np.ones(5, dtype=bool)
    mask[2] = False
    assert np.max(np.abs(field.cos_coeffs[mask])) <= 1e-12
    assert np.max(np.abs(field.sin_coeffs)) <= 1e-12


def test_disk_from_boundary_constant_uses_half_convention():
    theta = np.arange(16) * 2 * math.pi / 16
    field = disk_from_boundary(BoundaryTrace(theta, np.ones_like(theta)), 4)
    assert field.cos_coeffs[0] == pytest.approx(2.0)
    assert np.max(np.abs(field.cos_coeffs[1:])) <= 1e-12
    assert field.value(0.3, 1.0) == pytest.approx(1.0)


def test_disk_from_boundary_mixed_modes():
    theta = np.arange(32) * 2 * math.pi / 32
    field = disk_from_boundary(BoundaryTrace(theta, np.sin(theta) + np.cos(3 * theta)), 5)
    assert field.sin_coeffs[1] == pytest.approx(1.0, abs=1e-12)
    assert field.cos_coeffs[3] == pytest.approx(1.0, abs=1e-12)
    other = np.abs(np.concatenate([field.cos_coeffs[:3], field.cos_coeffs[4:], field.sin_coeffs[2:]]))
    assert np.max(other) <= 1e-12


def test_disk_from_boundary_undersampling():
    theta = np.arange(8) * 2 * math.pi / 8
    with pytest.raises(UndersamplingError):
        disk_from_boundary(BoundaryTrace(theta, np.cos(theta)), 4)


def test_disk_boundary_roundtrip_trig_polynomial():
    rng = np.random.default_rng(7)
    n_max = 5
    a = rng.normal(size=n_max + 1)
    b = rng.normal(size=n_max + 1)
    b[0] = 0.0
    src = DiskField(a, b)
    theta = np.arange(32) * 2 * math.pi / 32
    field = disk_from_boundary(BoundaryTrace(theta, src.value(1.0, theta)), n_max)
    probe = np.linspace(0, 2 * math.pi, 41)
    assert np.max(np.abs(field.value(1.0, probe) - src.value(1.0, probe))) <= 1e-10


def test_poisson_eval_constant_data():
    # kernel mass over the whole line is 1; the window bound covers the rest
    errs = []
    for T in (50.0, 100.0, 200.0):
        t = np.linspace(-T, T, int(400 * T) + 1)
        pe = halfplane_poisson_eval(BoundaryTrace(t, np.ones_like(t)), (1.0, 0.0), tol=0.05)
        assert abs(pe.value - 1.0) <= pe.tail_bound + 1e-6
        errs.append(abs(pe.value - 1.0))
    assert errs[2] < errs[0]


def test_poisson_eval_mode_data():
    t = np.linspace(-200.0, 200.0, 200001)
    pe = halfplane_poisson_eval(BoundaryTrace(t, np.cos(t)), (1.0, 0.0), tol=0.01)
    assert pe.value == pytest.approx(math.exp(-1.0), abs=1e-4)
    pe2 = halfplane_poisson_eval(BoundaryTrace(t, np.cos(t)), (0.5, 0.7), tol=0.01)
    assert pe2.value == pytest.approx(math.exp(-0.5) * math.cos(0.7), abs=1e-4)


def test_poisson_eval_rejects_growth_and_small_window():
    t = np.linspace(-50.0, 50.0, 5001)
    with pytest.raises(ValidationError):
        halfplane_poisson_eval(BoundaryTrace(t, t.copy()), (1.0, 0.0))
    with pytest.raises(WindowTooSmallError):
        halfplane_poisson_eval(BoundaryTrace(t, np.cos(t)), (1.0, 0.0), tol=1e-8)


def test_kelvin_argument():
    p = kelvin_argument(PolarPoint(0.7, 1.0), 0.49)
    assert (p.r, p.theta) == (pytest.approx(0.7), pytest.approx(1.0))
    p = kelvin_argument(PolarPoint(1.0, 0.0), 0.81)
    assert p.r == pytest.approx(0.81)
    p = kelvin_argument(PolarPoint(0.9, 2.0), 0.49)
    assert p.r == pytest.approx(0.49 / 0.9)
    with pytest.raises(ValidationError):
        kelvin_argument(PolarPoint(0.0, 0.0), 0.49)


def test_kelvin_involution():
    rng = np.random.default_rng(3)
    for _ in range(50):
        r, theta = rng.uniform(0.05, 2.0), rng.uniform(0, 2 * math.pi)
        rho2 = rng.uniform(0.1, 1.0)
        back = kelvin_argument(kelvin_argument(PolarPoint(r, theta), rho2), rho2)
        assert abs(back.r - r) <= 1e-14 * max(1.0, r)
        assert abs(back.theta - theta) <= 1e-14


def test_radial_derivative_closed_form():
    assert radial_derivative(DiskField.single_mode(2), PolarPoint(0.5, 0.0)) == pytest.approx(0.5)
    assert radial_derivative(DiskField.single_mode(0, 2.0), PolarPoint(0.3, 1.0)) == 0.0
    d = DiskField.single_mode(3, cos_amp=0.0, sin_amp=1.0)
    assert radial_derivative(d, PolarPoint(1.0, math.pi / 6)) == pytest.approx(3.0)


def test_radial_derivative_matches_finite_difference():
    d = DiskField(np.array([0.5, 1.0, 0.0, 0.25]), np.array([0.0, 0.3, -0.2, 0.0]))
    r, theta = 0.6, 1.1
    exact = d.radial_derivative(r, theta)
    errs = []
    for step in (1e-2, 5e-3):
        fd = r * (d.value(r + step, theta) - d.value(r - step, theta)) / (2 * step)
        errs.append(abs(fd - exact))
    ratio = errs[0] / errs[1]
    assert 3.0 <= ratio <= 5.0  # second-order stencil: halving the step quarters the error


def test_laplacian_residual_quadratic_is_four():
    res = laplacian_residual(lambda x, y: x * x + y * y, (0.3, 0.7), 1e-3)
    assert res == pytest.approx(4.0, abs=1e-6)


def test_laplacian_residual_mode_fields():
    f = HalfPlaneField.single_mode(1.0)
    assert abs(laplacian_residual(f.value, (0.5, 0.3), 1e-3)) <= 1e-6
    d = DiskField.single_mode(1)
    fn = lambda x, y: d.value(np.hypot(x, y), np.arctan2(y, x))
    assert abs(laplacian_residual(fn, (0.35, 0.35), 1e-3)) <= 1e-6


def test_laplacian_residual_random_points_scaled_bound():
    rng = np.random.default_rng(11)
    f = HalfPlaneField(modes=[(1.0, 1.0, 0.2), (0.4, 2.5, 0.0)])
    step = 1e-3
    for _ in range(100):
        x, y = rng.uniform(0.1, 2.0), rng.uniform(-2.0, 2.0)
        # local scale of the fourth derivatives: sum |A| w^4 e^(-w x)
        scale = 1.0 * math.exp(-x) + 0.4 * 2.5**4 * math.exp(-2.5 * x)
        assert abs(laplacian_residual(f.value, (x, y), step)) <= 10 * step**2 * scale


def test_laplacian_residual_disk_random_points_scaled_bound():
    rng = np.random.default_rng(14)
    d = DiskField(np.array([0.3, 1.0, 0.0, 0.2]), np.array([0.0, 0.0, 0.5, 0.0]))
    fn = lambda x, y: d.value(np.hypot(x, y), np.arctan2(y, x))
    step = 1e-3
    for _ in range(100):
        r = rng.uniform(0.1, 0.95)
        t = rng.uniform(0.0, 2 * math.pi)
        x, y = r * math.cos(t), r * math.sin(t)
        # fourth derivatives of r^n harmonics scale like n^4 r^(n-4)
        scale = sum(
            (abs(a) + abs(b)) * n**4 * max(r - step, 0.05) ** max(n - 4, 0)
            for n, (a, b) in enumerate(zip(d.cos_coeffs, d.sin_coeffs))
            if n >= 1
        )
        assert abs(laplacian_residual(fn, (x, y), step)) <= 10 * step**2 * max(scale, 1.0)


def test_laplacian_residual_source_terms_are_harmonic():
    f = HalfPlaneField(sources=[(0.3, 1.0), (-1.0, -0.5)])
    rng = np.random.default_rng(4)
    for _ in range(50):
        x, y = rng.uniform(0.2, 2.0), rng.uniform(-2.0, 2.0)
        assert abs(laplacian_residual(f.value, (x, y), 1e-4)) <= 1e-4


def test_laplacian_residual_stencil_guard():
    f = HalfPlaneField.single_mode(1.0)
    with pytest.raises(StencilError):
        laplacian_residual(f.value, (1e-5, 0.0), 1e-3, inside=lambda x, y: x >= 0)


def test_trace_csv_roundtrip(tmp_path):
    path = tmp_path / "trace.csv"
    path.write_text("t,value\n0.0,1.0\n0.5,2.0\n1.0,0.5\n")
    tr = BoundaryTrace.from_csv(path)
    assert tr.window == (0.0, 1.0)
    assert tr.values[1] == 2.0
    path2 = tmp_path / "noheader.csv"
    path2.write_text("0.0,1.0\n1.0,2.0\n")
    assert BoundaryTrace.from_csv(path2).abscissae[1] == 1.0
    with pytest.raises(ValidationError):
        BoundaryTrace(np.array([0.0, 0.0, 1.0]), np.array([1.0, 2.0, 3.0]))
