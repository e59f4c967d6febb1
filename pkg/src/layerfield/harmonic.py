"""Harmonic model fields and their pointwise transforms.

Two concrete representations are used throughout the package: decaying
cosine modes (optionally with boundary point sources) on the right
half-plane, and finite Fourier sums on the unit disk.  Both evaluate
exactly, expose exact first derivatives, and validate their natural
domains.  The module also provides the argument transforms the layered
constructions are built from (shifts come for free, the Kelvin inversion
and the radial scaling derivative are explicit) and a five-point stencil
residual used everywhere as a harmonicity check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import (
    CapabilityError,
    StencilError,
    UndersamplingError,
    ValidationError,
    WindowTooSmallError,
)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Point2:
    """Cartesian point in dimensionless plate coordinates."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValidationError("point coordinates must be finite")


@dataclass(frozen=True)
class PolarPoint:
    """Polar point; the angle is normalised to [0, 2*pi)."""

    r: float
    theta: float

    def __post_init__(self):
        if not (math.isfinite(self.r) and math.isfinite(self.theta)):
            raise ValidationError("polar coordinates must be finite")
        if self.r < 0:
            raise ValidationError("radius must be non-negative")
        object.__setattr__(self, "theta", self.theta % TWO_PI)

    def to_cartesian(self) -> Point2:
        return Point2(self.r * math.cos(self.theta), self.r * math.sin(self.theta))


def as_point2(p) -> Point2:
    """Coerce a Point2, PolarPoint, or (x, y) pair to Point2."""
    if isinstance(p, Point2):
        return p
    if isinstance(p, PolarPoint):
        return p.to_cartesian()
    x, y = p
    return Point2(float(x), float(y))


def as_polar(p) -> PolarPoint:
    """Coerce a PolarPoint, Point2, or (r, theta) pair to PolarPoint."""
    if isinstance(p, PolarPoint):
        return p
    if isinstance(p, Point2):
        return PolarPoint(math.hypot(p.x, p.y), math.atan2(p.y, p.x))
    r, theta = p
    return PolarPoint(float(r), float(theta))


class HalfPlaneField:
    """Harmonic field on the right half-plane.

    u(x, y) = sum_m A_m exp(-w_m x) cos(w_m y + phi_m)
            + sum_s (q_s / pi) x / (x^2 + (y - t_s)^2)

    Every mode frequency must be strictly positive; that makes each term
    harmonic, decaying along x, and integrable against the half-plane
    Poisson kernel.  The source terms are Poisson kernels anchored at
    boundary points t_s.
    """

    def __init__(self, modes=(), sources=()):
        modes = [(float(a), float(w), float(p)) for (a, w, p) in modes]
        sources = [(float(t), float(q)) for (t, q) in sources]
        for a, w, p in modes:
            if not (math.isfinite(a) and math.isfinite(w) and math.isfinite(p)):
                raise ValidationError("mode parameters must be finite")
            if w <= 0:
                raise ValidationError("mode frequency must be > 0")
        for t, q in sources:
            if not (math.isfinite(t) and math.isfinite(q)):
                raise ValidationError("source parameters must be finite")
        self._amp = np.array([m[0] for m in modes], dtype=float)
        self._omega = np.array([m[1] for m in modes], dtype=float)
        self._phase = np.array([m[2] for m in modes], dtype=float)
        self._src_t = np.array([s[0] for s in sources], dtype=float)
        self._src_q = np.array([s[1] for s in sources], dtype=float)

    @classmethod
    def single_mode(cls, frequency, amplitude=1.0, phase=0.0):
        return cls(modes=[(amplitude, frequency, phase)])

    @property
    def modes(self):
        return list(zip(self._amp, self._omega, self._phase))

    @property
    def sources(self):
        return list(zip(self._src_t, self._src_q))

    @property
    def has_sources(self) -> bool:
        return self._src_t.size > 0

    @property
    def min_frequency(self):
        """Smallest mode frequency, or None for a field with no modes."""
        return float(self._omega.min()) if self._omega.size else None

    def sup_bound(self, x_min=0.0) -> float:
        """Upper bound for |u| on the slab {x >= x_min}.

        For a pure mode sum this is sum |A_m| exp(-w_m x_min).  Source
        terms are bounded by |q|/(pi x_min), which blows up at the
        boundary, so a field with sources has no automatic bound there.
        """
        total = float(np.sum(np.abs(self._amp) * np.exp(-self._omega * x_min)))
        if self.has_sources:
            if x_min <= 0:
                raise CapabilityError(
                    "field with boundary sources is unbounded near x=0; "
                    "supply an explicit sup bound"
                )
            total += float(np.sum(np.abs(self._src_q)) / (math.pi * x_min))
        return total

    def value(self, x, y):
        """Evaluate at scalar or array coordinates (no domain check)."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        for a, w, p in zip(self._amp, self._omega, self._phase):
            out += a * np.exp(-w * x) * np.cos(w * y + p)
        for t, q in zip(self._src_t, self._src_q):
            denom = x * x + (y - t) ** 2
            with np.errstate(divide="ignore", invalid="ignore"):
                out += (q / math.pi) * np.where(denom > 0, x / np.where(denom > 0, denom, 1.0), np.nan)
        return out if out.shape else float(out)

    def deriv_x(self, x, y):
        """Exact partial derivative in x."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        for a, w, p in zip(self._amp, self._omega, self._phase):
            out += -w * a * np.exp(-w * x) * np.cos(w * y + p)
        for t, q in zip(self._src_t, self._src_q):
            c2 = (y - t) ** 2
            denom = (x * x + c2) ** 2
            with np.errstate(divide="ignore", invalid="ignore"):
                out += (q / math.pi) * np.where(denom > 0, (c2 - x * x) / np.where(denom > 0, denom, 1.0), np.nan)
        return out if out.shape else float(out)

    def eval(self, p) -> float:
        p = as_point2(p)
        if p.x < 0:
            raise ValidationError("half-plane field requires x >= 0")
        return float(self.value(p.x, p.y))


class DiskField:
    """Finite Fourier sum on the unit disk.

    u(r, theta) = a0/2 + sum_{n=1..N} r^n (a_n cos n theta + b_n sin n theta)

    Harmonic by construction: every term is a harmonic polynomial.  The
    trace at r=1 is the trigonometric polynomial with the same
    coefficients.
    """

    def __init__(self, cos_coeffs, sin_coeffs=None):
        a = np.atleast_1d(np.asarray(cos_coeffs, dtype=float)).copy()
        if sin_coeffs is None:
            b = np.zeros_like(a)
        else:
            b = np.atleast_1d(np.asarray(sin_coeffs, dtype=float)).copy()
        if a.ndim != 1 or b.ndim != 1 or a.size != b.size:
            raise ValidationError("coefficient arrays must be 1-D and of equal length")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValidationError("coefficients must be finite")
        if b.size and b[0] != 0.0:
            raise ValidationError("sine coefficient of order zero must be 0")
        self._a = a
        self._b = b

    @classmethod
    def single_mode(cls, n, cos_amp=1.0, sin_amp=0.0):
        if n < 0:
            raise ValidationError("mode index must be >= 0")
        a = np.zeros(n + 1)
        b = np.zeros(n + 1)
        if n == 0:
            a[0] = cos_amp
            if sin_amp:
                raise ValidationError("constant mode has no sine component")
        else:
            a[n] = cos_amp
            b[n] = sin_amp
        return cls(a, b)

    @property
    def cos_coeffs(self):
        return self._a.copy()

    @property
    def sin_coeffs(self):
        return self._b.copy()

    @property
    def degree(self) -> int:
        return self._a.size - 1

    @property
    def constant_coeff(self) -> float:
        return float(self._a[0])

    @property
    def min_active_mode(self):
        """Smallest n >= 1 carrying a nonzero coefficient, or None."""
        for n in range(1, self._a.size):
            if self._a[n] != 0.0 or self._b[n] != 0.0:
                return n
        return None

    def sup_bound(self) -> float:
        """Upper bound for |u| on the closed unit disk."""
        return float(abs(self._a[0]) / 2 + np.sum(np.abs(self._a[1:])) + np.sum(np.abs(self._b[1:])))

    def value(self, r, theta):
        r = np.asarray(r, dtype=float)
        theta = np.asarray(theta, dtype=float)
        out = np.full(np.broadcast(r, theta).shape, self._a[0] / 2.0)
        for n in range(1, self._a.size):
            if self._a[n] == 0.0 and self._b[n] == 0.0:
                continue
            out += r**n * (self._a[n] * np.cos(n * theta) + self._b[n] * np.sin(n * theta))
        return out if out.shape else float(out)

    def radial_derivative(self, r, theta):
        """Radial scaling derivative r * du/dr, exact on Fourier modes."""
        r = np.asarray(r, dtype=float)
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(np.broadcast(r, theta).shape)
        for n in range(1, self._a.size):
            if self._a[n] == 0.0 and self._b[n] == 0.0:
                continue
            out += n * r**n * (self._a[n] * np.cos(n * theta) + self._b[n] * np.sin(n * theta))
        return out if out.shape else float(out)

    def eval(self, p) -> float:
        p = as_polar(p)
        if p.r > 1.0 + 1e-12:
            raise ValidationError("disk field requires r <= 1")
        return float(self.value(p.r, p.theta))


@dataclass(frozen=True)
class BoundaryTrace:
    """Sampled boundary values over a closed window of abscissae."""

    abscissae: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.abscissae, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.ndim != 1 or v.ndim != 1 or t.size != v.size:
            raise ValidationError("trace needs matching 1-D abscissae and values")
        if t.size < 2:
            raise ValidationError("trace needs at least two samples")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise ValidationError("trace samples must be finite")
        if not np.all(np.diff(t) > 0):
            raise ValidationError("trace abscissae must be strictly increasing")
        object.__setattr__(self, "abscissae", t)
        object.__setattr__(self, "values", v)

    @property
    def window(self):
        return float(self.abscissae[0]), float(self.abscissae[-1])

    @classmethod
    def from_csv(cls, path):
        """Read a two-column CSV (abscissa, value); a header line is optional."""
        rows = []
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                parts = [p.strip() for p in line.split(",")]
                if len(parts) < 2:
                    raise ValidationError(f"expected two columns in {path!s}")
                try:
                    rows.append((float(parts[0]), float(parts[1])))
                except ValueError:
                    if rows:
                        raise ValidationError(f"non-numeric row in {path!s}: {line!r}")
                    continue  # header line
        if len(rows) < 2:
            raise ValidationError(f"no usable samples in {path!s}")
        t, v = zip(*rows)
        return cls(np.array(t), np.array(v))


def _check_halfplane_decay(trace: BoundaryTrace):
    """Reject traces that grow toward the window ends.

    Growth at the ends breaks the tail estimate of the Poisson integral
    (the data must stay bounded by its mid-window scale).
    """
    v = np.abs(trace.values)
    n = v.size
    edge = max(n // 10, 1)
    outer = max(v[:edge].max(), v[-edge:].max())
    mid = v[n // 4 : max(n // 4 + 1, 3 * n // 4)].max()
    if outer > mid * (1.0 + 1e-9) + 1e-300:
        raise ValidationError(
            "boundary trace grows toward the window ends; "
            "it must stay bounded for the half-plane extension"
        )


class PoissonEval(NamedTuple):
    value: float
    tail_bound: float


def halfplane_poisson_eval(trace: BoundaryTrace, p, tol=1e-6) -> PoissonEval:
    """Harmonic extension of boundary samples into the half-plane.

    Trapezoid rule for (1/pi) * integral of x f(t) / (x^2 + (y-t)^2)
    over the trace window, plus a rigorous bound for the omitted tail
    assuming |f| stays below its edge magnitude outside the window.
    """
    p = as_point2(p)
    if p.x <= 0:
        raise ValidationError("Poisson evaluation requires x > 0")
    _check_halfplane_decay(trace)
    t = trace.abscissae
    f = trace.values
    kernel = (p.x / math.pi) / (p.x**2 + (p.y - t) ** 2)
    value = float(np.trapezoid(kernel * f, t))
    edge = max(abs(f[0]), abs(f[-1]))
    lo, hi = trace.window
    left = 0.5 - math.atan((p.y - lo) / p.x) / math.pi
    right = 0.5 - math.atan((hi - p.y) / p.x) / math.pi
    tail = edge * (left + right)
    if tail > tol:
        raise WindowTooSmallError(
            f"window tail bound {tail:.3e} exceeds tolerance {tol:.3e}",
            tail_bound=tail,
        )
    return PoissonEval(value, tail)


def disk_from_boundary(trace: BoundaryTrace, n_max: int) -> DiskField:
    """Fourier projection of uniform circle samples onto disk modes 0..n_max.

    Needs M >= 2*n_max + 1 samples on a uniform grid covering [0, 2*pi).
    """
    if n_max < 0:
        raise ValidationError("mode cap must be >= 0")
    t = trace.abscissae
    v = trace.values
    m = t.size
    if m < 2 * n_max + 1:
        raise UndersamplingError(
            f"{m} samples cannot resolve modes up to {n_max}; need >= {2 * n_max + 1}"
        )
    spacing = TWO_PI / m
    d = np.diff(t)
    if not np.allclose(d, spacing, rtol=1e-8, atol=1e-10):
        raise ValidationError("circle trace must be sampled on a uniform grid")
    if not (-1e-9 <= t[0] < TWO_PI) or abs((t[-1] - t[0]) - (TWO_PI - spacing)) > 1e-8:
        raise ValidationError("circle trace must cover [0, 2*pi) exactly once")
    a = np.empty(n_max + 1)
    b = np.zeros(n_max + 1)
    for n in range(n_max + 1):
        a[n] = 2.0 / m * float(np.sum(v * np.cos(n * t)))
        if n >= 1:
            b[n] = 2.0 / m * float(np.sum(v * np.sin(n * t)))
    return DiskField(a, b)


def kelvin_argument(p, rho2: float) -> PolarPoint:
    """Inversion across the circle of radius sqrt(rho2): r -> rho2/r, angle fixed."""
    p = as_polar(p)
    if rho2 <= 0:
        raise ValidationError("inversion radius squared must be > 0")
    if p.r == 0:
        raise ValidationError("Kelvin inversion is singular at the origin")
    return PolarPoint(rho2 / p.r, p.theta)


def radial_derivative(field: DiskField, p) -> float:
    """r * du/dr of a disk field at a point, closed form on Fourier modes."""
    p = as_polar(p)
    if p.r > 1.0 + 1e-12:
        raise ValidationError("disk field requires r <= 1")
    return float(field.radial_derivative(p.r, p.theta))


def laplacian_residual(evaluator: Callable, p, step: float, a: float = 1.0, inside=None) -> float:
    """Five-point stencil residual a^2*u_xx + u_yy at a Cartesian point.

    `evaluator` is called as evaluator(x, y).  When `inside` is given,
    every stencil point must satisfy it or a StencilError is raised.
    """
    p = as_point2(p)
    if step <= 0:
        raise ValidationError("stencil step must be > 0")
    pts = [
        (p.x + step, p.y),
        (p.x - step, p.y),
        (p.x, p.y + step),
        (p.x, p.y - step),
        (p.x, p.y),
    ]
    if inside is not None:
        for q in pts:
            if not inside(*q):
                raise StencilError(f"stencil point {q} leaves the evaluator's region")
    xp, xm, yp, ym, f0 = (float(evaluator(q[0], q[1])) for q in pts)
    return (a * a * (xp + xm - 2.0 * f0) + (yp + ym - 2.0 * f0)) / step**2


def cartesian_evaluator(field) -> Callable:
    """Adapt a field to an (x, y) callable for stencil checks."""
    if isinstance(field, DiskField):
        return lambda x, y: field.value(np.hypot(x, y), np.arctan2(y, x))
    return field.value
