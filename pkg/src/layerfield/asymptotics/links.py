"""Boundary-link companion fields and thin-layer approximate solutions.

The Robin companion of a model field integrates it against an
exponential (planar) or power-law (radial) kernel; on modes the link is
a plain rescaling of each coefficient.  The Neumann companion is the
decaying primitive.  The thin-layer approximators assemble those
companions into closed-form substitutes for the image-ladder solutions,
together with the rigorous variation bounds of the leading-order step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from ..errors import DivergentLinkError, SolvabilityError, ValidationError
from ..harmonic import DiskField, HalfPlaneField, as_point2, as_polar
from ..series import PlanarLayerConfig, RadialLayerConfig
from .summation import total_variation, ray_total_variation, ray_window


@dataclass(frozen=True)
class RobinParameter:
    """Robin coefficient h tied to a layer geometry's reflection ratio."""

    h: float
    kind: str  # "planar" (|rho| = exp(2hl)) or "radial" (|rho| = R^(2h))

    @classmethod
    def from_planar(cls, config: PlanarLayerConfig) -> "RobinParameter":
        h = config.robin_h
        if abs(math.exp(2 * h * config.l) - abs(config.rho)) > 1e-12:
            raise ValidationError("Robin parameter inconsistent with rho")
        return cls(h=h, kind="planar")

    @classmethod
    def from_radial(cls, config: RadialLayerConfig) -> "RobinParameter":
        h = config.robin_h
        if abs(config.R ** (2 * h) - abs(config.rho)) > 1e-12:
            raise ValidationError("Robin parameter inconsistent with rho")
        return cls(h=h, kind="radial")


class _QuadratureRobinHalfPlane:
    """Robin companion of a source-bearing field, by direct quadrature."""

    def __init__(self, field: HalfPlaneField, h: float):
        self.field = field
        self.h = h

    def value(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.empty(np.broadcast(x, y).shape)
        flat = out.reshape(-1)
        xs = np.broadcast_to(x, out.shape).reshape(-1)
        ys = np.broadcast_to(y, out.shape).reshape(-1)
        for i, (xi, yi) in enumerate(zip(xs, ys)):
            flat[i], _ = integrate.quad(
                lambda e: math.exp(self.h * e) * float(self.field.value(xi + e, yi)),
                0.0,
                math.inf,
                limit=200,
            )
        return out if out.shape else float(out)

    def deriv_x(self, x, y):
        # d/dx of the link obeys  d/dx u3 = -h*u3 - u  exactly
        return -self.h * self.value(x, y) - self.field.value(x, y)


def robin_link_halfplane(field: HalfPlaneField, h: float):
    """Robin companion u3(x,y) = int_0^inf e^(he) u(x+e, y) de, h < 0.

    Satisfies d/dx u3 + h u3 + u = 0; a mode of frequency w maps to the
    same mode divided by (w - h).
    """
    if not (h < 0 and math.isfinite(h)):
        raise ValidationError("planar Robin link requires h < 0")
    if field.has_sources:
        return _QuadratureRobinHalfPlane(field, h)
    modes = []
    for a, w, p in field.modes:
        if w - h <= 0:
            raise DivergentLinkError(f"link integral diverges for mode frequency {w}")
        modes.append((a / (w - h), w, p))
    return HalfPlaneField(modes=modes)


def neumann_link_halfplane(field: HalfPlaneField) -> HalfPlaneField:
    """Neumann companion u2 with d/dx u2 = u everywhere; decaying modes only."""
    if field.has_sources:
        raise ValidationError("Neumann companion needs a decaying mode representation")
    return HalfPlaneField(modes=[(-a / w, w, p) for a, w, p in field.modes])


def robin_link_disk(field: DiskField, h: float) -> DiskField:
    """Radial Robin companion u3(r,t) = int_0^1 e^(h-1) u(r e, t) de, h > 0.

    Satisfies L0 u3 + h u3 - u = 0; mode n maps to itself over (n + h).
    """
    if not (h > 0 and math.isfinite(h)):
        raise ValidationError("radial Robin link requires h > 0")
    a = field.cos_coeffs
    b = field.sin_coeffs
    n = np.arange(a.size, dtype=float)
    if np.any(n + h <= 0):
        raise DivergentLinkError("link integral diverges for some mode")
    return DiskField(a / (n + h), b / np.where(n + h > 0, n + h, 1.0))


def neumann_link_disk(field: DiskField) -> DiskField:
    """Radial Neumann companion u2 with L0 u2 = u; needs mean-zero data."""
    a = field.cos_coeffs
    b = field.sin_coeffs
    if abs(a[0]) > 1e-12 * (field.sup_bound() + 1e-300):
        raise SolvabilityError(
            "Neumann companion needs mean-zero boundary data (zero constant mode)"
        )
    out_a = np.zeros_like(a)
    out_b = np.zeros_like(b)
    for n in range(1, a.size):
        out_a[n] = a[n] / n
        out_b[n] = b[n] / n
    return DiskField(out_a, out_b)


@dataclass(frozen=True)
class ApproxResult:
    """Thin-layer approximation plus its pointwise assessment bound."""

    solution: object
    bound: float | None = None
    bound_at: Callable | None = None


class PlanarRobinApprox:
    """Leading-order coupled half-plane solution from the Robin companion."""

    kind = "halfplane_coupled"

    def __init__(self, u3, config: PlanarLayerConfig, rho: float):
        self.u3 = u3
        self.config = config
        self.rho = rho
        self.tail_bound = None

    def u1_value(self, x, y):
        l = self.config.l
        return (self.u3.value(x, y) - self.rho * self.u3.value(2 * l - x, y)) / (2 * l)

    def u1_deriv_x(self, x, y):
        l = self.config.l
        return (self.u3.deriv_x(x, y) + self.rho * self.u3.deriv_x(2 * l - x, y)) / (2 * l)

    def u2_value(self, x, y):
        l = self.config.l
        return (1.0 - self.rho) / (2 * l) * self.u3.value(x, y)

    def u2_deriv_x(self, x, y):
        l = self.config.l
        return (1.0 - self.rho) / (2 * l) * self.u3.deriv_x(x, y)

    def classify(self, p) -> str:
        p = as_point2(p)
        if p.x < 0:
            return "outside"
        return "layer1" if p.x <= self.config.l else "layer2"

    def eval(self, p) -> float:
        p = as_point2(p)
        region = self.classify(p)
        if region == "outside":
            raise ValidationError("point lies outside the coupled half-plane")
        fn = self.u1_value if region == "layer1" else self.u2_value
        return float(fn(p.x, p.y))


class PlanarRobinApproxAlt(PlanarRobinApprox):
    """High-contrast variant: even/odd ladder split, four-image combination."""

    def u1_value(self, x, y):
        l = self.config.l
        m = abs(self.rho)
        u3 = self.u3.value
        return (
            u3(x, y)
            - m * u3(x + 2 * l, y)
            + m * (u3(2 * l - x, y) - m * u3(4 * l - x, y))
        ) / (4 * l)

    def u1_deriv_x(self, x, y):
        l = self.config.l
        m = abs(self.rho)
        d = self.u3.deriv_x
        return (
            d(x, y)
            - m * d(x + 2 * l, y)
            + m * (-d(2 * l - x, y) + m * d(4 * l - x, y))
        ) / (4 * l)

    def u2_value(self, x, y):
        cfg = self.config
        m = abs(self.rho)
        coef = 2 * cfg.k / (cfg.k + 1) / (4 * cfg.l)
        return coef * (self.u3.value(x, y) - m * self.u3.value(x + 2 * cfg.l, y))

    def u2_deriv_x(self, x, y):
        cfg = self.config
        m = abs(self.rho)
        coef = 2 * cfg.k / (cfg.k + 1) / (4 * cfg.l)
        return coef * (self.u3.deriv_x(x, y) - m * self.u3.deriv_x(x + 2 * cfg.l, y))


class DiskRobinApprox:
    """Leading-order coupled disk solution from the radial Robin companion."""

    kind = "disk_coupled"

    def __init__(self, u3: DiskField, config: RadialLayerConfig, rho: float):
        self.u3 = u3
        self.config = config
        self.rho = rho
        self.s = math.log(1.0 / config.R**2)
        self.tail_bound = None

    def u1_value(self, r, theta):
        R = self.config.R
        return (self.u3.value(r, theta) - self.rho * self.u3.value(R**2 / np.asarray(r, float), theta)) / self.s

    def u1_radial_derivative(self, r, theta):
        R = self.config.R
        return (
            self.u3.radial_derivative(r, theta)
            + self.rho * self.u3.radial_derivative(R**2 / np.asarray(r, float), theta)
        ) / self.s

    def u2_value(self, r, theta):
        return (1.0 - self.rho) / self.s * self.u3.value(r, theta)

    def u2_radial_derivative(self, r, theta):
        return (1.0 - self.rho) / self.s * self.u3.radial_derivative(r, theta)

    def classify(self, p) -> str:
        p = as_polar(p)
        if p.r > 1.0 + 1e-12:
            return "outside"
        return "layer2" if p.r < self.config.R else "layer1"

    def eval(self, p) -> float:
        p = as_polar(p)
        region = self.classify(p)
        if region == "outside":
            raise ValidationError("point lies outside the unit disk")
        fn = self.u1_value if region == "layer1" else self.u2_value
        return float(fn(p.r, p.theta))


class DiskRobinApproxAlt(DiskRobinApprox):
    """High-contrast variant on the disk: even/odd split with R^2 rescaling."""

    def u1_value(self, r, theta):
        R = self.config.R
        m = abs(self.rho)
        r = np.asarray(r, dtype=float)
        u3 = self.u3.value
        return (
            u3(r, theta)
            - m * u3(R**2 * r, theta)
            + m * (u3(R**2 / r, theta) - m * u3(R**4 / r, theta))
        ) / (2 * self.s)

    def u1_radial_derivative(self, r, theta):
        R = self.config.R
        m = abs(self.rho)
        r = np.asarray(r, dtype=float)
        d = self.u3.radial_derivative
        return (
            d(r, theta)
            - m * d(R**2 * r, theta)
            + m * (-d(R**2 / r, theta) + m * d(R**4 / r, theta))
        ) / (2 * self.s)

    def u2_value(self, r, theta):
        cfg = self.config
        m = abs(self.rho)
        coef = 2 * cfg.k / (cfg.k + 1) / (2 * self.s)
        r = np.asarray(r, dtype=float)
        return coef * (self.u3.value(r, theta) - m * self.u3.value(cfg.R**2 * r, theta))

    def u2_radial_derivative(self, r, theta):
        cfg = self.config
        m = abs(self.rho)
        coef = 2 * cfg.k / (cfg.k + 1) / (2 * self.s)
        r = np.asarray(r, dtype=float)
        return coef * (
            self.u3.radial_derivative(r, theta)
            - m * self.u3.radial_derivative(cfg.R**2 * r, theta)
        )


class StripApprox:
    """Thin-strip Dirichlet approximation from the Neumann companion."""

    kind = "strip"

    def __init__(self, u2: HalfPlaneField, field: HalfPlaneField, l: float):
        self.u2 = u2
        self.field = field
        self.l = float(l)
        self.tail_bound = None

    def value(self, x, y):
        l = self.l
        return (self.u2.value(2 * l - x, y) - self.u2.value(x, y)) / (2 * l)

    def deriv_x(self, x, y):
        l = self.l
        return -(self.u2.deriv_x(2 * l - x, y) + self.u2.deriv_x(x, y)) / (2 * l)

    def classify(self, p) -> str:
        p = as_point2(p)
        return "layer1" if 0.0 <= p.x <= self.l else "outside"

    def eval(self, p) -> float:
        p = as_point2(p)
        if self.classify(p) == "outside":
            raise ValidationError("point lies outside the strip")
        return float(self.value(p.x, p.y))


class AnnulusApprox:
    """Thin-annulus Dirichlet approximation from the radial Neumann companion."""

    kind = "annulus"

    def __init__(self, u2: DiskField, field: DiskField, R: float):
        self.u2 = u2
        self.field = field
        self.R = float(R)
        self.s = math.log(1.0 / R**2)
        self.tail_bound = None

    def value(self, r, theta):
        r = np.asarray(r, dtype=float)
        return (self.u2.value(r, theta) - self.u2.value(self.R**2 / r, theta)) / self.s

    def radial_derivative(self, r, theta):
        r = np.asarray(r, dtype=float)
        return (
            self.u2.radial_derivative(r, theta)
            + self.u2.radial_derivative(self.R**2 / r, theta)
        ) / self.s

    def classify(self, p) -> str:
        p = as_polar(p)
        return "layer1" if self.R <= p.r <= 1.0 + 1e-12 else "outside"

    def eval(self, p) -> float:
        p = as_polar(p)
        if self.classify(p) == "outside":
            raise ValidationError("point lies outside the annulus")
        return float(self.value(p.r, p.theta))


def _planar_bound_at(field: HalfPlaneField, rho: float, h: float):
    """Pointwise assessment (1-rho) * V(e^(he) u(x+e, y)) over e >= 0."""

    def bound(x, y):
        profile = lambda e: np.exp(h * np.asarray(e, float)) * field.value(x + np.asarray(e, float), y)
        window = ray_window(lambda e: np.exp(h * np.asarray(e, float)), base=1.0 / max(abs(h), 1e-9))
        return (1.0 - rho) * total_variation(profile, 0.0, window).value

    return bound


def _radial_bound_at(field: DiskField, rho: float, h: float):
    """Pointwise assessment (1-rho) * V(e^h u(r e, theta)) over e in [0, 1]."""

    def bound(r, theta):
        profile = lambda e: np.asarray(e, float) ** h * field.value(r * np.asarray(e, float), theta)
        return (1.0 - rho) * total_variation(profile, 0.0, 1.0).value

    return bound


def halfplane_small_contrast(field: HalfPlaneField, config: PlanarLayerConfig) -> ApproxResult:
    """Low-contrast (k < 1) thin-layer approximation of the coupled half-plane.

    u2 ~ (1 - rho)/(2l) * u3 and u1 ~ (u3(x,y) - rho*u3(2l-x,y))/(2l),
    where u3 is the Robin companion at h = ln(rho)/(2l).  The returned
    bound is the variation assessment of the leading quadrature step,
    maximised along the interface; bound_at gives it pointwise.
    """
    if not (0.0 < config.k < 1.0):
        raise ValidationError("low-contrast approximation needs 0 < k < 1")
    rho = config.rho
    h = config.robin_h
    u3 = robin_link_halfplane(field, h)
    sol = PlanarRobinApprox(u3, config, rho)
    bound_at = _planar_bound_at(field, rho, h)
    probes = _planar_probes(field)
    bound = max(bound_at(config.l, y) for y in probes)
    return ApproxResult(solution=sol, bound=bound, bound_at=bound_at)


def halfplane_large_contrast(field: HalfPlaneField, config: PlanarLayerConfig) -> ApproxResult:
    """High-contrast (k > 1) variant via the even/odd ladder split."""
    if not (config.k > 1.0):
        raise ValidationError("high-contrast approximation needs k > 1")
    h = config.robin_h  # ln|rho| / (2l) < 0
    u3 = robin_link_halfplane(field, h)
    return ApproxResult(solution=PlanarRobinApproxAlt(u3, config, config.rho))


def strip_thin_layer(field: HalfPlaneField, l: float) -> ApproxResult:
    """Thin-strip approximation u ~ (u2(2l-x,y) - u2(x,y)) / (2l)."""
    if l <= 0:
        raise ValidationError("strip width must be > 0")
    u2 = neumann_link_halfplane(field)
    return ApproxResult(solution=StripApprox(u2, field, l))


def disk_small_contrast(field: DiskField, config: RadialLayerConfig) -> ApproxResult:
    """Low-contrast (k < 1) thin-shell approximation of the coupled disk."""
    if not (0.0 < config.k < 1.0):
        raise ValidationError("low-contrast approximation needs 0 < k < 1")
    rho = config.rho
    h = config.robin_h
    u3 = robin_link_disk(field, h)
    sol = DiskRobinApprox(u3, config, rho)
    bound_at = _radial_bound_at(field, rho, h)
    thetas = np.linspace(0.0, 2 * math.pi, 17)
    bound = max(bound_at(config.R, t) for t in thetas)
    return ApproxResult(solution=sol, bound=bound, bound_at=bound_at)


def disk_large_contrast(field: DiskField, config: RadialLayerConfig) -> ApproxResult:
    """High-contrast (k > 1) disk variant via the even/odd ladder split."""
    if not (config.k > 1.0):
        raise ValidationError("high-contrast approximation needs k > 1")
    h = config.robin_h  # ln|rho| / (2 ln R) > 0
    u3 = robin_link_disk(field, h)
    return ApproxResult(solution=DiskRobinApproxAlt(u3, config, config.rho))


def annulus_thin_layer(field: DiskField, R: float) -> ApproxResult:
    """Thin-annulus approximation u ~ (u2(r,t) - u2(R^2/r,t)) / ln(1/R^2)."""
    if not (0.0 < R < 1.0):
        raise ValidationError("inner radius must lie in (0, 1)")
    u2 = neumann_link_disk(field)
    return ApproxResult(solution=AnnulusApprox(u2, field, R))


def _planar_probes(field: HalfPlaneField):
    w = field.min_frequency
    if w is None:
        return np.linspace(-3.0, 3.0, 17)
    return np.linspace(0.0, 2 * math.pi / w, 17)
