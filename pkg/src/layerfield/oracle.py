"""Independent ground truth for the layered constructions.

Three unrelated routes are kept deliberately separate so they can
arbitrate each other: brute-force partial sums with geometric tail
bounds, closed-form single-mode solutions obtained by summing the image
ladders analytically, and sparse finite-difference solves of the
underlying boundary problems.  A residual report aggregates the checks
every candidate solution must pass: interior harmonicity, boundary
match, and interface value/flux continuity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.linalg import spsolve

from .errors import ArbiterInsufficientError, ValidationError
from .harmonic import DiskField, HalfPlaneField, as_point2, as_polar, laplacian_residual
from .series import MAX_LADDER_TERMS, PlanarLayerConfig, RadialLayerConfig, geometric_tail_terms

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class BruteSum:
    """Partial sum with its geometric tail bound."""

    value: float
    tail_bound: float
    terms: int


def brute_series(term, rho: float, M: float = 1.0, J: int | None = None,
                 tol: float = 1e-12, cap: int = MAX_LADDER_TERMS) -> BruteSum:
    """Direct partial sum of sum_j term(j) with |term(j)| <= M |rho|^j.

    Either a fixed term count J or a target tail bound tol; in the latter
    case the needed count must fit under `cap` or the arbiter refuses.
    """
    r = abs(rho)
    if r >= 1:
        raise ValidationError("brute summation needs |rho| < 1")
    if J is None:
        J = geometric_tail_terms(r, tol, M)
        if J > cap:
            achieved = M * r**cap / (1.0 - r)
            raise ArbiterInsufficientError(
                f"tail bound {tol:.3e} needs {J} terms (cap {cap}); "
                f"achievable bound {achieved:.3e}",
                achieved=achieved,
                terms=cap,
            )
    total = 0.0
    for j in range(J):
        total += float(term(j))
    tail = 0.0 if r == 0.0 else M * r**J / (1.0 - r)
    return BruteSum(value=total, tail_bound=tail, terms=J)


# ---------------------------------------------------------------------------
# closed-form single-mode solutions
# ---------------------------------------------------------------------------


class StripModeExact:
    """Separated-variables strip solution for boundary modes.

    Each mode A cos(w y + phi) extends to
    A sinh(w (l - x)) cos(w y + phi) / sinh(w l).
    """

    kind = "strip"

    def __init__(self, modes, l: float):
        self.modes = [(float(a), float(w), float(p)) for a, w, p in modes]
        self.l = float(l)
        self.tail_bound = 0.0

    def value(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        for a, w, p in self.modes:
            out += a * np.sinh(w * (self.l - x)) / math.sinh(w * self.l) * np.cos(w * y + p)
        return out if out.shape else float(out)

    def deriv_x(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        for a, w, p in self.modes:
            out += -a * w * np.cosh(w * (self.l - x)) / math.sinh(w * self.l) * np.cos(w * y + p)
        return out if out.shape else float(out)

    def classify(self, p) -> str:
        p = as_point2(p)
        return "layer1" if 0.0 <= p.x <= self.l else "outside"

    def eval(self, p) -> float:
        p = as_point2(p)
        return float(self.value(p.x, p.y))


class AnnulusModeExact:
    """Annulus Dirichlet solution (r^n - (R^2/r)^n)/(1 - R^(2n)) per mode."""

    kind = "annulus"

    def __init__(self, modes, R: float):
        # modes: iterable of (n, cos_amp, sin_amp), n >= 1
        self.modes = []
        for n, a, b in modes:
            if n < 1:
                raise ValidationError("annulus mode solution needs n >= 1")
            self.modes.append((int(n), float(a), float(b)))
        self.R = float(R)
        self.tail_bound = 0.0

    def _radial(self, n, r):
        return (r**n - (self.R**2 / r) ** n) / (1.0 - self.R ** (2 * n))

    def value(self, r, theta):
        r = np.asarray(r, dtype=float)
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(np.broadcast(r, theta).shape)
        for n, a, b in self.modes:
            out += self._radial(n, r) * (a * np.cos(n * theta) + b * np.sin(n * theta))
        return out if out.shape else float(out)

    def radial_derivative(self, r, theta):
        r = np.asarray(r, dtype=float)
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(np.broadcast(r, theta).shape)
        for n, a, b in self.modes:
            grad = n * (r**n + (self.R**2 / r) ** n) / (1.0 - self.R ** (2 * n))
            out += grad * (a * np.cos(n * theta) + b * np.sin(n * theta))
        return out if out.shape else float(out)

    def classify(self, p) -> str:
        p = as_polar(p)
        return "layer1" if self.R <= p.r <= 1.0 + 1e-12 else "outside"

    def eval(self, p) -> float:
        p = as_polar(p)
        return float(self.value(p.r, p.theta))


class PlanarCoupledModeExact:
    """Geometric summation of the coupled half-plane ladder on modes."""

    kind = "halfplane_coupled"

    def __init__(self, modes, config: PlanarLayerConfig):
        self.modes = [(float(a), float(w), float(p)) for a, w, p in modes]
        self.config = config
        self.tail_bound = 0.0

    def _denom(self, w):
        cfg = self.config
        return 1.0 - cfg.rho * math.exp(-2.0 * cfg.l * w)

    def u1_value(self, x, y):
        cfg = self.config
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        for a, w, p in self.modes:
            amp = a / self._denom(w)
            out += amp * (np.exp(-w * x) - cfg.rho * np.exp(-w * (2 * cfg.l - x))) * np.cos(w * y + p)
        return out if out.shape else float(out)

    def u1_deriv_x(self, x, y):
        cfg = self.config
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        for a, w, p in self.modes:
            amp = a / self._denom(w)
            out += amp * w * (-np.exp(-w * x) - cfg.rho * np.exp(-w * (2 * cfg.l - x))) * np.cos(w * y + p)
        return out if out.shape else float(out)

    def u2_value(self, x, y):
        cfg = self.config
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        arg = (cfg.a1 / cfg.a2) * (x - cfg.l) + cfg.l
        for a, w, p in self.modes:
            amp = 2 * cfg.k / (cfg.k + 1) * a / self._denom(w)
            out += amp * np.exp(-w * arg) * np.cos(w * y + p)
        return out if out.shape else float(out)

    def u2_deriv_x(self, x, y):
        cfg = self.config
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        stretch = cfg.a1 / cfg.a2
        arg = stretch * (x - cfg.l) + cfg.l
        for a, w, p in self.modes:
            amp = 2 * cfg.k / (cfg.k + 1) * a / self._denom(w)
            out += -w * stretch * amp * np.exp(-w * arg) * np.cos(w * y + p)
        return out if out.shape else float(out)

    def classify(self, p) -> str:
        p = as_point2(p)
        if p.x < 0:
            return "outside"
        return "layer1" if p.x <= self.config.l else "layer2"

    def eval(self, p) -> float:
        p = as_point2(p)
        fn = self.u1_value if self.classify(p) == "layer1" else self.u2_value
        return float(fn(p.x, p.y))


class DiskCoupledModeExact:
    """Geometric summation of the coupled disk ladder on Fourier modes."""

    kind = "disk_coupled"

    def __init__(self, modes, config: RadialLayerConfig):
        self.modes = []
        for n, a, b in modes:
            if n < 1:
                raise ValidationError("coupled disk mode solution needs n >= 1")
            self.modes.append((int(n), float(a), float(b)))
        self.config = config
        self.tail_bound = 0.0

    def _denom(self, n):
        cfg = self.config
        return 1.0 - cfg.rho * cfg.R ** (2 * n)

    def u1_value(self, r, theta):
        cfg = self.config
        r = np.asarray(r, dtype=float)
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(np.broadcast(r, theta).shape)
        for n, a, b in self.modes:
            radial = (r**n - cfg.rho * (cfg.R**2 / r) ** n) / self._denom(n)
            out += radial * (a * np.cos(n * theta) + b * np.sin(n * theta))
        return out if out.shape else float(out)

    def u1_radial_derivative(self, r, theta):
        cfg = self.config
        r = np.asarray(r, dtype=float)
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(np.broadcast(r, theta).shape)
        for n, a, b in self.modes:
            radial = n * (r**n + cfg.rho * (cfg.R**2 / r) ** n) / self._denom(n)
            out += radial * (a * np.cos(n * theta) + b * np.sin(n * theta))
        return out if out.shape else float(out)

    def u2_value(self, r, theta):
        cfg = self.config
        r = np.asarray(r, dtype=float)
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(np.broadcast(r, theta).shape)
        for n, a, b in self.modes:
            radial = 2 * cfg.k / (cfg.k + 1) * r**n / self._denom(n)
            out += radial * (a * np.cos(n * theta) + b * np.sin(n * theta))
        return out if out.shape else float(out)

    def u2_radial_derivative(self, r, theta):
        cfg = self.config
        r = np.asarray(r, dtype=float)
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(np.broadcast(r, theta).shape)
        for n, a, b in self.modes:
            radial = 2 * cfg.k / (cfg.k + 1) * n * r**n / self._denom(n)
            out += radial * (a * np.cos(n * theta) + b * np.sin(n * theta))
        return out if out.shape else float(out)

    def classify(self, p) -> str:
        p = as_polar(p)
        if p.r > 1.0 + 1e-12:
            return "outside"
        return "layer2" if p.r < self.config.R else "layer1"

    def eval(self, p) -> float:
        p = as_polar(p)
        fn = self.u1_value if self.classify(p) == "layer1" else self.u2_value
        return float(fn(p.r, p.theta))


def mode_exact(problem: str, modes, **geometry):
    """Closed-form solution for single- or multi-mode boundary data.

    problem: strip | annulus | halfplane_coupled | disk_coupled.
    Planar modes are (amplitude, frequency, phase); radial modes are
    (n, cos_amp, sin_amp) with n >= 1 (the constant disk mode has no
    ladder-summed closed form and is rejected).
    """
    if problem == "strip":
        return StripModeExact(modes, l=geometry["l"])
    if problem == "annulus":
        return AnnulusModeExact(modes, R=geometry["R"])
    if problem == "halfplane_coupled":
        return PlanarCoupledModeExact(modes, config=geometry["config"])
    if problem == "disk_coupled":
        return DiskCoupledModeExact(modes, config=geometry["config"])
    raise ValidationError(f"unknown problem tag: {problem!r}")


# ---------------------------------------------------------------------------
# finite-difference solvers
# ---------------------------------------------------------------------------


@dataclass
class GridSolution:
    """Node values of a finite-difference solve on a structured grid."""

    kind: str
    axes: tuple
    values: np.ndarray
    spacings: tuple
    meta: dict = field(default_factory=dict)

    def to_csv(self, path):
        """Write the grid in the x,y,region,u (or r,theta,region,u) format."""
        polar = self.kind in ("annulus", "disk_coupled")
        header = "r,theta,region,u" if polar else "x,y,region,u"
        a1, a2 = self.axes
        interface = self.meta.get("interface")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(header + "\n")
            for i, c1 in enumerate(a1):
                for j, c2 in enumerate(a2):
                    region = "1"
                    if interface is not None and c1 < interface:
                        region = "2"
                    fh.write(f"{float(c1)!r},{float(c2)!r},{region},{float(self.values[i, j])!r}\n")


def fd_strip(boundary_fn, l: float, y_window, n_x: int, n_y: int, lateral_fn=None) -> GridSolution:
    """Sparse 5-point solve of the strip Dirichlet problem.

    boundary_fn(y) supplies the data on x=0; the x=l side is 0; lateral
    edges default to 0 (use lateral_fn for data that does not decay in y).
    """
    if l <= 0 or n_x < 3 or n_y < 3:
        raise ValidationError("need l > 0 and at least a 3x3 grid")
    y0, y1 = float(y_window[0]), float(y_window[1])
    x = np.linspace(0.0, l, n_x)
    y = np.linspace(y0, y1, n_y)
    dx = x[1] - x[0]
    dy = y[1] - y[0]
    u = np.zeros((n_x, n_y))
    u[0, :] = [float(boundary_fn(yy)) for yy in y]
    if lateral_fn is not None:
        u[:, 0] = [float(lateral_fn(xx, y0)) for xx in x]
        u[:, -1] = [float(lateral_fn(xx, y1)) for xx in x]
        u[0, :] = [float(boundary_fn(yy)) for yy in y]
        u[-1, :] = 0.0

    idx = -np.ones((n_x, n_y), dtype=int)
    interior = [(i, j) for i in range(1, n_x - 1) for j in range(1, n_y - 1)]
    for m, (i, j) in enumerate(interior):
        idx[i, j] = m
    rows, cols, data = [], [], []
    rhs = np.zeros(len(interior))
    cx, cy = 1.0 / dx**2, 1.0 / dy**2
    for m, (i, j) in enumerate(interior):
        rows.append(m)
        cols.append(m)
        data.append(-2.0 * (cx + cy))
        for (ii, jj, c) in ((i + 1, j, cx), (i - 1, j, cx), (i, j + 1, cy), (i, j - 1, cy)):
            if idx[ii, jj] >= 0:
                rows.append(m)
                cols.append(idx[ii, jj])
                data.append(c)
            else:
                rhs[m] -= c * u[ii, jj]
    mat = csr_matrix((data, (rows, cols)), shape=(len(interior), len(interior)))
    sol = spsolve(mat, rhs)
    for m, (i, j) in enumerate(interior):
        u[i, j] = sol[m]
    return GridSolution(kind="strip", axes=(x, y), values=u, spacings=(dx, dy))


def _polar_row(rows, cols, data, rhs, m, i_r, j, idx, known, r, dr, dth, n_theta):
    """Append one interior polar 5-point equation."""
    cr = 1.0 / dr**2
    cc = 1.0 / (2.0 * r * dr)
    ct = 1.0 / (r**2 * dth**2)
    rows.append(m)
    cols.append(m)
    data.append(-2.0 * cr - 2.0 * ct)
    for (nbr, c) in (
        ((i_r + 1, j), cr + cc),
        ((i_r - 1, j), cr - cc),
        ((i_r, (j + 1) % n_theta), ct),
        ((i_r, (j - 1) % n_theta), ct),
    ):
        if idx[nbr] >= 0:
            rows.append(m)
            cols.append(idx[nbr])
            data.append(c)
        else:
            rhs[m] -= c * known[nbr]


def fd_annulus(boundary_fn, R: float, n_r: int, n_theta: int) -> GridSolution:
    """Polar 5-point solve of the annulus Dirichlet problem.

    boundary_fn(theta) on r=1, zero data on r=R, periodic in theta.
    """
    if not (0 < R < 1) or n_r < 3 or n_theta < 8:
        raise ValidationError("need R in (0,1), n_r >= 3, n_theta >= 8")
    r = np.linspace(R, 1.0, n_r)
    theta = np.arange(n_theta) * (TWO_PI / n_theta)
    dr = r[1] - r[0]
    dth = TWO_PI / n_theta
    u = np.zeros((n_r, n_theta))
    u[-1, :] = [float(boundary_fn(t)) for t in theta]

    idx = -np.ones((n_r, n_theta), dtype=int)
    interior = [(i, j) for i in range(1, n_r - 1) for j in range(n_theta)]
    for m, node in enumerate(interior):
        idx[node] = m
    rows, cols, data = [], [], []
    rhs = np.zeros(len(interior))
    for m, (i, j) in enumerate(interior):
        _polar_row(rows, cols, data, rhs, m, i, j, idx, u, r[i], dr, dth, n_theta)
    mat = csr_matrix((data, (rows, cols)), shape=(len(interior), len(interior)))
    sol = spsolve(mat, rhs)
    for m, (i, j) in enumerate(interior):
        u[i, j] = sol[m]
    return GridSolution(kind="annulus", axes=(r, theta), values=u, spacings=(dr, dth))


def fd_disk_coupled(boundary_fn, config: RadialLayerConfig, n_r: int, n_theta: int) -> GridSolution:
    """Two-region polar solve of the coupled disk problem.

    Value continuity holds by sharing the interface unknowns; the flux
    row enforces k * du/dr(R+) = du/dr(R-) with one-sided second-order
    differences.  The r=0 row uses the discrete mean-value property.
    """
    if not isinstance(config, RadialLayerConfig):
        raise ValidationError("config must be a RadialLayerConfig")
    if n_r < 8 or n_theta < 8:
        raise ValidationError("need n_r >= 8 and n_theta >= 8")
    R, k = config.R, config.k
    m_in = max(3, round(n_r * R))
    m_out = max(3, n_r - m_in)
    dr_in = R / m_in
    dr_out = (1.0 - R) / m_out
    radii = np.concatenate([np.arange(m_in + 1) * dr_in, R + np.arange(1, m_out + 1) * dr_out])
    n_rad = radii.size  # index of interface is m_in, boundary is n_rad-1
    theta = np.arange(n_theta) * (TWO_PI / n_theta)
    dth = TWO_PI / n_theta
    u = np.zeros((n_rad, n_theta))
    u[-1, :] = [float(boundary_fn(t)) for t in theta]

    # unknowns: center (one), rings 1..n_rad-2 (all theta)
    idx = -np.ones((n_rad, n_theta), dtype=int)
    center_id = 0
    count = 1
    for i in range(1, n_rad - 1):
        for j in range(n_theta):
            idx[i, j] = count
            count += 1
    rows, cols, data = [], [], []
    rhs = np.zeros(count)

    # center: mean-value property over the first ring
    rows.append(center_id)
    cols.append(center_id)
    data.append(1.0)
    for j in range(n_theta):
        rows.append(center_id)
        cols.append(idx[1, j])
        data.append(-1.0 / n_theta)

    for i in range(1, n_rad - 1):
        dr = dr_in if i <= m_in else dr_out
        for j in range(n_theta):
            m = idx[i, j]
            if i == m_in:
                # flux matching row: k * forward(R+) - backward(R-) = 0
                f = k / (2.0 * dr_out)
                b = 1.0 / (2.0 * dr_in)
                entries = [
                    ((i, j), -3.0 * f - 3.0 * b),
                    ((i + 1, j), 4.0 * f),
                    ((i + 2, j), -1.0 * f),
                    ((i - 1, j), 4.0 * b),
                    ((i - 2, j), -1.0 * b),
                ]
                for (node, c) in entries:
                    if node[0] == n_rad - 1:
                        rhs[m] -= c * u[node]
                    elif node[0] == 0:
                        rows.append(m)
                        cols.append(center_id)
                        data.append(c)
                    else:
                        rows.append(m)
                        cols.append(idx[node])
                        data.append(c)
                continue
            cr = 1.0 / dr**2
            cc = 1.0 / (2.0 * radii[i] * dr)
            ct = 1.0 / (radii[i] ** 2 * dth**2)
            rows.append(m)
            cols.append(m)
            data.append(-2.0 * cr - 2.0 * ct)
            for (node, c) in (
                ((i + 1, j), cr + cc),
                ((i - 1, j), cr - cc),
                ((i, (j + 1) % n_theta), ct),
                ((i, (j - 1) % n_theta), ct),
            ):
                if node[0] == n_rad - 1:
                    rhs[m] -= c * u[node]
                elif node[0] == 0:
                    rows.append(m)
                    cols.append(center_id)
                    data.append(c)
                else:
                    rows.append(m)
                    cols.append(idx[node])
                    data.append(c)

    mat = csr_matrix((data, (rows, cols)), shape=(count, count))
    sol = spsolve(mat, rhs)
    u[0, :] = sol[center_id]
    for i in range(1, n_rad - 1):
        for j in range(n_theta):
            u[i, j] = sol[idx[i, j]]
    return GridSolution(
        kind="disk_coupled",
        axes=(radii, theta),
        values=u,
        spacings=(dr_in, dr_out, dth),
        meta={"interface": R, "interface_index": m_in},
    )


# ---------------------------------------------------------------------------
# residual report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ErrorReport:
    """Maxima of the defect checks over a sample plan."""

    pde_residual: float
    boundary_mismatch: float
    value_jump: float
    flux_jump: float
    samples: dict
    bounds: dict

    def __post_init__(self):
        for name in ("pde_residual", "boundary_mismatch", "value_jump", "flux_jump"):
            if getattr(self, name) < 0:
                raise ValidationError(f"{name} cannot be negative")
        if any(v <= 0 for v in self.samples.values()):
            raise ValidationError("sample counts must be positive")


def _one_sided_dx(fn, x, y, step, side):
    """Fourth-order one-sided derivative at x from nodes 5..9 steps inside.

    The offset keeps every sample strictly on one side of the interface.
    """
    from .asymptotics.summation import fd_weights

    offsets = np.array([5, 6, 7, 8, 9], dtype=float) * (1.0 if side > 0 else -1.0)
    w = fd_weights(offsets, 1)
    vals = np.array([float(fn(x + c * step, y)) for c in offsets])
    return float(np.dot(w, vals) / step)


def residual_report(solution, boundary_field, n_samples: int = 50,
                    stencil_step: float = 1e-3, seed: int = 0,
                    flux: str = "auto") -> ErrorReport:
    """Check a candidate solution against its defining conditions.

    flux: "auto" uses the solution's exact derivative methods when
    present, otherwise one-sided fourth-order differences taken five
    steps away from the interface.
    """
    rng = np.random.default_rng(seed)
    kind = solution.kind
    h = stencil_step
    bounds = {}
    if getattr(solution, "tail_bound", None) is not None:
        bounds["tail_bound"] = float(solution.tail_bound)

    if kind == "strip":
        l = solution.l if hasattr(solution, "l") else solution.config.l
        xs = rng.uniform(2 * h, l - 2 * h, n_samples)
        ys = rng.uniform(-1.0, 1.0, n_samples)
        pde = max(abs(laplacian_residual(solution.value, (x, y), h)) for x, y in zip(xs, ys))
        yb = rng.uniform(-1.0, 1.0, n_samples)
        outer = max(abs(float(solution.value(0.0, y)) - float(boundary_field.value(0.0, y))) for y in yb)
        inner = max(abs(float(solution.value(l, y))) for y in yb)
        return ErrorReport(
            pde_residual=pde,
            boundary_mismatch=max(outer, inner),
            value_jump=0.0,
            flux_jump=0.0,
            samples={"interior": n_samples, "boundary": 2 * n_samples},
            bounds=bounds,
        )

    if kind == "annulus":
        R = solution.R
        rs = rng.uniform(R + 2 * h, 1.0 - 2 * h, n_samples)
        ts = rng.uniform(0.0, TWO_PI, n_samples)
        fn = lambda x, y: float(solution.value(math.hypot(x, y), math.atan2(y, x)))
        pde = max(
            abs(laplacian_residual(fn, (r * math.cos(t), r * math.sin(t)), h))
            for r, t in zip(rs, ts)
        )
        tb = rng.uniform(0.0, TWO_PI, n_samples)
        outer = max(abs(float(solution.value(1.0, t)) - float(boundary_field.value(1.0, t))) for t in tb)
        inner = max(abs(float(solution.value(R, t))) for t in tb)
        return ErrorReport(
            pde_residual=pde,
            boundary_mismatch=max(outer, inner),
            value_jump=0.0,
            flux_jump=0.0,
            samples={"interior": n_samples, "boundary": 2 * n_samples},
            bounds=bounds,
        )

    if kind == "halfplane_coupled":
        cfg = solution.config
        l, k = cfg.l, cfg.k
        xs1 = rng.uniform(2 * h, l - 2 * h, n_samples)
        ys1 = rng.uniform(-1.0, 1.0, n_samples)
        pde1 = max(
            abs(laplacian_residual(solution.u1_value, (x, y), h, a=cfg.a1))
            for x, y in zip(xs1, ys1)
        )
        xs2 = rng.uniform(l + 2 * h, l + 2.0, n_samples)
        ys2 = rng.uniform(-1.0, 1.0, n_samples)
        pde2 = max(
            abs(laplacian_residual(solution.u2_value, (x, y), h, a=cfg.a2))
            for x, y in zip(xs2, ys2)
        )
        yb = rng.uniform(-1.0, 1.0, n_samples)
        bmis = max(abs(float(solution.u1_value(0.0, y)) - float(boundary_field.value(0.0, y))) for y in yb)
        yi = rng.uniform(-1.0, 1.0, n_samples)
        vjump = max(abs(float(solution.u1_value(l, y)) - float(solution.u2_value(l, y))) for y in yi)
        use_exact = flux != "fd" and hasattr(solution, "u1_deriv_x")
        if use_exact:
            fjump = max(
                abs(k * float(solution.u1_deriv_x(l, y)) - float(solution.u2_deriv_x(l, y)))
                for y in yi
            )
        else:
            fjump = max(
                abs(
                    k * _one_sided_dx(solution.u1_value, l, y, h, side=-1)
                    - _one_sided_dx(solution.u2_value, l, y, h, side=+1)
                )
                for y in yi
            )
        return ErrorReport(
            pde_residual=max(pde1, pde2),
            boundary_mismatch=bmis,
            value_jump=vjump,
            flux_jump=fjump,
            samples={"interior": 2 * n_samples, "boundary": n_samples, "interface": n_samples},
            bounds=bounds,
        )

    if kind == "disk_coupled":
        cfg = solution.config
        R, k = cfg.R, cfg.k
        rs1 = rng.uniform(R + 2 * h, 1.0 - 2 * h, n_samples)
        ts1 = rng.uniform(0.0, TWO_PI, n_samples)
        f1 = lambda x, y: float(solution.u1_value(math.hypot(x, y), math.atan2(y, x)))
        pde1 = max(
            abs(laplacian_residual(f1, (r * math.cos(t), r * math.sin(t)), h))
            for r, t in zip(rs1, ts1)
        )
        rs2 = rng.uniform(2 * h, R - 2 * h, n_samples)
        ts2 = rng.uniform(0.0, TWO_PI, n_samples)
        f2 = lambda x, y: float(solution.u2_value(math.hypot(x, y), math.atan2(y, x)))
        pde2 = max(
            abs(laplacian_residual(f2, (r * math.cos(t), r * math.sin(t)), h))
            for r, t in zip(rs2, ts2)
        )
        tb = rng.uniform(0.0, TWO_PI, n_samples)
        bmis = max(abs(float(solution.u1_value(1.0, t)) - float(boundary_field.value(1.0, t))) for t in tb)
        ti = rng.uniform(0.0, TWO_PI, n_samples)
        vjump = max(abs(float(solution.u1_value(R, t)) - float(solution.u2_value(R, t))) for t in ti)
        use_exact = flux != "fd" and hasattr(solution, "u1_radial_derivative")
        if use_exact:
            fjump = max(
                abs(
                    k * float(solution.u1_radial_derivative(R, t))
                    - float(solution.u2_radial_derivative(R, t))
                )
                for t in ti
            )
        else:
            g1 = lambda r, t: float(solution.u1_value(r, t))
            g2 = lambda r, t: float(solution.u2_value(r, t))
            fjump = max(
                abs(
                    k * R * _one_sided_dx(g1, R, t, h, side=+1)
                    - R * _one_sided_dx(g2, R, t, h, side=-1)
                )
                for t in ti
            )
        return ErrorReport(
            pde_residual=max(pde1, pde2),
            boundary_mismatch=bmis,
            value_jump=vjump,
            flux_jump=fjump,
            samples={"interior": 2 * n_samples, "boundary": n_samples, "interface": n_samples},
            bounds=bounds,
        )

    raise ValidationError(f"unknown solution kind: {kind!r}")
