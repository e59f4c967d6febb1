"""Summation engine and thin-layer approximators."""

from .bernoulli import BernoulliTable, bernoulli
from .links import (
    AnnulusApprox,
    ApproxResult,
    DiskRobinApprox,
    DiskRobinApproxAlt,
    PlanarRobinApprox,
    PlanarRobinApproxAlt,
    RobinParameter,
    StripApprox,
    annulus_thin_layer,
    disk_large_contrast,
    disk_small_contrast,
    halfplane_large_contrast,
    halfplane_small_contrast,
    neumann_link_disk,
    neumann_link_halfplane,
    robin_link_disk,
    robin_link_halfplane,
    strip_thin_layer,
)
from .summation import (
    ExpProfile,
    FuncProfile,
    PowerProfile,
    SumProfile,
    TVEstimate,
    em_log_sum,
    em_ray_sum,
    fd_weights,
    log_sum_bound,
    ray_sum_bound,
    ray_total_variation,
    total_variation,
    weighted_radial_asym,
    weighted_radial_asym_alt,
    weighted_ray_asym,
    weighted_ray_asym_alt,
)

__all__ = [
    "AnnulusApprox",
    "ApproxResult",
    "BernoulliTable",
    "DiskRobinApprox",
    "DiskRobinApproxAlt",
    "ExpProfile",
    "FuncProfile",
    "PlanarRobinApprox",
    "PlanarRobinApproxAlt",
    "PowerProfile",
    "RobinParameter",
    "StripApprox",
    "SumProfile",
    "TVEstimate",
    "annulus_thin_layer",
    "bernoulli",
    "disk_large_contrast",
    "disk_small_contrast",
    "em_log_sum",
    "em_ray_sum",
    "fd_weights",
    "halfplane_large_contrast",
    "halfplane_small_contrast",
    "log_sum_bound",
    "neumann_link_disk",
    "neumann_link_halfplane",
    "ray_sum_bound",
    "ray_total_variation",
    "robin_link_disk",
    "robin_link_halfplane",
    "strip_thin_layer",
    "total_variation",
    "weighted_radial_asym",
    "weighted_radial_asym_alt",
    "weighted_ray_asym",
    "weighted_ray_asym_alt",
]
