"""Ellipsoid boundary chart, surface densities and boundary quadrature."""

from domains.geometry.ellipsoid import (
    BoundaryPoint,
    Density,
    Ellipsoid,
    ParamPoint,
    defining_rho,
    density_ratio_interval,
    leray_density,
    lift,
    radial_r2,
    sigma_density,
    wrap_angle,
)
from domains.geometry.forms import leray_form_pullback
from domains.geometry.quadrature import (
    BoundaryNodes,
    ParamBox,
    QuadratureGrid,
    QuadratureRule,
    boundary_nodes,
    integrate_boundary,
)

__all__ = [
    "BoundaryNodes",
    "BoundaryPoint",
    "Density",
    "Ellipsoid",
    "ParamBox",
    "ParamPoint",
    "QuadratureGrid",
    "QuadratureRule",
    "boundary_nodes",
    "defining_rho",
    "density_ratio_interval",
    "integrate_boundary",
    "leray_density",
    "leray_form_pullback",
    "lift",
    "radial_r2",
    "sigma_density",
    "wrap_angle",
]
