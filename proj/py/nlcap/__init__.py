"""Nonlocal capillarity toolkit: Young's-law angles, slab interaction constants,
and volume-constrained droplet minimization on grids."""

from ._core import (
    c_star,
    complement_duality,
    dual_angle,
    measure_angle,
    minimize_droplet,
    sigma_bound,
    slab_annulus,
    slab_halfspace,
    solve_angle,
    young_deficit,
)

__all__ = [
    "c_star",
    "complement_duality",
    "dual_angle",
    "measure_angle",
    "minimize_droplet",
    "sigma_bound",
    "slab_annulus",
    "slab_halfspace",
    "solve_angle",
    "young_deficit",
]
