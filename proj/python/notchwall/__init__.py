"""Domain walls in notched nanowires.

Thin wrapper over the compiled core: profiles, grids, the wall solver,
energy-decreasing transforms, linearized spectra, LLG relaxation and
mountain-pass path profiling.
"""

from ._core import (
    Grid,
    Profile,
    composite_path,
    energy,
    lift,
    relax,
    separatrix,
    shoot,
    solve,
    spectrum,
    transform_chain,
    uniqueness,
    unlift,
)

__all__ = [
    "Grid",
    "Profile",
    "composite_path",
    "energy",
    "lift",
    "relax",
    "separatrix",
    "shoot",
    "solve",
    "spectrum",
    "transform_chain",
    "uniqueness",
    "unlift",
]
