"""Finite combinatorics of n-dimensional Delta-systems indexed by sets of ordinals."""

from .errors import InputError, ResourceGuardError
from .ordsets import OrdSet, ordset
from .deltasys import Family, RootSystem, UniformWitness
from .generators import Coloring
from .miner import MineRequest, MineResult

__all__ = [
    "InputError",
    "ResourceGuardError",
    "OrdSet",
    "ordset",
    "Family",
    "RootSystem",
    "UniformWitness",
    "Coloring",
    "MineRequest",
    "MineResult",
]

__version__ = "0.1.0"
