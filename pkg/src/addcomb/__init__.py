"""Additive energy, dissociated sets and symmetry sets in finite abelian groups."""

from .group import GroupSpec, make_group
from .setops import GroupSet, convolve, correlate, energy
from .fourier import dft, idft, energy_spectral
from .dissociation import is_dissociated, maximal_dissociated, dim_exact, span_contains
from .symmetry import symmetry_set, kfold_symmetry_set, dyadic_levels
from .cycles import build_graph, tree_search, dependency_from_cycle
from .structure import extract_core_simple, extract_core_levelset, verify_structure

__all__ = [
    "GroupSpec", "make_group", "GroupSet", "convolve", "correlate", "energy",
    "dft", "idft", "energy_spectral", "is_dissociated", "maximal_dissociated", "dim_exact",
    "span_contains", "symmetry_set", "kfold_symmetry_set", "dyadic_levels", "build_graph",
    "tree_search", "dependency_from_cycle", "extract_core_simple", "extract_core_levelset",
    "verify_structure",
]
