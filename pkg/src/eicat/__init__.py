"""Exact computations for finite EI categories: category algebras and their
modules, hereditarity, Bredon homology with Kunneth and Chern checks,
derived splitting, and Mackey algebras of finite groups."""

from .exactla import RatMatrix
from .fincat import FiniteCategory, is_ei, ufp_check
from .orbitcat import FiniteGroup, SubgroupFamily, orbit_category, parse_group
from .catalg import (CONTRAVARIANT, COVARIANT, CatModule, ModuleMap, ext_groups, is_hereditary,
                     is_projective, projective_resolution, tor_groups)
from .bredon import (FreeBasedComplex, ModuleComplex, bredon_homology, chern_character,
                     is_derived_split, kunneth_check)
from .mackey import (dinfty_witness, functor_I, is_semisimple, mackey_algebra,
                     mackey_extension_exists, verify_F_isomorphism)

__version__ = "0.1.0"

__all__ = [
    "RatMatrix", "FiniteCategory", "is_ei", "ufp_check", "FiniteGroup", "SubgroupFamily",
    "orbit_category", "parse_group", "CONTRAVARIANT", "COVARIANT", "CatModule", "ModuleMap",
    "ext_groups", "is_hereditary", "is_projective", "projective_resolution", "tor_groups",
    "FreeBasedComplex", "ModuleComplex", "bredon_homology", "chern_character", "is_derived_split",
    "kunneth_check", "dinfty_witness", "functor_I", "is_semisimple", "mackey_algebra",
    "mackey_extension_exists", "verify_F_isomorphism",
]
