"""Ghost-lemma certificates and level bounds for perfect complexes over F_p[x_0..x_{n-1}]."""

from .complexes import (ChainMap, FreeComplex, cone, find_nullhomotopy, graded_hom,
                        hom_complex, homology, is_nullhomotopic, minimize, shift)
from .errors import (CertificateFailure, CompositionZero, InternalError, InvalidInput,
                     NotGhost, PreconditionFailed, UnsupportedGenerator)
from .groebner import FreeMap, groebner_basis, lift_membership, module_groebner, normal_form, syzygies
from .koszul import auto_exponents, build_tower, epsilon_map, ghost_factor, koszul_object
from .level import (BuildPlan, GhostCertificate, ghost_certificate, is_ghost, level_upper_bound,
                    rdim_report, replay_certificate, verify_depth_leq_gentime)
from .modules import (GradedModule, IdealGens, ModulePresentation, depth, is_regular_sequence,
                      koszul_homology, torsion_exponent, torsion_submodule)
from .poly import AlgebraElement, Poly, RingSpec, parse_ring

__all__ = [
    "AlgebraElement", "BuildPlan", "CertificateFailure", "ChainMap", "CompositionZero",
    "FreeComplex", "FreeMap", "GhostCertificate", "GradedModule", "IdealGens", "InternalError",
    "InvalidInput", "ModulePresentation", "NotGhost", "Poly", "PreconditionFailed", "RingSpec",
    "UnsupportedGenerator", "auto_exponents", "build_tower", "cone", "depth", "epsilon_map",
    "find_nullhomotopy", "ghost_certificate", "ghost_factor", "graded_hom", "groebner_basis",
    "hom_complex", "homology", "is_ghost", "is_nullhomotopic", "is_regular_sequence",
    "koszul_homology", "koszul_object", "level_upper_bound", "lift_membership", "minimize",
    "module_groebner", "normal_form", "parse_ring", "rdim_report", "replay_certificate", "shift",
    "syzygies", "torsion_exponent", "torsion_submodule", "verify_depth_leq_gentime",
]
