"""Exact computations with affine roots, Moy-Prasad abelianisations and epipelagic data."""

from .abelianization import Functional, SxEntry, VxSpace, compute_sx, support
from .affine import (ADJOINT, SIMPLY_CONNECTED, AffineRoot, BuildingPoint, IwahoriWeylElement,
                     KacCoords, act, alcove_stabilizer, delta_x, facet_barycentres,
                     kac_to_point, parse_kac, root)
from .chevalley import c_constant, commutator_expansion, m_constant, structure_constant
from .depth import DepthResult, depth_report, min_depth, profile_depth, rx
from .errors import (EpikitError, InvalidInput, NonCompact, NotABarycentre, Unstable,
                     Unsupported)
from .intertwine import enumerate_candidates, filter_support, filter_zeros, intertwiners
from .rootsys import RootSystem, WeylElement, root_system, weyl_group
from .stability import (ConeCertificate, SupportProfile, is_cone_trivial, is_fq_stable,
                        positive_affine_relation)

__all__ = [
    "Functional", "SxEntry", "VxSpace", "compute_sx", "support",
    "ADJOINT", "SIMPLY_CONNECTED", "AffineRoot", "BuildingPoint", "IwahoriWeylElement",
    "KacCoords", "act", "alcove_stabilizer", "delta_x", "facet_barycentres",
    "kac_to_point", "parse_kac", "root",
    "c_constant", "commutator_expansion", "m_constant", "structure_constant",
    "DepthResult", "depth_report", "min_depth", "profile_depth", "rx",
    "EpikitError", "InvalidInput", "NonCompact", "NotABarycentre", "Unstable", "Unsupported",
    "enumerate_candidates", "filter_support", "filter_zeros", "intertwiners",
    "RootSystem", "WeylElement", "root_system", "weyl_group",
    "ConeCertificate", "SupportProfile", "is_cone_trivial", "is_fq_stable",
    "positive_affine_relation",
]
