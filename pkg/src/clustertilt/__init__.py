"""Cluster-tilted algebras from tilted algebras: relation-extensions, local
slices, reflections, transjective components and fibre quotients."""

from .artranslate import IsInjective, IsProjective, tau, tau_inverse
from .cover import Cover
from .errors import (CapExceeded, ClusterTiltError, DoesNotExist, NotASlice,
                     NotTreeType, ParseError, RadicalShapeUnexpected)
from .extension import cluster_duplicated, cluster_repetitive, relation_extension
from .modules import (Representation, injective, is_isomorphic, projective,
                      radical, simple)
from .quiver import BoundQuiver, format_bound_quiver, parse_bound_quiver, path_basis
from .slices import (admissible_sinks, completion, coreflect, reflect,
                     slice_from_modules, strong_sinks)
from .strip import (build_transjective, distance, distance_matrix,
                    enumerate_fibre_quotients)

__version__ = "0.1.0"

__all__ = [
    "BoundQuiver", "CapExceeded", "ClusterTiltError", "Cover", "DoesNotExist",
    "IsInjective", "IsProjective", "NotASlice", "NotTreeType", "ParseError",
    "RadicalShapeUnexpected", "Representation", "admissible_sinks",
    "build_transjective", "cluster_duplicated", "cluster_repetitive",
    "completion", "coreflect", "distance", "distance_matrix",
    "enumerate_fibre_quotients", "format_bound_quiver", "injective",
    "is_isomorphic", "parse_bound_quiver", "path_basis", "projective",
    "radical", "reflect", "relation_extension", "simple",
    "slice_from_modules", "strong_sinks", "tau", "tau_inverse",
]
