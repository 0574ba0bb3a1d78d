"""Super Yangians Y_{M|N}(sigma) over GF(p): PBW normal forms, parabolic Gauss
decompositions, structural maps, and mechanical verification of relation families."""

from .context import AlgebraContext, Composition, ContextError, check_composition, compositions, make_context
from .pbw import Element, generator, rtt_bracket, straighten, supercommutator
from .series import MatrixSeries, Series
from .gauss import GaussData, gauss_decompose
from .maps import MapDescriptor, apply_map, make_map
from .relations import REGISTRY, Checker, RunConfig, check_family, full_suite
from .dsl import evaluate

__version__ = "1.0.0"

__all__ = [
    "AlgebraContext", "Composition", "ContextError", "check_composition", "compositions", "make_context",
    "Element", "generator", "rtt_bracket", "straighten", "supercommutator",
    "Series", "MatrixSeries", "GaussData", "gauss_decompose",
    "MapDescriptor", "apply_map", "make_map",
    "REGISTRY", "Checker", "RunConfig", "check_family", "full_suite", "evaluate",
]
