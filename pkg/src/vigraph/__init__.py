"""Graph algorithms driven by a small vertex separator."""

from .apsp import DistanceMatrix, apsp, apsp_bounded_diameter, min_plus, nice_partition
from .cycles import CycleReport, even_girth, find_cycle_of_length, find_triangle, girth
from .decomposition import (
    SeparatorDecomposition,
    build_decomposition,
    exact_vertex_integrity,
    greedy_separator,
    validate_separator,
)
from .errors import InputError, InternalError, PreconditionError, ProbabilisticFailure, SingularMatrixError
from .gf import FieldSpec, field_for_size
from .graph import Graph, PlantedInstance, generate_planted
from .matching import Matching, TutteInstance, find_perfect_matching, has_perfect_matching, max_matching, tutte_rank
from .subgraph4 import count_mod, detect_clique, detect_independent_set, detect_induced, find_induced

__version__ = "0.1.0"
