"""Exact color representations of Ising models on small graphs."""
from .closedform import k3_closed_form, k3_limit_vs_rcm, k4_polynomial, k5_polynomial, region_scan
from .colorop import build_A, build_Adoubleprime, build_Aprime, exact_rank, formal_solution, phi_p, second_representation
from .errors import (
    ColorRepError,
    InconsistentSystemError,
    NoSecondRepresentationError,
    NotInvariantError,
    SingularParameterError,
    SizeLimitError,
    ValidationError,
)
from .graphs import Graph, complete_graph, cycle_graph, path_graph
from .ising import ModelParams, SpinMeasure, ising_measure, marginal_p
from .partitions import SetPartition, enumerate_partitions
from .rcm import PartitionMeasure, coupling_check, rcm_measure
from .solver import has_color_representation, solution_set_dimension, symmetry_reduce

__version__ = "0.1.0"
