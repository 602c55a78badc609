"""Hamiltonian-variational ansatz circuits for MaxCut, with a statevector simulator,
variational optimizer, classical baselines and barren-plateau diagnostics."""

from .analysis import (
    DepthScan,
    LightCone,
    VarianceScan,
    covariance_check,
    depth_bounds,
    depth_scan,
    fit_log_slope,
    lightcone_scan,
    variance_lower_bound,
    variance_scan,
)
from .arrangement import (
    ArrangedRound,
    OrientedTree,
    arrange_round,
    bfs_spanning_tree,
    greedy_edge_coloring,
    min_height_root,
    stagger_arrangement,
    tree_arrangement,
)
from .circuit import (
    Circuit,
    PauliRotation,
    backward_light_cone,
    build,
    build_equal_angle,
    build_ihva_stagger,
    build_ihva_tree,
    build_ma_qaoa,
    check_relevant_series,
    circuit_depth,
)
from .exceptions import (
    DisconnectedGraphError,
    GenerationError,
    GraphParseError,
    IhvaError,
    NumericalError,
    ParameterError,
    ResourceError,
)
from .graph import (
    Graph,
    assign_random_signs,
    complete_graph,
    erdos_renyi,
    heavy_hex_lattice,
    heavy_hex_patch,
    load_graph,
    path_graph,
    random_bipartite,
    random_regular,
    random_tree,
    ring_graph,
    star_graph,
)
from .oracle import CutSolution, brute_force_maxcut, ground_state_energy, gw_maxcut, greedy_maxcut
from .simulator import EnergyReport, adjoint_gradient, cvar, energy, gradient, run, sample
from .vqe import OptimizerConfig, RunResult, approximation_ratio, minimize, ratio_distribution

__version__ = "0.1.0"
