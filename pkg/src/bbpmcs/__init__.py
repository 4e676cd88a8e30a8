"""Block-and-bridge preserving maximum common subgraphs of trees and outerplanar graphs."""

from .bench import BoundEvaluation, GrowthFit, InstrumentationLog, census, census_star, evaluate_bounds, fit_growth
from .blocks import BCDecomposition, OuterplanarityResult, decompose_bc, is_outerplanar
from .errors import (
    BBPError,
    BlockTooLarge,
    CorpusTooLarge,
    DanglingEdge,
    Disconnected,
    DuplicateEdge,
    DuplicateVertex,
    IndexOutOfRange,
    NotATree,
    NotOuterplanar,
    ParseError,
    SelfLoop,
    TooLarge,
    UnknownLabel,
)
from .generators import gen_path, gen_random_connected, gen_random_outerplanar, gen_random_tree, gen_star
from .graph import (
    DEFAULT_WEIGHTS,
    LabeledGraph,
    RootedGraph,
    WeightScheme,
    graph_weight,
    load_fixture,
    parse_graph,
    parse_weights,
    read_graph,
    read_weights,
    serialize_graph,
)
from .matching import (
    MatchingInstance,
    MatchingSolution,
    SolveLog,
    solve_bruteforce,
    solve_family,
    solve_hungarian,
)
from .mcs import McsResult, Mode, Solver, check_bbp, mcs_bbp, mcs_tree
from .metric import DistanceReport, McsDistance, MetricAudit, audit_metric, distance
from .oracle import mcs_oracle
from .parts import PartCatalog, RootedPart, compound_pairs, deletion_family, parts, parts_star

__version__ = "0.1.0"
