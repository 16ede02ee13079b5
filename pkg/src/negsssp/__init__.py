"""Single-source shortest paths with negative integer weights.

>>> from negsssp import Graph, sssp
>>> g = Graph.from_edges(3, [(0, 1, 2), (1, 2, -1), (0, 2, 5)])
>>> sssp(g, 0).dist.tolist()
[0, 2, 1]
"""
from .certificate import NegCycleCertificate, verify_cycle, verify_potential
from .decompose import DecomposeConfig, decompose, verify_progress
from .driver import RunBudget, ShortestPathTree, SolveStats, las_vegas_run, sssp, verify_tree
from .errors import (BudgetExceeded, ContractError, InternalError, LoadError, NegSSSPError,
                     ParseError, ScaleFailure)
from .generate import gen_random
from .graph import Graph, OpCounter, WeightView, dijkstra, reweight, scc
from .hybrid import bellman_ford_dijkstra
from .io import ResultRecord, emit_dimacs, parse_dimacs, read_dimacs, verify_record
from .oracle import oracle_bellman_ford
from .scale import ScaleConfig, build_decomposition_tree, fix_dag, scale

__all__ = [
    "BudgetExceeded", "ContractError", "DecomposeConfig", "Graph", "InternalError", "LoadError",
    "NegCycleCertificate", "NegSSSPError", "OpCounter", "ParseError", "ResultRecord", "RunBudget",
    "ScaleConfig", "ScaleFailure", "ShortestPathTree", "SolveStats", "WeightView",
    "bellman_ford_dijkstra", "build_decomposition_tree", "decompose", "dijkstra", "emit_dimacs",
    "fix_dag", "gen_random", "las_vegas_run", "oracle_bellman_ford", "parse_dimacs", "read_dimacs",
    "reweight", "scale", "scc", "sssp", "verify_cycle", "verify_potential", "verify_progress",
    "verify_record", "verify_tree",
]
