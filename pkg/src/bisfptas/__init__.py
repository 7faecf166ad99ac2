"""Approximate and exact counting of independent sets in bipartite graphs.

The approximate counter is a deterministic depth-bounded recursion that
carries a (1 +- epsilon) guarantee whenever one side of the graph has
maximum degree at most 5.
"""

from .decay import ALPHA, M, DecayParams, DecayReport, KappaPoint, verify_claims
from .errors import (BISError, DegreeTooLarge, DomainError, DuplicateEdge, IndexOutOfRange,
                     InvalidEpsilon, InvalidParams, NodeBudgetExceeded, ParseError, RemovedVertex,
                     SideMismatch, TooLarge, VerificationFailure)
from .exact import ExactRatio, exact_count, exact_count_via_ratios, exact_ratio
from .fptas import (LogCount, RecursionStats, count_with_depth, count_with_epsilon,
                    depth_for_epsilon, estimate_log_count, estimate_ratio, full_depth)
from .graph import (BipartiteGraph, ResidualView, Side, VertexRef, build, left, max_degrees,
                    orient, right)
from .io import gen_complete, gen_cycle, gen_path, gen_random, parse, serialize

__version__ = "0.1.0"
