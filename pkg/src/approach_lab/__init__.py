"""Exact quantitative domain theory on finite and canonical generalized metric spaces.

The submodules are layered: :mod:`costs` (values in ``[0, inf]``),
:mod:`spaces`, :mod:`weights`, :mod:`approach`, :mod:`balls`,
:mod:`algebraic`, and :mod:`harness` (random battery).  The most used
names are re-exported here.
"""

from __future__ import annotations

from .algebraic import AlgebraicSpec, gn_case_study, power_sigma_check, scott_distance_algebraic
from .approach import ApproachTable, TopologySpec, alexandroff, check_approach_axioms, coreflection, scott_distance_finite
from .balls import BallChain, FormalBall, ball_leq, chain_join, topologies
from .costs import INF, ZERO, add, ext, fmt, tminus
from .harness import TrialConfig, replay, run_battery, search_counterexample
from .spaces import CanonicalSpace, FiniteNet, FiniteSpace, check_metric_axioms, yoneda_limits
from .weights import colimits, is_cauchy, is_flat, is_scott_weight, weight, yoneda_embed

__version__ = "0.1.0"

__all__ = [
    "INF", "ZERO", "ext", "add", "tminus", "fmt",
    "FiniteSpace", "CanonicalSpace", "FiniteNet", "check_metric_axioms", "yoneda_limits",
    "weight", "yoneda_embed", "is_flat", "is_cauchy", "is_scott_weight", "colimits",
    "ApproachTable", "TopologySpec", "alexandroff", "scott_distance_finite", "check_approach_axioms", "coreflection",
    "FormalBall", "BallChain", "ball_leq", "chain_join", "topologies",
    "AlgebraicSpec", "scott_distance_algebraic", "power_sigma_check", "gn_case_study",
    "TrialConfig", "run_battery", "replay", "search_counterexample",
]
