"""Exact analysis of network creation games where an adversary deletes one
uniformly random edge instance.

Everything is computed with ``fractions.Fraction``; unreachable or
disconnected outcomes cost ``math.inf``.
"""

from .cost import (GameConfig, Model, agent_cost, agent_costs, expected_distance_cost,
                   expected_distance_cost_naive, social_cost)
from .dynamics import (BudgetExhausted, Converged, CycleDetected, DynamicsRun, Inconclusive,
                       NoNEReachable, ReachesNE, probe_weak_acyclicity, run_dynamics)
from .errors import (AdvNCGError, BudgetExceededError, InvalidGraphError, ParseError,
                     PreconditionError)
from .extcost import INF, format_decimal, format_exact, parse_alpha
from .families import FamilySpec, build_family, optimum_bruteforce
from .graph import Edge, OwnedMultiGraph, canonical_key, parse_graph, read_graph, write_graph
from .moves import Buy, Delete, MultiSwap, Replace, Swap, best_response_exact, is_nash_equilibrium

__version__ = "0.1.0"
