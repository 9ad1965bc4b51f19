"""Exact computations in the symmetric inverse semigroup: partial
bijections, their metrics and topologies, convergence of sequences, and
the projection from permutations of a larger set."""

from .dyadic import Dyadic
from .metrics import MetricKind, NotCauchy, cauchy_limit, d_metric, distance, eta, rho, rho_star
from .pbij import (
    NATURALS,
    UNDEFINED,
    Finite,
    GroundSet,
    IdentityTail,
    PartialBijection,
    Permutation,
    Subset,
    compose,
    empty_map,
    enumerate_all,
    identity,
    idempotent_on,
    parse_partial,
    restricts,
)
from .sequences import Constant, Generator, Lin, Schedule, Segment, SequenceSpec
from .topology import Atom, Basic, Expr, TopologyKind, U, V, W1, W2, member

__version__ = "0.1.0"

__all__ = [
    "Atom", "Basic", "Constant", "Dyadic", "Expr", "Finite", "Generator", "GroundSet",
    "IdentityTail", "Lin", "MetricKind", "NATURALS", "NotCauchy", "PartialBijection",
    "Permutation", "Schedule", "Segment", "SequenceSpec", "Subset", "TopologyKind", "U",
    "UNDEFINED", "V", "W1", "W2", "cauchy_limit", "compose", "d_metric", "distance",
    "empty_map", "enumerate_all", "eta", "identity", "idempotent_on", "member",
    "parse_partial", "restricts", "rho", "rho_star",
]
