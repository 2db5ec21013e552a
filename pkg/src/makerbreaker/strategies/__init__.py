from .base import Strategy, Exhausted, fallback_move
from .basic import (
    FallbackStrategy,
    FarFallbackStrategy,
    GoalSeekerStrategy,
    GreedyBlockerStrategy,
    OraclePolicyStrategy,
    RandomStrategy,
    ScriptedStrategy,
)
from .steal import StealingStrategy
from .restrict import (
    Embedding,
    RestrictedStrategy,
    bipartite_to_complete,
    identity_embedding,
)

__all__ = [
    "Strategy",
    "Exhausted",
    "fallback_move",
    "FallbackStrategy",
    "FarFallbackStrategy",
    "GoalSeekerStrategy",
    "GreedyBlockerStrategy",
    "OraclePolicyStrategy",
    "RandomStrategy",
    "ScriptedStrategy",
    "StealingStrategy",
    "Embedding",
    "RestrictedStrategy",
    "bipartite_to_complete",
    "identity_embedding",
]
