"""Maker-Breaker game engine on finite and lazily generated boards.

The package plays biased Maker-Breaker games whose vertex labels are
ordinals, implements the tree-growing and phased bipartite Maker strategies
and the catalogue Breaker strategy along with the matching two-colouring
construction, and ships an exhaustive oracle, a CLI harness, and a small
HTTP session service for interactive play.
"""

from .ordinals import Ordinal, OMEGA, ZERO, from_int
from .boards import (
    Vertex,
    Edge,
    make_edge,
    CompleteBoard,
    LazyCompleteBoard,
    BipartiteBoard,
    LazyBipartiteBoard,
)
from .game import (
    MAKER,
    BREAKER,
    GameState,
    Schedule,
    CliqueGoal,
    BicliqueGoal,
    ClubGoal,
    IllegalMove,
)
from .referee import run_game, GameOutcome

__all__ = [
    "Ordinal",
    "OMEGA",
    "ZERO",
    "from_int",
    "Vertex",
    "Edge",
    "make_edge",
    "CompleteBoard",
    "LazyCompleteBoard",
    "BipartiteBoard",
    "LazyBipartiteBoard",
    "MAKER",
    "BREAKER",
    "GameState",
    "Schedule",
    "CliqueGoal",
    "BicliqueGoal",
    "ClubGoal",
    "IllegalMove",
    "run_game",
    "GameOutcome",
]
