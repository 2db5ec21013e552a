"""The referee: drives one game from start to verdict.

The loop alternates full turns under the turn discipline (one Maker
claim then `bias` Breaker claims, or the reverse when Breaker opens),
asking each strategy for a move and validating it against the state.
Play stops on the first Maker witness, on board exhaustion, or when
Maker has used her move budget.  The verdict is winner-so-far: Maker
won iff her claims satisfy the goal at the moment play stops.

All randomness for a game derives from one seed value: each side gets
its own stream keyed by role, so a strategy consuming extra draws
cannot perturb its opponent.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any

from .game import (
    BREAKER,
    MAKER,
    GameState,
    Goal,
    IllegalMove,
    Schedule,
    Witness,
    check_goal_fits_board,
    witness_after_claim,
)
from .boards import Board
from .strategies.base import Exhausted, Strategy
from .transcript import Transcript

RESULT_MAKER = "maker"
RESULT_BREAKER = "breaker"
RESULT_BUDGET = "budget"


@dataclass
class GameOutcome:
    result: str
    reason: str
    witness: Witness | None
    state: GameState
    transcript: Transcript
    summary: dict[str, Any]


def role_rng(seed: Any, role: str) -> random.Random:
    """Per-role stream; string-keyed seeding is stable across platforms."""
    name = "maker" if role == MAKER else "breaker"
    return random.Random(f"{seed}/{name}")


def run_game(
    board: Board,
    goal: Goal,
    maker: Strategy,
    breaker: Strategy,
    *,
    budget: int,
    seed: Any = 0,
    bias: int = 1,
    breaker_first: bool = False,
    schedule: Schedule | None = None,
    forfeit_on_illegal: bool = False,
) -> GameOutcome:
    """Play one game to its verdict.

    `budget` counts Maker moves.  With `forfeit_on_illegal` an illegal
    strategy move loses the game for the offender instead of raising;
    tests want the exception, tournaments want the verdict.
    """
    if budget < 1:
        raise ValueError(f"budget must be at least 1, got {budget}")
    check_goal_fits_board(goal, board)
    state = GameState(board, bias=bias, breaker_first=breaker_first, schedule=schedule)
    rngs = {MAKER: role_rng(seed, MAKER), BREAKER: role_rng(seed, BREAKER)}
    strategies = {MAKER: maker, BREAKER: breaker}

    result: str | None = None
    reason = ""
    witness: Witness | None = None

    def play_one(role: str) -> str | None:
        """One claim by `role`; returns a verdict string or None."""
        nonlocal witness, reason
        if state.exhausted():
            reason = "exhausted"
            return RESULT_BREAKER
        strategy = strategies[role]
        try:
            edge = strategy.next_move(state, role, rngs[role])
        except Exhausted:
            reason = "exhausted"
            return RESULT_BREAKER
        try:
            state.claim(role, edge)
        except IllegalMove:
            if not forfeit_on_illegal:
                raise
            reason = f"illegal-{'maker' if role == MAKER else 'breaker'}"
            return RESULT_BREAKER if role == MAKER else RESULT_MAKER
        witness = witness_after_claim(state, goal, edge, role)
        if witness is not None:
            reason = "goal"
            return RESULT_MAKER
        return None

    while result is None:
        if state.maker_moves >= budget:
            result = RESULT_BUDGET
            reason = "budget"
            break
        order = [BREAKER] * bias + [MAKER] if breaker_first else [MAKER] + [BREAKER] * bias
        for role in order:
            result = play_one(role)
            if result is not None:
                break

    extras: dict[str, Any] = {}
    for role, label in ((MAKER, "maker"), (BREAKER, "breaker")):
        extras.update(strategies[role].transcript_extras())
        diag = strategies[role].diagnostics()
        if diag:
            extras.setdefault("diagnostics", {})[label] = diag

    transcript = Transcript.from_game(
        state,
        goal,
        seed=seed,
        strategies={"maker": maker.spec, "breaker": breaker.spec},
        result=result,
        witness=witness,
        extras=extras,
    )
    summary = transcript.summary()
    summary["reason"] = reason
    return GameOutcome(
        result=result,
        reason=reason,
        witness=witness,
        state=state,
        transcript=transcript,
        summary=summary,
    )
