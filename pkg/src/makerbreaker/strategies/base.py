"""The strategy contract and the canonical fallback move.

A strategy is a single-game object: the referee (or the session service)
creates a fresh instance per game, then calls next_move once per claim the
strategy owes.  Strategies read everything they need from the GameState,
including opponent moves since their last call (via the history), so there
is no separate observation hook.  Determinism contract: the returned edge is
a function of (history, rng state) only.
"""

from __future__ import annotations

import random

from ..boards import Edge
from ..game import GameState


class Exhausted(RuntimeError):
    """No unclaimed edge exists; only finite boards can raise this."""


class Strategy:
    """Base class; subclasses implement next_move and may expose diagnostics."""

    # Canonical spec string, as accepted by the CLI and recorded in
    # transcript headers; set by the factory that built the instance.
    spec: str = ""

    def next_move(self, state: GameState, role: str, rng: random.Random) -> Edge:
        raise NotImplementedError

    def diagnostics(self) -> dict:
        """Strategy-specific counters for summaries and sweep rows."""
        return {}

    def transcript_extras(self) -> dict:
        """Structured records to append to the transcript's final line.

        Keys land at the top level next to the result, so implementers
        should pick names that cannot collide with it ("phases",
        "tree").
        """
        return {}


def fallback_move(state: GameState) -> Edge:
    """The canonically smallest unclaimed edge on the board."""
    edge = state.smallest_unclaimed_edge()
    if edge is None:
        raise Exhausted("no unclaimed edges remain")
    return edge
