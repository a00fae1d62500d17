"""The round-based matching game: positions, legal moves, memoized optimal play,
and strategy extraction."""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Optional

from .structures import PartialMap, Structure, check_signatures, is_partial_isomorphism


class GameError(Exception):
    pass


class IllegalMoveError(GameError):
    pass


class TerminalPositionError(GameError):
    pass


class Player(enum.Enum):
    SPOILER = "spoiler"
    DUPLICATOR = "duplicator"

    def opponent(self) -> "Player":
        return Player.DUPLICATOR if self is Player.SPOILER else Player.SPOILER


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    def opposite(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


@dataclass(frozen=True)
class Move:
    side: Side
    element: int


@dataclass(frozen=True)
class GamePosition:
    a: Structure
    b: Structure
    rounds_total: int
    history: PartialMap = PartialMap()
    pending: Optional[Move] = None

    @property
    def rounds_done(self) -> int:
        return len(self.history)

    @property
    def to_move(self) -> Player:
        return Player.DUPLICATOR if self.pending is not None else Player.SPOILER


@dataclass(frozen=True)
class GameOutcome:
    winner: Player
    principal_variation: tuple[Move, ...]


def initial_position(a: Structure, b: Structure, rounds: int) -> GamePosition:
    check_signatures(a, b)
    if rounds < 0:
        raise GameError("round count must be nonnegative")
    return GamePosition(a=a, b=b, rounds_total=rounds)


def winner_if_terminal(p: GamePosition) -> Optional[Player]:
    """Winner at a terminal position, or None if the game continues.

    A functionality/injectivity violation in the completed pairs ends the game at
    once in the challenger's favor; otherwise play runs all rounds and the final
    map is judged as a partial isomorphism.
    """
    if not p.history.is_function_and_injective():
        return Player.SPOILER
    if p.pending is None and p.rounds_done >= p.rounds_total:
        return (
            Player.DUPLICATOR
            if is_partial_isomorphism(p.a, p.b, p.history)
            else Player.SPOILER
        )
    return None


def is_terminal(p: GamePosition) -> bool:
    return winner_if_terminal(p) is not None


def legal_moves(p: GamePosition) -> list[Move]:
    """Left before Right, elements ascending."""
    if is_terminal(p):
        raise TerminalPositionError("no legal moves at a terminal position")
    if p.pending is None:
        return [Move(Side.LEFT, e) for e in p.a.elements()] + [
            Move(Side.RIGHT, e) for e in p.b.elements()
        ]
    side = p.pending.side.opposite()
    struct = p.a if side is Side.LEFT else p.b
    return [Move(side, e) for e in struct.elements()]


def apply_move(p: GamePosition, mv: Move) -> GamePosition:
    if is_terminal(p):
        raise TerminalPositionError("game is over")
    struct = p.a if mv.side is Side.LEFT else p.b
    if not 0 <= mv.element < struct.size:
        raise IllegalMoveError(f"element {mv.element} out of range for {mv.side.value}")
    if p.pending is None:
        return replace(p, pending=mv)
    if mv.side is not p.pending.side.opposite():
        raise IllegalMoveError("reply must be in the other structure")
    if p.pending.side is Side.LEFT:
        pair = (p.pending.element, mv.element)
    else:
        pair = (mv.element, p.pending.element)
    return replace(p, history=p.history.extend(*pair), pending=None)


class GameSolver:
    """Memoized minimax for a fixed pair of structures.

    Positions are canonicalized to (sorted pair set, pending move, rounds
    remaining); pick order within the history never changes the game value
    (asserted against the unmemoized oracle in tests).
    """

    def __init__(self, a: Structure, b: Structure):
        check_signatures(a, b)
        self.a = a
        self.b = b
        # key -> (winner, rounds-to-decision, best move or None)
        self._memo: dict[tuple, tuple[Player, int, Optional[Move]]] = {}

    def _key(self, p: GamePosition) -> tuple:
        rem = p.rounds_total - p.rounds_done
        return (tuple(sorted(p.history.pair_set())), p.pending, rem)

    def _value(self, p: GamePosition) -> tuple[Player, int, Optional[Move]]:
        terminal = winner_if_terminal(p)
        if terminal is not None:
            return (terminal, 0, None)
        key = self._key(p)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        mover = p.to_move
        moves = legal_moves(p)
        completes_round = mover is Player.DUPLICATOR
        best: Optional[tuple[Player, int, Move]] = None
        for mv in moves:
            child_winner, child_depth, _ = self._value(apply_move(p, mv))
            depth = child_depth + (1 if completes_round else 0)
            if child_winner is mover:
                best = (mover, depth, mv)
                break
            # losing move: Duplicator drags the decision out, Spoiler hastens it
            if best is None or (
                depth > best[1] if mover is Player.DUPLICATOR else depth < best[1]
            ):
                best = (child_winner, depth, mv)
        assert best is not None
        result = (best[0], best[1], best[2])
        self._memo[key] = result
        return result

    def winner(self, p: GamePosition) -> Player:
        return self._value(p)[0]

    def best_move(self, p: GamePosition) -> Move:
        if is_terminal(p):
            raise TerminalPositionError("no move at a terminal position")
        mv = self._value(p)[2]
        assert mv is not None
        return mv

    def solve(self, p: GamePosition) -> GameOutcome:
        winner = self.winner(p)
        pv: list[Move] = []
        cur = p
        while not is_terminal(cur):
            mv = self.best_move(cur)
            pv.append(mv)
            cur = apply_move(cur, mv)
        return GameOutcome(winner=winner, principal_variation=tuple(pv))


def solve(p: GamePosition) -> GameOutcome:
    return GameSolver(p.a, p.b).solve(p)


def best_move(p: GamePosition) -> Move:
    return GameSolver(p.a, p.b).best_move(p)
