"""Toolkit for deciding bounded-depth equivalence of finite relational
structures, by back-and-forth refinement and by the round-based matching game,
with distinguishing-sentence synthesis and interactive play."""

from .structures import (
    ParseError,
    PartialMap,
    Signature,
    SignatureMismatchError,
    Structure,
    StructureError,
    induced_substructure,
    is_partial_isomorphism,
    parse_structure,
    serialize_structure,
)
from .fo import (
    Formula,
    distinguishing_sentence,
    evaluate,
    hintikka_formula,
    quantifier_rank,
    to_text,
)
from .backforth import SigmaQuery, SigmaSolver, n_equivalent, separation_level, sigma_membership
from .game import (
    GameOutcome,
    GamePosition,
    GameSolver,
    Move,
    Player,
    Side,
    apply_move,
    best_move,
    initial_position,
    legal_moves,
    solve,
)

__all__ = [
    "ParseError",
    "PartialMap",
    "Signature",
    "SignatureMismatchError",
    "Structure",
    "StructureError",
    "induced_substructure",
    "is_partial_isomorphism",
    "parse_structure",
    "serialize_structure",
    "Formula",
    "distinguishing_sentence",
    "evaluate",
    "hintikka_formula",
    "quantifier_rank",
    "to_text",
    "SigmaQuery",
    "SigmaSolver",
    "n_equivalent",
    "separation_level",
    "sigma_membership",
    "GameOutcome",
    "GamePosition",
    "GameSolver",
    "Move",
    "Player",
    "Side",
    "apply_move",
    "best_move",
    "initial_position",
    "legal_moves",
    "solve",
]

__version__ = "0.1.0"
