"""Acceptance suite: one test per criterion, each printing a pass line.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion lines.
"""

import itertools
import random

import pytest

from ehrenfeucht.backforth import SigmaSolver, n_equivalent
from ehrenfeucht.cli import main
from ehrenfeucht.fo import distinguishing_sentence, evaluate, hintikka_formula, quantifier_rank
from ehrenfeucht.game import (
    GameSolver,
    Player,
    apply_move,
    initial_position,
    is_terminal,
    legal_moves,
    winner_if_terminal,
)
from ehrenfeucht.structures import PartialMap, parse_structure, serialize_structure

from oracles import (
    binary_structures_up_to_iso,
    linear_order,
    naive_game_winner,
    naive_sigma,
    random_binary_structure,
)


@pytest.fixture(scope="module")
def small_reps():
    reps = []
    for size in (1, 2, 3):
        reps.extend(binary_structures_up_to_iso(size))
    return reps


def game_winner_is_duplicator(a, b, n) -> bool:
    solver = GameSolver(a, b)
    return solver.winner(initial_position(a, b, n)) is Player.DUPLICATOR


def test_c1_theorem_bridge(small_reps):
    checked = 0
    for a, b in itertools.combinations_with_replacement(small_reps, 2):
        sigma = SigmaSolver(a, b)
        solver = GameSolver(a, b)
        for n in range(5):
            eq = sigma.membership(PartialMap(), n)
            dup = solver.winner(initial_position(a, b, n)) is Player.DUPLICATOR
            assert eq == dup, (a.tables, b.tables, n)
            checked += 1
    rng = random.Random(20240817)
    for _ in range(500):
        a = random_binary_structure(rng, 4)
        b = random_binary_structure(rng, 4)
        sigma = SigmaSolver(a, b)
        solver = GameSolver(a, b)
        for n in range(5):
            eq = sigma.membership(PartialMap(), n)
            dup = solver.winner(initial_position(a, b, n)) is Player.DUPLICATOR
            assert eq == dup, (a.tables, b.tables, n)
            checked += 1
    print(f"PASS criterion 1: theorem bridge exact on {checked} instances")


def test_c2_oracle_equivalence(small_reps):
    checked = 0
    for a, b in itertools.combinations_with_replacement(small_reps, 2):
        solver = GameSolver(a, b)
        for n in range(4):
            memoized = solver.winner(initial_position(a, b, n)).value
            naive = naive_game_winner(a, b, (), None, n)
            assert memoized == naive, (a.tables, b.tables, n)
            checked += 1
    print(f"PASS criterion 2: memoized solver equals naive minimax on {checked} instances")


def test_c3_linear_order_thresholds():
    def threshold(m, k, n):
        return m == k or min(m, k) >= 2**n - 1

    # verify the derived benchmark formula against the naive oracle first
    for n in range(1, 3):
        for m in range(1, 5):
            for k in range(1, 5):
                assert naive_sigma(linear_order(m), linear_order(k), (), n) == threshold(
                    m, k, n
                ), ("oracle disagrees with threshold formula", m, k, n)
    orders = {m: linear_order(m) for m in range(1, 21)}
    for m in range(1, 21):
        for k in range(1, 21):
            solver = SigmaSolver(orders[m], orders[k])
            for n in range(1, 5):
                assert solver.membership(PartialMap(), n) == threshold(m, k, n), (m, k, n)
    print("PASS criterion 3: full 20x20 linear-order matrix matches thresholds for n=1..4")


def test_c4_hintikka_adequacy():
    rng = random.Random(20240818)
    for _ in range(200):
        a = random_binary_structure(rng, rng.randint(1, 4))
        b = random_binary_structure(rng, rng.randint(1, 4))
        n = rng.randint(0, 3)
        eq = n_equivalent(a, b, n)
        assert evaluate(b, hintikka_formula(a, (), n)) == eq
        phi = distinguishing_sentence(a, b, n)
        assert (phi is None) == eq
        if phi is not None:
            assert quantifier_rank(phi) <= n
            assert evaluate(a, phi)
            assert not evaluate(b, phi)
    print("PASS criterion 4: description satisfaction tracks equivalence; all witnesses sound")


def test_c5_equivalence_laws():
    rng = random.Random(20240819)
    for _ in range(200):
        a = random_binary_structure(rng, rng.randint(1, 4))
        b = random_binary_structure(rng, rng.randint(1, 4))
        c = random_binary_structure(rng, rng.randint(1, 4))
        n = rng.randint(0, 3)
        assert n_equivalent(a, a, n)
        ab = n_equivalent(a, b, n)
        assert ab == n_equivalent(b, a, n)
        if n_equivalent(a, b, n + 1):
            assert ab
        if ab and n_equivalent(b, c, n):
            assert n_equivalent(a, c, n)
    print("PASS criterion 5: reflexivity, symmetry, depth-monotonicity, transitivity on 200 triples")


def test_c6_engine_never_loses():
    rng = random.Random(20240820)
    for _ in range(500):
        a = random_binary_structure(rng, rng.randint(1, 4))
        b = random_binary_structure(rng, rng.randint(1, 4))
        n = rng.randint(1, 4)
        solver = GameSolver(a, b)
        p = initial_position(a, b, n)
        engine = solver.winner(p)
        while not is_terminal(p):
            mv = solver.best_move(p) if p.to_move is engine else rng.choice(legal_moves(p))
            p = apply_move(p, mv)
        assert winner_if_terminal(p) is engine
    print("PASS criterion 6: engine won all 500 playouts from winning positions")


RANK2_SENTENCE = (
    "(and (exists x1 (and (exists x2 (and (= x1 x2) (not (rel E x1 x1)) "
    "(not (rel E x1 x2)) (not (rel E x2 x1)) (not (rel E x2 x2)))) "
    "(forall x2 (and (= x1 x2) (not (rel E x1 x1)) (not (rel E x1 x2)) "
    "(not (rel E x2 x1)) (not (rel E x2 x2)))))) (forall x1 (and "
    "(exists x2 (and (= x1 x2) (not (rel E x1 x1)) (not (rel E x1 x2)) "
    "(not (rel E x2 x1)) (not (rel E x2 x2)))) (forall x2 (and (= x1 x2) "
    "(not (rel E x1 x1)) (not (rel E x1 x2)) (not (rel E x2 x1)) "
    "(not (rel E x2 x2)))))))"
)

L2_TEXT = "structure L2\nuniverse 2\nrelation E 2\n0 1\nend\n"


def test_c7_cli_contract_and_round_trip(data_dir, capsys):
    # exit-code ternary
    assert main(["check", str(data_dir / "L3.str"), str(data_dir / "L3.str"), "--rounds", "4"]) == 0
    capsys.readouterr()
    assert main(["check", str(data_dir / "L1.str"), str(data_dir / "L2.str"), "--rounds", "4"]) == 1
    capsys.readouterr()
    assert main(["check", str(data_dir / "L1.str"), str(data_dir / "unary.str"), "--rounds", "2"]) == 2
    capsys.readouterr()

    # byte-exact goldens
    code = main(["check", str(data_dir / "L1.str"), str(data_dir / "L2.str"), "--rounds", "2"])
    out = capsys.readouterr().out
    assert code == 1
    assert out == f"inequivalent at level 2\n{RANK2_SENTENCE}\n"

    code = main(["solve", str(data_dir / "L1.str"), str(data_dir / "L2.str"), "--rounds", "2"])
    out = capsys.readouterr().out
    assert code == 1
    assert out == (
        "winner: spoiler\n"
        "1. spoiler left 0, duplicator right 0\n"
        "2. spoiler right 1, duplicator left 0\n"
    )

    # structure-file round trip, byte-exact
    assert serialize_structure(parse_structure(L2_TEXT)) == L2_TEXT
    assert serialize_structure(parse_structure(serialize_structure(linear_order(4)))) == serialize_structure(linear_order(4))
    print("PASS criterion 7: CLI exit codes, goldens, and round-trip byte-exact")
