"""Command-line front door: check, solve, distinguish, play, serve."""

from __future__ import annotations

import argparse
import socket
import sys
from pathlib import Path
from typing import Optional

from . import backforth, fo, game
from .structures import ParseError, SignatureMismatchError, Structure, StructureError, parse_structure

EXIT_EQUIVALENT = 0   # equivalent / Duplicator wins
EXIT_SEPARATED = 1    # inequivalent / Spoiler wins
EXIT_ERROR = 2        # usage or input error


def _load(path: str) -> Structure:
    try:
        return parse_structure(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise CliError(f"{path}: {e.strerror or e}") from None
    except (ParseError, StructureError) as e:
        raise CliError(f"{path}: {e}") from None


class CliError(Exception):
    pass


def _load_pair(args) -> tuple[Structure, Structure]:
    a = _load(args.file_a)
    b = _load(args.file_b)
    if a.sig != b.sig:
        raise CliError("signature mismatch between the two structures")
    return a, b


def cmd_check(args) -> int:
    a, b = _load_pair(args)
    if backforth.n_equivalent(a, b, args.rounds):
        print("equivalent")
        return EXIT_EQUIVALENT
    level = backforth.separation_level(a, b, args.rounds)
    print(f"inequivalent at level {level}")
    witness = fo.distinguishing_sentence(a, b, args.rounds)
    if witness is not None:
        print(fo.to_text(witness))
    return EXIT_SEPARATED


def cmd_solve(args) -> int:
    a, b = _load_pair(args)
    outcome = game.solve(game.initial_position(a, b, args.rounds))
    print(f"winner: {outcome.winner.value}")
    pv = outcome.principal_variation
    for k in range(0, len(pv), 2):
        pick = f"{k // 2 + 1}. spoiler {pv[k].side.value} {pv[k].element}"
        if k + 1 < len(pv):
            pick += f", duplicator {pv[k + 1].side.value} {pv[k + 1].element}"
        print(pick)
    return EXIT_EQUIVALENT if outcome.winner is game.Player.DUPLICATOR else EXIT_SEPARATED


def cmd_distinguish(args) -> int:
    a, b = _load_pair(args)
    witness = fo.distinguishing_sentence(a, b, args.rounds)
    if witness is None:
        return EXIT_EQUIVALENT
    print(fo.to_text(witness))
    return EXIT_SEPARATED


def _parse_human_move(line: str) -> Optional[game.Move]:
    tokens = line.split()
    if len(tokens) != 2 or tokens[0] not in ("left", "right"):
        return None
    try:
        element = int(tokens[1])
    except ValueError:
        return None
    return game.Move(game.Side(tokens[0]), element)


def cmd_play(args) -> int:
    a, b = _load_pair(args)
    human = game.Player(args.role)
    engine = human.opponent()
    solver = game.GameSolver(a, b)
    pos = game.initial_position(a, b, args.rounds)
    print(f"left: {a.name} (size {a.size})   right: {b.name} (size {b.size})")
    print(f"you are {human.value}; {args.rounds} rounds")
    while True:
        winner = game.winner_if_terminal(pos)
        if winner is not None:
            print(f"winner: {winner.value}")
            if winner is game.Player.SPOILER:
                witness = fo.distinguishing_sentence(a, b, args.rounds)
                if witness is not None:
                    print(f"distinguishing sentence: {fo.to_text(witness)}")
            return EXIT_EQUIVALENT if winner is game.Player.DUPLICATOR else EXIT_SEPARATED
        if pos.to_move is engine:
            mv = solver.best_move(pos)
            print(f"engine ({engine.value}) plays: {mv.side.value} {mv.element}")
            pos = game.apply_move(pos, mv)
            continue
        round_no = pos.rounds_done + 1
        try:
            line = input(f"round {round_no}, your move ({human.value})> ")
        except EOFError:
            print("aborted", file=sys.stderr)
            return EXIT_ERROR
        mv = _parse_human_move(line)
        if mv is None:
            print("enter a move like 'left 0' or 'right 2'")
            continue
        if mv not in game.legal_moves(pos):
            print("illegal move; pick an in-range element" + (
                f" in the {pos.pending.side.opposite().value} structure" if pos.pending else ""
            ))
            continue
        pos = game.apply_move(pos, mv)


def cmd_serve(args) -> int:
    from uvicorn import Config, Server

    from .server import create_app

    static_dir = args.static_dir
    if static_dir is not None and not Path(static_dir).is_dir():
        raise CliError(f"static directory not found: {static_dir}")
    app = create_app(
        max_size=args.max_size,
        max_rounds=args.max_rounds,
        ttl_secs=args.ttl_secs,
        static_dir=static_dir,
    )
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((args.host, args.port))
    except OSError as e:
        sock.close()
        raise CliError(f"cannot bind {args.host}:{args.port}: {e.strerror or e}") from None
    sock.listen(128)
    port = sock.getsockname()[1]
    print(f"serving on port {port}", flush=True)
    server = Server(Config(app=app, log_level="warning"))
    server.run(sockets=[sock])
    return EXIT_EQUIVALENT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="efgames",
        description="Decide bounded-depth equivalence of finite relational structures "
        "and play the round-based matching game against an optimal engine.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_pair(p):
        p.add_argument("file_a", help="structure file for the left structure")
        p.add_argument("file_b", help="structure file for the right structure")
        p.add_argument("--rounds", type=int, required=True, help="number of rounds n")

    p = sub.add_parser("check", help="decide n-equivalence; print a distinguishing sentence if any")
    add_pair(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="solve the n-round game and print the principal variation")
    add_pair(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("distinguish", help="print only the distinguishing sentence, if any")
    add_pair(p)
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("play", help="play the n-round game against the engine in the terminal")
    add_pair(p)
    p.add_argument("--role", choices=["spoiler", "duplicator"], required=True)
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("serve", help="run the HTTP API (and web UI, if built)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--max-size", type=int, default=12, help="largest structure accepted by the API")
    p.add_argument("--max-rounds", type=int, default=6)
    p.add_argument("--ttl-secs", type=float, default=3600.0)
    p.add_argument("--static-dir", default=None, help="directory of built web UI assets")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_EQUIVALENT
    if getattr(args, "rounds", 1) < 0:
        print("error: --rounds must be nonnegative", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except SignatureMismatchError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
