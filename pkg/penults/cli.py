"""Command-line entry point: penults <command> [flags]. JSON goes to stdout, logs to stderr."""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, List, Optional

from sqlalchemy.exc import SQLAlchemyError

from penults import crud
from penults.bounds import snake_upper_bound, tak_lower_bound, tak_lower_bound_as_stated
from penults.config import get_settings
from penults.constructions import Family, construct
from penults.database import SessionLocal
from penults.enumeration import enumerate_penults, spectrum, spectrum_report
from penults.errors import BudgetExceeded, ConstructionFailed
from penults.games import Classification, classify
from penults.grid import Game, token_count
from penults.rendering import FORMATS, board_to_json, parse_board, render
from penults.schemas import BoardJSON
from penults.solver import mate_in, outcome_table, solve
from penults.strategy import MirrorAxis, MirrorStrategy, Role, WinsAll, validate_strategy

logger = logging.getLogger("penults")

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INVALID = 2

AUX_GAMES = ("subtract123", "nim", "wythoff")


def configure_logging(level: int) -> None:
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _emit(payload: dict, out: Optional[str] = None) -> None:
    text = json.dumps(payload, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _read_input(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


# --------------------
# Results cache
# --------------------

def _cached(args, command: str, game: str, n: int, flags: dict, compute: Callable[[], dict]) -> dict:
    """Look the result up in the cache first; any database trouble just means computing it."""
    settings = get_settings()
    if args.no_cache or not settings.PENULT_CACHE_ENABLED:
        return compute()
    try:
        db = SessionLocal()
    except (SQLAlchemyError, OSError) as exc:
        logger.warning("results cache unavailable: %s", exc)
        return compute()
    try:
        try:
            hit = crud.get_cached_result(db, command=command, game=game, n=n, flags=flags)
        except SQLAlchemyError as exc:
            logger.warning("results cache read failed: %s", exc)
            hit = None
        if hit is not None:
            logger.debug("cache hit for %s %s n=%d", command, game, n)
            return json.loads(hit)
        logger.debug("cache miss for %s %s n=%d", command, game, n)
        payload = compute()
        try:
            crud.store_result(db, command=command, game=game, n=n, flags=flags, payload=json.dumps(payload, sort_keys=True))
        except SQLAlchemyError as exc:
            db.rollback()
            logger.warning("results cache write failed: %s", exc)
        return payload
    finally:
        db.close()


# --------------------
# Commands
# --------------------

def cmd_enumerate(args) -> int:
    game = Game(args.game)
    search = dict(workers=args.workers, node_budget=args.node_budget, prefix_depth=args.prefix_depth)

    def compute() -> dict:
        boards = enumerate_penults(
            game, args.n, checkpoint=args.checkpoint, resume=args.resume, archive=args.out, **search,
        )
        if args.spectrum:
            return spectrum_report(spectrum(game, args.n, boards=boards))
        if args.count_only or args.out:
            return {"classes": len(boards)}
        return {
            "game": game.value,
            "n": args.n,
            "classes": len(boards),
            "boards": [json.loads(board_to_json(b)) for b in boards],
        }

    if args.out or args.checkpoint or args.resume:
        payload = compute()
    else:
        flags = {"count_only": args.count_only, "spectrum": args.spectrum, "node_budget": args.node_budget}
        payload = _cached(args, "enumerate", game.value, args.n, flags, compute)
    _emit(payload)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    game = Game(args.game)

    def compute() -> dict:
        return spectrum_report(spectrum(
            game, args.n, workers=args.workers, node_budget=args.node_budget, prefix_depth=args.prefix_depth,
        ))

    _emit(_cached(args, "spectrum", game.value, args.n, {"node_budget": args.node_budget}, compute))
    return EXIT_OK


def _check_board(args, default_expect: Optional[str]) -> int:
    b = parse_board(_read_input(args.input))
    result = classify(b)
    tokens = token_count(b)
    expect = args.expect or default_expect
    ok = (expect is None or result is Classification(expect)) and (
        args.expect_tokens is None or tokens == args.expect_tokens
    )
    payload = {
        "game": b.game.value,
        "n": b.n,
        "classification": result.value,
        "tokens": tokens,
        "ok": ok,
    }
    _emit(payload)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_classify(args) -> int:
    return _check_board(args, None)


def cmd_verify(args) -> int:
    return _check_board(args, Classification.PENULT.value)


def cmd_construct(args) -> int:
    b = construct(args.family, args.n, m=args.m, k=args.k, l=args.l, variant=args.variant)
    _emit(BoardJSON.from_board(b).model_dump(mode="json", exclude_none=True), args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    game = Game(args.game)
    if args.table:
        table = outcome_table(game, args.n, node_budget=args.node_budget)
        with open(args.table, "w") as f:
            for key, outcome in table.items():
                f.write(json.dumps({"mask": key, "outcome": outcome.value}) + "\n")
        logger.info("wrote %d positions to %s", len(table), args.table)

    def compute() -> dict:
        return {"game": game.value, "n": args.n, "outcome": solve(game, args.n, node_budget=args.node_budget).value}

    _emit(_cached(args, "solve", game.value, args.n, {}, compute))
    return EXIT_OK


def cmd_strategy(args) -> int:
    s = MirrorStrategy(MirrorAxis(args.axis), Role(args.role), args.opening_center, args.axis_reply)
    game = Game(args.game)

    def compute() -> dict:
        verdict = validate_strategy(game, args.n, s, node_budget=args.node_budget)
        if isinstance(verdict, WinsAll):
            return {"verdict": "wins_all", "positions": verdict.positions}
        return {"verdict": "counterexample", "line": verdict.line.to_json().model_dump(mode="json")}

    flags = {"axis": s.axis.value, "role": s.role.value, "opening_center": s.opening_center, "axis_reply": s.axis_reply}
    payload = _cached(args, "strategy", game.value, args.n, flags, compute)
    _emit(payload)
    return EXIT_OK if payload["verdict"] == "wins_all" else EXIT_VIOLATION


def _aux_position(game: str, text: str):
    try:
        numbers = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"position {text!r} must be comma-separated integers") from None
    if any(v < 0 for v in numbers):
        raise ValueError("heap sizes must be non-negative")
    if game == "subtract123":
        if len(numbers) != 1:
            raise ValueError("subtract123 takes a single heap size")
        return numbers[0]
    if game == "wythoff":
        if len(numbers) != 2:
            raise ValueError("wythoff takes a pair a,b")
        return tuple(numbers)
    return tuple(numbers)


def cmd_matein(args) -> int:
    if args.game in AUX_GAMES:
        position = _aux_position(args.game, args.pos)
    else:
        position = parse_board(_read_input(args.pos))
    _emit({"game": args.game, "mate_in": mate_in(args.game, position)})
    return EXIT_OK


def cmd_render(args) -> int:
    text = render(parse_board(_read_input(args.input)), args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bounds(args) -> int:
    payload = {
        "n": args.n,
        "tak_lower_bound": tak_lower_bound(args.n),
        "tak_lower_bound_as_stated": tak_lower_bound_as_stated(args.n),
    }
    if args.n >= 6:
        payload["snake_upper_bound"] = snake_upper_bound(args.n)
    _emit(payload)
    return EXIT_OK


def cmd_cache(args) -> int:
    db = SessionLocal()
    try:
        if args.action == "purge":
            _emit({"removed": crud.purge_results(db, command=args.command)})
        else:
            rows = crud.list_cached_results(db, command=args.command)
            _emit({"results": [
                {"command": r.command, "game": r.game, "n": r.n, "flags_hash": r.flags_hash,
                 "created_at": r.created_at.isoformat()}
                for r in rows
            ]})
    finally:
        db.close()
    return EXIT_OK


# --------------------
# Parser
# --------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", "-v", action="store_true", help="DEBUG-level logging to stderr")
    common.add_argument("--no-cache", action="store_true", help="Skip the results cache for this run")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--workers", type=int, default=None, help="Worker processes")
    search.add_argument("--node-budget", type=int, default=None, help="Stop after this many search nodes")
    search.add_argument("--prefix-depth", type=int, default=None, help="Indices used to split parallel work")

    games = [g.value for g in Game]
    parser = argparse.ArgumentParser(prog="penults", description="Penult positions of impartial grid games")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common, search], help="All penults up to symmetry")
    p.add_argument("--game", choices=games, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--spectrum", action="store_true")
    p.add_argument("--out", help="JSON-lines archive of the canonical boards")
    p.add_argument("--checkpoint", help="Progress file written after every task")
    p.add_argument("--resume", action="store_true", help="Continue from --checkpoint and --out")
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("spectrum", parents=[common, search], help="Class counts per token count, with bound checks")
    p.add_argument("--game", choices=games, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_spectrum)

    for name, handler in (("classify", cmd_classify), ("verify", cmd_verify)):
        p = sub.add_parser(name, parents=[common], help=f"{name.capitalize()} a board file (ascii or JSON)")
        p.add_argument("--in", dest="input", help="Board file; stdin when absent or '-'")
        p.add_argument("--expect", choices=[c.value for c in Classification])
        p.add_argument("--expect-tokens", type=int)
        p.set_defaults(handler=handler)

    p = sub.add_parser("construct", parents=[common], help="Build a named penult family")
    p.add_argument("--family", choices=[f.value for f in Family], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--variant", type=int)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser("solve", parents=[common], help="Outcome of the start position")
    p.add_argument("--game", choices=games, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--table", help="Write every reachable position's outcome as JSON lines")
    p.add_argument("--node-budget", type=int, default=None)
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("strategy", parents=[common], help="Check a mirroring strategy against every adversary")
    p.add_argument("--game", choices=[Game.TAK.value, Game.TIC.value], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--axis", choices=[a.value for a in MirrorAxis], required=True)
    p.add_argument("--role", choices=[r.value for r in Role], required=True)
    p.add_argument("--opening-center", action="store_true")
    p.add_argument("--axis-reply", action="store_true", help="Answer a symmetric board on the mirror axis")
    p.add_argument("--node-budget", type=int, default=None)
    p.set_defaults(handler=cmd_strategy)

    p = sub.add_parser("matein", parents=[common], help="Mate-in depth of an L-position")
    p.add_argument("--game", choices=list(AUX_GAMES) + [Game.TAK.value, Game.TIC.value], required=True)
    p.add_argument("--pos", required=True, help="heap, comma-separated heaps, a pair, or a board file")
    p.set_defaults(handler=cmd_matein)

    p = sub.add_parser("render", parents=[common], help="Draw a board")
    p.add_argument("--in", dest="input")
    p.add_argument("--format", choices=FORMATS, default="ascii")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_render)

    p = sub.add_parser("bounds", parents=[common], help="Closed-form tak bounds for n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("cache", parents=[common], help="Inspect or clear the results cache")
    p.add_argument("action", choices=["list", "purge"])
    p.add_argument("--command")
    p.set_defaults(handler=cmd_cache)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID

    settings = get_settings()
    level = logging.DEBUG if args.verbose else getattr(logging, settings.PENULT_LOG_LEVEL.upper(), logging.WARNING)
    configure_logging(level)

    try:
        return args.handler(args)
    except (BudgetExceeded, ConstructionFailed) as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return EXIT_VIOLATION
    except (ValueError, OSError) as exc:
        logger.error("%s", exc)
        _emit({"error": "invalid_input", "detail": str(exc)})
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
