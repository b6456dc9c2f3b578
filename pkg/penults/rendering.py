"""
Text renderings of boards: ascii (parseable), svg and tikz.

Grid boards print one row per line, '#' for a token and '.' for an empty
cell. Dots-and-boxes boards print 2n-1 lines: dot rows '•' joined by '-'
where the horizontal edge is present, and in between rows with '|' over
each present vertical edge.
"""
import json
from typing import List

from jinja2 import Environment, PackageLoader, select_autoescape

from penults.grid import Board, Game, edge_endpoints, edge_index
from penults.schemas import BoardJSON

FORMATS = ("ascii", "svg", "tikz")

DOT = "•"

_env = Environment(
    loader=PackageLoader("penults", "templates"),
    autoescape=select_autoescape(["svg.j2"]),
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)


# --------------------
# ascii
# --------------------

def _ascii_rows(b: Board) -> List[str]:
    n = b.n
    if b.game.is_grid:
        return [
            "".join("#" if r * n + c in b else "." for c in range(n))
            for r in range(n)
        ]
    rows = []
    for r in range(n):
        line = DOT
        for c in range(n - 1):
            line += ("-" if edge_index(n, "h", r, c) in b else " ") + DOT
        rows.append(line)
        if r < n - 1:
            rows.append(" ".join("|" if edge_index(n, "v", r, c) in b else " " for c in range(n)))
    return rows


def render_ascii(b: Board) -> str:
    return "\n".join([f"{b.game.value} {b.n}"] + _ascii_rows(b)) + "\n"


def parse_ascii(text: str) -> Board:
    lines = [line.rstrip("\r") for line in text.splitlines()]
    while lines and not lines[0].strip():
        lines.pop(0)
    if not lines:
        raise ValueError("empty board text")
    header = lines[0].split()
    if len(header) != 2 or not header[1].isdigit():
        raise ValueError(f"bad board header {lines[0]!r}; expected '<game> <n>'")
    game, n = Game(header[0]), int(header[1])
    body = lines[1:]
    if game.is_grid:
        return _parse_grid(game, n, body)
    return _parse_dots(n, body)


def _parse_grid(game: Game, n: int, body: List[str]) -> Board:
    if len(body) < n:
        raise ValueError(f"expected {n} rows, got {len(body)}")
    cells = []
    for r, line in enumerate(body[:n]):
        line = line.strip()
        if len(line) != n or set(line) - {"#", "."}:
            raise ValueError(f"row {r} must be {n} characters of '#' or '.', got {line!r}")
        cells.extend((r, c) for c, ch in enumerate(line) if ch == "#")
    return Board.from_cells(game, n, cells)


def _parse_dots(n: int, body: List[str]) -> Board:
    width = 2 * n - 1
    if len(body) < width:
        raise ValueError(f"expected {width} lines for a {n}-dot board, got {len(body)}")
    edges = []
    for j, line in enumerate(body[:width]):
        line = line.ljust(width)
        r, odd = divmod(j, 2)
        if not odd:
            if line[::2] != DOT * n:
                raise ValueError(f"dot row {r} is malformed: {line!r}")
            for c in range(n - 1):
                ch = line[2 * c + 1]
                if ch == "-":
                    edges.append(("h", r, c))
                elif ch != " ":
                    raise ValueError(f"unexpected {ch!r} between dots in row {r}")
        else:
            for c in range(n):
                ch = line[2 * c]
                if ch == "|":
                    edges.append(("v", r, c))
                elif ch != " ":
                    raise ValueError(f"unexpected {ch!r} in edge row {r}")
    return Board.from_edges(n, edges)


# --------------------
# svg / tikz
# --------------------

def _template_context(b: Board) -> dict:
    n = b.n
    ctx = {"game": b.game.value, "n": n, "cells": [], "lines": [], "dots": []}
    if b.game.is_grid:
        # tikz puts row 0 at the top, y grows upward
        ctx["cells"] = [{"r": r, "c": c, "y": n - 1 - r} for r, c in b.cells()]
    else:
        ctx["dots"] = [{"r": r, "c": c, "y": n - 1 - r} for r in range(n) for c in range(n)]
        for i in b.indices():
            (r1, c1), (r2, c2) = edge_endpoints(n, i)
            ctx["lines"].append({
                "r1": r1, "c1": c1, "y1": n - 1 - r1,
                "r2": r2, "c2": c2, "y2": n - 1 - r2,
            })
    return ctx


def render(b: Board, fmt: str = "ascii") -> str:
    if fmt == "ascii":
        return render_ascii(b)
    if fmt not in FORMATS:
        raise ValueError(f"unknown render format {fmt!r}; choose from {', '.join(FORMATS)}")
    kind = "board" if b.game.is_grid else "dots"
    template = _env.get_template(f"{kind}.{fmt}.j2")
    return template.render(**_template_context(b))


# --------------------
# reading board files
# --------------------

def parse_board(text: str) -> Board:
    """Read either the ascii diagram or the JSON board object."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return BoardJSON.model_validate(json.loads(stripped)).to_board()
    return parse_ascii(text)


def board_to_json(b: Board) -> str:
    return BoardJSON.from_board(b).to_json()
