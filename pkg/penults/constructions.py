"""
Generators for the named penult families.

Dual tic families are boards of the removal game (cells hold the tokens
still present). Every generator checks its output with the classifier and
raises ConstructionFailed rather than return an unverified board.
"""
import json
import logging
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

from penults.errors import ConstructionFailed, DomainError
from penults.games import rules_for
from penults.grid import Board, Game, token_count
from penults.schemas import BoardJSON

logger = logging.getLogger(__name__)

Cell = Tuple[int, int]


class Family(str, Enum):
    A = "a"
    B = "b"
    C = "c"
    D = "d"
    COMPOSE = "compose"
    DIAMOND = "diamond"
    LSNAKE = "lsnake"
    SNAKE = "snake"
    DBFIX = "dbfix"


class Witness(NamedTuple):
    label: str
    board: Board


def _verified(game: Game, n: int, cells: Iterable[Cell], label: str) -> Board:
    b = Board.from_cells(game, n, cells)
    if not rules_for(game, n).is_penult(b.mask):
        raise ConstructionFailed(f"{label} on a {n}x{n} board is not a penult")
    logger.debug("built %s: %d tokens", label, token_count(b))
    return b


def _block(rows: range, cols: range) -> List[Cell]:
    return [(r, c) for r in rows for c in cols]


# --------------------
# Dual tic
# --------------------

_TIC_DUAL_MIN_N = {Family.A: 3, Family.B: 3, Family.C: 4}
_D_MIN_N = {9: 5, 10: 6, 11: 6, 12: 6, 13: 7}


def tic_dual_family(f: Family, n: int) -> Board:
    """A_n (2n tokens), B_n (3(n-1) tokens) or C_n (4(n-2) tokens)."""
    f = Family(f)
    if f not in _TIC_DUAL_MIN_N:
        raise DomainError(f"family {f.value!r} is not one of a, b, c")
    if n < _TIC_DUAL_MIN_N[f]:
        raise DomainError(f"family {f.value.upper()} needs n >= {_TIC_DUAL_MIN_N[f]}, got {n}")
    if f is Family.A:
        # two tokens in every line, wrapping down the diagonal
        cells = [(c, c) for c in range(n)] + [((c + 1) % n, c) for c in range(n)]
    elif f is Family.B:
        cells = (
            [(r, 0) for r in range(1, n)]
            + [(0, c) for c in range(1, n)]
            + [(i, i) for i in range(1, n)]
        )
    else:
        cells = _block(range(2), range(2, n)) + _block(range(2, n), range(2))
    return _verified(Game.DUALTIC, n, cells, f"{f.value.upper()}_{n}")


def tic_dual_D(n: int, m: int) -> Board:
    """D_{n,m} with 4n - m tokens."""
    if m not in _D_MIN_N:
        raise DomainError(f"m must be between 9 and 13, got {m}")
    if n < _D_MIN_N[m]:
        raise DomainError(f"D_{{n,{m}}} needs n >= {_D_MIN_N[m]}, got {n}")
    corner3 = [(0, 0), (1, 0), (0, 1)]
    square = _block(range(2), range(2))
    if m == 9:
        cells = corner3 + _block(range(1, 3), range(3, n)) + _block(range(3, n), range(1, 3))
    elif m == 10:
        cells = square + _block(range(1, 3), range(4, n)) + _block(range(3, n), range(2, 4))
    elif m == 11:
        cells = corner3 + [(2, 1), (1, 2)] + _block(range(2, 4), range(4, n)) + _block(range(4, n), range(2, 4))
    elif m == 12:
        cells = square + _block(range(2, 4), range(4, n)) + _block(range(4, n), range(2, 4))
    else:
        cells = (
            square
            + [(2, 2), (3, 2), (2, 3)]
            + _block(range(3, 5), range(5, n))
            + _block(range(5, n), range(3, 5))
        )
    return _verified(Game.DUALTIC, n, cells, f"D_{n},{m}")


def tic_dual_compose(p: Board, q: Board) -> Board:
    """p in the upper-left k x k corner, q in the lower-right (n-k) x (n-k) corner."""
    for b in (p, q):
        if b.game is not Game.DUALTIC:
            raise DomainError(f"compose takes dualtic boards, got {b.game.value}")
        if not rules_for(b.game, b.n).is_penult(b.mask):
            raise DomainError(f"compose input {b!r} is not a penult")
    k, n = p.n, p.n + q.n
    cells = list(p.cells()) + [(r + k, c + k) for r, c in q.cells()]
    return _verified(Game.DUALTIC, n, cells, f"compose({k},{q.n})")


def dualtic_coverage(n: int) -> Dict[int, Witness]:
    """One family witness per token count in [2n, 4(n-2)], first found wins."""
    if n < 5:
        raise DomainError(f"coverage is defined for n >= 5, got {n}")
    candidates: List[Tuple[str, int, object]] = [
        (f"A_{n}", 2 * n, lambda: tic_dual_family(Family.A, n)),
        (f"C_{n}", 4 * (n - 2), lambda: tic_dual_family(Family.C, n)),
    ]
    for m in sorted(_D_MIN_N):
        if n >= _D_MIN_N[m]:
            candidates.append((f"D_{n},{m}", 4 * n - m, lambda m=m: tic_dual_D(n, m)))
    for k in range(3, n - 2):
        candidates.append((
            f"A_{k}+B_{n - k}", 3 * n - k - 3,
            lambda k=k: tic_dual_compose(tic_dual_family(Family.A, k), tic_dual_family(Family.B, n - k)),
        ))
    for k in range(3, n - 3):
        candidates.append((
            f"B_{k}+C_{n - k}", 4 * n - k - 11,
            lambda k=k: tic_dual_compose(tic_dual_family(Family.B, k), tic_dual_family(Family.C, n - k)),
        ))
    witnesses: Dict[int, Witness] = {}
    for label, tokens, build in candidates:
        if tokens not in witnesses:
            witnesses[tokens] = Witness(label, build())
    return dict(sorted(witnesses.items()))


# --------------------
# Tak
# --------------------

def tak_variable_diamond(n: int, k: int, l: int) -> Board:
    """
    Every cell occupied except a ring of free cells: k of them along the top
    row, l down the left column, joined by two diagonals and short runs on
    the right column and bottom row. n^2 - 2n - k - l + 4 tokens.
    """
    if n < 4 or not (2 <= k <= n - 2 and 2 <= l <= n - 2):
        raise DomainError(f"variable diamond needs n >= 4 and 2 <= k, l <= n-2, got n={n} k={k} l={l}")
    free = set()
    free.update((0, c) for c in range(1, k + 1))
    free.update((i, k + i) for i in range(1, n - k))
    free.update((r, n - 1) for r in range(n - k, n - 1))
    free.update((n - 1, c) for c in range(n - 1 - l, n - 1))
    free.update((l + i, i) for i in range(1, n - 1 - l))
    free.update((r, 0) for r in range(1, l + 1))
    cells = [(r, c) for r in range(n) for c in range(n) if (r, c) not in free]
    return _verified(Game.TAK, n, cells, f"diamond({k},{l})")


def tak_l_snake(n: int, variant: int) -> Board:
    """(n-2)^2 block in the lower-left corner plus a 2-cell (variant 1) or 3-cell (variant 2) tail."""
    if n < 4:
        raise DomainError(f"L-snakes need n >= 4, got {n}")
    if variant == 1:
        tail = [(1, n - 2), (0, n - 1)]
    elif variant == 2:
        tail = [(1, n - 1), (0, n - 2), (0, n - 1)]
    else:
        raise DomainError(f"L-snake variant must be 1 or 2, got {variant}")
    cells = _block(range(2, n), range(n - 2)) + tail
    return _verified(Game.TAK, n, cells, f"lsnake{variant}")


def _snake_layout(n: int) -> Tuple[bool, bool, List[Tuple[int, bool]], List[int]]:
    """
    Frame rows and strips for the snake. Returns (top frame, bottom frame,
    [(column, top_anchored)], columns that get no staircases).
    """
    residue = n % 6
    top = residue in (0, 2)
    bottom = residue in (0, 2, 3)
    plain: List[int] = []
    if residue == 0:
        strips = [(3 * j, j % 2 == 0) for j in range(n // 3)]
    elif residue in (1, 4):
        strips = [(3 * j, j % 2 == 0) for j in range((n - 1) // 3 + 1)]
    elif residue == 2:
        strips = [(2 + 3 * j, j % 2 == 0) for j in range(-(-(n - 2) // 3))]
    elif residue == 3:
        strips = [(3 * j, j % 2 == 1) for j in range((n - 3) // 3 + 1)]
    else:
        strips = [(1 + 3 * j, j % 2 == 1) for j in range((n - 2) // 3 + 1)]
        strips.append((0, False))
        plain.append(0)
    return top, bottom, strips, plain


def tak_snake(n: int) -> Board:
    """
    Near-minimal penult: vertical strips every third column, alternately
    hanging from the top and standing on the bottom, with a two-cell
    staircase from each strip end toward its neighbours.
    """
    if n < 6:
        raise DomainError(f"snake penults need n >= 6, got {n}")
    top, bottom, strips, plain = _snake_layout(n)
    first = 1 if top else 0
    stop = n - 1 if bottom else n
    cells = set()
    if top:
        cells.update((0, c) for c in (range(2, n) if n % 6 == 2 else range(n - 2)))
    if bottom:
        cells.update((n - 1, c) for c in range(n - 2))
    strip_cols = {c for c, _ in strips}
    for col, hangs in strips:
        rows = range(first, stop - 2) if hangs else range(first + 2, stop)
        cells.update((r, col) for r in rows)
        if col in plain:
            continue
        for d in (-1, 1):
            if not 0 <= col + 2 * d <= n - 1 or col + d in strip_cols:
                continue
            if hangs:
                cells.update({(stop - 2, col + d), (stop - 1, col + 2 * d)})
            else:
                cells.update({(first + 1, col + d), (first, col + 2 * d)})
    return _verified(Game.TAK, n, sorted(cells), "snake")


def tak_interval_coverage(n: int) -> Dict[int, Witness]:
    """One witness per token count in [n^2 - 4(n-2) - 2, n^2 - 2n] from the diamonds and L-snakes."""
    if n < 4:
        raise DomainError(f"coverage is defined for n >= 4, got {n}")
    candidates: List[Tuple[str, int, object]] = [
        ("lsnake1", (n - 2) ** 2 + 2, lambda: tak_l_snake(n, 1)),
        ("lsnake2", (n - 2) ** 2 + 3, lambda: tak_l_snake(n, 2)),
    ]
    for k in range(2, n - 1):
        for l in range(2, n - 1):
            candidates.append((
                f"diamond({k},{l})", n * n - 2 * n - k - l + 4,
                lambda k=k, l=l: tak_variable_diamond(n, k, l),
            ))
    witnesses: Dict[int, Witness] = {}
    for label, tokens, build in candidates:
        if tokens not in witnesses:
            witnesses[tokens] = Witness(label, build())
    return dict(sorted(witnesses.items()))


# --------------------
# Figure tables
# --------------------

@lru_cache(maxsize=None)
def _figure_table() -> Dict[str, dict]:
    text = resources.files("penults").joinpath("data/figures.json").read_text()
    return json.loads(text)


def fixture_names() -> List[str]:
    return list(_figure_table())


def fixtures(name: str) -> Board:
    try:
        raw = _figure_table()[name]
    except KeyError:
        raise ValueError(f"unknown fixture {name!r}") from None
    return BoardJSON.model_validate(raw).to_board()


def db_fixtures(dots: int) -> List[Board]:
    if dots not in (3, 4):
        raise DomainError(f"dots-and-boxes fixtures exist for 3 or 4 dots, got {dots}")
    prefix = f"db{dots}_"
    boards = [fixtures(name) for name in fixture_names() if name.startswith(prefix)]
    return sorted(boards, key=token_count)


# --------------------
# Dispatcher
# --------------------

def construct(
    family: Family,
    n: int,
    *,
    m: Optional[int] = None,
    k: Optional[int] = None,
    l: Optional[int] = None,
    variant: Optional[int] = None,
) -> Board:
    """
    Build any family from flat parameters. compose takes k and variant
    (1: A_k + B_{n-k}, 2: B_k + C_{n-k}); dbfix takes the dot count as n and
    variant as a 1-based index into the fixtures.
    """
    family = Family(family)
    if family in _TIC_DUAL_MIN_N:
        return tic_dual_family(family, n)
    if family is Family.D:
        return tic_dual_D(n, _required(m, "m"))
    if family is Family.COMPOSE:
        k = _required(k, "k")
        if not 1 <= k < n:
            raise DomainError(f"compose needs 1 <= k < n, got k={k} n={n}")
        left, right = {1: (Family.A, Family.B), 2: (Family.B, Family.C)}.get(variant or 1, (None, None))
        if left is None:
            raise DomainError(f"compose variant must be 1 or 2, got {variant}")
        return tic_dual_compose(tic_dual_family(left, k), tic_dual_family(right, n - k))
    if family is Family.DIAMOND:
        return tak_variable_diamond(n, _required(k, "k"), _required(l, "l"))
    if family is Family.LSNAKE:
        return tak_l_snake(n, variant or 1)
    if family is Family.SNAKE:
        return tak_snake(n)
    boards = db_fixtures(n)
    index = (variant or 1) - 1
    if not 0 <= index < len(boards):
        raise DomainError(f"dbfix variant must be between 1 and {len(boards)}")
    return boards[index]


def _required(value: Optional[int], name: str) -> int:
    if value is None:
        raise DomainError(f"--{name} is required for this family")
    return value
