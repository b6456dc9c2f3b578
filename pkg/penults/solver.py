"""
Win/loss solving and mate-in depths.

Grid positions are memoized on their canonical key: in impartial play the
outcome depends only on the occupancy, up to symmetry.
"""
import logging
from enum import Enum
from functools import lru_cache
from math import isqrt
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple, Union

from penults.config import get_settings
from penults.errors import BudgetExceeded, DomainError
from penults.games import rules_for
from penults.grid import Board, Game, canonical_key

logger = logging.getLogger(__name__)


class Outcome(str, Enum):
    W = "W"
    L = "L"


# --------------------
# Grid games
# --------------------

class GridSolver:
    """
    Memoized negamax over one (game, n). With `exhaustive` every option is
    searched, so the memo ends up holding every reachable position.
    """

    def __init__(self, game: Game, n: int, node_budget: Optional[int] = None, exhaustive: bool = False):
        self.rules = rules_for(game, n)
        self.limit = node_budget if node_budget is not None else get_settings().PENULT_NODE_BUDGET
        self.exhaustive = exhaustive
        self.memo: Dict[int, bool] = {}
        self.nodes = 0

    def key(self, mask: int) -> int:
        return canonical_key(self.rules.game, self.rules.n, mask)

    def mover_wins(self, mask: int) -> bool:
        key = self.key(mask)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.nodes += 1
        if self.nodes > self.limit:
            raise BudgetExceeded(self.nodes, self.limit)
        rules = self.rules
        wins = bool(rules.winning_moves(mask))
        if not wins or self.exhaustive:
            for child in rules.children(mask):
                if not self.mover_wins(child):
                    wins = True
                    if not self.exhaustive:
                        break
        self.memo[key] = wins
        return wins

    def outcome(self, mask: int) -> Outcome:
        return Outcome.W if self.mover_wins(mask) else Outcome.L


def solve(game: Game, n: int, node_budget: Optional[int] = None) -> Outcome:
    """Outcome of the start position: empty board, or full board for dualtic."""
    solver = GridSolver(game, n, node_budget)
    result = solver.outcome(solver.rules.start)
    logger.info("%s n=%d: %s after %d positions", Game(game).value, n, result.value, solver.nodes)
    return result


def position_outcome(b: Board, node_budget: Optional[int] = None) -> Outcome:
    return GridSolver(b.game, b.n, node_budget).outcome(b.mask)


def outcome_table(game: Game, n: int, node_budget: Optional[int] = None) -> Dict[int, Outcome]:
    """Canonical key -> outcome for every position reachable from the start."""
    solver = GridSolver(game, n, node_budget, exhaustive=True)
    solver.mover_wins(solver.rules.start)
    return {key: Outcome.W if wins else Outcome.L for key, wins in sorted(solver.memo.items())}


# --------------------
# Mate-in-k
# --------------------

Position = Hashable


class Subtract123:
    name = "subtract123"

    def key(self, heap: int) -> int:
        return heap

    def options(self, heap: int) -> Iterable[int]:
        return [heap - t for t in (1, 2, 3) if t <= heap]


class Nim:
    name = "nim"

    def key(self, heaps: Sequence[int]) -> Tuple[int, ...]:
        return tuple(sorted(h for h in heaps if h))

    def options(self, heaps: Sequence[int]) -> Iterable[Tuple[int, ...]]:
        heaps = self.key(heaps)
        for i, h in enumerate(heaps):
            for left in range(h):
                yield self.key(heaps[:i] + (left,) + heaps[i + 1:])


class Wythoff:
    name = "wythoff"

    def key(self, pair: Sequence[int]) -> Tuple[int, int]:
        a, b = pair
        return (a, b) if a <= b else (b, a)

    def options(self, pair: Sequence[int]) -> Iterable[Tuple[int, int]]:
        a, b = self.key(pair)
        for t in range(1, b + 1):
            if t <= a:
                yield self.key((a - t, b))
                yield (a - t, b - t)
            yield self.key((a, b - t))


class GridGame:
    def __init__(self, game: Game, n: int):
        self.rules = rules_for(game, n)
        self.name = self.rules.game.value

    def key(self, mask: int) -> int:
        return canonical_key(self.rules.game, self.rules.n, mask)

    def options(self, mask: int) -> Iterable[int]:
        return self.rules.children(mask)


AuxGame = Union[Subtract123, Nim, Wythoff, GridGame]


def _post_order(root: Position, done: Dict, successors: Callable[[Position], List[Position]]) -> List[Position]:
    """
    Keys reachable from `root` and missing from `done`, every key after all
    of its successors. Iterative, so long games do not hit the recursion limit.
    """
    if root in done:
        return []
    order = []
    seen = {root}
    stack = [(root, iter(successors(root)))]
    while stack:
        node, pending = stack[-1]
        for child in pending:
            if child not in done and child not in seen:
                seen.add(child)
                stack.append((child, iter(successors(child))))
                break
        else:
            stack.pop()
            order.append(node)
    return order


class MateSolver:
    def __init__(self, adapter: AuxGame):
        self.adapter = adapter
        self.losing: Dict[Position, bool] = {}
        self.depth: Dict[Position, int] = {}

    def _options(self, key: Position) -> List[Position]:
        return [self.adapter.key(o) for o in self.adapter.options(key)]

    def _losing_replies(self, key: Position) -> List[Position]:
        # L-positions two moves on; settled by is_losing before depths are asked for
        return [r for o in self._options(key) for r in self._options(o) if self.losing[r]]

    def is_losing(self, pos) -> bool:
        key = self.adapter.key(pos)
        for node in _post_order(key, self.losing, self._options):
            self.losing[node] = all(not self.losing[o] for o in self._options(node))
        return self.losing[key]

    def mate(self, pos) -> int:
        """
        Largest k such that the losing side can force 2k more moves:
        0 at a terminal position, else the max over options of one more than
        the winner's quickest reply.
        """
        key = self.adapter.key(pos)
        if not self.is_losing(key):
            raise DomainError(f"{self.adapter.name} position {pos!r} is a W-position; mate depth is only defined for L-positions")
        for node in _post_order(key, self.depth, self._losing_replies):
            best = 0
            for o in self._options(node):
                replies = [self.depth[r] for r in self._options(o) if self.losing[r]]
                best = max(best, 1 + min(replies))
            self.depth[node] = best
        return self.depth[key]


@lru_cache(maxsize=None)
def _mate_solver(name: str, n: int = 0) -> MateSolver:
    if name == "subtract123":
        return MateSolver(Subtract123())
    if name == "nim":
        return MateSolver(Nim())
    if name == "wythoff":
        return MateSolver(Wythoff())
    return MateSolver(GridGame(Game(name), n))


def mate_in(game: str, position) -> int:
    """
    game is subtract123 (heap int), nim (heap sizes), wythoff (pair) or a
    grid game name with a Board.
    """
    if isinstance(position, Board):
        if position.game.value != game:
            raise DomainError(f"board is a {position.game.value} board, not {game}")
        return _mate_solver(game, position.n).mate(position.mask)
    if game not in ("subtract123", "nim", "wythoff"):
        raise DomainError(f"{game} positions are boards")
    return _mate_solver(game).mate(position)


def wythoff_L(k: int) -> Tuple[int, int]:
    """k-th Wythoff L-position (floor(k*phi), floor(k*phi) + k), in integers."""
    if k < 0:
        raise DomainError(f"k must be non-negative, got {k}")
    a = (k + isqrt(5 * k * k)) // 2
    return a, a + k
