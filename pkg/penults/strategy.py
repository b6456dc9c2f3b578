"""
Mirroring strategies for the placement grid games, and exhaustive checks
that a strategy wins against every adversary.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

from penults.config import get_settings
from penults.errors import BudgetExceeded, DomainError, StrategyBreakdown
from penults.games import iter_bits, rules_for
from penults.grid import Board, Cell, Game, cell_at, cell_index
from penults.schemas import PlayLineJSON

logger = logging.getLogger(__name__)


class MirrorAxis(str, Enum):
    ORIGIN = "origin"
    VLINE = "vline"
    HLINE = "hline"
    DIAG = "diag"
    ANTIDIAG = "antidiag"


class Role(str, Enum):
    FIRST = "first"
    SECOND = "second"

    @property
    def other(self) -> "Role":
        return Role.SECOND if self is Role.FIRST else Role.FIRST


@dataclass(frozen=True)
class MirrorStrategy:
    axis: MirrorAxis
    role: Role
    opening_center: bool = False
    # on a symmetric board, take the least free cell fixed by the mirror instead of breaking down
    axis_reply: bool = False

    def __post_init__(self):
        object.__setattr__(self, "axis", MirrorAxis(self.axis))
        object.__setattr__(self, "role", Role(self.role))
        if self.opening_center and self.role is not Role.FIRST:
            raise DomainError("a centre opening is only available to the first player")

    def check_board_size(self, n: int) -> None:
        if self.opening_center and n % 2 == 0:
            raise DomainError(f"a centre opening needs odd n, got {n}")


def mirror_image(n: int, cell: Cell, axis: MirrorAxis) -> Cell:
    r, c = cell
    cell_index(n, r, c)
    axis = MirrorAxis(axis)
    if axis is MirrorAxis.ORIGIN:
        return n - 1 - r, n - 1 - c
    if axis is MirrorAxis.VLINE:
        return r, n - 1 - c
    if axis is MirrorAxis.HLINE:
        return n - 1 - r, c
    if axis is MirrorAxis.DIAG:
        return c, r
    return n - 1 - c, n - 1 - r


def _mirror_table(n: int, axis: MirrorAxis) -> List[int]:
    return [cell_index(n, *mirror_image(n, cell_at(n, i), axis)) for i in range(n * n)]


def _placement_rules(game: Game, n: int):
    rules = rules_for(game, n)
    if rules.game not in (Game.TAK, Game.TIC):
        raise DomainError(f"mirror strategies are played in tak or tic, not {rules.game.value}")
    return rules


# --------------------
# Playing the strategy
# --------------------

def _strategy_index(rules, mirror: List[int], mask: int, s: MirrorStrategy) -> Tuple[int, str]:
    wins = rules.winning_moves(mask)
    if wins:
        # row-major first
        return (wins & -wins).bit_length() - 1, "win"
    n = rules.n
    if s.opening_center and mask == 0:
        return (n // 2) * n + n // 2, "opening"
    unmatched = [i for i in iter_bits(mask) if not mask >> mirror[i] & 1]
    if len(unmatched) == 1:
        return mirror[unmatched[0]], "mirror"
    if not unmatched and s.axis_reply:
        for i in rules.moves(mask):
            if mirror[i] == i:
                return i, "axis"
    raise StrategyBreakdown(f"no unique cell restores {s.axis.value} symmetry ({len(unmatched)} unmatched tokens)")


def strategy_move(b: Board, s: MirrorStrategy) -> Cell:
    rules = _placement_rules(b.game, b.n)
    s.check_board_size(b.n)
    if rules.is_won(b.mask):
        raise DomainError("the game is already over")
    to_move = Role.FIRST if rules.moves_played(b.mask) % 2 == 0 else Role.SECOND
    if to_move is not s.role:
        raise DomainError(f"it is the {to_move.value} player's turn, not the strategy's")
    i, _ = _strategy_index(rules, _mirror_table(b.n, s.axis), b.mask, s)
    return cell_at(b.n, i)


# --------------------
# Exhaustive validation
# --------------------

@dataclass(frozen=True)
class PlayLine:
    game: Game
    n: int
    moves: Tuple[int, ...]
    strategy_moves: Tuple[int, ...]
    winner: Role
    breakdown: bool = False

    def to_json(self) -> PlayLineJSON:
        return PlayLineJSON(
            game=self.game,
            n=self.n,
            moves=[cell_at(self.n, i) for i in self.moves],
            winner=self.winner.value,
            strategy_moves=list(self.strategy_moves),
            breakdown=self.breakdown,
        )


@dataclass(frozen=True)
class WinsAll:
    strategy: MirrorStrategy
    positions: int


@dataclass(frozen=True)
class Counterexample:
    strategy: MirrorStrategy
    line: PlayLine


Verdict = Union[WinsAll, Counterexample]

# suffix of a losing line: (moves, breakdown)
_Refutation = Optional[Tuple[Tuple[int, ...], bool]]


def _line_key(line: Tuple[int, ...]) -> Tuple[int, Tuple[int, ...]]:
    return len(line), line


class _Validator:
    """
    Exhaustive check of one strategy. A first pass only asks whether any
    adversary line wins; when one does, iterative deepening on the line
    length recovers the shortest, then least, of them.
    """

    def __init__(self, game: Game, n: int, s: MirrorStrategy, node_budget: Optional[int]):
        self.rules = _placement_rules(game, n)
        s.check_board_size(n)
        self.s = s
        self.mirror = _mirror_table(n, s.axis)
        self.limit = node_budget if node_budget is not None else get_settings().PENULT_NODE_BUDGET
        # strategy-to-move masks -> whether some adversary line beats the strategy from there
        self.memo: Dict[int, bool] = {}
        # strategy-to-move masks -> (refutation, length bound it was searched with)
        self.bounded: Dict[int, Tuple[_Refutation, int]] = {}
        self.nodes = 0

    def _count(self) -> None:
        self.nodes += 1
        if self.nodes > self.limit:
            raise BudgetExceeded(self.nodes, self.limit)

    def _reply(self, mask: int) -> Optional[int]:
        """The strategy's move, or None when it breaks down."""
        try:
            move, _ = _strategy_index(self.rules, self.mirror, mask, self.s)
        except StrategyBreakdown:
            return None
        return move

    # ---- existence ----
    def refutable(self, mask: int) -> bool:
        hit = self.memo.get(mask)
        if hit is not None:
            return hit
        self._count()
        if self.rules.is_won(mask):
            result = True
        else:
            move = self._reply(mask)
            result = move is None or self.adversary_wins(mask | 1 << move)
        self.memo[mask] = result
        return result

    def adversary_wins(self, mask: int) -> bool:
        if self.rules.is_won(mask):
            return False
        return any(self.refutable(mask | 1 << a) for a in self.rules.moves(mask))

    # ---- shortest line ----
    def refute(self, mask: int, budget: int) -> _Refutation:
        """Shortest, then least, line of at most `budget` moves beating the strategy from its turn at `mask`."""
        hit = self.bounded.get(mask)
        if hit is not None:
            found, searched = hit
            if found is not None:
                return found if len(found[0]) <= budget else None
            if searched >= budget:
                return None
        self._count()
        if self.rules.is_won(mask):
            result: _Refutation = ((), False)
        else:
            move = self._reply(mask)
            if move is None:
                result = ((), True)
            else:
                result = self.adversary(mask | 1 << move, (move,), budget - 1)
        self.bounded[mask] = (result, budget)
        return result

    def adversary(self, mask: int, prefix: Tuple[int, ...], budget: int) -> _Refutation:
        rules = self.rules
        if budget < 1 or rules.is_won(mask):
            return None
        best: _Refutation = None
        for a in rules.moves(mask):
            sub = self.refute(mask | 1 << a, budget - 1)
            if sub is None:
                continue
            line = prefix + (a,) + sub[0]
            if best is None or _line_key(line) < _line_key(best[0]):
                best = (line, sub[1])
        return best

    def run(self) -> Verdict:
        first = self.s.role is Role.FIRST
        beaten = self.refutable(0) if first else self.adversary_wins(0)
        if not beaten:
            return WinsAll(self.s, len(self.memo))
        found: _Refutation = None
        for budget in range(self.rules.size + 1):
            found = self.refute(0, budget) if first else self.adversary(0, (), budget)
            if found is not None:
                break
        moves, breakdown = found
        strategy_moves = tuple(range(0 if first else 1, len(moves), 2))
        if breakdown:
            winner = self.s.role.other
        else:
            winner = Role.FIRST if len(moves) % 2 == 1 else Role.SECOND
        rules = self.rules
        return Counterexample(self.s, PlayLine(rules.game, rules.n, moves, strategy_moves, winner, breakdown))


def validate_strategy(game: Game, n: int, s: MirrorStrategy, node_budget: Optional[int] = None) -> Verdict:
    validator = _Validator(game, n, s, node_budget)
    verdict = validator.run()
    logger.info(
        "%s n=%d %s/%s%s%s: %s after %d positions",
        Game(game).value, n, s.axis.value, s.role.value, "+centre" if s.opening_center else "", "+axis" if s.axis_reply else "",
        type(verdict).__name__, validator.nodes,
    )
    return verdict


@dataclass(frozen=True)
class MirrorStep:
    before: int
    adversary_move: Optional[int]
    strategy_move: int
    kind: str
    symmetric_after: bool
    avoids_adversary_lines: bool


def mirror_line_invariants(game: Game, n: int, s: MirrorStrategy, node_budget: Optional[int] = None) -> List[MirrorStep]:
    """
    Every (adversary move, strategy reply) step reachable under the strategy.
    Each explored line is a path through these steps, so a fact holding on
    every step holds along every line.
    """
    rules = _placement_rules(game, n)
    s.check_board_size(n)
    mirror = _mirror_table(n, s.axis)
    limit = node_budget if node_budget is not None else get_settings().PENULT_NODE_BUDGET
    steps: List[MirrorStep] = []
    seen = set()
    # strategy-to-move positions, with the adversary move that led there
    stack: List[Tuple[int, Optional[int]]] = []
    if s.role is Role.FIRST:
        stack.append((0, None))
    else:
        stack.extend((1 << a, a) for a in range(rules.size))
    while stack:
        mask, last = stack.pop()
        if (mask, last) in seen or rules.is_won(mask):
            continue
        seen.add((mask, last))
        if len(seen) > limit:
            raise BudgetExceeded(len(seen), limit)
        try:
            move, kind = _strategy_index(rules, mirror, mask, s)
        except StrategyBreakdown:
            continue
        after = mask | 1 << move
        symmetric = all(after >> mirror[i] & 1 for i in iter_bits(after))
        if last is None:
            avoids = True
        else:
            (lr, lc), (mr, mc) = cell_at(n, last), cell_at(n, move)
            avoids = lr != mr and lc != mc
        steps.append(MirrorStep(mask, last, move, kind, symmetric, avoids))
        if rules.is_won(after):
            continue
        for a in rules.moves(after):
            stack.append((after | 1 << a, a))
    return steps
