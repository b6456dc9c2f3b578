"""
Rule sets, win predicates, move generation and position classification.

Every rule set works on raw int masks so the search layers can call it in a
tight loop; the Board-level functions at the bottom are thin wrappers.
"""
from abc import ABC, abstractmethod
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterator, List, Tuple

from penults.grid import Board, Game, box_edges, universe_size
from penults.unionfind import UnionFind


class Classification(str, Enum):
    TERMINAL = "terminal"
    ULT = "ult"
    PENULT = "penult"
    OTHER = "other"


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class RuleSet(ABC):
    game: Game

    def __init__(self, n: int):
        self.n = n
        self.size = universe_size(self.game, n)
        self.full = (1 << self.size) - 1

    # ---- rules ----
    @abstractmethod
    def is_won(self, mask: int) -> bool:
        """The game is over: the previous move ended it."""

    @abstractmethod
    def winning_moves(self, mask: int) -> int:
        """Bitmask of legal moves that end the game at once (0 if already over)."""

    @abstractmethod
    def move_mask(self, mask: int) -> int:
        """Bitmask of legal moves (0 once the game is over)."""

    @abstractmethod
    def play(self, mask: int, i: int) -> int:
        ...

    @property
    def start(self) -> int:
        return 0

    def moves(self, mask: int) -> List[int]:
        return list(iter_bits(self.move_mask(mask)))

    def children(self, mask: int) -> Iterator[int]:
        for i in iter_bits(self.move_mask(mask)):
            yield self.play(mask, i)

    def moves_played(self, mask: int) -> int:
        """Number of moves that led from the start position to `mask`."""
        return popcount(mask)

    # ---- classification ----
    def classify(self, mask: int) -> Classification:
        moves = self.move_mask(mask)
        if not moves:
            return Classification.TERMINAL
        if self.winning_moves(mask):
            return Classification.ULT
        for i in iter_bits(moves):
            if not self.winning_moves(self.play(mask, i)):
                return Classification.OTHER
        return Classification.PENULT

    def is_penult(self, mask: int) -> bool:
        return self.classify(mask) is Classification.PENULT

    # ---- enumeration support ----
    @abstractmethod
    def dead_prefix(self, mask: int, decided: int, added: bool) -> bool:
        """
        True when no board agreeing with the first `decided` universe indices
        of `mask` (later indices unset or undecided) can be a penult.
        `added` says whether index decided-1 was just set.
        """

    def __repr__(self) -> str:
        return f"<{type(self).__name__} n={self.n}>"


class PlacementRules(RuleSet):
    """Games where a move claims a free element."""

    def move_mask(self, mask: int) -> int:
        if self.is_won(mask):
            return 0
        return self.full & ~mask

    def play(self, mask: int, i: int) -> int:
        return mask | 1 << i

    def dead_prefix(self, mask: int, decided: int, added: bool) -> bool:
        # Undecided elements are still free here. If any free element wins now
        # it wins in every completion too (win predicates are monotone), either
        # as an existing token or as a terminal option.
        if added and (self.is_won(mask) or self.winning_moves(mask)):
            return True
        return self._window_dead(mask, decided)

    def _window_dead(self, mask: int, decided: int) -> bool:
        return False


# --------------------
# Impartial Tak
# --------------------

LEFT, RIGHT, TOP, BOTTOM = 1, 2, 4, 8


def _spans(sides: int) -> bool:
    return sides & (LEFT | RIGHT) == LEFT | RIGHT or sides & (TOP | BOTTOM) == TOP | BOTTOM


class TakRules(PlacementRules):
    game = Game.TAK

    def __init__(self, n: int):
        super().__init__(n)
        self.neighbours: List[List[int]] = []
        # bitwise OR of the board sides each cell touches
        self.sides: List[int] = []
        for i in range(self.size):
            r, c = divmod(i, n)
            nbrs = []
            if r > 0:
                nbrs.append(i - n)
            if r < n - 1:
                nbrs.append(i + n)
            if c > 0:
                nbrs.append(i - 1)
            if c < n - 1:
                nbrs.append(i + 1)
            self.neighbours.append(nbrs)
            sides = 0
            if c == 0:
                sides |= LEFT
            if c == n - 1:
                sides |= RIGHT
            if r == 0:
                sides |= TOP
            if r == n - 1:
                sides |= BOTTOM
            self.sides.append(sides)
        # plus-shaped windows keyed by the index of their last (bottom) cell
        self.cross_closing: Dict[int, int] = {}
        for r in range(1, n - 1):
            for c in range(1, n - 1):
                centre = r * n + c
                window = 0
                for j in (centre - n, centre - 1, centre, centre + 1, centre + n):
                    window |= 1 << j
                self.cross_closing[centre + n] = window

    def components(self, mask: int) -> Tuple[UnionFind, Dict[int, int]]:
        """Union-find over occupied cells, and the sides touched by each component root."""
        uf = UnionFind(self.size)
        n = self.n
        for i in iter_bits(mask):
            if i % n < n - 1 and mask >> (i + 1) & 1:
                uf.union(i, i + 1)
            if i + n < self.size and mask >> (i + n) & 1:
                uf.union(i, i + n)
        touched: Dict[int, int] = {}
        for i in iter_bits(mask):
            root = uf.find(i)
            touched[root] = touched.get(root, 0) | self.sides[i]
        return uf, touched

    def is_won(self, mask: int) -> bool:
        _, touched = self.components(mask)
        return any(_spans(sides) for sides in touched.values())

    def winning_moves(self, mask: int) -> int:
        uf, touched = self.components(mask)
        if any(_spans(sides) for sides in touched.values()):
            return 0
        wins = 0
        for j in iter_bits(self.full & ~mask):
            sides = self.sides[j]
            for k in self.neighbours[j]:
                if mask >> k & 1:
                    sides |= touched[uf.find(k)]
            if _spans(sides):
                wins |= 1 << j
        return wins

    def _window_dead(self, mask: int, decided: int) -> bool:
        # every penult has a token in each fully-inside plus window
        window = self.cross_closing.get(decided - 1)
        return window is not None and not mask & window


# --------------------
# Impartial Tic and its dual
# --------------------

def _lines(n: int) -> List[int]:
    rows = [((1 << n) - 1) << (r * n) for r in range(n)]
    cols = [sum(1 << (r * n + c) for r in range(n)) for c in range(n)]
    return rows + cols


class TicRules(PlacementRules):
    game = Game.TIC

    def __init__(self, n: int):
        super().__init__(n)
        self.lines = _lines(n)

    def is_won(self, mask: int) -> bool:
        return any(mask & line == line for line in self.lines)

    def winning_moves(self, mask: int) -> int:
        if self.is_won(mask):
            return 0
        wins = 0
        for line in self.lines:
            missing = line & ~mask
            if missing & (missing - 1) == 0:
                wins |= missing
        return wins


class DualTicRules(RuleSet):
    """
    Removal game: the mask holds the tokens still on the board, a move takes
    one away, and the game ends when some row or column is empty.
    """
    game = Game.DUALTIC

    def __init__(self, n: int):
        super().__init__(n)
        self.lines = _lines(n)
        # index of the last cell of each line, for prefix pruning
        self.line_ends = [line.bit_length() - 1 for line in self.lines]

    @property
    def start(self) -> int:
        return self.full

    def moves_played(self, mask: int) -> int:
        return self.size - popcount(mask)

    def is_won(self, mask: int) -> bool:
        return any(not mask & line for line in self.lines)

    def winning_moves(self, mask: int) -> int:
        if self.is_won(mask):
            return 0
        wins = 0
        for line in self.lines:
            left = mask & line
            if left & (left - 1) == 0:
                wins |= left
        return wins

    def move_mask(self, mask: int) -> int:
        if self.is_won(mask):
            return 0
        return mask

    def play(self, mask: int, i: int) -> int:
        return mask & ~(1 << i)

    def dead_prefix(self, mask: int, decided: int, added: bool) -> bool:
        # A penult has at least two tokens per line, and every token sits in a
        # row or a column holding exactly two.
        last = decided - 1
        for line, end in zip(self.lines, self.line_ends):
            if end == last and popcount(mask & line) < 2:
                return True
        if decided % self.n:
            return False
        n = self.n
        crowded_rows = 0
        for r in range(decided // n):
            row = self.lines[r]
            if popcount(mask & row) >= 3:
                crowded_rows |= mask & row
        if not crowded_rows:
            return False
        for col in self.lines[n:]:
            seen = mask & col
            if popcount(seen) >= 3 and seen & crowded_rows:
                return True
        return False


# --------------------
# Dots and boxes, first completed box ends the game
# --------------------

class DotsAndBoxesRules(PlacementRules):
    game = Game.DB

    def __init__(self, n: int):
        super().__init__(n)
        self.boxes = []
        for r in range(n - 1):
            for c in range(n - 1):
                box = 0
                for e in box_edges(n, r, c):
                    box |= 1 << e
                self.boxes.append(box)

    def is_won(self, mask: int) -> bool:
        return any(mask & box == box for box in self.boxes)

    def winning_moves(self, mask: int) -> int:
        if self.is_won(mask):
            return 0
        wins = 0
        for box in self.boxes:
            missing = box & ~mask
            if missing and missing & (missing - 1) == 0:
                wins |= missing
        return wins


_RULES = {
    Game.TAK: TakRules,
    Game.TIC: TicRules,
    Game.DUALTIC: DualTicRules,
    Game.DB: DotsAndBoxesRules,
}


@lru_cache(maxsize=None)
def rules_for(game: Game, n: int) -> RuleSet:
    return _RULES[Game(game)](n)


# --------------------
# Board-level API
# --------------------

def is_won(b: Board) -> bool:
    return rules_for(b.game, b.n).is_won(b.mask)


def legal_moves(b: Board) -> List[int]:
    return rules_for(b.game, b.n).moves(b.mask)


def play(b: Board, i: int) -> Board:
    rules = rules_for(b.game, b.n)
    if not rules.move_mask(b.mask) >> i & 1:
        raise ValueError(f"index {i} is not a legal move")
    return Board(b.game, b.n, rules.play(b.mask, i))


def classify(b: Board) -> Classification:
    return rules_for(b.game, b.n).classify(b.mask)
