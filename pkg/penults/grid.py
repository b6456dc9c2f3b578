"""
Board representation and the dihedral symmetries of the square.

A board is an immutable (game, n, mask) triple. Bit i of the mask stands for
universe element i:

- grid games (tak, tic, dualtic): cell (r, c) is bit r*n + c, row 0 at top;
- dots and boxes on an n x n dot grid: all horizontal edges row-major first,
  then all vertical edges row-major.
"""
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Iterator, List, Sequence, Tuple

MAX_N = 18

Cell = Tuple[int, int]
Edge = Tuple[str, int, int]


class Game(str, Enum):
    TAK = "tak"
    TIC = "tic"
    DUALTIC = "dualtic"
    DB = "db"

    @property
    def is_grid(self) -> bool:
        return self is not Game.DB


# --------------------
# Universe geometry
# --------------------

def universe_size(game: Game, n: int) -> int:
    if Game(game) is Game.DB:
        return 2 * n * (n - 1)
    return n * n


def cell_index(n: int, r: int, c: int) -> int:
    if not (0 <= r < n and 0 <= c < n):
        raise ValueError(f"cell ({r},{c}) is off the {n}x{n} board")
    return r * n + c


def cell_at(n: int, i: int) -> Cell:
    return divmod(i, n)


def edge_index(n: int, kind: str, r: int, c: int) -> int:
    """Index of a dots-and-boxes edge. 'h' joins dot (r,c) to (r,c+1); 'v' joins (r,c) to (r+1,c)."""
    if kind == "h":
        if not (0 <= r < n and 0 <= c < n - 1):
            raise ValueError(f"horizontal edge ({r},{c}) is off a {n}-dot board")
        return r * (n - 1) + c
    if kind == "v":
        if not (0 <= r < n - 1 and 0 <= c < n):
            raise ValueError(f"vertical edge ({r},{c}) is off a {n}-dot board")
        return n * (n - 1) + r * n + c
    raise ValueError(f"edge kind must be 'h' or 'v', got {kind!r}")


def edge_at(n: int, i: int) -> Edge:
    horizontal = n * (n - 1)
    if i < horizontal:
        r, c = divmod(i, n - 1)
        return ("h", r, c)
    r, c = divmod(i - horizontal, n)
    return ("v", r, c)


def edge_endpoints(n: int, i: int) -> Tuple[Cell, Cell]:
    kind, r, c = edge_at(n, i)
    if kind == "h":
        return (r, c), (r, c + 1)
    return (r, c), (r + 1, c)


def box_edges(n: int, r: int, c: int) -> Tuple[int, int, int, int]:
    """Top, bottom, left and right edges of the unit box whose top-left dot is (r,c)."""
    return (
        edge_index(n, "h", r, c),
        edge_index(n, "h", r + 1, c),
        edge_index(n, "v", r, c),
        edge_index(n, "v", r, c + 1),
    )


# --------------------
# Dihedral group
# --------------------

@dataclass(frozen=True)
class Transform:
    """
    One of the 8 symmetries of the square: a column flip (if `reflect`)
    followed by `quarter_turns` clockwise quarter turns, (r,c) -> (c, n-1-r).
    """
    quarter_turns: int = 0
    reflect: bool = False

    def __post_init__(self):
        object.__setattr__(self, "quarter_turns", self.quarter_turns % 4)

    def map_point(self, n: int, r: int, c: int) -> Cell:
        if self.reflect:
            c = n - 1 - c
        for _ in range(self.quarter_turns):
            r, c = c, n - 1 - r
        return r, c

    def compose(self, other: "Transform") -> "Transform":
        """The transform applying `other` first, then `self`."""
        sign = -1 if self.reflect else 1
        return Transform(self.quarter_turns + sign * other.quarter_turns, self.reflect != other.reflect)

    def inverse(self) -> "Transform":
        if self.reflect:
            return self
        return Transform(-self.quarter_turns)

    @property
    def name(self) -> str:
        return _TRANSFORM_NAMES[(self.quarter_turns, self.reflect)]

    def __repr__(self) -> str:
        return f"<Transform {self.name}>"


_TRANSFORM_NAMES = {
    (0, False): "identity",
    (1, False): "rotate90",
    (2, False): "rotate180",
    (3, False): "rotate270",
    (0, True): "flip_columns",
    (1, True): "anti_transpose",
    (2, True): "flip_rows",
    (3, True): "transpose",
}

IDENTITY = Transform(0)
ROTATE_90 = Transform(1)
ROTATE_180 = Transform(2)
ROTATE_270 = Transform(3)
FLIP_COLUMNS = Transform(0, True)
FLIP_ROWS = Transform(2, True)
TRANSPOSE = Transform(3, True)
ANTI_TRANSPOSE = Transform(1, True)

TRANSFORMS: Tuple[Transform, ...] = tuple(Transform(k, f) for f in (False, True) for k in range(4))
ROTATIONS: Tuple[Transform, ...] = TRANSFORMS[:4]


def transform_by_name(name: str) -> Transform:
    for t in TRANSFORMS:
        if t.name == name:
            return t
    raise ValueError(f"unknown transform {name!r}")


# --------------------
# Permutation tables
# --------------------

@lru_cache(maxsize=None)
def transform_permutation(game: Game, n: int, t: Transform) -> Tuple[int, ...]:
    """perm[i] is the universe index that element i lands on under t."""
    if Game(game) is Game.DB:
        lookup = {}
        for i in range(universe_size(game, n)):
            a, b = edge_endpoints(n, i)
            lookup[frozenset((a, b))] = i
        perm = []
        for i in range(universe_size(game, n)):
            a, b = edge_endpoints(n, i)
            perm.append(lookup[frozenset((t.map_point(n, *a), t.map_point(n, *b)))])
        return tuple(perm)
    return tuple(cell_index(n, *t.map_point(n, *cell_at(n, i))) for i in range(n * n))


def _layout(game: Game) -> Game:
    # tak, tic and dualtic share the cell layout
    return Game.DB if Game(game) is Game.DB else Game.TAK


@lru_cache(maxsize=None)
def _byte_tables(layout: Game, n: int, t: Transform) -> Tuple[Tuple[int, ...], ...]:
    perm = transform_permutation(layout, n, t)
    tables = []
    for base in range(0, len(perm), 8):
        width = min(8, len(perm) - base)
        table = []
        for byte in range(1 << width):
            image = 0
            for b in range(width):
                if byte >> b & 1:
                    image |= 1 << perm[base + b]
            table.append(image)
        tables.append(tuple(table))
    return tuple(tables)


def permute_mask(game: Game, n: int, mask: int, t: Transform) -> int:
    tables = _byte_tables(_layout(game), n, t)
    image = 0
    j = 0
    while mask:
        image |= tables[j][mask & 0xFF]
        mask >>= 8
        j += 1
    return image


def orbit_masks(game: Game, n: int, mask: int, transforms: Sequence[Transform] = TRANSFORMS) -> List[int]:
    return [permute_mask(game, n, mask, t) for t in transforms]


def canonical_key(game: Game, n: int, mask: int, transforms: Sequence[Transform] = TRANSFORMS) -> int:
    """Smallest integer image of `mask`; equal for isometric boards. Used as a memo key."""
    return min(orbit_masks(game, n, mask, transforms))


def _row_major_key(mask: int, size: int) -> str:
    # cell 0 first, empty sorts before occupied
    return format(mask, f"0{size}b")[::-1] if size else ""


def canonical_mask(game: Game, n: int, mask: int, transforms: Sequence[Transform] = TRANSFORMS) -> int:
    size = universe_size(game, n)
    return min(orbit_masks(game, n, mask, transforms), key=lambda m: _row_major_key(m, size))


# --------------------
# Board
# --------------------

@dataclass(frozen=True)
class Board:
    game: Game
    n: int
    mask: int = 0

    def __post_init__(self):
        object.__setattr__(self, "game", Game(self.game))
        if not 1 <= self.n <= MAX_N:
            raise ValueError(f"side length must be between 1 and {MAX_N}, got {self.n}")
        if self.mask < 0 or self.mask >> universe_size(self.game, self.n):
            raise ValueError("mask has bits outside the move universe")

    # ---- constructors ----
    @classmethod
    def empty(cls, game: Game, n: int) -> "Board":
        return cls(game, n, 0)

    @classmethod
    def full(cls, game: Game, n: int) -> "Board":
        return cls(game, n, (1 << universe_size(game, n)) - 1)

    @classmethod
    def from_indices(cls, game: Game, n: int, indices: Iterable[int]) -> "Board":
        size = universe_size(game, n)
        mask = 0
        for i in indices:
            if not 0 <= i < size:
                raise ValueError(f"index {i} is outside the move universe")
            mask |= 1 << i
        return cls(game, n, mask)

    @classmethod
    def from_cells(cls, game: Game, n: int, cells: Iterable[Sequence[int]]) -> "Board":
        if not Game(game).is_grid:
            raise ValueError("cells only describe grid-game boards")
        return cls.from_indices(game, n, (cell_index(n, r, c) for r, c in cells))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence]) -> "Board":
        return cls.from_indices(Game.DB, n, (edge_index(n, k, r, c) for k, r, c in edges))

    # ---- views ----
    @property
    def universe(self) -> int:
        return universe_size(self.game, self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.universe) - 1

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)

    def indices(self) -> Iterator[int]:
        mask, i = self.mask, 0
        while mask:
            if mask & 1:
                yield i
            mask >>= 1
            i += 1

    def cells(self) -> List[Cell]:
        if not self.game.is_grid:
            raise ValueError("dots-and-boxes boards have edges, not cells")
        return [cell_at(self.n, i) for i in self.indices()]

    def edges(self) -> List[Edge]:
        if self.game.is_grid:
            raise ValueError("grid boards have cells, not edges")
        return [edge_at(self.n, i) for i in self.indices()]

    def with_index(self, i: int) -> "Board":
        return Board(self.game, self.n, self.mask | 1 << i)

    def without_index(self, i: int) -> "Board":
        return Board(self.game, self.n, self.mask & ~(1 << i))

    def __repr__(self) -> str:
        return f"<Board {self.game.value} n={self.n} tokens={token_count(self)}>"


# --------------------
# Operations
# --------------------

def token_count(b: Board) -> int:
    return bin(b.mask).count("1")


def apply_transform(b: Board, t: Transform) -> Board:
    return Board(b.game, b.n, permute_mask(b.game, b.n, b.mask, t))


def canonical_form(b: Board, transforms: Sequence[Transform] = TRANSFORMS) -> Board:
    return Board(b.game, b.n, canonical_mask(b.game, b.n, b.mask, transforms))


def is_isometric(a: Board, b: Board) -> bool:
    return a.game == b.game and a.n == b.n and canonical_key(a.game, a.n, a.mask) == canonical_key(b.game, b.n, b.mask)


def complement(b: Board) -> Board:
    """Invert the occupancy and swap tic <-> dualtic."""
    if b.game is Game.TIC:
        other = Game.DUALTIC
    elif b.game is Game.DUALTIC:
        other = Game.TIC
    else:
        raise ValueError(f"complement is only defined for tic and dualtic boards, not {b.game.value}")
    return Board(other, b.n, b.full_mask & ~b.mask)
