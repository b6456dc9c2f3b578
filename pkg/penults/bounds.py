"""
Closed-form token bounds and the sliding plus-shaped windows behind the tak
lower bound.
"""
from enum import Enum
from typing import Dict, Tuple

from penults.errors import DomainError
from penults.grid import Board

Offset = Tuple[int, int]


def _plus(size: int, arm: int) -> Dict[Offset, int]:
    # the square window minus an arm x arm block at each corner
    cells = {}
    for dr in range(size):
        for dc in range(size):
            corner_r = dr < arm or dr >= size - arm
            corner_c = dc < arm or dc >= size - arm
            if not (corner_r and corner_c):
                cells[(dr, dc)] = 1
    return cells


def _weighted_cross() -> Dict[Offset, int]:
    weights = {(dr, dc): 1 for dr in range(5) for dc in range(5)}
    for corner in ((0, 0), (0, 4), (4, 0), (4, 4)):
        weights[corner] = 0
    for centre in ((2, 2), (1, 2), (3, 2), (2, 1), (2, 3)):
        weights[centre] = 2
    return weights


class WindowKind(str, Enum):
    CROSS = "cross"
    THICK_CROSS = "thick_cross"
    WEIGHTED_CROSS = "weighted_cross"

    @property
    def side(self) -> int:
        return {"cross": 3, "thick_cross": 4, "weighted_cross": 5}[self.value]

    @property
    def weights(self) -> Dict[Offset, int]:
        return _WEIGHTS[self]

    @property
    def total(self) -> int:
        return sum(self.weights.values())


_WEIGHTS = {
    WindowKind.CROSS: _plus(3, 1),
    WindowKind.THICK_CROSS: _plus(4, 1),
    WindowKind.WEIGHTED_CROSS: _weighted_cross(),
}


def window_sums(b: Board, w: WindowKind) -> Dict[Offset, int]:
    """Weighted token sum of every placement, keyed by the window's top-left cell."""
    if not b.game.is_grid:
        raise DomainError("windows are defined on grid boards only")
    w = WindowKind(w)
    if b.n < w.side:
        raise DomainError(f"a {w.side}x{w.side} {w.value} window does not fit on a {b.n}x{b.n} board")
    n = b.n
    sums = {}
    for r in range(n - w.side + 1):
        for c in range(n - w.side + 1):
            sums[(r, c)] = sum(
                weight for (dr, dc), weight in w.weights.items() if (r + dr) * n + (c + dc) in b
            )
    return sums


def window_min(b: Board, w: WindowKind) -> int:
    return min(window_sums(b, w).values())


# --------------------
# Bound formulas
# --------------------

def tak_lower_bound(n: int) -> int:
    """ceil(7(n-4)^2 / 26); 0 when the weighted window does not fit."""
    if n < 5:
        return 0
    return -(-7 * (n - 4) ** 2 // 26)


def tak_lower_bound_as_stated(n: int) -> int:
    """The weaker ceil(7(n-8)^2 / 26) form of the same bound, for n >= 8."""
    if n < 8:
        return 0
    return -(-7 * (n - 8) ** 2 // 26)


def tic_dual_upper_bound(n: int) -> int:
    if n < 2:
        raise DomainError(f"dual tic bound needs n >= 2, got {n}")
    small = {2: 4, 3: 6, 4: 9}
    if n in small:
        return small[n]
    return 4 * (n - 2)


def snake_upper_bound(n: int) -> int:
    """Token count of the snake penult on an n x n board."""
    if n < 6:
        raise DomainError(f"snake penults exist for n >= 6, got {n}")
    residue = n % 6
    if residue in (1, 4):
        return 2 * n + (n + 2) * (n - 4) // 3
    if residue == 2:
        return 2 * (n - 2) + n * (n - 2) // 3
    if residue == 3:
        return (n - 2) + (n - 1) + (n + 1) * (n - 3) // 3
    if residue == 5:
        return 2 * n + (n - 2) + (n + 2) * (n - 5) // 3
    return 3 * (n - 2) + n * (n - 3) // 3


def tak_upper_bound(n: int) -> int:
    """Largest tak penult, n^2 - 2n, attained by the variable diamond for n >= 4."""
    if n < 2:
        raise DomainError(f"no tak penults below n = 2, got {n}")
    if n == 2:
        return 0
    return n * n - 2 * n
