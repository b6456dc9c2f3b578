import pytest

from penults.bounds import (
    WindowKind,
    snake_upper_bound,
    tak_lower_bound,
    tak_lower_bound_as_stated,
    tak_upper_bound,
    tic_dual_upper_bound,
    window_min,
    window_sums,
)
from penults.constructions import fixtures
from penults.enumeration import enumerate_penults, extremes
from penults.errors import DomainError
from penults.grid import Board, Game


def test_window_shapes():
    assert len(WindowKind.CROSS.weights) == 5
    assert len(WindowKind.THICK_CROSS.weights) == 12
    assert WindowKind.WEIGHTED_CROSS.total == 26
    assert WindowKind.WEIGHTED_CROSS.weights[(2, 2)] == 2
    assert WindowKind.WEIGHTED_CROSS.weights[(0, 0)] == 0


def test_window_sums():
    assert window_min(Board.empty(Game.TAK, 5), WindowKind.CROSS) == 0
    assert window_min(Board.full(Game.TAK, 4), WindowKind.THICK_CROSS) == 12
    sums = window_sums(Board.full(Game.TAK, 6), WindowKind.WEIGHTED_CROSS)
    assert sorted(sums) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert set(sums.values()) == {26}


def test_weighted_window_on_smallest_five_by_five():
    assert window_min(fixtures("tak5_minimal"), WindowKind.WEIGHTED_CROSS) == 8


def test_window_domain():
    with pytest.raises(DomainError):
        window_sums(Board.empty(Game.TAK, 4), WindowKind.WEIGHTED_CROSS)
    with pytest.raises(DomainError):
        window_sums(Board.empty(Game.DB, 4), WindowKind.CROSS)


def test_tak_penults_fill_every_window():
    for b in enumerate_penults(Game.TAK, 4):
        assert window_min(b, WindowKind.CROSS) >= 1
        assert window_min(b, WindowKind.THICK_CROSS) >= 3


@pytest.mark.slow
def test_tak_five_penults_fill_the_weighted_window():
    for b in enumerate_penults(Game.TAK, 5):
        assert window_min(b, WindowKind.CROSS) >= 1
        assert window_min(b, WindowKind.WEIGHTED_CROSS) >= 7


def test_tak_lower_bound():
    assert [tak_lower_bound(n) for n in (2, 4, 5, 8)] == [0, 0, 1, 5]
    assert tak_lower_bound(4) <= extremes(Game.TAK, 4)[0]
    assert tak_lower_bound_as_stated(7) == 0
    assert tak_lower_bound_as_stated(9) == 1
    assert tak_lower_bound_as_stated(16) == 18
    for n in range(8, 30):
        assert tak_lower_bound_as_stated(n) <= tak_lower_bound(n)


def test_tic_dual_upper_bound():
    assert [tic_dual_upper_bound(n) for n in (2, 3, 4, 5, 8)] == [4, 6, 9, 12, 24]
    with pytest.raises(DomainError):
        tic_dual_upper_bound(1)


def test_snake_upper_bound():
    assert [snake_upper_bound(n) for n in (6, 7, 13, 14, 18)] == [18, 23, 71, 80, 138]
    with pytest.raises(DomainError):
        snake_upper_bound(5)


@pytest.mark.parametrize("n", range(6, 41))
def test_snake_upper_bound_closed_forms(n):
    extra = {0: 6 * n - 18, 1: 4 * n - 8, 2: 4 * n - 12, 3: 4 * n - 12, 4: 4 * n - 8, 5: 6 * n - 16}[n % 6]
    assert 3 * snake_upper_bound(n) == n * n + extra
    assert tak_lower_bound(n) <= snake_upper_bound(n) <= tak_upper_bound(n)


def test_tak_upper_bound():
    assert [tak_upper_bound(n) for n in (2, 3, 4, 7)] == [0, 3, 8, 35]
    with pytest.raises(DomainError):
        tak_upper_bound(1)
