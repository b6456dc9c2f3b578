import pytest
from hypothesis import given, settings, strategies as st

from penults.constructions import fixture_names, fixtures
from penults.games import Classification, classify, is_won, iter_bits, legal_moves, play, rules_for
from penults.grid import Board, Game, complement, universe_size


def brute_penult(rules, mask):
    """Penult straight from the definition, without the rule set's shortcuts."""
    if rules.is_won(mask) or not rules.move_mask(mask):
        return False
    for i in rules.moves(mask):
        child = rules.play(mask, i)
        if rules.is_won(child):
            return False
        if not any(rules.is_won(rules.play(child, j)) for j in rules.moves(child)):
            return False
    return True


# --------------------
# Small positions
# --------------------

def test_empty_two_by_two_tak_is_penult():
    assert classify(Board.empty(Game.TAK, 2)) is Classification.PENULT


def test_one_by_one_boards():
    assert classify(Board.empty(Game.TAK, 1)) is Classification.ULT
    assert classify(Board.full(Game.TAK, 1)) is Classification.TERMINAL
    assert classify(Board.full(Game.DUALTIC, 1)) is Classification.ULT


def test_diagonal_is_not_a_win_but_a_column_is():
    diagonal = Board.from_cells(Game.TAK, 3, [(0, 0), (1, 1), (2, 2)])
    column = Board.from_cells(Game.TAK, 3, [(0, 1), (1, 1), (2, 1)])
    bent = Board.from_cells(Game.TAK, 3, [(0, 0), (1, 0), (1, 1), (1, 2)])
    assert not is_won(diagonal)
    assert is_won(column)
    assert is_won(bent)
    assert is_won(Board.from_cells(Game.TIC, 3, [(1, 0), (1, 1), (1, 2)]))
    assert not is_won(Board.from_cells(Game.TIC, 3, [(0, 0), (1, 1), (2, 2)]))


def test_legal_moves():
    assert legal_moves(Board.empty(Game.TAK, 2)) == [0, 1, 2, 3]
    assert len(legal_moves(Board.empty(Game.DB, 3))) == 12
    assert legal_moves(Board.from_cells(Game.TIC, 2, [(0, 0), (0, 1)])) == []
    # dualtic moves remove a present token
    assert legal_moves(Board.from_cells(Game.DUALTIC, 2, [(0, 0), (1, 1)])) == [0, 3]


def test_play_rejects_illegal_moves():
    b = Board.from_cells(Game.TAK, 3, [(1, 1)])
    assert 4 in play(Board.empty(Game.TAK, 3), 4)
    with pytest.raises(ValueError):
        play(b, 4)
    with pytest.raises(ValueError):
        play(Board.from_cells(Game.DUALTIC, 2, [(0, 0)]), 1)


def test_dualtic_ends_when_a_line_is_empty():
    rules = rules_for(Game.DUALTIC, 3)
    assert not rules.is_won(rules.full)
    assert rules.is_won(rules.full & ~0b111)
    assert rules.moves_played(rules.full & ~0b11) == 2


@pytest.mark.parametrize("game", [Game.TAK, Game.TIC])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_saturated_board_is_won(game, n):
    assert is_won(Board.full(game, n))


@pytest.mark.parametrize("name", fixture_names())
def test_figure_fixtures_are_penults(name):
    assert classify(fixtures(name)) is Classification.PENULT


# --------------------
# Rule-set consistency
# --------------------

@pytest.mark.parametrize("game, n", [(Game.TAK, 3), (Game.TIC, 3), (Game.DUALTIC, 3), (Game.DB, 3)])
def test_monotone_under_moves(game, n):
    # once over, every further move keeps the game over
    rules = rules_for(game, n)
    for mask in range(1 << rules.size):
        if not rules.is_won(mask):
            continue
        for i in range(rules.size):
            assert rules.is_won(rules.play(mask, i))


@pytest.mark.parametrize("game, n", [(Game.TAK, 3), (Game.TIC, 3), (Game.DUALTIC, 3), (Game.DB, 3)])
def test_winning_moves_match_direct_play(game, n):
    rules = rules_for(game, n)
    for mask in range(1 << rules.size):
        expected = 0
        for i in rules.moves(mask):
            if rules.is_won(rules.play(mask, i)):
                expected |= 1 << i
        assert rules.winning_moves(mask) == expected


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=4, max_value=7), st.data())
def test_tak_winning_moves_on_larger_boards(n, data):
    rules = rules_for(Game.TAK, n)
    mask = data.draw(st.integers(min_value=0, max_value=rules.full))
    expected = 0
    if not rules.is_won(mask):
        for i in iter_bits(rules.full & ~mask):
            if rules.is_won(mask | 1 << i):
                expected |= 1 << i
    assert rules.winning_moves(mask) == expected


def flood_fill_won(n, cells):
    """Tak win by breadth-first search from one side, for each axis separately."""
    def reaches(starts, done):
        queue = [cell for cell in starts if cell in cells]
        seen = set(queue)
        while queue:
            r, c = queue.pop()
            if done(r, c):
                return True
            for nxt in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
                if nxt in cells and nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return False

    left = [(r, 0) for r in range(n)]
    top = [(0, c) for c in range(n)]
    return reaches(left, lambda r, c: c == n - 1) or reaches(top, lambda r, c: r == n - 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_tak_win_matches_flood_fill(n):
    rules = rules_for(Game.TAK, n)
    for mask in range(1 << rules.size):
        cells = set(Board(Game.TAK, n, mask).cells())
        assert rules.is_won(mask) == flood_fill_won(n, cells)


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=3, max_value=7), st.data())
def test_tak_winning_moves_match_flood_fill(n, data):
    rules = rules_for(Game.TAK, n)
    mask = data.draw(st.integers(min_value=0, max_value=rules.full))
    cells = set(Board(Game.TAK, n, mask).cells())
    expected = 0
    if not flood_fill_won(n, cells):
        for i in iter_bits(rules.full & ~mask):
            if flood_fill_won(n, cells | {divmod(i, n)}):
                expected |= 1 << i
    assert rules.winning_moves(mask) == expected


def test_corner_token_does_not_join_perpendicular_sides():
    rules = rules_for(Game.TAK, 4)
    corner = Board.from_cells(Game.TAK, 4, [(0, 0)])
    assert rules.winning_moves(corner.mask) == 0
    assert not is_won(Board.from_cells(Game.TAK, 4, [(0, 0), (0, 1), (1, 3), (0, 3)]))
    assert not is_won(Board.from_cells(Game.TAK, 4, [(0, 0), (1, 0), (2, 0), (3, 1)]))
    assert is_won(Board.from_cells(Game.TAK, 4, [(3, 0), (3, 1), (2, 1), (2, 2), (2, 3)]))


@pytest.mark.parametrize("game, n", [(Game.TAK, 3), (Game.TIC, 3), (Game.DUALTIC, 3), (Game.DB, 3)])
def test_classification_matches_definition(game, n):
    rules = rules_for(game, n)
    for mask in range(1 << rules.size):
        assert rules.is_penult(mask) == brute_penult(rules, mask)


# --------------------
# Tic / dual tic duality
# --------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_complement_preserves_classification(n):
    for mask in range(1 << universe_size(Game.TIC, n)):
        b = Board(Game.TIC, n, mask)
        assert classify(complement(b)) is classify(b)


@pytest.mark.slow
def test_complement_preserves_classification_four_by_four():
    for mask in range(1 << 16):
        b = Board(Game.TIC, 4, mask)
        assert classify(complement(b)) is classify(b)


@given(st.integers(min_value=0, max_value=(1 << 25) - 1))
def test_complement_preserves_classification_sampled(mask):
    b = Board(Game.TIC, 5, mask)
    assert classify(complement(b)) is classify(b)
