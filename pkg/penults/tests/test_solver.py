from functools import lru_cache
from itertools import combinations_with_replacement

import pytest

from penults.constructions import fixtures
from penults.enumeration import enumerate_penults
from penults.errors import BudgetExceeded, DomainError
from penults.games import rules_for
from penults.grid import Board, Game, canonical_key
from penults.solver import Outcome, mate_in, outcome_table, position_outcome, solve, wythoff_L


def plain_negamax(game, n):
    """Memo on the raw mask only: no symmetry folding, no win shortcut."""
    rules = rules_for(game, n)

    @lru_cache(maxsize=None)
    def wins(mask):
        return any(not wins(child) for child in rules.children(mask))

    return rules, wins


# --------------------
# Grid games
# --------------------

@pytest.mark.parametrize("game, n, expected", [
    (Game.TAK, 1, Outcome.W),
    (Game.TAK, 2, Outcome.L),
    (Game.TAK, 3, Outcome.W),
    (Game.TAK, 4, Outcome.L),
    (Game.TIC, 1, Outcome.W),
    (Game.TIC, 2, Outcome.L),
    (Game.TIC, 3, Outcome.W),
    (Game.TIC, 4, Outcome.L),
])
def test_solve(game, n, expected):
    assert solve(game, n) is expected


@pytest.mark.slow
@pytest.mark.parametrize("game", [Game.TAK, Game.TIC])
def test_solve_five(game):
    assert solve(game, 5) is Outcome.W


@pytest.mark.parametrize("n", [1, 2, 3])
def test_dualtic_matches_tic(n):
    assert solve(Game.DUALTIC, n) is solve(Game.TIC, n)


@pytest.mark.parametrize("game, n", [(Game.TAK, 2), (Game.TAK, 3), (Game.TIC, 2), (Game.TIC, 3)])
def test_solver_matches_plain_negamax(game, n):
    rules, wins = plain_negamax(game, n)
    assert (solve(game, n) is Outcome.W) == wins(rules.start)
    for key, outcome in outcome_table(game, n).items():
        assert (outcome is Outcome.W) == wins(key)


def check_outcome_recursion(game, n):
    rules = rules_for(game, n)
    table = outcome_table(game, n)
    for key, outcome in table.items():
        children = [table[canonical_key(game, n, child)] for child in rules.children(key)]
        if outcome is Outcome.L:
            assert all(c is Outcome.W for c in children)
        else:
            assert any(c is Outcome.L for c in children)


@pytest.mark.parametrize("game, n", [(Game.TAK, 3), (Game.TIC, 3), (Game.DUALTIC, 3)])
def test_outcome_recursion(game, n):
    check_outcome_recursion(game, n)


@pytest.mark.slow
@pytest.mark.parametrize("game", [Game.TAK, Game.TIC])
def test_outcome_recursion_four(game):
    check_outcome_recursion(game, 4)


def test_position_outcome():
    assert position_outcome(fixtures("tak3_diagonal")) is Outcome.L
    assert position_outcome(Board.from_cells(Game.TAK, 3, [(0, 0), (1, 0)])) is Outcome.W


def test_solve_budget():
    with pytest.raises(BudgetExceeded):
        solve(Game.TAK, 4, node_budget=5)


# --------------------
# Mate-in depths
# --------------------

def test_mate_in_examples():
    assert mate_in("subtract123", 12) == 3
    assert mate_in("nim", (1, 1)) == 1
    assert mate_in("wythoff", (3, 5)) == 2
    assert mate_in("subtract123", 0) == 0


def test_mate_in_rejects_w_positions():
    with pytest.raises(DomainError):
        mate_in("subtract123", 5)
    with pytest.raises(DomainError):
        mate_in("nim", (1, 2))
    with pytest.raises(DomainError):
        mate_in("tak", 3)


def test_subtract_mate_depths():
    losing, depth = [], {}
    for h in range(101):
        losing.append(all(not losing[h - t] for t in (1, 2, 3) if t <= h))
        if not losing[h]:
            continue
        best = 0
        for t in (1, 2, 3):
            if t > h:
                continue
            replies = [depth[h - t - u] for u in (1, 2, 3) if u <= h - t and losing[h - t - u]]
            best = max(best, 1 + min(replies))
        depth[h] = best
    for k in range(26):
        assert mate_in("subtract123", 4 * k) == depth[4 * k] == k


def test_mate_in_on_long_games():
    # deeper than the interpreter's recursion limit
    assert mate_in("subtract123", 4000) == 1000
    assert mate_in("subtract123", 20000) == 5000
    assert mate_in("nim", (30, 30)) == 30


def test_nim_mate_depths():
    for heaps in range(1, 4):
        for p in combinations_with_replacement(range(9), heaps):
            x = 0
            for h in p:
                x ^= h
            if x == 0:
                assert mate_in("nim", p) == sum(p) // 2


def test_wythoff_positions():
    assert [wythoff_L(k) for k in (0, 1, 2, 3, 4)] == [(0, 0), (1, 2), (3, 5), (4, 7), (6, 10)]
    with pytest.raises(DomainError):
        wythoff_L(-1)


def test_wythoff_mate_depths():
    size = 40
    losing = set()
    for total in range(2 * size):
        for a in range(size):
            b = total - a
            if not a <= b < size:
                continue
            options = [(a - t, b) for t in range(1, a + 1)]
            options += [(a, b - t) for t in range(1, b + 1)]
            options += [(a - t, b - t) for t in range(1, a + 1)]
            if not any(tuple(sorted(o)) in losing for o in options):
                losing.add((a, b))
    assert losing == {wythoff_L(k) for k in range(16)}
    for k in range(16):
        assert mate_in("wythoff", wythoff_L(k)) == k


@pytest.mark.parametrize("game", [Game.TAK, Game.TIC])
def test_penults_are_exactly_mate_in_one(game):
    rules = rules_for(game, 3)
    for mask in range(1 << 9):
        b = Board(game, 3, mask)
        losing = position_outcome(b) is Outcome.L
        mate_one = losing and mate_in(game.value, b) == 1
        assert rules.is_penult(mask) == mate_one


def test_tak_four_penults_are_mate_in_one():
    for b in enumerate_penults(Game.TAK, 4):
        assert mate_in("tak", b) == 1
