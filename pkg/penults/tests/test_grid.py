import pytest
from hypothesis import given, strategies as st

from penults.grid import (
    ANTI_TRANSPOSE,
    IDENTITY,
    ROTATE_90,
    TRANSFORMS,
    TRANSPOSE,
    Board,
    Game,
    Transform,
    apply_transform,
    box_edges,
    canonical_form,
    canonical_key,
    complement,
    edge_at,
    edge_index,
    is_isometric,
    orbit_masks,
    token_count,
    transform_by_name,
    transform_permutation,
    universe_size,
)

transforms = st.sampled_from(TRANSFORMS)


@st.composite
def boards(draw, games=(Game.TAK, Game.TIC, Game.DUALTIC, Game.DB), max_n=5):
    game = draw(st.sampled_from(games))
    n = draw(st.integers(min_value=2, max_value=max_n))
    mask = draw(st.integers(min_value=0, max_value=(1 << universe_size(game, n)) - 1))
    return Board(game, n, mask)


def diagonal(n):
    return Board.from_cells(Game.TAK, n, [(i, i) for i in range(n)])


def anti_diagonal(n):
    return Board.from_cells(Game.TAK, n, [(i, n - 1 - i) for i in range(n)])


# --------------------
# Board
# --------------------

def test_board_rejects_bits_outside_universe():
    with pytest.raises(ValueError):
        Board(Game.TAK, 2, 1 << 4)
    with pytest.raises(ValueError):
        Board(Game.TAK, 19)
    assert Board.full(Game.TAK, 18).universe == 324
    with pytest.raises(ValueError):
        Board.from_cells(Game.TAK, 3, [(3, 0)])


def test_board_views():
    b = Board.from_cells(Game.TIC, 3, [(2, 1), (0, 0)])
    assert b.cells() == [(0, 0), (2, 1)]
    assert 0 in b and 7 in b and 1 not in b
    assert token_count(Board.empty(Game.TAK, 4)) == 0
    assert token_count(Board.full(Game.DB, 3)) == 12
    with pytest.raises(ValueError):
        b.edges()


def test_edge_indexing():
    n = 3
    assert edge_index(n, "h", 0, 0) == 0
    assert edge_index(n, "h", 2, 1) == 5
    assert edge_index(n, "v", 0, 0) == 6
    assert edge_index(n, "v", 1, 2) == 11
    assert [edge_at(n, i) for i in box_edges(n, 1, 1)] == [("h", 1, 1), ("h", 2, 1), ("v", 1, 1), ("v", 1, 2)]
    with pytest.raises(ValueError):
        edge_index(n, "h", 0, 2)


# --------------------
# Transforms
# --------------------

def test_identity_and_quarter_turn():
    b = Board.from_cells(Game.TAK, 3, [(0, 1)])
    assert apply_transform(b, IDENTITY) == b
    assert apply_transform(b, ROTATE_90).cells() == [(1, 2)]


def test_transpose_fixes_main_diagonal():
    assert apply_transform(diagonal(3), TRANSPOSE) == diagonal(3)
    assert apply_transform(anti_diagonal(3), ANTI_TRANSPOSE) == anti_diagonal(3)


def test_transform_names_round_trip():
    assert len({t.name for t in TRANSFORMS}) == 8
    for t in TRANSFORMS:
        assert transform_by_name(t.name) == t
    with pytest.raises(ValueError):
        transform_by_name("shear")


@given(transforms, transforms)
def test_composition_matches_sequential_application(t, u):
    n = 5
    for r in range(n):
        for c in range(n):
            assert t.compose(u).map_point(n, r, c) == t.map_point(n, *u.map_point(n, r, c))
    assert t.compose(u) in TRANSFORMS


@given(transforms)
def test_every_transform_has_an_inverse(t):
    assert t.compose(t.inverse()) == IDENTITY
    assert t.inverse().compose(t) == IDENTITY


@pytest.mark.parametrize("n", [2, 3, 4])
def test_edge_permutations_are_bijections(n):
    for t in TRANSFORMS:
        perm = transform_permutation(Game.DB, n, t)
        assert sorted(perm) == list(range(universe_size(Game.DB, n)))


@given(boards(), transforms)
def test_transform_preserves_token_count(b, t):
    assert token_count(apply_transform(b, t)) == token_count(b)


# --------------------
# Canonical forms
# --------------------

@given(boards())
def test_canonical_form_is_idempotent(b):
    assert canonical_form(canonical_form(b)) == canonical_form(b)


@given(boards(), transforms)
def test_canonical_form_is_orbit_invariant(b, t):
    assert canonical_form(apply_transform(b, t)) == canonical_form(b)
    assert is_isometric(b, apply_transform(b, t))


def test_diagonals_share_canonical_form():
    assert canonical_form(diagonal(3)) == canonical_form(anti_diagonal(3))


def test_canonical_form_is_row_major_minimum():
    # the empty prefix is longest when the lone token sits in the last cell
    corner = Board.from_cells(Game.TAK, 3, [(0, 0)])
    assert canonical_form(corner).cells() == [(2, 2)]
    b = Board.from_cells(Game.TAK, 3, [(0, 1), (1, 0)])
    strings = [format(m, "09b")[::-1] for m in orbit_masks(Game.TAK, 3, b.mask)]
    assert format(canonical_form(b).mask, "09b")[::-1] == min(strings)


def test_orbit_sizes_divide_eight():
    for mask in range(1 << 9):
        size = len(set(orbit_masks(Game.TAK, 3, mask)))
        assert 8 % size == 0


def test_canonical_key_is_orbit_minimum():
    b = Board.from_cells(Game.TIC, 4, [(0, 1), (2, 3), (3, 3)])
    assert canonical_key(b.game, b.n, b.mask) == min(orbit_masks(b.game, b.n, b.mask))


def test_rotation_subgroup_separates_mirror_images():
    # an L-tromino and its reflection are isometric but not rotations of each other
    left = Board.from_cells(Game.TAK, 3, [(0, 0), (1, 0), (1, 1), (1, 2)])
    right = apply_transform(left, Transform(0, True))
    rotations = TRANSFORMS[:4]
    assert canonical_key(left.game, 3, left.mask) == canonical_key(right.game, 3, right.mask)
    assert canonical_key(left.game, 3, left.mask, rotations) != canonical_key(right.game, 3, right.mask, rotations)


# --------------------
# Complement
# --------------------

def test_complement_of_empty_tic_is_full_dualtic():
    b = complement(Board.empty(Game.TIC, 3))
    assert b.game is Game.DUALTIC
    assert token_count(b) == 9


@given(boards(games=(Game.TIC, Game.DUALTIC)))
def test_complement_is_an_involution(b):
    assert complement(complement(b)) == b


def test_complement_rejects_tak_and_db():
    with pytest.raises(ValueError):
        complement(Board.empty(Game.TAK, 3))
    with pytest.raises(ValueError):
        complement(Board.empty(Game.DB, 3))
