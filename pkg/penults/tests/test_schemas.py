import pytest
from pydantic import ValidationError

from penults.grid import Board, Game
from penults.schemas import BoardJSON, CheckpointJSON, PlayLineJSON, SpectrumJSON


def test_board_json_defaults_to_empty():
    assert BoardJSON(game="tak", n=3).to_board() == Board.empty(Game.TAK, 3)
    assert BoardJSON(game="db", n=3).to_board() == Board.empty(Game.DB, 3)


def test_board_json_round_trip_keeps_universe_order():
    b = Board.from_cells(Game.TIC, 3, [(2, 2), (0, 1)])
    data = BoardJSON.from_board(b)
    assert data.cells == [(0, 1), (2, 2)]
    assert data.to_json() == '{"game":"tic","n":3,"cells":[[0,1],[2,2]]}'


def test_board_json_rejects_wrong_universe():
    with pytest.raises(ValidationError):
        BoardJSON(game="db", n=3, cells=[(0, 0)])
    with pytest.raises(ValidationError):
        BoardJSON(game="tak", n=3, edges=[("h", 0, 0)])
    with pytest.raises(ValidationError):
        BoardJSON(game="tak", n=3, cells=[(3, 0)])
    with pytest.raises(ValidationError):
        BoardJSON(game="db", n=3, edges=[("v", 2, 0)])
    with pytest.raises(ValidationError):
        BoardJSON(game="tak", n=0)
    with pytest.raises(ValidationError):
        BoardJSON(game="go", n=3)


def test_play_line_json():
    line = PlayLineJSON(game="tak", n=4, moves=[(0, 0), (3, 3)], winner="first", strategy_moves=[1])
    assert line.breakdown is False
    assert PlayLineJSON(game="tak", n=4, moves=[], winner="second", strategy_moves=[3, 1]).strategy_moves == [1, 3]
    with pytest.raises(ValidationError):
        PlayLineJSON(game="tak", n=4, moves=[], winner="nobody", strategy_moves=[])
    with pytest.raises(ValidationError):
        PlayLineJSON(game="tak", n=4, moves=[], winner="first", strategy_moves=[-1])


def test_checkpoint_json():
    state = CheckpointJSON(prefix_mask=5, decided_count=8, emitted_count=0)
    assert CheckpointJSON.model_validate_json(state.model_dump_json()) == state
    with pytest.raises(ValidationError):
        CheckpointJSON(prefix_mask=0, decided_count=-1, emitted_count=0)


def test_spectrum_json():
    report = SpectrumJSON(game="tak", n=4, classes={6: 10, 7: 30, 8: 19}, interval=True)
    assert report.checks == {}
    assert sum(report.classes.values()) == 59
