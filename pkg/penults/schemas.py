from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, field_validator, model_validator

from penults.grid import MAX_N, Board, Game, cell_index, edge_index

# --------------------
# Board Schemas
# --------------------

class BoardJSON(BaseModel):
    game: Game
    n: int
    cells: Optional[List[Tuple[int, int]]] = None
    edges: Optional[List[Tuple[Literal["h", "v"], int, int]]] = None

    @field_validator("n")
    @classmethod
    def validate_n(cls, v):
        if not 1 <= v <= MAX_N:
            raise ValueError(f"n must be between 1 and {MAX_N}")
        return v

    @model_validator(mode="after")
    def check_universe(self):
        if self.game.is_grid:
            if self.edges is not None:
                raise ValueError(f"{self.game.value} boards take 'cells', not 'edges'")
            if self.cells is None:
                self.cells = []
            for r, c in self.cells:
                cell_index(self.n, r, c)
        else:
            if self.cells is not None:
                raise ValueError("db boards take 'edges', not 'cells'")
            if self.edges is None:
                self.edges = []
            for kind, r, c in self.edges:
                edge_index(self.n, kind, r, c)
        return self

    @classmethod
    def from_board(cls, b: Board) -> "BoardJSON":
        if b.game.is_grid:
            return cls(game=b.game, n=b.n, cells=b.cells())
        return cls(game=b.game, n=b.n, edges=b.edges())

    def to_board(self) -> Board:
        if self.game.is_grid:
            return Board.from_cells(self.game, self.n, self.cells)
        return Board.from_edges(self.n, self.edges)

    def to_json(self) -> str:
        # cells/edges come out sorted in universe order
        return self.model_dump_json(exclude_none=True)


# --------------------
# Search Schemas
# --------------------

class PlayLineJSON(BaseModel):
    game: Game
    n: int
    moves: List[Tuple[int, int]]
    winner: Literal["first", "second"]
    strategy_moves: List[int]
    breakdown: bool = False

    @field_validator("strategy_moves")
    @classmethod
    def validate_strategy_moves(cls, v):
        if any(i < 0 for i in v):
            raise ValueError("strategy move positions must be non-negative")
        return sorted(v)


class CheckpointJSON(BaseModel):
    prefix_mask: int
    decided_count: int
    emitted_count: int

    @field_validator("prefix_mask", "decided_count", "emitted_count")
    @classmethod
    def validate_non_negative(cls, v):
        if v < 0:
            raise ValueError("checkpoint fields must be non-negative")
        return v


class SpectrumJSON(BaseModel):
    game: Game
    n: int
    classes: Dict[int, int]
    interval: bool
    checks: Dict[str, object] = {}
