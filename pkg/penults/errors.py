class PenultError(Exception):
    """Base class for engine failures that are not plain bad input."""


class DomainError(PenultError, ValueError):
    """Parameters outside an operation's domain (bad n, wrong game, W-position...)."""


class BudgetExceeded(PenultError):
    def __init__(self, nodes: int, limit: int):
        self.nodes = nodes
        self.limit = limit
        super().__init__(f"search stopped after {nodes} nodes (limit {limit})")

    def __reduce__(self):
        # rebuilt from its fields when raised inside a worker process
        return (type(self), (self.nodes, self.limit))


class ConstructionFailed(PenultError):
    """A generator produced a board that does not verify as a penult."""


class StrategyBreakdown(PenultError):
    """No winning move and no unique symmetry-restoring cell."""
