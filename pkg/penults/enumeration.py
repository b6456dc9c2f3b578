"""
Exhaustive penult enumeration up to isometry.

The search decides universe indices in ascending order, token or no token,
and abandons a branch as soon as the rule set reports the prefix can no
longer complete to a penult. The first `prefix_depth` decisions split the
work into independent tasks that can run in worker processes; results are
merged in task order so the output and the checkpoint stream do not depend
on the worker count.
"""
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from penults.bounds import snake_upper_bound, tak_lower_bound, tak_lower_bound_as_stated
from penults.config import get_settings
from penults.errors import BudgetExceeded
from penults.games import rules_for
from penults.grid import TRANSFORMS, Board, Game, Transform, canonical_key, canonical_mask, orbit_masks, token_count
from penults.rendering import board_to_json, parse_board
from penults.schemas import CheckpointJSON, SpectrumJSON

logger = logging.getLogger(__name__)


@dataclass
class Spectrum:
    game: Game
    n: int
    classes: Dict[int, int]
    representatives: Optional[Dict[int, List[Board]]] = field(default=None, repr=False)

    @property
    def token_counts(self) -> List[int]:
        return sorted(self.classes)

    @property
    def total(self) -> int:
        return sum(self.classes.values())


# --------------------
# Depth-first search
# --------------------

class _Walker:
    """One depth-first pass below a fixed prefix."""

    def __init__(self, game: Game, n: int, limit: int, transforms: Sequence[Transform] = TRANSFORMS):
        self.rules = rules_for(game, n)
        self.limit = limit
        self.transforms = transforms
        self.nodes = 0
        self.keys: Set[int] = set()
        self.prefixes: List[int] = []

    def walk(self, mask: int, decided: int, stop: int) -> None:
        self.nodes += 1
        if self.nodes > self.limit:
            raise BudgetExceeded(self.nodes, self.limit)
        rules = self.rules
        if decided == stop:
            if stop < rules.size:
                self.prefixes.append(mask)
            elif rules.is_penult(mask):
                self.keys.add(canonical_key(rules.game, rules.n, mask, self.transforms))
            return
        bit = 1 << decided
        if not rules.dead_prefix(mask, decided + 1, False):
            self.walk(mask, decided + 1, stop)
        if not rules.dead_prefix(mask | bit, decided + 1, True):
            self.walk(mask | bit, decided + 1, stop)


def _search_task(task: Tuple[Game, int, int, int, int, Tuple[Transform, ...]]) -> Tuple[List[int], int]:
    game, n, prefix, depth, limit, transforms = task
    walker = _Walker(game, n, limit, transforms)
    walker.walk(prefix, depth, walker.rules.size)
    return sorted(walker.keys), walker.nodes


def _prefix_tasks(game: Game, n: int, depth: int, limit: int) -> Tuple[List[int], int]:
    walker = _Walker(game, n, limit)
    walker.walk(0, 0, depth)
    return walker.prefixes, walker.nodes


# --------------------
# Checkpoint and archive files
# --------------------

def _replace_text(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def _write_checkpoint(path: Path, prefix_mask: int, decided: int, emitted: int) -> None:
    state = CheckpointJSON(prefix_mask=prefix_mask, decided_count=decided, emitted_count=emitted)
    _replace_text(path, state.model_dump_json() + "\n")


def _read_archive(path: Path, count: int) -> List[str]:
    """
    The first `count` lines of the archive. Lines past them were appended
    after the last checkpoint and are dropped.
    """
    lines = []
    with open(path) as f:
        for line in f:
            if len(lines) == count:
                break
            if line.strip():
                lines.append(line if line.endswith("\n") else line + "\n")
    if len(lines) < count:
        raise ValueError(f"archive holds {len(lines)} classes, checkpoint expects {count}")
    return lines


def _representative(game: Game, n: int, key: int, transforms: Sequence[Transform]) -> Board:
    return Board(game, n, canonical_mask(game, n, key, transforms))


def _sorted_boards(game: Game, n: int, keys: Iterable[int], transforms: Sequence[Transform]) -> List[Board]:
    boards = [_representative(game, n, k, transforms) for k in keys]
    boards.sort(key=lambda b: (token_count(b), b.mask))
    return boards


# --------------------
# Public API
# --------------------

def enumerate_penults(
    game: Game,
    n: int,
    *,
    workers: Optional[int] = None,
    prefix_depth: Optional[int] = None,
    node_budget: Optional[int] = None,
    checkpoint: Optional[Path] = None,
    resume: bool = False,
    archive: Optional[Path] = None,
    transforms: Sequence[Transform] = TRANSFORMS,
) -> List[Board]:
    """
    One canonical board per isometry class of penults, sorted by
    (token count, mask). With `archive`, classes are appended to a JSON-lines
    file as they are found and the file is rewritten in sorted order at the
    end; `resume` restarts after the task recorded in `checkpoint`, taking
    the classes found so far from the archive.
    """
    game = Game(game)
    settings = get_settings()
    workers = workers or settings.PENULT_WORKERS
    limit = node_budget if node_budget is not None else settings.PENULT_NODE_BUDGET
    rules = rules_for(game, n)
    # at least the last index is left to the tasks
    depth = min(prefix_depth if prefix_depth is not None else settings.PENULT_PREFIX_DEPTH, rules.size - 1)
    depth = max(depth, 0)
    transforms = tuple(transforms)
    checkpoint = Path(checkpoint) if checkpoint else None
    archive = Path(archive) if archive else None

    prefixes, nodes = _prefix_tasks(game, n, depth, limit)
    logger.info("%s n=%d: %d prefix tasks at depth %d", game.value, n, len(prefixes), depth)

    found: Dict[int, None] = {}
    start = 0
    if resume:
        if checkpoint is None or archive is None:
            raise ValueError("resume needs both a checkpoint and an archive path")
        state = CheckpointJSON.model_validate_json(checkpoint.read_text())
        if state.decided_count != depth:
            raise ValueError(f"checkpoint was taken at prefix depth {state.decided_count}, not {depth}")
        lines = _read_archive(archive, state.emitted_count)
        for line in lines:
            b = parse_board(line)
            found[canonical_key(b.game, b.n, b.mask, transforms)] = None
        if len(found) != state.emitted_count:
            raise ValueError(f"archive repeats a class: {len(found)} distinct of {state.emitted_count}")
        try:
            start = prefixes.index(state.prefix_mask) + 1
        except ValueError:
            raise ValueError("checkpoint prefix is not one of this search's tasks") from None
        _replace_text(archive, "".join(lines))
        logger.info("resuming after task %d with %d classes", start, len(found))
    elif archive is not None:
        archive.write_text("")

    tasks = [(game, n, p, depth, limit, transforms) for p in prefixes[start:]]
    if workers > 1 and len(tasks) > 1:
        executor = ProcessPoolExecutor(max_workers=workers)
        results = executor.map(_search_task, tasks, chunksize=max(1, len(tasks) // (workers * 16)))
    else:
        executor = None
        results = map(_search_task, tasks)

    try:
        for i, (task, (keys, task_nodes)) in enumerate(zip(tasks, results), start=start + 1):
            nodes += task_nodes
            if nodes > limit:
                raise BudgetExceeded(nodes, limit)
            fresh = [k for k in keys if k not in found]
            for k in fresh:
                found[k] = None
            if archive is not None and fresh:
                with open(archive, "a") as f:
                    for k in fresh:
                        f.write(board_to_json(_representative(game, n, k, transforms)) + "\n")
            if checkpoint is not None:
                _write_checkpoint(checkpoint, task[2], depth, len(found))
            if i % 256 == 0 or i == len(prefixes):
                logger.info("task %d/%d, %d nodes, %d classes", i, len(prefixes), nodes, len(found))
    finally:
        if executor is not None:
            executor.shutdown(cancel_futures=True)

    boards = _sorted_boards(game, n, found, transforms)
    if archive is not None:
        _replace_text(archive, "".join(board_to_json(b) + "\n" for b in boards))
    logger.info("%s n=%d: %d classes from %d nodes", game.value, n, len(boards), nodes)
    return boards


def naive_penults(game: Game, n: int, transforms: Sequence[Transform] = TRANSFORMS) -> List[Board]:
    """Brute-force oracle: classify every board in the universe."""
    rules = rules_for(game, n)
    keys = {
        canonical_key(rules.game, n, mask, transforms)
        for mask in range(1 << rules.size)
        if rules.is_penult(mask)
    }
    return _sorted_boards(rules.game, n, keys, transforms)


def count_classes(boards: Iterable[Board], transforms: Sequence[Transform]) -> int:
    """Number of classes the given boards (and all their isometric images) fall into under `transforms`."""
    keys = set()
    for b in boards:
        for image in orbit_masks(b.game, b.n, b.mask):
            keys.add(canonical_key(b.game, b.n, image, transforms))
    return len(keys)


def spectrum(game: Game, n: int, *, boards: Optional[List[Board]] = None, **kwargs) -> Spectrum:
    if boards is None:
        boards = enumerate_penults(game, n, **kwargs)
    representatives: Dict[int, List[Board]] = {}
    for b in boards:
        representatives.setdefault(token_count(b), []).append(b)
    classes = {t: len(bs) for t, bs in sorted(representatives.items())}
    return Spectrum(Game(game), n, classes, representatives)


def extremes(game: Game, n: int, *, s: Optional[Spectrum] = None, **kwargs) -> Tuple[int, int]:
    if s is None:
        s = spectrum(game, n, **kwargs)
    if not s.classes:
        raise ValueError(f"no penults for {Game(game).value} n={n}")
    return min(s.classes), max(s.classes)


def is_interval(s: Spectrum) -> bool:
    keys = sorted(s.classes)
    return bool(keys) and keys == list(range(keys[0], keys[-1] + 1))


def spectrum_report(s: Spectrum) -> dict:
    """Spectrum as JSON data with its checks: interval check and, for tak, the bound sandwich."""
    checks: Dict[str, object] = {"interval": is_interval(s)}
    if s.game is Game.TAK and s.classes:
        low = min(s.classes)
        checks["L"] = low
        checks["U"] = max(s.classes)
        checks["lower_bound"] = tak_lower_bound(s.n)
        checks["lower_bound_as_stated"] = tak_lower_bound_as_stated(s.n)
        if s.n >= 6:
            checks["snake_upper_bound"] = snake_upper_bound(s.n)
            checks["sandwich"] = tak_lower_bound(s.n) <= low <= snake_upper_bound(s.n)
        else:
            checks["sandwich"] = tak_lower_bound(s.n) <= low
    report = SpectrumJSON(game=s.game, n=s.n, classes=s.classes, interval=is_interval(s), checks=checks)
    return report.model_dump(mode="json")
