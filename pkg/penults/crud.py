import hashlib
import json
from typing import List, Optional

from sqlalchemy.orm import Session

from penults import models


def flags_hash(flags: dict) -> str:
    """sha256 of the flags as canonical JSON."""
    text = json.dumps(flags, sort_keys=True, default=str)
    return hashlib.sha256(text.encode()).hexdigest()


def _key_filter(q, command: str, game: str, n: int, digest: str):
    return q.filter(
        models.CachedResult.command == command,
        models.CachedResult.game == game,
        models.CachedResult.n == n,
        models.CachedResult.flags_hash == digest,
    )

# --------------------
# Cached results
# --------------------

def get_cached_result(db: Session, *, command: str, game: str, n: int, flags: dict) -> Optional[str]:
    row = _key_filter(db.query(models.CachedResult), command, game, n, flags_hash(flags)).first()
    return row.payload if row else None


def store_result(db: Session, *, command: str, game: str, n: int, flags: dict, payload: str):
    """Insert the payload for this key, replacing any earlier one."""
    if not command:
        raise ValueError("command is required")
    digest = flags_hash(flags)
    row = _key_filter(db.query(models.CachedResult), command, game, n, digest).first()
    if row is None:
        row = models.CachedResult(command=command, game=game, n=n, flags_hash=digest)
        db.add(row)
    row.payload = payload
    row.created_at = models.utcnow()
    db.commit()
    db.refresh(row)
    return row


def list_cached_results(db: Session, *, command: Optional[str] = None) -> List[models.CachedResult]:
    q = db.query(models.CachedResult)
    if command:
        q = q.filter(models.CachedResult.command == command)
    return q.order_by(models.CachedResult.created_at.desc(), models.CachedResult.id.desc()).all()


def purge_results(db: Session, *, command: Optional[str] = None) -> int:
    q = db.query(models.CachedResult)
    if command:
        q = q.filter(models.CachedResult.command == command)
    removed = q.delete(synchronize_session=False)
    db.commit()
    return removed
