from datetime import datetime, timezone

from sqlalchemy import Column, DateTime, Integer, String, Text, UniqueConstraint

from .database import Base


def utcnow() -> datetime:
    return datetime.now(timezone.utc)


# ─────────────────────────────────────────────────────────────
# Cached command results, keyed by (command, game, n, flags hash)
# ─────────────────────────────────────────────────────────────
class CachedResult(Base):
    __tablename__ = "cached_results"
    __table_args__ = (
        UniqueConstraint("command", "game", "n", "flags_hash", name="uq_cached_results_key"),
    )

    id = Column(Integer, primary_key=True, index=True)
    command = Column(String(32), nullable=False, index=True)
    game = Column(String(16), nullable=False)
    n = Column(Integer, nullable=False)
    flags_hash = Column(String(64), nullable=False)

    # JSON text exactly as printed on stdout
    payload = Column(Text, nullable=False)
    created_at = Column(DateTime(timezone=True), nullable=False, default=utcnow)

    def __repr__(self) -> str:
        return f"<CachedResult id={self.id} {self.command} {self.game} n={self.n}>"
