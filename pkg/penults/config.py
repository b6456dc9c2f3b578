import os
from functools import lru_cache
from pathlib import Path

try:
    from dotenv import load_dotenv  # pip install python-dotenv
    load_dotenv()
except Exception:
    pass

class Settings:
    def __init__(self) -> None:
        # ---- Results cache ----
        self.PENULT_CACHE_DIR: str = os.getenv("PENULT_CACHE_DIR", "~/.cache/penults")
        self.PENULT_CACHE_ENABLED: bool = os.getenv("PENULT_CACHE_ENABLED", "true").lower() == "true"

        # ---- Search limits ----
        self.PENULT_NODE_BUDGET: int = int(os.getenv("PENULT_NODE_BUDGET", str(10**9)))
        self.PENULT_WORKERS: int = int(os.getenv("PENULT_WORKERS", "1"))
        self.PENULT_PREFIX_DEPTH: int = int(os.getenv("PENULT_PREFIX_DEPTH", "8"))

        # ---- Logging ----
        self.PENULT_LOG_LEVEL: str = os.getenv("PENULT_LOG_LEVEL", "WARNING")

    # Helpers
    @property
    def cache_path(self) -> Path:
        return Path(self.PENULT_CACHE_DIR).expanduser()

    @property
    def cache_database_url(self) -> str:
        return f"sqlite:///{self.cache_path / 'results.db'}"

@lru_cache
def get_settings() -> Settings:
    return Settings()
