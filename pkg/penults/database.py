from functools import lru_cache

from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import Session, declarative_base, sessionmaker

from penults.config import get_settings

Base = declarative_base()


@lru_cache
def get_engine() -> Engine:
    # created on first use so importing the package never touches the cache directory
    settings = get_settings()
    settings.cache_path.mkdir(parents=True, exist_ok=True)
    engine = create_engine(settings.cache_database_url, pool_pre_ping=True)
    from penults import models  # noqa: F401  registers the tables on Base
    Base.metadata.create_all(bind=engine)
    return engine


@lru_cache
def get_session_factory() -> sessionmaker:
    return sessionmaker(autocommit=False, autoflush=False, bind=get_engine())


def SessionLocal() -> Session:
    return get_session_factory()()
