from pathlib import Path

import pytest

from charp_cache.database import CacheDatabase

# --- Fixtures ---


@pytest.fixture
def tmp_cache_path(tmp_path: Path) -> Path:
    """Provides a path for a temporary cache file."""
    return tmp_path / "cache" / "test-cache.sqlite"


@pytest.fixture
def cache_db(tmp_cache_path: Path) -> CacheDatabase:
    """Provides a new, empty CacheDatabase, closed after test."""
    db = CacheDatabase(tmp_cache_path, engine_version="1.0")
    yield db
    db.close()


@pytest.fixture
def readonly_cache(tmp_cache_path: Path) -> CacheDatabase:
    """Provides a read-only CacheDatabase with one entry in namespace 'ns'."""
    with CacheDatabase(tmp_cache_path, engine_version="1.0") as db:
        db.put("ns", "k1", {"value": 1})
    db = CacheDatabase(tmp_cache_path, engine_version="1.0", read_only=True)
    yield db
    db.close()
