import sqlite3
from pathlib import Path

import pytest
from charp_core.exceptions import CacheError

from charp_cache.database import BLOB_FORMAT_VERSION, CacheDatabase


# --- Initialization & Connection Management ---
def test_create_new_cache(tmp_cache_path: Path):
    assert not tmp_cache_path.exists()
    db = CacheDatabase(tmp_cache_path, engine_version="1.0")
    try:
        assert tmp_cache_path.exists()
        assert db.stats()["entries"] == 0
    finally:
        db.close()


def test_reopen_existing_cache(tmp_cache_path: Path):
    with CacheDatabase(tmp_cache_path, engine_version="1.0") as db:
        db.put("groebner", "abc", [1, 2, 3])
    with CacheDatabase(tmp_cache_path, engine_version="1.0") as db:
        assert db.get("groebner", "abc") == [1, 2, 3]


def test_wal_journal_mode(cache_db: CacheDatabase):
    mode = cache_db.conn.execute("PRAGMA journal_mode;").fetchone()[0]
    assert mode.lower() == "wal"


def test_read_only_file_not_found(tmp_cache_path: Path):
    with pytest.raises(FileNotFoundError):
        CacheDatabase(tmp_cache_path, engine_version="1.0", read_only=True)


def test_read_only_reads(readonly_cache: CacheDatabase):
    assert readonly_cache.get("ns", "k1") == {"value": 1}


def test_read_only_disallows_writes(readonly_cache: CacheDatabase):
    with pytest.raises(PermissionError):
        readonly_cache.put("ns", "k2", 2)
    with pytest.raises(PermissionError):
        readonly_cache.clear()


def test_overwrite_mode(tmp_cache_path: Path):
    with CacheDatabase(tmp_cache_path, engine_version="1.0") as db:
        db.put("ns", "k", 1)
    with CacheDatabase(tmp_cache_path, engine_version="1.0", overwrite=True) as db:
        assert db.get("ns", "k") is None
        assert db.stats()["entries"] == 0


def test_closed_connection_raises(tmp_cache_path: Path):
    db = CacheDatabase(tmp_cache_path, engine_version="1.0")
    db.close()
    with pytest.raises(CacheError, match="closed"):
        db.get("ns", "k")


def test_unopenable_path_wrapped(tmp_path: Path):
    blocker = tmp_path / "file"
    blocker.write_text("not a directory")
    with pytest.raises(CacheError, match="Failed to create or open cache"):
        CacheDatabase(blocker / "cache.sqlite", engine_version="1.0")


# --- Entries ---
def test_put_get_roundtrip(cache_db: CacheDatabase):
    payload = {"generators": [[(0, (1, 0), 2)]], "rank": 1}
    cache_db.put("groebner", "key1", payload)
    assert cache_db.get("groebner", "key1") == payload


def test_miss_returns_none(cache_db: CacheDatabase):
    assert cache_db.get("groebner", "missing") is None


def test_namespaces_are_separate(cache_db: CacheDatabase):
    cache_db.put("a", "k", 1)
    cache_db.put("b", "k", 2)
    assert cache_db.get("a", "k") == 1
    assert cache_db.get("b", "k") == 2


def test_put_replaces(cache_db: CacheDatabase):
    cache_db.put("ns", "k", 1)
    cache_db.put("ns", "k", 2)
    assert cache_db.get("ns", "k") == 2
    assert cache_db.stats()["entries"] == 1


def test_engine_version_mismatch_is_purged_miss(tmp_cache_path: Path):
    with CacheDatabase(tmp_cache_path, engine_version="1.0") as db:
        db.put("ns", "k", 1)
    with CacheDatabase(tmp_cache_path, engine_version="2.0") as db:
        assert db.get("ns", "k") is None
        assert db.stats()["entries"] == 0


def test_blob_format_mismatch_is_purged_miss(cache_db: CacheDatabase):
    cache_db.put("ns", "k", 1)
    cache_db.conn.execute(
        "UPDATE cache_entries SET blob_format_version = ?", (BLOB_FORMAT_VERSION + 1,)
    )
    cache_db.conn.commit()
    assert cache_db.get("ns", "k") is None
    assert cache_db.stats()["entries"] == 0


def test_corrupt_payload_is_purged_miss(cache_db: CacheDatabase):
    cache_db.put("ns", "k", 1)
    cache_db.conn.execute("UPDATE cache_entries SET payload = ?", (sqlite3.Binary(b"garbage"),))
    cache_db.conn.commit()
    assert cache_db.get("ns", "k") is None
    assert cache_db.stats()["entries"] == 0


# --- Maintenance ---
def test_stats_per_namespace(cache_db: CacheDatabase):
    cache_db.put("groebner", "a", 1)
    cache_db.put("groebner", "b", 2)
    cache_db.put("other", "a", 3)
    stats = cache_db.stats()
    assert stats["entries"] == 3
    assert stats["namespaces"]["groebner"]["entries"] == 2
    assert stats["namespaces"]["other"]["bytes"] > 0
    assert stats["engine_version"] == "1.0"


def test_clear_namespace(cache_db: CacheDatabase):
    cache_db.put("groebner", "a", 1)
    cache_db.put("other", "a", 3)
    assert cache_db.clear("groebner") == 1
    assert cache_db.get("groebner", "a") is None
    assert cache_db.get("other", "a") == 3


def test_clear_all(cache_db: CacheDatabase):
    cache_db.put("groebner", "a", 1)
    cache_db.put("other", "a", 3)
    assert cache_db.clear() == 2
    assert cache_db.stats()["entries"] == 0
