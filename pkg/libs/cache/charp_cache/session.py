"""Ambient cache binding consulted by expensive computations."""

import hashlib
import logging
import threading
from contextlib import contextmanager
from contextvars import ContextVar
from pathlib import Path
from typing import Any, Iterator, Optional, Union

from charp_cache.database import CacheDatabase

log = logging.getLogger(__name__)


class CacheSession:
    """A CacheDatabase plus hit/miss bookkeeping for one run."""

    def __init__(self, db: CacheDatabase):
        self.db = db
        self.hits = 0
        self.misses = 0
        # Degreewise computations may share one session across threads.
        self._lock = threading.Lock()

    def get(self, namespace: str, key: str) -> Optional[Any]:
        with self._lock:
            payload = self.db.get(namespace, key)
            if payload is None:
                self.misses += 1
            else:
                self.hits += 1
        return payload

    def put(self, namespace: str, key: str, payload: Any) -> None:
        if self.db.read_only:
            return
        with self._lock:
            self.db.put(namespace, key, payload)

    def counters(self) -> dict:
        return {"hits": self.hits, "misses": self.misses}


_active: ContextVar[Optional[CacheSession]] = ContextVar("charp_cache_session", default=None)


def current_cache() -> Optional[CacheSession]:
    return _active.get()


@contextmanager
def cache_session(
    path: Optional[Union[str, Path]], engine_version: str, read_only: bool = False
) -> Iterator[Optional[CacheSession]]:
    """
    Bind a cache to the current context for the duration of the block.

    With `path=None` caching is disabled and None is yielded. The database is
    opened inside the block, so every worker process gets its own connection.
    """
    if path is None:
        yield None
        return
    db_path = Path(path)
    if db_path.suffix != ".sqlite":
        db_path = db_path / "charp-cache.sqlite"
    with CacheDatabase(db_path, engine_version=engine_version, read_only=read_only) as db:
        session = CacheSession(db)
        token = _active.set(session)
        try:
            yield session
        finally:
            _active.reset(token)
            log.debug(f"Cache session on {db_path}: {session.counters()}")


def content_key(*parts: str) -> str:
    """sha256 over the given canonical text parts."""
    digest = hashlib.sha256()
    for part in parts:
        digest.update(part.encode("utf-8"))
        digest.update(b"\x00")
    return digest.hexdigest()
