import logging
import pickle
import sqlite3
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional, Union

from charp_core.exceptions import CacheError

log = logging.getLogger(__name__)

# Bumped whenever the pickled payload layout changes.
BLOB_FORMAT_VERSION = 1

_SCHEMA = """
CREATE TABLE IF NOT EXISTS cache_properties (
    blob_format_version INTEGER NOT NULL,
    creation_timestamp TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS cache_entries (
    namespace TEXT NOT NULL,
    key TEXT NOT NULL,
    engine_version TEXT NOT NULL,
    blob_format_version INTEGER NOT NULL,
    payload BLOB NOT NULL,
    created_at TEXT NOT NULL,
    PRIMARY KEY (namespace, key)
);
"""


class CacheDatabase:
    def __init__(
        self,
        path: Union[str, Path],
        engine_version: str,
        overwrite: bool = False,
        read_only: bool = False,
        timeout: float = 30.0,
    ):
        """
        Open (or create) a content-addressed computation cache.

        Args:
            path: Path to the SQLite cache file.
            engine_version: Version stamped on every entry written; entries
                carrying another version are treated as misses.
            overwrite: If True, delete an existing file first (only applies if read_only=False).
            read_only: If True, open the cache read-only. Raises if the file doesn't exist.
            timeout: Seconds to wait for a lock held by another worker process.
        """
        self.path = Path(path).resolve()
        self.engine_version = engine_version
        self.read_only = read_only
        self.conn: Optional[sqlite3.Connection] = None

        if read_only:
            if not self.path.exists():
                raise FileNotFoundError(f"Cache file not found for reading: {self.path}")
            if overwrite:
                log.warning(
                    f"Ignoring 'overwrite=True' as cache is opened in read-only mode: {self.path}"
                )
            try:
                self.conn = sqlite3.connect(
                    f"file:{self.path}?mode=ro",
                    uri=True,
                    timeout=timeout,
                    check_same_thread=False,
                )
            except sqlite3.Error as e:
                raise CacheError(
                    f"Failed to open cache {self.path} in read-only mode: {e}"
                ) from e
        else:
            if self.path.exists() and overwrite:
                log.warning(f"Overwriting existing cache file: {self.path}")
                try:
                    self.path.unlink()
                except OSError as e:
                    raise CacheError(
                        f"Could not remove existing cache {self.path} during overwrite: {e}"
                    ) from e
            try:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                self.conn = sqlite3.connect(
                    f"file:{self.path}?mode=rwc",
                    uri=True,
                    timeout=timeout,
                    check_same_thread=False,
                )
                # WAL lets worker processes read while another one writes.
                self.conn.execute("PRAGMA journal_mode=WAL;")
                cursor = self.conn.execute(
                    "SELECT name FROM sqlite_master WHERE type='table' AND name='cache_properties'"
                )
                if not cursor.fetchone():
                    log.info(f"Initializing cache tables in {self.path}")
                    self._create_tables()
            except (sqlite3.Error, OSError) as e:
                if self.conn:
                    self.conn.close()
                    self.conn = None
                raise CacheError(f"Failed to create or open cache {self.path}: {e}") from e

        self.conn.row_factory = sqlite3.Row

    def _create_tables(self) -> None:
        self.conn.executescript(_SCHEMA)
        self.conn.execute(
            "INSERT INTO cache_properties (blob_format_version, creation_timestamp) VALUES (?, ?)",
            (BLOB_FORMAT_VERSION, datetime.now(timezone.utc).isoformat()),
        )
        self.conn.commit()

    def _validate_connection(self) -> None:
        if not self.conn:
            raise CacheError(f"Cache connection to {self.path} is closed.")

    # --- Entries ---

    def get(self, namespace: str, key: str) -> Optional[Any]:
        """
        Look up a payload.

        Returns:
            The unpickled payload, or None on a miss. Entries written by
            another engine or blob format version count as misses and are
            purged (unless the cache is read-only).
        """
        self._validate_connection()
        try:
            row = self.conn.execute(
                "SELECT engine_version, blob_format_version, payload FROM cache_entries "
                "WHERE namespace = ? AND key = ?",
                (namespace, key),
            ).fetchone()
        except sqlite3.Error as e:
            raise CacheError(f"Failed to read {namespace}/{key} from {self.path}: {e}") from e
        if row is None:
            return None
        if (
            row["engine_version"] != self.engine_version
            or row["blob_format_version"] != BLOB_FORMAT_VERSION
        ):
            log.warning(
                f"Stale cache entry {namespace}/{key[:12]} "
                f"(engine {row['engine_version']}, format {row['blob_format_version']}); purging"
            )
            self._purge(namespace, key)
            return None
        try:
            return pickle.loads(row["payload"])
        except (pickle.UnpicklingError, EOFError, AttributeError, ImportError) as e:
            log.warning(f"Unreadable cache entry {namespace}/{key[:12]}: {e}; purging")
            self._purge(namespace, key)
            return None

    def put(self, namespace: str, key: str, payload: Any) -> None:
        """Store a payload, replacing any entry under the same key."""
        self._validate_connection()
        if self.read_only:
            raise PermissionError("Cache is open in read-only mode.")
        blob = pickle.dumps(payload, protocol=pickle.HIGHEST_PROTOCOL)
        try:
            self.conn.execute(
                "INSERT OR REPLACE INTO cache_entries "
                "(namespace, key, engine_version, blob_format_version, payload, created_at) "
                "VALUES (?, ?, ?, ?, ?, ?)",
                (
                    namespace,
                    key,
                    self.engine_version,
                    BLOB_FORMAT_VERSION,
                    sqlite3.Binary(blob),
                    datetime.now(timezone.utc).isoformat(),
                ),
            )
            self.conn.commit()
        except sqlite3.Error as e:
            self.conn.rollback()
            raise CacheError(f"Failed to write {namespace}/{key} to {self.path}: {e}") from e
        log.debug(f"Cached {namespace}/{key[:12]} ({len(blob)} bytes)")

    def _purge(self, namespace: str, key: str) -> None:
        if self.read_only:
            return
        try:
            self.conn.execute(
                "DELETE FROM cache_entries WHERE namespace = ? AND key = ?", (namespace, key)
            )
            self.conn.commit()
        except sqlite3.Error as e:
            log.error(f"Failed to purge {namespace}/{key} from {self.path}: {e}")

    def stats(self) -> Dict[str, Any]:
        """Entry counts and payload bytes per namespace."""
        self._validate_connection()
        try:
            rows = self.conn.execute(
                "SELECT namespace, COUNT(*) AS entries, SUM(LENGTH(payload)) AS bytes "
                "FROM cache_entries GROUP BY namespace ORDER BY namespace"
            ).fetchall()
        except sqlite3.Error as e:
            raise CacheError(f"Failed to read statistics from {self.path}: {e}") from e
        namespaces = {r["namespace"]: {"entries": r["entries"], "bytes": r["bytes"] or 0} for r in rows}
        return {
            "path": str(self.path),
            "engine_version": self.engine_version,
            "entries": sum(v["entries"] for v in namespaces.values()),
            "namespaces": namespaces,
        }

    def clear(self, namespace: Optional[str] = None) -> int:
        """Delete all entries (or one namespace's); returns the number removed."""
        self._validate_connection()
        if self.read_only:
            raise PermissionError("Cache is open in read-only mode.")
        try:
            if namespace is None:
                cursor = self.conn.execute("DELETE FROM cache_entries")
            else:
                cursor = self.conn.execute(
                    "DELETE FROM cache_entries WHERE namespace = ?", (namespace,)
                )
            self.conn.commit()
        except sqlite3.Error as e:
            raise CacheError(f"Failed to clear {self.path}: {e}") from e
        return cursor.rowcount

    # --- Lifecycle ---

    def close(self) -> None:
        """Close the database connection."""
        if self.conn:
            try:
                self.conn.close()
                log.info(f"Closed connection to cache: {self.path}")
            except sqlite3.Error as e:
                log.error(f"Error closing cache connection {self.path}: {e}")
            finally:
                self.conn = None

    def __enter__(self) -> "CacheDatabase":
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        self.close()

    def __del__(self):
        """
        Ensure connection is closed when object is garbage collected
        Note: __del__ can be unreliable, using context manager is better.
        """
        if getattr(self, "conn", None):
            log.debug(f"Closing connection for {self.path} from __del__")
            self.close()
