from .database import BLOB_FORMAT_VERSION, CacheDatabase
from .session import CacheSession, cache_session, content_key, current_cache

__all__ = [
    "BLOB_FORMAT_VERSION",
    "CacheDatabase",
    "CacheSession",
    "cache_session",
    "content_key",
    "current_cache",
]
