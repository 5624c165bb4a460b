"""
Result cache keyed by a content hash of the job fragment.
"""
import hashlib
import json
import logging
import os
import pathlib
from typing import Optional

import redis
import yaml

log = logging.getLogger("cache")

CFG_PATH = pathlib.Path(__file__).parents[1] / "config.yaml"
CFG = yaml.safe_load(CFG_PATH.read_text())["cache"]


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _hash(s: str, length: int = 16) -> str:
    return hashlib.sha256(s.encode()).hexdigest()[:length]


def cache_key(fragment: dict) -> str:
    return _hash(_canonical({"job": fragment, "version": CFG["version_tag"]}))


class FileCache:
    """One JSON file per key holding the payload and its checksum."""

    def __init__(self, directory: Optional[str] = None):
        self.directory = pathlib.Path(directory or os.getenv("SPHERICAL_CACHE_DIR", CFG["directory"]))
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, key: str) -> pathlib.Path:
        return self.directory / f"{key}.json"

    def get(self, key: str) -> Optional[dict]:
        path = self._path(key)
        if not path.exists():
            return None
        try:
            record = json.loads(path.read_text())
            payload = record["payload"]
        except (OSError, ValueError, KeyError, TypeError) as e:
            log.warning("Unreadable cache entry %s: %s", key, e)
            return None
        if record.get("checksum") != _hash(_canonical(payload), 64):
            log.warning("Checksum mismatch for cache entry %s, ignoring it", key)
            return None
        return payload

    def put(self, key: str, payload: dict):
        record = {"checksum": _hash(_canonical(payload), 64), "payload": payload}
        tmp = self.directory / f"{key}.tmp"
        tmp.write_text(json.dumps(record, sort_keys=True, indent=2))
        os.replace(tmp, self._path(key))


class RedisCache:
    def __init__(self, url: str):
        self.r = redis.from_url(url, decode_responses=True)
        self.prefix = CFG["redis_prefix"]
        self.ttl = int(CFG["ttl_seconds"])

    def get(self, key: str) -> Optional[dict]:
        raw = self.r.get(self.prefix + key)
        if raw is None:
            return None
        try:
            record = json.loads(raw)
        except ValueError as e:
            log.warning("Unreadable cache entry %s: %s", key, e)
            return None
        if record.get("checksum") != _hash(_canonical(record.get("payload")), 64):
            log.warning("Checksum mismatch for cache entry %s, ignoring it", key)
            return None
        return record["payload"]

    def put(self, key: str, payload: dict):
        record = {"checksum": _hash(_canonical(payload), 64), "payload": payload}
        self.r.setex(self.prefix + key, self.ttl, json.dumps(record, sort_keys=True))


def open_cache(directory: Optional[str] = None):
    """Redis when REDIS_URL is set and answers, the file cache otherwise."""
    url = os.getenv("REDIS_URL")
    if url and not directory:
        try:
            backend = RedisCache(url)
            backend.r.ping()
            log.info("✓ Using Redis cache at %s", url)
            return backend
        except redis.RedisError as e:
            log.warning("✗ Redis unavailable (%s), falling back to the file cache", e)
    return FileCache(directory)
