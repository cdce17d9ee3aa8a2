"""On-disk response cache: one file per key, checksum-verified, TTL + LRU.

Keys are canonical request descriptors (endpoint, sorted parameters, and the
pipeline version, so algorithm changes invalidate stale results). Each entry
file holds a sha256 of the payload, a metadata line, and the payload bytes;
a checksum mismatch counts as a miss and evicts the entry. Writes go through
an atomic replace, giving last-writer-wins under concurrent writers.
"""

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Mapping

from novelscope import PIPELINE_VERSION
from novelscope.clock import SYSTEM_CLOCK, Clock
from novelscope.config import CachePolicy

logger = logging.getLogger(__name__)


def canonical_key(
    endpoint: str,
    params: Mapping[str, object],
    pipeline_version: str = PIPELINE_VERSION,
) -> str:
    return json.dumps(
        {"endpoint": endpoint, "params": params, "version": pipeline_version},
        sort_keys=True,
        separators=(",", ":"),
    )


class ResponseCache:
    def __init__(
        self,
        directory: Path,
        policy: CachePolicy = CachePolicy(),
        clock: Clock = SYSTEM_CLOCK,
    ):
        self._dir = Path(directory)
        self._dir.mkdir(parents=True, exist_ok=True)
        self._policy = policy
        self._clock = clock

    def _path(self, key: str) -> Path:
        digest = hashlib.sha256(key.encode("utf-8")).hexdigest()
        return self._dir / f"{digest}.entry"

    def get(self, key: str) -> bytes | None:
        """Cached payload, or None on miss, expiry, or corruption."""
        path = self._path(key)
        try:
            blob = path.read_bytes()
        except FileNotFoundError:
            return None
        try:
            checksum, meta_line, payload = blob.split(b"\n", 2)
            meta = json.loads(meta_line)
        except ValueError:
            logger.warning("malformed cache entry %s evicted", path.name)
            path.unlink(missing_ok=True)
            return None
        if hashlib.sha256(payload).hexdigest().encode("ascii") != checksum:
            logger.warning("cache entry %s failed checksum; evicted", path.name)
            path.unlink(missing_ok=True)
            return None
        if self._clock.now() - meta["created"] > meta["ttl"]:
            path.unlink(missing_ok=True)
            return None
        # Track access for LRU eviction.
        os.utime(path, (self._clock.now(), os.stat(path).st_mtime))
        return payload

    def put(self, key: str, value: bytes, ttl: float | None = None) -> None:
        if ttl is None:
            ttl = self._policy.ttl_seconds
        path = self._path(key)
        meta = json.dumps({"created": self._clock.now(), "ttl": ttl, "key": key})
        blob = (
            hashlib.sha256(value).hexdigest().encode("ascii")
            + b"\n"
            + meta.encode("utf-8")
            + b"\n"
            + value
        )
        tmp = path.with_suffix(".tmp")
        tmp.write_bytes(blob)
        os.replace(tmp, path)  # atomic; last writer wins
        self._evict_over_cap()

    def _evict_over_cap(self) -> None:
        entries = sorted(
            self._dir.glob("*.entry"), key=lambda p: p.stat().st_atime, reverse=True
        )
        total = 0
        for path in entries:
            total += path.stat().st_size
            if total > self._policy.max_bytes:
                logger.info("LRU-evicting cache entry %s", path.name)
                path.unlink(missing_ok=True)
