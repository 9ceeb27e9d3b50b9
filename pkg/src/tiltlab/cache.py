"""On-disk cache of projector morphisms as versioned, checksummed JSON files."""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Callable

from .tldiag import TLMorphism

FORMAT_VERSION = 1
ENV_VAR = "TILTLAB_CACHE"
DEFAULT_DIR = ".tiltlab-cache"

log = logging.getLogger(__name__)


def default_dir() -> Path:
    return Path(os.environ.get(ENV_VAR) or DEFAULT_DIR)


def _checksum(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


class DiskCache:
    def __init__(self, root: str | os.PathLike | None = None):
        self.root = Path(root) if root is not None else default_dir()
        self.hits = 0
        self.misses = 0

    def path(self, key: tuple) -> Path:
        kind, ring, v = key
        return self.root / f"{kind}-{ring}-{v}.json"

    def get(self, key: tuple) -> TLMorphism | None:
        path = self.path(key)
        if not path.exists():
            self.misses += 1
            return None
        try:
            doc = json.loads(path.read_text())
            if doc.get("version") != FORMAT_VERSION:
                raise ValueError(f"format version {doc.get('version')}")
            if doc.get("key") != [str(k) for k in key]:
                raise ValueError("key mismatch")
            if _checksum(doc["payload"]) != doc.get("checksum"):
                raise ValueError("checksum mismatch")
            f = TLMorphism.from_json(doc["payload"])
        except (OSError, ValueError, KeyError, TypeError) as e:
            log.warning("discarding corrupt cache entry %s: %s", path, e)
            self.misses += 1
            return None
        self.hits += 1
        return f

    def put(self, key: tuple, f: TLMorphism) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        payload = f.to_json()
        doc = {"version": FORMAT_VERSION, "key": [str(k) for k in key], "checksum": _checksum(payload), "payload": payload}
        path = self.path(key)
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=path.name, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(doc, fh)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return path

    def get_or_build(self, key: tuple, build: Callable[[], TLMorphism]) -> TLMorphism:
        f = self.get(key)
        if f is None:
            f = build()
            self.put(key, f)
        return f


def cache_get_or_build(key: tuple, build: Callable[[], TLMorphism], root=None) -> TLMorphism:
    return DiskCache(root).get_or_build(key, build)
