"""Persistent translation cache.

One JSON file per entry under the cache root, keyed by
sha256(provider_id, src, dst, text) and sharded by the first two hex
digits. Writes go through a temp file + atomic rename and are serialized
by a lock; reads need no coordination.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
from pathlib import Path


class TranslationCache:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._write_lock = threading.Lock()

    @staticmethod
    def key(provider_id: str, src: str, dst: str, text: str) -> str:
        payload = "\x1f".join((provider_id, src, dst, text)).encode("utf-8")
        return hashlib.sha256(payload).hexdigest()

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def get(self, provider_id: str, src: str, dst: str, text: str) -> dict | None:
        path = self._path(self.key(provider_id, src, dst, text))
        if not path.exists():
            return None
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)

    def put(self, provider_id: str, src: str, dst: str, text: str, entry: dict) -> None:
        path = self._path(self.key(provider_id, src, dst, text))
        data = json.dumps(entry, ensure_ascii=False, sort_keys=True)
        with self._write_lock:
            path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    fh.write(data)
                os.replace(tmp, path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise

    def __len__(self) -> int:
        return sum(1 for _ in self.root.glob("*/*.json"))
