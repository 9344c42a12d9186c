"""Checksummed on-disk cache for expensive exact results.

Entries are keyed by (operation, parameters, package version); payloads
are canonical JSON, stored alongside their sha256.  A corrupted entry is
silently discarded and recomputed.  Because every serialization in the
package is canonical and reductions are order-fixed, a cache hit is
byte-identical to recomputation.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from . import __version__

__all__ = ["ResultCache"]

ENV_VAR = "MACLAB_CACHE_DIR"


class ResultCache:
    def __init__(self, directory: str | os.PathLike | None = None, enabled: bool = True):
        if directory is None:
            directory = os.environ.get(ENV_VAR)
        self.enabled = enabled and directory is not None
        self.directory = Path(directory) if directory is not None else None
        if self.enabled:
            self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, op: str, params: dict) -> Path:
        key_src = json.dumps({"op": op, "params": params, "version": __version__},
                             sort_keys=True, separators=(",", ":"))
        digest = hashlib.sha256(key_src.encode()).hexdigest()[:32]
        return self.directory / f"{op.replace(' ', '_')}-{digest}.json"

    def get(self, op: str, params: dict):
        if not self.enabled:
            return None
        path = self._path(op, params)
        if not path.exists():
            return None
        try:
            entry = json.loads(path.read_text())
            payload = entry["payload"]
            blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
            if entry.get("sha256") != hashlib.sha256(blob.encode()).hexdigest():
                path.unlink(missing_ok=True)
                return None
            if entry.get("version") != __version__:
                return None
            return payload
        except (json.JSONDecodeError, KeyError, OSError):
            path.unlink(missing_ok=True)
            return None

    def put(self, op: str, params: dict, payload) -> None:
        if not self.enabled:
            return
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        entry = {
            "version": __version__,
            "op": op,
            "params": params,
            "sha256": hashlib.sha256(blob.encode()).hexdigest(),
            "payload": payload,
        }
        path = self._path(op, params)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(entry, sort_keys=True, indent=1))
        tmp.replace(path)
