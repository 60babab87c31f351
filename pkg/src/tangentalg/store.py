"""On-disk cache of reduced bases, keyed by the content hash of the input.

Each entry is one JSON file.  A version stamp is stored with every entry
and entries with another stamp are ignored, so changing the engine only
requires bumping ``STORE_VERSION``.  Writes go to a temporary file that is
then renamed into place.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from fractions import Fraction
from pathlib import Path

from .groebner import GBStats

STORE_VERSION = "tangentalg-gb-2"

__all__ = ["DiskStore", "STORE_VERSION", "default_cache_dir"]


def default_cache_dir() -> Path:
    base = os.environ.get("TANGENTALG_CACHE")
    if base:
        return Path(base)
    xdg = os.environ.get("XDG_CACHE_HOME")
    return Path(xdg) / "tangentalg" if xdg else Path.home() / ".cache" / "tangentalg"


def _encode_coeff(c):
    if isinstance(c, Fraction):
        return str(c) if c.denominator != 1 else c.numerator
    return c


def _decode_coeff(c):
    if isinstance(c, str):
        f = Fraction(c)
        return f.numerator if f.denominator == 1 else f
    return c


class DiskStore:
    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self._lock = threading.Lock()

    def _path(self, key: str) -> Path:
        return self.directory / key[:2] / f"{key}.json"

    def load(self, key: str):
        path = self._path(key)
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, ValueError):
            return None
        if data.get("version") != STORE_VERSION or data.get("key") != key:
            return None
        polys = [{int(k): _decode_coeff(c) for k, c in terms} for terms in data["polys"]]
        return polys, GBStats(**data["stats"])

    def save(self, key: str, polys, stats: GBStats):
        path = self._path(key)
        payload = {
            "version": STORE_VERSION,
            "key": key,
            "polys": [[[str(k), _encode_coeff(c)] for k, c in sorted(p.items(), reverse=True)] for p in polys],
            "stats": stats.as_dict(),
        }
        with self._lock:
            try:
                path.parent.mkdir(parents=True, exist_ok=True)
                fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    json.dump(payload, fh)
                os.replace(tmp, path)
            except OSError:
                # the cache is an optimisation only; an unwritable directory is not an error
                pass
