"""Meta-address registry (name service stand-in) and the append-only
ephemeral public key registry.

Both are flat files so a registry directory is self-contained and diffable:
`metas.json` maps names to lists of encoded meta-address records, and
`announcements.jsonl` holds one JSON announcement per line, densely indexed
from 0. Announcement registries can also run purely in memory (path=None),
which the benchmark harness uses.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from .keys import MetaAddress, decode_meta, encode_meta
from .protocols import Announcement


class RegistryFormatError(ValueError):
    """Backing file contents violate the registry format."""


class MetaRegistry:
    """Name -> stealth meta-addresses; several registrations per name allowed."""

    def __init__(self, path):
        self.path = Path(path)
        self._records: dict[str, list[str]] = {}
        if self.path.exists():
            try:
                raw = json.loads(self.path.read_text() or "{}")
            except json.JSONDecodeError as e:
                raise RegistryFormatError(f"{self.path}: {e}") from None
            if not isinstance(raw, dict):
                raise RegistryFormatError(f"{self.path}: top level must be an object")
            self._records = {name: list(entries) for name, entries in raw.items()}

    def register(self, name: str, meta: MetaAddress) -> None:
        self._records.setdefault(name, []).append(encode_meta(meta))
        self._flush()

    def lookup(self, name: str) -> list[MetaAddress]:
        if name not in self._records:
            raise KeyError(f"no meta-address registered for {name!r}")
        return [decode_meta(s) for s in self._records[name]]

    def names(self):
        return sorted(self._records)

    def _flush(self):
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        tmp.write_text(json.dumps(self._records, indent=2, sort_keys=True) + "\n")
        os.replace(tmp, self.path)


class AnnouncementRegistry:
    """Append-only, densely indexed announcement log.

    File-backed registries append one JSON line per record and survive
    process restarts; with path=None the registry is memory-only.
    """

    def __init__(self, path=None):
        self.path = Path(path) if path is not None else None
        self._records: list[Announcement] = []
        self._fh = None
        if self.path is not None and self.path.exists():
            with open(self.path, "r") as fh:
                for lineno, line in enumerate(fh):
                    if not line.strip():
                        continue
                    try:
                        rec = json.loads(line)
                        ann = Announcement.from_record(rec)
                    except (ValueError, KeyError, TypeError) as e:
                        raise RegistryFormatError(
                            f"{self.path}: corrupt announcement on line {lineno + 1}: {e}"
                        ) from None
                    if ann.index != len(self._records):
                        raise RegistryFormatError(
                            f"{self.path}: line {lineno + 1} has index {ann.index}, "
                            f"expected {len(self._records)}"
                        )
                    self._records.append(ann)
        if self.path is not None:
            self._fh = open(self.path, "a")

    def append(self, ann: Announcement) -> int:
        idx = len(self._records)
        stored = Announcement(idx, ann.protocol, ann.curve, ann.R, ann.tag)
        self._records.append(stored)
        if self._fh is not None:
            self._fh.write(json.dumps(stored.to_record()) + "\n")
            self._fh.flush()
        return idx

    def extend(self, anns) -> None:
        """Bulk append with one flush (benchmark generation path)."""
        lines = []
        for ann in anns:
            idx = len(self._records)
            stored = Announcement(idx, ann.protocol, ann.curve, ann.R, ann.tag)
            self._records.append(stored)
            if self._fh is not None:
                lines.append(json.dumps(stored.to_record()))
        if self._fh is not None and lines:
            self._fh.write("\n".join(lines) + "\n")
            self._fh.flush()

    def count(self) -> int:
        return len(self._records)

    def iterate(self, from_index: int = 0):
        """Records from_index..count-1 in order."""
        if from_index < 0:
            raise ValueError("from_index must be >= 0")
        return iter(self._records[from_index:])

    def get(self, index: int) -> Announcement:
        return self._records[index]

    def close(self):
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
