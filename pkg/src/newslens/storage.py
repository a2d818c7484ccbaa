"""Hybrid storage: embedded transactional hot store + append-only archive.

The hot store is a single SQLite table behind a small key-value contract
(get/put/scan-by-prefix/transaction). The archive is date-partitioned
newline-delimited JSON files, one per (kind, date, migration epoch), each
with a recorded SHA-256 checksum verified on every read.
"""

from __future__ import annotations

import hashlib
import json
import sqlite3
import threading
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

from .errors import ChecksumMismatch, StoreUnavailable
from .models import canonical_json


class KVStore:
    """Embedded transactional key-value store. Keys are '/'-namespaced strings."""

    def __init__(self, path: str | Path = ":memory:"):
        try:
            # isolation_level=None: autocommit, with explicit BEGIN/COMMIT
            # in transaction() below. The stdlib's implicit transactions
            # would otherwise swallow single-statement writes.
            self._conn = sqlite3.connect(
                str(path), check_same_thread=False, isolation_level=None
            )
            self._conn.execute("PRAGMA journal_mode=WAL")
            self._conn.execute("PRAGMA synchronous=NORMAL")
            self._conn.execute(
                "CREATE TABLE IF NOT EXISTS kv (key TEXT PRIMARY KEY, value TEXT NOT NULL)"
            )
        except sqlite3.Error as exc:
            raise StoreUnavailable(f"cannot open store at {path}: {exc}") from exc
        self._lock = threading.RLock()

    def get(self, key: str) -> Optional[str]:
        with self._lock:
            row = self._conn.execute("SELECT value FROM kv WHERE key = ?", (key,)).fetchone()
        return row[0] if row else None

    def put(self, key: str, value: str) -> None:
        with self._lock:
            self._conn.execute(
                "INSERT INTO kv (key, value) VALUES (?, ?) "
                "ON CONFLICT(key) DO UPDATE SET value = excluded.value",
                (key, value),
            )

    def delete(self, key: str) -> None:
        with self._lock:
            self._conn.execute("DELETE FROM kv WHERE key = ?", (key,))

    def scan_prefix(self, prefix: str) -> list[tuple[str, str]]:
        """All (key, value) pairs under a prefix, ordered by key."""
        hi = prefix + "￿"
        with self._lock:
            rows = self._conn.execute(
                "SELECT key, value FROM kv WHERE key >= ? AND key < ? ORDER BY key",
                (prefix, hi),
            ).fetchall()
        return rows

    @contextmanager
    def transaction(self) -> Iterator[None]:
        """Serialized write transaction; nested use is not supported."""
        with self._lock:
            self._conn.execute("BEGIN IMMEDIATE")
            try:
                yield
            except BaseException:
                self._conn.rollback()
                raise
            else:
                self._conn.commit()

    def get_json(self, key: str):
        raw = self.get(key)
        return json.loads(raw) if raw is not None else None

    def put_json(self, key: str, obj) -> None:
        self.put(key, canonical_json(obj))

    def snapshot_hash(self, prefix: str = "") -> str:
        """Order-independent digest of store contents under a prefix."""
        digest = hashlib.sha256()
        for key, value in self.scan_prefix(prefix):
            digest.update(key.encode("utf-8"))
            digest.update(b"\x00")
            digest.update(value.encode("utf-8"))
            digest.update(b"\x01")
        return digest.hexdigest()

    def close(self) -> None:
        with self._lock:
            self._conn.close()


@dataclass(frozen=True)
class ArchivePartition:
    kind: str
    date: str  # ISO calendar date
    epoch: int
    record_count: int
    path: str  # relative to the archive root
    checksum: str

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "date": self.date,
            "epoch": self.epoch,
            "record_count": self.record_count,
            "path": self.path,
            "checksum": self.checksum,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ArchivePartition":
        return cls(
            kind=d["kind"],
            date=d["date"],
            epoch=int(d["epoch"]),
            record_count=int(d["record_count"]),
            path=d["path"],
            checksum=d["checksum"],
        )


class Archive:
    """Append-only, date-partitioned NDJSON archive with per-file checksums."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def write_partition(
        self, kind: str, day: str, epoch: int, records: list[dict]
    ) -> ArchivePartition:
        """Write one partition file durably and return its manifest entry.

        The caller commits the manifest entry to the hot store afterwards;
        a crash in between leaves only an orphan file, never a lost or
        duplicated record.
        """
        rel = f"{kind}/{day}.{epoch:06d}.ndjson"
        path = self.root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = "".join(canonical_json(r) + "\n" for r in records).encode("utf-8")
        tmp = path.with_suffix(".tmp")
        with open(tmp, "wb") as fh:
            fh.write(payload)
            fh.flush()
        tmp.replace(path)
        return ArchivePartition(
            kind=kind,
            date=day,
            epoch=epoch,
            record_count=len(records),
            path=rel,
            checksum=hashlib.sha256(payload).hexdigest(),
        )

    def read_partition(self, partition: ArchivePartition) -> list[dict]:
        """Read and checksum-verify a partition."""
        path = self.root / partition.path
        try:
            payload = path.read_bytes()
        except OSError as exc:
            raise StoreUnavailable(f"archive partition missing: {path}") from exc
        actual = hashlib.sha256(payload).hexdigest()
        if actual != partition.checksum:
            raise ChecksumMismatch(
                f"{partition.path}: expected {partition.checksum}, got {actual}"
            )
        return [json.loads(line) for line in payload.decode("utf-8").splitlines() if line]
