"""Versioned binary cache for sieved tables.

10^8-scale sieves should not be recomputed on every CLI invocation.  One file
per limit holds a fixed header (magic, version, limit, prime count, omega
flag) followed by the raw prime array (int64) and, optionally, the omega
array (uint8, limit+1 cells).  Anything with a wrong magic or version is
treated as absent and rebuilt.  PRIMSEQ_CACHE_DIR overrides the location.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .primes import (
    DEFAULT_SIEVE_LIMIT,
    OmegaTable,
    PrimeTable,
    sieve_omega,
    sieve_primes,
)

_MAGIC = b"PRIMSEQC"
_VERSION = 1
_HEADER = struct.Struct("<8sIQQB7x")  # magic, version, limit, prime_count, has_omega


def cache_dir() -> Path:
    env = os.environ.get("PRIMSEQ_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "primseq"


def default_sieve_limit() -> int:
    env = os.environ.get("PRIMSEQ_SIEVE_LIMIT")
    return int(float(env)) if env else DEFAULT_SIEVE_LIMIT


def table_path(limit: int, directory: Path | None = None) -> Path:
    return (directory or cache_dir()) / f"tables-{limit}.bin"


@dataclass(frozen=True)
class CacheHeader:
    limit: int
    prime_count: int
    has_omega: bool


def _read_header(path: Path) -> CacheHeader | None:
    try:
        with open(path, "rb") as fh:
            raw = fh.read(_HEADER.size)
        magic, version, limit, count, has_omega = _HEADER.unpack(raw)
    except (OSError, struct.error):
        return None
    if magic != _MAGIC or version != _VERSION:
        return None  # stale or foreign file: invalidate
    return CacheHeader(limit=limit, prime_count=count, has_omega=bool(has_omega))


def write_tables(path: Path, primes: PrimeTable, omega: OmegaTable | None) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "wb") as fh:
        fh.write(_HEADER.pack(_MAGIC, _VERSION, primes.limit, primes.count,
                              1 if omega is not None else 0))
        primes.primes.astype(np.int64).tofile(fh)
        if omega is not None:
            omega.omega.astype(np.uint8).tofile(fh)
    tmp.replace(path)


def load_tables(path: Path, need_omega: bool) -> tuple[PrimeTable, OmegaTable | None] | None:
    """Load tables from a cache file; None if unusable for the request."""
    hdr = _read_header(path)
    if hdr is None or (need_omega and not hdr.has_omega):
        return None
    with open(path, "rb") as fh:
        fh.seek(_HEADER.size)
        primes = np.fromfile(fh, dtype=np.int64, count=hdr.prime_count)
        omega = None
        if need_omega:
            omega = np.fromfile(fh, dtype=np.uint8, count=hdr.limit + 1)
            if len(omega) != hdr.limit + 1:
                return None
    if len(primes) != hdr.prime_count:
        return None
    table = PrimeTable(limit=hdr.limit, primes=primes)
    return table, (OmegaTable(limit=hdr.limit, omega=omega) if need_omega else None)


def ensure_tables(
    limit: int,
    need_omega: bool = False,
    directory: Path | None = None,
    workers: int = 1,
) -> tuple[PrimeTable, OmegaTable | None]:
    """Load the tables for ``limit`` from cache, building and caching on miss.

    A cached primes-only file is upgraded in place when omega is requested.
    """
    path = table_path(limit, directory)
    cached = load_tables(path, need_omega)
    if cached is not None:
        return cached
    hdr = _read_header(path)
    if hdr is not None and not need_omega:
        pass  # unusable for another reason; rebuild below
    if hdr is not None and hdr.has_omega is False and need_omega:
        loaded = load_tables(path, need_omega=False)
        if loaded is not None:
            table = loaded[0]
            omega = sieve_omega(limit)
            write_tables(path, table, omega)
            return table, omega
    table = sieve_primes(limit, workers=workers)
    omega = sieve_omega(limit) if need_omega else None
    write_tables(path, table, omega)
    return table, omega
