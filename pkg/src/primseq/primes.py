"""Prime and Omega tables plus the explicit nth-prime / prime-reciprocal checks.

The two tables are the computational substrate for everything else:

* ``PrimeTable`` — all primes up to a limit, built by a segmented sieve of
  Eratosthenes (numpy bool segments, fixed segment size, so the result is
  bit-identical regardless of how many workers strike the segments).
* ``OmegaTable`` — Omega(n), the number of prime factors of n counted with
  multiplicity, for every n up to a limit.  One uint8 cell per integer; the
  filling loop is JIT-compiled (numba) because it touches ~4N cells.

The ``check_*`` functions sweep the classical explicit estimates the rest of
the package relies on (n log n <= p_n, p_n <= n(log n + log log n) for n >= 6,
log n <= log p_n <= 2 log n, p_{n+1} < 2 p_n, and sum_{p<=x} 1/p > log log x)
and report violations — expected empty on every range we can reach.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import ResourceLimitError

# Hard caps documented against the memory budget: ~8 bytes/prime for the
# prime array, 1 byte/n for omega.
MAX_PRIME_LIMIT = 2_000_000_000
MAX_OMEGA_LIMIT = 1_000_000_000
DEFAULT_SIEVE_LIMIT = 100_000_000

_SEGMENT = 1 << 26


@dataclass(frozen=True)
class PrimeTable:
    """All primes <= limit, increasing. p_n is 1-indexed (p_1 = 2)."""

    limit: int
    primes: np.ndarray  # int64, strictly increasing

    @property
    def count(self) -> int:
        return len(self.primes)

    def count_leq(self, x: float) -> int:
        """Number of primes <= x (x may exceed the table limit only if x <= limit)."""
        if x > self.limit:
            raise ValueError(f"x={x} exceeds table limit {self.limit}")
        return int(np.searchsorted(self.primes, math.floor(x), side="right"))


@dataclass(frozen=True)
class OmegaTable:
    """omega[n] = Omega(n) for 1 <= n <= limit; index 0 is unused (0)."""

    limit: int
    omega: np.ndarray  # uint8, length limit+1


def _small_sieve(limit: int) -> np.ndarray:
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_p[p]:
            is_p[p * p :: p] = False
    return np.flatnonzero(is_p).astype(np.int64)


def _sieve_segment(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """Primes in [lo, hi), given base primes covering sqrt(hi)."""
    seg = np.ones(hi - lo, dtype=bool)
    if lo < 2:
        seg[: min(2 - lo, hi - lo)] = False
    for p in base:
        p = int(p)
        if p * p >= hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        if start < hi:
            seg[start - lo :: p] = False
    return (np.flatnonzero(seg) + lo).astype(np.int64)


def sieve_primes(limit: int, workers: int = 1) -> PrimeTable:
    """Sieve all primes <= limit.

    Segments are struck independently (optionally in parallel) and
    concatenated in index order, so the table does not depend on ``workers``.
    """
    if limit < 2:
        raise ValueError(f"sieve limit must be >= 2, got {limit}")
    if limit > MAX_PRIME_LIMIT:
        raise ResourceLimitError(
            f"sieve limit {limit} exceeds the configured cap {MAX_PRIME_LIMIT}"
        )
    base = _small_sieve(math.isqrt(limit) + 1)
    bounds = [(lo, min(lo + _SEGMENT, limit + 1)) for lo in range(0, limit + 1, _SEGMENT)]
    if workers > 1 and len(bounds) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda b: _sieve_segment(b[0], b[1], base), bounds))
    else:
        parts = [_sieve_segment(lo, hi, base) for lo, hi in bounds]
    return PrimeTable(limit=limit, primes=np.concatenate(parts))


@njit(cache=True)
def _fill_omega(om: np.ndarray, limit: int) -> None:
    # om[p] == 0 exactly when no smaller prime divides p, i.e. p is prime.
    for p in range(2, limit + 1):
        if om[p] == 0:
            pk = p
            while pk <= limit:
                for m in range(pk, limit + 1, pk):
                    om[m] += 1
                if pk > limit // p:
                    break
                pk *= p


def sieve_omega(limit: int) -> OmegaTable:
    """Omega(n) for all n <= limit (8-bit cells; Omega(n) <= log2(limit) < 64)."""
    if limit < 1:
        raise ValueError(f"omega limit must be >= 1, got {limit}")
    if limit > MAX_OMEGA_LIMIT:
        raise ResourceLimitError(
            f"omega limit {limit} exceeds the configured cap {MAX_OMEGA_LIMIT}"
        )
    om = np.zeros(limit + 1, dtype=np.uint8)
    _fill_omega(om, limit)
    return OmegaTable(limit=limit, omega=om)


def nth_prime(table: PrimeTable, n: int) -> int:
    """p_n, 1-indexed (p_1 = 2)."""
    if not 1 <= n <= table.count:
        raise IndexError(f"n={n} out of range 1..{table.count}")
    return int(table.primes[n - 1])


def is_prime(n: int) -> bool:
    """Trial division; intended for small n (validation of prime supports)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _check_range(table: PrimeTable, n_max: int, n_min: int) -> np.ndarray:
    if n_max > table.count:
        raise ValueError(f"n_max={n_max} exceeds table count {table.count}")
    return np.arange(n_min, n_max + 1, dtype=np.int64)


def check_nth_prime_lower(table: PrimeTable, n_max: int) -> list[int]:
    """Violations of p_n >= n log n on 2 <= n <= n_max (expected none)."""
    ns = _check_range(table, n_max, 2)
    pn = table.primes[ns - 1].astype(np.float64)
    bad = pn < ns * np.log(ns)
    return [int(n) for n in ns[bad]]


def check_nth_prime_upper(table: PrimeTable, n_max: int) -> list[int]:
    """Violations of p_n <= n (log n + log log n) on 6 <= n <= n_max."""
    ns = _check_range(table, n_max, 6)
    if len(ns) == 0:
        return []
    pn = table.primes[ns - 1].astype(np.float64)
    logn = np.log(ns)
    bad = pn > ns * (logn + np.log(logn))
    return [int(n) for n in ns[bad]]


def check_nth_prime_log(table: PrimeTable, n_max: int) -> list[int]:
    """Violations of log n <= log p_n <= 2 log n on 2 <= n <= n_max."""
    ns = _check_range(table, n_max, 2)
    logp = np.log(table.primes[ns - 1].astype(np.float64))
    logn = np.log(ns)
    bad = (logp < logn) | (logp > 2 * logn)
    return [int(n) for n in ns[bad]]


def check_bertrand(table: PrimeTable) -> list[int]:
    """Violations of p_{n+1} < 2 p_n over the whole table (expected none)."""
    p = table.primes
    bad = np.flatnonzero(p[1:] >= 2 * p[:-1]) + 1
    return [int(n) for n in bad]


@dataclass(frozen=True)
class MertensCheck:
    x: float
    lhs: float  # sum of 1/p over p <= x
    rhs: float  # log log x
    passed: bool


def check_mertens_lower(table: PrimeTable, x: float) -> MertensCheck:
    """Check sum_{p<=x} 1/p > log log x (requires 1 < x <= table.limit)."""
    if x <= 1:
        raise ValueError(f"x must be > 1, got {x}")
    k = table.count_leq(x)
    lhs = math.fsum((1.0 / table.primes[:k].astype(np.float64)).tolist())
    rhs = math.log(math.log(x))
    return MertensCheck(x=float(x), lhs=lhs, rhs=rhs, passed=lhs > rhs)
