"""Two-sided enclosures for series of the form sum 1/(a (log a + x)).

Every sum here is over positive terms, so a truncated sum is always a valid
lower bound; the upper bound adds a proven tail estimate where one exists:

* primes — the tail beyond the k-th prime is at most log(1 + x/log k)/x for
  x > 0 (compare with the integral of 1/(t log t (log t + x)) using
  p_n >= n log n and log p_n >= log n), and at most 1/log k at x = 0 (same
  comparison against the integral of 1/(t log^2 t)).
* Omega-classes with k >= 2 — no tail bound is available, and none is
  invented: the upper end is reported as +inf.

Floating-point error accounting: terms are evaluated in double precision and
summed with exactly-rounded partial sums (math.fsum) over fixed-size chunks,
chunk results combined in index order.  A conservative worst-case budget of
4 * terms * eps * |sum| is folded into both enclosure ends; it dwarfs the
actual error (fsum is exactly rounded; per-term evaluation error is ~2 eps)
and is itself dwarfed by the tail widths (>= 1e-2) that matter here.
Chunk boundaries are fixed, so results are bit-identical for any worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .primes import OmegaTable, PrimeTable
from .sequences import PrimitiveSequence

_EPS = float(np.finfo(np.float64).eps)
_PER_TERM_ULPS = 4.0
_CHUNK = 1 << 20
_OMEGA_CHUNK = 1 << 24


@dataclass(frozen=True)
class SumEnclosure:
    """Certified interval [lower, upper] for a series value.

    ``rounding_budget`` is the worst-case floating-point allowance already
    folded into both ends; ``tail_bound`` is the proven bound on the terms
    beyond the truncation (None for exact finite sums, +inf when no bound
    exists).
    """

    lower: float
    upper: float
    terms_used: int
    rounding_budget: float
    tail_bound: float | None = None

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def to_record(self, target: str, x: float, limit: int | None) -> dict:
        def _num(v):
            return None if v is None or not math.isfinite(v) else v

        return {
            "target": target,
            "x": x,
            "limit": limit,
            "lower": self.lower,
            "upper": _num(self.upper),
            "terms_used": self.terms_used,
            "tail_bound": _num(self.tail_bound),
            "rounding_budget": self.rounding_budget,
        }


@dataclass(frozen=True)
class SeriesTarget:
    """Which series to enclose: the primes, an Omega-class, or an explicit
    finite sequence, together with x and the truncation limit."""

    kind: str  # "primes" | "omega-class" | "explicit-sequence"
    x: float
    limit: int | None = None
    k: int | None = None
    elements: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("primes", "omega-class", "explicit-sequence"):
            raise ValueError(f"unknown series target kind {self.kind!r}")
        if self.x < 0:
            raise ValueError(f"x must be >= 0, got {self.x}")
        if self.kind == "omega-class" and (self.k is None or self.k < 1):
            raise ValueError("omega-class targets need k >= 1")
        if self.kind == "explicit-sequence" and not self.elements:
            raise ValueError("explicit-sequence targets need elements")
        if self.kind != "explicit-sequence" and (self.limit is None or self.limit < 2):
            raise ValueError("truncated targets need a limit >= 2")

    @property
    def label(self) -> str:
        return f"omega-class {self.k}" if self.kind == "omega-class" else self.kind


def series_enclosure(
    target: SeriesTarget,
    table: PrimeTable | None = None,
    omega: OmegaTable | None = None,
    workers: int = 1,
) -> SumEnclosure:
    """Evaluate a SeriesTarget against the tables it needs."""
    if target.kind == "primes":
        if table is None or table.limit < target.limit:
            raise ValueError("prime targets need a PrimeTable covering the limit")
        return prime_series_enclosure(table, target.x, workers=workers)
    if target.kind == "omega-class":
        if omega is None or omega.limit < target.limit:
            raise ValueError("omega-class targets need an OmegaTable covering the limit")
        return omega_class_series_lower(omega, target.k, target.x, workers=workers)
    return sum_finite(target.elements, target.x, workers=workers)


def term_value(a: int, x: float) -> float:
    """1/(a (log a + x)) in double precision; requires a >= 2, x >= 0."""
    if a <= 1:
        raise ValueError(f"series terms need a >= 2, got {a}")
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    return 1.0 / (a * (math.log(a) + x))


def _budget(terms: int, scale: float) -> float:
    return _PER_TERM_ULPS * terms * _EPS * abs(scale)


def _terms_sum(values: np.ndarray, x: float) -> float:
    """Exactly-rounded sum of 1/(v (log v + x)) over one chunk."""
    v = values.astype(np.float64)
    return math.fsum((1.0 / (v * (np.log(v) + x))).tolist())


def _map_chunks(fn, chunks: list, workers: int) -> list[float]:
    if workers > 1 and len(chunks) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, chunks))
    return [fn(c) for c in chunks]


def array_series_sum(values: np.ndarray, x: float, workers: int = 1) -> tuple[float, int]:
    """Compensated sum of 1/(v (log v + x)) over an integer array (increasing
    order assumed); returns (sum, term count).  Deterministic in ``workers``."""
    chunks = [values[i : i + _CHUNK] for i in range(0, len(values), _CHUNK)]
    parts = _map_chunks(lambda c: _terms_sum(c, x), chunks, workers)
    return math.fsum(parts), len(values)


def finite_array_enclosure(values: np.ndarray, x: float, workers: int = 1) -> SumEnclosure:
    """Enclosure of the exact finite sum over the given integers."""
    total, m = array_series_sum(values, x, workers)
    b = _budget(m, total)
    return SumEnclosure(lower=total - b, upper=total + b, terms_used=m,
                        rounding_budget=b, tail_bound=None)


def sum_finite(seq: PrimitiveSequence | Sequence[int], x: float, workers: int = 1) -> SumEnclosure:
    """Enclosure of sum 1/(a (log a + x)) over a finite sequence (1 rejected)."""
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    elems = list(seq.elements if isinstance(seq, PrimitiveSequence) else seq)
    if any(a <= 1 for a in elems):
        raise ValueError("sequences containing 1 have no series value (log 1 = 0)")
    return finite_array_enclosure(np.asarray(sorted(elems), dtype=np.int64), x, workers)


def prime_tail_bound(x: float, k: int) -> float:
    """Upper bound log(1 + x/log k)/x for the prime-series tail beyond p_k (x > 0)."""
    if x <= 0:
        raise ValueError(f"this tail bound needs x > 0, got {x}")
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    return math.log1p(x / math.log(k)) / x


def prime_tail_bound_at_zero(k: int) -> float:
    """Upper bound 1/log k for the x = 0 prime-series tail beyond p_k."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    return 1.0 / math.log(k)


def prime_series_enclosure(table: PrimeTable, x: float, workers: int = 1) -> SumEnclosure:
    """Enclosure of sum over ALL primes of 1/(p (log p + x)).

    lower = compensated partial sum over p <= limit minus budget;
    upper = partial sum + tail bound at k = pi(limit) + budget.
    """
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    if table.count < 2:
        raise ValueError("need at least 2 primes for the tail bound")
    partial, m = array_series_sum(table.primes, x, workers)
    tail = prime_tail_bound(x, m) if x > 0 else prime_tail_bound_at_zero(m)
    b = _budget(m, partial)
    return SumEnclosure(lower=partial - b, upper=partial + tail + b,
                        terms_used=m, rounding_budget=b, tail_bound=tail)


def omega_class_series_lower(
    omega: OmegaTable, k: int, x: float, workers: int = 1
) -> SumEnclosure:
    """Lower bound for sum over {n : Omega(n) = k} of 1/(n (log n + x)).

    Positive terms make any truncated sum a valid lower bound.  For k = 1
    (the primes) the usual tail bound gives a finite upper end; for k >= 2 no
    proven tail bound exists and the upper end is +inf — explicitly
    "no finite upper bound available", never an invented one.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if x < 0:
        raise ValueError(f"x must be >= 0, got {x}")
    om = omega.omega

    def class_sum(bounds: tuple[int, int]) -> tuple[float, int]:
        lo, hi = bounds
        ns = (np.flatnonzero(om[lo:hi] == k) + lo).astype(np.int64)
        if len(ns) == 0:
            return 0.0, 0
        return _terms_sum(ns, x), len(ns)

    bounds = [(lo, min(lo + _OMEGA_CHUNK, omega.limit + 1))
              for lo in range(1, omega.limit + 1, _OMEGA_CHUNK)]
    parts = _map_chunks(class_sum, bounds, workers)
    partial = math.fsum(p for p, _ in parts)
    m = sum(c for _, c in parts)
    b = _budget(m, partial)
    if k == 1 and m >= 2:
        tail = prime_tail_bound(x, m) if x > 0 else prime_tail_bound_at_zero(m)
        return SumEnclosure(lower=partial - b, upper=partial + tail + b,
                            terms_used=m, rounding_budget=b, tail_bound=tail)
    return SumEnclosure(lower=partial - b, upper=math.inf, terms_used=m,
                        rounding_budget=b, tail_bound=math.inf)
