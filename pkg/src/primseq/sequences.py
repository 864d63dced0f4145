"""Primitive sequences, Omega-classes, and homogeneous product sets.

A *primitive* sequence is a set of integers >= 2 in which no element divides
another.  A *homogeneous* set (all elements with the same Omega) is always
primitive.  This module models finite primitive sequences explicitly, streams
the Omega-classes {n : Omega(n) = k} off an OmegaTable, and enumerates the
degree-d products over a finite prime support (every product of exactly d
support primes, with repetition) — the witness sets the rest of the package
reasons about.

The singleton {1} is primitive by the letter of the definition but excluded
everywhere a series is evaluated (the x = 0 term at a = 1 is undefined), so
``PrimitiveSequence`` rejects 1 outright while ``is_primitive`` tolerates it.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from itertools import combinations_with_replacement
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import CapabilityError, ResourceLimitError
from .primes import OmegaTable, PrimeTable, is_prime

DEFAULT_ENUMERATION_CAP = 10_000_000


def _validated_elements(elements: Iterable[int]) -> list[int]:
    elems = [int(a) for a in elements]
    if not elems:
        raise ValueError("sequence must be non-empty")
    if any(a < 1 for a in elems):
        raise ValueError("sequence elements must be >= 1")
    elems.sort()
    for a, b in zip(elems, elems[1:]):
        if a == b:
            raise ValueError(f"duplicate element {a}: a multiset is never primitive")
    return elems


def is_primitive(elements: Iterable[int]) -> bool:
    """True iff no element divides a distinct element.

    Duplicates and empty input are rejected.  [1] alone returns True (it is
    the excluded sequence; every series operation refuses it).
    """
    elems = _validated_elements(elements)
    for i, a in enumerate(elems):
        # sorted input: a can only divide b >= 2a, so skip the gap (a, 2a)
        j = bisect_left(elems, 2 * a, i + 1)
        for b in elems[j:]:
            if b % a == 0:
                return False
    return True


@dataclass(frozen=True)
class PrimitiveSequence:
    """Strictly increasing integers >= 2 with the no-divisibility invariant."""

    elements: tuple[int, ...]

    def __post_init__(self) -> None:
        elems = _validated_elements(self.elements)
        if elems[0] < 2:
            raise ValueError("1 is excluded from primitive sequences ({1} is the degenerate case)")
        if not is_primitive(elems):
            raise ValueError("sequence is not primitive: some element divides another")
        object.__setattr__(self, "elements", tuple(elems))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def prime_support(seq: PrimitiveSequence, table: PrimeTable) -> set[int]:
    """The set of primes dividing at least one element.

    Factors each element by trial division over the table primes; raises
    CapabilityError if an element cannot be certified with primes <= limit.
    """
    support: set[int] = set()
    for a in seq.elements:
        rest = a
        for p in table.primes:
            p = int(p)
            if p * p > rest:
                break
            while rest % p == 0:
                support.add(p)
                rest //= p
        else:
            if rest > 1 and rest > table.limit * table.limit:
                raise CapabilityError(
                    f"cannot certify factorization of {a} with primes <= {table.limit}"
                )
        if rest > 1:
            # rest has no prime factor <= sqrt(rest), hence is prime
            if rest > table.limit:
                raise CapabilityError(
                    f"{a} has the prime factor {rest} above the table limit {table.limit}"
                )
            support.add(rest)
    return support


def omega_class(omega: OmegaTable, k: int, limit: int) -> np.ndarray:
    """All n <= limit with Omega(n) = k, increasing (k = 0 gives [1])."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if limit > omega.limit:
        raise ValueError(f"limit {limit} exceeds omega table limit {omega.limit}")
    if k == 0:
        return np.array([1], dtype=np.int64) if limit >= 1 else np.array([], dtype=np.int64)
    return (np.flatnonzero(omega.omega[1 : limit + 1] == k) + 1).astype(np.int64)


@dataclass(frozen=True)
class HomogeneousSpec:
    """Degree-d products over a finite prime support, optionally cut at limit."""

    prime_support: tuple[int, ...]
    degree: int
    limit: int | None = None

    def __post_init__(self) -> None:
        support = tuple(int(p) for p in self.prime_support)
        if not support:
            raise ValueError("prime support must be non-empty")
        if any(b <= a for a, b in zip(support, support[1:])):
            raise ValueError("prime support must be strictly increasing")
        for p in support:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        if self.degree < 1:
            raise ValueError(f"degree must be >= 1, got {self.degree}")
        object.__setattr__(self, "prime_support", support)

    def count(self) -> int:
        """Number of degree-d products: C(k + d - 1, d)."""
        return math.comb(len(self.prime_support) + self.degree - 1, self.degree)


def homogeneous_products(
    spec: HomogeneousSpec, cap: int = DEFAULT_ENUMERATION_CAP
) -> list[int]:
    """All products of exactly ``degree`` support primes, with repetition.

    Distinct multisets give distinct products (unique factorization), so the
    result is duplicate-free by construction; returned sorted.  Python ints
    cannot wrap around, so there is no overflow path; the cap guards the
    combinatorial count instead.
    """
    n = spec.count()
    if n > cap:
        raise ResourceLimitError(
            f"{n} products exceed the enumeration cap {cap} "
            f"(support size {len(spec.prime_support)}, degree {spec.degree})"
        )
    products = [
        math.prod(combo)
        for combo in combinations_with_replacement(spec.prime_support, spec.degree)
    ]
    if spec.limit is not None:
        products = [a for a in products if a <= spec.limit]
    products.sort()
    return products


def load_sequence_file(path: str | Path) -> list[int]:
    """Read a newline-delimited decimal integer file (blank lines ignored)."""
    elems = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            elems.append(int(line))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not a decimal integer: {line!r}") from None
    return elems


def write_sequence_file(path: str | Path, elements: Sequence[int]) -> None:
    Path(path).write_text("".join(f"{a}\n" for a in elements))
