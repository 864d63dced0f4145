"""Witness-construction parameters, the inequality chain, and conjecture checks.

The construction: given a gain target lam >= 1, a rate alpha > 0 and either a
real parameter beta >= 5/2 or an integer degree d >= 1, take the k primes up
to e^{alpha x} and form the homogeneous set of all degree-d products of them.
Whenever the structural conditions

    c * alpha >= e^beta + log 2        (resp. e^d + log 2)
    beta >= 5/2                        (beta mode only)

hold with c = (e^beta + log 2)/alpha and the gain factor

    gain_beta(alpha, beta)  = e^{beta-2} / (sqrt(beta+1) ((beta+1) alpha + 1)
                              (beta + 1 + (1+alpha) log(1 + 3/alpha)))
    gain_deg(d, alpha)      = e^{d-1} / (sqrt(d) (d alpha + 1)
                              (d + (1+alpha) log(1 + 3/alpha)))

is >= 1, the witness series beats lam times the prime series for every
x >= c lam (log(lam+2))^{5/2} (resp. x >= c).

``verify_chain`` replays the chain of inequalities behind that statement on a
concrete parameter instance.  Entries that need the prime cutoff k (and the
enumerated witness set) are verified numerically when e^{alpha x} fits inside
the sieve; for real witness parameters (x >= 363, threshold ~ e^149) they are
reported as skipped-out-of-range — never silently passed.  The formula-level
entries are then marked verified-symbolically.

The conjecture checkers at the end compare finite primitive-sequence sums
against the matching prime sums.  They are finders, not assertors: a violated
inequality here would be a mathematically sensational finding, which callers
report with full data instead of treating as an error.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import mpmath as mp
import numpy as np

from .errors import ConstructionFailureError, ResourceLimitError
from .primes import PrimeTable
from .sequences import (
    DEFAULT_ENUMERATION_CAP,
    HomogeneousSpec,
    PrimitiveSequence,
    homogeneous_products,
    prime_support,
)
from .series import (
    SumEnclosure,
    _budget,
    finite_array_enclosure,
    prime_series_enclosure,
    term_value,
)

# float-rounding slack for inequalities that hold with equality by
# construction (c is derived from the same formula it is checked against)
_REL_SLACK = 1e-12

MODE_NUMERIC = "verified-numerically"
MODE_SYMBOLIC = "verified-symbolically"
MODE_SKIPPED_RANGE = "skipped-out-of-range"
MODE_SKIPPED_PRECONDITION = "skipped-precondition"


def gain_factor_beta(alpha: float, beta: float) -> float:
    """Guaranteed witness/prime series ratio in the (alpha, beta) form."""
    if alpha <= 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    denom = (
        math.sqrt(beta + 1)
        * ((beta + 1) * alpha + 1)
        * (beta + 1 + (1 + alpha) * math.log1p(3 / alpha))
    )
    return math.exp(beta - 2) / denom


def gain_factor_degree(d: int, alpha: float) -> float:
    """Guaranteed witness/prime series ratio in the integer-degree form."""
    if alpha <= 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    denom = (
        math.sqrt(d)
        * (d * alpha + 1)
        * (d + (1 + alpha) * math.log1p(3 / alpha))
    )
    return math.exp(d - 1) / denom


def c_from_beta(alpha: float, beta: float) -> float:
    """Smallest admissible scale constant (e^beta + log 2)/alpha."""
    if alpha <= 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    return (math.exp(beta) + math.log(2)) / alpha


def c_from_degree(alpha: float, d: int) -> float:
    """Smallest admissible scale constant (e^d + log 2)/alpha."""
    if alpha <= 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    return (math.exp(d) + math.log(2)) / alpha


def witness_degree(lam: float, beta: float) -> int:
    """floor(log lam + (5/2) log log(lam+2) + beta).

    floor is discontinuous, so when the double-precision value sits within
    1e-9 of an integer the expression is re-evaluated at 30 digits.
    """
    if lam < 1:
        raise ValueError(f"lam must be >= 1, got {lam}")
    val = math.log(lam) + 2.5 * math.log(math.log(lam + 2)) + beta
    frac = val - math.floor(val)
    if min(frac, 1.0 - frac) < 1e-9:
        with mp.workdps(30):
            hi = (mp.log(lam) + mp.mpf(5) / 2 * mp.log(mp.log(mp.mpf(lam) + 2))
                  + mp.mpf(beta))
            return int(mp.floor(hi))
    return int(math.floor(val))


@dataclass(frozen=True)
class PrimeCutoff:
    """The cutoff index k with p_k <= e^{alpha x} < p_{k+1} (k=None when the
    threshold lies outside the sieve)."""

    log_threshold: float
    k: int | None = None
    p_k: int | None = None
    p_next: int | None = None


def locate_prime_cutoff(table: PrimeTable, alpha: float, x: float) -> PrimeCutoff:
    """Find k with p_k <= e^{alpha x} < p_{k+1}, working in the log domain.

    Returns an out-of-range marker when e^{alpha x} exceeds the table (or the
    bracketing prime p_{k+1} is unknown).  Raises ConstructionFailureError
    when no admissible k exists at all (threshold below 2, or k = 1).
    """
    if alpha <= 0:
        raise ValueError(f"alpha must be > 0, got {alpha}")
    if x <= 0:
        raise ValueError(f"x must be > 0, got {x}")
    t_log = alpha * x
    if t_log < math.log(2):
        raise ConstructionFailureError(
            f"construction failure: no prime below e^(alpha x) = {math.exp(t_log):.6g} "
            "(the c-alpha condition is violated)"
        )
    if t_log > math.log(table.limit):
        return PrimeCutoff(log_threshold=t_log)
    k = table.count_leq(math.exp(t_log))
    if k >= table.count:
        return PrimeCutoff(log_threshold=t_log)  # p_{k+1} not in the table
    if k < 2:
        raise ConstructionFailureError(
            f"construction failure: cutoff gives k={k}, but k >= 2 is required"
        )
    return PrimeCutoff(log_threshold=t_log, k=k,
                       p_k=int(table.primes[k - 1]), p_next=int(table.primes[k]))


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    lhs: float
    rhs: float
    passed: bool


def check_multinomial_lower(
    support: tuple[int, ...] | list[int], d: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> InequalityCheck:
    """Brute-force check of sum 1/a over degree-d products >= (1/d!)(sum 1/p)^d.

    Evaluated in exact rational arithmetic so the d = 1 equality case is
    exact, not a float coincidence.
    """
    spec = HomogeneousSpec(prime_support=tuple(support), degree=d)
    products = homogeneous_products(spec, cap=cap)
    lhs = sum(Fraction(1, a) for a in products)
    rhs = sum(Fraction(1, p) for p in spec.prime_support) ** d / math.factorial(d)
    return InequalityCheck("multinomial-lower", float(lhs), float(rhs), lhs >= rhs)


def check_factorial_bound(n_max: int) -> list[int]:
    """Violations of log n! <= n log n + 1 - n + (1/2) log n on 1..n_max.

    Expected empty; equality holds at n = 1.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    bad = []
    for n in range(1, n_max + 1):
        lhs = math.lgamma(n + 1)
        rhs = n * math.log(n) + 1 - n + 0.5 * math.log(n)
        if lhs > rhs:
            bad.append(n)
    return bad


def reciprocal_power_sums(primes: np.ndarray, d: int) -> list[float]:
    """Power sums P_j = sum (1/p)^j for j = 1..d."""
    r = 1.0 / primes.astype(np.float64)
    return [math.fsum((r**j).tolist()) for j in range(1, d + 1)]


def complete_homogeneous_sum(primes: np.ndarray, d: int) -> float:
    """sum over all degree-d products (with repetition) of 1/product.

    This is the complete homogeneous symmetric polynomial h_d of the
    reciprocals, via the Newton recurrence j h_j = sum_{i<=j} P_i h_{j-i};
    identical to brute-force enumeration, in O(k d) instead of C(k+d-1, d).
    """
    p = reciprocal_power_sums(primes, d)
    h = [1.0]
    for j in range(1, d + 1):
        h.append(sum(p[i - 1] * h[j - i] for i in range(1, j + 1)) / j)
    return h[d]


def _product_chunks(pf: np.ndarray, d: int):
    """Yield float64 arrays jointly covering all degree-d products (with
    repetition, nondecreasing index) of the given primes, in a fixed order."""
    if d == 1:
        yield pf
        return
    for i in range(len(pf)):
        for chunk in _product_chunks(pf[i:], d - 1):
            yield pf[i] * chunk


def witness_series_enclosure(
    primes: np.ndarray, d: int, x: float, cap: int = DEFAULT_ENUMERATION_CAP
) -> SumEnclosure:
    """Enclosure of sum 1/(a (log a + x)) over the degree-d witness set.

    Enumerates the full (finite) set; raises ResourceLimitError beyond cap.
    Products are formed in float64 — exact up to 2^53, and the relative slip
    beyond that is absorbed by the rounding budget.
    """
    count = math.comb(len(primes) + d - 1, d)
    if count > cap:
        raise ResourceLimitError(
            f"witness set of {count} elements exceeds the enumeration cap {cap}"
        )
    pf = primes.astype(np.float64)
    parts = [
        math.fsum((1.0 / (ch * (np.log(ch) + x))).tolist())
        for ch in _product_chunks(pf, d)
    ]
    total = math.fsum(parts)
    b = _budget(count, total)
    return SumEnclosure(lower=total - b, upper=total + b, terms_used=count,
                        rounding_budget=b, tail_bound=None)


@dataclass(frozen=True)
class WitnessParams:
    """Parameter bundle for one chain instance.

    Exactly one of ``beta`` (real-parameter mode) and ``degree`` (integer
    mode, lam fixed to 1) must be set; ``c`` defaults to the smallest value
    allowed by the c-alpha condition.
    """

    x: float
    alpha: float
    lam: float = 1.0
    beta: float | None = None
    degree: int | None = None
    c: float | None = None

    @property
    def mode(self) -> str:
        return "theorem1" if self.beta is not None else "theorem2"

    def validate(self) -> None:
        if (self.beta is None) == (self.degree is None):
            raise ValueError("exactly one of beta and degree must be given")
        if self.alpha <= 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if self.x <= 0:
            raise ValueError(f"x must be > 0, got {self.x}")
        if self.lam < 1:
            raise ValueError(f"lambda must be >= 1, got {self.lam}")
        if self.degree is not None:
            if self.degree < 1:
                raise ValueError(f"degree must be >= 1, got {self.degree}")
            if self.lam != 1.0:
                raise ValueError("integer-degree mode fixes lambda = 1")


@dataclass
class ChainEntry:
    name: str
    lhs: float | None
    rhs: float | None
    passed: bool | None
    mode: str

    def to_record(self) -> dict:
        def _num(v):
            return None if v is None or not math.isfinite(v) else v

        return {"name": self.name, "lhs": _num(self.lhs), "rhs": _num(self.rhs),
                "pass": self.passed, "mode": self.mode}


@dataclass
class WitnessReport:
    params: WitnessParams
    degree: int
    c: float
    log_threshold: float
    k: int | None
    entries: list[ChainEntry] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        checked = [e for e in self.entries if e.mode.startswith("verified")]
        if any(e.passed is False for e in checked):
            return "fail"
        if any(e.passed is None for e in checked):
            return "undetermined"
        return "pass"

    def entry(self, name: str) -> ChainEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def to_record(self) -> dict:
        p = asdict(self.params)
        p["mode"] = self.params.mode
        return {
            "params": p,
            "degree": self.degree,
            "c": self.c,
            "log_threshold": self.log_threshold,
            "k": self.k,
            "entries": [e.to_record() for e in self.entries],
            "verdict": self.verdict,
        }


def verify_chain(
    params: WitnessParams,
    table: PrimeTable,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
    workers: int = 1,
) -> WitnessReport:
    """Replay the witness inequality chain for one parameter instance.

    Entry vocabulary (every chain inequality appears exactly once):

    =================== ======================================================
    c-alpha             c * alpha >= e^beta + log 2   (e^degree in degree mode)
    beta-floor          beta >= 5/2                   (beta mode only)
    gain                gain factor >= 1 (this is also the final witness/prime
                        ratio in degree mode)
    x-range             x >= c lam (log(lam+2))^{5/2}  (x >= c in degree mode)
    degree-majorization integer-degree gain >= lam * beta-form gain (beta mode)
    cutoff-bracket      p_{k+1} < 2 p_k around the threshold e^{alpha x}
    cutoff-window       log p_k <= alpha x < 3 log k   (both sides checked)
    recip-excess        sum_{n<=k} 1/p_n > degree
    head-share          head sum > [d/(d+(1+a)log(1+3/a))] * total series,
                        decided only when the enclosures separate
    product-mass        sum 1/a over witness set > (d^{d-1}/d!) sum_{n<=k} 1/p_n
    log-bound           max log a = d log p_k <= d alpha x
    witness-vs-total    witness series > gain_deg * prime series (enumerated)
    =================== ======================================================

    A failed structural condition (c-alpha / beta-floor) gates the remaining
    entries (mode skipped-precondition).  When e^{alpha x} is beyond the
    sieve, cutoff-dependent entries are skipped-out-of-range and the formula
    level ones marked verified-symbolically.  head-share may come out
    undetermined (pass = None) if its enclosures overlap.
    """
    params.validate()
    if params.mode == "theorem1":
        d = witness_degree(params.lam, params.beta)
        if d < 1:
            raise ConstructionFailureError(
                f"construction failure: derived degree {d} < 1 (beta too small)"
            )
        c_floor = math.exp(params.beta) + math.log(2)
        c = params.c if params.c is not None else c_from_beta(params.alpha, params.beta)
        x_need = c * params.lam * math.log(params.lam + 2) ** 2.5
    else:
        d = params.degree
        c_floor = math.exp(d) + math.log(2)
        c = params.c if params.c is not None else c_from_degree(params.alpha, d)
        x_need = c

    entries: list[ChainEntry] = []
    alpha, x, lam = params.alpha, params.x, params.lam

    c_alpha = c * alpha
    c1 = c_alpha >= c_floor * (1 - _REL_SLACK)
    gated = not c1
    c2 = None
    if params.mode == "theorem1":
        c2 = params.beta >= 2.5
        gated = gated or not c2

    cutoff = None if gated else locate_prime_cutoff(table, alpha, x)
    in_range = cutoff is not None and cutoff.k is not None
    formula_mode = MODE_NUMERIC if in_range else MODE_SYMBOLIC

    entries.append(ChainEntry("c-alpha", c_alpha, c_floor, c1, formula_mode))
    if c2 is not None:
        entries.append(ChainEntry("beta-floor", params.beta, 2.5, c2, formula_mode))

    def formula(name: str, lhs: float, rhs: float, ok: bool) -> None:
        if gated:
            entries.append(ChainEntry(name, None, None, None, MODE_SKIPPED_PRECONDITION))
        else:
            entries.append(ChainEntry(name, lhs, rhs, ok, formula_mode))

    def skipped(name: str) -> None:
        mode = MODE_SKIPPED_PRECONDITION if gated else MODE_SKIPPED_RANGE
        entries.append(ChainEntry(name, None, None, None, mode))

    gain = (gain_factor_beta(alpha, params.beta) if params.mode == "theorem1"
            else gain_factor_degree(d, alpha))
    formula("gain", gain, 1.0, gain >= 1.0)
    formula("x-range", x, x_need, x >= x_need * (1 - _REL_SLACK))
    if params.mode == "theorem1":
        gd = gain_factor_degree(d, alpha)
        formula("degree-majorization", gd, lam * gain, gd >= lam * gain * (1 - _REL_SLACK))

    if not in_range:
        for name in ("cutoff-bracket", "cutoff-window", "recip-excess",
                     "head-share", "product-mass", "log-bound", "witness-vs-total"):
            skipped(name)
        log_threshold = cutoff.log_threshold if cutoff is not None else alpha * x
        return WitnessReport(params=params, degree=d, c=c,
                             log_threshold=log_threshold, k=None, entries=entries)

    k, p_k, p_next = cutoff.k, cutoff.p_k, cutoff.p_next
    head_primes = table.primes[:k]

    entries.append(ChainEntry("cutoff-bracket", float(p_next), 2.0 * p_k,
                              p_next < 2 * p_k, MODE_NUMERIC))

    window_ok = math.log(p_k) <= cutoff.log_threshold < 3 * math.log(k)
    entries.append(ChainEntry("cutoff-window", cutoff.log_threshold,
                              3 * math.log(k), window_ok, MODE_NUMERIC))

    recip = math.fsum((1.0 / head_primes.astype(np.float64)).tolist())
    recip_ok = recip - _budget(k, recip) > d
    entries.append(ChainEntry("recip-excess", recip, float(d), recip_ok, MODE_NUMERIC))

    share = d / (d + (1 + alpha) * math.log1p(3 / alpha))
    head = finite_array_enclosure(head_primes, x, workers=workers)
    total = prime_series_enclosure(table, x, workers=workers)
    if head.lower > share * total.upper:
        share_pass = True
    elif head.upper <= share * total.lower:
        share_pass = False
    else:
        share_pass = None  # enclosures overlap: only separation is sound
    entries.append(ChainEntry("head-share", head.lower, share * total.upper,
                              share_pass, MODE_NUMERIC))

    mass = complete_homogeneous_sum(head_primes, d)
    mass_coef = math.exp((d - 1) * math.log(d) - math.lgamma(d + 1))
    entries.append(ChainEntry("product-mass", mass, mass_coef * recip,
                              mass > mass_coef * recip, MODE_NUMERIC))

    log_bound = d * math.log(p_k)
    entries.append(ChainEntry("log-bound", log_bound, d * cutoff.log_threshold,
                              log_bound <= d * cutoff.log_threshold, MODE_NUMERIC))

    gain_d = gain_factor_degree(d, alpha)
    if math.comb(k + d - 1, d) <= enumeration_cap:
        wit = witness_series_enclosure(head_primes, d, x, cap=enumeration_cap)
        if wit.lower > gain_d * total.upper:
            wt_pass = True
        elif wit.upper <= gain_d * total.lower:
            wt_pass = False
        else:
            wt_pass = None
        entries.append(ChainEntry("witness-vs-total", wit.lower,
                                  gain_d * total.upper, wt_pass, MODE_NUMERIC))
    else:
        skipped("witness-vs-total")

    return WitnessReport(params=params, degree=d, c=c,
                         log_threshold=cutoff.log_threshold, k=k, entries=entries)


# --- conjecture checkers (finders, not assertors) ---

def check_support_dominance(seq: PrimitiveSequence, table: PrimeTable) -> InequalityCheck:
    """sum 1/(a log a) over the sequence vs the same sum over its prime support."""
    lhs = math.fsum(term_value(a, 0.0) for a in seq.elements)
    rhs = math.fsum(term_value(p, 0.0) for p in sorted(prime_support(seq, table)))
    return InequalityCheck("support-dominance", lhs, rhs, lhs <= rhs)


def check_cardinality_dominance(seq: PrimitiveSequence, table: PrimeTable) -> InequalityCheck:
    """sum 1/(a log a) over the sequence vs the sum over the first |seq| primes."""
    m = len(seq)
    if m > table.count:
        raise ValueError(f"need {m} primes but the table holds {table.count}")
    lhs = math.fsum(term_value(a, 0.0) for a in seq.elements)
    rhs = math.fsum(term_value(int(p), 0.0) for p in table.primes[:m])
    return InequalityCheck("cardinality-dominance", lhs, rhs, lhs <= rhs)


def check_partial_dominance(seq: PrimitiveSequence, n: int, table: PrimeTable) -> InequalityCheck:
    """Truncated comparison: sums restricted to elements (resp. primes) <= n."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > table.limit:
        raise ValueError(f"n={n} exceeds the table limit {table.limit}")
    lhs = math.fsum(term_value(a, 0.0) for a in seq.elements if a <= n)
    kp = table.count_leq(n)
    rhs = math.fsum(term_value(int(p), 0.0) for p in table.primes[:kp])
    return InequalityCheck("partial-dominance", lhs, rhs, lhs <= rhs)
