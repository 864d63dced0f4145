"""Command-line surface.

Subcommands: sieve (build/cache tables), sum (series enclosures as JSON),
scan (crossover exploration as CSV), optimize (re-solve the parameter
optimizations), verify (bound validators / witness chain), conjecture
(finite inequality checkers).

Exit codes (stable): 0 success, 2 usage or invalid input, 3 infeasible
optimization, 4 conjecture FINDING (a violated conjectural inequality —
reported, never asserted away), 5 resource limit.  A failed chain entry or
bound sweep exits 1.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from . import cache, optimizer, primes, sequences, series, witness
from .errors import CapabilityError, ConstructionFailureError, ResourceLimitError

VERDICT_PK_EXCEEDS_P = "PK_EXCEEDS_P"
VERDICT_UNDETERMINED = "UNDETERMINED"
VERDICT_P_EXCEEDS_TRUNCATION = "P_EXCEEDS_TRUNCATION"


def _parse_limit(text: str) -> int:
    try:
        return int(float(text))
    except ValueError:
        raise ValueError(f"not a valid limit: {text!r}") from None


def _parse_grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid must be START:STOP:STEP, got {text!r}")
    start, stop, step = (float(p) for p in parts)
    if step <= 0:
        raise ValueError(f"grid STEP must be > 0, got {step}")
    if stop < start:
        raise ValueError(f"grid STOP {stop} below START {start}")
    out = []
    i = 0
    while True:
        x = start + i * step
        if x > stop + 1e-9 * step:
            break
        out.append(x)
        i += 1
    return out


def _json_dump(record: dict, path: str | None) -> None:
    text = json.dumps(record, indent=2)
    if path:
        Path(path).write_text(text + "\n")
    else:
        print(text)


def _load_primitive(path: str) -> sequences.PrimitiveSequence:
    elems = sequences.load_sequence_file(path)
    return sequences.PrimitiveSequence(tuple(elems))


def cmd_sieve(args) -> int:
    limit = _parse_limit(args.limit)
    path = Path(args.out) if args.out else cache.table_path(limit)
    loaded = cache.load_tables(path, need_omega=True)
    if loaded is None:
        table = primes.sieve_primes(limit, workers=args.workers)
        omega = primes.sieve_omega(limit)
        cache.write_tables(path, table, omega)
    else:
        table, omega = loaded
    print(f"{table.count} primes <= {limit}")
    print(f"omega entries: {omega.limit}")
    print(f"cache: {path}")
    return 0


def cmd_sum(args) -> int:
    x = args.x
    table = omega = None
    if args.target == "primes":
        limit = _parse_limit(args.limit)
        target = series.SeriesTarget("primes", x, limit=limit)
        table, _ = cache.ensure_tables(limit, workers=args.workers)
    elif args.target == "pk":
        if args.k is None:
            raise ValueError("--k is required with --target pk")
        limit = _parse_limit(args.limit)
        target = series.SeriesTarget("omega-class", x, limit=limit, k=args.k)
        _, omega = cache.ensure_tables(limit, need_omega=True, workers=args.workers)
    else:  # file
        if not args.seq:
            raise ValueError("--seq FILE is required with --target file")
        seq = _load_primitive(args.seq)
        target = series.SeriesTarget("explicit-sequence", x, elements=seq.elements)
    enc = series.series_enclosure(target, table=table, omega=omega, workers=args.workers)
    _json_dump(enc.to_record(target.label, x, target.limit), args.json)
    return 0


def _scan_verdict(pk_lower: float, pk_upper: float,
                  prime_lower: float, prime_upper: float) -> str:
    if pk_lower > prime_upper:
        return VERDICT_PK_EXCEEDS_P  # enclosure-separated, hence sound
    if math.isfinite(pk_upper) and prime_lower > pk_upper:
        return VERDICT_P_EXCEEDS_TRUNCATION  # non-conclusive the other way
    return VERDICT_UNDETERMINED


def cmd_scan(args) -> int:
    xs = _parse_grid(args.x_grid)
    ks = [int(k) for k in args.k_list.split(",") if k.strip()]
    if not ks:
        raise ValueError("--k-list must name at least one class")
    limit = _parse_limit(args.limit)
    table, omega = cache.ensure_tables(limit, need_omega=True, workers=args.workers)

    rows = []
    for x in xs:
        prime_enc = series.prime_series_enclosure(table, x, workers=args.workers)
        for k in ks:
            pk_enc = series.omega_class_series_lower(omega, k, x, workers=args.workers)
            verdict = _scan_verdict(pk_enc.lower, pk_enc.upper,
                                    prime_enc.lower, prime_enc.upper)
            rows.append((x, k, pk_enc.lower, prime_enc.lower, prime_enc.upper, verdict))

    out = open(args.csv, "w", newline="") if args.csv else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["x", "k", "pk_lower", "prime_lower", "prime_upper", "verdict"])
        for x, k, pk_lo, p_lo, p_hi, verdict in rows:
            w.writerow([repr(float(x)), k, repr(pk_lo), repr(p_lo), repr(p_hi), verdict])
    finally:
        if args.csv:
            out.close()

    crossings = [r for r in rows if r[5] == VERDICT_PK_EXCEEDS_P]
    note_to = sys.stdout if args.csv else sys.stderr
    if crossings:
        x_min = min(r[0] for r in crossings)
        print(f"sound crossing: the class sum exceeds the prime series at x = {x_min!r}",
              file=note_to)
    else:
        print("no sound crossing at this truncation (absence proves nothing)",
              file=note_to)
    return 0


def cmd_optimize(args) -> int:
    if args.mode == "theorem2":
        result = optimizer.optimize_theorem2()
    else:
        result = optimizer.optimize_theorem1()
    if not result.feasible:
        print("infeasible: no parameters satisfy the gain constraint", file=sys.stderr)
        if args.json:
            _json_dump(result.to_record(), args.json)
        return 3
    cert = optimizer.certify(result)
    record = result.to_record()
    record["certification"] = {
        "certified": cert.certified,
        "constraint_value": cert.constraint_value,
        "c_recomputed": cert.c_recomputed,
        "messages": list(cert.messages),
    }
    if args.json:
        _json_dump(record, args.json)
    if result.mode == "theorem2":
        head = f"d={result.degree} alpha={result.alpha:.6f}"
    else:
        head = f"beta={result.beta:.6f} alpha={result.alpha:.6f}"
    print(f"{head} c={result.c:.4f} constraint={result.constraint_value:.9f} "
          f"certified={'yes' if cert.certified else 'NO'}")
    return 0 if cert.certified else 1


def _verify_bounds(args) -> int:
    n_max = _parse_limit(args.n_max)
    if n_max < 6:
        raise ValueError(f"--n-max must be >= 6, got {n_max}")
    # p_n <= n(log n + log log n) for n >= 6 sizes the sieve
    limit = int(n_max * (math.log(n_max) + math.log(math.log(n_max)))) + 1
    table = primes.sieve_primes(max(limit, 100), workers=args.workers)
    failures = 0

    def report(name: str, bad: list[int]) -> None:
        nonlocal failures
        if bad:
            failures += 1
            print(f"{name}: FAIL at n={bad[:10]}{'...' if len(bad) > 10 else ''}")
        else:
            print(f"{name}: OK (0 violations)")

    report(f"nth-prime-lower [2..{n_max}]", primes.check_nth_prime_lower(table, n_max))
    report(f"nth-prime-upper [6..{n_max}]", primes.check_nth_prime_upper(table, n_max))
    report(f"nth-prime-log [2..{n_max}]", primes.check_nth_prime_log(table, n_max))
    report(f"bertrand [1..{table.count}]", primes.check_bertrand(table))
    for x in (2.0, 10.0, 1e3, 1e6):
        if x > table.limit:
            continue
        chk = primes.check_mertens_lower(table, x)
        status = "OK" if chk.passed else "FAIL"
        if not chk.passed:
            failures += 1
        print(f"prime-recip-lower x={x:g}: {status} (lhs={chk.lhs!r} rhs={chk.rhs!r})")
    report("factorial-bound [1..10000]", witness.check_factorial_bound(10_000))
    return 1 if failures else 0


def _verify_chain(args) -> int:
    if (args.beta is None) == (args.d is None):
        raise ValueError("--chain needs exactly one of --beta and --d")
    params = witness.WitnessParams(
        x=args.x, alpha=args.alpha, lam=args.lam,
        beta=args.beta, degree=args.d, c=args.c,
    )
    limit = _parse_limit(args.limit)
    table, _ = cache.ensure_tables(limit, workers=args.workers)
    report = witness.verify_chain(params, table, workers=args.workers)
    if args.json:
        _json_dump(report.to_record(), args.json)
    kdesc = report.k if report.k is not None else "out-of-range"
    print(f"mode={params.mode} degree={report.degree} c={report.c:.4f} "
          f"alpha*x={report.log_threshold:.4f} k={kdesc}")
    for e in report.entries:
        if e.passed is True:
            status = "pass"
        elif e.passed is False:
            status = "FAIL"
        else:
            status = "undetermined" if e.mode.startswith("verified") else "skipped"
        lhs = "" if e.lhs is None else f" lhs={e.lhs!r}"
        rhs = "" if e.rhs is None else f" rhs={e.rhs!r}"
        print(f"  {e.name:<20} {status:<14} [{e.mode}]{lhs}{rhs}")
    print(f"verdict: {report.verdict}")
    return 1 if report.verdict == "fail" else 0


def cmd_verify(args) -> int:
    if args.bounds:
        return _verify_bounds(args)
    if args.chain:
        return _verify_chain(args)
    raise ValueError("verify needs one of --bounds or --chain")


def cmd_conjecture(args) -> int:
    seq = _load_primitive(args.seq)
    need = max(seq.elements)
    if args.check == "card":
        # enough primes for the first-|seq| comparison: p_m <= m(log m + log log m)
        m = max(len(seq), 6)
        need = max(need, int(m * (math.log(m) + math.log(math.log(m)))) + 1)
    if args.check == "ez":
        if args.n is None:
            raise ValueError("--n is required with --check ez")
        need = max(need, args.n)
    limit = max(need, 100)
    if args.limit:
        limit = max(_parse_limit(args.limit), limit)
    table = primes.sieve_primes(limit, workers=args.workers)

    if args.check == "ps":
        chk = witness.check_support_dominance(seq, table)
    elif args.check == "card":
        chk = witness.check_cardinality_dominance(seq, table)
    else:
        chk = witness.check_partial_dominance(seq, args.n, table)

    verdict = "pass" if chk.passed else "FINDING"
    print(f"{chk.name}: lhs={chk.lhs!r} rhs={chk.rhs!r} verdict={verdict}")
    if not chk.passed:
        print("FINDING: a conjectural inequality is violated; "
              "this is data worth publishing, not an error", file=sys.stderr)
        return 4
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primseq",
        description="Enclosures, witness chains and parameter optimization "
                    "for primitive-sequence series",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    default_limit = str(cache.default_sieve_limit())

    p = sub.add_parser("sieve", help="build and cache prime/omega tables")
    p.add_argument("--limit", required=True)
    p.add_argument("--out", help="explicit cache file path")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sieve)

    p = sub.add_parser("sum", help="series enclosure as JSON")
    p.add_argument("--target", choices=["primes", "pk", "file"], required=True)
    p.add_argument("--k", type=int, help="omega class (required for --target pk)")
    p.add_argument("--x", type=float, default=0.0)
    p.add_argument("--limit", default=default_limit)
    p.add_argument("--seq", help="sequence file (required for --target file)")
    p.add_argument("--json", help="also write the record to this file")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser("scan", help="crossover scan over (x, k) as CSV")
    p.add_argument("--x-grid", required=True, metavar="START:STOP:STEP")
    p.add_argument("--k-list", required=True, help="comma-separated omega classes")
    p.add_argument("--limit", default=default_limit)
    p.add_argument("--csv", help="write rows here instead of stdout")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("optimize", help="re-solve a constrained optimization")
    p.add_argument("--mode", choices=["theorem1", "theorem2"], required=True)
    p.add_argument("--json", help="write the result record to this file")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("verify", help="bound validators or the witness chain")
    p.add_argument("--bounds", action="store_true")
    p.add_argument("--chain", action="store_true")
    p.add_argument("--n-max", default="1000000", help="sweep range for --bounds")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p.add_argument("--x", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--d", type=int)
    p.add_argument("--c", type=float, help="override the derived scale constant")
    p.add_argument("--limit", default=default_limit)
    p.add_argument("--json", help="write the report to this file")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", help="finite conjectural inequality checks")
    p.add_argument("--check", choices=["ps", "card", "ez"], required=True)
    p.add_argument("--seq", required=True, help="newline-delimited integers")
    p.add_argument("--n", type=int, help="truncation point for --check ez")
    p.add_argument("--limit")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_conjecture)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse usage error (2) or --help (0)
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OverflowError, CapabilityError,
            ConstructionFailureError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 5


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
