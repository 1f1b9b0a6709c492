"""Command-line front end: evaluation, verification, tables, limits.

Exit codes: 0 success / all relations verified, 1 a relation failed at some
prime or level, 2 usage or parse error, 3 numeric non-convergence.  Output
is deterministic for fixed flags: JSON keys are sorted and floats are
printed at a fixed number of digits.
"""

from __future__ import annotations

import argparse
import functools
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import mpmath

from . import limits, qseries, relations
from .cyclotomic import embed_complex
from .finite_values import primes_in, verify_relation
from .words import (WordSum, dual_involution, format_index, indices_of_weight,
                    parse_index)

_FLOAT_DIGITS = 20


def _default_jobs() -> int:
    env = os.environ.get("CYCMZV_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _pmap(fn, items, jobs):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as pool:
        return list(pool.map(fn, items))


def _die(msg: str, code: int = 2):
    print(f"error: {msg}", file=sys.stderr)
    raise SystemExit(code)


def _fmt_float(x) -> str:
    return mpmath.nstr(mpmath.mpf(x), _FLOAT_DIGITS, strip_zeros=False)


def _fmt_complex(z) -> dict:
    return {"re": _fmt_float(z.real), "im": _fmt_float(z.imag)}


def _parse_range(text: str, what: str):
    if ".." in text:
        lo, hi = text.split("..", 1)
        try:
            return int(lo), int(hi)
        except ValueError:
            _die(f"bad {what} range {text!r}")
    try:
        v = int(text)
        return v, v
    except ValueError:
        _die(f"bad {what} range {text!r}")


def _parse_primes(text: str) -> list[int]:
    if "," in text:
        try:
            ps = [int(p) for p in text.split(",")]
        except ValueError:
            _die(f"bad prime list {text!r}")
    else:
        lo, hi = _parse_range(text, "prime")
        ps = primes_in(lo, hi)
    bad = [p for p in ps if p not in primes_in(p, p)]
    if bad:
        _die(f"not prime: {bad}")
    return ps


def _parse_schedule(text: str) -> list[int]:
    try:
        if ":" in text:
            start, factor, count = (int(x) for x in text.split(":"))
            if start < 1 or factor < 2 or count < 3:
                raise ValueError
            return [start * factor ** i for i in range(count)]
        return [int(x) for x in text.split(",")]
    except ValueError:
        _die(f"bad schedule {text!r} (use 'n1,n2,...' or 'start:factor:count')")


def _parse_index_arg(text: str):
    try:
        return parse_index(text)
    except ValueError as exc:
        _die(str(exc))


def _emit(payload: dict, fmt: str, csv_maker=None):
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    elif fmt == "csv":
        if csv_maker is None:
            _die("csv output is not available for this command")
        sys.stdout.write(csv_maker())
    else:
        for key in sorted(payload):
            print(f"{key}: {json.dumps(payload[key], sort_keys=True)}")


# -- eval -----------------------------------------------------------------------


def cmd_eval(args) -> int:
    index = _parse_index_arg(args.index)
    if args.n < 1:
        _die("--n must be >= 1")
    if args.numeric:
        value = limits.harmonic_numeric(index, args.n, args.precision, args.star)
        payload = {
            "index": format_index(index),
            "n": args.n,
            "star": args.star,
            "mode": "numeric",
            "precision": args.precision,
            "value": _fmt_complex(value),
        }
        _emit(payload, args.format)
        return 0
    elem = qseries.Evaluator(args.n).value(index, args.star)
    payload = {
        "index": format_index(index),
        "n": args.n,
        "star": args.star,
        "mode": "exact",
        "value": elem.to_json(),
    }

    def csv_maker():
        head = "index,n,star," + ",".join(f"c{i}" for i in range(len(elem.coeffs)))
        row = ",".join([format_index(index) or "()", str(args.n), str(int(args.star))]
                       + [f"{c.numerator}/{c.denominator}" for c in elem.coeffs])
        return head + "\n" + row + "\n"

    _emit(payload, args.format, csv_maker)
    return 0


# -- verify ----------------------------------------------------------------------


def _combo_status_at_prime(combos, ring, mode, p):
    bad = []
    excluded = []
    for name, combo in combos:
        rep = verify_relation(combo, ring, [p], mode)
        st = rep.results[p]["status"]
        if st == "nonzero":
            bad.append(name)
        elif st == "excluded":
            excluded.append(name)
    if bad:
        return p, {"status": "nonzero", "failing": bad}
    if excluded:
        return p, {"status": "excluded", "relations": excluded}
    return p, {"status": "zero"}


def _star5_level(n: int):
    residual = qseries.star_weight5_identity_residual(n)
    return n, {"status": "zero" if residual.is_zero else "nonzero"}


def _builtin_combos(name: str, args):
    if name == "hoffman-4-1":
        combo = WordSum.word((4, 1)) - 2 * WordSum.word((3, 1, 1))
        return [("hoffman-4-1", combo)], "A", "plain"
    if name == "star-5":
        combo = 2 * WordSum.word((4, 1)) + WordSum.word((3, 2))
        return [("star-5", combo)], "A", "star"
    if name == "duality":
        if args.weight is None:
            _die("builtin 'duality' needs --weight")
        combos = []
        for idx in indices_of_weight(args.weight):
            combo = WordSum.word(idx) - dual_involution(WordSum.word(idx))
            if not combo.is_zero:
                combos.append((format_index(idx), combo))
        return combos, "Acyc", "star"
    return None


def cmd_verify(args) -> int:
    jobs = args.jobs
    name = args.relation
    if name == "star-5" and args.levels:
        lo, hi = _parse_range(args.levels, "level")
        results = dict(_pmap(_star5_level, range(lo, hi + 1), jobs))
        ok = all(r["status"] == "zero" for r in results.values())
        payload = {"relation": "star-5", "check": "exact-cyclotomic",
                   "levels": {str(n): results[n] for n in sorted(results)}, "ok": ok}
        _emit(payload, args.format, lambda: _levels_csv(results))
        return 0 if ok else 1

    builtin = _builtin_combos(name, args)
    if builtin is not None:
        combos, ring, mode = builtin
        if args.ring:
            ring = args.ring
        if args.star:
            mode = "star"
    else:
        try:
            with open(name, "r", encoding="utf-8") as fh:
                combos = [(os.path.basename(name), WordSum.from_json(json.load(fh)))]
        except (OSError, ValueError, KeyError) as exc:
            _die(f"cannot read relation file {name!r}: {exc}")
        ring = args.ring or "A"
        mode = "star" if args.star else "plain"
    if not args.primes:
        _die("--primes is required for prime-window verification")
    primes = _parse_primes(args.primes)
    worker = functools.partial(_combo_status_at_prime, combos, ring, mode)
    results = dict(_pmap(worker, primes, jobs))
    ok = all(r["status"] != "nonzero" for r in results.values())
    payload = {
        "relation": name,
        "ring": ring,
        "mode": mode,
        "primes": {str(p): results[p] for p in sorted(results)},
        "ok": ok,
    }
    _emit(payload, args.format, lambda: _primes_csv(results))
    return 0 if ok else 1


def _primes_csv(results) -> str:
    lines = ["prime,status,detail"]
    for p in sorted(results):
        r = results[p]
        detail = ";".join(r.get("failing", r.get("relations", [])))
        lines.append(f"{p},{r['status']},{detail}")
    return "\n".join(lines) + "\n"


def _levels_csv(results) -> str:
    lines = ["n,status"]
    for n in sorted(results):
        lines.append(f"{n},{results[n]['status']}")
    return "\n".join(lines) + "\n"


# -- dimtable ---------------------------------------------------------------------


def _observed_cell(kp):
    k, p = kp
    return (k, p), relations.observed_dimension(k, p)


def cmd_dimtable(args) -> int:
    ceiling = 12 if args.extended else 10
    if args.kmax > ceiling:
        _die(f"--kmax {args.kmax} exceeds the ceiling {ceiling}"
             + ("" if args.extended else " (use --extended for 11..12)"))
    if args.kmax < 0:
        _die("--kmax must be >= 0")
    rows = []
    if args.mode in ("bounds", "both"):
        rows = relations.dimension_upper_bounds(args.kmax)
    observed = {}
    if args.mode in ("observed", "both"):
        if not args.primes:
            _die("--primes is required for observed dimensions")
        primes = _parse_primes(args.primes)
        cells = [(k, p) for k in range(0, args.kmax + 1) for p in primes]
        observed = dict(_pmap(_observed_cell, cells, args.jobs))
        if args.certificates:
            certs = []
            for k in range(1, args.kmax + 1):
                for p in primes:
                    rels = relations.discovered_relations(k, p)
                    certs.append({"k": k, "p": p,
                                  "relations": [r.to_json() for r in rels]})
            with open(args.certificates, "w", encoding="utf-8") as fh:
                json.dump(certs, fh, sort_keys=True, indent=2)

    table = []
    for k in range(0, args.kmax + 1):
        entry = {"k": k}
        if rows:
            row = rows[k]
            entry.update({"num_indices": row.num_indices,
                          "relation_rank": row.relation_rank,
                          "upper_bound": row.upper_bound})
        if observed:
            entry["observed"] = {str(p): observed[(k, p)]
                                 for (kk, p) in observed if kk == k}
        table.append(entry)
    payload = {"kmax": args.kmax, "mode": args.mode, "table": table}

    def csv_maker():
        primes = sorted({p for (_, p) in observed}) if observed else []
        head = ["k"]
        if rows:
            head += ["num_indices", "relation_rank", "upper_bound"]
        head += [f"observed_{p}" for p in primes]
        lines = [",".join(head)]
        for entry in table:
            cells = [str(entry["k"])]
            if rows:
                cells += [str(entry["num_indices"]), str(entry["relation_rank"]),
                          str(entry["upper_bound"])]
            cells += [str(entry["observed"][str(p)]) for p in primes] if observed else []
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"

    _emit(payload, args.format, csv_maker)
    return 0


# -- limit ------------------------------------------------------------------------


def _limit_point(index, precision, star, n):
    return n, limits.harmonic_numeric(index, n, precision, star)


def cmd_limit(args) -> int:
    index = _parse_index_arg(args.index)
    schedule = _parse_schedule(args.schedule)
    if len(schedule) < 3 or any(b <= a for a, b in zip(schedule, schedule[1:])):
        _die("schedule must be increasing with at least 3 points")
    worker = functools.partial(_limit_point, index, args.precision, args.star)
    points = dict(_pmap(worker, schedule, args.jobs))
    values = [points[n] for n in schedule]
    est, error, converged, exponent, ests = limits._extrapolate(schedule, values, args.precision)
    payload = {
        "index": format_index(index),
        "star": args.star,
        "schedule": schedule,
        "estimate": _fmt_complex(complex(est)),
        "error_bar": _fmt_float(error),
        "converged": converged,
        "log_exponent": exponent,
        "points": {str(n): _fmt_complex(complex(points[n])) for n in schedule},
    }
    _emit(payload, args.format)
    return 0 if converged else 3


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cycmzv",
        description="multiple harmonic q-sums at roots of unity: exact values, "
                    "finite-field relations, dimension tables, limits")
    parser.add_argument("--jobs", type=int, default=_default_jobs(),
                        help="worker processes for prime/level sweeps "
                             "(default: CYCMZV_JOBS or cpu count)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one harmonic sum at a level")
    p_eval.add_argument("index", help="comma-separated parts, e.g. 2,1")
    p_eval.add_argument("--n", type=int, required=True, help="level")
    p_eval.add_argument("--star", action="store_true")
    group = p_eval.add_mutually_exclusive_group()
    group.add_argument("--exact", action="store_true", default=True)
    group.add_argument("--numeric", action="store_true")
    p_eval.add_argument("--precision", type=int, default=128, help="bits (numeric mode)")
    p_eval.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p_eval.set_defaults(func=cmd_eval)

    p_verify = sub.add_parser("verify", help="verify a relation over primes or levels")
    p_verify.add_argument("relation",
                          help="builtin name (duality, hoffman-4-1, star-5) or JSON file")
    p_verify.add_argument("--primes", help="window as lo..hi or comma list")
    p_verify.add_argument("--n", dest="levels", help="level range lo..hi (star-5 exact check)")
    p_verify.add_argument("--ring", choices=("A", "Acyc"))
    p_verify.add_argument("--star", action="store_true")
    p_verify.add_argument("--weight", type=int, help="weight for the duality builtin")
    p_verify.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p_verify.set_defaults(func=cmd_verify)

    p_dim = sub.add_parser("dimtable", help="dimension bounds and observed ranks")
    p_dim.add_argument("--kmax", type=int, default=10)
    p_dim.add_argument("--primes", help="primes for observed mode")
    p_dim.add_argument("--mode", choices=("bounds", "observed", "both"), default="bounds")
    p_dim.add_argument("--extended", action="store_true",
                       help="allow kmax up to 12 (minutes-scale eliminations)")
    p_dim.add_argument("--certificates", help="write discovered relations to this JSON file")
    p_dim.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p_dim.set_defaults(func=cmd_dimtable)

    p_lim = sub.add_parser("limit", help="extrapolate the large-level limit")
    p_lim.add_argument("index")
    p_lim.add_argument("--schedule", default="1000:2:7",
                       help="'n1,n2,...' or geometric 'start:factor:count'")
    p_lim.add_argument("--precision", type=int, default=128)
    p_lim.add_argument("--star", action="store_true")
    p_lim.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p_lim.set_defaults(func=cmd_limit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
