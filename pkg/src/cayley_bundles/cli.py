"""Command-line front end: scans, constructions and JSON/CSV reports."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Optional, Sequence

from . import __version__
from .bundles import make_string_bundle, s_I_total_space, string_defect
from .exactnum import (
    binomial,
    granville_binomial,
    morley_check,
    named_congruences,
    odd_primes_up_to,
    ord_p,
    primes_up_to,
    wolstenholme_check,
)
from .gcdlaws import (
    FOUR_SQUARE_CYCLE,
    GCD_FUNCTIONS,
    MIN_N,
    classify,
    four_square_gcd,
    is_2a3b,
)
from .generators import (
    DEFAULT_POWER_CAP,
    check_theorem_conditions,
    construct_M,
    construct_N,
    verify_A_congruence,
    verify_B_congruence,
    verify_cor_sn1n2eta,
)
from .polyalg import partition
from .pushforward import closed_form_sn, closed_form_sn1n2, coset_pushforward, substitute_f

SCHEMA = 1
THREADS_ENV = "CAYLEY_THREADS"


class UsageError(Exception):
    pass


def _threads(args) -> int:
    if args.threads is not None:
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        return args.threads
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise UsageError(f"{THREADS_ENV}={env!r} is not an integer") from exc
    return 1


def _pmap(fn: Callable, items: Sequence, threads: int) -> list:
    if threads > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _ord(v) -> object:
    return "inf" if v == math.inf else v


def _parse_partition(text: str) -> tuple:
    try:
        return partition(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}: {exc}") from exc


# -- gcd ---------------------------------------------------------------------------


def _gcd_entry(task: tuple) -> dict:
    kind, n = task
    value = GCD_FUNCTIONS[kind](n)
    primes = []
    ok = True
    for p in odd_primes_up_to(2 * n + 1):
        pat = classify(kind, n, p)
        obs = ord_p(value, p)
        good = obs == pat.predicted_ord
        ok &= good
        primes.append({"p": p, "observed": _ord(obs), "predicted": pat.predicted_ord,
                       "classifier": pat.classifier.name, "pass": good})
    return {"id": f"gcd_{kind}[{n}]", "kind": kind, "n": n, "value": str(value), "primes": primes, "pass": ok}


def cmd_gcd(args) -> tuple[dict, list, list]:
    lo = args.n if args.n is not None else args.from_
    hi = args.n if args.n is not None else args.to
    if lo is None or hi is None:
        raise UsageError("give --n or both --from and --to")
    if lo < MIN_N[args.kind]:
        raise UsageError(f"{args.kind} needs n >= {MIN_N[args.kind]}")
    entries = _pmap(_gcd_entry, [(args.kind, n) for n in range(lo, hi + 1)], _threads(args))
    table = [{"n": e["n"], "value": e["value"],
              "odd_prime_divisors": " ".join(str(r["p"]) for r in e["primes"] if r["observed"] != 0),
              "pass": e["pass"]} for e in entries]
    return {"kind": args.kind, "from": lo, "to": hi}, entries, table


# -- congruence -----------------------------------------------------------------------


def _granville_samples(count: int, seed: int) -> list[tuple[int, int, int, int]]:
    rng = random.Random(seed)
    primes = primes_up_to(50)
    out = []
    while len(out) < count:
        p = rng.choice(primes)
        q = rng.randint(1, 3)
        if p == 2 and q >= 3:
            continue
        n = rng.randint(0, 2000)
        m = rng.randint(0, n)
        out.append((n, m, p, q))
    return out


def congruence_entries(prime_cap: int, samples: int, seed: int, kinds: Sequence[str]) -> list[dict]:
    entries = []
    if "wolstenholme" in kinds or "morley" in kinds:
        for p in primes_up_to(prime_cap):
            if p < 5:
                continue
            if "wolstenholme" in kinds:
                entries.append({"id": f"wolstenholme[{p}]", "pass": wolstenholme_check(p)})
            if "morley" in kinds:
                entries.append({"id": f"morley[{p}]", "pass": morley_check(p)})
    if "granville" in kinds:
        for n, m, p, q in _granville_samples(samples, seed):
            e0, unit = granville_binomial(n, m, p, q)
            c = binomial(n, m)
            ok = ord_p(c, p) == e0 and (c // p**e0) % p**q == unit
            entries.append({"id": f"granville[n={n},m={m},p={p},q={q}]", "e0": e0, "unit": unit, "pass": ok})
    if "named" in kinds:
        for p in (5, 7, 11, 13):
            for label, ok in named_congruences(p, (1, 2, 3)):
                entries.append({"id": f"named[{label}]", "pass": ok})
    return entries


def cmd_congruence(args) -> tuple[dict, list, list]:
    kinds = ("wolstenholme", "morley", "granville", "named") if args.kind == "all" else (args.kind,)
    cap = args.prime_cap or 200
    entries = congruence_entries(cap, args.samples, args.seed, kinds)
    entries.sort(key=lambda e: e["id"])
    table = [{"id": e["id"], "pass": e["pass"]} for e in entries]
    return {"kind": args.kind, "prime_cap": cap, "samples": args.samples, "seed": args.seed}, entries, table


# -- pushforward / charnum ---------------------------------------------------------------


def cmd_pushforward(args) -> tuple[dict, list, None]:
    parts = _parse_partition(args.partition)
    n_f = args.nf or 1
    e_poly = coset_pushforward(parts)
    x_poly = substitute_f(e_poly, n_f)
    entry = {"id": f"pushforward{list(parts)}", "partition": list(parts), "n_f": n_f,
             "e_poly": e_poly.to_str(), "x_poly": x_poly.to_str()}
    closed = None
    if len(parts) == 1 and parts[0] >= 4:
        closed = closed_form_sn(parts[0], n_f)
    elif len(parts) == 2 and parts[0] > parts[1]:
        closed = closed_form_sn1n2(parts[0], parts[1], n_f)
    if closed is not None:
        entry["closed_form"] = closed.to_str()
        entry["pass"] = closed == x_poly
    elif sum(parts) < 4:
        entry["pass"] = e_poly.is_zero()
    else:
        entry["pass"] = True
    return {"partition": list(parts), "n_f": n_f}, [entry], None


def cmd_charnum(args) -> tuple[dict, list, None]:
    parts = _parse_partition(args.partition)
    if len(parts) > 2:
        raise UsageError("charnum supports s_n and s_{n1,n2}")
    n_f = args.nf or 1
    spec = make_string_bundle(args.m, args.mp, n_f)
    value = s_I_total_space(spec, parts)
    entry = {"id": f"s{list(parts)}[E]", "spec": spec.to_json(),
             "degrees": [list(spec.V.degrees), list(spec.Vp.degrees)],
             "string_defect": list(string_defect(spec)), "value": str(value), "pass": True}
    return {"m": args.m, "mp": args.mp, "n_f": n_f, "partition": list(parts)}, [entry], None


# -- construct / verify / conjecture ------------------------------------------------------


def cmd_construct(args) -> tuple[dict, list, None]:
    if args.family == "M":
        if args.n is None:
            raise UsageError("construct M needs --n")
        rep = construct_M(args.n, n_f=args.nf)
        params = {"family": "M", "n": args.n, "n_f": args.nf}
    else:
        if None in (args.p, args.i, args.j):
            raise UsageError("construct N needs --p, --i and --j")
        rep = construct_N(args.p, args.i, args.j, n_f=args.nf, power_cap=args.power_cap)
        params = {"family": "N", "p": args.p, "i": args.i, "j": args.j, "n_f": args.nf}
    entry = rep.to_json()
    entry["id"] = entry["label"]
    return params, [entry], None


def cmd_verify(args) -> tuple[dict, list, None]:
    if args.what == "theorem":
        dim_cap = args.dim_cap if args.dim_cap is not None else 30
        prime_cap = args.prime_cap if args.prime_cap is not None else 61
        rep = check_theorem_conditions(dim_cap, prime_cap, threads=_threads(args), power_cap=args.power_cap)
        entries = []
        for e in rep["entries"]:
            e = dict(e)
            e["id"] = e["label"]
            entries.append(e)
        params = {"dim_cap": dim_cap, "prime_cap": prime_cap, "out_of_scope": rep["out_of_scope"]}
        return params, entries, None
    if None in (args.p, args.i, args.j):
        raise UsageError(f"verify {args.what} needs --p, --i and --j")
    p, i, j = args.p, args.i, args.j
    if args.what == "corollary":
        part1, part2 = verify_cor_sn1n2eta(p, i, j, power_cap=args.power_cap)
        entries = [{"id": f"cor_part1[{p},{i},{j}]", "pass": part1},
                   {"id": f"cor_part2[{p},{i},{j}]", "pass": part2}]
    else:
        entries = [{"id": f"A[{p},{i},{j}]", "pass": verify_A_congruence(p, i, j)},
                   {"id": f"B[{p},{i},{j}]", "pass": verify_B_congruence(p, i, j)}]
    return {"what": args.what, "p": p, "i": i, "j": j}, entries, None


def _conjecture_entry(n: int) -> dict:
    g = four_square_gcd(n)
    expected = FOUR_SQUARE_CYCLE[(n - 25) % 6]
    return {"id": f"four_square[{n}]", "n": n, "target": 4 * n + 5, "gcd": str(g), "expected": str(expected),
            "is_2a3b": is_2a3b(g), "pass": g == expected and is_2a3b(g)}


def cmd_conjecture(args) -> tuple[dict, list, list]:
    lo = args.from_ if args.from_ is not None else 25
    hi = args.to if args.to is not None else 200
    if lo < 25:
        raise UsageError("the four-square scan starts at n = 25")
    entries = _pmap(_conjecture_entry, list(range(lo, hi + 1)), _threads(args))
    table = [{k: e[k] for k in ("n", "target", "gcd", "expected", "pass")} for e in entries]
    return {"from": lo, "to": hi}, entries, table


# -- plumbing ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="emit JSON (default)")
    fmt.add_argument("--csv", action="store_true", help="emit the scan table as CSV")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--threads", type=int, help=f"worker processes (default ${THREADS_ENV} or 1)")
    common.add_argument("--prime-cap", type=int, dest="prime_cap")
    common.add_argument("--dim-cap", type=int, dest="dim_cap")
    common.add_argument("--power-cap", type=int, dest="power_cap", default=DEFAULT_POWER_CAP,
                        help="largest p^j a construction may use")
    common.add_argument("--nf", type=int, help="twisting integer n_f")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised samples")

    parser = argparse.ArgumentParser(prog="cayley-bundles", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gcd", parents=[common], help="binomial GCD laws")
    g.add_argument("kind", choices=sorted(GCD_FUNCTIONS))
    g.add_argument("--n", type=int)
    g.add_argument("--from", type=int, dest="from_")
    g.add_argument("--to", type=int)
    g.set_defaults(func=cmd_gcd)

    c = sub.add_parser("congruence", parents=[common], help="Wolstenholme, Morley, Granville checks")
    c.add_argument("kind", nargs="?", default="all", choices=("all", "wolstenholme", "morley", "granville", "named"))
    c.add_argument("--samples", type=int, default=100)
    c.set_defaults(func=cmd_congruence)

    pf = sub.add_parser("pushforward", parents=[common], help="f^* Bi_* s_I(eta)")
    pf.add_argument("--partition", required=True, help="comma separated parts, e.g. 4 or 3,2")
    pf.set_defaults(func=cmd_pushforward)

    ch = sub.add_parser("charnum", parents=[common], help="s_I of a string Cayley-plane bundle")
    ch.add_argument("--m", type=int, required=True)
    ch.add_argument("--mp", type=int, required=True)
    ch.add_argument("--partition", required=True)
    ch.set_defaults(func=cmd_charnum)

    co = sub.add_parser("construct", parents=[common], help="build M^{4n} or N")
    co.add_argument("family", choices=("M", "N"))
    co.add_argument("--n", type=int)
    co.add_argument("--p", type=int)
    co.add_argument("--i", type=int)
    co.add_argument("--j", type=int)
    co.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common], help="theorem-level and lemma-level checks")
    v.add_argument("what", choices=("theorem", "corollary", "ab"))
    v.add_argument("--p", type=int)
    v.add_argument("--i", type=int)
    v.add_argument("--j", type=int)
    v.set_defaults(func=cmd_verify)

    cj = sub.add_parser("conjecture", parents=[common], help="four-square GCD scan")
    cj.add_argument("--from", type=int, dest="from_")
    cj.add_argument("--to", type=int)
    cj.set_defaults(func=cmd_conjecture)
    return parser


def _csv_text(table: list) -> str:
    buf = io.StringIO()
    if table:
        writer = csv.DictWriter(buf, fieldnames=list(table[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(table)
    return buf.getvalue()


def render(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        params, entries, table = args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    if args.command not in ("gcd", "conjecture"):  # those are already ordered by n
        entries = sorted(entries, key=lambda e: (e.get("dimension", 0), e["id"]))
    all_pass = all(e.get("pass", True) for e in entries)
    if args.csv:
        if table is None:
            print(f"{parser.prog}: error: --csv is only offered for scan tables (gcd, congruence, conjecture)", file=sys.stderr)
            return 2
        text = _csv_text(table)
    else:
        report = {
            "schema": SCHEMA,
            "version": __version__,
            "command": argv,
            "params": params,
            "entries": entries,
            "all_pass": all_pass,
            "timing": {"seconds": round(time.perf_counter() - start, 3)},
        }
        text = render(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all_pass else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
