"""Command line: stacksort {decide,witness,verify,pushall,graph,count,bench}.

Exit status is 0 for a sortable input (or a word that sorts), 1 for a
non-sortable one, and 2 for bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import time

from . import graph as G
from .machine import MachineError, first_failure, parse_word
from .oracle import DEFAULT_CAP, CapExceededError, brute_force_sortable, census_row, write_census
from .perm import PermutationError, parse_permutation, rtl_minima, upper_left
from .pushall import pushall_configs
from .generate import random_permutation, random_sortable

OK, NO, ERR = 0, 1, 2


def _decider(name, cap):
    if name == "oracle":
        return lambda s: brute_force_sortable(s, cap=cap)[0]
    if name == "naive":
        return G.is_sortable_naive
    return G.is_sortable


def cmd_decide(args) -> int:
    sigma = parse_permutation(args.permutation)
    t0 = time.perf_counter()
    ans = _decider(args.decider, args.cap)(sigma)
    ms = (time.perf_counter() - t0) * 1000
    if args.format == "json":
        print(json.dumps({"sortable": ans, "n": len(sigma), "decider": args.decider, "ms": round(ms, 3)}))
    else:
        print("true" if ans else "false")
    return OK if ans else NO


def cmd_witness(args) -> int:
    sigma = parse_permutation(args.permutation)
    w = G.extract_witness(sigma)
    if args.format == "json":
        print(json.dumps({"sortable": w is not None, "n": len(sigma), "word": None if w is None else str(w.plain())}))
    else:
        print(w.plain() if w is not None else "not sortable")
    return OK if w is not None else NO


def cmd_verify(args) -> int:
    sigma = parse_permutation(args.permutation)
    if args.word is None:
        raise ValueError("verify needs --word")
    w = parse_word(args.word)
    fail = first_failure(sigma, w)
    if args.format == "json":
        out = {"sorts": fail is None}
        if fail is not None:
            out.update(position=fail[0], reason=fail[1])
        print(json.dumps(out))
    elif fail is None:
        print("sorts")
    else:
        print(f"fails at letter {fail[0]}: {fail[1]}")
    return OK if fail is None else NO


def cmd_pushall(args) -> int:
    sigma = parse_permutation(args.permutation, standard=False)
    S = pushall_configs(sigma)
    if args.format == "json":
        print(S.dumps())
    else:
        for c in S:
            print(c)
        print(f"{len(S)} configurations")
    return OK if S else NO


def cmd_graph(args) -> int:
    sigma = parse_permutation(args.permutation)
    step = args.step or 1
    r = len(rtl_minima(sigma))
    if not 1 <= step <= r:
        raise ValueError(f"--step must lie in 1..{r}")
    g = G.sorting_graph(sigma, step)
    if g is None:
        print(f"no sorting graph at step {step}: the prefix cannot be sorted", file=sys.stderr)
        return NO
    if args.format == "dot":
        sys.stdout.write(g.to_dot())
    elif args.format == "json":
        print(g.dumps())
    else:
        print(f"step {step}: quadrant {upper_left(sigma, step)}, {g.s} levels, "
              f"{g.num_vertices()} vertices, {g.num_edges()} edges, {g.count_paths()} paths")
        for j, lev in enumerate(g.levels, start=1):
            for lab, c in sorted(lev.items()):
                print(f"  level {j} #{lab}: {c}")
    return OK


def cmd_count(args) -> int:
    if args.size is None:
        raise ValueError("count needs --size")
    sizes = range(1, args.size + 1) if args.all_sizes else [args.size]
    rows = [census_row(n, args.decider, cap=args.cap, workers=args.workers) for n in sizes]
    if args.format == "json":
        print(json.dumps(rows))
    elif args.format == "csv":
        write_census(rows)
    else:
        for row in rows:
            print(f"n={row['n']}: {row['sortable']} sortable, {row['non_sortable']} not ({row['decider']}, {row['wall_time_ms']} ms)")
    return OK


def cmd_bench(args) -> int:
    rng = random.Random(args.seed)
    sizes = [int(x) for x in args.sizes.split(",")] if args.sizes else [args.size or 50]
    rows = []
    for n in sizes:
        times = []
        for _ in range(args.repeat):
            sigma = random_sortable(n, rng) if not args.uniform else random_permutation(n, rng)
            t0 = time.perf_counter()
            G.is_sortable(sigma)
            times.append(time.perf_counter() - t0)
        rows.append({"n": n, "best_s": min(times), "mean_s": sum(times) / len(times)})
    if args.format == "json":
        print(json.dumps(rows))
    else:
        print(f"{'n':>6} {'best s':>10} {'mean s':>10}")
        for row in rows:
            print(f"{row['n']:>6} {row['best_s']:>10.4f} {row['mean_s']:>10.4f}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="stacksort", description="Sorting with two stacks in series.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json")):
        p.add_argument("--format", choices=formats, default="text")
        return p

    p = common(sub.add_parser("decide", help="is the permutation sortable?"))
    p.add_argument("permutation")
    p.add_argument("--decider", choices=["graph", "naive", "oracle"], default="graph")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest size the oracle accepts")
    p.set_defaults(func=cmd_decide)

    p = common(sub.add_parser("witness", help="print a sorting word"))
    p.add_argument("permutation")
    p.set_defaults(func=cmd_witness)

    p = common(sub.add_parser("verify", help="replay a word of r/l/m moves"))
    p.add_argument("permutation")
    p.add_argument("--word")
    p.set_defaults(func=cmd_verify)

    p = common(sub.add_parser("pushall", help="list pushall configurations"))
    p.add_argument("permutation")
    p.set_defaults(func=cmd_pushall)

    p = common(sub.add_parser("graph", help="export a sorting graph"), ("text", "json", "dot"))
    p.add_argument("permutation")
    p.add_argument("--step", type=int, default=1)
    p.set_defaults(func=cmd_graph)

    p = common(sub.add_parser("count", help="census over all permutations of a size"), ("text", "json", "csv"))
    p.add_argument("--size", type=int)
    p.add_argument("--all-sizes", action="store_true", help="every size from 1 up to --size")
    p.add_argument("--decider", choices=["graph", "naive", "oracle"], default="graph")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_count)

    p = common(sub.add_parser("bench", help="time the graph decider on random inputs"))
    p.add_argument("--size", type=int)
    p.add_argument("--sizes", help="comma separated sizes, e.g. 50,100,200")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--uniform", action="store_true", help="uniform permutations instead of sortable ones")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    if os.environ.get("STACKSORT_LOG"):
        logging.basicConfig(level=os.environ["STACKSORT_LOG"].upper(), stream=sys.stderr)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PermutationError, MachineError, CapExceededError, ValueError, IndexError) as e:
        print(f"error: {e}", file=sys.stderr)
        return ERR


if __name__ == "__main__":
    sys.exit(main())
