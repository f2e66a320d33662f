"""Exhaustive search, the reference every faster decider is checked against."""

from __future__ import annotations

import csv
import itertools
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .machine import POP, PUSH, TRANSFER, Word
from .perm import Permutation

DEFAULT_CAP = 12


class CapExceededError(ValueError):
    pass


@dataclass(frozen=True)
class SearchState:
    next_input: int  # 1-based position of the next entry to push
    H: tuple
    V: tuple
    next_output: int


def _start(sigma: Permutation) -> SearchState:
    return SearchState(1, (), (), 1)


def _moves(vals, s: SearchState):
    n = len(vals)
    if s.next_input <= n:
        yield PUSH, SearchState(s.next_input + 1, s.H + (vals[s.next_input - 1],), s.V, s.next_output)
    if s.H:
        yield TRANSFER, SearchState(s.next_input, s.H[:-1], s.V + (s.H[-1],), s.next_output)
    if s.V and s.V[-1] == s.next_output:
        yield POP, SearchState(s.next_input, s.H, s.V[:-1], s.next_output + 1)


def _dead(s: SearchState) -> bool:
    # V must read decreasing from bottom to top, or a larger entry blocks a smaller one
    return any(a < b for a, b in zip(s.V, s.V[1:]))


def _check_cap(sigma, cap):
    cap = DEFAULT_CAP if cap is None else cap
    if len(sigma) > cap:
        raise CapExceededError(f"size {len(sigma)} exceeds the search cap {cap}")


def brute_force_sortable(sigma: Permutation, cap: int | None = None, memo: bool = True, prune: bool = True):
    """(sortable, word) by depth-first search over machine states.

    ``memo=False`` revisits states freely; it exists to cross-check the
    memoised search and is exponential even on sortable inputs.
    """
    _check_cap(sigma, cap)
    if not sigma.is_standard():
        sigma = sigma.normalized()
    vals = sigma.values
    n = len(vals)
    seen = set()
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10 * n + 100))

    def dfs(s):
        if s.next_output == n + 1:
            return []
        if prune and _dead(s):
            return None
        if memo:
            if s in seen:
                return None
            seen.add(s)
        for letter, t in _moves(vals, s):
            rest = dfs(t)
            if rest is not None:
                rest.append(letter)
                return rest
        return None

    found = dfs(_start(sigma))
    if found is None:
        return False, None
    return True, Word("".join(reversed(found)))


def count_sorting_words(sigma: Permutation, cap: int | None = None) -> int:
    """Number of distinct sorting words of ``sigma``."""
    _check_cap(sigma, cap)
    vals = sigma.normalized().values
    n = len(vals)

    @lru_cache(maxsize=None)
    def count(s):
        if s.next_output == n + 1:
            return 1
        if _dead(s):
            return 0
        return sum(count(t) for _, t in _moves(vals, s))

    try:
        return count(_start(sigma))
    finally:
        count.cache_clear()


def _decider(name: str, cap: int | None):
    if name == "oracle":
        return lambda sigma: brute_force_sortable(sigma, cap=cap)[0]
    if name == "graph":
        from .graph import is_sortable

        return is_sortable
    if name == "naive":
        from .graph import is_sortable_naive

        return is_sortable_naive
    raise ValueError(f"unknown decider {name!r}")


_SIZE_LIMITS = {"oracle": 8, "graph": 10, "naive": 9}


def _count_chunk(args):
    n, decider, cap, first_values = args
    decide = _decider(decider, cap)
    good = 0
    total = 0
    for head in first_values:
        rest = [v for v in range(1, n + 1) if v != head]
        for tail in itertools.permutations(rest):
            total += 1
            good += decide(Permutation.from_values((head,) + tail))
    return good, total - good


def count_sortable(n: int, decider: str = "graph", cap: int | None = None, workers: int = 1, force: bool = False):
    """(sortable, non-sortable) counts over all permutations of size ``n``."""
    if n < 0:
        raise ValueError("size must be non-negative")
    limit = _SIZE_LIMITS.get(decider)
    if limit is None:
        raise ValueError(f"unknown decider {decider!r}")
    if n > limit and not force:
        raise CapExceededError(f"size {n} exceeds the {decider} census limit {limit}")
    if n == 0:
        return 1, 0
    heads = list(range(1, n + 1))
    if workers <= 1:
        return _count_chunk((n, decider, cap, heads))
    chunks = [(n, decider, cap, heads[w::workers]) for w in range(workers)]
    good = bad = 0
    with ProcessPoolExecutor(max_workers=workers) as ex:
        for g, b in ex.map(_count_chunk, chunks):
            good += g
            bad += b
    return good, bad


CENSUS_FIELDS = ["n", "total", "sortable", "non_sortable", "decider", "wall_time_ms"]


def census_row(n: int, decider: str = "graph", **kw) -> dict:
    t0 = time.perf_counter()
    good, bad = count_sortable(n, decider, **kw)
    ms = (time.perf_counter() - t0) * 1000
    return {"n": n, "total": math.factorial(n), "sortable": good, "non_sortable": bad, "decider": decider, "wall_time_ms": round(ms, 1)}


def write_census(rows, out=None) -> None:
    w = csv.DictWriter(out or sys.stdout, fieldnames=CENSUS_FIELDS)
    w.writeheader()
    for row in rows:
        w.writerow(row)
