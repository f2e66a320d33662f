"""Pushall configurations: every entry pushed, none output, and still poppable.

Enumeration is a breadth-first search over (position, H, V) using pushes and
transfers only.  A configuration that is not poppable stays non-poppable
under further pushes and transfers, so such states are dropped on the spot,
as are states that the entries still to come are bound to spoil.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .machine import PUSH, TRANSFER, StackConfiguration, Word, stack_configs
from .perm import BlockDecomposition, Permutation, theta_decompose

__all__ = [
    "PushallSet",
    "pushall_configs",
    "pushall_configs_blockwise",
    "pushall_word",
    "stack_configs",
    "stack_all",
    "pushall_bound",
]


@dataclass(frozen=True)
class PushallSet:
    configs: tuple[StackConfiguration, ...]

    def __len__(self):
        return len(self.configs)

    def __iter__(self):
        return iter(self.configs)

    def __contains__(self, c):
        return c in self.configs

    def __bool__(self):
        return bool(self.configs)

    def as_set(self) -> frozenset:
        return frozenset(self.configs)

    def to_json(self) -> list:
        return [c.to_json() for c in self.configs]

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), **kw)


def pushall_bound(size: int) -> int:
    return 9 * size + 2


def _has_132(seq) -> bool:
    # scan right to left keeping candidates for the "2"
    third = float("-inf")
    stack = []
    for x in reversed(seq):
        if x < third:
            return True
        while stack and stack[-1] < x:
            third = stack.pop()
        stack.append(x)
    return False


def _splits(seq, V) -> bool:
    """Whether some entry of V lies strictly between j and a later, larger k of ``seq``."""
    if not V or len(seq) < 2:
        return False
    lo = float("inf")
    spans = []
    for k in seq:
        if lo < k:
            spans.append((lo, k))
        lo = min(lo, k)
    return any(a < i < b for i in V for a, b in spans)


def _viable(H, V, future) -> bool:
    """Poppable now, and not doomed by entries still to come.

    Nothing can go on V above an entry smaller than itself, so every entry
    larger than the top of V stays in H for good, together with everything
    beneath it.  That frozen part plus the large entries still to come must
    itself leave the configuration poppable.
    """
    if any(a < b for a, b in zip(V, V[1:])):
        return False
    if _has_132(H) or _splits(H, V):
        return False
    if not V:
        return True
    m = V[-1]
    t0 = 0
    for t, h in enumerate(H):
        if h > m:
            t0 = t + 1
    seq = H[:t0] + tuple(y for y in future if y > m)
    return not (_has_132(seq) or _splits(seq, V))


@lru_cache(maxsize=4096)
def _explore(values: tuple) -> dict:
    """Map each pushall configuration of ``values`` to one push/transfer word reaching it."""
    n = len(values)
    layer = {((), ()): ""}
    for q in range(n):
        x = values[q]
        future = values[q + 1:]
        nxt = {}
        for (H, V), w in layer.items():
            # push x, then transfer t >= 0 entries from the top of H
            H2, V2, w2 = H + (x,), V, w + PUSH
            while True:
                key = (H2, V2)
                # a repeated state repeats its transfers; a doomed one never recovers
                if key in nxt or not _viable(H2, V2, future):
                    break
                nxt[key] = w2
                if not H2:
                    break
                H2, V2, w2 = H2[:-1], V2 + (H2[-1],), w2 + TRANSFER
        layer = nxt
        if not layer:
            return {}
    return {StackConfiguration(H, V): w for (H, V), w in layer.items()}


def pushall_configs(pi: Permutation) -> PushallSet:
    found = _explore(tuple(pi.values))
    return PushallSet(tuple(sorted(found)))


def pushall_word(pi: Permutation, config: StackConfiguration) -> Word:
    """A push/transfer word taking the empty stacks to ``config`` with input ``pi``."""
    found = _explore(tuple(pi.values))
    if config not in found:
        raise KeyError(f"{config} is not a pushall configuration of {pi}")
    return Word(found[config])


def pushall_configs_blockwise(decomp: BlockDecomposition) -> list[PushallSet]:
    return [pushall_configs(b) for b in decomp.blocks]


def stack_all(per_block: Iterable[Iterable[StackConfiguration]]) -> list[StackConfiguration]:
    """All configurations obtained by stacking one choice per block, first block lowest."""
    out = []
    for choice in itertools.product(*per_block):
        c = StackConfiguration()
        for part in choice:
            c = stack_configs(c, part)
        out.append(c)
    return out


def pushall_configs_stacked(pi: Permutation) -> PushallSet:
    """Pushall configurations of ``pi`` assembled from its skew blocks."""
    return PushallSet(tuple(sorted(stack_all(pushall_configs_blockwise(theta_decompose(pi))))))
