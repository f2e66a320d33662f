"""Permutations over arbitrary integer supports.

A :class:`Permutation` is a word of distinct values, each tagged with the
position it had in the original input.  Restricting to a subset keeps both
the original positions and the original values, so blocks and quadrants cut
out of a permutation can be compared and recombined without renormalising.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


class PermutationError(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    indices: tuple[int, ...]
    values: tuple[int, ...]
    _pos: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(self.indices) != len(self.values):
            raise PermutationError("indices and values differ in length")
        if any(a >= b for a, b in zip(self.indices, self.indices[1:])):
            raise PermutationError(f"indices not strictly increasing: {self.indices}")
        if len(set(self.values)) != len(self.values):
            raise PermutationError(f"repeated values: {self.values}")
        object.__setattr__(self, "_pos", {v: i for i, v in zip(self.indices, self.values)})

    @classmethod
    def from_values(cls, values: Iterable[int]) -> "Permutation":
        """Permutation with positions 1..n for the given word of values."""
        values = tuple(values)
        return cls(tuple(range(1, len(values) + 1)), values)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "Permutation":
        pairs = sorted(pairs)
        return cls(tuple(i for i, _ in pairs), tuple(v for _, v in pairs))

    @classmethod
    def empty(cls) -> "Permutation":
        return cls((), ())

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(zip(self.indices, self.values))

    def __contains__(self, value) -> bool:
        return value in self._pos

    def __str__(self) -> str:
        sep = "" if all(v < 10 for v in self.values) else " "
        return sep.join(map(str, self.values))

    def value_set(self) -> frozenset:
        return frozenset(self.values)

    def index_of(self, value: int) -> int:
        """Original position of ``value``."""
        return self._pos[value]

    def restrict(self, values: Iterable[int]) -> "Permutation":
        """Subpermutation on the given values, keeping positions and values."""
        keep = set(values)
        pairs = [(i, v) for i, v in self if v in keep]
        return Permutation(tuple(i for i, _ in pairs), tuple(v for _, v in pairs))

    def prefix(self, index: int) -> "Permutation":
        """Entries whose original position is at most ``index``."""
        pairs = [(i, v) for i, v in self if i <= index]
        return Permutation(tuple(i for i, _ in pairs), tuple(v for _, v in pairs))

    def normalized(self) -> "Permutation":
        """Order-isomorphic permutation of [1..n] with positions 1..n."""
        rank = {v: r for r, v in enumerate(sorted(self.values), start=1)}
        return Permutation.from_values(rank[v] for v in self.values)

    def is_standard(self) -> bool:
        n = len(self)
        return self.indices == tuple(range(1, n + 1)) and set(self.values) == set(range(1, n + 1))


def parse_permutation(text: str, standard: bool = True) -> Permutation:
    """Parse whitespace- or comma-separated values forming a permutation of 1..n.

    A run of single digits with no separators (``"2431"``) is read digit by digit.
    With ``standard=False`` any distinct positive integers are accepted.
    """
    text = text.strip()
    if not text:
        return Permutation.empty()
    tokens = [t for t in re.split(r"[\s,]+", text) if t]
    if len(tokens) == 1 and len(tokens[0]) > 1 and tokens[0].isdigit() and "0" not in tokens[0]:
        tokens = list(tokens[0])
    try:
        values = [int(t) for t in tokens]
    except ValueError:
        raise PermutationError(f"not a list of integers: {text!r}") from None
    if not standard:
        if len(set(values)) != len(values) or min(values) < 1:
            raise PermutationError(f"values must be distinct positive integers: {text!r}")
        return Permutation.from_values(values)
    if sorted(values) != list(range(1, len(values) + 1)):
        raise PermutationError(f"values are not a permutation of 1..{len(values)}: {text!r}")
    return Permutation.from_values(values)


def read_permutations(lines: Iterable[str]) -> list[Permutation]:
    return [parse_permutation(line) for line in lines if line.strip() and not line.lstrip().startswith("#")]


def rtl_minima(sigma: Permutation) -> list[tuple[int, int]]:
    """Right-to-left minima as ``(index, value)`` in increasing index order."""
    out = []
    best = None
    for i, v in zip(reversed(sigma.indices), reversed(sigma.values)):
        if best is None or v < best:
            best = v
            out.append((i, v))
    out.reverse()
    return out


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[Permutation, ...]

    @property
    def s(self) -> int:
        return len(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __getitem__(self, j):
        return self.blocks[j]

    def block_of(self, value: int) -> int:
        """1-based number of the block holding ``value``."""
        for j, b in enumerate(self.blocks, start=1):
            if value in b:
                return j
        raise KeyError(value)

    def concat(self) -> Permutation:
        pairs = [p for b in self.blocks for p in b]
        return Permutation(tuple(i for i, _ in pairs), tuple(v for _, v in pairs))


def theta_decompose(sigma: Permutation) -> BlockDecomposition:
    """Maximal split of ``sigma`` into skew-indecomposable blocks, top block first.

    A cut after position t is legal iff the t leading values are exactly the
    t largest ones, i.e. min(prefix) > max(suffix).
    """
    n = len(sigma)
    vals = sigma.values
    suffix_max = [0] * (n + 1)
    m = float("-inf")
    for t in range(n - 1, -1, -1):
        m = max(m, vals[t])
        suffix_max[t] = m
    blocks = []
    start = 0
    running_min = float("inf")
    for t in range(n):
        running_min = min(running_min, vals[t])
        if t == n - 1 or running_min > suffix_max[t + 1]:
            blocks.append(Permutation(sigma.indices[start:t + 1], vals[start:t + 1]))
            start = t + 1
    return BlockDecomposition(tuple(blocks))


def is_skew_indecomposable(sigma: Permutation) -> bool:
    return len(theta_decompose(sigma)) <= 1


def upper_left(sigma: Permutation, i: int) -> Permutation:
    """Entries above and to the left of the i-th right-to-left minimum (1-based)."""
    minima = rtl_minima(sigma)
    if not 1 <= i <= len(minima):
        raise IndexError(f"step {i} out of range 1..{len(minima)}")
    k, v = minima[i - 1]
    pairs = [(j, x) for j, x in sigma if j < k and x > v]
    return Permutation(tuple(j for j, _ in pairs), tuple(x for _, x in pairs))


@dataclass(frozen=True)
class StepContext:
    """Bookkeeping for the passage from step i to step i + 1.

    ``p`` and ``q`` are 1-based block numbers; both are ``None`` when the
    common part is empty (every entry of the current quadrant leaves the
    stacks before the next minimum enters).
    """

    i: int
    k_i: int
    k_next: int
    min_i: int
    min_next: int
    sigma_i: Permutation
    sigma_next: Permutation
    decomposition_i: BlockDecomposition
    decomposition_next: BlockDecomposition
    A: frozenset
    p: int | None
    q: int | None
    D: frozenset

    @property
    def q_iplus1(self):
        return self.q


def step_context(sigma: Permutation, i: int) -> StepContext:
    minima = rtl_minima(sigma)
    r = len(minima)
    if not 1 <= i < r:
        raise IndexError(f"step {i} has no successor (number of RTL minima is {r})")
    (k_i, m_i), (k_n, m_n) = minima[i - 1], minima[i]
    sig_i = upper_left(sigma, i)
    sig_n = upper_left(sigma, i + 1)
    dec_i = theta_decompose(sig_i)
    dec_n = theta_decompose(sig_n)
    A = frozenset(x for j, x in sigma if j < k_i and x > m_n)
    if not A:
        return StepContext(i, k_i, k_n, m_i, m_n, sig_i, sig_n, dec_i, dec_n, A, None, None, frozenset())
    a = min(A)
    p = dec_i.block_of(a)
    q = dec_n.block_of(a)
    D = (dec_i[p - 1].value_set() | dec_n[q - 1].value_set()) & A
    return StepContext(i, k_i, k_n, m_i, m_n, sig_i, sig_n, dec_i, dec_n, A, p, q, frozenset(D))


def contains_pattern(word: Sequence[int], pattern: Sequence[int] | str) -> bool:
    """Whether ``word`` contains ``pattern`` (12 or 132, or 21 for convenience)."""
    pat = tuple(int(c) for c in pattern) if isinstance(pattern, str) else tuple(pattern)
    if pat == (1, 2):
        lo = float("inf")
        for x in word:
            if x > lo:
                return True
            lo = min(lo, x)
        return False
    if pat == (2, 1):
        hi = float("-inf")
        for x in word:
            if x < hi:
                return True
            hi = max(hi, x)
        return False
    if pat == (1, 3, 2):
        # for each middle-valued right element, need a < c < b with a before b before c
        n = len(word)
        prefix_min = float("inf")
        for b_pos in range(n):
            b = word[b_pos]
            if prefix_min < b:
                for c in word[b_pos + 1:]:
                    if prefix_min < c < b:
                        return True
            prefix_min = min(prefix_min, b)
        return False
    raise ValueError(f"unsupported pattern {pattern!r}")
