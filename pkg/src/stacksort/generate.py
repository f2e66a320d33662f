"""Random inputs for tests, demos and benchmarks."""

from __future__ import annotations

import random

from .machine import POP, PUSH, TRANSFER, Word, run_word
from .perm import Permutation


def random_permutation(n: int, rng: random.Random | None = None) -> Permutation:
    rng = rng or random.Random()
    vals = list(range(1, n + 1))
    rng.shuffle(vals)
    return Permutation.from_values(vals)


def random_stack_word(n: int, rng: random.Random | None = None) -> Word:
    """A uniformly chosen legal move at every step, ending with all n entries output."""
    rng = rng or random.Random()
    letters = []
    inp, H, V = n, 0, 0
    while inp or H or V:
        moves = []
        if inp:
            moves.append(PUSH)
        if H:
            moves.append(TRANSFER)
        if V:
            moves.append(POP)
        m = rng.choice(moves)
        letters.append(m)
        if m == PUSH:
            inp, H = inp - 1, H + 1
        elif m == TRANSFER:
            H, V = H - 1, V + 1
        else:
            V -= 1
    return Word("".join(letters))


def random_sortable(n: int, rng: random.Random | None = None) -> Permutation:
    """A sortable permutation of size n.

    Running any stack word on the identity produces some tau; the same word
    then sorts the inverse of tau, because the machine only moves positions.
    """
    ident = Permutation.from_values(range(1, n + 1))
    state = run_word(ident, random_stack_word(n, rng))
    tau = state.output
    inv = [0] * n
    for pos, v in enumerate(tau, start=1):
        inv[v - 1] = pos
    return Permutation.from_values(inv)
