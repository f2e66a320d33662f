"""The two-stacks-in-series machine.

Input enters stack H (move ``r``), the top of H moves onto stack V (move
``l``) and the top of V is written to the output (move ``m``).  Stacks are
stored bottom-to-top.  Greek letters are accepted on input; everything is
written back with the ASCII letters.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .perm import Permutation, contains_pattern

PUSH, TRANSFER, POP = "r", "l", "m"
LETTERS = (PUSH, TRANSFER, POP)
_GREEK = {"ρ": PUSH, "λ": TRANSFER, "μ": POP}
_SUBSCRIPTS = str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789")


class MachineError(Exception):
    pass


class IllegalMoveError(MachineError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (letter {position + 1})"
        super().__init__(message)
        self.position = position


class NotPoppableError(MachineError):
    pass


class BlockedError(MachineError):
    pass


@dataclass(frozen=True, order=True)
class StackConfiguration:
    H: tuple = ()
    V: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "H", tuple(self.H))
        object.__setattr__(self, "V", tuple(self.V))
        if len(set(self.H) | set(self.V)) != len(self.H) + len(self.V):
            raise ValueError(f"repeated value in configuration {self}")

    def values(self) -> frozenset:
        return frozenset(self.H) | frozenset(self.V)

    def __len__(self):
        return len(self.H) + len(self.V)

    def restrict(self, values) -> "StackConfiguration":
        keep = set(values)
        return StackConfiguration(tuple(x for x in self.H if x in keep), tuple(x for x in self.V if x in keep))

    def to_json(self) -> dict:
        return {"H": list(self.H), "V": list(self.V)}

    @classmethod
    def from_json(cls, obj) -> "StackConfiguration":
        return cls(tuple(obj["H"]), tuple(obj["V"]))

    def __str__(self):
        return f"H={list(self.H)} V={list(self.V)}"


@dataclass(frozen=True)
class ExtendedConfiguration:
    """A configuration together with the (1-based) position of the next input entry."""

    config: StackConfiguration
    next_input: int


@dataclass(frozen=True)
class Word:
    letters: str
    decoration: tuple | None = None

    def __post_init__(self):
        letters = "".join(_GREEK.get(c, c) for c in self.letters)
        if set(letters) - set(LETTERS):
            raise ValueError(f"word letters must be r/l/m: {self.letters!r}")
        object.__setattr__(self, "letters", letters)
        if self.decoration is not None:
            object.__setattr__(self, "decoration", tuple(self.decoration))
            if len(self.decoration) != len(letters):
                raise ValueError("decoration length differs from word length")

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if self.decoration is None:
            return self.letters
        return " ".join(f"{a}{x}" for a, x in zip(self.letters, self.decoration))

    def __add__(self, other: "Word") -> "Word":
        if (self.decoration is None) != (other.decoration is None):
            raise ValueError("cannot concatenate decorated and plain words")
        deco = None if self.decoration is None else self.decoration + other.decoration
        return Word(self.letters + other.letters, deco)

    def plain(self) -> "Word":
        return Word(self.letters)

    def count(self, letter: str) -> int:
        return self.letters.count(_GREEK.get(letter, letter))

    def is_stack_word(self) -> bool:
        r = l = m = 0
        for a in self.letters:
            if a == PUSH:
                r += 1
            elif a == TRANSFER:
                l += 1
            else:
                m += 1
            if not r >= l >= m:
                return False
        return True

    def is_sorting_word(self) -> bool:
        return self.is_stack_word() and self.count(PUSH) == self.count(TRANSFER) == self.count(POP)


def parse_word(text: str) -> Word:
    """Parse ``rrlm`` / ``ρρλμ`` or a decorated word ``r3 m5 l3`` (also ``ρ₃μ₅``)."""
    text = text.strip().translate(_SUBSCRIPTS)
    if not any(c.isdigit() for c in text):
        return Word("".join(c for c in text if not c.isspace()))
    letters, deco = [], []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        c = _GREEK.get(c, c)
        if c not in LETTERS:
            raise ValueError(f"bad letter {text[i]!r} in {text!r}")
        j = i + 1
        while j < len(text) and text[j] in "_":
            j += 1
        k = j
        while k < len(text) and text[k].isdigit():
            k += 1
        if k == j:
            raise ValueError(f"decorated letter without a value in {text!r}")
        letters.append(c)
        deco.append(int(text[j:k]))
        i = k
    return Word("".join(letters), tuple(deco))


@dataclass(frozen=True)
class MachineState:
    input: Permutation
    next_input: int = 1
    config: StackConfiguration = StackConfiguration()
    output: tuple = ()

    @classmethod
    def start(cls, sigma: Permutation) -> "MachineState":
        return cls(sigma, 1, StackConfiguration(), ())

    def remaining(self) -> tuple:
        return self.input.values[self.next_input - 1:]

    def next_expected(self):
        """Smallest value still in the stacks or the input."""
        rest = list(self.config.H) + list(self.config.V) + list(self.remaining())
        return min(rest) if rest else None

    def is_final(self) -> bool:
        return self.next_input > len(self.input) and not self.config.H and not self.config.V


def apply_move(state: MachineState, move: str, strict: bool = False, position=None) -> MachineState:
    """One move of the machine.  With ``strict`` a pop must emit the next expected value."""
    move = _GREEK.get(move, move)
    H, V = state.config.H, state.config.V
    if move == PUSH:
        if state.next_input > len(state.input):
            raise IllegalMoveError("push with empty input", position)
        x = state.input.values[state.next_input - 1]
        return MachineState(state.input, state.next_input + 1, StackConfiguration(H + (x,), V), state.output)
    if move == TRANSFER:
        if not H:
            raise IllegalMoveError("transfer from empty stack H", position)
        return MachineState(state.input, state.next_input, StackConfiguration(H[:-1], V + (H[-1],)), state.output)
    if move == POP:
        if not V:
            raise IllegalMoveError("pop from empty stack V", position)
        if strict and V[-1] != state.next_expected():
            raise IllegalMoveError(f"pop of {V[-1]} before {state.next_expected()}", position)
        return MachineState(state.input, state.next_input, StackConfiguration(H, V[:-1]), state.output + (V[-1],))
    raise IllegalMoveError(f"unknown move {move!r}", position)


def run_word(sigma: Permutation, w: Word | str, strict: bool = False, state: MachineState | None = None) -> MachineState:
    if isinstance(w, str):
        w = parse_word(w)
    state = MachineState.start(sigma) if state is None else state
    for pos, a in enumerate(w.letters):
        state = apply_move(state, a, strict=strict, position=pos)
    return state


def sorts(sigma: Permutation, w: Word | str) -> bool:
    """Whether ``w`` sorts ``sigma``: empty stacks, all input used, increasing output."""
    try:
        final = run_word(sigma, w)
    except IllegalMoveError:
        return False
    return final.is_final() and final.output == tuple(sorted(sigma.values))


def first_failure(sigma: Permutation, w: Word | str):
    """``None`` if ``w`` sorts ``sigma``, else ``(position, reason)``; position is 0-based or ``None``."""
    if isinstance(w, str):
        w = parse_word(w)
    target = sorted(sigma.values)
    state = MachineState.start(sigma)
    for pos, a in enumerate(w.letters):
        try:
            state = apply_move(state, a, position=pos)
        except IllegalMoveError as exc:
            return pos, str(exc)
        if a == POP and state.output[-1] != target[len(state.output) - 1]:
            return pos, f"output {state.output[-1]} where {target[len(state.output) - 1]} was expected"
    if not state.is_final():
        return len(w), "word ends with entries left in the input or the stacks"
    return None


def decorate(sigma: Permutation, w: Word | str) -> Word:
    if isinstance(w, str):
        w = parse_word(w)
    state = MachineState.start(sigma)
    deco = []
    for pos, a in enumerate(w.letters):
        if a == PUSH:
            if state.next_input > len(sigma):
                raise IllegalMoveError("push with empty input", pos)
            deco.append(sigma.values[state.next_input - 1])
        elif a == TRANSFER:
            if not state.config.H:
                raise IllegalMoveError("transfer from empty stack H", pos)
            deco.append(state.config.H[-1])
        else:
            if not state.config.V:
                raise IllegalMoveError("pop from empty stack V", pos)
            deco.append(state.config.V[-1])
        state = apply_move(state, a, position=pos)
    return Word(w.letters, tuple(deco))


def restrict_word(w: Word | str, sigma: Permutation | None, values: Iterable[int]) -> Word:
    """The letters of ``w`` acting on ``values``, with the decoration dropped."""
    if isinstance(w, str):
        w = parse_word(w)
    if w.decoration is None:
        if sigma is None:
            raise ValueError("a plain word needs the permutation it acts on")
        w = decorate(sigma, w)
    keep = set(values)
    return Word("".join(a for a, x in zip(w.letters, w.decoration) if x in keep))


def is_poppable(c: StackConfiguration) -> bool:
    H, V = c.H, c.V
    if contains_pattern(V, "12") or contains_pattern(H, "132"):
        return False
    if not V or len(H) < 2:
        return True
    prefix_min = []
    m = float("inf")
    for x in H:
        prefix_min.append(m)
        m = min(m, x)
    for i in V:
        for b, k in enumerate(H):
            if prefix_min[b] < i < k:
                return False
    return True


def pop_word(c: StackConfiguration, values: Iterable[int] | None = None, decorated: bool = False) -> Word:
    """The unique transfer/pop sequence emitting ``values`` in increasing order.

    Entries outside ``values`` must not be touched; if one of them covers an
    entry that has to leave, :class:`BlockedError` is raised.
    """
    I = set(c.values() if values is None else values)
    if not I <= c.values():
        raise ValueError(f"values {sorted(I - c.values())} are not in the stacks")
    H, V = list(c.H), list(c.V)
    letters, deco = [], []
    for x in sorted(I):
        while not V or V[-1] != x:
            if x in V:
                raise NotPoppableError(f"{x} is covered in V by {V[-1]}")
            if not H:
                raise NotPoppableError(f"{x} is not reachable")
            y = H[-1]
            if y not in I:
                raise BlockedError(f"{y} covers {x} and must not move")
            if V and V[-1] < y:
                raise NotPoppableError(f"{y} would land on the smaller {V[-1]} in V")
            V.append(H.pop())
            letters.append(TRANSFER)
            deco.append(y)
        V.pop()
        letters.append(POP)
        deco.append(x)
    return Word("".join(letters), tuple(deco) if decorated else None)


def search_accessible(
    start: ExtendedConfiguration,
    target: ExtendedConfiguration,
    sigma: Permutation,
    decorated: bool = False,
):
    """Breadth-first search for a move sequence from ``start`` to ``target``.

    Pops must emit the smallest value still present (stacks or input).
    Positions are 1-based positions in the word of ``sigma``.  Returns
    ``(found, word_or_None)``.
    """
    vals = sigma.values
    j = target.next_input
    goal = (j, target.config.H, target.config.V)
    # suffix minima of the input from each position
    n = len(vals)
    suffix_min = [float("inf")] * (n + 2)
    for t in range(n, 0, -1):
        suffix_min[t] = min(vals[t - 1], suffix_min[t + 1])

    first = (start.next_input, start.config.H, start.config.V)
    if start.next_input > j:
        return False, None
    parent = {first: None}
    queue = deque([first])
    while queue:
        state = queue.popleft()
        if state == goal:
            moves = []
            while parent[state] is not None:
                state, move = parent[state]
                moves.append(move)
            moves.reverse()
            letters = "".join(a for a, _ in moves)
            return True, Word(letters, tuple(x for _, x in moves) if decorated else None)
        q, H, V = state
        p = min(min(H, default=float("inf")), min(V, default=float("inf")), suffix_min[q])
        succ = []
        if q < j:
            x = vals[q - 1]
            succ.append(((q + 1, H + (x,), V), (PUSH, x)))
        if H:
            succ.append(((q, H[:-1], V + (H[-1],)), (TRANSFER, H[-1])))
        if V and V[-1] == p:
            succ.append(((q, H, V[:-1]), (POP, V[-1])))
        for nxt, move in succ:
            if nxt not in parent:
                parent[nxt] = (state, move)
                queue.append(nxt)
    return False, None


def stack_configs(bottom: StackConfiguration, top: StackConfiguration) -> StackConfiguration:
    """Place ``top`` above ``bottom`` in each stack."""
    if bottom.values() & top.values():
        raise ValueError(f"overlapping configurations {bottom} and {top}")
    return StackConfiguration(bottom.H + top.H, bottom.V + top.V)
