"""Linear-time accessibility between two "rectangle" extended configurations.

The starting configuration holds every not-yet-output entry of a prefix of
the input; the target holds every entry whose value is at least ``ell``, with
the whole input pushed.  Both must be poppable.  Under those conditions each move is
forced, so a single pass either reaches the target or proves it
unreachable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .machine import POP, PUSH, TRANSFER, ExtendedConfiguration, StackConfiguration, Word, is_poppable
from .perm import Permutation


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class AccessibilityInstance:
    sigma: Permutation
    start: ExtendedConfiguration
    target: ExtendedConfiguration
    k: int
    ell: float

    @classmethod
    def build(cls, sigma, start_config, start_next, target_config, target_next=None):
        """Instance with ``k`` and ``ell`` read off the two configurations."""
        n = len(sigma)
        if target_next is None:
            target_next = n + 1
        ell = min(target_config.values()) if len(target_config) else max(sigma.values, default=0) + 1
        return cls(
            sigma,
            ExtendedConfiguration(start_config, start_next),
            ExtendedConfiguration(target_config, target_next),
            start_next - 1,
            ell,
        )

    def validate(self) -> None:
        sigma, (c, i), (c2, j) = self.sigma, (self.start.config, self.start.next_input), (self.target.config, self.target.next_input)
        n = len(sigma)
        vals = sigma.values
        if not 1 <= i <= j <= n + 1:
            raise PreconditionError(f"need 1 <= i <= j <= n+1, got i={i}, j={j}, n={n}")
        if self.k != i - 1:
            raise PreconditionError(f"k={self.k} does not match the start position {i}")
        E = c.values()
        prefix = set(vals[: i - 1])
        if not E <= prefix:
            raise PreconditionError(f"start holds entries not yet pushed: {sorted(E - prefix)}")
        rest = vals[i - 1:]
        p0 = min(list(E) + list(rest), default=None)
        missing = prefix - E
        if p0 is not None and any(x > p0 for x in missing):
            raise PreconditionError(f"start lacks {sorted(x for x in missing if x > p0)}, which cannot have been output")
        F = c2.values()
        upper = {x for x in vals if x >= self.ell}
        if F != upper:
            raise PreconditionError(f"target values {sorted(F)} differ from the values >= {self.ell}")
        if any(x < self.ell for x in rest):
            raise PreconditionError("an entry still in the input would have to be output")
        if j != n + 1 and rest:
            raise PreconditionError("target must have pushed every remaining entry")
        for name, cfg in (("start", c), ("target", c2)):
            if not is_poppable(cfg):
                raise PreconditionError(f"{name} configuration {cfg} is not poppable")


@dataclass(frozen=True)
class ForcedRun:
    accessible: bool
    moves: Word

    def __bool__(self):
        return self.accessible


def is_accessible_fast(inst: AccessibilityInstance, validate: bool = True) -> ForcedRun:
    if validate:
        inst.validate()
    vals = inst.sigma.values
    n = len(vals)
    i, j = inst.start.next_input, inst.target.next_input
    ell = inst.ell
    target = inst.target.config
    in_H2 = set(target.H)
    in_V2 = set(target.V)

    H = list(inst.start.config.H)
    V = list(inst.start.config.V)
    pending = sorted(set(H) | set(V) | set(vals[i - 1:]))
    pi = 0  # pending[pi] is the next value to output
    q = i
    letters, deco = [], []
    budget = 3 * n + 3

    def p():
        return pending[pi] if pi < len(pending) else float("inf")

    while q < j or p() < ell or (H and H[-1] in in_V2):
        budget -= 1
        if budget < 0:
            break
        if V and V[-1] == p() < ell:
            letters.append(POP)
            deco.append(V.pop())
            pi += 1
            continue
        if H and H[-1] < ell:
            move = TRANSFER
        elif not H or H[-1] in in_H2:
            move = PUSH
        else:
            nxt = vals[q - 1] if q <= n else None
            if nxt is None or nxt in in_H2 or H[-1] > nxt:
                move = TRANSFER
            else:
                move = PUSH
        if move == PUSH:
            if q >= j or q > n:
                return ForcedRun(False, Word("".join(letters), tuple(deco)))
            H.append(vals[q - 1])
            q += 1
        else:
            V.append(H.pop())
        letters.append(move)
        deco.append(V[-1] if move == TRANSFER else H[-1])
    ok = q == j and tuple(H) == target.H and tuple(V) == target.V
    return ForcedRun(ok, Word("".join(letters), tuple(deco)))


def is_accessible(sigma: Permutation, start: StackConfiguration, start_next: int, target: StackConfiguration, target_next=None, validate=True) -> ForcedRun:
    return is_accessible_fast(AccessibilityInstance.build(sigma, start, start_next, target, target_next), validate=validate)
