"""Pushall configurations: all entries in the stacks, nothing output yet,
and the stacks can still be emptied in increasing order."""

from stacksort import parse_permutation, pushall_configs, pushall_word, theta_decompose
from stacksort.pushall import pushall_bound

pi = parse_permutation("432", standard=False)
S = pushall_configs(pi)
print(f"{len(S)} pushall configurations of {pi}:")
for c in S:
    print("  ", c, "reached by", pushall_word(pi, c))

# a skew-decomposable input: configurations are stacks of per-block ones
pi = parse_permutation("65874132")
dec = theta_decompose(pi)
print("blocks of", pi, "->", [str(b) for b in dec])
for b in dec:
    print(f"  block {b}: {len(pushall_configs(b))} configurations (bound {pushall_bound(len(b))})")
print("whole permutation:", len(pushall_configs(pi)))

# the top part of 2435761 cannot even be pushed
print("243576:", len(pushall_configs(parse_permutation("243576", standard=False))), "configurations")
