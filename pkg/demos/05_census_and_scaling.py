"""How many permutations are sortable, and how decision time grows."""

import random
import sys
import time

from stacksort import is_sortable, random_permutation, random_sortable
from stacksort.oracle import census_row, write_census

rows = [census_row(n, "graph") for n in range(1, 8)]
write_census(rows, sys.stdout)

print("\nsize  median ms (sortable inputs)")
rng = random.Random(0)
for n in (25, 50, 100, 200):
    times = []
    for _ in range(7):
        s = random_sortable(n, rng)
        t0 = time.perf_counter()
        is_sortable(s)
        times.append((time.perf_counter() - t0) * 1000)
    times.sort()
    print(f"{n:>4}  {times[len(times) // 2]:.1f}")

# uniform inputs this large are almost never sortable and are rejected fast
print("uniform n=200 sortable?", is_sortable(random_permutation(200, rng)))
