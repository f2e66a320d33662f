"""Sorting graphs, one per right-to-left minimum.

Each level holds labelled pushall configurations of one skew block; a path
through every level stacks into a configuration the machine may hold right
before that minimum enters.
"""

from stacksort import compute_g1, decide, parse_permutation, rtl_minima, upper_left

g = compute_g1(parse_permutation("432", standard=False))
print("first graph of 4321:", g.s, "levels,", g.num_edges(), "edges,", g.count_paths(), "paths")

sigma = parse_permutation("324617985")
print("\nsigma =", sigma, " minima:", rtl_minima(sigma))
d = decide(sigma, keep_graphs=True, validate=True)
for g in d.graphs:
    print(f"step {g.step}: quadrant {upper_left(sigma, g.step)}")
    for j, lev in enumerate(g.levels, start=1):
        print(f"  level {j}: " + ", ".join(f"#{lab} {c}" for lab, c in sorted(lev.items())))
    print("  configurations:", sorted(str(c) for c in g.configurations()))

print("\nDOT for step 2:\n" + d.graphs[1].to_dot())
