"""Deciding sortability and producing a sorting word that replays."""

import random

from stacksort import brute_force_sortable, extract_witness, is_sortable, parse_permutation, random_sortable, sorts

for text in ["2431", "2435761", "324617985", "4321"]:
    sigma = parse_permutation(text)
    w = extract_witness(sigma)
    print(f"{text:>10}: sortable={is_sortable(sigma)} oracle={brute_force_sortable(sigma)[0]} word={w}")

rng = random.Random(1)
sigma = random_sortable(30, rng)
w = extract_witness(sigma)
print("\nrandom sortable input of size 30:", sigma)
print("witness:", w)
print("replays:", sorts(sigma, w))
