"""Running words on the two-stack machine.

Moves are r (push the next input entry onto H), l (move the top of H onto V)
and m (pop the top of V to the output).
"""

from stacksort import parse_permutation, parse_word, run_word, sorts
from stacksort.machine import decorate, first_failure, restrict_word

sigma = parse_permutation("2431")
w = parse_word("rrlrlrlmlmmm")
print("sigma =", sigma, " word =", w)
print("sorts:", sorts(sigma, w))

# decorate each letter with the entry it moves
print("decorated:", decorate(sigma, w))

# watch the stacks letter by letter
state = None
for k in range(len(w) + 1):
    state = run_word(sigma, w.letters[:k])
    print(f"{w.letters[:k]:<13} {state.config}  out={list(state.output)}")

# a wrong word says where it goes off the rails
print("rlm on 21:", first_failure(parse_permutation("21"), "rlm"))

# keeping only the letters that touch some entries still gives a sorting word for them
u = restrict_word(w, sigma, {2, 3})
print("restricted to {2,3}:", u, sorts(sigma.restrict({2, 3}), u))
