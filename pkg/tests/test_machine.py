import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stacksort.machine import (
    BlockedError,
    ExtendedConfiguration,
    IllegalMoveError,
    NotPoppableError,
    StackConfiguration,
    Word,
    decorate,
    first_failure,
    is_poppable,
    parse_word,
    pop_word,
    restrict_word,
    run_word,
    search_accessible,
    sorts,
    stack_configs,
)
from stacksort.oracle import brute_force_sortable
from stacksort.perm import parse_permutation

from conftest import sortable_perms

WORD_2431 = "rrlrlrlmlmmm"
WORD_324617985 = "rrlrrrlmmrllllmmrrrlmmmlmlm"


def test_golden_words_sort():
    assert sorts(parse_permutation("2431"), WORD_2431)
    assert sorts(parse_permutation("324617985"), WORD_324617985)
    assert len(WORD_324617985) == 27


def test_greek_and_decorated_input():
    assert parse_word("ρρλρλρλμλμμμ").letters == WORD_2431
    w = parse_word("ρ₂ρ₄λ₄ρ₃λ₃ρ₁λ₁μ₁λ₂μ₂μ₃μ₄")
    assert w.letters == WORD_2431 and w.decoration == (2, 4, 4, 3, 3, 1, 1, 1, 2, 2, 3, 4)
    assert decorate(parse_permutation("2431"), WORD_2431) == w
    assert str(parse_word("r3 m5 l3")) == "r3 m5 l3"
    with pytest.raises(ValueError):
        parse_word("rxl")


def test_restriction_example():
    u = parse_word("r3 m5 l3 r6 r7 l6")
    assert restrict_word(u, None, {5, 6}).letters == "mrl"


def test_word_counts():
    w = Word(WORD_2431)
    assert w.is_sorting_word() and w.is_stack_word()
    assert not Word("rlmm").is_stack_word()
    assert Word("rrl").is_stack_word() and not Word("rrl").is_sorting_word()


def test_failures_reported():
    assert first_failure(parse_permutation("21"), "rlm")[0] == 2
    assert first_failure(parse_permutation("1"), "rlm") is None
    assert first_failure(parse_permutation("12"), "rlm") is not None
    assert first_failure(parse_permutation("1"), "l")[0] == 0
    with pytest.raises(IllegalMoveError):
        run_word(parse_permutation("1"), "m")


def test_pop_word():
    c = StackConfiguration((4, 2), (5, 3, 1))
    w = pop_word(c)
    assert w.letters == "mlmmlmm"
    assert pop_word(c, {1, 2, 3}).letters == "mlmm"
    with pytest.raises(BlockedError):
        pop_word(StackConfiguration((1, 2), ()), {1})
    with pytest.raises(NotPoppableError):
        pop_word(StackConfiguration((), (1, 2)))


def _pops_out(H, V):
    """Independent check: emit everything in increasing order by depth-first search."""
    H, V = tuple(H), tuple(V)
    seen = set()

    def go(H, V, nxt):
        if not H and not V:
            return True
        if (H, V) in seen:
            return False
        seen.add((H, V))
        if V and V[-1] == nxt and go(H, V[:-1], nxt + 1):
            return True
        return bool(H) and go(H[:-1], V + (H[-1],), nxt)

    return go(H, V, min(H + V, default=1))


def _all_configs(n):
    vals = list(range(1, n + 1))
    for perm in itertools.permutations(vals):
        for cut in range(n + 1):
            yield StackConfiguration(perm[:cut], perm[cut:])


@pytest.mark.parametrize("n", range(0, 9))
def test_poppable_matches_search(n):
    for c in _all_configs(n):
        assert is_poppable(c) == _pops_out(c.H, c.V), c


def test_search_accessible_example():
    s = parse_permutation("23165847")
    start = ExtendedConfiguration(StackConfiguration((), (3, 2)), 4)
    target = ExtendedConfiguration(StackConfiguration((6, 5), (8,)), 7)
    ok, w = search_accessible(start, target, s, decorated=True)
    assert ok
    assert len(w) == 6 and w.letters.count("m") == 2


def test_stack_configs():
    c = stack_configs(StackConfiguration((9,), (8,)), StackConfiguration((5,), (4,)))
    assert c == StackConfiguration((9, 5), (8, 4))
    with pytest.raises(ValueError):
        stack_configs(StackConfiguration((1,)), StackConfiguration((), (1,)))


@given(sortable_perms(max_size=10))
def test_oracle_words_replay(s):
    ok, w = brute_force_sortable(s)
    assert ok
    assert sorts(s, w)
    assert w.is_sorting_word()
    st_final = run_word(s, w)
    assert st_final.output == tuple(range(1, len(s) + 1))


@given(sortable_perms(min_size=1, max_size=10), st.data())
def test_restriction_keeps_sorting(s, data):
    _, w = brute_force_sortable(s)
    keep = data.draw(st.sets(st.sampled_from(s.values)))
    sub = s.restrict(keep)
    u = restrict_word(w, s, keep)
    assert u.is_sorting_word()
    assert sorts(sub, u)


@given(sortable_perms(min_size=1, max_size=10), st.data())
def test_pop_word_emits_exactly_the_smallest(s, data):
    """Mid-run, the pop-out word of the k smallest entries leaves the rest untouched."""
    _, w = brute_force_sortable(s)
    cut = data.draw(st.integers(0, len(w)))
    state = run_word(s, w.letters[:cut])
    c = state.config
    if not len(c):
        return
    k = data.draw(st.integers(1, len(c)))
    I = sorted(c.values())[:k]
    try:
        u = pop_word(c, I)
    except BlockedError:
        return
    after = run_word(s, u, state=state)
    assert after.output[len(state.output):] == tuple(I)
    assert after.config == c.restrict(c.values() - set(I))
