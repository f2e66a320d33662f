import json
import random

import pytest
from hypothesis import given, settings

from stacksort.graph import (
    LabelAllocator,
    SortingGraph,
    check_invariants,
    compute_g1,
    decide,
    extract_witness,
    is_sortable,
    is_sortable_naive,
    naive_configuration_sets,
    sorting_graph,
)
from stacksort.machine import sorts
from stacksort.oracle import brute_force_sortable
from stacksort.perm import Permutation, parse_permutation, rtl_minima, step_context

from conftest import all_perms, perms, sortable_perms


def test_verdict_examples():
    assert is_sortable(parse_permutation("2431"))
    assert not is_sortable(parse_permutation("2435761"))
    assert is_sortable(parse_permutation("324617985"))
    assert is_sortable(Permutation.empty())
    assert is_sortable(parse_permutation("1"))


def test_first_graph_of_4321():
    g = compute_g1(parse_permutation("432", standard=False))
    assert g.s == 3
    assert [len(lev) for lev in g.levels] == [2, 2, 2]
    assert g.num_edges() == 8
    assert g.count_paths() == 8 == len(list(g.paths()))
    assert not check_invariants(g, parse_permutation("4321"))


def test_empty_quadrant_gives_empty_graph():
    g = compute_g1(Permutation.empty())
    assert g.s == 0 and not g.is_empty()
    assert list(g.paths()) == [()]
    assert g.count_paths() == 1


def test_unsortable_block_signals():
    assert compute_g1(parse_permutation("243576", standard=False)) is None
    d = decide(parse_permutation("2435761"))
    assert not d.sortable and d.failed_step == 1


def test_labels_increase():
    alloc = LabelAllocator()
    seen = [alloc() for _ in range(5)]
    assert seen == [1, 2, 3, 4, 5]


def test_json_round_trip_and_dot():
    s = parse_permutation("324617985")
    g = sorting_graph(s, 2)
    back = SortingGraph.from_json(json.loads(g.dumps()))
    assert back.to_json() == g.to_json()
    assert back.configurations() == g.configurations()
    dot = g.to_dot()
    assert dot.startswith("graph G2 {") and dot.rstrip().endswith("}")
    assert dot.count(" -- ") == g.num_edges()


def test_dot_parses_with_pydot():
    pydot = pytest.importorskip("pydot")
    g = compute_g1(parse_permutation("432", standard=False))
    parsed = pydot.graph_from_dot_data(g.to_dot())[0]
    assert len(parsed.get_edges()) == 8
    names = {n.get_name() for n in parsed.get_nodes()} - {"node"}
    assert len(names) == 6


@pytest.mark.parametrize("n", range(1, 8))
def test_path_sets_equal_naive_sets(n):
    for s in all_perms(n):
        d = decide(s, keep_graphs=True)
        sets = naive_configuration_sets(s)
        assert len(d.graphs) == len([E for E in sets if E])
        for g, E in zip(d.graphs, sets):
            assert g.configurations() == E, (s, g.step)


@settings(max_examples=60)
@given(sortable_perms(min_size=6, max_size=10))
def test_path_sets_on_sortable_inputs(s):
    d = decide(s, keep_graphs=True, validate=True)
    sets = naive_configuration_sets(s)
    assert d.sortable
    for g, E in zip(d.graphs, sets):
        assert not check_invariants(g, s, reference=E)


def _cases(kind, count, rng):
    found = []
    tries = 0
    while len(found) < count and tries < 20000:
        tries += 1
        s = random_sortable_or_not(rng)
        for i in range(1, len(rtl_minima(s))):
            ctx = step_context(s, i)
            if ctx.p is None:
                continue
            if (kind == "eq" and ctx.p == ctx.q) or (kind == "lt" and ctx.p < ctx.q) or (kind == "gt" and ctx.p > ctx.q):
                found.append(s)
                break
    return found


def random_sortable_or_not(rng):
    from stacksort.generate import random_permutation, random_sortable

    n = rng.randint(4, 10)
    return random_sortable(n, rng) if rng.random() < 0.7 else random_permutation(n, rng)


@pytest.mark.parametrize("kind", ["eq", "lt", "gt"])
def test_each_transition_kind_matches_naive(kind):
    rng = random.Random({"eq": 1, "lt": 2, "gt": 3}[kind])
    cases = _cases(kind, 40, rng)
    assert len(cases) >= 20
    for s in cases:
        d = decide(s, keep_graphs=True, validate=True)
        sets = naive_configuration_sets(s)
        assert d.sortable == (len(sets) == len(rtl_minima(s)) and bool(sets[-1]))
        for g, E in zip(d.graphs, sets):
            assert g.configurations() == E


def test_label_split_keeps_pieces_apart():
    """Two configurations cut into the same piece on a lower level stay distinct vertices."""
    rng = random.Random(7)
    hits = 0
    for s in _cases("lt", 200, rng):
        d = decide(s, keep_graphs=True)
        for g in d.graphs:
            for lev in g.levels:
                configs = list(lev.values())
                if len(configs) != len(set(configs)):
                    hits += 1
    assert hits > 0


@given(perms(max_size=12))
def test_graph_agrees_with_oracle(s):
    assert is_sortable(s) == brute_force_sortable(s)[0]


@given(sortable_perms(max_size=30))
def test_witness_replays(s):
    w = extract_witness(s)
    assert w is not None and sorts(s, w)


def test_witness_none_when_unsortable():
    assert extract_witness(parse_permutation("2435761")) is None
    w = extract_witness(parse_permutation("1234"))
    assert sorts(parse_permutation("1234"), w) and w.letters == "rlm" * 4


@given(sortable_perms(min_size=1, max_size=14))
def test_prefix_at_each_minimum_is_sortable(s):
    for k, _ in rtl_minima(s):
        assert is_sortable(s.prefix(k).normalized())


@given(perms(max_size=9))
def test_naive_agrees(s):
    assert is_sortable_naive(s) == is_sortable(s)


def test_pruned_graphs_have_no_dangling_vertices():
    rng = random.Random(4)
    from stacksort.generate import random_sortable

    for _ in range(100):
        s = random_sortable(rng.randint(5, 25), rng)
        for g in decide(s, keep_graphs=True).graphs:
            for j, lab, _c in g.vertices():
                if j > 1:
                    assert g.down[(j, lab)]
                if j < g.s:
                    assert g.up[(j, lab)]


def test_step_out_of_range():
    with pytest.raises(IndexError):
        sorting_graph(parse_permutation("2431"), 2)


@pytest.mark.slow
def test_graph_agrees_with_oracle_on_many_random_inputs():
    from stacksort.generate import random_permutation, random_sortable

    rng = random.Random(100)
    for k in range(100_000):
        n = rng.randint(1, 12)
        s = random_sortable(n, rng) if k % 4 == 0 else random_permutation(n, rng)
        assert is_sortable(s) == brute_force_sortable(s)[0], s
