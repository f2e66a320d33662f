import itertools

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from stacksort.accessibility import AccessibilityInstance, PreconditionError
from stacksort.generate import random_sortable
from stacksort.machine import POP, PUSH, TRANSFER, StackConfiguration
from stacksort.perm import Permutation

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def all_perms(n):
    for v in itertools.permutations(range(1, n + 1)):
        yield Permutation.from_values(v)


@st.composite
def perms(draw, min_size=0, max_size=10):
    n = draw(st.integers(min_size, max_size))
    vals = draw(st.permutations(list(range(1, n + 1))))
    return Permutation.from_values(vals)


@st.composite
def sortable_perms(draw, min_size=0, max_size=12):
    n = draw(st.integers(min_size, max_size))
    rng = draw(st.randoms(use_true_random=False))
    return random_sortable(n, rng)


@pytest.fixture
def P():
    from stacksort.perm import parse_permutation

    return parse_permutation


def random_instance(n, rng):
    """A valid instance built from a random trajectory; the target is reached half of the time."""
    while True:
        inst = _draw_instance(n, rng)
        try:
            inst.validate()
        except PreconditionError:
            continue
        return inst


def _draw_instance(n, rng):
    vals = list(range(1, n + 1))
    rng.shuffle(vals)
    sigma = Permutation.from_values(vals)

    def walk(q, H, V, out, steps, stop_at_end):
        for _ in range(steps):
            moves = []
            if q <= n:
                moves.append(PUSH)
            if H:
                moves.append(TRANSFER)
            if V and V[-1] == out:
                moves.append(POP)
            if not moves:
                break
            m = rng.choice(moves)
            if m == PUSH:
                H, q = H + (vals[q - 1],), q + 1
            elif m == TRANSFER:
                H, V = H[:-1], V + (H[-1],)
            else:
                V, out = V[:-1], out + 1
        if stop_at_end:
            while q <= n:
                H, q = H + (vals[q - 1],), q + 1
        return q, H, V, out

    q, H, V, out = walk(1, (), (), 1, rng.randint(0, 3 * n), False)
    start = StackConfiguration(H, V)
    q2, H2, V2, out2 = walk(q, H, V, out, rng.randint(0, 3 * n), True)
    target = StackConfiguration(H2, V2)
    if rng.random() < 0.5 and len(target):
        items = list(target.values())
        rng.shuffle(items)
        cut = rng.randint(0, len(items))
        target = StackConfiguration(tuple(items[:cut]), tuple(items[cut:]))
    return AccessibilityInstance.build(sigma, start, q, target)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[num])
