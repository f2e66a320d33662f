"""Sorting graphs and the polynomial decision procedure.

For step i the graph has one level per skew block of the i-th upper-left
quadrant.  A vertex is a labelled pushall configuration of its block; a
path through all levels, stacked bottom level first, is a configuration the
stacks can hold just before the i-th right-to-left minimum is pushed in some
sorting of the prefix ending at that minimum.

Labels are handed out once per decision run.  Two vertices carrying the same
label on different levels stem from one configuration of an earlier block
that was cut into pieces, and the label keeps those pieces chained together.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

from .accessibility import AccessibilityInstance, is_accessible_fast
from .machine import POP, PUSH, TRANSFER, StackConfiguration, Word, pop_word, sorts, stack_configs
from .perm import Permutation, rtl_minima, step_context, theta_decompose, upper_left
from .pushall import pushall_bound, pushall_configs, pushall_word, stack_all

log = logging.getLogger(__name__)


class LabelAllocator:
    def __init__(self, start: int = 1):
        self.next = start

    def __call__(self) -> int:
        label = self.next
        self.next += 1
        return label


class SortingGraph:
    def __init__(self, step: int, blocks):
        self.step = step
        self.blocks = tuple(blocks)
        self.levels: list[dict[int, StackConfiguration]] = [{} for _ in self.blocks]
        self.up: dict[tuple[int, int], set[int]] = {}
        self.down: dict[tuple[int, int], set[int]] = {}

    @property
    def s(self) -> int:
        return len(self.blocks)

    def level(self, j: int) -> dict[int, StackConfiguration]:
        return self.levels[j - 1]

    def add_vertex(self, j: int, label: int, config: StackConfiguration) -> None:
        lev = self.levels[j - 1]
        if label in lev:
            if lev[label] != config:
                raise ValueError(f"label {label} already used on level {j} for another configuration")
            return
        lev[label] = config
        self.up.setdefault((j, label), set())
        self.down.setdefault((j, label), set())

    def add_edge(self, j: int, lower: int, upper: int) -> None:
        """Edge between ``lower`` on level j and ``upper`` on level j + 1."""
        if lower not in self.levels[j - 1] or upper not in self.levels[j]:
            raise KeyError(f"edge ({j},{lower})-({j + 1},{upper}) between missing vertices")
        self.up[(j, lower)].add(upper)
        self.down[(j + 1, upper)].add(lower)

    def vertices(self):
        for j, lev in enumerate(self.levels, start=1):
            for label, c in lev.items():
                yield j, label, c

    def edges(self):
        for (j, lab), ups in sorted(self.up.items()):
            for u in sorted(ups):
                yield (j, lab), (j + 1, u)

    def num_vertices(self) -> int:
        return sum(len(lev) for lev in self.levels)

    def num_edges(self) -> int:
        return sum(len(v) for v in self.up.values())

    def is_empty(self) -> bool:
        """True when no configuration is encoded (some level has no vertex)."""
        return any(not lev for lev in self.levels)

    def copy_vertex_from(self, other: "SortingGraph", j: int, label: int) -> None:
        self.add_vertex(j, label, other.level(j)[label])

    def descendants(self, j: int, label: int):
        """Vertices strictly below (j, label) reachable by downward edges, as {level: set(labels)}."""
        out = {}
        frontier = {label}
        for lev in range(j - 1, 0, -1):
            nxt = set()
            for lab in frontier:
                nxt |= self.down[(lev + 1, lab)]
            if not nxt:
                break
            out[lev] = nxt
            frontier = nxt
        return out

    def merge_below(self, source: "SortingGraph", j: int, label: int, new_j: int, new_label: int) -> None:
        """Copy what lies below ``(j, label)`` in ``source`` under ``(new_j, new_label)`` here.

        Levels under the origin keep their numbers and labels, so copies made
        for different origins fall onto the same vertices.
        """
        if j != new_j:
            raise ValueError("merge must keep the origin level")
        below = source.descendants(j, label)
        for lev, labs in below.items():
            for lab in labs:
                self.copy_vertex_from(source, lev, lab)
        for lev, labs in below.items():
            for lab in labs:
                for lower in source.down[(lev, lab)]:
                    self.add_edge(lev - 1, lower, lab)
        for lower in source.down[(j, label)]:
            self.add_edge(j - 1, lower, new_label)

    def prune(self) -> None:
        """Drop every vertex that lies on no bottom-to-top path."""
        s = self.s
        if s == 0:
            return
        reach_down = [set() for _ in range(s)]
        reach_down[0] = set(self.levels[0])
        for j in range(2, s + 1):
            reach_down[j - 1] = {lab for lab in self.levels[j - 1] if self.down[(j, lab)] & reach_down[j - 2]}
        alive = [set() for _ in range(s)]
        alive[s - 1] = reach_down[s - 1]
        for j in range(s - 1, 0, -1):
            alive[j - 1] = {lab for lab in reach_down[j - 1] if self.up[(j, lab)] & alive[j]}
        for j in range(1, s + 1):
            keep = alive[j - 1]
            for lab in list(self.levels[j - 1]):
                if lab not in keep:
                    del self.levels[j - 1][lab]
                    del self.up[(j, lab)]
                    del self.down[(j, lab)]
        for (j, lab), ups in self.up.items():
            ups &= alive[j] if j < s else set()
        for (j, lab), downs in self.down.items():
            downs &= alive[j - 2] if j > 1 else set()

    def paths(self):
        """All bottom-to-top paths as tuples of labels (exponential; for testing)."""
        if self.s == 0:
            yield ()
            return

        def walk(j, lab, acc):
            if j == self.s:
                yield acc
                return
            for u in sorted(self.up[(j, lab)]):
                yield from walk(j + 1, u, acc + (u,))

        for lab in sorted(self.levels[0]):
            yield from walk(1, lab, (lab,))

    def count_paths(self) -> int:
        if self.s == 0:
            return 1
        ways = {lab: 1 for lab in self.levels[0]}
        for j in range(2, self.s + 1):
            ways = {lab: sum(ways.get(d, 0) for d in self.down[(j, lab)]) for lab in self.levels[j - 1]}
        return sum(ways.values())

    def stacked(self, path) -> StackConfiguration:
        c = StackConfiguration()
        for j, lab in enumerate(path, start=1):
            c = stack_configs(c, self.levels[j - 1][lab])
        return c

    def configurations(self) -> set:
        return {self.stacked(p) for p in self.paths()}

    def some_path_up(self, j: int, label: int) -> list[int]:
        """Labels for levels j+1..s following upward edges from (j, label)."""
        out = []
        lab = label
        for lev in range(j, self.s):
            ups = self.up[(lev, lab)]
            if not ups:
                raise ValueError(f"vertex ({lev},{lab}) has no way up")
            lab = min(ups)
            out.append(lab)
        return out

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "levels": [
                [{"label": lab, "H": list(c.H), "V": list(c.V)} for lab, c in sorted(lev.items())] for lev in self.levels
            ],
            "edges": [[[a, la], [b, lb]] for (a, la), (b, lb) in self.edges()],
        }

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), **kw)

    @classmethod
    def from_json(cls, obj) -> "SortingGraph":
        blocks = []
        for lev in obj["levels"]:
            vals = sorted({x for v in lev for x in v["H"] + v["V"]}, reverse=True)
            blocks.append(Permutation.from_values(vals))
        g = cls(obj["step"], blocks)
        for j, lev in enumerate(obj["levels"], start=1):
            for v in lev:
                g.add_vertex(j, v["label"], StackConfiguration(tuple(v["H"]), tuple(v["V"])))
        for (a, la), (b, lb) in obj["edges"]:
            if b != a + 1:
                raise ValueError("edge between non-adjacent levels")
            g.add_edge(a, la, lb)
        return g

    def to_dot(self) -> str:
        lines = [f"graph G{self.step} {{", "  rankdir=BT;", "  node [shape=box];"]
        for j, lev in enumerate(self.levels, start=1):
            names = []
            for lab, c in sorted(lev.items()):
                name = f"v{j}_{lab}"
                names.append(name)
                text = f"{lab}: H={list(c.H)} V={list(c.V)}"
                lines.append(f'  {name} [label="{text}"];')
            if names:
                lines.append("  { rank=same; " + " ".join(names) + "; }")
        for (a, la), (b, lb) in self.edges():
            lines.append(f"  v{a}_{la} -- v{b}_{lb};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def compute_g1(sigma_i: Permutation, alloc: LabelAllocator | None = None, step: int = 1) -> SortingGraph | None:
    """Graph of all pushall configurations of ``sigma_i``; ``None`` if some block has none."""
    alloc = LabelAllocator() if alloc is None else alloc
    dec = theta_decompose(sigma_i)
    g = SortingGraph(step, dec.blocks)
    for j, block in enumerate(dec.blocks, start=1):
        S = pushall_configs(block)
        if not S:
            return None
        for c in S:
            g.add_vertex(j, alloc(), c)
        if j > 1:
            for lower in g.level(j - 1):
                for upper in g.level(j):
                    g.add_edge(j - 1, lower, upper)
    return g


# ---------------------------------------------------------------------------
# one step of the iteration


@dataclass
class TransitionRecord:
    """An accessibility call made while building a graph (kept for cross-checks)."""

    instance: AccessibilityInstance
    accessible: bool


@dataclass
class _Step:
    ctx: object
    sigma: Permutation
    pi: Permutation = None
    start_next: int = 0
    g_next: SortingGraph = None
    cache: dict = field(default_factory=dict)
    records: list | None = None

    def accessible(self, c_from: StackConfiguration, c_to: StackConfiguration) -> bool:
        key = (c_from, c_to)
        hit = self.cache.get(key)
        if hit is None:
            inst = AccessibilityInstance.build(self.pi, c_from, self.start_next, c_to)
            hit = is_accessible_fast(inst, validate=False).accessible
            self.cache[key] = hit
            if self.records is not None:
                self.records.append(TransitionRecord(inst, hit))
        return hit


def _prepare(g: SortingGraph, ctx, sigma: Permutation, alloc, records):
    st = _Step(ctx, sigma, records=records)
    g_new = compute_g1(ctx.sigma_next, alloc, step=ctx.i + 1)
    if g_new is None:
        return None, None
    st.g_next = g_new
    Bp = ctx.decomposition_i[ctx.p - 1]
    Bq = ctx.decomposition_next[ctx.q - 1]
    st.pi = sigma.restrict(Bp.value_set() | Bq.value_set())
    st.start_next = 1 + sum(1 for idx in st.pi.indices if idx < ctx.k_i)
    G = SortingGraph(ctx.i + 1, ctx.decomposition_next.blocks)
    for j in range(ctx.q + 1, G.s + 1):
        for lab, c in g_new.level(j).items():
            G.add_vertex(j, lab, c)
        if j > ctx.q + 1:
            for lower in G.level(j - 1):
                for upper in G.level(j):
                    G.add_edge(j - 1, lower, upper)
    return st, G


def _finish(G: SortingGraph, q: int) -> SortingGraph | None:
    if not G.level(q):
        return None
    if q < G.s:
        for lab in G.level(q):
            for upper in G.level(q + 1):
                G.add_edge(q, lab, upper)
    G.prune()
    return None if G.is_empty() else G


def iterate_p_equals_q(g: SortingGraph, ctx, sigma: Permutation, alloc: LabelAllocator, records=None):
    p = q = ctx.p
    st, G = _prepare(g, ctx, sigma, alloc, records)
    if st is None:
        return None
    for lab, c in g.level(p).items():
        for lab2, c2 in st.g_next.level(q).items():
            if st.accessible(c, c2):
                G.add_vertex(q, lab2, c2)
                G.merge_below(g, p, lab, q, lab2)
    return _finish(G, q)


def iterate_p_less_q(g: SortingGraph, ctx, sigma: Permutation, alloc: LabelAllocator, records=None):
    p, q = ctx.p, ctx.q
    st, G = _prepare(g, ctx, sigma, alloc, records)
    if st is None:
        return None
    Bq = ctx.decomposition_next[q - 1].value_set()
    kept = ctx.D - Bq  # entries of blocks p..q-1 of the next quadrant; they do not move
    pieces = [ctx.decomposition_next[j - 1].value_set() for j in range(p, q)]
    for lab, c in g.level(p).items():
        base = c.restrict(kept)
        for lab2, c2 in st.g_next.level(q).items():
            if st.accessible(c, stack_configs(base, c2)):
                G.add_vertex(q, lab2, c2)
                for j in range(q - 1, p - 1, -1):
                    G.add_vertex(j, lab, c.restrict(pieces[j - p]))
                    G.add_edge(j, lab, lab2 if j == q - 1 else lab)
                G.merge_below(g, p, lab, p, lab)
    return _finish(G, q)


def _matching_bottoms(g: SortingGraph, p: int, lab: int, targets: dict) -> set:
    """Labels on level q of paths from (p, lab) downwards whose configurations equal ``targets[j]``."""
    frontier = {lab}
    for j in range(p - 1, min(targets) - 1, -1):
        want = targets[j]
        frontier = {d for u in frontier for d in g.down[(j + 1, u)] if g.level(j)[d] == want}
        if not frontier:
            break
    return frontier


def iterate_p_greater_q(g: SortingGraph, ctx, sigma: Permutation, alloc: LabelAllocator, records=None):
    p, q = ctx.p, ctx.q
    st, G = _prepare(g, ctx, sigma, alloc, records)
    if st is None:
        return None
    Bp = ctx.decomposition_i[p - 1].value_set()
    kept = ctx.D - Bp  # entries of blocks q..p-1 of the current quadrant
    old_blocks = {j: ctx.decomposition_i[j - 1].value_set() for j in range(q, p)}
    for lab2, c2 in st.g_next.level(q).items():
        base = c2.restrict(kept)
        targets = {j: c2.restrict(b) for j, b in old_blocks.items()}
        for lab, c in g.level(p).items():
            if not st.accessible(stack_configs(base, c), c2):
                continue
            for bottom in sorted(_matching_bottoms(g, p, lab, targets)):
                G.add_vertex(q, lab2, c2)
                G.merge_below(g, q, bottom, q, lab2)
    return _finish(G, q)


def iterate(g: SortingGraph, ctx, sigma: Permutation, alloc: LabelAllocator, records=None):
    """Graph for step i + 1 from the graph for step i, or ``None`` when the prefix cannot be sorted."""
    if ctx.p is None:
        return compute_g1(ctx.sigma_next, alloc, step=ctx.i + 1)
    if ctx.p == ctx.q:
        return iterate_p_equals_q(g, ctx, sigma, alloc, records)
    if ctx.p < ctx.q:
        return iterate_p_less_q(g, ctx, sigma, alloc, records)
    return iterate_p_greater_q(g, ctx, sigma, alloc, records)


# ---------------------------------------------------------------------------
# invariants


def check_invariants(g: SortingGraph, sigma: Permutation, reference=None) -> list[str]:
    """Violated sorting-graph properties, as messages.  ``reference``, if given,
    is the expected set of stacked configurations."""
    bad = []
    n = len(sigma)
    expected_blocks = theta_decompose(upper_left(sigma, g.step)).blocks
    if tuple(b.value_set() for b in g.blocks) != tuple(b.value_set() for b in expected_blocks):
        bad.append("levels do not match the skew blocks of the quadrant")
    for j, lev in enumerate(g.levels, start=1):
        if len(lev) > pushall_bound(n):
            bad.append(f"level {j} has {len(lev)} > 9n+2 vertices")
        if len(set(lev)) != len(lev):
            bad.append(f"level {j} repeats a label")
        block = g.blocks[j - 1]
        allowed = pushall_configs(block).as_set()
        for lab, c in lev.items():
            if not isinstance(lab, int) or lab < 1:
                bad.append(f"vertex on level {j} has a bad label {lab!r}")
            if c not in allowed:
                bad.append(f"vertex ({j},{lab}) is not a pushall configuration of its block")
    for (j, lab), ups in g.up.items():
        for u in ups:
            if (j + 1, u) not in g.down or lab not in g.down[(j + 1, u)]:
                bad.append(f"edge ({j},{lab})-({j + 1},{u}) is one-sided")
    for (j, lab), downs in g.down.items():
        if downs and j == 1:
            bad.append(f"vertex ({j},{lab}) has an edge below level 1")
    if g.s:
        before = {(j, lab) for j, lab, _ in g.vertices()}
        probe = SortingGraph(g.step, g.blocks)
        probe.levels = [dict(lev) for lev in g.levels]
        probe.up = {k: set(v) for k, v in g.up.items()}
        probe.down = {k: set(v) for k, v in g.down.items()}
        probe.prune()
        after = {(j, lab) for j, lab, _ in probe.vertices()}
        if before != after:
            bad.append(f"{len(before - after)} vertices lie on no full path")
    if reference is not None and g.configurations() != set(reference):
        bad.append("stacked paths differ from the reference configuration set")
    return bad


# ---------------------------------------------------------------------------
# full decision


@dataclass
class Decision:
    sigma: Permutation
    sortable: bool
    graphs: list
    failed_step: int | None = None
    records: list | None = None


def decide(sigma: Permutation, keep_graphs: bool = False, validate: bool = False, records: list | None = None) -> Decision:
    """Run the graph algorithm.  With ``validate`` every graph is checked against its invariants."""
    minima = rtl_minima(sigma)
    r = len(minima)
    if r == 0:
        return Decision(sigma, True, [])
    alloc = LabelAllocator()
    graphs = []
    g = compute_g1(upper_left(sigma, 1), alloc, step=1)
    if g is None:
        return Decision(sigma, False, graphs, failed_step=1, records=records)
    if validate:
        _assert_ok(g, sigma)
    if keep_graphs:
        graphs.append(g)
    for i in range(1, r):
        ctx = step_context(sigma, i)
        g = iterate(g, ctx, sigma, alloc, records)
        if g is None:
            log.debug("%s: no configuration survives step %d", sigma, i + 1)
            return Decision(sigma, False, graphs, failed_step=i + 1, records=records)
        if validate:
            _assert_ok(g, sigma)
        if keep_graphs:
            graphs.append(g)
        log.debug("%s: step %d, %d vertices, %d edges", sigma, i + 1, g.num_vertices(), g.num_edges())
    return Decision(sigma, True, graphs, records=records)


class InvariantError(AssertionError):
    pass


def _assert_ok(g, sigma):
    bad = check_invariants(g, sigma)
    if bad:
        raise InvariantError(f"{sigma}, step {g.step}: " + "; ".join(bad))


def is_sortable(sigma: Permutation) -> bool:
    return decide(sigma).sortable


def sorting_graph(sigma: Permutation, step: int) -> SortingGraph | None:
    """The graph for ``step`` (1-based), or ``None`` if the algorithm stops earlier."""
    d = decide(sigma, keep_graphs=True)
    if step < 1 or step > len(rtl_minima(sigma)):
        raise IndexError(f"step {step} out of range")
    return d.graphs[step - 1] if step <= len(d.graphs) else None


# ---------------------------------------------------------------------------
# explicit-set version and witnesses


def transition_instance(sigma: Permutation, i: int, c_from: StackConfiguration, c_to: StackConfiguration, minima=None):
    """Accessibility instance for whole configurations at steps i and i + 1.

    The i-th minimum itself is left out: it is pushed, transferred and
    popped straight away and never meets the other entries.
    """
    minima = rtl_minima(sigma) if minima is None else minima
    (k_i, m_i), (k_n, _) = minima[i - 1], minima[i]
    pi = sigma.restrict(x for j, x in sigma if j < k_n and j != k_i and x > m_i)
    start_next = 1 + sum(1 for j in pi.indices if j < k_i)
    return AccessibilityInstance.build(pi, c_from, start_next, c_to)


def naive_configuration_sets(sigma: Permutation, records: list | None = None) -> list[set]:
    """Explicit configuration sets per step; stops early (shorter list) when one comes out empty."""
    minima = rtl_minima(sigma)
    r = len(minima)
    if r == 0:
        return []
    E = set(stack_all(pushall_configs(b) for b in theta_decompose(upper_left(sigma, 1))))
    out = [E]
    for i in range(1, r):
        if not E:
            break
        targets = stack_all(pushall_configs(b) for b in theta_decompose(upper_left(sigma, i + 1)))
        F = set()
        for c2 in targets:
            for c in E:
                inst = transition_instance(sigma, i, c, c2, minima)
                ok = is_accessible_fast(inst, validate=False).accessible
                if records is not None:
                    records.append(TransitionRecord(inst, ok))
                if ok:
                    F.add(c2)
                    break
        E = F
        out.append(E)
    return out


def is_sortable_naive(sigma: Permutation) -> bool:
    sets = naive_configuration_sets(sigma)
    return len(sets) == len(rtl_minima(sigma)) and (not sets or bool(sets[-1]))


def _word_to(block_seq, config: StackConfiguration) -> Word:
    """Push/transfer word reaching ``config`` from empty stacks for the blocks in ``block_seq``."""
    w = Word("")
    for block in block_seq:
        w = w + pushall_word(block, config.restrict(block.value_set()))
    return w


def _previous_path(G_prev: SortingGraph, G: SortingGraph, path: list, ctx, sigma: Permutation):
    """A bottom-to-top path of ``G_prev`` from which the configuration of ``path`` in ``G`` is reachable."""
    if ctx.p is None:
        return next(iter(G_prev.paths()))
    p, q = ctx.p, ctx.q
    minima = rtl_minima(sigma)
    target = G.stacked(path)

    def full_ok(candidate):
        inst = transition_instance(sigma, ctx.i, G_prev.stacked(candidate), target, minima)
        return is_accessible_fast(inst, validate=False).accessible

    lower = list(path[: min(p, q) - 1])
    if p < q:
        lab = path[p - 1]
        cand = lower + [lab] + G_prev.some_path_up(p, lab)
        if full_ok(cand):
            return cand
    elif p == q:
        for lab in sorted(G_prev.level(p)):
            if lower and lower[-1] not in G_prev.down[(p, lab)]:
                continue
            cand = lower + [lab] + G_prev.some_path_up(p, lab)
            if full_ok(cand):
                return cand
    else:
        c2 = G.level(q)[path[q - 1]]
        for lab in sorted(G_prev.level(p)):
            chains = [[lab]]
            for j in range(p - 1, q - 1, -1):
                want = c2.restrict(G_prev.blocks[j - 1].value_set())
                chains = [ch + [d] for ch in chains for d in sorted(G_prev.down[(j + 1, ch[-1])]) if G_prev.level(j)[d] == want]
            for ch in chains:
                if lower and lower[-1] not in G_prev.down[(q, ch[-1])]:
                    continue
                cand = lower + ch[::-1] + G_prev.some_path_up(p, lab)
                if full_ok(cand):
                    return cand
    raise RuntimeError(f"no predecessor found at step {ctx.i} for {sigma}")


def extract_witness(sigma: Permutation, decision: Decision | None = None) -> Word | None:
    """A sorting word for ``sigma`` when it is sortable, else ``None``."""
    minima = rtl_minima(sigma)
    r = len(minima)
    if r == 0:
        return Word("")
    d = decision if decision is not None and decision.graphs else decide(sigma, keep_graphs=True)
    if not d.sortable:
        return None
    graphs = d.graphs
    # walk back from some final configuration
    paths = [None] * r
    paths[r - 1] = list(next(iter(graphs[r - 1].paths())))
    for i in range(r - 1, 0, -1):
        ctx = step_context(sigma, i)
        paths[i - 1] = list(_previous_path(graphs[i - 1], graphs[i], paths[i], ctx, sigma))
    configs = [graphs[i].stacked(paths[i]) for i in range(r)]

    word = _word_to(theta_decompose(upper_left(sigma, 1)).blocks, configs[0])
    through_minimum = Word(PUSH + TRANSFER + POP)
    for i in range(1, r):
        inst = transition_instance(sigma, i, configs[i - 1], configs[i], minima)
        run = is_accessible_fast(inst, validate=False)
        if not run.accessible:
            raise RuntimeError(f"transition {i} -> {i + 1} of {sigma} does not replay")
        word = word + through_minimum + run.moves.plain()
    word = word + through_minimum + pop_word(configs[r - 1])
    if not sorts(sigma, word):
        raise RuntimeError(f"assembled word {word} does not sort {sigma}")
    return word
