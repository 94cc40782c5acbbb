"""Shared fixtures: small named graphs, random corpora, and brute-force checks."""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from mectools import (
    Uccg,
    clique_tree,
    components_after_clique,
    count_amos,
    enumerate_amos,
    orient_by_ordering,
    phi_naive,
)
from mectools.generators import gen_interval, gen_peo, gen_subtree, gen_thicken
from mectools.sampling import SamplerModel, perm_step_weights


def path_graph(n: int) -> Uccg:
    return Uccg.from_edges(range(n), [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Uccg:
    return Uccg.from_edges(range(n), itertools.combinations(range(n), 2))


def cycle_edges(n: int) -> list[tuple[int, int]]:
    return [(i, (i + 1) % n) for i in range(n)]


def three_clique_chain() -> Uccg:
    """Six vertices, maximal cliques {0,1,2}, {1,2,3,4}, {1,2,4,5}.

    Its 54 orientations and per-clique permutation counts (6, 20, 16) are
    verified against the brute-force oracles in the tests that use it.
    """
    return Uccg.from_edges(
        range(6),
        [(0, 1), (0, 2), (1, 2), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (4, 5)],
    )


def clique_chain_7() -> Uccg:
    """Seven vertices: K4 {0..3}, K4 {2,3,4,5}, triangle {4,5,6} chained."""
    return Uccg.from_edges(
        range(7),
        [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5), (4, 6), (5, 6)],
    )


def diamond_with_chord() -> Uccg:
    """Four vertices: 4-cycle 0-1-3-2-0 plus the chord 1-2."""
    return Uccg.from_edges(range(4), [(0, 1), (1, 3), (2, 3), (0, 2), (1, 2)])


_CORPUS_MODELS = (
    ("peo", lambda n: 1),
    ("subtree", lambda n: max(2, round(math.log2(n)))),
    ("thicken", lambda n: 1),
    ("interval", lambda n: 0),
    ("peo", lambda n: 2),
    ("thicken", lambda n: 2),
)


def _generate(model: str, n: int, k: int, seed: int) -> Uccg:
    if model == "subtree":
        return gen_subtree(n, k, seed)
    if model == "interval":
        return gen_interval(n, seed)
    if model == "peo":
        return gen_peo(n, k, seed)
    if model == "thicken":
        return gen_thicken(n, k, seed)
    raise ValueError(model)


def random_chordal_corpus(
    count: int,
    n_lo: int,
    n_hi: int,
    seed: int,
    max_edges: int | None = None,
    max_clique: int | None = None,
) -> list[Uccg]:
    """Mixed-generator corpus of connected chordal graphs, deterministic in
    ``seed``.  Optional caps keep instances inside brute-force oracle limits."""
    rng = random.Random(seed)
    out: list[Uccg] = []
    attempt = 0
    while len(out) < count:
        model, k_of = _CORPUS_MODELS[attempt % len(_CORPUS_MODELS)]
        n = rng.randint(n_lo, n_hi)
        g = _generate(model, n, k_of(n), seed * 100003 + attempt)
        attempt += 1
        if max_edges is not None and g.m > max_edges:
            continue
        if max_clique is not None:
            t = clique_tree(g)
            if max(len(c) for c in t.cliques) > max_clique:
                continue
        out.append(g)
    return out


def brute_minimal_separators(g: Uccg) -> set[frozenset[int]]:
    """All inclusion-minimal a-b separators, by exhaustion (local ids, n <= 8)."""
    n = g.n
    adj = [set(a) for a in g.adj]

    def separates(blocked: frozenset[int], a: int, b: int) -> bool:
        stack, seen = [a], {a}
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w == b:
                    return False
                if w not in blocked and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return True

    out: set[frozenset[int]] = set()
    for a, b in itertools.combinations(range(n), 2):
        if b in adj[a]:
            continue
        rest = [v for v in range(n) if v != a and v != b]
        for r in range(len(rest) + 1):
            for sub in itertools.combinations(rest, r):
                s = frozenset(sub)
                if not separates(s, a, b):
                    continue
                if all(not separates(s - {w}, a, b) for w in s):
                    out.add(s)
    return out


def brute_maximal_cliques(g: Uccg) -> set[frozenset[int]]:
    n = g.n
    adj = [set(a) for a in g.adj]
    cliques = [
        frozenset(sub)
        for r in range(1, n + 1)
        for sub in itertools.combinations(range(n), r)
        if all(b in adj[a] for a, b in itertools.combinations(sub, 2))
    ]
    return {c for c in cliques if not any(c < d for d in cliques)}


def union_components_oracle(g: Uccg, clique: list[int]) -> set[tuple[int, ...]]:
    """Definition-level computation of the components left undirected after a
    clique prefix: union all enumerated orientations that admit an ordering
    starting with the clique, and split what stays bidirected."""
    kset = set(clique)
    directions: dict[tuple[int, int], set[tuple[int, int]]] = {}
    for dag in enumerate_amos(g):
        if any(v in kset and u not in kset for u, v in dag.edges()):
            continue
        for u, v in dag.edges():
            pair = (u, v) if u < v else (v, u)
            directions.setdefault(pair, set()).add((u, v))
    undirected = {p for p, ds in directions.items() if len(ds) == 2}
    rest = [v for v in range(g.n) if v not in kset]
    nbr: dict[int, set[int]] = {v: set() for v in rest}
    for a, b in undirected:
        if a in nbr and b in nbr:
            nbr[a].add(b)
            nbr[b].add(a)
    comps: set[tuple[int, ...]] = set()
    seen: set[int] = set()
    for s in rest:
        if s in seen:
            continue
        comp, stack = {s}, [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            for w in nbr[u]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.add(tuple(sorted(g.labels[v] for v in comp)))
    return comps


def count_by_separator_formula(g: Uccg) -> int:
    """Sum over minimal separators and maximal cliques of the number of
    orderings starting there, with naive prefix-avoidance counts."""
    t = clique_tree(g)
    cliques = set(t.cliques)
    seps = {s for s in t.separators if s is not None}
    total = 0
    for s in cliques | seps:
        forbidden = [set(x) for x in seps if set(x) < set(s)]
        prod = 1
        for h in components_after_clique(g, s):
            prod *= count_amos(h)
        total += phi_naive(s, forbidden) * prod
    return total


def exact_sampler_distribution(g: Uccg, model: SamplerModel) -> dict[frozenset, Fraction]:
    """Propagate exact probabilities through the sampler's decision tree.

    Walks the same clique weights and permutation step weights the sampler
    draws from, replacing random choices by exhaustive branching, and returns
    the induced probability per resulting DAG (as its directed edge set).
    """

    def perm_paths(key, record):
        table = model.table_for(key, record)
        ell = len(record.chain)

        def rec(remaining, suffix, drawn, prob):
            if not remaining:
                yield (), prob
                return
            if suffix >= ell:
                share = prob / math.factorial(len(remaining))
                for p in itertools.permutations(remaining):
                    yield p, share
                return
            weighted = perm_step_weights(remaining, suffix, drawn, table)
            total = sum(w for _, w, _ in weighted)
            for v, w, nxt in weighted:
                if w == 0:
                    continue
                rest = [x for x in remaining if x != v]
                for tail, pr in rec(rest, nxt, drawn + 1, prob * Fraction(w, total)):
                    yield (v,) + tail, pr

        yield from rec(sorted(record.clique), 0, 0, Fraction(1))

    def key_paths(key):
        entry = model.entries[key]
        for record in entry.records:
            if record.weight == 0:
                continue
            p_rec = Fraction(record.weight, entry.total)
            for perm, p_perm in perm_paths(key, record):
                stack = [(0, perm, p_rec * p_perm)]
                while stack:
                    i, tau, prob = stack.pop()
                    if i == len(record.child_keys):
                        yield tau, prob
                        continue
                    for sub_tau, sub_p in key_paths(record.child_keys[i]):
                        stack.append((i + 1, tau + sub_tau, prob * sub_p))

    dist: dict[frozenset, Fraction] = {}
    for tau_labels, prob in key_paths(g.key):
        tau = tuple(g.local_of(lab) for lab in tau_labels)
        edges = orient_by_ordering(g, tau).edge_set()
        dist[edges] = dist.get(edges, Fraction(0)) + prob
    return dist
