"""Brute-force ground truth for tests: exhaustive orientation enumeration,
source-picking recursion, and linear extensions.

Everything here favors being obviously correct over being fast; hard size
guards keep the enumerations within reach.
"""

from __future__ import annotations

from typing import Sequence

from .graphs import Dag, Uccg
from .subproblems import components_after_clique


class TooLargeError(ValueError):
    """Input exceeds the brute-force size guard."""


def v_structures(dag: Dag, adjacency: Sequence[Sequence[int]] | None = None) -> set[tuple[int, int, int]]:
    """All induced a -> b <- c with a, c nonadjacent, as (a, b, c) with a < c.

    ``adjacency`` defaults to the DAG's own skeleton; pass the skeleton of a
    larger partially directed graph to evaluate v-structures in its sense.
    """
    if adjacency is None:
        nbr = [set() for _ in range(dag.n)]
        for u, v in dag.edges():
            nbr[u].add(v)
            nbr[v].add(u)
    else:
        nbr = [set(a) for a in adjacency]
    parents = dag.in_neighbors()
    out: set[tuple[int, int, int]] = set()
    for b in range(dag.n):
        ps = parents[b]
        for i in range(len(ps)):
            for j in range(i + 1, len(ps)):
                a, c = ps[i], ps[j]
                if a > c:
                    a, c = c, a
                if c not in nbr[a]:
                    out.add((a, b, c))
    return out


def enumerate_amos(g: Uccg) -> list[Dag]:
    """Every orientation of ``g`` that is acyclic and creates no v-structure.

    Walks the 2^|E| orientation space edge by edge, pruning any branch whose
    partial orientation already closed a directed cycle; limited to 24 edges.
    The result is duplicate-free by construction and deterministically ordered
    (low-to-high orientation explored first per edge).
    """
    n = g.n
    edges = sorted(g.edges())
    m = len(edges)
    if m > 24:
        raise TooLargeError("enumeration is limited to 24 edges")
    adj_mask = [0] * n
    for u, v in edges:
        adj_mask[u] |= 1 << v
        adj_mask[v] |= 1 << u

    out: list[Dag] = []
    chosen: list[tuple[int, int]] = []

    def moral(orient: list[tuple[int, int]]) -> bool:
        in_mask = [0] * n
        for u, v in orient:
            in_mask[v] |= 1 << u
        for b in range(n):
            mask = in_mask[b]
            rest = mask
            while rest:
                low = rest & -rest
                a = low.bit_length() - 1
                rest ^= low
                if mask & ~adj_mask[a] & ~low:
                    return False
        return True

    def rec(idx: int, reach: list[int]) -> None:
        if idx == m:
            if moral(chosen):
                out.append(Dag.from_edges(n, chosen))
            return
        u, v = edges[idx]
        for a, b in ((u, v), (v, u)):
            # a -> b closes a cycle iff a is already reachable from b
            if not (reach[b] >> a) & 1:
                new_reach = list(reach)
                rb = new_reach[b]
                bit_a = 1 << a
                for w in range(n):
                    if (new_reach[w] >> a) & 1 or w == a:
                        new_reach[w] |= rb
                chosen.append((a, b))
                rec(idx + 1, new_reach)
                chosen.pop()

    rec(0, [1 << v for v in range(n)])
    return out


def count_root_picking(g: Uccg, _memo: dict | None = None) -> int:
    """Count AMOs by fixing each vertex as the unique source and recursing on
    the parts left undirected.  Independent of the clique-level counter;
    practical to roughly 25 vertices."""
    memo = {} if _memo is None else _memo
    key = g.key
    got = memo.get(key)
    if got is not None:
        return got
    total = 0
    for s in range(g.n):
        prod = 1
        for h in components_after_clique(g, (s,), check=False):
            prod *= count_root_picking(h, memo)
        total += prod
    memo[key] = total
    return total


def topological_orderings_of_amo(g: Uccg, dag: Dag) -> list[tuple[int, ...]]:
    """All linear extensions of ``dag`` (which must orient ``g``); n <= 10."""
    n = g.n
    if n > 10:
        raise TooLargeError("linear extension enumeration is limited to 10 vertices")
    if dag.skeleton() != frozenset(g.edges()):
        raise ValueError("dag does not orient the given graph")
    indeg = [0] * n
    for _, v in dag.edges():
        indeg[v] += 1
    out: list[tuple[int, ...]] = []
    prefix: list[int] = []
    used = bytearray(n)

    def rec() -> None:
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for v in range(n):
            if not used[v] and indeg[v] == 0:
                used[v] = 1
                for w in dag.out_edges[v]:
                    indeg[w] -= 1
                prefix.append(v)
                rec()
                prefix.pop()
                for w in dag.out_edges[v]:
                    indeg[w] += 1
                used[v] = 0

    rec()
    return out
