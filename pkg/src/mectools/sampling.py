"""Uniform sampling of acyclic moral orientations.

A precount pass runs the counter while recording, per explored subgraph, each
clique-tree node's weight (its permutation count times the counts of its
components).  A sample then walks these records: draw a clique proportional
to its weight, draw an admissible permutation of it, recurse on the
components.  All weights are exact big integers; clique draws use cumulative
sums with binary search rather than a real-valued alias table, which would
lose exactness to rounding.  Random numbers come from a caller-supplied
``random.Random`` (Mersenne Twister), so fixed seeds reproduce exact sample
sequences.
"""

from __future__ import annotations

import random
import threading
from bisect import bisect_right
from dataclasses import dataclass
from typing import Dict, Iterable, Sequence

from .counting import (
    FpChain,
    Key,
    MemoTable,
    _evaluate,
    _explore,
    _phi_sizes,
    factorial,
    validate_chain,
)
from .graphs import (
    Dag,
    PartialGraph,
    Uccg,
    orient_by_ordering,
    undirected_components,
)


class ModelMismatchError(ValueError):
    """The sampler model was not built for the graph it is used with."""


@dataclass(frozen=True)
class CliqueRecord:
    """One clique-tree node of an explored subgraph, ready for sampling."""

    index: int
    clique: tuple[int, ...]
    chain: tuple[tuple[int, ...], ...]
    child_keys: tuple[Key, ...]
    phi: int
    weight: int


@dataclass(frozen=True)
class _KeyEntry:
    records: tuple[CliqueRecord, ...]
    cumulative: tuple[int, ...]
    total: int


class _PermTable:
    """Permutation counts indexed by (chain suffix start, vertices drawn).

    ``rows[i][d]`` is the number of permutations of the remaining k-d clique
    vertices avoiding the chain suffix starting at ``i`` with ``d`` drawn
    vertices removed from every suffix element; by nesting, only these two
    parameters matter.  ``first_idx`` maps each chain vertex to the smallest
    chain set containing it.
    """

    __slots__ = ("rows", "ell", "first_idx")

    def __init__(self, clique_size: int, chain_sets: Sequence[Iterable[int]]):
        chain_sizes = [len(s) for s in chain_sets]
        ell = len(chain_sizes)
        self.ell = ell
        self.rows = [
            [
                _phi_sizes(clique_size - d, [s - d for s in chain_sizes[i:]])
                for d in range(clique_size + 1)
            ]
            for i in range(ell + 1)
        ]
        self.first_idx: Dict[int, int] = {}
        for i, s in enumerate(chain_sets):
            for v in s:
                self.first_idx.setdefault(v, i)


class SamplerModel:
    """Precomputed clique weights and permutation tables for one graph.

    Immutable after construction except for the lazily filled permutation
    table cache, which is lock-protected for concurrent samplers.
    """

    def __init__(self, root: Uccg, entries: Dict[Key, _KeyEntry], counts: MemoTable):
        self.root = root
        self.entries = entries
        self.counts = counts
        self._tables: Dict[tuple[Key, int], _PermTable] = {}
        self._lock = threading.Lock()

    @property
    def root_key(self) -> Key:
        return self.root.key

    @property
    def total(self) -> int:
        return self.entries[self.root_key].total

    def table_for(self, key: Key, record: CliqueRecord) -> _PermTable:
        tk = (key, record.index)
        table = self._tables.get(tk)
        if table is None:
            with self._lock:
                table = self._tables.get(tk)
                if table is None:
                    table = _PermTable(len(record.clique), record.chain)
                    self._tables[tk] = table
        return table


@dataclass(frozen=True)
class SampleResult:
    """A sampled orientation: the drawn topological ordering (local vertices)
    and the DAG it induces."""

    tau: tuple[int, ...]
    dag: Dag


def precount(g: Uccg, seed: int | None = None) -> SamplerModel:
    """Run the counter on ``g`` and keep everything a sampler needs."""
    memo: MemoTable = {}
    rng = random.Random(seed) if seed is not None else None
    ex = _explore(g, memo, rng)
    _evaluate(ex.plans, memo)
    entries: Dict[Key, _KeyEntry] = {}
    for key, plans in ex.plans.items():
        records = []
        cumulative = []
        running = 0
        for i, plan in enumerate(plans):
            weight = plan.phi
            for child in plan.children:
                weight *= memo[child]
            running += weight
            records.append(
                CliqueRecord(i, plan.clique, plan.chain, plan.children, plan.phi, weight)
            )
            cumulative.append(running)
        assert running == memo[key], "clique weights must sum to the count"
        entries[key] = _KeyEntry(tuple(records), tuple(cumulative), running)
    return SamplerModel(g, entries, memo)


def draw_clique(model: SamplerModel, key: Key, rng: random.Random) -> CliqueRecord:
    """Draw one clique record with probability weight/total, exactly."""
    entry = model.entries.get(key)
    if entry is None:
        raise KeyError(f"no sampler entry for key {key}")
    r = rng.randrange(entry.total)
    return entry.records[bisect_right(entry.cumulative, r)]


def perm_step_weights(
    remaining: Sequence[int],
    suffix: int,
    drawn: int,
    table: _PermTable,
) -> list[tuple[int, int, int]]:
    """Weights for the next permutation element.

    Returns (vertex, weight, next suffix) per remaining vertex: the weight is
    the number of admissible completions if the vertex is placed next.  A
    vertex inside some chain set shrinks the active suffix to the smallest set
    containing it; a vertex outside all of them clears the chain.
    """
    ell = table.ell
    rows = table.rows
    first_idx = table.first_idx
    free_weight = factorial(len(remaining) - 1)
    out = []
    for v in remaining:
        j = first_idx.get(v, ell)
        if j < suffix:
            j = suffix
        weight = rows[j][drawn + 1] if j < ell else free_weight
        out.append((v, weight, j))
    return out


def draw_perm(
    clique: Iterable[int],
    chain: FpChain | Sequence[Iterable[int]],
    rng: random.Random,
    table: _PermTable | None = None,
) -> tuple[int, ...]:
    """Uniform permutation of ``clique`` having no chain element as a prefix.

    The chain must be strictly nested and consist of proper subsets (then at
    least one admissible permutation exists).  Each position is drawn with
    exact integer weights proportional to the number of completions.
    """
    items = sorted(clique)
    if table is None:
        sets = chain.sets if isinstance(chain, FpChain) else tuple(chain)
        chain_sets = validate_chain(frozenset(items), sets)
        table = _PermTable(len(items), chain_sets)

    remaining = list(items)
    out: list[int] = []
    suffix = 0
    drawn = 0
    ell = table.ell
    while remaining:
        if suffix >= ell:
            rng.shuffle(remaining)
            out.extend(remaining)
            break
        weighted = perm_step_weights(remaining, suffix, drawn, table)
        total = sum(w for _, w, _ in weighted)
        assert total == table.rows[suffix][drawn] and total > 0
        r = rng.randrange(total)
        acc = 0
        for pos, (v, w, nxt) in enumerate(weighted):
            acc += w
            if r < acc:
                break
        out.append(v)
        remaining.pop(pos)
        suffix = nxt
        drawn += 1
    return tuple(out)


def sample_amo(g: Uccg, model: SamplerModel, rng: random.Random) -> SampleResult:
    """Draw one orientation of ``g`` uniformly among its AMOs.

    Assembles a topological ordering clique by clique; components are
    appended in their recorded order, which respects the edge directions
    forced between them.
    """
    if model.root is not g and model.root != g:
        raise ModelMismatchError("model was precomputed for a different graph")
    tau_labels: list[int] = []
    stack: list[Key] = [g.key]
    while stack:
        key = stack.pop()
        record = draw_clique(model, key, rng)
        table = model.table_for(key, record)
        tau_labels.extend(draw_perm(record.clique, record.chain, rng, table))
        stack.extend(reversed(record.child_keys))
    tau = tuple(g.local_of(lab) for lab in tau_labels)
    return SampleResult(tau, orient_by_ordering(g, tau))


def precount_cpdag(g: PartialGraph, seed: int | None = None) -> list[SamplerModel]:
    """One sampler model per undirected component of the CPDAG."""
    return [precount(comp, seed) for comp in undirected_components(g)]


def sample_cpdag(
    g: PartialGraph,
    models: Sequence[SamplerModel],
    rng: random.Random,
    _components: Sequence[Uccg] | None = None,
) -> Dag:
    """Uniform member of the Markov equivalence class represented by ``g``.

    Keeps the directed edges and orients every undirected component with an
    independently drawn AMO.
    """
    comps = list(_components) if _components is not None else undirected_components(g)
    if len(models) != len(comps) or any(
        m.root != c for m, c in zip(models, comps)
    ):
        raise ModelMismatchError("models do not match the undirected components")
    out: list[set[int]] = [set(a) for a in g.directed_out]
    for comp, model in zip(comps, models):
        res = sample_amo(comp, model, rng)
        labels = comp.labels
        for u, v in res.dag.edges():
            out[labels[u]].add(labels[v])
    return Dag(g.n, tuple(tuple(sorted(s)) for s in out))
