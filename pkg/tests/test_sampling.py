"""Uniform orientation sampling.

Core claims:
    - precount records clique weights summing to the orientation count
    - draw_clique realizes exact weight/total probabilities
    - draw_perm is uniform over the admissible permutations
    - sample_amo yields valid orientations (skeleton preserved, acyclic, no
      v-structures) with exactly uniform probabilities, verified symbolically
      on small graphs and statistically on the 54-orientation graph
    - identical seeds reproduce identical sample sequences
"""

import itertools
import random
from collections import Counter
from fractions import Fraction

import pytest

import helpers
from mectools import (
    PartialGraph,
    count_amos,
    draw_clique,
    draw_perm,
    enumerate_amos,
    precount,
    precount_cpdag,
    sample_amo,
    sample_cpdag,
    undirected_components,
    v_structures,
)
from mectools.counting import ChainNotNestedError
from mectools.sampling import ModelMismatchError

# frozen 0.999 chi-square quantiles (53 and 35 degrees of freedom)
CHI2_999_53 = 90.5734
CHI2_999_35 = 66.6188


class TestPrecount:
    def test_three_clique_chain_weights(self):
        g = helpers.three_clique_chain()
        model = precount(g)
        records = model.entries[g.key].records
        assert sorted(r.weight for r in records) == [16, 18, 20]
        assert model.total == 54

    def test_complete_graph_single_record(self):
        g = helpers.complete_graph(5)
        model = precount(g)
        (record,) = model.entries[g.key].records
        assert record.weight == 120
        assert record.child_keys == ()

    def test_path3_weights(self):
        g = helpers.path_graph(3)
        model = precount(g)
        assert sorted(r.weight for r in model.entries[g.key].records) == [1, 2]
        assert model.total == 3

    def test_total_equals_count_on_corpus(self):
        for g in helpers.random_chordal_corpus(25, 2, 12, seed=127):
            assert precount(g).total == count_amos(g)


class TestDrawClique:
    def test_single_record_always_chosen(self):
        g = helpers.complete_graph(4)
        model = precount(g)
        rng = random.Random(0)
        for _ in range(20):
            assert draw_clique(model, g.key, rng).clique == (0, 1, 2, 3)

    def test_frequencies_match_weights(self):
        g = helpers.three_clique_chain()
        model = precount(g)
        rng = random.Random(99)
        draws = 54000
        counts = Counter(
            draw_clique(model, g.key, rng).clique for _ in range(draws)
        )
        for record in model.entries[g.key].records:
            p = record.weight / model.total
            sigma = (p * (1 - p) / draws) ** 0.5
            assert abs(counts[record.clique] / draws - p) < 5 * sigma

    def test_missing_key(self):
        model = precount(helpers.path_graph(3))
        with pytest.raises(KeyError):
            draw_clique(model, (41, 42), random.Random(0))


class TestDrawPerm:
    def test_two_vertex_forced(self):
        rng = random.Random(1)
        for _ in range(10):
            assert draw_perm(("a", "b"), [("a",)], rng) == ("b", "a")

    def test_unconstrained_uniform(self):
        rng = random.Random(2)
        draws = 6000
        counts = Counter(draw_perm((1, 2, 3), [], rng) for _ in range(draws))
        assert set(counts) == set(itertools.permutations((1, 2, 3)))
        for perm in counts:
            assert abs(counts[perm] / draws - 1 / 6) < 0.05

    def test_worked_chain_uniform_over_16(self):
        admissible = {
            perm
            for perm in itertools.permutations((2, 3, 4, 5))
            if set(perm[:2]) != {2, 3} and set(perm[:3]) != {2, 3, 5}
        }
        assert len(admissible) == 16
        assert (3, 5, 4, 2) in admissible
        rng = random.Random(3)
        draws = 16000
        counts = Counter(
            draw_perm((2, 3, 4, 5), [(2, 3), (2, 3, 5)], rng) for _ in range(draws)
        )
        assert set(counts) == admissible
        p = 1 / 16
        sigma = (p * (1 - p) / draws) ** 0.5
        for perm in admissible:
            assert abs(counts[perm] / draws - p) < 5 * sigma

    def test_never_emits_forbidden_prefix(self):
        rng = random.Random(4)
        chain = [(0, 1), (0, 1, 2)]
        for _ in range(500):
            perm = draw_perm((0, 1, 2, 3), chain, rng)
            assert set(perm[:2]) != {0, 1}
            assert set(perm[:3]) != {0, 1, 2}

    def test_invalid_chain(self):
        with pytest.raises(ChainNotNestedError):
            draw_perm((0, 1, 2, 3), [(0, 1), (2, 3)], random.Random(0))


class TestSampleAmo:
    def test_two_vertex_coin_flip(self):
        g = helpers.path_graph(2)
        model = precount(g)
        rng = random.Random(5)
        counts = Counter(
            sample_amo(g, model, rng).dag.edge_set() for _ in range(4000)
        )
        assert set(counts) == {frozenset({(0, 1)}), frozenset({(1, 0)})}
        assert abs(counts[frozenset({(0, 1)})] / 4000 - 0.5) < 0.05

    def test_path3_three_orientations(self):
        g = helpers.path_graph(3)
        model = precount(g)
        rng = random.Random(6)
        counts = Counter(
            sample_amo(g, model, rng).dag.edge_set() for _ in range(9000)
        )
        assert len(counts) == 3
        for c in counts.values():
            assert abs(c / 9000 - 1 / 3) < 0.03

    def test_samples_are_valid_orientations(self):
        rng = random.Random(7)
        for g in helpers.random_chordal_corpus(15, 2, 12, seed=131):
            model = precount(g)
            for _ in range(20):
                res = sample_amo(g, model, rng)
                assert sorted(res.tau) == list(range(g.n))
                assert res.dag.skeleton() == frozenset(g.edges())
                assert v_structures(res.dag) == set()

    def test_statistical_uniformity_54(self):
        g = helpers.three_clique_chain()
        expected = {d.edge_set() for d in enumerate_amos(g)}
        assert len(expected) == 54
        model = precount(g)
        rng = random.Random(20210)
        draws = 54000
        counts = Counter(
            sample_amo(g, model, rng).dag.edge_set() for _ in range(draws)
        )
        assert set(counts) == expected
        mean = draws / 54
        chi2 = sum((c - mean) ** 2 / mean for c in counts.values())
        assert chi2 < CHI2_999_53

    def test_exact_uniformity_symbolic(self):
        for g in helpers.random_chordal_corpus(10, 2, 6, seed=137):
            model = precount(g)
            dist = helpers.exact_sampler_distribution(g, model)
            total = count_amos(g)
            assert len(dist) == total
            assert all(p == Fraction(1, total) for p in dist.values())
            assert dist.keys() == {d.edge_set() for d in enumerate_amos(g)}

    def test_deterministic_under_seed(self):
        g = helpers.three_clique_chain()
        model = precount(g)
        runs = []
        for _ in range(2):
            rng = random.Random(424242)
            runs.append([sample_amo(g, model, rng).tau for _ in range(50)])
        assert runs[0] == runs[1]

    def test_model_mismatch(self):
        model = precount(helpers.path_graph(3))
        with pytest.raises(ModelMismatchError):
            sample_amo(helpers.complete_graph(3), model, random.Random(0))


class TestSampleCpdag:
    def test_fully_directed_is_returned_as_is(self):
        pg = PartialGraph.from_edges(3, [], [(0, 1), (2, 1)])
        models = precount_cpdag(pg)
        dag = sample_cpdag(pg, models, random.Random(0))
        assert dag.edge_set() == {(0, 1), (2, 1)}

    def test_directed_edges_kept_undirected_oriented(self):
        pg = PartialGraph.from_edges(4, [(2, 3)], [(0, 1)])
        models = precount_cpdag(pg)
        rng = random.Random(8)
        seen = Counter()
        for _ in range(2000):
            dag = sample_cpdag(pg, models, rng)
            assert (0, 1) in dag.edge_set()
            seen[dag.edge_set()] += 1
        assert len(seen) == 2
        for c in seen.values():
            assert abs(c / 2000 - 0.5) < 0.06

    def test_two_triangles_36_equally_likely(self):
        pg = PartialGraph.from_edges(
            6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
        )
        models = precount_cpdag(pg)
        rng = random.Random(9)
        draws = 36000
        counts = Counter(
            sample_cpdag(pg, models, rng).edge_set() for _ in range(draws)
        )
        assert len(counts) == 36
        mean = draws / 36
        chi2 = sum((c - mean) ** 2 / mean for c in counts.values())
        assert chi2 < CHI2_999_35

    def test_v_structures_preserved(self):
        # 0 -> 2 <- 1 collider plus a free undirected leg 3 - 4
        pg = PartialGraph.from_edges(5, [(3, 4)], [(0, 2), (1, 2)])
        comps = undirected_components(pg)
        models = [precount(c) for c in comps]
        rng = random.Random(10)
        adjacency = [set(a) | set(b) for a, b in zip(pg.undirected, pg.directed_out)]
        for u in range(pg.n):
            for v in adjacency[u].copy():
                adjacency[v].add(u)
        for _ in range(50):
            dag = sample_cpdag(pg, models, rng, _components=comps)
            assert v_structures(dag, adjacency) == {(0, 2, 1)}

    def test_model_component_mismatch(self):
        pg = PartialGraph.from_edges(3, [(0, 1), (1, 2)])
        other = PartialGraph.from_edges(3, [(0, 1)])
        with pytest.raises(ModelMismatchError):
            sample_cpdag(pg, precount_cpdag(other), random.Random(0))
