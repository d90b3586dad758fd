import itertools
import random
from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.stats import chisquare

from zkauth.errors import (
    BadParameters,
    CoverageMismatch,
    DecodeError,
    DuplicateIndex,
    IndexOutOfRange,
    SizeMismatch,
    TooSmall,
)
from zkauth.graphs import (
    Coloring,
    Graph,
    Permutation,
    apply_permutation,
    compose,
    decode_indices,
    embed_into_larger,
    encode_indices,
    even_partition,
    generate_k_colorable_graph,
    induced_subgraph,
    invert,
    is_valid_coloring,
    random_graph,
    random_permutation,
)

from conftest import graph_and_perms, graphs

CYCLE3 = Permutation((1, 2, 0))


def edge_set(g):
    return {frozenset(e) for e in g.edges()}


class TestGraphValue:
    def test_rejects_asymmetric(self):
        with pytest.raises(BadParameters):
            Graph([[0, 1], [0, 0]])

    def test_rejects_self_loop(self):
        with pytest.raises(BadParameters):
            Graph([[1, 0], [0, 0]])

    def test_rejects_non_binary_and_empty(self):
        with pytest.raises(BadParameters):
            Graph([[0, 2], [2, 0]])
        with pytest.raises(BadParameters):
            Graph(np.zeros((0, 0)))

    def test_adjacency_is_read_only(self):
        g = Graph.path(3)
        with pytest.raises(ValueError):
            g.adj[0, 1] = 0

    def test_encoding_layout(self):
        # path 0-1-2: upper triangle (01, 02, 12) = 1, 0, 1 -> 0b10100000
        assert Graph.path(3).to_bytes() == bytes([0, 0, 0, 3, 0b10100000])
        assert Graph.empty(1).to_bytes() == bytes([0, 0, 0, 1])

    @given(graphs(max_n=20))
    def test_encoding_round_trip(self, g):
        assert Graph.from_bytes(g.to_bytes()) == g

    def test_encoding_size_is_quadratic(self):
        for n in (8, 16, 64):
            assert len(Graph.empty(n).to_bytes()) == 4 + (n * (n - 1) // 2 + 7) // 8

    def test_decode_rejects_bad_lengths_and_padding(self):
        good = Graph.path(3).to_bytes()
        with pytest.raises(DecodeError):
            Graph.from_bytes(good[:-1])
        with pytest.raises(DecodeError):
            Graph.from_bytes(good + b"\x00")
        with pytest.raises(DecodeError):
            Graph.from_bytes(good[:-1] + bytes([0b10100001]))
        with pytest.raises(DecodeError):
            Graph.from_bytes(bytes(4))


class TestApplyPermutation:
    def test_complete_graph_is_fixed(self):
        for p in itertools.permutations(range(3)):
            assert apply_permutation(Graph.complete(3), Permutation(p)) == Graph.complete(3)

    def test_path_swap_ends(self):
        assert apply_permutation(Graph.path(3), Permutation.swap(3, 0, 2)) == Graph.path(3)

    def test_cycle_relabels_path(self):
        assert edge_set(apply_permutation(Graph.path(3), CYCLE3)) == {frozenset({1, 2}), frozenset({2, 0})}

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            apply_permutation(Graph.path(3), Permutation.identity(4))

    @given(graph_and_perms(count=1))
    def test_defining_equation(self, gp):
        g, p = gp
        h = apply_permutation(g, p)
        for i in range(g.n):
            for j in range(g.n):
                assert h.adj[p[i], p[j]] == g.adj[i, j]

    @given(graph_and_perms(count=2))
    def test_group_action(self, gab):
        g, a, b = gab
        assert apply_permutation(g, compose(a, b)) == apply_permutation(apply_permutation(g, b), a)

    @given(graph_and_perms(count=1))
    def test_preserves_invariants(self, gp):
        g, p = gp
        h = apply_permutation(g, p)
        assert h.edge_count() == g.edge_count()
        assert sorted(h.degrees()) == sorted(g.degrees())


class TestPermutations:
    def test_compose_worked_example(self):
        assert compose(Permutation.swap(3, 0, 1), Permutation.swap(3, 1, 2)).map == (1, 2, 0)

    def test_invert_examples(self):
        assert invert(Permutation.identity(4)).is_identity()
        assert invert(Permutation.swap(3, 0, 2)) == Permutation.swap(3, 0, 2)
        assert invert(CYCLE3).map == (2, 0, 1)

    @given(st.integers(1, 12).flatmap(lambda n: st.tuples(st.permutations(range(n)), st.permutations(range(n)))))
    def test_compose_rules(self, pq):
        p, q = Permutation(tuple(pq[0])), Permutation(tuple(pq[1]))
        ident = Permutation.identity(len(p))
        assert compose(p, ident) == p == compose(ident, p)
        assert compose(p, invert(p)) == ident == compose(invert(p), p)
        assert all(compose(p, q)[i] == p[q[i]] for i in range(len(p)))

    def test_compose_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            compose(Permutation.identity(2), Permutation.identity(3))

    def test_validation(self):
        with pytest.raises(BadParameters):
            Permutation((0, 0))
        with pytest.raises(BadParameters):
            Permutation((1, 2))
        with pytest.raises(BadParameters):
            Permutation(())

    def test_byte_round_trip_and_rejects(self):
        p = Permutation((2, 0, 1))
        assert p.to_bytes() == bytes([0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 1])
        assert Permutation.from_bytes(p.to_bytes()) == p
        for bad in (b"\x00\x00\x00", bytes(8), bytes([0, 0, 0, 5])):
            with pytest.raises(DecodeError):
                Permutation.from_bytes(bad)

    def test_random_permutation_n1(self, rng):
        assert random_permutation(1, rng).is_identity()

    def test_random_permutation_seeded(self):
        assert random_permutation(9, random.Random(5)) == random_permutation(9, random.Random(5))

    def test_random_permutation_uniform_on_s3(self):
        rng = random.Random(77)
        counts = Counter(random_permutation(3, rng).map for _ in range(6000))
        observed = [counts[p] for p in itertools.permutations(range(3))]
        assert sum(observed) == 6000
        assert chisquare(observed).pvalue > 0.01


class TestColorings:
    def test_examples(self):
        k3 = Graph.complete(3)
        assert is_valid_coloring(k3, Coloring(3, (1, 2, 3)))
        assert not is_valid_coloring(k3, Coloring(3, (1, 1, 2)))
        assert is_valid_coloring(Graph.empty(4), Coloring(1, (1, 1, 1, 1)))

    def test_colors_out_of_range(self):
        assert not is_valid_coloring(Graph.empty(2), Coloring(2, (1, 3)))
        assert not is_valid_coloring(Graph.empty(2), Coloring(2, (0, 1)))

    def test_coverage_mismatch(self):
        with pytest.raises(CoverageMismatch):
            is_valid_coloring(Graph.complete(3), Coloring(3, (1, 2)))
        with pytest.raises(CoverageMismatch):
            Coloring.from_pairs(2, [(0, 1), (0, 2)], 2)
        with pytest.raises(CoverageMismatch):
            Coloring.from_pairs(2, [(0, 1)], 2)

    def test_pairs_encoding(self):
        col = Coloring(3, (2, 1))
        assert col.to_bytes() == bytes([0, 0, 0, 0, 0, 2, 0, 0, 0, 1, 0, 1])
        assert Coloring.from_bytes(col.to_bytes(), 3) == col
        shuffled = col.to_bytes()[6:] + col.to_bytes()[:6]
        assert Coloring.from_bytes(shuffled, 3) == col
        with pytest.raises(DecodeError):
            Coloring.from_bytes(col.to_bytes()[:-1], 3)
        with pytest.raises(DecodeError):
            Coloring.from_bytes(col.to_bytes()[:6] * 2, 3)

    @given(st.data())
    def test_validity_is_isomorphism_invariant(self, data):
        n = data.draw(st.integers(1, 9))
        k = data.draw(st.integers(1, n))
        g, col = generate_k_colorable_graph(n, k, random.Random(data.draw(st.integers(0, 2**32))))
        p = Permutation(tuple(data.draw(st.permutations(range(n)))))
        bad = Coloring(k, tuple(data.draw(st.lists(st.integers(1, k), min_size=n, max_size=n))))
        for c in (col, bad):
            assert is_valid_coloring(apply_permutation(g, p), c.pushforward(p)) == is_valid_coloring(g, c)
            assert c.pushforward(p).pullback(p) == c

    def test_canonical_renames_by_first_appearance(self):
        assert Coloring(3, (3, 1, 3, 2)).canonical().colors == (1, 2, 1, 3)


class TestKeyGeneration:
    def test_even_partition(self):
        assert even_partition(7, 3) == [3, 2, 2]
        with pytest.raises(BadParameters):
            even_partition(2, 3)
        with pytest.raises(BadParameters):
            even_partition(2, 0)

    def test_singleton_classes(self, rng):
        for _ in range(20):
            g, col = generate_k_colorable_graph(3, 3, rng)
            assert sorted(col.colors) == [1, 2, 3]
            assert is_valid_coloring(g, col)

    def test_single_class_is_edgeless(self, rng):
        g, col = generate_k_colorable_graph(5, 1, rng)
        assert g == Graph.empty(5)
        assert col.colors == (1,) * 5

    @given(st.integers(1, 16).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n), st.integers(0, 2**32))))
    def test_planted_coloring_valid(self, args):
        n, k, seed = args
        g, col = generate_k_colorable_graph(n, k, random.Random(seed))
        assert is_valid_coloring(g, col)
        assert sorted(Counter(col.colors).values()) == sorted(even_partition(n, k))

    def test_explicit_partition(self, rng):
        g, col = generate_k_colorable_graph(6, 2, rng, partition=[5, 1])
        assert sorted(Counter(col.colors).values()) == [1, 5]
        with pytest.raises(BadParameters):
            generate_k_colorable_graph(6, 2, rng, partition=[6, 0])

    def test_bad_k(self, rng):
        with pytest.raises(BadParameters):
            generate_k_colorable_graph(3, 4, rng)
        with pytest.raises(BadParameters):
            generate_k_colorable_graph(3, 0, rng)

    def test_classes_are_not_contiguous(self):
        # without relabeling, colors would always read 1,1,..,2,2,..
        rng = random.Random(3)
        sorted_runs = sum(
            list(col.colors) == sorted(col.colors)
            for col in (generate_k_colorable_graph(12, 3, rng)[1] for _ in range(50))
        )
        assert sorted_runs < 5

    def test_cross_edge_density_is_half(self):
        rng = random.Random(8)
        edges = cross = 0
        for _ in range(200):
            g, col = generate_k_colorable_graph(12, 3, rng)
            for i, j in itertools.combinations(range(12), 2):
                if col.colors[i] != col.colors[j]:
                    cross += 1
                    edges += int(g.adj[i, j])
        assert abs(edges / cross - 0.5) < 0.02

    def test_random_graph_density(self):
        g = random_graph(200, random.Random(1), 0.25)
        assert abs(g.edge_count() / (200 * 199 / 2) - 0.25) < 0.02
        assert random_graph(5, random.Random(1), 0.0) == Graph.empty(5)
        assert random_graph(5, random.Random(1), 1.0) == Graph.complete(5)


class TestEmbedding:
    def test_induced_examples(self):
        g = random_graph(6, random.Random(2))
        assert induced_subgraph(g, range(6)) == g
        assert induced_subgraph(Graph.path(4), (0, 2)) == Graph.empty(2)
        host = Graph.from_edges(5, [(1, 3), (3, 4), (1, 4), (0, 1)])
        assert induced_subgraph(host, (1, 3, 4)) == Graph.complete(3)

    def test_induced_errors(self):
        with pytest.raises(IndexOutOfRange):
            induced_subgraph(Graph.path(3), (0, 3))
        with pytest.raises(DuplicateIndex):
            induced_subgraph(Graph.path(3), (1, 1))

    @given(graphs(max_n=8), st.integers(0, 8), st.integers(0, 2**32))
    def test_embedding_round_trip(self, g, extra, seed):
        host, emb = embed_into_larger(g, g.n + extra, random.Random(seed))
        assert host.n == g.n + extra
        assert induced_subgraph(host, emb) == g

    def test_same_size_host_is_isomorphic_copy(self, rng):
        g = random_graph(7, rng)
        host, emb = embed_into_larger(g, 7, rng)
        assert sorted(emb) == list(range(7))
        assert apply_permutation(g, Permutation(emb)) == host

    def test_triangle_found_by_exhaustive_scan(self, rng):
        host, emb = embed_into_larger(Graph.complete(3), 5, rng)
        hits = [t for t in itertools.permutations(range(5), 3) if induced_subgraph(host, t) == Graph.complete(3)]
        assert emb in hits

    def test_too_small(self, rng):
        with pytest.raises(TooSmall):
            embed_into_larger(Graph.path(4), 3, rng)

    def test_placement_is_uniform(self):
        rng = random.Random(11)
        counts = Counter(embed_into_larger(Graph.path(2), 3, rng)[1] for _ in range(6000))
        observed = [counts[t] for t in itertools.permutations(range(3), 2)]
        assert sum(observed) == 6000
        assert chisquare(observed).pvalue > 0.01

    def test_index_encoding(self):
        assert decode_indices(encode_indices((3, 0, 9))) == (3, 0, 9)
        with pytest.raises(DecodeError):
            decode_indices(b"\x00\x01")
