import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gfrframes import Graph, build_laplacian, generate_graph, generate_signal, graph_basis
from gfrframes.exceptions import DegenerateDegreeError, GraphError
from gfrframes.graph import GRAPH_KINDS


class TestGraphType:
    def test_edges_are_sorted_and_oriented(self):
        g = Graph(4, ((2, 1, 1.0), (0, 3, 2.0)))
        assert g.edges == ((0, 3, 2.0), (1, 2, 1.0))

    def test_adjacency_symmetric_zero_diagonal(self):
        g = generate_graph("random_ring", 30, seed=1)
        W = g.adjacency
        assert np.array_equal(W, W.T)
        assert np.all(np.diag(W) == 0)

    def test_adjacency_is_read_only(self):
        g = generate_graph("ring", 5)
        with pytest.raises(ValueError):
            g.adjacency[0, 1] = 3.0

    @pytest.mark.parametrize("edges", [
        ((0, 0, 1.0),),                 # self-loop
        ((0, 1, 1.0), (1, 0, 2.0)),     # duplicate
        ((0, 1, 0.0),),                 # zero weight
        ((0, 1, -1.0),),                # negative weight
        ((0, 5, 1.0),),                 # out of range
        ((0, 1, float("nan")),),
    ])
    def test_invalid_edges_rejected(self, edges):
        with pytest.raises(GraphError):
            Graph(3, edges)

    def test_zero_vertices_rejected(self):
        with pytest.raises(GraphError):
            Graph(0, ())

    def test_digest_depends_on_weights(self):
        a = Graph(3, ((0, 1, 1.0), (1, 2, 1.0)))
        b = Graph(3, ((0, 1, 1.0), (1, 2, 1.5)))
        assert a.digest != b.digest
        assert a.digest == Graph(3, ((1, 2, 1.0), (0, 1, 1.0))).digest


class TestLaplacian:
    def test_path2(self):
        L = build_laplacian(generate_graph("path", 2))
        assert np.array_equal(L, [[1, -1], [-1, 1]])

    def test_ring3(self):
        L = build_laplacian(generate_graph("ring", 3))
        assert np.array_equal(np.diag(L), [2, 2, 2])
        assert np.all(L[~np.eye(3, dtype=bool)] == -1)

    def test_random_graph_against_degree_sums(self):
        g = generate_graph("random_ring", 20, seed=7)
        L = build_laplacian(g)
        oracle = np.zeros((20, 20))
        for i, j, w in g.edges:
            oracle[i, j] -= w
            oracle[j, i] -= w
            oracle[i, i] += w
            oracle[j, j] += w
        assert np.allclose(L, oracle, atol=0, rtol=1e-15)

    def test_normalized_needs_positive_degrees(self):
        g = Graph(3, ((0, 1, 1.0),))
        build_laplacian(g)
        with pytest.raises(DegenerateDegreeError):
            build_laplacian(g, normalized=True)

    def test_normalized_is_symmetric_with_unit_diagonal(self):
        Ln = build_laplacian(generate_graph("sphere", 40, seed=2), normalized=True)
        assert np.array_equal(Ln, Ln.T)
        assert np.allclose(np.diag(Ln), 1.0)

    @pytest.mark.parametrize("kind", GRAPH_KINDS)
    def test_normalized_spectrum_in_0_2(self, kind):
        for n in (10, 512):
            lam = np.linalg.eigvalsh(build_laplacian(generate_graph(kind, n, seed=3), normalized=True))
            assert lam.min() >= -1e-9 and lam.max() <= 2 + 1e-9


class TestGenerateGraph:
    def test_path256(self):
        g = generate_graph("path", 256)
        assert g.n_edges == 255
        assert all(w == 1.0 and j == i + 1 for i, j, w in g.edges)

    def test_ring3_triangle(self):
        assert generate_graph("ring", 3).n_edges == 3

    @pytest.mark.parametrize("seed", range(10))
    def test_community20_connected(self, seed):
        assert generate_graph("community", 20, seed=seed).is_connected()

    @pytest.mark.parametrize("kind", ["random_ring", "sphere", "community", "swiss_roll"])
    def test_deterministic(self, kind):
        a = generate_graph(kind, 40, seed=5)
        b = generate_graph(kind, 40, seed=5)
        assert a.edges == b.edges
        assert np.array_equal(a.adjacency, b.adjacency)
        assert a.edges != generate_graph(kind, 40, seed=6).edges

    def test_random_ring_chord_weights(self):
        g = generate_graph("random_ring", 50, seed=0, n_chords=10)
        assert g.n_edges == 60
        assert all(0 < w <= 1 for _, _, w in g.edges)

    def test_community_is_clustered(self):
        g = generate_graph("community", 60, seed=0)
        labels = np.repeat(np.arange(3), 20)
        inside = sum(labels[i] == labels[j] for i, j, _ in g.edges)
        assert inside > 0.8 * g.n_edges

    def test_disconnected_draw_is_repaired(self):
        g = generate_graph("community", 30, seed=0, p_out=0.0)
        assert g.is_connected()

    @pytest.mark.parametrize("kind,n", [("path", 1), ("ring", 2), ("sphere", 2)])
    def test_too_small(self, kind, n):
        with pytest.raises(GraphError):
            generate_graph(kind, n, seed=0)

    def test_errors(self):
        with pytest.raises(GraphError):
            generate_graph("torus", 10)
        with pytest.raises(GraphError):
            generate_graph("sphere", 10)
        with pytest.raises(GraphError):
            generate_graph("sphere", 10, seed=0, knnn=4)

    @settings(max_examples=30, deadline=None)
    @given(kind=st.sampled_from(GRAPH_KINDS), n=st.integers(3, 60), seed=st.integers(0, 2**31))
    def test_generated_graph_invariants(self, kind, n, seed):
        g = generate_graph(kind, n, seed=seed)
        assert g.n == n and g.is_connected()
        W = g.adjacency
        assert np.array_equal(W, W.T)
        assert np.max(np.abs(build_laplacian(g).sum(axis=1))) <= 1e-12 * max(1.0, W.max() * n)


class TestGenerateSignal:
    def test_f7_zero(self):
        assert abs(generate_signal("f7_sine", 300)[149]) < 1e-12

    def test_f8_middle_piece(self):
        assert generate_signal("f8_piecewise", 300)[99] == pytest.approx(np.sin(70 * np.pi * 100 / 300))

    def test_f8_breakpoints(self):
        f = generate_signal("f8_piecewise", 300)
        assert f[89] == pytest.approx(np.sin(160 * np.pi * 90 / 300))
        assert f[170] == pytest.approx(np.sin(200 * np.pi * 171 / 300))

    def test_f9(self):
        assert generate_signal("f9_chirp", 300)[29] == pytest.approx(np.sin((30 * 30 + 180) * np.pi / 300))

    def test_eigvec_combination(self):
        b = graph_basis(generate_graph("ring", 12), 0.7)
        f = generate_signal("eigvec_combination", 12, basis=b, indices=[1, 4])
        assert np.allclose(f, np.real(b.gamma[:, 1] + b.gamma[:, 4]))
        with pytest.raises(GraphError):
            generate_signal("eigvec_combination", 12, basis=b, indices=[12])
        with pytest.raises(GraphError):
            generate_signal("eigvec_combination", 12)

    def test_custom(self):
        v = np.arange(5.0)
        assert np.array_equal(generate_signal("custom", 5, values=v), v)
        with pytest.raises(GraphError):
            generate_signal("custom", 4, values=v)
