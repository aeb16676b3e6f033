import pytest

from flippant import oracle as oc
from flippant import pants, triangulation as tg
from flippant.oracle import RegionEmbedding
from flippant.errors import ValidationError
from flippant.triangulation import Triangulation

from conftest import standard_polygon

E = Triangulation.base()


class TestEnumeration:
    @pytest.mark.parametrize("n, count", [(4, 2), (5, 5), (6, 14), (7, 42), (8, 132)])
    def test_counts(self, n, count):
        ts = oc.enumerate_triangulations(n)
        assert len(ts) == count
        assert len(set(ts)) == count

    def test_deterministic_order(self):
        assert oc.enumerate_triangulations(5) == oc.enumerate_triangulations(5)

    def test_out_of_range(self):
        with pytest.raises(ValidationError):
            oc.enumerate_triangulations(13)

    def test_triangle_counts(self):
        for t in oc.enumerate_triangulations(6):
            assert len(t.triangles()) == 4  # n - 2


class TestFlipGraph:
    def test_pentagon_cycle(self):
        g = oc.flip_graph(5)
        assert len(g.vertices) == 5 and len(g.edges) == 5
        assert all(len(g.neighbours(t)) == 2 for t in g.vertices)

    def test_square_single_edge(self):
        g = oc.flip_graph(4)
        assert len(g.vertices) == 2 and len(g.edges) == 1

    def test_hexagon(self):
        g = oc.flip_graph(6)
        assert len(g.vertices) == 14 and len(g.edges) == 21

    @pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
    def test_regular_and_connected(self, n):
        g = oc.flip_graph(n)
        assert oc.is_connected(g)
        for t in g.vertices:
            assert len(t.diagonals) == n - 3

    def test_flip_is_involution(self):
        for t in oc.enumerate_triangulations(6):
            for d in t.diagonals:
                u = t.flip(d)
                back = next(iter(u.diagonals - t.diagonals))
                assert u.flip(back) == t


class TestDistance:
    def test_identical(self):
        t = oc.enumerate_triangulations(5)[0]
        assert oc.oracle_distance(t, t) == 0

    def test_pentagon_antipodal(self):
        g = oc.flip_graph(5)
        t0 = g.vertices[0]
        dists = sorted(oc.oracle_distance(t0, t) for t in g.vertices)
        assert dists == [0, 1, 1, 2, 2]

    def test_hexagon_diameter(self):
        g = oc.flip_graph(6)
        assert max(
            oc.oracle_distance(a, b) for a in g.vertices for b in g.vertices
        ) == 4

    def test_size_mismatch(self):
        with pytest.raises(ValidationError):
            oc.oracle_distance(
                oc.enumerate_triangulations(5)[0], oc.enumerate_triangulations(6)[0]
            )


class TestSimpleConnectivitySpotCheck:
    @pytest.mark.parametrize("k", [5, 6])
    def test_cell_boundaries_span_cycle_space(self, k):
        """Square and pentagon boundary cycles generate every cycle."""
        poly = standard_polygon(k)
        emb = RegionEmbedding(poly)
        graph = oc.flip_graph(k)
        index = {t: i for i, t in enumerate(graph.vertices)}
        all_edges = sorted(
            (frozenset(tuple(sorted(index[t] for t in e))) for e in graph.edges),
            key=sorted,
        )
        cells = set()
        closure = pants.ball(E, 10 ** 6, poly)
        for v in closure:
            arcs = tg.arcs_in_region(v, poly)
            for i, e1 in enumerate(arcs):
                for e2 in arcs[i + 1 :]:
                    cell = pants.cell_through(tg.flip(v, e1), v, tg.flip(v, e2))
                    cells.add(frozenset(emb.to_oracle(x) for x in cell.boundary))
        cycles = []
        for cell_vertices in cells:
            idx = [index[t] for t in cell_vertices]
            boundary_edges = {
                frozenset(e)
                for e in graph.edge_index_list()
                if e[0] in idx and e[1] in idx
            }
            cycles.append(boundary_edges)
        rank = oc.span_rank_gf2(cycles, all_edges)
        assert rank == len(graph.edges) - len(graph.vertices) + 1


class TestEmbedding:
    def test_base_maps_to_specific_triangulation(self):
        poly = standard_polygon(6)
        emb = RegionEmbedding(poly)
        t = emb.to_oracle(E)
        assert len(t.diagonals) == 3
        assert emb.from_oracle(t) == E

    def test_flip_commutes_exhaustively_hexagon(self):
        poly = standard_polygon(6)
        emb = RegionEmbedding(poly)
        closure = pants.ball(E, 10 ** 6, poly)
        assert len(closure) == oc.catalan(4) == 14
        for v in closure:
            tv = emb.to_oracle(v)
            assert emb.from_oracle(tv) == v
            for a in tg.arcs_in_region(v, poly):
                i, j = sorted((emb._index[a.p], emb._index[a.q]))
                assert emb.to_oracle(tg.flip(v, a)) == tv.flip((i, j))

    @pytest.mark.parametrize("k", [4, 5, 6, 7])
    def test_vertex_counts_agree(self, k):
        poly = standard_polygon(k)
        closure = pants.ball(E, 10 ** 6, poly)
        assert len(closure) == oc.catalan(k - 2)
