"""Brute-force ground truth: the flip graph of convex polygon triangulations.

This module is deliberately independent of the rest of the package: vertices
are integer indices 0..n-1, diagonals are index pairs, and the flip routine
is written from scratch.  Cross-checking the region-restricted flip complex
against this graph is what makes the main implementation trustworthy.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import ValidationError

Diagonal = tuple[int, int]


@dataclass(frozen=True)
class PolyTriangulation:
    """A triangulation of the convex n-gon: n - 3 non-crossing diagonals."""

    n: int
    diagonals: frozenset[Diagonal]

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ValidationError("polygon needs at least 3 vertices")
        if len(self.diagonals) != self.n - 3:
            raise ValidationError(f"expected {self.n - 3} diagonals")
        for d in self.diagonals:
            if not _is_diagonal(self.n, d):
                raise ValidationError(f"{d} is not a diagonal of the {self.n}-gon")
        for d, e in combinations(self.diagonals, 2):
            if _index_cross(d, e):
                raise ValidationError(f"diagonals {d} and {e} cross")

    def triangles(self) -> list[tuple[int, int, int]]:
        edges = set(self.diagonals) | set(_polygon_sides(self.n))
        nbr: dict[int, set[int]] = {i: set() for i in range(self.n)}
        for a, b in edges:
            nbr[a].add(b)
            nbr[b].add(a)
        out = set()
        for a, b in edges:
            for c in nbr[a] & nbr[b]:
                out.add(tuple(sorted((a, b, c))))
        return sorted(out)

    def flip(self, diag: Diagonal) -> PolyTriangulation:
        diag = _norm(diag)
        if diag not in self.diagonals:
            raise ValidationError(f"{diag} is not a diagonal of this triangulation")
        wings = [t for t in self.triangles() if diag[0] in t and diag[1] in t]
        assert len(wings) == 2
        apexes = [next(v for v in t if v not in diag) for t in wings]
        new = _norm((apexes[0], apexes[1]))
        return PolyTriangulation(self.n, self.diagonals - {diag} | {new})

    def to_json(self) -> list[list[int]]:
        return [list(d) for d in sorted(self.diagonals)]

    def sort_key(self):
        return tuple(sorted(self.diagonals))


def _norm(d: Diagonal) -> Diagonal:
    a, b = d
    return (a, b) if a < b else (b, a)


def _polygon_sides(n: int) -> list[Diagonal]:
    return [_norm((i, (i + 1) % n)) for i in range(n)]


def _is_diagonal(n: int, d: Diagonal) -> bool:
    a, b = d
    if not (0 <= a < b < n):
        return False
    return (b - a) % n not in (0, 1) and (a - b) % n != 1


def _index_cross(d: Diagonal, e: Diagonal) -> bool:
    a, b = d
    c, f = e
    if len({a, b, c, f}) < 4:
        return False
    return (a < c < b) != (a < f < b)


def enumerate_triangulations(n: int) -> list[PolyTriangulation]:
    """All triangulations of the convex n-gon, deterministic order."""
    if not 3 <= n <= 12:
        raise ValidationError("oracle enumeration supports 3 <= n <= 12")
    return [
        PolyTriangulation(n, frozenset(diags))
        for diags in sorted(_enumerate_span(n, tuple(range(n))))
    ]


@lru_cache(maxsize=None)
def _enumerate_span(n: int, verts: tuple[int, ...]) -> frozenset[frozenset[Diagonal]]:
    """Triangulations of the sub-polygon on ``verts`` by ear recursion.

    The edge (verts[0], verts[-1]) is completed to a triangle by every
    possible apex; memoisation keyed on the vertex tuple keeps this cheap.
    """
    if len(verts) < 3:
        return frozenset([frozenset()])
    lo, hi = verts[0], verts[-1]
    out = set()
    for idx in range(1, len(verts) - 1):
        apex = verts[idx]
        new = {
            _norm((lo, apex)) if not _is_side(n, lo, apex) else None,
            _norm((apex, hi)) if not _is_side(n, apex, hi) else None,
        } - {None}
        for left in _enumerate_span(n, verts[: idx + 1]):
            for right in _enumerate_span(n, verts[idx:]):
                out.add(frozenset(new) | left | right)
    return frozenset(out)


def _is_side(n: int, a: int, b: int) -> bool:
    return (a - b) % n in (1, n - 1)


@dataclass(frozen=True)
class OracleGraph:
    """The flip graph of the convex n-gon: Catalan(n-2) vertices, (n-3)-regular."""

    n: int
    vertices: tuple[PolyTriangulation, ...]
    edges: frozenset[frozenset[PolyTriangulation]]

    def neighbours(self, t: PolyTriangulation) -> list[PolyTriangulation]:
        return sorted(
            (t.flip(d) for d in t.diagonals),
            key=PolyTriangulation.sort_key,
        )

    def edge_index_list(self) -> list[tuple[int, int]]:
        index = {t: i for i, t in enumerate(self.vertices)}
        out = sorted(tuple(sorted(index[t] for t in e)) for e in self.edges)
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "vertices": [t.to_json() for t in self.vertices],
            "edges": [list(e) for e in self.edge_index_list()],
        }


def flip_graph(n: int) -> OracleGraph:
    vertices = enumerate_triangulations(n)
    edges = set()
    for t in vertices:
        for d in t.diagonals:
            edges.add(frozenset((t, t.flip(d))))
    return OracleGraph(n, tuple(vertices), frozenset(edges))


def oracle_distance(t1: PolyTriangulation, t2: PolyTriangulation) -> int:
    """Rotation distance by breadth-first search."""
    if t1.n != t2.n:
        raise ValidationError("triangulations live on different polygons")
    if t1 == t2:
        return 0
    dist = {t1: 0}
    queue = deque([t1])
    while queue:
        x = queue.popleft()
        for d in sorted(x.diagonals):
            y = x.flip(d)
            if y not in dist:
                dist[y] = dist[x] + 1
                if y == t2:
                    return dist[y]
                queue.append(y)
    raise ValidationError("flip graph is not connected (impossible)")


def is_connected(graph: OracleGraph) -> bool:
    if not graph.vertices:
        return True
    seen = {graph.vertices[0]}
    queue = deque([graph.vertices[0]])
    while queue:
        x = queue.popleft()
        for y in graph.neighbours(x):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen) == len(graph.vertices)


def catalan(k: int) -> int:
    out = 1
    for i in range(k):
        out = out * 2 * (2 * i + 1) // (i + 2)
    return out


def cycle_space_rank(graph: OracleGraph) -> int:
    """E - V + C for the flip graph (C = 1 when connected)."""
    comps = 1 if is_connected(graph) else _component_count(graph)
    return len(graph.edges) - len(graph.vertices) + comps


def _component_count(graph: OracleGraph) -> int:
    seen: set[PolyTriangulation] = set()
    comps = 0
    for start in graph.vertices:
        if start in seen:
            continue
        comps += 1
        queue = deque([start])
        seen.add(start)
        while queue:
            x = queue.popleft()
            for y in graph.neighbours(x):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return comps


def span_rank_gf2(edge_sets: list[set[frozenset]], all_edges: list[frozenset]) -> int:
    """Rank over GF(2) of cycle vectors given as edge sets."""
    index = {e: i for i, e in enumerate(all_edges)}
    basis: list[int] = []
    for cyc in edge_sets:
        vec = 0
        for e in cyc:
            vec |= 1 << index[e]
        for b in basis:
            vec = min(vec, vec ^ b)
        if vec:
            basis.append(vec)
            basis.sort(reverse=True)
    return len(basis)


class RegionEmbedding:
    """Bijection between vertices supported in a polygon region and oracle
    triangulations of the abstract k-gon.

    Circle vertices map to their index in increasing circle order; the
    correspondence sends arcs to diagonals and commutes with flips, which is
    exactly what the equivalence tests exercise.
    """

    def __init__(self, poly) -> None:
        self.poly = poly
        self.n = len(poly.vertices)
        self._index = {p: i for i, p in enumerate(poly.vertices)}
        self._points = list(poly.vertices)

    def to_oracle(self, v) -> PolyTriangulation:
        from .triangulation import arcs_in_region

        diags = frozenset(
            _norm((self._index[a.p], self._index[a.q]))
            for a in arcs_in_region(v, self.poly)
        )
        return PolyTriangulation(self.n, diags)

    def from_oracle(self, t: PolyTriangulation):
        from .dyadic import Arc
        from .triangulation import Triangulation

        arcs = {
            Arc.of(self._points[i], self._points[j]) for i, j in t.diagonals
        }
        removed = []
        added = []
        for arc, s in self.poly.interior_e_arcs().items():
            if arc not in arcs:
                removed.append(s)
        for arc in arcs:
            if arc.std_interval() is None:
                added.append(arc)
        return Triangulation.create(removed, added)
