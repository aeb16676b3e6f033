"""Local geometry of the flip complex.

Edges are single flips; two flips span a square cell when their arcs share
no triangle and a pentagon when they do.  Every vertex has infinitely many
neighbours, so balls, distances and links are always taken relative to a
region; a distance is certified EXACT when the search length meets the
arc-difference lower bound, and REGION_EXACT otherwise.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from .dyadic import Arc, StdInterval
from .errors import RegionError, ValidationError
from .triangulation import (
    Region,
    RegionLike,
    Triangulation,
    arc_difference,
    arcs_in_region,
    face_sides,
    faces_inside,
    faces_of_arc,
    flip,
    flip_arc_between,
    require_region,
)


def arcs_adjacent(v: Triangulation, e1: Arc, e2: Arc) -> bool:
    """True iff some triangle of v has both arcs on its boundary.

    Asking about a single arc twice is rejected: the cell dichotomy only
    concerns distinct flips.
    """
    if e1 == e2:
        raise ValidationError("arcs_adjacent needs two distinct arcs")
    f1, f2 = faces_of_arc(v, e1)
    return any(e2.p in f and e2.q in f for f in (f1, f2))


def neighbours(v: Triangulation, region: RegionLike) -> list[tuple[Arc, Triangulation]]:
    """Flips of every arc of v strictly inside the region, canonical order."""
    return [(arc, flip(v, arc)) for arc in arcs_in_region(v, region)]


class CellKind(enum.Enum):
    SQUARE = "square"
    PENTAGON = "pentagon"


@dataclass(frozen=True)
class Cell:
    """The unique two-cell through a path u - v - w of two distinct flips."""

    kind: CellKind
    base: Triangulation
    arcs: tuple[Arc, Arc]
    boundary: tuple[Triangulation, ...]

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "boundary": [t.to_json() for t in self.boundary],
        }


def cell_through(u: Triangulation, v: Triangulation, w: Triangulation) -> Cell:
    """The square or pentagon containing the path u - v - w.

    The boundary starts at v and runs v, u, ..., w back to v.
    """
    if u == w:
        raise ValidationError("cell_through needs distinct outer vertices")
    e1 = flip_arc_between(v, u)
    e2 = flip_arc_between(v, w)
    if arcs_adjacent(v, e1, e2):
        m1 = flip(u, e2)
        m2 = flip(w, e1)
        if arc_difference(m1, m2) != 1:
            raise ValidationError("pentagon boundary failed to close")
        return Cell(CellKind.PENTAGON, v, (e1, e2), (v, u, m1, m2, w))
    m = flip(u, e2)
    if m != flip(w, e1):
        raise ValidationError("square boundary failed to close")
    return Cell(CellKind.SQUARE, v, (e1, e2), (v, u, m, w))


class DistanceFlag(enum.Enum):
    EXACT = "EXACT"
    REGION_EXACT = "REGION-EXACT"


def ball(v: Triangulation, r: int, region: RegionLike) -> dict[Triangulation, int]:
    """Vertices within r region-restricted flips of v, with their distances."""
    if r < 0:
        raise ValidationError("radius must be non-negative")
    dist, _ = ball_with_parents(v, r, region)
    return dist


def ball_with_parents(
    v: Triangulation, r: int, region: RegionLike
) -> tuple[dict[Triangulation, int], dict[Triangulation, Triangulation]]:
    polys = require_region(region, v)
    dist = {v: 0}
    parent: dict[Triangulation, Triangulation] = {}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        if dist[x] == r:
            continue
        for _, y in neighbours(x, polys):
            if y not in dist:
                dist[y] = dist[x] + 1
                parent[y] = x
                queue.append(y)
    return dist, parent


def distance(
    v: Triangulation, w: Triangulation, region: RegionLike
) -> tuple[int, DistanceFlag]:
    """Length of a shortest region-restricted flip path from v to w.

    The value is an upper bound for the true distance in the full complex;
    the flag records whether it meets the arc-difference lower bound.
    """
    polys = require_region(region, v)
    require_region(polys, w)
    lower = arc_difference(v, w)
    dist = {v: 0}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        if x == w:
            d = dist[x]
            flag = DistanceFlag.EXACT if d == lower else DistanceFlag.REGION_EXACT
            return d, flag
        for _, y in neighbours(x, polys):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    raise RegionError("vertices are not connected inside the region")


@dataclass(frozen=True)
class LinkGraph:
    """The restricted link of a vertex.

    Arc-vertices stand for the flips of the arcs of v inside the region;
    triangles are the faces of v all of whose sides lie strictly inside, as
    counterclockwise-oriented triples.  Arcs of faces that touch the region
    boundary carry incomplete data and are flagged as frontier.
    """

    vertex: Triangulation
    arcs: tuple[Arc, ...]
    triangles: tuple[tuple[Arc, Arc, Arc], ...]
    frontier: frozenset[Arc]

    def triangles_of(self, arc: Arc) -> list[tuple[Arc, Arc, Arc]]:
        return [t for t in self.triangles if arc in t]

    def edges(self) -> set[frozenset[Arc]]:
        out: set[frozenset[Arc]] = set()
        for t in self.triangles:
            for i in range(3):
                out.add(frozenset((t[i], t[(i + 1) % 3])))
        return out

    def to_json(self) -> dict:
        index = {a: i for i, a in enumerate(self.arcs)}
        return {
            "vertex": self.vertex.to_json(),
            "arcs": [[str(a.p), str(a.q)] for a in self.arcs],
            "frontier": sorted(index[a] for a in self.frontier),
            "triangles": [[index[a] for a in t] for t in self.triangles],
        }


def _oriented_triple(sides: tuple[Arc, Arc, Arc]) -> tuple[Arc, Arc, Arc]:
    """Rotate a cyclic triple so the smallest arc comes first."""
    i = min(range(3), key=lambda k: sides[k].sort_key())
    return (sides[i], sides[(i + 1) % 3], sides[(i + 2) % 3])


def link(v: Triangulation, region: RegionLike) -> LinkGraph:
    """The link of v restricted to a region, with oriented triangles."""
    polys = require_region(region, v)
    arcs = arcs_in_region(v, polys)
    arc_set = set(arcs)
    triangles: list[tuple[Arc, Arc, Arc]] = []
    frontier: set[Arc] = set()
    for poly in polys:
        for face in faces_inside(v, poly):
            sides = face_sides(face)
            inner = [a for a in sides if a in arc_set]
            if len(inner) == 3:
                triangles.append(_oriented_triple(sides))
            else:
                frontier.update(inner)
    triangles.sort(key=lambda t: t[0].sort_key())
    return LinkGraph(v, tuple(arcs), tuple(triangles), frozenset(frontier))


def link_after_flip(
    v: Triangulation, arc: Arc, region: RegionLike
) -> tuple[LinkGraph, LinkGraph]:
    """Links of v and of flip(v, arc) over the same region.

    Only the two triangles containing the flipped arc change; they re-pair
    their outer vertices, and every other triangle is identical.
    """
    polys = require_region(region, v)
    before = link(v, polys)
    if arc not in before.arcs:
        raise RegionError(f"arc {arc} is not inside the region")
    after = link(flip(v, arc), polys)
    return before, after


def _disjoint_square_diagonals(count: int) -> list[StdInterval]:
    """Diagonals of ``count`` pairwise disjoint inscribed squares.

    The square over a tessellation arc is the quadrilateral formed by its two
    adjacent triangles; taking the arcs (2i, m) at one sufficiently deep
    level makes the squares pairwise disjoint.
    """
    m = 2
    while (1 << (m - 1)) < count:
        m += 1
    return [StdInterval(2 * i, m) for i in range(count)]


@dataclass(frozen=True)
class NonHypInstance:
    """The fellow-traveller configuration witnessing non-hyperbolicity.

    u, v, w are corners with d(u, v) = d(v, w) = n and d(u, w) = 2n; p sits
    on the u-w side and stays at least n away from both other sides.
    """

    n: int
    u: Triangulation
    v: Triangulation
    w: Triangulation
    p: Triangulation
    path_uv: tuple[Triangulation, ...]
    path_vw: tuple[Triangulation, ...]
    path_uw: tuple[Triangulation, ...]
    squares: tuple[StdInterval, ...]


def nonhyp_instance(n: int) -> NonHypInstance:
    """Geodesic triangle with linear thinness, built from 2n disjoint squares."""
    if n < 1:
        raise ValidationError("n must be positive")
    diags = _disjoint_square_diagonals(2 * n)
    arcs = [s.arc() for s in diags]

    def flip_seq(start: Triangulation, seq) -> tuple[Triangulation, ...]:
        path = [start]
        for a in seq:
            path.append(flip(path[-1], a))
        return tuple(path)

    path_uv = flip_seq(Triangulation.base(), arcs[:n])
    v = path_uv[-1]
    path_vw = flip_seq(v, arcs[n:])
    w = path_vw[-1]
    path_uw = flip_seq(Triangulation.base(), reversed(arcs))
    assert path_uw[-1] == w
    p = path_uw[n]
    return NonHypInstance(
        n,
        Triangulation.base(),
        v,
        w,
        p,
        path_uv,
        path_vw,
        path_uw,
        tuple(diags),
    )


def thinness_certificate(n: int) -> int:
    """Certified lower bound on the distance from p to the two near sides.

    Every flip changes one arc, so the arc difference bounds distance from
    below; the minimum over both legs grows linearly with n.
    """
    inst = nonhyp_instance(n)
    legs = list(inst.path_uv) + list(inst.path_vw)
    return min(arc_difference(inst.p, x) for x in legs)
