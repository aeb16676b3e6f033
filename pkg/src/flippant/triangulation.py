"""Vertices of the flip complex: disk triangulations of finite support.

A vertex differs from the base tessellation in finitely many arcs and is
stored as that symmetric difference: the set of removed tessellation arcs
(as standard intervals) and the set of added chords.  The constructor
enforces every invariant of the definition, so instances are canonical and
compare structurally.

Regions of interest are ideal polygons inscribed on the tessellation; all
queries against the (locally infinite) complex are restricted to such a
region, or to a family of disjoint ones.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence, Union

from .dyadic import (
    Arc,
    CirclePoint,
    Dyadic,
    ETriangle,
    StdInterval,
    crossed_e_arcs,
    e_triangle_of_face,
)
from .errors import RegionError, TriangulationError, ValidationError
from .thompson import ExtElement, TElement

Face = tuple[CirclePoint, CirclePoint, CirclePoint]


@dataclass(frozen=True)
class Polygon:
    """An ideal polygon inscribed on the tessellation.

    Vertices are stored in increasing circle order; consecutive vertices
    (cyclically) must span tessellation arcs.
    """

    vertices: tuple[CirclePoint, ...]

    def __post_init__(self) -> None:
        pts = self.vertices
        if len(pts) < 3:
            raise ValidationError("polygon needs at least 3 vertices")
        if list(pts) != sorted(set(pts)):
            raise ValidationError("polygon vertices must be distinct and sorted")
        for arc in self.sides():
            if arc.std_interval() is None:
                raise ValidationError(f"polygon side {arc} is not a tessellation arc")

    @classmethod
    def of(cls, points: Iterable[CirclePoint]) -> Polygon:
        return cls(tuple(sorted(set(points))))

    @classmethod
    def level(cls, m: int) -> Polygon:
        """The full 2^m-gon on all dyadics of depth m."""
        if m < 2:
            raise ValidationError("level polygon needs m >= 2")
        return cls(tuple(CirclePoint(Dyadic(a, m)) for a in range(1 << m)))

    @classmethod
    def from_side_intervals(cls, sides: Iterable[StdInterval]) -> Polygon:
        pts: set[CirclePoint] = set()
        arcs = []
        for s in sides:
            arcs.append(s.arc())
            pts.update(s.arc().endpoints())
        poly = cls.of(pts)
        if set(poly.sides()) != set(arcs):
            raise ValidationError("side intervals do not close up into a polygon")
        return poly

    @classmethod
    def from_triangles(cls, tris: Iterable[ETriangle]) -> Polygon:
        """The polygon enclosing a connected set of tessellation triangles."""
        return _polygon_from_triangles(frozenset(tris))

    @cached_property
    def _sides(self) -> tuple[Arc, ...]:
        pts = self.vertices
        return tuple(
            Arc.of(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))
        )

    def sides(self) -> tuple[Arc, ...]:
        return self._sides

    def side_keys(self) -> frozenset[StdInterval]:
        return frozenset(a.std_interval() for a in self.sides())

    @cached_property
    def vertex_set(self) -> frozenset[CirclePoint]:
        return frozenset(self.vertices)

    @cached_property
    def _interior_e_arcs(self) -> dict[Arc, StdInterval]:
        side_set = set(self.sides())
        out: dict[Arc, StdInterval] = {}
        pts = self.vertices
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                arc = Arc.of(pts[i], pts[j])
                if arc in side_set:
                    continue
                s = arc.std_interval()
                if s is not None:
                    out[arc] = s
        return out

    def interior_e_arcs(self) -> dict[Arc, StdInterval]:
        """Tessellation arcs strictly inside: chords between vertices, minus sides."""
        return self._interior_e_arcs

    @cached_property
    def _enclosed(self) -> frozenset[ETriangle]:
        arcs = list(self.sides()) + list(self.interior_e_arcs())
        tris = set()
        for face in _faces_from_arcs(arcs):
            t = e_triangle_of_face(face)
            if t is None:
                raise ValidationError("polygon region is not tiled by tessellation triangles")
            tris.add(t)
        if len(tris) != len(self.vertices) - 2:
            raise ValidationError("polygon does not enclose a triangulated region")
        return frozenset(tris)

    def enclosed_triangles(self) -> frozenset[ETriangle]:
        return self._enclosed

    def to_json(self) -> list:
        return [[s.a, s.n] for s in sorted(self.side_keys())]

    def __str__(self) -> str:
        return "Polygon(" + ", ".join(str(p) for p in self.vertices) + ")"


@lru_cache(maxsize=16384)
def _polygon_from_triangles(tris: frozenset[ETriangle]) -> Polygon:
    counts: Counter[StdInterval] = Counter()
    for t in tris:
        for s in t.sides():
            counts[s.arc_key()] += 1
    boundary = [s for s, c in counts.items() if c == 1]
    if any(c > 2 for c in counts.values()):
        raise ValidationError("triangle set is not embedded")
    poly = Polygon.of(pt for s in boundary for pt in s.arc().endpoints())
    if len(poly.vertices) != len(tris) + 2 or set(poly.sides()) != {
        s.arc() for s in boundary
    }:
        raise ValidationError("triangle set is not connected or not simply laid out")
    return poly


Region = tuple[Polygon, ...]
RegionLike = Union[Polygon, Sequence[Polygon]]


def as_region(region: RegionLike) -> Region:
    if isinstance(region, Polygon):
        return (region,)
    polys = tuple(region)
    for i, a in enumerate(polys):
        for b in polys[i + 1 :]:
            if len(a.vertex_set & b.vertex_set) > 1:
                raise ValidationError("region polygons overlap")
    return polys


def _faces_from_arcs(arcs: Iterable[Arc]) -> list[Face]:
    """Triangles of a triangulated ideal polygon given its full arc set.

    A vertex triple is a face exactly when its three connecting chords are
    all present; an ideal triangle meets the circle only at its corners, so
    no spurious triples arise.  Sorted order of a triple is its
    counterclockwise order.
    """
    nbr: dict[CirclePoint, set[CirclePoint]] = defaultdict(set)
    for a in arcs:
        nbr[a.p].add(a.q)
        nbr[a.q].add(a.p)
    faces = set()
    for a in arcs:
        for z in nbr[a.p] & nbr[a.q]:
            faces.add(tuple(sorted((a.p, a.q, z))))
    return sorted(faces)


def triangle_components(tris: Iterable[ETriangle]) -> list[frozenset[ETriangle]]:
    """Split a triangle set into components connected through shared arcs."""
    tris = set(tris)
    by_arc: dict[StdInterval, list[ETriangle]] = defaultdict(list)
    for t in tris:
        for s in t.sides():
            by_arc[s.arc_key()].append(t)
    parent = {t: t for t in tris}

    def find(x):
        while parent[x] is not x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for group in by_arc.values():
        for other in group[1:]:
            parent[find(other)] = find(group[0])
    comps: dict[ETriangle, set[ETriangle]] = defaultdict(set)
    for t in tris:
        comps[find(t)].add(t)
    return sorted(
        (frozenset(c) for c in comps.values()),
        key=lambda c: min(t.sort_key() for t in c),
    )


def path_to_base(t: ETriangle) -> set[ETriangle]:
    """The chain of parents from a triangle down to the central pair."""
    out = {ETriangle(0, 1), ETriangle(1, 1)}
    while t.n > 1:
        out.add(t)
        t = t.parent()
    out.add(t)
    return out


def connected_hull(tris: Iterable[ETriangle]) -> frozenset[ETriangle]:
    """Connect a triangle set through the central pair of the tessellation."""
    out: set[ETriangle] = set()
    for t in tris:
        out |= path_to_base(t)
    if not out:
        out = path_to_base(ETriangle(0, 1))
    return frozenset(out)


def expand_layers(tris: Iterable[ETriangle], layers: int = 1) -> frozenset[ETriangle]:
    out = set(tris)
    for _ in range(layers):
        for t in list(out):
            out.update(t.neighbours())
    return frozenset(out)


@dataclass(frozen=True)
class Triangulation:
    """A vertex of the flip complex, as its difference from the tessellation."""

    removed: frozenset[StdInterval]
    added: frozenset[Arc]

    @classmethod
    def base(cls) -> Triangulation:
        return cls(frozenset(), frozenset())

    @classmethod
    def create(cls, removed: Iterable[StdInterval], added: Iterable[Arc]) -> Triangulation:
        """Validate and canonicalise a candidate vertex.

        Each invariant failure raises with its own code: an added arc that is
        a tessellation arc, crossing added arcs, an added arc crossing an
        unremoved tessellation arc, a removed arc no added arc crosses, a
        global count mismatch, or a region that is not cut into triangles.
        """
        removed = frozenset(s.arc_key() for s in removed)
        added = frozenset(added)
        for a in added:
            if a.std_interval() is not None:
                raise TriangulationError(
                    f"added arc {a} is a tessellation arc", code="added-is-e-arc"
                )
        arcs = sorted(added)
        for i, a in enumerate(arcs):
            for b in arcs[i + 1 :]:
                if a.crosses(b):
                    raise TriangulationError(
                        f"added arcs {a} and {b} cross", code="crossing-added-arcs"
                    )
        covered: set[StdInterval] = set()
        for a in added:
            cr = crossed_e_arcs(a)
            extra = cr - removed
            if extra:
                raise TriangulationError(
                    f"added arc {a} crosses unremoved tessellation arc "
                    f"{sorted(extra)[0]}",
                    code="crosses-unremoved",
                )
            covered |= cr
        uncovered = removed - covered
        if uncovered:
            raise TriangulationError(
                f"removed arc {sorted(uncovered)[0]} is crossed by no added arc",
                code="uncovered-removed",
            )
        if len(added) != len(removed):
            raise TriangulationError(
                f"{len(added)} added arcs vs {len(removed)} removed",
                code="count-mismatch",
            )
        v = cls(removed, added)
        for comp in triangle_components(v.traversed()):
            poly = Polygon.from_triangles(comp)
            interior = poly.interior_e_arcs()
            n_removed = sum(1 for s in interior.values() if s.arc_key() in removed)
            n_added = sum(1 for a in added if crossed_e_arcs(a) <= set(interior.values()))
            if n_added != n_removed:
                raise TriangulationError(
                    f"region {poly} is not cut into triangles",
                    code="non-triangle-region",
                )
        return v

    @cached_property
    def _traversed(self) -> frozenset[ETriangle]:
        out: set[ETriangle] = set()
        for a in self.added:
            for s in crossed_e_arcs(a):
                out.update(s.adjacent_triangles())
        return frozenset(out)

    def traversed(self) -> frozenset[ETriangle]:
        """Tessellation triangles met by some added arc."""
        return self._traversed

    def support(self) -> Region:
        """Minimal disjoint polygons enclosing everything that differs."""
        return tuple(
            Polygon.from_triangles(c) for c in triangle_components(self.traversed())
        )

    def has_arc(self, arc: Arc) -> bool:
        s = arc.std_interval()
        if s is not None:
            return s.arc_key() not in self.removed
        return arc in self.added

    def reflected(self) -> Triangulation:
        removed = [
            StdInterval((1 << s.n) - 1 - s.a, s.n).arc_key() for s in self.removed
        ]
        added = [a.reflected() for a in self.added]
        return Triangulation(frozenset(removed), frozenset(added))

    def sorted_removed(self) -> list[StdInterval]:
        return sorted(self.removed, key=lambda s: s.arc().sort_key())

    def sorted_added(self) -> list[Arc]:
        return sorted(self.added, key=Arc.sort_key)

    def to_json(self) -> dict:
        return {
            "removed": [[str(s.arc().p), str(s.arc().q)] for s in self.sorted_removed()],
            "added": [[str(a.p), str(a.q)] for a in self.sorted_added()],
        }

    @classmethod
    def from_json(cls, data: dict) -> Triangulation:
        removed = []
        for pair in data.get("removed", []):
            arc = Arc.of(CirclePoint.parse(pair[0]), CirclePoint.parse(pair[1]))
            s = arc.std_interval()
            if s is None:
                raise TriangulationError(
                    f"removed entry {arc} is not a tessellation arc",
                    code="removed-not-e-arc",
                )
            removed.append(s)
        added = [
            Arc.of(CirclePoint.parse(p), CirclePoint.parse(q))
            for p, q in data.get("added", [])
        ]
        return cls.create(removed, added)

    def __str__(self) -> str:
        if not self.removed:
            return "E"
        rem = ", ".join(str(s) for s in self.sorted_removed())
        add = ", ".join(str(a) for a in self.sorted_added())
        return f"E - [{rem}] + [{add}]"


BASE = Triangulation.base()


def _added_in_polygon(v: Triangulation, poly: Polygon, interior: dict[Arc, StdInterval]) -> list[Arc]:
    keys = set(interior.values())
    return [a for a in v.added if crossed_e_arcs(a) <= keys]


@lru_cache(maxsize=65536)
def arcs_inside(v: Triangulation, poly: Polygon) -> tuple[Arc, ...]:
    """All arcs of v strictly inside the polygon, in canonical order."""
    interior = poly.interior_e_arcs()
    out = [arc for arc, s in interior.items() if s.arc_key() not in v.removed]
    out.extend(_added_in_polygon(v, poly, interior))
    return tuple(sorted(out, key=Arc.sort_key))


def region_encloses(region: RegionLike, v: Triangulation) -> bool:
    polys = as_region(region)
    for poly in polys:
        if any(s.arc_key() in v.removed for s in poly.side_keys()):
            return False
    placed = 0
    for poly in polys:
        placed += len(_added_in_polygon(v, poly, poly.interior_e_arcs()))
    return placed == len(v.added)


def require_region(region: RegionLike, v: Triangulation) -> Region:
    polys = as_region(region)
    if not region_encloses(polys, v):
        raise RegionError(f"region does not enclose the support of {v}")
    return polys


def arcs_in_region(v: Triangulation, region: RegionLike) -> list[Arc]:
    polys = require_region(region, v)
    out: list[Arc] = []
    for poly in polys:
        out.extend(arcs_inside(v, poly))
    return sorted(out, key=Arc.sort_key)


@lru_cache(maxsize=65536)
def faces_inside(v: Triangulation, poly: Polygon) -> tuple[Face, ...]:
    arcs = list(poly.sides()) + list(arcs_inside(v, poly))
    faces = _faces_from_arcs(arcs)
    if len(faces) != len(poly.vertices) - 2:
        raise TriangulationError(
            f"arcs of {v} do not triangulate {poly}", code="non-triangle-region"
        )
    return tuple(faces)


@lru_cache(maxsize=65536)
def faces_of_arc(v: Triangulation, arc: Arc) -> tuple[Face, Face]:
    """The two triangles of v adjacent to one of its arcs."""
    s = arc.std_interval()
    if s is not None:
        if s.arc_key() in v.removed:
            raise ValidationError(f"arc {arc} was removed from {v}", code="arc-not-present")
        seed = set(s.arc_key().adjacent_triangles())
    elif arc in v.added:
        seed = set()
    else:
        raise ValidationError(f"arc {arc} is not an arc of {v}", code="arc-not-present")
    tris = set(v.traversed()) | seed
    if s is not None:
        comps = [c for c in triangle_components(tris) if seed <= c]
    else:
        anchor = next(iter(crossed_e_arcs(arc))).adjacent_triangles()[0]
        comps = [c for c in triangle_components(tris) if anchor in c]
    poly = Polygon.from_triangles(comps[0])
    faces = [f for f in faces_inside(v, poly) if arc.p in f and arc.q in f]
    assert len(faces) == 2, f"arc {arc} bounds {len(faces)} faces"
    return (faces[0], faces[1])


def face_sides(face: Face) -> tuple[Arc, Arc, Arc]:
    """Sides of a face in counterclockwise order around the triangle."""
    x, y, z = face
    return (Arc.of(x, y), Arc.of(y, z), Arc.of(x, z))


def flip(v: Triangulation, arc: Arc) -> Triangulation:
    """Replace an arc of v by the opposite diagonal of its quadrilateral.

    Flipping preserves validity, so the result is assembled directly without
    re-running the constructor checks.
    """
    f1, f2 = faces_of_arc(v, arc)
    (x,) = [p for p in f1 if not arc.has_endpoint(p)]
    (y,) = [p for p in f2 if not arc.has_endpoint(p)]
    new = Arc.of(x, y)
    removed = set(v.removed)
    added = set(v.added)
    s = arc.std_interval()
    if s is not None:
        removed.add(s.arc_key())
    else:
        added.discard(arc)
    ns = new.std_interval()
    if ns is not None:
        removed.discard(ns.arc_key())
    else:
        added.add(new)
    return Triangulation(frozenset(removed), frozenset(added))


def flip_arc_between(v: Triangulation, w: Triangulation) -> Arc:
    """The arc of v whose flip yields w; the two must be neighbours."""
    lost_removed = w.removed - v.removed
    lost_added = v.added - w.added
    candidates = [s.arc() for s in lost_removed] + list(lost_added)
    if len(candidates) != 1 or arc_difference(v, w) != 1:
        raise ValidationError(f"{v} and {w} are not joined by a flip", code="not-neighbours")
    return candidates[0]


def arc_difference(v: Triangulation, w: Triangulation) -> int:
    """Number of arcs of v that are not arcs of w.

    Every flip changes one arc, so this is a lower bound for the flip
    distance; it is symmetric because both vertices balance their removed
    and added counts.
    """
    return len(v.added - w.added) + len(w.removed - v.removed)


def act(g: Union[TElement, ExtElement], v: Triangulation) -> Triangulation:
    """Image of a vertex under an extended Thompson element.

    Arcs map endpoint-wise; outside a polygon containing both the support of
    v and the source polygon of the map, tessellation arcs go to
    tessellation arcs rigidly, so only the region below needs bookkeeping.
    """
    g = ExtElement.lift(g)
    if g.reflected:
        v = v.reflected()
    f = g.t
    if f.size < 3:
        f = f.expand(0)
    source_poly = Polygon.of(f.source.points)
    tris = set(v.traversed()) | set(source_poly.enclosed_triangles())
    removed: set[StdInterval] = set()
    added: set[Arc] = set()
    for comp in triangle_components(tris):
        poly = Polygon.from_triangles(comp)
        image_poly = Polygon.of(f(p) for p in poly.vertices)
        images = {f.map_arc(a) for a in arcs_inside(v, poly)}
        for arc, s in image_poly.interior_e_arcs().items():
            if arc not in images:
                removed.add(s.arc_key())
        for arc in images:
            if arc.std_interval() is None:
                added.add(arc)
    return Triangulation.create(removed, added)


def map_polygon(g: Union[TElement, ExtElement], poly: Polygon) -> Polygon:
    g = ExtElement.lift(g)
    return Polygon.of(g(p) for p in poly.vertices)


def map_region(g: Union[TElement, ExtElement], region: RegionLike) -> Region:
    return tuple(map_polygon(g, poly) for poly in as_region(region))


def preimage_polygon(g: Union[TElement, ExtElement], poly: Polygon) -> Polygon:
    return map_polygon(ExtElement.lift(g).inverse(), poly)
