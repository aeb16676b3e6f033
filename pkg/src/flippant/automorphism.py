"""Automorphisms of the flip complex.

Every automorphism is represented by an extended Thompson element; the
machinery here exists to verify that representation at desk scale rather
than assume it.  Link isomorphisms classify into orientation preserving,
orientation reversing, and mixed; preserving ones extend to a unique group
element, reversing ones to an element composed with the reflection, and a
mixed one is refuted by a concrete square-versus-pentagon witness.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Union

from .dyadic import Arc, CirclePoint, Dyadic, ETriangle, StdInterval, crossed_e_arcs, strictly_between
from .errors import LinkIsoError, RegionError, ValidationError
from .pants import Cell, CellKind, ball_with_parents, cell_through, link
from .thompson import ExtElement, TElement, from_polygons, identity, reflection
from .triangulation import (
    BASE,
    Face,
    Polygon,
    Triangulation,
    act,
    arcs_in_region,
    connected_hull,
    expand_layers,
    face_sides,
    faces_inside,
    flip,
    map_polygon,
    preimage_polygon,
)

Elementish = Union[TElement, ExtElement]


@dataclass(frozen=True)
class AutElement:
    """An automorphism of the complex in its classified form."""

    ext: ExtElement

    def apply(self, v: Triangulation) -> Triangulation:
        return act(self.ext, v)

    def __mul__(self, other: AutElement) -> AutElement:
        return AutElement(self.ext * other.ext)

    def inverse(self) -> AutElement:
        return AutElement(self.ext.inverse())

    @property
    def sign(self) -> int:
        return self.ext.reflected


def psi(g: Elementish) -> AutElement:
    """The action homomorphism: an element acting on vertices by arc images."""
    return AutElement(ExtElement.lift(g))


def phi_r() -> ExtElement:
    """The automorphism induced by the reflection across the central arc."""
    return reflection()


def orientation_sign(g: Union[AutElement, ExtElement]) -> int:
    """0 for orientation preserving, 1 for reversing; additive under
    composition."""
    ext = g.ext if isinstance(g, AutElement) else g
    return ext.reflected


Triangle = tuple[Arc, Arc, Arc]


@dataclass(frozen=True)
class LinkIso:
    """A bijection between the restricted links of two vertices.

    ``mapping`` sends every arc of the source vertex inside the source
    region to an arc of the target vertex inside the target region, carrying
    link triangles onto link triangles.
    """

    source_vertex: Triangulation
    target_vertex: Triangulation
    source_region: Polygon
    target_region: Polygon
    mapping: tuple[tuple[Arc, Arc], ...]

    @classmethod
    def create(
        cls,
        source_vertex: Triangulation,
        target_vertex: Triangulation,
        source_region: Polygon,
        target_region: Polygon,
        mapping: Mapping[Arc, Arc],
    ) -> LinkIso:
        domain = arcs_in_region(source_vertex, source_region)
        codomain = arcs_in_region(target_vertex, target_region)
        if set(mapping) != set(domain):
            raise LinkIsoError("mapping domain is not the set of arcs in the region")
        if sorted(mapping.values(), key=Arc.sort_key) != sorted(
            codomain, key=Arc.sort_key
        ):
            raise LinkIsoError("mapping is not a bijection onto the target arcs")
        src_link = link(source_vertex, source_region)
        tgt_link = link(target_vertex, target_region)
        tgt_sets = {frozenset(t) for t in tgt_link.triangles}
        for t in src_link.triangles:
            if frozenset(mapping[a] for a in t) not in tgt_sets:
                raise LinkIsoError(f"triangle {t} does not map to a triangle")
        if len(src_link.triangles) != len(tgt_link.triangles):
            raise LinkIsoError("triangle counts differ")
        pairs = tuple(sorted(mapping.items(), key=lambda kv: kv[0].sort_key()))
        return cls(source_vertex, target_vertex, source_region, target_region, pairs)

    def as_dict(self) -> dict[Arc, Arc]:
        return dict(self.mapping)

    def inverse_dict(self) -> dict[Arc, Arc]:
        return {b: a for a, b in self.mapping}

    def to_json(self) -> dict:
        return {
            "source": self.source_vertex.to_json(),
            "target": self.target_vertex.to_json(),
            "source_region": self.source_region.to_json(),
            "target_region": self.target_region.to_json(),
            "pairs": [
                [[str(a.p), str(a.q)], [str(b.p), str(b.q)]] for a, b in self.mapping
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> LinkIso:
        def arc(pair) -> Arc:
            return Arc.of(CirclePoint.parse(pair[0]), CirclePoint.parse(pair[1]))

        return cls.create(
            Triangulation.from_json(data["source"]),
            Triangulation.from_json(data["target"]),
            Polygon.from_side_intervals(StdInterval(a, n) for a, n in data["source_region"]),
            Polygon.from_side_intervals(StdInterval(a, n) for a, n in data["target_region"]),
            {arc(a): arc(b) for a, b in data["pairs"]},
        )


def induced_link_iso(g: Union[AutElement, Elementish], v: Triangulation, region: Polygon) -> LinkIso:
    """The link isomorphism an element induces at a vertex.

    The region must enclose both the support of v and the polygon the
    element acts on, so that its image is again a polygon of the target.
    """
    ext = g.ext if isinstance(g, AutElement) else ExtElement.lift(g)
    try:
        target_region = map_polygon(ext, region)
        w = act(ext, v)
        mapping = {a: ext.map_arc(a) for a in arcs_in_region(v, region)}
        return LinkIso.create(v, w, region, target_region, mapping)
    except ValidationError as exc:
        if isinstance(exc, (LinkIsoError, RegionError)):
            raise
        raise RegionError(f"region does not support the element: {exc}") from exc


@dataclass(frozen=True)
class OrientationVerdict:
    """Per-triangle comparison of cyclic orders, with the global verdict."""

    signs: tuple[tuple[Triangle, int], ...]
    kind: str  # "preserving" | "reversing" | "mixed"
    witness: tuple[Triangle, Triangle] | None = None

    def sign_of(self, t: Triangle) -> int:
        return dict(self.signs)[t]


def classify_orientation(iso: LinkIso) -> OrientationVerdict:
    mapping = iso.as_dict()
    tgt_link = link(iso.target_vertex, iso.target_region)
    oriented = {frozenset(t): t for t in tgt_link.triangles}
    src_link = link(iso.source_vertex, iso.source_region)
    signs = []
    for t in src_link.triangles:
        image = tuple(mapping[a] for a in t)
        target = oriented[frozenset(image)]
        signs.append((t, _cyclic_sign(image, target)))
    kinds = {s for _, s in signs}
    if kinds <= {1}:
        return OrientationVerdict(tuple(signs), "preserving")
    if kinds == {-1}:
        return OrientationVerdict(tuple(signs), "reversing")
    witness = _mixed_witness(signs)
    if witness is None:
        raise LinkIsoError("mixed orientation without adjacent witness; enlarge region")
    return OrientationVerdict(tuple(signs), "mixed", witness)


def _cyclic_sign(image: Triangle, target: Triangle) -> int:
    rotations = {target, target[1:] + target[:1], target[2:] + target[:2]}
    if image in rotations:
        return 1
    if (image[0], image[2], image[1]) in rotations:
        return -1
    raise LinkIsoError(f"{image} is not a cyclic arrangement of {target}")


def _mixed_witness(signs) -> tuple[Triangle, Triangle] | None:
    """A reversed and a preserved triangle sharing an arc-vertex."""
    for t1, s1 in signs:
        if s1 != -1:
            continue
        for t2, s2 in signs:
            if s2 == 1 and len(set(t1) & set(t2)) == 1:
                return (t1, t2)
    return None


@dataclass(frozen=True)
class Obstruction:
    """Witness that a mixed link isomorphism extends to no automorphism.

    The path through the flips of the two outer arcs spans a pentagon at the
    source but its forced image spans a square.
    """

    shared: Arc
    reversed_triangle: Triangle
    preserved_triangle: Triangle
    source_cell: Cell
    image_cell: Cell

    def to_json(self) -> dict:
        return {
            "obstruction": {
                "shared_arc": [str(self.shared.p), str(self.shared.q)],
                "source_cell": self.source_cell.to_json(),
                "image_cell": self.image_cell.to_json(),
            }
        }


def _rotate_to(t: Triangle, first: Arc) -> Triangle:
    i = t.index(first)
    return (t[i], t[(i + 1) % 3], t[(i + 2) % 3])


def _obstruction(iso: LinkIso, verdict: OrientationVerdict) -> Obstruction:
    t_rev, t_pres = verdict.witness
    (u0,) = set(t_rev) & set(t_pres)
    rev = _rotate_to(t_rev, u0)
    pres = _rotate_to(t_pres, u0)
    u1 = rev[1]
    u4 = pres[2]
    v = iso.source_vertex
    w = iso.target_vertex
    mapping = iso.as_dict()

    cap_u0 = flip(v, u0)
    u5 = cell_through(flip(v, u1), v, cap_u0).boundary[3]
    u6 = cell_through(flip(v, u4), v, cap_u0).boundary[3]
    source_cell = cell_through(u5, cap_u0, u6)

    img_u0 = flip(w, mapping[u0])
    phi_u5 = cell_through(flip(w, mapping[u1]), w, img_u0).boundary[3]
    phi_u6 = cell_through(flip(w, mapping[u4]), w, img_u0).boundary[3]
    image_cell = cell_through(phi_u5, img_u0, phi_u6)

    if source_cell.kind == image_cell.kind:
        raise LinkIsoError("mixed witness produced matching cells (invalid data)")
    return Obstruction(u0, rev, pres, source_cell, image_cell)


def _triangles_of_arc(v: Triangulation, arc: Arc) -> set[ETriangle]:
    s = arc.std_interval()
    if s is not None:
        return set(s.arc_key().adjacent_triangles())
    out: set[ETriangle] = set()
    for k in crossed_e_arcs(arc):
        out.update(k.adjacent_triangles())
    return out


def separating_hull(v: Triangulation, extra_arcs=()) -> Polygon:
    """A polygon around everything non-rigid about v, anchored at the centre.

    Contains the support of v, the two central triangles (so the quarter
    points are vertices) and any requested arcs strictly in its interior.
    """
    tris = set(v.traversed())
    for arc in extra_arcs:
        tris |= _triangles_of_arc(v, arc)
    return Polygon.from_triangles(connected_hull(tris))


def extension_region(g: Elementish, v: Triangulation = BASE) -> Polygon:
    """A region big enough to induce and re-extend the link iso of g at v."""
    ext = ExtElement.lift(g)
    w = act(ext, v)
    target_hull = expand_layers(connected_hull(act(ext, v).traversed()), 1)
    pre = preimage_polygon(ext, Polygon.from_triangles(target_hull))
    tris = set(pre.enclosed_triangles())
    tris |= set(separating_hull(v).enclosed_triangles())
    t = ext.t if ext.t.size >= 3 else ext.t.expand(0)
    tris |= set(Polygon.of(t.source.points).enclosed_triangles())
    if ext.reflected:
        tris |= {ETriangle((1 << q.n) - 1 - q.a, q.n) for q in tris}
    return Polygon.from_triangles(expand_layers(connected_hull(tris), 1))


def extend_link_iso(iso: LinkIso) -> Union[ExtElement, Obstruction]:
    """Extend a link isomorphism to the unique automorphism inducing it.

    Orientation preserving isomorphisms yield a plain element, reversing
    ones an element with the reflection bit set, and mixed ones return the
    square-versus-pentagon obstruction instead.
    """
    verdict = classify_orientation(iso)
    if verdict.kind == "mixed":
        return _obstruction(iso, verdict)
    if verdict.kind == "reversing":
        refl_vertex = iso.source_vertex.reflected()
        refl_region = Polygon.of(p.reflect() for p in iso.source_region.vertices)
        mapping = {a.reflected(): b for a, b in iso.mapping}
        j = LinkIso.create(
            refl_vertex, iso.target_vertex, refl_region, iso.target_region, mapping
        )
        f = _extend_preserving(j)
        result = ExtElement(f, 1)
    else:
        result = ExtElement(_extend_preserving(iso), 0)
    for a, b in iso.mapping:
        if result.map_arc(a) != b:
            raise LinkIsoError("extension does not induce the given isomorphism")
    return result


def _extend_preserving(iso: LinkIso) -> TElement:
    """Rebuild the element from the correspondence of two separating polygons.

    Pull back the sides of a separating polygon around the target through
    the isomorphism, enclose the preimages together with the source data,
    and read the element off the side correspondence of the two polygons.
    """
    v, w = iso.source_vertex, iso.target_vertex
    mapping = iso.as_dict()
    inverse = iso.inverse_dict()
    hull_w = separating_hull(w)
    pre = []
    for s in hull_w.sides():
        if s not in inverse:
            raise RegionError(f"target side {s} is outside the matched region")
        pre.append(inverse[s])
    hull_v = separating_hull(v, extra_arcs=pre)
    sides_v = hull_v.sides()
    images = []
    for s in sides_v:
        if s not in mapping:
            raise RegionError(f"source side {s} is outside the matched region")
        img = mapping[s]
        if img.std_interval() is None:
            raise LinkIsoError(f"side {s} maps to the non-tessellation arc {img}")
        images.append(img)
    hull_w2 = Polygon.of(pt for a in images for pt in a.endpoints())
    if set(hull_w2.sides()) != set(images):
        raise LinkIsoError("image sides do not close up into a polygon")
    tgt_sides = hull_w2.sides()
    k = len(sides_v)
    off = tgt_sides.index(images[0])
    for i in range(k):
        if images[i] != tgt_sides[(i + off) % k]:
            raise LinkIsoError("side correspondence does not preserve cyclic order")
    return from_polygons(hull_v.vertices, hull_w2.vertices, off)


@dataclass(frozen=True)
class Contradiction:
    """Raised data (not an exception): the forced image of a vertex clashes."""

    at: Triangulation
    reason: str
    expected: str | None = None
    found: str | None = None

    def to_json(self) -> dict:
        return {
            "contradiction": {
                "at": self.at.to_json(),
                "reason": self.reason,
                "expected": self.expected,
                "found": self.found,
            }
        }


def propagate_images(
    v: Triangulation,
    w: Triangulation,
    first_ball_images: Mapping[Triangulation, Triangulation],
    r: int,
    region: Polygon,
) -> Union[dict[Triangulation, Triangulation], Contradiction]:
    """Force images of the radius-r ball from the images of the unit ball.

    Each new vertex completes a unique two-cell together with an already
    determined path, so its image is the corresponding vertex of the image
    cell; a cell of the wrong kind, or two paths forcing different images,
    is reported as a contradiction.
    """
    from .pants import neighbours

    dist, parent = ball_with_parents(v, r, region)
    images: dict[Triangulation, Triangulation] = {v: w}
    for x, d in dist.items():
        if d == 1:
            if x not in first_ball_images:
                raise ValidationError(f"missing unit-ball image for {x}")
            images[x] = first_ball_images[x]
    order = sorted(dist, key=lambda t: (dist[t], _vertex_key(t)))
    for x in order:
        d = dist[x]
        if d < 1 or d >= r:
            continue
        for _, y in neighbours(x, region):
            if dist.get(y) != d + 1:
                continue
            pu = parent[x]
            cell = cell_through(pu, x, y)
            anchor = cell.boundary[2]
            icell = cell_through(images[anchor], images[pu], images[x])
            if icell.kind != cell.kind:
                return Contradiction(
                    at=y,
                    reason="forced cell has the wrong kind",
                    expected=cell.kind.value,
                    found=icell.kind.value,
                )
            forced = icell.boundary[-2]
            if y in images:
                if images[y] != forced:
                    return Contradiction(at=y, reason="conflicting forced images")
            else:
                images[y] = forced
    clash = _verify_cell_kinds(images, dist, r, region)
    return images if clash is None else clash


def _verify_cell_kinds(images, dist, r, region) -> Contradiction | None:
    """Compare the kind of every cell spanned inside the ball with the kind
    its forced image spans; a mismatch is the square-versus-pentagon clash.

    The forcing pass above only walks radial cells, but the decisive clash
    can sit on a cell whose two outer vertices share the same distance, so
    every neighbour pair is checked.
    """
    from itertools import combinations

    from .pants import neighbours
    from .triangulation import faces_of_arc, flip_arc_between

    for x, d in dist.items():
        if d > r - 1 or x not in images:
            continue
        ix = images[x]
        nbrs = [(a, y) for a, y in neighbours(x, region) if y in images]
        try:
            img_arc = {y: flip_arc_between(ix, images[y]) for _, y in nbrs}
        except ValidationError:
            return Contradiction(at=x, reason="images do not preserve adjacency")
        src_faces = {a: faces_of_arc(x, a) for a, _ in nbrs}
        img_faces: dict[Arc, tuple] = {}
        for (a1, y1), (a2, y2) in combinations(nbrs, 2):
            src_adj = any(a2.p in f and a2.q in f for f in src_faces[a1])
            b1, b2 = img_arc[y1], img_arc[y2]
            if b1 not in img_faces:
                img_faces[b1] = faces_of_arc(ix, b1)
            img_adj = any(b2.p in f and b2.q in f for f in img_faces[b1])
            if src_adj != img_adj:
                return Contradiction(
                    at=y2,
                    reason="forced cell has the wrong kind",
                    expected=CellKind.PENTAGON.value if src_adj else CellKind.SQUARE.value,
                    found=CellKind.PENTAGON.value if img_adj else CellKind.SQUARE.value,
                )
    return None


def _vertex_key(t: Triangulation):
    return (
        tuple(s.arc().sort_key() for s in t.sorted_removed()),
        tuple(a.sort_key() for a in t.sorted_added()),
    )


def transitive_element(v: Triangulation) -> TElement:
    """An element carrying the base tessellation to v.

    Matches a triangle adjacent to the smallest interior arc of v to the
    central triangle of the tessellation and unfolds outward through shared
    arcs; the resulting polygon correspondence defines the element.  The
    output is one of many valid choices but is deterministic.
    """
    if v == BASE:
        return identity()
    poly = separating_hull(v)
    faces = faces_inside(v, poly)
    arcs = arcs_in_region(v, poly)
    base_arc = min(arcs, key=Arc.sort_key)
    adjacent = [f for f in faces if base_arc.p in f and base_arc.q in f]
    lo, hi = base_arc.p, base_arc.q

    def apex(face: Face) -> CirclePoint:
        return next(x for x in face if not base_arc.has_endpoint(x))

    inner = next(f for f in adjacent if strictly_between(apex(f), lo, hi))
    outer = next(f for f in adjacent if f is not inner)
    quarters = [CirclePoint(Dyadic(i, 2)) for i in range(4)]
    phi: dict[CirclePoint, CirclePoint] = {
        lo: quarters[0],
        apex(inner): quarters[1],
        hi: quarters[2],
        apex(outer): quarters[3],
    }
    matched: dict[Face, ETriangle] = {inner: ETriangle(0, 1), outer: ETriangle(1, 1)}
    by_arc: dict[Arc, list[Face]] = {}
    for f in faces:
        for s in face_sides(f):
            by_arc.setdefault(s, []).append(f)
    queue = deque([inner, outer])
    while queue:
        f = queue.popleft()
        g_tri = matched[f]
        for s in face_sides(f):
            for f2 in by_arc[s]:
                if f2 is f or f2 in matched:
                    continue
                img = Arc.of(phi[s.p], phi[s.q])
                interval = img.std_interval()
                assert interval is not None
                t1, t2 = interval.adjacent_triangles()
                assert g_tri in (t1, t2), "matched arc is not a side of its triangle"
                g2 = t2 if t1 == g_tri else t1
                new_pt = next(x for x in f2 if not s.has_endpoint(x))
                new_img = next(x for x in g2.vertices() if not img.has_endpoint(x))
                if new_pt in phi:
                    assert phi[new_pt] == new_img
                else:
                    phi[new_pt] = new_img
                matched[f2] = g2
                queue.append(f2)
    source = Polygon.from_triangles(frozenset(matched.values()))
    inv = {gy: x for x, gy in phi.items()}
    qpts = source.vertices
    ppts = poly.vertices
    k = len(qpts)
    off = ppts.index(inv[qpts[0]])
    for i in range(k):
        assert inv[qpts[i]] == ppts[(i + off) % k], "unfolding broke cyclic order"
    f = from_polygons(qpts, ppts, off)
    assert act(f, BASE) == v
    return f


def witness_vertex(f: TElement) -> Triangulation:
    """A vertex the element moves: the flip of a deep inscribed square at a
    point the map displaces."""
    f = f.reduce()
    if f.is_identity():
        raise ValidationError("the identity moves no vertex", code="identity-element")
    q = next(x for x, y in sorted(f.pairs()) if x != y)
    i = f.source.interval_index(q)
    m = max(q.value.exp, f.source.level(i), 1)
    fq = f(q)
    while True:
        width = Dyadic(1, m)
        img_width = (f(CirclePoint.wrap(q.value + width)).value - fq.value).mod1()
        if _intervals_disjoint(q.value, width, fq.value, img_width):
            break
        m += 1
    a = q.value.scaled_floor(m)
    diag = StdInterval(2 * a, m + 1)
    vertex = flip(BASE, diag.arc())
    assert act(f, vertex) != vertex
    return vertex


def _intervals_disjoint(a: Dyadic, wa: Dyadic, b: Dyadic, wb: Dyadic) -> bool:
    return wa < (b - a).mod1() and wb < (a - b).mod1()
