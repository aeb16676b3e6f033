"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
report.  Every check is exact; the stated wall-clock budgets are asserted.
"""
import random
import time
from contextlib import contextmanager

import pytest

from flippant import automorphism as am
from flippant import oracle as oc
from flippant import pants, thompson as th, triangulation as tg
from flippant.pants import CellKind, DistanceFlag
from flippant.thompson import ExtElement
from flippant.triangulation import Polygon, Triangulation

from conftest import arc, random_vertex, random_word, standard_polygon

E = Triangulation.base()


@contextmanager
def criterion(number: int, title: str, budget: float | None = None):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[ACCEPTANCE {number}] {title}: FAIL")
        raise
    elapsed = time.perf_counter() - start
    print(f"[ACCEPTANCE {number}] {title}: PASS ({elapsed:.2f}s)")
    if budget is not None:
        assert elapsed < budget, f"criterion {number} exceeded {budget}s budget"


def test_criterion_1_presentation():
    with criterion(1, "presentation relators reduce to the identity", budget=1.0):
        relators = [
            "aaaa",
            "bbb",
            "ba" * 5,
            "bab" + "aababaa" + th.inverse_word("bab") + th.inverse_word("aababaa"),
            "bab"
            + "aabbaababaabaa"
            + th.inverse_word("bab")
            + th.inverse_word("aabbaababaabaa"),
        ]
        for word in relators:
            assert th.from_word(word) == th.identity(), word


def test_criterion_2_homomorphism_transitivity_injectivity():
    with criterion(2, "action homomorphism, transitivity, injectivity", budget=10.0):
        rng = random.Random(2024)
        poly = standard_polygon(12)
        for _ in range(100):
            f = th.from_word(random_word(rng, 15))
            g = th.from_word(random_word(rng, 15))
            v = random_vertex(rng, poly, 5)
            assert tg.act(f * g, v) == tg.act(f, tg.act(g, v))
        for _ in range(100):
            v = random_vertex(rng, poly, 6)
            f = am.transitive_element(v)
            assert tg.act(f, E) == v
        done = 0
        while done < 50:
            f = th.from_word(random_word(rng, 15))
            if f.is_identity():
                continue
            w = am.witness_vertex(f)
            assert tg.act(f, w) != w
            done += 1


def test_criterion_3_cell_dichotomy():
    with criterion(3, "square/pentagon dichotomy with closing boundaries"):
        rng = random.Random(333)
        poly = standard_polygon(10)
        for _ in range(50):
            v = random_vertex(rng, poly, 4)
            arcs = tg.arcs_in_region(v, poly)
            for i, e1 in enumerate(arcs):
                for e2 in arcs[i + 1 :]:
                    cell = pants.cell_through(tg.flip(v, e1), v, tg.flip(v, e2))
                    shares = pants.arcs_adjacent(v, e1, e2)
                    assert (cell.kind == CellKind.PENTAGON) == shares
                    cycle = list(cell.boundary)
                    assert len(cycle) == (5 if shares else 4)
                    for x, y in zip(cycle, cycle[1:] + cycle[:1]):
                        assert tg.arc_difference(x, y) == 1


def test_criterion_4_oracle_equivalence():
    with criterion(4, "region complexes match the brute-force associahedra", budget=30.0):
        catalan = {4: 2, 5: 5, 6: 14, 7: 42, 8: 132}
        for k in range(4, 9):
            poly = standard_polygon(k)
            emb = oc.RegionEmbedding(poly)
            closure = pants.ball(E, 10 ** 6, poly)
            graph = oc.flip_graph(k)
            assert len(closure) == catalan[k] == oc.catalan(k - 2) == len(graph.vertices)
            image = {emb.to_oracle(v): v for v in closure}
            assert set(image) == set(graph.vertices)
            oracle_edges = {
                frozenset((t, t.flip(d))) for t in graph.vertices for d in t.diagonals
            }
            complex_edges = set()
            for v in closure:
                for a in tg.arcs_in_region(v, poly):
                    complex_edges.add(
                        frozenset((emb.to_oracle(v), emb.to_oracle(tg.flip(v, a))))
                    )
            assert complex_edges == oracle_edges
            degrees = {len(tg.arcs_in_region(v, poly)) for v in closure}
            assert degrees == {k - 3}
            assert oc.is_connected(graph)
            base_image = emb.to_oracle(E)
            for v in closure:
                d, flag = pants.distance(E, v, poly)
                assert d == oc.oracle_distance(base_image, emb.to_oracle(v))


def test_criterion_5_non_hyperbolicity():
    with criterion(5, "fellow-traveller triangles certify linear thinness"):
        for n in (1, 2, 3, 4):
            inst = pants.nonhyp_instance(n)
            assert tg.arc_difference(inst.u, inst.v) == n == len(inst.path_uv) - 1
            assert tg.arc_difference(inst.v, inst.w) == n == len(inst.path_vw) - 1
            assert tg.arc_difference(inst.u, inst.w) == 2 * n == len(inst.path_uw) - 1
            region = tuple(inst.w.support())
            d_uv = pants.distance(inst.u, inst.v, region)
            d_vw = pants.distance(inst.v, inst.w, region)
            d_uw = pants.distance(inst.u, inst.w, region)
            assert d_uv == (n, DistanceFlag.EXACT)
            assert d_vw == (n, DistanceFlag.EXACT)
            assert d_uw == (2 * n, DistanceFlag.EXACT)
            assert pants.thinness_certificate(n) == n


def test_criterion_6_link_structure():
    with criterion(6, "links pair arcs into triangles and re-pair under flips"):
        rng = random.Random(666)
        poly = standard_polygon(10)
        ambient = Polygon.level(4)
        for _ in range(20):
            v = random_vertex(rng, poly, 4)
            lk = pants.link(v, ambient)
            for a in lk.arcs:
                if a not in lk.frontier:
                    assert len(lk.triangles_of(a)) == 2
            flippable = [
                a
                for a in lk.arcs
                if a not in lk.frontier and len(lk.triangles_of(a)) == 2
            ]
            for e in flippable[:3]:
                before, after = pants.link_after_flip(v, e, ambient)
                w = tg.flip(v, e)
                new_arc = tg.flip_arc_between(w, v)
                t_old = [t for t in before.triangles if e in t]
                t_new = [t for t in after.triangles if new_arc in t]
                assert len(t_old) == 2 and len(t_new) == 2
                rot = lambda t, x: t[t.index(x):] + t[: t.index(x)]
                (_, s1, s2), (_, s3, s4) = (rot(t, e) for t in t_old)
                expected = {frozenset({s2, s3}), frozenset({s4, s1})}
                assert {frozenset(t) - {new_arc} for t in t_new} == expected
                unchanged_before = {frozenset(t) for t in before.triangles if e not in t}
                unchanged_after = {
                    frozenset(t) for t in after.triangles if new_arc not in t
                }
                assert unchanged_before == unchanged_after


def test_criterion_7_extension_machinery():
    with criterion(7, "link isomorphisms extend, propagate, or obstruct"):
        rng = random.Random(777)
        for _ in range(100):
            g = th.from_word(random_word(rng, 10))
            iso = am.induced_link_iso(am.psi(g), E, am.extension_region(g))
            assert am.extend_link_iso(iso) == ExtElement(g, 0)

        oct_ = Polygon.level(3)
        for word in ["a", "bA", "ab"]:
            f = th.from_word(word)
            seeds = {
                u: tg.act(f, u) for u, d in pants.ball(E, 1, oct_).items() if d == 1
            }
            out = am.propagate_images(E, tg.act(f, E), seeds, 3, oct_)
            assert isinstance(out, dict)
            assert all(img == tg.act(f, u) for u, img in out.items())

        pairs = [
            (arc("0", "1/2^2"), arc("1/2^2", "1/2^1")),
            (arc("1/2^1", "3/2^2"), arc("3/2^2", "0")),
        ]
        words = ["", "a", "aa", "aaa", "b", "B", "ab", "aB", "ba", "Ba"]
        cases = 0
        for u1, u2 in pairs:
            swap = lambda a: u2 if a == u1 else u1 if a == u2 else a
            for word in words:
                g = ExtElement.lift(th.from_word(word))
                mapping = {a: g.map_arc(swap(a)) for a in tg.arcs_in_region(E, oct_)}
                iso = am.LinkIso.create(
                    E, tg.act(g, E), oct_, tg.map_polygon(g, oct_), mapping
                )
                out = am.extend_link_iso(iso)
                assert isinstance(out, am.Obstruction)
                assert {out.source_cell.kind, out.image_cell.kind} == {
                    CellKind.SQUARE,
                    CellKind.PENTAGON,
                }
                for cell in (out.source_cell, out.image_cell):
                    cyc = list(cell.boundary)
                    assert len(cyc) == (4 if cell.kind == CellKind.SQUARE else 5)
                    for x, y in zip(cyc, cyc[1:] + cyc[:1]):
                        assert tg.arc_difference(x, y) == 1
                cases += 1
        assert cases == 20


def test_criterion_8_theorem_realization():
    with criterion(8, "the sign sequence splits with the stated conjugations", budget=1.0):
        rng = random.Random(888)
        seen = set()
        for _ in range(200):
            g = ExtElement(th.from_word(random_word(rng, 5)), rng.randint(0, 1))
            h = ExtElement(th.from_word(random_word(rng, 5)), rng.randint(0, 1))
            assert am.orientation_sign(g * h) == (
                am.orientation_sign(g) + am.orientation_sign(h)
            ) % 2
            seen.add(am.orientation_sign(g))
            composite = g * h
            if am.orientation_sign(composite) == 0:
                assert composite == ExtElement(composite.t, 0)
            else:
                factor = composite * am.phi_r()
                assert am.orientation_sign(factor) == 0
                assert ExtElement(factor.t, 0) * am.phi_r() == composite
        assert seen == {0, 1}

        phi = am.phi_r()
        assert (phi * phi).is_identity()
        a, b = th.alpha(), th.beta()
        assert th.gamma_r(a) == a.inverse()
        assert th.gamma_r(b) == (a * a) * b.inverse() * (a * a)
        assert th.brin_outer(a) == a.inverse()
        assert th.brin_outer(b) == b.inverse()
