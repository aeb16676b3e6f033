import random

import pytest

from flippant import thompson as th
from flippant import triangulation as tg
from flippant.dyadic import Arc, StdInterval
from flippant.errors import RegionError, TriangulationError, ValidationError
from flippant.triangulation import Polygon, Triangulation

from conftest import arc, cp, random_vertex, random_word, standard_polygon

E = Triangulation.base()
QUAD = Polygon.of([cp("0"), cp("1/2^2"), cp("1/2^1"), cp("3/2^2")])
HEX = Polygon.of([cp("0"), cp("1/2^3"), cp("1/2^2"), cp("1/2^1"), cp("3/2^2"), cp("7/2^3")])


class TestBase:
    def test_empty_sets(self):
        assert E.removed == frozenset() and E.added == frozenset()

    def test_arcs_are_tessellation_arcs(self):
        for a in tg.arcs_in_region(E, standard_polygon(10)):
            assert a.std_interval() is not None

    def test_zero_difference_and_support(self):
        assert tg.arc_difference(E, E) == 0
        assert E.support() == ()


class TestValidate:
    def test_quad_retriangulation(self):
        v = Triangulation.create([StdInterval(0, 1)], [arc("1/2^2", "3/2^2")])
        assert v == tg.flip(E, arc("0", "1/2^1"))

    def test_added_is_e_arc(self):
        with pytest.raises(TriangulationError) as err:
            Triangulation.create([StdInterval(0, 1)], [arc("0", "1/2^1")])
        assert err.value.code == "added-is-e-arc"

    def test_crosses_unremoved(self):
        with pytest.raises(TriangulationError) as err:
            Triangulation.create([], [arc("1/2^2", "3/2^2")])
        assert err.value.code == "crosses-unremoved"

    def test_crossing_added_arcs(self):
        with pytest.raises(TriangulationError) as err:
            Triangulation.create(
                [StdInterval(0, 1), StdInterval(0, 2), StdInterval(1, 2)],
                [arc("1/2^2", "3/2^2"), arc("1/2^3", "1/2^1"), arc("3/2^3", "3/2^2")],
            )
        assert err.value.code == "crossing-added-arcs"

    def test_uncovered_removed(self):
        with pytest.raises(TriangulationError) as err:
            Triangulation.create(
                [StdInterval(0, 1), StdInterval(2, 2)], [arc("1/2^2", "3/2^2")]
            )
        assert err.value.code in {"uncovered-removed", "count-mismatch"}

    def test_count_mismatch(self):
        with pytest.raises(TriangulationError) as err:
            Triangulation.create([StdInterval(0, 1)], [])
        assert err.value.code in {"uncovered-removed", "count-mismatch"}


class TestFlip:
    def test_flip_diameter(self):
        v = tg.flip(E, arc("0", "1/2^1"))
        assert v.removed == frozenset({StdInterval(0, 1)})
        assert v.added == frozenset({arc("1/2^2", "3/2^2")})

    def test_flip_level_two(self):
        v = tg.flip(E, arc("0", "1/2^2"))
        assert v.removed == frozenset({StdInterval(0, 2)})
        assert v.added == frozenset({arc("1/2^3", "1/2^1")})

    def test_involution_random(self):
        rng = random.Random(9)
        poly = standard_polygon(10)
        for _ in range(25):
            v = random_vertex(rng, poly, flips=5)
            e = rng.choice(tg.arcs_in_region(v, poly))
            w = tg.flip(v, e)
            back = tg.flip_arc_between(w, v)
            assert tg.flip(w, back) == v
            assert tg.arc_difference(v, w) == 1

    def test_flip_preserves_balance(self):
        rng = random.Random(13)
        poly = standard_polygon(10)
        v = E
        for _ in range(12):
            v = tg.flip(v, rng.choice(tg.arcs_in_region(v, poly)))
            assert len(v.added) == len(v.removed)

    def test_flip_missing_arc(self):
        with pytest.raises(ValidationError):
            tg.flip(tg.flip(E, arc("0", "1/2^1")), arc("0", "1/2^1"))

    def test_commutation_dichotomy(self):
        """Non-adjacent flips commute; adjacent orders differ by one flip."""
        rng = random.Random(21)
        poly = standard_polygon(10)
        from flippant.pants import arcs_adjacent

        for _ in range(20):
            v = random_vertex(rng, poly, flips=4)
            arcs = tg.arcs_in_region(v, poly)
            e1, e2 = rng.sample(arcs, 2)
            one = tg.flip(tg.flip(v, e1), e2)
            two = tg.flip(tg.flip(v, e2), e1)
            if arcs_adjacent(v, e1, e2):
                assert one != two
                assert tg.arc_difference(one, two) == 1
            else:
                assert one == two


class TestRegions:
    def test_arcs_in_quad(self):
        assert tg.arcs_in_region(E, QUAD) == [arc("0", "1/2^1")]

    def test_arcs_in_hexagon(self):
        assert len(tg.arcs_in_region(E, HEX)) == 3

    def test_arcs_after_flip(self):
        v = tg.flip(E, arc("0", "1/2^1"))
        assert tg.arcs_in_region(v, QUAD) == [arc("1/2^2", "3/2^2")]

    def test_region_too_small(self):
        v = tg.flip(E, arc("0", "1/2^2"))
        with pytest.raises(RegionError):
            tg.arcs_in_region(v, QUAD)

    def test_level_polygon_sizes(self):
        for m in (2, 3, 4):
            poly = Polygon.level(m)
            assert len(poly.vertices) == 1 << m
            assert len(tg.arcs_in_region(E, poly)) == (1 << m) - 3


class TestSupport:
    def test_single_flip(self):
        v = tg.flip(E, arc("0", "1/2^1"))
        (poly,) = v.support()
        assert poly == QUAD

    def test_two_disjoint_squares(self):
        v = tg.flip(tg.flip(E, arc("1/2^2", "3/2^3")), arc("3/2^2", "7/2^3"))
        supports = v.support()
        assert len(supports) == 2
        assert all(len(p.vertices) == 4 for p in supports)
        assert not (supports[0].vertex_set & supports[1].vertex_set)


class TestArcDifference:
    def test_examples(self):
        v = tg.flip(E, arc("0", "1/2^1"))
        assert tg.arc_difference(v, v) == 0
        assert tg.arc_difference(E, v) == 1

    def test_symmetric_random(self):
        rng = random.Random(31)
        poly = standard_polygon(10)
        for _ in range(20):
            v = random_vertex(rng, poly, 5)
            w = random_vertex(rng, poly, 5)
            assert tg.arc_difference(v, w) == tg.arc_difference(w, v)


class TestAction:
    def test_identity(self):
        v = tg.flip(E, arc("0", "1/2^2"))
        assert tg.act(th.identity(), v) == v

    def test_alpha_on_base(self):
        assert tg.act(th.alpha(), E) == tg.flip(E, arc("0", "1/2^1"))

    def test_beta_fixes_base(self):
        assert tg.act(th.beta(), E) == E

    def test_beta_moves_other_vertex(self):
        v = tg.flip(E, arc("0", "1/2^2"))
        assert tg.act(th.beta(), v) != v

    def test_action_property(self):
        rng = random.Random(17)
        poly = standard_polygon(12)
        for _ in range(20):
            f = th.from_word(random_word(rng, 8))
            g = th.from_word(random_word(rng, 8))
            v = random_vertex(rng, poly, 4)
            assert tg.act(f * g, v) == tg.act(f, tg.act(g, v))

    def test_reflection_action(self):
        phi = th.reflection()
        assert tg.act(phi, E) == E
        v = tg.flip(E, arc("0", "1/2^2"))
        # endpoint map x -> 1 - x carries the flipped square at [0, 1/4]
        # to the flipped square at [3/4, 1]
        assert tg.act(phi, v) == tg.flip(E, arc("3/2^2", "0"))

    def test_ext_action_property(self):
        rng = random.Random(19)
        poly = standard_polygon(10)
        for _ in range(12):
            g = th.ExtElement(th.from_word(random_word(rng, 6)), rng.randint(0, 1))
            h = th.ExtElement(th.from_word(random_word(rng, 6)), rng.randint(0, 1))
            v = random_vertex(rng, poly, 3)
            assert tg.act(g * h, v) == tg.act(g, tg.act(h, v))

    def test_difference_equivariance(self):
        rng = random.Random(23)
        poly = standard_polygon(10)
        for _ in range(12):
            f = th.from_word(random_word(rng, 8))
            v = random_vertex(rng, poly, 4)
            w = random_vertex(rng, poly, 4)
            assert tg.arc_difference(tg.act(f, v), tg.act(f, w)) == tg.arc_difference(
                v, w
            )


class TestSerialization:
    def test_snapshot_format(self):
        v = tg.flip(E, arc("0", "1/2^1"))
        assert v.to_json() == {
            "removed": [["0", "1/2^1"]],
            "added": [["1/2^2", "3/2^2"]],
        }

    def test_round_trip_random(self):
        rng = random.Random(37)
        poly = standard_polygon(12)
        for _ in range(15):
            v = random_vertex(rng, poly, 6)
            assert Triangulation.from_json(v.to_json()) == v

    def test_reflection_involution(self):
        rng = random.Random(41)
        poly = standard_polygon(10)
        for _ in range(10):
            v = random_vertex(rng, poly, 5)
            assert v.reflected().reflected() == v
