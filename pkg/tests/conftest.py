"""Shared helpers: parsing shorthands, deterministic polygons, random data."""
from __future__ import annotations

from fractions import Fraction

import pytest

from flippant.dyadic import Arc, CirclePoint, Dyadic, ETriangle
from flippant.triangulation import Polygon, Triangulation, arcs_in_region, flip


def cp(text: str) -> CirclePoint:
    return CirclePoint.parse(text)


def arc(p: str, q: str) -> Arc:
    return Arc.of(cp(p), cp(q))


def standard_polygon(k: int) -> Polygon:
    """A deterministic k-gon region: the first k - 2 triangles by (level, index)."""
    tris: list[ETriangle] = []
    level = 1
    while len(tris) < k - 2:
        for a in range(1 << level):
            tris.append(ETriangle(a, level))
            if len(tris) == k - 2:
                break
        level += 1
    return Polygon.from_triangles(frozenset(tris))


def random_vertex(rng, poly: Polygon, flips: int = 6) -> Triangulation:
    v = Triangulation.base()
    for _ in range(flips):
        v = flip(v, rng.choice(arcs_in_region(v, poly)))
    return v


def random_word(rng, max_len: int = 15) -> str:
    return "".join(rng.choice("aAbB") for _ in range(rng.randint(0, max_len)))


class FractionPL:
    """Independent piecewise-linear circle map over ``fractions.Fraction``.

    Built directly from an interval correspondence; used as the oracle the
    exact dyadic implementation is checked against.
    """

    def __init__(self, pieces: list[tuple[Fraction, Fraction, Fraction, Fraction]]):
        # pieces: (src_lo, src_hi, img_lo, img_hi) covering [0, 1)
        self.pieces = pieces

    def __call__(self, x: Fraction) -> Fraction:
        for lo, hi, img_lo, img_hi in self.pieces:
            if lo <= x < hi:
                return (img_lo + (x - lo) * (img_hi - img_lo) / (hi - lo)) % 1
        raise AssertionError(f"{x} not covered")


@pytest.fixture
def pl_alpha() -> FractionPL:
    q = Fraction(1, 4)
    return FractionPL(
        [(i * q, (i + 1) * q, (i + 1) * q, (i + 2) * q) for i in range(4)]
    )


@pytest.fixture
def pl_beta() -> FractionPL:
    f = Fraction
    return FractionPL(
        [
            (f(0), f(1, 4), f(1, 4), f(1, 2)),
            (f(1, 4), f(1, 2), f(1, 2), f(1)),
            (f(1, 2), f(1), f(0), f(1, 4)),
        ]
    )


def as_fraction(p: CirclePoint) -> Fraction:
    return Fraction(p.value.num, 1 << p.value.exp)


def from_fraction(x: Fraction) -> CirclePoint:
    num, den = x.numerator, x.denominator
    exp = den.bit_length() - 1
    assert 1 << exp == den, f"{x} is not dyadic"
    return CirclePoint(Dyadic(num, exp))
