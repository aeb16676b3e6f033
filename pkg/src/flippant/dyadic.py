"""Exact dyadic rationals and the chord combinatorics of the dyadic disk.

The boundary circle is [0, 1] with endpoints identified.  Marked boundary
points are dyadic rationals, arcs are chords joining two of them, and the
base tessellation consists of the chords spanning the standard intervals
[a/2^n, (a+1)/2^n].  Everything here is an immutable value with structural
equality; all arithmetic is exact.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache, total_ordering

from .errors import ValidationError

_DYADIC_RE = re.compile(r"^(-?\d+)(?:/2\^(\d+))?$")


@total_ordering
@dataclass(frozen=True)
class Dyadic:
    """num / 2**exp in canonical form: num odd, or exp == 0."""

    num: int
    exp: int = 0

    def __post_init__(self) -> None:
        if self.exp < 0:
            raise ValidationError("dyadic exponent must be non-negative")
        num, exp = self.num, self.exp
        while exp > 0 and num % 2 == 0:
            num //= 2
            exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    def __add__(self, other: Dyadic) -> Dyadic:
        e = max(self.exp, other.exp)
        return Dyadic((self.num << (e - self.exp)) + (other.num << (e - other.exp)), e)

    def __sub__(self, other: Dyadic) -> Dyadic:
        return self + (-other)

    def __neg__(self) -> Dyadic:
        return Dyadic(-self.num, self.exp)

    def __mul__(self, other: Dyadic) -> Dyadic:
        return Dyadic(self.num * other.num, self.exp + other.exp)

    def shifted(self, s: int) -> Dyadic:
        """self * 2**s (s may be negative)."""
        if s >= self.exp:
            return Dyadic(self.num << (s - self.exp), 0)
        return Dyadic(self.num, self.exp - s)

    def __lt__(self, other: Dyadic) -> bool:
        e = max(self.exp, other.exp)
        return (self.num << (e - self.exp)) < (other.num << (e - other.exp))

    def mod1(self) -> Dyadic:
        return Dyadic(self.num % (1 << self.exp), self.exp)

    def scaled_floor(self, n: int) -> int:
        """floor(self * 2**n)."""
        if n >= self.exp:
            return self.num << (n - self.exp)
        return self.num >> (self.exp - n)

    @property
    def is_zero(self) -> bool:
        return self.num == 0

    def __float__(self) -> float:
        return self.num / (1 << self.exp)

    def __str__(self) -> str:
        if self.num == 0:
            return "0"
        return f"{self.num}/2^{self.exp}"

    def __repr__(self) -> str:
        return f"Dyadic({self})"

    @classmethod
    def parse(cls, text: str) -> Dyadic:
        m = _DYADIC_RE.match(text.strip())
        if m is None:
            raise ValidationError(f"cannot parse dyadic {text!r}", code="invalid-dyadic")
        num = int(m.group(1))
        exp = int(m.group(2)) if m.group(2) is not None else 0
        return cls(num, exp)


ZERO = Dyadic(0)
ONE = Dyadic(1)
HALF = Dyadic(1, 1)


def std_level(lo: Dyadic, hi: Dyadic) -> int | None:
    """Level n when [lo, hi] is a standard interval [a/2^n, (a+1)/2^n], else None."""
    w = hi - lo
    if w.num != 1:
        return None
    if lo.exp > w.exp:
        return None
    return w.exp


@total_ordering
@dataclass(frozen=True)
class CirclePoint:
    """A dyadic point of the circle [0, 1] / (0 ~ 1), kept in [0, 1)."""

    value: Dyadic

    def __post_init__(self) -> None:
        if self.value < ZERO or not self.value < ONE:
            raise ValidationError(f"circle point {self.value} outside [0, 1)")

    @classmethod
    def wrap(cls, d: Dyadic) -> CirclePoint:
        return cls(d.mod1())

    @classmethod
    def of(cls, num: int, exp: int = 0) -> CirclePoint:
        return cls.wrap(Dyadic(num, exp))

    @classmethod
    def parse(cls, text: str) -> CirclePoint:
        return cls.wrap(Dyadic.parse(text))

    def rotate(self, d: Dyadic) -> CirclePoint:
        return CirclePoint.wrap(self.value + d)

    def reflect(self) -> CirclePoint:
        """Image under x -> 1 - x (mod 1), the reflection fixing 0 and 1/2."""
        return CirclePoint.wrap(-self.value)

    def __lt__(self, other: CirclePoint) -> bool:
        return self.value < other.value

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"CirclePoint({self.value})"


P0 = CirclePoint(ZERO)


def strictly_between(x: CirclePoint, lo: CirclePoint, hi: CirclePoint) -> bool:
    """True iff x lies strictly inside the counterclockwise interval lo -> hi.

    Counterclockwise means increasing dyadic value; the interval may wrap
    through 0.
    """
    if lo == hi:
        raise ValidationError("interval endpoints coincide")
    if lo < hi:
        return lo < x < hi
    return x > lo or x < hi


@dataclass(frozen=True)
class Arc:
    """An unordered chord between two distinct circle points, smaller first."""

    p: CirclePoint
    q: CirclePoint

    def __post_init__(self) -> None:
        if not self.p < self.q:
            raise ValidationError(f"arc endpoints not ordered: {self.p}, {self.q}")

    @classmethod
    def of(cls, x: CirclePoint, y: CirclePoint) -> Arc:
        if x == y:
            raise ValidationError("arc endpoints must be distinct")
        return cls(x, y) if x < y else cls(y, x)

    def endpoints(self) -> tuple[CirclePoint, CirclePoint]:
        return (self.p, self.q)

    def has_endpoint(self, x: CirclePoint) -> bool:
        return x == self.p or x == self.q

    def crosses(self, other: Arc) -> bool:
        """True iff the two chords cross in the open disk.

        Chords sharing an endpoint never cross.
        """
        if self.has_endpoint(other.p) or self.has_endpoint(other.q):
            return False
        return strictly_between(other.p, self.p, self.q) != strictly_between(
            other.q, self.p, self.q
        )

    def std_interval(self) -> StdInterval | None:
        """The standard interval this chord spans, if it is a tessellation arc.

        The diameter {0, 1/2} is reported as (0, 1); for every other
        tessellation arc the representation is unique.
        """
        w = self.q.value - self.p.value
        if w.num == 1 and self.p.value.exp <= w.exp and w.exp >= 1:
            n = w.exp
            return StdInterval(self.p.value.scaled_floor(n), n)
        w = ONE - w
        if w.num == 1 and self.q.value.exp <= w.exp and w.exp >= 1:
            n = w.exp
            return StdInterval(self.q.value.scaled_floor(n), n).arc_key()
        return None

    def reflected(self) -> Arc:
        return Arc.of(self.p.reflect(), self.q.reflect())

    def sort_key(self):
        return (self.p.value.num, -self.p.value.exp, self.q.value.num, -self.q.value.exp)

    def __lt__(self, other: Arc) -> bool:
        return (self.p, self.q) < (other.p, other.q)

    def __str__(self) -> str:
        return f"{{{self.p}, {self.q}}}"

    def __repr__(self) -> str:
        return f"Arc({self.p}, {self.q})"


@dataclass(frozen=True)
class StdInterval:
    """The standard interval [a/2^n, (a+1)/2^n] with 0 <= a < 2^n, n >= 1.

    The degenerate root [0, 1] never appears as an interval object; it is
    only implicit as the unsplit whole circle inside breakpoint partitions.
    """

    a: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 1 or not 0 <= self.a < (1 << self.n):
            raise ValidationError(f"bad standard interval ({self.a}, {self.n})")

    @cached_property
    def lo(self) -> CirclePoint:
        return CirclePoint(Dyadic(self.a, self.n))

    @cached_property
    def hi(self) -> CirclePoint:
        return CirclePoint.wrap(Dyadic(self.a + 1, self.n))

    @cached_property
    def _arc(self) -> Arc:
        return Arc.of(self.lo, self.hi)

    def arc(self) -> Arc:
        return self._arc

    def arc_key(self) -> StdInterval:
        """Canonical representative of the spanned chord.

        (0, 1) and (1, 1) span the same diameter; (0, 1) is the
        representative used everywhere arcs are compared.
        """
        if self.n == 1:
            return StdInterval(0, 1)
        return self

    def adjacent_triangles(self) -> tuple[ETriangle, ETriangle]:
        """The two tessellation triangles having this arc as a side.

        Child (a, n) first, then the parent (a // 2, n - 1); at level one the
        pair is (0, 1), (1, 1).
        """
        if self.n == 1:
            return (ETriangle(0, 1), ETriangle(1, 1))
        return (ETriangle(self.a, self.n), ETriangle(self.a // 2, self.n - 1))

    def __lt__(self, other: StdInterval) -> bool:
        return (self.n, self.a) < (other.n, other.a)

    def __str__(self) -> str:
        return f"I({self.a},{self.n})"


@dataclass(frozen=True)
class ETriangle:
    """Tessellation triangle with vertices a/2^n, (2a+1)/2^(n+1), (a+1)/2^n."""

    a: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 1 or not 0 <= self.a < (1 << self.n):
            raise ValidationError(f"bad tessellation triangle ({self.a}, {self.n})")

    @cached_property
    def _vertices(self) -> tuple[CirclePoint, CirclePoint, CirclePoint]:
        return (
            CirclePoint(Dyadic(self.a, self.n)),
            CirclePoint(Dyadic(2 * self.a + 1, self.n + 1)),
            CirclePoint.wrap(Dyadic(self.a + 1, self.n)),
        )

    def vertices(self) -> tuple[CirclePoint, CirclePoint, CirclePoint]:
        return self._vertices

    @cached_property
    def _sides(self) -> tuple[StdInterval, StdInterval, StdInterval]:
        return (
            StdInterval(self.a, self.n),
            StdInterval(2 * self.a, self.n + 1),
            StdInterval(2 * self.a + 1, self.n + 1),
        )

    def sides(self) -> tuple[StdInterval, StdInterval, StdInterval]:
        return self._sides

    def parent(self) -> ETriangle:
        """Neighbour across the long side (toward the centre of the disk)."""
        if self.n == 1:
            return ETriangle(1 - self.a, 1)
        return ETriangle(self.a // 2, self.n - 1)

    def children(self) -> tuple[ETriangle, ETriangle]:
        return (ETriangle(2 * self.a, self.n + 1), ETriangle(2 * self.a + 1, self.n + 1))

    def neighbours(self) -> tuple[ETriangle, ETriangle, ETriangle]:
        c0, c1 = self.children()
        return (self.parent(), c0, c1)

    def sort_key(self) -> tuple[int, int]:
        return (self.n, self.a)

    def __str__(self) -> str:
        return f"T({self.a},{self.n})"


def e_triangle_of_face(face: tuple[CirclePoint, CirclePoint, CirclePoint]) -> ETriangle | None:
    """Identify a vertex triple as a tessellation triangle, if it is one."""
    pts = sorted(face)
    for i in range(3):
        x, y = pts[i], pts[(i + 1) % 3]
        arc = Arc.of(x, y) if x < y else Arc.of(y, x)
        s = arc.std_interval()
        if s is None:
            continue
        for cand in ({s} if s.n > 1 else {StdInterval(0, 1), StdInterval(1, 1)}):
            tri = ETriangle(cand.a, cand.n)
            if set(tri.vertices()) == set(pts):
                return tri
    return None


@lru_cache(maxsize=65536)
def crossed_e_arcs(arc: Arc) -> frozenset[StdInterval]:
    """All tessellation arcs the chord crosses, as canonical interval keys.

    A dyadic endpoint of canonical exponent k is strictly inside a level-n
    standard interval only for n < k, so the set is finite; each level
    contributes at most one interval per endpoint.
    """
    out: set[StdInterval] = set()
    for x, other in ((arc.p, arc.q), (arc.q, arc.p)):
        for n in range(1, x.value.exp):
            s = StdInterval(x.value.scaled_floor(n), n)
            if other == s.lo or other == s.hi:
                continue
            if not strictly_between(other, s.lo, s.hi):
                out.add(s.arc_key())
    return frozenset(out)
