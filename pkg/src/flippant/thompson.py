"""Thompson's group T as exact piecewise-linear circle maps.

An element is stored as a pair of standard dyadic partitions together with a
cyclic offset: source interval i maps affinely, orientation preserving, onto
target interval (i + offset) mod k.  Elements are reduced by collapsing
sibling interval pairs whose images are siblings in the same order; group
operations always return the reduced form, and equality of reduced forms is
structural.

The extension by the reflection x -> 1 - x (mod 1) is modelled by a single
bit: (t, 1) denotes the map t composed after the reflection.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from .dyadic import HALF, ONE, P0, ZERO, Arc, CirclePoint, Dyadic, std_level
from .errors import PartitionError, WordError


@dataclass(frozen=True)
class StdPartition:
    """Breakpoints 0 = x_0 < x_1 < ... < x_{k-1} < 1 cutting the circle into
    k standard dyadic intervals (the last interval closes up at 1)."""

    points: tuple[CirclePoint, ...]

    def __post_init__(self) -> None:
        pts = self.points
        if not pts or pts[0] != P0:
            raise PartitionError("partition must start at 0")
        for i, p in enumerate(pts):
            hi = pts[i + 1].value if i + 1 < len(pts) else ONE
            if not p.value < hi:
                raise PartitionError("breakpoints must increase strictly")
            if std_level(p.value, hi) is None:
                raise PartitionError(f"interval [{p.value}, {hi}] is not standard dyadic")

    @classmethod
    def of(cls, values) -> StdPartition:
        return cls(tuple(CirclePoint(v) if isinstance(v, Dyadic) else v for v in values))

    def __len__(self) -> int:
        return len(self.points)

    def level(self, i: int) -> int:
        hi = self.points[i + 1].value if i + 1 < len(self.points) else ONE
        n = std_level(self.points[i].value, hi)
        assert n is not None
        return n

    def interval_index(self, x: CirclePoint) -> int:
        """Index of the interval containing x (left-closed)."""
        values = [p.value for p in self.points]
        return bisect_right(values, x.value) - 1


@dataclass(frozen=True)
class TElement:
    """A piecewise-linear circle homeomorphism in Thompson's group T.

    Group operations return reduced representatives, so structural equality
    of results is equality in the group.  ``expand`` deliberately returns an
    unreduced instance; call ``reduce`` to renormalise.
    """

    source: StdPartition
    target: StdPartition
    offset: int

    def __post_init__(self) -> None:
        k = len(self.source)
        if len(self.target) != k:
            raise PartitionError("source and target partition sizes differ")
        if not 0 <= self.offset < k:
            raise PartitionError(f"offset {self.offset} out of range for size {k}")

    @property
    def size(self) -> int:
        return len(self.source)

    def __call__(self, x: CirclePoint) -> CirclePoint:
        i = self.source.interval_index(x)
        j = (i + self.offset) % self.size
        s = self.source.level(i) - self.target.level(j)
        y = self.target.points[j].value + (x.value - self.source.points[i].value).shifted(s)
        return CirclePoint.wrap(y)

    def map_arc(self, arc: Arc) -> Arc:
        return Arc.of(self(arc.p), self(arc.q))

    def pairs(self) -> list[tuple[CirclePoint, CirclePoint]]:
        k = self.size
        return [
            (self.source.points[i], self.target.points[(i + self.offset) % k])
            for i in range(k)
        ]

    def __mul__(self, other: TElement) -> TElement:
        """Composition self o other (apply ``other`` first)."""
        inv = other.inverse()
        xs = {p for p, _ in other.pairs()}
        xs.update(inv(s) for s in self.source.points)
        pairs = [(x, self(other(x))) for x in xs]
        return _from_pairs(pairs).reduce()

    def inverse(self) -> TElement:
        k = self.size
        return TElement(self.target, self.source, (k - self.offset) % k)

    def expand(self, i: int) -> TElement:
        """Split source interval i and its image in half.  Not reduced."""
        k = self.size
        if not 0 <= i < k:
            raise PartitionError(f"expand index {i} out of range")
        j = (i + self.offset) % k
        src_mid = self.source.points[i].value + Dyadic(1, self.source.level(i) + 1)
        tgt_mid = self.target.points[j].value + Dyadic(1, self.target.level(j) + 1)
        pairs = self.pairs()
        pairs.append((CirclePoint(src_mid), CirclePoint(tgt_mid)))
        return _from_pairs(pairs)

    def reduce(self) -> TElement:
        """Collapse sibling pairs until no collapse applies.

        Deterministic left-to-right scan, restarted after each collapse.  The
        scan never merges the two halves of the whole circle, so the identity
        stabilises at the minimal circle partition {0, 1/2}.
        """
        src = [p.value for p in self.source.points]
        tgt = [p.value for p in self.target.points]
        off = self.offset
        while len(src) > 2:
            k = len(src)
            for i in range(k - 1):
                j = (i + off) % k
                if j == k - 1:
                    continue
                s_hi = src[i + 2] if i + 2 < k else ONE
                t_hi = tgt[j + 2] if j + 2 < k else ONE
                if _siblings(src[i], src[i + 1], s_hi) and _siblings(tgt[j], tgt[j + 1], t_hi):
                    del src[i + 1]
                    del tgt[j + 1]
                    if j + 1 < off:
                        off -= 1
                    break
            else:
                break
        return TElement(
            StdPartition.of(src), StdPartition.of(tgt), off
        )

    def is_identity(self) -> bool:
        f = self.reduce()
        return f.size == 2 and f.offset == 0 and f.source == f.target

    def to_json(self) -> dict:
        return {
            "source": [str(p) for p in self.source.points],
            "target": [str(p) for p in self.target.points],
            "offset": self.offset,
        }

    @classmethod
    def from_json(cls, data: dict) -> TElement:
        return cls(
            StdPartition(tuple(CirclePoint.parse(s) for s in data["source"])),
            StdPartition(tuple(CirclePoint.parse(s) for s in data["target"])),
            int(data["offset"]),
        )

    def __str__(self) -> str:
        src = ",".join(str(p) for p in self.source.points)
        tgt = ",".join(str(p) for p in self.target.points)
        return f"[{src}] -> [{tgt}] +{self.offset}"


def _siblings(lo: Dyadic, mid: Dyadic, hi: Dyadic) -> bool:
    """True iff [lo, mid], [mid, hi] are the two halves of a standard interval
    of level >= 1 (merging to the whole circle is not a collapse)."""
    if mid - lo != hi - mid:
        return False
    n = std_level(lo, hi)
    return n is not None and n >= 1


def _from_pairs(pairs) -> TElement:
    """Build an element from breakpoint pairs (x, f(x)).

    The pairs must describe an orientation-preserving correspondence of two
    standard partitions; this is checked, not assumed.
    """
    by_src = sorted(pairs)
    xs = [x for x, _ in by_src]
    ys_sorted = sorted(y for _, y in by_src)
    k = len(xs)
    if xs[0] != P0:
        raise PartitionError("breakpoint pairs do not include 0")
    off = ys_sorted.index(by_src[0][1])
    for i in range(k):
        if by_src[i][1] != ys_sorted[(i + off) % k]:
            raise PartitionError("breakpoint pairs do not preserve cyclic order")
    return TElement(StdPartition(tuple(xs)), StdPartition(tuple(ys_sorted)), off)


def identity() -> TElement:
    half = CirclePoint(HALF)
    part = StdPartition((P0, half))
    return TElement(part, part, 0)


def alpha() -> TElement:
    """Order-four generator: rigid rotation by a quarter turn."""
    quarters = StdPartition.of([ZERO, Dyadic(1, 2), HALF, Dyadic(3, 2)])
    return TElement(quarters, quarters, 1)


def beta() -> TElement:
    """Order-three generator: [0,1/4] -> [1/4,1/2] -> [1/2,1] -> [0,1/4]."""
    part = StdPartition.of([ZERO, Dyadic(1, 2), HALF])
    return TElement(part, part, 1)


def from_polygons(source, target, offset: int) -> TElement:
    """The unique element sending source interval i onto target interval
    (i + offset) mod k affinely, reduced.

    Both arguments are breakpoint sequences of standard partitions of the
    circle (the vertex lists of two inscribed polygons of equal size).
    """
    src = StdPartition(tuple(source))
    tgt = StdPartition(tuple(target))
    if len(src) != len(tgt):
        raise PartitionError("polygon side counts differ")
    return TElement(src, tgt, offset % len(src)).reduce()


_GENERATORS = {"a": alpha, "b": beta}


def from_word(word: str) -> TElement:
    """Left-to-right composition of generators: "ab" is alpha o beta.

    Letters: a = alpha, b = beta, A = alpha^-1, B = beta^-1.
    """
    acc = identity()
    for ch in word:
        low = ch.lower()
        if low not in _GENERATORS:
            raise WordError(f"unknown generator letter {ch!r}")
        g = _GENERATORS[low]()
        acc = acc * (g.inverse() if ch.isupper() else g)
    return acc


def inverse_word(word: str) -> str:
    return word[::-1].swapcase()


def gamma_r(f: TElement) -> TElement:
    """Conjugation by the reflection x -> 1 - x: an involutive automorphism."""
    pairs = [(x.reflect(), y.reflect()) for x, y in f.pairs()]
    return _from_pairs(pairs).reduce()


def brin_outer(f: TElement) -> TElement:
    """gamma_r followed by conjugation with alpha^2.

    Sends alpha to alpha^-1 and beta to beta^-1.
    """
    a2 = alpha() * alpha()
    return a2 * gamma_r(f) * a2.inverse()


@dataclass(frozen=True)
class ExtElement:
    """An element of T extended by the reflection: the map t o rho^reflected,
    where rho(x) = 1 - x (mod 1)."""

    t: TElement
    reflected: int = 0

    def __post_init__(self) -> None:
        if self.reflected not in (0, 1):
            raise PartitionError("reflected bit must be 0 or 1")

    def __call__(self, x: CirclePoint) -> CirclePoint:
        if self.reflected:
            x = x.reflect()
        return self.t(x)

    def map_arc(self, arc: Arc) -> Arc:
        return Arc.of(self(arc.p), self(arc.q))

    def __mul__(self, other: ExtElement) -> ExtElement:
        """(t1, b1) o (t2, b2) = (t1 o rho^b1 t2 rho^b1, b1 + b2)."""
        inner = gamma_r(other.t) if self.reflected else other.t
        return ExtElement(self.t * inner, self.reflected ^ other.reflected)

    def inverse(self) -> ExtElement:
        ti = self.t.inverse()
        return ExtElement(gamma_r(ti) if self.reflected else ti, self.reflected)

    def is_identity(self) -> bool:
        return self.reflected == 0 and self.t.is_identity()

    def to_json(self) -> dict:
        data = self.t.to_json()
        data["reflected"] = self.reflected
        return data

    @classmethod
    def from_json(cls, data: dict) -> ExtElement:
        return cls(TElement.from_json(data), int(data.get("reflected", 0)))

    @classmethod
    def lift(cls, g) -> ExtElement:
        return g if isinstance(g, ExtElement) else cls(g, 0)


def reflection() -> ExtElement:
    """The reflection x -> 1 - x as an extended element (identity, bit 1)."""
    return ExtElement(identity(), 1)
