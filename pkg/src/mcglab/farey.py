"""Slopes, the Farey graph and annular twist coordinates.

Vertices of the curve complex of the once-punctured torus and of the
four-punctured sphere are reduced fractions p/q (with 1/0 standing for
infinity); two slopes are adjacent when |ps - qr| = 1.  Everything here is
exact integer arithmetic on Python ints.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence


class ZeroSlopePair(ValueError):
    pass


class DoesNotCrossAnnulus(ValueError):
    pass


class VertexDisjointFromDomain(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Slope:
    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if q < 0 or gcd(p, q) != 1 or (q == 0 and p != 1):
            raise ValueError(f"{p}/{q} is not a canonical slope")

    @classmethod
    def of(cls, p: int, q: int = 1) -> "Slope":
        return slope_normalize(p, q)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        num, _, den = text.partition("/")
        return slope_normalize(int(num), int(den or 1))

    @property
    def vector(self) -> tuple[int, int]:
        return (self.p, self.q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


INFINITY = Slope(1, 0)
ZERO = Slope(0, 1)
ONE = Slope(1, 1)


def slope_normalize(p: int, q: int) -> Slope:
    """Canonical slope for the pair (p, q): sign on p, no common factor."""
    if p == 0 and q == 0:
        raise ZeroSlopePair("(0, 0) is not a slope")
    g = gcd(p, q)
    p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return Slope(p, q)


def det(a: Sequence[int], b: Sequence[int]) -> int:
    return a[0] * b[1] - a[1] * b[0]


def slope_intersection(a: Slope, b: Slope) -> int:
    return abs(a.p * b.q - a.q * b.p)


def adjacent(a: Slope, b: Slope) -> bool:
    return slope_intersection(a, b) == 1


Matrix = tuple[tuple[int, int], tuple[int, int]]

IDENTITY: Matrix = ((1, 0), (0, 1))


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    return (
        (x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]),
        (x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]),
    )


def mat_inv(x: Matrix) -> Matrix:
    (a, b), (c, d) = x
    return ((d, -b), (-c, a))


def mat_pow(x: Matrix, n: int) -> Matrix:
    if n < 0:
        x, n = mat_inv(x), -n
    out = IDENTITY
    while n:
        if n & 1:
            out = mat_mul(out, x)
        x = mat_mul(x, x)
        n >>= 1
    return out


def mat_apply(m: Matrix, v: Sequence[int]) -> tuple[int, int]:
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def transvection(alpha: Slope) -> Matrix:
    """Matrix of the Dehn twist about alpha: v -> v + det(alpha, v) alpha."""
    p, q = alpha.p, alpha.q
    return ((1 - p * q, p * p), (-q * q, 1 + p * q))


# generator ids accepted in MappingClass1 words
GENERATORS: dict[str, Matrix] = {
    "T10": transvection(INFINITY),
    "T01": transvection(ZERO),
}


@dataclass(frozen=True)
class MappingClass1:
    matrix: Matrix
    word: tuple[tuple[str, int], ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        if a * d - b * c != 1:
            raise ValueError("mapping class matrix must have determinant 1")
        if self.word is not None and word_matrix(self.word) != self.matrix:
            raise ValueError("word does not reproduce the matrix")

    @classmethod
    def from_word(cls, word: Iterable[tuple[str, int]]) -> "MappingClass1":
        word = tuple((g, int(n)) for g, n in word)
        return cls(word_matrix(word), word)

    def __matmul__(self, other: "MappingClass1") -> "MappingClass1":
        w = None
        if self.word is not None and other.word is not None:
            w = self.word + other.word
        return MappingClass1(mat_mul(self.matrix, other.matrix), w)

    def inverse(self) -> "MappingClass1":
        w = None
        if self.word is not None:
            w = tuple((g, -n) for g, n in reversed(self.word))
        return MappingClass1(mat_inv(self.matrix), w)

    def power(self, n: int) -> "MappingClass1":
        w = None
        if self.word is not None:
            base = self.word if n >= 0 else tuple((g, -k) for g, k in reversed(self.word))
            w = base * abs(n)
        return MappingClass1(mat_pow(self.matrix, n), w)


def word_matrix(word: Iterable[tuple[str, int]]) -> Matrix:
    out = IDENTITY
    for gen, n in word:
        out = mat_mul(out, mat_pow(GENERATORS[gen], n))
    return out


def dehn_twist(alpha: Slope, power: int = 1) -> MappingClass1:
    return MappingClass1(mat_pow(transvection(alpha), power))


def apply_mapping_class(m: MappingClass1 | Matrix, a: Slope) -> Slope:
    matrix = m.matrix if isinstance(m, MappingClass1) else m
    x, y = mat_apply(matrix, a.vector)
    return slope_normalize(x, y)


def neighbors_window(a: Slope, lo: int, hi: int) -> list[Slope]:
    """Neighbors r0 + n*a for n in [lo, hi], indexed through the canonical chart."""
    inv = mat_inv(canonical_chart_matrix(a))
    return [slope_normalize(*mat_apply(inv, (n, 1))) for n in range(lo, hi + 1)]


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    return a, x0, y0


def canonical_neighbor(a: Slope) -> Slope:
    """Neighbor r/s of a with least s >= 0, then least |r|, ties to positive r."""
    p, q = a.p, a.q
    if q == 0:
        return ZERO
    g, x, y = _ext_gcd(p, q)
    # p*x + q*y = g = +-1, so (r0, s0) = (-y*g, x*g) solves p*s0 - q*r0 = 1
    r0, s0 = -y * g, x * g
    candidates = []
    for sign in (1, -1):
        rf, sf = sign * r0, sign * s0
        k = (sf % q - sf) // q
        r, s = rf + k * p, sf + k * q
        candidates.append((s, abs(r), -r, r))
    s, _, _, r = min(candidates)
    return slope_normalize(r, s)


def canonical_chart_matrix(axis: Slope) -> Matrix:
    """SL(2,Z) matrix sending axis to 1/0, built from the canonical neighbor."""
    p, q = axis.p, axis.q
    nb = canonical_neighbor(axis)
    r, s = nb.p, nb.q
    eps = p * s - q * r
    r, s = eps * r, eps * s
    return ((s, -r), (-q, p))


@dataclass(frozen=True)
class TwistChart:
    axis: Slope
    matrix: MappingClass1

    def __post_init__(self):
        if apply_mapping_class(self.matrix, self.axis) != INFINITY:
            raise ValueError("chart matrix must send the axis to 1/0")


def twist_chart(axis: Slope) -> TwistChart:
    return TwistChart(axis, MappingClass1(canonical_chart_matrix(axis)))


def _twist_from_matrix(m: Matrix, beta: Slope) -> int:
    x, y = mat_apply(m, beta.vector)
    if y < 0:
        x, y = -x, -y
    return x // y


def twist_coordinate(chart: TwistChart, beta: Slope) -> int:
    if beta == chart.axis:
        raise DoesNotCrossAnnulus(f"{beta} is the core of the annulus")
    return _twist_from_matrix(chart.matrix.matrix, beta)


def twist(axis: Slope, beta: Slope) -> int:
    """Twist coordinate of beta in the canonical chart of axis."""
    if beta == axis:
        raise DoesNotCrossAnnulus(f"{beta} is the core of the annulus")
    return _twist_from_matrix(canonical_chart_matrix(axis), beta)


def annular_distance(alpha: Slope, beta: Slope, gamma: Slope) -> int:
    m = canonical_chart_matrix(alpha)
    for s in (beta, gamma):
        if s == alpha:
            raise DoesNotCrossAnnulus(f"{s} is the core of the annulus")
    return abs(_twist_from_matrix(m, beta) - _twist_from_matrix(m, gamma))


@dataclass(frozen=True)
class FareyGeodesic:
    vertices: tuple[Slope, ...]

    def __len__(self) -> int:
        return len(self.vertices) - 1

    @property
    def first(self) -> Slope:
        return self.vertices[0]

    @property
    def last(self) -> Slope:
        return self.vertices[-1]


def continued_fraction(p: int, q: int) -> list[int]:
    """Regular continued fraction of p/q (q >= 1), floor convention."""
    out = []
    while q:
        a = p // q
        out.append(a)
        p, q = q, p - a * q
    return out


def _distance_from_infinity(x: Slope) -> list[tuple[int, int]]:
    """Vertex vectors of a geodesic from 1/0 to x.

    The geodesic only needs the convergents: every Farey path from 1/0 to x
    can be pushed onto them, and c[k-2] is adjacent to c[k] exactly when the
    k-th partial quotient is 1.
    """
    if x == INFINITY:
        return [(1, 0)]
    cf = continued_fraction(x.p, x.q)
    conv = [(1, 0)]  # c[-1]
    prev2, prev1 = (0, 1), (1, 0)
    for a in cf:
        cur = (a * prev1[0] + prev2[0], a * prev1[1] + prev2[1])
        conv.append(cur)
        prev2, prev1 = prev1, cur
    # dist[i] refers to conv[i] (conv[0] is 1/0); partial quotient of conv[i] is cf[i-1]
    n = len(conv)
    dist = [0] * n
    back = [0] * n
    for i in range(1, n):
        dist[i], back[i] = dist[i - 1] + 1, i - 1
        if i >= 2 and cf[i - 1] == 1 and dist[i - 2] + 1 < dist[i]:
            dist[i], back[i] = dist[i - 2] + 1, i - 2
    path = [n - 1]
    while path[-1] != 0:
        path.append(back[path[-1]])
    return [conv[i] for i in reversed(path)]


def farey_distance(a: Slope, b: Slope) -> tuple[int, FareyGeodesic]:
    """Exact Farey distance with a witnessing geodesic from a to b."""
    if a == b:
        return 0, FareyGeodesic((a,))
    m = canonical_chart_matrix(b)
    x = apply_mapping_class(m, a)
    vecs = _distance_from_infinity(x)
    inv = mat_inv(m)
    verts = [slope_normalize(*mat_apply(inv, v)) for v in reversed(vecs)]
    return len(verts) - 1, FareyGeodesic(tuple(verts))


def farey_dist(a: Slope, b: Slope) -> int:
    return farey_distance(a, b)[0]


def set_distance(xs: Iterable[Slope], ys: Iterable[Slope]) -> int:
    """Min distance between two nonempty slope sets."""
    ys = list(ys)
    return min(farey_dist(x, y) for x in xs for y in ys)


def set_diameter(xs: Iterable[Slope]) -> int:
    xs = list(xs)
    return max((farey_dist(x, y) for i, x in enumerate(xs) for y in xs[i + 1:]), default=0)


def bounded_geodesic_image_probe(alpha: Slope, g: FareyGeodesic | Sequence[Slope]) -> int:
    verts = g.vertices if isinstance(g, FareyGeodesic) else tuple(g)
    if alpha in verts:
        raise VertexDisjointFromDomain(f"{alpha} lies on the geodesic")
    m = canonical_chart_matrix(alpha)
    coords = [_twist_from_matrix(m, v) for v in verts]
    return max(coords) - min(coords)
