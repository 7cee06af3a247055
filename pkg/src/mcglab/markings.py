"""Complete clean markings on the once-punctured torus and four-punctured sphere.

A marking is a base slope with a Farey-adjacent transversal.  The marking
graph joins markings differing by a twist of the transversal about the base
or by swapping the two curves.  Since SL(2,Z) acts simply transitively on
oriented Farey edges (up to sign), a marking is the same thing as a matrix
g with columns (base, transversal) and the moves are right multiplication by
T^{+-k} and S.  That is what makes exact distances cheap.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .farey import (
    INFINITY,
    ZERO,
    Matrix,
    Slope,
    canonical_chart_matrix,
    farey_dist,
    mat_apply,
    mat_inv,
    mat_mul,
    mat_pow,
    slope_intersection,
    slope_normalize,
    transvection,
)


class NotTransverse(ValueError):
    pass


class RadiusCapExceeded(ValueError):
    pass


class EmptyProjection(ValueError):
    pass


class Surface1(enum.Enum):
    TorusOnePuncture = "s11"
    SphereFourPunctures = "s04"

    @property
    def intersection_scale(self) -> int:
        return 1 if self is Surface1.TorusOnePuncture else 2

    @property
    def full_twist_power(self) -> int:
        # the full Dehn twist acts on slopes as T^2 on the four-punctured sphere
        return 1 if self is Surface1.TorusOnePuncture else 2

    @classmethod
    def parse(cls, text: str) -> "Surface1":
        return cls(text.lower())


S11 = Surface1.TorusOnePuncture
S04 = Surface1.SphereFourPunctures


@dataclass(frozen=True)
class Marking1:
    surface: Surface1
    base: Slope
    transversal: Slope

    def __post_init__(self):
        if slope_intersection(self.base, self.transversal) != 1:
            raise NotTransverse(f"{self.base} and {self.transversal} are not adjacent")

    def __str__(self) -> str:
        return f"({self.base}, {self.transversal})"


def marking_new(surface: Surface1, base: Slope, transversal: Slope) -> Marking1:
    return Marking1(surface, base, transversal)


def standard_marking(surface: Surface1 = S11) -> Marking1:
    return Marking1(surface, ZERO, INFINITY)


class WholeSurface:
    """Marker for the non-annular domain: the surface itself."""

    def __repr__(self) -> str:
        return "S"


WHOLE = WholeSurface()


@dataclass(frozen=True)
class Unreachable:
    cap: int

    def __bool__(self) -> bool:
        return False


def _twisted(base: Slope, t: Slope, power: int) -> Slope:
    return slope_normalize(*mat_apply(mat_pow(transvection(base), power), t.vector))


def elementary_moves(mu: Marking1, half_twists: bool = False) -> list[Marking1]:
    """Twist+, Twist-, Flip, then the half twists on S04 when enabled."""
    k = mu.surface.full_twist_power
    out = [
        Marking1(mu.surface, mu.base, _twisted(mu.base, mu.transversal, k)),
        Marking1(mu.surface, mu.base, _twisted(mu.base, mu.transversal, -k)),
        Marking1(mu.surface, mu.transversal, mu.base),
    ]
    if half_twists and mu.surface is S04:
        out.append(Marking1(mu.surface, mu.base, _twisted(mu.base, mu.transversal, 1)))
        out.append(Marking1(mu.surface, mu.base, _twisted(mu.base, mu.transversal, -1)))
    return out


@dataclass
class MarkingBall:
    center: Marking1
    radius: int
    vertices: list[Marking1]
    edges: list[list[int]]
    distances: list[int]

    def __post_init__(self):
        self.index = {m: i for i, m in enumerate(self.vertices)}

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return sum(len(e) for e in self.edges) // 2

    def edge_pairs(self) -> Iterator[tuple[Marking1, Marking1]]:
        for i, nbrs in enumerate(self.edges):
            for j in nbrs:
                if i < j:
                    yield self.vertices[i], self.vertices[j]

    def annuli(self) -> list[Slope]:
        """Every slope used as base or transversal somewhere in the ball."""
        seen = {}
        for m in self.vertices:
            seen.setdefault(m.base, None)
            seen.setdefault(m.transversal, None)
        return list(seen)


DEFAULT_RADIUS_CAP = 10


def marking_ball(center: Marking1, radius: int, cap: int = DEFAULT_RADIUS_CAP,
                 half_twists: bool = False) -> MarkingBall:
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if radius > cap:
        raise RadiusCapExceeded(f"radius {radius} exceeds cap {cap}")
    verts = [center]
    dist = {center: 0}
    queue = deque([center])
    while queue:
        m = queue.popleft()
        if dist[m] == radius:
            continue
        for n in elementary_moves(m, half_twists):
            if n not in dist:
                dist[n] = dist[m] + 1
                verts.append(n)
                queue.append(n)
    index = {m: i for i, m in enumerate(verts)}
    edges = []
    for m in verts:
        nbrs = sorted({index[n] for n in elementary_moves(m, half_twists) if n in index})
        edges.append(nbrs)
    return MarkingBall(center, radius, verts, edges, [dist[m] for m in verts])


# exact word metric ---------------------------------------------------------

S_MAT: Matrix = ((0, -1), (1, 0))


def marking_matrix(mu: Marking1) -> Matrix:
    """Determinant-one matrix with columns +-base and +-transversal."""
    b, t = mu.base.vector, mu.transversal.vector
    if b[0] * t[1] - b[1] * t[0] == -1:
        t = (-t[0], -t[1])
    return ((b[0], t[0]), (b[1], t[1]))


def marking_from_matrix(surface: Surface1, g: Matrix) -> Marking1:
    return Marking1(surface, slope_normalize(g[0][0], g[1][0]), slope_normalize(g[0][1], g[1][1]))


def _euclid_word(h: Matrix, step: int) -> list[tuple[str, int]] | None:
    """Write h = T^{step*k1} S T^{step*k2} S ... in PSL(2,Z).

    With step 2 the reduction stays inside the theta group generated by S
    and T^2; None is returned when h is not in it.
    """
    (a, b), (c, d) = h
    word: list[tuple[str, int]] = []
    while c != 0:
        if step == 1:
            k = a // c
        else:
            k = _nearest(a, 2 * c)
            if abs(a - 2 * k * c) == abs(c):
                return None
        a, b = a - step * k * c, b - step * k * d
        if k:
            word.append(("T", k))
        word.append(("S", 1))
        # h <- S^{-1} h
        a, b, c, d = c, d, -a, -b
    # h = +-[[1, m], [0, 1]]
    m = b * a  # a = +-1
    if m % step:
        return None
    if m:
        word.append(("T", m // step))
    return word


def _nearest(x: int, y: int) -> int:
    """Integer nearest to x / y (halves rounded down); y != 0."""
    if y < 0:
        x, y = -x, -y
    return (2 * x + y) // (2 * y)


def word_length(h: Matrix, surface: Surface1, half_twists: bool = False) -> int | None:
    """Exact length of h in the marking graph generators, None if unreachable."""
    if surface is S11:
        return _psl2_length(h)
    if half_twists:
        return None
    word = _euclid_word(h, 2)
    if word is None:
        return None
    return sum(abs(k) for _, k in word)


def _psl2_length(h: Matrix) -> int:
    word = _euclid_word(h, 1)
    syll: list[int] = []

    def push(x: int) -> None:
        if x == 0:
            if syll and syll[-1] == 0:
                syll.pop()
            else:
                syll.append(0)
            return
        if syll and syll[-1] != 0:
            e = (syll.pop() + x) % 3
            if e:
                syll.append(1 if e == 1 else -1)
        else:
            syll.append(x)

    for gen, k in word:
        if gen == "S":
            push(0)
        elif k > 0:
            for _ in range(k):
                push(0)
                push(1)
        else:
            for _ in range(-k):
                push(-1)
                push(0)
    return _pairing_cost(syll)


def _pairing_cost(syll: Sequence[int]) -> int:
    """Cheapest cover of an S/U syllable string by S, SU (=T), U^-1 S (=T^-1).

    S alone costs 1, a U-syllable alone costs 2, and a U paired with the S
    before it (U^+1) or after it (U^-1) costs 1 for both.  Each S pairs at
    most once, so this is a matching along a path.
    """
    n = len(syll)
    best = [0] * (n + 1)  # best[i]: cost of covering syll[:i]
    for i in range(1, n + 1):
        x = syll[i - 1]
        best[i] = best[i - 1] + (1 if x == 0 else 2)
        if i >= 2:
            y = syll[i - 2]
            if (y == 0 and x == 1) or (y == -1 and x == 0):
                best[i] = min(best[i], best[i - 2] + 1)
    return best[n]


def marking_distance(mu: Marking1, nu: Marking1, cap: int = 10 ** 9,
                     half_twists: bool = False) -> int | Unreachable:
    if mu.surface is not nu.surface:
        raise ValueError("markings live on different surfaces")
    if mu == nu:
        return 0
    if half_twists and mu.surface is S04:
        return marking_distance_bfs(mu, nu, cap, half_twists=True)
    h = mat_mul(mat_inv(marking_matrix(mu)), marking_matrix(nu))
    d = word_length(h, mu.surface)
    if d is None or d > cap:
        return Unreachable(cap)
    return d


def marking_distance_bfs(mu: Marking1, nu: Marking1, cap: int,
                         half_twists: bool = False) -> int | Unreachable:
    """Bidirectional breadth-first search, exact up to cap."""
    if mu == nu:
        return 0
    sides = [{mu: 0}, {nu: 0}]
    fronts = [[mu], [nu]]
    radius = [0, 0]
    while radius[0] + radius[1] < cap:
        s = 0 if len(fronts[0]) <= len(fronts[1]) else 1
        nxt = []
        for m in fronts[s]:
            for n in elementary_moves(m, half_twists):
                if n in sides[s]:
                    continue
                if n in sides[1 - s]:
                    return radius[s] + 1 + sides[1 - s][n]
                sides[s][n] = radius[s] + 1
                nxt.append(n)
        radius[s] += 1
        fronts[s] = nxt
        if not nxt:
            break
    return Unreachable(cap)


# projections ----------------------------------------------------------------

def project_marking(mu: Marking1, target: WholeSurface | Slope) -> Slope | int:
    """pi_S gives the base; an annulus gives a twist coordinate."""
    if isinstance(target, WholeSurface):
        return mu.base
    alpha = target
    m = canonical_chart_matrix(alpha)
    other = mu.transversal if alpha == mu.base else mu.base
    if other == alpha:
        raise EmptyProjection(f"annulus {alpha} misses the marking")
    x, y = mat_apply(m, other.vector)
    if y < 0:
        x, y = -x, -y
    return x // y


@dataclass(frozen=True)
class RelativeMarking:
    """The restriction of a marking to an annulus: a point of Z."""
    axis: Slope
    twist: int


def restrict_marking(mu: Marking1, alpha: Slope) -> RelativeMarking:
    return RelativeMarking(alpha, project_marking(mu, alpha))


def domain_distance(mu: Marking1, nu: Marking1, target: WholeSurface | Slope) -> int:
    if isinstance(target, WholeSurface):
        return farey_dist(mu.base, nu.base)
    return abs(project_marking(mu, target) - project_marking(nu, target))


def projection_table(markings: Sequence[Marking1], annuli: Sequence[Slope]) -> np.ndarray:
    """Twist coordinates of every marking in every annulus (rows: annuli)."""
    out = np.empty((len(annuli), len(markings)), dtype=np.int64)
    for i, alpha in enumerate(annuli):
        m = canonical_chart_matrix(alpha)
        for j, mu in enumerate(markings):
            other = mu.transversal if alpha == mu.base else mu.base
            x, y = mat_apply(m, other.vector)
            if y < 0:
                x, y = -x, -y
            out[i, j] = x // y
    return out


def thresholded_sums(markings: Sequence[Marking1], annuli: Sequence[Slope],
                     threshold: int) -> np.ndarray:
    """Matrix of sum over domains Y with d_Y > threshold of d_Y, for all pairs."""
    n = len(markings)
    total = np.zeros((n, n), dtype=np.int64)
    table = projection_table(markings, annuli)
    for row in table:
        d = np.abs(row[:, None] - row[None, :])
        total += np.where(d > threshold, d, 0)
    bases = [m.base for m in markings]
    for i in range(n):
        for j in range(i + 1, n):
            d = farey_dist(bases[i], bases[j])
            if d > threshold:
                total[i, j] += d
                total[j, i] += d
    return total


def distance_matrix(markings: Sequence[Marking1]) -> np.ndarray:
    n = len(markings)
    mats = [marking_matrix(m) for m in markings]
    invs = [mat_inv(g) for g in mats]
    out = np.zeros((n, n), dtype=np.int64)
    surface = markings[0].surface if markings else S11
    for i in range(n):
        for j in range(i + 1, n):
            d = word_length(mat_mul(invs[i], mats[j]), surface)
            out[i, j] = out[j, i] = -1 if d is None else d
    return out


@dataclass(frozen=True)
class QuasiFit:
    K: int
    C: int


def fit_quasi_constants(dist: Iterable[int], sums: Iterable[int], k_max: int = 64) -> QuasiFit:
    """Smallest (K, C) with d/K - C <= sum <= K d + C on every pair.

    For each integer K the least integer C is forced; the pair minimizing
    max(K, C) wins, ties going to the smaller K.
    """
    d = np.asarray(list(dist), dtype=np.float64)
    s = np.asarray(list(sums), dtype=np.float64)
    best = None
    for k in range(1, k_max + 1):
        lower = d / k - s
        upper = s - k * d
        c = int(np.ceil(max(0.0, lower.max(initial=0.0), upper.max(initial=0.0)) - 1e-12))
        key = (max(k, c), k)
        if best is None or key < best[0]:
            best = (key, QuasiFit(k, c))
    return best[1]
