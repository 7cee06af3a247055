"""The pants graph of the five-punctured sphere.

A vertex is a pair of disjoint distinct curves.  An elementary move keeps one
curve x and replaces the other, y, by a Farey neighbour of y in the curve
graph of Y_x.  Neighbours of y are indexed by n in the chart of Y_x (the
canonical neighbour of y's slope plus n copies of y), and a window W keeps
-W <= n <= W.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .curves05.curves import NormalCurve, intersection_number, with_origin
from .curves05.subsurface import (
    EMPTY,
    FareyChart05,
    SubsurfaceS05,
    chart_slope,
    curve_for_slope,
    farey_chart,
    project_many,
    side_subsurface,
)
from .farey import Slope, farey_dist, neighbors_window


class CurvesIntersect(ValueError):
    def __init__(self, i: int):
        super().__init__(f"curves intersect {i} times")
        self.i = i


class CurvesEqual(ValueError):
    pass


@dataclass(frozen=True)
class PantsVertex:
    curves: tuple[NormalCurve, NormalCurve]  # sorted by weights

    def __contains__(self, c: NormalCurve) -> bool:
        return c in self.curves

    def other(self, c: NormalCurve) -> NormalCurve:
        a, b = self.curves
        if c == a:
            return b
        if c == b:
            return a
        raise KeyError("curve is not in this pants decomposition")


def pants_vertex(a: NormalCurve, b: NormalCurve) -> PantsVertex:
    if a == b:
        raise CurvesEqual("a pants decomposition needs two distinct curves")
    i = intersection_number(a, b)
    if i:
        raise CurvesIntersect(i)
    a, b = with_origin(a), with_origin(b)
    pair = (a, b) if a.weights <= b.weights else (b, a)
    return PantsVertex(pair)


@dataclass(frozen=True)
class PantsMoveWindow:
    twist_window: int

    def __post_init__(self):
        if self.twist_window < 1:
            raise ValueError("window must be at least 1")


def pants_moves(p: PantsVertex, window: PantsMoveWindow | int) -> list[PantsVertex]:
    w = window.twist_window if isinstance(window, PantsMoveWindow) else PantsMoveWindow(window).twist_window
    out = []
    for x in p.curves:
        y = p.other(x)
        chart = farey_chart(side_subsurface(x))
        s = chart_slope(chart, y)
        for t in neighbors_window(s, -w, w):
            out.append(pants_vertex(x, curve_for_slope(chart, t)))
    return out


def move_index(p: PantsVertex, q: PantsVertex) -> Optional[int]:
    """The window index n realizing q as a move from p, or None."""
    shared = [c for c in p.curves if c in q.curves]
    if len(shared) != 1:
        return None
    x = shared[0]
    chart = farey_chart(side_subsurface(x))
    s, t = chart_slope(chart, p.other(x)), chart_slope(chart, q.other(x))
    if farey_dist(s, t) != 1:
        return None
    # t = r0 + n s in the canonical chart of s
    from .farey import canonical_chart_matrix, mat_apply

    m = canonical_chart_matrix(s)
    u, v = mat_apply(m, t.vector)
    if v < 0:
        u, v = -u, -v
    return u


# distance estimate ---------------------------------------------------------------

@dataclass(frozen=True)
class DomainTerm:
    boundary: Optional[NormalCurve]  # None for the whole surface
    value: int
    bracket: Optional[tuple[int, int]] = None  # only for the whole surface


@dataclass(frozen=True)
class PantsEstimate:
    sum_lower: int
    sum_upper: int
    lower: Fraction
    upper: Fraction
    terms: tuple[DomainTerm, ...] = field(default=())

    @property
    def total(self) -> int:
        return self.sum_lower


def curve_distance_bracket(a: NormalCurve, b: NormalCurve) -> tuple[int, int]:
    """Bracket on the curve-graph distance of S_{0,5}.

    Lower: 0 equal, 1 disjoint, 2 otherwise.  Upper: Hempel's 2 log2 i + 2.
    """
    if a == b:
        return (0, 0)
    i = intersection_number(a, b)
    if i == 0:
        return (1, 1)
    return (2, max(2, math.floor(2 * math.log2(i) + 2)))


def whole_surface_bracket(p: PantsVertex, q: PantsVertex) -> tuple[int, int]:
    brackets = [curve_distance_bracket(a, b) for a in p.curves for b in q.curves]
    return (min(x for x, _ in brackets), min(y for _, y in brackets))


def support_domains(p: PantsVertex, q: PantsVertex) -> list[SubsurfaceS05]:
    """Sides of the curves of p and q, and of the curves their projections name."""
    seen: dict[tuple, SubsurfaceS05] = {}
    for c in p.curves + q.curves:
        seen.setdefault(c.weights, side_subsurface(c))
    for y in list(seen.values()):
        chart = farey_chart(y)
        for v in (p, q):
            proj = project_many(y, list(v.curves))
            if proj is EMPTY:
                continue
            for s in proj:
                c = curve_for_slope(chart, s)
                seen.setdefault(c.weights, side_subsurface(c))
    return [seen[k] for k in sorted(seen)]


def domain_term(y: SubsurfaceS05, p: PantsVertex, q: PantsVertex) -> Optional[int]:
    a = project_many(y, list(p.curves))
    b = project_many(y, list(q.curves))
    if a is EMPTY or b is EMPTY:
        return None
    return min(farey_dist(s, t) for s in a for t in b)


def pants_distance_estimate(
    p: PantsVertex,
    q: PantsVertex,
    threshold: int,
    k: Fraction | int = 1,
    c: Fraction | int = 0,
) -> PantsEstimate:
    """Thresholded projection sum and the distance bracket it implies.

    (k, c) are the quasi-isometry constants from the calibration profile;
    the bracket is [(sum_lower - c) / k, k * sum_upper + c].
    """
    if threshold < 4:
        raise ValueError("threshold must be at least 4")
    terms = []
    total = 0
    for y in support_domains(p, q):
        v = domain_term(y, p, q)
        if v is not None and v > threshold:
            terms.append(DomainTerm(y.boundary, v))
            total += v
    lo, hi = whole_surface_bracket(p, q)
    lo_s = lo if lo > threshold else 0
    hi_s = hi if hi > threshold else 0
    terms.append(DomainTerm(None, lo, (lo, hi)))
    k, c = Fraction(k), Fraction(c)
    lower = max(Fraction(0), (total + lo_s - c) / k)
    upper = k * (total + hi_s) + c
    return PantsEstimate(total + lo_s, total + hi_s, lower, upper, tuple(terms))


def pants_path_length(path: Sequence[PantsVertex]) -> int:
    for a, b in zip(path, path[1:]):
        if move_index(a, b) is None:
            raise ValueError("consecutive vertices are not one move apart")
    return len(path) - 1


def twist_path(p: PantsVertex, x: NormalCurve, steps: Iterable[int]) -> list[PantsVertex]:
    """Walk from p by moves fixing x, each step choosing window index n."""
    path = [p]
    chart = farey_chart(side_subsurface(x))
    cur = p
    for n in steps:
        s = chart_slope(chart, cur.other(x))
        t = neighbors_window(s, n, n)[0]
        cur = pants_vertex(x, curve_for_slope(chart, t))
        path.append(cur)
    return path


def standard_pants() -> PantsVertex:
    from .curves05.curves import catalog_curve, seed_data

    a, b = seed_data().pants_pair
    return pants_vertex(catalog_curve(a), catalog_curve(b))


def chart_of(x: NormalCurve) -> FareyChart05:
    return farey_chart(side_subsurface(x))


def slope_in(x: NormalCurve, y: NormalCurve) -> Slope:
    return chart_slope(chart_of(x), y)
