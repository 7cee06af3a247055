"""Four-holed-sphere subsurfaces of S_{0,5}, Farey charts and projections.

Every essential curve g on S_{0,5} cuts off a twice-punctured disk; Y_g is
the other side, a four-holed sphere whose curve graph is the Farey graph.
Charts are built once for the ten catalog sides and transported by the word
that produced g, so every computation happens against a catalog side.

Projection of a curve b crossing g: the arcs of b in Y_g, closed up along g,
give the slopes s with i(b, c_s) < i(b, g).  That set is a vertex, an edge or
a triangle of the Farey graph.  It is found by descending through the level-2
congruence subgroup (generated by the two chart twists) until one of the
slopes 1/0, 0/1, 1/1, -1/1 of the current frame qualifies, then reading off
its neighbours from the piecewise-linear profile of i(b, .) along the link.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence, Union

from ..farey import (
    IDENTITY,
    Matrix,
    Slope,
    farey_dist,
    mat_apply,
    mat_inv,
    mat_mul,
    set_diameter,
    slope_normalize,
)
from .curves import (
    NormalCurve,
    Word,
    apply_twist_word,
    apply_word_weights,
    catalog_curve,
    find_word,
    intersection_number,
    meet_catalog,
    seed_data,
    with_origin,
    word_inverse,
    word_reduce,
)


class NotInSubsurface(ValueError):
    pass


class EmptyProjection(ValueError):
    def __init__(self, which: str):
        super().__init__(f"{which} has empty projection to the subsurface")
        self.which = which


class PairType(enum.Enum):
    SAME = "Same"
    DISJOINT = "Disjoint"
    NESTED = "Nested"
    OVERLAP = "Overlap"


class _Empty:
    def __repr__(self) -> str:
        return "Empty"

    def __bool__(self) -> bool:
        return False


EMPTY = _Empty()
Projection = Union[frozenset, _Empty]

GEN_A: Matrix = ((1, 2), (0, 1))
GEN_B: Matrix = ((1, 0), (2, 1))


@dataclass(frozen=True)
class _LocalChart:
    """Chart data of a catalog side: refs and twist words in catalog letters."""

    refs: tuple[tuple[Word, int], ...]
    twist_a: Word
    twist_b: Word


@lru_cache(maxsize=None)
def _local_chart(k: int) -> _LocalChart:
    chart = seed_data().charts[k]
    refs = tuple((tuple(tuple(x) for x in u), c) for u, c in chart["refs"])
    eps_a, eps_b = chart["twist_signs"]
    (u10, k10), (u01, k01) = refs[0], refs[1]
    return _LocalChart(
        refs,
        word_reduce(u10 + ((k10, eps_a),) + word_inverse(u10)),
        word_reduce(u01 + ((k01, eps_b),) + word_inverse(u01)),
    )


@dataclass(frozen=True)
class SubsurfaceS05:
    """The four-holed side of ``boundary``; equality is by boundary weights."""

    boundary: NormalCurve

    @property
    def transport(self) -> tuple[Word, int]:
        return find_word(self.boundary)

    def contains(self, c: NormalCurve) -> bool:
        return c != self.boundary and intersection_number(c, self.boundary) == 0


def side_subsurface(gamma: NormalCurve) -> SubsurfaceS05:
    return SubsurfaceS05(with_origin(gamma))


def boundary_of(y: SubsurfaceS05) -> NormalCurve:
    return y.boundary


def classify_pair(y: SubsurfaceS05, z: SubsurfaceS05) -> PairType:
    """Relative position of two four-holed sides.

    Distinct boundaries that are disjoint still overlap here: the two
    four-holed sides meet in a pair of pants, and neither contains the other.
    """
    if y.boundary == z.boundary:
        return PairType.SAME
    return PairType.OVERLAP


@dataclass(frozen=True)
class FareyChart05:
    subsurface: SubsurfaceS05
    references: tuple[NormalCurve, NormalCurve, NormalCurve]

    @property
    def e10(self) -> NormalCurve:
        return self.references[0]

    @property
    def e01(self) -> NormalCurve:
        return self.references[1]

    @property
    def e11(self) -> NormalCurve:
        return self.references[2]


def farey_chart(y: SubsurfaceS05) -> FareyChart05:
    u, k = y.transport
    local = _local_chart(k)
    refs = tuple(
        apply_twist_word(u, apply_twist_word(w, catalog_curve(c))) for w, c in local.refs
    )
    return FareyChart05(y, refs)  # type: ignore[arg-type]


def _slope_from_meets(q2: int, p2: int, s2: int) -> Slope:
    q, p, s = q2 // 2, p2 // 2, s2 // 2
    if abs(p - q) == s:
        return slope_normalize(p, q)
    if p + q == s:
        return slope_normalize(-p, q)
    raise NotInSubsurface(f"inconsistent chart intersections {(q2, p2, s2)}")


def chart_slope(chart: FareyChart05, c: NormalCurve) -> Slope:
    if not chart.subsurface.contains(c):
        raise NotInSubsurface("curve is not an essential curve of the subsurface")
    return _slope_from_meets(*(intersection_number(c, r) for r in chart.references))


def slope_from_intersections(i10: int, i01: int, i11: int) -> Slope:
    """Chart slope from the three intersection numbers with the references."""
    return _slope_from_meets(i10, i01, i11)


# local machinery: everything below works against catalog side k ---------------------

class _Side:
    def __init__(self, k: int):
        self.k = k
        self.local = _local_chart(k)
        self.a_inv = word_inverse(self.local.twist_a)
        self.b_inv = word_inverse(self.local.twist_b)

    def meet_ref(self, r: int, x: Sequence[int]) -> int:
        u, c = self.local.refs[r]
        if u:
            x = apply_word_weights(word_inverse(u), x)
        return meet_catalog(c, x)

    def act(self, m: Matrix, x: Sequence[int]) -> list[int]:
        """Apply the chart generator with matrix m (one of A, B and inverses)."""
        word = {
            GEN_A: self.local.twist_a,
            mat_inv(GEN_A): self.a_inv,
            GEN_B: self.local.twist_b,
            mat_inv(GEN_B): self.b_inv,
        }[m]
        return apply_word_weights(word, x)

    def value(self, x: Sequence[int], v: tuple[int, int]) -> int:
        """Half of i(x, c_v) for a primitive vector v in the current frame."""
        p, q = v
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        ops: list[Matrix] = []
        while True:
            if (p, q) == (1, 0):
                ref = 0
                break
            if (p, q) == (0, 1):
                ref = 1
                break
            if (p, q) == (1, 1):
                ref = 2
                break
            if abs(p) >= abs(q):
                m = mat_inv(GEN_A) if p > 0 else GEN_A
            else:
                m = mat_inv(GEN_B) if p > 0 else GEN_B
            ops.append(m)
            p, q = mat_apply(m, (p, q))
            if q < 0 or (q == 0 and p < 0):
                p, q = -p, -q
        # c_v = h^-1 c_ref where h = ops[-1] ... ops[0]; i(x, c_v) = i(h x, c_ref)
        for m in ops:
            x = self.act(m, x)
        return self.meet_ref(ref, x) // 2

    def project(self, x: Sequence[int], n: int) -> frozenset:
        """Slopes s (chart of side k) with value < n, for a curve crossing the boundary."""
        frame = IDENTITY
        x = list(x)
        while True:
            v_inf = self.meet_ref(0, x) // 2
            v_zero = self.meet_ref(1, x) // 2
            v_one = self.meet_ref(2, x) // 2
            v_neg = self.value(x, (-1, 1))
            vals = {(1, 0): v_inf, (0, 1): v_zero, (1, 1): v_one, (-1, 1): v_neg}
            anchors = [v for v, val in vals.items() if val < n]
            if anchors:
                break
            if v_neg == v_inf + v_zero:  # support between 0 and infinity
                h = mat_inv(GEN_B) if v_inf == v_zero + v_one else mat_inv(GEN_A)
            elif v_one == v_inf + v_zero:
                h = GEN_B if v_inf == v_zero + v_neg else GEN_A
            else:
                raise RuntimeError("projection descent lost its region")
            # slopes transform by h, the frame by h^-1
            frame = mat_mul(frame, mat_inv(h))
            x = self.act(h, x)
        a = anchors[0]
        support = self._link_support(x, n, a, vals[a])
        return frozenset(slope_normalize(*mat_apply(frame, v)) for v in support)

    def _link_support(self, x, n: int, a: tuple[int, int], v_a: int) -> list[tuple[int, int]]:
        b = {(1, 0): (0, 1), (0, 1): (-1, 0), (1, 1): (0, 1), (-1, 1): (-1, 0)}[a]
        # b + k a runs over the link of a
        def r(k):
            return (b[0] + k * a[0], b[1] + k * a[1])

        n_a = n - v_a
        m = v_a
        if m == 0:
            return [a]
        g = {k: self.value(x, r(k)) for k in (-1, 0, 1)}
        t = (g[0] - n_a) // m
        found = set()
        for base in {t, -t}:
            for j in range(base - 3, base + 4):
                step = abs(j + 1) - abs(j)
                num = g[0] - n_a - m * abs(j)
                if num % step:
                    continue
                n2 = num // step
                n1 = m - n2
                if n1 < 0 or n2 < 0:
                    continue
                if all(
                    n_a + n1 * abs(k - j) + n2 * abs(k - j - 1) == g[k] for k in (-1, 1)
                ):
                    found.add(frozenset([j] * (n1 > 0) + [j + 1] * (n2 > 0)))
        if len(found) != 1:
            raise RuntimeError(f"ambiguous link profile {g} (n={n}, v_a={v_a})")
        return [a] + [r(k) for k in sorted(next(iter(found)))]


@lru_cache(maxsize=None)
def _side(k: int) -> _Side:
    return _Side(k)


def subsurface_project(y: SubsurfaceS05, beta: NormalCurve) -> Projection:
    """Projection of beta to C(Y) as a set of chart slopes, or EMPTY."""
    if beta == y.boundary:
        return EMPTY
    meet = intersection_number(beta, y.boundary)
    u, k = y.transport
    x = apply_word_weights(word_inverse(u), beta.weights)
    side = _side(k)
    if meet == 0:
        # beta lies inside Y
        meets = [side.meet_ref(r, x) for r in range(3)]
        return frozenset([_slope_from_meets(*meets)])
    return side.project(x, meet // 2)


def project_many(y: SubsurfaceS05, curves: Sequence[NormalCurve]) -> Projection:
    """Union of projections of several curves (e.g. a pants decomposition)."""
    out: set = set()
    for c in curves:
        p = subsurface_project(y, c)
        if p:
            out |= p
    return frozenset(out) if out else EMPTY


def subsurface_distance(y: SubsurfaceS05, beta, gamma) -> int:
    """Minimal Farey distance between projections; curves or curve tuples accepted."""
    pb = _proj_arg(y, beta)
    if not pb:
        raise EmptyProjection("first argument")
    pg = _proj_arg(y, gamma)
    if not pg:
        raise EmptyProjection("second argument")
    return min(farey_dist(s, t) for s in pb for t in pg)


def projection_diameter(y: SubsurfaceS05, curves) -> int:
    p = _proj_arg(y, curves)
    if not p:
        raise EmptyProjection("argument")
    return set_diameter(p)


def _proj_arg(y, arg) -> Projection:
    if isinstance(arg, NormalCurve):
        return subsurface_project(y, arg)
    return project_many(y, list(arg))


def curve_for_slope(chart: FareyChart05, s: Slope) -> NormalCurve:
    """The curve in the chart's subsurface with the given slope."""
    u, k = chart.subsurface.transport
    local = _local_chart(k)
    p, q = s.p, s.q
    letters: list = []
    while (p, q) not in ((1, 0), (0, 1), (1, 1)):
        if abs(p) >= abs(q):
            m, word = (mat_inv(GEN_A), local.twist_a) if p > 0 else (GEN_A, word_inverse(local.twist_a))
        else:
            m, word = (mat_inv(GEN_B), local.twist_b) if p > 0 else (GEN_B, word_inverse(local.twist_b))
        # s = m^-1 s'; the mapping class of m^-1 is word
        letters.append(word)
        p, q = mat_apply(m, (p, q))
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
    ref = {(1, 0): 0, (0, 1): 1, (1, 1): 2}[(p, q)]
    w, c = local.refs[ref]
    total: tuple = tuple(u)
    for word in letters:
        total = total + tuple(word)
    return apply_twist_word(word_reduce(total + tuple(w)), catalog_curve(c))


def chart_to_json(chart: FareyChart05) -> str:
    return json.dumps(
        {
            "boundary": list(chart.subsurface.boundary.weights),
            "references": {
                "1/0": list(chart.e10.weights),
                "0/1": list(chart.e01.weights),
                "1/1": list(chart.e11.weights),
            },
        },
        sort_keys=True,
    )


def as_slope_set(p: Projection) -> Optional[frozenset]:
    return None if not p else p
