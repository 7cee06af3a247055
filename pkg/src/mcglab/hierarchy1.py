"""Hierarchies between markings of the once-punctured torus and the
four-punctured sphere.

With complexity one a hierarchy is a main path in the Farey graph from the
base of I to the base of T, plus for each main vertex v an interval in the
annular complex of v running from where the previous vertex (or I) crosses
it to where the next vertex (or T) crosses it.  Resolving it sweeps each
interval by twists and steps between main vertices by flips.

On S04 only full twists are moves, so the marking graph splits by parity
and a Farey geodesic may pass through a vertex the markings cannot reach.
There the main path is the unique path in the parity tree, read off the
theta-group word of I^-1 T; it is also a geodesic of the marking graph.
"""
from __future__ import annotations

import enum
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence, Union

from .farey import (
    FareyGeodesic,
    Slope,
    canonical_chart_matrix,
    farey_dist,
    farey_distance,
    mat_apply,
    mat_inv,
    mat_mul,
    neighbors_window,
    slope_normalize,
)
from .markings import (
    S04,
    WHOLE,
    Marking1,
    RelativeMarking,
    Unreachable,
    WholeSurface,
    _euclid_word,
    _twisted,
    marking_distance,
    marking_matrix,
    project_marking,
    restrict_marking,
)

Domain = Union[WholeSurface, Slope]


class NoFootprint(ValueError):
    def __init__(self, domain):
        super().__init__(f"{domain} has no footprint on the main geodesic")
        self.domain = domain


class ParityObstruction(ValueError):
    pass


class CapExceeded(ValueError):
    pass


class Order(enum.Enum):
    BEFORE = "Before"
    AFTER = "After"
    UNORDERED = "Unordered"


@dataclass(frozen=True)
class TightGeodesic1:
    domain: Domain
    vertices: Union[FareyGeodesic, tuple[int, int]]
    initial: object
    terminal: object

    @property
    def length(self) -> int:
        if isinstance(self.domain, WholeSurface):
            return len(self.vertices)
        a, b = self.vertices
        return abs(b - a)

    def points(self) -> list:
        if isinstance(self.domain, WholeSurface):
            return list(self.vertices.vertices)
        a, b = self.vertices
        step = 1 if b >= a else -1
        return list(range(a, b + step, step))


@dataclass(frozen=True)
class Hierarchy1:
    main: TightGeodesic1
    annular: dict  # Slope -> TightGeodesic1
    I: Marking1
    T: Marking1

    @property
    def surface(self):
        return self.I.surface

    @property
    def main_vertices(self) -> tuple[Slope, ...]:
        return self.main.vertices.vertices

    def index(self, v: Slope) -> Optional[int]:
        try:
            return self.main_vertices.index(v)
        except ValueError:
            return None

    def interval(self, v: Slope) -> tuple[int, int]:
        return self.annular[v].vertices


def _theta_main_path(i: Marking1, t: Marking1) -> list[Slope]:
    h = mat_mul(mat_inv(marking_matrix(i)), marking_matrix(t))
    word = _euclid_word(h, 2)
    if word is None:
        raise ParityObstruction("markings lie in different components of the S04 marking graph")
    g = marking_matrix(i)
    verts = [i.base]
    for gen, k in word:
        if gen == "S":
            g = mat_mul(g, ((0, -1), (1, 0)))
            verts.append(slope_normalize(g[0][0], g[1][0]))
        else:
            g = mat_mul(g, ((1, 2 * k), (0, 1)))
    return verts


def _coord(axis: Slope, other: Slope) -> int:
    x, y = mat_apply(canonical_chart_matrix(axis), other.vector)
    if y < 0:
        x, y = -x, -y
    return x // y


def build_hierarchy(i: Marking1, t: Marking1, main: Optional[Sequence[Slope]] = None) -> Hierarchy1:
    """Hierarchy from I to T; ``main`` overrides the main path when given."""
    if i.surface is not t.surface:
        raise ValueError("markings live on different surfaces")
    if main is None:
        if i.surface is S04:
            verts = _theta_main_path(i, t)
        else:
            verts = list(farey_distance(i.base, t.base)[1].vertices)
    else:
        verts = list(main)
        if verts[0] != i.base or verts[-1] != t.base:
            raise ValueError("main path must run from base(I) to base(T)")
        for a, b in zip(verts, verts[1:]):
            if farey_dist(a, b) != 1:
                raise ValueError("main path vertices must be Farey neighbours")
    g = TightGeodesic1(WHOLE, FareyGeodesic(tuple(verts)), i, t)
    annular = {}
    n = len(verts) - 1
    for k, v in enumerate(verts):
        start = restrict_marking(i, v) if k == 0 else RelativeMarking(v, _coord(v, verts[k - 1]))
        end = restrict_marking(t, v) if k == n else RelativeMarking(v, _coord(v, verts[k + 1]))
        annular[v] = TightGeodesic1(v, (start.twist, end.twist), start, end)
    return Hierarchy1(g, annular, i, t)


def _marking_at(surface, v: Slope, coord: int) -> Marking1:
    inv = mat_inv(canonical_chart_matrix(v))
    return Marking1(surface, v, slope_normalize(*mat_apply(inv, (coord, 1))))


@dataclass(frozen=True)
class ResolvedPath:
    markings: tuple[Marking1, ...]
    provenance: tuple[int, ...]  # main-vertex index of each marking

    def __len__(self) -> int:
        return len(self.markings)

    @property
    def length(self) -> int:
        return len(self.markings) - 1


def resolve_path(h: Hierarchy1) -> ResolvedPath:
    surface = h.surface
    k = surface.full_twist_power
    verts = h.main_vertices
    cur = h.I
    out = [cur]
    prov = [0]
    for idx, v in enumerate(verts):
        a, b = h.annular[v].vertices
        if (b - a) % k:
            raise ParityObstruction(f"twist gap {b - a} at {v} is not a multiple of {k}")
        step = k if b > a else -k
        for _ in range(abs(b - a) // k):
            cur = Marking1(surface, v, _twisted(v, cur.transversal, step))
            out.append(cur)
            prov.append(idx)
        if idx + 1 < len(verts):
            cur = Marking1(surface, cur.transversal, cur.base)
            out.append(cur)
            prov.append(idx + 1)
    if out[-1] != h.T:
        raise AssertionError("resolution did not end at T")
    return ResolvedPath(tuple(out), tuple(prov))


def footprint(g: TightGeodesic1, y: Slope) -> tuple[int, ...]:
    if not isinstance(g.domain, WholeSurface):
        raise ValueError("footprints are taken on the main geodesic")
    verts = g.vertices.vertices
    return (verts.index(y),) if y in verts else ()


def time_order(h: Hierarchy1, y: Slope, z: Slope) -> Order:
    fy, fz = footprint(h.main, y), footprint(h.main, z)
    if not fy:
        raise NoFootprint(y)
    if not fz:
        raise NoFootprint(z)
    if fy[0] < fz[0]:
        return Order.BEFORE
    if fy[0] > fz[0]:
        return Order.AFTER
    return Order.UNORDERED


# calibration profile --------------------------------------------------------------

PROFILE_VERSION = 1


@dataclass(frozen=True)
class CalibrationProfile:
    M: int
    M1: int
    M2: int
    D_bgi: int
    delta: int
    K_path: int = 1
    C_path: int = 0
    b: Fraction = Fraction(1, 4)
    c: int = 0
    metadata: dict = field(default_factory=dict, compare=False)
    version: int = PROFILE_VERSION

    def __post_init__(self):
        if self.M < max(self.M1 + 2, self.M2 + 3):
            raise ValueError("M must be at least max(M1 + 2, M2 + 3)")

    @property
    def delta_prime(self) -> int:
        return 4 * self.delta + 5

    @property
    def large_threshold(self) -> int:
        return 6 * self.M + 4 * self.delta_prime

    @property
    def side_threshold(self) -> int:
        return 3 * self.M + 2 * self.delta_prime

    @property
    def window(self) -> int:
        return 3 * self.M + 3 * self.delta_prime

    def to_dict(self) -> dict:
        d = asdict(self)
        d["b"] = f"{self.b.numerator}/{self.b.denominator}"
        d["delta_prime"] = self.delta_prime
        d["thresholds"] = {
            "large": self.large_threshold,
            "side": self.side_threshold,
            "window": self.window,
        }
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "CalibrationProfile":
        if d.get("version") != PROFILE_VERSION:
            raise ValueError(f"unsupported profile version {d.get('version')}")
        prof = cls(
            M=d["M"], M1=d["M1"], M2=d["M2"], D_bgi=d["D_bgi"], delta=d["delta"],
            K_path=d["K_path"], C_path=d["C_path"], b=Fraction(d["b"]), c=d["c"],
            metadata=d.get("metadata", {}),
        )
        if d.get("delta_prime", prof.delta_prime) != prof.delta_prime:
            raise ValueError("delta_prime must equal 4*delta + 5")
        return prof

    @classmethod
    def load(cls, path: Union[str, Path]) -> "CalibrationProfile":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_json())


def default_profile() -> CalibrationProfile:
    text = resources.files("mcglab.data").joinpath("profile.json").read_text()
    return CalibrationProfile.from_dict(json.loads(text))


# large domains and the projection to the hierarchy ---------------------------------

@dataclass(frozen=True)
class LargeDomainReport:
    G: dict  # domain -> d_domain(I_H, T_H)
    L: frozenset
    R: frozenset
    Lambda: tuple[int, ...]  # indices of closest main vertices
    phi_hat: frozenset
    case: str
    flagged: bool = False  # an end of the L/R ordering was missing


def _interval_clamp(x: int, a: int, b: int) -> int:
    lo, hi = min(a, b), max(a, b)
    return min(max(x, lo), hi)


def _annulus_projection(mu: Marking1, v: Slope) -> int:
    return project_marking(mu, v)


def closest_main_vertices(h: Hierarchy1, mu: Marking1) -> tuple[int, ...]:
    dists = [farey_dist(v, mu.base) for v in h.main_vertices]
    best = min(dists)
    return tuple(i for i, d in enumerate(dists) if d == best)


def large_domains(h: Hierarchy1, profile: CalibrationProfile) -> dict:
    out = {}
    d = farey_dist(h.I.base, h.T.base)
    if d > profile.large_threshold:
        out[WHOLE] = d
    for v in h.main_vertices:
        d = abs(project_marking(h.I, v) - project_marking(h.T, v))
        if d > profile.large_threshold:
            out[v] = d
    return out


def large_domain_report(h: Hierarchy1, mu: Marking1, profile: CalibrationProfile,
                        path: Optional[ResolvedPath] = None) -> LargeDomainReport:
    G = large_domains(h, profile)
    lam = closest_main_vertices(h, mu)
    n = len(h.main_vertices) - 1
    L, R = set(), set()
    proj = {}
    for y in G:
        if isinstance(y, WholeSurface):
            to_t = min(n - i for i in lam)
            to_i = min(lam)
            proj[y] = lam
        else:
            a, b = h.interval(y)
            p = _interval_clamp(_annulus_projection(mu, y), a, b)
            proj[y] = p
            to_t, to_i = abs(p - b), abs(p - a)
        if to_t < profile.side_threshold:
            L.add(y)
        if to_i < profile.side_threshold:
            R.add(y)
    if path is None:
        path = resolve_path(h)
    if mu in path.markings:
        return LargeDomainReport(G, frozenset(L), frozenset(R), lam, frozenset([mu]), "identity")
    rest = [y for y in G if y not in L and y not in R]
    annular_rest = [y for y in rest if not isinstance(y, WholeSurface)]
    if len(annular_rest) == 1 and len(rest) == 1:
        a = annular_rest[0]
        phi = frozenset([_marking_at(h.surface, a, proj[a])])
        return LargeDomainReport(G, frozenset(L), frozenset(R), lam, phi, "case1")
    phi, flagged = _case_two(h, lam, L, R, G, profile)
    case = "case2" if len(annular_rest) <= 1 else "violation"
    return LargeDomainReport(G, frozenset(L), frozenset(R), lam, phi, case, flagged)


def _case_two(h, lam, L, R, G, profile):
    verts = h.main_vertices
    surface = h.surface
    out = set()
    lam_domains = [(i, verts[i]) for i in lam]
    left = [(i, v) for i, v in lam_domains if v in L]
    right = [(i, v) for i, v in lam_domains if v in R]
    lo_idx, hi_idx = -1, len(verts)
    flagged = not left or not right
    if left:
        i, v = max(left)
        lo_idx = i
        a, b = h.interval(v)
        for x in _points(a, b, surface):
            if abs(x - b) <= profile.window:
                out.add(_marking_at(surface, v, x))
    if right:
        i, v = min(right)
        hi_idx = i
        a, b = h.interval(v)
        for x in _points(a, b, surface):
            if abs(x - a) <= profile.window:
                out.add(_marking_at(surface, v, x))
    for i, v in lam_domains:
        if v in G:
            continue
        if lo_idx < i < hi_idx:
            a, b = h.interval(v)
            for x in _points(a, b, surface):
                out.add(_marking_at(surface, v, x))
    return frozenset(out), flagged


def _points(a: int, b: int, surface) -> list[int]:
    k = surface.full_twist_power
    step = k if b >= a else -k
    return list(range(a, b + step, step)) if a != b else [a]


def phi_hat(h: Hierarchy1, mu: Marking1, profile: CalibrationProfile,
            path: Optional[ResolvedPath] = None) -> frozenset:
    return large_domain_report(h, mu, profile, path).phi_hat


def set_distance_markings(a: Sequence[Marking1], b: Sequence[Marking1], cap: int = 10 ** 9) -> int:
    best = None
    for x in a:
        for y in b:
            d = marking_distance(x, y, cap)
            if isinstance(d, Unreachable):
                continue
            best = d if best is None else min(best, d)
    if best is None:
        raise CapExceeded("no pair within the cap")
    return best


def marking_set_diameter(a: Sequence[Marking1], cap: int = 10 ** 9) -> int:
    a = list(a)
    best = 0
    for i, x in enumerate(a):
        for y in a[i + 1:]:
            d = marking_distance(x, y, cap)
            if isinstance(d, Unreachable):
                raise CapExceeded("diameter pair beyond the cap")
            best = max(best, d)
    return best


@dataclass(frozen=True)
class ContractionRecord:
    r: int
    d_mu_nu: int
    diam_phi: int


def contraction_probe(h: Hierarchy1, mu: Marking1, nu: Marking1, profile: CalibrationProfile,
                      path: Optional[ResolvedPath] = None, cap: int = 10 ** 9) -> ContractionRecord:
    if path is None:
        path = resolve_path(h)
    pm = phi_hat(h, mu, profile, path)
    pn = pm if nu == mu else phi_hat(h, nu, profile, path)
    r = set_distance_markings([mu], list(pm), cap)
    d = marking_distance(mu, nu, cap)
    if isinstance(d, Unreachable):
        raise CapExceeded("d(mu, nu) beyond the cap")
    return ContractionRecord(r, d, marking_set_diameter(list(pm | pn), cap))


# audits ---------------------------------------------------------------------------

def candidate_annuli(h: Hierarchy1, pad: int = 2) -> list[Slope]:
    """Annuli worth checking: I and T curves, main vertices and the twist
    neighbourhoods of every main vertex."""
    seen = {}
    for s in (h.I.base, h.I.transversal, h.T.base, h.T.transversal):
        seen.setdefault(s, None)
    for v in h.main_vertices:
        seen.setdefault(v, None)
        a, b = h.interval(v)
        lo, hi = min(a, b) - pad, max(a, b) + pad
        for s in neighbors_window(v, lo, hi):
            seen.setdefault(s, None)
    return list(seen)


def annular_distance_IT(h: Hierarchy1, alpha: Slope) -> int:
    return abs(project_marking(h.I, alpha) - project_marking(h.T, alpha))


def structure_violations(h: Hierarchy1, profile: CalibrationProfile) -> list[str]:
    """Structural audit of a hierarchy and its resolution."""
    bad = []
    verts = h.main_vertices
    if len(set(verts)) != len(verts):
        bad.append("main path repeats a vertex")
    if set(h.annular) != set(verts):
        bad.append("annular geodesics do not match main vertices")
    n = len(verts) - 1
    for k, v in enumerate(verts):
        g = h.annular[v]
        want_i = project_marking(h.I, v) if k == 0 else _coord(v, verts[k - 1])
        want_t = project_marking(h.T, v) if k == n else _coord(v, verts[k + 1])
        if g.vertices != (want_i, want_t):
            bad.append(f"relative markings wrong at {v}")
    for alpha in candidate_annuli(h):
        if alpha in verts:
            continue
        if annular_distance_IT(h, alpha) > profile.M2:
            bad.append(f"large link {alpha} off the main path")
    try:
        path = resolve_path(h)
    except (ParityObstruction, AssertionError) as exc:
        bad.append(f"resolution failed: {exc}")
        return bad
    if path.markings[0] != h.I or path.markings[-1] != h.T:
        bad.append("resolution endpoints")
    from .markings import elementary_moves

    for a, b in zip(path.markings, path.markings[1:]):
        if b not in elementary_moves(a):
            bad.append(f"non-move step {a} -> {b}")
            break
    return bad
