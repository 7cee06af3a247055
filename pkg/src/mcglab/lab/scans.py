"""Scan drivers.

Each scan is a row producer plus a summary function.  Row producers are
pure functions of (config, sample index) and run in a worker pool with
ordered collection; summaries are pure functions of the rows.
"""
from __future__ import annotations

import math
import multiprocessing as mp
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from .. import __version__
from ..farey import (
    bounded_geodesic_image_probe,
    farey_dist,
    mat_mul,
    mat_pow,
    neighbors_window,
)
from ..hierarchy1 import (
    CalibrationProfile,
    Hierarchy1,
    annular_distance_IT,
    build_hierarchy,
    candidate_annuli,
    contraction_probe,
    default_profile,
    large_domain_report,
    resolve_path,
)
from ..hierarchy1 import _coord
from ..markings import (
    S04,
    S11,
    Marking1,
    Surface1,
    distance_matrix,
    domain_distance,
    elementary_moves,
    fit_quasi_constants,
    marking_ball,
    marking_distance,
    marking_from_matrix,
    marking_matrix,
    project_marking,
    standard_marking,
    thresholded_sums,
)
from ..markings import WHOLE
from .config import ScanConfig
from .rng import stream

Row = tuple


@dataclass
class ScanReport:
    columns: tuple[str, ...]
    rows: list[Row]
    summary: dict
    provenance: dict
    passed: bool
    extra: dict = field(default_factory=dict)


def surface_of(cfg: ScanConfig) -> Surface1:
    return Surface1.parse(cfg.surface)


def load_profile(cfg: ScanConfig) -> CalibrationProfile:
    if cfg.profile:
        return CalibrationProfile.load(cfg.profile)
    return default_profile()


def fmt(x) -> object:
    """CSV cell: ints stay ints, rationals become p/q, slopes p/q."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, float):
        return f"{x:.6f}"
    return x if isinstance(x, int) else str(x)


# random walks -------------------------------------------------------------------------

def random_walk(mu: Marking1, steps: int, rng: np.random.Generator) -> Marking1:
    for _ in range(steps):
        moves = elementary_moves(mu)
        mu = moves[int(rng.integers(len(moves)))]
    return mu


def non_backtracking_walk(mu: Marking1, steps: int, rng: np.random.Generator) -> Marking1:
    prev = None
    for _ in range(steps):
        moves = [m for m in elementary_moves(mu) if m != prev]
        prev, mu = mu, moves[int(rng.integers(len(moves)))]
    return mu


def random_seed_word(length: int, rng: np.random.Generator, letters: int = 5) -> tuple:
    word = []
    while len(word) < length:
        k = int(rng.integers(letters))
        if word and word[-1][0] == k:
            continue
        word.append((k, 1 if rng.integers(2) else -1))
    return tuple(word)


# pool ------------------------------------------------------------------------------------

def _call(args):
    fn, cfg, idx = args
    return fn(cfg, idx)


def run_samples(fn: Callable[[ScanConfig, int], list], cfg: ScanConfig, indices: Sequence[int]) -> list:
    """Evaluate fn(cfg, i) for each index, in index order, on cfg.workers processes."""
    indices = list(indices)
    if cfg.workers <= 1 or len(indices) < 2:
        out = []
        for i in indices:
            out.extend(fn(cfg, i))
        return out
    ctx = mp.get_context("fork")
    chunk = max(1, len(indices) // (cfg.workers * 8))
    with ctx.Pool(cfg.workers) as pool:
        parts = pool.map(_call, [(fn, cfg, i) for i in indices], chunksize=chunk)
    return [row for part in parts for row in part]


# behrstock ----------------------------------------------------------------------------------

BEHRSTOCK_COLUMNS = ("index", "word_length", "dY", "dZ", "min")


def _behrstock_row(cfg: ScanConfig, idx: int) -> list:
    from ..curves05.curves import apply_twist_word, seed_curve, seed_data
    from ..curves05.subsurface import side_subsurface, subsurface_distance

    rng = stream(cfg.seed, idx)
    length = cfg.word_length if idx < cfg.samples else 2 * cfg.word_length
    w = random_seed_word(length, rng)
    while True:
        a, b = (int(x) for x in rng.choice(5, size=2, replace=False))
        u = random_seed_word(int(rng.integers(3)), rng)
        dy = apply_twist_word(w, seed_curve(a))
        dz = apply_twist_word(w + u, seed_curve(b))
        if dy != dz:
            break
    v = random_seed_word(length, rng)
    pa, pb = seed_data().pants_pair
    mu = [apply_twist_word(w + v, seed_curve(pa)), apply_twist_word(w + v, seed_curve(pb))]
    y, z = side_subsurface(dy), side_subsurface(dz)
    d_y = subsurface_distance(y, dz, mu)
    d_z = subsurface_distance(z, dy, mu)
    return [(idx, length, d_y, d_z, min(d_y, d_z))]


def summarize_behrstock(rows: Sequence[Row], cfg: ScanConfig) -> tuple[dict, bool]:
    by_len: dict[int, list[int]] = {}
    for r in rows:
        by_len.setdefault(int(r[1]), []).append(int(r[4]))
    short, long_ = cfg.word_length, 2 * cfg.word_length
    m_short = max(by_len.get(short, []), default=None)
    m_long = max(by_len.get(long_, []), default=None)
    enough = bool(by_len.get(short)) and bool(by_len.get(long_))
    summary = {
        "M_emp_L": m_short,
        "M_emp_2L": m_long,
        "L": short,
        "samples_per_length": cfg.samples,
        "plateau": enough and m_short == m_long,
        "insufficient_data": not enough,
        "min_histogram": {str(k): dict(sorted(Counter(v).items())) for k, v in sorted(by_len.items())},
    }
    return summary, bool(summary["plateau"])


def scan_behrstock(cfg: ScanConfig) -> ScanReport:
    rows = run_samples(_behrstock_row, cfg, range(2 * cfg.samples))
    summary, ok = summarize_behrstock(rows, cfg)
    return ScanReport(BEHRSTOCK_COLUMNS, rows, summary, {}, ok)


# elementary-move projection audit ---------------------------------------------------------

EM_COLUMNS = ("edge", "a", "b", "max_dY", "domain")


@lru_cache(maxsize=8)
def _ball(surface: Surface1, radius: int, seed: int):
    center = random_walk(standard_marking(surface), 12, stream(seed, 1 << 48))
    return marking_ball(center, radius)


def _edge_list(surface, radius, seed):
    ball = _ball(surface, radius, seed)
    return list(ball.edge_pairs()), ball.annuli()


def _em_row(cfg: ScanConfig, idx: int) -> list:
    edges, annuli = _edge_list(surface_of(cfg), cfg.radius, cfg.seed)
    a, b = edges[idx]
    best, where = domain_distance(a, b, WHOLE), "S"
    for alpha in annuli:
        d = domain_distance(a, b, alpha)
        if d > best:
            best, where = d, str(alpha)
    return [(idx, str(a), str(b), best, where)]


def summarize_em(rows, cfg) -> tuple[dict, bool]:
    mx = max((int(r[3]) for r in rows), default=0)
    viol = sum(1 for r in rows if int(r[3]) > 4)
    return {"edges": len(rows), "max_dY": mx, "violations": viol, "bound": 4}, viol == 0


def scan_em_projection(cfg: ScanConfig) -> ScanReport:
    edges, _ = _edge_list(surface_of(cfg), cfg.radius, cfg.seed)
    rows = run_samples(_em_row, cfg, range(len(edges)))
    summary, ok = summarize_em(rows, cfg)
    return ScanReport(EM_COLUMNS, rows, summary, {}, ok)


# distance formula -------------------------------------------------------------------------

DF_COLUMNS = ("seed", "i", "j", "d", "sum")


def _df_rows_for_seed(surface, radius, threshold, seed) -> list:
    ball = _ball(surface, radius, seed)
    verts = ball.vertices
    dist = distance_matrix(verts)
    sums = thresholded_sums(verts, ball.annuli(), threshold)
    n = len(verts)
    iu, ju = np.triu_indices(n, 1)
    return [(seed, int(i), int(j), int(dist[i, j]), int(sums[i, j])) for i, j in zip(iu, ju)]


def _df_row(cfg, idx) -> list:
    seed = cfg.seed + idx
    return _df_rows_for_seed(surface_of(cfg), cfg.radius, cfg.threshold, seed)


def summarize_df(rows, cfg) -> tuple[dict, bool]:
    fits = {}
    for seed in sorted({int(r[0]) for r in rows}):
        sel = [r for r in rows if int(r[0]) == seed]
        fit = fit_quasi_constants([int(r[3]) for r in sel], [int(r[4]) for r in sel])
        fits[str(seed)] = {"K": fit.K, "C": fit.C, "pairs": len(sel)}
    vals = list(fits.values())
    ok = bool(vals) and all(f["K"] <= 12 and f["C"] <= 40 for f in vals)
    stable = len(vals) >= 2 and abs(vals[0]["K"] - vals[1]["K"]) <= 1 and abs(vals[0]["C"] - vals[1]["C"]) <= 5
    return {"fits": fits, "within_bounds": ok, "stable": stable, "threshold": cfg.threshold}, ok and stable


def scan_distance_formula(cfg: ScanConfig) -> ScanReport:
    rows = run_samples(_df_row, cfg, range(2))
    summary, ok = summarize_df(rows, cfg)
    return ScanReport(DF_COLUMNS, rows, summary, {}, ok)


# hyperbolicity -----------------------------------------------------------------------------

HYP_COLUMNS = ("index", "a", "b", "c", "d", "delta")


def four_point(d_ab, d_cd, d_ac, d_bd, d_ad, d_bc) -> Fraction:
    s = sorted([int(d_ab + d_cd), int(d_ac + d_bd), int(d_ad + d_bc)], reverse=True)
    return Fraction(s[0] - s[1], 2)


@lru_cache(maxsize=4)
def _ball_metric(surface, radius, seed):
    ball = _ball(surface, radius, seed)
    return ball, distance_matrix(ball.vertices)


def _s05_points(cfg, count):
    from ..curves05.curves import apply_twist_word, seed_curve, seed_data
    from ..pants05 import pants_vertex

    rng = stream(cfg.seed, 1 << 48)
    pa, pb = seed_data().pants_pair
    pts = []
    for _ in range(count):
        w = random_seed_word(cfg.word_length or 4, rng)
        pts.append(pants_vertex(apply_twist_word(w, seed_curve(pa)), apply_twist_word(w, seed_curve(pb))))
    return pts


@lru_cache(maxsize=2)
def _s05_metric(cfg):
    from ..pants05 import pants_distance_estimate

    pts = _s05_points(cfg, 12)
    n = len(pts)
    m = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            m[i, j] = m[j, i] = pants_distance_estimate(pts[i], pts[j], 4).sum_lower
    return pts, m


def _hyp_row(cfg, idx) -> list:
    rng = stream(cfg.seed, idx)
    if cfg.surface == "s05":
        _, m = _s05_metric(cfg)
    else:
        _, m = _ball_metric(surface_of(cfg), cfg.radius, cfg.seed)
    n = m.shape[0]
    a, b, c, d = (int(x) for x in rng.integers(n, size=4))
    delta = four_point(m[a, b], m[c, d], m[a, c], m[b, d], m[a, d], m[b, c])
    return [(idx, a, b, c, d, delta)]


def summarize_hyp(rows, cfg, profile: Optional[CalibrationProfile] = None) -> tuple[dict, bool]:
    deltas = [Fraction(r[5]) for r in rows]
    mx = max(deltas, default=Fraction(0))
    hist = Counter(str(x) for x in deltas)
    exact = cfg.surface != "s05"
    if profile is None and exact:
        profile = load_profile(cfg)
    bound = profile.delta if exact else None
    ok = True if bound is None else bool(mx <= bound)
    return {
        "max_delta": str(mx),
        "histogram": dict(sorted(hist.items())),
        "mode": "exact" if exact else "estimate",
        "bound": bound,
    }, ok


def scan_hyperbolicity(cfg: ScanConfig) -> ScanReport:
    rows = run_samples(_hyp_row, cfg, range(cfg.samples))
    summary, ok = summarize_hyp(rows, cfg, load_profile(cfg))
    return ScanReport(HYP_COLUMNS, rows, summary, {}, ok)


# orbit ----------------------------------------------------------------------------------------

ORBIT_COLUMNS = ("n", "d_S", "sup_annuli", "argmax")


def rho_matrix(surface: Surface1):
    """T_{1/0} T_{0/1}^-1 in full twists: [[2,1],[1,1]] on S11, [[5,2],[2,1]] on S04."""
    k = surface.full_twist_power
    return mat_mul(((1, k), (0, 1)), ((1, 0), (k, 1)))


def orbit_point(surface: Surface1, n: int) -> Marking1:
    mu0 = standard_marking(surface)
    g = mat_mul(mat_pow(rho_matrix(surface), n), marking_matrix(mu0))
    return marking_from_matrix(surface, g)


def annular_sup(mu: Marking1, nu: Marking1) -> tuple[int, str]:
    """Largest annular distance between mu and nu, over the annuli their hierarchy supports."""
    if mu == nu:
        return 0, "-"
    h = build_hierarchy(mu, nu)
    best, where = 0, "-"
    for alpha in candidate_annuli(h):
        d = annular_distance_IT(h, alpha)
        if d > best:
            best, where = d, str(alpha)
    return best, where


def _orbit_row(cfg, idx) -> list:
    surface = surface_of(cfg)
    mu0 = standard_marking(surface)
    mu = orbit_point(surface, idx)
    sup, where = annular_sup(mu0, mu)
    return [(idx, farey_dist(mu0.base, mu.base), sup, where)]


def summarize_orbit(rows, cfg) -> tuple[dict, bool]:
    n_max = cfg.samples
    sup_n = max((int(r[2]) for r in rows if int(r[0]) <= n_max), default=0)
    sup_2n = max((int(r[2]) for r in rows), default=0)
    tail = [(int(r[0]), int(r[1])) for r in rows if int(r[0]) >= 10]
    slope = None
    linear_ok = True
    if len(tail) >= 2:
        x = np.array([t[0] for t in tail], dtype=float)
        y = np.array([t[1] for t in tail], dtype=float)
        slope = float(np.polyfit(x, y, 1)[0])
        linear_ok = all(5 * d >= n for n, d in tail) and slope > 0
    plateau = sup_n == sup_2n
    return {
        "N": n_max,
        "sup_annuli_N": sup_n,
        "sup_annuli_2N": sup_2n,
        "plateau": plateau,
        "translation_length": None if slope is None else round(slope, 6),
        "linear_lower_bound": linear_ok,
    }, plateau and linear_ok


def scan_orbit(cfg: ScanConfig) -> ScanReport:
    rows = run_samples(_orbit_row, cfg, range(2 * cfg.samples + 1))
    summary, ok = summarize_orbit(rows, cfg)
    return ScanReport(ORBIT_COLUMNS, rows, summary, {}, ok)


# divergence -----------------------------------------------------------------------------------

DIV_COLUMNS = ("r", "n", "plain", "avoid", "search_depth")

SEARCH_NODE_CAP = 400_000


def avoidance_length(a: Marking1, b: Marking1, center: Marking1, r: int, depth: int,
                     node_cap: int = SEARCH_NODE_CAP) -> Optional[int]:
    """Shortest a-b path missing the open ball {m : d(m, center) < r}, if one of
    length <= depth exists.  None means no such path (or the node cap was hit)."""
    def blocked(m):
        return marking_distance(m, center) < r

    if blocked(a) or blocked(b):
        return None
    if a == b:
        return 0
    sides = [{a: 0}, {b: 0}]
    fronts = [[a], [b]]
    radius = [0, 0]
    while radius[0] + radius[1] < depth:
        s = 0 if len(fronts[0]) <= len(fronts[1]) else 1
        nxt = []
        for m in fronts[s]:
            for n in elementary_moves(m):
                if n in sides[s] or blocked(n):
                    continue
                if n in sides[1 - s]:
                    return radius[s] + 1 + sides[1 - s][n]
                sides[s][n] = radius[s] + 1
                nxt.append(n)
        radius[s] += 1
        fronts[s] = nxt
        if not nxt or len(sides[0]) + len(sides[1]) > node_cap:
            return None
    return None


def axis_half_length(surface: Surface1, radius: int) -> int:
    """Least n with both ends of the axis segment outside the open ball B_radius(mu0)."""
    mu0 = standard_marking(surface)
    n = 0
    while min(marking_distance(mu0, orbit_point(surface, n)),
              marking_distance(mu0, orbit_point(surface, -n))) < radius:
        n += 1
    return n


def _divergence_row(cfg, idx) -> list:
    r = idx
    surface = surface_of(cfg)
    mu0 = standard_marking(surface)
    n = axis_half_length(surface, cfg.radius)
    a, b = orbit_point(surface, -n), orbit_point(surface, n)
    plain = marking_distance(a, b)
    depth = 2 * plain + 1
    avoid = avoidance_length(a, b, mu0, r, depth)
    return [(r, n, plain, "none" if avoid is None else avoid, depth)]


def summarize_divergence(rows, cfg) -> tuple[dict, bool]:
    pts = [(int(r[0]), int(r[3])) for r in rows if r[3] != "none" and int(r[0]) > 0]
    exponent = None
    if len(pts) >= 2:
        x = np.log([p[0] for p in pts])
        y = np.log([p[1] for p in pts])
        exponent = round(float(np.polyfit(x, y, 1)[0]), 6)
    last = max(rows, key=lambda r: int(r[0])) if rows else None
    witness = False
    if last is not None:
        witness = last[3] == "none" or int(last[3]) > 2 * int(last[2])
    return {
        "exponent_fit": exponent,
        "largest_radius": None if last is None else int(last[0]),
        "superlinear_witness": witness,
        "unreachable_radii": [int(r[0]) for r in rows if r[3] == "none"],
    }, witness


def scan_divergence(cfg: ScanConfig) -> ScanReport:
    rows = run_samples(_divergence_row, cfg, range(cfg.radius + 1))
    summary, ok = summarize_divergence(rows, cfg)
    return ScanReport(DIV_COLUMNS, rows, summary, {}, ok)


# contraction ----------------------------------------------------------------------------------

CONTRACTION_COLUMNS = ("index", "r", "d_mu_nu", "diam_phi", "case_mu", "case_nu")


def _sample_hierarchy(surface: Surface1, rng) -> Hierarchy1:
    i = random_walk(standard_marking(surface), 6, rng)
    t = random_walk(i, 14 + int(rng.integers(10)), rng)
    return build_hierarchy(i, t)


def contraction_sample(cfg: ScanConfig, idx: int, profile: CalibrationProfile) -> Row:
    surface = surface_of(cfg)
    rng = stream(cfg.seed, idx)
    h = _sample_hierarchy(surface, rng)
    path = resolve_path(h)
    start = path.markings[int(rng.integers(len(path.markings)))]
    mu = non_backtracking_walk(start, 4 + int(rng.integers(14)), rng)
    rep_mu = large_domain_report(h, mu, profile, path)
    r = min(marking_distance(mu, x) for x in rep_mu.phi_hat)
    # d(mu, nu) <= steps < b r
    steps = max(0, math.ceil(profile.b * r) - 1)
    nu = random_walk(mu, int(rng.integers(steps + 1)), rng)
    rec = contraction_probe(h, mu, nu, profile, path)
    rep_nu = large_domain_report(h, nu, profile, path)
    return (idx, rec.r, rec.d_mu_nu, rec.diam_phi, rep_mu.case, rep_nu.case)


def _contraction_row(cfg, idx) -> list:
    return [contraction_sample(cfg, idx, load_profile(cfg))]


@dataclass(frozen=True)
class _WithProfile:
    profile: CalibrationProfile

    def __call__(self, cfg, idx):
        return [contraction_sample(cfg, idx, self.profile)]


def _contraction_row_for(profile: CalibrationProfile):
    return _WithProfile(profile)


def _band_c(rows, lo, hi):
    vals = [int(r[3]) for r in rows if lo <= int(r[1]) <= hi]
    return (max(vals) + 1 if vals else None), len(vals)


def summarize_contraction(rows, cfg) -> tuple[dict, bool]:
    c1, n1 = _band_c(rows, 4, 8)
    c2, n2 = _band_c(rows, 8, 12)
    ok = c1 is not None and c2 is not None and abs(c1 - c2) <= 2
    return {
        "b": "1/4",
        "c_r4_8": c1,
        "c_r8_12": c2,
        "rows_r4_8": n1,
        "rows_r8_12": n2,
        "stable": ok,
        "cases": dict(sorted(Counter(r[4] for r in rows).items())),
    }, ok


def scan_contraction(cfg: ScanConfig) -> ScanReport:
    rows = run_samples(_contraction_row, cfg, range(cfg.samples))
    summary, ok = summarize_contraction(rows, cfg)
    return ScanReport(CONTRACTION_COLUMNS, rows, summary, {}, ok)


# calibration ------------------------------------------------------------------------------------

CALIBRATE_COLUMNS = ("index", "surface", "quantity", "value")


def _calibrate_row(cfg, idx) -> list:
    rng = stream(cfg.seed, idx)
    surface = S11 if idx % 2 == 0 else S04
    name = surface.value
    h = _sample_hierarchy(surface, rng)
    verts = h.main_vertices
    rows = []
    # bounded geodesic image: annuli near the main path but off it
    bgi = 0
    for v in verts:
        for alpha in neighbors_window(v, -3, 3):
            if alpha not in verts:
                bgi = max(bgi, bounded_geodesic_image_probe(alpha, verts))
    rows.append((idx, name, "D_bgi", bgi))
    # order and projections: d_{v_i}(v_j, T) for i < j and d_{v_i}(v_j, I) for i > j
    m1 = 0
    for i, v in enumerate(verts):
        for j, w in enumerate(verts):
            if j == i:
                continue
            end = h.T if j > i else h.I
            m1 = max(m1, abs(_coord(v, w) - project_marking(end, v)))
    rows.append((idx, name, "M1", m1))
    m2 = max((annular_distance_IT(h, a) for a in candidate_annuli(h) if a not in verts), default=0)
    rows.append((idx, name, "M2", m2))
    rows.append((idx, name, "path_length", resolve_path(h).length))
    rows.append((idx, name, "distance", marking_distance(h.I, h.T)))
    return rows


def _delta_row(cfg, idx) -> list:
    rng = stream(cfg.seed, idx)
    surface = S11 if idx % 2 == 0 else S04
    _, m = _ball_metric(surface, 6, cfg.seed)
    n = m.shape[0]
    a, b, c, d = (int(x) for x in rng.integers(n, size=4))
    delta = four_point(m[a, b], m[c, d], m[a, c], m[b, d], m[a, d], m[b, c])
    return [(idx, surface.value, "delta", fmt(delta))]


def _calibrate_any(cfg, idx):
    if idx < cfg.samples:
        return _calibrate_row(cfg, idx)
    return _delta_row(cfg, idx)


def summarize_calibrate(rows, cfg) -> tuple[dict, bool]:
    def vals(q):
        return [r[3] for r in rows if r[2] == q]

    d_bgi = max((int(v) for v in vals("D_bgi")), default=0)
    m1 = max((int(v) for v in vals("M1")), default=0)
    m2 = max((int(v) for v in vals("M2")), default=0)
    delta = math.ceil(max((Fraction(v) for v in vals("delta")), default=Fraction(0)))
    fit = fit_quasi_constants([int(v) for v in vals("distance")], [int(v) for v in vals("path_length")])
    return {
        "M": max(m1 + 2, m2 + 3), "M1": m1, "M2": m2, "D_bgi": d_bgi, "delta": delta,
        "delta_prime": 4 * delta + 5, "K_path": fit.K, "C_path": fit.C,
    }, True


def calibrate_profile(cfg: ScanConfig) -> tuple[ScanReport, CalibrationProfile]:
    rows = run_samples(_calibrate_any, cfg, range(2 * cfg.samples))
    summary, ok = summarize_calibrate(rows, cfg)
    base = CalibrationProfile(
        M=summary["M"], M1=summary["M1"], M2=summary["M2"], D_bgi=summary["D_bgi"],
        delta=summary["delta"], K_path=summary["K_path"], C_path=summary["C_path"],
    )
    # contraction constant for b = 1/4 from a short probe on S11
    probe = cfg.with_(scan="contraction", surface="s11", samples=max(1, cfg.samples))
    c_rows = run_samples(_contraction_row_for(base), probe, range(probe.samples))
    c = max((int(r[3]) for r in c_rows), default=0) + 1
    profile = replace(
        base, c=c,
        metadata={
            "seed": cfg.seed,
            "samples": cfg.samples,
            "procedure": "hierarchies between random-walk markings on S11 and S04; "
                         "delta from four-point samples in radius-6 balls; "
                         "c from a contraction probe on S11",
            "code_version": __version__,
        },
    )
    summary["c"] = c
    return ScanReport(CALIBRATE_COLUMNS, rows, summary, {}, ok), profile


SCAN_FUNCS = {
    "behrstock": scan_behrstock,
    "em_projection": scan_em_projection,
    "distance_formula": scan_distance_formula,
    "hyperbolicity": scan_hyperbolicity,
    "orbit": scan_orbit,
    "divergence": scan_divergence,
    "contraction": scan_contraction,
}

SUMMARIZERS = {
    "behrstock": summarize_behrstock,
    "em_projection": summarize_em,
    "distance_formula": summarize_df,
    "hyperbolicity": summarize_hyp,
    "orbit": summarize_orbit,
    "divergence": summarize_divergence,
    "contraction": summarize_contraction,
    "calibrate": summarize_calibrate,
}


def run_scan(cfg: ScanConfig) -> tuple[ScanReport, Optional[CalibrationProfile]]:
    if cfg.scan == "calibrate":
        report, profile = calibrate_profile(cfg)
    else:
        report, profile = SCAN_FUNCS[cfg.scan](cfg), None
    prof_version = None
    if cfg.scan != "calibrate":
        try:
            prof_version = load_profile(cfg).version
        except (OSError, ValueError, KeyError):
            prof_version = None
    report.provenance = {
        "config": cfg.echo(),
        "code_version": __version__,
        "profile_version": prof_version,
    }
    return report, profile
