from collections import deque

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mcglab.farey import INFINITY, ONE, ZERO, Slope, apply_mapping_class, dehn_twist
from mcglab.markings import (
    S04,
    S11,
    WHOLE,
    Marking1,
    NotTransverse,
    RadiusCapExceeded,
    Surface1,
    Unreachable,
    distance_matrix,
    domain_distance,
    elementary_moves,
    fit_quasi_constants,
    marking_ball,
    marking_distance,
    marking_distance_bfs,
    marking_new,
    project_marking,
    restrict_marking,
    standard_marking,
    thresholded_sums,
)

SURFACES = [S11, S04]


def bfs_oracle(mu, nu, cap):
    seen = {mu: 0}
    queue = deque([mu])
    while queue:
        m = queue.popleft()
        if m == nu:
            return seen[m]
        if seen[m] == cap:
            continue
        for n in elementary_moves(m):
            if n not in seen:
                seen[n] = seen[m] + 1
                queue.append(n)
    return None


def walk(surface, steps, rng):
    mu = standard_marking(surface)
    for _ in range(steps):
        mu = elementary_moves(mu)[rng.integers(3)]
    return mu


def test_marking_new_examples():
    assert marking_new(S11, ZERO, INFINITY).base == ZERO
    with pytest.raises(NotTransverse):
        marking_new(S11, ZERO, Slope(2, 1))
    assert marking_new(S04, Slope(1, 2), ONE).transversal == ONE


def test_surface_parse():
    assert Surface1.parse("S11") is S11
    assert Surface1.parse("s04") is S04
    assert S11.intersection_scale == 1 and S04.intersection_scale == 2


def test_move_examples():
    mu = standard_marking(S11)
    flip = elementary_moves(mu)[2]
    assert (flip.base, flip.transversal) == (INFINITY, ZERO)
    assert elementary_moves(flip)[2] == mu
    plus = elementary_moves(Marking1(S11, INFINITY, ZERO))[0]
    assert plus.transversal == ONE
    assert len(elementary_moves(mu)) == 3
    assert len(elementary_moves(standard_marking(S04))) == 3
    assert len(elementary_moves(standard_marking(S04), half_twists=True)) == 5


@pytest.mark.parametrize("surface", SURFACES)
def test_moves_symmetric_and_inverse(surface):
    for mu in marking_ball(standard_marking(surface), 4).vertices:
        plus, minus, flip = elementary_moves(mu)
        assert elementary_moves(plus)[1] == mu
        assert elementary_moves(minus)[0] == mu
        assert elementary_moves(flip)[2] == mu
        for n in elementary_moves(mu):
            assert mu in elementary_moves(n)


# golden ball sizes at the standard marking, frozen from the first run
GOLDEN_BALLS = {
    S11: [(1, 0), (4, 3), (10, 9), (20, 21), (36, 39), (62, 69), (104, 117)],
    S04: [(1, 0), (4, 3), (10, 9), (22, 21), (46, 45), (94, 93), (190, 189)],
}


@pytest.mark.parametrize("surface", SURFACES)
def test_ball_golden_counts(surface):
    for r, (v, e) in enumerate(GOLDEN_BALLS[surface]):
        ball = marking_ball(standard_marking(surface), r)
        assert (len(ball), ball.edge_count) == (v, e)


def test_ball_cap():
    with pytest.raises(RadiusCapExceeded):
        marking_ball(standard_marking(S11), 11)
    with pytest.raises(ValueError):
        marking_ball(standard_marking(S11), -1)


@pytest.mark.parametrize("surface", SURFACES)
def test_ball_structure(surface):
    ball = marking_ball(standard_marking(surface), 5)
    assert ball.distances[0] == 0
    for i, nbrs in enumerate(ball.edges):
        for j in nbrs:
            assert i in ball.edges[j]
            assert ball.vertices[j] in elementary_moves(ball.vertices[i])
    for m, d in zip(ball.vertices, ball.distances):
        assert marking_distance(ball.center, m) == d


def test_distance_examples():
    mu = standard_marking(S11)
    assert marking_distance(mu, mu) == 0
    assert marking_distance(mu, elementary_moves(mu)[0]) == 1
    t5 = Marking1(S11, ZERO, apply_mapping_class(dehn_twist(ZERO, 5), INFINITY))
    assert marking_distance(mu, t5) == 5 == bfs_oracle(mu, t5, 6)
    # on S04 only full twists (T^2 on slopes) are moves
    mu4 = standard_marking(S04)
    odd = Marking1(S04, ZERO, apply_mapping_class(dehn_twist(ZERO, 5), INFINITY))
    assert isinstance(marking_distance(mu4, odd), Unreachable)
    even = Marking1(S04, ZERO, apply_mapping_class(dehn_twist(ZERO, 10), INFINITY))
    assert marking_distance(mu4, even) == 5


def test_distance_cap():
    mu = standard_marking(S11)
    far = walk(S11, 40, np.random.default_rng(3))
    d = marking_distance(mu, far)
    assert isinstance(marking_distance(mu, far, cap=d - 1), Unreachable)
    assert marking_distance(mu, far, cap=d) == d


@pytest.mark.parametrize("surface", SURFACES)
def test_distance_matches_bfs(surface):
    rng = np.random.default_rng(7)
    for _ in range(60):
        a = walk(surface, int(rng.integers(0, 10)), rng)
        b = walk(surface, int(rng.integers(0, 10)), rng)
        want = bfs_oracle(a, b, 12)
        got = marking_distance(a, b, cap=12)
        assert (got if not isinstance(got, Unreachable) else None) == want
        assert marking_distance_bfs(a, b, 12) == got


@pytest.mark.parametrize("surface", SURFACES)
def test_metric_axioms_on_ball(surface):
    ball = marking_ball(standard_marking(surface), 4)
    dist = distance_matrix(ball.vertices)
    assert (dist == dist.T).all()
    assert (np.diag(dist) == 0).all()
    assert (dist[~np.eye(len(ball), dtype=bool)] > 0).all()
    n = len(ball)
    for k in range(n):
        assert (dist <= dist[:, [k]] + dist[[k], :]).all()


def test_half_twist_distance():
    mu = standard_marking(S04)
    odd = Marking1(S04, ZERO, apply_mapping_class(dehn_twist(ZERO, 3), INFINITY))
    assert marking_distance(mu, odd, half_twists=True) == 2


def test_projection_examples():
    alpha, t = ZERO, INFINITY
    mu = Marking1(S11, alpha, t)
    assert project_marking(mu, WHOLE) == alpha
    assert project_marking(mu, alpha) == restrict_marking(mu, alpha).twist
    nu = Marking1(S11, ONE, ZERO)
    assert project_marking(nu, INFINITY) == restrict_marking(nu, INFINITY).twist


@pytest.mark.parametrize("surface", SURFACES)
def test_twist_moves_shift_projection(surface):
    k = surface.full_twist_power
    for mu in marking_ball(standard_marking(surface), 3).vertices:
        plus, minus, _ = elementary_moves(mu)
        c = project_marking(mu, mu.base)
        assert project_marking(plus, mu.base) - c == k
        assert project_marking(minus, mu.base) - c == -k


@pytest.mark.parametrize("surface", SURFACES)
def test_restriction_stable_under_flip(surface):
    ball = marking_ball(standard_marking(surface), 4)
    for mu in ball.vertices:
        flip = elementary_moves(mu)[2]
        for alpha in ball.annuli():
            if alpha in (mu.base, mu.transversal):
                continue
            assert abs(restrict_marking(mu, alpha).twist - restrict_marking(flip, alpha).twist) <= 1


@pytest.mark.parametrize("surface", SURFACES)
def test_elementary_move_projection_bound(surface):
    ball = marking_ball(standard_marking(surface), 4)
    annuli = ball.annuli()
    for a, b in ball.edge_pairs():
        assert domain_distance(a, b, WHOLE) <= 4
        assert max(domain_distance(a, b, alpha) for alpha in annuli) <= 4


def test_thresholded_sum_pure_twist():
    mu = standard_marking(S11)
    for n in (11, 15, 23):
        nu = Marking1(S11, ZERO, apply_mapping_class(dehn_twist(ZERO, n), INFINITY))
        sums = thresholded_sums([mu, nu], [ZERO, INFINITY], 10)
        assert n - 10 <= sums[0, 1] <= n


def test_fit_examples():
    fit = fit_quasi_constants([0, 1, 2, 3], [0, 1, 2, 3])
    assert (fit.K, fit.C) == (1, 0)
    fit = fit_quasi_constants([1, 10], [0, 30])
    assert fit.K * 10 + fit.C >= 30 and 1 / fit.K - fit.C <= 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32), st.sampled_from(SURFACES))
def test_distance_symmetric_random(seed, surface):
    rng = np.random.default_rng(seed)
    a, b = walk(surface, 15, rng), walk(surface, 15, rng)
    assert marking_distance(a, b) == marking_distance(b, a)
    c = walk(surface, 15, rng)
    dab, dbc, dac = marking_distance(a, b), marking_distance(b, c), marking_distance(a, c)
    assert dac <= dab + dbc
