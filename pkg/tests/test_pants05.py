import random

import pytest

from mcglab.curves05.curves import apply_twist_word, intersection_number, seed_curve, seed_data
from mcglab.curves05.subsurface import side_subsurface, subsurface_distance
from mcglab.farey import farey_dist
from mcglab.pants05 import (
    CurvesEqual,
    CurvesIntersect,
    PantsMoveWindow,
    curve_distance_bracket,
    move_index,
    pants_distance_estimate,
    pants_moves,
    pants_path_length,
    pants_vertex,
    slope_in,
    standard_pants,
    twist_path,
)

A1 = seed_curve(seed_data().pants_pair[0])
A2 = seed_curve(seed_data().pants_pair[1])
# T_{c34} T_{c45}^-1 fixes A1 and acts hyperbolically on the Farey graph of Y_{A1}
PHI = ((2, 1), (3, -1))

# W = 1 moves of the standard pants decomposition, frozen from the first run
GOLDEN_W1 = [
    ((0, 1, 0, 0, 1, 1, 1, 0, 1), (0, 1, 1, 1, 1, 1, 2, 2, 1)),
    ((0, 0, 1, 0, 1, 0, 1, 1, 1), (0, 1, 0, 0, 1, 1, 1, 0, 1)),
    ((0, 1, 0, 0, 1, 1, 1, 0, 1), (0, 1, 1, 1, 1, 1, 0, 0, 1)),
    ((0, 1, 0, 1, 0, 1, 1, 1, 0), (1, 1, 0, 1, 1, 2, 2, 1, 2)),
    ((0, 1, 0, 1, 0, 1, 1, 1, 0), (1, 0, 0, 1, 0, 1, 1, 1, 1)),
    ((0, 1, 0, 1, 0, 1, 1, 1, 0), (1, 1, 0, 1, 1, 0, 0, 1, 0)),
]


def seed_word(rng, n):
    word = []
    while len(word) < n:
        k = rng.randrange(5)
        if word and word[-1][0] == k:
            continue
        word.append((k, rng.choice((1, -1))))
    return tuple(word)


def test_vertex_examples():
    p = pants_vertex(A1, A2)
    assert set(p.curves) == {A1, A2}
    assert pants_vertex(A2, A1) == p
    with pytest.raises(CurvesEqual):
        pants_vertex(A1, A1)
    crossing = apply_twist_word(((1, 1),), A2)
    i = intersection_number(A1, crossing)
    with pytest.raises(CurvesIntersect) as exc:
        pants_vertex(A1, crossing)
    assert exc.value.i == i > 0


def test_window_validation():
    with pytest.raises(ValueError):
        PantsMoveWindow(0)


def test_golden_moves():
    moves = pants_moves(standard_pants(), PantsMoveWindow(1))
    assert [tuple(c.weights for c in q.curves) for q in moves] == GOLDEN_W1
    assert [move_index(standard_pants(), q) for q in moves] == [-1, 0, 1] * 2


def _vertices():
    rng = random.Random(1)
    out = [standard_pants()]
    for _ in range(5):
        w = seed_word(rng, rng.randrange(1, 4))
        out.append(pants_vertex(apply_twist_word(w, A1), apply_twist_word(w, A2)))
    return out


def test_moves_are_single_moves():
    for p in _vertices():
        for q in pants_moves(p, 2):
            shared = [c for c in p.curves if c in q.curves]
            assert len(shared) == 1
            x = shared[0]
            assert farey_dist(slope_in(x, p.other(x)), slope_in(x, q.other(x))) == 1
            assert intersection_number(*q.curves) == 0


@pytest.mark.parametrize("w", [1, 2, 3])
def test_moves_symmetric(w):
    p = standard_pants()
    for q in pants_moves(p, w):
        # the reverse move exists, at the window index read in q's own chart
        n = move_index(q, p)
        assert n is not None
        assert p in pants_moves(q, max(1, abs(n)))


def test_estimate_zero_cases():
    p = standard_pants()
    assert pants_distance_estimate(p, p, 4).sum_lower == 0
    for q in pants_moves(p, 3):
        est = pants_distance_estimate(p, q, 4)
        assert est.sum_lower == 0
        for t in est.terms:
            if t.boundary is not None:
                assert t.value <= 4


def test_estimate_threshold_validation():
    with pytest.raises(ValueError):
        pants_distance_estimate(standard_pants(), standard_pants(), 3)


def test_hyperbolic_twist_term_dominates():
    p = standard_pants()
    n = 15
    q = pants_vertex(A1, apply_twist_word(PHI * n, A2))
    est = pants_distance_estimate(p, q, 10)
    direct = subsurface_distance(side_subsurface(A1), A2, q.other(A1))
    assert abs(direct - 2 * n) <= 2
    (term,) = [t for t in est.terms if t.boundary == A1]
    assert term.value == direct
    assert est.sum_lower == direct


def test_estimate_monotone_in_threshold():
    rng = random.Random(4)
    p = standard_pants()
    for _ in range(8):
        w = seed_word(rng, rng.randrange(3, 8))
        q = pants_vertex(apply_twist_word(w, A1), apply_twist_word(w, A2))
        sums = [pants_distance_estimate(p, q, t).sum_lower for t in (4, 6, 8, 12, 20)]
        assert sums == sorted(sums, reverse=True)


def test_lower_bound_below_exhibited_paths():
    p = standard_pants()
    rng = random.Random(9)
    for _ in range(6):
        steps = [rng.choice((-2, -1, 0, 1, 2)) for _ in range(rng.randrange(5, 25))]
        path = twist_path(p, A1, steps)
        length = pants_path_length(path)
        est = pants_distance_estimate(p, path[-1], 4)
        assert est.lower <= length


def test_bracket_examples():
    assert curve_distance_bracket(A1, A1) == (0, 0)
    assert curve_distance_bracket(A1, A2) == (1, 1)
    lo, hi = curve_distance_bracket(A1, seed_curve(1))
    assert lo == 2 and hi >= 2
