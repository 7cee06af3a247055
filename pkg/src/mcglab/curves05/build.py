"""Deterministic construction of the frozen S_{0,5} seed table.

Run ``python3 -m mcglab.curves05.build`` to regenerate
``mcglab/data/s05_seed_data.json``; the test suite checks that a fresh build
matches the frozen file byte for byte.
"""
from __future__ import annotations

import itertools
import json
from pathlib import Path

from .engine import (
    NUM_EDGES,
    Triangulation,
    edge_curve,
    flip_step,
    run,
    standard_triangulation,
    twist_programs,
)

VERSION = 1
DATA_PATH = Path(__file__).resolve().parent.parent / "data" / "s05_seed_data.json"

# one curve per pair of punctures; the first five form the pentagon chain
CATALOG_NAMES = ("c12", "c23", "c34", "c45", "c51", "c13", "c14", "c35", "c25", "c24")
SEEDS = (0, 1, 2, 3, 4)
PANTS_PAIR = (0, 2)  # c12 and c34 are disjoint


def _catalog(tri: Triangulation):
    weights = [edge_curve(tri, e) for e in range(NUM_EDGES)]
    flipped = tri.flip(5)
    c24 = run([flip_step(flipped, 5)], edge_curve(flipped, 5))
    weights.append(c24)
    # intersection with catalog curve k: 2 * (prefix applied to x)[edge]
    probes = [{"prefix": [], "edge": e} for e in range(NUM_EDGES)]
    probes.append({"prefix": [list(flip_step(tri, 5))], "edge": 5})
    return weights, probes


def _programs(tri: Triangulation, weights):
    out = []
    for w in weights:
        prog_ccw, prog_other = twist_programs(tri, w)
        # the counterclockwise-follow flip realizes the inverse twist in the
        # orientation used throughout (checked against the free-group oracle)
        out.append({"pos": _jsonable(prog_other), "neg": _jsonable(prog_ccw)})
    return out


def _jsonable(program):
    steps = []
    for step in program:
        if step[0] == "f":
            steps.append(["f", *step[1:]])
        else:
            steps.append(["p", [list(pair) for pair in step[1]]])
    return steps


class _Kit:
    """Just enough machinery to search for chart references."""

    def __init__(self, weights, probes, programs):
        self.weights = weights
        self.probes = probes
        self.programs = [
            {k: [_step(s) for s in v] for k, v in p.items()} for p in programs
        ]

    def twist(self, k, p, w):
        prog = self.programs[k]["pos" if p > 0 else "neg"]
        for _ in range(abs(p)):
            w = run(prog, w)
        return w

    def apply(self, word, w):
        for k, p in reversed(word):
            w = self.twist(k, p, w)
        return w

    def meet_catalog(self, k, w):
        probe = self.probes[k]
        if probe["prefix"]:
            w = run([_step(s) for s in probe["prefix"]], w)
        return 2 * w[probe["edge"]]

    def meet(self, a, b):
        """i(u.c_k, x) for a = (u, k) and a weight vector x."""
        (u, k), x = a, b
        return self.meet_catalog(k, self.apply(_inverse(u), x))


def _step(s):
    if s[0] == "f":
        return ("f", *s[1:])
    return ("p", tuple(tuple(pair) for pair in s[1]))


def _inverse(word):
    return tuple((k, -p) for k, p in reversed(word))


def _candidate_words():
    letters = [(k, p) for k in SEEDS for p in (1, -1)]
    yield ()
    for a in letters:
        yield (a,)
    for a, b in itertools.product(letters, repeat=2):
        if a[0] != b[0]:
            yield (a, b)


def _chart_for(kit: _Kit, side: int):
    """Search short words for three curves forming a Farey triangle in Y_side."""
    pool = []
    seen = set()
    for u in _candidate_words():
        for k in range(len(kit.weights)):
            w = tuple(kit.apply(u, kit.weights[k]))
            if w in seen:
                continue
            seen.add(w)
            if w == tuple(kit.weights[side]):
                continue
            if kit.meet_catalog(side, list(w)) != 0:
                continue
            pool.append(((u, k), w))
            if len(pool) >= 40:
                break
        if len(pool) >= 40:
            break
    for x, y, z in itertools.combinations(range(len(pool)), 3):
        a, b, c = pool[x], pool[y], pool[z]
        if (
            kit.meet(a[0], list(b[1])) == 2
            and kit.meet(a[0], list(c[1])) == 2
            and kit.meet(b[0], list(c[1])) == 2
        ):
            return _orient(kit, [a, b, c])
    raise RuntimeError(f"no chart found for side {side}")


def _orient(kit: _Kit, refs):
    """Fix twist signs so the chart twists act as [[1,2],[0,1]] and [[1,0],[2,1]]."""
    (u10, k10), w10 = refs[0]
    (u01, k01), w01 = refs[1]
    (u11, k11), _ = refs[2]

    def twist_word(u, k, eps):
        return tuple(u) + ((k, eps),) + _inverse(u)

    def half_meet(ref, w):
        return kit.meet(ref, w) // 2

    eps_a = eps_b = None
    for eps in (1, -1):
        img = kit.apply(twist_word(u10, k10, eps), list(w01))
        if half_meet((u11, k11), img) == 1:  # slope 2/1 meets 1/1 once
            eps_a = eps
        img = kit.apply(twist_word(u01, k01, eps), list(w10))
        if half_meet((u11, k11), img) == 1:  # slope 1/2
            eps_b = eps
    if eps_a is None or eps_b is None:
        raise RuntimeError("could not orient chart twists")
    return {
        "refs": [[_word_json(u10), k10], [_word_json(u01), k01], [_word_json(u11), k11]],
        "twist_signs": [eps_a, eps_b],
    }


def _word_json(word):
    return [list(letter) for letter in word]


def build() -> dict:
    tri = standard_triangulation()
    weights, probes = _catalog(tri)
    programs = _programs(tri, weights)
    kit = _Kit(weights, probes, programs)
    charts = [_chart_for(kit, side) for side in range(len(weights))]
    return {
        "version": VERSION,
        "triangulation": {
            "triangles": [list(t) for t in tri.triangles],
            "ends": [list(e) for e in tri.ends],
            "punctures": 5,
        },
        "catalog": [
            {
                "name": CATALOG_NAMES[k],
                "weights": weights[k],
                "probe": probes[k],
                "twist": programs[k],
                "chart": charts[k],
            }
            for k in range(len(weights))
        ],
        "seeds": list(SEEDS),
        "pants_pair": list(PANTS_PAIR),
    }


def dumps(data: dict) -> str:
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


def main() -> None:
    DATA_PATH.parent.mkdir(parents=True, exist_ok=True)
    DATA_PATH.write_text(dumps(build()))
    print(DATA_PATH)


if __name__ == "__main__":
    main()
