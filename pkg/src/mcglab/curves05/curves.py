"""Normal curves on S_{0,5}, the seed-twist action and intersection numbers.

A word is a tuple of letters (k, p): the p-th power of the Dehn twist about
catalog curve k.  Words act right to left, like composition.  Sampling only
uses the five seed twists (k = 0..4); the remaining catalog twists exist so
that chart generators can be written as short conjugates.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Iterable, Optional, Sequence

from .engine import NUM_EDGES, Triangulation, run

Letter = tuple[int, int]
Word = tuple[Letter, ...]


class MatchingViolation(ValueError):
    pass


class NotConnected(ValueError):
    pass


class Peripheral(ValueError):
    pass


class EmptyCurve(ValueError):
    pass


class WordNotFound(RuntimeError):
    pass


def _step(s):
    if s[0] == "f":
        return ("f", *s[1:])
    return ("p", tuple(tuple(pair) for pair in s[1]))


@dataclass(frozen=True)
class TriangulationData:
    triangulation: Triangulation
    catalog_names: tuple[str, ...]
    catalog_weights: tuple[tuple[int, ...], ...]
    probes: tuple[tuple[tuple, int], ...]  # (prefix program, edge)
    twist_pos: tuple[tuple, ...]
    twist_neg: tuple[tuple, ...]
    charts: tuple[dict, ...]
    seeds: tuple[int, ...]
    pants_pair: tuple[int, int]
    version: int
    raw: dict = field(repr=False, compare=False)

    @property
    def faces(self) -> int:
        return len(self.triangulation.triangles)

    @property
    def edges(self) -> int:
        return NUM_EDGES

    @property
    def punctures(self) -> int:
        return 5

    def to_json(self) -> str:
        return json.dumps(self.raw, indent=1, sort_keys=True) + "\n"


@lru_cache(maxsize=1)
def seed_data() -> TriangulationData:
    text = resources.files("mcglab.data").joinpath("s05_seed_data.json").read_text()
    raw = json.loads(text)
    tri = Triangulation(
        tuple(tuple(t) for t in raw["triangulation"]["triangles"]),
        tuple(tuple(e) for e in raw["triangulation"]["ends"]),
    )
    cat = raw["catalog"]
    return TriangulationData(
        triangulation=tri,
        catalog_names=tuple(c["name"] for c in cat),
        catalog_weights=tuple(tuple(c["weights"]) for c in cat),
        probes=tuple(
            (tuple(_step(s) for s in c["probe"]["prefix"]), c["probe"]["edge"]) for c in cat
        ),
        twist_pos=tuple(tuple(_step(s) for s in c["twist"]["pos"]) for c in cat),
        twist_neg=tuple(tuple(_step(s) for s in c["twist"]["neg"]) for c in cat),
        charts=tuple(c["chart"] for c in cat),
        seeds=tuple(raw["seeds"]),
        pants_pair=tuple(raw["pants_pair"]),
        version=raw["version"],
        raw=raw,
    )


# words -----------------------------------------------------------------------

def word_inverse(word: Sequence[Letter]) -> Word:
    return tuple((k, -p) for k, p in reversed(word))


def word_reduce(word: Iterable[Letter]) -> Word:
    out: list[Letter] = []
    for k, p in word:
        if p == 0:
            continue
        if out and out[-1][0] == k:
            q = out.pop()[1] + p
            if q:
                out.append((k, q))
        else:
            out.append((k, p))
    return tuple(out)


def parse_word(text: str) -> Word:
    """Parse e.g. "T0 T3^-2 T1^-1" (catalog indices) into a word."""
    letters = []
    for tok in text.split():
        if not tok.startswith("T"):
            raise ValueError(f"bad letter {tok!r}")
        base, _, power = tok[1:].partition("^")
        letters.append((int(base), int(power) if power else 1))
    return tuple(letters)


def format_word(word: Sequence[Letter]) -> str:
    return " ".join(f"T{k}" if p == 1 else f"T{k}^{p}" for k, p in word)


# weight-level action -----------------------------------------------------------

def twist_weights(k: int, p: int, w: Sequence[int]) -> list[int]:
    data = seed_data()
    prog = data.twist_pos[k] if p > 0 else data.twist_neg[k]
    w = list(w)
    for _ in range(abs(p)):
        w = run(prog, w)
    return w


def apply_word_weights(word: Sequence[Letter], w: Sequence[int]) -> list[int]:
    w = list(w)
    for k, p in reversed(word):
        w = twist_weights(k, p, w)
    return w


def meet_catalog(k: int, w: Sequence[int]) -> int:
    """Geometric intersection of catalog curve k with the curve w."""
    prefix, edge = seed_data().probes[k]
    if prefix:
        w = run(prefix, w)
    return 2 * w[edge]


# curves ------------------------------------------------------------------------

@dataclass(frozen=True)
class NormalCurve:
    """An essential non-peripheral simple closed curve given by edge weights.

    ``origin`` optionally records (word, k) with weights = word . catalog[k];
    it speeds up intersection numbers and never takes part in equality.
    """

    weights: tuple[int, ...]
    origin: Optional[tuple[Word, int]] = field(default=None, compare=False, repr=False)

    @property
    def word(self) -> Optional[Word]:
        return None if self.origin is None else self.origin[0]

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.weights) + ")"


def catalog_curve(k: int) -> NormalCurve:
    return NormalCurve(seed_data().catalog_weights[k], ((), k))


def seed_curve(i: int) -> NormalCurve:
    return catalog_curve(seed_data().seeds[i])


def catalog_index(c: NormalCurve) -> Optional[int]:
    try:
        return seed_data().catalog_weights.index(c.weights)
    except ValueError:
        return None


def apply_twist_word(word: Sequence[Letter], a: NormalCurve) -> NormalCurve:
    word = tuple(word)
    if not word:
        return a
    w = apply_word_weights(word, a.weights)
    origin = None
    if a.origin is not None:
        origin = (word_reduce(word + a.origin[0]), a.origin[1])
    return NormalCurve(tuple(w), origin)


def _peripheral_vectors() -> list[tuple[int, ...]]:
    ends = seed_data().triangulation.ends
    return [tuple((t == p) + (h == p) for t, h in ends) for p in range(1, 6)]


def check_matching(w: Sequence[int]) -> None:
    if len(w) != NUM_EDGES:
        raise MatchingViolation(f"expected {NUM_EDGES} weights, got {len(w)}")
    if any(x < 0 for x in w):
        raise MatchingViolation("weights must be nonnegative")
    for tri in seed_data().triangulation.triangles:
        x, y, z = (w[e if e >= 0 else ~e] for e in tri)
        if (x + y + z) % 2:
            raise MatchingViolation(f"odd weight sum around triangle {tri}")
        if x > y + z or y > x + z or z > x + y:
            raise MatchingViolation(f"triangle inequality fails around {tri}")


def count_components(w: Sequence[int]) -> int:
    """Number of components of the normal multicurve, by explicit tracing."""
    tri = seed_data().triangulation
    offsets = [0]
    for x in w:
        offsets.append(offsets[-1] + x)
    parent = list(range(offsets[-1]))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def point(edge: int, pos: int) -> int:
        # pos counts from the tail of the oriented edge
        lab = edge if edge >= 0 else ~edge
        if edge < 0:
            pos = w[lab] - 1 - pos
        return offsets[lab] + pos

    for t in tri.triangles:
        for i in range(3):
            e0, e1, e2 = t[i], t[(i + 1) % 3], t[(i + 2) % 3]
            w0, w1, w2 = (w[e if e >= 0 else ~e] for e in (e0, e1, e2))
            corner = (w0 + w1 - w2) // 2
            for j in range(corner):
                a, b = find(point(e0, w0 - 1 - j)), find(point(e1, j))
                if a != b:
                    parent[a] = b
    return len({find(i) for i in range(offsets[-1])})


def curve_from_weights(w: Sequence[int], max_trace: int = 2_000_000) -> NormalCurve:
    """Validate a weight vector and return the curve it describes."""
    w = tuple(int(x) for x in w)
    check_matching(w)
    if not any(w):
        raise EmptyCurve("all weights are zero")
    if sum(w) > max_trace:
        # too large to trace point by point; fall back to reduction by twists
        word, k = find_word(NormalCurve(w))
        return NormalCurve(w, (word, k))
    if count_components(w) != 1:
        raise NotConnected("weights describe a multicurve")
    if w in _peripheral_vectors():
        raise Peripheral("curve is parallel to a puncture")
    return NormalCurve(w)


# reduction and intersection --------------------------------------------------------

def _letters() -> list[Letter]:
    n = len(seed_data().catalog_weights)
    return [(k, p) for k in range(n) for p in (1, -1)]


def find_word(c: NormalCurve, max_steps: int = 100_000) -> tuple[Word, int]:
    """Find (word, k) with c = word . catalog[k] by greedy weight descent.

    Each step applies the inverse twist (over all ten catalog twists) that
    lowers the total weight most; a two-letter lookahead handles plateaus.
    """
    if c.origin is not None:
        return c.origin
    cat = seed_data().catalog_weights
    w = list(c.weights)
    undo: list[Letter] = []  # letters applied to w, in order
    letters = _letters()
    for _ in range(max_steps):
        tw = tuple(w)
        if tw in cat:
            # w = undo[-1] ... undo[0] . c, so c = undo[0]^-1 ... undo[-1]^-1 . w
            return word_reduce((k, -p) for k, p in undo), cat.index(tw)
        total = sum(w)
        best = None
        for k, p in letters:
            if undo and undo[-1] == (k, -p):
                continue
            v = twist_weights(k, p, w)
            s = sum(v)
            if s < total and (best is None or s < best[0]):
                best = (s, [(k, p)], v)
        if best is None:
            for (k1, p1) in letters:
                v1 = twist_weights(k1, p1, w)
                for (k2, p2) in letters:
                    if k2 == k1:
                        continue
                    v2 = twist_weights(k2, p2, v1)
                    s = sum(v2)
                    if s < total and (best is None or s < best[0]):
                        best = (s, [(k1, p1), (k2, p2)], v2)
        if best is None:
            raise WordNotFound(f"descent stalled at weights {tw}")
        undo.extend(best[1])
        w = best[2]
    raise WordNotFound("descent did not terminate")


def with_origin(c: NormalCurve) -> NormalCurve:
    if c.origin is not None:
        return c
    return NormalCurve(c.weights, find_word(c))


def intersection_number(a: NormalCurve, b: NormalCurve) -> int:
    if a.weights == b.weights:
        return 0
    if a.origin is None and b.origin is not None:
        a, b = b, a
    word, k = find_word(a)
    return meet_catalog(k, apply_word_weights(word_inverse(word), b.weights))
