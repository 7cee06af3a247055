"""Curves on the five-punctured sphere as cyclic words in a free group.

Punctures 1..4 sit counterclockwise around a base point O with puncture 5
at infinity; x_i is the counterclockwise loop around puncture i.  The
ribbon structure at O is the cyclic order x1, X1, x2, X2, x3, X3, x4, X4 of
outgoing half-edges (X_i is where x_i comes back).

Geometric intersection numbers come from counting linked pairs of maximal
shared paths between the two bi-infinite periodic words (the standard
combinatorial criterion for geodesic representatives on a ribbon graph).
Nothing here touches normal coordinates.
"""
from __future__ import annotations

from typing import Sequence

Word = tuple[int, ...]  # letters +-1..+-4


def reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word: Sequence[int]) -> Word:
    w = list(reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


# half-edge positions in the cyclic order at O
def _out(g: int) -> int:
    return 2 * (g - 1) if g > 0 else 2 * (-g - 1) + 1


def _in(g: int) -> int:
    return _out(-g)


def _between(a: int, b: int, c: int) -> bool:
    """True if b is met strictly before c going counterclockwise from a."""
    return (b - a) % 8 < (c - a) % 8


def _alternate(p1, p2, q1, q2) -> bool:
    # chords p1p2 and q1q2 of the 8-gon cross
    return _between(p1, q1, p2) != _between(p1, q2, p2)


def intersection(u: Sequence[int], v: Sequence[int]) -> int:
    u, v = cyclic_reduce(u), cyclic_reduce(v)
    if not u or not v:
        return 0
    nu, nv = len(u), len(v)
    if _same_cyclic(u, v) or _same_cyclic(u, inverse(v)):
        return 0
    count = 0
    limit = nu * nv + 2
    for w, same_dir in ((v, True), (inverse(v), False)):
        nw = len(w)
        for i in range(nu):
            for j in range(nw):
                in_u, out_u = _in(u[i - 1]), _out(u[i])
                in_w, out_w = _in(w[j - 1]), _out(w[j])
                if in_u == in_w:
                    continue  # shared path extends backwards
                k = 0
                while k < limit and u[(i + k) % nu] == w[(j + k) % nw]:
                    k += 1
                if k >= limit:
                    continue
                if k == 0:
                    if not same_dir:
                        continue
                    if len({in_u, out_u, in_w, out_w}) < 4:
                        continue
                    if _alternate(in_u, out_u, in_w, out_w):
                        count += 1
                    continue
                h = out_u
                start = _between(h, in_u, in_w)
                h2 = _in(u[(i + k - 1) % nu])
                a2, b2 = _out(u[(i + k) % nu]), _out(w[(j + k) % nw])
                end = _between(h2, a2, b2)
                if start == end:
                    count += 1
    return count


def _same_cyclic(a: Word, b: Word) -> bool:
    if len(a) != len(b):
        return False
    doubled = a + a
    n = len(a)
    return any(doubled[k:k + n] == b for k in range(n))


SEED_WORDS: dict[int, Word] = {
    0: (1, 2),        # around punctures 1, 2
    1: (2, 3),
    2: (3, 4),
    3: (1, 2, 3),     # complement of 4, 5
    4: (2, 3, 4),     # complement of 1, 5
}

_ENCLOSED = {0: (1, 2), 1: (2, 3), 2: (3, 4), 3: (1, 2, 3), 4: (2, 3, 4)}


def twist_images(seed: int, power: int) -> dict[int, Word]:
    """Images of the generators under the power-th twist about a seed curve.

    Generators inside the curve are conjugated by the boundary word.
    """
    boundary = SEED_WORDS[seed]
    conj = boundary if power > 0 else inverse(boundary)
    images = {}
    for g in (1, 2, 3, 4):
        w: Word = (g,)
        if g in _ENCLOSED[seed]:
            for _ in range(abs(power)):
                w = reduce(conj + w + inverse(conj))
        images[g] = w
    return images


def apply_twist(seed: int, power: int, word: Sequence[int]) -> Word:
    images = twist_images(seed, power)
    out: list[int] = []
    for x in word:
        out.extend(images[x] if x > 0 else inverse(images[-x]))
    return cyclic_reduce(out)


def apply_word(letters: Sequence[tuple[int, int]], word: Sequence[int]) -> Word:
    """letters act right to left, like function composition."""
    for seed, power in reversed(letters):
        word = apply_twist(seed, power, word)
    return cyclic_reduce(word)
