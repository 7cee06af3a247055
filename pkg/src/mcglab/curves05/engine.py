"""Ideal triangulations of the five-punctured sphere and piecewise-linear moves.

Edges carry labels 0..8; an oriented edge is a label (positive direction) or
its complement ~label = -label-1.  A triangle lists its three oriented edges
counterclockwise.  Normal coordinates are indexed by label, so orientation
never matters for weights, only for finding quadrilaterals.

Everything that acts on curves is compiled into a "program": a list of flip
steps (e, a, b, c, d) meaning w[e] <- max(w[a]+w[c], w[b]+w[d]) - w[e], and
relabelling steps.  Programs are plain data, so they can be frozen in JSON.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

NUM_EDGES = 9


def inv(x: int) -> int:
    return ~x


def label(x: int) -> int:
    return x if x >= 0 else ~x


@dataclass(frozen=True)
class Triangulation:
    triangles: tuple[tuple[int, int, int], ...]
    # oriented edge -> (tail puncture, head puncture)
    ends: tuple[tuple[int, int], ...]

    def ends_of(self, x: int) -> tuple[int, int]:
        if x >= 0:
            return self.ends[x]
        t, h = self.ends[~x]
        return (h, t)

    def triangle_of(self, x: int) -> tuple[int, int, int]:
        """The triangle containing oriented edge x, rotated to start at x."""
        for tri in self.triangles:
            if x in tri:
                i = tri.index(x)
                return tri[i:] + tri[:i]
        raise KeyError(x)

    def is_flippable(self, e: int) -> bool:
        t1 = self.triangle_of(e)
        return inv(e) not in t1

    def quad(self, e: int) -> tuple[int, int, int, int]:
        """Oriented edges (a, b, c, d) around e: triangles (e,a,b), (~e,c,d)."""
        _, a, b = self.triangle_of(e)
        _, c, d = self.triangle_of(inv(e))
        return a, b, c, d

    def flip(self, e: int) -> "Triangulation":
        if not self.is_flippable(e):
            raise ValueError(f"edge {e} is not flippable")
        a, b, c, d = self.quad(e)
        old1, old2 = self.triangle_of(e), self.triangle_of(inv(e))
        rest = [t for t in self.triangles if set(t) != set(old1) and set(t) != set(old2)]
        tail = self.ends_of(a)[1]
        head = self.ends_of(c)[1]
        ends = list(self.ends)
        ends[e] = (tail, head)
        new = rest + [(e, d, a), (inv(e), b, c)]
        return Triangulation(tuple(new), tuple(ends))

    def canonical(self) -> tuple:
        """Hashable form up to rotation of triangles and their order."""
        rots = []
        for t in self.triangles:
            i = t.index(max(t))
            rots.append(t[i:] + t[:i])
        return tuple(sorted(rots))

    def unoriented(self) -> tuple:
        return tuple(sorted(tuple(sorted(label(x) for x in t)) for t in self.triangles))

    def relabel(self, phi: dict[int, int]) -> "Triangulation":
        """Apply an oriented relabelling (label -> oriented edge)."""
        def f(x):
            y = phi.get(label(x), label(x))
            return y if x >= 0 else inv(y)
        ends = list(self.ends)
        for lab, y in phi.items():
            t, h = self.ends[lab]
            if y >= 0:
                ends[y] = (t, h)
            else:
                ends[~y] = (h, t)
        return Triangulation(tuple(tuple(f(x) for x in t) for t in self.triangles), tuple(ends))


def standard_triangulation() -> Triangulation:
    """Punctures 1..5 on an equator; one hemisphere fanned from 1, the other from 5.

    Labels: 0=12, 1=23, 2=34, 3=45, 4=15 on the equator; 5=13, 6=14 inside;
    7=35, 8=25 outside.
    """
    tris = (
        (0, 1, ~5),
        (5, 2, ~6),
        (6, 3, ~4),
        (~3, ~2, 7),
        (~7, ~1, 8),
        (~8, ~0, 4),
    )
    ends = ((1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (1, 3), (1, 4), (3, 5), (2, 5))
    return Triangulation(tris, ends)


# programs -------------------------------------------------------------------

Step = tuple  # ("f", e, a, b, c, d) or ("p", ((src, dst), ...))


def run(program: Sequence[Step], w: Sequence[int]) -> list[int]:
    w = list(w)
    for step in program:
        if step[0] == "f":
            _, e, a, b, c, d = step
            x, y = w[a] + w[c], w[b] + w[d]
            w[e] = (x if x > y else y) - w[e]
        else:
            old = w[:]
            for src, dst in step[1]:
                w[dst] = old[src]
    return w


def flip_step(tri: Triangulation, e: int) -> Step:
    a, b, c, d = tri.quad(e)
    return ("f", e, label(a), label(b), label(c), label(d))


def edge_curve(tri: Triangulation, e: int) -> list[int]:
    """Coordinates of the boundary of a neighborhood of edge e in tri."""
    ends = set(tri.ends[e])
    w = []
    for g in range(NUM_EDGES):
        if g == e:
            w.append(0)
        else:
            t, h = tri.ends[g]
            w.append((t in ends) + (h in ends))
    return w


def flip_path_program(tri: Triangulation, path: Sequence[int]) -> tuple[list[Step], Triangulation]:
    prog = []
    for e in path:
        prog.append(flip_step(tri, e))
        tri = tri.flip(e)
    return prog, tri


def _annulus_position(tri: Triangulation, w: Sequence[int]) -> tuple[int, int] | None:
    ones = [g for g in range(NUM_EDGES) if w[g] == 1]
    if len(ones) != 2 or any(w[g] not in (0, 1) for g in range(NUM_EDGES)):
        return None
    return ones[0], ones[1]


def find_annulus(tri: Triangulation, w: Sequence[int], depth: int = 7):
    """Breadth-first flip search until the curve crosses exactly two edges once."""
    start = (tri, tuple(w), ())
    seen = {tri.canonical()}
    queue = deque([start])
    while queue:
        t, v, path = queue.popleft()
        if _annulus_position(t, v):
            return path, t, v
        if len(path) >= depth:
            continue
        for e in range(NUM_EDGES):
            if not t.is_flippable(e):
                continue
            nt = t.flip(e)
            key = nt.canonical()
            if key in seen:
                continue
            seen.add(key)
            nv = tuple(run([flip_step(t, e)], v))
            queue.append((nt, nv, path + (e,)))
    raise ValueError("no annulus position found within the flip depth")


def _isometries_fixing_rest(src: Triangulation, dst: Triangulation, labs: tuple[int, int]):
    a, e = labs
    target = dst.canonical()
    for ya in (a, ~a, e, ~e):
        for ye in (a, ~a, e, ~e):
            if label(ya) == label(ye):
                continue
            phi = {a: ya, e: ye}
            if phi == {a: a, e: e}:
                continue
            moved = src.relabel(phi)
            if moved.canonical() == target:
                yield phi


def twist_programs(tri: Triangulation, w: Sequence[int]) -> tuple[list[Step], list[Step]]:
    """PL programs for the two Dehn twists about the curve with coordinates w.

    The curve is first flipped into a two-triangle annulus crossing edges
    {x, y} once each.  Flipping the arc that follows a boundary loop
    counterclockwise and relabelling back realizes one twist; flipping the
    other arc realizes its inverse.  Returns (twist_a, twist_b) where a is
    the counterclockwise choice.
    """
    path, t, v = find_annulus(tri, w)
    pre, t_check = flip_path_program(tri, path)
    assert t_check.canonical() == t.canonical()
    x, y = _annulus_position(t, v)
    tris = [tr for tr in t.triangles if any(label(z) in (x, y) for z in tr)]
    assert len(tris) == 2
    tri1 = tris[0]
    loop = [z for z in tri1 if label(z) not in (x, y)]
    assert len(loop) == 1
    i = tri1.index(loop[0])
    follow = label(tri1[(i + 1) % 3])
    other = y if follow == x else x
    programs = []
    for chosen in (follow, other):
        step = flip_step(t, chosen)
        flipped = t.flip(chosen)
        phis = list(_isometries_fixing_rest(flipped, t, (x, y)))
        if len(phis) != 1:
            raise ValueError(f"expected one isometry, found {len(phis)}")
        phi = phis[0]
        perm = ("p", tuple(sorted((src, label(dst)) for src, dst in phi.items())))
        back = []
        cur = t
        for e in reversed(path):
            back.append(flip_step(cur, e))
            cur = cur.flip(e)
        assert cur.unoriented() == tri.unoriented()
        programs.append(pre + [step, perm] + back)
    return programs[0], programs[1]
