"""Mesh generators: tensor grids, random hierarchical meshes, the pinwheel.

Also holds the helpers that only make sense on generated families:
re-embedding a mesh with perturbed line positions, and deciding whether a
mesh can be produced hierarchically.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from .errors import ParamOutOfRange
from .mesh import TMesh, build_from_faces, refine_face

MAX_GRID = 16
MAX_DEPTH = 6


def tensor_grid(kx: int, ky: int, xs=None, ys=None) -> TMesh:
    """``kx`` by ``ky`` grid of faces; unit spacing unless breakpoints are given."""
    if not (1 <= kx <= MAX_GRID and 1 <= ky <= MAX_GRID):
        raise ParamOutOfRange(f"grid size must be in 1..{MAX_GRID}, got {kx}x{ky}")
    xs = [Fraction(i) for i in range(kx + 1)] if xs is None else [Fraction(x) for x in xs]
    ys = [Fraction(j) for j in range(ky + 1)] if ys is None else [Fraction(y) for y in ys]
    if len(xs) != kx + 1 or len(ys) != ky + 1:
        raise ValueError("breakpoint count does not match the grid size")
    rects = [(xs[i], ys[j], xs[i + 1], ys[j + 1]) for i in range(kx) for j in range(ky)]
    return build_from_faces(rects)


def hierarchical_mesh(seed: int, depth: int, base=(1, 1)) -> TMesh:
    """Refine ``depth`` randomly chosen faces (at their centres), starting from a grid.

    Each refinement adds three faces, so a 1x1 base gives ``1 + 3 * depth`` faces.
    """
    if not (0 <= depth <= MAX_DEPTH):
        raise ParamOutOfRange(f"depth must be in 0..{MAX_DEPTH}, got {depth}")
    rng = random.Random(seed)
    mesh = tensor_grid(*base)
    for _ in range(depth):
        mesh = refine_face(mesh, rng.randrange(mesh.n2))
    return mesh


PINWHEEL_FACES = (
    (0, 0, 2, 1),  # bottom arm, ends against the right arm
    (2, 0, 3, 2),  # right arm, ends against the top arm
    (1, 2, 3, 3),  # top arm, ends against the left arm
    (0, 1, 1, 3),  # left arm, ends against the bottom arm
    (1, 1, 2, 2),  # centre
)


def cyclic_mesh(refinements: int = 0, seed: int | None = None) -> TMesh:
    """The 3x3 pinwheel: four boundary arms, each ending in a T on the next one.

    No vertex is a cross of four face corners, so no refinement can be
    undone and the mesh is not hierarchical.  Optional random refinements
    add detail without changing that.
    """
    if not (0 <= refinements <= MAX_DEPTH):
        raise ParamOutOfRange(f"refinements must be in 0..{MAX_DEPTH}")
    mesh = build_from_faces(PINWHEEL_FACES)
    rng = random.Random(seed)
    for _ in range(refinements):
        mesh = refine_face(mesh, rng.randrange(mesh.n2))
    return mesh


def reembed(mesh: TMesh, rng: random.Random, denominator: int = 97) -> TMesh:
    """Move every interior line to a random position, keeping the order of lines.

    The outermost x and y coordinates stay put; the combinatorics (and so
    all edge/vertex/face ids) are unchanged.
    """

    def remap(values):
        values = sorted(values)
        lo, hi = values[0], values[-1]
        n = len(values) - 1
        if n < 2:
            return {v: v for v in values}
        # strictly increasing random cut points in (lo, hi)
        cuts = sorted(rng.sample(range(1, n * denominator), n - 1))
        step = (hi - lo) / (n * denominator)
        new = [lo] + [lo + c * step for c in cuts] + [hi]
        return dict(zip(values, new))

    xmap = remap({v.x for v in mesh.vertices})
    ymap = remap({v.y for v in mesh.vertices})
    rects = [(xmap[f.xmin], ymap[f.ymin], xmap[f.xmax], ymap[f.ymax]) for f in mesh.faces]
    return build_from_faces(rects)


def _is_tensor(rects) -> bool:
    xs = sorted({c for r in rects for c in (r[0], r[2])})
    ys = sorted({c for r in rects for c in (r[1], r[3])})
    if len(rects) != (len(xs) - 1) * (len(ys) - 1):
        return False
    want = {(xs[i], ys[j], xs[i + 1], ys[j + 1])
            for i in range(len(xs) - 1) for j in range(len(ys) - 1)}
    return want == set(rects)


def removable_crosses(rects) -> list[tuple]:
    """Quadruples of faces that form a cross-split of a single rectangle."""
    by_corner = {}
    for r in rects:
        by_corner[(r[0], r[1])] = r
    out = []
    for r in rects:
        # r is the lower-left quadrant, centre at its upper-right corner
        cx, cy = r[2], r[3]
        lr = by_corner.get((cx, r[1]))
        ul = by_corner.get((r[0], cy))
        ur = by_corner.get((cx, cy))
        if not (lr and ul and ur):
            continue
        if lr[3] == cy and ul[2] == cx and ur[2] == lr[2] and ur[3] == ul[3]:
            out.append((r, lr, ul, ur))
    return out


def is_hierarchical(mesh: TMesh) -> bool:
    """Can ``mesh`` be produced from a tensor grid by successive cross-splits?

    Searches over orders of undoing cross-splits, memoised on the face set.
    """
    return _hierarchical(frozenset(mesh.face_rects()))


@lru_cache(maxsize=4096)
def _hierarchical(rects: frozenset) -> bool:
    if _is_tensor(rects):
        return True
    for quad in removable_crosses(rects):
        merged = (quad[0][0], quad[0][1], quad[3][2], quad[3][3])
        if _hierarchical((rects - set(quad)) | {merged}):
            return True
    return False
