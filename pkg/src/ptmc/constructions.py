"""Constructive generators for perfect truncated-metric codes.

Two families ship here:

  * an explicit lattice construction placing an n-box of per-axis extent
    c_i - 1 inside each cell of the lattice generated by (1 + c_i) e_i;
    every vertex of the torus then falls in exactly one radius-n ball and
    distinct components sit at l1 distance exactly 3;

  * template-driven searches for the mixed two-shape codes (a square plus
    singletons in dimension 3, and their (n-1)-cube generalization), whose
    shapes, radii, multiplicities and minimal tori fully determine a finite
    exact cover problem. The search is pinned so that the tile covering the
    origin is anchored there, which breaks translation symmetry without
    losing solutions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from .codes import CodeSet, KappaAssignment, components_of
from .cover import shape_orientations, solve, tiling_instance
from .metric import Ambient, Point, ball_size_formula, truncated_ball


@dataclass(frozen=True)
class LatticeBasis:
    """Generator vectors of the anchor lattice, plus the anchor itself."""

    generators: tuple[Point, ...]
    anchor: Point

    def determinant(self) -> int:
        return _int_det([list(g) for g in self.generators])


def _int_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * _int_det(minor)
    return total


@dataclass(frozen=True)
class TemplateShape:
    name: str
    vertices: tuple[Point, ...]
    radius: int
    multiplicity: int


@dataclass(frozen=True)
class TemplateSpec:
    """Shapes with radii and per-fundamental-region multiplicities."""

    shapes: tuple[TemplateShape, ...]
    torus: Ambient
    fr_volume: int

    def __post_init__(self) -> None:
        vol = sum(s.multiplicity * shape_ball_volume(s.vertices, s.radius)
                  for s in self.shapes)
        if vol != self.fr_volume:
            raise ValueError(f"FR volume {self.fr_volume} != shape total {vol}")
        if self.torus.vertex_count() % self.fr_volume != 0:
            raise ValueError("FR volume does not divide the torus size")

    @property
    def fr_count(self) -> int:
        return self.torus.vertex_count() // self.fr_volume


def shape_ball_volume(shape: tuple[Point, ...], radius: int) -> int:
    """Truncated ball cardinality of a shape, on an unclipped window."""
    n = len(shape[0])
    lo = min(min(p) for p in shape) - 1
    hi = max(max(p) for p in shape) + 1
    win = Ambient.window(*(((lo, hi),) * n))
    return len(truncated_ball(tuple(shape), radius, win))


# ---------------------------------------------------------------------------
# box codes: one n-box per lattice cell, radius n
# ---------------------------------------------------------------------------

def box_code_lattice(c: tuple[int, ...]) -> LatticeBasis:
    """Anchor lattice of the box construction: generators (1 + c_i) e_i.

    The anchor of each radius-n sphere is its minimal-coordinate-sum
    vertex; anchors of all spheres form this lattice, with the origin
    anchoring the sphere whose box sits at offset 1 per axis.
    """
    n = len(c)
    if any(ci < 2 for ci in c):
        raise ValueError("box construction needs c_i >= 2")
    gens = tuple(tuple((1 + c[i]) if j == i else 0 for j in range(n)) for i in range(n))
    return LatticeBasis(gens, (0,) * n)


def build_box_code(c: tuple[int, ...], k: tuple[int, ...]) -> tuple[CodeSet, KappaAssignment]:
    """Lattice code of n-boxes with uniform radius n on its minimal torus.

    Places the box with per-axis extents c_i - 1 at offset 1 inside each
    cell of the lattice generated by (1 + c_i) e_i, projected to the torus
    with moduli (1 + c_i) k_i. The radius-n balls are then the full cells,
    so they partition the torus by construction; callers still verify.
    """
    n = len(c)
    if len(k) != n:
        raise ValueError("c and k must have equal length")
    if any(ci < 2 for ci in c):
        raise ValueError("box construction needs c_i >= 2")
    if any(ki < 1 for ki in k):
        raise ValueError("cell multipliers k_i must be >= 1")
    torus = Ambient.torus(*((1 + ci) * ki for ci, ki in zip(c, k)))
    cells = product(*(range(ki) for ki in k))
    verts: list[Point] = []
    for cell in cells:
        base = tuple(j * (1 + ci) for j, ci in zip(cell, c))
        for off in product(*(range(1, ci) for ci in c)):
            verts.append(tuple(b + o for b, o in zip(base, off)))
    return CodeSet(torus, tuple(verts)), KappaAssignment.uniform(n)


def min_component_separation(code: CodeSet) -> int:
    """Minimum l1 distance between distinct components, on the lifted grid.

    The toroidal code is unrolled over a 3x3x...x3 block of torus copies so
    that wrap-around neighbors (including the code's own lattice copies
    when the torus holds a single component) are measured in Z^n, matching
    the separation claim of the box construction.
    """
    a = code.ambient
    if not a.is_torus:
        raise ValueError("separation is measured on toroidal codes")
    n = a.dimension
    lifted = set()
    for v in code.vertices:
        for z in product((0, 1, 2), repeat=n):
            lifted.add(tuple(x + zi * m for x, zi, m in zip(v, z, a.moduli)))
    window = Ambient.window(*((0, 3 * m - 1) for m in a.moduli))
    comps = components_of(CodeSet(window, tuple(lifted)))
    center = tuple(x + m for x, m in zip(code.vertices[0], a.moduli))
    home = next(c for c in comps if center in c.vertices)
    home_set = set(home.vertices)
    reach = max(a.moduli)  # anything farther cannot be the minimum
    best = None
    for v in lifted - home_set:
        for u in home.vertices:
            d = sum(abs(x - y) for x, y in zip(u, v))
            if d <= reach and (best is None or d < best):
                best = d
    if best is None:
        raise ValueError("no second component within reach")
    return best


# ---------------------------------------------------------------------------
# two-shape templates
# ---------------------------------------------------------------------------

def square_singleton_template() -> TemplateSpec:
    """Radius-1 code of unit squares and singletons in dimension 3.

    Two squares (ball 20) and two singletons (ball 7) per fundamental
    region of volume 54, on the minimal torus (6, 6, 3).
    """
    square = ((0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 0))
    shapes = (TemplateShape("square", square, 1, 2),
              TemplateShape("singleton", ((0, 0, 0),), 1, 2))
    return TemplateSpec(shapes, Ambient.torus(6, 6, 3), 54)


def cube_singleton_template(n: int) -> TemplateSpec:
    """(n-1)-cubes of radius 1 plus singletons of radius n-2, two of each.

    Coincides with the square template at n = 3. The torus is (6, ..., 6, 3)
    and the fundamental region volume is 2 * |ball(cube, 1)| plus
    2 * |ball(vertex, n-2)|.
    """
    if n < 3:
        raise ValueError("cube template needs dimension >= 3")
    cube = tuple(sorted(p + (0,) for p in product((0, 1), repeat=n - 1)))
    cube_ball = shape_ball_volume(cube, 1)
    fr = 2 * cube_ball + 2 * ball_size_formula(n, n - 2)
    torus = Ambient.torus(*((6,) * (n - 1) + (3,)))
    shapes = (TemplateShape("cube", cube, 1, 2),
              TemplateShape("singleton", ((0,) * n,), n - 2, 2))
    return TemplateSpec(shapes, torus, fr)


@dataclass(frozen=True)
class TemplateBuild:
    """Outcome of a template search: solution, proven infeasible, or timeout."""

    kind: str  # solution | infeasible | timeout
    code: CodeSet | None = None
    kappa: KappaAssignment | None = None
    tiles: tuple[str, ...] | None = None
    nodes: int = 0


def build_by_template(template: TemplateSpec, budget: float | None = None,
                      seed: int | None = None) -> TemplateBuild:
    """Search for a code realizing a template by exact cover of its torus.

    Tiles are the truncated balls of every oriented, translated shape copy.
    Placements whose ball wraps onto itself (span exceeding a modulus) are
    dropped: the wrap always creates a vertex with two nearest center
    vertices, so no verified code can use them. Symmetry is broken by
    pinning: every solution has a translate in which the tile covering the
    origin is anchored at the origin, so tiles that cover the origin from
    elsewhere are dropped too. With a seed, the candidate order is shuffled
    deterministically to reach different solutions; without one, tiles stay
    in lexicographic order.
    """
    inst, placements = tiling_instance(
        template.torus,
        [(s.name, s.vertices, s.radius) for s in template.shapes])
    n = template.torus.dimension
    origin = (0,) * n
    full_volume = {}
    for s in template.shapes:
        for oi, orient in enumerate(shape_orientations(s.vertices)):
            full_volume[f"{s.name}:{oi}"] = shape_ball_volume(orient, s.radius)
    tiles = [t for t in inst.tiles
             if len(t[1]) == full_volume[t[0].split("@")[0]]
             and (origin not in t[1] or placements[t[0]][3] == origin)]
    if seed is not None:
        rng = random.Random(seed)
        rng.shuffle(tiles)
    pinned = type(inst)(inst.universe, tuple(tiles))
    outcome = solve(pinned, budget=budget)
    if outcome.kind != "solution":
        return TemplateBuild(outcome.kind, nodes=outcome.nodes)
    verts: list[Point] = []
    radii: dict[tuple[Point, ...], int] = {}
    for tid in outcome.tiles:
        _, radius, placed, _ = placements[tid]
        verts.extend(placed)
    code = CodeSet(template.torus, tuple(verts))
    placed_sets = {frozenset(placements[t][2]): placements[t][1] for t in outcome.tiles}
    for comp in components_of(code):
        radii[comp.class_key] = placed_sets[frozenset(comp.vertices)]
    return TemplateBuild("solution", code, KappaAssignment(by_class=radii),
                         outcome.tiles, outcome.nodes)


# ---------------------------------------------------------------------------
# template serialization
# ---------------------------------------------------------------------------

def template_to_json(t: TemplateSpec) -> dict:
    return {
        "ambient": {"kind": "torus", "moduli": list(t.torus.moduli)},
        "template": {
            "shapes": [{"name": s.name,
                        "vertices": [list(v) for v in s.vertices],
                        "radius": s.radius,
                        "multiplicity": s.multiplicity} for s in t.shapes],
            "fr_volume": t.fr_volume,
        },
    }


def template_from_json(doc: dict) -> TemplateSpec:
    amb = doc["ambient"]
    shapes = tuple(
        TemplateShape(s["name"],
                      tuple(tuple(v) for v in s["vertices"]),
                      int(s["radius"]), int(s["multiplicity"]))
        for s in doc["template"]["shapes"])
    return TemplateSpec(shapes, Ambient.torus(*amb["moduli"]),
                        int(doc["template"]["fr_volume"]))
