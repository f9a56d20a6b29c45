"""Code sets over grids and tori: components, translation classes, verifiers.

A code is a vertex subset S of a finite ambient. Its connected components
(under unit-step adjacency, wrapped on tori) are the truncated centers; a
radius assignment maps each translation class of components to a radius.
The main verifier checks that the truncated balls of the components
partition the ambient and that every vertex has a unique nearest code
vertex inside the component whose ball covers it.

Verification of "infinite grid" claims happens exclusively on tori: a
periodic code projects onto a toroidal quotient without boundary effects,
so a toroidal pass is exact. Windows are supported for enumeration and
debugging only; the verifier reports them as degenerate.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable

from .graphs import Graph
from .metric import Ambient, Point, truncated_ball, truncated_distance

ClassKey = tuple[Point, ...]


class MissingRadiusError(KeyError):
    """A component's translation class has no radius assigned."""


class ComponentWrapsTorus(ValueError):
    """A component spans a full torus axis; its box hull is undefined."""


@dataclass(frozen=True)
class CodeSet:
    """A duplicate-free vertex subset of one ambient, kept sorted."""

    ambient: Ambient
    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        vs = tuple(sorted(set(self.vertices)))
        object.__setattr__(self, "vertices", vs)
        for v in vs:
            if not self.ambient.contains(v):
                raise ValueError(f"vertex {v} outside ambient")

    def __len__(self) -> int:
        return len(self.vertices)

    def translate(self, z: Point) -> "CodeSet":
        return CodeSet(self.ambient, tuple(self.ambient.translate(v, z) for v in self.vertices))


@dataclass(frozen=True)
class Component:
    """A maximal connected piece of a code, with its translation-class key.

    class_key is the component lifted to Z^n (unrolling torus wrap-around),
    translated so the coordinate-wise minimum is the origin, and sorted.
    Translates of a component share the key; differently oriented copies do
    not (translation classes, not isomorphism classes). A component that
    wraps an axis gets a translation-invariant fallback key and is flagged.
    """

    vertices: tuple[Point, ...]
    class_key: ClassKey
    wrapped: bool = False

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def min_vertex(self) -> Point:
        return self.vertices[0]


@dataclass(frozen=True)
class KappaAssignment:
    """Radius per translation class, optionally uniform."""

    by_class: dict = field(default_factory=dict)
    uniform_radius: int | None = None

    @classmethod
    def uniform(cls, t: int) -> "KappaAssignment":
        return cls(by_class={}, uniform_radius=int(t))

    def radius_for(self, key: ClassKey) -> int:
        if key in self.by_class:
            return self.by_class[key]
        if self.uniform_radius is not None:
            return self.uniform_radius
        raise MissingRadiusError(f"no radius for class {key}")


@dataclass(frozen=True)
class TruncatedSphere:
    """A component together with its radius and truncated ball."""

    center: Component
    radius: int
    ball: tuple[Point, ...]


@dataclass(frozen=True)
class BoxSpec:
    """Per-axis vertex extents of a full integer box component."""

    extents: tuple[int, ...]

    @property
    def r(self) -> int:
        """Number of axes with more than one vertex (the box dimension)."""
        return sum(1 for e in self.extents if e > 1)

    def volume(self) -> int:
        n = 1
        for e in self.extents:
            n *= e
        return n


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of a verifier, with a recheckable witness on failure.

    kind on failure is one of: overlap, gap, nonunique-nearest, bad-radius,
    degenerate-ambient. Witnesses are the lexicographically smallest
    offending vertices.
    """

    passed: bool
    kind: str | None = None
    witness: tuple = ()
    detail: str = ""
    independent: bool | None = None

    def __bool__(self) -> bool:
        return self.passed


def _fail(kind: str, witness: tuple = (), detail: str = "") -> VerifyReport:
    return VerifyReport(passed=False, kind=kind, witness=witness, detail=detail)


# ---------------------------------------------------------------------------
# components and translation classes
# ---------------------------------------------------------------------------

def components_of(code: CodeSet) -> list[Component]:
    """Partition a code into maximal connected pieces, sorted by min vertex.

    Adjacency is one unit step in exactly one axis, wrapped on tori. Each
    component is lifted to Z^n by BFS to compute its class key; a lift
    conflict means the component wraps an axis.
    """
    a = code.ambient
    n = a.dimension
    member = set(code.vertices)
    seen: set[Point] = set()
    comps: list[Component] = []
    for root in code.vertices:
        if root in seen:
            continue
        lift: dict[Point, Point] = {root: (0,) * n}
        queue = [root]
        seen.add(root)
        wrapped = False
        while queue:
            v = queue.pop()
            lv = lift[v]
            for i in range(n):
                for step in (1, -1):
                    w = list(v)
                    w[i] += step
                    u = a.wrap(tuple(w)) if a.is_torus else tuple(w)
                    if u not in member:
                        continue
                    lu = tuple(x + (step if j == i else 0) for j, x in enumerate(lv))
                    if u in lift:
                        if lift[u] != lu:
                            wrapped = True
                        continue
                    lift[u] = lu
                    seen.add(u)
                    queue.append(u)
        verts = tuple(sorted(lift))
        comps.append(Component(verts, _class_key(verts, lift, wrapped, a), wrapped))
    return sorted(comps, key=lambda c: c.min_vertex)


def _class_key(verts: tuple[Point, ...], lift: dict[Point, Point], wrapped: bool, a: Ambient) -> ClassKey:
    if not wrapped:
        pts = list(lift.values())
        mins = tuple(min(p[i] for p in pts) for i in range(len(pts[0])))
        return tuple(sorted(tuple(x - m for x, m in zip(p, mins)) for p in pts))
    # wrapped fallback: least translate that moves some vertex to the origin
    best = None
    for v in verts:
        shifted = tuple(sorted(a.wrap(tuple(x - y for x, y in zip(u, v))) for u in verts))
        if best is None or shifted < best:
            best = shifted
    return best


def class_census(code: CodeSet) -> dict[ClassKey, int]:
    """Count components per translation class."""
    return dict(Counter(c.class_key for c in components_of(code)))


def box_hull_check(comp: Component) -> BoxSpec | None:
    """BoxSpec iff the component fills the integer box spanned by its lift.

    Returns None for non-box components. Components wrapping a torus axis
    are rejected outright: their hull is not defined.
    """
    if comp.wrapped:
        raise ComponentWrapsTorus(f"component at {comp.min_vertex} wraps a torus axis")
    pts = comp.class_key  # already min-corner normalized
    n = len(pts[0])
    extents = tuple(max(p[i] for p in pts) + 1 for i in range(n))
    vol = 1
    for e in extents:
        vol *= e
    if vol != len(pts):
        return None
    return BoxSpec(extents)


# ---------------------------------------------------------------------------
# PTMC verifiers
# ---------------------------------------------------------------------------

def spheres_of(code: CodeSet, kappa: KappaAssignment) -> list[TruncatedSphere]:
    """The truncated spheres of a code under a radius assignment."""
    out = []
    for comp in components_of(code):
        t = kappa.radius_for(comp.class_key)
        out.append(TruncatedSphere(comp, t, truncated_ball(comp.vertices, t, code.ambient)))
    return out


def verify_kappa_ptmc(code: CodeSet, kappa: KappaAssignment) -> VerifyReport:
    """Check that a code is a perfect truncated-metric code.

    Pass requires, over the toroidal ambient:
      1. the truncated balls of the components are pairwise disjoint and
         cover every vertex;
      2. every vertex has a unique nearest code vertex within the component
         whose ball covers it.
    For a uniform radius, condition 2 combined with the partition is
    equivalent to a globally unique nearest code vertex: a cross-component
    tie at distance <= t would put the vertex in two balls. With differing
    radii the per-component reading is the one under which the two-radius
    constructions are perfect, so that is what is checked.

    Failures report the lexicographically smallest witness vertex. Tori
    with any modulus < 3 (and windows) are refused as degenerate: truncated
    balls would self-overlap or be clipped.
    """
    a = code.ambient
    if a.degenerate:
        return _fail("degenerate-ambient", (),
                     "PTMC verification needs a torus with all moduli >= 3")
    n = a.dimension
    spheres = spheres_of(code, kappa)
    for sp in spheres:
        if not 1 <= sp.radius <= n:
            return _fail("bad-radius", (sp.center.min_vertex,),
                         f"radius {sp.radius} outside [1, {n}]")
    owners: dict[Point, int] = {}
    overlap_w = None
    for i, sp in enumerate(spheres):
        for v in sp.ball:
            if v in owners:
                if overlap_w is None or v < overlap_w:
                    overlap_w = v
            else:
                owners[v] = i
    if overlap_w is not None:
        return _fail("overlap", (overlap_w,), "vertex covered by two truncated spheres")
    if len(owners) != a.vertex_count():
        for v in a.vertices():
            if v not in owners:
                return _fail("gap", (v,), "vertex covered by no truncated sphere")
    for sp in spheres:
        for v in sp.ball:
            dists = [truncated_distance(v, s, a) for s in sp.center.vertices]
            d = min(dists)
            if dists.count(d) > 1:
                return _fail("nonunique-nearest", (v,),
                             f"two vertices of the center at distance {d}")
    return VerifyReport(passed=True)


def verify_t_ptmc(code: CodeSet, t: int) -> VerifyReport:
    """verify_kappa_ptmc with one radius for every class."""
    return verify_kappa_ptmc(code, KappaAssignment.uniform(t))


def verify_pds(s: Iterable, g: Graph) -> VerifyReport:
    """Perfect dominating set check on an arbitrary finite graph.

    Pass iff every vertex outside S is adjacent to exactly one vertex of S.
    The report's `independent` flag states whether S induces no edges
    (an isolated PDS, also known as an efficient dominating set).
    """
    sset = set(s)
    for v in sset:
        if v not in g:
            raise ValueError(f"code vertex {v!r} not in graph")
    witness = None
    kind = None
    for v in sorted(g.vertices):
        if v in sset:
            continue
        k = len(g.neighbors(v) & sset)
        if k != 1 and (witness is None or v < witness):
            witness = v
            kind = "gap" if k == 0 else "overlap"
    independent = all(not (g.neighbors(v) & sset) for v in sset)
    if witness is not None:
        return VerifyReport(False, kind, (witness,),
                            "vertex dominated zero or several times", independent)
    return VerifyReport(True, independent=independent)


def verify_non_isolated_pds(s: Iterable, g: Graph) -> VerifyReport:
    """Relaxed domination for edge-disjoint unions of triangles.

    Pass iff every vertex outside S is adjacent either to exactly one
    vertex of S, or to exactly two vertices of S joined by an edge.
    """
    sset = set(s)
    for v in sorted(g.vertices):
        if v in sset:
            continue
        nbrs = sorted(g.neighbors(v) & sset)
        if len(nbrs) == 1:
            continue
        if len(nbrs) == 2 and g.has_edge(nbrs[0], nbrs[1]):
            continue
        return VerifyReport(False, "gap" if not nbrs else "overlap", (v,),
                            "vertex not dominated by one vertex or one edge of S")
    return VerifyReport(True)


# ---------------------------------------------------------------------------
# torus inflation
# ---------------------------------------------------------------------------

def inflate_code(code: CodeSet, multipliers: tuple[int, ...]) -> CodeSet:
    """Pull a toroidal code back through the projection that divides moduli.

    The target torus has moduli m_i * k_i; the result is the full preimage
    of the code, with component count multiplied by the product of the k_i.
    Verification verdicts are expected to transfer but are never assumed:
    callers re-verify.
    """
    a = code.ambient
    if not a.is_torus:
        raise ValueError("inflation is defined for toroidal codes")
    if len(multipliers) != a.dimension or any(k < 1 for k in multipliers):
        raise ValueError("need one multiplier >= 1 per axis")
    big = Ambient.torus(*(m * k for m, k in zip(a.moduli, multipliers)))
    verts = []
    for v in code.vertices:
        for js in product(*(range(k) for k in multipliers)):
            verts.append(tuple(x + j * m for x, j, m in zip(v, js, a.moduli)))
    return CodeSet(big, tuple(verts))


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

def class_key_hash(key: ClassKey) -> str:
    """Stable 12-hex-digit identifier of a translation class."""
    blob = json.dumps([list(p) for p in key], separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def code_to_json(code: CodeSet, kappa: KappaAssignment | None = None) -> dict:
    """Canonical JSON document for a code set; diff-stable ordering."""
    a = code.ambient
    ambient = {"kind": a.kind}
    if a.is_torus:
        ambient["moduli"] = list(a.moduli)
    else:
        ambient["bounds"] = [list(b) for b in a.bounds]
    doc = {"ambient": ambient, "vertices": [list(v) for v in code.vertices]}
    if kappa is not None:
        radii = {}
        for comp in components_of(code):
            radii[class_key_hash(comp.class_key)] = kappa.radius_for(comp.class_key)
        doc["kappa"] = {h: radii[h] for h in sorted(radii)}
    return doc


def code_from_json(doc: dict) -> tuple[CodeSet, KappaAssignment | None]:
    amb = doc["ambient"]
    if amb["kind"] == "torus":
        a = Ambient.torus(*amb["moduli"])
    else:
        a = Ambient.window(*(tuple(b) for b in amb["bounds"]))
    code = CodeSet(a, tuple(tuple(v) for v in doc["vertices"]))
    if "kappa" not in doc:
        return code, None
    by_hash = dict(doc["kappa"])
    by_class = {}
    for comp in components_of(code):
        h = class_key_hash(comp.class_key)
        if h not in by_hash:
            raise MissingRadiusError(f"kappa entry {h} missing for class of {comp.min_vertex}")
        by_class[comp.class_key] = int(by_hash[h])
    return code, KappaAssignment(by_class=by_class)
