"""Tests for the exact cover engine and its instance builders."""

import random

import pytest

from ptmc.cover import (
    ExactCoverInstance,
    eds_instance,
    enumerate_covers,
    grid_eds_survey,
    instance_from_json,
    instance_to_json,
    shape_orientations,
    solve,
    tiling_instance,
    verify_cover,
)
from ptmc.codes import verify_pds
from ptmc.graphs import Graph, grid_graph
from ptmc.metric import Ambient

from oracles import naive_cover_solutions


def inst(universe, tiles):
    return ExactCoverInstance(tuple(universe),
                              tuple((tid, frozenset(cells)) for tid, cells in tiles))


def test_solve_prefers_first_deterministic_branch():
    i = inst([1, 2], [("a", {1}), ("b", {2}), ("c", {1, 2})])
    out = solve(i)
    assert out.kind == "solution"
    assert out.tiles == ("a", "b")


def test_solve_infeasible_no_tiles():
    out = solve(inst([1], []))
    assert out.kind == "infeasible"


def test_solve_infeasible_overlap_forced():
    out = solve(inst([1, 2, 3], [("p", {1, 2}), ("q", {2, 3})]))
    assert out.kind == "infeasible"


def test_enumerate_singletons():
    i = inst([(0, 0), (0, 1), (1, 0), (1, 1)],
             [(f"s{k}", {c}) for k, c in enumerate([(0, 0), (0, 1), (1, 0), (1, 1)])])
    res = enumerate_covers(i)
    assert res.exhaustive
    assert len(res.solutions) == 1


def test_enumerate_two_solutions_canonical_order():
    i = inst([1, 2], [("c", {1, 2}), ("a", {1}), ("b", {2})])
    res = enumerate_covers(i)
    assert res.exhaustive
    assert res.solutions == (("a", "b"), ("c",))


def test_enumerate_limit_not_exhaustive():
    i = inst([1, 2], [("a", {1}), ("b", {2}), ("c", {1, 2})])
    res = enumerate_covers(i, limit=1)
    assert len(res.solutions) == 1
    assert not res.exhaustive


def test_timeout_is_distinct_from_infeasible():
    universe = list(range(24))
    tiles = []
    for a in range(24):
        for b in range(a + 1, 24):
            for c in range(b + 1, 24):
                tiles.append((f"t{a}.{b}.{c}", {a, b, c}))
    big = inst(universe, tiles)
    res = enumerate_covers(big, budget=0.02)
    assert not res.exhaustive
    out = solve(inst([1], []), budget=10)
    assert out.kind == "infeasible"  # fast exhaustion is not a timeout


def test_solutions_reverify():
    i = inst([1, 2, 3, 4], [("a", {1, 2}), ("b", {3, 4}), ("c", {1, 3}), ("d", {2, 4})])
    res = enumerate_covers(i)
    assert res.solutions
    for sol in res.solutions:
        assert verify_cover(i, sol)
    assert not verify_cover(i, ("a", "c"))


def test_instance_validation():
    with pytest.raises(ValueError):
        inst([1, 1], [])
    with pytest.raises(ValueError):
        inst([1], [("a", set())])
    with pytest.raises(ValueError):
        inst([1], [("a", {2})])
    with pytest.raises(ValueError):
        inst([1, 2], [("a", {1}), ("a", {2})])


def test_oracle_equivalence_random_instances():
    rng = random.Random(42)
    for trial in range(50):
        ncells = rng.randint(2, 9)
        ntiles = rng.randint(1, 14)
        universe = list(range(ncells))
        tiles = []
        for t in range(ntiles):
            size = rng.randint(1, max(1, ncells // 2))
            cells = frozenset(rng.sample(universe, size))
            tiles.append((f"t{t:02d}", cells))
        i = inst(universe, tiles)
        expected = naive_cover_solutions(universe, tiles)
        res = enumerate_covers(i)
        assert res.exhaustive
        assert list(res.solutions) == expected
        out = solve(i)
        if expected:
            assert out.kind == "solution" and tuple(sorted(out.tiles)) in expected
        else:
            assert out.kind == "infeasible"


def test_determinism_repeat_runs():
    rng = random.Random(1)
    universe = list(range(8))
    tiles = [(f"t{t}", frozenset(rng.sample(universe, rng.randint(1, 4))))
             for t in range(12)]
    i = inst(universe, tiles)
    first = enumerate_covers(i)
    second = enumerate_covers(i)
    assert first.solutions == second.solutions
    assert first.nodes == second.nodes


# ---------------------------------------------------------------------------
# EDS instances
# ---------------------------------------------------------------------------

def test_eds_triangle():
    g = Graph({0: {1, 2}, 1: {0, 2}, 2: {0, 1}})
    i = eds_instance(g)
    assert len(i.tiles) == 3
    assert all(cells == frozenset({0, 1, 2}) for _, cells in i.tiles)
    res = enumerate_covers(i)
    assert len(res.solutions) == 3


def test_eds_path_middle():
    g = Graph({0: {1}, 1: {0, 2}, 2: {1}})
    out = solve(eds_instance(g))
    assert out.kind == "solution"
    assert out.tiles == ("1",)


def test_eds_solutions_are_isolated_pds():
    g = grid_graph(4, 4)
    res = enumerate_covers(eds_instance(g))
    assert res.exhaustive and res.solutions
    for sol in res.solutions:
        verts = [eval(t) for t in sol]
        rep = verify_pds(verts, g)
        assert rep.passed and rep.independent


# ---------------------------------------------------------------------------
# tiling instances
# ---------------------------------------------------------------------------

def test_shape_orientations():
    square3 = ((0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 0))
    assert len(shape_orientations(square3)) == 3
    assert len(shape_orientations(((0, 0, 0),))) == 1
    cube4 = tuple((a, b, c, 0) for a in (0, 1) for b in (0, 1) for c in (0, 1))
    assert len(shape_orientations(cube4)) == 4


def test_tiling_instance_full_radius_singletons():
    a = Ambient.torus(3, 3)
    i, placements = tiling_instance(a, [("dot", ((0, 0),), 2)])
    assert len(i.tiles) == 9
    assert all(len(cells) == 9 for _, cells in i.tiles)
    out = solve(i)
    assert out.kind == "solution" and len(out.tiles) == 1


def test_tiling_instance_square_singleton_counts():
    a = Ambient.torus(6, 6, 3)
    square = ((0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 0))
    i, placements = tiling_instance(a, [("square", square, 1), ("dot", ((0, 0, 0),), 1)])
    squares = [t for t in i.tiles if t[0].startswith("square")]
    dots = [t for t in i.tiles if t[0].startswith("dot")]
    assert len(squares) == 108 * 3
    assert len(dots) == 108
    # squares raised into the modulus-3 axis wrap onto themselves (18 cells)
    sizes = sorted({len(cells) for _, cells in squares})
    assert sizes == [18, 20]
    assert sum(1 for _, cells in squares if len(cells) == 20) == 108
    assert all(len(cells) == 7 for _, cells in dots)


def test_tiling_rejects_degenerate_torus():
    with pytest.raises(ValueError):
        tiling_instance(Ambient.torus(2, 6), [("dot", ((0, 0),), 1)])


def test_instance_json_round_trip():
    i = inst([(0, 0), (0, 1)], [("a", {(0, 0)}), ("b", {(0, 1)}), ("c", {(0, 0), (0, 1)})])
    doc = instance_to_json(i)
    back = instance_from_json(doc)
    assert back.universe == i.universe
    assert dict(back.tiles) == dict(i.tiles)


# ---------------------------------------------------------------------------
# the grid survey, small slice (the full range runs in acceptance)
# ---------------------------------------------------------------------------

def test_grid_survey_small():
    table = grid_eds_survey(5)
    assert table[(4, 4)] == {"exists": True, "count": 2, "exhaustive": True}
    for mn, row in table.items():
        if mn != (4, 4):
            assert row == {"exists": False, "count": 0, "exhaustive": True}
