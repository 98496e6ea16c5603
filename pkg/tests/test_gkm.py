"""Moment graphs, localized classes, residue verification."""

import pytest

from gkmslice.gkm import (
    build_flag_rank1_graph,
    build_gkm_graph,
    class_from_json,
    class_to_json,
    flag_constant_class,
    flag_rank1_classes,
    graph_to_dot,
    graph_to_json,
    perturb_numerator,
    perturb_with_unit_pole,
    residue_antisymmetry_check,
    sl2_classes,
    specialize_t0,
    verify_residue_conditions,
)
from gkmslice.rings import MultiPoly, ring
from gkmslice.rootdata import root_datum


def test_sl2_graph_shape_and_weights():
    rd = root_datum("SL2")
    g = build_gkm_graph(rd, 1, [(-2, 2)])
    assert len(g.vertices) == 5
    assert len(g.edges) == 4
    weights = {(a[0], b[0]): str(w) for a, b, w in g.edges}
    assert weights[(1, 0)] == "t + y"
    assert weights[(0, -1)] == "-t + y"


def test_sl2_graph_d2_adds_long_edges():
    rd = root_datum("SL2")
    g = build_gkm_graph(rd, 2, [(-2, 2)])
    # k = 1 edges: 4; k = 2 edges: 3
    assert len(g.edges) == 7
    pairs = {(a[0], b[0]) for a, b, w in g.edges}
    assert (2, 0) in pairs and (1, -1) in pairs


def test_gl2_edge_weight_uses_root_form():
    rd = root_datum("GL2")
    g = build_gkm_graph(rd, 1, [(0, 1), (0, 1)])
    assert len(g.edges) == 1
    (a, b, w) = g.edges[0]
    assert {a, b} == {(1, 0), (0, 1)}
    y1, y2 = MultiPoly.gen(w.ring, "y1"), MultiPoly.gen(w.ring, "y2")
    assert w == y1 - y2


@pytest.mark.parametrize("d,k", [(1, 0), (2, -1), (3, 2)])
def test_sl2_classes_verify(d, k):
    rd = root_datum("SL2")
    graph = build_gkm_graph(rd, d, [(-9, 9)])
    report = verify_residue_conditions(graph, sl2_classes(d, k))
    assert report.ok, report.failures


def test_perturbed_class_fails():
    rd = root_datum("SL2")
    graph = build_gkm_graph(rd, 2, [(-8, 8)])
    cls = sl2_classes(2, 0)
    vertex = next(iter(cls))
    bad = perturb_numerator(cls, vertex)
    report = verify_residue_conditions(graph, bad)
    assert not report.ok
    assert any(f["kind"] == "residue-sum-nonzero" for f in report.failures)


def test_residue_antisymmetry():
    ok, res_j, res_jp = residue_antisymmetry_check(3, 1, 0, 2)
    assert ok
    assert (res_j + res_jp).num.is_zero()


def test_specialize_t0_closed_form():
    d, k = 2, -1
    got = specialize_t0(sl2_classes(d, k))
    rg = got.ring
    x = MultiPoly.gen(rg, "x")
    one = MultiPoly.one(rg)
    expected = MultiPoly.monomial(rg, (k, -d)) * (one - x) ** d
    assert got == expected


def test_flag_classes_verify_and_unit_pole_perturbation_fails():
    graph = build_flag_rank1_graph((-4, 4))
    for kind, k in (("pair", 0), ("pair", -2), ("step", 1), ("step", -1)):
        cls = flag_rank1_classes(kind, k)
        assert verify_residue_conditions(graph, cls).ok, (kind, k)
    const = flag_constant_class(graph)
    assert verify_residue_conditions(graph, const).ok
    rg = graph.ring
    y = MultiPoly.gen(rg, "y")
    vertex = (0, "e")
    bad = perturb_with_unit_pole(const, vertex, y)
    assert not verify_residue_conditions(graph, bad).ok


def test_class_json_round_trip():
    cls = sl2_classes(2, 1)
    rg = next(iter(cls.values())).num.ring
    obj = class_to_json(cls)
    back = class_from_json(obj, rg)
    assert set(back) == set(cls)
    for v in cls:
        assert back[v].num == cls[v].num
        assert back[v].den == cls[v].den


def test_flag_class_json_round_trip():
    graph = build_flag_rank1_graph((-2, 2))
    cls = flag_rank1_classes("pair", 1)
    obj = class_to_json(cls)
    back = class_from_json(obj, graph.ring)
    assert set(back) == set(cls)
    assert verify_residue_conditions(graph, back).ok


def test_graph_serialization():
    rd = root_datum("SL2")
    g = build_gkm_graph(rd, 1, [(-1, 1)])
    obj = graph_to_json(g)
    assert obj["vertices"] == ["-1", "0", "1"]
    assert len(obj["edges"]) == 2
    dot = graph_to_dot(g)
    assert dot.startswith("graph moment {")
    assert '"1" -- "0"' in dot


def test_flag_graph_edge_weights():
    g = build_flag_rank1_graph((0, 2))
    weights = {}
    for a, b, w in g.edges:
        weights[(a, b)] = str(w)
    # same-level edge at k: y + 2kt; cross edge (k+1,e)-(k,s): y + (2k+1)t
    assert weights[((0, "e"), (0, "s"))] == "y"
    assert weights[((1, "e"), (1, "s"))] == "2*t + y"
    assert weights[((1, "e"), (0, "s"))] == "t + y"
