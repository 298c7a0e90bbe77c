from __future__ import annotations

import json
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acmeslice import (
    ArchDescription,
    CriterionError,
    GraphSlice,
    IfaceKind,
    InterfaceRef,
    Property,
    build_sadg,
    emit_text,
    parse,
    project_slice,
    resolve_criterion,
    slice_architecture,
    slice_graph,
    validate,
)
from acmeslice.slicer import reachable
from conftest import GOLDEN, LAS_CRITERION
from corpus import closure_oracle, random_description


def port(owner, name):
    return InterfaceRef(owner, name, IfaceKind.PORT)


def labels(vertices):
    return {v.label for v in vertices}


class TestResolveCriterion:
    def test_las_criterion(self, las):
        c = resolve_criterion(las, *LAS_CRITERION)
        assert c.element == "resource_mgr"
        assert c.kind is IfaceKind.PORT
        assert labels(c.seed) == {
            "resource_mgr.incident_info_request",
            "resource_mgr.receive_incident_info",
        }

    def test_connector_criterion(self, las):
        c = resolve_criterion(las, "call_info_channel", ["from"])
        assert c.seed == {InterfaceRef("call_info_channel", "from", IfaceKind.ROLE)}

    @pytest.mark.parametrize(
        "element, ifaces, culprit",
        [
            ("resource_mgr", ["no_such_port"], "no_such_port"),
            ("nobody", ["x"], "nobody"),
            ("resource_mgr", ["map_request", "bogus", "worse"], "bogus"),
            ("call_info_channel", ["send_call_msg"], "send_call_msg"),
            ("resource_mgr", [], "names no interfaces"),
        ],
    )
    def test_bad_criterion(self, las, element, ifaces, culprit):
        with pytest.raises(CriterionError) as info:
            resolve_criterion(las, element, ifaces)
        [diag] = info.value.diagnostics
        assert diag.code == "bad-criterion" and culprit in diag.message


CHAIN = """System s = {
    Component x = {
        Port a; Port b; Port c; Port d;
        Properties { flow = "b -> a"; flow2 = "c -> b"; }
    }
}"""


class TestSliceGraph:
    def test_reflexive_base_case(self):
        desc = parse(CHAIN)
        g = build_sadg(desc)
        s = slice_graph(g, resolve_criterion(desc, "x", ["d"]))
        assert s.vertices == s.seed == {port("x", "d")}
        assert s.arcs == frozenset()

    def test_chain_is_transitive(self):
        # stored arcs a -> b -> c
        desc = parse(CHAIN)
        g = build_sadg(desc)
        s = slice_graph(g, resolve_criterion(desc, "x", ["a"]))
        assert labels(s.vertices) == {"x.a", "x.b", "x.c"}
        assert len(s.arcs) == 2
        forward = slice_graph(g, resolve_criterion(desc, "x", ["c"]), "forward")
        assert labels(forward.vertices) == {"x.a", "x.b", "x.c"}

    def test_las_backward_matches_golden(self, las):
        golden = json.loads((GOLDEN / "las_slice_graph.json").read_text())
        s = slice_graph(build_sadg(las), resolve_criterion(las, *LAS_CRITERION))
        assert labels(s.seed) == set(golden["seed"])
        assert labels(s.vertices) == set(golden["vertices"])
        assert Counter((a.source.label, a.target.label, a.kind.value) for a in s.arcs) == Counter(
            tuple(a) for a in golden["arcs"]
        )
        owners = {v.owner for v in s.vertices}
        assert owners == {
            "resource_mgr",
            "incident_mgr",
            "call_entry",
            "call_info_channel",
            "incident_update_channel",
            "incident_info_request_rpc",
        }

    def test_las_forward(self, las):
        s = slice_graph(build_sadg(las), resolve_criterion(las, "call_entry", ["send_call_msg"]), "forward")
        # a new call reaches everything downstream, including the dispatcher and map server
        assert {"dispatcher.receive_dispatch_request", "map_server.map_request2"} <= labels(s.vertices)

    def test_bad_direction(self, las):
        with pytest.raises(ValueError):
            slice_graph(build_sadg(las), resolve_criterion(las, *LAS_CRITERION), "sideways")


class TestProjectSlice:
    def test_identity(self, las):
        g = build_sadg(las)
        assert project_slice(las, GraphSlice(frozenset(), g.vertices, g.arcs)) == las

    def test_empty(self, las):
        empty = frozenset()
        out = project_slice(las, GraphSlice(empty, empty, empty))
        assert out == ArchDescription("las", properties=las.properties)

    def test_las_golden(self, las):
        _, sliced = slice_architecture(las, *LAS_CRITERION)
        expected = (GOLDEN / "las_slice.acme").read_text()
        assert emit_text(sliced) == expected
        assert [c.name for c in sliced.components] == ["call_entry", "incident_mgr", "resource_mgr"]
        assert [p.name for p in sliced.component("resource_mgr").ports] == [
            "receive_incident_info",
            "incident_info_request",
        ]
        assert [c.name for c in sliced.connectors] == [
            "call_info_channel",
            "incident_update_channel",
            "incident_info_request_rpc",
        ]
        assert sliced.component("dispatcher") is None
        assert validate(parse(expected)) == []

    def test_dangling_flow_properties_dropped(self):
        desc = parse(
            """System s = {
                Component x = {
                    Port a; Port b; Port c;
                    Properties { flow = "a -> b"; flow2 = "c -> a"; note = "keep"; }
                }
            }"""
        )
        # flow c -> a means a depends on c; the forward slice from a keeps a and b
        s, sliced = slice_architecture(desc, "x", ["a"], "forward")
        assert labels(s.vertices) == {"x.a", "x.b"}
        props = sliced.component("x").properties
        assert [p.name for p in props] == ["flow", "note"]
        assert build_sadg(sliced).arcs == s.arcs

    def test_none_marker_blocks_default_flows(self):
        desc = parse(
            """System s = {
                Component x = {
                    Port a; Port b; Port c;
                    Properties { flow = "a -> c"; flow2 = "b -> c"; }
                }
            }"""
        )
        # nothing depends on c, so the forward slice is {c} and both flows go
        _, sliced = slice_architecture(desc, "x", ["c"], "forward")
        props = sliced.component("x").properties
        assert props == (Property("flow", "none", "string"),)
        # a and b depend on nothing; dropping "a -> c" without a marker would
        # fall back to default flows and invent a <-> b arcs
        s, sliced = slice_architecture(
            parse(
                """System s = {
                    Component x = {
                        Port a; Port b; Port c;
                        Properties { flow = "a -> c"; }
                    }
                }"""
            ),
            "x",
            ["a", "b"],
        )
        assert labels(s.vertices) == {"x.a", "x.b"}
        assert s.arcs == frozenset()
        assert build_sadg(sliced).arcs == frozenset()
        assert Property("flow", "none", "string") in sliced.component("x").properties


class TestSliceArchitecture:
    def test_empty_criterion(self, las):
        with pytest.raises(CriterionError):
            slice_architecture(las, "resource_mgr", [])

    def test_single_element_full_criterion_is_identity(self):
        desc = parse(
            """System s = {
                Properties { tag = 1; }
                Component only = { Port a; Port b = { Properties { direction = "in"; } }; }
            }"""
        )
        _, sliced = slice_architecture(desc, "only", ["a", "b"])
        assert sliced == desc

    def test_returns_both_results(self, las):
        s, sliced = slice_architecture(las, *LAS_CRITERION)
        assert isinstance(s, GraphSlice)
        assert build_sadg(sliced).vertices == s.vertices


# -- laws over random descriptions ---------------------------------------

def _criteria(desc, rng):
    elem = rng.choice(desc.elements)
    names = [i.name for i in elem.interfaces]
    k = rng.randint(1, len(names))
    return elem, rng.sample(names, k)


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from(["backward", "forward"]))
def test_subset_and_soundness(rng, direction):
    desc = random_description(rng)
    elem, ifaces = _criteria(desc, rng)
    s, sliced = slice_architecture(desc, elem.name, ifaces, direction)
    g = build_sadg(desc)
    assert s.seed <= s.vertices <= g.vertices and s.arcs <= g.arcs
    assert all(a.source in s.vertices and a.target in s.vertices for a in s.arcs)

    original = {e.name: e for e in desc.elements}
    for e in sliced.elements:
        assert {i.name for i in e.interfaces} <= {i.name for i in original[e.name].interfaces}
    assert set(sliced.attachments) <= set(desc.attachments)
    assert sliced.element(elem.name) is not None

    reparsed = parse(emit_text(sliced))
    assert reparsed == sliced
    assert not [d for d in validate(reparsed) if d.is_error]
    h = build_sadg(reparsed)
    assert h.vertices == s.vertices
    assert h.arcs == s.arcs


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from(["backward", "forward"]))
def test_slice_of_slice_is_fixed_point(rng, direction):
    desc = random_description(rng)
    elem, ifaces = _criteria(desc, rng)
    _, once = slice_architecture(desc, elem.name, ifaces, direction)
    _, twice = slice_architecture(once, elem.name, ifaces, direction)
    assert twice == once


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from(["backward", "forward"]))
def test_monotone_in_criterion(rng, direction):
    desc = random_description(rng)
    elem, ifaces = _criteria(desc, rng)
    g = build_sadg(desc)
    small = slice_graph(g, resolve_criterion(desc, elem.name, ifaces[:1]), direction)
    big = slice_graph(g, resolve_criterion(desc, elem.name, ifaces), direction)
    assert small.vertices <= big.vertices


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_matches_closure_oracle(rng):
    desc = random_description(rng)
    g = build_sadg(desc)
    pairs = [(a.source, a.target) for a in g.arcs]
    for elem in desc.elements:
        for iface in elem.interfaces:
            c = resolve_criterion(desc, elem.name, [iface.name])
            assert slice_graph(g, c).vertices == closure_oracle(g.vertices, pairs, c.seed)


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_forward_is_backward_on_reversed_arcs(rng):
    desc = random_description(rng)
    g = build_sadg(desc)
    reversed_succ: dict = {}
    for a in g.arcs:
        reversed_succ.setdefault(a.target, []).append(a.source)
    elem, ifaces = _criteria(desc, rng)
    c = resolve_criterion(desc, elem.name, ifaces)
    assert slice_graph(g, c, "forward").vertices == reachable(reversed_succ, c.seed)


def test_full_slice_projects_to_identity():
    import random

    rng = random.Random(3)
    for _ in range(50):
        desc = random_description(rng)
        g = build_sadg(desc)
        assert project_slice(desc, GraphSlice(frozenset(), g.vertices, g.arcs)) == desc
