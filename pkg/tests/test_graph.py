"""Program graph tests: build, overrides, augmentation, determinism."""

from __future__ import annotations

import json

import pytest

from refd.errors import MissingEnclosingClassError, UnknownLocationError
from refd.graph import (
    NodeTag,
    RelationTag,
    add_class_node,
    add_method_node,
    build_graph,
    dump_graph,
    graphs_equal,
    remove_method_node,
    resolve_template,
    snapshot,
)
from refd.jsub import load_project
from refd.templates import ClassTemplate, MethodTemplate, ParameterSpec

import oracles
from conftest import fixture_path, graph_of, write_project


def overrides_edges(g):
    return {(e.src, e.dst) for e in g.edges() if e.tag is RelationTag.OVERRIDES}


def test_build_no_overrides_in_move_fixture(move_method_graph):
    assert overrides_edges(move_method_graph) == set()


def test_build_override_edge_in_override_fixture(override_graph):
    assert overrides_edges(override_graph) == {("method:C.m()", "method:Super.m()")}


def test_build_empty_project(tmp_path):
    root = tmp_path / "none"
    root.mkdir()
    g = build_graph(load_project(root))
    assert [n.tag for n in g.nodes()] == [NodeTag.PROJECT]
    assert g.edges() == []


def test_snapshot_isolation(move_method_graph):
    copy = snapshot(move_method_graph)
    assert graphs_equal(copy, move_method_graph)
    add_class_node(copy, ClassTemplate("K"))
    assert copy.class_by_name("K") is not None
    assert move_method_graph.class_by_name("K") is None
    assert not graphs_equal(copy, move_method_graph)


def test_snapshot_empty(tmp_path):
    root = tmp_path / "none"
    root.mkdir()
    g = build_graph(load_project(root))
    assert graphs_equal(snapshot(g), g)


def test_add_method_to_synthetic_class(combine_graph):
    add_class_node(combine_graph, ClassTemplate("K"))
    t = MethodTemplate(name="toString", params=(), enclosing=ClassTemplate("K"), return_type="String")
    node = add_method_node(combine_graph, t)
    owner = combine_graph.class_of_member(node.id)
    assert owner.name == "K" and owner.synthetic
    assert node.synthetic and node.span is None


def test_add_method_creates_override_edges(override_graph):
    # New subclass of Super with its own m(): must override Super.m.
    add_class_node(override_graph, ClassTemplate("Deeper", superclass_name="Super"))
    node = add_method_node(
        override_graph, MethodTemplate(name="m", params=(), enclosing=ClassTemplate("Deeper"))
    )
    assert (node.id, "method:Super.m()") in overrides_edges(override_graph)
    model = oracles.extract_model(override_graph)
    assert overrides_edges(override_graph) == oracles.oracle_overrides_edges(model)


def test_add_method_missing_enclosing_class(move_method_graph):
    with pytest.raises(MissingEnclosingClassError):
        add_method_node(
            move_method_graph,
            MethodTemplate(name="x", params=(), enclosing=ClassTemplate("Ghost")),
        )


def test_remove_override_recomputes(override_graph):
    remove_method_node(override_graph, "method:C.m()")
    assert overrides_edges(override_graph) == set()
    # The call on the C-typed receiver now falls through to Super.m.
    calls = [e for e in override_graph.edges() if e.tag is RelationTag.CALLS]
    assert {(e.src, e.dst) for e in calls} == {
        ("method:Caller.run(C)/c0", "method:Super.m()"),
        ("method:Caller.runBase(Super)/c0", "method:Super.m()"),
    }


def test_add_then_remove_is_identity(each_fixture_graph):
    g = each_fixture_graph
    baseline = snapshot(g)
    classes = [n for n in g.nodes_tagged(NodeTag.CLASS)]
    t = MethodTemplate(
        name="m",
        params=(ParameterSpec("v", "int"),),
        enclosing=ClassTemplate(classes[0].name),
    )
    node = add_method_node(g, t)
    remove_method_node(g, node.id)
    assert graphs_equal(g, baseline)


def test_remove_unknown_location(move_method_graph):
    with pytest.raises(UnknownLocationError):
        remove_method_node(move_method_graph, "method:Nope.m()")


def test_add_class_enables_resolution(combine_graph):
    assert resolve_template(combine_graph, ClassTemplate("K")) is None
    add_class_node(combine_graph, ClassTemplate("K"))
    found = resolve_template(combine_graph, ClassTemplate("K"))
    assert found is not None and found.synthetic


def test_add_class_twice_two_nodes(combine_graph):
    add_class_node(combine_graph, ClassTemplate("K"))
    add_class_node(combine_graph, ClassTemplate("K"))
    assert len([n for n in combine_graph.nodes_tagged(NodeTag.CLASS) if n.name == "K"]) == 2


def test_add_class_with_existing_superclass(move_method_graph):
    node = add_class_node(move_method_graph, ClassTemplate("Extra", superclass_name="Target"))
    extends = move_method_graph.out_edges(node.id, RelationTag.EXTENDS)
    assert [e.dst for e in extends] == ["class:Target"]


def test_add_class_unresolved_superclass(move_method_graph):
    node = add_class_node(move_method_graph, ClassTemplate("Extra", superclass_name="Ghost"))
    assert node.attrs["unresolved_superclass"] == "Ghost"
    assert move_method_graph.out_edges(node.id, RelationTag.EXTENDS) == []


def test_overrides_match_oracle_on_fixtures(each_fixture_graph):
    model = oracles.extract_model(each_fixture_graph)
    assert overrides_edges(each_fixture_graph) == oracles.oracle_overrides_edges(model)


def test_calls_match_oracle_on_fixtures(each_fixture_graph):
    g = each_fixture_graph
    model = oracles.extract_model(g)
    calls = {(e.src, e.dst) for e in g.edges() if e.tag is RelationTag.CALLS}
    assert calls == oracles.oracle_calls_edges(model)
    accesses = {
        (e.src, e.dst, "read" if e.tag is RelationTag.READS else "write")
        for e in g.edges()
        if e.tag in (RelationTag.READS, RelationTag.WRITES)
    }
    assert accesses == oracles.oracle_access_edges(model)


def test_referential_integrity_after_mutations(override_graph):
    g = override_graph
    g.validate()
    node = add_method_node(
        g, MethodTemplate(name="m", params=(), enclosing=ClassTemplate("Caller"))
    )
    g.validate()
    add_class_node(g, ClassTemplate("Fresh", superclass_name="C"))
    g.validate()
    remove_method_node(g, node.id)
    g.validate()


def test_generation_bumps_on_mutation(move_method_graph):
    g = move_method_graph
    start = g.generation
    node = add_class_node(g, ClassTemplate("K"))
    assert g.generation == start + 1
    m = add_method_node(g, MethodTemplate(name="x", params=(), enclosing=ClassTemplate("K")))
    assert g.generation == start + 2
    remove_method_node(g, m.id)
    assert g.generation == start + 3
    assert node.id in g


def test_build_determinism():
    a = graph_of(fixture_path("move_method_basic"))
    b = graph_of(fixture_path("move_method_basic"))
    assert graphs_equal(a, b)
    assert json.dumps(dump_graph(a), sort_keys=True) == json.dumps(dump_graph(b), sort_keys=True)


def test_dangling_call_distinction(tmp_path):
    root = write_project(
        tmp_path,
        {
            "d.jsub": """
class Lib {
    public void stable() { }
}
class User {
    public void use(Lib lib) {
        lib.stable();
        lib.ghost();
    }
}
"""
        },
    )
    g = graph_of(root)
    stable_site = g.node("method:User.use(Lib)/c0")
    ghost_site = g.node("method:User.use(Lib)/c1")
    assert stable_site.attrs["build_resolved"] is True
    assert ghost_site.attrs["build_resolved"] is False
    remove_method_node(g, "method:Lib.stable()")
    # Both sites now dangle, but only one ever resolved at build time.
    assert g.out_edges(stable_site.id, RelationTag.CALLS) == []
    assert stable_site.attrs["build_resolved"] is True
    assert ghost_site.attrs["build_resolved"] is False


def test_parameter_and_returns_structure(move_method_graph):
    g = move_method_graph
    params = g.parameters_of("method:Source.method(Target)")
    assert [(p.name, p.attrs["type_name"]) for p in params] == [("target", "Target")]
    of_type = g.out_edges(params[0].id, RelationTag.OF_TYPE)
    assert [e.dst for e in of_type] == ["class:Target"]
