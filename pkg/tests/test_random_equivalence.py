"""Randomized oracle-equivalence sweep.

Two hundred generated projects (small classes, shallow inheritance, random
bodies) are parsed and graphed; every derived relation, subdetector, and
detector is then compared against its independent brute-force oracle with
exact set equality. Hypothesis covers the augmentation-inversion property
on the same generator.
"""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from refd.graph import (
    NodeTag,
    RelationTag,
    add_method_node,
    build_graph,
    graphs_equal,
    method_template_of,
    remove_method_node,
    snapshot,
)
from refd.jsub import load_project
from refd.query import (
    callers_of,
    class_set,
    gen_instance_methods,
    gen_program_classes,
    local_context_refs,
    method_set,
    methods_matching,
    methods_of,
    overridden_by,
    overrides_of,
    subclasses,
    superclasses,
)
from refd.risks import (
    detect_am1_double_definition_method,
    detect_am2_broken_subtyping,
    detect_am3_corresponding_subclass_specification,
    detect_am4_overload_parameter_conversion,
    detect_mm1_broken_local_references,
    detect_rm1_missing_definition,
    detect_rm2_removed_concrete_override,
    detect_rm3_lost_specification,
    detect_rm4_missing_super_implementation,
    detect_rm5_missing_abstract_implementation,
)
from refd.templates import ClassTemplate, MethodTemplate, ParameterSpec, Signature

import oracles
from projectgen import CLASS_NAMES, METHOD_NAMES, generate_project
from conftest import write_project

N_PROJECTS = 200
TYPE_POOL = ["int", "long", "double", "boolean", "String"] + CLASS_NAMES[:3]


def build_random_graph(tmp_path, seed: int):
    files = generate_project(seed)
    root = write_project(tmp_path, files)
    return build_graph(load_project(root))


def random_template(rng: random.Random, g) -> MethodTemplate:
    classes = g.nodes_tagged(NodeTag.CLASS)
    enclosing = rng.choice(classes).name
    name = rng.choice(METHOD_NAMES)
    arity = rng.randint(0, 2)
    params = tuple(
        ParameterSpec(f"p{i}", rng.choice(TYPE_POOL)) for i in range(arity)
    )
    return MethodTemplate(name=name, params=params, enclosing=ClassTemplate(enclosing))


def check_derived_relations(g, model):
    overrides = {(e.src, e.dst) for e in g.edges() if e.tag is RelationTag.OVERRIDES}
    assert overrides == oracles.oracle_overrides_edges(model)
    calls = {(e.src, e.dst) for e in g.edges() if e.tag is RelationTag.CALLS}
    assert calls == oracles.oracle_calls_edges(model)
    accesses = {
        (e.src, e.dst, "read" if e.tag is RelationTag.READS else "write")
        for e in g.edges()
        if e.tag in (RelationTag.READS, RelationTag.WRITES)
    }
    assert accesses == oracles.oracle_access_edges(model)


def check_subdetectors(rng, g, model):
    class_ids = [n.id for n in g.nodes_tagged(NodeTag.CLASS)]
    method_ids = [n.id for n in g.nodes_tagged(NodeTag.METHOD)]
    some_classes = frozenset(rng.sample(class_ids, k=rng.randint(0, len(class_ids))))
    some_methods = frozenset(rng.sample(method_ids, k=rng.randint(0, len(method_ids))))
    cset = class_set(g, some_classes)
    mset = method_set(g, some_methods)

    assert gen_program_classes(g).ids() == set(class_ids)
    assert gen_instance_methods(g).ids() == oracles.oracle_instance_methods(model)
    assert superclasses().apply(cset).ids() == oracles.oracle_superclasses(model, set(some_classes))
    assert subclasses().apply(cset).ids() == oracles.oracle_subclasses(model, set(some_classes))
    assert methods_of().apply(cset).ids() == oracles.oracle_methods_of(model, set(some_classes))
    sig = Signature(rng.choice(METHOD_NAMES), tuple(rng.choice(TYPE_POOL) for _ in range(rng.randint(0, 2))))
    assert methods_matching(sig).apply(mset).ids() == oracles.oracle_methods_matching(
        model, set(some_methods), (sig.name, sig.param_types)
    )
    assert overridden_by().apply(mset).ids() == oracles.oracle_overridden_by(
        model, set(some_methods)
    )
    assert overrides_of().apply(mset).ids() == oracles.oracle_overrides_of(
        model, set(some_methods)
    )
    assert callers_of().apply(mset).ids() == oracles.oracle_callers_of(model, set(some_methods))
    for mid in some_methods:
        assert local_context_refs().apply(method_set(g, {mid})).ids() == (
            oracles.oracle_local_context_refs(model, mid)
        )


def check_detectors(rng, g, model):
    t = random_template(rng, g)
    enclosing, name, ptypes = t.enclosing.name, t.name, t.signature().param_types
    assert detect_am1_double_definition_method(t, g).locations.ids() == oracles.oracle_am1(
        model, enclosing, name, ptypes
    )
    assert detect_am2_broken_subtyping(t, g).locations.ids() == oracles.oracle_am2(
        model, enclosing, name, ptypes
    )
    assert detect_am3_corresponding_subclass_specification(t, g).locations.ids() == (
        oracles.oracle_am3(model, enclosing, name, ptypes)
    )
    assert detect_am4_overload_parameter_conversion(t, g).locations.ids() == (
        oracles.oracle_am4(model, enclosing, name, ptypes, visibility=t.visibility)
    )

    method_ids = [n.id for n in g.nodes_tagged(NodeTag.METHOD)]
    for mid in rng.sample(method_ids, k=min(4, len(method_ids))):
        subject = method_template_of(g, mid)
        assert detect_rm1_missing_definition(subject, g).locations.ids() == oracles.oracle_rm1(
            model, mid
        )
        assert detect_rm2_removed_concrete_override(subject, g).locations.ids() == (
            oracles.oracle_rm2(model, mid)
        )
        assert detect_rm3_lost_specification(subject, g).locations.ids() == oracles.oracle_rm3(
            model, mid
        )
        assert detect_rm4_missing_super_implementation(subject, g).locations.ids() == (
            oracles.oracle_rm4(model, mid)
        )
        assert detect_rm5_missing_abstract_implementation(subject, g).locations.ids() == (
            oracles.oracle_rm5(model, mid)
        )
        dst = ClassTemplate(rng.choice(g.nodes_tagged(NodeTag.CLASS)).name)
        dst_t = MethodTemplate(name=subject.name, params=subject.params, enclosing=dst)
        assert detect_mm1_broken_local_references(subject, dst_t, g).locations.ids() == (
            oracles.oracle_mm1(model, mid, dst.name)
        )


@pytest.mark.parametrize("chunk", range(10))
def test_random_equivalence_sweep(tmp_path, chunk):
    """20 projects per chunk, 200 total, zero tolerated mismatches."""
    for i in range(20):
        seed = chunk * 20 + i
        g = build_random_graph(tmp_path / f"s{seed}", seed)
        model = oracles.extract_model(g)
        rng = random.Random(10_000 + seed)
        check_derived_relations(g, model)
        check_subdetectors(rng, g, model)
        check_detectors(rng, g, model)


@pytest.mark.parametrize("seed", range(25))
def test_random_parse_properties(tmp_path, seed):
    """Parser invariants hold on generated sources: deterministic output,
    spans inside the file, member spans nested in their class span."""
    from refd.jsub import parse_project

    files = generate_project(3000 + seed)
    root = write_project(tmp_path, files)
    first = parse_project(root)
    second = parse_project(root)
    assert first == second
    for cls in first.classes:
        text = files[cls.span.file]
        line_count = text.count("\n") + 1
        assert 1 <= cls.span.start_line <= cls.span.end_line <= line_count
        for member in list(cls.fields) + list(cls.methods):
            assert cls.span.encloses(member.span)
            for ref in getattr(member, "body_refs", ()):
                assert member.span.encloses(ref.span)


@pytest.mark.parametrize("seed", range(30))
def test_random_pipeline_runs_and_is_deterministic(tmp_path, seed):
    """Full builder+analyze pipeline on random projects: no unexpected
    exceptions, byte-identical serialization across repeated runs, and an
    untouched baseline."""
    from refd.errors import RefdError
    from refd.refactoring import (
        build_combine_methods_into_class,
        build_move_method,
        build_pull_up_method,
        analyze,
    )
    from refd.report import serialize_report

    g = build_random_graph(tmp_path, 5000 + seed)
    rng = random.Random(777 + seed)
    method_nodes = g.nodes_tagged(NodeTag.METHOD)
    class_nodes = g.nodes_tagged(NodeTag.CLASS)
    if not method_nodes:
        return
    subject = method_template_of(g, rng.choice(method_nodes).id)
    destination = ClassTemplate(rng.choice(class_nodes).name)
    builder = rng.choice(["pull-up", "move", "combine"])
    try:
        if builder == "pull-up":
            r = build_pull_up_method(subject, destination, g)
        elif builder == "move":
            r = build_move_method(subject, destination, g)
        else:
            r = build_combine_methods_into_class([subject], ClassTemplate("Fresh"), g)
    except RefdError:
        return  # destination rejected by preconditions; nothing to analyze
    baseline = snapshot(g)
    first = serialize_report(analyze(r, g))
    second = serialize_report(analyze(r, g))
    assert first == second
    assert graphs_equal(g, baseline)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10_000))
def test_augmentation_inversion_random(tmp_path_factory, seed):
    tmp = tmp_path_factory.mktemp(f"inv{seed}")
    files = generate_project(seed)
    root = write_project(tmp, files)
    g = build_graph(load_project(root))
    baseline = snapshot(g)
    rng = random.Random(seed ^ 0xA5A5)
    t = random_template(rng, g)
    node = add_method_node(g, t)
    remove_method_node(g, node.id)
    assert graphs_equal(g, baseline)
