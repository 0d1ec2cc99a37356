"""Acceptance gate: every top-level criterion, one pass/fail line each.

Run with `pytest -s tests/test_acceptance.py` to see the lines. Every
comparison is exact set equality; there are no tolerances to tune.
"""

from __future__ import annotations

import json
import random
import subprocess
import sys
from contextlib import contextmanager
from dataclasses import replace
from pathlib import Path

from refd.graph import (
    NodeTag,
    add_method_node,
    graphs_equal,
    remove_method_node,
    snapshot,
)
from refd.query import SetKind, gen_instance_methods, gen_program_classes
from refd.refactoring import (
    DEFAULT_VERDICT,
    analyze,
    build_combine_methods_into_class,
    build_move_method,
    build_pull_up_method,
)
from refd.report import report_to_document, serialize_report
from refd.risks import run_detector
from refd.templates import ClassTemplate, MethodTemplate, ParameterSpec, parse_method_selector

import oracles
import test_random_equivalence as sweep
from conftest import fixture_path, graph_of, write_project

PKG_ROOT = Path(__file__).parent.parent


@contextmanager
def criterion(name: str):
    try:
        yield
    except Exception:
        print(f"[FAIL] {name}")
        raise
    print(f"[PASS] {name}")


def dangers_as_pairs(report):
    return {
        (d.label, loc.qualified) for d in report.dangers for loc in d.locations
    }


# ---------------------------------------------------------------------------
# Worked-example reproduction (exact location sets)
# ---------------------------------------------------------------------------


def test_worked_example_move_method():
    with criterion("move method reports exactly MM-1 at Source.local and AM-3 at Sub.method"):
        g = graph_of(fixture_path("move_method_basic"))
        r = build_move_method(
            parse_method_selector("Source.method(Target)"), ClassTemplate("Target"), g
        )
        report = analyze(r, g)
        assert dangers_as_pairs(report) == {
            ("MM-1", "Source.local"),
            ("AM-3", "Sub.method(Source)"),
        }
        assert len(report.dangers) == 2


def test_worked_example_pull_up_verdict():
    with criterion(
        "pull up to direct superclass keeps AM-1, drops RM-2; default verdict keeps RM-2"
    ):
        g = graph_of(fixture_path("pull_up_salary"))
        r = build_pull_up_method(
            parse_method_selector("Employee.salaryBonus(int)"),
            ClassTemplate("LegacyEmployee"),
            g,
        )
        filtered = analyze(r, g)
        assert ("AM-1", "LegacyEmployee.salaryBonus(int)") in dangers_as_pairs(filtered)
        assert all(d.label != "RM-2" for d in filtered.dangers)
        unfiltered = analyze(replace(r, verdict=DEFAULT_VERDICT), g)
        rm2 = [d for d in unfiltered.dangers if d.label == "RM-2"]
        assert [loc.qualified for d in rm2 for loc in d.locations] == [
            "LegacyEmployee.salaryBonus(int)"
        ]


def test_worked_example_combine_augmentation():
    with criterion(
        "combine flags AM-1 on the second relocated toString; disabling augmentation loses it"
    ):
        g = graph_of(fixture_path("combine_tostring"))
        r = build_combine_methods_into_class(
            [
                parse_method_selector("Alpha.toString()"),
                parse_method_selector("Beta.toString()"),
            ],
            ClassTemplate("Formatter"),
            g,
        )
        augmented = analyze(r, g)
        assert [d.label for d in augmented.dangers] == ["AM-1"]
        assert augmented.dangers[0].microstep_id == "3.1"
        plain = analyze(r, g, apply_effects=False)
        assert all(d.label != "AM-1" for d in plain.dangers)


def test_worked_example_removal_and_double_definition():
    with criterion("removing the override yields RM-2 at Super.m; moving D.m onto C yields AM-1 at C.m"):
        from refd.risks import potential_risk

        g = graph_of(fixture_path("override_removal"))
        risk = potential_risk(
            "RM-2", MethodTemplate(name="m", params=(), enclosing=ClassTemplate("C"))
        )
        actual = run_detector(risk, g)
        assert {rec.qualified for rec in actual.records} == {"Super.m()"}

        g2 = graph_of(fixture_path("double_definition"))
        r = build_move_method(parse_method_selector("D.m()"), ClassTemplate("C"), g2)
        report = analyze(r, g2)
        assert ("AM-1", "C.m()") in dangers_as_pairs(report)


# ---------------------------------------------------------------------------
# Oracle equivalence: fixtures plus 200 random projects
# ---------------------------------------------------------------------------


def test_oracle_equivalence_fixtures():
    with criterion("every detector and subdetector matches its oracle on all fixtures"):
        for name in (
            "move_method_basic",
            "pull_up_salary",
            "override_removal",
            "double_definition",
            "combine_tostring",
            "overload_widening",
        ):
            g = graph_of(fixture_path(name))
            model = oracles.extract_model(g)
            rng = random.Random(hash(name) & 0xFFFF)
            sweep.check_derived_relations(g, model)
            sweep.check_subdetectors(rng, g, model)
            sweep.check_detectors(rng, g, model)


def test_oracle_equivalence_200_random_projects(tmp_path):
    with criterion("zero mismatches across 200 random projects (exact set equality)"):
        for seed in range(200):
            g = sweep.build_random_graph(tmp_path / f"p{seed}", seed)
            model = oracles.extract_model(g)
            rng = random.Random(90_000 + seed)
            sweep.check_derived_relations(g, model)
            sweep.check_subdetectors(rng, g, model)
            sweep.check_detectors(rng, g, model)


# ---------------------------------------------------------------------------
# Invariant suite
# ---------------------------------------------------------------------------


def test_invariant_filter_only_verdicts():
    with criterion("verdicts only ever drop locations (dangers are subsets of risks)"):
        g = graph_of(fixture_path("pull_up_salary"))
        r = build_pull_up_method(
            parse_method_selector("Employee.salaryBonus(int)"),
            ClassTemplate("LegacyEmployee"),
            g,
        )
        filtered = dangers_as_pairs(analyze(r, g))
        unfiltered = dangers_as_pairs(analyze(replace(r, verdict=DEFAULT_VERDICT), g))
        assert filtered <= unfiltered


def test_invariant_default_verdict_identity():
    with criterion("default verdict reports actual risks unchanged, location for location"):
        g = graph_of(fixture_path("move_method_basic"))
        r = build_move_method(
            parse_method_selector("Source.method(Target)"), ClassTemplate("Target"), g
        )
        report = analyze(r, g)  # move method uses the default verdict
        working = snapshot(g)
        relocate = r.microsteps[0]
        expected = set()
        for risk in relocate.risks:
            actual = run_detector(risk, working, destination=relocate.subjects[1])
            expected |= {(risk.label, rec.qualified) for rec in actual.records}
        for child in relocate.children:
            for risk in child.risks:
                actual = run_detector(risk, working)
                expected |= {(risk.label, rec.qualified) for rec in actual.records}
            from refd.refactoring import apply_effect

            apply_effect(child, working)
        assert dangers_as_pairs(report) == expected


def test_invariant_augmentation_inversion():
    with criterion("adding then removing a method restores the graph exactly"):
        for name in ("move_method_basic", "pull_up_salary", "override_removal"):
            g = graph_of(fixture_path(name))
            baseline = snapshot(g)
            first_class = g.nodes_tagged(NodeTag.CLASS)[0].name
            t = MethodTemplate(
                name="probe",
                params=(ParameterSpec("v", "long"),),
                enclosing=ClassTemplate(first_class),
            )
            node = add_method_node(g, t)
            remove_method_node(g, node.id)
            assert graphs_equal(g, baseline)


def test_invariant_kind_purity():
    with criterion("typed sets only ever hold locations of their kind"):
        g = graph_of(fixture_path("move_method_basic"))
        classes = gen_program_classes(g)
        methods = gen_instance_methods(g)
        assert classes.kind is SetKind.CLASS
        assert methods.kind is SetKind.METHOD
        for locs in (classes, methods):
            for node_id in locs.members:
                assert locs.kind.allows(g.node(node_id).tag)


def test_invariant_baseline_immutability():
    with criterion("analysis never mutates the baseline graph"):
        g = graph_of(fixture_path("pull_up_salary"))
        before = snapshot(g)
        generation = g.generation
        r = build_pull_up_method(
            parse_method_selector("Employee.salaryBonus(int)"),
            ClassTemplate("LegacyEmployee"),
            g,
        )
        analyze(r, g)
        analyze(r, g)
        assert g.generation == generation and graphs_equal(g, before)


def test_invariant_byte_identical_reports():
    with criterion("repeated runs serialize to byte-identical JSON"):
        outputs = set()
        for _ in range(2):
            g = graph_of(fixture_path("move_method_basic"))
            r = build_move_method(
                parse_method_selector("Source.method(Target)"), ClassTemplate("Target"), g
            )
            outputs.add(serialize_report(analyze(r, g)))
        assert len(outputs) == 1


# ---------------------------------------------------------------------------
# CLI contract
# ---------------------------------------------------------------------------


def _cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "refd.cli", *args],
        capture_output=True,
        text=True,
        cwd=PKG_ROOT,
        env={"PYTHONPATH": str(PKG_ROOT / "src"), "PATH": "/usr/bin:/bin"},
    )


def test_cli_contract(tmp_path):
    with criterion("CLI exit codes 0/1/2 and JSON round-trip equality"):
        clean_root = write_project(
            tmp_path,
            {
                "c.jsub": (
                    "class From { public void pure(int a) { int b = a + 1; } }\n"
                    "class To { }"
                )
            },
        )
        clean = _cli(
            "analyze",
            "--project",
            str(clean_root),
            "--refactoring",
            "move-method",
            "--method",
            "From.pure(int)",
            "--destination",
            "To",
        )
        assert clean.returncode == 0

        dangerous = _cli(
            "analyze",
            "--project",
            str(fixture_path("pull_up_salary")),
            "--refactoring",
            "pull-up-method",
            "--method",
            "Employee.salaryBonus(int)",
            "--destination",
            "LegacyEmployee",
        )
        assert dangerous.returncode == 2
        doc = json.loads(dangerous.stdout)
        assert json.dumps(doc, sort_keys=True, indent=2) + "\n" == dangerous.stdout

        empty = tmp_path / "none"
        empty.mkdir()
        erroring = _cli(
            "analyze",
            "--project",
            str(empty),
            "--refactoring",
            "move-method",
            "--method",
            "From.pure(int)",
            "--destination",
            "To",
        )
        assert erroring.returncode == 1

        # In-process round-trip on the same report content.
        g = graph_of(fixture_path("pull_up_salary"))
        r = build_pull_up_method(
            parse_method_selector("Employee.salaryBonus(int)"),
            ClassTemplate("LegacyEmployee"),
            g,
        )
        report = analyze(r, g)
        assert json.loads(serialize_report(report)) == report_to_document(report)
