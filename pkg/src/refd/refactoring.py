"""Declarative refactoring trees, verdict functions, and the danger analysis.

A refactoring is a tree: the refactoring at the root, microsteps below it,
potential risks at the leaves. The analyzer walks the tree depth-first in
declaration order against a working snapshot: each leaf microstep first
runs its detectors, then applies its structural effect, so later detectors
see the pending edits. A composite microstep runs its own risks before
descending. Surviving locations, after the refactoring-specific verdict
filters false positives, become dangers.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable

from .errors import (
    NotAnAncestorError,
    RefdError,
    SameClassError,
    UnresolvableTemplateError,
)
from .graph import (
    ProgramGraph,
    add_class_node,
    add_method_node,
    method_template_of,
    remove_method_node,
    resolve_template,
    snapshot,
)
from .risks import ActualRisk, LocationRecord, PotentialRisk, potential_risk, run_detector
from .templates import ClassTemplate, MethodTemplate, method_selector

PULL_UP_METHOD = "pull-up-method"
MOVE_METHOD = "move-method"
COMBINE_METHODS_INTO_CLASS = "combine-methods-into-class"

REFACTORING_NAMES = (PULL_UP_METHOD, MOVE_METHOD, COMBINE_METHODS_INTO_CLASS)


class MicrostepKind(Enum):
    ADD_METHOD = "add-method"
    REMOVE_METHOD = "remove-method"
    ADD_CLASS = "add-class"
    RELOCATE_METHOD = "relocate-method"


# Each leaf microstep kind carries a fixed, exhaustive set of risk labels.
_LEAF_RISKS = {
    MicrostepKind.ADD_METHOD: ("AM-1", "AM-2", "AM-3", "AM-4"),
    MicrostepKind.REMOVE_METHOD: ("RM-1", "RM-2", "RM-3", "RM-4", "RM-5"),
    MicrostepKind.ADD_CLASS: ("AC-1",),
}


@dataclass(frozen=True)
class Microstep:
    id: str
    kind: MicrostepKind
    subjects: tuple[MethodTemplate | ClassTemplate, ...]
    risks: tuple[PotentialRisk, ...]
    children: tuple[Microstep, ...] = ()

    @property
    def is_composite(self) -> bool:
        return bool(self.children)


def add_method_step(t: MethodTemplate, step_id: str) -> Microstep:
    risks = tuple(potential_risk(label, t) for label in _LEAF_RISKS[MicrostepKind.ADD_METHOD])
    return Microstep(id=step_id, kind=MicrostepKind.ADD_METHOD, subjects=(t,), risks=risks)


def remove_method_step(t: MethodTemplate, step_id: str) -> Microstep:
    risks = tuple(potential_risk(label, t) for label in _LEAF_RISKS[MicrostepKind.REMOVE_METHOD])
    return Microstep(id=step_id, kind=MicrostepKind.REMOVE_METHOD, subjects=(t,), risks=risks)


def add_class_step(t: ClassTemplate, step_id: str) -> Microstep:
    risks = tuple(potential_risk(label, t) for label in _LEAF_RISKS[MicrostepKind.ADD_CLASS])
    return Microstep(id=step_id, kind=MicrostepKind.ADD_CLASS, subjects=(t,), risks=risks)


def relocate_method_step(src: MethodTemplate, dst: MethodTemplate, step_id: str) -> Microstep:
    """Composite move: add at the destination, then remove at the source.

    Carries the broken-local-references risk itself; the constituent add
    and remove steps keep their own risks.
    """
    return Microstep(
        id=step_id,
        kind=MicrostepKind.RELOCATE_METHOD,
        subjects=(src, dst),
        risks=(potential_risk("MM-1", src),),
        children=(
            add_method_step(dst, f"{step_id}.1"),
            remove_method_step(src, f"{step_id}.2"),
        ),
    )


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerdictContext:
    """What a verdict rule may consult: the refactoring's parameters and
    the ordered subjects of its microsteps."""

    refactoring: str
    params: dict
    subjects: tuple[tuple[str, MicrostepKind, tuple], ...]

    def removed_method_templates(self) -> list[MethodTemplate]:
        return [
            subj[0]
            for _, kind, subj in self.subjects
            if kind is MicrostepKind.REMOVE_METHOD and isinstance(subj[0], MethodTemplate)
        ]


VerdictRule = Callable[[ActualRisk, VerdictContext], frozenset[str]]


def keep_all(risk: ActualRisk) -> frozenset[str]:
    return frozenset(risk.locations.members)


def keep_none(risk: ActualRisk) -> frozenset[str]:
    return frozenset()


def keep_if(risk: ActualRisk, predicate: Callable[[str], bool]) -> frozenset[str]:
    return frozenset(i for i in risk.locations.members if predicate(i))


@dataclass(frozen=True)
class VerdictFunction:
    """Per-label filter over actual risks. Labels without a rule keep all.

    Rules can only drop locations, never add: the result is intersected
    with the detector's output.
    """

    name: str = "default"
    rules: dict[str, VerdictRule] = field(default_factory=dict)

    def decide(self, risk: ActualRisk, ctx: VerdictContext) -> frozenset[str]:
        rule = self.rules.get(risk.risk.label)
        if rule is None:
            return keep_all(risk)
        return frozenset(rule(risk, ctx)) & frozenset(risk.locations.members)


DEFAULT_VERDICT = VerdictFunction()


def _is_removed_subject(record: LocationRecord, ctx: VerdictContext) -> bool:
    removed = {
        f"{t.enclosing.name}.{t.signature().render()}"
        for t in ctx.removed_method_templates()
    }
    return record.qualified in removed


def pull_up_verdict(to_direct_superclass: bool, strict: bool = False) -> VerdictFunction:
    """Pull Up Method's verdict.

    Removing the method from the subclass is not a silent fallback to the
    super implementation when that super implementation is exactly where
    the method is being added, so the removed-override results are dropped
    for a direct-superclass pull-up and kept otherwise.

    Unless strict is set, subclass-specification results that point at the
    very method the paired removal takes away are also dropped (it ceases
    to exist, so its specification cannot diverge).
    """

    def rm2_rule(risk: ActualRisk, ctx: VerdictContext) -> frozenset[str]:
        if to_direct_superclass:
            return keep_none(risk)
        return keep_all(risk)

    rules: dict[str, VerdictRule] = {"RM-2": rm2_rule}

    if not strict:

        def am3_rule(risk: ActualRisk, ctx: VerdictContext) -> frozenset[str]:
            kept = {r.id for r in risk.records if not _is_removed_subject(r, ctx)}
            return frozenset(kept)

        rules["AM-3"] = am3_rule

    return VerdictFunction(name="pull-up-method", rules=rules)


# ---------------------------------------------------------------------------
# Refactorings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Refactoring:
    name: str
    microsteps: tuple[Microstep, ...]
    params: dict
    verdict: VerdictFunction = DEFAULT_VERDICT

    def __post_init__(self):
        ids = [s.id for s in _walk_steps(self.microsteps)]
        if len(ids) != len(set(ids)):
            raise ValueError(f"microstep ids repeat: {ids}")


def _walk_steps(steps) -> list[Microstep]:
    out = []
    for s in steps:
        out.append(s)
        out.extend(_walk_steps(s.children))
    return out


def _hydrated(g: ProgramGraph, t: MethodTemplate) -> MethodTemplate:
    """Resolve a (possibly bare) template and rebuild it from the real node."""
    node = resolve_template(g, t)
    if node is None:
        raise UnresolvableTemplateError(f"{t.describe()} does not exist in the graph")
    return method_template_of(g, node.id)


def _moved_copy(src: MethodTemplate, destination_name: str, source_name: str) -> MethodTemplate:
    """Destination-side template for a move between unrelated classes.

    The first parameter typed as the destination class becomes the implicit
    receiver, so it is replaced by a parameter of the source class type;
    everything else is copied verbatim.
    """
    params = list(src.params)
    for i, p in enumerate(params):
        if p.type_name == destination_name:
            params[i] = replace(p, name=source_name.lower(), type_name=source_name)
            break
    return replace(src, params=tuple(params), enclosing=ClassTemplate(destination_name))


def build_pull_up_method(
    method: MethodTemplate,
    destination: ClassTemplate,
    g: ProgramGraph,
    strict_verdict: bool = False,
) -> Refactoring:
    """Move a method to one of its class's ancestors, verbatim copy."""
    src = _hydrated(g, method)
    src_class = g.class_by_name(src.enclosing.name)
    dst_class = resolve_template(g, destination)
    if dst_class is None:
        raise UnresolvableTemplateError(f"no class named {destination.name} in the graph")
    ancestors = g.ancestors_of(src_class.id)
    if dst_class.id not in {a.id for a in ancestors}:
        raise NotAnAncestorError(
            f"{destination.name} is not an ancestor of {src.enclosing.name}"
        )
    to_direct = bool(ancestors) and ancestors[0].id == dst_class.id
    dst = src.with_enclosing(ClassTemplate(destination.name))
    return Refactoring(
        name=PULL_UP_METHOD,
        microsteps=(relocate_method_step(src, dst, "1"),),
        params={
            "method": method_selector(src),
            "destination": destination.name,
            "to_direct_superclass": to_direct,
        },
        verdict=pull_up_verdict(to_direct, strict=strict_verdict),
    )


def build_move_method(
    method: MethodTemplate, destination: ClassTemplate, g: ProgramGraph
) -> Refactoring:
    """Move a method to an unrelated class; calls are assumed redirected."""
    src = _hydrated(g, method)
    dst_class = resolve_template(g, destination)
    if dst_class is None:
        raise UnresolvableTemplateError(f"no class named {destination.name} in the graph")
    if dst_class.name == src.enclosing.name:
        raise SameClassError(f"{method_selector(src)} already lives in {destination.name}")
    dst = _moved_copy(src, destination.name, src.enclosing.name)
    return Refactoring(
        name=MOVE_METHOD,
        microsteps=(relocate_method_step(src, dst, "1"),),
        params={"method": method_selector(src), "destination": destination.name},
        verdict=DEFAULT_VERDICT,
    )


def build_combine_methods_into_class(
    methods: list[MethodTemplate], new_class: ClassTemplate, g: ProgramGraph
) -> Refactoring:
    """Create a class, then relocate each method into it, in the given order."""
    sources = [_hydrated(g, m) for m in methods]
    steps: list[Microstep] = [add_class_step(new_class, "1")]
    for i, src in enumerate(sources, start=2):
        dst = _moved_copy(src, new_class.name, src.enclosing.name)
        steps.append(relocate_method_step(src, dst, str(i)))
    return Refactoring(
        name=COMBINE_METHODS_INTO_CLASS,
        microsteps=tuple(steps),
        params={
            "methods": [method_selector(s) for s in sources],
            "destination": new_class.name,
        },
        verdict=DEFAULT_VERDICT,
    )


# ---------------------------------------------------------------------------
# Effects
# ---------------------------------------------------------------------------


def apply_effect(step: Microstep, g: ProgramGraph) -> None:
    """Apply a microstep's structural effect to the working graph."""
    if step.kind is MicrostepKind.RELOCATE_METHOD:
        for child in step.children:
            apply_effect(child, g)
        return
    if step.kind is MicrostepKind.ADD_METHOD:
        add_method_node(g, step.subjects[0])
    elif step.kind is MicrostepKind.REMOVE_METHOD:
        node = resolve_template(g, step.subjects[0])
        if node is None:
            raise UnresolvableTemplateError(
                f"{step.subjects[0].describe()} does not exist in the graph"
            )
        remove_method_node(g, node.id)
    elif step.kind is MicrostepKind.ADD_CLASS:
        add_class_node(g, step.subjects[0])
    else:
        raise ValueError(f"unknown leaf kind: {step.kind}")


# ---------------------------------------------------------------------------
# Dangers and the analysis walk
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Danger:
    """An actual risk that survived the verdict, ready for reporting."""

    label: str
    detector: str
    message: str
    microstep_id: str
    locations: tuple[LocationRecord, ...]

    def sort_key(self) -> tuple:
        first = self.locations[0].sort_key() if self.locations else (2,)
        return (first, self.label, self.microstep_id)


@dataclass(frozen=True)
class DangerReport:
    refactoring: str
    params: dict
    dangers: tuple[Danger, ...]
    per_label_counts: dict[str, int]
    baseline_generation: int
    diagnostics: tuple[str, ...] = ()

    @property
    def clean(self) -> bool:
        return not self.dangers


def analyze(
    r: Refactoring, baseline: ProgramGraph, apply_effects: bool = True
) -> DangerReport:
    """Run the full danger diagnosis for one refactoring.

    The baseline is never touched: all effects go to a private snapshot.
    apply_effects=False is a test hook that skips graph augmentation, for
    demonstrating why later detectors need earlier microsteps' effects.
    """
    working = snapshot(baseline)
    collected: list[ActualRisk] = []
    diagnostics: list[str] = []

    def run_risks(step: Microstep) -> None:
        destination = (
            step.subjects[1]
            if step.kind is MicrostepKind.RELOCATE_METHOD and len(step.subjects) > 1
            else None
        )
        for risk in step.risks:
            try:
                collected.append(
                    run_detector(risk, working, destination=destination).with_microstep(step.id)
                )
            except RefdError as exc:
                diagnostics.append(f"{step.id}:{risk.label}: {type(exc).__name__}: {exc}")

    def visit(step: Microstep) -> None:
        run_risks(step)
        if step.is_composite:
            for child in step.children:
                visit(child)
            return
        if apply_effects:
            try:
                apply_effect(step, working)
            except RefdError as exc:
                diagnostics.append(f"{step.id}:effect: {type(exc).__name__}: {exc}")

    for step in r.microsteps:
        visit(step)

    ctx = VerdictContext(
        refactoring=r.name,
        params=dict(r.params),
        subjects=tuple(
            (s.id, s.kind, s.subjects) for s in _walk_steps(r.microsteps)
        ),
    )
    dangers: list[Danger] = []
    for ar in collected:
        if not ar.is_actual:
            continue
        kept = r.verdict.decide(ar, ctx)
        if not kept:
            continue
        records = tuple(rec for rec in ar.records if rec.id in kept)
        dangers.append(
            Danger(
                label=ar.risk.label,
                detector=ar.risk.name,
                message=ar.risk.description,
                microstep_id=ar.microstep_id or "",
                locations=records,
            )
        )
    dangers.sort(key=lambda d: d.sort_key())
    counts: dict[str, int] = {}
    for d in dangers:
        counts[d.label] = counts.get(d.label, 0) + 1
    return DangerReport(
        refactoring=r.name,
        params=dict(r.params),
        dangers=tuple(dangers),
        per_label_counts=dict(sorted(counts.items())),
        baseline_generation=baseline.generation,
        diagnostics=tuple(diagnostics),
    )
