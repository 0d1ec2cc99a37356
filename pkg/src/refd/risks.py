"""Catalog of potential risks and the detectors that confirm them.

Each detector maps (subject template, graph snapshot) to an actual risk:
the set of program locations where the hazard is manifest. An empty set
means the potential risk is not actual in this codebase; no separate
boolean is kept. Detectors are pure and never mutate the snapshot.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import UnresolvableTemplateError
from .graph import (
    NodeTag,
    ProgramGraph,
    ProgramLocation,
    RelationTag,
    remove_method_node,
    resolve_call,
    resolve_template,
    snapshot,
)
from .jsub import SourceSpan
from .query import (
    LocationSet,
    any_set,
    call_site_set,
    chain,
    class_set,
    classes_by_name,
    gen_program_classes,
    local_context_refs,
    method_set,
    methods_matching,
    methods_of,
    overridden_by_direct,
    overrides_of,
    callers_of,
    subclasses,
    superclasses,
)
from .templates import ClassTemplate, MethodTemplate, Signature

# label -> (detector name, risk description shown in reports)
CATALOG: dict[str, tuple[str, str]] = {
    "AM-1": (
        "DoubleDefinition.Method",
        "Method to add is already defined in context of target location",
    ),
    "AM-2": (
        "BrokenSubTyping.Method",
        "Method to add is defined in superclass of context as well, "
        "thus overriding that method in context",
    ),
    "AM-3": (
        "CorrespondingSubclassSpecification.Method",
        "When adding a method, and a method with the same signature exists in one or "
        "more subclasses, its specification might not correspond to these existing methods",
    ),
    "AM-4": (
        "OverloadParameterConversion.Method",
        "Method to add overloads existing method but parameter types precede in "
        "automatic type conversion rules, thus leading to previous calls to the "
        "existing method now calling the new method unintentionally",
    ),
    "RM-1": ("MissingDefinition.Method", "Method still called after removal"),
    "RM-2": (
        "RemovedConcreteOverride.Method",
        "Override method is removed, thus defaulting to super implementation",
    ),
    "RM-3": (
        "LostSpecification.Method",
        "When method is removed, methods overriding it will not have a "
        "specification anymore to adhere to",
    ),
    "RM-4": (
        "MissingSuperImplementation.Method",
        "Method to be removed is concrete and not all of the containing class's "
        "subclasses have an override implementation, thus leading to possible "
        "missing implementations",
    ),
    "RM-5": (
        "MissingAbstractImplementation.Method",
        "Method to be removed implements abstract method in concrete class, "
        "while its implementation is mandatory",
    ),
    "MM-1": (
        "BrokenLocalReferences.Method",
        "Method body contains references to elements from the local context "
        "(current class and superclasses), such as fields and methods",
    ),
    "AC-1": (
        "DoubleDefinition.Class",
        "Class to add is already defined in context of target location",
    ),
}


@dataclass(frozen=True)
class PotentialRisk:
    """A hazard a microstep can introduce, independent of any codebase."""

    label: str
    name: str
    description: str
    subject: MethodTemplate | ClassTemplate


def potential_risk(label: str, subject: MethodTemplate | ClassTemplate) -> PotentialRisk:
    name, description = CATALOG[label]
    return PotentialRisk(label=label, name=name, description=description, subject=subject)


@dataclass(frozen=True)
class LocationRecord:
    """Report-ready view of one offending location.

    Captured when the detector runs, so later graph mutations cannot lose
    the position. Synthetic locations have no span and carry the template
    description instead. `qualified` is a stable human-readable identity
    such as Sub.method(Source) or Source.local.
    """

    id: str
    tag: str
    name: str
    qualified: str
    span: SourceSpan | None
    synthetic_desc: str | None

    @classmethod
    def of(cls, g: ProgramGraph, node: ProgramLocation) -> LocationRecord:
        return cls(
            id=node.id,
            tag=node.tag.value,
            name=node.name,
            qualified=_qualified_name(g, node),
            span=node.span,
            synthetic_desc=node.attrs.get("describe", node.id) if node.synthetic else None,
        )

    def sort_key(self) -> tuple:
        if self.span is None:
            return (1, "", 0, 0, self.synthetic_desc or self.id)
        return (0, self.span.file, self.span.start_line, self.span.start_col, self.id)


def _qualified_name(g: ProgramGraph, node: ProgramLocation) -> str:
    if node.tag is NodeTag.CLASS:
        return node.name
    if node.tag is NodeTag.METHOD:
        owner = g.class_of_member(node.id)
        return f"{owner.name}.{g.signature_of(node.id).render()}"
    if node.tag is NodeTag.FIELD:
        owner = g.class_of_member(node.id)
        return f"{owner.name}.{node.name}"
    if node.tag in (NodeTag.CALL_SITE, NodeTag.FIELD_ACCESS):
        method = g.container_of(node.id)
        if method is not None:
            return f"{_qualified_name(g, method)}#{node.name}"
    return node.name


@dataclass(frozen=True)
class ActualRisk:
    """Detector output: a potential risk plus where it is manifest."""

    risk: PotentialRisk
    locations: LocationSet
    records: tuple[LocationRecord, ...]
    microstep_id: str | None = None

    @property
    def is_actual(self) -> bool:
        return not self.locations.is_empty()

    def with_microstep(self, microstep_id: str) -> ActualRisk:
        return replace(self, microstep_id=microstep_id)


def _actual(label: str, subject, locations: LocationSet) -> ActualRisk:
    g = locations.graph
    records = tuple(
        sorted(
            (LocationRecord.of(g, g.node(i)) for i in locations.members),
            key=lambda r: r.sort_key(),
        )
    )
    return ActualRisk(risk=potential_risk(label, subject), locations=locations, records=records)


def _required_class(g: ProgramGraph, t: ClassTemplate) -> ProgramLocation:
    owner = g.class_by_name(t.name)
    if owner is None:
        raise UnresolvableTemplateError(f"no class named {t.name} in the graph")
    return owner


def _required_method(g: ProgramGraph, t: MethodTemplate) -> ProgramLocation:
    node = resolve_template(g, t)
    if node is None:
        raise UnresolvableTemplateError(f"{t.describe()} does not exist in the graph")
    return node


# ---------------------------------------------------------------------------
# DoubleDefinition (shared by AM-1 and AC-1, parameterized by construct kind)
# ---------------------------------------------------------------------------


def detect_double_definition(
    subject: MethodTemplate | ClassTemplate, g: ProgramGraph
) -> LocationSet:
    """Locations already defining the subject in its target context."""
    if isinstance(subject, ClassTemplate):
        return chain(gen_program_classes(g), [classes_by_name(subject.name)])
    owner = _required_class(g, subject.enclosing)
    return chain(
        class_set(g, {owner.id}),
        [methods_of(), methods_matching(subject.signature())],
    )


def detect_am1_double_definition_method(t: MethodTemplate, g: ProgramGraph) -> ActualRisk:
    return _actual("AM-1", t, detect_double_definition(t, g))


def detect_ac1_double_definition_class(t: ClassTemplate, g: ProgramGraph) -> ActualRisk:
    return _actual("AC-1", t, detect_double_definition(t, g))


# ---------------------------------------------------------------------------
# AddMethod risks
# ---------------------------------------------------------------------------


def detect_am2_broken_subtyping(t: MethodTemplate, g: ProgramGraph) -> ActualRisk:
    """Non-private same-signature methods in proper ancestors of the target."""
    owner = _required_class(g, t.enclosing)
    found = chain(
        class_set(g, {owner.id}),
        [superclasses(), methods_of(), methods_matching(t.signature())],
    )
    kept = [i for i in found.members if g.node(i).attrs.get("visibility") != "private"]
    return _actual("AM-2", t, method_set(g, kept))


def detect_am3_corresponding_subclass_specification(
    t: MethodTemplate, g: ProgramGraph
) -> ActualRisk:
    """Same-signature methods in proper descendants of the target class."""
    owner = _required_class(g, t.enclosing)
    found = chain(
        class_set(g, {owner.id}),
        [subclasses(), methods_of(), methods_matching(t.signature())],
    )
    return _actual("AM-3", t, found)


def detect_am4_overload_parameter_conversion(t: MethodTemplate, g: ProgramGraph) -> ActualRisk:
    """Call sites the new overload would capture from an existing method.

    A site is flagged when it currently resolves to a same-name, same-arity
    method with a different signature, the new method would be visible to
    the call's receiver type, and re-resolution with the new method in
    place picks the new method.
    """
    owner = _required_class(g, t.enclosing)
    sig = t.signature()
    owner_ancestor_cache: dict[str, bool] = {}

    def sees_new_method(recv_id: str) -> bool:
        if recv_id not in owner_ancestor_cache:
            ancestor_ids = {a.id for a in g.ancestors_of(recv_id)}
            owner_ancestor_cache[recv_id] = owner.id == recv_id or owner.id in ancestor_ids
        return owner_ancestor_cache[recv_id]

    flagged = set()
    for site in g.nodes_tagged(NodeTag.CALL_SITE):
        if site.name != t.name:
            continue
        hints = tuple(site.attrs.get("arg_hints", ()))
        if len(hints) != len(sig.param_types):
            continue
        current = g.out_edges(site.id, RelationTag.CALLS)
        if not current:
            continue
        if g.signature_of(current[0].dst) == sig:
            continue  # same signature is a double definition, not an overload capture
        recv = g.class_by_name(site.attrs.get("receiver_type") or "")
        if recv is None or not sees_new_method(recv.id):
            continue
        if t.visibility == "private" and recv.id != owner.id:
            continue
        winner = resolve_call(g, recv.id, t.name, hints, extra=((owner.id, sig),))
        if winner == f"extra:{owner.id}":
            flagged.add(site.id)
    return _actual("AM-4", t, call_site_set(g, flagged))


# ---------------------------------------------------------------------------
# RemoveMethod risks
# ---------------------------------------------------------------------------


def detect_rm1_missing_definition(t: MethodTemplate, g: ProgramGraph) -> ActualRisk:
    """Call sites whose calls resolve to the method being removed."""
    target = _required_method(g, t)
    return _actual("RM-1", t, chain(method_set(g, {target.id}), [callers_of()]))


def detect_rm2_removed_concrete_override(t: MethodTemplate, g: ProgramGraph) -> ActualRisk:
    """The ancestor implementation calls would silently fall back to."""
    target = _required_method(g, t)
    if target.attrs.get("is_abstract"):
        return _actual("RM-2", t, method_set(g, ()))
    found = chain(method_set(g, {target.id}), [overridden_by_direct()])
    return _actual("RM-2", t, found)


def detect_rm3_lost_specification(t: MethodTemplate, g: ProgramGraph) -> ActualRisk:
    """Descendant methods whose override chain passes through the subject."""
    target = _required_method(g, t)
    return _actual("RM-3", t, chain(method_set(g, {target.id}), [overrides_of()]))


def _nearest_declaration(
    g: ProgramGraph, class_id: str, sig: Signature
) -> ProgramLocation | None:
    """Nearest declaration of sig visible from class_id (private only locally)."""
    for cls in [g.node(class_id)] + g.ancestors_of(class_id):
        decls = [
            m
            for m in g.methods_of_class(cls.id)
            if g.signature_of(m.id) == sig
            and (m.attrs.get("visibility") != "private" or cls.id == class_id)
        ]
        if decls:
            return min(decls, key=lambda m: m.id)
    return None


def detect_rm4_missing_super_implementation(t: MethodTemplate, g: ProgramGraph) -> ActualRisk:
    """Subclasses left without any concrete declaration once the subject goes.

    The condition is counterfactual, so it is evaluated on a scratch copy
    with the removal applied.
    """
    target = _required_method(g, t)
    if target.attrs.get("is_abstract"):
        return _actual("RM-4", t, class_set(g, ()))
    owner = g.class_of_member(target.id)
    sig = g.signature_of(target.id)
    scratch = snapshot(g)
    remove_method_node(scratch, target.id)
    flagged = []
    for desc in g.descendants_of(owner.id):
        declares = any(
            scratch.signature_of(m.id) == sig for m in scratch.methods_of_class(desc.id)
        )
        if declares:
            continue
        nearest = _nearest_declaration(scratch, desc.id, sig)
        if nearest is None or nearest.attrs.get("is_abstract"):
            flagged.append(desc.id)
    return _actual("RM-4", t, class_set(g, flagged))


def detect_rm5_missing_abstract_implementation(t: MethodTemplate, g: ProgramGraph) -> ActualRisk:
    """Abstract ancestor declarations left unsatisfied somewhere below them."""
    target = _required_method(g, t)
    owner = g.class_of_member(target.id)
    sig = g.signature_of(target.id)
    abstract_decls = [
        m
        for ancestor in g.ancestors_of(owner.id)
        for m in g.methods_of_class(ancestor.id)
        if g.signature_of(m.id) == sig and m.attrs.get("is_abstract")
    ]
    if not abstract_decls:
        return _actual("RM-5", t, method_set(g, ()))
    scratch = snapshot(g)
    remove_method_node(scratch, target.id)
    flagged = []
    for decl in abstract_decls:
        declaring_class = g.class_of_member(decl.id)
        for below in g.descendants_of(declaring_class.id):
            if below.attrs.get("is_abstract"):
                continue
            nearest = _nearest_declaration(scratch, below.id, sig)
            if nearest is None or nearest.attrs.get("is_abstract"):
                flagged.append(decl.id)
                break
    return _actual("RM-5", t, method_set(g, flagged))


# ---------------------------------------------------------------------------
# MoveMethod risk
# ---------------------------------------------------------------------------


def _accessible_from(g: ProgramGraph, member: ProgramLocation, dst_class_name: str) -> bool:
    visibility = member.attrs.get("visibility", "public")
    if visibility in ("public", "package"):
        return True  # single project-wide namespace: package access always works
    declaring = g.class_of_member(member.id)
    if visibility == "private":
        return declaring.name == dst_class_name
    dst = g.class_by_name(dst_class_name)
    if dst is None:
        return declaring.name == dst_class_name
    return dst.id == declaring.id or declaring.id in {a.id for a in g.ancestors_of(dst.id)}


def detect_mm1_broken_local_references(
    src: MethodTemplate, dst: MethodTemplate, g: ProgramGraph
) -> ActualRisk:
    """Local-context members the body uses that the destination cannot reach."""
    method = _required_method(g, src)
    refs = chain(method_set(g, {method.id}), [local_context_refs()])
    broken = [
        i for i in refs.members if not _accessible_from(g, g.node(i), dst.enclosing.name)
    ]
    return _actual("MM-1", src, any_set(g, broken))


# ---------------------------------------------------------------------------
# Dispatch used by the analyzer
# ---------------------------------------------------------------------------


def run_detector(
    risk: PotentialRisk,
    g: ProgramGraph,
    destination: MethodTemplate | None = None,
) -> ActualRisk:
    """Run the detector for a risk label against a graph snapshot."""
    label, subject = risk.label, risk.subject
    if label == "AM-1":
        return detect_am1_double_definition_method(subject, g)
    if label == "AM-2":
        return detect_am2_broken_subtyping(subject, g)
    if label == "AM-3":
        return detect_am3_corresponding_subclass_specification(subject, g)
    if label == "AM-4":
        return detect_am4_overload_parameter_conversion(subject, g)
    if label == "RM-1":
        return detect_rm1_missing_definition(subject, g)
    if label == "RM-2":
        return detect_rm2_removed_concrete_override(subject, g)
    if label == "RM-3":
        return detect_rm3_lost_specification(subject, g)
    if label == "RM-4":
        return detect_rm4_missing_super_implementation(subject, g)
    if label == "RM-5":
        return detect_rm5_missing_abstract_implementation(subject, g)
    if label == "MM-1":
        if destination is None:
            raise ValueError("MM-1 needs the destination template")
        return detect_mm1_broken_local_references(subject, destination, g)
    if label == "AC-1":
        return detect_ac1_double_definition_class(subject, g)
    raise ValueError(f"unknown risk label: {label}")
