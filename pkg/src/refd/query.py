"""Strictly layered query substrate over the program graph.

Generators seed a query with a typed set of locations; subdetectors map a
typed location set to another typed location set and can be chained. Kind
checking happens when a chain is assembled, before anything executes, so
an ill-typed composition fails fast instead of producing a mixed result.
All queries are pure: they never mutate the graph they read.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

from .errors import KindMismatchError
from .graph import NodeTag, ProgramGraph, RelationTag
from .templates import Signature


class SetKind(Enum):
    CLASS = "class"
    METHOD = "method"
    FIELD = "field"
    CALL_SITE = "call_site"
    ANY = "any"

    def allows(self, tag: NodeTag) -> bool:
        if self is SetKind.ANY:
            return tag in (NodeTag.CLASS, NodeTag.METHOD, NodeTag.FIELD, NodeTag.CALL_SITE)
        return tag.value == self.value

    def accepts(self, other: SetKind) -> bool:
        """Whether a set of kind `other` may flow into an input of this kind."""
        return self is SetKind.ANY or self is other


@dataclass(eq=False)
class LocationSet:
    """Typed, unordered set of location ids bound to the graph they query."""

    kind: SetKind
    members: frozenset[str]
    graph: ProgramGraph

    def __post_init__(self):
        self.members = frozenset(self.members)
        for node_id in self.members:
            tag = self.graph.node(node_id).tag
            if not self.kind.allows(tag):
                raise ValueError(f"{node_id} ({tag.value}) not allowed in a {self.kind.value} set")

    def ids(self) -> set[str]:
        return set(self.members)

    def names(self) -> set[str]:
        return {self.graph.node(i).name for i in self.members}

    def is_empty(self) -> bool:
        return not self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))


def class_set(g: ProgramGraph, ids) -> LocationSet:
    return LocationSet(SetKind.CLASS, frozenset(ids), g)


def method_set(g: ProgramGraph, ids) -> LocationSet:
    return LocationSet(SetKind.METHOD, frozenset(ids), g)


def field_set(g: ProgramGraph, ids) -> LocationSet:
    return LocationSet(SetKind.FIELD, frozenset(ids), g)


def call_site_set(g: ProgramGraph, ids) -> LocationSet:
    return LocationSet(SetKind.CALL_SITE, frozenset(ids), g)


def any_set(g: ProgramGraph, ids) -> LocationSet:
    return LocationSet(SetKind.ANY, frozenset(ids), g)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    """Starting point of a query: produces the seed location set."""

    name: str
    output_kind: SetKind
    produce: Callable[[ProgramGraph], LocationSet]

    def __call__(self, g: ProgramGraph) -> LocationSet:
        return self.produce(g)


def _gen_program_classes(g: ProgramGraph) -> LocationSet:
    return class_set(g, (n.id for n in g.nodes_tagged(NodeTag.CLASS)))


def _gen_instance_methods(g: ProgramGraph) -> LocationSet:
    return method_set(
        g, (n.id for n in g.nodes_tagged(NodeTag.METHOD) if not n.attrs.get("is_static"))
    )


program_classes = Generator("program_classes", SetKind.CLASS, _gen_program_classes)
instance_methods = Generator("instance_methods", SetKind.METHOD, _gen_instance_methods)


def gen_program_classes(g: ProgramGraph) -> LocationSet:
    """All class locations in the program."""
    return program_classes(g)


def gen_instance_methods(g: ProgramGraph) -> LocationSet:
    """All non-static method locations in the program."""
    return instance_methods(g)


# ---------------------------------------------------------------------------
# Subdetectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subdetector:
    """Pure location-set-to-location-set query step."""

    name: str
    input_kind: SetKind
    output_kind: SetKind
    fn: Callable[[LocationSet], frozenset[str]] = field(repr=False)

    def apply(self, locations: LocationSet) -> LocationSet:
        if not self.input_kind.accepts(locations.kind):
            raise KindMismatchError(
                f"subdetector {self.name} expects a {self.input_kind.value} set, "
                f"got a {locations.kind.value} set"
            )
        return LocationSet(self.output_kind, self.fn(locations), locations.graph)


def _closure(g: ProgramGraph, seed: frozenset[str], step) -> frozenset[str]:
    """Everything reachable from the seed by repeatedly applying step."""
    out: set[str] = set()
    frontier = list(seed)
    while frontier:
        nxt = []
        for node_id in frontier:
            for found in step(node_id):
                if found not in out:
                    out.add(found)
                    nxt.append(found)
        frontier = nxt
    return frozenset(out)


def classes_by_name(name: str) -> Subdetector:
    def fn(locs: LocationSet) -> frozenset[str]:
        g = locs.graph
        return frozenset(i for i in locs.members if g.node(i).name == name)

    return Subdetector(f"classes_by_name[{name}]", SetKind.CLASS, SetKind.CLASS, fn)


def methods_of() -> Subdetector:
    def fn(locs: LocationSet) -> frozenset[str]:
        g = locs.graph
        out: set[str] = set()
        for cid in locs.members:
            out.update(m.id for m in g.methods_of_class(cid))
        return frozenset(out)

    return Subdetector("methods_of", SetKind.CLASS, SetKind.METHOD, fn)


def fields_of() -> Subdetector:
    def fn(locs: LocationSet) -> frozenset[str]:
        g = locs.graph
        out: set[str] = set()
        for cid in locs.members:
            out.update(f.id for f in g.fields_of_class(cid))
        return frozenset(out)

    return Subdetector("fields_of", SetKind.CLASS, SetKind.FIELD, fn)


def superclasses() -> Subdetector:
    def fn(locs: LocationSet) -> frozenset[str]:
        g = locs.graph
        out: set[str] = set()
        for cid in locs.members:
            out.update(a.id for a in g.ancestors_of(cid))
        return frozenset(out)

    return Subdetector("superclasses", SetKind.CLASS, SetKind.CLASS, fn)


def superclasses_direct() -> Subdetector:
    def fn(locs: LocationSet) -> frozenset[str]:
        g = locs.graph
        out: set[str] = set()
        for cid in locs.members:
            parent = g.superclass_of(cid)
            if parent is not None:
                out.add(parent.id)
        return frozenset(out)

    return Subdetector("superclasses_direct", SetKind.CLASS, SetKind.CLASS, fn)


def subclasses() -> Subdetector:
    def fn(locs: LocationSet) -> frozenset[str]:
        g = locs.graph
        out: set[str] = set()
        for cid in locs.members:
            out.update(d.id for d in g.descendants_of(cid))
        return frozenset(out)

    return Subdetector("subclasses", SetKind.CLASS, SetKind.CLASS, fn)


def subclasses_direct() -> Subdetector:
    def fn(locs: LocationSet) -> frozenset[str]:
        g = locs.graph
        out: set[str] = set()
        for cid in locs.members:
            out.update(e.src for e in g.in_edges(cid, RelationTag.EXTENDS))
        return frozenset(out)

    return Subdetector("subclasses_direct", SetKind.CLASS, SetKind.CLASS, fn)


def methods_matching(sig: Signature) -> Subdetector:
    def fn(locs: LocationSet) -> frozenset[str]:
        g = locs.graph
        return frozenset(i for i in locs.members if g.signature_of(i) == sig)

    return Subdetector(f"methods_matching[{sig.render()}]", SetKind.METHOD, SetKind.METHOD, fn)


def overridden_by() -> Subdetector:
    """Methods the input methods override, transitively (OVERRIDES targets)."""

    def fn(locs: LocationSet) -> frozenset[str]:
        g = locs.graph
        return _closure(
            g,
            locs.members,
            lambda i: [e.dst for e in g.out_edges(i, RelationTag.OVERRIDES)],
        )

    return Subdetector("overridden_by", SetKind.METHOD, SetKind.METHOD, fn)


def overridden_by_direct() -> Subdetector:
    def fn(locs: LocationSet) -> frozenset[str]:
        g = locs.graph
        out: set[str] = set()
        for i in locs.members:
            out.update(e.dst for e in g.out_edges(i, RelationTag.OVERRIDES))
        return frozenset(out)

    return Subdetector("overridden_by_direct", SetKind.METHOD, SetKind.METHOD, fn)


def overrides_of() -> Subdetector:
    """Methods that override the input methods, transitively (OVERRIDES sources)."""

    def fn(locs: LocationSet) -> frozenset[str]:
        g = locs.graph
        return _closure(
            g,
            locs.members,
            lambda i: [e.src for e in g.in_edges(i, RelationTag.OVERRIDES)],
        )

    return Subdetector("overrides_of", SetKind.METHOD, SetKind.METHOD, fn)


def overrides_of_direct() -> Subdetector:
    def fn(locs: LocationSet) -> frozenset[str]:
        g = locs.graph
        out: set[str] = set()
        for i in locs.members:
            out.update(e.src for e in g.in_edges(i, RelationTag.OVERRIDES))
        return frozenset(out)

    return Subdetector("overrides_of_direct", SetKind.METHOD, SetKind.METHOD, fn)


def callers_of() -> Subdetector:
    def fn(locs: LocationSet) -> frozenset[str]:
        g = locs.graph
        out: set[str] = set()
        for i in locs.members:
            out.update(e.src for e in g.in_edges(i, RelationTag.CALLS))
        return frozenset(out)

    return Subdetector("callers_of", SetKind.METHOD, SetKind.CALL_SITE, fn)


def local_context_refs() -> Subdetector:
    """Fields/methods of the enclosing class or ancestors that each input
    method's body reads, writes, or calls through the implicit receiver."""

    def fn(locs: LocationSet) -> frozenset[str]:
        g = locs.graph
        out: set[str] = set()
        for mid in locs.members:
            owner = g.class_of_member(mid)
            context = {owner.id} | {a.id for a in g.ancestors_of(owner.id)}
            for site in g.contains_children(mid):
                if site.attrs.get("receiver_kind") != "this":
                    continue
                for tag in (RelationTag.CALLS, RelationTag.READS, RelationTag.WRITES):
                    for e in g.out_edges(site.id, tag):
                        if g.class_of_member(e.dst).id in context:
                            out.add(e.dst)
        return frozenset(out)

    return Subdetector("local_context_refs", SetKind.METHOD, SetKind.ANY, fn)


# ---------------------------------------------------------------------------
# Chaining
# ---------------------------------------------------------------------------


def chain(seed: LocationSet, subs: list[Subdetector]) -> LocationSet:
    """Apply subdetectors in order; adjacent kinds are checked up front."""
    kind = seed.kind
    for i, sub in enumerate(subs):
        if not sub.input_kind.accepts(kind):
            prev = subs[i - 1].name if i else "the seed set"
            raise KindMismatchError(
                f"cannot chain {prev} ({kind.value}) into {sub.name} "
                f"({sub.input_kind.value})"
            )
        kind = sub.output_kind
    out = seed
    for sub in subs:
        out = sub.apply(out)
    return out
