"""Tagged program graph and the augmentation operations microsteps apply.

The graph is an AST-like structure over a resolved project: nodes are
program locations tagged with their construct kind, edges are tagged
relations (containment, inheritance, overriding, calls, field accesses).
Augmentation inserts or removes synthetic nodes so detectors can see
pending edits before any source changes.

Derived edges (OVERRIDES/CALLS/READS/WRITES) are recomputed from node
attributes after every mutation, which keeps add followed by remove an
exact inverse.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .errors import (
    AmbiguousTemplateError,
    MissingEnclosingClassError,
    UnknownLocationError,
)
from .jsub import (
    ReceiverKind,
    RefKind,
    ResolvedProject,
    SourceSpan,
    widening_cost,
)
from .templates import ClassTemplate, MethodTemplate, ParameterSpec, Signature


class NodeTag(Enum):
    PROJECT = "project"
    CLASS = "class"
    METHOD = "method"
    FIELD = "field"
    PARAMETER = "parameter"
    CALL_SITE = "call_site"
    FIELD_ACCESS = "field_access"


class RelationTag(Enum):
    CONTAINS = "contains"
    EXTENDS = "extends"
    OVERRIDES = "overrides"
    CALLS = "calls"
    READS = "reads"
    WRITES = "writes"
    HAS_PARAMETER = "has_parameter"
    OF_TYPE = "of_type"
    RETURNS = "returns"


# Member indexes for synthetic nodes start past any plausible source count,
# so declaration-order tie-breaks stay stable across augmentation.
_SYNTHETIC_INDEX_BASE = 1_000_000


@dataclass
class ProgramLocation:
    """One graph node. Treated as immutable once inserted.

    synthetic is True exactly when span is None: synthetic nodes model
    pending edits (and the project root) and have no source position.
    """

    id: str
    tag: NodeTag
    name: str
    span: SourceSpan | None
    attrs: dict
    synthetic: bool

    def __post_init__(self):
        if self.synthetic != (self.span is None):
            raise ValueError(f"synthetic flag must mirror span absence: {self.id}")

    def key(self) -> tuple:
        """Identity-plus-content tuple used for graph equality in tests."""
        return (
            self.id,
            self.tag.value,
            self.name,
            self.span,
            tuple(sorted(self.attrs.items())),
            self.synthetic,
        )


@dataclass(frozen=True)
class Relation:
    src: str
    dst: str
    tag: RelationTag


class ProgramGraph:
    """Mutable graph with referential integrity and a generation counter."""

    def __init__(self):
        self._nodes: dict[str, ProgramLocation] = {}
        self._edges: set[Relation] = set()
        self._out: dict[str, set[Relation]] = {}
        self._in: dict[str, set[Relation]] = {}
        self.generation = 0
        self._syn_counter = 0

    # -- plumbing --

    def __contains__(self, node_id: str) -> bool:
        return node_id in self._nodes

    def node(self, node_id: str) -> ProgramLocation:
        try:
            return self._nodes[node_id]
        except KeyError:
            raise UnknownLocationError(f"no such location: {node_id}") from None

    def nodes(self) -> list[ProgramLocation]:
        return [self._nodes[i] for i in sorted(self._nodes)]

    def edges(self) -> list[Relation]:
        return sorted(self._edges, key=lambda e: (e.src, e.dst, e.tag.value))

    def nodes_tagged(self, tag: NodeTag) -> list[ProgramLocation]:
        return [n for n in self.nodes() if n.tag is tag]

    def out_edges(self, src: str, tag: RelationTag | None = None) -> list[Relation]:
        found = self._out.get(src, ())
        return sorted(
            (e for e in found if tag is None or e.tag is tag),
            key=lambda e: (e.dst, e.tag.value),
        )

    def in_edges(self, dst: str, tag: RelationTag | None = None) -> list[Relation]:
        found = self._in.get(dst, ())
        return sorted(
            (e for e in found if tag is None or e.tag is tag),
            key=lambda e: (e.src, e.tag.value),
        )

    def _add_node(self, node: ProgramLocation) -> None:
        if node.id in self._nodes:
            raise ValueError(f"duplicate node id: {node.id}")
        self._nodes[node.id] = node

    def _add_edge(self, src: str, dst: str, tag: RelationTag) -> None:
        if src not in self._nodes or dst not in self._nodes:
            raise UnknownLocationError(f"edge endpoints missing: {src} -> {dst}")
        edge = Relation(src, dst, tag)
        if edge in self._edges:
            return
        self._edges.add(edge)
        self._out.setdefault(src, set()).add(edge)
        self._in.setdefault(dst, set()).add(edge)

    def _remove_edge(self, edge: Relation) -> None:
        self._edges.discard(edge)
        self._out.get(edge.src, set()).discard(edge)
        self._in.get(edge.dst, set()).discard(edge)

    def _remove_node(self, node_id: str) -> None:
        for edge in list(self._out.get(node_id, ())) + list(self._in.get(node_id, ())):
            self._remove_edge(edge)
        self._out.pop(node_id, None)
        self._in.pop(node_id, None)
        self._nodes.pop(node_id, None)

    def _fresh_id(self, base: str) -> str:
        if base not in self._nodes:
            return base
        k = 2
        while f"{base}~{k}" in self._nodes:
            k += 1
        return f"{base}~{k}"

    # -- structural queries --

    def project_id(self) -> str:
        return "project"

    def contains_children(self, node_id: str, tag: NodeTag | None = None) -> list[ProgramLocation]:
        kids = [self.node(e.dst) for e in self.out_edges(node_id, RelationTag.CONTAINS)]
        if tag is not None:
            kids = [k for k in kids if k.tag is tag]
        return kids

    def container_of(self, node_id: str) -> ProgramLocation | None:
        parents = self.in_edges(node_id, RelationTag.CONTAINS)
        return self.node(parents[0].src) if parents else None

    def class_by_name(self, name: str) -> ProgramLocation | None:
        """Stable lookup: first class node (by id order) with this name."""
        for n in self.nodes_tagged(NodeTag.CLASS):
            if n.name == name:
                return n
        return None

    def superclass_of(self, class_id: str) -> ProgramLocation | None:
        ext = self.out_edges(class_id, RelationTag.EXTENDS)
        return self.node(ext[0].dst) if ext else None

    def ancestors_of(self, class_id: str) -> list[ProgramLocation]:
        """Proper ancestors, nearest first. EXTENDS cycles are rejected at build."""
        out = []
        seen = {class_id}
        cur = self.superclass_of(class_id)
        while cur is not None and cur.id not in seen:
            out.append(cur)
            seen.add(cur.id)
            cur = self.superclass_of(cur.id)
        return out

    def descendants_of(self, class_id: str) -> list[ProgramLocation]:
        """Proper descendants, breadth-first, id-sorted within each level."""
        out = []
        frontier = [class_id]
        seen = {class_id}
        while frontier:
            nxt = []
            for cid in frontier:
                for e in self.in_edges(cid, RelationTag.EXTENDS):
                    if e.src not in seen:
                        seen.add(e.src)
                        out.append(self.node(e.src))
                        nxt.append(e.src)
            frontier = nxt
        return out

    def methods_of_class(self, class_id: str) -> list[ProgramLocation]:
        return self.contains_children(class_id, NodeTag.METHOD)

    def fields_of_class(self, class_id: str) -> list[ProgramLocation]:
        return self.contains_children(class_id, NodeTag.FIELD)

    def parameters_of(self, method_id: str) -> list[ProgramLocation]:
        params = [self.node(e.dst) for e in self.out_edges(method_id, RelationTag.HAS_PARAMETER)]
        return sorted(params, key=lambda p: p.attrs["index"])

    def signature_of(self, method_id: str) -> Signature:
        method = self.node(method_id)
        return Signature(
            method.name, tuple(p.attrs["type_name"] for p in self.parameters_of(method_id))
        )

    def class_of_member(self, member_id: str) -> ProgramLocation:
        owner = self.container_of(member_id)
        if owner is None or owner.tag is not NodeTag.CLASS:
            raise UnknownLocationError(f"not a class member: {member_id}")
        return owner

    def validate(self) -> None:
        """Referential-integrity check used by tests after each mutation."""
        for e in self._edges:
            assert e.src in self._nodes and e.dst in self._nodes, e
        for m in self.nodes_tagged(NodeTag.METHOD):
            assert len(self.out_edges(m.id, RelationTag.OVERRIDES)) <= 1, m.id

    # -- derived-edge recomputation --

    def _clear_derived_edges(self) -> None:
        derived = (RelationTag.OVERRIDES, RelationTag.CALLS, RelationTag.READS, RelationTag.WRITES)
        for edge in [e for e in self._edges if e.tag in derived]:
            self._remove_edge(edge)

    def _recompute_derived(self) -> None:
        self._clear_derived_edges()
        for method in self.nodes_tagged(NodeTag.METHOD):
            target = self._override_target(method)
            if target is not None:
                self._add_edge(method.id, target, RelationTag.OVERRIDES)
        for site in self.nodes_tagged(NodeTag.CALL_SITE):
            target = self._resolve_site_call(site)
            if target is not None:
                self._add_edge(site.id, target, RelationTag.CALLS)
        for access in self.nodes_tagged(NodeTag.FIELD_ACCESS):
            target = self._resolve_site_field(access)
            if target is not None:
                tag = (
                    RelationTag.WRITES
                    if access.attrs.get("access") == "write"
                    else RelationTag.READS
                )
                self._add_edge(access.id, target, tag)

    def _override_target(self, method: ProgramLocation) -> str | None:
        """Nearest ancestor method with identical signature, non-private ends.

        Static methods hide rather than override, and private methods do not
        take part in dynamic dispatch, so both are excluded on either end.
        """
        if method.attrs.get("is_static") or method.attrs.get("visibility") == "private":
            return None
        sig = self.signature_of(method.id)
        owner = self.class_of_member(method.id)
        for ancestor in self.ancestors_of(owner.id):
            candidates = [
                m
                for m in self.methods_of_class(ancestor.id)
                if self.signature_of(m.id) == sig
                and not m.attrs.get("is_static")
                and m.attrs.get("visibility") != "private"
            ]
            if candidates:
                return min(candidates, key=lambda m: m.id).id
        return None

    def _receiver_class(self, site: ProgramLocation) -> ProgramLocation | None:
        rtype = site.attrs.get("receiver_type")
        if rtype is None:
            return None
        return self.class_by_name(rtype)

    def _resolve_site_call(self, site: ProgramLocation) -> str | None:
        recv = self._receiver_class(site)
        if recv is None:
            return None
        hints = site.attrs.get("arg_hints", ())
        resolved = resolve_call(self, recv.id, site.name, hints)
        return resolved

    def _resolve_site_field(self, access: ProgramLocation) -> str | None:
        recv = self._receiver_class(access)
        if recv is None:
            return None
        for cls in [recv] + self.ancestors_of(recv.id):
            fields = [
                f
                for f in self.fields_of_class(cls.id)
                if f.name == access.name
                and (f.attrs.get("visibility") != "private" or cls.id == recv.id)
            ]
            if fields:
                return min(fields, key=lambda f: f.id).id
        return None


# ---------------------------------------------------------------------------
# Call resolution
# ---------------------------------------------------------------------------


def resolve_call(
    g: ProgramGraph,
    receiver_class_id: str,
    name: str,
    hints: tuple[str | None, ...],
    extra: tuple[tuple[str, Signature], ...] = (),
) -> str | None:
    """Static dispatch: pick the best matching method for a call.

    Candidates are the visible methods named `name` with matching arity in
    the receiver class and its ancestors; a same-signature declaration in a
    nearer class shadows farther ones. A None hint matches any parameter
    type at no cost. The winner minimizes (total widening cost, ancestor
    distance, declaration index); remaining ties break on id.

    `extra` injects hypothetical candidates as (class_id, signature) pairs,
    letting a detector ask how the call would resolve after a pending add;
    an extra candidate wins ties against an equally placed existing one
    only by strictly smaller cost. Returns the winning method id, the
    string "extra:<class_id>" for an injected winner, or None.
    """
    chain = [g.node(receiver_class_id)] + g.ancestors_of(receiver_class_id)
    shadowed: set[Signature] = set()
    candidates: list[tuple[int, int, int, str, Signature, bool]] = []
    for depth, cls in enumerate(chain):
        declared_here: set[Signature] = set()
        for method in g.methods_of_class(cls.id):
            sig = g.signature_of(method.id)
            if sig.name != name or len(sig.param_types) != len(hints):
                continue
            if method.attrs.get("visibility") == "private" and depth > 0:
                continue
            if sig in shadowed:
                continue
            declared_here.add(sig)
            candidates.append(
                (depth, method.attrs.get("member_index", 0), 0, method.id, sig, False)
            )
        for class_id, sig in extra:
            if class_id == cls.id and sig.name == name and len(sig.param_types) == len(hints):
                if sig not in shadowed:
                    declared_here.add(sig)
                    candidates.append((depth, _SYNTHETIC_INDEX_BASE, 1, class_id, sig, True))
        shadowed |= declared_here

    best: tuple | None = None
    for depth, member_index, extra_rank, ident, sig, is_extra in candidates:
        cost = 0
        ok = True
        for hint, ptype in zip(hints, sig.param_types):
            if hint is None:
                continue
            step = widening_cost(hint, ptype)
            if step is None:
                ok = False
                break
            cost += step
        if not ok:
            continue
        rank = (cost, depth, member_index, extra_rank, ident)
        if best is None or rank < best[0]:
            best = (rank, ident, is_extra)
    if best is None:
        return None
    _, ident, is_extra = best
    return f"extra:{ident}" if is_extra else ident


# ---------------------------------------------------------------------------
# Graph construction
# ---------------------------------------------------------------------------


def _method_base_id(class_name: str, sig: Signature) -> str:
    return f"method:{class_name}.{sig.name}({','.join(sig.param_types)})"


def build_graph(project: ResolvedProject) -> ProgramGraph:
    """Convert a resolved project into its program graph.

    Node ids are derived from qualified names in (file, span) order, so two
    builds of the same corpus produce identical graphs.
    """
    g = ProgramGraph()
    root = ProgramLocation(
        id="project", tag=NodeTag.PROJECT, name="project", span=None, attrs={}, synthetic=True
    )
    g._add_node(root)

    class_ids: dict[str, str] = {}
    for rc in project.classes.values():
        cid = g._fresh_id(f"class:{rc.name}")
        g._add_node(
            ProgramLocation(
                id=cid,
                tag=NodeTag.CLASS,
                name=rc.name,
                span=rc.ast.span,
                attrs={"is_abstract": rc.ast.is_abstract},
                synthetic=False,
            )
        )
        g._add_edge("project", cid, RelationTag.CONTAINS)
        class_ids[rc.name] = cid

    for rc in project.classes.values():
        if rc.superclass is not None:
            g._add_edge(class_ids[rc.name], class_ids[rc.superclass.name], RelationTag.EXTENDS)

    for rc in project.classes.values():
        cid = class_ids[rc.name]
        member_index = 0
        for f in rc.ast.fields:
            fid = g._fresh_id(f"field:{rc.name}.{f.name}")
            g._add_node(
                ProgramLocation(
                    id=fid,
                    tag=NodeTag.FIELD,
                    name=f.name,
                    span=f.span,
                    attrs={
                        "visibility": f.visibility,
                        "is_static": f.is_static,
                        "type_name": f.type_name,
                        "member_index": member_index,
                    },
                    synthetic=False,
                )
            )
            g._add_edge(cid, fid, RelationTag.CONTAINS)
            if f.type_name in class_ids:
                g._add_edge(fid, class_ids[f.type_name], RelationTag.OF_TYPE)
            member_index += 1
        for m in rc.ast.methods:
            sig = Signature(m.name, tuple(t for _, t in m.params))
            mid = g._fresh_id(_method_base_id(rc.name, sig))
            g._add_node(
                ProgramLocation(
                    id=mid,
                    tag=NodeTag.METHOD,
                    name=m.name,
                    span=m.span,
                    attrs={
                        "visibility": m.visibility,
                        "is_static": m.is_static,
                        "is_abstract": m.is_abstract,
                        "type_name": m.return_type,
                        "member_index": member_index,
                    },
                    synthetic=False,
                )
            )
            g._add_edge(cid, mid, RelationTag.CONTAINS)
            member_index += 1
            for i, (pname, ptype) in enumerate(m.params):
                pid = f"{mid}/p{i}"
                g._add_node(
                    ProgramLocation(
                        id=pid,
                        tag=NodeTag.PARAMETER,
                        name=pname,
                        span=m.span,
                        attrs={"type_name": ptype, "index": i},
                        synthetic=False,
                    )
                )
                g._add_edge(mid, pid, RelationTag.HAS_PARAMETER)
                if ptype in class_ids:
                    g._add_edge(pid, class_ids[ptype], RelationTag.OF_TYPE)
            if m.return_type in class_ids:
                g._add_edge(mid, class_ids[m.return_type], RelationTag.RETURNS)
            for k, ref in enumerate(m.body_refs):
                receiver_type = (
                    rc.name if ref.receiver_kind is ReceiverKind.IMPLICIT_THIS else ref.receiver_type
                )
                attrs = {
                    "receiver_kind": ref.receiver_kind.value,
                    "receiver_type": receiver_type,
                }
                if ref.receiver_name is not None:
                    attrs["receiver_name"] = ref.receiver_name
                if ref.kind is RefKind.CALL:
                    sid = f"{mid}/c{k}"
                    attrs["arg_hints"] = tuple(ref.arg_type_hints or ())
                    node_tag = NodeTag.CALL_SITE
                else:
                    sid = f"{mid}/a{k}"
                    attrs["access"] = "write" if ref.kind is RefKind.FIELD_WRITE else "read"
                    node_tag = NodeTag.FIELD_ACCESS
                g._add_node(
                    ProgramLocation(
                        id=sid,
                        tag=node_tag,
                        name=ref.member_name,
                        span=ref.span,
                        attrs=attrs,
                        synthetic=False,
                    )
                )
                g._add_edge(mid, sid, RelationTag.CONTAINS)

    g._recompute_derived()
    # Record which sites resolved at baseline so a later augmentation can be
    # told apart from a reference that never resolved.
    for site in g.nodes_tagged(NodeTag.CALL_SITE) + g.nodes_tagged(NodeTag.FIELD_ACCESS):
        resolved = bool(
            g.out_edges(site.id, RelationTag.CALLS)
            or g.out_edges(site.id, RelationTag.READS)
            or g.out_edges(site.id, RelationTag.WRITES)
        )
        site.attrs["build_resolved"] = resolved
    g.generation = 1
    return g


def snapshot(g: ProgramGraph) -> ProgramGraph:
    """Independent copy; mutations to the copy never affect the original."""
    copy = ProgramGraph()
    for node in g.nodes():
        copy._add_node(replace(node, attrs=dict(node.attrs)))
    for edge in g.edges():
        copy._add_edge(edge.src, edge.dst, edge.tag)
    copy.generation = g.generation
    copy._syn_counter = g._syn_counter
    return copy


def graphs_equal(a: ProgramGraph, b: ProgramGraph) -> bool:
    """Node-set and edge-set equality, ignoring the generation counter."""
    return {n.key() for n in a.nodes()} == {n.key() for n in b.nodes()} and set(
        a._edges
    ) == set(b._edges)


# ---------------------------------------------------------------------------
# Augmentation
# ---------------------------------------------------------------------------


def add_class_node(g: ProgramGraph, t: ClassTemplate) -> ProgramLocation:
    """Insert a synthetic class under the project root."""
    g._syn_counter += 1
    cid = g._fresh_id(f"syn:{g._syn_counter}:class:{t.name}")
    attrs: dict = {"is_abstract": t.is_abstract, "describe": t.describe()}
    superclass = g.class_by_name(t.superclass_name) if t.superclass_name else None
    if t.superclass_name and superclass is None:
        attrs["unresolved_superclass"] = t.superclass_name
    node = ProgramLocation(
        id=cid, tag=NodeTag.CLASS, name=t.name, span=None, attrs=attrs, synthetic=True
    )
    g._add_node(node)
    g._add_edge("project", cid, RelationTag.CONTAINS)
    if superclass is not None:
        g._add_edge(cid, superclass.id, RelationTag.EXTENDS)
    g._recompute_derived()
    g.generation += 1
    return node


def add_method_node(g: ProgramGraph, t: MethodTemplate) -> ProgramLocation:
    """Insert a synthetic method described by the template.

    The enclosing class must already exist (it may itself be synthetic).
    Override edges and call resolution are recomputed for the whole graph.
    """
    owner = g.class_by_name(t.enclosing.name)
    if owner is None:
        raise MissingEnclosingClassError(
            f"no class named {t.enclosing.name} to receive {t.signature().render()}"
        )
    g._syn_counter += 1
    sig = t.signature()
    mid = g._fresh_id(f"syn:{g._syn_counter}:{_method_base_id(t.enclosing.name, sig)}")
    node = ProgramLocation(
        id=mid,
        tag=NodeTag.METHOD,
        name=t.name,
        span=None,
        attrs={
            "visibility": t.visibility,
            "is_static": t.is_static,
            "is_abstract": t.is_abstract,
            "type_name": t.return_type,
            "member_index": _SYNTHETIC_INDEX_BASE + g._syn_counter,
            "describe": t.describe(),
        },
        synthetic=True,
    )
    g._add_node(node)
    g._add_edge(owner.id, mid, RelationTag.CONTAINS)
    for i, p in enumerate(t.params):
        pid = f"{mid}/p{i}"
        g._add_node(
            ProgramLocation(
                id=pid,
                tag=NodeTag.PARAMETER,
                name=p.name,
                span=None,
                attrs={"type_name": p.type_name, "index": i},
                synthetic=True,
            )
        )
        g._add_edge(mid, pid, RelationTag.HAS_PARAMETER)
        ptype_class = g.class_by_name(p.type_name)
        if ptype_class is not None:
            g._add_edge(pid, ptype_class.id, RelationTag.OF_TYPE)
    if t.return_type != "void":
        rclass = g.class_by_name(t.return_type)
        if rclass is not None:
            g._add_edge(mid, rclass.id, RelationTag.RETURNS)
    g._recompute_derived()
    g.generation += 1
    return node


def remove_method_node(g: ProgramGraph, loc: ProgramLocation | str) -> None:
    """Remove a method, its parameters and body sites, and incident edges."""
    mid = loc if isinstance(loc, str) else loc.id
    node = g.node(mid)
    if node.tag is not NodeTag.METHOD:
        raise UnknownLocationError(f"not a method location: {mid}")
    for child in g.parameters_of(mid) + g.contains_children(mid):
        g._remove_node(child.id)
    g._remove_node(mid)
    g._recompute_derived()
    g.generation += 1


# ---------------------------------------------------------------------------
# Template resolution and hydration
# ---------------------------------------------------------------------------


def resolve_template(
    g: ProgramGraph, t: MethodTemplate | ClassTemplate
) -> ProgramLocation | None:
    """Find the unique existing location matching a template, if any.

    Methods match on (enclosing class name, name, parameter types); classes
    match on name. More than one match raises AmbiguousTemplateError.
    """
    if isinstance(t, ClassTemplate):
        matches = [n for n in g.nodes_tagged(NodeTag.CLASS) if n.name == t.name]
    else:
        sig = t.signature()
        matches = [
            m
            for m in g.nodes_tagged(NodeTag.METHOD)
            if m.name == t.name
            and g.signature_of(m.id) == sig
            and g.class_of_member(m.id).name == t.enclosing.name
        ]
    if not matches:
        return None
    if len(matches) > 1:
        raise AmbiguousTemplateError(
            f"template {t.describe()} matches {len(matches)} locations: "
            + ", ".join(m.id for m in matches)
        )
    return matches[0]


def method_template_of(g: ProgramGraph, method_id: str) -> MethodTemplate:
    """Rebuild the full template of an existing method node."""
    m = g.node(method_id)
    owner = g.class_of_member(method_id)
    params = tuple(
        ParameterSpec(name=p.name, type_name=p.attrs["type_name"])
        for p in g.parameters_of(method_id)
    )
    return MethodTemplate(
        name=m.name,
        params=params,
        enclosing=ClassTemplate(
            owner.name, superclass_name=None, is_abstract=bool(owner.attrs.get("is_abstract"))
        ),
        visibility=m.attrs.get("visibility", "public"),
        is_static=bool(m.attrs.get("is_static")),
        is_abstract=bool(m.attrs.get("is_abstract")),
        return_type=m.attrs.get("type_name", "void"),
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def dump_graph(g: ProgramGraph) -> dict:
    """JSON-ready form, sorted by id; bit-stable across runs."""
    nodes = []
    for n in g.nodes():
        attrs = {
            k: (list(v) if isinstance(v, tuple) else v) for k, v in sorted(n.attrs.items())
        }
        nodes.append(
            {
                "id": n.id,
                "tag": n.tag.value,
                "name": n.name,
                "file": n.span.file if n.span else None,
                "line": n.span.start_line if n.span else None,
                "attrs": attrs,
            }
        )
    edges = [
        {"src": e.src, "dst": e.dst, "tag": e.tag.value}
        for e in g.edges()
    ]
    return {"nodes": nodes, "edges": edges}
