"""Templates describe syntax constructs that may or may not exist yet.

A template carries every defining feature of a method or class so it can
either be matched against the graph (does this exist?) or used to create a
synthetic node for a pending edit.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple


class Signature(NamedTuple):
    """Method identity: name plus ordered parameter type names.

    Return type and visibility are deliberately excluded, mirroring Java
    override/overload rules.
    """

    name: str
    param_types: tuple[str, ...]

    def render(self) -> str:
        return f"{self.name}({', '.join(self.param_types)})"


@dataclass(frozen=True)
class ParameterSpec:
    name: str
    type_name: str

    def __post_init__(self):
        if not self.type_name:
            raise ValueError("parameter type_name must be nonempty")


@dataclass(frozen=True)
class ClassTemplate:
    name: str
    superclass_name: str | None = None
    is_abstract: bool = False

    def __post_init__(self):
        if not self.name:
            raise ValueError("class template name must be nonempty")

    def describe(self) -> str:
        return f"class {self.name}"


@dataclass(frozen=True)
class MethodTemplate:
    name: str
    params: tuple[ParameterSpec, ...]
    enclosing: ClassTemplate
    visibility: str = "public"
    is_static: bool = False
    is_abstract: bool = False
    return_type: str = "void"

    def signature(self) -> Signature:
        return Signature(self.name, tuple(p.type_name for p in self.params))

    def describe(self) -> str:
        return f"method {self.signature().render()} in {self.enclosing.describe()}"

    def with_enclosing(self, enclosing: ClassTemplate) -> MethodTemplate:
        return replace(self, enclosing=enclosing)


def method_selector(template: MethodTemplate) -> str:
    """Render a template as a Class.name(type,...) selector string."""
    return f"{template.enclosing.name}.{template.signature().render().replace(', ', ',')}"


def parse_method_selector(selector: str) -> MethodTemplate:
    """Parse a Class.name(type,...) selector into a bare method template.

    The resulting template carries identity only (enclosing class, name,
    parameter types); visibility and the rest use defaults and are hydrated
    from the graph once the selector resolves.
    """
    text = selector.strip()
    if not text.endswith(")") or "(" not in text:
        raise ValueError(f"selector must look like Class.name(type,...): {selector!r}")
    head, _, args = text[:-1].partition("(")
    if "." not in head:
        raise ValueError(f"selector is missing the class qualifier: {selector!r}")
    class_name, _, method_name = head.rpartition(".")
    if not class_name or not method_name:
        raise ValueError(f"selector is missing a class or method name: {selector!r}")
    types = [t.strip() for t in args.split(",")] if args.strip() else []
    if any(not t for t in types):
        raise ValueError(f"selector has an empty parameter type: {selector!r}")
    params = tuple(ParameterSpec(name=f"p{i}", type_name=t) for i, t in enumerate(types))
    return MethodTemplate(name=method_name, params=params, enclosing=ClassTemplate(class_name))
