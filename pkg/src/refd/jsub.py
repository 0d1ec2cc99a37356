"""Parser and resolver for the Jsub input language.

Jsub is a small Java-like subset: single-inheritance classes (optionally
abstract), fields, methods, and flat method bodies made of local variable
declarations, assignments, calls, field accesses, and returns. Bodies are
not kept as expression trees; each body is reduced to the list of member
references (calls, field reads, field writes) the analyses consume.

The grammar is documented in docs/jsub-grammar.md.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .errors import CyclicInheritanceError, DuplicateClassError, JsubSyntaxError

PRIMITIVE_TYPES = frozenset(
    {"boolean", "byte", "short", "char", "int", "long", "float", "double"}
)
# String is accepted as a built-in reference type; it never resolves to a node.
BUILTIN_TYPES = PRIMITIVE_TYPES | {"String"}

KEYWORDS = frozenset(
    {
        "class",
        "extends",
        "abstract",
        "static",
        "public",
        "protected",
        "private",
        "void",
        "return",
        "this",
        "true",
        "false",
    }
)

VISIBILITIES = ("public", "protected", "package", "private")


# ---------------------------------------------------------------------------
# Source model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SourceSpan:
    """1-based, inclusive source range. start must not come after end."""

    file: str
    start_line: int
    start_col: int
    end_line: int
    end_col: int

    def __post_init__(self):
        if (self.start_line, self.start_col) > (self.end_line, self.end_col):
            raise ValueError(f"span starts after it ends: {self}")

    def encloses(self, other: SourceSpan) -> bool:
        return (
            self.file == other.file
            and (self.start_line, self.start_col) <= (other.start_line, other.start_col)
            and (self.end_line, self.end_col) >= (other.end_line, other.end_col)
        )


class RefKind(Enum):
    CALL = "call"
    FIELD_READ = "field_read"
    FIELD_WRITE = "field_write"


class ReceiverKind(Enum):
    IMPLICIT_THIS = "this"
    VAR = "var"
    CLASS = "class"


@dataclass(frozen=True)
class BodyRef:
    """One call or field access inside a method body.

    receiver_name is None for IMPLICIT_THIS, the variable name for VAR, and
    the (possibly dotted) class-ish name for CLASS receivers. receiver_type
    is the receiver's declared type name: the enclosing class for
    IMPLICIT_THIS, the declared local/parameter type for VAR, and the name
    itself for CLASS. arg_type_hints is present only for CALL refs; a None
    entry means the argument's type could not be derived from literals and
    declared variable types.
    """

    kind: RefKind
    receiver_kind: ReceiverKind
    receiver_name: str | None
    receiver_type: str | None
    member_name: str
    arg_type_hints: tuple[str | None, ...] | None
    span: SourceSpan


@dataclass(frozen=True)
class AstField:
    name: str
    type_name: str
    visibility: str
    is_static: bool
    span: SourceSpan


@dataclass(frozen=True)
class AstMethod:
    name: str
    params: tuple[tuple[str, str], ...]  # (name, type-name), declaration order
    return_type: str  # "void" allowed
    visibility: str
    is_static: bool
    is_abstract: bool
    body_refs: tuple[BodyRef, ...]
    span: SourceSpan

    def signature(self) -> tuple[str, tuple[str, ...]]:
        return (self.name, tuple(t for _, t in self.params))


@dataclass(frozen=True)
class AstClass:
    name: str
    is_abstract: bool
    extends_name: str | None
    fields: tuple[AstField, ...]
    methods: tuple[AstMethod, ...]
    span: SourceSpan


@dataclass(frozen=True)
class ProjectAst:
    root: str
    classes: tuple[AstClass, ...]
    files: tuple[str, ...]
    diagnostics: tuple[str, ...]


@dataclass
class ResolvedClass:
    ast: AstClass
    file: str
    superclass: ResolvedClass | None = None

    @property
    def name(self) -> str:
        return self.ast.name

    def ancestors(self) -> list[ResolvedClass]:
        """Proper ancestors, nearest first."""
        out = []
        cur = self.superclass
        while cur is not None:
            out.append(cur)
            cur = cur.superclass
        return out


@dataclass
class ResolvedProject:
    root: str
    classes: dict[str, ResolvedClass]  # insertion order = (file, span) order
    diagnostics: tuple[str, ...]


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str  # IDENT, KW, INT, LONG, FLOAT, DOUBLE, CHAR, STRING, PUNCT, EOF
    text: str
    line: int
    col: int

    @property
    def end_col(self) -> int:
        return self.col + max(len(self.text), 1) - 1


_PUNCT = set("{}(),;=.+-*/!")


def _lex(text: str, file: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col, i, n = 1, 1, 0, len(text)

    def err(msg: str) -> JsubSyntaxError:
        return JsubSyntaxError(msg, file, line, col)

    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "/" and i + 1 < n and text[i + 1] == "/":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "/" and i + 1 < n and text[i + 1] == "*":
            i += 2
            col += 2
            while i < n and not (text[i] == "*" and i + 1 < n and text[i + 1] == "/"):
                if text[i] == "\n":
                    line += 1
                    col = 1
                else:
                    col += 1
                i += 1
            if i >= n:
                raise err("unterminated block comment")
            i += 2
            col += 2
            continue
        if ch == '"':
            start_line, start_col = line, col
            j = i + 1
            buf = ['"']
            while j < n and text[j] != '"':
                if text[j] == "\n":
                    raise JsubSyntaxError("unterminated string literal", file, start_line, start_col)
                if text[j] == "\\" and j + 1 < n:
                    buf.append(text[j : j + 2])
                    j += 2
                else:
                    buf.append(text[j])
                    j += 1
            if j >= n:
                raise JsubSyntaxError("unterminated string literal", file, start_line, start_col)
            buf.append('"')
            lexed = "".join(buf)
            tokens.append(_Token("STRING", lexed, start_line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        if ch == "'":
            start_col = col
            j = i + 1
            if j < n and text[j] == "\\":
                j += 1
            j += 1
            if j >= n or text[j] != "'":
                raise JsubSyntaxError("malformed char literal", file, line, start_col)
            tokens.append(_Token("CHAR", text[i : j + 1], line, start_col))
            col += j + 1 - i
            i = j + 1
            continue
        if ch.isdigit():
            start_col = col
            j = i
            while j < n and text[j].isdigit():
                j += 1
            is_decimal = False
            if j < n and text[j] == "." and j + 1 < n and text[j + 1].isdigit():
                is_decimal = True
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            kind = "DOUBLE" if is_decimal else "INT"
            if j < n and text[j] in "lL":
                if is_decimal:
                    raise JsubSyntaxError("long suffix on decimal literal", file, line, start_col)
                kind = "LONG"
                j += 1
            elif j < n and text[j] in "fF":
                kind = "FLOAT"
                j += 1
            elif j < n and text[j] in "dD":
                kind = "DOUBLE"
                j += 1
            tokens.append(_Token(kind, text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            start_col = col
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            kind = "KW" if word in KEYWORDS else "IDENT"
            tokens.append(_Token(kind, word, line, start_col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            tokens.append(_Token("PUNCT", ch, line, col))
            i += 1
            col += 1
            continue
        raise err(f"unexpected character {ch!r}")
    tokens.append(_Token("EOF", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Expression mini-AST (internal; reduced to BodyRefs before parse_file returns)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Segment:
    name: str
    args: tuple | None  # tuple of _Expr when a call, None otherwise
    span: SourceSpan


@dataclass(frozen=True)
class _Path:
    segments: tuple[_Segment, ...]
    span: SourceSpan


@dataclass(frozen=True)
class _Lit:
    type_name: str
    span: SourceSpan


@dataclass(frozen=True)
class _Binary:
    op: str
    left: object
    right: object
    span: SourceSpan


@dataclass(frozen=True)
class _Unary:
    op: str
    operand: object
    span: SourceSpan


@dataclass(frozen=True)
class _Assign:
    target: _Path
    value: object
    span: SourceSpan


_LIT_TYPES = {
    "INT": "int",
    "LONG": "long",
    "FLOAT": "float",
    "DOUBLE": "double",
    "STRING": "String",
    "CHAR": "char",
}

# Widening ladder positions; char promotes into the ladder at int.
_LADDER = {"byte": 0, "short": 1, "int": 2, "long": 3, "float": 4, "double": 5}
_LADDER_NAMES = ("byte", "short", "int", "long", "float", "double")


def _numeric_pos(type_name: str | None) -> int | None:
    if type_name is None:
        return None
    if type_name == "char":
        return _LADDER["int"]
    return _LADDER.get(type_name)


def widening_cost(from_type: str, to_type: str) -> int | None:
    """Steps along the primitive widening ladder, or None if not allowed.

    byte -> short -> int -> long -> float -> double; char enters at int.
    Identical types cost 0. Reference types only match exactly.
    """
    if from_type == to_type:
        return 0
    if from_type == "char":
        if to_type in ("int", "long", "float", "double"):
            return _LADDER[to_type] - _LADDER["int"] + 1
        return None
    a, b = _LADDER.get(from_type), _LADDER.get(to_type)
    if a is None or b is None or a >= b:
        return None
    return b - a


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, file: str):
        self.file = file
        self.tokens = _lex(text, file)
        self.pos = 0

    # -- token plumbing --

    def peek(self, offset: int = 0) -> _Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def check(self, kind: str, text: str | None = None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (text is None or tok.text == text)

    def accept(self, kind: str, text: str | None = None) -> _Token | None:
        if self.check(kind, text):
            return self.advance()
        return None

    def expect(self, kind: str, text: str | None = None) -> _Token:
        tok = self.peek()
        if not self.check(kind, text):
            want = text or kind.lower()
            raise JsubSyntaxError(
                f"expected {want!r}, found {tok.text or '<eof>'!r}", self.file, tok.line, tok.col
            )
        return self.advance()

    def error(self, msg: str) -> JsubSyntaxError:
        tok = self.peek()
        return JsubSyntaxError(msg, self.file, tok.line, tok.col)

    def span_from(self, start: _Token, end: _Token) -> SourceSpan:
        return SourceSpan(self.file, start.line, start.col, end.line, end.end_col)

    # -- declarations --

    def parse_program(self) -> list[AstClass]:
        classes = []
        while not self.check("EOF"):
            classes.append(self.parse_class())
        return classes

    def parse_class(self) -> AstClass:
        start = self.peek()
        is_abstract = self.accept("KW", "abstract") is not None
        self.expect("KW", "class")
        name = self.expect("IDENT").text
        extends_name = None
        if self.accept("KW", "extends"):
            extends_name = self.expect("IDENT").text
        self.expect("PUNCT", "{")
        fields: list[AstField] = []
        methods: list[AstMethod] = []
        while not self.check("PUNCT", "}"):
            if self.check("EOF"):
                raise self.error(f"unterminated body of class {name}")
            member = self.parse_member(name)
            if isinstance(member, AstField):
                fields.append(member)
            else:
                methods.append(member)
        end = self.expect("PUNCT", "}")
        return AstClass(
            name=name,
            is_abstract=is_abstract,
            extends_name=extends_name,
            fields=tuple(fields),
            methods=tuple(methods),
            span=self.span_from(start, end),
        )

    def parse_member(self, class_name: str) -> AstField | AstMethod:
        start = self.peek()
        visibility = "package"
        is_static = False
        is_abstract = False
        while True:
            tok = self.peek()
            if tok.kind == "KW" and tok.text in ("public", "protected", "private"):
                visibility = self.advance().text
            elif tok.kind == "KW" and tok.text == "static":
                self.advance()
                is_static = True
            elif tok.kind == "KW" and tok.text == "abstract":
                self.advance()
                is_abstract = True
            else:
                break
        type_name = self.parse_type(allow_void=True)
        name = self.expect("IDENT").text
        if self.check("PUNCT", "("):
            return self.parse_method_rest(start, name, type_name, visibility, is_static, is_abstract)
        if type_name == "void":
            raise self.error(f"field {name} cannot have type void")
        if is_abstract:
            raise self.error(f"field {name} cannot be abstract")
        if self.accept("PUNCT", "="):
            self.parse_expression()  # initializer refs are not modeled
        end = self.expect("PUNCT", ";")
        return AstField(
            name=name,
            type_name=type_name,
            visibility=visibility,
            is_static=is_static,
            span=self.span_from(start, end),
        )

    def parse_type(self, allow_void: bool = False) -> str:
        tok = self.peek()
        if tok.kind == "KW" and tok.text == "void":
            if not allow_void:
                raise self.error("void is not allowed here")
            return self.advance().text
        if tok.kind == "IDENT":
            return self.advance().text
        raise self.error(f"expected a type name, found {tok.text or '<eof>'!r}")

    def parse_method_rest(
        self,
        start: _Token,
        name: str,
        return_type: str,
        visibility: str,
        is_static: bool,
        is_abstract: bool,
    ) -> AstMethod:
        self.expect("PUNCT", "(")
        params: list[tuple[str, str]] = []
        if not self.check("PUNCT", ")"):
            while True:
                ptype = self.parse_type()
                pname = self.expect("IDENT").text
                params.append((pname, ptype))
                if not self.accept("PUNCT", ","):
                    break
        self.expect("PUNCT", ")")
        if self.accept("PUNCT", ";"):
            end = self.tokens[self.pos - 1]
            return AstMethod(
                name=name,
                params=tuple(params),
                return_type=return_type,
                visibility=visibility,
                is_static=is_static,
                is_abstract=is_abstract,
                body_refs=(),
                span=self.span_from(start, end),
            )
        if is_abstract:
            raise self.error(f"abstract method {name} must not have a body")
        self.expect("PUNCT", "{")
        statements: list[object] = []
        while not self.check("PUNCT", "}"):
            if self.check("EOF"):
                raise self.error(f"unterminated body of method {name}")
            statements.append(self.parse_statement())
        end = self.expect("PUNCT", "}")
        locals_table = dict(params)
        for stmt in statements:
            if isinstance(stmt, tuple) and stmt[0] == "decl":
                locals_table.setdefault(stmt[1], stmt[2])
        refs = _collect_refs(statements, locals_table)
        return AstMethod(
            name=name,
            params=tuple(params),
            return_type=return_type,
            visibility=visibility,
            is_static=is_static,
            is_abstract=is_abstract,
            body_refs=tuple(refs),
            span=self.span_from(start, end),
        )

    # -- statements --
    # Statements are ("decl", name, type, init-expr|None) | ("return", expr|None)
    # | ("expr", expr).

    def parse_statement(self) -> tuple:
        if self.accept("KW", "return"):
            if self.accept("PUNCT", ";"):
                return ("return", None)
            expr = self.parse_expression()
            self.expect("PUNCT", ";")
            return ("return", expr)
        # Local declaration: TYPE IDENT ... where TYPE is an identifier or primitive.
        tok, nxt = self.peek(), self.peek(1)
        if tok.kind == "IDENT" and nxt.kind == "IDENT":
            type_name = self.advance().text
            name = self.expect("IDENT").text
            init = None
            if self.accept("PUNCT", "="):
                init = self.parse_expression()
            self.expect("PUNCT", ";")
            return ("decl", name, type_name, init)
        expr = self.parse_expression()
        self.expect("PUNCT", ";")
        return ("expr", expr)

    # -- expressions --

    def parse_expression(self):
        return self.parse_assignment()

    def parse_assignment(self):
        start = self.peek()
        left = self.parse_additive()
        if self.check("PUNCT", "="):
            if not isinstance(left, _Path) or left.segments[-1].args is not None:
                raise self.error("invalid assignment target")
            self.advance()
            value = self.parse_assignment()
            end = self.tokens[self.pos - 1]
            return _Assign(target=left, value=value, span=self.span_from(start, end))
        return left

    def parse_additive(self):
        start = self.peek()
        left = self.parse_unary()
        while self.peek().kind == "PUNCT" and self.peek().text in "+-*/":
            op = self.advance().text
            right = self.parse_unary()
            end = self.tokens[self.pos - 1]
            left = _Binary(op=op, left=left, right=right, span=self.span_from(start, end))
        return left

    def parse_unary(self):
        tok = self.peek()
        if tok.kind == "PUNCT" and tok.text in ("-", "!"):
            self.advance()
            operand = self.parse_unary()
            end = self.tokens[self.pos - 1]
            return _Unary(op=tok.text, operand=operand, span=self.span_from(tok, end))
        return self.parse_postfix()

    def parse_postfix(self):
        start = self.peek()
        if start.kind in _LIT_TYPES:
            self.advance()
            return _Lit(type_name=_LIT_TYPES[start.kind], span=self.span_from(start, start))
        if start.kind == "KW" and start.text in ("true", "false"):
            self.advance()
            return _Lit(type_name="boolean", span=self.span_from(start, start))
        if start.kind == "PUNCT" and start.text == "(":
            self.advance()
            inner = self.parse_expression()
            self.expect("PUNCT", ")")
            return inner
        if start.kind == "KW" and start.text == "this":
            self.advance()
            segments = [_Segment(name="this", args=None, span=self.span_from(start, start))]
        elif start.kind == "IDENT":
            tok = self.advance()
            args = self.parse_call_args() if self.check("PUNCT", "(") else None
            end = self.tokens[self.pos - 1]
            segments = [_Segment(name=tok.text, args=args, span=self.span_from(tok, end))]
        else:
            raise self.error(f"expected an expression, found {start.text or '<eof>'!r}")
        while self.accept("PUNCT", "."):
            tok = self.expect("IDENT")
            args = self.parse_call_args() if self.check("PUNCT", "(") else None
            end = self.tokens[self.pos - 1]
            segments.append(_Segment(name=tok.text, args=args, span=self.span_from(tok, end)))
        end = self.tokens[self.pos - 1]
        return _Path(segments=tuple(segments), span=self.span_from(start, end))

    def parse_call_args(self) -> tuple:
        self.expect("PUNCT", "(")
        args = []
        if not self.check("PUNCT", ")"):
            while True:
                args.append(self.parse_expression())
                if not self.accept("PUNCT", ","):
                    break
        self.expect("PUNCT", ")")
        return tuple(args)


# ---------------------------------------------------------------------------
# Body-reference extraction
# ---------------------------------------------------------------------------


def _promote(a: str | None, b: str | None, op: str) -> str | None:
    if op == "+" and ("String" in (a, b)):
        return "String"
    pa, pb = _numeric_pos(a), _numeric_pos(b)
    if pa is None or pb is None:
        return None
    return _LADDER_NAMES[max(pa, pb, _LADDER["int"])]


def _type_hint(expr, locals_table: dict[str, str]) -> str | None:
    if isinstance(expr, _Lit):
        return expr.type_name
    if isinstance(expr, _Unary):
        if expr.op == "!":
            return "boolean"
        inner = _type_hint(expr.operand, locals_table)
        return inner if _numeric_pos(inner) is not None or inner in _LADDER else None
    if isinstance(expr, _Binary):
        return _promote(
            _type_hint(expr.left, locals_table), _type_hint(expr.right, locals_table), expr.op
        )
    if isinstance(expr, _Path):
        segs = expr.segments
        if len(segs) == 1 and segs[0].args is None and segs[0].name in locals_table:
            return locals_table[segs[0].name]
        return None
    if isinstance(expr, _Assign):
        return _type_hint(expr.value, locals_table)
    return None


def _receiver_of(
    prefix: tuple[_Segment, ...], locals_table: dict[str, str]
) -> tuple[ReceiverKind, str | None, str | None]:
    """Classify the receiver named by the path prefix before the last segment."""
    if not prefix or (len(prefix) == 1 and prefix[0].name == "this"):
        return (ReceiverKind.IMPLICIT_THIS, None, None)
    if len(prefix) == 1 and prefix[0].name in locals_table:
        name = prefix[0].name
        return (ReceiverKind.VAR, name, locals_table[name])
    # Anything else (a class name, or an opaque chain like System.out) is a
    # static-looking receiver; resolution decides whether it names a class.
    dotted = ".".join(seg.name for seg in prefix)
    return (ReceiverKind.CLASS, dotted, dotted)


def _collect_refs(statements: list, locals_table: dict[str, str]) -> list[BodyRef]:
    refs: list[BodyRef] = []

    def walk_path(path: _Path, as_write: bool) -> None:
        segs = path.segments
        last = segs[-1]
        if len(segs) == 1 and last.name == "this":
            return
        prefix = segs[:-1]
        if last.args is not None:
            # Call arguments are walked first so nested refs keep textual order.
            for arg in last.args:
                walk(arg)
            kind, rname, rtype = _receiver_of(prefix, locals_table)
            hints = tuple(_type_hint(a, locals_table) for a in last.args)
            refs.append(
                BodyRef(
                    kind=RefKind.CALL,
                    receiver_kind=kind,
                    receiver_name=rname,
                    receiver_type=rtype,
                    member_name=last.name,
                    arg_type_hints=hints,
                    span=path.span,
                )
            )
            return
        if len(segs) == 1 and last.name in locals_table and not as_write:
            return  # plain local read, not a member reference
        if len(segs) == 1 and last.name in locals_table and as_write:
            return  # assignment to a local
        kind, rname, rtype = _receiver_of(prefix, locals_table)
        refs.append(
            BodyRef(
                kind=RefKind.FIELD_WRITE if as_write else RefKind.FIELD_READ,
                receiver_kind=kind,
                receiver_name=rname,
                receiver_type=rtype,
                member_name=last.name,
                arg_type_hints=None,
                span=path.span,
            )
        )

    def walk(expr) -> None:
        if isinstance(expr, _Path):
            walk_path(expr, as_write=False)
        elif isinstance(expr, _Binary):
            walk(expr.left)
            walk(expr.right)
        elif isinstance(expr, _Unary):
            walk(expr.operand)
        elif isinstance(expr, _Assign):
            walk(expr.value)
            walk_path(expr.target, as_write=True)
        # literals carry no references

    for stmt in statements:
        if stmt[0] == "decl" and stmt[3] is not None:
            walk(stmt[3])
        elif stmt[0] == "return" and stmt[1] is not None:
            walk(stmt[1])
        elif stmt[0] == "expr":
            walk(stmt[1])
    return refs


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def parse_file(text: str, file: str) -> list[AstClass]:
    """Parse one Jsub source text into its top-level class declarations.

    Pathologically deep expressions (thousands of nested parentheses or
    operator chains) are reported as syntax errors rather than exhausting
    the interpreter stack.
    """
    try:
        return _Parser(text, file).parse_program()
    except RecursionError:
        raise JsubSyntaxError("expression nesting too deep to parse", file, 1, 1) from None


def parse_project(root: str | Path) -> ProjectAst:
    """Parse every .jsub/.java file under root, lexicographic path order.

    Class names must be unique project-wide; duplicate member signatures
    inside one class are recorded as diagnostics, with both declarations
    kept.
    """
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(f"project root is not a directory: {root}")
    files = sorted(
        p for p in root.rglob("*") if p.is_file() and p.suffix in (".jsub", ".java")
    )
    classes: list[AstClass] = []
    rel_files: list[str] = []
    diagnostics: list[str] = []
    seen: dict[str, str] = {}
    for path in files:
        rel = path.relative_to(root).as_posix()
        rel_files.append(rel)
        for cls in parse_file(path.read_text(encoding="utf-8"), rel):
            if cls.name in seen:
                raise DuplicateClassError(
                    f"class {cls.name} declared in both {seen[cls.name]} and {rel}"
                )
            seen[cls.name] = rel
            classes.append(cls)
            diagnostics.extend(_member_diagnostics(cls, rel))
    return ProjectAst(
        root=str(root),
        classes=tuple(classes),
        files=tuple(rel_files),
        diagnostics=tuple(diagnostics),
    )


def _member_diagnostics(cls: AstClass, file: str) -> list[str]:
    out = []
    seen_sigs = set()
    for m in cls.methods:
        sig = m.signature()
        if sig in seen_sigs:
            out.append(
                f"{file}:{m.span.start_line}: duplicate method "
                f"{cls.name}.{sig[0]}({', '.join(sig[1])})"
            )
        seen_sigs.add(sig)
    seen_fields = set()
    for f in cls.fields:
        if f.name in seen_fields:
            out.append(f"{file}:{f.span.start_line}: duplicate field {cls.name}.{f.name}")
        seen_fields.add(f.name)
    return out


def resolve_project(ast: ProjectAst) -> ResolvedProject:
    """Link extends names and receiver types; unresolvables become diagnostics."""
    order = list(ast.classes)
    resolved: dict[str, ResolvedClass] = {}
    for cls in order:
        resolved[cls.name] = ResolvedClass(ast=cls, file=cls.span.file)

    diagnostics = list(ast.diagnostics)
    for cls in order:
        rc = resolved[cls.name]
        if cls.extends_name is not None:
            parent = resolved.get(cls.extends_name)
            if parent is None:
                diagnostics.append(
                    f"{rc.file}:{cls.span.start_line}: class {cls.name} extends "
                    f"unknown class {cls.extends_name}"
                )
            else:
                rc.superclass = parent

    # Cycle check over the linked chains.
    for name, rc in resolved.items():
        seen = {name}
        cur = rc.superclass
        while cur is not None:
            if cur.name in seen:
                raise CyclicInheritanceError(
                    f"inheritance cycle through {' -> '.join(sorted(seen))}"
                )
            seen.add(cur.name)
            cur = cur.superclass

    known_types = set(resolved) | BUILTIN_TYPES
    for cls in order:
        rc = resolved[cls.name]
        for f in cls.fields:
            if f.type_name not in known_types:
                diagnostics.append(
                    f"{rc.file}:{f.span.start_line}: field {cls.name}.{f.name} has "
                    f"unknown type {f.type_name}"
                )
        for m in cls.methods:
            for pname, ptype in m.params:
                if ptype not in known_types:
                    diagnostics.append(
                        f"{rc.file}:{m.span.start_line}: parameter {pname} of "
                        f"{cls.name}.{m.name} has unknown type {ptype}"
                    )
            if m.return_type != "void" and m.return_type not in known_types:
                diagnostics.append(
                    f"{rc.file}:{m.span.start_line}: method {cls.name}.{m.name} has "
                    f"unknown return type {m.return_type}"
                )
            for ref in m.body_refs:
                if ref.receiver_kind is ReceiverKind.VAR and ref.receiver_type not in known_types:
                    diagnostics.append(
                        f"{rc.file}:{ref.span.start_line}: receiver {ref.receiver_name} "
                        f"of {ref.member_name} has unknown type {ref.receiver_type}"
                    )
                elif ref.receiver_kind is ReceiverKind.CLASS and ref.receiver_type not in resolved:
                    diagnostics.append(
                        f"{rc.file}:{ref.span.start_line}: receiver {ref.receiver_name} "
                        f"does not name a known class"
                    )
    return ResolvedProject(root=ast.root, classes=resolved, diagnostics=tuple(diagnostics))


def load_project(root: str | Path) -> ResolvedProject:
    """parse_project followed by resolve_project."""
    return resolve_project(parse_project(root))
