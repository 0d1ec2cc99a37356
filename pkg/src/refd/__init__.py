"""refd: static diagnosis of refactoring dangers for Jsub projects.

The pipeline: parse a project, build its tagged program graph, decompose a
requested refactoring into microsteps, detect which of each microstep's
potential risks are actual in this codebase, filter false positives with
the refactoring's verdict, and report the surviving dangers as precise
source locations.
"""

from .graph import (
    NodeTag,
    ProgramGraph,
    ProgramLocation,
    Relation,
    RelationTag,
    add_class_node,
    add_method_node,
    build_graph,
    dump_graph,
    remove_method_node,
    resolve_template,
    snapshot,
)
from .jsub import (
    AstClass,
    AstField,
    AstMethod,
    BodyRef,
    ProjectAst,
    ResolvedProject,
    SourceSpan,
    load_project,
    parse_file,
    parse_project,
    resolve_project,
)
from .refactoring import (
    COMBINE_METHODS_INTO_CLASS,
    DEFAULT_VERDICT,
    MOVE_METHOD,
    PULL_UP_METHOD,
    Danger,
    DangerReport,
    Microstep,
    MicrostepKind,
    Refactoring,
    VerdictContext,
    VerdictFunction,
    analyze,
    apply_effect,
    build_combine_methods_into_class,
    build_move_method,
    build_pull_up_method,
    keep_all,
    keep_if,
    keep_none,
    pull_up_verdict,
)
from .report import report_to_document, report_to_text, serialize_report
from .risks import ActualRisk, CATALOG, LocationRecord, PotentialRisk, potential_risk
from .templates import (
    ClassTemplate,
    MethodTemplate,
    ParameterSpec,
    Signature,
    parse_method_selector,
)

__version__ = "0.1.0"
