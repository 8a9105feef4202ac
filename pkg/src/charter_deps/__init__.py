"""charter-deps: strategic-dependency modelling and workload-rebalancing toolkit.

Parse actor dependency models from `.istar` text or structured documents,
score each actor's vulnerability and criticality, rank hotspots, and evaluate
or recommend constraint-checked delegation plans.
"""

from .delegation import (
    AddActorAdvisory,
    DelegationMove,
    FeasibilityVerdict,
    Plan,
    PlanError,
    Policy,
    RecommendConfig,
    apply_move,
    check_feasibility,
    diff,
    evaluate_plan,
    recommend,
)
from .dsl import ParseError, ParseResult, SourceSpan, parse_model, serialize_model
from .export import ExportOptions, metrics_csv, render_export, to_dot
from .metrics import Hotspots, MetricsRow, criticality, hotspots, metrics_table, vulnerability
from .model import (
    Actor,
    DegreeProfile,
    Dependency,
    Dependum,
    ModelDocument,
    ModelError,
    SDModel,
    ScopeDef,
    SRBoundary,
    SRElement,
    Violation,
    degree_profile,
    resolve_scope,
    validate_model,
)
from .structured import from_document, to_document

__version__ = "0.1.0"

__all__ = [
    "Actor",
    "AddActorAdvisory",
    "DegreeProfile",
    "DelegationMove",
    "ExportOptions",
    "Dependency",
    "Dependum",
    "FeasibilityVerdict",
    "Hotspots",
    "MetricsRow",
    "ModelDocument",
    "ModelError",
    "ParseError",
    "ParseResult",
    "Plan",
    "PlanError",
    "Policy",
    "RecommendConfig",
    "SDModel",
    "ScopeDef",
    "SRBoundary",
    "SRElement",
    "SourceSpan",
    "Violation",
    "apply_move",
    "check_feasibility",
    "criticality",
    "degree_profile",
    "diff",
    "evaluate_plan",
    "from_document",
    "hotspots",
    "metrics_csv",
    "metrics_table",
    "parse_model",
    "recommend",
    "render_export",
    "resolve_scope",
    "serialize_model",
    "to_document",
    "to_dot",
    "validate_model",
    "vulnerability",
]
