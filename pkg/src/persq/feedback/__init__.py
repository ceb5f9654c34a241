"""Personalized lifestyle feedback from matched life-event patterns."""

from .catalog import default_catalog, load_catalog, message_for
from .engine import (
    FeedbackItem,
    FeedbackReport,
    MatchResult,
    ReportAudit,
    UNKNOWN_LEVEL,
    generate_report,
    match_rules,
    optimizable_params,
    render_feedback,
    select_candidate_groups,
)

__all__ = [
    "default_catalog", "load_catalog", "message_for", "UNKNOWN_LEVEL",
    "MatchResult", "FeedbackItem", "FeedbackReport", "ReportAudit",
    "match_rules", "select_candidate_groups", "optimizable_params",
    "render_feedback", "generate_report",
]
