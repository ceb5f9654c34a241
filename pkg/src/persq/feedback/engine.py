"""Rule-matched lifestyle feedback: predict tonight's SQ, match the day's
items against superior pattern groups, and suggest the unmatched upgrades."""

from __future__ import annotations

import datetime as dt
import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import ShapeError
from ..ingest.records import DayRecord, UserProfile
from ..mining.patterns import Pattern, PatternSets
from ..mining.thresholds import CHRONOTYPE_RANK, CHRONOTYPE_VARIABLE, LEVEL_RANK, ThresholdConfig
from ..mining.transactions import Transaction, discretize
from ..model.network import PerSQModel, predict
from .catalog import message_for

UNKNOWN_LEVEL = "unknown"


def _level_rank(variable: str, level: str) -> int:
    ranks = CHRONOTYPE_RANK if variable == CHRONOTYPE_VARIABLE else LEVEL_RANK
    if level not in ranks:
        raise ValueError(f"unknown level {level!r} for variable {variable!r}")
    return ranks[level]


@dataclass(frozen=True)
class MatchResult:
    pattern: Pattern
    co_occurrence: int

    def __post_init__(self):
        if self.co_occurrence > len(self.pattern.items):
            raise ValueError("co-occurrence cannot exceed pattern length")

    @property
    def rank_key(self) -> tuple[int, int, int]:
        """(co-occurrence, support, length), all compared descending."""
        return (self.co_occurrence, self.pattern.support_count, len(self.pattern.items))


@dataclass(frozen=True)
class FeedbackItem:
    parameter: str
    current_level: str
    target_level: str
    message: str = ""

    def __post_init__(self):
        if self.current_level != UNKNOWN_LEVEL:
            if _level_rank(self.parameter, self.target_level) <= _level_rank(
                    self.parameter, self.current_level):
                raise ValueError(
                    f"{self.parameter}: target {self.target_level} does not improve on "
                    f"{self.current_level}"
                )

    def to_dict(self) -> dict:
        return {
            "parameter": self.parameter,
            "current_level": self.current_level,
            "target_level": self.target_level,
            "message": self.message,
        }


@dataclass
class ReportAudit:
    """Every intermediate of the feedback algorithm, for replay and review."""

    user_items: tuple[str, ...] = ()
    candidate_count: int = 0
    ranked_matches: tuple[MatchResult, ...] = ()
    raw_items: tuple[FeedbackItem, ...] = ()


@dataclass
class FeedbackReport:
    user_id: str
    target_date: dt.date
    predicted_sq: float
    sq_group: str
    matched_pattern: Pattern | None
    items: list[FeedbackItem]
    status: str
    audit: ReportAudit = field(default_factory=ReportAudit, repr=False, compare=False)

    def to_dict(self) -> dict:
        matched = None
        if self.matched_pattern is not None:
            matched = {
                "items": list(self.matched_pattern.rendered()),
                "support_count": self.matched_pattern.support_count,
                "group": self.matched_pattern.group,
            }
        return {
            "user_id": self.user_id,
            "target_date": self.target_date.isoformat(),
            "predicted_sq": self.predicted_sq,
            "sq_group": self.sq_group,
            "matched_pattern": matched,
            "items": [item.to_dict() for item in self.items],
            "status": self.status,
        }


def match_rules(user_items: Transaction | frozenset, candidates) -> list[MatchResult]:
    """Score every candidate by item co-occurrence; rank by (co-occurrence,
    support, length) descending with a canonical-order tie-break. Candidates
    sharing nothing with the user are dropped."""
    items = user_items.items if isinstance(user_items, Transaction) else frozenset(user_items)
    results = []
    for pattern in candidates:
        co_occurrence = len(pattern.item_set() & items)
        if co_occurrence > 0:
            results.append(MatchResult(pattern=pattern, co_occurrence=co_occurrence))
    results.sort(key=lambda r: (
        -r.co_occurrence, -r.pattern.support_count, -len(r.pattern.items),
        r.pattern.rendered(),
    ))
    return results


def select_candidate_groups(sq_group: str, patterns: PatternSets) -> list[Pattern]:
    """Low predictions draw on normal+high patterns; normal and high draw on
    high patterns only."""
    if sq_group == "low":
        return list(patterns.normal) + list(patterns.high)
    if sq_group in ("normal", "high"):
        return list(patterns.high)
    raise ValueError(f"unknown SQ group {sq_group!r}")


def optimizable_params(user_items: Transaction | frozenset, matched: Pattern) -> list[FeedbackItem]:
    """Pattern items above the user's current level become suggestions;
    levels are never downgraded. Items on variables the user lacks data for
    are kept with current=unknown."""
    items = user_items.items if isinstance(user_items, Transaction) else frozenset(user_items)
    user_levels = {item.variable: item.level for item in items}
    suggestions = []
    for pattern_item in matched.items:
        current = user_levels.get(pattern_item.variable)
        if current is None:
            suggestions.append(FeedbackItem(
                parameter=pattern_item.variable,
                current_level=UNKNOWN_LEVEL,
                target_level=pattern_item.level,
            ))
        elif (_level_rank(pattern_item.variable, pattern_item.level)
              > _level_rank(pattern_item.variable, current)):
            suggestions.append(FeedbackItem(
                parameter=pattern_item.variable,
                current_level=current,
                target_level=pattern_item.level,
            ))
    return suggestions


def render_feedback(items, catalog: dict[str, str]) -> list[FeedbackItem]:
    return [
        FeedbackItem(
            parameter=item.parameter,
            current_level=item.current_level,
            target_level=item.target_level,
            message=message_for(catalog, item.parameter),
        )
        for item in items
    ]


def generate_report(model: PerSQModel, patterns: PatternSets, thresholds: ThresholdConfig,
                    profile: UserProfile, days: list[DayRecord],
                    catalog: dict[str, str]) -> FeedbackReport:
    """End-to-end feedback for the last day of `days` (days m-t..m, oldest
    first, consecutive). Every intermediate is recorded on report.audit."""
    if model.scaler is None:
        raise ShapeError("model has no scaler; load a trained checkpoint")
    if len(days) != model.window_t + 1:
        raise ShapeError(
            f"need {model.window_t + 1} consecutive days, got {len(days)}"
        )
    for prev, cur in zip(days, days[1:]):
        if (cur.date - prev.date).days != 1:
            raise ShapeError(f"window days not consecutive: {prev.date} -> {cur.date}")

    window = np.stack([model.scaler.encode(day, profile) for day in days])
    predicted_sq = predict(model, window)
    if not math.isfinite(predicted_sq):
        raise ShapeError("model produced a non-finite prediction")
    sq_group = thresholds.sq_group(predicted_sq)

    day_m = days[-1]
    user_tx = discretize(day_m, profile, thresholds)
    candidates = select_candidate_groups(sq_group, patterns)
    ranked = match_rules(user_tx, candidates)

    audit = ReportAudit(
        user_items=user_tx.rendered(),
        candidate_count=len(candidates),
        ranked_matches=tuple(ranked),
    )
    if not ranked:
        status = "no-candidate-patterns" if not candidates else "no-overlapping-pattern"
        return FeedbackReport(
            user_id=profile.user_id, target_date=day_m.date, predicted_sq=predicted_sq,
            sq_group=sq_group, matched_pattern=None, items=[], status=status, audit=audit,
        )
    matched = ranked[0].pattern
    raw_items = optimizable_params(user_tx, matched)
    audit.raw_items = tuple(raw_items)
    rendered = render_feedback(raw_items, catalog)
    status = "ok" if rendered else "fully-matched"
    return FeedbackReport(
        user_id=profile.user_id, target_date=day_m.date, predicted_sq=predicted_sq,
        sq_group=sq_group, matched_pattern=matched, items=rendered, status=status,
        audit=audit,
    )
