"""Discretized user-days as transactions of (variable, level) items."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..ingest.records import DayRecord, UserProfile
from .thresholds import (
    CHRONOTYPE_VARIABLE,
    MINED_VARIABLES,
    ThresholdConfig,
)


@dataclass(frozen=True, order=True)
class Item:
    variable: str
    level: str

    def render(self) -> str:
        return f"{self.variable}_{self.level}"

    def __str__(self) -> str:
        return self.render()

    @classmethod
    def parse(cls, text: str) -> "Item":
        variable, sep, level = text.rpartition("_")
        if not sep or not variable or not level:
            raise ValueError(f"cannot parse item {text!r}")
        return cls(variable=variable, level=level)


@dataclass(frozen=True)
class Transaction:
    """One user-day's items (at most one per variable) plus its SQ when known.

    Variables that could not be discretized (missing that day, or excluded
    as constant) are flagged in `missing`.
    """

    items: frozenset[Item]
    sq: float | None = None
    missing: tuple[str, ...] = ()

    def __post_init__(self):
        variables = [item.variable for item in self.items]
        if len(variables) != len(set(variables)):
            raise ValueError("transaction holds more than one item for a variable")

    def rendered(self) -> tuple[str, ...]:
        return tuple(sorted(item.render() for item in self.items))


def discretize(record: DayRecord, profile: UserProfile,
               thresholds: ThresholdConfig) -> Transaction:
    """One item per mined variable; a value exactly on a cut goes to the
    upper level. Missing variables are omitted and flagged."""
    items = set()
    missing = []
    for field_name, item_variable in MINED_VARIABLES.items():
        if item_variable not in thresholds.variable_cuts:
            continue  # excluded (constant) variable
        value = record.get(field_name)
        if value is None:
            missing.append(item_variable)
            continue
        items.add(Item(item_variable, thresholds.level_for(item_variable, value)))
    items.add(Item(CHRONOTYPE_VARIABLE, profile.chronotype))
    return Transaction(items=frozenset(items), sq=record.sq, missing=tuple(missing))


def build_transactions(dataset, thresholds: ThresholdConfig) -> list[Transaction]:
    """Transactions for every user-day with ground-truth SQ (day-level; no
    windowing — patterns describe single days)."""
    transactions = []
    for series in sorted(dataset, key=lambda s: s.user_id):
        for day in series.days:
            if day.sq is None:
                continue
            transactions.append(discretize(day, series.profile, thresholds))
    return transactions


def split_groups(transactions, thresholds: ThresholdConfig):
    """Partition transactions into (low, normal, high) lists by their SQ."""
    groups = {"low": [], "normal": [], "high": []}
    for transaction in transactions:
        if transaction.sq is None:
            raise ValueError("split_groups needs transactions carrying their day's SQ")
        groups[thresholds.sq_group(transaction.sq)].append(transaction)
    return groups["low"], groups["normal"], groups["high"]
