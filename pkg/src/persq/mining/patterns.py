"""Retained pattern sets per SQ group, plus their CSV wire format."""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from pathlib import Path

from ..errors import SchemaError
from .apriori import apriori
from .thresholds import ThresholdConfig
from .transactions import Item, Transaction, build_transactions, split_groups

GROUPS = ("low", "normal", "high")
DEFAULT_MIN_SUPPORT = 0.20


@dataclass(frozen=True)
class Pattern:
    items: tuple[Item, ...]  # canonically sorted
    support_count: int
    group: str

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(sorted(self.items)))
        if self.group not in GROUPS:
            raise ValueError(f"group must be one of {GROUPS}, got {self.group!r}")

    def item_set(self) -> frozenset[Item]:
        return frozenset(self.items)

    def rendered(self) -> tuple[str, ...]:
        return tuple(item.render() for item in self.items)


@dataclass(frozen=True)
class PatternSets:
    low: tuple[Pattern, ...] = ()
    normal: tuple[Pattern, ...] = ()
    high: tuple[Pattern, ...] = ()

    def for_group(self, group: str) -> tuple[Pattern, ...]:
        if group not in GROUPS:
            raise ValueError(f"group must be one of {GROUPS}, got {group!r}")
        return getattr(self, group)

    def counts(self) -> dict[str, int]:
        return {group: len(self.for_group(group)) for group in GROUPS}


def _sort_key(pattern: Pattern):
    return (-pattern.support_count, -len(pattern.items), pattern.rendered())


def prune_retained(frequent: dict[frozenset, int], group: str) -> list[Pattern]:
    """Keep only the longest and second-longest frequent itemsets."""
    if not frequent:
        return []
    longest = max(len(itemset) for itemset in frequent)
    keep_sizes = {longest, longest - 1} if longest > 1 else {longest}
    patterns = [
        Pattern(items=tuple(itemset), support_count=count, group=group)
        for itemset, count in frequent.items()
        if len(itemset) in keep_sizes
    ]
    return sorted(patterns, key=_sort_key)


def mine_group(transactions: list[Transaction], group: str,
               min_support_fraction: float) -> tuple[Pattern, ...]:
    if not transactions:
        warnings.warn(f"group {group}: no transactions, mining skipped")
        return ()
    frequent = apriori([t.items for t in transactions], min_support_fraction)
    return tuple(prune_retained(frequent, group))


def mine_all(dataset, thresholds: ThresholdConfig,
             min_support_fraction: float = DEFAULT_MIN_SUPPORT) -> PatternSets:
    """split_groups -> apriori per group -> prune to retained patterns."""
    transactions = build_transactions(dataset, thresholds)
    if not transactions:
        return PatternSets()
    low, normal, high = split_groups(transactions, thresholds)
    return PatternSets(
        low=mine_group(low, "low", min_support_fraction),
        normal=mine_group(normal, "normal", min_support_fraction),
        high=mine_group(high, "high", min_support_fraction),
    )


def write_patterns_csv(patterns, path) -> None:
    """Rows `group,items,support_count`; items semicolon-joined, sorted."""
    with open(Path(path), "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(("group", "items", "support_count"))
        for pattern in patterns:
            writer.writerow((pattern.group, ";".join(pattern.rendered()),
                             pattern.support_count))


def read_patterns_csv(path) -> list[Pattern]:
    path = Path(path)
    patterns = []
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if {"group", "items", "support_count"} - set(reader.fieldnames or ()):
            raise SchemaError(f"{path}: missing mandatory column(s)")
        for row in reader:
            items = tuple(Item.parse(text) for text in row["items"].split(";") if text)
            patterns.append(Pattern(
                items=items,
                support_count=int(row["support_count"]),
                group=row["group"],
            ))
    return patterns


def save_pattern_sets(sets: PatternSets, out_dir) -> dict[str, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {}
    for group in GROUPS:
        path = out_dir / f"patterns_{group}.csv"
        write_patterns_csv(sets.for_group(group), path)
        paths[group] = path
    return paths


def load_pattern_sets(directory) -> PatternSets:
    directory = Path(directory)
    loaded = {}
    for group in GROUPS:
        path = directory / f"patterns_{group}.csv"
        loaded[group] = tuple(read_patterns_csv(path)) if path.exists() else ()
    return PatternSets(**loaded)
