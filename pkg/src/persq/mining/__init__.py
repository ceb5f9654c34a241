"""Frequent life-event pattern mining per SQ group."""

from .apriori import apriori
from .patterns import (
    DEFAULT_MIN_SUPPORT,
    GROUPS,
    Pattern,
    PatternSets,
    load_pattern_sets,
    mine_all,
    mine_group,
    prune_retained,
    read_patterns_csv,
    save_pattern_sets,
    write_patterns_csv,
)
from .thresholds import (
    CHRONOTYPE_RANK,
    CHRONOTYPE_VARIABLE,
    ITEM_TO_FIELD,
    LEVEL_RANK,
    LEVELS,
    MINED_VARIABLES,
    ThresholdConfig,
    classify,
    default_thresholds,
    load_thresholds,
    save_thresholds,
)
from .transactions import Item, Transaction, build_transactions, discretize, split_groups

__all__ = [
    "apriori", "Pattern", "PatternSets", "mine_all", "mine_group", "prune_retained",
    "GROUPS", "DEFAULT_MIN_SUPPORT", "write_patterns_csv", "read_patterns_csv",
    "save_pattern_sets", "load_pattern_sets", "ThresholdConfig", "default_thresholds",
    "load_thresholds", "save_thresholds", "classify", "MINED_VARIABLES", "ITEM_TO_FIELD",
    "LEVELS", "LEVEL_RANK", "CHRONOTYPE_VARIABLE", "CHRONOTYPE_RANK",
    "Item", "Transaction", "discretize", "build_transactions", "split_groups",
]
