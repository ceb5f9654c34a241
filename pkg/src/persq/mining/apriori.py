"""Level-wise Apriori frequent-itemset mining with exact support counts."""

from __future__ import annotations

import math
from itertools import combinations


def apriori(transactions, min_support_fraction: float) -> dict[frozenset, int]:
    """All itemsets occurring in at least ceil(fraction * n) transactions.

    Candidates are generated level-wise by joining frequent (k-1)-itemsets
    sharing a (k-2)-prefix, then pruned: every (k-1)-subset of a k-candidate
    must itself be frequent. Supports are exact transaction counts, obtained
    by intersecting the parents' transaction-id sets.
    """
    if not 0.0 < min_support_fraction <= 1.0:
        raise ValueError(
            f"min_support_fraction must be in (0, 1], got {min_support_fraction}"
        )
    transactions = [frozenset(t) for t in transactions]
    if not transactions:
        raise ValueError("apriori needs at least one transaction")
    min_count = math.ceil(min_support_fraction * len(transactions))

    tidsets: dict[frozenset, frozenset] = {}
    for tid, transaction in enumerate(transactions):
        for item in transaction:
            key = frozenset([item])
            tidsets.setdefault(key, set()).add(tid)

    frequent: dict[frozenset, int] = {}
    current: dict[frozenset, frozenset] = {}
    for itemset, tids in tidsets.items():
        if len(tids) >= min_count:
            frequent[itemset] = len(tids)
            current[itemset] = frozenset(tids)

    k = 2
    while current:
        next_level: dict[frozenset, frozenset] = {}
        for candidate, left, right in _join(current, k):
            tids = current[left] & current[right]
            if len(tids) >= min_count:
                frequent[candidate] = len(tids)
                next_level[candidate] = tids
        current = next_level
        k += 1
    return frequent


def _join(frequent_prev: dict, k: int):
    """Unique k-candidates with the (k-1)-parents that generated them,
    pruned by subset frequency."""
    ordered = sorted(frequent_prev, key=lambda s: tuple(sorted(map(str, s))))
    seen = set()
    for i in range(len(ordered)):
        left_sorted = sorted(ordered[i], key=str)
        for j in range(i + 1, len(ordered)):
            right_sorted = sorted(ordered[j], key=str)
            if left_sorted[:k - 2] != right_sorted[:k - 2]:
                # ordered by prefix: no later pair can share this one's prefix
                break
            candidate = ordered[i] | ordered[j]
            if len(candidate) != k or candidate in seen:
                continue
            seen.add(candidate)
            if all(frozenset(sub) in frequent_prev
                   for sub in combinations(candidate, k - 1)):
                yield candidate, ordered[i], ordered[j]
