"""Shared fixtures, most importantly the hand-built case-study world used by
the feedback, service and acceptance tests (see _world.py)."""

from __future__ import annotations

import pytest

from persq.datagen import generate_dataset
from persq.ingest.records import UserSeries

from _world import CaseStudyWorld, build_case_study


@pytest.fixture
def case_study() -> CaseStudyWorld:
    return build_case_study()


@pytest.fixture(scope="session")
def synthetic_dataset() -> list[UserSeries]:
    """Small planted-lag dataset shared by evaluation-oriented tests."""
    return generate_dataset(n_users=4, n_days=90, seed=11)
