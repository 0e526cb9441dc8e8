"""Test helpers for deterministic election cases."""

from __future__ import annotations

import os
import random
from pathlib import Path

from abcprop.core.model.io import write_profile_file
from abcprop.core.model.profile import ApprovalProfile

SLOW_TESTS = os.environ.get("ABCPROP_SLOW_TESTS", "") == "1"


def random_profile(
    rng: random.Random,
    max_voters: int = 12,
    max_candidates: int = 8,
    approval_probability: float = 0.4,
) -> ApprovalProfile:
    """Draw a profile of unit-weight voters with independent approvals (duplicates merged)."""
    num_candidates = rng.randint(2, max_candidates)
    num_voters = rng.randint(1, max_voters)
    ballots = []
    for _ in range(num_voters):
        approved = [
            c for c in range(1, num_candidates + 1) if rng.random() < approval_probability
        ]
        if not approved:
            approved = [rng.randint(1, num_candidates)]
        ballots.append((1, approved))
    return ApprovalProfile.build(num_candidates, ballots)


def approved_candidates(profile: ApprovalProfile) -> list[int]:
    """Candidates with at least one approver."""
    return sorted(frozenset().union(*(group.approved for group in profile.groups)))


def write_profile_to(directory: Path, profile: ApprovalProfile, name: str = "profile.abc") -> Path:
    """Persist ``profile`` under ``directory``."""
    return write_profile_file(directory / name, profile)
