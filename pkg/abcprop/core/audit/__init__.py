"""Empirical proportionality and efficiency audits."""

from abcprop.core.audit.groups import (
    DEFAULT_SEED_GROUPS,
    CohesiveGroup,
    cohesive_groups,
    least_satisfied_subgroup,
)
from abcprop.core.audit.report import (
    AuditReport,
    EjrResult,
    GroupRecord,
    approval_score,
    avg_satisfaction,
    check_ejr,
    empirical_prop_degree,
    top_k_by_approvals,
    utilitarian_ratio,
)

__all__ = [
    "DEFAULT_SEED_GROUPS",
    "AuditReport",
    "CohesiveGroup",
    "EjrResult",
    "GroupRecord",
    "approval_score",
    "avg_satisfaction",
    "check_ejr",
    "cohesive_groups",
    "empirical_prop_degree",
    "least_satisfied_subgroup",
    "top_k_by_approvals",
    "utilitarian_ratio",
]
