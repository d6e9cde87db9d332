"""Outline rewards, distances and GRPO loss kernels."""

from ._core import (
    BoundReward,
    EditCostModel,
    OutlinekitError,
    OutlineSchema,
    RewardConfig,
    __version__,
    bind_reward,
    canonical_outline,
    distance_report,
    format_reward,
    group_advantages,
    grpo_objective,
    sft_nll,
    tree_edit_distance,
)

__all__ = [
    "BoundReward",
    "EditCostModel",
    "OutlinekitError",
    "OutlineSchema",
    "RewardConfig",
    "__version__",
    "bind_reward",
    "canonical_outline",
    "distance_report",
    "format_reward",
    "group_advantages",
    "grpo_objective",
    "sft_nll",
    "tree_edit_distance",
]
