#pragma once

#include <string_view>

#include "outlinekit/outline.hpp"
#include "outlinekit/schema.hpp"
#include "outlinekit/tree_metrics.hpp"

namespace outlinekit {

struct RewardConfig {
  double lambda = 0.9;  // weight of the structural term
  OutlineSchema schema;
  EditCostModel costs;

  void validate() const;
};

struct RewardBreakdown {
  double r_struct = 0.0;
  int r_format = 0;
  double r_total = 0.0;
  double lambda_used = 0.0;
};

/// 1 iff the tree passes validate_schema, else 0.
int format_reward(const OutlineTree& tree, const OutlineSchema& schema, PaperPool pool = std::nullopt);

/// lambda * r_struct + (1 - lambda) * r_format.
RewardBreakdown combine_rewards(double r_struct, int r_format, double lambda);

/// Full reward of a generated outline against its reference.
/// Throws Error(BothEmpty) if both outlines are empty.
RewardBreakdown total_reward(const OutlineTree& gen, const OutlineTree& ref, const RewardConfig& cfg,
                             PaperPool pool = std::nullopt);

/// Text entry point for training loops. A generated outline that fails to
/// parse scores zero on both terms; an unparseable reference throws.
RewardBreakdown total_reward_text(std::string_view gen_text, std::string_view ref_text,
                                  const RewardConfig& cfg, PaperPool pool = std::nullopt);

}  // namespace outlinekit
