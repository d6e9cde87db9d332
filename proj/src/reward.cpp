#include "outlinekit/reward.hpp"

#include <cmath>

#include "outlinekit/error.hpp"

namespace outlinekit {

void RewardConfig::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error(ErrorCode::ConfigInvalid, "lambda must lie in [0, 1]");
  schema.validate();
  costs.validate();
}

int format_reward(const OutlineTree& tree, const OutlineSchema& schema, PaperPool pool) {
  return validate_schema(tree, schema, pool).pass ? 1 : 0;
}

RewardBreakdown combine_rewards(double r_struct, int r_format, double lambda) {
  RewardBreakdown out;
  out.r_struct = r_struct;
  out.r_format = r_format;
  out.lambda_used = lambda;
  out.r_total = lambda * r_struct + (1.0 - lambda) * static_cast<double>(r_format);
  return out;
}

RewardBreakdown total_reward(const OutlineTree& gen, const OutlineTree& ref, const RewardConfig& cfg,
                             PaperPool pool) {
  return combine_rewards(structural_reward(gen, ref, cfg.costs), format_reward(gen, cfg.schema, pool),
                         cfg.lambda);
}

RewardBreakdown total_reward_text(std::string_view gen_text, std::string_view ref_text,
                                  const RewardConfig& cfg, PaperPool pool) {
  const OutlineTree ref = parse_outline(ref_text);
  OutlineTree gen;
  try {
    gen = parse_outline(gen_text);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptyOutline && e.code() != ErrorCode::MalformedHeading) throw;
    return combine_rewards(0.0, 0, cfg.lambda);
  }
  return total_reward(gen, ref, cfg, pool);
}

}  // namespace outlinekit
