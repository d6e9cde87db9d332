#include "outlinekit/grpo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "outlinekit/error.hpp"

namespace outlinekit {

namespace {

constexpr double kMaxLogRatio = 700.0;

void check_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteInput, std::string(what) + " contains a non-finite value");
  }
}

void check_logprobs(std::span<const double> values, const char* what) {
  check_finite(values, what);
  for (double v : values) {
    if (v > 0.0) throw Error(ErrorCode::InvalidInput, std::string(what) + " contains a positive log-probability");
  }
}

void validate_group(const GroupRollout& group) {
  if (group.candidates.size() < 2) {
    throw Error(ErrorCode::GroupTooSmall, "a group needs at least 2 candidates");
  }
  for (std::size_t i = 0; i < group.candidates.size(); ++i) {
    const auto& c = group.candidates[i];
    const std::string tag = "candidate " + std::to_string(i);
    if (c.policy_logprobs.size() != c.old_logprobs.size() || c.policy_logprobs.size() != c.ref_logprobs.size()) {
      throw Error(ErrorCode::LengthMismatch, tag + " has log-probability sequences of unequal length");
    }
    if (c.policy_logprobs.empty()) throw Error(ErrorCode::EmptySequence, tag + " has no tokens");
    check_logprobs(c.policy_logprobs, "policy_logprobs");
    check_logprobs(c.old_logprobs, "old_logprobs");
    check_logprobs(c.ref_logprobs, "ref_logprobs");
    if (!std::isfinite(c.reward)) throw Error(ErrorCode::NonFiniteInput, tag + " has a non-finite reward");
  }
}

}  // namespace

void GrpoConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw Error(ErrorCode::ConfigInvalid, "epsilon must be > 0");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw Error(ErrorCode::ConfigInvalid, "beta must be >= 0");
  if (!(std_floor > 0.0)) throw Error(ErrorCode::ConfigInvalid, "std_floor must be > 0");
}

std::vector<double> group_advantages(std::span<const double> rewards, double std_floor) {
  if (rewards.size() < 2) throw Error(ErrorCode::GroupTooSmall, "a group needs at least 2 rewards");
  check_finite(rewards, "rewards");

  std::vector<double> out(rewards.size(), 0.0);
  if (std::all_of(rewards.begin(), rewards.end(), [&](double r) { return r == rewards.front(); })) return out;

  const double n = static_cast<double>(rewards.size());
  double mean = 0.0;
  for (double r : rewards) mean += r;
  mean /= n;
  double var = 0.0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  const double scale = std::max(std::sqrt(var / n), std_floor);

  for (std::size_t i = 0; i < rewards.size(); ++i) out[i] = (rewards[i] - mean) / scale;
  return out;
}

double clipped_surrogate(double ratio, double advantage, double epsilon) {
  const double clipped = std::clamp(ratio, 1.0 - epsilon, 1.0 + epsilon);
  return std::min(ratio * advantage, clipped * advantage);
}

double sequence_ratio(std::span<const double> policy_logprobs, std::span<const double> old_logprobs) {
  double log_ratio = 0.0;
  for (std::size_t t = 0; t < policy_logprobs.size(); ++t) log_ratio += policy_logprobs[t] - old_logprobs[t];
  return std::exp(std::clamp(log_ratio, -kMaxLogRatio, kMaxLogRatio));
}

double kl_estimate(std::span<const double> policy_logprobs, std::span<const double> ref_logprobs) {
  if (policy_logprobs.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t t = 0; t < policy_logprobs.size(); ++t) {
    const double d = ref_logprobs[t] - policy_logprobs[t];
    total += std::max(0.0, std::expm1(d) - d);
  }
  return total / static_cast<double>(policy_logprobs.size());
}

GrpoResult grpo_objective(const GroupRollout& group, const GrpoConfig& cfg) {
  cfg.validate();
  validate_group(group);

  std::vector<double> rewards;
  rewards.reserve(group.candidates.size());
  for (const auto& c : group.candidates) rewards.push_back(c.reward);
  const std::vector<double> advantages = group_advantages(rewards, cfg.std_floor);

  GrpoResult result;
  result.diagnostics.reserve(group.candidates.size());
  double surrogate_sum = 0.0;
  double kl_sum = 0.0;
  for (std::size_t i = 0; i < group.candidates.size(); ++i) {
    const auto& c = group.candidates[i];
    CandidateDiagnostics d;
    d.ratio = sequence_ratio(c.policy_logprobs, c.old_logprobs);
    d.advantage = advantages[i];
    d.surrogate = clipped_surrogate(d.ratio, d.advantage, cfg.epsilon);
    d.clipped = d.surrogate < d.ratio * d.advantage;
    d.kl = kl_estimate(c.policy_logprobs, c.ref_logprobs);
    surrogate_sum += d.surrogate;
    kl_sum += d.kl;
    result.diagnostics.push_back(d);
  }

  const double g = static_cast<double>(group.candidates.size());
  result.kl = kl_sum / g;
  result.objective = surrogate_sum / g - cfg.beta * result.kl;
  result.loss = -result.objective;
  return result;
}

Reduction parse_reduction(std::string_view name) {
  if (name == "sum") return Reduction::Sum;
  if (name == "token_mean") return Reduction::TokenMean;
  throw Error(ErrorCode::InvalidInput, "unknown reduction '" + std::string(name) + "'");
}

double sft_nll(std::span<const double> token_logprobs, Reduction reduction) {
  if (token_logprobs.empty()) throw Error(ErrorCode::EmptySequence, "no token log-probabilities");
  check_logprobs(token_logprobs, "token_logprobs");
  double total = 0.0;
  for (double lp : token_logprobs) total -= lp;
  if (reduction == Reduction::TokenMean) total /= static_cast<double>(token_logprobs.size());
  return total;
}

}  // namespace outlinekit
