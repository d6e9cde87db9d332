#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace outlinekit {

/// One sampled outline: per-token log-probabilities under the current,
/// sampling-time and reference policies, plus its scalar reward.
struct Candidate {
  std::vector<double> policy_logprobs;
  std::vector<double> old_logprobs;
  std::vector<double> ref_logprobs;
  double reward = 0.0;
};

struct GroupRollout {
  std::vector<Candidate> candidates;
};

struct GrpoConfig {
  double epsilon = 0.2;
  double beta = 0.04;
  double std_floor = 1e-8;

  void validate() const;
};

struct CandidateDiagnostics {
  double ratio = 1.0;
  double advantage = 0.0;
  double surrogate = 0.0;  // min(r*A, clip(r)*A)
  bool clipped = false;    // the clipped branch was strictly smaller
  double kl = 0.0;         // token-mean KL estimate for this candidate
};

struct GrpoResult {
  double objective = 0.0;  // maximized by the policy update
  double loss = 0.0;       // -objective
  double kl = 0.0;         // group mean of the per-candidate KL estimates
  std::vector<CandidateDiagnostics> diagnostics;
};

/// (R_i - mean) / max(population std, std_floor). A group whose rewards are
/// all equal maps to exact zeros. Throws Error(GroupTooSmall) for G < 2.
std::vector<double> group_advantages(std::span<const double> rewards, double std_floor = 1e-8);

/// min(ratio * advantage, clip(ratio, 1 - epsilon, 1 + epsilon) * advantage).
double clipped_surrogate(double ratio, double advantage, double epsilon);

/// exp(sum(policy - old)) evaluated in log space; the exponent saturates at
/// +/-700 so extreme sequences cannot overflow.
double sequence_ratio(std::span<const double> policy_logprobs, std::span<const double> old_logprobs);

/// Token mean of exp(d) - d - 1 with d = ref - policy. Always >= 0 and exactly
/// 0 when the two sequences are equal.
double kl_estimate(std::span<const double> policy_logprobs, std::span<const double> ref_logprobs);

/// Clipped group-relative surrogate with a KL penalty toward the reference
/// policy. Validates the rollout first: Error(GroupTooSmall),
/// Error(LengthMismatch), Error(EmptySequence), Error(NonFiniteInput) and
/// Error(InvalidInput) for positive log-probabilities.
GrpoResult grpo_objective(const GroupRollout& group, const GrpoConfig& cfg = {});

enum class Reduction { Sum, TokenMean };

Reduction parse_reduction(std::string_view name);

/// Negative log-likelihood of a target sequence given its token
/// log-probabilities.
double sft_nll(std::span<const double> token_logprobs, Reduction reduction = Reduction::Sum);

}  // namespace outlinekit
