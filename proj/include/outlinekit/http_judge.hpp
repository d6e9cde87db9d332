#pragma once

#include <chrono>
#include <mutex>
#include <string>

#include "outlinekit/judge.hpp"

namespace outlinekit {

struct JudgeEndpoint {
  std::string base_url = "https://api.openai.com/v1";
  std::string model = "gpt-4o-mini";
  std::string api_key;
  double timeout_seconds = 60.0;
  int max_retries = 3;
  double requests_per_second = 2.0;  // <= 0 disables rate limiting
  double temperature = 0.0;
  int retry_backoff_ms = 500;
};

/// Chat-completion client ("POST {base_url}/chat/completions"). Requests from
/// all threads share one rate limiter; failures are retried with exponential
/// backoff before Error(JudgeUnavailable) is thrown.
class HttpJudgeClient final : public JudgeClient {
 public:
  explicit HttpJudgeClient(JudgeEndpoint endpoint);

  std::string complete(const std::string& prompt) const override;
  std::string model_id() const override { return endpoint_.model; }

 private:
  void wait_for_slot() const;
  std::string post_once(const std::string& body) const;

  JudgeEndpoint endpoint_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;    // path prefix, no trailing slash
  mutable std::mutex rate_mutex_;
  mutable std::chrono::steady_clock::time_point next_slot_{};
};

}  // namespace outlinekit
