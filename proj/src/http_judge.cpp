#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "outlinekit/http_judge.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>
#include <thread>

#include "outlinekit/error.hpp"

namespace outlinekit {

using json = nlohmann::json;

HttpJudgeClient::HttpJudgeClient(JudgeEndpoint endpoint) : endpoint_(std::move(endpoint)) {
  const std::string& url = endpoint_.base_url;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::ConfigInvalid, "judge base_url needs a scheme: '" + url + "'");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  origin_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!path_.empty() && path_.back() == '/') path_.pop_back();
  if (endpoint_.model.empty()) throw Error(ErrorCode::ConfigInvalid, "judge model id is empty");
}

void HttpJudgeClient::wait_for_slot() const {
  if (endpoint_.requests_per_second <= 0.0) return;
  const auto interval = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(1.0 / endpoint_.requests_per_second));
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(rate_mutex_);
    const auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_slot_);
    next_slot_ = slot + interval;
  }
  std::this_thread::sleep_until(slot);
}

std::string HttpJudgeClient::post_once(const std::string& body) const {
  httplib::Client client(origin_);
  const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::duration<double>(endpoint_.timeout_seconds));
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  httplib::Headers headers;
  if (!endpoint_.api_key.empty()) headers.emplace("Authorization", "Bearer " + endpoint_.api_key);

  auto res = client.Post(path_ + "/chat/completions", headers, body, "application/json");
  if (!res) throw std::runtime_error("request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) throw std::runtime_error("HTTP " + std::to_string(res->status));

  const json reply = json::parse(res->body);
  return reply.at("choices").at(0).at("message").at("content").get<std::string>();
}

std::string HttpJudgeClient::complete(const std::string& prompt) const {
  const json request = {
      {"model", endpoint_.model},
      {"temperature", endpoint_.temperature},
      {"messages", json::array({{{"role", "user"}, {"content", prompt}}})},
  };
  const std::string body = request.dump();

  std::string last_error;
  for (int attempt = 0; attempt <= endpoint_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(endpoint_.retry_backoff_ms) * (1 << (attempt - 1)));
    }
    wait_for_slot();
    try {
      return post_once(body);
    } catch (const std::exception& e) {
      last_error = e.what();
    }
  }
  throw Error(ErrorCode::JudgeUnavailable, endpoint_.base_url + ": " + last_error);
}

}  // namespace outlinekit
