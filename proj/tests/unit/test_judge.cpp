#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "doctest.h"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <atomic>
#include <thread>

#include "outlinekit/error.hpp"
#include "outlinekit/http_judge.hpp"
#include "outlinekit/judge.hpp"

using namespace outlinekit;

namespace {

std::vector<CorpusItem> items(std::size_t n) {
  std::vector<CorpusItem> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({"i" + std::to_string(i), "topic " + std::to_string(i), parse_outline("# A\n## B\n# C"),
                   parse_outline("# A\n# C")});
  }
  return out;
}

// Minimal chat-completion server on localhost.
class FakeEndpoint {
 public:
  explicit FakeEndpoint(std::function<void(const httplib::Request&, httplib::Response&)> handler) {
    server_.Post("/v1/chat/completions", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeEndpoint() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

void reply_with(httplib::Response& res, const std::string& content) {
  const nlohmann::json body = {{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}}};
  res.set_content(body.dump(), "application/json");
}

}  // namespace

TEST_CASE("aggregate total") {
  const std::array<double, 5> scores{7.80, 7.21, 7.93, 6.00, 8.29};
  CHECK(aggregate_total(scores) == doctest::Approx(37.23).epsilon(1e-12));
}

TEST_CASE("score parsing") {
  CHECK(parse_judge_score("ANSWER: 7.5") == 7.5);
  CHECK(parse_judge_score("thinking...\nanswer:  8") == 8.0);
  CHECK(parse_judge_score("Answer: score 6.25/10") == 6.25);
  CHECK(parse_judge_score("ANSWER: 12") == 10.0);
  CHECK(parse_judge_score("ANSWER: -3") == 0.0);
  CHECK(parse_judge_score("ANSWER: n/a\nANSWER: 4") == 4.0);
  CHECK_THROWS_AS(parse_judge_score("7.5"), Error);
  ErrorCode code = ErrorCode::Io;
  try {
    parse_judge_score("ANSWER: none");
  } catch (const Error& e) {
    code = e.code();
  }
  CHECK(code == ErrorCode::NoScoreFound);
}

TEST_CASE("prompts carry the rubric and the outline") {
  const auto outline = parse_outline("# Intro\n## Scope");
  for (Criterion c : kCriteria) {
    const auto prompt = build_judge_prompt(c, "graph learning", outline);
    CHECK(prompt.find(rubric_text(c)) != std::string::npos);
    CHECK(prompt.find("## Scope") != std::string::npos);
    CHECK(prompt.find(kAnswerMarker) != std::string::npos);
  }
  CHECK_THROWS_AS(build_judge_prompt(Criterion::ContentDepth, "t", OutlineTree()), Error);
}

TEST_CASE("judge one outline") {
  const ConstantJudge judge(8.0);
  const auto gen = parse_outline("# A\n# B");
  const auto report = judge_outline("t", gen, &gen, judge);
  CHECK(report.total == 40.0);
  CHECK(report.structural_distance == 0.0);
  CHECK(report.raw_responses.size() == 5);
  CHECK(report.judge_model_id == "mock-constant-8.0");

  std::atomic<int> n{0};
  const ScriptedJudge alternating([&](const std::string&) { return n++ % 2 ? "ANSWER: 6" : "ANSWER: 9"; }, "alt");
  const auto sampled = judge_outline("t", gen, nullptr, alternating, 2);
  for (double s : sampled.scores) CHECK(s == 7.5);
  CHECK_FALSE(sampled.structural_distance.has_value());
}

TEST_CASE("corpus evaluation and table") {
  const ConstantJudge judge(8.0);
  const auto report = evaluate_corpus(items(3), judge, 2);
  CHECK(report.succeeded == 3);
  CHECK(report.mean_total == 40.0);
  CHECK(report.mean_distance == doctest::Approx(1.0 / 3.0));
  const auto table = format_table(report);
  CHECK(table.find("Structure Locate") != std::string::npos);
  CHECK(table.find("40.00") != std::string::npos);
  CHECK(table.find("0.33") != std::string::npos);
  CHECK(table.find("excluded") == std::string::npos);
  CHECK_THROWS_AS(evaluate_corpus({}, judge), Error);
}

TEST_CASE("http judge client talks chat completions") {
  std::atomic<int> calls{0};
  std::string seen_auth;
  nlohmann::json seen_body;
  FakeEndpoint server([&](const httplib::Request& req, httplib::Response& res) {
    ++calls;
    seen_auth = req.get_header_value("Authorization");
    seen_body = nlohmann::json::parse(req.body);
    reply_with(res, "Fine structure.\nANSWER: 7.0");
  });

  JudgeEndpoint endpoint;
  endpoint.base_url = server.url();
  endpoint.model = "judge-x";
  endpoint.api_key = "secret";
  endpoint.requests_per_second = 0;
  const HttpJudgeClient client(endpoint);
  const auto report = judge_outline("t", parse_outline("# A\n# B"), nullptr, client);
  CHECK(report.total == 35.0);
  CHECK(calls == 5);
  CHECK(seen_auth == "Bearer secret");
  CHECK(seen_body["model"] == "judge-x");
  CHECK(seen_body["messages"][0]["role"] == "user");
  CHECK(client.model_id() == "judge-x");
}

TEST_CASE("http judge retries then gives up") {
  std::atomic<int> calls{0};
  FakeEndpoint server([&](const httplib::Request&, httplib::Response& res) {
    if (calls++ == 0) {
      res.status = 503;
      return;
    }
    reply_with(res, "ANSWER: 5");
  });
  JudgeEndpoint endpoint;
  endpoint.base_url = server.url();
  endpoint.requests_per_second = 0;
  endpoint.retry_backoff_ms = 1;
  CHECK(HttpJudgeClient(endpoint).complete("x") == "ANSWER: 5");
  CHECK(calls == 2);

  JudgeEndpoint dead;
  dead.base_url = "http://127.0.0.1:1/v1";
  dead.max_retries = 1;
  dead.retry_backoff_ms = 1;
  dead.timeout_seconds = 2;
  dead.requests_per_second = 0;
  try {
    HttpJudgeClient(dead).complete("x");
    FAIL("expected JudgeUnavailable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::JudgeUnavailable);
  }
  const HttpJudgeClient dead_client(dead);
  auto corpus = items(2);
  CHECK_THROWS_AS(evaluate_corpus(corpus, dead_client), Error);
  CHECK_THROWS_AS(HttpJudgeClient(JudgeEndpoint{"no-scheme"}), Error);
}
