// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances are fixed in the checks below.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "../oracles/grpo_oracle.hpp"
#include "../oracles/ted_oracle.hpp"
#include "../support/tree_gen.hpp"
#include "outlinekit/cli.hpp"
#include "outlinekit/curation.hpp"
#include "outlinekit/error.hpp"
#include "outlinekit/grpo.hpp"
#include "outlinekit/judge.hpp"
#include "outlinekit/reward.hpp"
#include "outlinekit/tree_metrics.hpp"

namespace fs = std::filesystem;
using namespace outlinekit;
using nlohmann::json;
using testing::all_depth_sequences;
using testing::random_tree;
using testing::tree_from_depths;

namespace {

const fs::path kFixtures = OUTLINEKIT_FIXTURE_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("outlinekit-acceptance-" + std::to_string(std::random_device{}()) + "-" + name);
  fs::create_directories(dir);
  return dir;
}

std::vector<json> read_jsonl(const fs::path& p) {
  std::ifstream in(p);
  std::vector<json> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

void depths_of(const OutlineNode& node, std::vector<int>& out) {
  for (const auto& child : node.children) {
    out.push_back(child.level);
    depths_of(child, out);
  }
}

std::vector<int> shape_key(const OutlineTree& t) {
  std::vector<int> out;
  depths_of(t.root(), out);
  return out;
}

// ---------------------------------------------------------------------------

Outcome ted_oracle_equivalence() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const EditCostModel shape{};
  const EditCostModel labels{1.0, 1.0, RelabelMode::LabelAware};
  const EditCostModel skewed{1.0, 2.5, RelabelMode::ShapeOnly};

  std::vector<OutlineTree> shapes;
  std::vector<OutlineTree> labelled;
  for (int n = 0; n <= 4; ++n) {
    for (const auto& depths : all_depth_sequences(n)) {
      shapes.push_back(tree_from_depths(depths));
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back((mask >> i) & 1u ? "b" : "a");
        labelled.push_back(tree_from_depths(depths, names));
      }
    }
  }
  std::size_t exhaustive = 0;
  auto compare = [&](const OutlineTree& a, const OutlineTree& b, const EditCostModel& c) {
    const double fast = tree_edit_distance(a, b, c);
    const double slow = oracle::brute_force_ted(a, b, c);
    if (std::abs(fast - slow) > 1e-9) o.fail(fmt("mismatch %.3f vs oracle %.3f", fast, slow));
  };
  for (const auto& a : shapes) {
    for (const auto& b : shapes) {
      compare(a, b, shape);
      compare(a, b, skewed);
      exhaustive += 2;
    }
  }
  for (const auto& a : labelled) {
    for (const auto& b : labelled) {
      compare(a, b, labels);
      ++exhaustive;
    }
  }

  std::mt19937_64 rng(101);
  for (int k = 0; k < 200; ++k) {
    const auto a = random_tree(rng, 12, 3);
    const auto b = random_tree(rng, 12, 3);
    compare(a, b, k % 2 == 0 ? shape : labels);
  }

  std::size_t axioms = 0;
  for (int k = 0; k < 500; ++k) {
    const auto& costs = k % 2 == 0 ? shape : labels;
    const auto x = random_tree(rng, 12, 2);
    const auto y = random_tree(rng, 12, 2);
    const auto z = random_tree(rng, 12, 2);
    const double xy = tree_edit_distance(x, y, costs);
    const double yx = tree_edit_distance(y, x, costs);
    const double yz = tree_edit_distance(y, z, costs);
    const double xz = tree_edit_distance(x, z, costs);
    if (tree_edit_distance(x, x, costs) != 0.0) o.fail("d(x, x) != 0");
    if (xy < 0.0) o.fail("negative distance");
    if (xy != yx) o.fail("asymmetric distance");
    if (xz > xy + yz + 1e-9) o.fail("triangle inequality violated");
    const bool same = costs.relabel_mode == RelabelMode::LabelAware ? canonical_equal(x, y)
                                                                    : shape_key(x) == shape_key(y);
    if ((xy == 0.0) != same) o.fail("d = 0 does not coincide with equal trees");
    axioms += 4;
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 60.0) o.fail(fmt("took %.1fs (limit 60s)", elapsed));
  if (o.pass) {
    o.detail = std::to_string(exhaustive) + " exhaustive pairs (<=4 nodes), 200 random pairs (<=12 nodes), " +
               std::to_string(axioms) + " axiom checks on 500 triples in " + fmt("%.1fs", elapsed);
  }
  return o;
}

Outcome self_distance() {
  Outcome o;
  std::mt19937_64 rng(202);
  std::vector<OutlineTree> trees;
  for (int k = 0; k < 300; ++k) {
    auto t = random_tree(rng, 40, 5, 4);
    if (!t.empty()) trees.push_back(std::move(t));
  }
  for (const auto& line : read_jsonl(kFixtures / "outlines" / "corpus.jsonl")) {
    trees.push_back(parse_outline(line["text"].get<std::string>()));
  }
  RewardConfig cfg;
  std::size_t format_passing = 0;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const auto& t = trees[i];
    cfg.costs.relabel_mode = i % 2 == 0 ? RelabelMode::ShapeOnly : RelabelMode::LabelAware;
    const auto report = distance_report(t, t, cfg.costs);
    if (report.normalized_distance != 0.0 || report.ted != 0.0) o.fail("nonzero self distance");
    const auto reward = total_reward(t, t, cfg);
    if (reward.r_struct != 1.0) o.fail("structural reward of a self pair is not 1");
    if (reward.r_format == 1) {
      ++format_passing;
      if (reward.r_total != 1.0) o.fail("total reward of a format-passing self pair is not 1");
    }
  }
  if (o.pass) {
    o.detail = std::to_string(trees.size()) + " outlines: distance 0.000, r_struct 1.000; r_total 1.000 for the " +
               std::to_string(format_passing) + " that pass the schema";
  }
  return o;
}

Outcome aggregate_totals() {
  Outcome o;
  const std::vector<double> a{7.80, 7.21, 7.93, 6.00, 8.29};
  const std::vector<double> b{8.09, 5.31, 8.15, 5.75, 8.85};
  const double ta = aggregate_total(a);
  const double tb = aggregate_total(b);
  if (std::abs(ta - 37.23) > 0.005) o.fail(fmt("first total %.4f, expected 37.23", ta));
  if (std::abs(tb - 36.15) > 0.005) o.fail(fmt("second total %.4f, expected 36.15", tb));
  if (o.pass) o.detail = fmt("totals %.2f and %.2f (tolerance 0.005)", ta, tb);
  return o;
}

Outcome reward_algebra() {
  Outcome o;
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double s = k % 50 == 0 ? (k % 100 == 0 ? 0.0 : 1.0) : unit(rng);
    const int f = static_cast<int>(rng() % 2);
    const double lambda = k % 70 == 0 ? static_cast<double>(k % 140 == 0) : unit(rng);
    const auto r = combine_rewards(s, f, lambda);
    const long double expected = static_cast<long double>(lambda) * s + (1.0L - lambda) * f;
    const double err = static_cast<double>(std::fabs(static_cast<long double>(r.r_total) - expected));
    worst = std::max(worst, err);
    if (err > 1e-12) o.fail(fmt("combine error %.3g", err));
    if (r.r_total < 0.0 || r.r_total > 1.0) o.fail("r_total outside [0, 1]");
    if (r.r_format != f) o.fail("format term altered");
  }

  RewardConfig cfg;
  for (int k = 0; k < 1000; ++k) {
    cfg.lambda = unit(rng);
    const auto gen = random_tree(rng, 20, 4, 4);
    auto ref = random_tree(rng, 20, 4, 4);
    if (gen.empty() && ref.empty()) ref = tree_from_depths({1});
    const auto r = total_reward(gen, ref, cfg);
    if (r.r_format != 0 && r.r_format != 1) o.fail("format reward not binary");
    if (r.r_struct < 0.0 || r.r_struct > 1.0) o.fail("structural reward outside [0, 1]");
    if (r.r_total < 0.0 || r.r_total > 1.0) o.fail("r_total outside [0, 1]");
    const double expected = cfg.lambda * r.r_struct + (1.0 - cfg.lambda) * r.r_format;
    if (std::abs(r.r_total - expected) > 1e-12) o.fail("total reward does not match its terms");
  }
  if (o.pass) o.detail = fmt("1000 synthetic + 1000 outline triples, max error %.2g (tolerance 1e-12)", worst);
  return o;
}

double population_std(const std::vector<double>& v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

Outcome advantage_properties() {
  Outcome o;
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double floor = 1e-8;
  std::size_t constant = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto g = static_cast<std::size_t>(2 + rng() % 63);
    std::vector<double> r(g);
    if (k % 10 == 0) {
      std::fill(r.begin(), r.end(), unit(rng));
    } else if (k % 10 == 1) {
      for (auto& x : r) x = static_cast<double>(rng() % 2);  // binary rewards, may be constant
    } else {
      for (auto& x : r) x = unit(rng) * 10.0 - 5.0;
    }
    const auto adv = group_advantages(r, floor);
    const double in_std = population_std(r);
    const bool all_equal = std::all_of(r.begin(), r.end(), [&](double x) { return x == r[0]; });
    if (all_equal) {
      ++constant;
      if (std::any_of(adv.begin(), adv.end(), [](double a) { return a != 0.0; })) {
        o.fail("constant group did not give exact zeros");
      }
      continue;
    }
    const double mean = std::accumulate(adv.begin(), adv.end(), 0.0) / static_cast<double>(g);
    if (std::abs(mean) >= 1e-9) o.fail(fmt("advantage mean %.3g", mean));
    if (in_std > floor && std::abs(population_std(adv) - 1.0) > 1e-9) {
      o.fail(fmt("advantage std %.12f", population_std(adv)));
    }
    const double a = 0.1 + unit(rng) * 9.9;
    const double b = unit(rng) * 10.0 - 5.0;
    std::vector<double> moved(r);
    for (auto& x : moved) x = a * x + b;
    const auto adv2 = group_advantages(moved, floor);
    for (std::size_t i = 0; i < g; ++i) {
      if (std::abs(adv[i] - adv2[i]) > 1e-9) o.fail(fmt("affine change moved an advantage by %.3g", adv[i] - adv2[i]));
    }
  }
  if (o.pass) {
    o.detail = "1000 groups (G in [2, 64], " + std::to_string(constant) +
               " constant): mean < 1e-9, std within 1e-9 of 1, affine invariance within 1e-9";
  }
  return o;
}

Candidate random_candidate(std::mt19937_64& rng, std::size_t len) {
  std::uniform_real_distribution<double> lp(-3.0, -0.01);
  std::normal_distribution<double> jitter(0.0, 0.05);
  Candidate c;
  for (std::size_t t = 0; t < len; ++t) {
    const double base = lp(rng);
    c.old_logprobs.push_back(base);
    c.policy_logprobs.push_back(std::min(-1e-6, base + jitter(rng)));
    c.ref_logprobs.push_back(std::min(-1e-6, base + jitter(rng)));
  }
  c.reward = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return c;
}

Outcome grpo_checks() {
  Outcome o;
  std::mt19937_64 rng(505);

  for (int k = 0; k < 50; ++k) {
    GroupRollout group;
    const auto g = 2 + rng() % 15;
    for (std::size_t i = 0; i < g; ++i) {
      auto c = random_candidate(rng, 1 + rng() % 30);
      c.policy_logprobs = c.old_logprobs;
      c.ref_logprobs = c.old_logprobs;
      group.candidates.push_back(std::move(c));
    }
    const auto res = grpo_objective(group);
    if (std::abs(res.objective) > 1e-12) o.fail(fmt("identity objective %.3g", res.objective));
    if (res.kl != 0.0) o.fail("identity KL is not exactly 0");
  }

  // Plateau: a candidate already clipped stays clipped under a small nudge.
  GrpoConfig flat{0.2, 0.0, 1e-8};
  for (int k = 0; k < 50; ++k) {
    GroupRollout group;
    for (int i = 0; i < 4; ++i) group.candidates.push_back(random_candidate(rng, 5));
    group.candidates[0].reward = 2.0;  // positive advantage
    group.candidates[1].reward = -2.0;  // negative advantage
    group.candidates[0].old_logprobs[0] = -2.0;
    group.candidates[1].old_logprobs[0] = -2.0;
    group.candidates[0].policy_logprobs = group.candidates[0].old_logprobs;
    group.candidates[0].policy_logprobs[0] += std::log(1.6);
    group.candidates[1].policy_logprobs = group.candidates[1].old_logprobs;
    group.candidates[1].policy_logprobs[0] += std::log(0.5);
    for (auto& c : group.candidates) {
      for (auto& x : c.policy_logprobs) x = std::min(x, -1e-6);
    }
    const auto before = grpo_objective(group, flat);
    auto nudged = group;
    nudged.candidates[0].policy_logprobs[1] -= 0.01;
    nudged.candidates[1].policy_logprobs[1] += 0.01;
    const auto after = grpo_objective(nudged, flat);
    if (!before.diagnostics[0].clipped || !before.diagnostics[1].clipped) o.fail("plateau setup not clipped");
    if (std::abs(after.objective - before.objective) >= 1e-12) {
      o.fail(fmt("objective moved by %.3g on the clip plateau", after.objective - before.objective));
    }
  }

  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    GroupRollout group;
    const auto g = 2 + rng() % 15;
    for (std::size_t i = 0; i < g; ++i) group.candidates.push_back(random_candidate(rng, 1 + rng() % 20));
    GrpoConfig cfg{0.05 + 0.3 * std::uniform_real_distribution<double>(0, 1)(rng),
                   0.1 * std::uniform_real_distribution<double>(0, 1)(rng), 1e-8};
    const auto fast = grpo_objective(group, cfg);
    const auto slow = oracle::scalar_grpo(group, cfg.epsilon, cfg.beta);
    worst = std::max(worst, std::abs(fast.objective - slow.objective));
    for (std::size_t i = 0; i < g; ++i) {
      worst = std::max(worst, std::abs(fast.diagnostics[i].ratio - slow.ratios[i]));
      worst = std::max(worst, std::abs(fast.diagnostics[i].kl - slow.kls[i]));
    }
  }
  if (worst > 1e-9) o.fail(fmt("oracle mismatch %.3g", worst));
  if (o.pass) {
    o.detail = fmt("identity objective 0 and KL exactly 0 (50 groups); plateau change < 1e-12 (50 groups, beta 0); "
                   "200 groups vs scalar oracle, max error %.2g",
                   worst);
  }
  return o;
}

Outcome sft_checks() {
  Outcome o;
  std::mt19937_64 rng(606);
  // Log-probabilities on a 1/1024 grid: every partial sum is exact in double.
  auto sequence = [&](std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = -static_cast<double>(rng() % 20481) / 1024.0;
    return v;
  };
  for (int k = 0; k < 100; ++k) {
    const auto a = sequence(1 + rng() % 200);
    double hand = 0.0;
    for (std::size_t i = a.size(); i-- > 0;) hand -= a[i];
    const double sum = sft_nll(a, Reduction::Sum);
    const double mean = sft_nll(a, Reduction::TokenMean);
    if (std::abs(sum - hand) > 1e-12) o.fail(fmt("sum %.17g vs hand %.17g", sum, hand));
    if (std::abs(mean - hand / static_cast<double>(a.size())) > 1e-12) o.fail("token mean mismatch");

    const auto b = sequence(1 + rng() % 200);
    std::vector<double> ab(a);
    ab.insert(ab.end(), b.begin(), b.end());
    if (sft_nll(ab, Reduction::Sum) != sft_nll(a, Reduction::Sum) + sft_nll(b, Reduction::Sum)) {
      o.fail("sum reduction not exactly additive");
    }
  }
  if (o.pass) o.detail = "100 sequences within 1e-12 of hand sums; concatenation additive exactly (sum mode)";
  return o;
}

Outcome curation_golden() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const json expected = json::parse(std::ifstream(kFixtures / "curation" / "expected.json"));
  const auto dir = scratch_dir("curate");

  cli::CurateArgs args;
  args.snapshots = {kFixtures / "curation" / "snapshot.jsonl"};
  args.out = dir / "records.jsonl";
  std::ostringstream out, err;
  const int status = cli::cmd_curate(args, CliConfig{}, out, err);
  if (status != 0) {
    o.fail("cmd_curate exited " + std::to_string(status) + ": " + err.str());
    return o;
  }

  std::vector<std::string> accepted;
  for (const auto& r : read_jsonl(args.out)) accepted.push_back(r["id"].get<std::string>());
  const auto golden = expected["accepted"].get<std::vector<std::string>>();
  if (accepted != golden) {
    o.fail("accepted ids differ: got " + std::to_string(accepted.size()) + ", expected " +
           std::to_string(golden.size()));
  }

  const auto rejections = read_jsonl(fs::path(args.out.string() + ".rejections.jsonl"));
  const auto& want = expected["rejections"];
  if (rejections.size() != want.size()) {
    o.fail("rejection count " + std::to_string(rejections.size()) + ", expected " + std::to_string(want.size()));
  } else {
    for (std::size_t i = 0; i < want.size(); ++i) {
      const auto& got = rejections[i];
      if (got["record_id"] != want[i]["id"] || got["stage"] != want[i]["stage"] ||
          got["reason"].get<std::string>().find(want[i]["reason"].get<std::string>()) == std::string::npos) {
        o.fail("rejection " + want[i]["id"].get<std::string>() + " expected stage " +
               want[i]["stage"].get<std::string>() + " (" + want[i]["reason"].get<std::string>() + "), got " +
               got.dump());
        break;
      }
    }
  }
  if (err.str().find("skipped") == std::string::npos) o.fail("malformed line was not logged");
  const auto exact_line = "abstracts completed exact: " + std::to_string(expected["abstracts_exact"].get<int>());
  if (out.str().find(exact_line) == std::string::npos) o.fail("exact abstract completions differ from golden");

  const double elapsed = seconds_since(t0);
  if (elapsed >= 10.0) o.fail(fmt("took %.1fs (limit 10s)", elapsed));
  fs::remove_all(dir);
  if (o.pass) {
    o.detail = std::to_string(golden.size()) + " accepted, " + std::to_string(want.size()) +
               " rejections with matching stages, " + fmt("%.2fs", elapsed);
  }
  return o;
}

OutlineNode node_from_golden(const json& j) {
  OutlineNode n;
  n.heading = j["heading"].get<std::string>();
  n.citations = j["citations"].get<std::vector<std::string>>();
  for (const auto& c : j["children"]) n.children.push_back(node_from_golden(c));
  return n;
}

bool exactly_equal(const OutlineNode& a, const OutlineNode& b) {
  if (a.heading != b.heading || a.citations != b.citations || a.level != b.level) return false;
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!exactly_equal(a.children[i], b.children[i])) return false;
  }
  return true;
}

Outcome parser_corpus() {
  Outcome o;
  std::size_t count = 0;
  std::size_t clamped = 0;
  for (const auto& rec : read_jsonl(kFixtures / "outlines" / "corpus.jsonl")) {
    ++count;
    const auto id = rec["id"].get<std::string>();
    const auto text = rec["text"].get<std::string>();
    std::vector<OutlineNode> sections;
    for (const auto& s : rec["golden"]) sections.push_back(node_from_golden(s));
    const OutlineTree golden(std::move(sections));

    const auto parsed = parse_outline(text);
    if (!exactly_equal(parsed.root(), golden.root())) o.fail(id + ": parsed tree differs from golden");
    if (parsed.citations() != golden.citations()) o.fail(id + ": citations differ from golden");

    const auto canonical = serialize_outline(parsed);
    const auto reparsed = parse_outline(canonical);
    if (!exactly_equal(reparsed.root(), parsed.root())) o.fail(id + ": round trip changed the tree");
    if (serialize_outline(reparsed) != canonical) o.fail(id + ": serialization not stable");
    if (serialize_outline(golden) != canonical) o.fail(id + ": canonical text differs from golden");

    // Count inputs that needed clamping: some heading more than one raw
    // level below the previous one.
    int prev = 0;
    bool skip = false;
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
      const auto first = line.find_first_not_of(' ');
      if (first == std::string::npos || first > 3 || line[first] != '#') continue;
      const auto hashes = line.find_first_not_of('#', first) - first;
      if (static_cast<int>(hashes) > prev + 1) skip = true;
      prev = static_cast<int>(hashes);
    }
    if (skip) ++clamped;
  }
  if (count != 100) o.fail("corpus has " + std::to_string(count) + " outlines, expected 100");
  if (o.pass) {
    o.detail = std::to_string(count) + " outlines match golden trees and round-trip; " + std::to_string(clamped) +
               " markdown inputs exercise level clamping";
  }
  return o;
}

Outcome split_partition() {
  Outcome o;
  CurationConfig cfg;
  const Date cutoff = cfg.test_cutoff_date;
  const auto base = std::chrono::sys_days(cutoff);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(seed * 7919);
    std::vector<SurveyRecord> records(rng() % 300);
    std::size_t train = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
      records[i].survey.id = "r" + std::to_string(i);
      if (rng() % 10 != 0) {
        const int offset = static_cast<int>(rng() % 1000) - 700;
        records[i].survey.update_date = Date(base + std::chrono::days(offset));
        if (offset < 0) ++train;
      } else {
        ++train;
      }
    }
    const double fraction = 0.05 + 0.9 * std::uniform_real_distribution<double>(0, 1)(rng);
    const auto split = split_dataset(records, cfg, fraction, seed);

    std::multiset<std::string> seen;
    for (const auto* part : {&split.sft, &split.rl, &split.test}) seen.insert(part->begin(), part->end());
    std::set<std::string> all;
    for (const auto& r : records) all.insert(r.id());
    if (seen.size() != records.size() || std::set<std::string>(seen.begin(), seen.end()) != all) {
      o.fail("seed " + std::to_string(seed) + ": not a partition");
    }
    const std::set<std::string> test(split.test.begin(), split.test.end());
    for (const auto& r : records) {
      const bool dated_late = r.survey.update_date && *r.survey.update_date >= cutoff;
      if (dated_late != test.contains(r.id())) o.fail("seed " + std::to_string(seed) + ": cutoff rule broken");
    }
    if (split.rl.size() != static_cast<std::size_t>(std::llround(fraction * static_cast<double>(train)))) {
      o.fail("seed " + std::to_string(seed) + ": rl size off");
    }
    const auto again = split_dataset(records, cfg, fraction, seed);
    if (again.sft != split.sft || again.rl != split.rl || again.test != split.test) o.fail("split not deterministic");
  }
  if (o.pass) o.detail = "20 seeds: disjoint cover, every record dated >= cutoff in test and only those, reproducible";
  return o;
}

Outcome judge_mock() {
  Outcome o;
  std::mt19937_64 rng(808);
  std::vector<CorpusItem> items;
  for (int i = 0; i < 12; ++i) {
    CorpusItem item;
    item.id = "item" + std::to_string(i);
    item.topic = "topic " + std::to_string(i);
    do item.generated = random_tree(rng, 15, 4, 3); while (item.generated.empty());
    do item.reference = random_tree(rng, 15, 4, 3); while (item.reference.empty());
    items.push_back(std::move(item));
  }

  const ConstantJudge eight(8.0);
  const auto constant = evaluate_corpus(items, eight);
  for (const auto& item : constant.items) {
    if (!item.report || item.report->total != 40.0) o.fail("constant-8 total is not 40.0");
  }

  // A judge whose score depends on the prompt, so item order matters to the
  // accumulation unless the means are order-independent.
  const ScriptedJudge varied(
      [](const std::string& prompt) {
        const auto h = std::hash<std::string>{}(prompt);
        return "Reasoning...\nANSWER: " + std::to_string(static_cast<double>(h % 1000) / 100.0);
      },
      "scripted");
  const auto base = evaluate_corpus(items, varied, 3);
  for (int s = 0; s < 3; ++s) {
    auto shuffled = items;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto other = evaluate_corpus(shuffled, varied, 3);
    if (other.mean_scores != base.mean_scores || other.mean_total != base.mean_total ||
        other.mean_distance != base.mean_distance) {
      o.fail("corpus means changed under shuffle");
    }
  }

  const ScriptedJudge vague([](const std::string&) { return std::string("Looks fine to me."); }, "vague");
  try {
    parse_judge_score("Looks fine to me.");
    o.fail("missing score was parsed");
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoScoreFound) o.fail("wrong error for a missing score");
  }
  std::atomic<int> calls{0};
  const ScriptedJudge half(
      [&](const std::string& prompt) {
        ++calls;
        return prompt.find("topic 3") != std::string::npos ? std::string("no verdict") : std::string("ANSWER: 6");
      },
      "half");
  const auto partial = evaluate_corpus(items, half, 4);
  if (partial.excluded != 1 || partial.succeeded != items.size() - 1) o.fail("failed item not excluded");
  if (partial.mean_total != 30.0) o.fail("mean over surviving items is not 30.0");
  const auto& failed = partial.items[3];
  if (failed.report || failed.error.find("NoScoreFound") == std::string::npos) o.fail("NoScoreFound not reported");

  try {
    evaluate_corpus(items, vague);
    o.fail("all-fail corpus did not throw");
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoSuccessfulItems) o.fail("wrong error when every item fails");
  }

  if (o.pass) {
    o.detail = "constant-8 totals 40.0; means identical over 3 shuffles; NoScoreFound item excluded; "
               "all-fail raises NoSuccessfulItems";
  }
  return o;
}

struct Check {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Check> criteria{
      {"ted-oracle-equivalence", ted_oracle_equivalence},
      {"self-pair-distance-and-reward", self_distance},
      {"judge-aggregate-totals", aggregate_totals},
      {"reward-algebra", reward_algebra},
      {"group-advantages", advantage_properties},
      {"grpo-objective", grpo_checks},
      {"sft-nll", sft_checks},
      {"curation-golden", curation_golden},
      {"parser-corpus", parser_corpus},
      {"split-partition", split_partition},
      {"judge-mock", judge_mock},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome result;
    try {
      result = criteria[i].run();
    } catch (const std::exception& e) {
      result.pass = false;
      result.detail = std::string("exception: ") + e.what();
    }
    if (!result.pass) ++failures;
    std::printf("[%s] AC-%02zu %s: %s\n", result.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                result.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
