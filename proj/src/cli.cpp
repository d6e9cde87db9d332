#include "outlinekit/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <unordered_map>

#include "outlinekit/error.hpp"
#include "outlinekit/json_io.hpp"
#include "outlinekit/text.hpp"
#include "outlinekit/version.hpp"

namespace outlinekit::cli {

namespace {

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

std::ifstream open_in(const path& p) {
  std::ifstream in(p);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + p.string());
  return in;
}

std::ofstream open_out(const path& p) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + p.string());
  return out;
}

std::string read_text(const path& p) {
  auto in = open_in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Calls `fn` on every non-blank line parsed as JSON. Lines that fail to
/// parse or convert are logged with their line number and skipped.
template <typename Fn>
std::size_t for_each_jsonl(const path& p, std::ostream& err, Fn&& fn) {
  auto in = open_in(p);
  std::string line;
  std::size_t number = 0;
  std::size_t skipped = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      fn(json::parse(line));
    } catch (const std::exception& e) {
      err << p.string() << ":" << number << ": skipped: " << e.what() << "\n";
      ++skipped;
    }
  }
  return skipped;
}

std::vector<SurveyRecord> read_records(const path& p, std::ostream& err, std::size_t& skipped) {
  std::vector<SurveyRecord> records;
  skipped += for_each_jsonl(p, err, [&](const json& j) { records.push_back(record_from_json(j)); });
  return records;
}

std::unique_ptr<EmbeddingProvider> make_embedder(const CliConfig& cfg) {
  if (cfg.embedder == "none") return nullptr;
  return std::make_unique<HashingEmbedder>(cfg.embedding_dim);
}

std::vector<PaperMeta> read_corpus(const std::vector<path>& files, std::ostream& err, std::size_t& skipped) {
  std::vector<PaperMeta> pool;
  for (const auto& f : files) {
    skipped += for_each_jsonl(f, err, [&](const json& j) { pool.push_back(paper_from_json(j)); });
  }
  return pool;
}

void write_jsonl(std::ostream& out, const json& j) { out << j.dump() << "\n"; }

void write_ids(const path& p, const std::vector<std::string>& ids) {
  auto out = open_out(p);
  for (const auto& id : ids) out << id << "\n";
}

std::vector<std::string> read_ids(const path& p) {
  auto in = open_in(p);
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    line = text::trim(line);
    if (!line.empty()) ids.push_back(line);
  }
  return ids;
}

}  // namespace

int cmd_curate(const CurateArgs& args, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<SurveyDocument> docs;
    std::vector<PaperMeta> pool;
    std::size_t skipped = 0;
    for (const auto& snapshot : args.snapshots) {
      skipped += for_each_jsonl(snapshot, err, [&](const json& j) {
        if (j.is_object() && j.contains("outline")) {
          docs.push_back(document_from_json(j));
        } else {
          pool.push_back(paper_from_json(j));
        }
      });
    }
    auto extra = read_corpus(args.corpus, err, skipped);
    pool.insert(pool.end(), std::make_move_iterator(extra.begin()), std::make_move_iterator(extra.end()));

    const auto embedder = make_embedder(cfg);
    const CorpusIndex index(std::move(pool), embedder.get());
    const auto result = curate(docs, index, embedder.get(), cfg.curation, cfg.workers);

    auto records_out = open_out(args.out);
    for (const auto& r : result.records) write_jsonl(records_out, record_to_json(r));
    auto rejections_out = open_out(args.rejections.value_or(path(args.out.string() + ".rejections.jsonl")));
    for (const auto& r : result.rejections) write_jsonl(rejections_out, to_json(r));

    const auto& s = result.stats;
    out << "documents:                 " << s.documents << "\n"
        << "malformed lines skipped:   " << skipped << "\n"
        << "survey candidates:         " << s.candidates << "\n"
        << "parse rejected:            " << s.parse_rejected << "\n"
        << "structurally rejected:     " << s.structurally_rejected << "\n"
        << "integrity rejected:        " << s.integrity_rejected << "\n"
        << "accepted:                  " << s.accepted << "\n"
        << "abstracts completed exact: " << s.abstracts_exact << "\n"
        << "abstracts completed similar: " << s.abstracts_similar << "\n"
        << "abstracts still missing:   " << s.abstracts_missing << "\n";
    return 0;
  });
}

int cmd_complete(const CompleteArgs& args, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::size_t skipped = 0;
    auto records = read_records(args.records, err, skipped);
    const auto embedder = make_embedder(cfg);
    const CorpusIndex index(read_corpus(args.corpus, err, skipped), embedder.get());

    std::size_t exact = 0, similar = 0, missing = 0;
    auto sink = open_out(args.out);
    for (auto& record : records) {
      auto result = complete_references(record.task.papers, index, embedder.get(), cfg.curation);
      exact += result.exact_matches;
      similar += result.similarity_matches;
      missing += result.unmatched;
      record.task.papers = std::move(result.bibliography);
      write_jsonl(sink, record_to_json(record));
    }
    out << "records: " << records.size() << "\n"
        << "malformed lines skipped: " << skipped << "\n"
        << "abstracts completed exact: " << exact << "\n"
        << "abstracts completed similar: " << similar << "\n"
        << "abstracts still missing: " << missing << "\n";
    return 0;
  });
}

int cmd_split(const SplitArgs& args, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    CurationConfig curation = cfg.curation;
    if (args.cutoff) curation.test_cutoff_date = parse_date(*args.cutoff);
    std::size_t skipped = 0;
    const auto records = read_records(args.records, err, skipped);
    const auto split = split_dataset(records, curation, args.rl_fraction, args.seed);
    write_ids(args.out_dir / "sft_ids.txt", split.sft);
    write_ids(args.out_dir / "rl_ids.txt", split.rl);
    write_ids(args.out_dir / "test_ids.txt", split.test);
    out << "sft: " << split.sft.size() << "\nrl: " << split.rl.size() << "\ntest: " << split.test.size()
        << "\nmalformed lines skipped: " << skipped << "\n";
    return 0;
  });
}

int cmd_reward(const PairArgs& args, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    RewardConfig rc = cfg.reward;
    if (args.lambda) rc.lambda = *args.lambda;
    rc.validate();
    const auto gen = parse_outline(read_text(args.gen));
    const auto ref = parse_outline(read_text(args.ref));
    std::vector<std::string> ids;
    PaperPool pool;
    if (args.pool) {
      ids = read_ids(*args.pool);
      pool = std::span<const std::string>(ids);
    }
    out << to_json(total_reward(gen, ref, rc, pool)).dump(2) << "\n";
    return 0;
  });
}

int cmd_distance(const PairArgs& args, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto gen = parse_outline(read_text(args.gen));
    const auto ref = parse_outline(read_text(args.ref));
    out << to_json(distance_report(gen, ref, cfg.reward.costs)).dump(2) << "\n";
    return 0;
  });
}

int cmd_judge(const JudgeArgs& args, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<CorpusItem> items;
    const std::size_t skipped = for_each_jsonl(args.pairs, err, [&](const json& j) {
      CorpusItem item;
      item.id = j.at("id").get<std::string>();
      item.topic = j.at("topic").get<std::string>();
      item.generated = parse_outline(j.at("generated").get<std::string>());
      item.reference = parse_outline(j.at("reference").get<std::string>());
      items.push_back(std::move(item));
    });
    if (items.empty()) {
      err << "error: no usable items in " << args.pairs.string() << "\n";
      return 1;
    }

    std::unique_ptr<JudgeClient> client;
    if (args.mock) {
      client = std::make_unique<ConstantJudge>(args.mock_score);
    } else {
      client = std::make_unique<HttpJudgeClient>(cfg.judge.endpoint);
    }
    const auto report = evaluate_corpus(items, *client, cfg.judge.concurrency, cfg.judge.samples_per_criterion,
                                        cfg.reward.costs);

    auto items_out = open_out(args.out_dir / "items.jsonl");
    for (const auto& item : report.items) {
      if (item.report) {
        write_jsonl(items_out, {{"id", item.id}, {"report", to_json(*item.report)}});
      } else {
        write_jsonl(items_out, {{"id", item.id}, {"error", item.error}});
      }
    }
    json summary = summary_to_json(report);
    summary["skipped_lines"] = skipped;
    open_out(args.out_dir / "summary.json") << summary.dump(2) << "\n";
    const std::string table = format_table(report, args.label);
    open_out(args.out_dir / "table.txt") << table;
    out << table;
    for (const auto& item : report.items) {
      if (!item.report) err << "item " << item.id << " failed: " << item.error << "\n";
    }
    return 0;
  });
}

int cmd_distill_prompts(const DistillArgs& args, const CliConfig&, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::size_t skipped = 0;
    const auto records = read_records(args.records, err, skipped);
    auto sink = open_out(args.out);
    std::size_t written = 0;
    for (const auto& record : records) {
      if (record.task.papers.empty()) {
        err << "skipped " << record.id() << ": record has no papers\n";
        ++skipped;
        continue;
      }
      try {
        write_jsonl(sink, {{"id", record.id()}, {"prompt", build_cot_prompt(record)}});
        ++written;
      } catch (const Error& e) {
        err << "skipped " << record.id() << ": " << e.what() << "\n";
        ++skipped;
      }
    }
    out << "prompts: " << written << "\nskipped: " << skipped << "\n";
    return 0;
  });
}

int cmd_validate_cot(const ValidateCotArgs& args, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::size_t skipped = 0;
    const auto records = read_records(args.records, err, skipped);
    std::unordered_map<std::string, const SurveyRecord*> by_id;
    for (const auto& r : records) by_id.emplace(r.id(), &r);

    auto sink = open_out(args.out);
    std::optional<std::ofstream> verdicts;
    if (args.verdicts) verdicts = open_out(*args.verdicts);

    std::size_t accepted = 0, rejected = 0;
    skipped += for_each_jsonl(args.responses, err, [&](const json& j) {
      const auto id = j.at("id").get<std::string>();
      const auto it = by_id.find(id);
      if (it == by_id.end()) throw Error(ErrorCode::InvalidInput, "no record with id '" + id + "'");
      const auto verdict = validate_cot_response(j.at("response").get<std::string>(), *it->second,
                                                 cfg.reward.schema);
      if (verdicts) {
        write_jsonl(*verdicts,
                    {{"id", id}, {"accepted", verdict.accepted}, {"reason", verdict.reason}, {"detail", verdict.detail}});
      }
      if (!verdict.accepted) {
        ++rejected;
        return;
      }
      ++accepted;
      SurveyRecord record = *it->second;
      record.cot = verdict.reasoning;
      write_jsonl(sink, record_to_json(record));
    });
    out << "accepted: " << accepted << "\nrejected: " << rejected << "\nskipped: " << skipped << "\n";
    return 0;
  });
}

int cmd_grpo(const GrpoArgs& args, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    for_each_jsonl(args.rollouts, err, [&](const json& j) {
      write_jsonl(out, to_json(grpo_objective(rollout_from_json(j), cfg.grpo)));
    });
    return 0;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Survey outline rewards, curation and judging"};
  app.name("outlinekit");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);

  std::vector<std::pair<CLI::App*, std::function<int(const CliConfig&)>>> commands;
  auto add = [&](const char* name, const char* help, auto& args, auto fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    commands.emplace_back(sub, [&args, fn, &out, &err](const CliConfig& cfg) { return fn(args, cfg, out, err); });
    return sub;
  };

  CurateArgs curate_args;
  auto* curate_cmd = add("curate", "Filter snapshot documents into survey records", curate_args, cmd_curate);
  curate_cmd->add_option("--snapshot", curate_args.snapshots, "Snapshot JSONL")->required()->check(CLI::ExistingFile);
  curate_cmd->add_option("--corpus", curate_args.corpus, "Extra metadata JSONL for abstracts")
      ->check(CLI::ExistingFile);
  curate_cmd->add_option("--out", curate_args.out, "Records JSONL to write")->required();
  curate_cmd->add_option("--rejections", curate_args.rejections, "Rejection log JSONL");

  CompleteArgs complete_args;
  auto* complete_cmd = add("complete", "Fill missing reference abstracts", complete_args, cmd_complete);
  complete_cmd->add_option("--records", complete_args.records)->required()->check(CLI::ExistingFile);
  complete_cmd->add_option("--corpus", complete_args.corpus)->required()->check(CLI::ExistingFile);
  complete_cmd->add_option("--out", complete_args.out)->required();

  SplitArgs split_args;
  auto* split_cmd = add("split", "Write sft/rl/test id manifests", split_args, cmd_split);
  split_cmd->add_option("--records", split_args.records)->required()->check(CLI::ExistingFile);
  split_cmd->add_option("--out-dir", split_args.out_dir)->required();
  split_cmd->add_option("--rl-fraction", split_args.rl_fraction)->capture_default_str();
  split_cmd->add_option("--seed", split_args.seed)->capture_default_str();
  split_cmd->add_option("--cutoff", split_args.cutoff, "YYYY-MM-DD, overrides the config");

  PairArgs reward_args;
  auto* reward_cmd = add("reward", "Print the reward breakdown of an outline pair", reward_args, cmd_reward);
  reward_cmd->add_option("--gen", reward_args.gen)->required()->check(CLI::ExistingFile);
  reward_cmd->add_option("--ref", reward_args.ref)->required()->check(CLI::ExistingFile);
  reward_cmd->add_option("--pool", reward_args.pool, "File of allowed paper ids")->check(CLI::ExistingFile);
  reward_cmd->add_option("--lambda", reward_args.lambda, "Overrides reward.lambda");

  PairArgs distance_args;
  auto* distance_cmd = add("distance", "Print tree edit distance details", distance_args, cmd_distance);
  distance_cmd->add_option("--gen", distance_args.gen)->required()->check(CLI::ExistingFile);
  distance_cmd->add_option("--ref", distance_args.ref)->required()->check(CLI::ExistingFile);

  JudgeArgs judge_args;
  auto* judge_cmd = add("judge", "Score generated outlines with a judge model", judge_args, cmd_judge);
  judge_cmd->add_option("--pairs", judge_args.pairs)->required()->check(CLI::ExistingFile);
  judge_cmd->add_option("--out-dir", judge_args.out_dir)->required();
  judge_cmd->add_flag("--mock", judge_args.mock, "Use a constant-score judge");
  judge_cmd->add_option("--mock-score", judge_args.mock_score)->capture_default_str();
  judge_cmd->add_option("--label", judge_args.label, "Label of the mean row")->capture_default_str();

  DistillArgs distill_args;
  auto* distill_cmd = add("distill-prompts", "Write reasoning prompts per record", distill_args, cmd_distill_prompts);
  distill_cmd->add_option("--records", distill_args.records)->required()->check(CLI::ExistingFile);
  distill_cmd->add_option("--out", distill_args.out)->required();

  ValidateCotArgs cot_args;
  auto* cot_cmd = add("validate-cot", "Check reasoning responses and keep valid ones", cot_args, cmd_validate_cot);
  cot_cmd->add_option("--records", cot_args.records)->required()->check(CLI::ExistingFile);
  cot_cmd->add_option("--responses", cot_args.responses)->required()->check(CLI::ExistingFile);
  cot_cmd->add_option("--out", cot_args.out)->required();
  cot_cmd->add_option("--verdicts", cot_args.verdicts);

  GrpoArgs grpo_args;
  auto* grpo_cmd = add("grpo", "Evaluate the clipped objective on rollout groups", grpo_args, cmd_grpo);
  grpo_cmd->add_option("--rollouts", grpo_args.rollouts)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  CliConfig cfg;
  try {
    cfg = load_config(config_path.empty() ? std::nullopt : std::optional<path>(config_path));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  for (const auto& [sub, fn] : commands) {
    if (sub->parsed()) return fn(cfg);
  }
  return 1;
}

}  // namespace outlinekit::cli
