#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "outlinekit/error.hpp"
#include "outlinekit/grpo.hpp"
#include "outlinekit/reward.hpp"
#include "outlinekit/tree_metrics.hpp"
#include "outlinekit/version.hpp"

namespace py = pybind11;
using namespace outlinekit;

namespace {

py::dict breakdown_dict(const RewardBreakdown& r) {
  py::dict d;
  d["r_struct"] = r.r_struct;
  d["r_format"] = r.r_format;
  d["r_total"] = r.r_total;
  d["lambda_used"] = r.lambda_used;
  return d;
}

PaperPool pool_of(const std::optional<std::vector<std::string>>& ids) {
  if (!ids) return std::nullopt;
  return std::span<const std::string>(*ids);
}

class BoundReward {
 public:
  explicit BoundReward(RewardConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

  py::dict call(const std::string& gen, const std::string& ref,
                const std::optional<std::vector<std::string>>& paper_ids) const {
    RewardBreakdown r;
    {
      py::gil_scoped_release release;
      r = total_reward_text(gen, ref, cfg_, pool_of(paper_ids));
    }
    return breakdown_dict(r);
  }

  const RewardConfig& config() const { return cfg_; }

 private:
  RewardConfig cfg_;
};

Candidate candidate_from(const py::handle& obj) {
  auto d = obj.cast<py::dict>();
  Candidate c;
  c.policy_logprobs = d["policy_logprobs"].cast<std::vector<double>>();
  c.old_logprobs = d["old_logprobs"].cast<std::vector<double>>();
  c.ref_logprobs = d["ref_logprobs"].cast<std::vector<double>>();
  c.reward = d["reward"].cast<double>();
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Outline rewards, distances and GRPO loss kernels";
  m.attr("__version__") = std::string(kVersion);

  py::register_exception<Error>(m, "OutlinekitError", PyExc_ValueError);

  py::class_<OutlineSchema>(m, "OutlineSchema")
      .def(py::init<>())
      .def_readwrite("max_depth", &OutlineSchema::max_depth)
      .def_readwrite("min_top_sections", &OutlineSchema::min_top_sections)
      .def_readwrite("max_top_sections", &OutlineSchema::max_top_sections)
      .def_readwrite("max_heading_chars", &OutlineSchema::max_heading_chars)
      .def_readwrite("require_citations_subset", &OutlineSchema::require_citations_subset);

  py::class_<EditCostModel>(m, "EditCostModel")
      .def(py::init<>())
      .def_readwrite("insert_cost", &EditCostModel::insert_cost)
      .def_readwrite("delete_cost", &EditCostModel::delete_cost)
      .def_property(
          "relabel_mode", [](const EditCostModel& c) { return std::string(to_string(c.relabel_mode)); },
          [](EditCostModel& c, const std::string& mode) { c.relabel_mode = parse_relabel_mode(mode); });

  py::class_<RewardConfig>(m, "RewardConfig")
      .def(py::init<>())
      .def(py::init([](double lambda) {
             RewardConfig cfg;
             cfg.lambda = lambda;
             return cfg;
           }),
           py::arg("lambda_"))
      .def_readwrite("lambda_", &RewardConfig::lambda)
      .def_readwrite("schema", &RewardConfig::schema)
      .def_readwrite("costs", &RewardConfig::costs)
      .def("validate", &RewardConfig::validate);

  py::class_<BoundReward>(m, "BoundReward")
      .def("__call__", &BoundReward::call, py::arg("generated"), py::arg("reference"),
           py::arg("paper_ids") = py::none())
      .def_property_readonly("config", &BoundReward::config);

  m.def("bind_reward", [](const RewardConfig& cfg) { return BoundReward(cfg); }, py::arg("config") = RewardConfig{});

  m.def("canonical_outline", [](const std::string& text) { return serialize_outline(parse_outline(text)); },
        py::arg("text"));

  m.def(
      "tree_edit_distance",
      [](const std::string& a, const std::string& b, const EditCostModel& costs) {
        return tree_edit_distance(parse_outline(a), parse_outline(b), costs);
      },
      py::arg("source"), py::arg("target"), py::arg("costs") = EditCostModel{});

  m.def(
      "distance_report",
      [](const std::string& gen, const std::string& ref, const EditCostModel& costs) {
        const auto r = distance_report(parse_outline(gen), parse_outline(ref), costs);
        py::dict d;
        d["ted"] = r.ted;
        d["n_ref"] = r.n_ref;
        d["n_gen"] = r.n_gen;
        d["normalized_distance"] = r.normalized_distance;
        d["structural_reward"] = r.structural_reward;
        return d;
      },
      py::arg("generated"), py::arg("reference"), py::arg("costs") = EditCostModel{});

  m.def(
      "format_reward",
      [](const std::string& text, const OutlineSchema& schema, const std::optional<std::vector<std::string>>& ids) {
        return format_reward(parse_outline(text), schema, pool_of(ids));
      },
      py::arg("text"), py::arg("schema") = OutlineSchema{}, py::arg("paper_ids") = py::none());

  m.def(
      "group_advantages",
      [](const std::vector<double>& rewards, double std_floor) { return group_advantages(rewards, std_floor); },
      py::arg("rewards"), py::arg("std_floor") = 1e-8);

  m.def(
      "grpo_objective",
      [](const py::iterable& candidates, double epsilon, double beta, double std_floor) {
        GroupRollout group;
        for (const auto& c : candidates) group.candidates.push_back(candidate_from(c));
        const auto r = grpo_objective(group, GrpoConfig{epsilon, beta, std_floor});
        py::list diagnostics;
        for (const auto& d : r.diagnostics) {
          py::dict item;
          item["ratio"] = d.ratio;
          item["advantage"] = d.advantage;
          item["surrogate"] = d.surrogate;
          item["clipped"] = d.clipped;
          item["kl"] = d.kl;
          diagnostics.append(item);
        }
        py::dict out;
        out["objective"] = r.objective;
        out["loss"] = r.loss;
        out["kl"] = r.kl;
        out["diagnostics"] = diagnostics;
        return out;
      },
      py::arg("candidates"), py::arg("epsilon") = 0.2, py::arg("beta") = 0.04, py::arg("std_floor") = 1e-8);

  m.def(
      "sft_nll",
      [](const std::vector<double>& logprobs, const std::string& reduction) {
        return sft_nll(logprobs, parse_reduction(reduction));
      },
      py::arg("logprobs"), py::arg("reduction") = "sum");
}
