#include "outlinekit/tree_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "outlinekit/error.hpp"
#include "outlinekit/text.hpp"

namespace outlinekit {

namespace {

// Postorder view of a tree, synthetic root last. Indices are 0-based.
struct PostorderTree {
  std::vector<std::string> labels;
  std::vector<std::size_t> leftmost;  // leftmost leaf descendant of each node
  std::vector<std::size_t> keyroots;  // ascending

  explicit PostorderTree(const OutlineTree& tree) {
    visit(tree.root(), true);
    // A keyroot is the highest node sharing its leftmost leaf.
    std::vector<bool> seen(labels.size(), false);
    for (std::size_t i = labels.size(); i-- > 0;) {
      if (!seen[leftmost[i]]) {
        seen[leftmost[i]] = true;
        keyroots.push_back(i);
      }
    }
    std::sort(keyroots.begin(), keyroots.end());
  }

  std::size_t size() const { return labels.size(); }

 private:
  std::size_t visit(const OutlineNode& node, bool is_root) {
    std::size_t first_leaf = labels.size();
    bool have_leaf = false;
    for (const auto& child : node.children) {
      std::size_t leaf = visit(child, false);
      if (!have_leaf) {
        first_leaf = leaf;
        have_leaf = true;
      }
    }
    labels.push_back(is_root ? std::string() : text::normalize_heading(node.heading));
    if (!have_leaf) first_leaf = labels.size() - 1;
    leftmost.push_back(first_leaf);
    return first_leaf;
  }
};

}  // namespace

std::string_view to_string(RelabelMode mode) {
  return mode == RelabelMode::ShapeOnly ? "shape_only" : "label_aware";
}

RelabelMode parse_relabel_mode(std::string_view name) {
  if (name == "shape_only") return RelabelMode::ShapeOnly;
  if (name == "label_aware") return RelabelMode::LabelAware;
  throw Error(ErrorCode::ConfigInvalid, "unknown relabel mode '" + std::string(name) + "'");
}

void EditCostModel::validate() const {
  if (!std::isfinite(insert_cost) || !std::isfinite(delete_cost) || insert_cost < 0 || delete_cost < 0) {
    throw Error(ErrorCode::ConfigInvalid, "edit costs must be finite and >= 0");
  }
}

double tree_edit_distance(const OutlineTree& from, const OutlineTree& to, const EditCostModel& costs) {
  const PostorderTree a(from);
  const PostorderTree b(to);
  const std::size_t na = a.size();
  const std::size_t nb = b.size();

  auto relabel = [&](std::size_t i, std::size_t j) {
    if (costs.relabel_mode == RelabelMode::ShapeOnly) return 0.0;
    return a.labels[i] == b.labels[j] ? 0.0 : 1.0;
  };

  std::vector<double> treedist(na * nb, 0.0);
  std::vector<double> forest((na + 1) * (nb + 1), 0.0);
  const std::size_t stride = nb + 1;

  for (std::size_t i : a.keyroots) {
    for (std::size_t j : b.keyroots) {
      const std::size_t li = a.leftmost[i];
      const std::size_t lj = b.leftmost[j];
      const std::size_t rows = i - li + 2;
      const std::size_t cols = j - lj + 2;
      auto fd = [&](std::size_t x, std::size_t y) -> double& { return forest[x * stride + y]; };

      fd(0, 0) = 0.0;
      for (std::size_t x = 1; x < rows; ++x) fd(x, 0) = fd(x - 1, 0) + costs.delete_cost;
      for (std::size_t y = 1; y < cols; ++y) fd(0, y) = fd(0, y - 1) + costs.insert_cost;

      for (std::size_t x = 1; x < rows; ++x) {
        const std::size_t di = li + x - 1;
        for (std::size_t y = 1; y < cols; ++y) {
          const std::size_t dj = lj + y - 1;
          const double del = fd(x - 1, y) + costs.delete_cost;
          const double ins = fd(x, y - 1) + costs.insert_cost;
          if (a.leftmost[di] == li && b.leftmost[dj] == lj) {
            const double value = std::min({del, ins, fd(x - 1, y - 1) + relabel(di, dj)});
            fd(x, y) = value;
            treedist[di * nb + dj] = value;
          } else {
            const std::size_t px = a.leftmost[di] - li;
            const std::size_t py = b.leftmost[dj] - lj;
            fd(x, y) = std::min({del, ins, fd(px, py) + treedist[di * nb + dj]});
          }
        }
      }
    }
  }
  return treedist[(na - 1) * nb + (nb - 1)];
}

DistanceReport distance_report(const OutlineTree& gen, const OutlineTree& ref, const EditCostModel& costs) {
  DistanceReport report;
  report.n_ref = ref.node_count();
  report.n_gen = gen.node_count();
  const std::size_t larger = std::max(report.n_ref, report.n_gen);
  if (larger == 0) throw Error(ErrorCode::BothEmpty, "cannot normalize distance between two empty outlines");

  report.ted = tree_edit_distance(ref, gen, costs);
  report.normalized_distance = std::min(1.0, report.ted / static_cast<double>(larger));
  report.structural_reward = 1.0 - report.normalized_distance;
  return report;
}

double structural_reward(const OutlineTree& gen, const OutlineTree& ref, const EditCostModel& costs) {
  return distance_report(gen, ref, costs).structural_reward;
}

double structural_distance(const OutlineTree& gen, const OutlineTree& ref, const EditCostModel& costs) {
  return distance_report(gen, ref, costs).normalized_distance;
}

}  // namespace outlinekit
