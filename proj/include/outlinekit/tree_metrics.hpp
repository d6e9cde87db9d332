#pragma once

#include <cstddef>
#include <string_view>

#include "outlinekit/outline.hpp"

namespace outlinekit {

enum class RelabelMode {
  ShapeOnly,   ///< relabeling is free; only the tree shape matters
  LabelAware,  ///< relabel costs 1 unless normalized headings are equal
};

std::string_view to_string(RelabelMode mode);
/// Accepts "shape_only" and "label_aware"; throws Error(ConfigInvalid).
RelabelMode parse_relabel_mode(std::string_view name);

struct EditCostModel {
  double insert_cost = 1.0;
  double delete_cost = 1.0;
  RelabelMode relabel_mode = RelabelMode::ShapeOnly;

  void validate() const;
};

struct DistanceReport {
  double ted = 0.0;
  std::size_t n_ref = 0;
  std::size_t n_gen = 0;
  double normalized_distance = 0.0;
  double structural_reward = 1.0;
};

/// Minimum cost of turning `from` into `to` with node deletions (from `from`),
/// insertions (into `to`) and relabelings. Both synthetic roots take part and
/// always map onto each other, so two empty trees have distance 0.
///
/// Zhang-Shasha keyroot dynamic program; O(n^2 * depth^2) for outline-sized
/// inputs.
double tree_edit_distance(const OutlineTree& from, const OutlineTree& to,
                          const EditCostModel& costs = {});

/// TED(ref, gen) normalized by the larger node count. The ratio is clamped to
/// 1 because a shape mismatch can need more edits than the larger tree has
/// nodes. Throws Error(BothEmpty) when both trees are empty.
DistanceReport distance_report(const OutlineTree& gen, const OutlineTree& ref,
                               const EditCostModel& costs = {});

/// 1 - normalized distance; 1 for identical trees.
double structural_reward(const OutlineTree& gen, const OutlineTree& ref,
                         const EditCostModel& costs = {});

/// The normalized distance itself; lower means closer to the reference.
double structural_distance(const OutlineTree& gen, const OutlineTree& ref,
                           const EditCostModel& costs = {});

}  // namespace outlinekit
