#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace outlinekit {

struct OutlineNode {
  std::string heading;
  int level = 0;
  std::vector<OutlineNode> children;
  std::vector<std::string> citations;
};

/// A survey outline. The root is a synthetic, unlabeled level-0 node whose
/// children are the top-level sections; it is never counted as a node.
class OutlineTree {
 public:
  OutlineTree();
  explicit OutlineTree(std::vector<OutlineNode> sections);

  const OutlineNode& root() const { return root_; }
  const std::vector<OutlineNode>& sections() const { return root_.children; }

  std::size_t section_count() const { return root_.children.size(); }
  std::size_t node_count() const { return node_count_; }
  /// Deepest heading level present; 0 for an empty tree.
  int depth() const { return depth_; }
  bool empty() const { return node_count_ == 0; }

  /// Every citation id in preorder, duplicates kept.
  std::vector<std::string> citations() const;

 private:
  OutlineNode root_;
  std::size_t node_count_ = 0;
  int depth_ = 0;
};

/// Builds a tree from markdown ATX headings ("#", "##", ...) and/or numbered
/// headings ("1.", "1.1", "2.3.1."). Other lines are ignored. A trailing
/// "[id; id]" marker is moved into the node's citations. A heading more than
/// one level deeper than its parent is clamped to parent + 1.
///
/// Throws Error(EmptyOutline) when no heading line exists and
/// Error(MalformedHeading) when a heading line has no title.
OutlineTree parse_outline(std::string_view text);

/// Canonical ATX form, one heading per line, no trailing newline.
std::string serialize_outline(const OutlineTree& tree);

/// Same shape, equal normalized headings, equal citation lists.
bool canonical_equal(const OutlineTree& a, const OutlineTree& b);

}  // namespace outlinekit
