#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "outlinekit/paper.hpp"

namespace outlinekit {

using Embedding = std::vector<float>;

/// Turns texts into fixed-dimension, L2-normalized vectors. Implementations
/// must be safe to call concurrently and throw Error(EmbedderUnavailable)
/// when the backing model cannot be reached.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::vector<Embedding> embed(std::span<const std::string> texts) const = 0;
};

/// Dependency-free local embedder: signed feature hashing of character
/// trigrams and word unigrams of the normalized text. Deterministic across
/// platforms; a stand-in for a sentence encoder when none is available.
class HashingEmbedder final : public EmbeddingProvider {
 public:
  explicit HashingEmbedder(std::size_t dimension = 512);
  std::vector<Embedding> embed(std::span<const std::string> texts) const override;

 private:
  std::size_t dimension_;
};

double cosine(const Embedding& a, const Embedding& b);

/// Read-only title index over a metadata snapshot. Only papers that carry an
/// abstract are indexed, since nothing else can complete a reference.
class CorpusIndex {
 public:
  struct Neighbor {
    const PaperMeta* paper;
    double similarity;
  };

  /// With an embedder, every indexed title is embedded once up front; the
  /// same embedder must be used for queries.
  explicit CorpusIndex(std::vector<PaperMeta> pool, const EmbeddingProvider* embedder = nullptr);

  std::size_t size() const { return papers_.size(); }
  bool has_embeddings() const { return !embeddings_.empty(); }

  const PaperMeta* exact(std::string_view title) const;
  std::optional<Neighbor> nearest(const Embedding& query) const;

 private:
  std::vector<PaperMeta> papers_;
  std::unordered_map<std::string, std::size_t> by_title_;
  std::vector<Embedding> embeddings_;
};

}  // namespace outlinekit
