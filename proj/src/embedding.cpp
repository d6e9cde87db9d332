#include "outlinekit/embedding.hpp"

#include <cmath>
#include <cstdint>

#include "outlinekit/error.hpp"
#include "outlinekit/text.hpp"

namespace outlinekit {

namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t seed) {
  std::uint64_t h = 1469598103934665603ull ^ seed;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void add_feature(Embedding& v, std::string_view feature, std::uint64_t seed, float weight) {
  const std::uint64_t h = fnv1a(feature, seed);
  const std::size_t slot = static_cast<std::size_t>(h % v.size());
  v[slot] += (h >> 63) ? -weight : weight;
}

}  // namespace

HashingEmbedder::HashingEmbedder(std::size_t dimension) : dimension_(dimension) {
  if (dimension_ == 0) throw Error(ErrorCode::ConfigInvalid, "embedding dimension must be > 0");
}

std::vector<Embedding> HashingEmbedder::embed(std::span<const std::string> texts) const {
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const auto& t : texts) {
    Embedding v(dimension_, 0.0f);
    const std::string norm = text::normalize_title(t);
    const std::string padded = " " + norm + " ";
    for (std::size_t i = 0; i + 3 <= padded.size(); ++i) add_feature(v, std::string_view(padded).substr(i, 3), 1, 1.0f);
    for (const auto& w : text::words(norm)) add_feature(v, w, 2, 2.0f);

    double norm2 = 0.0;
    for (float x : v) norm2 += static_cast<double>(x) * x;
    if (norm2 == 0.0) {
      v[0] = 1.0f;
    } else {
      const double inv = 1.0 / std::sqrt(norm2);
      for (float& x : v) x = static_cast<float>(x * inv);
    }
    out.push_back(std::move(v));
  }
  return out;
}

double cosine(const Embedding& a, const Embedding& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidInput, "embedding dimensions differ");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * b[i];
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / std::sqrt(na * nb);
}

CorpusIndex::CorpusIndex(std::vector<PaperMeta> pool, const EmbeddingProvider* embedder) {
  for (auto& paper : pool) {
    if (!paper.has_abstract()) continue;
    by_title_.try_emplace(text::normalize_title(paper.title), papers_.size());
    papers_.push_back(std::move(paper));
  }
  if (embedder != nullptr && !papers_.empty()) {
    std::vector<std::string> titles;
    titles.reserve(papers_.size());
    for (const auto& p : papers_) titles.push_back(p.title);
    embeddings_ = embedder->embed(titles);
    if (embeddings_.size() != titles.size()) {
      throw Error(ErrorCode::EmbedderUnavailable, "embedder returned the wrong number of vectors");
    }
  }
}

const PaperMeta* CorpusIndex::exact(std::string_view title) const {
  auto it = by_title_.find(text::normalize_title(title));
  return it == by_title_.end() ? nullptr : &papers_[it->second];
}

std::optional<CorpusIndex::Neighbor> CorpusIndex::nearest(const Embedding& query) const {
  std::optional<Neighbor> best;
  for (std::size_t i = 0; i < embeddings_.size(); ++i) {
    const double sim = cosine(query, embeddings_[i]);
    if (!best || sim > best->similarity) best = Neighbor{&papers_[i], sim};
  }
  return best;
}

}  // namespace outlinekit
