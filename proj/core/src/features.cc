#include "fastce/features.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "fastce/error.h"

namespace fastce {

FeatureVector FeatureVector::FromEntries(std::vector<Entry> entries) {
  for (const auto& [key, value] : entries) {
    if (!std::isfinite(value) || value < 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "feature '" + key + "' has a negative or non-finite count");
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  FeatureVector vector;
  for (auto& entry : entries) {
    if (!vector.entries_.empty() && vector.entries_.back().first == entry.first) {
      vector.entries_.back().second += entry.second;
    } else {
      vector.entries_.push_back(std::move(entry));
    }
  }
  std::erase_if(vector.entries_, [](const Entry& e) { return e.second == 0; });
  double sum = 0;
  for (const auto& entry : vector.entries_) sum += entry.second * entry.second;
  vector.norm_ = std::sqrt(sum);
  return vector;
}

double FeatureVector::Get(std::string_view key) const {
  const auto it = std::lower_bound(
      entries_.begin(), entries_.end(), key,
      [](const Entry& e, std::string_view k) { return e.first < k; });
  return it != entries_.end() && it->first == key ? it->second : 0.0;
}

FeatureVector FeatureVector::Scaled(double factor) const {
  std::vector<Entry> entries = entries_;
  for (auto& entry : entries) entry.second *= factor;
  return FromEntries(std::move(entries));
}

void SimilarityConfig::Validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "similarity threshold must lie in [0, 1]");
  }
  if (!(features.structural_weight >= 0.0) ||
      !std::isfinite(features.structural_weight)) {
    throw Error(ErrorCode::kInvalidArgument,
                "structural weight must be non-negative");
  }
}

FeatureVector Featurize(std::string_view text, const StructuralCounts& counts,
                        const FeatureConfig& config) {
  std::unordered_map<std::string, double> terms;
  for (auto& token : Tokenize(text, config.tokenizer)) {
    auto& count = terms[std::move(token)];
    count = config.term_presence ? 1.0 : count + 1.0;
  }
  std::vector<FeatureVector::Entry> entries(
      std::make_move_iterator(terms.begin()),
      std::make_move_iterator(terms.end()));
  const double w = config.structural_weight;
  entries.emplace_back(std::string(kImageFeature), w * counts.images);
  entries.emplace_back(std::string(kScriptFeature), w * counts.scripts);
  entries.emplace_back(std::string(kHyperlinkFeature), w * counts.hyperlinks);
  return FeatureVector::FromEntries(std::move(entries));
}

FeatureVector Featurize(const AtomicBlock& block, const FeatureConfig& config) {
  return Featurize(block.text, block.counts, config);
}

double Cosine(const FeatureVector& a, const FeatureVector& b) {
  if (a.empty() || b.empty()) return 0.0;
  const auto& x = a.entries();
  const auto& y = b.entries();
  double dot = 0.0;
  size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const int cmp = x[i].first.compare(y[j].first);
    if (cmp == 0) {
      dot += x[i++].second * y[j++].second;
    } else if (cmp < 0) {
      ++i;
    } else {
      ++j;
    }
  }
  return std::clamp(dot / (a.norm() * b.norm()), 0.0, 1.0);
}

bool IsSimilar(const FeatureVector& a, const FeatureVector& b,
               const SimilarityConfig& config) {
  return Cosine(a, b) > config.threshold;
}

}  // namespace fastce
