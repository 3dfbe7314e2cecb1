#ifndef FASTCE_FEATURES_H_
#define FASTCE_FEATURES_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fastce/block_model.h"
#include "fastce/text.h"

namespace fastce {

// Structural feature keys. Terms never contain '#', so these cannot collide
// with term keys.
inline constexpr std::string_view kImageFeature = "#image";
inline constexpr std::string_view kScriptFeature = "#script";
inline constexpr std::string_view kHyperlinkFeature = "#hyperlink";

struct FeatureConfig {
  TokenizerOptions tokenizer;
  // Multiplier applied to the image/script/hyperlink counts.
  double structural_weight = 1.0;
  // Record 1 per distinct term instead of its frequency.
  bool term_presence = false;

  bool operator==(const FeatureConfig&) const = default;
};

// Sparse vector of non-negative feature counts, kept sorted by key. Zero
// entries are never stored.
class FeatureVector {
 public:
  using Entry = std::pair<std::string, double>;

  FeatureVector() = default;
  // Merges duplicate keys by summing and drops zeros; throws
  // kInvalidArgument for negative or non-finite values.
  static FeatureVector FromEntries(std::vector<Entry> entries);

  double Get(std::string_view key) const;
  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  double norm() const { return norm_; }

  FeatureVector Scaled(double factor) const;

  bool operator==(const FeatureVector& other) const {
    return entries_ == other.entries_;
  }

 private:
  std::vector<Entry> entries_;
  double norm_ = 0.0;
};

struct SimilarityConfig {
  double threshold = 0.9;
  FeatureConfig features;

  // Throws kInvalidArgument unless 0 <= threshold <= 1 and the structural
  // weight is non-negative.
  void Validate() const;

  bool operator==(const SimilarityConfig&) const = default;
};

FeatureVector Featurize(std::string_view text, const StructuralCounts& counts,
                        const FeatureConfig& config = {});
FeatureVector Featurize(const AtomicBlock& block,
                        const FeatureConfig& config = {});

// Cosine of the angle between the vectors, clamped to [0, 1]; 0 when either
// vector is zero.
double Cosine(const FeatureVector& a, const FeatureVector& b);

// Strictly greater than the threshold.
bool IsSimilar(const FeatureVector& a, const FeatureVector& b,
               const SimilarityConfig& config);

}  // namespace fastce

#endif  // FASTCE_FEATURES_H_
