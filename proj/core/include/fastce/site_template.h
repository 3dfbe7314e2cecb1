#ifndef FASTCE_SITE_TEMPLATE_H_
#define FASTCE_SITE_TEMPLATE_H_

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fastce/block_model.h"
#include "fastce/content_extractor.h"
#include "fastce/features.h"

namespace fastce {

// A non-content block seen during training at one of the content paths.
struct Decoy {
  FeatureVector features;
  // Hash of the block text; only for debugging, never compared.
  std::string text_digest;

  bool operator==(const Decoy&) const = default;
};

// The learned per-site artifact: paths at which content blocks occurred, and
// exemplars of non-content blocks sharing those paths.
struct SiteTemplate {
  static constexpr int kFormatVersion = 1;

  std::string site_id;
  int format_version = kFormatVersion;
  std::set<std::string, std::less<>> content_paths;
  std::map<std::string, std::vector<Decoy>, std::less<>> decoys;
  SegmentationConfig segmentation;
  CEConfig ce;
  std::size_t built_from = 0;

  bool HasPath(std::string_view path) const {
    return content_paths.find(path) != content_paths.end();
  }
  // Decoys stored for a path; empty when there are none.
  const std::vector<Decoy>& DecoysAt(std::string_view path) const;
  std::size_t DecoyCount() const;

  bool operator==(const SiteTemplate&) const = default;
};

// Preparation phase. Runs CE over the corpus, collects the paths of content
// blocks, and stores the feature vectors of non-content blocks found at those
// paths (mutually similar ones collapsed). Throws kEmptyTemplate when CE
// finds no content at all.
SiteTemplate BuildTemplate(const TrainingCorpus& corpus, const CEConfig& config,
                           const ClassifyOptions& options = {});

// Canonical JSON: keys sorted, paths sorted, two-space indent.
std::string SerializeTemplate(const SiteTemplate& site_template);
// Throws kUnsupportedVersion for another format_version and kParse naming
// the offending field for malformed input.
SiteTemplate DeserializeTemplate(std::string_view bytes);

void SaveTemplate(const SiteTemplate& site_template,
                  const std::filesystem::path& path);
SiteTemplate LoadTemplate(const std::filesystem::path& path);

// 64-bit FNV-1a of the text, as "fnv1a64:<16 hex digits>".
std::string TextDigest(std::string_view text);

}  // namespace fastce

#endif  // FASTCE_SITE_TEMPLATE_H_
