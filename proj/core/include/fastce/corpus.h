#ifndef FASTCE_CORPUS_H_
#define FASTCE_CORPUS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fastce/content_extractor.h"
#include "fastce/evaluation.h"

namespace fastce {

enum class PageRole { kTrain, kTest };

std::string_view PageRoleName(PageRole role);

struct ManifestEntry {
  // Relative to the corpus directory.
  std::string path;
  std::string source_url;
  // ISO-8601 UTC; empty for ingested local files.
  std::string fetched_at;
  PageRole role = PageRole::kTrain;
  // Relative path of the gold annotation, if any.
  std::string gold_path;
};

struct FetchFailure {
  std::string url;
  std::string reason;
};

struct CorpusManifest {
  static constexpr int kFormatVersion = 1;

  std::string site_id;
  std::vector<ManifestEntry> pages;
  std::string encoding_notes;
  std::vector<FetchFailure> failures;
};

inline constexpr std::string_view kManifestFileName = "manifest.json";

std::string SerializeManifest(const CorpusManifest& manifest);
CorpusManifest DeserializeManifest(std::string_view bytes);
void WriteManifest(const CorpusManifest& manifest,
                   const std::filesystem::path& dir);
// Reads dir/manifest.json and checks that every page file exists.
CorpusManifest ReadManifest(const std::filesystem::path& dir);

std::string SerializeGold(const GoldAnnotation& gold);
GoldAnnotation DeserializeGold(std::string_view bytes);

struct SitePage {
  std::string page_id;
  std::string bytes;
  PageRole role = PageRole::kTrain;
  std::optional<GoldAnnotation> gold;
};

struct SiteCorpus {
  std::string site_id;
  std::filesystem::path dir;
  std::vector<SitePage> pages;

  std::vector<const SitePage*> PagesWithRole(PageRole role) const;
  const SitePage* FindPage(std::string_view page_id) const;
};

// Loads pages and gold annotations listed in the manifest. Page ids are the
// manifest paths.
SiteCorpus LoadSiteCorpus(const std::filesystem::path& dir);

// A directory holding manifest.json is one site; otherwise every immediate
// subdirectory holding one is a site (sorted by name).
std::vector<std::filesystem::path> DiscoverSites(
    const std::filesystem::path& dir);

// Segments and featurizes the selected pages into a CE corpus.
TrainingCorpus MakeTrainingCorpus(const SiteCorpus& corpus,
                                  const std::vector<const SitePage*>& pages,
                                  const SegmentationConfig& segmentation,
                                  const FeatureConfig& features);

std::string ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes);

}  // namespace fastce

#endif  // FASTCE_CORPUS_H_
