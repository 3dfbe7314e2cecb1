#include "fastce/corpus.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "fastce/error.h"
#include "json_codec.h"

namespace fastce {

using internal::Field;
using internal::Json;

std::string_view PageRoleName(PageRole role) {
  return role == PageRole::kTrain ? "train" : "test";
}

namespace {

PageRole ParseRole(const std::string& name, std::string_view context) {
  if (name == "train") return PageRole::kTrain;
  if (name == "test") return PageRole::kTest;
  throw Error(ErrorCode::kParse, "field '" + std::string(context) +
                                     ".role' must be \"train\" or \"test\"");
}

std::string GetString(const Json& json, std::string_view context,
                      std::string_view field, bool strict) {
  const Json* v = Field(json, context, field, Json::value_t::string, strict);
  return v == nullptr ? std::string() : v->get<std::string>();
}

}  // namespace

std::string SerializeManifest(const CorpusManifest& manifest) {
  Json pages = Json::array();
  for (const auto& page : manifest.pages) {
    Json entry = {{"path", page.path},
                  {"source_url", page.source_url},
                  {"role", PageRoleName(page.role)}};
    if (!page.fetched_at.empty()) entry["fetched_at"] = page.fetched_at;
    if (!page.gold_path.empty()) entry["gold"] = page.gold_path;
    pages.push_back(std::move(entry));
  }
  Json failures = Json::array();
  for (const auto& failure : manifest.failures) {
    failures.push_back({{"url", failure.url}, {"reason", failure.reason}});
  }
  Json doc = {{"format_version", CorpusManifest::kFormatVersion},
              {"site_id", manifest.site_id},
              {"pages", pages},
              {"encoding_notes", manifest.encoding_notes},
              {"failures", failures}};
  return doc.dump(2) + "\n";
}

CorpusManifest DeserializeManifest(std::string_view bytes) {
  const Json doc = internal::ParseJson(bytes, "manifest");
  const Json* version = Field(doc, "manifest", "format_version",
                              Json::value_t::number_integer, true);
  if (version->get<long long>() != CorpusManifest::kFormatVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "manifest format_version " + version->dump() +
                    " is not supported");
  }
  CorpusManifest manifest;
  manifest.site_id = GetString(doc, "manifest", "site_id", true);
  manifest.encoding_notes = GetString(doc, "manifest", "encoding_notes", false);
  const Json* pages = Field(doc, "manifest", "pages", Json::value_t::array, true);
  for (size_t i = 0; i < pages->size(); ++i) {
    const std::string context = "manifest.pages[" + std::to_string(i) + "]";
    const Json& entry = (*pages)[i];
    ManifestEntry page;
    page.path = GetString(entry, context, "path", true);
    page.source_url = GetString(entry, context, "source_url", false);
    page.fetched_at = GetString(entry, context, "fetched_at", false);
    page.gold_path = GetString(entry, context, "gold", false);
    const std::string role = GetString(entry, context, "role", false);
    page.role = role.empty() ? PageRole::kTrain : ParseRole(role, context);
    if (page.path.empty()) {
      throw Error(ErrorCode::kParse, "field '" + context + ".path' is empty");
    }
    manifest.pages.push_back(std::move(page));
  }
  if (const Json* failures = Field(doc, "manifest", "failures",
                                   Json::value_t::array, false)) {
    for (const auto& failure : *failures) {
      manifest.failures.push_back(
          {GetString(failure, "manifest.failures", "url", true),
           GetString(failure, "manifest.failures", "reason", false)});
    }
  }
  return manifest;
}

void WriteManifest(const CorpusManifest& manifest,
                   const std::filesystem::path& dir) {
  WriteFileBytes(dir / kManifestFileName, SerializeManifest(manifest));
}

CorpusManifest ReadManifest(const std::filesystem::path& dir) {
  CorpusManifest manifest =
      DeserializeManifest(ReadFileBytes(dir / kManifestFileName));
  for (const auto& page : manifest.pages) {
    if (!std::filesystem::is_regular_file(dir / page.path)) {
      throw Error(ErrorCode::kIo, "manifest lists missing page '" +
                                      (dir / page.path).string() + "'");
    }
  }
  return manifest;
}

std::string SerializeGold(const GoldAnnotation& gold) {
  Json doc = {{"page_id", gold.page_id},
              {"gold_text", gold.gold_text},
              {"gold_block_count", gold.gold_block_count()},
              {"gold_blocks", gold.gold_blocks}};
  if (!gold.gold_paths.empty()) doc["gold_paths"] = gold.gold_paths;
  return doc.dump(2) + "\n";
}

GoldAnnotation DeserializeGold(std::string_view bytes) {
  const Json doc = internal::ParseJson(bytes, "gold");
  GoldAnnotation gold;
  gold.page_id = GetString(doc, "gold", "page_id", false);
  gold.gold_text = GetString(doc, "gold", "gold_text", true);
  auto read_strings = [&](std::string_view field,
                          std::vector<std::string>* out) {
    if (const Json* list =
            Field(doc, "gold", field, Json::value_t::array, false)) {
      for (const auto& item : *list) {
        if (!item.is_string()) {
          throw Error(ErrorCode::kParse, "field 'gold." + std::string(field) +
                                             "' must hold strings");
        }
        out->push_back(item.get<std::string>());
      }
    }
  };
  read_strings("gold_blocks", &gold.gold_blocks);
  read_strings("gold_paths", &gold.gold_paths);
  if (const Json* count = Field(doc, "gold", "gold_block_count",
                                Json::value_t::number_integer, false)) {
    if (count->get<long long>() != static_cast<long long>(gold.gold_blocks.size())) {
      throw Error(ErrorCode::kParse,
                  "field 'gold.gold_block_count' disagrees with gold_blocks");
    }
  }
  return gold;
}

std::vector<const SitePage*> SiteCorpus::PagesWithRole(PageRole role) const {
  std::vector<const SitePage*> out;
  for (const auto& page : pages) {
    if (page.role == role) out.push_back(&page);
  }
  return out;
}

const SitePage* SiteCorpus::FindPage(std::string_view page_id) const {
  for (const auto& page : pages) {
    if (page.page_id == page_id) return &page;
  }
  return nullptr;
}

SiteCorpus LoadSiteCorpus(const std::filesystem::path& dir) {
  const CorpusManifest manifest = ReadManifest(dir);
  SiteCorpus corpus;
  corpus.site_id = manifest.site_id;
  corpus.dir = dir;
  for (const auto& entry : manifest.pages) {
    SitePage page;
    page.page_id = entry.path;
    page.bytes = ReadFileBytes(dir / entry.path);
    page.role = entry.role;
    if (!entry.gold_path.empty()) {
      page.gold = DeserializeGold(ReadFileBytes(dir / entry.gold_path));
    }
    corpus.pages.push_back(std::move(page));
  }
  return corpus;
}

std::vector<std::filesystem::path> DiscoverSites(
    const std::filesystem::path& dir) {
  if (std::filesystem::is_regular_file(dir / kManifestFileName)) return {dir};
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "corpus directory '" + dir.string() +
                                    "' does not exist");
  }
  std::vector<std::filesystem::path> sites;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_directory() &&
        std::filesystem::is_regular_file(entry.path() / kManifestFileName)) {
      sites.push_back(entry.path());
    }
  }
  std::sort(sites.begin(), sites.end());
  if (sites.empty()) {
    throw Error(ErrorCode::kIo, "no manifest.json under '" + dir.string() + "'");
  }
  return sites;
}

TrainingCorpus MakeTrainingCorpus(const SiteCorpus& corpus,
                                  const std::vector<const SitePage*>& pages,
                                  const SegmentationConfig& segmentation,
                                  const FeatureConfig& features) {
  TrainingCorpus training(corpus.site_id, segmentation, features);
  for (const SitePage* page : pages) {
    training.AddPage(corpus.site_id, page->page_id, page->bytes);
  }
  return training;
}

std::string ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (out) out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
}

}  // namespace fastce
