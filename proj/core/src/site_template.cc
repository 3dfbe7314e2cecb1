#include "fastce/site_template.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fastce/error.h"
#include "json_codec.h"

namespace fastce {

using internal::Field;
using internal::Json;

const std::vector<Decoy>& SiteTemplate::DecoysAt(std::string_view path) const {
  static const std::vector<Decoy> kNone;
  const auto it = decoys.find(path);
  return it == decoys.end() ? kNone : it->second;
}

std::size_t SiteTemplate::DecoyCount() const {
  std::size_t count = 0;
  for (const auto& [path, list] : decoys) count += list.size();
  return count;
}

std::string TextDigest(std::string_view text) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char c : text) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string("fnv1a64:") + buf;
}

SiteTemplate BuildTemplate(const TrainingCorpus& corpus, const CEConfig& config,
                           const ClassifyOptions& options) {
  const std::vector<PageLabels> labels = ClassifyBlocks(corpus, config, options);

  SiteTemplate result;
  result.site_id = corpus.site_id();
  result.segmentation = corpus.segmentation();
  result.ce = config;
  result.built_from = corpus.size();

  const auto& pages = corpus.pages();
  for (size_t p = 0; p < pages.size(); ++p) {
    for (const auto& label : labels[p]) {
      if (label.is_content()) {
        result.content_paths.insert(pages[p].blocks[label.block].path);
      }
    }
  }
  if (result.content_paths.empty()) {
    throw Error(ErrorCode::kEmptyTemplate,
                "no content blocks found in corpus '" + corpus.site_id() +
                    "'; the template would be unusable");
  }

  for (size_t p = 0; p < pages.size(); ++p) {
    for (const auto& label : labels[p]) {
      if (label.is_content()) continue;
      const AtomicBlock& block = pages[p].blocks[label.block];
      if (!result.HasPath(block.path)) continue;
      const FeatureVector& features = pages[p].features[label.block];
      auto& list = result.decoys[block.path];
      const bool duplicate =
          std::any_of(list.begin(), list.end(), [&](const Decoy& d) {
            return IsSimilar(d.features, features, config.similarity);
          });
      if (!duplicate) list.push_back(Decoy{features, TextDigest(block.text)});
    }
  }
  return result;
}

std::string SerializeTemplate(const SiteTemplate& t) {
  Json decoys = Json::object();
  for (const auto& [path, list] : t.decoys) {
    Json entries = Json::array();
    for (const auto& decoy : list) {
      Json features = Json::object();
      for (const auto& [key, value] : decoy.features.entries()) {
        features[key] = value;
      }
      entries.push_back(
          Json{{"features", features}, {"text_digest", decoy.text_digest}});
    }
    decoys[path] = entries;
  }
  Json doc = {
      {"format_version", t.format_version},
      {"site_id", t.site_id},
      {"built_from", t.built_from},
      {"config_snapshot",
       {{"segmentation", internal::SegmentationToJson(t.segmentation)},
        {"similarity", internal::SimilarityToJson(t.ce.similarity)},
        {"ce", internal::CEToJson(t.ce)}}},
      {"content_paths", Json(std::vector<std::string>(t.content_paths.begin(),
                                                      t.content_paths.end()))},
      {"decoys", decoys},
  };
  return doc.dump(2) + "\n";
}

SiteTemplate DeserializeTemplate(std::string_view bytes) {
  const Json doc = internal::ParseJson(bytes, "template");
  constexpr std::string_view kRoot = "template";
  const Json* version =
      Field(doc, kRoot, "format_version", Json::value_t::number_integer, true);
  if (version->get<long long>() != SiteTemplate::kFormatVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "template format_version " + version->dump() +
                    " is not supported (expected " +
                    std::to_string(SiteTemplate::kFormatVersion) + ")");
  }

  SiteTemplate t;
  t.site_id =
      Field(doc, kRoot, "site_id", Json::value_t::string, true)->get<std::string>();
  const Json* built_from =
      Field(doc, kRoot, "built_from", Json::value_t::number_integer, true);
  if (built_from->get<long long>() < 0) {
    throw Error(ErrorCode::kParse, "field 'template.built_from' is negative");
  }
  t.built_from = built_from->get<std::size_t>();

  const Json* snapshot =
      Field(doc, kRoot, "config_snapshot", Json::value_t::object, true);
  internal::SegmentationFromJson(
      *Field(*snapshot, "template.config_snapshot", "segmentation",
             Json::value_t::object, true),
      "template.config_snapshot.segmentation", true, &t.segmentation);
  internal::SimilarityFromJson(
      *Field(*snapshot, "template.config_snapshot", "similarity",
             Json::value_t::object, true),
      "template.config_snapshot.similarity", true, &t.ce.similarity);
  internal::CEFromJson(*Field(*snapshot, "template.config_snapshot", "ce",
                              Json::value_t::object, true),
                       "template.config_snapshot.ce", true, &t.ce);

  for (const auto& path :
       *Field(doc, kRoot, "content_paths", Json::value_t::array, true)) {
    if (!path.is_string()) {
      throw Error(ErrorCode::kParse,
                  "field 'template.content_paths' must hold strings");
    }
    // Validates the dotted form.
    TraversalPath::Parse(path.get<std::string>());
    t.content_paths.insert(path.get<std::string>());
  }
  if (t.content_paths.empty()) {
    throw Error(ErrorCode::kParse, "field 'template.content_paths' is empty");
  }

  for (const auto& [path, list] :
       Field(doc, kRoot, "decoys", Json::value_t::object, true)->items()) {
    const std::string context = "template.decoys." + path;
    if (!t.HasPath(path)) {
      throw Error(ErrorCode::kParse,
                  "field '" + context + "' is not a content path");
    }
    if (!list.is_array()) {
      throw Error(ErrorCode::kParse, "field '" + context + "' must be an array");
    }
    auto& decoys = t.decoys[path];
    for (const auto& entry : list) {
      const Json* features =
          Field(entry, context, "features", Json::value_t::object, true);
      std::vector<FeatureVector::Entry> entries;
      for (const auto& [key, value] : features->items()) {
        if (!value.is_number() || value.get<double>() < 0) {
          throw Error(ErrorCode::kParse, "field '" + context + ".features." +
                                             key +
                                             "' must be a non-negative number");
        }
        entries.emplace_back(key, value.get<double>());
      }
      Decoy decoy;
      decoy.features = FeatureVector::FromEntries(std::move(entries));
      if (const Json* digest = Field(entry, context, "text_digest",
                                     Json::value_t::string, false)) {
        decoy.text_digest = digest->get<std::string>();
      }
      decoys.push_back(std::move(decoy));
    }
  }
  return t;
}

void SaveTemplate(const SiteTemplate& site_template,
                  const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write template '" + path.string() + "'");
  }
  out << SerializeTemplate(site_template);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write template '" + path.string() + "'");
  }
}

SiteTemplate LoadTemplate(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot read template '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return DeserializeTemplate(buffer.str());
}

}  // namespace fastce
