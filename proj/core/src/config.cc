#include "fastce/config.h"

#include "fastce/corpus.h"
#include "json_codec.h"

namespace fastce {

using internal::Field;
using internal::Json;

AppConfig ParseConfig(std::string_view json) {
  const Json doc = internal::ParseJson(json, "config");
  AppConfig config;
  if (const Json* s =
          Field(doc, "config", "segmentation", Json::value_t::object, false)) {
    internal::SegmentationFromJson(*s, "config.segmentation", false,
                                   &config.segmentation);
  }
  if (const Json* s =
          Field(doc, "config", "similarity", Json::value_t::object, false)) {
    internal::SimilarityFromJson(*s, "config.similarity", false,
                                 &config.ce.similarity);
  }
  if (const Json* s = Field(doc, "config", "ce", Json::value_t::object, false)) {
    internal::CEFromJson(*s, "config.ce", false, &config.ce);
  }
  if (const Json* s =
          Field(doc, "config", "extractor", Json::value_t::object, false)) {
    if (const Json* v = Field(*s, "config.extractor", "recursive_rules",
                              Json::value_t::boolean, false)) {
      config.extractor.recursive_rules = v->get<bool>();
    }
  }
  return config;
}

AppConfig LoadConfig(const std::filesystem::path& path) {
  return ParseConfig(ReadFileBytes(path));
}

std::string SerializeConfig(const AppConfig& config) {
  Json doc = {
      {"segmentation", internal::SegmentationToJson(config.segmentation)},
      {"similarity", internal::SimilarityToJson(config.ce.similarity)},
      {"ce", internal::CEToJson(config.ce)},
      {"extractor", {{"recursive_rules", config.extractor.recursive_rules}}}};
  return doc.dump(2) + "\n";
}

}  // namespace fastce
