#include "json_codec.h"

#include "fastce/error.h"

namespace fastce::internal {
namespace {

std::string TypeName(Json::value_t type) {
  switch (type) {
    case Json::value_t::object:
      return "an object";
    case Json::value_t::array:
      return "an array";
    case Json::value_t::string:
      return "a string";
    case Json::value_t::boolean:
      return "a boolean";
    case Json::value_t::number_float:
      return "a number";
    case Json::value_t::number_unsigned:
    case Json::value_t::number_integer:
      return "an integer";
    default:
      return "a value";
  }
}

bool TypeMatches(const Json& value, Json::value_t type) {
  switch (type) {
    case Json::value_t::number_float:
      return value.is_number();
    case Json::value_t::number_integer:
    case Json::value_t::number_unsigned:
      return value.is_number_integer();
    default:
      return value.type() == type;
  }
}

}  // namespace

const Json* Field(const Json& json, std::string_view context,
                  std::string_view field, Json::value_t type, bool strict) {
  const std::string name = std::string(context) + "." + std::string(field);
  if (!json.is_object()) {
    throw Error(ErrorCode::kParse, "'" + std::string(context) +
                                       "' must be an object");
  }
  const auto it = json.find(field);
  if (it == json.end()) {
    if (strict) throw Error(ErrorCode::kParse, "missing field '" + name + "'");
    return nullptr;
  }
  if (!TypeMatches(*it, type)) {
    throw Error(ErrorCode::kParse,
                "field '" + name + "' must be " + TypeName(type));
  }
  return &*it;
}

Json ParseJson(std::string_view text, std::string_view context) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse,
                std::string(context) + ": invalid JSON: " + e.what());
  }
}

void SegmentationFromJson(const Json& json, std::string_view context,
                          bool strict, SegmentationConfig* out) {
  if (const Json* tags =
          Field(json, context, "block_tags", Json::value_t::array, strict)) {
    out->block_tags.clear();
    for (const auto& tag : *tags) {
      if (!tag.is_string()) {
        throw Error(ErrorCode::kParse, "field '" + std::string(context) +
                                           ".block_tags' must hold strings");
      }
      out->block_tags.push_back(tag.get<std::string>());
    }
    out->Normalize();
  }
  if (const Json* keep = Field(json, context, "keep_empty_blocks",
                               Json::value_t::boolean, strict)) {
    out->keep_empty_blocks = keep->get<bool>();
  }
}

void SimilarityFromJson(const Json& json, std::string_view context,
                        bool strict, SimilarityConfig* out) {
  if (const Json* v = Field(json, context, "threshold",
                            Json::value_t::number_float, strict)) {
    out->threshold = v->get<double>();
  }
  if (const Json* v = Field(json, context, "structural_weight",
                            Json::value_t::number_float, strict)) {
    out->features.structural_weight = v->get<double>();
  }
  if (const Json* v = Field(json, context, "term_presence",
                            Json::value_t::boolean, strict)) {
    out->features.term_presence = v->get<bool>();
  }
  if (const Json* v =
          Field(json, context, "case_fold", Json::value_t::boolean, strict)) {
    out->features.tokenizer.case_fold = v->get<bool>();
  }
  try {
    out->Validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, std::string(context) + ": " + e.what());
  }
}

void CEFromJson(const Json& json, std::string_view context, bool strict,
                CEConfig* out) {
  if (const Json* v = Field(json, context, "frequency_fraction",
                            Json::value_t::number_float, strict)) {
    out->frequency_fraction = v->get<double>();
  }
  if (!(out->frequency_fraction > 0.0 && out->frequency_fraction <= 1.0)) {
    throw Error(ErrorCode::kParse, "field '" + std::string(context) +
                                       ".frequency_fraction' must lie in (0, 1]");
  }
}

Json SegmentationToJson(const SegmentationConfig& config) {
  return Json{{"block_tags", config.block_tags},
              {"keep_empty_blocks", config.keep_empty_blocks}};
}

Json SimilarityToJson(const SimilarityConfig& config) {
  return Json{{"threshold", config.threshold},
              {"structural_weight", config.features.structural_weight},
              {"term_presence", config.features.term_presence},
              {"case_fold", config.features.tokenizer.case_fold}};
}

Json CEToJson(const CEConfig& config) {
  return Json{{"frequency_fraction", config.frequency_fraction}};
}

}  // namespace fastce::internal
