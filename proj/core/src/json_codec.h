#ifndef FASTCE_SRC_JSON_CODEC_H_
#define FASTCE_SRC_JSON_CODEC_H_

#include <string>
#include <string_view>

#include "fastce/block_model.h"
#include "fastce/content_extractor.h"
#include "fastce/features.h"
#include "json.hpp"

namespace fastce::internal {

using Json = nlohmann::json;

// In strict mode every field must be present; otherwise missing fields keep
// the value already in *out. Type errors always throw kParse naming
// "<context>.<field>".
void SegmentationFromJson(const Json& json, std::string_view context,
                          bool strict, SegmentationConfig* out);
void SimilarityFromJson(const Json& json, std::string_view context,
                        bool strict, SimilarityConfig* out);
void CEFromJson(const Json& json, std::string_view context, bool strict,
                CEConfig* out);

Json SegmentationToJson(const SegmentationConfig& config);
Json SimilarityToJson(const SimilarityConfig& config);
Json CEToJson(const CEConfig& config);

// Returns json[field] after checking presence (strict) and type. Returns
// nullptr when absent in non-strict mode.
const Json* Field(const Json& json, std::string_view context,
                  std::string_view field, Json::value_t type, bool strict);

Json ParseJson(std::string_view text, std::string_view context);

}  // namespace fastce::internal

#endif  // FASTCE_SRC_JSON_CODEC_H_
