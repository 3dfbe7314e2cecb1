#ifndef FASTCE_CONFIG_H_
#define FASTCE_CONFIG_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "fastce/block_model.h"
#include "fastce/content_extractor.h"
#include "fastce/fast_extractor.h"

namespace fastce {

// Environment variable naming the default config file.
inline constexpr char kConfigEnvVar[] = "FASTCE_CONFIG";

// Settings shared by the CLI subcommands. The file format is JSON with the
// optional sections "segmentation", "similarity", "ce" and "extractor";
// absent fields keep their defaults.
struct AppConfig {
  SegmentationConfig segmentation = SegmentationConfig::Default();
  CEConfig ce;
  ExtractorConfig extractor;
};

AppConfig ParseConfig(std::string_view json);
AppConfig LoadConfig(const std::filesystem::path& path);
std::string SerializeConfig(const AppConfig& config);

}  // namespace fastce

#endif  // FASTCE_CONFIG_H_
