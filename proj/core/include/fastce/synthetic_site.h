#ifndef FASTCE_SYNTHETIC_SITE_H_
#define FASTCE_SYNTHETIC_SITE_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fastce/corpus.h"
#include "fastce/evaluation.h"

namespace fastce {

// Description of a generated news-like site. Boilerplate regions are
// identical on every page; each page carries one article with text drawn
// from a seeded pseudo-word vocabulary.
struct SyntheticSiteSpec {
  std::string site_id = "synthetic.example";
  int page_count = 30;
  // The first train_count pages get role train, the rest role test.
  int train_count = 20;
  uint64_t seed = 1;
  // Boilerplate regions taken in order from: nav list, advertisement,
  // footer, masthead table, sidebar.
  int boilerplate_blocks = 3;
  int paragraphs = 5;
  int min_words = 30;
  int max_words = 60;
  // Inline span sub-blocks per paragraph.
  int spans_per_paragraph = 0;
  // Number of div wrappers around the article paragraphs.
  int article_nesting = 1;
  // Fixed-text paragraph placed after the article, at the article's path.
  bool decoy = false;
  std::string decoy_text =
      "The views expressed in reader submissions do not necessarily reflect "
      "the editorial position of this publication";
  // Vietnamese-style syllables with diacritics instead of ASCII pseudo-words.
  bool vietnamese = false;

  static constexpr int kMaxBoilerplateBlocks = 5;

  // Throws kInvalidArgument when fields are out of range.
  void Validate() const;
};

struct GeneratedPage {
  std::string page_id;
  std::string html;
  PageRole role = PageRole::kTrain;
  GoldAnnotation gold;
  // Texts of the atomic blocks that are boilerplate or decoy.
  std::vector<std::string> non_content_blocks;
};

std::vector<GeneratedPage> GenerateSitePages(const SyntheticSiteSpec& spec);

// Writes pages/page-NNNN.html, gold/page-NNNN.json and manifest.json under
// dest. Throws kIo when dest is not writable.
CorpusManifest GenerateSite(const SyntheticSiteSpec& spec,
                            const std::filesystem::path& dest);

// Accepts a single spec object or {"sites": [spec, ...]}; absent fields
// keep their defaults.
std::vector<SyntheticSiteSpec> ParseSiteSpecs(std::string_view json);

}  // namespace fastce

#endif  // FASTCE_SYNTHETIC_SITE_H_
