#include "fastce/synthetic_site.h"

#include <algorithm>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "fastce/content_extractor.h"
#include "fastce/corpus.h"
#include "fastce/error.h"
#include "fastce/text.h"
#include "gtest/gtest.h"
#include "test_support.h"

namespace fastce {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> Sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

size_t CountFiles(const fs::path& dir) {
  size_t n = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) ++n;
  }
  return n;
}

TEST(GenerateSite, WritesPagesGoldAndManifest) {
  testing::TempDir dir;
  SyntheticSiteSpec spec;
  const CorpusManifest manifest = GenerateSite(spec, dir.path());
  EXPECT_EQ(manifest.pages.size(), 30u);
  EXPECT_EQ(CountFiles(dir.path() / "pages"), 30u);
  EXPECT_EQ(CountFiles(dir.path() / "gold"), 30u);
  EXPECT_TRUE(fs::exists(dir.path() / "manifest.json"));
  const auto train = std::count_if(
      manifest.pages.begin(), manifest.pages.end(),
      [](const ManifestEntry& e) { return e.role == PageRole::kTrain; });
  EXPECT_EQ(train, 20);
  EXPECT_EQ(manifest.pages[0].path, "pages/page-0001.html");
}

TEST(GenerateSite, SameSeedIsByteIdentical) {
  testing::TempDir a, b;
  SyntheticSiteSpec spec;
  spec.page_count = 5;
  spec.train_count = 3;
  spec.decoy = true;
  spec.spans_per_paragraph = 2;
  GenerateSite(spec, a.path());
  GenerateSite(spec, b.path());
  for (const auto& entry : fs::recursive_directory_iterator(a.path())) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), a.path());
    EXPECT_EQ(ReadFileBytes(entry.path()), ReadFileBytes(b.path() / rel))
        << rel;
  }
  const std::string first = GenerateSitePages(spec)[0].html;
  spec.seed = 2;
  EXPECT_NE(GenerateSitePages(spec)[0].html, first);
}

TEST(GenerateSite, UnwritableDestination) {
  testing::TempDir dir;
  WriteFileBytes(dir.path() / "file", "x");
  try {
    GenerateSite(SyntheticSiteSpec{}, dir.path() / "file" / "sub");
    FAIL() << "expected an I/O error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(GenerateSitePages, DecoyIsMarkedNonContent) {
  SyntheticSiteSpec spec;
  spec.page_count = 3;
  spec.train_count = 2;
  spec.decoy = true;
  for (const auto& page : GenerateSitePages(spec)) {
    EXPECT_NE(page.html.find(spec.decoy_text), std::string::npos);
    EXPECT_NE(std::find(page.non_content_blocks.begin(),
                        page.non_content_blocks.end(), spec.decoy_text),
              page.non_content_blocks.end());
    for (const auto& block : page.gold.gold_blocks) {
      EXPECT_NE(block, spec.decoy_text);
    }
    EXPECT_EQ(page.gold.gold_text.find("views expressed"), std::string::npos);
    EXPECT_EQ(page.gold.gold_block_count(), 5u);
  }
}

TEST(GenerateSitePages, GoldMatchesSegmentation) {
  SyntheticSiteSpec spec;
  spec.page_count = 4;
  spec.train_count = 2;
  spec.spans_per_paragraph = 2;
  spec.boilerplate_blocks = 5;
  spec.article_nesting = 3;
  for (const auto& page : GenerateSitePages(spec)) {
    const BlockTree tree =
        BuildBlockTree(page.html, SegmentationConfig::Default());
    std::vector<std::string> atomic;
    for (const auto& b : AtomicPartition(tree)) atomic.push_back(b.text);
    std::vector<std::string> expected = page.gold.gold_blocks;
    for (const auto& t : page.non_content_blocks) expected.push_back(t);
    EXPECT_EQ(Sorted(atomic), Sorted(expected));
    // Each paragraph contributes two spans and a residual.
    EXPECT_EQ(page.gold.gold_block_count(), 15u);
    EXPECT_NE(std::find(page.gold.gold_paths.begin(),
                        page.gold.gold_paths.end(),
                        "HTML.BODY.DIV.DIV.DIV.P"),
              page.gold.gold_paths.end());
  }
}

TEST(GenerateSitePages, CeLabelsAgreeWithGold) {
  SyntheticSiteSpec spec;
  spec.page_count = 10;
  spec.train_count = 10;
  spec.boilerplate_blocks = 5;
  const auto pages = GenerateSitePages(spec);
  TrainingCorpus corpus(spec.site_id, SegmentationConfig::Default());
  for (const auto& page : pages) {
    corpus.AddPage(spec.site_id, page.page_id, page.html);
  }
  const auto labels = ClassifyBlocks(corpus, CEConfig{});
  for (size_t p = 0; p < pages.size(); ++p) {
    std::vector<std::string> content;
    for (const auto& label : labels[p]) {
      if (label.is_content()) {
        content.push_back(corpus.pages()[p].blocks[label.block].text);
      }
    }
    EXPECT_EQ(Sorted(content), Sorted(pages[p].gold.gold_blocks));
  }
}

TEST(GenerateSitePages, VietnameseVocabulary) {
  SyntheticSiteSpec spec;
  spec.page_count = 2;
  spec.train_count = 1;
  spec.vietnamese = true;
  const auto pages = GenerateSitePages(spec);
  EXPECT_TRUE(IsValidUtf8(pages[0].html));
  // Some byte outside ASCII appears in the article.
  EXPECT_TRUE(std::any_of(pages[0].gold.gold_text.begin(),
                          pages[0].gold.gold_text.end(),
                          [](char c) { return (c & 0x80) != 0; }));
}

TEST(SyntheticSiteSpec, Validate) {
  SyntheticSiteSpec spec;
  EXPECT_NO_THROW(spec.Validate());
  spec.train_count = 31;
  EXPECT_THROW(spec.Validate(), Error);
  spec = {};
  spec.boilerplate_blocks = 6;
  EXPECT_THROW(spec.Validate(), Error);
  spec = {};
  spec.paragraphs = 0;
  EXPECT_THROW(spec.Validate(), Error);
}

TEST(ParseSiteSpecs, SingleAndList) {
  const auto one = ParseSiteSpecs(R"({"site_id": "a.example", "seed": 9})");
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].site_id, "a.example");
  EXPECT_EQ(one[0].seed, 9u);
  EXPECT_EQ(one[0].page_count, 30);

  const auto two = ParseSiteSpecs(
      R"({"sites": [{"site_id": "a.example"}, {"site_id": "b.example",
          "page_count": 40, "decoy": true}]})");
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[1].page_count, 40);
  EXPECT_TRUE(two[1].decoy);

  EXPECT_THROW(ParseSiteSpecs(R"({"sites": [{"site_id": "a"}, {"site_id": "a"}]})"),
               Error);
  try {
    ParseSiteSpecs(R"({"page_count": "many"})");
    FAIL() << "expected a parse error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("page_count"), std::string::npos);
  }
}

}  // namespace
}  // namespace fastce
