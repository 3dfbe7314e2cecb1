#include "fastce/synthetic_site.h"

#include <array>
#include <cctype>
#include <cstdio>
#include <random>
#include <set>

#include "fastce/error.h"
#include "fastce/text.h"
#include "json_codec.h"

namespace fastce {
namespace {

using internal::Field;
using internal::Json;

// mt19937_64 output is fully specified by the standard; the distributions
// are not, so draws go through this helper to stay stable across libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}
  size_t Below(size_t n) { return static_cast<size_t>(engine_() % n); }
  int Between(int lo, int hi) {
    return lo + static_cast<int>(Below(static_cast<size_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 engine_;
};

constexpr std::array<std::string_view, 18> kOnsets = {
    "b", "br", "c", "d", "f", "g", "k", "l", "m",
    "n", "p", "r", "s", "st", "t", "tr", "v", "z"};
constexpr std::array<std::string_view, 8> kVowels = {"a",  "e",  "i",  "o",
                                                     "u",  "ai", "ea", "ou"};
constexpr std::array<std::string_view, 8> kCodas = {"",  "n", "r",  "s",
                                                    "l", "m", "nd", "st"};

constexpr std::array<std::string_view, 20> kViOnsets = {
    "b", "c", "d", "đ", "g", "h", "kh", "l", "m", "n",
    "ng", "nh", "ph", "qu", "s", "t", "th", "tr", "v", "x"};
constexpr std::array<std::string_view, 28> kViVowels = {
    "a", "á", "à", "ả", "ã", "ạ", "ă", "ắ", "â", "ầ", "e", "é", "ê", "ế",
    "i", "í", "o", "ó", "ô", "ố", "ơ", "ớ", "u", "ú", "ư", "ừ", "y", "ý"};
constexpr std::array<std::string_view, 8> kViCodas = {"",  "n", "ng", "nh",
                                                      "m", "c", "t",  "p"};

constexpr size_t kVocabularySize = 400;

std::vector<std::string> MakeVocabulary(bool vietnamese, Rng& rng) {
  std::set<std::string> seen;
  std::vector<std::string> words;
  while (words.size() < kVocabularySize) {
    std::string word;
    if (vietnamese) {
      word += kViOnsets[rng.Below(kViOnsets.size())];
      word += kViVowels[rng.Below(kViVowels.size())];
      word += kViCodas[rng.Below(kViCodas.size())];
    } else {
      const int syllables = rng.Between(2, 3);
      for (int s = 0; s < syllables; ++s) {
        word += kOnsets[rng.Below(kOnsets.size())];
        word += kVowels[rng.Below(kVowels.size())];
        word += kCodas[rng.Below(kCodas.size())];
      }
    }
    if (seen.insert(word).second) words.push_back(std::move(word));
  }
  return words;
}

struct Fragment {
  std::string html;
  // Atomic block texts the fragment produces.
  std::vector<std::string> blocks;
};

Fragment NavList() {
  Fragment f;
  f.html = "<ul class=\"nav\">\n";
  for (std::string_view item :
       {"Home", "World", "Business", "Technology", "Sports", "Culture"}) {
    std::string lower(item);
    for (auto& c : lower) c = static_cast<char>(std::tolower(c));
    f.html += "  <li><a href=\"/section/" + lower + "\">" + std::string(item) +
              "</a></li>\n";
    f.blocks.emplace_back(item);
  }
  f.html += "</ul>\n";
  return f;
}

Fragment Advertisement() {
  Fragment f;
  const std::string text =
      "Subscribe today and save forty percent on premium membership offers";
  f.html = "<div class=\"ad\"><img src=\"/ads/banner.png\" alt=\"\"> " + text +
           " <a href=\"/subscribe\">Learn more</a></div>\n";
  f.blocks.push_back(text + " Learn more");
  return f;
}

Fragment Footer() {
  Fragment f;
  f.html =
      "<footer>\n"
      "  <p>&copy; 2008 Synthetic News Corporation. All rights reserved.</p>\n"
      "  <p>Contact the newsroom with tips and corrections</p>\n"
      "</footer>\n";
  f.blocks = {"\xC2\xA9 2008 Synthetic News Corporation. All rights reserved.",
              "Contact the newsroom with tips and corrections"};
  return f;
}

Fragment Masthead() {
  Fragment f;
  f.html =
      "<table class=\"masthead\"><tr>\n"
      "  <td>Synthetic News</td>\n"
      "  <td>Independent daily reporting since 1908</td>\n"
      "</tr></table>\n";
  f.blocks = {"Synthetic News", "Independent daily reporting since 1908"};
  return f;
}

Fragment Sidebar() {
  Fragment f;
  f.html =
      "<div class=\"sidebar\">\n"
      "  <h3>Most read</h3>\n"
      "  <ul>\n"
      "    <li>Weather outlook for the long weekend</li>\n"
      "    <li>Markets close higher after quiet session</li>\n"
      "    <li>Local team secures playoff berth</li>\n"
      "  </ul>\n"
      "</div>\n";
  f.blocks = {"Most read", "Weather outlook for the long weekend",
              "Markets close higher after quiet session",
              "Local team secures playoff berth"};
  return f;
}

struct Paragraph {
  std::string html;
  std::string full_text;
  std::vector<std::string> blocks;
};

Paragraph MakeParagraph(const SyntheticSiteSpec& spec,
                        const std::vector<std::string>& vocabulary, Rng& rng) {
  const int n = rng.Between(spec.min_words, spec.max_words);
  std::vector<std::string> words;
  for (int i = 0; i < n; ++i) {
    words.push_back(vocabulary[rng.Below(vocabulary.size())]);
  }
  if (!spec.vietnamese) {
    words.front()[0] = static_cast<char>(std::toupper(words.front()[0]));
  }
  words.back() += ".";

  // Span j starts near the (j+1)/(k+1) point of the paragraph.
  const int k = spec.spans_per_paragraph;
  std::vector<std::pair<int, int>> spans;
  for (int j = 0; j < k; ++j) {
    const int start = (j + 1) * n / (k + 1) - 1;
    spans.emplace_back(start, start + rng.Between(2, 3));
  }

  Paragraph p;
  p.html = "<p>";
  std::vector<std::string> residual;
  std::vector<std::string> span_words;
  size_t next_span = 0;
  bool in_span = false;
  for (int i = 0; i < n; ++i) {
    if (!in_span && next_span < spans.size() && spans[next_span].first == i) {
      p.html += (i == 0 ? "" : " ");
      p.html += "<span class=\"entity\">";
      in_span = true;
    } else if (i > 0) {
      p.html += " ";
    }
    p.html += words[i];
    (in_span ? span_words : residual).push_back(words[i]);
    if (in_span && spans[next_span].second == i + 1) {
      p.html += "</span>";
      p.blocks.push_back(JoinText(span_words));
      span_words.clear();
      in_span = false;
      ++next_span;
    }
  }
  p.html += "</p>";
  p.blocks.push_back(JoinText(residual));
  p.full_text = JoinText(words);
  return p;
}

int GetInt(const Json& json, std::string_view field, int fallback) {
  const Json* v =
      Field(json, "site_spec", field, Json::value_t::number_integer, false);
  return v == nullptr ? fallback : v->get<int>();
}

bool GetBool(const Json& json, std::string_view field, bool fallback) {
  const Json* v = Field(json, "site_spec", field, Json::value_t::boolean, false);
  return v == nullptr ? fallback : v->get<bool>();
}

SyntheticSiteSpec SpecFromJson(const Json& json) {
  SyntheticSiteSpec spec;
  if (const Json* v =
          Field(json, "site_spec", "site_id", Json::value_t::string, false)) {
    spec.site_id = v->get<std::string>();
  }
  spec.page_count = GetInt(json, "page_count", spec.page_count);
  spec.train_count = GetInt(json, "train_count", spec.train_count);
  if (const Json* v = Field(json, "site_spec", "seed",
                            Json::value_t::number_integer, false)) {
    spec.seed = v->get<uint64_t>();
  }
  spec.boilerplate_blocks =
      GetInt(json, "boilerplate_blocks", spec.boilerplate_blocks);
  spec.paragraphs = GetInt(json, "paragraphs", spec.paragraphs);
  spec.min_words = GetInt(json, "min_words", spec.min_words);
  spec.max_words = GetInt(json, "max_words", spec.max_words);
  spec.spans_per_paragraph =
      GetInt(json, "spans_per_paragraph", spec.spans_per_paragraph);
  spec.article_nesting = GetInt(json, "article_nesting", spec.article_nesting);
  spec.decoy = GetBool(json, "decoy", spec.decoy);
  if (const Json* v =
          Field(json, "site_spec", "decoy_text", Json::value_t::string, false)) {
    spec.decoy_text = v->get<std::string>();
  }
  spec.vietnamese = GetBool(json, "vietnamese", spec.vietnamese);
  try {
    spec.Validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kParse, std::string("site_spec: ") + e.what());
  }
  return spec;
}

std::string PageName(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "page-%04d", index + 1);
  return buf;
}

}  // namespace

void SyntheticSiteSpec::Validate() const {
  auto fail = [](const std::string& message) {
    throw Error(ErrorCode::kInvalidArgument, message);
  };
  if (site_id.empty()) fail("site_id is empty");
  if (page_count < 1) fail("page_count must be at least 1");
  if (train_count < 0 || train_count > page_count) {
    fail("train_count must lie in [0, page_count]");
  }
  if (boilerplate_blocks < 0 || boilerplate_blocks > kMaxBoilerplateBlocks) {
    fail("boilerplate_blocks must lie in [0, 5]");
  }
  if (paragraphs < 1) fail("paragraphs must be at least 1");
  if (spans_per_paragraph < 0) fail("spans_per_paragraph is negative");
  if (min_words < 3 * (spans_per_paragraph + 1) || max_words < min_words) {
    fail("min_words must be at least 3 * (spans_per_paragraph + 1) and "
         "max_words at least min_words");
  }
  if (article_nesting < 1 || article_nesting > 16) {
    fail("article_nesting must lie in [1, 16]");
  }
  if (decoy && CollapseWhitespace(decoy_text).empty()) {
    fail("decoy_text is empty");
  }
}

std::vector<GeneratedPage> GenerateSitePages(const SyntheticSiteSpec& spec) {
  spec.Validate();
  Rng rng(spec.seed);
  const std::vector<std::string> vocabulary =
      MakeVocabulary(spec.vietnamese, rng);

  std::vector<Fragment> before, after;
  const std::array<Fragment (*)(), SyntheticSiteSpec::kMaxBoilerplateBlocks>
      catalog = {NavList, Advertisement, Footer, Masthead, Sidebar};
  // Nav and masthead precede the article; the rest follow it.
  for (int i = 0; i < spec.boilerplate_blocks; ++i) {
    Fragment f = catalog[i]();
    (i == 0 || i == 3 ? before : after).push_back(std::move(f));
  }

  std::string article_path = "HTML.BODY";
  for (int d = 0; d < spec.article_nesting; ++d) article_path += ".DIV";
  const std::string paragraph_path = article_path + ".P";

  std::vector<GeneratedPage> pages;
  for (int i = 0; i < spec.page_count; ++i) {
    GeneratedPage page;
    page.page_id = "pages/" + PageName(i) + ".html";
    page.role = i < spec.train_count ? PageRole::kTrain : PageRole::kTest;
    page.gold.page_id = page.page_id;

    std::string headline;
    for (int w = 0; w < 6; ++w) {
      if (w > 0) headline += " ";
      headline += vocabulary[rng.Below(vocabulary.size())];
    }

    std::string html =
        "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>" +
        headline +
        " | Synthetic News</title>\n"
        "<script>var pageIndex = " +
        std::to_string(i + 1) +
        ";</script>\n"
        "<style>body { font-family: serif; }</style>\n</head>\n<body>\n";
    for (const auto& f : before) {
      html += f.html;
      page.non_content_blocks.insert(page.non_content_blocks.end(),
                                     f.blocks.begin(), f.blocks.end());
    }
    for (int d = 0; d < spec.article_nesting; ++d) {
      html += d == 0 ? "<div class=\"article\">\n" : "<div>\n";
    }
    std::vector<std::string> full_texts;
    for (int p = 0; p < spec.paragraphs; ++p) {
      Paragraph paragraph = MakeParagraph(spec, vocabulary, rng);
      html += "  " + paragraph.html + "\n";
      full_texts.push_back(paragraph.full_text);
      for (auto& block : paragraph.blocks) {
        page.gold.gold_blocks.push_back(std::move(block));
      }
    }
    if (spec.decoy) {
      html += "  <p class=\"disclaimer\">" + spec.decoy_text + "</p>\n";
      page.non_content_blocks.push_back(CollapseWhitespace(spec.decoy_text));
    }
    for (int d = 0; d < spec.article_nesting; ++d) html += "</div>\n";
    for (const auto& f : after) {
      html += f.html;
      page.non_content_blocks.insert(page.non_content_blocks.end(),
                                     f.blocks.begin(), f.blocks.end());
    }
    html += "</body>\n</html>\n";

    page.html = std::move(html);
    for (size_t t = 0; t < full_texts.size(); ++t) {
      if (t > 0) page.gold.gold_text += "\n\n";
      page.gold.gold_text += full_texts[t];
    }
    page.gold.gold_paths.push_back(paragraph_path);
    if (spec.spans_per_paragraph > 0) {
      page.gold.gold_paths.push_back(paragraph_path + ".SPAN");
    }
    pages.push_back(std::move(page));
  }
  return pages;
}

CorpusManifest GenerateSite(const SyntheticSiteSpec& spec,
                            const std::filesystem::path& dest) {
  const std::vector<GeneratedPage> pages = GenerateSitePages(spec);
  std::error_code ec;
  std::filesystem::create_directories(dest / "pages", ec);
  std::filesystem::create_directories(dest / "gold", ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create corpus directory '" +
                                    dest.string() + "': " + ec.message());
  }
  CorpusManifest manifest;
  manifest.site_id = spec.site_id;
  manifest.encoding_notes = "generated pages are UTF-8";
  for (size_t i = 0; i < pages.size(); ++i) {
    const auto& page = pages[i];
    const std::string gold_path = "gold/" + PageName(static_cast<int>(i)) + ".json";
    WriteFileBytes(dest / page.page_id, page.html);
    WriteFileBytes(dest / gold_path, SerializeGold(page.gold));
    ManifestEntry entry;
    entry.path = page.page_id;
    entry.source_url = "synthetic://" + spec.site_id + "/" + page.page_id;
    entry.role = page.role;
    entry.gold_path = gold_path;
    manifest.pages.push_back(std::move(entry));
  }
  WriteManifest(manifest, dest);
  return manifest;
}

std::vector<SyntheticSiteSpec> ParseSiteSpecs(std::string_view json) {
  const Json doc = internal::ParseJson(json, "site_spec");
  std::vector<SyntheticSiteSpec> specs;
  if (doc.is_object() && doc.contains("sites")) {
    const Json* sites =
        Field(doc, "site_spec", "sites", Json::value_t::array, true);
    for (const auto& site : *sites) specs.push_back(SpecFromJson(site));
  } else {
    specs.push_back(SpecFromJson(doc));
  }
  std::set<std::string> ids;
  for (const auto& spec : specs) {
    if (!ids.insert(spec.site_id).second) {
      throw Error(ErrorCode::kParse,
                  "site_spec: duplicate site_id '" + spec.site_id + "'");
    }
  }
  return specs;
}

}  // namespace fastce
