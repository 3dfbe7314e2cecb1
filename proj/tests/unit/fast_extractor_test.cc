#include "fastce/fast_extractor.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fastce/error.h"
#include "fastce/text.h"
#include "gtest/gtest.h"
#include "test_support.h"

namespace fastce {
namespace {

using ::fastce::testing::MonitorPage;

SiteTemplate MakeTemplate(std::set<std::string, std::less<>> paths) {
  SiteTemplate t;
  t.site_id = "news.example";
  t.segmentation = SegmentationConfig::Default();
  t.content_paths = std::move(paths);
  return t;
}

constexpr std::string_view kMonitorText =
    "On Sept. 27, the US House of Representatives unanimously passed a "
    "resolution recognizing The Christian Science Monitor on its centennial. "
    "The measure was sponsored by Rep. Lamar Smith (R) of Texas who once "
    "served on the Monitor staff. It was cosponsored by 40 other members of "
    "Congress.";

TEST(SelectBlocks, MonitorParagraphStaysWhole) {
  const BlockTree tree =
      BuildBlockTree(MonitorPage(), SegmentationConfig::Default());
  const auto blocks =
      SelectBlocks(tree, MakeTemplate({"HTML.BODY.P", "HTML.BODY.P.SPAN"}));
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0].path, "HTML.BODY.P");
  EXPECT_EQ(Tokenize(blocks[0].included_text), Tokenize(kMonitorText));
  EXPECT_NE(blocks[0].included_text.find("The Christian Science Monitor"),
            std::string::npos);
  EXPECT_TRUE(blocks[0].excluded_subblocks.empty());
  EXPECT_EQ(blocks[0].retained_nodes.size(), 5u);
}

TEST(SelectBlocks, OffPathLeafSubBlocksArePruned) {
  const BlockTree tree =
      BuildBlockTree(MonitorPage(), SegmentationConfig::Default());
  const auto blocks = SelectBlocks(tree, MakeTemplate({"HTML.BODY.P"}));
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0].excluded_subblocks.size(), 4u);
  EXPECT_EQ(blocks[0].included_text.find("Lamar"), std::string::npos);
  EXPECT_EQ(blocks[0].included_text.rfind("On Sept. 27, the US", 0), 0u);
}

TEST(SelectBlocks, OffPathSubBlockWithContentPathChildIsKept) {
  const BlockTree tree = BuildBlockTree(
      "<html><body><article>Lead text<div>Wrapper words<p>Inner "
      "paragraph</p></div><div>Share this</div>closing</article></body></html>",
      SegmentationConfig::Default());
  const auto blocks = SelectBlocks(
      tree, MakeTemplate({"HTML.BODY.ARTICLE", "HTML.BODY.ARTICLE.DIV.P"}));
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0].included_text,
            "Lead text Wrapper words Inner paragraph closing");
  ASSERT_EQ(blocks[0].excluded_subblocks.size(), 1u);
  EXPECT_EQ(tree.node(blocks[0].excluded_subblocks[0]).direct_text,
            "Share this");
}

TEST(SelectBlocks, MaximalCandidatesInDocumentOrder) {
  const BlockTree tree = BuildBlockTree(
      "<div><p>one</p></div><ul><li>menu</li></ul><div><p>two</p>"
      "<p>three</p></div>",
      SegmentationConfig::Default());
  const auto blocks = SelectBlocks(tree, MakeTemplate({"HTML.BODY.DIV.P"}));
  ASSERT_EQ(blocks.size(), 3u);
  EXPECT_EQ(blocks[0].included_text, "one");
  EXPECT_EQ(blocks[1].included_text, "two");
  EXPECT_EQ(blocks[2].included_text, "three");
  EXPECT_LT(blocks[0].doc_order, blocks[1].doc_order);
}

TEST(SelectBlocks, EmptyTemplateSelectsNothing) {
  const BlockTree tree =
      BuildBlockTree(MonitorPage(), SegmentationConfig::Default());
  EXPECT_TRUE(SelectBlocks(tree, MakeTemplate({})).empty());
}

TEST(SelectBlocks, SegmentationMismatch) {
  SegmentationConfig other;
  other.block_tags = {"p"};
  other.Normalize();
  const BlockTree tree = BuildBlockTree(MonitorPage(), other);
  try {
    SelectBlocks(tree, MakeTemplate({"HTML.BODY.P"}));
    FAIL() << "expected a config mismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigMismatch);
  }
}

TEST(SelectBlocks, NonRecursiveModeKeepsRetainedSubBlocksWhole) {
  const std::string html =
      "<article>lead<div>wrap<p>inner</p><span>deep aside</span></div>"
      "</article>";
  const BlockTree tree = BuildBlockTree(html, SegmentationConfig::Default());
  const SiteTemplate t =
      MakeTemplate({"HTML.BODY.ARTICLE", "HTML.BODY.ARTICLE.DIV.P"});
  const auto recursive = SelectBlocks(tree, t);
  ASSERT_EQ(recursive.size(), 1u);
  EXPECT_EQ(recursive[0].included_text, "lead wrap inner");
  ExtractorConfig flat;
  flat.recursive_rules = false;
  const auto whole = SelectBlocks(tree, t, flat);
  ASSERT_EQ(whole.size(), 1u);
  EXPECT_EQ(whole[0].included_text, "lead wrap inner deep aside");
}

// Random pages over transparent-free block tags.
std::string RandomHtml(std::mt19937* rng, int depth = 0) {
  static constexpr std::string_view kTags[] = {"div", "section", "span",
                                               "article"};
  static constexpr std::string_view kWords[] = {"red", "green", "blue",
                                                "cyan", "gold", "teal"};
  std::string out;
  const int items = 1 + static_cast<int>((*rng)() % 3);
  for (int i = 0; i < items; ++i) {
    if (depth >= 4 || (*rng)() % 3 == 0) {
      if ((*rng)() % 4 != 0) out += std::string(kWords[(*rng)() % 6]) + " ";
      continue;
    }
    const std::string tag(kTags[(*rng)() % 4]);
    out += "<" + tag + ">" + RandomHtml(rng, depth + 1) + "</" + tag + ">";
  }
  return out;
}

// Restatement of the rules node by node: a descendant of a candidate is
// retained when every node from just below the candidate down to it is on a
// content path or has a child that is (only the first step is checked in
// non-recursive mode).
struct OracleBlock {
  NodeId node;
  std::set<NodeId> retained;
  std::set<NodeId> excluded;
};

std::vector<OracleBlock> OracleSelect(const BlockTree& tree,
                                      const SiteTemplate& t, bool recursive) {
  auto in_p = [&](NodeId id) { return t.HasPath(tree.node(id).path); };
  auto passes = [&](NodeId id) {
    if (in_p(id)) return true;
    for (NodeId c : tree.node(id).children) {
      if (in_p(c)) return true;
    }
    return false;
  };
  auto ancestor_in_p = [&](NodeId id) {
    for (NodeId a = tree.node(id).parent; a != kNoNode; a = tree.node(a).parent) {
      if (in_p(a)) return true;
    }
    return false;
  };
  std::vector<OracleBlock> out;
  for (const BlockNode& cand : tree.nodes()) {
    if (!in_p(cand.id) || ancestor_in_p(cand.id)) continue;
    OracleBlock block{cand.id, {cand.id}, {}};
    for (const BlockNode& n : tree.nodes()) {
      std::vector<NodeId> chain;  // n up to just below the candidate
      NodeId a = n.id;
      while (a != kNoNode && a != cand.id) {
        chain.push_back(a);
        a = tree.node(a).parent;
      }
      if (a == kNoNode || chain.empty()) continue;
      bool keep = true;
      if (recursive) {
        for (NodeId m : chain) keep = keep && passes(m);
      } else {
        keep = passes(chain.back());
      }
      if (keep) {
        block.retained.insert(n.id);
      } else if (block.retained.count(n.parent) != 0) {
        // Nodes come in document order, so the parent was decided first.
        block.excluded.insert(n.id);
      }
    }
    std::string text;
    for (NodeId id : block.retained) text += tree.node(id).direct_text;
    if (!text.empty()) out.push_back(block);
  }
  return out;
}

std::map<std::string, int> WordBag(const std::string& text) {
  std::map<std::string, int> bag;
  for (const auto& w : Tokenize(text)) ++bag[w];
  return bag;
}

TEST(SelectBlocksProperties, AgreesWithRuleOracle) {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::string html = "<html><body>" + RandomHtml(&rng) + "</body></html>";
    const BlockTree tree = BuildBlockTree(html, SegmentationConfig::Default());
    std::set<std::string, std::less<>> paths;
    for (const BlockNode& n : tree.nodes()) {
      if (rng() % 3 == 0) paths.insert(n.path);
    }
    const SiteTemplate t = MakeTemplate(paths);
    for (bool recursive : {true, false}) {
      ExtractorConfig config;
      config.recursive_rules = recursive;
      const auto blocks = SelectBlocks(tree, t, config);
      const auto oracle = OracleSelect(tree, t, recursive);
      ASSERT_EQ(blocks.size(), oracle.size()) << html;
      std::set<NodeId> seen;
      for (size_t i = 0; i < blocks.size(); ++i) {
        const auto& b = blocks[i];
        EXPECT_EQ(b.node, oracle[i].node);
        EXPECT_EQ(std::set<NodeId>(b.retained_nodes.begin(),
                                   b.retained_nodes.end()),
                  oracle[i].retained);
        EXPECT_EQ(std::set<NodeId>(b.excluded_subblocks.begin(),
                                   b.excluded_subblocks.end()),
                  oracle[i].excluded);
        EXPECT_TRUE(std::is_sorted(b.retained_nodes.begin(),
                                   b.retained_nodes.end()));
        if (i > 0) {
          EXPECT_LT(blocks[i - 1].doc_order, b.doc_order);
        }
        // No node is emitted twice across blocks.
        for (NodeId id : b.retained_nodes) {
          EXPECT_TRUE(seen.insert(id).second) << html;
        }
        std::string own;
        for (NodeId id : b.retained_nodes) own += tree.node(id).direct_text + " ";
        EXPECT_EQ(WordBag(b.included_text), WordBag(own));
      }
    }
  }
}

SiteTemplate DecoyTemplate() {
  SiteTemplate t = MakeTemplate({"HTML.BODY.DIV.P"});
  t.decoys["HTML.BODY.DIV.P"].push_back(
      Decoy{Featurize("Opinions are those of the author", {}), "x"});
  return t;
}

TEST(FilterDecoys, DropsBlocksSimilarToDecoyAtTheirPath) {
  const BlockTree tree = BuildBlockTree(
      "<div><p>Actual article text here</p><p>Opinions are those of the "
      "author</p></div>",
      SegmentationConfig::Default());
  const SiteTemplate t = DecoyTemplate();
  DetectionCounters counters;
  const auto kept =
      FilterDecoys(SelectBlocks(tree, t), t, t.ce.similarity, &counters);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].included_text, "Actual article text here");
  EXPECT_EQ(counters.num_block, 2u);
  EXPECT_EQ(counters.num_block_temp, 1u);
  EXPECT_EQ(counters.comparisons, 2u);
}

TEST(FilterDecoys, DissimilarOrOtherPathIsKept) {
  SiteTemplate t = DecoyTemplate();
  t.content_paths.insert("HTML.BODY.SECTION.P");
  const BlockTree tree = BuildBlockTree(
      "<div><p>Opinions are those of the author and publisher and the "
      "editorial board of record</p></div><section><p>Opinions are those of "
      "the author</p></section>",
      SegmentationConfig::Default());
  const auto kept = FilterDecoys(SelectBlocks(tree, t), t, t.ce.similarity);
  EXPECT_EQ(kept.size(), 2u);
}

TEST(ExtractText, MonitorPhraseSurvivesAndTextIsJoined) {
  const SiteTemplate t = MakeTemplate({"HTML.BODY.P", "HTML.BODY.P.SPAN"});
  const PrimaryContent content = ExtractText(MonitorPage(), t);
  EXPECT_NE(content.text.find("The Christian Science Monitor"),
            std::string::npos);
  EXPECT_EQ(content.counters.num_block, 1u);

  const PrimaryContent two = ExtractText(
      std::string_view("<div><p>first</p></div><div><p>second</p></div>"),
      MakeTemplate({"HTML.BODY.DIV.P"}));
  EXPECT_EQ(two.text, "first\n\nsecond");
  EXPECT_GT(two.elapsed.count(), 0);
}

}  // namespace
}  // namespace fastce
