#include "fastce/block_model.h"

#include <algorithm>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fastce/encoding.h"
#include "fastce/error.h"
#include "fastce/text.h"
#include "gtest/gtest.h"
#include "test_support.h"

namespace fastce {
namespace {

using ::fastce::testing::MonitorPage;

const SegmentationConfig& Config() {
  static const SegmentationConfig config = SegmentationConfig::Default();
  return config;
}

std::vector<std::string> Texts(const std::vector<AtomicBlock>& blocks) {
  std::vector<std::string> out;
  for (const auto& b : blocks) out.push_back(b.text);
  return out;
}

TEST(BuildBlockTree, MonitorParagraphHasFourSpanChildren) {
  const BlockTree tree = BuildBlockTree(MonitorPage(), Config());
  ASSERT_EQ(tree.root().children.size(), 1u);
  const BlockNode& body = tree.node(tree.root().children[0]);
  EXPECT_EQ(body.tag, "body");
  ASSERT_EQ(body.children.size(), 1u);
  const BlockNode& p = tree.node(body.children[0]);
  EXPECT_EQ(p.tag, "p");
  ASSERT_EQ(p.children.size(), 4u);
  std::vector<std::string> span_texts;
  for (NodeId id : p.children) {
    EXPECT_EQ(tree.node(id).tag, "span");
    span_texts.push_back(tree.node(id).direct_text);
  }
  EXPECT_EQ(span_texts,
            (std::vector<std::string>{"House of Representatives",
                                      "The Christian Science Monitor",
                                      "Rep. Lamar Smith",
                                      "members of Congress"}));
  EXPECT_TRUE(std::is_sorted(p.children.begin(), p.children.end()));
}

TEST(BuildBlockTree, EmptyPageIsBareRoot) {
  const BlockTree tree = BuildBlockTree("", Config());
  EXPECT_EQ(tree.size(), 1u);
  EXPECT_EQ(tree.root().tag, "html");
  EXPECT_TRUE(tree.root().children.empty());
  EXPECT_EQ(tree.root().direct_text, "");
  EXPECT_TRUE(AtomicPartition(tree).empty());
}

TEST(BuildBlockTree, DegenerateMarkupIsNotAnError) {
  for (std::string_view html : {"<", "</>", "<!--", "<html></html>", "<<<>>>",
                                "</p></div></table>", "<p"}) {
    EXPECT_NO_THROW(BuildBlockTree(html, Config())) << html;
  }
}

TEST(BuildBlockTree, ThreeSiblingParagraphs) {
  const BlockTree tree = BuildBlockTree(
      "<html><body><p>alpha one</p><p>beta two</p><p>gamma three</p></body>"
      "</html>",
      Config());
  // Expected: html(0) > body(1) > p(2), p(3), p(4).
  ASSERT_EQ(tree.size(), 5u);
  const BlockNode& body = tree.node(1);
  EXPECT_EQ(body.children, (std::vector<NodeId>{2, 3, 4}));
  const std::vector<std::string> texts = {"alpha one", "beta two",
                                          "gamma three"};
  for (size_t i = 0; i < 3; ++i) {
    const BlockNode& p = tree.node(2 + i);
    EXPECT_EQ(p.tag, "p");
    EXPECT_TRUE(p.is_leaf());
    EXPECT_EQ(p.direct_text, texts[i]);
    EXPECT_EQ(p.doc_order(), 2 + i);
    EXPECT_EQ(p.parent, 1u);
  }
}

TEST(BuildBlockTree, ImpliedEndTags) {
  const BlockTree lists =
      BuildBlockTree("<ul><li>a<li>b<li>c</ul><p>x<p>y", Config());
  const BlockNode& ul = lists.node(lists.node(1).children[0]);
  EXPECT_EQ(ul.children.size(), 3u);
  EXPECT_EQ(lists.node(1).children.size(), 3u);  // ul, p, p

  const BlockTree table = BuildBlockTree(
      "<table><tr><td>a<td>b<tr><td>c</table>after", Config());
  const BlockNode& t = table.node(table.node(1).children[0]);
  ASSERT_EQ(t.children.size(), 2u);
  EXPECT_EQ(table.node(t.children[0]).children.size(), 2u);
  EXPECT_EQ(table.node(t.children[1]).children.size(), 1u);
  EXPECT_EQ(table.node(1).direct_text, "after");

  // A div start tag closes an open paragraph.
  const BlockTree closes = BuildBlockTree("<p>one<div>two</div>", Config());
  EXPECT_EQ(closes.node(1).children.size(), 2u);
}

TEST(BuildBlockTree, EndTagSearchStopsAtSpecialElements) {
  // </span> cannot close the span across the open div; </div> closes both.
  const BlockTree tree =
      BuildBlockTree("<span>a<div>b</span>c</div>d", Config());
  const BlockNode& span = tree.node(2);
  const BlockNode& div = tree.node(3);
  EXPECT_EQ(span.tag, "span");
  EXPECT_EQ(div.tag, "div");
  EXPECT_EQ(div.parent, span.id);
  EXPECT_EQ(div.direct_text, "bc");  // the stray end tag is ignored
  EXPECT_EQ(span.direct_text, "a d");
}

TEST(BuildBlockTree, ExcludesHiddenTextAndCountsStructure) {
  const BlockTree tree = BuildBlockTree(
      "<html><head><title>Headline</title><script>var x = 1;</script>"
      "<style>p { color: red }</style></head><body>"
      "<div><img src=a.png><script>track();</script><a href=/x>link</a> text"
      "<!-- hidden comment --></div></body></html>",
      Config());
  const BlockNode& div = tree.node(2);
  EXPECT_EQ(div.direct_text, "link text");
  EXPECT_EQ(div.counts, (StructuralCounts{1, 1, 1}));
  EXPECT_EQ(tree.root().counts.scripts, 1);
  EXPECT_EQ(tree.root().direct_text, "");
  EXPECT_EQ(tree.node(1).direct_text, "");
}

TEST(BuildBlockTree, DecodesEntitiesAndBreaksAtBr) {
  const BlockTree tree =
      BuildBlockTree("<p>Tom &amp; Jerry&nbsp;&copy;&#8212;&#x41;<br>next</p>",
                     Config());
  EXPECT_EQ(tree.node(2).direct_text, "Tom & Jerry \xC2\xA9\xE2\x80\x94" "A next");
}

TEST(BuildBlockTree, NonBlockElementsAreTransparent) {
  const BlockTree tree =
      BuildBlockTree("<div>a <b>bold</b> and <em>it</em>alic</div>", Config());
  ASSERT_EQ(tree.size(), 3u);
  EXPECT_EQ(tree.node(2).direct_text, "a bold and italic");
}

TEST(BuildBlockTree, ConfigurableTagSet) {
  SegmentationConfig config;
  config.block_tags = {"DIV"};
  config.Normalize();
  const BlockTree tree =
      BuildBlockTree("<div><p>one</p><p>two</p></div>", config);
  ASSERT_EQ(tree.size(), 3u);
  // p is not a block here, but still breaks words apart.
  EXPECT_EQ(tree.node(2).direct_text, "one two");
}

TEST(BuildBlockTree, HrIsAnEmptyLeafDroppedFromPartition) {
  const BlockTree tree = BuildBlockTree("<p>a</p><hr><p>b</p>", Config());
  EXPECT_EQ(tree.node(1).children.size(), 3u);
  EXPECT_EQ(tree.node(3).tag, "hr");
  EXPECT_EQ(AtomicPartition(tree).size(), 2u);

  SegmentationConfig keep = Config();
  keep.keep_empty_blocks = true;
  const BlockTree kept = BuildBlockTree("<p>a</p><hr><p>b</p>", keep);
  // html and body residuals, p, hr, p.
  EXPECT_EQ(AtomicPartition(kept).size(), 5u);
}

TEST(BuildBlockTree, HonorsDeclaredCharset) {
  const std::string latin1 =
      "<html><head><meta charset=\"iso-8859-1\"></head><body><p>caf\xE9</p>"
      "</body></html>";
  EXPECT_EQ(BuildBlockTree(latin1, Config()).node(2).direct_text,
            "caf\xC3\xA9");
  const std::string http_equiv =
      "<meta http-equiv=\"Content-Type\" content=\"text/html; "
      "charset=windows-1252\"><p>\x93quoted\x94</p>";
  EXPECT_EQ(BuildBlockTree(http_equiv, Config()).node(2).direct_text,
            "\xE2\x80\x9Cquoted\xE2\x80\x9D");
}

TEST(BuildBlockTree, UndecodableInputIsAnEncodingError) {
  try {
    BuildBlockTree("<p>caf\xE9</p>", Config());
    FAIL() << "expected an encoding error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEncoding);
  }
  try {
    BuildBlockTree("<meta charset=\"no-such-charset\"><p>caf\xE9</p>", Config());
    FAIL() << "expected an encoding error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEncoding);
  }
}

TEST(BuildBlockTree, Utf16WithBom) {
  const std::string utf16 = std::string("\xFF\xFE<\0p\0>\0h\0i\0<\0/\0p\0>\0", 20);
  EXPECT_EQ(BuildBlockTree(utf16, Config()).node(2).direct_text, "hi");
}

TEST(TraversalPathOf, NestedTableParagraph) {
  const BlockTree tree = BuildBlockTree(
      "<html><body><table><tr><p>cell text</p></tr></table></body></html>",
      Config());
  const BlockNode& p = tree.node(4);
  ASSERT_EQ(p.tag, "p");
  EXPECT_EQ(TraversalPathOf(p, tree).ToString(), "HTML.BODY.TABLE.TR.P");
  EXPECT_EQ(p.path, "HTML.BODY.TABLE.TR.P");
}

TEST(TraversalPathOf, RootIsHtml) {
  const BlockTree tree = BuildBlockTree("<p>x</p>", Config());
  EXPECT_EQ(TraversalPathOf(tree.root(), tree).ToString(), "HTML");
}

TEST(TraversalPathOf, SiblingSpansShareAPath) {
  const BlockTree tree = BuildBlockTree(MonitorPage(), Config());
  std::map<std::string, int> counts;
  for (const BlockNode& node : tree.nodes()) {
    ++counts[TraversalPathOf(node, tree).ToString()];
  }
  EXPECT_EQ(counts, (std::map<std::string, int>{{"HTML", 1},
                                                {"HTML.BODY", 1},
                                                {"HTML.BODY.P", 1},
                                                {"HTML.BODY.P.SPAN", 4}}));
}

TEST(TraversalPathOf, ForeignNodeIsAnInvariantViolation) {
  const BlockTree a = BuildBlockTree("<p>x</p>", Config());
  const BlockTree b = BuildBlockTree("<p>x</p>", Config());
  try {
    TraversalPathOf(a.node(2), b);
    FAIL() << "expected an invariant violation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvariantViolation);
  }
  EXPECT_THROW(b.node(99), Error);
}

TEST(TraversalPath, ParseAndRender) {
  EXPECT_EQ(TraversalPath::Parse("HTML.BODY.TABLE.TR.P").ToString(),
            "HTML.BODY.TABLE.TR.P");
  EXPECT_EQ(TraversalPath::Parse("html.body").ToString(), "HTML.BODY");
  EXPECT_EQ(TraversalPath::Parse("HTML").size(), 1u);
  EXPECT_THROW(TraversalPath::Parse("BODY.P"), Error);
  EXPECT_THROW(TraversalPath::Parse("HTML..P"), Error);
  EXPECT_THROW(TraversalPath::Parse(""), Error);
}

TEST(AtomicPartition, MonitorParagraphGivesFiveBlocksSpansFirst) {
  const BlockTree tree = BuildBlockTree(MonitorPage(), Config());
  const std::vector<AtomicBlock> blocks = AtomicPartition(tree);
  EXPECT_EQ(
      Texts(blocks),
      (std::vector<std::string>{
          "House of Representatives", "The Christian Science Monitor",
          "Rep. Lamar Smith", "members of Congress",
          "On Sept. 27, the US unanimously passed a resolution recognizing on "
          "its centennial. The measure was sponsored by (R) of Texas who once "
          "served on the Monitor staff. It was cosponsored by 40 other ."}));
  for (int i = 0; i < 4; ++i) EXPECT_EQ(blocks[i].kind, AtomicKind::kLeaf);
  EXPECT_EQ(blocks[4].kind, AtomicKind::kResidual);
  EXPECT_EQ(blocks[4].path, "HTML.BODY.P");
}

TEST(AtomicPartition, SingleLeafParagraph) {
  const std::vector<AtomicBlock> blocks =
      AtomicPartition(BuildBlockTree("<p>only text</p>", Config()));
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0].kind, AtomicKind::kLeaf);
  EXPECT_EQ(blocks[0].text, "only text");
}

TEST(AtomicPartition, EmptyResidualsAreDropped) {
  const BlockTree tree =
      BuildBlockTree("<div><div><p>deep text</p></div></div>", Config());
  // Brute force: one atomic block per node with non-empty own text.
  size_t expected = 0;
  for (const BlockNode& node : tree.nodes()) {
    if (!node.direct_text.empty()) ++expected;
  }
  EXPECT_EQ(expected, 1u);
  const auto blocks = AtomicPartition(tree);
  ASSERT_EQ(blocks.size(), expected);
  EXPECT_EQ(blocks[0].path, "HTML.BODY.DIV.DIV.P");
}

// Random well-formed markup for the property tests below.
class RandomPage {
 public:
  explicit RandomPage(uint32_t seed) : rng_(seed) {}

  std::string Generate() {
    std::string html = "<html><body>";
    Emit(0, &html);
    html += "</body></html>";
    return html;
  }

 private:
  void Emit(int depth, std::string* out) {
    const int items = static_cast<int>(rng_() % 4) + 1;
    for (int i = 0; i < items; ++i) {
      const int choice = static_cast<int>(rng_() % 8);
      if (depth >= 5 || choice < 3) {
        *out += " " + Word() + " " + Word() + " ";
        continue;
      }
      static constexpr std::string_view kTags[] = {"div", "span", "b",
                                                   "section", "em"};
      const std::string tag(kTags[rng_() % 5]);
      *out += "<" + tag + ">";
      Emit(depth + 1, out);
      *out += "</" + tag + ">";
    }
  }

  std::string Word() {
    static constexpr std::string_view kWords[] = {
        "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta"};
    return std::string(kWords[rng_() % 8]);
  }

  std::mt19937 rng_;
};

// Tag-stripping oracle: the visible words of markup without scripts.
std::vector<std::string> StrippedWords(const std::string& html) {
  std::string text;
  bool in_tag = false;
  for (char c : html) {
    if (c == '<') {
      in_tag = true;
      text += ' ';
    } else if (c == '>') {
      in_tag = false;
    } else if (!in_tag) {
      text += c;
    }
  }
  return Tokenize(text);
}

std::map<std::string, int> Multiset(const std::vector<std::string>& words) {
  std::map<std::string, int> counts;
  for (const auto& w : words) ++counts[w];
  return counts;
}

TEST(BlockTreeProperties, RandomPages) {
  for (uint32_t seed = 0; seed < 200; ++seed) {
    const std::string html = RandomPage(seed).Generate();
    const BlockTree tree = BuildBlockTree(html, Config());
    const std::vector<std::string> visible = StrippedWords(html);

    // Full text keeps source order.
    EXPECT_EQ(Tokenize(tree.FullText(0)), visible) << html;

    std::vector<std::string> atomic_words;
    for (const auto& block : AtomicPartition(tree)) {
      for (auto& w : Tokenize(block.text)) atomic_words.push_back(w);
    }
    EXPECT_EQ(Multiset(atomic_words), Multiset(visible)) << html;

    std::vector<std::string> direct_words;
    for (const BlockNode& node : tree.nodes()) {
      for (auto& w : Tokenize(node.direct_text)) direct_words.push_back(w);
      for (NodeId child : node.children) {
        EXPECT_LT(node.doc_order(), tree.node(child).doc_order());
        EXPECT_EQ(tree.node(child).parent, node.id);
      }
      EXPECT_TRUE(std::is_sorted(node.children.begin(), node.children.end()));
      EXPECT_EQ(TraversalPathOf(node, tree).size(),
                static_cast<size_t>(node.depth) + 1);
      EXPECT_EQ(TraversalPath::Parse(node.path).ToString(), node.path);
    }
    EXPECT_EQ(Multiset(direct_words), Multiset(visible));

    // Every node is reachable from the root exactly once.
    std::vector<int> seen(tree.size(), 0);
    std::vector<NodeId> stack = {0};
    while (!stack.empty()) {
      const NodeId id = stack.back();
      stack.pop_back();
      ++seen[id];
      for (NodeId child : tree.node(id).children) stack.push_back(child);
    }
    EXPECT_TRUE(std::all_of(seen.begin(), seen.end(),
                            [](int s) { return s == 1; }));

    // Deterministic.
    const BlockTree again = BuildBlockTree(html, Config());
    ASSERT_EQ(again.size(), tree.size());
    for (size_t i = 0; i < tree.size(); ++i) {
      EXPECT_EQ(again.node(i).path, tree.node(i).path);
      EXPECT_EQ(again.node(i).direct_text, tree.node(i).direct_text);
      EXPECT_EQ(again.node(i).children, tree.node(i).children);
    }
  }
}

TEST(DecodeToUtf8, StripsBomAndPassesUtf8) {
  EXPECT_EQ(DecodeToUtf8("\xEF\xBB\xBFHà Nội"), "Hà Nội");
  EXPECT_EQ(DeclaredCharset("<meta charset='UTF-8'>"), "utf-8");
  EXPECT_EQ(DeclaredCharset("<p>no declaration</p>"), "");
}

}  // namespace
}  // namespace fastce
