#include "fastce/block_model.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>

#include "fastce/encoding.h"
#include "fastce/error.h"
#include "fastce/text.h"
#include "html_lexer.h"

namespace fastce {
namespace {

// Nodes nested deeper than this are not turned into blocks; their text is
// lifted to the deepest allowed ancestor.
constexpr int kMaxBlockDepth = 512;

using internal::HtmlLexer;
using internal::HtmlToken;

bool OneOf(std::string_view tag, std::initializer_list<std::string_view> set) {
  return std::find(set.begin(), set.end(), tag) != set.end();
}

bool IsHeading(std::string_view tag) {
  return tag.size() == 2 && tag[0] == 'h' && tag[1] >= '1' && tag[1] <= '6';
}

bool IsVoid(std::string_view tag) {
  return OneOf(tag, {"area", "base", "basefont", "bgsound", "br", "col",
                     "embed", "hr", "img", "input", "keygen", "link", "meta",
                     "param", "source", "track", "wbr"});
}

// The tree-construction "special" category, which stops the generic end-tag
// search and breaks text flow.
bool IsSpecial(std::string_view tag) {
  return IsHeading(tag) ||
         OneOf(tag, {"address", "applet", "area", "article", "aside", "base",
                     "basefont", "bgsound", "blockquote", "body", "br",
                     "button", "caption", "center", "col", "colgroup", "dd",
                     "details", "dir", "div", "dl", "dt", "embed", "fieldset",
                     "figcaption", "figure", "footer", "form", "frame",
                     "frameset", "head", "header", "hgroup", "hr", "html",
                     "iframe", "img", "input", "li", "link", "listing", "main",
                     "marquee", "menu", "meta", "nav", "noembed", "noframes",
                     "noscript", "object", "ol", "p", "param", "plaintext",
                     "pre", "script", "section", "select", "source", "style",
                     "summary", "table", "tbody", "td", "template", "textarea",
                     "tfoot", "th", "thead", "title", "tr", "track", "ul",
                     "wbr", "xmp"});
}

bool ClosesParagraph(std::string_view tag) {
  return IsHeading(tag) ||
         OneOf(tag, {"address", "article", "aside", "blockquote", "center",
                     "dd", "details", "dialog", "dir", "div", "dl", "dt",
                     "fieldset", "figcaption", "figure", "footer", "form",
                     "header", "hgroup", "hr", "li", "listing", "main", "menu",
                     "nav", "ol", "p", "plaintext", "pre", "section",
                     "summary", "table", "ul", "xmp"});
}

bool IsHeadElement(std::string_view tag) {
  return OneOf(tag, {"base", "basefont", "bgsound", "link", "meta",
                     "noframes", "script", "style", "template", "title"});
}

// Elements whose character data is never visible page text.
bool HidesText(std::string_view tag) {
  return OneOf(tag, {"script", "style", "template", "title", "noembed",
                     "noframes", "iframe"});
}

constexpr std::array<std::string_view, 9> kDefaultScope = {
    "applet", "caption", "html", "table", "td", "th", "marquee", "object",
    "template"};
constexpr std::array<std::string_view, 3> kTableScope = {"html", "table",
                                                         "template"};

std::string Upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

class TreeBuilder {
 public:
  explicit TreeBuilder(const SegmentationConfig& config) : config_(config) {
    BlockNode root;
    root.id = 0;
    root.tag = "html";
    root.path = "HTML";
    nodes_.push_back(std::move(root));
  }

  std::vector<BlockNode> Build(std::string_view html) {
    HtmlLexer lexer(html);
    for (auto token = lexer.Next(); token.kind != HtmlToken::Kind::kEof;
         token = lexer.Next()) {
      switch (token.kind) {
        case HtmlToken::Kind::kStartTag:
          OnStartTag(token);
          break;
        case HtmlToken::Kind::kEndTag:
          OnEndTag(token.name);
          break;
        case HtmlToken::Kind::kText:
          OnText(token.text);
          break;
        default:
          break;
      }
    }
    Finalize();
    return std::move(nodes_);
  }

 private:
  struct OpenElement {
    std::string tag;
    // Block that receives text and child blocks while this element is open.
    NodeId owner;
  };

  NodeId Owner() const { return stack_.empty() ? 0 : stack_.back().owner; }

  void OnStartTag(const HtmlToken& token) {
    const std::string& tag = token.name;
    if (tag == "html" || tag == "head") return;
    if (!body_started_) {
      if (tag == "body") {
        StartBody();
        return;
      }
      if (IsHeadElement(tag)) {
        if (tag == "script") nodes_[0].counts.scripts++;
        if (!IsVoid(tag)) stack_.push_back({tag, 0});
        return;
      }
      StartBody();
    }
    if (tag == "body" || tag == "frameset") return;

    ApplyImpliedEndTags(tag);

    const NodeId owner = Owner();
    if (tag == "img") nodes_[owner].counts.images++;
    if (tag == "script") nodes_[owner].counts.scripts++;
    if (tag == "a") nodes_[owner].counts.hyperlinks++;

    if (config_.IsBlockTag(tag) && nodes_[owner].depth < kMaxBlockDepth) {
      const NodeId id = AddBlock(owner, tag);
      if (!IsVoid(tag)) stack_.push_back({tag, id});
      return;
    }
    if (IsVoid(tag)) {
      if (IsSpecial(tag)) AppendText(owner, " ");
      return;
    }
    if (IsSpecial(tag)) AppendText(owner, " ");
    stack_.push_back({tag, owner});
  }

  void OnEndTag(const std::string& tag) {
    if (tag == "html" || tag == "body") return;
    if (!body_started_) {
      if (!stack_.empty() && stack_.back().tag == tag) stack_.pop_back();
      return;
    }
    if (tag == "br") {
      AppendText(Owner(), " ");
      return;
    }
    if (IsHeading(tag)) {
      const auto index = FindInScope(
          [](std::string_view t) { return IsHeading(t); }, kDefaultScope, {});
      if (index) PopThrough(*index);
      return;
    }
    if (tag == "li") {
      CloseInScope(tag, {"ol", "ul"});
      return;
    }
    if (tag == "p" || tag == "button") {
      CloseInScope(tag, {"button"});
      return;
    }
    if (OneOf(tag, {"td", "th", "tr", "tbody", "thead", "tfoot", "table",
                    "caption"})) {
      const auto index = FindInScope(
          [&tag](std::string_view t) { return t == tag; },
          kTableScope, {});
      if (index) PopThrough(*index);
      return;
    }
    if (IsSpecial(tag)) {
      CloseInScope(tag, {});
      return;
    }
    // Any other end tag: close the nearest matching element unless a
    // special element intervenes.
    for (size_t i = stack_.size(); i-- > 0;) {
      if (stack_[i].tag == tag) {
        PopThrough(i);
        return;
      }
      if (IsSpecial(stack_[i].tag)) return;
    }
  }

  void OnText(const std::string& text) {
    if (!stack_.empty() && HidesText(stack_.back().tag)) return;
    if (!body_started_) {
      if (CollapseWhitespace(text).empty()) return;
      StartBody();
    }
    AppendText(Owner(), text);
  }

  void ApplyImpliedEndTags(const std::string& tag) {
    if (tag == "li" || tag == "dd" || tag == "dt") {
      for (size_t i = stack_.size(); i-- > 0;) {
        const std::string& open = stack_[i].tag;
        const bool match =
            tag == "li" ? open == "li" : (open == "dd" || open == "dt");
        if (match) {
          PopThrough(i);
          break;
        }
        if (IsSpecial(open) && !OneOf(open, {"address", "div", "p"})) break;
      }
    }
    if (ClosesParagraph(tag)) CloseInScope("p", {"button"});
    if (IsHeading(tag) && !stack_.empty() && IsHeading(stack_.back().tag)) {
      PopThrough(stack_.size() - 1);
    }
    if (OneOf(tag, {"td", "th", "tr", "tbody", "thead", "tfoot"})) {
      CloseInTableScope({"td", "th"});
    }
    if (OneOf(tag, {"tr", "tbody", "thead", "tfoot"})) {
      CloseInTableScope({"tr"});
    }
    if (OneOf(tag, {"tbody", "thead", "tfoot"})) {
      CloseInTableScope({"tbody", "thead", "tfoot"});
    }
    if (tag == "option" && !stack_.empty() && stack_.back().tag == "option") {
      PopThrough(stack_.size() - 1);
    }
    if (tag == "a" || tag == "button") {
      for (size_t i = stack_.size(); i-- > 0;) {
        if (stack_[i].tag == tag) {
          PopThrough(i);
          break;
        }
        if (IsSpecial(stack_[i].tag)) break;
      }
    }
  }

  template <typename Match>
  std::optional<size_t> FindInScope(
      Match match, std::span<const std::string_view> boundaries,
      std::initializer_list<std::string_view> extra_boundaries) const {
    for (size_t i = stack_.size(); i-- > 0;) {
      const std::string& open = stack_[i].tag;
      if (match(open)) return i;
      if (std::find(boundaries.begin(), boundaries.end(), open) !=
              boundaries.end() ||
          OneOf(open, extra_boundaries)) {
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  void CloseInScope(std::string_view tag,
                    std::initializer_list<std::string_view> extra_boundaries) {
    const auto index =
        FindInScope([tag](std::string_view t) { return t == tag; },
                    kDefaultScope, extra_boundaries);
    if (index) PopThrough(*index);
  }

  void CloseInTableScope(std::initializer_list<std::string_view> tags) {
    const auto index = FindInScope(
        [tags](std::string_view t) { return OneOf(t, tags); },
        kTableScope, {});
    if (index) PopThrough(*index);
  }

  // Pops stack_[index] and everything above it.
  void PopThrough(size_t index) {
    while (stack_.size() > index) {
      OpenElement element = std::move(stack_.back());
      stack_.pop_back();
      const NodeId owner = Owner();
      if (element.owner == owner && IsSpecial(element.tag)) {
        AppendText(owner, " ");
      }
    }
  }

  void StartBody() {
    body_started_ = true;
    stack_.clear();
    const NodeId id = AddBlock(0, "body");
    stack_.push_back({"body", id});
  }

  NodeId AddBlock(NodeId parent, std::string_view tag) {
    BlockNode node;
    node.id = nodes_.size();
    node.tag = std::string(tag);
    node.parent = parent;
    node.depth = nodes_[parent].depth + 1;
    node.path = nodes_[parent].path + "." + Upper(tag);
    nodes_[parent].children.push_back(node.id);
    Segment segment;
    segment.child = node.id;
    nodes_[parent].segments.push_back(std::move(segment));
    nodes_.push_back(std::move(node));
    return nodes_.back().id;
  }

  void AppendText(NodeId owner, std::string_view text) {
    auto& segments = nodes_[owner].segments;
    if (segments.empty() || segments.back().is_child()) {
      segments.push_back(Segment{});
    }
    segments.back().text.append(text);
  }

  void Finalize() {
    for (auto& node : nodes_) {
      std::vector<Segment> kept;
      std::vector<std::string> own_text;
      for (auto& segment : node.segments) {
        if (segment.is_child()) {
          kept.push_back(std::move(segment));
          continue;
        }
        segment.text = CollapseWhitespace(segment.text);
        if (segment.text.empty()) continue;
        own_text.push_back(segment.text);
        kept.push_back(std::move(segment));
      }
      node.segments = std::move(kept);
      node.direct_text = JoinText(own_text);
    }
  }

  const SegmentationConfig& config_;
  std::vector<BlockNode> nodes_;
  std::vector<OpenElement> stack_;
  bool body_started_ = false;
};

}  // namespace

SegmentationConfig SegmentationConfig::Default() {
  SegmentationConfig config;
  config.block_tags = {"table", "tr",     "td",     "hr",      "p",
                       "div",   "span",   "ul",     "ol",      "li",
                       "h1",    "h2",     "h3",     "h4",      "h5",
                       "h6",    "article", "section", "header", "footer",
                       "nav"};
  config.Normalize();
  return config;
}

bool SegmentationConfig::IsBlockTag(std::string_view tag) const {
  return std::binary_search(block_tags.begin(), block_tags.end(), tag);
}

void SegmentationConfig::Normalize() {
  for (auto& tag : block_tags) {
    if (tag.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "empty block tag");
    }
    for (auto& c : tag) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') {
        throw Error(ErrorCode::kInvalidArgument,
                    "invalid block tag '" + tag + "'");
      }
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  std::erase_if(block_tags, [](const std::string& tag) {
    return tag == "html" || tag == "body";
  });
  std::sort(block_tags.begin(), block_tags.end());
  block_tags.erase(std::unique(block_tags.begin(), block_tags.end()),
                   block_tags.end());
}

BlockTree::BlockTree(std::string page_id, SegmentationConfig config,
                     std::vector<BlockNode> nodes)
    : page_id_(std::move(page_id)),
      config_(std::move(config)),
      nodes_(std::move(nodes)) {
  if (nodes_.empty() || nodes_.front().tag != "html") {
    throw Error(ErrorCode::kInvariantViolation,
                "block tree must have an html root");
  }
  for (size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id != i) {
      throw Error(ErrorCode::kInvariantViolation,
                  "block ids must equal their position");
    }
    for (NodeId child : nodes_[i].children) {
      if (child <= i || child >= nodes_.size() || nodes_[child].parent != i) {
        throw Error(ErrorCode::kInvariantViolation,
                    "malformed child link at node " + std::to_string(i));
      }
    }
  }
}

const BlockNode& BlockTree::node(NodeId id) const {
  if (id >= nodes_.size()) {
    throw Error(ErrorCode::kInvariantViolation,
                "node " + std::to_string(id) + " is not in the tree");
  }
  return nodes_[id];
}

bool BlockTree::Contains(const BlockNode& node) const {
  return !nodes_.empty() && &node >= nodes_.data() &&
         &node < nodes_.data() + nodes_.size();
}

void BlockTree::AppendText(NodeId id, std::vector<std::string>* pieces) const {
  for (const auto& segment : nodes_[id].segments) {
    if (segment.is_child()) {
      AppendText(segment.child, pieces);
    } else {
      pieces->push_back(segment.text);
    }
  }
}

std::string BlockTree::FullText(NodeId id) const {
  node(id);
  std::vector<std::string> pieces;
  AppendText(id, &pieces);
  return JoinText(pieces);
}

TraversalPath::TraversalPath(std::vector<std::string> tags)
    : tags_(std::move(tags)) {
  for (auto& tag : tags_) tag = Upper(tag);
}

TraversalPath TraversalPath::Parse(std::string_view dotted) {
  std::vector<std::string> tags;
  size_t start = 0;
  while (true) {
    const size_t dot = dotted.find('.', start);
    const auto piece = dotted.substr(
        start, dot == std::string_view::npos ? std::string_view::npos
                                             : dot - start);
    if (piece.empty()) {
      throw Error(ErrorCode::kParse,
                  "traversal path '" + std::string(dotted) +
                      "' has an empty element");
    }
    tags.push_back(Upper(piece));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  if (tags.front() != "HTML") {
    throw Error(ErrorCode::kParse, "traversal path '" + std::string(dotted) +
                                       "' does not start at HTML");
  }
  return TraversalPath(std::move(tags));
}

std::string TraversalPath::ToString() const {
  std::string out;
  for (const auto& tag : tags_) {
    if (!out.empty()) out.push_back('.');
    out += tag;
  }
  return out;
}

BlockTree BuildBlockTree(std::string_view html_bytes,
                         const SegmentationConfig& config,
                         std::string page_id) {
  const std::string html = DecodeToUtf8(html_bytes);
  TreeBuilder builder(config);
  return BlockTree(std::move(page_id), config, builder.Build(html));
}

TraversalPath TraversalPathOf(const BlockNode& node, const BlockTree& tree) {
  if (!tree.Contains(node)) {
    throw Error(ErrorCode::kInvariantViolation,
                "node is not part of tree '" + tree.page_id() + "'");
  }
  std::vector<std::string> tags;
  for (NodeId id = node.id; id != kNoNode; id = tree.node(id).parent) {
    tags.push_back(tree.node(id).tag);
  }
  std::reverse(tags.begin(), tags.end());
  return TraversalPath(std::move(tags));
}

namespace {

void PartitionNode(const BlockTree& tree, NodeId id,
                   std::vector<AtomicBlock>* out) {
  const BlockNode& node = tree.node(id);
  for (NodeId child : node.children) PartitionNode(tree, child, out);
  if (node.direct_text.empty() && !tree.config().keep_empty_blocks) return;
  AtomicBlock block;
  block.source = id;
  block.path = node.path;
  block.text = node.direct_text;
  block.kind = node.is_leaf() ? AtomicKind::kLeaf : AtomicKind::kResidual;
  block.doc_order = node.doc_order();
  block.counts = node.counts;
  out->push_back(std::move(block));
}

}  // namespace

std::vector<AtomicBlock> AtomicPartition(const BlockTree& tree) {
  std::vector<AtomicBlock> blocks;
  PartitionNode(tree, 0, &blocks);
  return blocks;
}

}  // namespace fastce
