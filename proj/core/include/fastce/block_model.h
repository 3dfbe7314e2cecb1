#ifndef FASTCE_BLOCK_MODEL_H_
#define FASTCE_BLOCK_MODEL_H_

#include <compare>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fastce {

// Which elements become blocks. Tags are lowercase; "html" and "body" are
// always structural and need not be listed.
struct SegmentationConfig {
  std::vector<std::string> block_tags;
  // Keep blocks whose text is empty (hr separators, image-only cells) in the
  // atomic partition and in extraction output.
  bool keep_empty_blocks = false;

  static SegmentationConfig Default();

  bool IsBlockTag(std::string_view tag) const;
  // Sorts, lowercases and de-duplicates block_tags; throws on an empty or
  // malformed tag.
  void Normalize();

  bool operator==(const SegmentationConfig&) const = default;
};

struct StructuralCounts {
  int images = 0;
  int scripts = 0;
  int hyperlinks = 0;

  StructuralCounts& operator+=(const StructuralCounts& other) {
    images += other.images;
    scripts += other.scripts;
    hyperlinks += other.hyperlinks;
    return *this;
  }
  bool operator==(const StructuralCounts&) const = default;
};

using NodeId = std::size_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

// A piece of a block's content in source order: either a run of the block's
// own text or a reference to a child block.
struct Segment {
  std::string text;
  NodeId child = kNoNode;

  bool is_child() const { return child != kNoNode; }
};

struct BlockNode {
  // Equal to doc_order: nodes are numbered in the order their opening tags
  // appear in the source.
  NodeId id = 0;
  std::string tag;
  NodeId parent = kNoNode;
  int depth = 0;
  std::vector<NodeId> children;
  std::vector<Segment> segments;
  // Whitespace-collapsed text owned by this block, excluding descendant
  // blocks.
  std::string direct_text;
  // Rendered traversal path, e.g. "HTML.BODY.TABLE.TR.P".
  std::string path;
  StructuralCounts counts;

  std::size_t doc_order() const { return id; }
  bool is_leaf() const { return children.empty(); }
};

class BlockTree {
 public:
  BlockTree(std::string page_id, SegmentationConfig config,
            std::vector<BlockNode> nodes);

  const BlockNode& root() const { return nodes_.front(); }
  // Throws kInvariantViolation for an id outside the tree.
  const BlockNode& node(NodeId id) const;
  std::span<const BlockNode> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool Contains(const BlockNode& node) const;

  const std::string& page_id() const { return page_id_; }
  const SegmentationConfig& config() const { return config_; }

  // Text of the whole subtree in source order.
  std::string FullText(NodeId id) const;

 private:
  void AppendText(NodeId id, std::vector<std::string>* pieces) const;

  std::string page_id_;
  SegmentationConfig config_;
  std::vector<BlockNode> nodes_;
};

class TraversalPath {
 public:
  TraversalPath() = default;
  explicit TraversalPath(std::vector<std::string> tags);

  // Parses "HTML.BODY.P"; throws kParse unless the first element is HTML and
  // no element is empty.
  static TraversalPath Parse(std::string_view dotted);

  std::string ToString() const;
  const std::vector<std::string>& tags() const { return tags_; }
  std::size_t size() const { return tags_.size(); }

  auto operator<=>(const TraversalPath&) const = default;

 private:
  std::vector<std::string> tags_;
};

enum class AtomicKind { kLeaf, kResidual };

struct AtomicBlock {
  NodeId source = kNoNode;
  std::string path;
  std::string text;
  AtomicKind kind = AtomicKind::kLeaf;
  std::size_t doc_order = 0;
  StructuralCounts counts;
};

// Decodes the page (see DecodeToUtf8) and segments it into blocks. The
// element nesting follows HTML tree construction: implied end tags for p,
// li, dd/dt, table parts and headings, scoped end-tag matching, and the
// implicit head/body split. Elements outside the block-tag set are
// transparent. Text of script, style and head elements is dropped; img,
// script and a elements are tallied on the nearest block.
BlockTree BuildBlockTree(std::string_view html_bytes,
                         const SegmentationConfig& config,
                         std::string page_id = {});

// Throws kInvariantViolation when the node does not belong to the tree.
TraversalPath TraversalPathOf(const BlockNode& node, const BlockTree& tree);

// ContentExtractor's partition. For every node, the atomic blocks of its
// children come first and its own residual text last, so the output is not
// in reading order when blocks nest.
std::vector<AtomicBlock> AtomicPartition(const BlockTree& tree);

}  // namespace fastce

#endif  // FASTCE_BLOCK_MODEL_H_
