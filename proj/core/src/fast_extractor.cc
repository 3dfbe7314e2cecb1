#include "fastce/fast_extractor.h"

#include <algorithm>
#include <set>
#include <string>

#include "fastce/error.h"
#include "fastce/text.h"

namespace fastce {
namespace {

class Selector {
 public:
  Selector(const BlockTree& tree, const SiteTemplate& site_template,
           const ExtractorConfig& config)
      : tree_(tree), template_(site_template), config_(config) {}

  std::vector<ExtractedBlock> Run() {
    FindCandidates(0);
    return std::move(blocks_);
  }

 private:
  bool InP(NodeId id) const { return template_.HasPath(tree_.node(id).path); }

  bool AnyChildInP(NodeId id) const {
    const auto& children = tree_.node(id).children;
    return std::any_of(children.begin(), children.end(),
                       [this](NodeId c) { return InP(c); });
  }

  void FindCandidates(NodeId id) {
    if (InP(id)) {
      Extract(id);
      return;
    }
    for (NodeId child : tree_.node(id).children) FindCandidates(child);
  }

  void Extract(NodeId id) {
    ExtractedBlock block;
    block.node = id;
    block.path = tree_.node(id).path;
    block.doc_order = tree_.node(id).doc_order();
    std::vector<std::string> pieces;
    Retain(id, /*apply_rules=*/true, &block, &pieces);
    block.included_text = JoinText(pieces);
    if (block.included_text.empty() &&
        !tree_.config().keep_empty_blocks) {
      return;
    }
    blocks_.push_back(std::move(block));
  }

  // Emits the node's text and recurses into the sub-blocks it keeps. With
  // apply_rules false the whole subtree is kept.
  void Retain(NodeId id, bool apply_rules, ExtractedBlock* block,
              std::vector<std::string>* pieces) {
    const BlockNode& node = tree_.node(id);
    block->retained_nodes.push_back(id);
    block->counts += node.counts;
    for (const auto& segment : node.segments) {
      if (!segment.is_child()) {
        pieces->push_back(segment.text);
        continue;
      }
      const NodeId child = segment.child;
      if (!apply_rules) {
        Retain(child, false, block, pieces);
      } else if (InP(child)) {
        // Sub-block on a content path: kept.
        Retain(child, config_.recursive_rules, block, pieces);
      } else if (AnyChildInP(child)) {
        // Off-path sub-block that still holds content-path sub-blocks:
        // the candidate is extracted including it.
        Retain(child, config_.recursive_rules, block, pieces);
      } else {
        // Off-path sub-block with no content-path sub-blocks: pruned.
        block->excluded_subblocks.push_back(child);
      }
    }
  }

  const BlockTree& tree_;
  const SiteTemplate& template_;
  const ExtractorConfig& config_;
  std::vector<ExtractedBlock> blocks_;
};

}  // namespace

std::vector<ExtractedBlock> SelectBlocks(const BlockTree& tree,
                                         const SiteTemplate& site_template,
                                         const ExtractorConfig& config) {
  if (!(tree.config() == site_template.segmentation)) {
    throw Error(ErrorCode::kConfigMismatch,
                "page '" + tree.page_id() +
                    "' was segmented with a configuration that differs from "
                    "template '" + site_template.site_id + "'");
  }
  if (site_template.content_paths.empty()) return {};
  return Selector(tree, site_template, config).Run();
}

FeatureVector Featurize(const ExtractedBlock& block,
                        const FeatureConfig& config) {
  return Featurize(block.included_text, block.counts, config);
}

std::vector<ExtractedBlock> FilterDecoys(std::vector<ExtractedBlock> blocks,
                                         const SiteTemplate& site_template,
                                         const SimilarityConfig& config,
                                         DetectionCounters* counters) {
  DetectionCounters local;
  local.num_block = blocks.size();
  std::set<std::string, std::less<>> touched;
  std::vector<ExtractedBlock> kept;
  kept.reserve(blocks.size());
  for (auto& block : blocks) {
    const auto& decoys = site_template.DecoysAt(block.path);
    if (touched.insert(block.path).second) {
      local.num_block_temp += decoys.size();
    }
    bool is_decoy = false;
    if (!decoys.empty()) {
      const FeatureVector features = Featurize(block, config.features);
      for (const auto& decoy : decoys) {
        ++local.comparisons;
        if (IsSimilar(features, decoy.features, config)) {
          is_decoy = true;
          break;
        }
      }
    }
    if (!is_decoy) kept.push_back(std::move(block));
  }
  if (counters != nullptr) *counters = local;
  return kept;
}

PrimaryContent ExtractText(const BlockTree& tree,
                           const SiteTemplate& site_template,
                           const ExtractorConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  PrimaryContent content;
  content.blocks =
      FilterDecoys(SelectBlocks(tree, site_template, config), site_template,
                   site_template.ce.similarity, &content.counters);
  for (const auto& block : content.blocks) {
    if (!content.text.empty()) content.text += "\n\n";
    content.text += block.included_text;
  }
  content.elapsed = std::chrono::steady_clock::now() - start;
  return content;
}

PrimaryContent ExtractText(std::string_view page_bytes,
                           const SiteTemplate& site_template,
                           const ExtractorConfig& config, std::string page_id) {
  const auto start = std::chrono::steady_clock::now();
  const BlockTree tree = BuildBlockTree(page_bytes, site_template.segmentation,
                                        std::move(page_id));
  PrimaryContent content = ExtractText(tree, site_template, config);
  content.elapsed = std::chrono::steady_clock::now() - start;
  return content;
}

}  // namespace fastce
