#ifndef FASTCE_FAST_EXTRACTOR_H_
#define FASTCE_FAST_EXTRACTOR_H_

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fastce/block_model.h"
#include "fastce/features.h"
#include "fastce/site_template.h"

namespace fastce {

struct ExtractorConfig {
  // Apply the selection rules again inside every retained sub-block. When
  // false, the rules only look at the direct sub-blocks of a candidate and a
  // retained sub-block is kept whole.
  bool recursive_rules = true;

  bool operator==(const ExtractorConfig&) const = default;
};

struct ExtractedBlock {
  NodeId node = kNoNode;
  std::string path;
  // Text of the retained part of the subtree in source order.
  std::string included_text;
  // Roots of the pruned subtrees.
  std::vector<NodeId> excluded_subblocks;
  // Every node of the subtree whose own text is part of included_text,
  // in document order (the candidate first).
  std::vector<NodeId> retained_nodes;
  std::size_t doc_order = 0;
  // Image/script/hyperlink tallies over the retained nodes.
  StructuralCounts counts;
};

struct DetectionCounters {
  // Candidate blocks produced by path matching (NumBlock for the fast path).
  std::size_t num_block = 0;
  // Template decoys at the paths of this page's candidates (NumBlockTemp).
  std::size_t num_block_temp = 0;
  // Cosine evaluations against decoys.
  std::size_t comparisons = 0;
};

// Selects the maximal blocks whose path is in the template and prunes their
// sub-blocks by the path rules. Blocks with no text are skipped unless the
// segmentation keeps empty blocks. Throws kConfigMismatch when the tree was
// segmented with a configuration other than the template's.
std::vector<ExtractedBlock> SelectBlocks(const BlockTree& tree,
                                         const SiteTemplate& site_template,
                                         const ExtractorConfig& config = {});

// Drops every block similar to a decoy stored at its path.
std::vector<ExtractedBlock> FilterDecoys(std::vector<ExtractedBlock> blocks,
                                         const SiteTemplate& site_template,
                                         const SimilarityConfig& config,
                                         DetectionCounters* counters = nullptr);

FeatureVector Featurize(const ExtractedBlock& block,
                        const FeatureConfig& config = {});

struct PrimaryContent {
  std::vector<ExtractedBlock> blocks;
  // Block texts in document order separated by blank lines.
  std::string text;
  // Segmentation, selection and decoy filtering, excluding file I/O.
  std::chrono::nanoseconds elapsed{0};
  DetectionCounters counters;
};

// Detection phase for one page.
PrimaryContent ExtractText(std::string_view page_bytes,
                           const SiteTemplate& site_template,
                           const ExtractorConfig& config = {},
                           std::string page_id = {});

// Same, on an already segmented page; elapsed covers selection and
// filtering only.
PrimaryContent ExtractText(const BlockTree& tree,
                           const SiteTemplate& site_template,
                           const ExtractorConfig& config = {});

}  // namespace fastce

#endif  // FASTCE_FAST_EXTRACTOR_H_
