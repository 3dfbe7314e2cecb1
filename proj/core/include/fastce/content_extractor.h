#ifndef FASTCE_CONTENT_EXTRACTOR_H_
#define FASTCE_CONTENT_EXTRACTOR_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fastce/block_model.h"
#include "fastce/features.h"

namespace fastce {

struct CEConfig {
  SimilarityConfig similarity;
  // A block is non-content when similar blocks occur on more than this
  // fraction of the other pages.
  double frequency_fraction = 0.5;

  void Validate() const;

  bool operator==(const CEConfig&) const = default;
};

struct CorpusPage {
  std::string page_id;
  BlockTree tree;
  std::vector<AtomicBlock> blocks;
  std::vector<FeatureVector> features;
};

// Pages of one site, segmented, partitioned and featurized once on
// insertion.
class TrainingCorpus {
 public:
  TrainingCorpus(std::string site_id, SegmentationConfig segmentation,
                 FeatureConfig features = {});

  // Throws kCrossSiteCorpus when site_id differs from the corpus site.
  void AddPage(std::string_view site_id, std::string page_id,
               std::string_view html_bytes);
  void AddPage(std::string_view site_id, BlockTree tree);

  const std::string& site_id() const { return site_id_; }
  const SegmentationConfig& segmentation() const { return segmentation_; }
  const FeatureConfig& features() const { return features_; }
  const std::vector<CorpusPage>& pages() const { return pages_; }
  std::size_t size() const { return pages_.size(); }

 private:
  std::string site_id_;
  SegmentationConfig segmentation_;
  FeatureConfig features_;
  std::vector<CorpusPage> pages_;
};

enum class BlockLabelKind { kContent, kNonContent };

struct BlockLabel {
  // Index into CorpusPage::blocks.
  std::size_t block = 0;
  BlockLabelKind label = BlockLabelKind::kContent;
  // Number of other pages holding at least one similar block.
  std::size_t support = 0;

  bool is_content() const { return label == BlockLabelKind::kContent; }
};

using PageLabels = std::vector<BlockLabel>;

struct ClassifyOptions {
  // Worker threads over pages; the labels do not depend on it.
  int num_threads = 1;
};

// Work done for one page, for the NumBlockTemp / NumBlock report columns.
struct CEPageCounters {
  // Blocks of the other pages that this page's blocks are compared against.
  std::size_t num_block_temp = 0;
  // Atomic blocks of the page.
  std::size_t num_block = 0;
  // Cosine evaluations performed.
  std::size_t comparisons = 0;
};

// Labels every atomic block of every page. Throws kInsufficientCorpus for
// fewer than two pages. The feature config must match the one the corpus
// was built with.
std::vector<PageLabels> ClassifyBlocks(
    const TrainingCorpus& corpus, const CEConfig& config,
    const ClassifyOptions& options = {},
    std::vector<CEPageCounters>* counters = nullptr);

struct CEExtraction {
  std::vector<AtomicBlock> blocks;
  std::string text;
};

// Content blocks in partition order, texts joined by newlines.
CEExtraction ExtractContentCE(const CorpusPage& page,
                              std::span<const BlockLabel> labels);

struct CEStats {
  double num_block_temp = 0;
  double num_block = 0;
};

// Per-site means of the per-page counters.
CEStats ComputeCEStats(const TrainingCorpus& corpus,
                       std::span<const PageLabels> labels);

}  // namespace fastce

#endif  // FASTCE_CONTENT_EXTRACTOR_H_
