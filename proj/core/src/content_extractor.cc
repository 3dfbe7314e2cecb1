#include "fastce/content_extractor.h"

#include <algorithm>
#include <cmath>
#include <thread>

#include "fastce/error.h"

namespace fastce {

void CEConfig::Validate() const {
  similarity.Validate();
  if (!(frequency_fraction > 0.0 && frequency_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "frequency_fraction must lie in (0, 1]");
  }
}

TrainingCorpus::TrainingCorpus(std::string site_id,
                               SegmentationConfig segmentation,
                               FeatureConfig features)
    : site_id_(std::move(site_id)),
      segmentation_(std::move(segmentation)),
      features_(features) {}

void TrainingCorpus::AddPage(std::string_view site_id, std::string page_id,
                             std::string_view html_bytes) {
  if (site_id != site_id_) {
    throw Error(ErrorCode::kCrossSiteCorpus,
                "page '" + page_id + "' belongs to site '" +
                    std::string(site_id) + "', corpus is '" + site_id_ + "'");
  }
  AddPage(site_id, BuildBlockTree(html_bytes, segmentation_, page_id));
}

void TrainingCorpus::AddPage(std::string_view site_id, BlockTree tree) {
  if (site_id != site_id_) {
    throw Error(ErrorCode::kCrossSiteCorpus,
                "page '" + tree.page_id() + "' belongs to site '" +
                    std::string(site_id) + "', corpus is '" + site_id_ + "'");
  }
  if (!(tree.config() == segmentation_)) {
    throw Error(ErrorCode::kConfigMismatch,
                "page '" + tree.page_id() +
                    "' was segmented with a different configuration");
  }
  std::vector<AtomicBlock> blocks = AtomicPartition(tree);
  std::vector<FeatureVector> features;
  features.reserve(blocks.size());
  for (const auto& block : blocks) features.push_back(Featurize(block, features_));
  std::string page_id = tree.page_id();
  pages_.push_back(CorpusPage{std::move(page_id), std::move(tree),
                              std::move(blocks), std::move(features)});
}

namespace {

void ClassifyPage(const TrainingCorpus& corpus, const CEConfig& config,
                  size_t p, PageLabels* labels, CEPageCounters* counters) {
  const auto& pages = corpus.pages();
  const auto& page = pages[p];
  const size_t others = pages.size() - 1;
  const double limit = config.frequency_fraction * static_cast<double>(others);

  labels->clear();
  labels->reserve(page.blocks.size());
  counters->num_block = page.blocks.size();
  counters->num_block_temp = 0;
  counters->comparisons = 0;
  for (size_t q = 0; q < pages.size(); ++q) {
    if (q != p) counters->num_block_temp += pages[q].blocks.size();
  }

  for (size_t b = 0; b < page.blocks.size(); ++b) {
    const FeatureVector& target = page.features[b];
    size_t support = 0;
    for (size_t q = 0; q < pages.size(); ++q) {
      if (q == p) continue;
      for (const auto& other : pages[q].features) {
        ++counters->comparisons;
        if (IsSimilar(target, other, config.similarity)) {
          ++support;
          break;
        }
      }
    }
    BlockLabel label;
    label.block = b;
    label.support = support;
    label.label = static_cast<double>(support) > limit
                      ? BlockLabelKind::kNonContent
                      : BlockLabelKind::kContent;
    labels->push_back(label);
  }
}

}  // namespace

std::vector<PageLabels> ClassifyBlocks(const TrainingCorpus& corpus,
                                       const CEConfig& config,
                                       const ClassifyOptions& options,
                                       std::vector<CEPageCounters>* counters) {
  config.Validate();
  if (corpus.size() < 2) {
    throw Error(ErrorCode::kInsufficientCorpus,
                "content extraction needs at least 2 pages, corpus '" +
                    corpus.site_id() + "' has " +
                    std::to_string(corpus.size()));
  }
  if (!(config.similarity.features == corpus.features())) {
    throw Error(ErrorCode::kConfigMismatch,
                "feature configuration differs from the corpus's");
  }
  const size_t n = corpus.size();
  std::vector<PageLabels> labels(n);
  std::vector<CEPageCounters> page_counters(n);

  const size_t workers = std::clamp<size_t>(
      static_cast<size_t>(std::max(options.num_threads, 1)), 1, n);
  if (workers == 1) {
    for (size_t p = 0; p < n; ++p) {
      ClassifyPage(corpus, config, p, &labels[p], &page_counters[p]);
    }
  } else {
    // Each worker owns a strided subset of pages and writes only its slots.
    std::vector<std::jthread> threads;
    for (size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        for (size_t p = w; p < n; p += workers) {
          ClassifyPage(corpus, config, p, &labels[p], &page_counters[p]);
        }
      });
    }
  }
  if (counters != nullptr) *counters = std::move(page_counters);
  return labels;
}

CEExtraction ExtractContentCE(const CorpusPage& page,
                              std::span<const BlockLabel> labels) {
  CEExtraction out;
  for (const auto& label : labels) {
    if (label.block >= page.blocks.size()) {
      throw Error(ErrorCode::kInvariantViolation,
                  "label refers to block " + std::to_string(label.block) +
                      " of page '" + page.page_id + "'");
    }
    if (!label.is_content()) continue;
    const auto& block = page.blocks[label.block];
    if (!out.text.empty()) out.text.push_back('\n');
    out.text += block.text;
    out.blocks.push_back(block);
  }
  return out;
}

CEStats ComputeCEStats(const TrainingCorpus& corpus,
                       std::span<const PageLabels> labels) {
  CEStats stats;
  const size_t n = corpus.size();
  if (n == 0) return stats;
  if (labels.size() != n) {
    throw Error(ErrorCode::kInvariantViolation,
                "labels do not cover every corpus page");
  }
  size_t total_blocks = 0;
  for (const auto& page : corpus.pages()) total_blocks += page.blocks.size();
  double temp = 0;
  for (const auto& page : corpus.pages()) {
    temp += static_cast<double>(total_blocks - page.blocks.size());
  }
  stats.num_block_temp = temp / static_cast<double>(n);
  stats.num_block =
      static_cast<double>(total_blocks) / static_cast<double>(n);
  return stats;
}

}  // namespace fastce
