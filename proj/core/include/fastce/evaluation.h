#ifndef FASTCE_EVALUATION_H_
#define FASTCE_EVALUATION_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fastce/content_extractor.h"
#include "fastce/fast_extractor.h"
#include "fastce/site_template.h"
#include "fastce/text.h"

namespace fastce {

struct SiteCorpus;

struct GoldAnnotation {
  std::string page_id;
  std::string gold_text;
  // Texts of the true content blocks at atomic granularity. Empty for
  // text-only annotations.
  std::vector<std::string> gold_blocks;
  std::vector<std::string> gold_paths;

  bool has_block_gold() const { return !gold_blocks.empty(); }
  std::size_t gold_block_count() const { return gold_blocks.size(); }
};

struct BlockMetrics {
  double recall = 0;
  double precision = 0;
  double f_measure = 0;
};

struct WordMetrics {
  double recall = 0;
  double precision = 0;
  double f_measure = 0;
};

// 2RP/(R+P), or 0 when R+P is 0.
double HarmonicMean(double recall, double precision);

// recall = content/gold, precision = content/total, each 0 on a zero
// denominator. Throws kInvariantViolation when content exceeds either count.
BlockMetrics BlockF(std::size_t content_extracted, std::size_t total_extracted,
                    std::size_t gold_block_count);

struct WordCounts {
  std::size_t matched = 0;
  std::size_t extracted = 0;
  std::size_t gold = 0;

  WordCounts& operator+=(const WordCounts& other) {
    matched += other.matched;
    extracted += other.extracted;
    gold += other.gold;
    return *this;
  }
};

// matched = sum over terms of min(extracted count, gold count).
WordCounts CountWords(std::string_view extracted, std::string_view gold,
                      const TokenizerOptions& options = {});
WordMetrics WordF(const WordCounts& counts);
// Throws kUndefinedRecall when gold has no words.
WordMetrics WordF(std::string_view extracted, std::string_view gold,
                  const TokenizerOptions& options = {});

// Number of unit texts that match a distinct gold block (token sequence
// equality; each gold block is matched at most once).
std::size_t CountContentBlocks(std::span<const std::string> unit_texts,
                               const GoldAnnotation& gold,
                               const TokenizerOptions& options = {});

// Atomic-granularity texts of an extracted block: the own text of every
// retained node that has any.
std::vector<std::string> AtomicUnits(const ExtractedBlock& block,
                                     const BlockTree& tree);

struct TimingStats {
  double num_block_temp = 0;
  double num_block = 0;
  // Seconds per page: median over the timed runs.
  double per_time = 0;
  // Standard deviation of the per-run per_time values.
  double per_time_stddev = 0;
};

// 100 * ce / fast.
double ImprovementPct(double per_time_ce, double per_time_fastce);

struct PageBenchCounters {
  std::string page_id;
  std::size_t ce_num_block_temp = 0;
  std::size_t ce_num_block = 0;
  std::size_t ce_comparisons = 0;
  std::size_t fast_num_block_temp = 0;
  std::size_t fast_num_block = 0;
  std::size_t fast_comparisons = 0;
  std::size_t atomic_blocks = 0;
};

struct SiteReport {
  std::string site_id;
  std::size_t pages = 0;
  std::size_t evaluated_pages = 0;
  TimingStats ce;
  TimingStats fastce;
  double improvement_pct = 0;
  std::optional<BlockMetrics> block_ce;
  std::optional<BlockMetrics> block_fastce;
  std::optional<WordMetrics> word_ce;
  std::optional<WordMetrics> word_fastce;
  // Word agreement of FastCE with CE's output taken as gold.
  std::optional<WordMetrics> agreement;
  std::vector<PageBenchCounters> page_counters;
};

struct BenchOptions {
  int warmup_runs = 1;
  int timed_runs = 3;
  // Threads for CE classification; 1 keeps the comparison fair.
  int ce_threads = 1;
  ExtractorConfig extractor;
};

// Runs CE over all corpus pages and FastCE on the same pages with the given
// template, timing both (decoding, segmentation and comparison; no file
// I/O). Accuracy is measured on pages with role test, or on every page when
// the corpus has none.
SiteReport Bench(const SiteCorpus& corpus, const SiteTemplate& site_template,
                 const CEConfig& ce_config, const BenchOptions& options = {});

// Per-site CSV rows under a fixed header, and a plain-text summary.
std::string ReportCsv(std::span<const SiteReport> reports);
std::string ReportTable(std::span<const SiteReport> reports);

}  // namespace fastce

#endif  // FASTCE_EVALUATION_H_
