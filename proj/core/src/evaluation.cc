#include "fastce/evaluation.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unordered_map>

#include "fastce/corpus.h"
#include "fastce/error.h"

namespace fastce {

double HarmonicMean(double recall, double precision) {
  const double sum = recall + precision;
  return sum > 0 ? 2.0 * recall * precision / sum : 0.0;
}

BlockMetrics BlockF(std::size_t content_extracted, std::size_t total_extracted,
                    std::size_t gold_block_count) {
  if (content_extracted > total_extracted ||
      content_extracted > gold_block_count) {
    throw Error(ErrorCode::kInvariantViolation,
                "content blocks extracted (" +
                    std::to_string(content_extracted) +
                    ") exceed extracted (" + std::to_string(total_extracted) +
                    ") or gold (" + std::to_string(gold_block_count) +
                    ") blocks");
  }
  BlockMetrics m;
  m.recall = gold_block_count == 0
                 ? 0.0
                 : static_cast<double>(content_extracted) / gold_block_count;
  m.precision = total_extracted == 0
                    ? 0.0
                    : static_cast<double>(content_extracted) / total_extracted;
  m.f_measure = HarmonicMean(m.recall, m.precision);
  return m;
}

WordCounts CountWords(std::string_view extracted, std::string_view gold,
                      const TokenizerOptions& options) {
  std::unordered_map<std::string, std::size_t> gold_counts;
  WordCounts counts;
  for (auto& token : Tokenize(gold, options)) {
    ++gold_counts[std::move(token)];
    ++counts.gold;
  }
  for (const auto& token : Tokenize(extracted, options)) {
    ++counts.extracted;
    auto it = gold_counts.find(token);
    if (it != gold_counts.end() && it->second > 0) {
      --it->second;
      ++counts.matched;
    }
  }
  return counts;
}

WordMetrics WordF(const WordCounts& counts) {
  WordMetrics m;
  m.recall = counts.gold == 0
                 ? 0.0
                 : static_cast<double>(counts.matched) / counts.gold;
  m.precision = counts.extracted == 0
                    ? 0.0
                    : static_cast<double>(counts.matched) / counts.extracted;
  m.f_measure = HarmonicMean(m.recall, m.precision);
  return m;
}

WordMetrics WordF(std::string_view extracted, std::string_view gold,
                  const TokenizerOptions& options) {
  const WordCounts counts = CountWords(extracted, gold, options);
  if (counts.gold == 0) {
    throw Error(ErrorCode::kUndefinedRecall,
                "gold text has no words; word recall is undefined");
  }
  return WordF(counts);
}

std::size_t CountContentBlocks(std::span<const std::string> unit_texts,
                               const GoldAnnotation& gold,
                               const TokenizerOptions& options) {
  std::unordered_map<std::string, std::size_t> remaining;
  for (const auto& text : gold.gold_blocks) ++remaining[TokenKey(text, options)];
  std::size_t matched = 0;
  for (const auto& text : unit_texts) {
    auto it = remaining.find(TokenKey(text, options));
    if (it != remaining.end() && it->second > 0) {
      --it->second;
      ++matched;
    }
  }
  return matched;
}

std::vector<std::string> AtomicUnits(const ExtractedBlock& block,
                                     const BlockTree& tree) {
  std::vector<std::string> units;
  for (NodeId id : block.retained_nodes) {
    const auto& text = tree.node(id).direct_text;
    if (!text.empty()) units.push_back(text);
  }
  return units;
}

double ImprovementPct(double per_time_ce, double per_time_fastce) {
  if (per_time_fastce <= 0) return 0.0;
  return 100.0 * per_time_ce / per_time_fastce;
}

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::duration d) {
  return std::chrono::duration<double>(d).count();
}

double Median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid]
                                : 0.5 * (values[mid - 1] + values[mid]);
}

double StdDev(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  double sum = 0;
  for (double v : values) sum += (v - mean) * (v - mean);
  return std::sqrt(sum / static_cast<double>(values.size() - 1));
}

struct CERun {
  TrainingCorpus corpus;
  std::vector<PageLabels> labels;
  std::vector<CEPageCounters> counters;
  std::vector<CEExtraction> extractions;
};

CERun RunCE(const SiteCorpus& site, const std::vector<const SitePage*>& pages,
            const SegmentationConfig& segmentation, const CEConfig& config,
            int threads) {
  CERun run{MakeTrainingCorpus(site, pages, segmentation,
                               config.similarity.features),
            {}, {}, {}};
  ClassifyOptions options;
  options.num_threads = threads;
  run.labels = ClassifyBlocks(run.corpus, config, options, &run.counters);
  run.extractions.reserve(pages.size());
  for (size_t i = 0; i < run.corpus.size(); ++i) {
    run.extractions.push_back(
        ExtractContentCE(run.corpus.pages()[i], run.labels[i]));
  }
  return run;
}

std::vector<PrimaryContent> RunFast(const std::vector<const SitePage*>& pages,
                                    const SiteTemplate& site_template,
                                    const ExtractorConfig& config) {
  std::vector<PrimaryContent> out;
  out.reserve(pages.size());
  for (const SitePage* page : pages) {
    out.push_back(ExtractText(page->bytes, site_template, config, page->page_id));
  }
  return out;
}

template <typename T>
double Mean(const std::vector<PageBenchCounters>& pages,
            T PageBenchCounters::*field) {
  if (pages.empty()) return 0.0;
  double sum = 0;
  for (const auto& page : pages) sum += static_cast<double>(page.*field);
  return sum / static_cast<double>(pages.size());
}

std::string Fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

template <typename Metrics>
std::string OptionalF(const std::optional<Metrics>& m, int digits) {
  return m ? Fixed(m->f_measure, digits) : std::string();
}

}  // namespace

SiteReport Bench(const SiteCorpus& corpus, const SiteTemplate& site_template,
                 const CEConfig& ce_config, const BenchOptions& options) {
  ce_config.Validate();
  if (corpus.pages.size() < 2) {
    throw Error(ErrorCode::kInsufficientCorpus,
                "bench needs at least 2 pages in site '" + corpus.site_id + "'");
  }
  if (!(site_template.ce.similarity.features == ce_config.similarity.features)) {
    throw Error(ErrorCode::kConfigMismatch,
                "template and CE configuration use different features");
  }
  std::vector<const SitePage*> pages;
  for (const auto& page : corpus.pages) pages.push_back(&page);
  const double n = static_cast<double>(pages.size());
  const SegmentationConfig& segmentation = site_template.segmentation;

  std::vector<double> ce_times;
  std::vector<double> fast_times;
  std::optional<CERun> ce_run;
  std::vector<PrimaryContent> fast_run;
  const int runs = std::max(options.warmup_runs, 0) + std::max(options.timed_runs, 1);
  for (int r = 0; r < runs; ++r) {
    const bool timed = r >= std::max(options.warmup_runs, 0);
    auto start = Clock::now();
    ce_run.emplace(
        RunCE(corpus, pages, segmentation, ce_config, options.ce_threads));
    const double ce_seconds = Seconds(Clock::now() - start);

    start = Clock::now();
    fast_run = RunFast(pages, site_template, options.extractor);
    const double fast_seconds = Seconds(Clock::now() - start);
    if (timed) {
      ce_times.push_back(ce_seconds / n);
      fast_times.push_back(fast_seconds / n);
    }
  }

  SiteReport report;
  report.site_id = corpus.site_id;
  report.pages = pages.size();
  for (size_t i = 0; i < pages.size(); ++i) {
    PageBenchCounters c;
    c.page_id = pages[i]->page_id;
    c.ce_num_block_temp = ce_run->counters[i].num_block_temp;
    c.ce_num_block = ce_run->counters[i].num_block;
    c.ce_comparisons = ce_run->counters[i].comparisons;
    c.fast_num_block_temp = fast_run[i].counters.num_block_temp;
    c.fast_num_block = fast_run[i].counters.num_block;
    c.fast_comparisons = fast_run[i].counters.comparisons;
    c.atomic_blocks = ce_run->corpus.pages()[i].blocks.size();
    report.page_counters.push_back(std::move(c));
  }
  const auto& counters = report.page_counters;
  report.ce = {Mean(counters, &PageBenchCounters::ce_num_block_temp),
               Mean(counters, &PageBenchCounters::ce_num_block),
               Median(ce_times), StdDev(ce_times)};
  report.fastce = {Mean(counters, &PageBenchCounters::fast_num_block_temp),
                   Mean(counters, &PageBenchCounters::fast_num_block),
                   Median(fast_times), StdDev(fast_times)};
  report.improvement_pct =
      ImprovementPct(report.ce.per_time, report.fastce.per_time);

  // Accuracy on held-out pages.
  const bool has_test = std::any_of(pages.begin(), pages.end(), [](auto* p) {
    return p->role == PageRole::kTest;
  });
  const TokenizerOptions& tokenizer = ce_config.similarity.features.tokenizer;
  WordCounts word_ce, word_fast, agreement;
  size_t block_gold = 0, ce_content = 0, ce_total = 0;
  size_t fast_content = 0, fast_total = 0;
  bool any_word_gold = false;
  bool all_block_gold = true;
  for (size_t i = 0; i < pages.size(); ++i) {
    const SitePage& page = *pages[i];
    if (has_test && page.role != PageRole::kTest) continue;
    ++report.evaluated_pages;
    const BlockTree tree =
        BuildBlockTree(page.bytes, segmentation, page.page_id);
    const PrimaryContent fast =
        ExtractText(tree, site_template, options.extractor);
    const CEExtraction& ce = ce_run->extractions[i];
    agreement += CountWords(fast.text, ce.text, tokenizer);
    if (!page.gold) {
      all_block_gold = false;
      continue;
    }
    any_word_gold = true;
    word_ce += CountWords(ce.text, page.gold->gold_text, tokenizer);
    word_fast += CountWords(fast.text, page.gold->gold_text, tokenizer);
    if (!page.gold->has_block_gold()) {
      all_block_gold = false;
      continue;
    }
    block_gold += page.gold->gold_block_count();
    std::vector<std::string> ce_units;
    for (const auto& block : ce.blocks) ce_units.push_back(block.text);
    ce_content += CountContentBlocks(ce_units, *page.gold, tokenizer);
    ce_total += ce_units.size();
    for (const auto& block : fast.blocks) {
      const auto units = AtomicUnits(block, tree);
      fast_content += CountContentBlocks(units, *page.gold, tokenizer);
      fast_total += units.size();
    }
  }
  report.agreement = WordF(agreement);
  if (any_word_gold) {
    report.word_ce = WordF(word_ce);
    report.word_fastce = WordF(word_fast);
  }
  if (any_word_gold && all_block_gold) {
    report.block_ce = BlockF(ce_content, ce_total, block_gold);
    report.block_fastce = BlockF(fast_content, fast_total, block_gold);
  }
  return report;
}

std::string ReportCsv(std::span<const SiteReport> reports) {
  std::string out =
      "site,nbt_ce,nb_ce,pertime_ce,nbt_fastce,nb_fastce,pertime_fastce,"
      "improvement_pct,b_f_ce,b_f_fastce,w_f_ce,w_f_fastce\n";
  for (const auto& r : reports) {
    out += r.site_id + "," + Fixed(r.ce.num_block_temp, 2) + "," +
           Fixed(r.ce.num_block, 2) + "," + Fixed(r.ce.per_time, 6) + "," +
           Fixed(r.fastce.num_block_temp, 2) + "," +
           Fixed(r.fastce.num_block, 2) + "," + Fixed(r.fastce.per_time, 6) +
           "," + Fixed(r.improvement_pct, 2) + "," + OptionalF(r.block_ce, 4) +
           "," + OptionalF(r.block_fastce, 4) + "," + OptionalF(r.word_ce, 4) +
           "," + OptionalF(r.word_fastce, 4) + "\n";
  }
  return out;
}

std::string ReportTable(std::span<const SiteReport> reports) {
  std::string out;
  char line[256];
  for (const auto& r : reports) {
    std::snprintf(line, sizeof(line),
                  "site %s: %zu pages, %zu evaluated (PerTime in seconds)\n",
                  r.site_id.c_str(), r.pages, r.evaluated_pages);
    out += line;
    std::snprintf(line, sizeof(line), "  %-8s %10s %10s %12s %12s\n", "",
                  "NBT", "NB", "PerTime", "stddev");
    out += line;
    for (const auto& [name, t] :
         {std::pair{"CE", r.ce}, std::pair{"FastCE", r.fastce}}) {
      std::snprintf(line, sizeof(line), "  %-8s %10.2f %10.2f %12.6f %12.6f\n",
                    name, t.num_block_temp, t.num_block, t.per_time,
                    t.per_time_stddev);
      out += line;
    }
    std::snprintf(line, sizeof(line), "  improvement on execution time: %.2f%%\n",
                  r.improvement_pct);
    out += line;
    if (r.block_ce && r.block_fastce) {
      std::snprintf(line, sizeof(line),
                    "  B_F_measure  CE %.4f  FastCE %.4f\n",
                    r.block_ce->f_measure, r.block_fastce->f_measure);
      out += line;
    }
    if (r.word_ce && r.word_fastce) {
      std::snprintf(line, sizeof(line),
                    "  W_F_measure  CE %.4f  FastCE %.4f\n",
                    r.word_ce->f_measure, r.word_fastce->f_measure);
      out += line;
    }
    if (r.agreement) {
      std::snprintf(line, sizeof(line),
                    "  FastCE vs CE word agreement (F) %.4f\n",
                    r.agreement->f_measure);
      out += line;
    }
  }
  return out;
}

}  // namespace fastce
