// Command-line front end: segmentation, training, extraction, evaluation,
// benchmarking, synthetic corpora and fetching.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fastce/block_model.h"
#include "fastce/config.h"
#include "fastce/content_extractor.h"
#include "fastce/corpus.h"
#include "fastce/error.h"
#include "fastce/evaluation.h"
#include "fastce/fast_extractor.h"
#include "fastce/fetch.h"
#include "fastce/site_template.h"
#include "fastce/synthetic_site.h"

namespace fs = std::filesystem;

namespace fastce {
namespace {

struct GlobalOptions {
  std::string config_path;
  std::optional<double> threshold;
  std::optional<double> frequency_fraction;
  bool non_recursive = false;
  bool keep_empty = false;
};

// The stage reported in diagnostics.
std::string g_stage = "startup";

void Stage(std::string stage) { g_stage = std::move(stage); }

AppConfig ResolveConfig(const GlobalOptions& options) {
  Stage("load config");
  AppConfig config;
  std::string path = options.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnvVar)) path = env;
  }
  if (!path.empty()) config = LoadConfig(path);
  if (options.threshold) config.ce.similarity.threshold = *options.threshold;
  if (options.frequency_fraction) {
    config.ce.frequency_fraction = *options.frequency_fraction;
  }
  if (options.non_recursive) config.extractor.recursive_rules = false;
  if (options.keep_empty) config.segmentation.keep_empty_blocks = true;
  config.ce.Validate();
  return config;
}

std::string Quote(std::string_view text, size_t limit = 80) {
  std::string out(text.substr(0, limit));
  if (text.size() > limit) out += "...";
  return "\"" + out + "\"";
}

int RunSegment(const GlobalOptions& global, const std::string& page) {
  const AppConfig config = ResolveConfig(global);
  Stage("read page");
  const std::string bytes = ReadFileBytes(page);
  Stage("segment");
  const BlockTree tree = BuildBlockTree(bytes, config.segmentation, page);
  std::cout << "block tree (" << tree.size() << " nodes)\n";
  for (const BlockNode& node : tree.nodes()) {
    std::cout << std::string(2 * node.depth, ' ') << "[" << node.id << "] "
              << node.path;
    if (!node.direct_text.empty()) std::cout << " " << Quote(node.direct_text);
    std::cout << "\n";
  }
  const std::vector<AtomicBlock> blocks = AtomicPartition(tree);
  std::cout << "atomic blocks (" << blocks.size() << ")\n";
  for (size_t i = 0; i < blocks.size(); ++i) {
    const AtomicBlock& b = blocks[i];
    std::cout << "  " << i << " " << b.path << " "
              << (b.kind == AtomicKind::kLeaf ? "leaf" : "residual") << " "
              << Quote(b.text) << "\n";
  }
  return 0;
}

std::vector<const SitePage*> TrainingPages(const SiteCorpus& corpus) {
  std::vector<const SitePage*> pages = corpus.PagesWithRole(PageRole::kTrain);
  if (pages.empty()) {
    for (const auto& page : corpus.pages) pages.push_back(&page);
  }
  return pages;
}

SiteTemplate Train(const SiteCorpus& corpus, const AppConfig& config,
                   int threads) {
  Stage("segment corpus");
  const TrainingCorpus training =
      MakeTrainingCorpus(corpus, TrainingPages(corpus), config.segmentation,
                         config.ce.similarity.features);
  Stage("build template");
  ClassifyOptions options;
  options.num_threads = threads;
  return BuildTemplate(training, config.ce, options);
}

int RunTrain(const GlobalOptions& global, const std::string& corpus_dir,
             const std::string& output, int threads) {
  const AppConfig config = ResolveConfig(global);
  Stage("load corpus");
  const SiteCorpus corpus = LoadSiteCorpus(corpus_dir);
  const SiteTemplate site_template = Train(corpus, config, threads);
  Stage("save template");
  SaveTemplate(site_template, output);
  std::cerr << "template for " << site_template.site_id << ": "
            << site_template.content_paths.size() << " content paths, "
            << site_template.DecoyCount() << " decoys, built from "
            << site_template.built_from << " pages\n";
  return 0;
}

int RunExtract(const GlobalOptions& global, const std::string& page,
               const std::string& template_path) {
  AppConfig config = ResolveConfig(global);
  Stage("load template");
  const SiteTemplate site_template = LoadTemplate(template_path);
  Stage("read page");
  const std::string bytes = ReadFileBytes(page);
  Stage("extract");
  const PrimaryContent content =
      ExtractText(bytes, site_template, config.extractor, page);
  std::cout << content.text << "\n";
  return 0;
}

int RunExtractCE(const GlobalOptions& global, const std::string& corpus_dir,
                 const std::string& page) {
  const AppConfig config = ResolveConfig(global);
  Stage("load corpus");
  const SiteCorpus corpus = LoadSiteCorpus(corpus_dir);
  TrainingCorpus training(corpus.site_id, config.segmentation,
                          config.ce.similarity.features);
  Stage("segment corpus");
  // The page may be given relative to the corpus or as any file path.
  const SitePage* listed = corpus.FindPage(page);
  if (listed == nullptr && fs::exists(page)) {
    const fs::path rel = fs::relative(page, corpus_dir);
    listed = corpus.FindPage(rel.generic_string());
  }
  size_t index = 0;
  for (const auto& p : corpus.pages) {
    if (&p == listed) index = training.size();
    training.AddPage(corpus.site_id, BuildBlockTree(p.bytes, config.segmentation,
                                                    p.page_id));
  }
  if (listed == nullptr) {
    Stage("read page");
    const std::string bytes = ReadFileBytes(page);
    index = training.size();
    training.AddPage(corpus.site_id,
                     BuildBlockTree(bytes, config.segmentation, page));
  }
  Stage("classify blocks");
  const std::vector<PageLabels> labels = ClassifyBlocks(training, config.ce);
  const CEExtraction out =
      ExtractContentCE(training.pages()[index], labels[index]);
  std::cout << out.text << "\n";
  return 0;
}

BenchOptions MakeBenchOptions(const AppConfig& config, int warmup, int runs,
                              int threads) {
  BenchOptions options;
  options.warmup_runs = warmup;
  options.timed_runs = runs;
  options.ce_threads = threads;
  options.extractor = config.extractor;
  return options;
}

int RunEval(const GlobalOptions& global, const std::string& corpus_dir,
            const std::string& template_path) {
  const AppConfig config = ResolveConfig(global);
  Stage("load corpus");
  const SiteCorpus corpus = LoadSiteCorpus(corpus_dir);
  Stage("load template");
  const SiteTemplate site_template = LoadTemplate(template_path);
  Stage("evaluate");
  const SiteReport report = Bench(corpus, site_template, site_template.ce,
                                  MakeBenchOptions(config, 0, 1, 1));
  std::cout << "site " << report.site_id << ": " << report.evaluated_pages
            << " pages evaluated\n";
  auto line = [](const char* name, const auto& ce, const auto& fast) {
    if (!ce || !fast) return;
    std::printf("%-12s %-7s R %.4f  P %.4f  F %.4f\n", name, "CE", ce->recall,
                ce->precision, ce->f_measure);
    std::printf("%-12s %-7s R %.4f  P %.4f  F %.4f\n", name, "FastCE",
                fast->recall, fast->precision, fast->f_measure);
  };
  std::cout.flush();
  line("block", report.block_ce, report.block_fastce);
  line("word", report.word_ce, report.word_fastce);
  if (!report.word_ce) {
    std::printf("no gold annotations; word agreement with CE F %.4f\n",
                report.agreement->f_measure);
  }
  return 0;
}

int RunBench(const GlobalOptions& global, const std::string& corpus_dir,
             int warmup, int runs, int threads, bool table) {
  const AppConfig config = ResolveConfig(global);
  Stage("discover sites");
  std::vector<SiteReport> reports;
  for (const fs::path& dir : DiscoverSites(corpus_dir)) {
    Stage("load corpus " + dir.string());
    const SiteCorpus corpus = LoadSiteCorpus(dir);
    const SiteTemplate site_template = Train(corpus, config, 1);
    Stage("bench " + corpus.site_id);
    reports.push_back(Bench(corpus, site_template, config.ce,
                            MakeBenchOptions(config, warmup, runs, threads)));
  }
  std::cout << ReportCsv(reports);
  if (table) std::cerr << ReportTable(reports);
  return 0;
}

int RunGen(const std::string& spec_file, const std::string& output) {
  Stage("read spec");
  std::vector<SyntheticSiteSpec> specs;
  if (spec_file.empty()) {
    specs.push_back(SyntheticSiteSpec{});
  } else {
    specs = ParseSiteSpecs(ReadFileBytes(spec_file));
  }
  Stage("generate");
  // One spec goes straight into the output directory; several get one
  // subdirectory each.
  for (const auto& spec : specs) {
    const fs::path dest =
        specs.size() == 1 ? fs::path(output) : fs::path(output) / spec.site_id;
    const CorpusManifest m = GenerateSite(spec, dest);
    std::cerr << "wrote " << m.pages.size() << " pages of " << spec.site_id
              << " to " << dest.string() << "\n";
  }
  return 0;
}

int RunFetch(std::vector<std::string> urls, const std::string& url_file,
             const std::string& output, const std::string& site_id,
             int max_in_flight, int timeout_ms, int test_every) {
  Stage("read url list");
  if (!url_file.empty()) {
    std::istringstream in(ReadFileBytes(url_file));
    for (std::string line; std::getline(in, line);) {
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
        line.pop_back();
      }
      if (!line.empty() && line[0] != '#') urls.push_back(line);
    }
  }
  FetchOptions options;
  options.site_id = site_id;
  options.max_in_flight = max_in_flight;
  options.timeout = std::chrono::milliseconds(timeout_ms);
  options.test_every = test_every;
  Stage("fetch");
  const CorpusManifest m = FetchPages(urls, output, options);
  std::cerr << "saved " << m.pages.size() << " pages, " << m.failures.size()
            << " failures\n";
  for (const auto& f : m.failures) {
    std::cerr << "  " << f.url << ": " << f.reason << "\n";
  }
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Template-based primary content extraction for web pages"};
  app.require_subcommand(1);
  GlobalOptions global;
  app.add_option("--config", global.config_path,
                 std::string("JSON config file (default: $") + kConfigEnvVar +
                     ")");
  app.add_option("--threshold", global.threshold,
                 "cosine similarity threshold")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--frequency-fraction", global.frequency_fraction,
                 "fraction of other pages above which a block is boilerplate");
  app.add_flag("--non-recursive", global.non_recursive,
               "apply the extraction rules to direct sub-blocks only");
  app.add_flag("--keep-empty", global.keep_empty,
               "keep blocks without text");

  std::string page, corpus_dir, output, template_path, spec_file, url_file;
  std::string site_id = "fetched";
  std::vector<std::string> urls;
  int threads = 1, warmup = 1, runs = 3;
  int max_in_flight = 4, timeout_ms = 10000, test_every = 0;
  bool table = false;

  auto* segment = app.add_subcommand("segment", "print the block tree");
  segment->add_option("page", page, "HTML file")->required();

  auto* train = app.add_subcommand("train", "build a site template");
  train->add_option("corpus-dir", corpus_dir)->required();
  train->add_option("-o,--output", output, "template file")->required();
  train->add_option("--threads", threads, "CE worker threads")
      ->check(CLI::PositiveNumber);

  auto* extract = app.add_subcommand("extract", "extract primary content");
  extract->add_option("page", page, "HTML file")->required();
  extract->add_option("--template", template_path, "template file")
      ->required();

  auto* extract_ce = app.add_subcommand(
      "extract-ce", "extract one page with the ContentExtractor baseline");
  extract_ce->add_option("corpus-dir", corpus_dir)->required();
  extract_ce->add_option("page", page)->required();

  auto* eval = app.add_subcommand("eval", "block and word metrics vs gold");
  eval->add_option("corpus-dir", corpus_dir)->required();
  eval->add_option("--template", template_path, "template file")->required();

  auto* bench = app.add_subcommand("bench", "compare CE and FastCE (CSV)");
  bench->add_option("corpus-dir", corpus_dir, "site or directory of sites")
      ->required();
  bench->add_option("--warmup", warmup)->check(CLI::NonNegativeNumber);
  bench->add_option("--runs", runs)->check(CLI::PositiveNumber);
  bench->add_option("--threads", threads, "CE worker threads")
      ->check(CLI::PositiveNumber);
  bench->add_flag("--table", table, "also print a summary table to stderr");

  auto* gen = app.add_subcommand("gen", "generate a synthetic site");
  gen->add_option("spec-file", spec_file, "JSON site spec (default spec if omitted)");
  gen->add_option("-o,--output", output, "destination directory")->required();

  auto* fetch = app.add_subcommand("fetch", "download pages into a corpus");
  fetch->add_option("urls", urls, "URLs (http(s):// or file://)");
  fetch->add_option("--url-file", url_file, "file with one URL per line");
  fetch->add_option("-o,--output", output, "corpus directory")->required();
  fetch->add_option("--site-id", site_id);
  fetch->add_option("--max-in-flight", max_in_flight)
      ->check(CLI::PositiveNumber);
  fetch->add_option("--timeout-ms", timeout_ms)->check(CLI::PositiveNumber);
  fetch->add_option("--test-every", test_every,
                    "mark every n-th page as a test page")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*segment) return RunSegment(global, page);
    if (*train) return RunTrain(global, corpus_dir, output, threads);
    if (*extract) return RunExtract(global, page, template_path);
    if (*extract_ce) return RunExtractCE(global, corpus_dir, page);
    if (*eval) return RunEval(global, corpus_dir, template_path);
    if (*bench) return RunBench(global, corpus_dir, warmup, runs, threads, table);
    if (*gen) return RunGen(spec_file, output);
    if (*fetch) {
      return RunFetch(urls, url_file, output, site_id, max_in_flight,
                      timeout_ms, test_every);
    }
  } catch (const Error& e) {
    std::cerr << "fastce: " << g_stage << " failed [" << ErrorCodeName(e.code())
              << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "fastce: " << g_stage << " failed: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace
}  // namespace fastce

int main(int argc, char** argv) { return fastce::Main(argc, argv); }
