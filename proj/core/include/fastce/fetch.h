#ifndef FASTCE_FETCH_H_
#define FASTCE_FETCH_H_

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "fastce/corpus.h"

namespace fastce {

struct FetchOptions {
  std::string site_id;
  int max_in_flight = 4;
  std::chrono::milliseconds timeout{10000};
  // Every n-th saved page gets role test; 0 keeps all pages as train.
  int test_every = 0;
};

// Downloads each distinct URL once into dest/pages and writes
// dest/manifest.json. file:// URLs are copied from disk and recorded without
// a fetch timestamp. Per-URL failures (transport errors, non-2xx status) are
// recorded in the manifest; throws kEmptyCorpus when nothing was saved.
CorpusManifest FetchPages(const std::vector<std::string>& urls,
                          const std::filesystem::path& dest,
                          const FetchOptions& options);

}  // namespace fastce

#endif  // FASTCE_FETCH_H_
