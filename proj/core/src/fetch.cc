#include "fastce/fetch.h"

#include <curl/curl.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <ctime>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

#include "fastce/error.h"

namespace fastce {
namespace {

struct FetchResult {
  std::optional<std::string> body;
  std::string error;
  std::string fetched_at;
};

std::string UtcNow() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

size_t WriteBody(char* data, size_t size, size_t count, void* user) {
  static_cast<std::string*>(user)->append(data, size * count);
  return size * count;
}

std::string FilePathFromUrl(const std::string& url) {
  std::string path = url.substr(7);
  if (path.starts_with("localhost/")) path = path.substr(9);
  return path;
}

FetchResult FetchOne(const std::string& url, const FetchOptions& options) {
  FetchResult result;
  if (url.starts_with("file://")) {
    try {
      result.body = ReadFileBytes(FilePathFromUrl(url));
    } catch (const Error& e) {
      result.error = e.what();
    }
    return result;
  }
  CURL* curl = curl_easy_init();
  if (curl == nullptr) {
    result.error = "curl initialization failed";
    return result;
  }
  std::string body;
  curl_easy_setopt(curl, CURLOPT_URL, url.c_str());
  curl_easy_setopt(curl, CURLOPT_FOLLOWLOCATION, 1L);
  curl_easy_setopt(curl, CURLOPT_MAXREDIRS, 5L);
  curl_easy_setopt(curl, CURLOPT_NOSIGNAL, 1L);
  curl_easy_setopt(curl, CURLOPT_TIMEOUT_MS,
                   static_cast<long>(options.timeout.count()));
  curl_easy_setopt(curl, CURLOPT_WRITEFUNCTION, WriteBody);
  curl_easy_setopt(curl, CURLOPT_WRITEDATA, &body);
  curl_easy_setopt(curl, CURLOPT_USERAGENT, "fastce-fetch/1.0");
  const CURLcode code = curl_easy_perform(curl);
  long status = 0;
  curl_easy_getinfo(curl, CURLINFO_RESPONSE_CODE, &status);
  curl_easy_cleanup(curl);
  if (code != CURLE_OK) {
    result.error = curl_easy_strerror(code);
  } else if (status < 200 || status >= 300) {
    result.error = "HTTP status " + std::to_string(status);
  } else {
    result.body = std::move(body);
    result.fetched_at = UtcNow();
  }
  return result;
}

}  // namespace

CorpusManifest FetchPages(const std::vector<std::string>& urls,
                          const std::filesystem::path& dest,
                          const FetchOptions& options) {
  static std::once_flag curl_init;
  std::call_once(curl_init, [] { curl_global_init(CURL_GLOBAL_DEFAULT); });

  std::vector<std::string> unique;
  std::set<std::string> seen;
  for (const auto& url : urls) {
    if (!url.empty() && seen.insert(url).second) unique.push_back(url);
  }

  std::vector<FetchResult> results(unique.size());
  std::atomic<size_t> next{0};
  {
    const size_t workers = std::clamp<size_t>(
        static_cast<size_t>(std::max(options.max_in_flight, 1)), 1,
        std::max<size_t>(unique.size(), 1));
    std::vector<std::jthread> threads;
    for (size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&] {
        for (size_t i = next++; i < unique.size(); i = next++) {
          results[i] = FetchOne(unique[i], options);
        }
      });
    }
  }

  CorpusManifest manifest;
  manifest.site_id = options.site_id;
  manifest.encoding_notes = "bodies saved verbatim; decoded at segmentation";
  int saved = 0;
  for (size_t i = 0; i < unique.size(); ++i) {
    if (!results[i].body) {
      manifest.failures.push_back({unique[i], results[i].error});
      continue;
    }
    char name[32];
    std::snprintf(name, sizeof(name), "pages/page-%04d.html", saved + 1);
    WriteFileBytes(dest / name, *results[i].body);
    ManifestEntry entry;
    entry.path = name;
    entry.source_url = unique[i];
    entry.fetched_at = results[i].fetched_at;
    ++saved;
    entry.role = options.test_every > 0 && saved % options.test_every == 0
                     ? PageRole::kTest
                     : PageRole::kTrain;
    manifest.pages.push_back(std::move(entry));
  }
  if (manifest.pages.empty()) {
    throw Error(ErrorCode::kEmptyCorpus,
                "none of the " + std::to_string(unique.size()) +
                    " URLs could be fetched");
  }
  WriteManifest(manifest, dest);
  return manifest;
}

}  // namespace fastce
