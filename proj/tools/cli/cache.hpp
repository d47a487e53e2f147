#pragma once

// Content-addressed store of JSON results: a request document is hashed
// with SHA-256 and its result kept in <dir>/<hex>.json next to the request.

#include <filesystem>
#include <optional>
#include <string>

#include "io.hpp"

namespace pencillab::cli {

std::string sha256_hex(const std::string& data);

class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// $PENCILLAB_CACHE, else ./.pencillab-cache.
  static ResultCache from_environment();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const Json& request) const;

  std::optional<Json> load(const Json& request) const;
  /// Best effort; failures to write are ignored.
  void store(const Json& request, const Json& result) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace pencillab::cli
