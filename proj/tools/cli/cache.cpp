#include "cache.hpp"

#include <openssl/sha.h>

#include <cstdlib>
#include <fstream>
#include <random>

namespace pencillab::cli {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), digest);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned char byte : digest) {
    out += hex[byte >> 4];
    out += hex[byte & 15];
  }
  return out;
}

ResultCache ResultCache::from_environment() {
  if (const char* dir = std::getenv("PENCILLAB_CACHE"); dir && *dir) return ResultCache(dir);
  return ResultCache(".pencillab-cache");
}

std::filesystem::path ResultCache::path_for(const Json& request) const {
  return dir_ / (sha256_hex(request.dump()) + ".json");
}

std::optional<Json> ResultCache::load(const Json& request) const {
  std::ifstream in(path_for(request));
  if (!in) return std::nullopt;
  try {
    const Json entry = Json::parse(in);
    if (entry.value("request", Json()) != request) return std::nullopt;
    return entry.at("result");
  } catch (const Json::exception&) {
    return std::nullopt;
  }
}

void ResultCache::store(const Json& request, const Json& result) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) return;
  const auto target = path_for(request);
  auto tmp = target;
  tmp += ".tmp" + std::to_string(std::random_device{}());
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << Json{{"request", request}, {"result", result}}.dump(2) << '\n';
    if (!out) return;
  }
  std::filesystem::rename(tmp, target, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace pencillab::cli
