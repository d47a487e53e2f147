#include "io.hpp"

#include <charconv>

namespace pencillab::cli {

std::vector<std::string> split(std::string_view text, char delimiter) {
  std::vector<std::string> out;
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return std::string(s);
  };
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(delimiter, start);
    out.push_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::int64_t parse_int(std::string_view text, std::string_view what) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  require(ec == std::errc() && ptr == end && !text.empty(), ErrorCode::ParseError,
          std::string(what) + ": expected an integer, got '" + std::string(text) + "'");
  return value;
}

std::vector<std::int64_t> parse_int_list(std::string_view text, std::string_view what) {
  std::vector<std::int64_t> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_int(part, what));
  return out;
}

std::pair<std::int64_t, std::int64_t> parse_range(std::string_view text, std::string_view what) {
  const auto pos = text.find("..");
  if (pos == std::string_view::npos) {
    const auto v = parse_int(text, what);
    return {v, v};
  }
  const auto lo = parse_int(text.substr(0, pos), what);
  const auto hi = parse_int(text.substr(pos + 2), what);
  require(lo <= hi, ErrorCode::ParseError, std::string(what) + ": empty range");
  return {lo, hi};
}

std::vector<std::vector<int>> parse_cycles(std::string_view text) {
  std::vector<std::vector<int>> out;
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string_view::npos && text[first] == '[') {
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const Json::exception& e) {
      fail(ErrorCode::ParseError, std::string("tuple: ") + e.what());
    }
    require(doc.is_array(), ErrorCode::ParseError, "tuple must be a JSON array of cycles");
    for (const auto& c : doc) {
      require(c.is_array(), ErrorCode::ParseError, "each cycle must be a JSON array");
      std::vector<int> cycle;
      for (const auto& x : c) {
        require(x.is_number_integer(), ErrorCode::ParseError, "cycle entries must be integers");
        cycle.push_back(x.get<int>());
      }
      out.push_back(std::move(cycle));
    }
    return out;
  }
  for (const auto& c : split(text, ',')) {
    std::vector<int> cycle;
    for (const auto& x : split(c, ' '))
      if (!x.empty()) cycle.push_back(static_cast<int>(parse_int(x, "tuple")));
    out.push_back(std::move(cycle));
  }
  return out;
}

Json tuple_json(const monodromy::MonodromyTuple& t) {
  Json cycles = Json::array();
  for (const auto& s : t.sigmas) {
    const auto cs = s.cycles();
    cycles.push_back(cs.empty() ? Json::array() : Json(cs.front()));
  }
  return cycles;
}

}  // namespace pencillab::cli
