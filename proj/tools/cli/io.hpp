#pragma once

// Text and JSON conversions for the command line: exact field elements as
// strings, points as "x0:x1", pencils as "f0,..,fk;g0,..,gk".

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pencillab/field.hpp"
#include "pencillab/geometry.hpp"
#include "pencillab/monodromy.hpp"

namespace pencillab::cli {

using Json = nlohmann::ordered_json;

/// Splits on a delimiter, trimming blanks; empty input gives no parts.
std::vector<std::string> split(std::string_view text, char delimiter);

std::int64_t parse_int(std::string_view text, std::string_view what);
std::vector<std::int64_t> parse_int_list(std::string_view text, std::string_view what);

/// "a" or "a..b", inclusive.
std::pair<std::int64_t, std::int64_t> parse_range(std::string_view text, std::string_view what);

/// [[1,2],[2,3]] or "1 2,2 3".
std::vector<std::vector<int>> parse_cycles(std::string_view text);

Json tuple_json(const monodromy::MonodromyTuple& t);

inline Json field_json(const Rationals&) { return "Q"; }
inline Json field_json(const PrimeField& K) { return Json{{"q", K.order()}}; }

template <class F>
std::vector<typename F::Element> parse_elements(const F& K, std::string_view text) {
  std::vector<typename F::Element> out;
  for (const auto& part : split(text, ',')) out.push_back(K.parse(part));
  require(!out.empty(), ErrorCode::ParseError, "expected a comma-separated list of field elements");
  return out;
}

template <class F>
geometry::ProjPoint<F> parse_point(const F& K, std::string_view text) {
  const auto parts = split(text, ':');
  require(parts.size() == 2, ErrorCode::ParseError, "point must be written x0:x1, got '" + std::string(text) + "'");
  return geometry::ProjPoint<F>(K, K.parse(parts[0]), K.parse(parts[1]));
}

template <class F>
geometry::SymPoint<F> parse_sym_point(const F& K, std::string_view text) {
  const auto parts = split(text, ':');
  require(parts.size() == 3, ErrorCode::ParseError, "point of P^2 must be written u:v:w, got '" + std::string(text) + "'");
  return geometry::SymPoint<F>(K, K.parse(parts[0]), K.parse(parts[1]), K.parse(parts[2]));
}

template <class F>
geometry::Pencil<F> parse_pencil(const F& K, std::string_view text) {
  const auto rows = split(text, ';');
  require(rows.size() == 2, ErrorCode::ParseError, "pencil must be written f0,..,fk;g0,..,gk");
  return geometry::Pencil<F>(geometry::BinaryForm<F>(K, parse_elements(K, rows[0])),
                             geometry::BinaryForm<F>(K, parse_elements(K, rows[1])));
}

template <class F>
std::string element_string(const F& K, const typename F::Element& x) {
  return K.to_string(x);
}

template <class F>
Json elements_json(const F& K, const std::vector<typename F::Element>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(element_string(K, x));
  return out;
}

/// Human-readable sum of monomials, e.g. "x1^2 - 2*x0*x1".
template <class F>
std::string terms_text(const F& K, const std::vector<std::pair<typename F::Element, std::string>>& terms) {
  std::string out;
  for (const auto& [c, mono] : terms) {
    if (is_zero(c)) continue;
    std::string s = K.to_string(c);
    bool negative = !s.empty() && s[0] == '-';
    if (negative) s = s.substr(1);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    if (mono.empty())
      out += s;
    else if (s == "1")
      out += mono;
    else
      out += s + "*" + mono;
  }
  return out.empty() ? "0" : out;
}

inline std::string power_text(const char* var, int e) {
  if (e == 0) return "";
  return e == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(e);
}

inline std::string join_factors(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += "*";
    out += p;
  }
  return out;
}

template <class F>
std::string form_text(const geometry::BinaryForm<F>& f) {
  std::vector<std::pair<typename F::Element, std::string>> terms;
  const int d = f.degree();
  for (int i = 0; i <= d; ++i) terms.emplace_back(f.coeff(i), join_factors({power_text("x0", d - i), power_text("x1", i)}));
  return terms_text(f.field(), terms);
}

template <class F>
std::string curve_text(const geometry::PlaneCurve<F>& c) {
  std::vector<std::pair<typename F::Element, std::string>> terms;
  for (const auto& [a, b, w] : geometry::PlaneCurve<F>::monomials(c.degree()))
    terms.emplace_back(c.coeff(a, b, w), join_factors({power_text("u", a), power_text("v", b), power_text("w", w)}));
  return terms_text(c.field(), terms);
}

template <class F>
Json form_json(const geometry::BinaryForm<F>& f) {
  return Json{{"degree", f.degree()}, {"coeffs", elements_json(f.field(), f.coeffs())}, {"text", form_text(f)}};
}

template <class F>
Json curve_json(const geometry::PlaneCurve<F>& c) {
  return Json{{"degree", c.degree()}, {"coeffs", elements_json(c.field(), c.coeffs())}, {"text", curve_text(c)}};
}

template <class F>
Json pencil_json(const geometry::Pencil<F>& p) {
  return Json{{"f", form_json(p.f())}, {"g", form_json(p.g())}};
}

template <class F>
Json point_json(const geometry::ProjPoint<F>& p) {
  const auto& K = p.field();
  return Json::array({element_string(K, p.x0()), element_string(K, p.x1())});
}

template <class F>
Json sym_point_json(const geometry::SymPoint<F>& p) {
  const auto& K = p.field();
  return Json::array({element_string(K, p.u()), element_string(K, p.v()), element_string(K, p.w())});
}

}  // namespace pencillab::cli
