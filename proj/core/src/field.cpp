#include "pencillab/field.hpp"

#include <cctype>
#include <string>

namespace pencillab {

std::uint32_t mod_inverse(std::uint32_t value, std::uint32_t modulus) {
  require(value % modulus != 0, ErrorCode::InvalidArgument, "division by zero");
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = modulus, new_r = value % modulus;
  while (new_r != 0) {
    std::int64_t quotient = r / new_r;
    std::int64_t tmp = t - quotient * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quotient * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += modulus;
  return static_cast<std::uint32_t>(t);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

// Accepts [-]digits or [-]digits/digits.
bool well_formed_rational(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  std::size_t digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, ++digits;
  if (digits == 0) return false;
  if (i == text.size()) return true;
  if (text[i] != '/') return false;
  ++i;
  digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, ++digits;
  return digits > 0 && i == text.size();
}

}  // namespace

Rational Rationals::parse(std::string_view text) const {
  require(well_formed_rational(text), ErrorCode::ParseError,
          "not a rational number: '" + std::string(text) + "'");
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    bool zero_den = s.find_first_not_of('0', slash + 1) == std::string::npos;
    require(!zero_den, ErrorCode::ParseError, "zero denominator in '" + s + "'");
  }
  Rational x(s, 10);
  x.canonicalize();
  return x;
}

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
  require(q > 2 && q < (1u << 31) && is_prime(q), ErrorCode::InvalidArgument,
          "field order must be an odd prime below 2^31, got " + std::to_string(q));
}

PrimeField::Element reduce(const PrimeField& field, const Rational& x) {
  mpz_class q(static_cast<unsigned long>(field.order()));
  mpz_class num = x.get_num() % q;
  mpz_class den = x.get_den() % q;
  if (num < 0) num += q;
  require(den != 0, ErrorCode::InvalidArgument,
          "denominator of " + x.get_str() + " vanishes in " + field.name());
  return field.element(static_cast<std::uint32_t>(num.get_ui())) /
         field.element(static_cast<std::uint32_t>(den.get_ui()));
}

PrimeField::Element PrimeField::parse(std::string_view text) const {
  return reduce(*this, Rationals{}.parse(text));
}

}  // namespace pencillab
