#pragma once

// Exact scalar fields: the rationals (GMP-backed) and prime fields F_q with a
// runtime modulus. Generic algorithms are templated on a field descriptor
// `F` exposing `Element`, constants, inversion and string conversion.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "pencillab/error.hpp"

namespace pencillab {

using Rational = mpq_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

/// Element of F_q. Carries its modulus so that arithmetic needs no context.
struct Residue {
  std::uint32_t value = 0;
  std::uint32_t modulus = 0;

  friend bool operator==(const Residue&, const Residue&) = default;
};

inline bool is_zero(const Residue& x) { return x.value == 0; }

inline Residue operator+(Residue a, Residue b) {
  std::uint64_t s = std::uint64_t{a.value} + b.value;
  if (s >= a.modulus) s -= a.modulus;
  return {static_cast<std::uint32_t>(s), a.modulus};
}

inline Residue operator-(Residue a, Residue b) {
  std::uint64_t s = std::uint64_t{a.value} + a.modulus - b.value;
  if (s >= a.modulus) s -= a.modulus;
  return {static_cast<std::uint32_t>(s), a.modulus};
}

inline Residue operator-(Residue a) {
  return {a.value == 0 ? 0u : a.modulus - a.value, a.modulus};
}

inline Residue operator*(Residue a, Residue b) {
  return {static_cast<std::uint32_t>(std::uint64_t{a.value} * b.value % a.modulus), a.modulus};
}

std::uint32_t mod_inverse(std::uint32_t value, std::uint32_t modulus);

inline Residue operator/(Residue a, Residue b) {
  return a * Residue{mod_inverse(b.value, b.modulus), b.modulus};
}

inline Residue& operator+=(Residue& a, Residue b) { return a = a + b; }
inline Residue& operator-=(Residue& a, Residue b) { return a = a - b; }
inline Residue& operator*=(Residue& a, Residue b) { return a = a * b; }

bool is_prime(std::uint64_t n);

class Rationals {
 public:
  using Element = Rational;

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(std::int64_t n) const { return Element(static_cast<long>(n)); }
  Element inverse(const Element& x) const {
    require(!is_zero(x), ErrorCode::InvalidArgument, "division by zero");
    return Element(1) / x;
  }
  std::uint32_t characteristic() const { return 0; }
  std::string name() const { return "Q"; }

  std::string to_string(const Element& x) const { return x.get_str(); }
  Element parse(std::string_view text) const;

  friend bool operator==(const Rationals&, const Rationals&) { return true; }
};

class PrimeField {
 public:
  using Element = Residue;

  /// q must be an odd prime below 2^31.
  explicit PrimeField(std::uint32_t q);

  std::uint32_t order() const { return q_; }
  Element zero() const { return {0, q_}; }
  Element one() const { return {1, q_}; }
  Element from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(q_);
    if (r < 0) r += q_;
    return {static_cast<std::uint32_t>(r), q_};
  }
  /// The residue with canonical representative i, 0 <= i < q.
  Element element(std::uint32_t i) const { return {i, q_}; }
  Element inverse(const Element& x) const {
    require(!is_zero(x), ErrorCode::InvalidArgument, "division by zero");
    return {mod_inverse(x.value, q_), q_};
  }
  std::uint32_t characteristic() const { return q_; }
  std::string name() const { return "F_" + std::to_string(q_); }

  std::string to_string(const Element& x) const { return std::to_string(x.value); }
  Element parse(std::string_view text) const;

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.q_ == b.q_; }

 private:
  std::uint32_t q_;
};

/// Reduces a rational into F_q; the denominator must be a unit.
PrimeField::Element reduce(const PrimeField& field, const Rational& x);

}  // namespace pencillab
