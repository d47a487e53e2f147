#pragma once

// Dense univariate polynomials over an exact field, plus the handful of
// algorithms the geometry layer needs: Euclidean gcd, squarefree tests and
// decomposition, root extraction, determinants and interpolation.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pencillab/error.hpp"
#include "pencillab/field.hpp"

namespace pencillab {

template <class F>
class Poly {
 public:
  using E = typename F::Element;

  explicit Poly(F field) : field_(std::move(field)) {}
  Poly(F field, std::vector<E> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) { trim(); }

  static Poly monomial(const F& field, E coeff, int degree) {
    std::vector<E> c(degree + 1, field.zero());
    c[degree] = coeff;
    return Poly(field, std::move(c));
  }
  static Poly constant(const F& field, E value) { return Poly(field, {value}); }

  const F& field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  E coeff(int i) const { return i >= 0 && i <= degree() ? c_[i] : field_.zero(); }
  const std::vector<E>& coeffs() const { return c_; }
  E leading() const { return c_.empty() ? field_.zero() : c_.back(); }

  E eval(const E& t) const {
    E acc = field_.zero();
    for (int i = degree(); i >= 0; --i) acc = acc * t + c_[i];
    return acc;
  }

  Poly derivative() const {
    std::vector<E> d;
    for (int i = 1; i <= degree(); ++i) d.push_back(c_[i] * field_.from_int(i));
    return Poly(field_, std::move(d));
  }

  Poly scaled(const E& s) const {
    std::vector<E> d(c_);
    for (auto& x : d) x = x * s;
    return Poly(field_, std::move(d));
  }

  Poly monic() const { return is_zero() ? *this : scaled(field_.inverse(leading())); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<E> d(std::max(a.c_.size(), b.c_.size()), a.field_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) d[i] = d[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) d[i] = d[i] + b.c_[i];
    return Poly(a.field_, std::move(d));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + b.scaled(-a.field_.one()); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.field_);
    std::vector<E> d(a.c_.size() + b.c_.size() - 1, a.field_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] = d[i + j] + a.c_[i] * b.c_[j];
    return Poly(a.field_, std::move(d));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Euclidean division; b must be nonzero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    require(!b.is_zero(), ErrorCode::InvalidArgument, "polynomial division by zero");
    const F& K = a.field_;
    std::vector<E> r = a.c_;
    const int db = b.degree();
    const E inv_lead = K.inverse(b.leading());
    std::vector<E> q(std::max(0, a.degree() - db + 1), K.zero());
    for (int i = a.degree(); i >= db; --i) {
      if (is_zero_elem(r[i])) continue;
      E factor = r[i] * inv_lead;
      q[i - db] = factor;
      for (int j = 0; j <= db; ++j) r[i - db + j] = r[i - db + j] - factor * b.c_[j];
    }
    return {Poly(K, std::move(q)), Poly(K, std::move(r))};
  }

  /// Exact quotient, or nullopt when b does not divide *this.
  std::optional<Poly> divide_exact(const Poly& b) const {
    auto [q, r] = divmod(*this, b);
    if (!r.is_zero()) return std::nullopt;
    return q;
  }

 private:
  static bool is_zero_elem(const E& x) { return pencillab::is_zero(x); }
  void trim() {
    while (!c_.empty() && is_zero_elem(c_.back())) c_.pop_back();
  }

  F field_;
  std::vector<E> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    auto r = Poly<F>::divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Derivative-based tests are only exact when the characteristic exceeds
/// the degree.
template <class F>
void require_separable_degree(const F& field, int degree, const char* what) {
  const auto p = field.characteristic();
  if (p != 0 && static_cast<std::int64_t>(p) <= degree)
    fail(ErrorCode::CharacteristicObstruction,
         std::string(what) + ": characteristic " + std::to_string(p) + " does not exceed degree " +
             std::to_string(degree));
}

template <class F>
bool is_squarefree(const Poly<F>& p) {
  if (p.degree() <= 1) return true;
  require_separable_degree(p.field(), p.degree(), "squarefree test");
  return gcd(p, p.derivative()).degree() == 0;
}

/// Yun's algorithm: p = lc * prod a_i^i with a_i squarefree and pairwise
/// coprime. Returns the nonconstant a_i with their multiplicities.
template <class F>
std::vector<std::pair<Poly<F>, int>> squarefree_decomposition(const Poly<F>& p) {
  std::vector<std::pair<Poly<F>, int>> out;
  if (p.degree() <= 0) return out;
  require_separable_degree(p.field(), p.degree(), "squarefree decomposition");
  auto f = p.monic();
  auto a = gcd(f, f.derivative());
  auto b = *f.divide_exact(a);
  auto c = *f.derivative().divide_exact(a);
  auto d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    auto factor = gcd(b, d);
    if (factor.degree() > 0) out.emplace_back(factor, i);
    b = *b.divide_exact(factor);
    c = *d.divide_exact(factor);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

/// Roots in F_q with multiplicities, by exhaustive evaluation.
inline std::vector<std::pair<Residue, int>> roots_in_field(const Poly<PrimeField>& p) {
  std::vector<std::pair<Residue, int>> out;
  if (p.degree() <= 0) return out;
  const auto& K = p.field();
  for (std::uint32_t i = 0; i < K.order(); ++i) {
    auto t = K.element(i);
    if (!is_zero(p.eval(t))) continue;
    int mult = 0;
    Poly<PrimeField> rest = p;
    Poly<PrimeField> lin(K, {-t, K.one()});
    while (auto q = rest.divide_exact(lin)) {
      rest = *q;
      ++mult;
    }
    out.emplace_back(t, mult);
  }
  return out;
}

/// Rational roots with multiplicities (rational root theorem on the
/// primitive integer multiple). Throws ResourceLimit if the extreme
/// coefficients are too large to factor by trial division.
std::vector<std::pair<Rational, int>> rational_roots(const Poly<Rationals>& p);

/// Determinant by Gaussian elimination.
template <class F>
typename F::Element determinant(const F& field, std::vector<std::vector<typename F::Element>> m) {
  using E = typename F::Element;
  const std::size_t n = m.size();
  E det = field.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && is_zero(m[pivot][col])) ++pivot;
    if (pivot == n) return field.zero();
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det = det * m[col][col];
    const E inv = field.inverse(m[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_zero(m[r][col])) continue;
      E factor = m[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) m[r][c] = m[r][c] - factor * m[col][c];
    }
  }
  return det;
}

/// Resultant of a and b taken with formal degrees (da, db); the Sylvester
/// determinant, valid even if the formal leading coefficients vanish.
template <class F>
typename F::Element sylvester_resultant(const Poly<F>& a, int da, const Poly<F>& b, int db) {
  const F& K = a.field();
  using E = typename F::Element;
  const int n = da + db;
  if (n == 0) return K.one();
  std::vector<std::vector<E>> m(n, std::vector<E>(n, K.zero()));
  for (int r = 0; r < db; ++r)
    for (int i = 0; i <= da; ++i) m[r][r + i] = a.coeff(da - i);
  for (int r = 0; r < da; ++r)
    for (int i = 0; i <= db; ++i) m[db + r][r + i] = b.coeff(db - i);
  return determinant(K, std::move(m));
}

/// Interpolating polynomial through (xs[i], ys[i]) with distinct xs.
template <class F>
Poly<F> interpolate(const F& K, const std::vector<typename F::Element>& xs,
                    const std::vector<typename F::Element>& ys) {
  Poly<F> result(K);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Poly<F> basis = Poly<F>::constant(K, K.one());
    auto denom = K.one();
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = basis * Poly<F>(K, {-xs[j], K.one()});
      denom = denom * (xs[i] - xs[j]);
    }
    result = result + basis.scaled(ys[i] * K.inverse(denom));
  }
  return result;
}

/// The i-th element of a fixed enumeration of distinct field elements
/// (0, 1, -1, 2, -2, ... over Q; residues 0..q-1 over F_q). Returns nullopt
/// once a finite field is exhausted.
inline std::optional<Rational> distinct_element(const Rationals&, std::size_t i) {
  const long v = static_cast<long>((i + 1) / 2);
  return Rational(i % 2 == 1 ? v : -v);
}
inline std::optional<Residue> distinct_element(const PrimeField& K, std::size_t i) {
  if (i >= K.order()) return std::nullopt;
  return K.element(static_cast<std::uint32_t>(i));
}

}  // namespace pencillab
