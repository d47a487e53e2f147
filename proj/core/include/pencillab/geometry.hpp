#pragma once

// Pencils of binary forms over an exact field and their Bezoutian curves in
// Sym^2(P^1) = P^2.
//
// Conventions:
//   * a binary form of degree d stores the coefficient of x0^(d-i) x1^i at i;
//   * [x0:x1] is normalized so that its first nonzero coordinate is 1;
//   * an unordered pair {[x0:x1],[y0:y1]} has coordinates
//       u = x0 y0,  v = x0 y1 + x1 y0,  w = x1 y1,
//     the diagonal is the conic v^2 = 4uw, and the pairs containing P form
//     the line tangent to it at 2P;
//   * ternary forms store monomials u^a v^b w^c in the order a = d..0, then
//     b = d-a..0; normalization makes the first nonzero coefficient 1.

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pencillab/error.hpp"
#include "pencillab/field.hpp"
#include "pencillab/poly.hpp"

namespace pencillab::geometry {

template <class F>
class ProjPoint {
 public:
  using E = typename F::Element;

  ProjPoint(F field, E x0, E x1) : field_(std::move(field)) {
    require(!is_zero(x0) || !is_zero(x1), ErrorCode::InvalidArgument,
            "projective point with both coordinates zero");
    if (!is_zero(x0)) {
      x1_ = x1 * field_.inverse(x0);
      x0_ = field_.one();
    } else {
      x0_ = field_.zero();
      x1_ = field_.one();
    }
  }

  /// [1:t]
  static ProjPoint affine(const F& field, E t) { return ProjPoint(field, field.one(), t); }
  /// [0:1]
  static ProjPoint infinity(const F& field) { return ProjPoint(field, field.zero(), field.one()); }

  const F& field() const { return field_; }
  const E& x0() const { return x0_; }
  const E& x1() const { return x1_; }
  bool is_infinity() const { return is_zero(x0_); }

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
    return a.x0_ == b.x0_ && a.x1_ == b.x1_;
  }

 private:
  F field_;
  E x0_, x1_;
};

template <class F>
class SymPoint {
 public:
  using E = typename F::Element;

  SymPoint(F field, E u, E v, E w) : field_(std::move(field)), c_{u, v, w} {
    int lead = 0;
    while (lead < 3 && is_zero(c_[lead])) ++lead;
    require(lead < 3, ErrorCode::InvalidArgument, "point of P^2 with all coordinates zero");
    const E inv = field_.inverse(c_[lead]);
    for (auto& x : c_) x = x * inv;
  }

  const F& field() const { return field_; }
  const E& u() const { return c_[0]; }
  const E& v() const { return c_[1]; }
  const E& w() const { return c_[2]; }

  /// v^2 - 4uw = 0
  bool on_diagonal() const { return is_zero(c_[1] * c_[1] - field_.from_int(4) * c_[0] * c_[2]); }

  friend bool operator==(const SymPoint& a, const SymPoint& b) { return a.c_ == b.c_; }

 private:
  F field_;
  std::array<E, 3> c_;
};

template <class F>
SymPoint<F> sym_point(const ProjPoint<F>& p, const ProjPoint<F>& q) {
  return SymPoint<F>(p.field(), p.x0() * q.x0(), p.x0() * q.x1() + p.x1() * q.x0(), p.x1() * q.x1());
}

template <class F>
class BinaryForm {
 public:
  using E = typename F::Element;

  /// The zero form of the given degree.
  BinaryForm(F field, int degree) : field_(std::move(field)), c_(degree + 1, field_.zero()) {
    require(degree >= 0, ErrorCode::InvalidArgument, "negative form degree");
  }
  BinaryForm(F field, std::vector<E> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    require(!c_.empty(), ErrorCode::InvalidArgument, "binary form needs at least one coefficient");
  }

  /// p0 x1 - p1 x0, the linear form vanishing at p.
  static BinaryForm vanishing_at(const ProjPoint<F>& p) {
    return BinaryForm(p.field(), {-p.x1(), p.x0()});
  }

  /// The polynomial p(t) read as a form of degree `degree` in t = x1/x0.
  static BinaryForm homogenize(const Poly<F>& p, int degree) {
    require(p.degree() <= degree, ErrorCode::InvalidArgument, "homogenization degree too small");
    BinaryForm out(p.field(), degree);
    for (int i = 0; i <= p.degree(); ++i) out.c_[i] = p.coeff(i);
    return out;
  }

  const F& field() const { return field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<E>& coeffs() const { return c_; }
  const E& coeff(int i) const { return c_[i]; }
  bool is_zero() const {
    for (const auto& x : c_)
      if (!pencillab::is_zero(x)) return false;
    return true;
  }

  E eval(const E& x0, const E& x1) const {
    E acc = field_.zero();
    std::vector<E> p0(c_.size(), field_.one());
    for (std::size_t i = 1; i < c_.size(); ++i) p0[i] = p0[i - 1] * x0;
    E x1_pow = field_.one();
    for (int i = 0; i <= degree(); ++i) {
      acc = acc + c_[i] * p0[degree() - i] * x1_pow;
      x1_pow = x1_pow * x1;
    }
    return acc;
  }
  E eval(const ProjPoint<F>& p) const { return eval(p.x0(), p.x1()); }

  BinaryForm scaled(const E& s) const {
    BinaryForm out = *this;
    for (auto& x : out.c_) x = x * s;
    return out;
  }

  friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
    require(a.degree() == b.degree(), ErrorCode::InvalidArgument, "adding forms of different degree");
    BinaryForm out = a;
    for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = out.c_[i] + b.c_[i];
    return out;
  }
  friend BinaryForm operator-(const BinaryForm& a, const BinaryForm& b) {
    return a + b.scaled(-a.field_.one());
  }
  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
    BinaryForm out(a.field_, a.degree() + b.degree());
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        out.c_[i + j] = out.c_[i + j] + a.c_[i] * b.c_[j];
    return out;
  }
  friend bool operator==(const BinaryForm& a, const BinaryForm& b) { return a.c_ == b.c_; }

  BinaryForm pow(int m) const {
    BinaryForm out(field_, std::vector<E>{field_.one()});
    for (int i = 0; i < m; ++i) out = out * *this;
    return out;
  }

  BinaryForm d_dx0() const {
    require(degree() >= 1, ErrorCode::InvalidArgument, "derivative of a constant form");
    BinaryForm out(field_, degree() - 1);
    for (int i = 0; i < degree(); ++i) out.c_[i] = c_[i] * field_.from_int(degree() - i);
    return out;
  }
  BinaryForm d_dx1() const {
    require(degree() >= 1, ErrorCode::InvalidArgument, "derivative of a constant form");
    BinaryForm out(field_, degree() - 1);
    for (int i = 1; i <= degree(); ++i) out.c_[i - 1] = c_[i] * field_.from_int(i);
    return out;
  }

  /// f(1, t).
  Poly<F> dehomogenize() const { return Poly<F>(field_, c_); }

  /// Multiplicity of [0:1] as a root, i.e. the power of x0 dividing f.
  int multiplicity_at_infinity() const {
    require(!is_zero(), ErrorCode::InvalidArgument, "multiplicity on the zero form");
    return degree() - dehomogenize().degree();
  }

  int multiplicity_at(const ProjPoint<F>& p) const {
    require(!is_zero(), ErrorCode::InvalidArgument, "multiplicity on the zero form");
    if (p.is_infinity()) return multiplicity_at_infinity();
    Poly<F> rest = dehomogenize();
    Poly<F> lin(field_, {-p.x1(), field_.one()});
    int m = 0;
    while (auto q = rest.divide_exact(lin)) {
      rest = *q;
      ++m;
    }
    return m;
  }

  /// f(a x0 + b x1, c x0 + d x1) for m = {a, b, c, d}.
  BinaryForm substitute(const std::array<E, 4>& m) const {
    const BinaryForm first(field_, {m[0], m[1]});
    const BinaryForm second(field_, {m[2], m[3]});
    std::vector<BinaryForm> p1{BinaryForm(field_, std::vector<E>{field_.one()})};
    std::vector<BinaryForm> p2{p1[0]};
    for (int i = 1; i <= degree(); ++i) {
      p1.push_back(p1.back() * first);
      p2.push_back(p2.back() * second);
    }
    BinaryForm out(field_, degree());
    for (int i = 0; i <= degree(); ++i) {
      if (pencillab::is_zero(c_[i])) continue;
      out = out + (p1[degree() - i] * p2[i]).scaled(c_[i]);
    }
    return out;
  }

  /// First nonzero coefficient scaled to 1; the zero form is returned as is.
  BinaryForm normalized() const {
    for (const auto& x : c_)
      if (!pencillab::is_zero(x)) return scaled(field_.inverse(x));
    return *this;
  }

 private:
  F field_;
  std::vector<E> c_;
};

/// Normalized gcd of two binary forms (the zero form if both vanish).
template <class F>
BinaryForm<F> gcd(const BinaryForm<F>& a, const BinaryForm<F>& b) {
  if (a.is_zero()) return b.normalized();
  if (b.is_zero()) return a.normalized();
  const int m = std::min(a.multiplicity_at_infinity(), b.multiplicity_at_infinity());
  auto h = pencillab::gcd(a.dehomogenize(), b.dehomogenize());
  auto out = BinaryForm<F>::homogenize(h, h.degree() + m);
  return out.normalized();
}

/// No repeated linear factor over the algebraic closure.
template <class F>
bool is_squarefree(const BinaryForm<F>& f) {
  require(!f.is_zero(), ErrorCode::InvalidArgument, "squarefree test on the zero form");
  return f.multiplicity_at_infinity() <= 1 && pencillab::is_squarefree(f.dehomogenize());
}

template <class F>
class PlaneCurve {
 public:
  using E = typename F::Element;

  PlaneCurve(F field, int degree)
      : field_(std::move(field)), degree_(degree), c_(monomial_count(degree), field_.zero()) {
    require(degree >= 0, ErrorCode::InvalidArgument, "negative curve degree");
  }
  PlaneCurve(F field, int degree, std::vector<E> coeffs)
      : field_(std::move(field)), degree_(degree), c_(std::move(coeffs)) {
    require(degree >= 0 && c_.size() == static_cast<std::size_t>(monomial_count(degree)),
            ErrorCode::InvalidArgument, "coefficient count does not match the degree");
  }

  static int monomial_count(int d) { return (d + 1) * (d + 2) / 2; }
  static int index(int d, int a, int b) { return (d - a) * (d - a + 1) / 2 + (d - a - b); }
  /// Exponents (a, b, c) in storage order.
  static std::vector<std::array<int, 3>> monomials(int d) {
    std::vector<std::array<int, 3>> out;
    for (int a = d; a >= 0; --a)
      for (int b = d - a; b >= 0; --b) out.push_back({a, b, d - a - b});
    return out;
  }

  const F& field() const { return field_; }
  int degree() const { return degree_; }
  const std::vector<E>& coeffs() const { return c_; }
  E coeff(int a, int b, int c) const {
    if (a < 0 || b < 0 || c < 0 || a + b + c != degree_) return field_.zero();
    return c_[index(degree_, a, b)];
  }
  void set(int a, int b, int c, const E& value) {
    require(a >= 0 && b >= 0 && c >= 0 && a + b + c == degree_, ErrorCode::InvalidArgument,
            "monomial degree mismatch");
    c_[index(degree_, a, b)] = value;
  }
  void add(int a, int b, int c, const E& value) {
    require(a >= 0 && b >= 0 && c >= 0 && a + b + c == degree_, ErrorCode::InvalidArgument,
            "monomial degree mismatch");
    auto& slot = c_[index(degree_, a, b)];
    slot = slot + value;
  }
  bool is_zero() const {
    for (const auto& x : c_)
      if (!pencillab::is_zero(x)) return false;
    return true;
  }

  E eval(const E& u, const E& v, const E& w) const {
    E acc = field_.zero();
    for (const auto& [a, b, c] : monomials(degree_)) {
      const auto& k = c_[index(degree_, a, b)];
      if (pencillab::is_zero(k)) continue;
      E term = k;
      for (int i = 0; i < a; ++i) term = term * u;
      for (int i = 0; i < b; ++i) term = term * v;
      for (int i = 0; i < c; ++i) term = term * w;
      acc = acc + term;
    }
    return acc;
  }
  E eval(const SymPoint<F>& p) const { return eval(p.u(), p.v(), p.w()); }

  PlaneCurve scaled(const E& s) const {
    PlaneCurve out = *this;
    for (auto& x : out.c_) x = x * s;
    return out;
  }

  PlaneCurve normalized() const {
    for (const auto& x : c_)
      if (!pencillab::is_zero(x)) return scaled(field_.inverse(x));
    return *this;
  }

  friend PlaneCurve operator+(const PlaneCurve& a, const PlaneCurve& b) {
    require(a.degree_ == b.degree_, ErrorCode::InvalidArgument, "adding curves of different degree");
    PlaneCurve out = a;
    for (std::size_t i = 0; i < out.c_.size(); ++i) out.c_[i] = out.c_[i] + b.c_[i];
    return out;
  }
  friend PlaneCurve operator-(const PlaneCurve& a, const PlaneCurve& b) {
    return a + b.scaled(-a.field_.one());
  }
  friend PlaneCurve operator*(const PlaneCurve& a, const PlaneCurve& b) {
    PlaneCurve out(a.field_, a.degree_ + b.degree_);
    const auto ma = monomials(a.degree_);
    const auto mb = monomials(b.degree_);
    for (std::size_t i = 0; i < ma.size(); ++i) {
      if (pencillab::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < mb.size(); ++j) {
        if (pencillab::is_zero(b.c_[j])) continue;
        out.add(ma[i][0] + mb[j][0], ma[i][1] + mb[j][1], ma[i][2] + mb[j][2], a.c_[i] * b.c_[j]);
      }
    }
    return out;
  }
  friend bool operator==(const PlaneCurve& a, const PlaneCurve& b) {
    return a.degree_ == b.degree_ && a.c_ == b.c_;
  }

  /// The monomial u^a v^b w^c with coefficient k.
  static PlaneCurve monomial(const F& field, int a, int b, int c, const E& k) {
    PlaneCurve out(field, a + b + c);
    out.set(a, b, c, k);
    return out;
  }

 private:
  F field_;
  int degree_;
  std::vector<E> c_;
};

/// (p1^2) u - (p0 p1) v + (p0^2) w: the pairs {P, Q}, Q arbitrary.
template <class F>
PlaneCurve<F> tangent_line(const ProjPoint<F>& p) {
  const auto& K = p.field();
  PlaneCurve<F> out(K, 1);
  out.set(1, 0, 0, p.x1() * p.x1());
  out.set(0, 1, 0, -(p.x0() * p.x1()));
  out.set(0, 0, 1, p.x0() * p.x0());
  return out;
}

/// v^2 - 4uw.
template <class F>
PlaneCurve<F> diagonal_conic(const F& field) {
  PlaneCurve<F> out(field, 2);
  out.set(0, 2, 0, field.one());
  out.set(1, 0, 1, -field.from_int(4));
  return out;
}

template <class F>
class Pencil {
 public:
  using E = typename F::Element;

  /// f and g must have the same degree k >= 1 and be linearly independent.
  Pencil(BinaryForm<F> f, BinaryForm<F> g) : f_(std::move(f)), g_(std::move(g)) {
    require(f_.degree() == g_.degree(), ErrorCode::InvalidArgument, "pencil forms differ in degree");
    require(f_.degree() >= 1, ErrorCode::InvalidArgument, "pencil degree must be at least 1");
    require(f_.field() == g_.field(), ErrorCode::InvalidArgument, "pencil forms over different fields");
    bool independent = false;
    for (int i = 0; i <= k() && !independent; ++i)
      for (int j = i + 1; j <= k() && !independent; ++j)
        independent = !pencillab::is_zero(f_.coeff(i) * g_.coeff(j) - f_.coeff(j) * g_.coeff(i));
    require(independent, ErrorCode::DegeneratePencil, "pencil forms are linearly dependent");
  }

  int k() const { return f_.degree(); }
  const F& field() const { return f_.field(); }
  const BinaryForm<F>& f() const { return f_; }
  const BinaryForm<F>& g() const { return g_; }
  BinaryForm<F> member(const E& lambda, const E& mu) const { return f_.scaled(lambda) + g_.scaled(mu); }

 private:
  BinaryForm<F> f_, g_;
};

/// (f(x) g(y) - f(y) g(x)) / (x0 y1 - x1 y0) written in (u, v, w), without
/// normalization; bilinear and antisymmetric in (f, g), zero when they are
/// dependent. Forms must share a degree k >= 1.
template <class F>
PlaneCurve<F> bezoutian_form(const BinaryForm<F>& f_form, const BinaryForm<F>& g_form) {
  using E = typename F::Element;
  require(f_form.degree() == g_form.degree() && f_form.degree() >= 1, ErrorCode::InvalidArgument,
          "Bezoutian needs two forms of one positive degree");
  const F& K = f_form.field();
  const int k = f_form.degree();
  const int d = k - 1;
  const auto& f = f_form.coeffs();
  const auto& g = g_form.coeffs();
  auto minor = [&](int i, int j) -> E { return f[i] * g[j] - f[j] * g[i]; };

  // Divide the antisymmetric (k,k) bihomogeneous form by x0 y1 - x1 y0:
  // M[i][j] = Q[i][j-1] - Q[i-1][j].
  std::vector<std::vector<E>> q(k, std::vector<E>(k, K.zero()));
  for (int i = 0; i < k; ++i)
    for (int j = 1; j <= k; ++j) q[i][j - 1] = minor(i, j) + (i > 0 && j < k ? q[i - 1][j] : K.zero());
  for (int i = 0; i <= k; ++i)
    for (int j = 0; j <= k; ++j) {
      E rhs = (i < k && j >= 1 ? q[i][j - 1] : K.zero()) - (i >= 1 && j < k ? q[i - 1][j] : K.zero());
      if (!(rhs == minor(i, j))) throw std::logic_error("Bezoutian division left a remainder");
    }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (!(q[i][j] == q[j][i])) throw std::logic_error("Bezoutian quotient is not symmetric");

  // x0^(d-i) x1^i y0^(d-j) y1^j + (i <-> j) = w^i u^(d-j) (X^s + Y^s) for
  // i < j, s = j - i, where X = x0 y1 and Y = x1 y0 satisfy X + Y = v and
  // XY = uw. Power sums follow p_s = v p_(s-1) - uw p_(s-2).
  std::vector<PlaneCurve<F>> power;
  power.push_back(PlaneCurve<F>::monomial(K, 0, 0, 0, K.from_int(2)));
  if (d >= 1) power.push_back(PlaneCurve<F>::monomial(K, 0, 1, 0, K.one()));
  const auto v = PlaneCurve<F>::monomial(K, 0, 1, 0, K.one());
  const auto uw = PlaneCurve<F>::monomial(K, 1, 0, 1, K.one());
  for (int s = 2; s <= d; ++s) power.push_back(v * power[s - 1] - uw * power[s - 2]);

  PlaneCurve<F> curve(K, d);
  for (int i = 0; i < k; ++i) curve.add(d - i, 0, i, q[i][i]);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      if (is_zero(q[i][j])) continue;
      const auto& p = power[j - i];
      const auto mons = PlaneCurve<F>::monomials(p.degree());
      for (std::size_t m = 0; m < mons.size(); ++m) {
        const auto& coeff = p.coeffs()[m];
        if (is_zero(coeff)) continue;
        curve.add(mons[m][0] + d - j, mons[m][1], mons[m][2] + i, q[i][j] * coeff);
      }
    }
  return curve;
}

/// The degree-(k-1) curve of pairs {P, Q} lying in a common member.
/// Changing the basis of the pencil scales the Bezoutian by the
/// determinant, so the normalized curve depends only on the pencil.
template <class F>
PlaneCurve<F> bezoutian_curve(const Pencil<F>& pencil) {
  auto curve = bezoutian_form(pencil.f(), pencil.g());
  require(!curve.is_zero(), ErrorCode::DegeneratePencil, "Bezoutian vanishes identically");
  return curve.normalized();
}

template <class F>
bool is_base_point(const Pencil<F>& pencil, const ProjPoint<F>& p) {
  return is_zero(pencil.f().eval(p)) && is_zero(pencil.g().eval(p));
}

/// Invertible substitution taking [1:0] to p, for BinaryForm::substitute;
/// coefficient i of the result is the i-th Taylor coefficient at p.
template <class F>
std::array<typename F::Element, 4> chart_at(const ProjPoint<F>& p) {
  const F& K = p.field();
  if (p.is_infinity()) return {K.zero(), K.one(), K.one(), K.zero()};
  return {p.x0(), K.zero(), p.x1(), K.one()};
}

/// Some nonzero member vanishes to order >= e at p: the 2 x e matrix of the
/// leading Taylor coefficients of (f, g) at p has rank <= 1. The point is
/// first moved to [1:0] by a linear substitution. Vanishing from the base
/// locus counts.
template <class F>
bool has_ramification_at(const Pencil<F>& pencil, const ProjPoint<F>& p, int e) {
  require(e >= 1 && e <= pencil.k(), ErrorCode::InvalidArgument,
          "ramification order " + std::to_string(e) + " outside [1, " + std::to_string(pencil.k()) + "]");
  const auto move = chart_at(p);
  const auto tf = pencil.f().substitute(move);
  const auto tg = pencil.g().substitute(move);
  for (int a = 0; a < e; ++a)
    for (int b = a; b < e; ++b)
      if (!is_zero(tf.coeff(a) * tg.coeff(b) - tf.coeff(b) * tg.coeff(a))) return false;
  return true;
}

/// Largest e such that some member vanishes to order >= e at p.
template <class F>
int max_vanishing_order(const Pencil<F>& pencil, const ProjPoint<F>& p) {
  int e = 1;
  while (e < pencil.k() && has_ramification_at(pencil, p, e + 1)) ++e;
  return e;
}

struct SameFiber {
  bool value = false;
  /// Both points are base points, so every member contains both.
  bool base_point_ambiguity = false;
};

/// Whether {P, Q} lies in a single member: f(P) g(Q) - f(Q) g(P) = 0. For
/// P = Q this degenerates, and the limiting condition (a member vanishing
/// doubly at P) is used instead, matching the curve at the diagonal point.
template <class F>
SameFiber same_fiber(const Pencil<F>& pencil, const ProjPoint<F>& p, const ProjPoint<F>& q) {
  const auto fp = pencil.f().eval(p), gp = pencil.g().eval(p);
  const auto fq = pencil.f().eval(q), gq = pencil.g().eval(q);
  const bool base_p = is_zero(fp) && is_zero(gp);
  const bool base_q = is_zero(fq) && is_zero(gq);
  if (base_p && base_q) return {true, true};
  if (p == q) return {has_ramification_at(pencil, p, 2), false};
  return {is_zero(fp * gq - fq * gp), false};
}

template <class F>
BinaryForm<F> base_locus(const Pencil<F>& pencil) {
  return gcd(pencil.f(), pencil.g());
}

template <class F>
bool has_multiple_base_points(const Pencil<F>& pencil) {
  return !is_squarefree(base_locus(pencil));
}

/// df/dx0 dg/dx1 - df/dx1 dg/dx0, normalized; degree 2k-2. On the chart
/// x0 = 1 it is k (f g' - g f') in t = x1/x0. Its order at P is the
/// ramification index there minus one.
template <class F>
BinaryForm<F> wronskian(const Pencil<F>& pencil) {
  const auto p = pencil.field().characteristic();
  if (p != 0 && static_cast<int>(p) <= pencil.k())
    fail(ErrorCode::CharacteristicObstruction,
         "Wronskian needs characteristic above k = " + std::to_string(pencil.k()));
  const auto base = base_locus(pencil);
  require(base.degree() == 0, ErrorCode::BasePointPresent,
          "pencil has base points; remove the common factor first");
  const auto& f = pencil.f();
  const auto& g = pencil.g();
  auto w = f.d_dx0() * g.d_dx1() - f.d_dx1() * g.d_dx0();
  require(!w.is_zero(), ErrorCode::DegeneratePencil, "Wronskian vanishes identically");
  return w.normalized();
}

inline std::vector<std::pair<Rational, int>> field_roots(const Poly<Rationals>& p) {
  return rational_roots(p);
}
inline std::vector<std::pair<Residue, int>> field_roots(const Poly<PrimeField>& p) {
  return roots_in_field(p);
}

template <class F>
struct RamificationDivisor {
  BinaryForm<F> wronskian;
  /// Ramification points defined over the field, with Wronskian order.
  std::vector<std::pair<ProjPoint<F>, int>> points;
  /// Leftover squarefree factors without roots in the field.
  std::vector<std::pair<BinaryForm<F>, int>> residual;
  /// Sum of all vanishing orders, counted with degree.
  int total_multiplicity = 0;
};

/// Wronskian zeros via squarefree decomposition plus root extraction.
template <class F>
RamificationDivisor<F> ramification_divisor(const Pencil<F>& pencil) {
  const F& K = pencil.field();
  RamificationDivisor<F> out{wronskian(pencil), {}, {}, 0};
  const int at_infinity = out.wronskian.multiplicity_at_infinity();
  std::vector<std::pair<ProjPoint<F>, int>> finite;
  for (const auto& [factor, mult] : squarefree_decomposition(out.wronskian.dehomogenize())) {
    out.total_multiplicity += mult * factor.degree();
    Poly<F> rest = factor;
    for (const auto& [root, root_mult] : field_roots(factor)) {
      finite.emplace_back(ProjPoint<F>::affine(K, root), mult);
      rest = *rest.divide_exact(Poly<F>(K, {-root, K.one()}));
    }
    if (rest.degree() > 0) out.residual.emplace_back(BinaryForm<F>::homogenize(rest, rest.degree()), mult);
  }
  if (at_infinity > 0) out.points.emplace_back(ProjPoint<F>::infinity(K), at_infinity);
  out.total_multiplicity += at_infinity;
  for (auto& x : finite) out.points.push_back(std::move(x));
  return out;
}

/// The pencil spanned by l_a^k and l_b^k, totally ramified at a and b.
template <class F>
Pencil<F> total_ramification_pencil(const ProjPoint<F>& a, const ProjPoint<F>& b, int k) {
  require(!(a == b), ErrorCode::CoincidentPoints, "total ramification points must differ");
  require(k >= 2, ErrorCode::InvalidArgument, "k must be at least 2");
  return Pencil<F>(BinaryForm<F>::vanishing_at(a).pow(k).normalized(),
                   BinaryForm<F>::vanishing_at(b).pow(k).normalized());
}

/// Exact quotient curve / line, or nullopt if the line is not a component.
template <class F>
std::optional<PlaneCurve<F>> divide_by_linear(const PlaneCurve<F>& curve, const PlaneCurve<F>& line) {
  using E = typename F::Element;
  const F& K = curve.field();
  require(line.degree() == 1 && !line.is_zero(), ErrorCode::InvalidArgument, "divisor must be a line");
  if (curve.degree() == 0) return curve.is_zero() ? std::optional(curve) : std::nullopt;
  const std::array<E, 3> l{line.coeff(1, 0, 0), line.coeff(0, 1, 0), line.coeff(0, 0, 1)};
  int main = 2;
  while (is_zero(l[main])) --main;
  const E inv = K.inverse(l[main]);

  std::map<std::array<int, 3>, E> rem;
  for (const auto& m : PlaneCurve<F>::monomials(curve.degree())) {
    auto c = curve.coeff(m[0], m[1], m[2]);
    if (!is_zero(c)) rem.emplace(m, c);
  }
  PlaneCurve<F> quotient(K, curve.degree() - 1);
  while (true) {
    auto it = rem.end();
    for (auto jt = rem.begin(); jt != rem.end(); ++jt)
      if (jt->first[main] >= 1 && (it == rem.end() || jt->first[main] > it->first[main])) it = jt;
    if (it == rem.end()) break;
    auto exps = it->first;
    const E factor = it->second * inv;
    --exps[main];
    quotient.add(exps[0], exps[1], exps[2], factor);
    for (int var = 0; var < 3; ++var) {
      if (is_zero(l[var])) continue;
      auto e = exps;
      ++e[var];
      auto [slot, inserted] = rem.emplace(e, K.zero());
      slot->second = slot->second - factor * l[var];
      if (is_zero(slot->second)) rem.erase(slot);
    }
  }
  if (!rem.empty()) return std::nullopt;
  return quotient;
}

/// Multiplicity of the tangent line at 2P as a component of the curve.
template <class F>
int line_multiplicity(PlaneCurve<F> curve, const ProjPoint<F>& p) {
  require(!curve.is_zero(), ErrorCode::InvalidArgument, "line multiplicity on the zero curve");
  const auto line = tangent_line(p);
  int m = 0;
  while (curve.degree() > 0) {
    auto q = divide_by_linear(curve, line);
    if (!q) break;
    curve = std::move(*q);
    ++m;
  }
  return m;
}

/// Squarefreeness of a ternary form, decided exactly.
///
/// Write B = u^m B' with u not dividing B'. Then B is squarefree iff m <= 1
/// and b(v, w) = B'(1, v, w) is. With b = cont(w) pp(v, w), squarefreeness
/// of pp is detected by specializing w at points where the leading
/// v-coefficient survives: the discriminant of pp in v has degree at most
/// (2n-2) d in w, so if that many such specializations all fail, pp has a
/// repeated factor.
template <class F>
bool is_reduced_curve(const PlaneCurve<F>& curve) {
  const F& K = curve.field();
  require(!curve.is_zero(), ErrorCode::InvalidArgument, "reducedness of the zero curve");
  require_separable_degree(K, curve.degree(), "reducedness test");
  if (curve.degree() <= 1) return true;

  PlaneCurve<F> rest = curve;
  int u_power = 0;
  while (rest.degree() > 0) {
    bool divisible = true;
    for (int b = 0; b <= rest.degree() && divisible; ++b)
      divisible = is_zero(rest.coeff(0, b, rest.degree() - b));
    if (!divisible) break;
    PlaneCurve<F> q(K, rest.degree() - 1);
    for (const auto& [a, b, c] : PlaneCurve<F>::monomials(rest.degree() - 1))
      q.set(a, b, c, rest.coeff(a + 1, b, c));
    rest = std::move(q);
    ++u_power;
  }
  if (u_power >= 2) return false;
  const int d = rest.degree();
  if (d == 0) return true;

  std::vector<Poly<F>> in_v;  // coefficient of v^b as a polynomial in w
  for (int b = 0; b <= d; ++b) {
    std::vector<typename F::Element> cw;
    for (int c = 0; c <= d - b; ++c) cw.push_back(rest.coeff(d - b - c, b, c));
    in_v.emplace_back(K, std::move(cw));
  }
  int n = d;
  while (n > 0 && in_v[n].is_zero()) --n;
  Poly<F> content(K);
  for (int b = 0; b <= n; ++b) content = pencillab::gcd(content, in_v[b]);
  if (!pencillab::is_squarefree(content)) return false;
  if (n == 0) return true;

  const auto& lead = in_v[n];
  const long bound = static_cast<long>(2 * n - 2) * d;
  long failures = 0;
  for (std::size_t i = 0;; ++i) {
    auto t = distinct_element(K, i);
    if (!t)
      fail(ErrorCode::CharacteristicObstruction,
           "field too small to certify reducedness of a degree-" + std::to_string(curve.degree()) + " curve");
    if (is_zero(lead.eval(*t))) continue;
    std::vector<typename F::Element> cv;
    for (int b = 0; b <= n; ++b) cv.push_back(in_v[b].eval(*t));
    if (pencillab::is_squarefree(Poly<F>(K, std::move(cv)))) return true;
    if (++failures > bound) return false;
  }
}

template <class F>
struct ConicIntersection {
  /// Resultant in v, a binary form of degree 2 deg(curve) in (u, w).
  BinaryForm<F> resultant;
  /// Nonzero and squarefree: 2 deg(curve) distinct intersection points with
  /// distinct projections from [0:1:0].
  bool transversal = false;
};

/// Intersection of a plane curve with a conic, via the resultant in v
/// computed by evaluation at u = 1 and interpolation in w.
template <class F>
ConicIntersection<F> conic_intersection(const PlaneCurve<F>& curve, const PlaneCurve<F>& conic) {
  using E = typename F::Element;
  const F& K = curve.field();
  require(conic.degree() == 2, ErrorCode::InvalidArgument, "second curve must be a conic");
  const int d = curve.degree();
  const int total = 2 * d;
  auto slice = [&](const PlaneCurve<F>& c, const E& t) {
    std::vector<E> cv;
    for (int b = 0; b <= c.degree(); ++b) {
      E acc = K.zero();
      E tp = K.one();
      for (int cc = 0; cc <= c.degree() - b; ++cc) {
        acc = acc + c.coeff(c.degree() - b - cc, b, cc) * tp;
        tp = tp * t;
      }
      cv.push_back(acc);
    }
    return Poly<F>(K, std::move(cv));
  };
  std::vector<E> xs, ys;
  for (std::size_t i = 0; static_cast<int>(xs.size()) <= total; ++i) {
    auto t = distinct_element(K, i);
    if (!t) fail(ErrorCode::CharacteristicObstruction, "field too small to interpolate the resultant");
    xs.push_back(*t);
    ys.push_back(sylvester_resultant(slice(curve, *t), d, slice(conic, *t), 2));
  }
  auto r = interpolate(K, xs, ys);
  ConicIntersection<F> out{BinaryForm<F>::homogenize(r, total), false};
  if (!out.resultant.is_zero()) {
    require_separable_degree(K, total, "transversality test");
    out.transversal = is_squarefree(out.resultant);
  }
  return out;
}

}  // namespace pencillab::geometry
