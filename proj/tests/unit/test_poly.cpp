#include <gtest/gtest.h>

#include "pencillab/poly.hpp"

using namespace pencillab;

namespace {

const Rationals Q;

Poly<Rationals> qpoly(std::vector<long> c) {
  std::vector<Rational> out;
  for (long x : c) out.emplace_back(x);
  return Poly<Rationals>(Q, out);
}

}  // namespace

TEST(Poly, TrimsAndReportsDegree) {
  EXPECT_EQ(qpoly({1, 2, 0, 0}).degree(), 1);
  EXPECT_TRUE(qpoly({0, 0}).is_zero());
  EXPECT_EQ(qpoly({}).degree(), -1);
}

TEST(Poly, DivisionRoundTrips) {
  const auto a = qpoly({-1, 0, 0, 1});  // t^3 - 1
  const auto b = qpoly({-1, 1});
  auto [q, r] = Poly<Rationals>::divmod(a, b);
  EXPECT_TRUE(r.is_zero());
  EXPECT_EQ(q, qpoly({1, 1, 1}));
  EXPECT_FALSE(qpoly({1, 0, 1}).divide_exact(b).has_value());
}

TEST(Poly, GcdIsMonic) {
  const auto a = qpoly({-2, 0, 2});      // 2(t-1)(t+1)
  const auto b = qpoly({3, -6, 3});      // 3(t-1)^2
  EXPECT_EQ(gcd(a, b), qpoly({-1, 1}));
}

TEST(Poly, SquarefreeDecomposition) {
  // (t-1)^3 (t+2)^2 t
  auto p = qpoly({-1, 1}) * qpoly({-1, 1}) * qpoly({-1, 1}) * qpoly({2, 1}) * qpoly({2, 1}) * qpoly({0, 1});
  const auto parts = squarefree_decomposition(p.scaled(Rational(5)));
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0].first, qpoly({0, 1}));
  EXPECT_EQ(parts[0].second, 1);
  EXPECT_EQ(parts[1].first, qpoly({2, 1}));
  EXPECT_EQ(parts[1].second, 2);
  EXPECT_EQ(parts[2].first, qpoly({-1, 1}));
  EXPECT_EQ(parts[2].second, 3);
  EXPECT_FALSE(is_squarefree(p));
  EXPECT_TRUE(is_squarefree(qpoly({-2, 0, 1})));
}

TEST(Poly, RationalRootsWithMultiplicity) {
  // (2t - 3)^2 (t + 1) t^2 (t^2 + 1)
  auto p = qpoly({-3, 2}) * qpoly({-3, 2}) * qpoly({1, 1}) * qpoly({0, 0, 1}) * qpoly({1, 0, 1});
  const auto roots = rational_roots(p);
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_EQ(roots[0], std::make_pair(Rational(-1), 1));
  EXPECT_EQ(roots[1], std::make_pair(Rational(0), 2));
  EXPECT_EQ(roots[2], std::make_pair(Rational(3, 2), 2));
}

TEST(Poly, RootsInPrimeField) {
  const PrimeField K(7);
  // t^2 + 1 has no roots mod 7; t^2 - 2 = (t-3)(t-4)
  EXPECT_TRUE(roots_in_field(Poly<PrimeField>(K, {K.one(), K.zero(), K.one()})).empty());
  const auto r = roots_in_field(Poly<PrimeField>(K, {K.from_int(-2), K.zero(), K.one()}));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].first.value, 3u);
  EXPECT_EQ(r[1].first.value, 4u);
}

TEST(Poly, SeparabilityGuardInSmallCharacteristic) {
  const PrimeField K(5);
  // t^5 - t is squarefree but its degree reaches the characteristic
  std::vector<Residue> c(6, K.zero());
  c[5] = K.one();
  c[1] = K.from_int(-1);
  try {
    is_squarefree(Poly<PrimeField>(K, c));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CharacteristicObstruction);
  }
}

TEST(Poly, ResultantDetectsCommonRoot) {
  const auto a = qpoly({-1, 0, 1});
  EXPECT_EQ(sylvester_resultant(a, 2, qpoly({1, 1}), 1), Rational(0));
  EXPECT_NE(sylvester_resultant(a, 2, qpoly({2, 1}), 1), Rational(0));
  // Res(t^2 - 1, t - 2) = 3 with formal degrees (2, 1)
  EXPECT_EQ(sylvester_resultant(a, 2, qpoly({-2, 1}), 1), Rational(3));
}

TEST(Poly, InterpolationRecoversPolynomial) {
  const auto p = qpoly({4, -1, 0, 2});
  std::vector<Rational> xs, ys;
  for (long x = -2; x <= 1; ++x) {
    xs.emplace_back(x);
    ys.push_back(p.eval(Rational(x)));
  }
  EXPECT_EQ(interpolate(Q, xs, ys), p);
}

TEST(Poly, DeterminantSign) {
  std::vector<std::vector<Rational>> m{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
  EXPECT_EQ(determinant(Q, m), Rational(-1));
}
