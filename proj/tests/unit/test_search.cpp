#include <gtest/gtest.h>

#include <cmath>

#include "pencillab/search.hpp"
#include "random_inputs.hpp"

using namespace pencillab;
using namespace pencillab::search;

namespace {

std::uint64_t ipow(std::uint64_t q, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= q;
  return r;
}

/// Gaussian binomial [n choose 2]_q.
std::uint64_t planes(int n, std::uint64_t q) {
  return (ipow(q, n) - 1) * (ipow(q, n) - q) / ((q * q - 1) * (q * q - q));
}

/// 2-planes in F_q^(k+1) meeting a fixed subspace of dimension k+1-c: all of
/// them minus the q^(2(k+1-c)) [c choose 2]_q complements.
std::uint64_t meeting_subspace(int k, std::uint64_t q, int c) {
  const std::uint64_t disjoint = c >= 2 ? ipow(q, 2 * (k + 1 - c)) * planes(c, q) : 0;
  return planes(k + 1, q) - disjoint;
}

void expect_same(const SearchResult& a, const SearchResult& b) {
  EXPECT_EQ(a.count, b.count);
  EXPECT_EQ(a.multiple_base_point_count, b.multiple_base_point_count);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].f(), b.samples[i].f());
    EXPECT_EQ(a.samples[i].g(), b.samples[i].g());
  }
}

SearchOptions exhaustive() {
  SearchOptions o;
  o.mode = SearchMode::Exhaustive;
  return o;
}

}  // namespace

TEST(Grassmannian, ClosedForm) {
  for (int k = 1; k <= 4; ++k)
    for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u}) EXPECT_EQ(grassmannian_pencil_count(k, q), planes(k + 1, q));
  EXPECT_EQ(grassmannian_pencil_count(2, 5), 31u);
  EXPECT_EQ(grassmannian_pencil_count(3, 5), 806u);
  EXPECT_EQ(grassmannian_pencil_count(3, 7), 2850u);
}

TEST(Search, EmptyConstraintCountsGrassmannian) {
  for (int k = 2; k <= 4; ++k)
    for (std::uint32_t q : {5u, 7u, 11u}) {
      if (q <= static_cast<std::uint32_t>(k)) continue;
      const PrimeField K(q);
      EXPECT_EQ(search_pencils_ffield(k, K, {}).count, planes(k + 1, q));
      if (k <= 3) EXPECT_EQ(search_pencils_ffield(k, K, {}, exhaustive()).count, planes(k + 1, q));
    }
}

TEST(Search, UniqueTotalRamificationPencil) {
  const PrimeField K(5);
  SearchConstraint c;
  c.ramifications = {{FqPoint::affine(K, K.zero()), 2}, {FqPoint::infinity(K), 2}};
  const auto r = search_pencils_ffield(2, K, c);
  ASSERT_EQ(r.count, 1u);
  ASSERT_EQ(r.samples.size(), 1u);
  const auto expected = geometry::total_ramification_pencil(c.ramifications[0].first, c.ramifications[1].first, 2);
  // echelon form of <x0^2, x1^2>
  EXPECT_EQ(r.samples[0].f(), expected.g());
  EXPECT_EQ(r.samples[0].f().coeffs(), (std::vector<Residue>{K.one(), K.zero(), K.zero()}));
  EXPECT_EQ(r.samples[0].g().coeffs(), (std::vector<Residue>{K.zero(), K.zero(), K.one()}));
}

TEST(Search, SingleIncidenceFrozenValues) {
  const PrimeField K(5);
  SearchConstraint c;
  c.incidences.push_back(geometry::sym_point(FqPoint::affine(K, K.one()), FqPoint::affine(K, K.from_int(2))));
  EXPECT_EQ(search_pencils_ffield(2, K, c).count, 6u);
  EXPECT_EQ(search_pencils_ffield(3, K, c).count, 181u);
  EXPECT_EQ(search_pencils_ffield(3, K, c).count, meeting_subspace(3, 5, 2));
}

TEST(Search, IncidenceAndRamificationMatchSubspaceCounts) {
  fixtures::Inputs in(61);
  for (std::uint32_t q : {7u, 11u, 13u})
    for (int k = 2; k <= 4; ++k) {
      const PrimeField K(q);
      const auto p = in.point(K);
      auto r = in.point(K);
      while (r == p) r = in.point(K);
      SearchConstraint inc;
      inc.incidences.push_back(geometry::sym_point(p, r));
      EXPECT_EQ(search_pencils_ffield(k, K, inc).count, meeting_subspace(k, q, 2));
      // a non-split pair: roots of an irreducible quadratic
      if (k <= 3) {
        Residue nonsquare = K.one();
        for (std::uint32_t c = 2; c < q; ++c) {
          bool square = false;
          for (std::uint32_t x = 1; x < q && !square; ++x) square = K.element(x) * K.element(x) == K.element(c);
          if (!square) {
            nonsquare = K.element(c);
            break;
          }
        }
        SearchConstraint conj;
        conj.incidences.emplace_back(K, K.one(), K.zero(), -nonsquare);  // x^2 - n
        EXPECT_EQ(search_pencils_ffield(k, K, conj).count, meeting_subspace(k, q, 2));
      }
      for (int e = 2; e <= k; ++e) {
        SearchConstraint ram;
        ram.ramifications.emplace_back(p, e);
        EXPECT_EQ(search_pencils_ffield(k, K, ram).count, meeting_subspace(k, q, e));
      }
    }
}

TEST(Search, TotalRamificationIsUniqueForEveryPair) {
  for (std::uint32_t q : {5u, 7u})
    for (int k : {2, 3}) {
      const PrimeField K(q);
      for (std::uint32_t i = 0; i <= q; ++i)
        for (std::uint32_t j = i + 1; j <= q; ++j) {
          auto point = [&](std::uint32_t t) { return t == q ? FqPoint::infinity(K) : FqPoint::affine(K, K.element(t)); };
          SearchConstraint c;
          c.ramifications = {{point(i), k}, {point(j), k}};
          const auto r = search_pencils_ffield(k, K, c);
          ASSERT_EQ(r.count, 1u);
          const auto expected = geometry::total_ramification_pencil(point(i), point(j), k);
          EXPECT_EQ(geometry::bezoutian_curve(r.samples[0]), geometry::bezoutian_curve(expected));
        }
    }
}

TEST(Search, LinearModeMatchesExhaustiveOracle) {
  fixtures::Inputs in(67);
  for (std::uint32_t q : {5u, 7u})
    for (int k : {2, 3}) {
      const PrimeField K(q);
      for (int trial = 0; trial < 6; ++trial) {
        SearchConstraint c;
        const int incidences = static_cast<int>(in.integer(0, 2));
        for (int i = 0; i < incidences; ++i) c.incidences.push_back(geometry::sym_point(in.point(K), in.point(K)));
        const int rams = static_cast<int>(in.integer(0, 2));
        for (int i = 0; i < rams; ++i) c.ramifications.emplace_back(in.point(K), static_cast<int>(in.integer(2, k)));
        expect_same(search_pencils_ffield(k, K, c), search_pencils_ffield(k, K, c, exhaustive()));
      }
      expect_same(search_pencils_ffield(k, K, {}), search_pencils_ffield(k, K, {}, exhaustive()));
    }
}

TEST(Search, MultipleBasePointStratum) {
  // base points of multiplicity 2 need k >= 3
  const PrimeField K5(5), K7(7);
  EXPECT_EQ(search_pencils_ffield(2, K5, {}).multiple_base_point_count, 0u);
  EXPECT_EQ(search_pencils_ffield(3, K5, {}).multiple_base_point_count, 6u);
  EXPECT_EQ(search_pencils_ffield(3, K7, {}).multiple_base_point_count, 8u);
  // for k = 4: pencils h^2 <a, b> with h linear, a, b quadratic, plus the
  // pencils divisible by an irreducible quadratic squared
  const auto r = search_pencils_ffield(4, K5, {});
  const auto o = search_pencils_ffield(4, K5, {}, exhaustive());
  EXPECT_EQ(r.multiple_base_point_count, o.multiple_base_point_count);
}

TEST(Search, ResultsIndependentOfJobs) {
  const PrimeField K(11);
  SearchConstraint c;
  c.incidences.push_back(geometry::sym_point(FqPoint::affine(K, K.one()), FqPoint::infinity(K)));
  c.ramifications.emplace_back(FqPoint::affine(K, K.from_int(3)), 2);
  SearchOptions par;
  par.jobs = 4;
  expect_same(search_pencils_ffield(4, K, c), search_pencils_ffield(4, K, c, par));
}

TEST(Search, SamplesAreLexFirstAndCapped) {
  const PrimeField K(7);
  SearchOptions o;
  o.max_samples = 5;
  const auto r = search_pencils_ffield(3, K, {}, o);
  EXPECT_EQ(r.samples.size(), 5u);
  const auto all = search_pencils_ffield(3, K, {}, exhaustive());
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(r.samples[i].f(), all.samples[i].f());
}

TEST(Search, BudgetAndArgumentErrors) {
  const PrimeField K(101);
  SearchOptions tiny;
  tiny.budget = 10;
  try {
    search_pencils_ffield(3, K, {}, tiny);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ResourceLimit);
  }
  const PrimeField K3(3);
  EXPECT_THROW(search_pencils_ffield(3, K3, {}), Error);
  SearchConstraint c;
  c.ramifications.emplace_back(FqPoint::affine(K, K.one()), 5);
  EXPECT_THROW(search_pencils_ffield(3, K, c), Error);
}

TEST(Estimate, Examples) {
  const auto g = dimension_estimate({{5, 806}, {7, 2850}});
  EXPECT_EQ(g.nearest, 4);
  EXPECT_NEAR(g.raw, std::log(2850.0 / 806.0) / std::log(7.0 / 5.0), 1e-12);
  EXPECT_NEAR(g.rounded.get_d(), g.raw, 1e-6);
  EXPECT_NEAR(g.residual, g.raw - 4, 1e-12);

  const auto exact = dimension_estimate({{31, 961}, {101, 10201}});
  EXPECT_EQ(exact.rounded, Rational(2));
  EXPECT_EQ(exact.nearest, 2);

  const auto fit = dimension_estimate({{5, 125}, {7, 343}, {11, 1331}});
  EXPECT_NEAR(fit.raw, 3.0, 1e-9);
}

TEST(Estimate, Errors) {
  try {
    dimension_estimate({{7, 10}, {7, 12}});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
  try {
    dimension_estimate({{7, 10}, {11, 0}});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroCount);
  }
  EXPECT_THROW(dimension_estimate({{7, 10}}), Error);
}
