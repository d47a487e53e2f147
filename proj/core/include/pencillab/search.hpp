#pragma once

// Point counts of pencil loci over F_q and dimension fits from them.
//
// Pencils of degree-k forms are enumerated as 2 x (k+1) matrices in reduced
// row echelon form, so every pencil is visited once. The default mode fixes
// the first row f; all constraints are then linear in the second row g and
// are counted by elimination. The exhaustive mode tests every pencil and
// serves as its oracle.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pencillab/field.hpp"
#include "pencillab/geometry.hpp"

namespace pencillab::search {

using FqPencil = geometry::Pencil<PrimeField>;
using FqPoint = geometry::ProjPoint<PrimeField>;
using FqSymPoint = geometry::SymPoint<PrimeField>;

struct SearchConstraint {
  /// The Bezoutian curve must pass through each point.
  std::vector<FqSymPoint> incidences;
  /// Some member vanishes to the given order at each point.
  std::vector<std::pair<FqPoint, int>> ramifications;
};

enum class SearchMode { Linear, Exhaustive };

struct SearchOptions {
  SearchMode mode = SearchMode::Linear;
  /// Maximum number of unit tests: first rows in linear mode, pencils in
  /// exhaustive mode. Checked before any work is done.
  std::uint64_t budget = 100'000'000;
  unsigned jobs = 1;
  std::size_t max_samples = 20;
};

struct SearchResult {
  std::uint64_t count = 0;
  /// Lexicographically first matches by (f, g) residue vectors in echelon form.
  std::vector<FqPencil> samples;
  /// Matches with a multiple base point; unavailable in linear mode for k > 7.
  std::optional<std::uint64_t> multiple_base_point_count;
  std::uint64_t tests = 0;
};

/// (q^(k+1)-1)(q^(k+1)-q) / ((q^2-1)(q^2-q)); ResourceLimit on overflow.
std::uint64_t grassmannian_pencil_count(int k, std::uint32_t q);

/// Number of first rows the linear mode visits.
std::uint64_t first_row_count(int k, std::uint32_t q);

SearchResult search_pencils_ffield(int k, const PrimeField& field, const SearchConstraint& constraint,
                                   const SearchOptions& options = {});

struct DimensionEstimate {
  double raw = 0;
  /// raw rounded to six decimals, as an exact fraction.
  Rational rounded;
  std::int64_t nearest = 0;
  double residual = 0;
};

/// Exponent d in count ~ c q^d: log-ratio for two primes, least-squares
/// slope in log-log coordinates for more.
DimensionEstimate dimension_estimate(const std::vector<std::pair<std::uint32_t, std::uint64_t>>& counts);

}  // namespace pencillab::search
