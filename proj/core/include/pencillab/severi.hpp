#pragma once

// Limit-curve combinatorics for nodal curves degenerating to a sectional
// line with attached chains: alpha-tuples, chain bookkeeping and the test of
// whether a pencil on the line descends to the nodal model.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pencillab/error.hpp"
#include "pencillab/geometry.hpp"

namespace pencillab::severi {

/// alphas[j-1] chains of length 2j-1, j = 1..p.
struct AlphaTuple {
  int p = 0;
  std::vector<int> alphas;

  /// sum (j-1) alpha_j: the marked nodes.
  int delta() const;
  /// sum alpha_j: the geometric genus of the limit.
  int genus() const;

  friend auto operator<=>(const AlphaTuple&, const AlphaTuple&) = default;
  friend bool operator==(const AlphaTuple&, const AlphaTuple&) = default;
};

/// Every tuple with sum j alpha_j = p, sum (j-1) alpha_j = delta and
/// alpha_j <= 2(k-1), in lexicographic order of (alpha_1, .., alpha_p).
/// Throws ResourceLimit past max_results tuples.
std::vector<AlphaTuple> enumerate_alpha(int p, int delta, int k, std::size_t max_results = 1'000'000);

/// Nonemptiness of enumerate_alpha, decided by a reachability table over
/// (sum j alpha_j, sum alpha_j) rather than by listing.
bool exists_alpha(int p, int delta, int k);

template <class F>
struct ChainSpec {
  int m = 1;  // length 2m-1
  geometry::ProjPoint<F> a, b;
};

template <class F>
struct MarkedPoint {
  geometry::ProjPoint<F> point;
  int order = 2;
};

template <class F>
struct LimitCurveModel {
  int p = 0;
  int delta = 0;
  std::vector<std::pair<geometry::ProjPoint<F>, geometry::ProjPoint<F>>> node_pairs;
  std::vector<geometry::ProjPoint<F>> marked_points;
  std::vector<int> orders;

  int genus() const { return static_cast<int>(node_pairs.size()); }
};

/// The nodal model: the line with each chain's distinguished pair glued.
/// Chains must match alpha exactly (as a multiset of lengths) and every point
/// involved must be distinct.
template <class F>
LimitCurveModel<F> build_limit_curve(const AlphaTuple& alpha, const std::vector<ChainSpec<F>>& chains,
                                     const std::vector<MarkedPoint<F>>& marked) {
  require(static_cast<int>(alpha.alphas.size()) == alpha.p, ErrorCode::InvalidArgument,
          "alpha tuple must have p entries");
  std::vector<int> seen(alpha.p, 0);
  for (const auto& c : chains) {
    require(c.m >= 1 && c.m <= alpha.p, ErrorCode::ChainMismatch,
            "chain half-length " + std::to_string(c.m) + " outside [1, p]");
    ++seen[c.m - 1];
  }
  for (int j = 0; j < alpha.p; ++j)
    require(seen[j] == alpha.alphas[j], ErrorCode::ChainMismatch,
            "expected " + std::to_string(alpha.alphas[j]) + " chains of length " + std::to_string(2 * j + 1) +
                ", got " + std::to_string(seen[j]));

  std::vector<geometry::ProjPoint<F>> points;
  auto claim = [&](const geometry::ProjPoint<F>& x) {
    require(std::find(points.begin(), points.end(), x) == points.end(), ErrorCode::PointCollision,
            "a point of the limit curve is used twice");
    points.push_back(x);
  };
  LimitCurveModel<F> model;
  model.p = alpha.p;
  model.delta = alpha.delta();
  for (const auto& c : chains) {
    claim(c.a);
    claim(c.b);
    model.node_pairs.emplace_back(c.a, c.b);
  }
  for (const auto& mp : marked) {
    require(mp.order >= 2, ErrorCode::InvalidArgument, "ramification order must be at least 2");
    claim(mp.point);
    model.marked_points.push_back(mp.point);
    model.orders.push_back(mp.order);
  }
  if (model.genus() != alpha.p - model.delta) throw std::logic_error("limit genus is not p - delta");
  return model;
}

struct PairVerdict {
  bool same_fiber = false;
  bool base_point_ambiguity = false;
  /// Same-fiber verdict for the comparison pencil; a node is non-neutral
  /// for it exactly when this is false.
  std::optional<bool> neutral;
};

struct MarkedVerdict {
  bool ramified = false;
  bool base_point = false;
};

struct DescentReport {
  std::vector<PairVerdict> pairs;
  std::vector<MarkedVerdict> marked;
  bool all_pairs_descend = true;
  bool all_ramified = true;
  bool descends = true;
};

/// Whether the pencil on the line factors through the nodal model with the
/// prescribed ramification at the marked points.
template <class F>
DescentReport descends(const LimitCurveModel<F>& model, const geometry::Pencil<F>& pencil,
                       const std::optional<geometry::Pencil<F>>& comparison = std::nullopt) {
  for (int e : model.orders)
    require(e <= pencil.k(), ErrorCode::InvalidArgument,
            "ramification order " + std::to_string(e) + " exceeds pencil degree " + std::to_string(pencil.k()));
  DescentReport report;
  for (const auto& [y, z] : model.node_pairs) {
    const auto sf = geometry::same_fiber(pencil, y, z);
    PairVerdict v{sf.value, sf.base_point_ambiguity, std::nullopt};
    if (comparison) v.neutral = geometry::same_fiber(*comparison, y, z).value;
    report.all_pairs_descend = report.all_pairs_descend && v.same_fiber;
    report.pairs.push_back(v);
  }
  for (std::size_t i = 0; i < model.marked_points.size(); ++i) {
    const auto& x = model.marked_points[i];
    MarkedVerdict v{geometry::has_ramification_at(pencil, x, model.orders[i]), geometry::is_base_point(pencil, x)};
    report.all_ramified = report.all_ramified && v.ramified;
    report.marked.push_back(v);
  }
  report.descends = report.all_pairs_descend && report.all_ramified;
  return report;
}

}  // namespace pencillab::severi
