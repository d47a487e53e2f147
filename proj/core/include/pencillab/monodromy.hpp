#pragma once

// Cycle tuples in Sym(k) realizing a ramification profile over the line.
//
// Products are read left to right: in sigma_1 sigma_2 the permutation
// sigma_1 is applied first. Symbols are 1..k at every public boundary.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pencillab::monodromy {

class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int k);
  /// One-line notation, 1-based: images[i-1] is the image of i.
  static Permutation from_images(const std::vector<int>& images);
  /// The cycle (s_1 s_2 ... s_m) in Sym(k), 1-based symbols.
  static Permutation cycle(int k, std::span<const int> symbols);
  /// Product of the given cycles, left to right.
  static Permutation from_cycles(int k, const std::vector<std::vector<int>>& cycles);

  int size() const { return static_cast<int>(images_.size()); }
  /// Image of the 1-based symbol x.
  int operator()(int x) const { return images_[x - 1] + 1; }

  /// *this followed by next.
  Permutation then(const Permutation& next) const;
  Permutation inverse() const;
  bool is_identity() const;

  /// Nontrivial cycles, each starting at its smallest symbol, ordered by
  /// that symbol.
  std::vector<std::vector<int>> cycles() const;
  int cycle_count() const;  // including fixed points
  /// k minus the number of cycles: the minimal number of transpositions.
  int index() const { return size() - cycle_count(); }
  std::vector<int> support() const;
  bool is_single_cycle() const;
  bool moves(int x) const { return images_[x - 1] != x - 1; }

  /// "(1 2 3)(4 5)", or "()" for the identity.
  std::string to_string() const;
  std::vector<int> one_line() const;

  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<int> zero_based) : images_(std::move(zero_based)) {}
  std::vector<int> images_;  // 0-based
};

/// sigma_1 sigma_2 ... sigma_n.
Permutation product(std::span<const Permutation> sigmas, int k);

struct MonodromyTuple {
  int k = 0;
  std::vector<Permutation> sigmas;
  std::vector<int> orders;

  friend auto operator<=>(const MonodromyTuple&, const MonodromyTuple&) = default;
  friend bool operator==(const MonodromyTuple&, const MonodromyTuple&) = default;
};

/// Builds a tuple from 1-based cycles; each cycle must have length >= 2.
MonodromyTuple tuple_from_cycles(int k, const std::vector<std::vector<int>>& cycles);

struct TupleReport {
  bool product_is_identity = false;
  bool transitive = false;
  bool consecutive_nondisjoint = false;
  /// Riemann-Hurwitz genus, 2 - 2g = 2k - sum(index sigma_i), rounded down
  /// when the right side is odd.
  std::int64_t genus = 0;
  bool genus_integral = true;
  /// genus_integral && genus >= 0.
  bool genus_valid = true;
};

TupleReport verify_tuple(const MonodromyTuple& tuple);

/// Cycles sigma_1..sigma_n of orders e_i with identity product, transitive
/// group and consecutive cycles sharing a symbol. Requires
/// sum(e_i - 1) = 2(k-1); throws ProfileInfeasible otherwise. Deterministic.
MonodromyTuple construct_tuple(int k, const std::vector<int>& e);

/// Pads e with 2s so that sum(e_i - 1) = 2(k-1).
std::vector<int> pad_profile(int k, const std::vector<int>& e);

struct EnumerationLimits {
  int max_k = 6;
  int max_n = 6;
  /// Search nodes visited before giving up with ResourceLimit.
  std::uint64_t max_nodes = 200'000'000;
  unsigned jobs = 1;
};

/// All single-cycle tuples of the given orders with identity product and
/// transitive group, in lexicographic order. The last cycle is solved for
/// and partial products are pruned by a length/parity reachability test.
std::vector<MonodromyTuple> enumerate_tuples(int k, const std::vector<int>& e,
                                             const EnumerationLimits& limits = {});

/// Ground-truth variant: plain nested loops over every cycle choice.
std::vector<MonodromyTuple> enumerate_tuples_exhaustive(int k, const std::vector<int>& e,
                                                        const EnumerationLimits& limits = {});

/// Number of tuples, computed with sigma_1 fixed to (1 2 .. e_1) and scaled
/// by the size of its conjugacy class.
std::uint64_t count_tuples(int k, const std::vector<int>& e, const EnumerationLimits& limits = {});

/// Every cycle of length m in Sym(k), sorted by one-line notation.
std::vector<Permutation> all_cycles(int k, int m);

}  // namespace pencillab::monodromy
