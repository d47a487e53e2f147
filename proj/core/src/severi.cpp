#include "pencillab/severi.hpp"

#include <functional>

#include "pencillab/checked.hpp"

namespace pencillab::severi {

int AlphaTuple::delta() const {
  int d = 0;
  for (int j = 1; j <= static_cast<int>(alphas.size()); ++j) d += (j - 1) * alphas[j - 1];
  return d;
}

int AlphaTuple::genus() const {
  int g = 0;
  for (int a : alphas) g += a;
  return g;
}

namespace {

void check_args(int p, int delta, int k) {
  require(p >= 1, ErrorCode::InvalidArgument, "p must be positive");
  require(delta >= 0 && delta < p, ErrorCode::InvalidArgument, "delta must lie in [0, p)");
  require(k >= 2, ErrorCode::InvalidArgument, "k must be at least 2");
  checked::bounded(p, "p");
  checked::bounded(k, "k");
}

}  // namespace

std::vector<AlphaTuple> enumerate_alpha(int p, int delta, int k, std::size_t max_results) {
  check_args(p, delta, k);
  const int genus = p - delta;
  const long cap = 2L * (k - 1);
  std::vector<AlphaTuple> out;
  std::vector<int> alphas(p, 0);

  // Fill alpha_1, alpha_2, ... in increasing value order so that output is
  // lexicographic. `weight` is sum j alpha_j, `count` is sum alpha_j.
  std::function<void(int, int, int)> fill = [&](int j, int weight, int count) {
    if (weight == p) {
      if (count == genus) {
        require(out.size() < max_results, ErrorCode::ResourceLimit, "too many alpha tuples");
        out.push_back({p, alphas});
      }
      return;
    }
    if (j > p) return;
    const int room = p - weight;
    const int left = genus - count;
    // Remaining chains have length index >= j, so they need at least j
    // weight each and at most p weight overall.
    if (left <= 0 || static_cast<long>(left) * j > room || static_cast<long>(left) * p < room) return;
    const long most = std::min<long>(cap, std::min(room / j, left));
    for (int a = 0; a <= most; ++a) {
      alphas[j - 1] = a;
      fill(j + 1, weight + a * j, count + a);
    }
    alphas[j - 1] = 0;
  };
  fill(1, 0, 0);
  return out;
}

bool exists_alpha(int p, int delta, int k) {
  check_args(p, delta, k);
  const int genus = p - delta;
  const int cap = static_cast<int>(std::min<long>(2L * (k - 1), genus));
  // reach[w][c]: some choice of alpha_1..alpha_j gives weight w with c chains.
  std::vector<std::vector<char>> reach(p + 1, std::vector<char>(genus + 1, 0));
  reach[0][0] = 1;
  for (int j = 1; j <= p; ++j) {
    auto next = reach;
    for (int w = 0; w <= p; ++w)
      for (int c = 0; c <= genus; ++c) {
        if (!reach[w][c]) continue;
        for (int a = 1; a <= cap && w + a * j <= p && c + a <= genus; ++a) next[w + a * j][c + a] = 1;
      }
    reach = std::move(next);
  }
  return reach[p][genus];
}

}  // namespace pencillab::severi
