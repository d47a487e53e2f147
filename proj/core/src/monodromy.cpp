#include "pencillab/monodromy.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <string>
#include <thread>

#include "pencillab/error.hpp"

namespace pencillab::monodromy {

Permutation Permutation::identity(int k) {
  std::vector<int> images(k);
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation Permutation::from_images(const std::vector<int>& images) {
  const int k = static_cast<int>(images.size());
  std::vector<int> zero_based(k);
  std::vector<bool> seen(k, false);
  for (int i = 0; i < k; ++i) {
    const int y = images[i];
    require(y >= 1 && y <= k && !seen[y - 1], ErrorCode::InvalidArgument,
            "images do not form a permutation of 1.." + std::to_string(k));
    seen[y - 1] = true;
    zero_based[i] = y - 1;
  }
  return Permutation(std::move(zero_based));
}

Permutation Permutation::cycle(int k, std::span<const int> symbols) {
  auto p = identity(k);
  std::vector<bool> seen(k, false);
  for (int s : symbols) {
    require(s >= 1 && s <= k && !seen[s - 1], ErrorCode::InvalidArgument,
            "cycle symbols must be distinct and within 1.." + std::to_string(k));
    seen[s - 1] = true;
  }
  const auto m = symbols.size();
  for (std::size_t i = 0; i < m; ++i) p.images_[symbols[i] - 1] = symbols[(i + 1) % m] - 1;
  return p;
}

Permutation Permutation::from_cycles(int k, const std::vector<std::vector<int>>& cycles) {
  auto p = identity(k);
  for (const auto& c : cycles) p = p.then(cycle(k, c));
  return p;
}

Permutation Permutation::then(const Permutation& next) const {
  require(size() == next.size(), ErrorCode::InvalidArgument, "permutation sizes differ");
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[i] = next.images_[images_[i]];
  return Permutation(std::move(out));
}

Permutation Permutation::inverse() const {
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[images_[i]] = static_cast<int>(i);
  return Permutation(std::move(out));
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == static_cast<int>(start)) continue;
    std::vector<int> c;
    for (int x = static_cast<int>(start); !seen[x]; x = images_[x]) {
      seen[x] = true;
      c.push_back(x + 1);
    }
    out.push_back(std::move(c));
  }
  return out;
}

int Permutation::cycle_count() const {
  int count = 0;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (seen[start]) continue;
    ++count;
    for (int x = static_cast<int>(start); !seen[x]; x = images_[x]) seen[x] = true;
  }
  return count;
}

std::vector<int> Permutation::support() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) out.push_back(static_cast<int>(i) + 1);
  return out;
}

bool Permutation::is_single_cycle() const {
  auto cs = cycles();
  return cs.size() == 1;
}

std::string Permutation::to_string() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::string out;
  for (const auto& c : cs) {
    out += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(c[i]);
    }
    out += ')';
  }
  return out;
}

std::vector<int> Permutation::one_line() const {
  std::vector<int> out(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) out[i] = images_[i] + 1;
  return out;
}

Permutation product(std::span<const Permutation> sigmas, int k) {
  auto p = Permutation::identity(k);
  for (const auto& s : sigmas) p = p.then(s);
  return p;
}

MonodromyTuple tuple_from_cycles(int k, const std::vector<std::vector<int>>& cycles) {
  require(k >= 2, ErrorCode::InvalidArgument, "k must be at least 2");
  MonodromyTuple t;
  t.k = k;
  for (const auto& c : cycles) {
    require(c.size() >= 2, ErrorCode::InvalidArgument, "cycles must have length at least 2");
    t.sigmas.push_back(Permutation::cycle(k, c));
    t.orders.push_back(static_cast<int>(c.size()));
  }
  return t;
}

TupleReport verify_tuple(const MonodromyTuple& t) {
  TupleReport r;
  r.product_is_identity = product(t.sigmas, t.k).is_identity();

  std::vector<int> parent(t.k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& s : t.sigmas)
    for (int x = 1; x <= t.k; ++x) parent[find(x - 1)] = find(s(x) - 1);
  r.transitive = true;
  for (int x = 0; x < t.k; ++x)
    if (find(x) != find(0)) r.transitive = false;

  r.consecutive_nondisjoint = true;
  for (std::size_t i = 0; i + 1 < t.sigmas.size(); ++i) {
    bool shared = false;
    for (int x = 1; x <= t.k && !shared; ++x)
      shared = t.sigmas[i].moves(x) && t.sigmas[i + 1].moves(x);
    if (!shared) r.consecutive_nondisjoint = false;
  }

  std::int64_t twice_genus = 2 - 2 * std::int64_t{t.k};
  for (const auto& s : t.sigmas) twice_genus += s.index();
  r.genus_integral = twice_genus % 2 == 0;
  r.genus = twice_genus >= 0 ? twice_genus / 2 : -((-twice_genus + 1) / 2);
  r.genus_valid = r.genus_integral && r.genus >= 0;
  return r;
}

namespace {

using Cycle = std::vector<int>;

Cycle rotate_to_front(Cycle c, int x) {
  std::rotate(c.begin(), std::find(c.begin(), c.end(), x), c.end());
  return c;
}

Cycle rotate_to_back(Cycle c, int x) {
  auto it = std::find(c.begin(), c.end(), x);
  std::rotate(c.begin(), it + 1, c.end());
  return c;
}

int smallest_common(const Cycle& a, const Cycle& b) {
  int best = 0;
  for (int x : a)
    if (std::find(b.begin(), b.end(), x) != b.end() && (best == 0 || x < best)) best = x;
  return best;
}

// Induction on k. The largest order is merged with a neighbouring entry,
// the smaller instance is solved in Sym(k-1), and the new symbol k is
// spliced into the pair so that the product is unchanged. Consecutive
// cycles keep sharing a symbol in the caller's order.
std::vector<Cycle> build(int k, const std::vector<int>& e) {
  const int n = static_cast<int>(e.size());
  if (std::all_of(e.begin(), e.end(), [](int x) { return x == 2; })) {
    std::vector<Cycle> out(n);
    for (int j = 1; j <= k - 1; ++j) out[j - 1] = {j, j + 1};
    for (int j = 1; j <= k - 1; ++j) out[k - 1 + j - 1] = out[k - j - 1];
    return out;
  }

  const int m = static_cast<int>(std::max_element(e.begin(), e.end()) - e.begin());
  const int partner = m + 1 < n ? m + 1 : m - 1;
  const int lo = std::min(m, partner);
  const int hi = std::max(m, partner);

  if (e[lo] >= 3 && e[hi] >= 3) {
    auto child = e;
    --child[lo];
    --child[hi];
    auto sub = build(k - 1, child);
    const int x = smallest_common(sub[lo], sub[hi]);
    auto a = rotate_to_front(sub[lo], x);
    auto b = rotate_to_back(sub[hi], x);
    a.push_back(k);
    b.insert(b.begin(), k);
    sub[lo] = std::move(a);
    sub[hi] = std::move(b);
    return sub;
  }

  if (e[hi] == 2) {
    // (x a_1..a_s k)(k x) = (x a_1..a_s)
    auto child = e;
    child.erase(child.begin() + hi);
    --child[lo];
    auto sub = build(k - 1, child);
    const bool has_right = lo + 1 < static_cast<int>(sub.size());
    const int x = has_right ? smallest_common(sub[lo], sub[lo + 1])
                            : *std::min_element(sub[lo].begin(), sub[lo].end());
    auto a = rotate_to_front(sub[lo], x);
    a.push_back(k);
    sub[lo] = std::move(a);
    sub.insert(sub.begin() + hi, Cycle{k, x});
    return sub;
  }

  // e[lo] == 2: (x k)(k b_1..b_t x) = (b_1..b_t x)
  auto child = e;
  child.erase(child.begin() + lo);
  --child[hi - 1];
  auto sub = build(k - 1, child);
  const int big = hi - 1;
  const int x = lo > 0 ? smallest_common(sub[lo - 1], sub[big])
                       : *std::min_element(sub[big].begin(), sub[big].end());
  auto b = rotate_to_back(sub[big], x);
  b.insert(b.begin(), k);
  sub[big] = std::move(b);
  sub.insert(sub.begin() + lo, Cycle{x, k});
  return sub;
}

void check_orders(int k, const std::vector<int>& e) {
  require(k >= 2, ErrorCode::ProfileInfeasible, "k must be at least 2");
  for (int x : e)
    require(x >= 2 && x <= k, ErrorCode::ProfileInfeasible,
            "cycle order " + std::to_string(x) + " outside [2, " + std::to_string(k) + "]");
}

long deficit(int k, const std::vector<int>& e) {
  long s = 0;
  for (int x : e) s += x - 1;
  return 2L * (k - 1) - s;
}

}  // namespace

MonodromyTuple construct_tuple(int k, const std::vector<int>& e) {
  check_orders(k, e);
  require(deficit(k, e) == 0, ErrorCode::ProfileInfeasible,
          "need sum(e_i - 1) = 2(k-1) = " + std::to_string(2 * (k - 1)));
  auto cycles = build(k, e);
  MonodromyTuple t;
  t.k = k;
  t.orders = e;
  for (const auto& c : cycles) t.sigmas.push_back(Permutation::cycle(k, c));
  return t;
}

std::vector<int> pad_profile(int k, const std::vector<int>& e) {
  check_orders(k, e);
  const long d = deficit(k, e);
  require(d >= 0, ErrorCode::ProfileInfeasible,
          "sum(e_i - 1) exceeds 2(k-1) = " + std::to_string(2 * (k - 1)));
  auto out = e;
  out.insert(out.end(), static_cast<std::size_t>(d), 2);
  return out;
}

std::vector<Permutation> all_cycles(int k, int m) {
  std::vector<Permutation> out;
  if (m < 2 || m > k) return out;
  std::vector<int> subset(m);
  std::iota(subset.begin(), subset.end(), 1);
  while (true) {
    // cyclic orders with the smallest symbol first
    std::vector<int> rest(subset.begin() + 1, subset.end());
    do {
      std::vector<int> c{subset[0]};
      c.insert(c.end(), rest.begin(), rest.end());
      out.push_back(Permutation::cycle(k, c));
    } while (std::next_permutation(rest.begin(), rest.end()));
    int i = m - 1;
    while (i >= 0 && subset[i] == k - m + i + 1) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < m; ++j) subset[j] = subset[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void check_limits(int k, const std::vector<int>& e, const EnumerationLimits& limits) {
  require(k <= limits.max_k && static_cast<int>(e.size()) <= limits.max_n, ErrorCode::ResourceLimit,
          "enumeration limited to k <= " + std::to_string(limits.max_k) + " and n <= " +
              std::to_string(limits.max_n));
  require(k >= 2, ErrorCode::InvalidArgument, "k must be at least 2");
  for (int x : e)
    require(x >= 2 && x <= k, ErrorCode::InvalidArgument,
            "cycle order " + std::to_string(x) + " outside [2, " + std::to_string(k) + "]");
}

bool transitive(int k, std::span<const Permutation> sigmas) {
  MonodromyTuple t{k, {sigmas.begin(), sigmas.end()}, {}};
  return verify_tuple(t).transitive;
}

struct Search {
  int k;
  std::vector<int> e;
  std::vector<std::vector<Permutation>> classes;
  std::vector<int> remaining_length;  // sum_{j >= i} (e_j - 1)
  std::uint64_t max_nodes;
  std::atomic<std::uint64_t>* nodes;
  bool collect;

  void run(std::vector<Permutation>& chosen, const Permutation& partial, std::size_t depth,
           std::vector<MonodromyTuple>& out, std::uint64_t& count) const {
    if (nodes->fetch_add(1, std::memory_order_relaxed) >= max_nodes)
      fail(ErrorCode::ResourceLimit, "tuple enumeration exceeded its node budget");
    const std::size_t n = e.size();
    if (depth + 1 == n) {
      auto last = partial.inverse();
      if (last.index() != e[depth] - 1 || !last.is_single_cycle()) return;
      chosen.push_back(last);
      if (transitive(k, chosen)) {
        ++count;
        if (collect) out.push_back({k, chosen, e});
      }
      chosen.pop_back();
      return;
    }
    for (const auto& s : classes[depth]) {
      auto next = partial.then(s);
      const int need = next.index();
      const int have = remaining_length[depth + 1];
      if (need > have || (have - need) % 2 != 0) continue;
      chosen.push_back(s);
      run(chosen, next, depth + 1, out, count);
      chosen.pop_back();
    }
  }
};

Search make_search(int k, const std::vector<int>& e, const EnumerationLimits& limits,
                   std::atomic<std::uint64_t>* nodes, bool collect) {
  Search s{k, e, {}, {}, limits.max_nodes, nodes, collect};
  for (int x : e) s.classes.push_back(all_cycles(k, x));
  s.remaining_length.assign(e.size() + 1, 0);
  for (int i = static_cast<int>(e.size()) - 1; i >= 0; --i)
    s.remaining_length[i] = s.remaining_length[i + 1] + e[i] - 1;
  return s;
}

// Splits the first level across workers; results concatenate in the order
// of the first cycle, so output does not depend on scheduling.
std::vector<MonodromyTuple> run_partitioned(const Search& search, const std::vector<Permutation>& firsts,
                                            unsigned jobs, std::uint64_t* total) {
  const std::size_t n = firsts.size();
  std::vector<std::vector<MonodromyTuple>> parts(n);
  std::vector<std::uint64_t> counts(n, 0);
  std::vector<std::exception_ptr> errors(std::max(1u, jobs));
  auto worker = [&](unsigned id, unsigned stride) {
    try {
      for (std::size_t i = id; i < n; i += stride) {
        std::vector<Permutation> chosen{firsts[i]};
        const int need = firsts[i].index();
        const int have = search.remaining_length[1];
        if (need > have || (have - need) % 2 != 0) continue;
        search.run(chosen, firsts[i], 1, parts[i], counts[i]);
      }
    } catch (...) {
      errors[id] = std::current_exception();
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> threads;
    for (unsigned id = 0; id < jobs; ++id) threads.emplace_back(worker, id, jobs);
    for (auto& t : threads) t.join();
  }
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
  std::vector<MonodromyTuple> out;
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += counts[i];
    for (auto& t : parts[i]) out.push_back(std::move(t));
  }
  if (total) *total = sum;
  return out;
}

}  // namespace

std::vector<MonodromyTuple> enumerate_tuples(int k, const std::vector<int>& e,
                                             const EnumerationLimits& limits) {
  check_limits(k, e, limits);
  if (e.empty()) return {};
  std::atomic<std::uint64_t> nodes{0};
  if (e.size() == 1) {
    // a single nontrivial cycle never multiplies to the identity
    return {};
  }
  auto search = make_search(k, e, limits, &nodes, true);
  return run_partitioned(search, search.classes[0], limits.jobs, nullptr);
}

std::uint64_t count_tuples(int k, const std::vector<int>& e, const EnumerationLimits& limits) {
  check_limits(k, e, limits);
  if (e.size() < 2) return 0;
  std::atomic<std::uint64_t> nodes{0};
  auto search = make_search(k, e, limits, &nodes, false);
  std::vector<int> canonical(e[0]);
  std::iota(canonical.begin(), canonical.end(), 1);
  std::uint64_t fixed = 0;
  run_partitioned(search, {Permutation::cycle(k, canonical)}, 1, &fixed);
  return fixed * search.classes[0].size();
}

std::vector<MonodromyTuple> enumerate_tuples_exhaustive(int k, const std::vector<int>& e,
                                                        const EnumerationLimits& limits) {
  check_limits(k, e, limits);
  std::vector<std::vector<Permutation>> classes;
  long double total = 1;
  for (int x : e) {
    classes.push_back(all_cycles(k, x));
    total *= static_cast<long double>(classes.back().size());
  }
  require(total <= static_cast<long double>(limits.max_nodes), ErrorCode::ResourceLimit,
          "exhaustive enumeration exceeds its candidate budget");
  std::vector<MonodromyTuple> out;
  if (e.empty()) return out;
  std::vector<std::size_t> idx(e.size(), 0);
  std::vector<Permutation> chosen(e.size());
  while (true) {
    for (std::size_t i = 0; i < e.size(); ++i) chosen[i] = classes[i][idx[i]];
    if (product(chosen, k).is_identity() && transitive(k, chosen)) out.push_back({k, chosen, e});
    std::size_t i = e.size();
    while (i > 0) {
      --i;
      if (++idx[i] < classes[i].size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
  }
}

}  // namespace pencillab::monodromy
