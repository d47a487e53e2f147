#include "pencillab/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "pencillab/error.hpp"
#include "pencillab/poly.hpp"

namespace pencillab::search {

using geometry::BinaryForm;

namespace {

using Row = std::vector<Residue>;
using Key = std::vector<std::uint32_t>;

std::uint64_t mul_or_fail(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::ResourceLimit, "count exceeds 64 bits");
  return r;
}

std::uint64_t add_or_fail(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::ResourceLimit, "count exceeds 64 bits");
  return r;
}

std::uint64_t power(std::uint64_t q, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r = mul_or_fail(r, q);
  return r;
}

/// Echelon shape: f has its pivot at i, g at j, f_j = 0, zeros to the left.
struct Block {
  int i = 0, j = 0;
  std::vector<int> f_free;  // l > i, l != j
  std::vector<int> g_free;  // l > j
};

std::vector<Block> make_blocks(int k) {
  std::vector<Block> out;
  for (int i = 0; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      Block b{i, j, {}, {}};
      for (int l = i + 1; l <= k; ++l)
        if (l != j) b.f_free.push_back(l);
      for (int l = j + 1; l <= k; ++l) b.g_free.push_back(l);
      out.push_back(std::move(b));
    }
  return out;
}

/// Constraints with everything that does not depend on the pencil
/// precomputed: B_{f,g}(W) = sum f_a g_b beta[a][b], and the Taylor
/// coefficients at P are rows of a matrix applied to the coefficients.
struct Prepared {
  PrimeField field;
  int k = 0;
  std::vector<std::vector<Row>> beta;
  std::vector<std::vector<Row>> taylor;
};

Prepared prepare(int k, const PrimeField& K, const SearchConstraint& c) {
  Prepared out{K, k, {}, {}};
  auto basis = [&](int l) {
    std::vector<Residue> coeffs(k + 1, K.zero());
    coeffs[l] = K.one();
    return BinaryForm<PrimeField>(K, coeffs);
  };
  for (const auto& w : c.incidences) {
    std::vector<Row> beta(k + 1, Row(k + 1, K.zero()));
    for (int a = 0; a <= k; ++a)
      for (int b = a + 1; b <= k; ++b) {
        const auto value = geometry::bezoutian_form(basis(a), basis(b)).eval(w);
        beta[a][b] = value;
        beta[b][a] = -value;
      }
    out.beta.push_back(std::move(beta));
  }
  for (const auto& [p, e] : c.ramifications) {
    const auto move = geometry::chart_at(p);
    std::vector<Row> t(e, Row(k + 1, K.zero()));
    for (int l = 0; l <= k; ++l) {
      const auto moved = basis(l).substitute(move);
      for (int r = 0; r < e; ++r) t[r][l] = moved.coeff(r);
    }
    out.taylor.push_back(std::move(t));
  }
  return out;
}

/// Linear equations on g (full coefficient vectors) for a fixed first row.
void equations_for(const Prepared& P, const Row& f, std::vector<Row>& rows) {
  const auto& K = P.field;
  const int n = P.k + 1;
  for (const auto& beta : P.beta) {
    Row r(n, K.zero());
    for (int a = 0; a < n; ++a) {
      if (is_zero(f[a])) continue;
      for (int b = 0; b < n; ++b) r[b] += f[a] * beta[a][b];
    }
    rows.push_back(std::move(r));
  }
  // rank [T(f); T(g)] <= 1, as the 2x2 minors T_a(f) T_b(g) - T_b(f) T_a(g).
  for (const auto& t : P.taylor) {
    const int e = static_cast<int>(t.size());
    Row tf(e, K.zero());
    bool vanishes = true;
    for (int c = 0; c < e; ++c) {
      for (int l = 0; l < n; ++l) tf[c] += t[c][l] * f[l];
      vanishes = vanishes && is_zero(tf[c]);
    }
    if (vanishes) continue;
    for (int a = 0; a < e; ++a)
      for (int b = a + 1; b < e; ++b) {
        Row r(n, K.zero());
        for (int l = 0; l < n; ++l) r[l] = tf[a] * t[b][l] - tf[b] * t[a][l];
        rows.push_back(std::move(r));
      }
  }
}

/// Rows forcing h^2 | g for the given repeated factors of f.
struct Factor {
  bool infinity = false;
  Poly<PrimeField> h;
};

void divisibility_rows(const PrimeField& K, int k, const std::vector<const Factor*>& factors,
                       std::vector<Row>& rows) {
  Poly<PrimeField> modulus = Poly<PrimeField>::constant(K, K.one());
  for (const auto* fac : factors) {
    if (fac->infinity) {
      for (int l : {k, k - 1}) {
        Row r(k + 1, K.zero());
        r[l] = K.one();
        rows.push_back(std::move(r));
      }
    } else {
      modulus = modulus * fac->h * fac->h;
    }
  }
  const int m = modulus.degree();
  if (m == 0) return;
  std::vector<Row> residues;  // t^l mod modulus
  for (int l = 0; l <= k; ++l) {
    auto r = Poly<PrimeField>::divmod(Poly<PrimeField>::monomial(K, K.one(), l), modulus).second;
    Row col(m, K.zero());
    for (int c = 0; c <= r.degree(); ++c) col[c] = r.coeff(c);
    residues.push_back(std::move(col));
  }
  for (int c = 0; c < m; ++c) {
    Row r(k + 1, K.zero());
    for (int l = 0; l <= k; ++l) r[l] = residues[l][c];
    rows.push_back(std::move(r));
  }
}

/// Irreducible h with h^2 | f, or nullopt when a cofactor is too large to
/// be certified irreducible by the absence of roots.
std::optional<std::vector<Factor>> repeated_factors(const BinaryForm<PrimeField>& f) {
  const auto& K = f.field();
  std::vector<Factor> out;
  if (f.multiplicity_at_infinity() >= 2) out.push_back({true, Poly<PrimeField>(K)});
  auto repeated = Poly<PrimeField>::constant(K, K.one());
  for (const auto& [a, mult] : squarefree_decomposition(f.dehomogenize()))
    if (mult >= 2) repeated = repeated * a;
  for (const auto& [root, mult] : roots_in_field(repeated)) {
    Poly<PrimeField> lin(K, {-root, K.one()});
    out.push_back({false, lin});
    repeated = *repeated.divide_exact(lin);
  }
  if (repeated.degree() > 3) return std::nullopt;
  if (repeated.degree() > 0) out.push_back({false, repeated.monic()});
  return out;
}

/// Affine solution space of the equations restricted to one block: g_j = 1,
/// g_l = 0 for l < j, free coordinates g_free. Pivots are taken from the
/// highest free index down, so every pivot coordinate depends only on free
/// coordinates of lower index; enumerating the free coordinates in
/// lexicographic order then lists whole vectors in lexicographic order.
class AffineSolutions {
 public:
  AffineSolutions(const PrimeField& K, const Block& block, const std::vector<Row>& rows)
      : K_(K), m_(static_cast<int>(block.g_free.size())) {
    for (const auto& r : rows) {
      Row eq(m_ + 1, K.zero());
      for (int c = 0; c < m_; ++c) eq[c] = r[block.g_free[c]];
      eq[m_] = -r[block.j];
      rows_.push_back(std::move(eq));
    }
    int rank = 0;
    const int nrows = static_cast<int>(rows_.size());
    for (int col = m_ - 1; col >= 0 && rank < nrows; --col) {
      int pivot = rank;
      while (pivot < nrows && is_zero(rows_[pivot][col])) ++pivot;
      if (pivot == nrows) continue;
      std::swap(rows_[pivot], rows_[rank]);
      const auto inv = K.inverse(rows_[rank][col]);
      for (auto& x : rows_[rank]) x = x * inv;
      for (int r = 0; r < nrows; ++r) {
        if (r == rank || is_zero(rows_[r][col])) continue;
        const auto factor = rows_[r][col];
        for (int c = 0; c <= m_; ++c) rows_[r][c] -= factor * rows_[rank][c];
      }
      pivot_col_.push_back(col);
      ++rank;
    }
    for (int r = rank; r < nrows; ++r)
      if (!is_zero(rows_[r][m_])) consistent_ = false;
    rows_.resize(rank);
    std::vector<char> is_pivot(m_, 0);
    for (int c : pivot_col_) is_pivot[c] = 1;
    for (int c = 0; c < m_; ++c)
      if (!is_pivot[c]) free_.push_back(c);
  }

  bool consistent() const { return consistent_; }
  int dimension() const { return static_cast<int>(free_.size()); }

  /// Up to `limit` solutions in lexicographic order, as free-coordinate values.
  std::vector<std::vector<std::uint32_t>> first(std::size_t limit) const {
    std::vector<std::vector<std::uint32_t>> out;
    if (!consistent_) return out;
    std::vector<std::uint32_t> params(free_.size(), 0);
    while (out.size() < limit) {
      std::vector<Residue> x(m_, K_.zero());
      for (std::size_t i = 0; i < free_.size(); ++i) x[free_[i]] = K_.element(params[i]);
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        auto value = rows_[r][m_];
        for (int c : free_) value -= rows_[r][c] * x[c];
        x[pivot_col_[r]] = value;
      }
      std::vector<std::uint32_t> values(m_);
      for (int c = 0; c < m_; ++c) values[c] = x[c].value;
      out.push_back(std::move(values));
      // odometer, last free coordinate fastest
      int pos = static_cast<int>(params.size()) - 1;
      while (pos >= 0 && ++params[pos] == K_.order()) params[pos--] = 0;
      if (pos < 0) break;
    }
    return out;
  }

 private:
  PrimeField K_;
  int m_;
  std::vector<Row> rows_;
  std::vector<int> pivot_col_;
  std::vector<int> free_;
  bool consistent_ = true;
};

struct Tally {
  std::uint64_t count = 0;
  std::uint64_t stratum = 0;
  bool stratum_known = true;
  std::uint64_t tests = 0;
  std::vector<Key> samples;

  void offer(Key key, std::size_t limit) {
    samples.push_back(std::move(key));
    if (samples.size() >= 4 * limit + 16) trim(limit);
  }
  void trim(std::size_t limit) {
    std::sort(samples.begin(), samples.end());
    if (samples.size() > limit) samples.resize(limit);
  }
};

Row full_row(const PrimeField& K, int k, int pivot, const std::vector<int>& free_pos,
             const std::vector<std::uint32_t>& free_values) {
  Row r(k + 1, K.zero());
  r[pivot] = K.one();
  for (std::size_t i = 0; i < free_pos.size(); ++i) r[free_pos[i]] = K.element(free_values[i]);
  return r;
}

Key make_key(const Row& f, const Row& g) {
  Key key;
  for (const auto& x : f) key.push_back(x.value);
  for (const auto& x : g) key.push_back(x.value);
  return key;
}

/// One unit of parallel work: a block, with the first free coordinate of f
/// fixed when there is one.
struct Task {
  int block = 0;
  std::optional<std::uint32_t> lead;
};

template <class Visit>
void for_each_first_row(const PrimeField& K, int k, const Block& b, const Task& task, Visit visit) {
  std::vector<std::uint32_t> values(b.f_free.size(), 0);
  std::size_t start = 0;
  if (task.lead) {
    values[0] = *task.lead;
    start = 1;
  }
  while (true) {
    visit(full_row(K, k, b.i, b.f_free, values));
    std::size_t pos = values.size();
    bool done = true;
    while (pos > start) {
      --pos;
      if (++values[pos] < K.order()) {
        done = false;
        break;
      }
      values[pos] = 0;
    }
    if (done) break;
  }
}

void linear_task(const Prepared& P, const Block& b, const Task& task, std::size_t limit, Tally& tally) {
  const auto& K = P.field;
  const int k = P.k;
  std::vector<Row> rows;
  for_each_first_row(K, k, b, task, [&](const Row& f) {
    ++tally.tests;
    rows.clear();
    equations_for(P, f, rows);
    AffineSolutions space(K, b, rows);
    if (!space.consistent()) return;
    const auto n = power(K.order(), space.dimension());
    tally.count = add_or_fail(tally.count, n);

    if (tally.stratum_known) {
      const BinaryForm<PrimeField> form(K, f);
      if (!geometry::is_squarefree(form)) {
        auto factors = repeated_factors(form);
        if (!factors) {
          tally.stratum_known = false;
        } else {
          // inclusion-exclusion over the repeated factors h with h^2 | g
          const std::size_t nf = factors->size();
          std::int64_t signed_total = 0;
          for (std::uint32_t mask = 1; mask < (1u << nf); ++mask) {
            std::vector<const Factor*> chosen;
            for (std::size_t i = 0; i < nf; ++i)
              if (mask >> i & 1u) chosen.push_back(&(*factors)[i]);
            auto sub_rows = rows;
            divisibility_rows(K, k, chosen, sub_rows);
            AffineSolutions sub(K, b, sub_rows);
            if (!sub.consistent()) continue;
            const auto c = static_cast<std::int64_t>(power(K.order(), sub.dimension()));
            signed_total += chosen.size() % 2 == 1 ? c : -c;
          }
          tally.stratum = add_or_fail(tally.stratum, static_cast<std::uint64_t>(signed_total));
        }
      }
    }

    if (tally.samples.size() >= limit) {
      // A new candidate can only enter if it beats the current worst.
      tally.trim(limit);
      Row g0(k + 1, K.zero());
      g0[b.j] = K.one();
      if (!(make_key(f, g0) < tally.samples.back())) return;
    }
    for (const auto& values : space.first(limit)) {
      Row g(k + 1, K.zero());
      g[b.j] = K.one();
      for (std::size_t c = 0; c < b.g_free.size(); ++c) g[b.g_free[c]] = K.element(values[c]);
      tally.offer(make_key(f, g), limit);
    }
  });
}

void exhaustive_task(const Prepared& P, const SearchConstraint& c, const Block& b, const Task& task,
                     std::size_t limit, Tally& tally) {
  const auto& K = P.field;
  const int k = P.k;
  for_each_first_row(K, k, b, task, [&](const Row& f) {
    std::vector<std::uint32_t> values(b.g_free.size(), 0);
    while (true) {
      ++tally.tests;
      const Row g = full_row(K, k, b.j, b.g_free, values);
      const FqPencil pencil(BinaryForm<PrimeField>(K, f), BinaryForm<PrimeField>(K, g));
      bool ok = true;
      if (!c.incidences.empty()) {
        const auto curve = geometry::bezoutian_curve(pencil);
        for (const auto& w : c.incidences) ok = ok && is_zero(curve.eval(w));
      }
      for (const auto& [p, e] : c.ramifications) ok = ok && geometry::has_ramification_at(pencil, p, e);
      if (ok) {
        ++tally.count;
        if (geometry::has_multiple_base_points(pencil)) ++tally.stratum;
        tally.offer(make_key(f, g), limit);
      }
      std::size_t pos = values.size();
      bool done = true;
      while (pos > 0) {
        --pos;
        if (++values[pos] < K.order()) {
          done = false;
          break;
        }
        values[pos] = 0;
      }
      if (done) break;
    }
  });
}

void validate(int k, const PrimeField& K, const SearchConstraint& c) {
  require(k >= 2, ErrorCode::InvalidArgument, "search needs k >= 2");
  require(K.order() > static_cast<std::uint32_t>(k), ErrorCode::InvalidArgument,
          "search needs q > k, got q = " + std::to_string(K.order()) + ", k = " + std::to_string(k));
  for (const auto& w : c.incidences)
    require(w.field() == K, ErrorCode::InvalidArgument, "incidence point over a different field");
  for (const auto& [p, e] : c.ramifications) {
    require(p.field() == K, ErrorCode::InvalidArgument, "ramification point over a different field");
    require(e >= 2 && e <= k, ErrorCode::InvalidArgument,
            "ramification order " + std::to_string(e) + " outside [2, " + std::to_string(k) + "]");
  }
}

}  // namespace

std::uint64_t grassmannian_pencil_count(int k, std::uint32_t q) {
  require(k >= 1 && q >= 2, ErrorCode::InvalidArgument, "Grassmannian needs k >= 1, q >= 2");
  mpz_class qk;
  mpz_ui_pow_ui(qk.get_mpz_t(), q, static_cast<unsigned long>(k + 1));
  const mpz_class num = (qk - 1) * (qk - q);
  const mpz_class den = (mpz_class(q) * q - 1) * (mpz_class(q) * q - q);
  const mpz_class r = num / den;
  require(r.fits_ulong_p() && sizeof(unsigned long) >= 8, ErrorCode::ResourceLimit, "count exceeds 64 bits");
  return r.get_ui();
}

std::uint64_t first_row_count(int k, std::uint32_t q) {
  std::uint64_t total = 0;
  for (const auto& b : make_blocks(k)) total = add_or_fail(total, power(q, static_cast<int>(b.f_free.size())));
  return total;
}

SearchResult search_pencils_ffield(int k, const PrimeField& field, const SearchConstraint& constraint,
                                   const SearchOptions& options) {
  validate(k, field, constraint);
  const bool linear = options.mode == SearchMode::Linear;
  const std::uint64_t work = linear ? first_row_count(k, field.order()) : grassmannian_pencil_count(k, field.order());
  require(work <= options.budget, ErrorCode::ResourceLimit,
          std::to_string(work) + " tests exceed the budget of " + std::to_string(options.budget));

  const Prepared prepared = prepare(k, field, constraint);
  const auto blocks = make_blocks(k);
  std::vector<Task> tasks;
  for (int bi = 0; bi < static_cast<int>(blocks.size()); ++bi) {
    if (blocks[bi].f_free.empty()) {
      tasks.push_back({bi, std::nullopt});
    } else {
      for (std::uint32_t v = 0; v < field.order(); ++v) tasks.push_back({bi, v});
    }
  }

  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(tasks.size())));
  std::vector<Tally> tallies(jobs);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  auto worker = [&](unsigned id) {
    try {
      for (std::size_t t = next++; t < tasks.size(); t = next++) {
        const auto& task = tasks[t];
        if (linear)
          linear_task(prepared, blocks[task.block], task, options.max_samples, tallies[id]);
        else
          exhaustive_task(prepared, constraint, blocks[task.block], task, options.max_samples, tallies[id]);
      }
    } catch (...) {
      errors[id] = std::current_exception();
      next = tasks.size();
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned id = 0; id < jobs; ++id) threads.emplace_back(worker, id);
    for (auto& t : threads) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  Tally total;
  for (auto& t : tallies) {
    total.count = add_or_fail(total.count, t.count);
    total.stratum = add_or_fail(total.stratum, t.stratum);
    total.stratum_known = total.stratum_known && t.stratum_known;
    total.tests += t.tests;
    for (auto& s : t.samples) total.samples.push_back(std::move(s));
  }
  total.trim(options.max_samples);

  SearchResult result;
  result.count = total.count;
  result.tests = total.tests;
  if (total.stratum_known) result.multiple_base_point_count = total.stratum;
  for (const auto& key : total.samples) {
    std::vector<Residue> f, g;
    for (int l = 0; l <= k; ++l) f.push_back(field.element(key[l]));
    for (int l = 0; l <= k; ++l) g.push_back(field.element(key[k + 1 + l]));
    result.samples.emplace_back(BinaryForm<PrimeField>(field, f), BinaryForm<PrimeField>(field, g));
  }
  return result;
}

DimensionEstimate dimension_estimate(const std::vector<std::pair<std::uint32_t, std::uint64_t>>& counts) {
  require(counts.size() >= 2, ErrorCode::InvalidArgument, "dimension estimate needs at least two counts");
  for (std::size_t i = 0; i < counts.size(); ++i) {
    require(counts[i].first >= 2, ErrorCode::InvalidArgument, "field size must be at least 2");
    for (std::size_t j = 0; j < i; ++j)
      require(counts[i].first != counts[j].first, ErrorCode::InvalidArgument,
              "field size " + std::to_string(counts[i].first) + " appears twice");
  }
  for (const auto& [q, c] : counts)
    require(c > 0, ErrorCode::ZeroCount, "no points over F_" + std::to_string(q) + "; the locus looks empty");

  double slope;
  if (counts.size() == 2) {
    slope = (std::log(static_cast<double>(counts[1].second)) - std::log(static_cast<double>(counts[0].second))) /
            (std::log(static_cast<double>(counts[1].first)) - std::log(static_cast<double>(counts[0].first)));
  } else {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(counts.size());
    for (const auto& [q, c] : counts) {
      const double x = std::log(static_cast<double>(q));
      const double y = std::log(static_cast<double>(c));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  DimensionEstimate out;
  out.raw = slope;
  out.rounded = Rational(mpz_class(static_cast<long>(std::llround(slope * 1e6))), mpz_class(1000000));
  out.rounded.canonicalize();
  out.nearest = std::llround(slope);
  out.residual = slope - static_cast<double>(out.nearest);
  return out;
}

}  // namespace pencillab::search
