// One line per acceptance criterion: PASS/FAIL, wall time and limit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "pencillab/geometry.hpp"
#include "pencillab/monodromy.hpp"
#include "pencillab/numerology.hpp"
#include "pencillab/search.hpp"
#include "pencillab/severi.hpp"
#include "random_inputs.hpp"

using namespace pencillab;
using namespace pencillab::geometry;

namespace {

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    if (failures_.size() < 5) failures_.push_back(what);
    ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream s;
    s << checks_ << " checks";
    if (failed_) {
      s << ", " << failed_ << " failed:";
      for (const auto& f : failures_) s << " [" << f << "]";
    }
    return s.str();
  }

 private:
  std::uint64_t checks_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

std::string str(auto&&... parts) {
  std::ostringstream s;
  ((s << parts << ' '), ...);
  return s.str();
}

// --- 1 ---------------------------------------------------------------------

void severi_thresholds(Check& c) {
  using namespace numerology;
  c.expect(delta_zero(3, 2).value == 1, "delta0(3,2)");
  c.expect(delta_zero(4, 2).value == 1, "delta0(4,2)");
  c.expect(delta_zero(5, 3).value == 1, "delta0(5,3)");
  c.expect(delta_zero(5, 2).value == 2, "delta0(5,2)");
  c.expect(!severi_nonempty(make_severi_input(5, 1, 2)), "nonempty(5,1,2)");
  for (std::int64_t p = 2; p <= 40; ++p)
    for (std::int64_t k = 2; k <= 8; ++k)
      c.expect(severi_nonempty(make_severi_input(p, 0, k)) == (p <= 2 * k - 2), str("delta 0", p, k));
}

// --- 2, 3 -------------------------------------------------------------------

/// Ordered profiles with entries in [2, k], sum(e_i - 1) = 2(k-1), n <= max_n.
std::vector<std::vector<int>> balanced_profiles(int k, int max_n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == max_n) return;
    for (int e = 2; e <= k && e - 1 <= left; ++e) {
      cur.push_back(e);
      rec(left - (e - 1));
      cur.pop_back();
    }
  };
  rec(2 * (k - 1));
  return out;
}

std::string profile_text(int k, const std::vector<int>& e) {
  std::string s = "k=" + std::to_string(k) + " e=";
  for (int x : e) s += std::to_string(x) + ",";
  return s;
}

void monodromy_construction(Check& c) {
  using namespace monodromy;
  for (int k = 2; k <= 5; ++k)
    for (const auto& e : balanced_profiles(k, 5)) {
      try {
        const auto t = construct_tuple(k, e);
        bool shapes = t.sigmas.size() == e.size();
        for (std::size_t i = 0; shapes && i < e.size(); ++i)
          shapes = t.sigmas[i].is_single_cycle() && t.sigmas[i].index() == e[i] - 1;
        // independent product and orbit computation
        std::vector<int> image(k);
        for (int x = 1; x <= k; ++x) {
          int y = x;
          for (const auto& s : t.sigmas) y = s(y);
          image[x - 1] = y;
        }
        bool identity = true;
        for (int x = 1; x <= k; ++x) identity = identity && image[x - 1] == x;
        std::vector<bool> reached(k, false);
        std::vector<int> stack{1};
        reached[0] = true;
        while (!stack.empty()) {
          const int x = stack.back();
          stack.pop_back();
          for (const auto& s : t.sigmas)
            if (!reached[s(x) - 1]) {
              reached[s(x) - 1] = true;
              stack.push_back(s(x));
            }
        }
        bool transitive = true;
        for (bool r : reached) transitive = transitive && r;
        const auto report = verify_tuple(t);
        c.expect(shapes && identity && transitive && report.product_is_identity && report.transitive &&
                     report.genus == 0 && report.genus_valid,
                 profile_text(k, e));
      } catch (const Error& err) {
        c.expect(false, profile_text(k, e) + " threw " + err.what());
      }
    }
}

void monodromy_oracle(Check& c) {
  using namespace monodromy;
  for (int k = 2; k <= 4; ++k)
    for (const auto& e : balanced_profiles(k, 2 * (k - 1))) {
      bool constructed = true;
      try {
        construct_tuple(k, e);
      } catch (const Error&) {
        constructed = false;
      }
      const auto exhaustive = enumerate_tuples_exhaustive(k, e);
      c.expect(!exhaustive.empty() == constructed, profile_text(k, e));
      c.expect(enumerate_tuples(k, e) == exhaustive, profile_text(k, e) + " pruned vs exhaustive");
    }
  c.expect(enumerate_tuples(3, {3, 3}).size() == 2, "enumerate(3,(3,3))");
  c.expect(enumerate_tuples(2, {2, 2}).size() == 1, "enumerate(2,(2,2))");
}

// --- 4 ----------------------------------------------------------------------

template <class F>
BinaryForm<F> one_form(const F& K) {
  return BinaryForm<F>(K, std::vector<typename F::Element>{K.one()});
}

/// x0^2 - 2 x1^2, irreducible over Q and over F_101.
template <class F>
BinaryForm<F> irreducible_quadratic(const F& K) {
  return BinaryForm<F>(K, std::vector<typename F::Element>{K.one(), K.zero(), K.from_int(-2)});
}

template <class F>
void bezoutian_laws(Check& c, const F& K, std::uint64_t seed) {
  fixtures::Inputs in(seed);
  for (int k = 2; k <= 6; ++k)
    for (int i = 0; i < 200; ++i) {
      const int kind = i % 6;
      BinaryForm<F> common = one_form(K);
      if (kind == 1) common = BinaryForm<F>::vanishing_at(in.point(K));
      if (kind == 2 && k >= 3) common = BinaryForm<F>::vanishing_at(in.point(K)).pow(2);
      if (kind == 3 && k >= 5) common = irreducible_quadratic(K).pow(2);
      if (kind == 4 && k >= 3) common = irreducible_quadratic(K);
      auto pen = in.pencil_with_factor(K, k, common);
      const auto p = in.point(K);
      auto r = in.point(K);
      if (kind == 5 && k >= 2) {
        // plant {p, r} in one member
        while (r == p) r = in.point(K);
        auto f = BinaryForm<F>::vanishing_at(p) * BinaryForm<F>::vanishing_at(r);
        if (k > 2) f = f * in.form(K, k - 2);
        try {
          pen = Pencil<F>(f, pen.g());
        } catch (const Error&) {
          continue;
        }
      }
      const std::string tag = str(K.name(), "k", k, "i", i);
      const auto curve = bezoutian_curve(pen);
      c.expect(curve.degree() == k - 1, tag + "degree");

      // incidence: direct evaluation against the curve
      for (const auto& [x, y] : std::vector<std::pair<ProjPoint<F>, ProjPoint<F>>>{{p, r}, {p, p}, {r, in.point(K)}}) {
        const auto sf = same_fiber(pen, x, y);
        c.expect(sf.value == is_zero(curve.eval(sym_point(x, y))), tag + "same_fiber");
      }
      if (kind == 5) c.expect(same_fiber(pen, p, r).value, tag + "planted pair");

      // basis change
      typename F::Element a, b, cc, d;
      do {
        a = in.element(K), b = in.element(K), cc = in.element(K), d = in.element(K);
      } while (is_zero(a * d - b * cc));
      const Pencil<F> other(pen.f().scaled(a) + pen.g().scaled(b), pen.f().scaled(cc) + pen.g().scaled(d));
      c.expect(bezoutian_curve(other) == curve, tag + "basis invariance");
      c.expect(same_fiber(other, p, r).value == same_fiber(pen, p, r).value, tag + "basis same_fiber");
      for (int e = 2; e <= k; ++e)
        c.expect(has_ramification_at(other, p, e) == has_ramification_at(pen, p, e), tag + "basis ramification");

      // reducedness against an independent multiple-base-point test: some
      // irreducible factor of the common divisor appears squared
      const auto base = base_locus(pen);
      bool multiple = false;
      if (base.degree() >= 2) {
        const auto sq = squarefree_decomposition(base.dehomogenize());
        for (const auto& [factor, mult] : sq) multiple = multiple || mult >= 2;
        multiple = multiple || base.multiplicity_at_infinity() >= 2;
      }
      if ((kind == 2 && k >= 3) || (kind == 3 && k >= 5)) c.expect(multiple, tag + "planted multiple base point");
      c.expect(is_reduced_curve(curve) == !multiple, tag + "reduced iff no multiple base point");
    }
}

// --- 5 ----------------------------------------------------------------------

void wronskian_riemann_hurwitz(Check& c) {
  fixtures::Inputs in(505);
  const Rationals Q;
  int done = 0;
  while (done < 100) {
    const int k = 2 + done % 5;
    const auto pen = in.pencil(Q, k);
    if (base_locus(pen).degree() > 0) continue;
    ++done;
    const std::string tag = str("k", k, "i", done);
    const auto div = ramification_divisor(pen);
    c.expect(div.wronskian.degree() == 2 * k - 2, tag + "degree");
    c.expect(div.total_multiplicity == 2 * k - 2, tag + "total multiplicity");
    // affine f g' - g f', homogenized, must be proportional
    const auto f = pen.f().dehomogenize(), g = pen.g().dehomogenize();
    const auto affine = f * g.derivative() - g * f.derivative();
    const auto other = BinaryForm<Rationals>::homogenize(affine, 2 * k - 2).normalized();
    c.expect(other == div.wronskian, tag + "affine Wronskian");
    int counted = 0;
    for (const auto& [point, m] : div.points) counted += m;
    for (const auto& [factor, m] : div.residual) counted += m * factor.degree();
    c.expect(counted == 2 * k - 2, tag + "points and residual");
  }
}

// --- 6 ----------------------------------------------------------------------

void alpha_equivalence(Check& c) {
  for (int p = 2; p <= 20; ++p)
    for (int delta = 0; delta < p; ++delta)
      for (int k = 2; k <= 6; ++k) {
        const bool numeric = numerology::severi_nonempty(numerology::make_severi_input(p, delta, k));
        c.expect(severi::exists_alpha(p, delta, k) == numeric, str("p", p, "delta", delta, "k", k));
        c.expect(!severi::enumerate_alpha(p, delta, k).empty() == numeric, str("listing p", p, "delta", delta, "k", k));
      }
}

// --- 7 ----------------------------------------------------------------------

void unique_total_pencil(Check& c) {
  for (std::uint32_t q : {5u, 7u})
    for (int k : {2, 3}) {
      const PrimeField K(q);
      auto point = [&](std::uint32_t t) {
        return t == q ? ProjPoint<PrimeField>::infinity(K) : ProjPoint<PrimeField>::affine(K, K.element(t));
      };
      search::SearchOptions opts;
      opts.mode = search::SearchMode::Exhaustive;
      for (std::uint32_t i = 0; i <= q; ++i)
        for (std::uint32_t j = i + 1; j <= q; ++j) {
          search::SearchConstraint con;
          con.ramifications = {{point(i), k}, {point(j), k}};
          const auto r = search::search_pencils_ffield(k, K, con, opts);
          const std::string tag = str("q", q, "k", k, "pair", i, j);
          c.expect(r.count == 1, tag + "count " + std::to_string(r.count));
          if (r.count != 1) continue;
          const auto mine = total_ramification_pencil(point(i), point(j), k);
          c.expect(bezoutian_curve(r.samples.front()) == bezoutian_curve(mine), tag + "pencil");
        }
    }
}

// --- 8 ----------------------------------------------------------------------

std::uint64_t ipow(std::uint64_t q, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= q;
  return r;
}

void dimension_experiment(Check& c) {
  const int k = 3;
  // pairs on distinct fibers of a fixed rational pencil
  const std::vector<std::pair<Rational, Rational>> pairs{{Rational(3, 7), Rational(-8, 7)},
                                                         {Rational(8, 13), Rational(-15, 13)},
                                                         {Rational(-3, 7), Rational(-5, 7)},
                                                         {Rational(15, 13), Rational(-8, 13)}};
  const std::vector<std::uint32_t> primes{31, 101};
  for (std::size_t n = 0; n <= pairs.size(); ++n) {
    std::vector<std::pair<std::uint32_t, std::uint64_t>> counts;
    for (auto q : primes) {
      const PrimeField K(q);
      search::SearchConstraint con;
      for (std::size_t i = 0; i < n; ++i) {
        const auto a = reduce(K, pairs[i].first), b = reduce(K, pairs[i].second);
        con.incidences.emplace_back(K, K.one(), a + b, a * b);
      }
      const auto r = search::search_pencils_ffield(k, K, con);
      if (n == 0) {
        const std::uint64_t closed = (ipow(q, k + 1) - 1) * (ipow(q, k + 1) - q) / ((q * q - 1) * (q * q - q));
        c.expect(r.count == closed, str("Grassmannian q", q));
      }
      if (n == 1) {
        // pencils meeting the (k-1)-space of forms through both points
        const std::uint64_t closed = (ipow(q, k + 1) - 1) * (ipow(q, k + 1) - q) / ((q * q - 1) * (q * q - q));
        c.expect(r.count == closed - ipow(q, 2 * (k - 1)), str("one incidence q", q));
      }
      counts.emplace_back(q, r.count);
    }
    if (n > 0) {
      const auto est = search::dimension_estimate(counts);
      const double expected = 4.0 - static_cast<double>(n);
      std::printf("      %zu incidence(s): counts %llu, %llu; exponent %.4f, expected %.0f\n", n,
                  static_cast<unsigned long long>(counts[0].second), static_cast<unsigned long long>(counts[1].second),
                  est.raw, expected);
      c.expect(std::abs(est.raw - expected) <= 0.35, str("band n", n, "estimate", est.raw));
    }
  }
}

// --- 9 ----------------------------------------------------------------------

void total_pair_identity(Check& c) {
  for (std::int64_t g = 1; g <= 100; ++g)
    for (std::int64_t k = 2; k <= 100; ++k)
      c.expect(numerology::adjusted_rho(numerology::make_profile(g, k, {k, k})) == -g, str("g", g, "k", k));
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<void(Check&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "severi thresholds and delta = 0 law", 1, severi_thresholds},
      {2, "monodromy construction for balanced profiles", 10, monodromy_construction},
      {3, "enumeration oracle agreement", 60, monodromy_oracle},
      {4, "Bezoutian laws over Q and F_101", 30,
       [](Check& c) {
         bezoutian_laws(c, Rationals{}, 401);
         bezoutian_laws(c, PrimeField(101), 402);
       }},
      {5, "Wronskian degree and total ramification", 10, wronskian_riemann_hurwitz},
      {6, "alpha-tuples versus Severi inequality", 5, alpha_equivalence},
      {7, "unique totally ramified pencil", 60, unique_total_pencil},
      {8, "incidence dimension drop, k = 3", 600, dimension_experiment},
      {9, "two-point total ramification identity", 1, total_pair_identity},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("uncaught: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= cr.limit_seconds;
    const bool pass = check.ok() && in_time;
    failures += !pass;
    std::printf("%s criterion %d: %s (%.3f s, limit %.0f s; %s%s)\n", pass ? "PASS" : "FAIL", cr.id, cr.name, secs,
                cr.limit_seconds, check.summary().c_str(), in_time ? "" : "; over time limit");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
