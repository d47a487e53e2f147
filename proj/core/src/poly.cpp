#include "pencillab/poly.hpp"

#include <set>

namespace pencillab {

namespace {

std::vector<mpz_class> positive_divisors(mpz_class n) {
  if (n < 0) n = -n;
  require(n <= mpz_class("100000000000000"), ErrorCode::ResourceLimit,
          "coefficient too large for rational root search");
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::vector<std::pair<Rational, int>> rational_roots(const Poly<Rationals>& p) {
  std::vector<std::pair<Rational, int>> out;
  if (p.degree() <= 0) return out;
  const Rationals Q;
  Poly<Rationals> rest = p;
  int zero_mult = 0;
  while (rest.degree() > 0 && is_zero(rest.coeff(0))) {
    rest = *rest.divide_exact(Poly<Rationals>(Q, {Q.zero(), Q.one()}));
    ++zero_mult;
  }
  if (zero_mult) out.emplace_back(Rational(0), zero_mult);
  if (rest.degree() <= 0) return out;

  mpz_class lcm_den = 1;
  for (const auto& c : rest.coeffs()) lcm_den = lcm(lcm_den, mpz_class(c.get_den()));
  const mpz_class a0 = mpz_class(rest.coeff(0) * lcm_den);
  const mpz_class an = mpz_class(rest.leading() * lcm_den);

  std::set<Rational> candidates;
  for (const auto& r : positive_divisors(a0))
    for (const auto& s : positive_divisors(an)) {
      Rational c(r, s);
      c.canonicalize();
      candidates.insert(c);
      candidates.insert(-c);
    }
  for (const auto& c : candidates) {
    if (!is_zero(rest.eval(c))) continue;
    int mult = 0;
    Poly<Rationals> lin(Q, {-c, Q.one()});
    while (auto q = rest.divide_exact(lin)) {
      rest = *q;
      ++mult;
    }
    out.emplace_back(c, mult);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace pencillab
