#include "pencillab/numerology.hpp"

#include <algorithm>
#include <string>

#include "pencillab/checked.hpp"
#include "pencillab/error.hpp"

namespace pencillab::numerology {

using checked::add;
using checked::mul;
using checked::sub;

std::int64_t RamificationProfile::total() const {
  std::int64_t s = 0;
  for (auto ei : e) s = add(s, ei);
  return s;
}

void validate(const RamificationProfile& profile) {
  checked::bounded(profile.g, "g");
  checked::bounded(profile.k, "k");
  require(profile.g >= 0, ErrorCode::InvalidProfile, "genus must be nonnegative");
  require(profile.k >= 2, ErrorCode::InvalidProfile, "k must be at least 2");
  for (auto ei : profile.e) {
    checked::bounded(ei, "e_i");
    require(ei >= 2 && ei <= profile.k, ErrorCode::InvalidProfile,
            "ramification order " + std::to_string(ei) + " outside [2, " +
                std::to_string(profile.k) + "]");
  }
  auto bound = add(mul(2, add(sub(profile.k, 1), profile.g)), profile.n());
  require(profile.total() <= bound, ErrorCode::RiemannHurwitzViolation,
          "e = " + std::to_string(profile.total()) + " exceeds 2(k-1+g)+n = " +
              std::to_string(bound));
}

RamificationProfile make_profile(std::int64_t g, std::int64_t k, std::vector<std::int64_t> e) {
  RamificationProfile profile{g, k, std::move(e)};
  validate(profile);
  return profile;
}

std::int64_t brill_noether_number(std::int64_t g, std::int64_t r, std::int64_t d) {
  checked::bounded(g, "g");
  checked::bounded(r, "r");
  checked::bounded(d, "d");
  require(g >= 0 && r >= 0 && d >= 0, ErrorCode::InvalidArgument,
          "brill_noether_number needs g, r, d >= 0");
  return sub(g, mul(add(r, 1), add(sub(g, d), r)));
}

std::int64_t adjusted_rho(const RamificationProfile& p) {
  return add(sub(sub(sub(mul(2, p.k), 2), p.g), p.total()), p.n());
}

std::int64_t simple_branch_count(const RamificationProfile& p) {
  auto r = sub(add(mul(2, add(sub(p.k, 1), p.g)), p.n()), p.total());
  require(r >= 0, ErrorCode::RiemannHurwitzViolation,
          "negative number of simple branch points: " + std::to_string(r));
  return r;
}

std::int64_t hurwitz_dimension(const RamificationProfile& p) {
  return add(add(sub(mul(3, p.g), 3), p.n()), adjusted_rho(p));
}

std::int64_t expected_codimension(const RamificationProfile& p) {
  return std::max<std::int64_t>(0, -adjusted_rho(p));
}

std::int64_t expected_pencil_dimension(const RamificationProfile& p) {
  return std::max<std::int64_t>(0, adjusted_rho(p));
}

std::string_view verdict_name(VerdictTag tag) {
  switch (tag) {
    case VerdictTag::Dominant: return "Dominant";
    case VerdictTag::GenericallyFinite: return "GenericallyFinite";
    case VerdictTag::Unknown: return "Unknown";
  }
  return "Unknown";
}

HurwitzVerdict hurwitz_to_moduli_verdict(const RamificationProfile& p) {
  HurwitzVerdict v;
  v.rho_tilde = adjusted_rho(p);
  v.n_plus_rho = add(p.n(), v.rho_tilde);
  if (v.rho_tilde < -p.g)
    v.tag = VerdictTag::Unknown;
  else if (v.n_plus_rho >= 0)
    v.tag = VerdictTag::Dominant;
  else
    v.tag = VerdictTag::GenericallyFinite;
  return v;
}

SeveriInput make_severi_input(std::int64_t p, std::int64_t delta, std::int64_t k) {
  checked::bounded(p, "p");
  checked::bounded(delta, "delta");
  checked::bounded(k, "k");
  require(p >= 2, ErrorCode::InvalidArgument, "p must be at least 2");
  require(k >= 2, ErrorCode::InvalidArgument, "k must be at least 2");
  require(delta >= 0 && delta < p, ErrorCode::InvalidArgument, "need 0 <= delta < p");
  return {p, delta, k};
}

std::int64_t severi_alpha(const SeveriInput& in) {
  return sub(in.p, in.delta) / mul(2, sub(in.k, 1));
}

bool severi_nonempty(const SeveriInput& in) {
  const auto alpha = severi_alpha(in);
  const bool by_rho = brill_noether_number(in.p, alpha, add(mul(in.k, alpha), in.delta)) >= 0;
  const auto rhs = mul(alpha, sub(sub(in.p, in.delta), mul(sub(in.k, 1), add(alpha, 1))));
  const bool by_inequality = in.delta >= rhs;
  if (by_rho != by_inequality)
    fail(ErrorCode::FormulationMismatch,
         "Severi bound formulations disagree at p=" + std::to_string(in.p) +
             " delta=" + std::to_string(in.delta) + " k=" + std::to_string(in.k));
  return by_rho;
}

DeltaZero delta_zero(std::int64_t p, std::int64_t k) {
  make_severi_input(p, 0, k);
  DeltaZero result;
  for (std::int64_t delta = 0; delta < p; ++delta) {
    if (severi_nonempty({p, delta, k})) {
      result.value = delta;
      break;
    }
  }
  if (result.value) {
    for (std::int64_t delta = *result.value; delta < p; ++delta)
      if (!severi_nonempty({p, delta, k})) result.upward_closed = false;
  }
  return result;
}

}  // namespace pencillab::numerology
