#pragma once

// Closed-form Brill-Noether, Hurwitz and Severi numerology for pencils with
// prescribed ramification. All values are exact machine integers with
// overflow checks; inputs are capped at 2^31 in magnitude.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace pencillab::numerology {

/// (g, k, e_1..e_n). Genus 0 is admitted so that covers of the line can be
/// described by the same type.
struct RamificationProfile {
  std::int64_t g = 0;
  std::int64_t k = 2;
  std::vector<std::int64_t> e;

  std::int64_t n() const { return static_cast<std::int64_t>(e.size()); }
  /// e = sum of the e_i.
  std::int64_t total() const;
};

/// Builds and validates a profile: g >= 0, k >= 2, 2 <= e_i <= k and the
/// Riemann-Hurwitz bound e <= 2(k-1+g)+n.
RamificationProfile make_profile(std::int64_t g, std::int64_t k, std::vector<std::int64_t> e);

/// Throws InvalidProfile / RiemannHurwitzViolation if an invariant fails.
void validate(const RamificationProfile& profile);

/// rho(g,r,d) = g - (r+1)(g-d+r). Defined for r >= 0 (r = 0 gives d).
std::int64_t brill_noether_number(std::int64_t g, std::int64_t r, std::int64_t d);

/// rho~ = 2k-2-g-e+n.
std::int64_t adjusted_rho(const RamificationProfile& profile);

/// Number of further simple branch points, 2(k-1+g)+n-e.
std::int64_t simple_branch_count(const RamificationProfile& profile);

/// 3g-3+n+rho~, the dimension of the Hurwitz space and of G^1.
std::int64_t hurwitz_dimension(const RamificationProfile& profile);

std::int64_t expected_codimension(const RamificationProfile& profile);
std::int64_t expected_pencil_dimension(const RamificationProfile& profile);

enum class VerdictTag { Dominant, GenericallyFinite, Unknown };

std::string_view verdict_name(VerdictTag tag);

struct HurwitzVerdict {
  VerdictTag tag = VerdictTag::Unknown;
  std::int64_t rho_tilde = 0;
  std::int64_t n_plus_rho = 0;
};

/// Dominance of the forgetful map to M_g. Unknown outside rho~ >= -g.
HurwitzVerdict hurwitz_to_moduli_verdict(const RamificationProfile& profile);

/// A polarized K3 surface of genus p, a node count delta < p, and k.
struct SeveriInput {
  std::int64_t p = 2;
  std::int64_t delta = 0;
  std::int64_t k = 2;
};

SeveriInput make_severi_input(std::int64_t p, std::int64_t delta, std::int64_t k);

/// floor((p-delta)/(2(k-1))).
std::int64_t severi_alpha(const SeveriInput& input);

/// Nonemptiness of the locus of delta-nodal curves whose normalization
/// carries a g^1_k. Both the Brill-Noether form rho(p,a,ka+delta) >= 0 and
/// the explicit inequality delta >= a(p-delta-(k-1)(a+1)) are evaluated; a
/// disagreement raises FormulationMismatch.
bool severi_nonempty(const SeveriInput& input);

struct DeltaZero {
  std::optional<std::int64_t> value;
  /// Whether nonemptiness holds for every delta in [value, p-1].
  bool upward_closed = true;
};

/// Least delta in [0, p-1] with nonempty Severi locus, found by linear scan.
DeltaZero delta_zero(std::int64_t p, std::int64_t k);

}  // namespace pencillab::numerology
