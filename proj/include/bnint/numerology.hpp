#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace bnint {

using Integer = mpz_class;

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ambient dimension, degree and genus of a map C -> P^r.
struct BNIndex {
  std::int64_t r = 0;
  std::int64_t d = 0;
  std::int64_t g = 0;

  /// Throws DomainError unless r >= 2, d >= 1, g >= 0.
  void validate() const;
  bool valid() const noexcept { return r >= 2 && d >= 1 && g >= 0; }

  friend bool operator==(const BNIndex&, const BNIndex&) = default;
};

/// Twist of the normal bundle by O(-k) and the hypersurface degree n.
struct TwistSpec {
  std::int64_t k = 0;
  std::int64_t n = 1;

  void validate() const;
};

Integer rho(const BNIndex& ix);
Integer moduli_dim(const BNIndex& ix);

/// Rank r-1 and degree (r+1)d + 2(g-1) of N_f; twisting by O(-k) removes k(r-1)d.
Integer normal_bundle_degree(const BNIndex& ix, std::int64_t k);
Integer chi_twisted_normal(const BNIndex& ix, std::int64_t k);

/// floor((3r+3)/(r^2-r)) for r >= 3; r = 2 is pinned to 2 (conics and lines both work).
std::int64_t max_general_hypersurface_degree(std::int64_t r);

// Sub-conditions of interpolation_gates, exposed for trace reporting.
bool is_nonspecial(const BNIndex& ix);                    // d >= g + r
bool is_interpolation_exception(const BNIndex& ix);       // (5,2,3), (6,2,4), (7,2,5)
bool twist_chi_gate(const BNIndex& ix, std::int64_t k);   // chi(N(-k)) >= (r-1) g

/// True iff N_f(-k) provably satisfies interpolation by the twist criterion.
bool interpolation_gates(const BNIndex& ix, std::int64_t k);

/// H^1(N_f(-k)) = 0 by the nonspecial interpolation argument. Unlike
/// interpolation_gates this admits the genus-two exceptions, whose vanishing
/// is proved separately (see genus_two_case).
bool twist_vanishing_gate(const BNIndex& ix, std::int64_t k);
bool genus_two_case(const BNIndex& ix);                   // d = r + 2, g = 2, r in {3,4,5}

/// rho(d - r, g - r - 1) - rho(d, g). Requires d > r and g > r.
Integer rho_canonical_reduction_delta(const BNIndex& ix);

/// Hypersurface-gluing side conditions: the Euler characteristic of the
/// twisted normal bundle of a curve of degree d2, genus g2 inside a hyperplane
/// of P^r, and the H^1 count of O_D(1-k).
Integer hyperplane_curve_chi(std::int64_t r, std::int64_t d2, std::int64_t g2, std::int64_t k);
Integer hyperplane_twist_h1(std::int64_t d2, std::int64_t g2, std::int64_t k);

std::string to_string(const Integer& value);

}  // namespace bnint
