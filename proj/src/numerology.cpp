#include "bnint/numerology.hpp"

#include <array>

namespace bnint {

void BNIndex::validate() const {
  if (r < 2) throw DomainError("ambient dimension r must be at least 2, got " + std::to_string(r));
  if (d < 1) throw DomainError("degree d must be at least 1, got " + std::to_string(d));
  if (g < 0) throw DomainError("genus g must be nonnegative, got " + std::to_string(g));
}

void TwistSpec::validate() const {
  if (k < 0) throw DomainError("twist k must be nonnegative, got " + std::to_string(k));
  if (n < 1) throw DomainError("hypersurface degree n must be positive, got " + std::to_string(n));
}

namespace {

Integer z(std::int64_t v) { return Integer(static_cast<long>(v)); }

void require_twist(std::int64_t k) {
  if (k < 0) throw DomainError("twist k must be nonnegative, got " + std::to_string(k));
}

}  // namespace

Integer rho(const BNIndex& ix) {
  ix.validate();
  const Integer r = z(ix.r);
  return (r + 1) * z(ix.d) - r * z(ix.g) - r * (r + 1);
}

Integer moduli_dim(const BNIndex& ix) {
  ix.validate();
  const Integer r = z(ix.r);
  return (r + 1) * z(ix.d) - (r - 3) * (z(ix.g) - 1);
}

Integer normal_bundle_degree(const BNIndex& ix, std::int64_t k) {
  ix.validate();
  require_twist(k);
  const Integer r = z(ix.r);
  const Integer d = z(ix.d);
  return (r + 1) * d + 2 * (z(ix.g) - 1) - z(k) * (r - 1) * d;
}

Integer chi_twisted_normal(const BNIndex& ix, std::int64_t k) {
  // Riemann-Roch for a bundle of rank r-1.
  return normal_bundle_degree(ix, k) + (z(ix.r) - 1) * (1 - z(ix.g));
}

std::int64_t max_general_hypersurface_degree(std::int64_t r) {
  if (r == 2) return 2;
  if (r < 2) throw DomainError("ambient dimension must be at least 2, got " + std::to_string(r));
  const Integer num = 3 * z(r) + 3;
  const Integer den = z(r) * z(r) - z(r);
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q.get_si();
}

bool is_nonspecial(const BNIndex& ix) {
  ix.validate();
  return z(ix.d) >= z(ix.g) + z(ix.r);
}

bool is_interpolation_exception(const BNIndex& ix) {
  static constexpr std::array<std::array<std::int64_t, 3>, 3> kExceptions{{{5, 2, 3}, {6, 2, 4}, {7, 2, 5}}};
  for (const auto& e : kExceptions) {
    if (ix.d == e[0] && ix.g == e[1] && ix.r == e[2]) return true;
  }
  return false;
}

bool twist_chi_gate(const BNIndex& ix, std::int64_t k) {
  return chi_twisted_normal(ix, k) >= (z(ix.r) - 1) * z(ix.g);
}

bool interpolation_gates(const BNIndex& ix, std::int64_t k) {
  if (k < 0 || k > 2) throw DomainError("interpolation gates are defined for k in {0,1,2}");
  return is_nonspecial(ix) && !is_interpolation_exception(ix) && twist_chi_gate(ix, k);
}

bool genus_two_case(const BNIndex& ix) {
  return ix.g == 2 && ix.d == ix.r + 2 && ix.r >= 3 && ix.r <= 5;
}

bool twist_vanishing_gate(const BNIndex& ix, std::int64_t k) {
  if (ix.r < 3) return false;
  return is_nonspecial(ix) && twist_chi_gate(ix, k);
}

Integer rho_canonical_reduction_delta(const BNIndex& ix) {
  ix.validate();
  if (ix.d <= ix.r || ix.g <= ix.r) {
    throw DomainError("canonical reduction needs d > r and g > r");
  }
  const BNIndex reduced{ix.r, ix.d - ix.r, ix.g - ix.r - 1};
  return rho(reduced) - rho(ix);
}

Integer hyperplane_curve_chi(std::int64_t r, std::int64_t d2, std::int64_t g2, std::int64_t k) {
  const Integer R = z(r);
  const Integer D = z(d2);
  return R * D - (R - 4) * (z(g2) - 1) - z(k) * (R - 2) * D;
}

Integer hyperplane_twist_h1(std::int64_t d2, std::int64_t g2, std::int64_t k) {
  if (k == 1) return z(g2);
  return z(g2) - 1 + (z(k) - 1) * z(d2);
}

std::string to_string(const Integer& value) { return value.get_str(); }

}  // namespace bnint
