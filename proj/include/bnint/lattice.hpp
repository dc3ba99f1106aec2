#pragma once

// Divisor-class arithmetic on the small polarized lattices that carry the
// surface arguments: del Pezzo blowups of P^2, P^1 x P^1, the cubic scroll
// and an arbitrary Gram matrix (used for the sextic K3).

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bnint {

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation has no certificate for its answer.
class Refusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Coeff = std::int64_t;

struct DivisorClass {
  std::vector<Coeff> coeffs;

  DivisorClass() = default;
  explicit DivisorClass(std::vector<Coeff> c) : coeffs(std::move(c)) {}

  std::size_t rank() const noexcept { return coeffs.size(); }
  bool is_zero() const noexcept;

  DivisorClass& operator+=(const DivisorClass& other);
  DivisorClass& operator-=(const DivisorClass& other);
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(Coeff s, DivisorClass a);
  friend DivisorClass operator-(DivisorClass a) { return Coeff{-1} * std::move(a); }
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
  friend auto operator<=>(const DivisorClass&, const DivisorClass&) = default;
};

enum class SurfaceKind { DelPezzoBlowup, QuadricSurface, ScrollLattice, GeneralPolarized };
enum class PolarizedTag { RationalSurface, K3 };

class SurfaceModel {
 public:
  /// Blowup of P^2 at k general points, basis (L, E1..Ek).
  static SurfaceModel del_pezzo(int k);
  /// P^1 x P^1 with basis (F1, F2); the class a F1 + b F2 has bidegree (a, b).
  static SurfaceModel quadric();
  /// Blowup of P^2 at one point, basis (L, E); embedded by 2L - E as the cubic scroll.
  static SurfaceModel scroll();
  static SurfaceModel general(std::vector<std::vector<Coeff>> gram, std::vector<Coeff> canonical,
                              PolarizedTag tag, std::vector<std::string> basis_names);

  SurfaceKind kind() const noexcept { return kind_; }
  PolarizedTag tag() const noexcept { return tag_; }
  bool is_rational() const noexcept { return tag_ == PolarizedTag::RationalSurface; }
  int blown_up_points() const noexcept { return points_; }
  std::size_t rank() const noexcept { return gram_.size(); }
  const std::vector<std::vector<Coeff>>& gram() const noexcept { return gram_; }
  const DivisorClass& canonical() const noexcept { return canonical_; }
  const std::vector<std::string>& basis_names() const noexcept { return names_; }
  std::string name() const;

  /// Parses "5L-2E1-E3", "3F1+2F2" or a bare coefficient list "5,-2,0".
  DivisorClass parse(std::string_view text) const;
  std::string format(const DivisorClass& c) const;
  DivisorClass basis_vector(std::size_t i, Coeff scale = 1) const;
  DivisorClass anticanonical() const { return -canonical_; }

  /// Re-checks symmetry and the kind-specific shape of the Gram matrix.
  void check_invariants() const;

 private:
  SurfaceModel() = default;

  SurfaceKind kind_ = SurfaceKind::GeneralPolarized;
  PolarizedTag tag_ = PolarizedTag::RationalSurface;
  int points_ = 0;
  std::vector<std::vector<Coeff>> gram_;
  DivisorClass canonical_;
  std::vector<std::string> names_;
};

struct Positivity {
  bool nef = false;
  bool big = false;
  bool ample = false;
  friend bool operator==(const Positivity&, const Positivity&) = default;
};

struct K3Stats {
  Coeff genus = 0;
  Coeff degree = 0;
  Coeff h0 = 0;
};

Coeff intersect(const SurfaceModel& s, const DivisorClass& a, const DivisorClass& b);
Coeff self_intersection(const SurfaceModel& s, const DivisorClass& c);
Coeff adjunction_genus(const SurfaceModel& s, const DivisorClass& c);
Coeff anticanonical_degree(const SurfaceModel& s, const DivisorClass& c);

/// All (-1)-classes; memoized per blowup count.
const std::vector<DivisorClass>& enumerate_lines(const SurfaceModel& s);

/// Bound on the L-coefficient of a (-1)-class on a blowup at k <= 8 points,
/// from (3a - 1)^2 <= k (a^2 + 1).
Coeff line_search_degree_bound(int k);

Positivity positivity(const SurfaceModel& s, const DivisorClass& c);
bool kv_vanishing_certificate(const SurfaceModel& s, const DivisorClass& b);

/// How an h^0 value was certified.
struct H0Certificate {
  Coeff h0 = 0;
  DivisorClass moving_part;                 // nef class whose Riemann-Roch gives h0
  std::vector<DivisorClass> fixed_lines;    // (-1)-curves split off, in order
  bool not_effective = false;               // negative degree against an ample class
};

H0Certificate h0_certificate(const SurfaceModel& s, const DivisorClass& c);
Coeff h0_rational(const SurfaceModel& s, const DivisorClass& c);

/// Generators of the basepoint-free semigroup used to exhibit free linear series.
std::vector<DivisorClass> bpf_generators(const SurfaceModel& s);
std::optional<std::vector<DivisorClass>> bpf_decompose(const SurfaceModel& s, const DivisorClass& c);

K3Stats k3_stats(const SurfaceModel& s, const DivisorClass& c, const DivisorClass& h);

Coeff restricted_degree(const SurfaceModel& s, const DivisorClass& c, const DivisorClass& b,
                        Coeff point_shift);

/// A class plus a signed count of marked points, for restrictions to a curve.
struct ShiftedClass {
  DivisorClass cls;
  Coeff point_shift = 0;
  friend ShiftedClass operator+(const ShiftedClass& a, const ShiftedClass& b) {
    return {a.cls + b.cls, a.point_shift + b.point_shift};
  }
  friend bool operator==(const ShiftedClass&, const ShiftedClass&) = default;
};

}  // namespace bnint
