#pragma once

// Numeric evidence that each exceptional intersection is not a general
// point configuration, plus the small case studies the proofs rest on.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bnint/lattice.hpp"
#include "bnint/ledger.hpp"

namespace bnint {

class AuditError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// h^0 of a line bundle of degree deg on a genus-g curve, nonspecial range deg > 2g-2.
std::int64_t rr_curve(std::int64_t deg, std::int64_t g);

enum class FormAmbient { Plane, Space, QuadricSurface };
/// Dimension of the space of forms: plane/space degree a, or bidegree (a, b) on P^1 x P^1.
std::int64_t form_space_dim(FormAmbient ambient, std::int64_t a, std::int64_t b = 0);

/// The points lie on `members_required` independent members of a system with
/// h0 sections; general points lie on only max(h0 - points, 0).
struct ConditionCount {
  std::string system;
  std::int64_t points = 0;
  std::int64_t h0 = 0;
  std::int64_t slack = 0;  // h0 - points
  std::int64_t members_required = 1;
  bool not_general() const { return std::max<std::int64_t>(slack, 0) < members_required; }
};

struct DimensionDeficit {
  std::vector<std::pair<std::string, std::int64_t>> components;
  std::int64_t total = 0;
  std::int64_t ambient = 0;  // dim Sym^points of the surface
  bool not_general() const { return total < ambient; }
};

struct ExternalFact {
  std::string citation;
};

using AuditEvidence = std::variant<ConditionCount, DimensionDeficit, ExternalFact>;

struct AuditReport {
  Case id;
  AuditEvidence evidence;
  bool not_general = false;
  std::vector<std::string> notes;
};

std::string evidence_kind(const AuditEvidence& e);

AuditReport run_audit(const Case& id);
/// One report per exceptional case, in descriptor order.
std::vector<AuditReport> run_all_audits();

struct NamedCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct CheckReport {
  std::string name;
  std::vector<NamedCheck> checks;
  bool pass() const;
};

CheckReport scroll_case_study();

/// Degree-1 jets a + b t, i.e. polynomials modulo t^2.
struct Jet {
  std::int64_t c0 = 0;
  std::int64_t c1 = 0;
  friend Jet operator+(Jet x, Jet y) { return {x.c0 + y.c0, x.c1 + y.c1}; }
  friend Jet operator-(Jet x, Jet y) { return {x.c0 - y.c0, x.c1 - y.c1}; }
  friend Jet operator*(Jet x, Jet y) { return {x.c0 * y.c0, x.c0 * y.c1 + x.c1 * y.c0}; }
  friend bool operator==(Jet, Jet) = default;
  bool is_zero() const { return c0 == 0 && c1 == 0; }
  std::string str() const;
};

using JetMatrix = std::array<std::array<Jet, 3>, 3>;
Jet jet_determinant(const JetMatrix& m);
/// The matrix with rows (t-1, 0, -1), (t+1, 0, -1), (1, 2t, 0).
JetMatrix tangent_matrix();
Jet local_determinant_check();

/// h^0(O_C(m H)) for a curve class C on a del Pezzo surface with polarization H,
/// computed as m(C.H) - g + 1 + h^1, where h^1 = h^0(O_S(C - (m+1)H)) once
/// H^1(O_S(mH)) vanishes.
struct CurveSections {
  std::int64_t degree = 0;
  std::int64_t genus = 0;
  std::int64_t h1 = 0;
  std::int64_t h0 = 0;
};
CurveSections restricted_sections(const SurfaceModel& s, const DivisorClass& c, const DivisorClass& h,
                                  std::int64_t m);

/// Cases: "7-4-cubic", "8-5-cubic", "7-5-cubic", "9-5-quartic", "6-2-scroll".
CheckReport surface_restriction_isomorphism_check(const std::string& which);
const std::vector<std::string>& surface_restriction_cases();

}  // namespace bnint
