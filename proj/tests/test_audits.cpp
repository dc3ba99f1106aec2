#include "doctest.h"

#include "bnint/audits.hpp"
#include "bnint/engine.hpp"

using namespace bnint;

namespace {

std::int64_t binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  std::int64_t out = 1;
  for (std::int64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

const ConditionCount& cc(const AuditReport& a) { return std::get<ConditionCount>(a.evidence); }
const DimensionDeficit& dd(const AuditReport& a) { return std::get<DimensionDeficit>(a.evidence); }

}  // namespace

TEST_SUITE("audits") {
  TEST_CASE("Riemann-Roch in the nonspecial range") {
    for (std::int64_t g = 0; g <= 20; ++g)
      for (std::int64_t deg = 2 * g - 1; deg <= 2 * g + 20; ++deg) CHECK(rr_curve(deg, g) == deg - g + 1);
    CHECK_THROWS_AS(rr_curve(2, 2), Refusal);
    CHECK_THROWS_AS(rr_curve(0, 1), Refusal);
    CHECK_THROWS_AS(rr_curve(5, -1), AuditError);
  }

  TEST_CASE("dimensions of form spaces") {
    for (std::int64_t a = 0; a <= 10; ++a) {
      CHECK(form_space_dim(FormAmbient::Plane, a) == binom(a + 2, 2));
      CHECK(form_space_dim(FormAmbient::Space, a) == binom(a + 3, 3));
      for (std::int64_t b = 0; b <= 10; ++b) CHECK(form_space_dim(FormAmbient::QuadricSurface, a, b) == (a + 1) * (b + 1));
    }
    CHECK_THROWS_AS(form_space_dim(FormAmbient::Plane, -1), AuditError);
  }

  TEST_CASE("condition counts") {
    ConditionCount c{"x", 10, 10, 0, 1};
    CHECK(c.not_general());
    c.slack = 1;
    CHECK_FALSE(c.not_general());
    c.members_required = 2;
    CHECK(c.not_general());
    c.slack = -4;
    c.members_required = 1;
    CHECK(c.not_general());
  }

  TEST_CASE("every exceptional case has not-general evidence") {
    const auto all = run_all_audits();
    REQUIRE(all.size() == exceptional_descriptors().size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      CHECK(all[i].id == exceptional_descriptors()[i].id);
      CHECK(all[i].not_general);
    }
    CHECK_THROWS_AS(run_audit({3, 2, 9, 6}), AuditError);
  }

  TEST_CASE("audit numbers") {
    const auto a41 = run_audit({3, 2, 4, 1});
    CHECK(cc(a41).points == 8);
    CHECK(cc(a41).h0 == 9);
    CHECK(cc(a41).slack == 1);
    CHECK(cc(a41).members_required == 2);
    CHECK(cc(run_audit({3, 2, 5, 2})).slack == -1);
    CHECK(cc(run_audit({3, 2, 6, 4})).slack == -3);
    CHECK(cc(run_audit({3, 2, 8, 6})).h0 == 16);
    CHECK(cc(run_audit({3, 2, 8, 6})).slack == 0);
    CHECK(cc(run_audit({3, 1, 6, 4})).h0 == 6);
    const auto a85 = run_audit({4, 1, 8, 5});
    CHECK(cc(a85).h0 == 10);
    CHECK(cc(a85).slack == 2);
    CHECK(cc(a85).members_required == 3);
    CHECK(cc(run_audit({4, 1, 10, 7})).slack == 0);
    const auto a62 = run_audit({3, 2, 6, 2});
    CHECK(dd(a62).total == 23);
    CHECK(dd(a62).ambient == 24);
    const auto a75 = run_audit({3, 2, 7, 5});
    CHECK(dd(a75).total == 27);
    CHECK(dd(a75).ambient == 28);
    const auto a96 = run_audit({4, 1, 9, 6});
    CHECK(evidence_kind(a96.evidence) == "ExternalFact");
    CHECK_FALSE(std::get<ExternalFact>(a96.evidence).citation.empty());
  }

  TEST_CASE("scroll case study") {
    const auto rep = scroll_case_study();
    CHECK(rep.checks.size() == 6);
    CHECK(rep.pass());
  }

  TEST_CASE("local determinant") {
    CHECK(local_determinant_check() == Jet{0, -4});
    CHECK(local_determinant_check().str() == "-4t");
    // Independent expansion along the middle column: only the entry 2t survives.
    const auto m = tangent_matrix();
    const Jet minor = m[0][0] * m[1][2] - m[0][2] * m[1][0];
    CHECK(Jet{0, 0} - m[2][1] * minor == local_determinant_check());
    CHECK((Jet{0, 1} * Jet{0, 1}).is_zero());
    CHECK(Jet{3, -1}.str() == "3 - t");
  }

  TEST_CASE("sections restricted from del Pezzo surfaces") {
    const auto c6 = SurfaceModel::del_pezzo(6);
    const auto cs = restricted_sections(c6, c6.parse("5L-2E1-E2-E3-E4-E5-E6"), c6.anticanonical(), 1);
    CHECK(cs.degree == 8);
    CHECK(cs.genus == 5);
    CHECK(cs.h1 == 0);
    CHECK(cs.h0 == 4);
    const auto c74 = restricted_sections(c6, c6.parse("5L-2E1-2E2-E3-E4-E5-E6"), c6.anticanonical(), 1);
    CHECK(c74.h0 == rr_curve(7, 4));
    const auto c75 = restricted_sections(c6, c6.parse("6L-E1-2E2-2E3-2E4-2E5-2E6"), c6.anticanonical(), 2);
    CHECK(c75.h0 == 10);
    CHECK_THROWS_AS(restricted_sections(c6, c6.anticanonical(), c6.anticanonical(), 0), AuditError);
    for (const auto& which : surface_restriction_cases()) CHECK_MESSAGE(surface_restriction_isomorphism_check(which).pass(), which);
    CHECK_THROWS_AS(surface_restriction_isomorphism_check("bogus"), AuditError);
  }
}
