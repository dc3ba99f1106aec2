#include <set>

#include "doctest.h"

#include "bnint/report.hpp"

using namespace bnint;

TEST_SUITE("report") {
  TEST_CASE("traces survive a JSON round trip") {
    const Engine& e = Engine::builtin();
    int seen = 0;
    for (auto [r, n] : {std::pair{2, 1}, {2, 2}, {3, 1}, {3, 2}, {4, 1}})
      for (int g = 0; g <= 25; ++g)
        for (int d = 1; d <= 40; ++d) {
          const Trace t = e.derive({r, n, d, g});
          if (!t) continue;
          ++seen;
          const Json j = trace_to_json(t);
          const Trace back = trace_from_json(Json::parse(j.dump()));
          REQUIRE(trace_to_json(back) == j);
          REQUIRE(e.check_trace(back).empty());
          REQUIRE(trace_citations(back) == trace_citations(t));
        }
    CHECK(seen > 2000);
  }

  TEST_CASE("malformed trace JSON is rejected") {
    CHECK_THROWS_AS(trace_from_json(Json::array()), LedgerError);
    const Json cyc = Json::parse(
        R"([{"id":0,"case":{"r":3,"n":2,"d":4,"g":0},"rule":"AddLine","premises":[0]}])");
    CHECK_THROWS_AS(trace_from_json(cyc), LedgerError);
    const Json ids = Json::parse(
        R"([{"id":1,"case":{"r":3,"n":2,"d":4,"g":0},"rule":"AddLine","premises":[]}])");
    CHECK_THROWS_AS(trace_from_json(ids), LedgerError);
    const Json rule = Json::parse(
        R"([{"id":0,"case":{"r":3,"n":2,"d":4,"g":0},"rule":"Magic","premises":[]}])");
    CHECK_THROWS_AS(trace_from_json(rule), LedgerError);
  }

  TEST_CASE("verdict JSON shape") {
    const Engine& e = Engine::builtin();
    const Case q{4, 1, 19, 18};
    const Json j = verdict_json(q, e.classify(q), e);
    CHECK(j.at("query") == case_json(q));
    CHECK(j.at("verdict").at("kind") == "General");
    CHECK(j.at("trace").size() == trace_size(e.derive(q)));
    CHECK(j.at("citations").size() == 1);
    CHECK(j.at("citations")[0].at("id") == "p4-skew-lines");
    const Case x{3, 2, 8, 6};
    const Json jx = verdict_json(x, e.classify(x), e);
    CHECK(jx.at("verdict").at("kind") == "Exceptional");
    CHECK(jx.at("audits").size() == 1);
    CHECK(jx.at("audits")[0].at("verdict") == "NotGeneral");
    const Json env = envelope({"classify"}, jx);
    CHECK(env.at("schema") == kSchemaId);
    CHECK(env.at("version") == kArtifactVersion);
    CHECK(env.at("result") == jx);
  }

  TEST_CASE("tables do not depend on the thread count") {
    for (auto [r, n] : {std::pair{3, 2}, {3, 1}, {4, 1}}) {
      const Engine fresh1(Ledger::builtin());
      const Engine fresh8(Ledger::builtin());
      const Table a = build_table(fresh1, r, n, 40, 25, 1);
      const Table b = build_table(fresh8, r, n, 40, 25, 8);
      CHECK(render_table_text(a) == render_table_text(b));
      CHECK(table_json(a).dump() == table_json(b).dump());
      CHECK_FALSE(a.incomplete());
    }
    CHECK_THROWS_AS(build_table(Engine::builtin(), 5, 1, 10, 10), DomainError);
    CHECK_THROWS_AS(build_table(Engine::builtin(), 3, 2, 0, 10), DomainError);
    CHECK_THROWS_AS(build_table(Engine::builtin(), 3, 2, 10, kMaxSweepBound + 1), DomainError);
  }

  TEST_CASE("table contents") {
    const Table t = build_table(Engine::builtin(), 3, 2, 10, 8, 2);
    std::set<std::pair<std::int64_t, std::int64_t>> exceptional;
    for (const auto& c : t.cells)
      if (c.verdict == "Exceptional") exceptional.emplace(c.d, c.g);
    CHECK(exceptional == std::set<std::pair<std::int64_t, std::int64_t>>{{4, 1}, {5, 2}, {6, 2}, {6, 4}, {7, 5}, {8, 6}});
    const std::string text = render_table_text(t);
    CHECK(text.find("g=6   ...") != std::string::npos);
  }

  TEST_CASE("full verification") {
    const auto lines = verify_all({});
    CHECK(lines.size() > 50);
    for (const auto& l : lines) CHECK_MESSAGE(l.pass, (l.group + ": " + l.name + " " + l.detail));
    const Json j = verify_json(lines);
    CHECK(j.at("checks").size() == lines.size());
  }

  TEST_CASE("verification catches a bad K3 lattice") {
    VerifyOptions opts;
    opts.k3_gram = std::vector<std::vector<Coeff>>{{6, 4}, {3, -2}};
    const auto lines = verify_all(opts);
    CHECK(std::any_of(lines.begin(), lines.end(), [](const VerifyLine& l) { return !l.pass; }));
  }
}
