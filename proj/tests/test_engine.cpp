#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "doctest.h"

#include "bnint/engine.hpp"

using namespace bnint;

namespace {

using DG = std::pair<std::int64_t, std::int64_t>;

// Membership oracle: a literal list of the exceptional cases and a direct
// evaluation of the Brill-Noether number.
const std::set<std::tuple<int, int, int, int>> kExceptional = {
    {3, 2, 4, 1}, {3, 2, 5, 2}, {3, 2, 6, 2}, {3, 2, 6, 4}, {3, 2, 7, 5},
    {3, 2, 8, 6}, {3, 1, 6, 4}, {4, 1, 8, 5}, {4, 1, 9, 6}, {4, 1, 10, 7}};

std::string oracle_verdict(int r, int n, int d, int g) {
  const bool pair_ok = (r == 2 && (n == 1 || n == 2)) || (r == 3 && (n == 1 || n == 2)) || (r == 4 && n == 1);
  if (!pair_ok || d < 1 || g < 0) return "Invalid";
  if ((r + 1) * d - r * g - r * (r + 1) < 0) return "Invalid";
  if (kExceptional.count({r, n, d, g})) return "Exceptional";
  return "General";
}

std::string ledger_text() {
  std::ifstream in(BNINT_LEDGER_FILE);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Removes the [entry] block with the given id.
std::string drop_entry(const std::string& text, const std::string& id) {
  const auto at = text.find("id = " + id + "\n");
  REQUIRE(at != std::string::npos);
  const auto begin = text.rfind("[entry]", at);
  auto end = text.find("[entry]", at);
  if (end == std::string::npos) end = text.size();
  return text.substr(0, begin) + text.substr(end);
}

Engine engine_from(const std::string& text) {
  return Engine(std::make_shared<const Ledger>(Ledger::parse(text)));
}

}  // namespace

TEST_SUITE("engine") {
  TEST_CASE("verdicts match the membership oracle") {
    const Engine& e = Engine::builtin();
    for (int r = 1; r <= 5; ++r)
      for (int n = 0; n <= 3; ++n)
        for (int d = -1; d <= 40; ++d)
          for (int g = -1; g <= 30; ++g) {
            const Verdict v = e.classify({r, n, d, g});
            REQUIRE(to_string(v.kind) == oracle_verdict(r, n, d, g));
            if (v.kind == Verdict::Kind::General) {
              REQUIRE(v.trace);
              REQUIRE(e.check_trace(v.trace).empty());
            }
          }
  }

  TEST_CASE("exceptional descriptors") {
    CHECK(exceptional_descriptors().size() == 10);
    for (const auto& [r, n, d, g] : kExceptional) {
      const auto* desc = find_exceptional({r, n, d, g});
      REQUIRE(desc != nullptr);
      CHECK_FALSE(desc->description.empty());
      CHECK(desc->audit_id == std::to_string(r) + "-" + std::to_string(n) + "-" + std::to_string(d) + "-" +
                                  std::to_string(g));
    }
    CHECK_FALSE(find_exceptional({4, 1, 10, 7})->remark.empty());
  }

  TEST_CASE("frontiers") {
    const Engine& e = Engine::builtin();
    CHECK(e.frontier(3, 2, 14) == std::vector<DG>{{5, 1}, {7, 2}, {6, 3}, {7, 4}, {8, 5}, {9, 6}, {9, 7},
                                                  {10, 9}, {11, 10}, {12, 12}, {13, 13}, {14, 14}});
    CHECK(e.frontier(3, 1, 6) == std::vector<DG>{{7, 5}, {8, 6}});
    CHECK(e.frontier(4, 1, 17) ==
          std::vector<DG>{{9, 5}, {10, 6}, {11, 7}, {12, 9}, {16, 15}, {17, 16}, {18, 17}});
    CHECK(e.frontier(2, 1, 20).empty());
    CHECK(e.frontier(2, 2, 20).empty());
    CHECK_THROWS_AS(e.frontier(5, 1, 3), DomainError);
    // Every frontier case is seeded directly by the ledger.
    for (auto [r, n, gm] : {std::tuple{3, 2, 14}, {3, 1, 6}, {4, 1, 17}})
      for (const auto& [d, g] : e.frontier(r, n, gm)) {
        const Case c{r, n, d, g};
        const auto* entry = e.ledger().find(c);
        REQUIRE(entry != nullptr);
        CHECK_FALSE(entry->is_wildcard());
        CHECK(e.derive(c)->rule == Rule::LedgerBase);
      }
  }

  TEST_CASE("no frontier beyond the ledger range") {
    const Engine& e = Engine::builtin();
    CHECK(e.frontier(3, 2, 40).size() == 12);
    CHECK(e.frontier(3, 1, 40).size() == 2);
    CHECK(e.frontier(4, 1, 40).size() == 7);
  }

  TEST_CASE("completeness audits") {
    const Engine& e = Engine::builtin();
    for (auto [r, n] : {std::pair{2, 1}, {2, 2}, {3, 1}, {3, 2}, {4, 1}}) CHECK(e.completeness_audit(r, n, 60, 40).empty());
  }

  TEST_CASE("missing ledger entries are detected") {
    const std::string text = ledger_text();
    {
      const Engine e = engine_from(drop_entry(text, "p3q-7-4"));
      const auto missing = e.completeness_audit(3, 2, 30, 20);
      REQUIRE_FALSE(missing.empty());
      CHECK(missing.front() == Case{3, 2, 7, 4});
      CHECK_THROWS_AS(e.classify({3, 2, 7, 4}), IncompleteLedger);
      try {
        e.classify({3, 2, 7, 4});
      } catch (const IncompleteLedger& err) {
        CHECK(err.which == Case{3, 2, 7, 4});
      }
    }
    {
      const Engine e = engine_from(drop_entry(text, "p4-skew-lines"));
      const auto missing = e.completeness_audit(4, 1, 30, 20);
      CHECK(std::find(missing.begin(), missing.end(), Case{4, 1, 11, 8}) != missing.end());
    }
    {
      const Engine e = engine_from(drop_entry(text, "plane-conics"));
      CHECK_THROWS_AS(e.classify({2, 2, 4, 3}), IncompleteLedger);
      CHECK(e.classify({2, 1, 4, 3}).kind == Verdict::Kind::General);
    }
  }

  TEST_CASE("corrupted traces are rejected") {
    const Engine& e = Engine::builtin();
    const Trace good = e.derive({4, 1, 19, 18});
    REQUIRE(good);
    CHECK(e.check_trace(good).empty());
    CHECK(good->rule == Rule::AddCanonical);

    // Wrong rule label.
    auto bad = std::make_shared<TraceNode>(*good);
    bad->rule = Rule::AddLine;
    CHECK_FALSE(e.check_trace(bad).empty());

    // Premise that does not decrease the degree.
    const Trace line = e.derive({3, 2, 4, 0});
    REQUIRE(line);
    CHECK(line->rule == Rule::AddLine);
    auto loop = std::make_shared<TraceNode>(*line);
    loop->children = {line};
    CHECK_FALSE(e.check_trace(loop).empty());

    // Unknown ledger id.
    auto unknown = std::make_shared<TraceNode>();
    unknown->root = {3, 2, 3, 0};
    unknown->ledger_id = "no-such-entry";
    CHECK_FALSE(e.check_trace(unknown).empty());

    // A ledger entry used for a case it does not cover.
    auto mismatch = std::make_shared<TraceNode>();
    mismatch->root = {3, 2, 4, 0};
    mismatch->ledger_id = "p3q-3-0";
    CHECK_FALSE(e.check_trace(mismatch).empty());

    // The auxiliary base outside a canonical step.
    auto aux = std::make_shared<TraceNode>();
    aux->root = skew_lines_case();
    aux->ledger_id = "p4-skew-lines";
    CHECK_FALSE(e.check_trace(aux).empty());

    // An exceptional case as the root.
    auto exc = std::make_shared<TraceNode>();
    exc->root = {3, 2, 8, 6};
    exc->rule = Rule::AddLine;
    exc->children = {e.derive({3, 2, 7, 6})};
    CHECK_FALSE(e.check_trace(exc).empty());
  }

  TEST_CASE("reduction rules") {
    CHECK(add_line_premise({3, 2, 9, 4}) == Case{3, 2, 8, 4});
    CHECK(add_line_premise({4, 1, 9, 4}) == Case{4, 1, 8, 4});
    CHECK_FALSE(add_line_premise({2, 1, 9, 4}));
    CHECK(add_canonical_premise({3, 2, 20, 20}) == Case{3, 2, 14, 12});
    CHECK(add_canonical_premise({4, 1, 20, 20}) == Case{4, 1, 12, 10});
    CHECK_FALSE(add_canonical_premise({3, 1, 20, 20}));
    CHECK(downgrade_premise({3, 1, 9, 7}) == Case{3, 2, 9, 7});
    CHECK_FALSE(downgrade_premise({3, 2, 9, 7}));
    CHECK(skew_lines_case() == Case{4, 1, 3, -2});
  }

  TEST_CASE("derivation examples") {
    const Engine& e = Engine::builtin();
    const Trace t = e.derive({3, 1, 8, 6});
    REQUIRE(t);
    CHECK(t->ledger_id == "p3h-8-6");
    CHECK(t->children.at(0)->root == Case{3, 1, 7, 5});
    const Trace flagged = e.derive({4, 1, 12, 9});
    REQUIRE(flagged);
    CHECK(flagged->premises_unexpanded);
    CHECK(flagged->children.empty());
    CHECK(trace_citations(e.derive({4, 1, 19, 18})) == std::vector<std::string>{"p4-skew-lines"});
    CHECK(trace_size(e.derive({3, 2, 4, 0})) == 2);
    CHECK(trace_depth(e.derive({3, 2, 4, 0})) == 2);
    CHECK_FALSE(e.derive({3, 2, 8, 6}));
    CHECK_FALSE(e.derive({3, 2, 3, 2}));
  }

  TEST_CASE("derivations are deterministic across threads") {
    const auto ledger = Ledger::builtin();
    const Engine a(ledger);
    const Engine b(ledger);
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
      pool.emplace_back([&a, t] {
        for (int g = t; g <= 30; g += 4)
          for (int d = 1; d <= 45; ++d) (void)a.derive({3, 2, d, g});
      });
    for (auto& th : pool) th.join();
    for (int g = 0; g <= 30; ++g)
      for (int d = 1; d <= 45; ++d) {
        const Trace x = a.derive({3, 2, d, g});
        const Trace y = b.derive({3, 2, d, g});
        REQUIRE(static_cast<bool>(x) == static_cast<bool>(y));
        if (x) {
          REQUIRE(trace_citations(x) == trace_citations(y));
          REQUIRE(trace_size(x) == trace_size(y));
          REQUIRE(x->rule == y->rule);
        }
      }
  }
}

TEST_SUITE("ledger") {
  TEST_CASE("built-in ledger validates") {
    const auto ledger = Ledger::builtin();
    CHECK(validate_ledger(*ledger).empty());
    CHECK(ledger->entries().size() == 33);
    for (const auto& entry : ledger->entries()) {
      CHECK_FALSE(entry.citation.empty());
      CHECK_FALSE(entry.quote.empty());
    }
  }

  TEST_CASE("every quote appears in the reference list") {
    std::ifstream in(BNINT_QUOTES_FILE);
    REQUIRE(in);
    std::set<std::string> quotes;
    for (std::string line; std::getline(in, line);)
      if (!line.empty()) quotes.insert(line);
    for (const auto& entry : Ledger::builtin()->entries()) CHECK_MESSAGE(quotes.count(entry.quote) == 1, entry.id);
  }

  TEST_CASE("side conditions of gluing entries") {
    const auto ledger = Ledger::builtin();
    int glued = 0;
    for (const auto& entry : ledger->entries()) {
      if (!entry.glue) continue;
      ++glued;
      const auto report = side_condition_check(entry);
      CHECK_MESSAGE(report.pass(), entry.id);
      CHECK_FALSE(report.checks.empty());
      if (entry.premise_outside_domain || entry.premises.empty()) continue;
      const auto& p = entry.premises.front();
      const auto [d, g] = composite_invariants({p.d, p.g}, *entry.glue);
      CHECK(Case{entry.r, entry.n, d, g} == entry.exact_case());
    }
    CHECK(glued == 16);
    CHECK(composite_invariants({3, 0}, Glue{4, 0, 3, 2}) == std::pair<std::int64_t, std::int64_t>{7, 2});
    // A glue that overshoots the Euler-characteristic bound fails.
    CHECK_FALSE(side_condition_check(3, Glue{1, 5, 1, 2}).pass());
  }

  TEST_CASE("parse errors") {
    CHECK_THROWS_AS(Ledger::parse("id = x\n"), LedgerError);
    CHECK_THROWS_AS(Ledger::parse("[entry]\nid = x\ncase = 3 2 3\ntag = FromInter\n"), LedgerError);
    CHECK_THROWS_AS(Ledger::parse("[entry]\nid = x\ncase = 3 2 3 0\ntag = Bogus\n"), LedgerError);
    CHECK_THROWS_AS(Ledger::parse("[entry]\nid = x\ncase = 3 2 3 0\ntag = FromInter\nfrobnicate = 1\n"), LedgerError);
    CHECK_THROWS_AS(Ledger::parse("[entry]\nid = x\ncase = 3 2 3 0\ntag = FromInter\ncitation = c\nquote = q\n"
                                    "[entry]\nid = x\ncase = 3 2 4 0\ntag = FromInter\ncitation = c\nquote = q\n"),
                    LedgerError);
    CHECK_THROWS_AS(Ledger::parse("[entry]\nid = x\ncase = 3 2 3 0\ntag = FromInter\n"), LedgerError);
    CHECK_THROWS_AS(Ledger::parse("[entry]\nid = x\ncase = 3 2 3 0\ntag = FromInter\ncitation = c\nquote = q\nflags = shiny\n"),
                    LedgerError);
    CHECK_NOTHROW(Ledger::parse("# comment\n\n[entry]\nid = x\ncase = 3 2 3 0\ntag = FromInter\ncitation = c\nquote = q\n"));
    CHECK_THROWS_AS(Ledger::load_file("/nonexistent/ledger.txt"), LedgerError);
  }

  TEST_CASE("inconsistent entries are flagged") {
    const std::string base = "[entry]\nid = x\ncase = 3 2 7 2\ntag = HyperplaneGlue\nglue = 4 0 3 2\nmin_premise_degree = 3\n"
                             "citation = c\nquote = q\n";
    const auto ok = Ledger::parse(base + "premises = 3 2 3 0\n");
    CHECK(validate_ledger(ok).empty());
    const auto wrong_sum = Ledger::parse(base + "premises = 3 2 4 0\n");
    CHECK_FALSE(validate_ledger(wrong_sum).empty());
    const auto low = Ledger::parse(
        "[entry]\nid = y\ncase = 3 2 6 2\ntag = HyperplaneGlue\nglue = 4 0 3 2\nmin_premise_degree = 3\n"
        "premises = 3 2 2 0\ncitation = c\nquote = q\n");
    CHECK_FALSE(validate_ledger(low).empty());
    const auto flag = Ledger::parse(
        "[entry]\nid = z\ncase = 3 2 3 0\ntag = FromInter\nflags = premise-outside-domain\ncitation = c\nquote = q\n");
    CHECK_FALSE(validate_ledger(flag).empty());
    const auto dp = Ledger::parse(
        "[entry]\nid = w\ncase = 3 2 7 4\ntag = DelPezzo\nsurface = del_pezzo 6\nclass = 5L-2E1-2E2-E3-E4-E5-E6\n"
        "polarization = 2L-E1-E2\ncitation = c\nquote = q\n");
    CHECK_FALSE(validate_ledger(dp).empty());
  }

  TEST_CASE("lookup") {
    const auto ledger = Ledger::builtin();
    CHECK(ledger->find({3, 2, 7, 2})->id == "p3q-7-2");
    CHECK(ledger->find({2, 1, 100, 50})->id == "plane-lines");
    CHECK(ledger->find({3, 2, 100, 50}) == nullptr);
    CHECK(ledger->by_id("p4-skew-lines")->auxiliary);
    CHECK(ledger->by_id("p4-12-9")->premise_outside_domain);
    CHECK(ledger->by_id("missing") == nullptr);
    CHECK(Case{3, 2, 7, 2}.str() == "(3,2,7,2)");
  }
}
