// Command-line front end: classify, table, trace, audit, schubert, lines, verify-all.
//
// Exit codes: 0 success, 1 usage, 2 invalid query, 3 verification failure.

#include <algorithm>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bnint/report.hpp"
#include "bnint/schubert.hpp"

namespace {

using namespace bnint;

constexpr int kUsage = 1;
constexpr int kInvalid = 2;
constexpr int kVerifyFailed = 3;

struct Globals {
  bool json = false;
  std::string ledger_path;
  std::vector<std::string> argv;
};

std::shared_ptr<const Ledger> load_ledger(const Globals& g) {
  if (g.ledger_path.empty()) return Ledger::builtin();
  return std::make_shared<const Ledger>(Ledger::load_file(g.ledger_path));
}

void print_json(const Globals& g, Json result) { std::cout << envelope(g.argv, std::move(result)).dump(2) << "\n"; }

std::vector<std::vector<Coeff>> parse_gram(const std::string& text) {
  std::vector<std::vector<Coeff>> rows;
  std::string rows_text = text;
  std::replace(rows_text.begin(), rows_text.end(), '/', ';');
  std::stringstream in(rows_text);
  for (std::string row; std::getline(in, row, ';');) {
    std::vector<Coeff> vals;
    std::stringstream rs(row);
    for (std::string v; std::getline(rs, v, ',');) vals.push_back(std::stoll(v));
    rows.push_back(std::move(vals));
  }
  return rows;
}

int run_classify(const Globals& g, const Case& q, bool trace_only) {
  const Engine engine(load_ledger(g));
  const Verdict v = engine.classify(q);
  if (g.json) {
    Json j = verdict_json(q, v, engine);
    print_json(g, trace_only ? Json{{"query", j["query"]}, {"verdict", j["verdict"]}, {"trace", j["trace"]}} : j);
  } else if (trace_only && v.kind == Verdict::Kind::General) {
    std::cout << render_trace_text(v.trace, engine);
  } else {
    std::cout << render_verdict_text(q, v, engine);
  }
  return v.kind == Verdict::Kind::Invalid ? kInvalid : 0;
}

}  // namespace

int main(int argc, char** argv) {
  Globals g;
  for (int i = 1; i < argc; ++i) g.argv.emplace_back(argv[i]);

  CLI::App app{"Brill-Noether hypersurface-section classifier"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", g.json, "emit JSON on standard output");
  app.add_option("--ledger", g.ledger_path, "ledger data file replacing the built-in ledger");

  Case q;
  const auto add_case = [&q](CLI::App* sub) {
    sub->add_option("--r", q.r, "ambient dimension")->required();
    sub->add_option("--n", q.n, "hypersurface degree")->required();
    sub->add_option("--d", q.d, "degree")->required();
    sub->add_option("--g", q.g, "genus")->required();
  };
  auto* classify = app.add_subcommand("classify", "classify one (r, n, d, g) query");
  add_case(classify);
  auto* trace = app.add_subcommand("trace", "print the derivation trace of a query");
  add_case(trace);

  std::int64_t tr = 0, tn = 0, td_max = 0, tg_max = 0;
  unsigned threads = 0;
  auto* table = app.add_subcommand("table", "sweep verdicts and list the frontier");
  table->add_option("--r", tr)->required();
  table->add_option("--n", tn)->required();
  table->add_option("--g-max", tg_max)->required();
  table->add_option("--d-max", td_max, "default: g-max + r + 8");
  table->add_option("--threads", threads, "worker threads (0: hardware count)");

  std::vector<std::int64_t> audit_case;
  bool audit_all = false;
  auto* audit = app.add_subcommand("audit", "non-generality evidence for exceptional cases");
  audit->add_option("--case", audit_case, "r n d g")->expected(4);
  audit->add_flag("--all", audit_all);

  int sn = 0;
  std::string expr;
  auto* schubert = app.add_subcommand("schubert", "products of Schubert classes on G(1,n)");
  schubert->add_option("--n", sn, "ambient P^n")->required();
  schubert->add_option("--expr", expr, "e.g. s2^3 or s[3,1]*s1")->required();

  int lk = 0;
  auto* lines = app.add_subcommand("lines", "(-1)-curves on the blowup of P^2 at k points");
  lines->add_option("--k", lk, "2 <= k <= 6")->required();

  std::string k3_gram;
  auto* verify = app.add_subcommand("verify-all", "run every numeric check");
  verify->add_option("--k3-gram", k3_gram, "Gram matrix for the K3 check, rows separated by ';' or '/'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (classify->parsed()) return run_classify(g, q, false);
    if (trace->parsed()) return run_classify(g, q, true);

    if (table->parsed()) {
      if (td_max == 0) td_max = tg_max + tr + 8;
      if (!supported_pair(tr, tn)) {
        std::cerr << "unsupported (r,n) = (" << tr << "," << tn << ")\n";
        return kInvalid;
      }
      if (td_max < 1 || tg_max < 0 || td_max > kMaxSweepBound || tg_max > kMaxSweepBound) {
        std::cerr << "sweep bounds must satisfy 1 <= d-max <= " << kMaxSweepBound << " and 0 <= g-max <= "
                  << kMaxSweepBound << "\n";
        return kUsage;
      }
      const Engine engine(load_ledger(g));
      const Table t = build_table(engine, tr, tn, td_max, tg_max, threads);
      if (g.json) {
        print_json(g, table_json(t));
      } else {
        std::cout << render_table_text(t);
      }
      return t.incomplete() ? kVerifyFailed : 0;
    }

    if (audit->parsed()) {
      if (audit_all == !audit_case.empty()) {
        std::cerr << "audit needs exactly one of --case r n d g or --all\n";
        return kUsage;
      }
      std::vector<AuditReport> reports;
      if (audit_all) {
        reports = run_all_audits();
      } else {
        const Case c{audit_case[0], audit_case[1], audit_case[2], audit_case[3]};
        if (!find_exceptional(c)) {
          std::cerr << c.str() << " is not an exceptional case\n";
          return kInvalid;
        }
        reports.push_back(run_audit(c));
      }
      if (g.json) {
        Json arr = Json::array();
        for (const auto& r : reports) arr.push_back(audit_json(r));
        print_json(g, Json{{"audits", arr}});
      } else {
        for (const auto& r : reports) std::cout << render_audit_text(r);
      }
      return 0;
    }

    if (schubert->parsed()) {
      const SchubertCycle c = parse_schubert(sn, expr);
      if (g.json) {
        Json terms = Json::array();
        for (const auto& [p, coeff] : c.terms()) terms.push_back(Json{{"a", p.a}, {"b", p.b}, {"coefficient", coeff}});
        print_json(g, Json{{"n", sn}, {"expr", expr}, {"terms", terms}, {"text", to_string(c)},
                           {"top_degree", top_degree(c)}});
      } else {
        std::cout << to_string(c) << "\n" << "top degree: " << top_degree(c) << "\n";
      }
      return 0;
    }

    if (lines->parsed()) {
      const SurfaceModel s = SurfaceModel::del_pezzo(lk);
      const auto& ls = enumerate_lines(s);
      if (g.json) {
        Json arr = Json::array();
        for (const auto& l : ls) arr.push_back(Json{{"class", s.format(l)}, {"coeffs", l.coeffs}});
        print_json(g, Json{{"k", lk}, {"basis", s.basis_names()}, {"count", ls.size()}, {"lines", arr}});
      } else {
        for (const auto& l : ls) std::cout << s.format(l) << "\n";
        std::cout << ls.size() << " lines\n";
      }
      return 0;
    }

    if (verify->parsed()) {
      VerifyOptions opts;
      try {
        if (!g.ledger_path.empty()) opts.ledger = load_ledger(g);
        if (!k3_gram.empty()) opts.k3_gram = parse_gram(k3_gram);
      } catch (const LedgerError& e) {
        std::cerr << "ledger rejected: " << e.what() << "\n";
        return kVerifyFailed;
      } catch (const std::invalid_argument& e) {
        std::cerr << "malformed --k3-gram: " << e.what() << "\n";
        return kUsage;
      }
      const auto result = verify_all(opts);
      if (g.json) {
        print_json(g, verify_json(result));
      } else {
        std::cout << render_verify_text(result);
      }
      for (const auto& l : result) {
        if (!l.pass) return kVerifyFailed;
      }
      return 0;
    }
  } catch (const IncompleteLedger& e) {
    std::cerr << e.what() << "\n";
    return kVerifyFailed;
  } catch (const LedgerError& e) {
    std::cerr << "ledger error: " << e.what() << "\n";
    return kVerifyFailed;
  } catch (const DomainError& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
