#include "bnint/report.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <thread>

#include "bnint/schubert.hpp"

namespace bnint {

// ---------------------------------------------------------------------------
// JSON

Json case_json(const Case& c) { return Json{{"r", c.r}, {"n", c.n}, {"d", c.d}, {"g", c.g}}; }

Case case_from_json(const Json& j) {
  return {j.at("r").get<std::int64_t>(), j.at("n").get<std::int64_t>(), j.at("d").get<std::int64_t>(),
          j.at("g").get<std::int64_t>()};
}

Json trace_to_json(const Trace& root) {
  Json nodes = Json::array();
  if (!root) return nodes;
  std::map<const TraceNode*, std::size_t> index;
  // Assign ids in pre-order, then fill nodes in the same order.
  std::vector<const TraceNode*> order;
  const std::function<void(const TraceNode*)> number = [&](const TraceNode* n) {
    if (index.count(n)) return;
    index[n] = order.size();
    order.push_back(n);
    for (const auto& ch : n->children) number(ch.get());
  };
  number(root.get());
  for (const TraceNode* n : order) {
    Json node{{"id", index[n]}, {"case", case_json(n->root)}, {"rule", to_string(n->rule)}};
    if (n->rule == Rule::LedgerBase) node["ledger"] = n->ledger_id;
    Json premises = Json::array();
    for (const auto& ch : n->children) premises.push_back(index[ch.get()]);
    node["premises"] = premises;
    if (n->premises_unexpanded) node["premises_unexpanded"] = true;
    nodes.push_back(std::move(node));
  }
  return nodes;
}

Trace trace_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw LedgerError("trace JSON must be a non-empty node list");
  const std::size_t count = j.size();
  std::vector<std::shared_ptr<TraceNode>> nodes(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (j[i].at("id").get<std::size_t>() != i) throw LedgerError("trace node ids must be 0..n-1 in order");
    nodes[i] = std::make_shared<TraceNode>();
  }
  for (std::size_t i = 0; i < count; ++i) {
    const Json& jn = j[i];
    TraceNode& n = *nodes[i];
    n.root = case_from_json(jn.at("case"));
    n.rule = parse_rule(jn.at("rule").get<std::string>());
    if (jn.contains("ledger")) n.ledger_id = jn.at("ledger").get<std::string>();
    n.premises_unexpanded = jn.value("premises_unexpanded", false);
    for (const auto& p : jn.at("premises")) {
      const auto k = p.get<std::size_t>();
      // Pre-order numbering puts every premise after its parent, which also rules out cycles.
      if (k <= i || k >= count) throw LedgerError("trace premise index out of order");
      n.children.push_back(nodes[k]);
    }
  }
  return nodes[0];
}

Json ledger_entry_json(const LedgerEntry& e) {
  Json j{{"id", e.id}, {"case", e.case_str()}, {"tag", to_string(e.tag)}, {"citation", e.citation}, {"quote", e.quote}};
  if (!e.premises.empty()) {
    Json p = Json::array();
    for (const auto& c : e.premises) p.push_back(case_json(c));
    j["premises"] = p;
  }
  if (e.glue) j["glue"] = Json{{"d2", e.glue->d2}, {"g2", e.glue->g2}, {"n", e.glue->n}, {"k", e.glue->k}};
  if (!e.cls.empty()) j["class"] = e.surface + ": " + e.cls;
  Json flags = Json::array();
  if (e.auxiliary) flags.push_back("auxiliary");
  if (e.premise_outside_domain) flags.push_back("premise-outside-domain");
  if (!flags.empty()) j["flags"] = flags;
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

Json audit_json(const AuditReport& a) {
  Json ev{{"kind", evidence_kind(a.evidence)}};
  if (const auto* cc = std::get_if<ConditionCount>(&a.evidence)) {
    ev["system"] = cc->system;
    ev["points"] = cc->points;
    ev["h0"] = cc->h0;
    ev["slack"] = cc->slack;
    ev["members_required"] = cc->members_required;
  } else if (const auto* dd = std::get_if<DimensionDeficit>(&a.evidence)) {
    Json comps = Json::array();
    for (const auto& [name, v] : dd->components) comps.push_back(Json{{"name", name}, {"dim", v}});
    ev["components"] = comps;
    ev["total"] = dd->total;
    ev["ambient"] = dd->ambient;
  } else if (const auto* ef = std::get_if<ExternalFact>(&a.evidence)) {
    ev["citation"] = ef->citation;
  }
  return Json{{"case", case_json(a.id)},
              {"evidence", ev},
              {"verdict", a.not_general ? "NotGeneral" : "Inconclusive"},
              {"notes", a.notes}};
}

Json verdict_json(const Case& q, const Verdict& v, const Engine& engine) {
  Json verdict{{"kind", to_string(v.kind)}};
  Json trace = Json::array();
  Json citations = Json::array();
  Json audits = Json::array();
  switch (v.kind) {
    case Verdict::Kind::Invalid:
      verdict["reason"] = v.reason;
      break;
    case Verdict::Kind::Exceptional:
      verdict["description"] = v.descriptor->description;
      verdict["audit"] = v.descriptor->audit_id;
      if (!v.descriptor->remark.empty()) verdict["remark"] = v.descriptor->remark;
      audits.push_back(audit_json(run_audit(q)));
      break;
    case Verdict::Kind::General:
      verdict["trace_nodes"] = trace_size(v.trace);
      verdict["trace_depth"] = trace_depth(v.trace);
      trace = trace_to_json(v.trace);
      for (const auto& id : trace_citations(v.trace)) {
        if (const auto* e = engine.ledger().by_id(id)) citations.push_back(ledger_entry_json(*e));
      }
      break;
  }
  return Json{{"query", case_json(q)}, {"verdict", verdict}, {"trace", trace}, {"citations", citations},
              {"audits", audits}};
}

Json envelope(const std::vector<std::string>& command, Json result) {
  return Json{{"schema", kSchemaId}, {"version", kArtifactVersion}, {"command", command}, {"result", std::move(result)}};
}

// ---------------------------------------------------------------------------
// Text

namespace {

std::string rule_justification(Rule r, const Case& c) {
  switch (r) {
    case Rule::AddLine: return c.r == 3 ? "lemma p3-add-line" : "lemma p4-add-line";
    case Rule::AddCanonical: return c.r == 3 ? "lemma add-can-3" : "lemma add-can-4";
    case Rule::Downgrade: return "vanishing of N_f(-2) implies vanishing of N_f(-1)";
    case Rule::LedgerBase: return "";
  }
  return "";
}

}  // namespace

std::string render_trace_text(const Trace& root, const Engine& engine) {
  std::ostringstream out;
  const std::function<void(const Trace&, int)> emit = [&](const Trace& t, int depth) {
    out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << t->root.str() << " " << to_string(t->rule);
    if (t->rule == Rule::LedgerBase) {
      out << " [" << t->ledger_id << "]";
      if (const auto* e = engine.ledger().by_id(t->ledger_id)) out << " " << to_string(e->tag) << ", " << e->citation;
      if (t->premises_unexpanded) out << " (premise outside the domain, not expanded)";
    } else {
      out << " (" << rule_justification(t->rule, t->root) << ")";
    }
    out << "\n";
    for (const auto& ch : t->children) emit(ch, depth + 1);
  };
  if (root) emit(root, 0);
  return out.str();
}

std::string render_verdict_text(const Case& q, const Verdict& v, const Engine& engine) {
  std::ostringstream out;
  out << "query " << q.str() << ": " << to_string(v.kind) << "\n";
  switch (v.kind) {
    case Verdict::Kind::Invalid:
      out << "reason: " << v.reason << "\n";
      break;
    case Verdict::Kind::Exceptional:
      out << "description: " << v.descriptor->description << "\n";
      if (!v.descriptor->remark.empty()) out << "remark: " << v.descriptor->remark << "\n";
      out << render_audit_text(run_audit(q));
      break;
    case Verdict::Kind::General:
      out << "trace (" << trace_size(v.trace) << " nodes, depth " << trace_depth(v.trace) << "):\n";
      out << render_trace_text(v.trace, engine);
      break;
  }
  return out.str();
}

std::string render_audit_text(const AuditReport& a) {
  std::ostringstream out;
  out << "audit " << a.id.str() << ": " << (a.not_general ? "NotGeneral" : "Inconclusive") << " by "
      << evidence_kind(a.evidence) << "\n";
  if (const auto* cc = std::get_if<ConditionCount>(&a.evidence)) {
    out << "  " << cc->points << " points against " << cc->system << " (h0 = " << cc->h0 << ", slack " << cc->slack
        << ", members through the points " << cc->members_required << ")\n";
  } else if (const auto* dd = std::get_if<DimensionDeficit>(&a.evidence)) {
    for (const auto& [name, v] : dd->components) out << "  + " << v << "  " << name << "\n";
    out << "  family dimension " << dd->total << " < " << dd->ambient << " = dim Sym^" << dd->ambient / 2 << "\n";
  } else if (const auto* ef = std::get_if<ExternalFact>(&a.evidence)) {
    out << "  external fact: " << ef->citation << "\n";
  }
  for (const auto& n : a.notes) out << "  note: " << n << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Table

bool Table::incomplete() const {
  return std::any_of(cells.begin(), cells.end(), [](const TableCell& c) { return c.verdict == "Incomplete"; });
}

Table build_table(const Engine& engine, std::int64_t r, std::int64_t n, std::int64_t d_max, std::int64_t g_max,
                  unsigned threads) {
  if (!supported_pair(r, n)) {
    throw DomainError("unsupported (r,n) = (" + std::to_string(r) + "," + std::to_string(n) + ")");
  }
  if (d_max < 1 || g_max < 0 || d_max > kMaxSweepBound || g_max > kMaxSweepBound) {
    throw DomainError("sweep bounds must satisfy 1 <= d_max <= 10000 and 0 <= g_max <= 10000");
  }
  Table t{r, n, d_max, g_max, {}, engine.frontier(r, n, g_max)};
  const auto rows = static_cast<std::size_t>(g_max + 1);
  const auto cols = static_cast<std::size_t>(d_max);
  t.cells.resize(rows * cols);

  const auto fill_row = [&](std::int64_t g) {
    // Increasing d keeps derivations shallow: each premise is usually already memoized.
    for (std::int64_t d = 1; d <= d_max; ++d) {
      TableCell& cell = t.cells[static_cast<std::size_t>(g) * cols + static_cast<std::size_t>(d - 1)];
      cell.d = d;
      cell.g = g;
      try {
        cell.verdict = to_string(engine.classify({r, n, d, g}).kind);
      } catch (const IncompleteLedger&) {
        cell.verdict = "Incomplete";
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, rows));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t g = w; g < rows; g += threads) fill_row(static_cast<std::int64_t>(g));
    });
  }
  for (auto& th : pool) th.join();
  return t;
}

Json table_json(const Table& t) {
  Json rows = Json::array();
  for (const auto& c : t.cells) {
    if (c.verdict == "Invalid") continue;
    rows.push_back(Json{{"d", c.d}, {"g", c.g}, {"verdict", c.verdict}});
  }
  Json frontier = Json::array();
  for (const auto& [d, g] : t.frontier) frontier.push_back(Json::array({d, g}));
  return Json{{"query", Json{{"r", t.r}, {"n", t.n}, {"d_max", t.d_max}, {"g_max", t.g_max}}},
              {"cells", rows},
              {"frontier", frontier}};
}

std::string render_table_text(const Table& t) {
  std::ostringstream out;
  out << "sweep r=" << t.r << " n=" << t.n << " d<=" << t.d_max << " g<=" << t.g_max << "\n";
  out << "legend: . invalid (rho < 0), G general, X exceptional, ? no derivation\n";
  const auto cols = static_cast<std::size_t>(t.d_max);
  for (std::int64_t g = 0; g <= t.g_max; ++g) {
    out << "g=" << g << (g < 10 ? "  " : g < 100 ? " " : "") << " ";
    for (std::size_t i = 0; i < cols; ++i) {
      const auto& v = t.cells[static_cast<std::size_t>(g) * cols + i].verdict;
      out << (v == "General" ? 'G' : v == "Exceptional" ? 'X' : v == "Invalid" ? '.' : '?');
    }
    out << "\n";
  }
  out << "frontier:";
  for (const auto& [d, g] : t.frontier) out << " (" << d << "," << g << ")";
  out << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Verification run

namespace {

struct Recorder {
  std::vector<VerifyLine> lines;
  std::string group;

  void check(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    VerifyLine line{group, name, false, ""};
    try {
      auto [ok, detail] = body();
      line.pass = ok;
      line.detail = std::move(detail);
    } catch (const std::exception& e) {
      line.detail = std::string("error: ") + e.what();
    }
    lines.push_back(std::move(line));
  }

  template <class T>
  void eq(const std::string& name, const T& expected, const std::function<T()>& actual) {
    check(name, [&] {
      const T got = actual();
      std::ostringstream s;
      s << std::boolalpha << "expected " << expected << ", got " << got;
      return std::pair{got == expected, s.str()};
    });
  }
};

std::string pairs_str(const std::vector<std::pair<std::int64_t, std::int64_t>>& v) {
  std::string out;
  for (const auto& [a, b] : v) out += (out.empty() ? "" : " ") + std::string("(") + std::to_string(a) + "," + std::to_string(b) + ")";
  return out;
}

using Pairs = std::vector<std::pair<std::int64_t, std::int64_t>>;

void numerology_checks(Recorder& rec) {
  rec.group = "numerology";
  rec.eq<Integer>("chi N(-1), r=3 (7,2)", 14, [] { return chi_twisted_normal({3, 7, 2}, 1); });
  rec.eq<Integer>("chi N(-2), r=3 (9,6)", 0, [] { return chi_twisted_normal({3, 9, 6}, 2); });
  rec.eq<Integer>("chi N(-1), r=4 (8,5)", 12, [] { return chi_twisted_normal({4, 8, 5}, 1); });
  rec.eq<std::int64_t>("max hypersurface degree r=3", 2, [] { return max_general_hypersurface_degree(3); });
  rec.eq<std::int64_t>("max hypersurface degree r=4", 1, [] { return max_general_hypersurface_degree(4); });
  rec.eq<std::int64_t>("max hypersurface degree r=5", 0, [] { return max_general_hypersurface_degree(5); });
  rec.eq<Integer>("rho r=3 (6,4)", 0, [] { return rho({3, 6, 4}); });
  rec.eq<Integer>("rho r=4 (8,5)", 0, [] { return rho({4, 8, 5}); });
  rec.eq<Integer>("moduli dim r=3 (5,2)", 20, [] { return moduli_dim({3, 5, 2}); });
  rec.eq<Integer>("moduli dim r=4 (10,7)", 44, [] { return moduli_dim({4, 10, 7}); });
  rec.eq<bool>("gate r=3 (5,2) k=1 closed", false, [] { return interpolation_gates({3, 5, 2}, 1); });
  rec.eq<bool>("gate r=4 (6,2) k=1 closed", false, [] { return interpolation_gates({4, 6, 2}, 1); });
  rec.check("chi identities for d,g <= 100", [] {
    for (std::int64_t d = 1; d <= 100; ++d) {
      for (std::int64_t g = 0; g <= 100; ++g) {
        if (chi_twisted_normal({3, d, g}, 2) != 0 || chi_twisted_normal({3, d, g}, 1) != 2 * d ||
            chi_twisted_normal({4, d, g}, 1) != 2 * d - g + 1) {
          return std::pair{false, "fails at (d,g) = (" + std::to_string(d) + "," + std::to_string(g) + ")"};
        }
      }
    }
    return std::pair{true, std::string("r=3: k=2 gives 0, k=1 gives 2d; r=4: k=1 gives 2d-g+1")};
  });
  rec.check("rho invariant under canonical reduction", [] {
    std::int64_t n = 0;
    for (std::int64_t r = 3; r <= 6; ++r)
      for (std::int64_t d = r + 1; d <= 60; ++d)
        for (std::int64_t g = r + 1; g <= 60; ++g, ++n)
          if (rho_canonical_reduction_delta({r, d, g}) != 0) return std::pair{false, std::string("nonzero delta")};
    return std::pair{true, std::to_string(n) + " cases, all deltas 0"};
  });
}

void lattice_checks(Recorder& rec, const VerifyOptions& opts) {
  rec.group = "lattice";
  const SurfaceModel cubic = SurfaceModel::del_pezzo(6);
  const SurfaceModel quartic = SurfaceModel::del_pezzo(5);
  const SurfaceModel quadric = SurfaceModel::quadric();

  struct Row { const SurfaceModel* s; const char* cls; std::int64_t d, g; };
  const Row rows[] = {{&cubic, "5L-2E1-2E2-E3-E4-E5-E6", 7, 4},   {&cubic, "5L-2E1-E2-E3-E4-E5-E6", 8, 5},
                      {&cubic, "6L-E1-E2-2E3-2E4-2E5-2E6", 8, 6}, {&cubic, "6L-E1-2E2-2E3-2E4-2E5-2E6", 7, 5},
                      {&quartic, "5L-2E1-E2-E3-E4-E5", 9, 5},     {&quartic, "6L-E1-2E2-2E3-2E4-2E5", 9, 6}};
  for (const auto& row : rows) {
    rec.check(std::string("degree and genus of ") + row.cls, [&] {
      const auto c = row.s->parse(row.cls);
      const auto d = anticanonical_degree(*row.s, c);
      const auto g = adjunction_genus(*row.s, c);
      return std::pair{d == row.d && g == row.g, "(" + std::to_string(d) + "," + std::to_string(g) + ")"};
    });
  }
  rec.eq<Coeff>("(5L-2E1-2E2-E3-..-E6).(-K) on the cubic", 7,
                [&] { return intersect(cubic, cubic.parse("5L-2E1-2E2-E3-E4-E5-E6"), cubic.anticanonical()); });
  for (const auto& [k, want] : std::vector<std::pair<int, std::size_t>>{{2, 3}, {3, 6}, {4, 10}, {5, 16}, {6, 27}}) {
    rec.check("lines on the blowup at " + std::to_string(k) + " points", [k = k, want = want] {
      const auto s = SurfaceModel::del_pezzo(k);
      const auto& lines = enumerate_lines(s);
      bool ok = lines.size() == want;
      for (const auto& l : lines) ok = ok && adjunction_genus(s, l) == 0 && anticanonical_degree(s, l) == 1;
      return std::pair{ok, std::to_string(lines.size()) + " lines, each of genus 0 and degree 1"};
    });
  }

  struct Cert { const SurfaceModel* s; const char* cls; };
  const Cert certs[] = {{&cubic, "3L-2E1-2E2-E3-E4-E5-E6"}, {&cubic, "6L-3E1-2E2-2E3-2E4-2E5-2E6"},
                        {&quadric, "-F2"},                   {&quartic, "2L-E1-E3-E4-E5"},
                        {&cubic, "3L-2E1-E2-E3-E4-E5-E6"},   {&quartic, "3L-2E1-E2-E3-E4-E5"}};
  for (const auto& c : certs) {
    rec.check(std::string("vanishing certificate for ") + c.cls,
              [&] { return std::pair{kv_vanishing_certificate(*c.s, c.s->parse(c.cls)), std::string("B - K nef and big")}; });
  }

  rec.check("nef, big, not ample: 6L-3E1-3E2-2E3-2E4-2E5-2E6", [&] {
    const auto c = cubic.parse("6L-3E1-3E2-2E3-2E4-2E5-2E6");
    const auto p = positivity(cubic, c);
    return std::pair{p.nef && p.big && !p.ample && self_intersection(cubic, c) == 2,
                     "square " + std::to_string(self_intersection(cubic, c))};
  });
  rec.check("6L-3E1-2E2-2E3-2E4-2E5-2E6 is ample (square 7)", [&] {
    const auto c = cubic.parse("6L-3E1-2E2-2E3-2E4-2E5-2E6");
    const auto p = positivity(cubic, c);
    return std::pair{p.ample && self_intersection(cubic, c) == 7,
                     "pairs positively with all 27 lines; the nef-not-ample square-2 class is 6L-3E1-3E2-2E3-..-2E6"};
  });

  struct H0 { const SurfaceModel* s; const char* cls; Coeff want; };
  const H0 h0s[] = {{&cubic, "6L-2E1-2E2-2E3-2E4-2E5-2E6", 10}, {&cubic, "3L-E1-E2-E3-E4-E5-E6", 4},
                    {&quadric, "3F1+2F2", 12},                   {&quadric, "F1", 2},
                    {&cubic, "6L-E1-2E2-2E3-2E4-2E5-2E6", 12},   {&cubic, "6L-E1-E2-2E3-2E4-2E5-2E6", 14},
                    {&quartic, "6L-E1-2E2-2E3-2E4-2E5", 15},     {&quartic, "3L-E2-E3-E4-E5", 6},
                    {&quadric, "3F1+3F2", 16},                   {&cubic, "E1", 1}};
  for (const auto& h : h0s) {
    rec.eq<Coeff>("h0 of " + h.s->format(h.s->parse(h.cls)) + " on " + h.s->name(), h.want,
                  [&] { return h0_rational(*h.s, h.s->parse(h.cls)); });
  }

  rec.check("free decompositions", [&] {
    const auto a = bpf_decompose(cubic, cubic.parse("5L-2E1-2E2-E3-E4-E5-E6"));
    const auto b = bpf_decompose(quartic, quartic.parse("5L-2E1-E2-E3-E4-E5"));
    const auto c = bpf_decompose(cubic, cubic.parse("E1"));
    const bool ok = a && *a == std::vector{cubic.anticanonical(), cubic.parse("L-E1"), cubic.parse("L-E2")} && b &&
                    *b == std::vector{quartic.anticanonical(), quartic.parse("L-E1"), quartic.parse("L")} && !c;
    return std::pair{ok, std::string("[-K, L-E1, L-E2], [-K, L-E1, L], E1 has none")};
  });

  rec.check("sextic K3: C = H + R", [&] {
    const auto gram = opts.k3_gram.value_or(std::vector<std::vector<Coeff>>{{6, 4}, {4, -2}});
    const auto k3 = SurfaceModel::general(gram, std::vector<Coeff>(gram.size(), 0), PolarizedTag::K3, {"H", "R"});
    const auto hr = k3_stats(k3, k3.parse("H+R"), k3.parse("H"));
    const auto r = k3_stats(k3, k3.parse("R"), k3.parse("H"));
    const bool ok = hr.genus == 7 && hr.degree == 10 && hr.h0 == 8 && r.genus == 0 && r.h0 == 1;
    return std::pair{ok, "genus " + std::to_string(hr.genus) + ", degree " + std::to_string(hr.degree) + ", h0 " +
                             std::to_string(hr.h0) + "; h0(R) = " + std::to_string(r.h0)};
  });
}

void schubert_checks(Recorder& rec) {
  rec.group = "schubert";
  rec.check("sigma_2^3 in G(1,4)", [] {
    const auto c = power(SchubertCycle::sigma(4, 2), 3);
    return std::pair{top_degree(c) == 1 && c == SchubertCycle::sigma(4, 3, 3),
                     to_string(c) + "; nonzero as required (the printed form reads sigma_{2,2})"};
  });
  rec.eq<std::int64_t>("sigma_1^4 in G(1,3)", 2, [] { return top_degree(power(SchubertCycle::sigma(3, 1), 4)); });
  rec.eq<std::string>("sigma_2^2 in G(1,4)", "s[3,1] + s[2,2]",
                      [] { return to_string(power(SchubertCycle::sigma(4, 2), 2)); });
  rec.check("duality pairing for n <= 6", [] {
    int count = 0;
    for (int n = 1; n <= 6; ++n)
      for (int a = 0; a <= n - 1; ++a)
        for (int b = 0; b <= a; ++b, ++count) {
          const auto p = multiply(SchubertCycle::sigma(n, a, b), SchubertCycle::sigma(n, n - 1 - b, n - 1 - a));
          if (top_degree(p) != 1) return std::pair{false, std::string("fails")};
        }
    return std::pair{true, std::to_string(count) + " classes pair to 1 with their duals"};
  });
}

void engine_checks(Recorder& rec, const Engine& engine) {
  rec.group = "engine";
  rec.check("ledger entries validate", [&] {
    const auto problems = validate_ledger(engine.ledger());
    return std::pair{problems.empty(), problems.empty() ? std::to_string(engine.ledger().entries().size()) + " entries"
                                                        : problems.front()};
  });
  const std::map<std::pair<int, int>, Pairs> exceptional = {
      {{2, 1}, {}}, {{2, 2}, {}}, {{3, 1}, {{6, 4}}}, {{3, 2}, {{4, 1}, {5, 2}, {6, 2}, {6, 4}, {7, 5}, {8, 6}}},
      {{4, 1}, {{8, 5}, {9, 6}, {10, 7}}}};
  for (const auto& [rn, want] : exceptional) {
    const auto [r, n] = rn;
    rec.check("exceptional list for (r,n) = (" + std::to_string(r) + "," + std::to_string(n) + ")", [&, r = r, n = n] {
      Pairs got;
      for (std::int64_t d = 1; d <= 60; ++d)
        for (std::int64_t g = 0; g <= 40; ++g)
          if (engine.classify({r, n, d, g}).kind == Verdict::Kind::Exceptional) got.emplace_back(d, g);
      std::sort(got.begin(), got.end());
      return std::pair{got == want, got.empty() ? std::string("none") : pairs_str(got)};
    });
  }
  for (const auto& [r, n] : std::vector<std::pair<int, int>>{{3, 2}, {3, 1}, {4, 1}}) {
    rec.check("completeness for (" + std::to_string(r) + "," + std::to_string(n) + "), d <= 60, g <= 40", [&, r = r, n = n] {
      const auto gaps = engine.completeness_audit(r, n, 60, 40);
      return std::pair{gaps.empty(), gaps.empty() ? std::string("no underivable cases") : "first gap " + gaps.front().str()};
    });
  }
  const std::vector<std::tuple<int, int, int, Pairs>> frontiers = {
      {3, 2, 14, {{5, 1}, {7, 2}, {6, 3}, {7, 4}, {8, 5}, {9, 6}, {9, 7}, {10, 9}, {11, 10}, {12, 12}, {13, 13}, {14, 14}}},
      {3, 1, 6, {{7, 5}, {8, 6}}},
      {4, 1, 17, {{9, 5}, {10, 6}, {11, 7}, {12, 9}, {16, 15}, {17, 16}, {18, 17}}}};
  for (const auto& [r, n, gmax, want] : frontiers) {
    rec.check("frontier (" + std::to_string(r) + "," + std::to_string(n) + "), g <= " + std::to_string(gmax),
              [&, r = r, n = n, gmax = gmax, want = want] {
                const auto got = engine.frontier(r, n, gmax);
                return std::pair{got == want, pairs_str(got)};
              });
  }
  rec.check("gluing bounds, plane quartic in P^3 (k=2, d2=4, g2=3, n=6)", [] {
    const auto rep = side_condition_check(3, Glue{4, 3, 6, 2});
    const bool ok = rep.pass() && rep.checks[0].lhs == 6 && rep.checks[0].rhs == 6 && rep.checks[1].lhs == 6 &&
                    rep.checks[1].rhs == 6 && rep.checks[2].rhs == 2;
    return std::pair{ok, rep.checks[0].str() + "; " + rep.checks[1].str() + "; " + rep.checks[2].str()};
  });
  rec.check("gluing bounds, (9,6) curve in P^4 (k=1, n=7)", [] {
    const auto rep = side_condition_check(4, Glue{9, 6, 7, 1});
    const bool ok = rep.pass() && rep.checks[0].lhs == 14 && rep.checks[0].rhs == 18 && rep.checks[1].lhs == 7 &&
                    rep.checks[1].rhs == 6;
    return std::pair{ok, rep.checks[0].str() + "; " + rep.checks[1].str()};
  });
  rec.check("glued invariants", [] {
    const bool ok = composite_invariants({6, 1}, Glue{4, 3, 6, 2}) == std::pair<std::int64_t, std::int64_t>{10, 9} &&
                    composite_invariants({7, 3}, Glue{9, 6, 7, 1}) == std::pair<std::int64_t, std::int64_t>{16, 15};
    return std::pair{ok, std::string("(6,1)+(4,3,6) = (10,9); (7,3)+(9,6,7) = (16,15)")};
  });
  rec.check("traces replay soundly and survive a JSON round trip", [&] {
    std::size_t checked = 0;
    for (const auto& [r, n] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 2}, {3, 1}, {4, 1}}) {
      for (std::int64_t d = 1; d <= 40; ++d) {
        for (std::int64_t g = 0; g <= 30; ++g) {
          const Case q{r, n, d, g};
          const auto v = engine.classify(q);
          if (v.kind != Verdict::Kind::General) continue;
          auto problems = engine.check_trace(v.trace);
          const auto back = trace_from_json(Json::parse(trace_to_json(v.trace).dump()));
          if (problems.empty() && trace_to_json(back) != trace_to_json(v.trace)) problems.push_back("round trip differs");
          if (problems.empty()) problems = engine.check_trace(back);
          if (!problems.empty()) return std::pair{false, q.str() + ": " + problems.front()};
          ++checked;
        }
      }
    }
    return std::pair{true, std::to_string(checked) + " traces"};
  });
}

void audit_checks(Recorder& rec) {
  rec.group = "audits";
  rec.check("every exceptional case audits as not general", [] {
    const auto all = run_all_audits();
    const bool ok = all.size() == 10 && std::all_of(all.begin(), all.end(), [](const auto& a) { return a.not_general; });
    return std::pair{ok, std::to_string(all.size()) + " audits"};
  });
  const std::vector<std::tuple<Case, std::int64_t, std::int64_t>> deficits = {{{3, 2, 6, 2}, 23, 24}, {{3, 2, 7, 5}, 27, 28}};
  for (const auto& [c, total, ambient] : deficits) {
    rec.check("family dimension for " + c.str(), [c = c, total = total, ambient = ambient] {
      const auto a = run_audit(c);
      const auto& dd = std::get<DimensionDeficit>(a.evidence);
      return std::pair{dd.total == total && dd.ambient == ambient,
                       std::to_string(dd.total) + " < " + std::to_string(dd.ambient)};
    });
  }
  const std::vector<std::tuple<Case, std::int64_t, std::int64_t>> counts = {
      {{3, 2, 4, 1}, 8, 9},   {{3, 2, 5, 2}, 10, 9}, {{3, 2, 6, 4}, 12, 9}, {{3, 2, 8, 6}, 16, 16},
      {{3, 1, 6, 4}, 6, 6},   {{4, 1, 8, 5}, 8, 10}, {{4, 1, 10, 7}, 10, 10}};
  for (const auto& [c, points, h0] : counts) {
    rec.check("condition count for " + c.str(), [c = c, points = points, h0 = h0] {
      const auto a = run_audit(c);
      const auto& cc = std::get<ConditionCount>(a.evidence);
      return std::pair{cc.points == points && cc.h0 == h0 && a.not_general,
                       std::to_string(cc.points) + " points, h0 " + std::to_string(cc.h0)};
    });
  }
  rec.eq<std::string>("tangent determinant modulo t^2", "-4t", [] { return local_determinant_check().str(); });
  rec.check("cubic scroll bookkeeping", [] {
    const auto rep = scroll_case_study();
    return std::pair{rep.pass(), std::to_string(rep.checks.size()) + " sub-checks"};
  });
  for (const auto& which : surface_restriction_cases()) {
    rec.check("restriction isomorphism " + which, [&which] {
      const auto rep = surface_restriction_isomorphism_check(which);
      std::string detail;
      for (const auto& c : rep.checks) detail += (detail.empty() ? "" : "; ") + c.name + " = " + c.actual;
      return std::pair{rep.pass(), detail};
    });
  }
  rec.eq<std::int64_t>("h0(O_D(2H + Delta)) on the (3,3) curve", 11, [] { return rr_curve(14, 4); });
  rec.eq<std::int64_t>("h0(O_C(1)) for (6,2)", 5, [] { return rr_curve(6, 2); });
  rec.check("Riemann-Roch refuses the special range", [] {
    try {
      rr_curve(6, 4);
    } catch (const Refusal&) {
      return std::pair{true, std::string("degree 6 on genus 4 refused")};
    }
    return std::pair{false, std::string("no refusal")};
  });
  rec.eq<std::int64_t>("plane conics", 6, [] { return form_space_dim(FormAmbient::Plane, 2); });
  rec.eq<std::int64_t>("quadrics in P^3", 10, [] { return form_space_dim(FormAmbient::Space, 2); });
  rec.eq<std::int64_t>("(2,2) curves on P^1 x P^1", 9, [] { return form_space_dim(FormAmbient::QuadricSurface, 2, 2); });
}

}  // namespace

std::vector<VerifyLine> verify_all(const VerifyOptions& opts) {
  Recorder rec;
  numerology_checks(rec);
  lattice_checks(rec, opts);
  schubert_checks(rec);
  if (opts.ledger) {
    const Engine engine(opts.ledger);
    engine_checks(rec, engine);
  } else {
    engine_checks(rec, Engine::builtin());
  }
  audit_checks(rec);
  return rec.lines;
}

std::string render_verify_text(const std::vector<VerifyLine>& lines) {
  std::ostringstream out;
  std::size_t failed = 0;
  for (const auto& l : lines) {
    out << (l.pass ? "PASS " : "FAIL ") << l.group << ": " << l.name;
    if (!l.detail.empty()) out << " -- " << l.detail;
    out << "\n";
    failed += l.pass ? 0 : 1;
  }
  out << lines.size() - failed << "/" << lines.size() << " checks passed\n";
  return out.str();
}

Json verify_json(const std::vector<VerifyLine>& lines) {
  Json checks = Json::array();
  std::size_t failed = 0;
  for (const auto& l : lines) {
    checks.push_back(Json{{"group", l.group}, {"name", l.name}, {"pass", l.pass}, {"detail", l.detail}});
    failed += l.pass ? 0 : 1;
  }
  return Json{{"checks", checks}, {"passed", lines.size() - failed}, {"failed", failed}};
}

}  // namespace bnint
