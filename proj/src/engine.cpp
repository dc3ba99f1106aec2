#include "bnint/engine.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>

namespace bnint {

// ---------------------------------------------------------------------------
// Exceptional cases

const std::vector<ExceptionalDescriptor>& exceptional_descriptors() {
  static const std::vector<ExceptionalDescriptor> table = {
      {{3, 2, 4, 1}, "8 points cut out on the quadric by two general (2,2) curves", "3-2-4-1", ""},
      {{3, 2, 5, 2}, "10 general points on a (2,2) curve", "3-2-5-2", ""},
      {{3, 2, 6, 2},
       "12 points on a binodal (3,3) curve, summing to the pullback of O(2,2) on its genus-2 normalization",
       "3-2-6-2", ""},
      {{3, 2, 6, 4}, "12 points cut out by general curves of bidegrees (2,2) and (3,3)", "3-2-6-4", ""},
      {{3, 2, 7, 5}, "14 points on a (3,3) curve whose sum minus O(2,2) is effective", "3-2-7-5", ""},
      {{3, 2, 8, 6}, "16 general points on a (3,3) curve", "3-2-8-6", ""},
      {{3, 1, 6, 4}, "6 points on a conic", "3-1-6-4", ""},
      {{4, 1, 8, 5}, "8 points cut out by three general quadrics", "4-1-8-5", ""},
      {{4, 1, 9, 6}, "9 general points on an elliptic normal quartic curve", "4-1-9-6", ""},
      {{4, 1, 10, 7}, "10 points on a quadric", "4-1-10-7",
       "the theorem statement labels this bullet (8,5); the description matches (10,7)"},
  };
  return table;
}

const ExceptionalDescriptor* find_exceptional(const Case& c) {
  for (const auto& e : exceptional_descriptors()) {
    if (e.id == c) return &e;
  }
  return nullptr;
}

bool is_exceptional(const Case& c) { return find_exceptional(c) != nullptr; }

// ---------------------------------------------------------------------------
// Rules

std::string to_string(Rule r) {
  switch (r) {
    case Rule::AddLine: return "AddLine";
    case Rule::AddCanonical: return "AddCanonical";
    case Rule::Downgrade: return "Downgrade";
    case Rule::LedgerBase: return "LedgerBase";
  }
  return "?";
}

Rule parse_rule(const std::string& s) {
  for (Rule r : {Rule::AddLine, Rule::AddCanonical, Rule::Downgrade, Rule::LedgerBase}) {
    if (to_string(r) == s) return r;
  }
  throw LedgerError("unknown rule '" + s + "'");
}

std::string to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Invalid: return "Invalid";
    case Verdict::Kind::General: return "General";
    case Verdict::Kind::Exceptional: return "Exceptional";
  }
  return "?";
}

std::optional<Case> add_line_premise(const Case& c) {
  if ((c.r != 3 && c.r != 4) || !supported_pair(c.r, c.n) || c.d < 2) return std::nullopt;
  return Case{c.r, c.n, c.d - 1, c.g};
}

std::optional<Case> add_canonical_premise(const Case& c) {
  if (c.r == 3 && c.n == 2) return Case{3, 2, c.d - 6, c.g - 8};
  if (c.r == 4 && c.n == 1) return Case{4, 1, c.d - 8, c.g - 10};
  return std::nullopt;
}

std::optional<Case> downgrade_premise(const Case& c) {
  if (c.r == 3 && c.n == 1) return Case{3, 2, c.d, c.g};
  return std::nullopt;
}

Case skew_lines_case() { return {4, 1, 3, -2}; }

namespace {

bool usable(const Case& c) { return in_domain(c) && !is_exceptional(c); }

void walk(const Trace& t, const std::function<void(const TraceNode&)>& f) {
  if (!t) return;
  f(*t);
  for (const auto& ch : t->children) walk(ch, f);
}

}  // namespace

std::size_t trace_size(const Trace& t) {
  std::size_t n = 0;
  walk(t, [&](const TraceNode&) { ++n; });
  return n;
}

std::size_t trace_depth(const Trace& t) {
  if (!t) return 0;
  std::size_t best = 0;
  for (const auto& ch : t->children) best = std::max(best, trace_depth(ch));
  return best + 1;
}

std::vector<std::string> trace_citations(const Trace& t) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  walk(t, [&](const TraceNode& n) {
    if (n.rule == Rule::LedgerBase && seen.insert(n.ledger_id).second) out.push_back(n.ledger_id);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Engine

Engine::Engine(std::shared_ptr<const Ledger> ledger) : ledger_(std::move(ledger)) {
  if (!ledger_) throw LedgerError("engine needs a ledger");
}

const Engine& Engine::builtin() {
  static const Engine engine(Ledger::builtin());
  return engine;
}

Verdict Engine::classify(const Case& q) const {
  Verdict v;
  if (!supported_pair(q.r, q.n)) {
    v.reason = "unsupported (r,n) = (" + std::to_string(q.r) + "," + std::to_string(q.n) + ")";
    return v;
  }
  const BNIndex ix = q.index();
  if (!ix.valid()) {
    v.reason = "need d >= 1 and g >= 0";
    return v;
  }
  const Integer p = rho(ix);
  if (p < 0) {
    v.reason = "rho = " + to_string(p) + " < 0";
    return v;
  }
  if (const auto* e = find_exceptional(q)) {
    v.kind = Verdict::Kind::Exceptional;
    v.descriptor = e;
    return v;
  }
  v.trace = derive(q);
  if (!v.trace) throw IncompleteLedger(q);
  v.kind = Verdict::Kind::General;
  return v;
}

Trace Engine::derive(const Case& c) const {
  if (!usable(c)) return nullptr;
  {
    std::shared_lock lock(mu_);
    const auto it = memo_.find(c);
    if (it != memo_.end()) return it->second;
  }
  Trace t = derive_uncached(c);
  std::unique_lock lock(mu_);
  // Derivations are a pure function of the case, so a racing insert holds the same trace.
  return memo_.emplace(c, std::move(t)).first->second;
}

Trace Engine::ledger_node(const LedgerEntry& e, const Case& c) const {
  auto node = std::make_shared<TraceNode>();
  node->root = c;
  node->rule = Rule::LedgerBase;
  node->ledger_id = e.id;
  if (e.premise_outside_domain) {
    node->premises_unexpanded = true;
    return node;
  }
  for (const auto& p : e.premises) {
    Trace child = derive(p);
    if (!child) return nullptr;
    node->children.push_back(std::move(child));
  }
  return node;
}

Trace Engine::derive_uncached(const Case& c) const {
  const auto step = [&c](Rule r, Trace child) {
    auto node = std::make_shared<TraceNode>();
    node->root = c;
    node->rule = r;
    node->children.push_back(std::move(child));
    return Trace(std::move(node));
  };

  if (const auto p = add_line_premise(c)) {
    if (Trace t = derive(*p)) return step(Rule::AddLine, std::move(t));
  }
  if (const auto p = add_canonical_premise(c)) {
    if (*p == skew_lines_case()) {
      const LedgerEntry* aux = ledger_->find(*p);
      if (aux && aux->auxiliary) {
        if (Trace t = ledger_node(*aux, *p)) return step(Rule::AddCanonical, std::move(t));
      }
    } else if (Trace t = derive(*p)) {
      return step(Rule::AddCanonical, std::move(t));
    }
  }
  if (const auto p = downgrade_premise(c)) {
    if (Trace t = derive(*p)) return step(Rule::Downgrade, std::move(t));
  }
  if (const LedgerEntry* e = ledger_->find(c)) return ledger_node(*e, c);
  return nullptr;
}

std::vector<std::pair<std::int64_t, std::int64_t>> Engine::frontier(std::int64_t r, std::int64_t n,
                                                                    std::int64_t g_max) const {
  if (!supported_pair(r, n)) {
    throw DomainError("unsupported (r,n) = (" + std::to_string(r) + "," + std::to_string(n) + ")");
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  // The plane is seeded wholesale by a family axiom; there is no add-a-line induction to seed.
  if (r == 2) return out;
  for (std::int64_t g = 0; g <= g_max; ++g) {
    // Smallest degree with rho >= 0.
    const std::int64_t d_lo = std::max<std::int64_t>(1, (r * g + r * (r + 1) + r) / (r + 1));
    for (std::int64_t d = d_lo; d <= d_lo + 16; ++d) {
      const Case c{r, n, d, g};
      if (!usable(c)) continue;
      if (const auto p = add_line_premise(c); p && usable(*p)) continue;
      if (const auto p = add_canonical_premise(c); p && (*p == skew_lines_case() || usable(*p))) continue;
      if (const auto p = downgrade_premise(c); p && usable(*p)) continue;
      if (twist_vanishing_gate(c.index(), n) || genus_two_case(c.index())) continue;
      out.emplace_back(d, g);
    }
  }
  return out;
}

std::vector<Case> Engine::completeness_audit(std::int64_t r, std::int64_t n, std::int64_t d_max,
                                             std::int64_t g_max) const {
  if (!supported_pair(r, n)) {
    throw DomainError("unsupported (r,n) = (" + std::to_string(r) + "," + std::to_string(n) + ")");
  }
  std::vector<Case> missing;
  for (std::int64_t d = 1; d <= d_max; ++d) {
    for (std::int64_t g = 0; g <= g_max; ++g) {
      const Case c{r, n, d, g};
      if (usable(c) && !derive(c)) missing.push_back(c);
    }
  }
  std::sort(missing.begin(), missing.end(),
            [](const Case& a, const Case& b) { return std::pair{a.g, a.d} < std::pair{b.g, b.d}; });
  return missing;
}

std::vector<std::string> Engine::check_trace(const Trace& root) const {
  std::vector<std::string> problems;
  const std::function<void(const Trace&, bool)> visit = [&](const Trace& t, bool aux_allowed) {
    if (!t) {
      problems.push_back("null trace node");
      return;
    }
    const Case& c = t->root;
    const auto fail = [&](const std::string& msg) { problems.push_back(c.str() + " " + to_string(t->rule) + ": " + msg); };

    const LedgerEntry* entry = t->rule == Rule::LedgerBase ? ledger_->by_id(t->ledger_id) : nullptr;
    const bool aux = entry && entry->auxiliary;
    if (aux && !aux_allowed) fail("auxiliary ledger entry used outside a canonical step");
    if (!aux && !usable(c)) fail("case is out of domain or exceptional");

    for (const auto& ch : t->children) {
      if (!ch) continue;
      const bool same_degree_ok = t->rule == Rule::Downgrade && ch->root.d == c.d;
      if (ch->root.d >= c.d && !same_degree_ok) fail("premise degree does not decrease");
    }

    const auto expect_single = [&](const std::optional<Case>& want) {
      if (!want) {
        fail("rule does not apply to this (r,n)");
      } else if (t->children.size() != 1 || !t->children[0] || t->children[0]->root != *want) {
        fail("expected premise " + want->str());
      }
    };

    switch (t->rule) {
      case Rule::AddLine:
        expect_single(add_line_premise(c));
        break;
      case Rule::AddCanonical:
        expect_single(add_canonical_premise(c));
        break;
      case Rule::Downgrade:
        expect_single(downgrade_premise(c));
        break;
      case Rule::LedgerBase: {
        if (!entry) {
          fail("unknown ledger id '" + t->ledger_id + "'");
          break;
        }
        if (!entry->matches(c)) fail("ledger entry '" + entry->id + "' covers " + entry->case_str());
        for (const auto& p : validate_entry(*entry)) fail(p);
        if (entry->premise_outside_domain) {
          if (!t->premises_unexpanded || !t->children.empty()) fail("flagged premise must be left unexpanded");
        } else {
          if (t->premises_unexpanded) fail("premises marked unexpanded without a flag");
          if (t->children.size() != entry->premises.size()) {
            fail("premise count mismatch");
          } else {
            for (std::size_t i = 0; i < t->children.size(); ++i) {
              if (t->children[i] && t->children[i]->root != entry->premises[i]) {
                fail("premise " + std::to_string(i) + " should be " + entry->premises[i].str());
              }
            }
          }
        }
        break;
      }
    }
    for (const auto& ch : t->children) visit(ch, t->rule == Rule::AddCanonical);
  };
  visit(root, false);
  return problems;
}

}  // namespace bnint
