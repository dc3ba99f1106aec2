#pragma once

// Classification of (r, n, d, g) queries with derivation traces grounded in
// the ledger.

#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bnint/ledger.hpp"

namespace bnint {

/// A non-exceptional in-domain case with no derivation: the ledger is incomplete.
class IncompleteLedger : public std::runtime_error {
 public:
  explicit IncompleteLedger(const Case& c)
      : std::runtime_error("no derivation for " + c.str() + ": ledger is incomplete"), which(c) {}
  Case which;
};

struct ExceptionalDescriptor {
  Case id;
  std::string description;
  std::string audit_id;
  std::string remark;  // empty unless the source statement needs a note
};

const std::vector<ExceptionalDescriptor>& exceptional_descriptors();
const ExceptionalDescriptor* find_exceptional(const Case& c);
bool is_exceptional(const Case& c);

enum class Rule { AddLine, AddCanonical, Downgrade, LedgerBase };
std::string to_string(Rule r);
Rule parse_rule(const std::string& s);

struct TraceNode;
using Trace = std::shared_ptr<const TraceNode>;

struct TraceNode {
  Case root;
  Rule rule = Rule::LedgerBase;
  std::string ledger_id;            // LedgerBase only
  std::vector<Trace> children;
  bool premises_unexpanded = false; // ledger premise recorded but outside the domain
};

std::size_t trace_size(const Trace& t);
std::size_t trace_depth(const Trace& t);
/// Ledger ids cited anywhere in the trace, in first-visit order.
std::vector<std::string> trace_citations(const Trace& t);

struct Verdict {
  enum class Kind { Invalid, General, Exceptional };
  Kind kind = Kind::Invalid;
  std::string reason;                             // Invalid
  Trace trace;                                    // General
  const ExceptionalDescriptor* descriptor = nullptr;  // Exceptional
};

std::string to_string(Verdict::Kind k);

class Engine {
 public:
  explicit Engine(std::shared_ptr<const Ledger> ledger);
  static const Engine& builtin();

  const Ledger& ledger() const noexcept { return *ledger_; }

  /// Throws IncompleteLedger if a General case cannot be derived.
  Verdict classify(const Case& q) const;
  /// Derivation for an in-domain non-exceptional case, or nullptr.
  Trace derive(const Case& c) const;

  std::vector<std::pair<std::int64_t, std::int64_t>> frontier(std::int64_t r, std::int64_t n,
                                                              std::int64_t g_max) const;
  std::vector<Case> completeness_audit(std::int64_t r, std::int64_t n, std::int64_t d_max,
                                       std::int64_t g_max) const;

  /// Replays a trace bottom-up; returns the problems found (empty when sound).
  std::vector<std::string> check_trace(const Trace& t) const;

 private:
  Trace derive_uncached(const Case& c) const;
  Trace ledger_node(const LedgerEntry& e, const Case& c) const;

  std::shared_ptr<const Ledger> ledger_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<Case, Trace, CaseHash> memo_;
};

/// Premise of each reduction rule, or nullopt when the rule does not apply to (r, n).
std::optional<Case> add_line_premise(const Case& c);
std::optional<Case> add_canonical_premise(const Case& c);
std::optional<Case> downgrade_premise(const Case& c);
/// The auxiliary three-skew-lines case used by the P^4 canonical step.
Case skew_lines_case();

}  // namespace bnint
