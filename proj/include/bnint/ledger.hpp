#pragma once

// Base-case ledger: the axioms the classifier grounds its derivations in.
//
// File format: blocks introduced by a line "[entry]", followed by
// "key = value" lines. Blank lines and lines starting with '#' are ignored.
//
//   id        unique identifier
//   case      r n d g   (d and g may be '*' to match every in-domain case)
//   tag       FromInter | Genus2 | PlaneCurve | DelPezzo | CubicScroll |
//             HyperplaneGlue | PlaneCurveStep | TwoPointLine | SkewLinesBase
//   premises  cases "r n d g" separated by ';'
//   glue      d2 g2 n k  (curve glued on, number of gluing points, twist)
//   min_premise_degree   degree floor for the inductive hypothesis
//   surface   del_pezzo K | quadric | scroll
//   class     curve class on the surface
//   polarization         hyperplane class (default: anticanonical)
//   citation  lemma label the axiom rests on
//   quote     verbatim statement being cited
//   note      free text
//   flags     comma list of: auxiliary, premise-outside-domain

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bnint/numerology.hpp"

namespace bnint {

class LedgerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A classification query: hypersurface degree n in P^r, curve (d, g).
struct Case {
  std::int64_t r = 0;
  std::int64_t n = 0;
  std::int64_t d = 0;
  std::int64_t g = 0;

  BNIndex index() const { return {r, d, g}; }
  std::string str() const;
  friend auto operator<=>(const Case&, const Case&) = default;
};

struct CaseHash {
  std::size_t operator()(const Case& c) const noexcept;
};

bool supported_pair(std::int64_t r, std::int64_t n);
/// Supported (r, n), valid index and rho >= 0.
bool in_domain(const Case& c);

struct Glue {
  std::int64_t d2 = 0;
  std::int64_t g2 = 0;
  std::int64_t n = 0;
  std::int64_t k = 0;
  friend bool operator==(const Glue&, const Glue&) = default;
};

enum class LedgerTag {
  FromInter,
  Genus2,
  PlaneCurve,
  DelPezzo,
  CubicScroll,
  HyperplaneGlue,
  PlaneCurveStep,
  TwoPointLine,
  SkewLinesBase,
};

std::string to_string(LedgerTag t);
LedgerTag parse_ledger_tag(const std::string& s);

struct LedgerEntry {
  std::string id;
  std::int64_t r = 0;
  std::int64_t n = 0;
  std::optional<std::int64_t> d;  // nullopt: wildcard
  std::optional<std::int64_t> g;
  LedgerTag tag = LedgerTag::FromInter;
  std::vector<Case> premises;
  std::optional<Glue> glue;
  std::optional<std::int64_t> min_premise_degree;
  std::string surface;
  std::string cls;
  std::string polarization;
  std::string citation;
  std::string quote;
  std::string note;
  bool auxiliary = false;
  bool premise_outside_domain = false;
  int line = 0;  // first line of the block in its source

  bool matches(const Case& c) const;
  bool is_wildcard() const { return !d || !g; }
  /// The concrete case for non-wildcard entries.
  Case exact_case() const;
  std::string case_str() const;
};

class Ledger {
 public:
  static Ledger parse(const std::string& text, const std::string& source = "<ledger>");
  static Ledger load_file(const std::filesystem::path& path);
  /// The ledger compiled into the library.
  static std::shared_ptr<const Ledger> builtin();

  const std::vector<LedgerEntry>& entries() const noexcept { return entries_; }
  /// First exact match, otherwise first wildcard match.
  const LedgerEntry* find(const Case& c) const;
  const LedgerEntry* by_id(const std::string& id) const;
  const std::string& source() const noexcept { return source_; }

 private:
  std::string source_;
  std::vector<LedgerEntry> entries_;
  std::map<std::string, std::size_t> by_id_;
};

/// One inequality of a side-condition report, with both sides evaluated.
struct Inequality {
  std::string name;
  Integer lhs;
  std::string op;  // "<=" or ">="
  Integer rhs;
  bool holds() const { return op == "<=" ? lhs <= rhs : lhs >= rhs; }
  std::string str() const;
};

struct SideConditionReport {
  std::string entry_id;
  std::vector<Inequality> checks;
  bool pass() const;
};

/// (d + d2, g + g2 + n - 1): invariants of a curve glued at n points.
std::pair<std::int64_t, std::int64_t> composite_invariants(std::pair<std::int64_t, std::int64_t> f1,
                                                           const Glue& glue);

/// Gluing inequalities for entries with attached glue data: the hyperplane
/// Euler-characteristic bound, the H^1 bound and the smoothability bound.
SideConditionReport side_condition_check(const LedgerEntry& entry);
SideConditionReport side_condition_check(std::int64_t r, const Glue& glue);

/// Problems with one entry (empty when it is self-consistent).
std::vector<std::string> validate_entry(const LedgerEntry& entry);
std::vector<std::string> validate_ledger(const Ledger& ledger);

}  // namespace bnint
