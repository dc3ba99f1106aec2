#pragma once

// JSON and text rendering, the sweep table and the full verification run.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bnint/audits.hpp"
#include "bnint/engine.hpp"

namespace bnint {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaId = "bnint-report/1";
inline constexpr const char* kArtifactVersion = "1.0.0";

Json case_json(const Case& c);
Case case_from_json(const Json& j);

/// Traces serialize as a flat node list; node 0 is the root and "premises"
/// holds indices of child nodes. Shared subtrees are emitted once.
Json trace_to_json(const Trace& t);
Trace trace_from_json(const Json& j);

Json ledger_entry_json(const LedgerEntry& e);
Json audit_json(const AuditReport& a);

/// {query, verdict, trace[], citations[], audits[]}.
Json verdict_json(const Case& q, const Verdict& v, const Engine& engine);

/// Envelope with schema id, version and the command echo.
Json envelope(const std::vector<std::string>& command, Json result);

std::string render_trace_text(const Trace& t, const Engine& engine);
std::string render_verdict_text(const Case& q, const Verdict& v, const Engine& engine);
std::string render_audit_text(const AuditReport& a);

struct TableCell {
  std::int64_t d = 0;
  std::int64_t g = 0;
  std::string verdict;  // Invalid | General | Exceptional | Incomplete
};

struct Table {
  std::int64_t r = 0, n = 0, d_max = 0, g_max = 0;
  std::vector<TableCell> cells;  // ordered by (g, d)
  std::vector<std::pair<std::int64_t, std::int64_t>> frontier;
  bool incomplete() const;
};

inline constexpr std::int64_t kMaxSweepBound = 10000;

/// Parallel sweep over 1 <= d <= d_max, 0 <= g <= g_max; threads = 0 picks the hardware count.
Table build_table(const Engine& engine, std::int64_t r, std::int64_t n, std::int64_t d_max, std::int64_t g_max,
                  unsigned threads = 0);
Json table_json(const Table& t);
std::string render_table_text(const Table& t);

struct VerifyLine {
  std::string group;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  std::shared_ptr<const Ledger> ledger;  // null: built-in
  /// Gram matrix for the K3 check; null keeps the sextic K3 lattice.
  std::optional<std::vector<std::vector<Coeff>>> k3_gram;
};

std::vector<VerifyLine> verify_all(const VerifyOptions& opts);
std::string render_verify_text(const std::vector<VerifyLine>& lines);
Json verify_json(const std::vector<VerifyLine>& lines);

}  // namespace bnint
