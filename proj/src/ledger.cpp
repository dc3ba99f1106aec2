#include "bnint/ledger.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include "bnint/lattice.hpp"

namespace bnint {

std::string Case::str() const {
  return "(" + std::to_string(r) + "," + std::to_string(n) + "," + std::to_string(d) + "," + std::to_string(g) + ")";
}

std::size_t CaseHash::operator()(const Case& c) const noexcept {
  std::size_t h = 0;
  for (std::int64_t v : {c.r, c.n, c.d, c.g}) h = h * 1000003u ^ std::hash<std::int64_t>{}(v);
  return h;
}

bool supported_pair(std::int64_t r, std::int64_t n) {
  return (r == 2 && (n == 1 || n == 2)) || (r == 3 && (n == 1 || n == 2)) || (r == 4 && n == 1);
}

bool in_domain(const Case& c) {
  if (!supported_pair(c.r, c.n)) return false;
  const BNIndex ix = c.index();
  return ix.valid() && rho(ix) >= 0;
}

namespace {

constexpr std::pair<LedgerTag, const char*> kTagNames[] = {
    {LedgerTag::FromInter, "FromInter"},       {LedgerTag::Genus2, "Genus2"},
    {LedgerTag::PlaneCurve, "PlaneCurve"},     {LedgerTag::DelPezzo, "DelPezzo"},
    {LedgerTag::CubicScroll, "CubicScroll"},   {LedgerTag::HyperplaneGlue, "HyperplaneGlue"},
    {LedgerTag::PlaneCurveStep, "PlaneCurveStep"}, {LedgerTag::TwoPointLine, "TwoPointLine"},
    {LedgerTag::SkewLinesBase, "SkewLinesBase"},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::int64_t parse_int(const std::string& tok, const std::string& where) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(tok, &used);
    if (used == tok.size()) return v;
  } catch (const std::exception&) {
  }
  throw LedgerError(where + ": expected an integer, got '" + tok + "'");
}

Case parse_case(const std::string& text, const std::string& where) {
  const auto toks = split_ws(text);
  if (toks.size() != 4) throw LedgerError(where + ": a case needs four integers 'r n d g'");
  return {parse_int(toks[0], where), parse_int(toks[1], where), parse_int(toks[2], where),
          parse_int(toks[3], where)};
}

SurfaceModel surface_from_name(const std::string& text) {
  const auto toks = split_ws(text);
  if (toks.size() == 2 && toks[0] == "del_pezzo") return SurfaceModel::del_pezzo(std::stoi(toks[1]));
  if (toks.size() == 1 && toks[0] == "quadric") return SurfaceModel::quadric();
  if (toks.size() == 1 && toks[0] == "scroll") return SurfaceModel::scroll();
  throw LedgerError("unknown surface '" + text + "'");
}

void finish_entry(LedgerEntry& e, const std::string& where) {
  if (e.id.empty()) throw LedgerError(where + ": entry without id");
  if (e.r == 0) throw LedgerError(where + ": entry '" + e.id + "' has no case");
  if (e.quote.empty() || e.citation.empty()) {
    throw LedgerError(where + ": entry '" + e.id + "' needs both a citation and a quote");
  }
}

}  // namespace

std::string to_string(LedgerTag t) {
  for (const auto& [tag, name] : kTagNames) {
    if (tag == t) return name;
  }
  return "?";
}

LedgerTag parse_ledger_tag(const std::string& s) {
  for (const auto& [tag, name] : kTagNames) {
    if (s == name) return tag;
  }
  throw LedgerError("unknown ledger tag '" + s + "'");
}

bool LedgerEntry::matches(const Case& c) const {
  return c.r == r && c.n == n && (!d || *d == c.d) && (!g || *g == c.g);
}

Case LedgerEntry::exact_case() const {
  if (is_wildcard()) throw LedgerError("entry '" + id + "' is a wildcard");
  return {r, n, *d, *g};
}

std::string LedgerEntry::case_str() const {
  const auto part = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string("*"); };
  return "(" + std::to_string(r) + "," + std::to_string(n) + "," + part(d) + "," + part(g) + ")";
}

Ledger Ledger::parse(const std::string& text, const std::string& source) {
  Ledger out;
  out.source_ = source;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  std::optional<LedgerEntry> cur;
  std::string cur_where;

  const auto flush = [&] {
    if (!cur) return;
    finish_entry(*cur, cur_where);
    if (out.by_id_.count(cur->id)) throw LedgerError(cur_where + ": duplicate id '" + cur->id + "'");
    out.by_id_[cur->id] = out.entries_.size();
    out.entries_.push_back(std::move(*cur));
    cur.reset();
  };

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    const std::string where = source + ":" + std::to_string(line_no);
    if (line.empty() || line[0] == '#') continue;
    if (line == "[entry]") {
      flush();
      cur.emplace();
      cur->line = line_no;
      cur_where = where;
      continue;
    }
    if (!cur) throw LedgerError(where + ": data outside an [entry] block");
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw LedgerError(where + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    LedgerEntry& e = *cur;

    if (key == "id") {
      e.id = value;
    } else if (key == "case") {
      const auto toks = split_ws(value);
      if (toks.size() != 4) throw LedgerError(where + ": a case needs four fields 'r n d g'");
      e.r = parse_int(toks[0], where);
      e.n = parse_int(toks[1], where);
      e.d = toks[2] == "*" ? std::nullopt : std::optional(parse_int(toks[2], where));
      e.g = toks[3] == "*" ? std::nullopt : std::optional(parse_int(toks[3], where));
    } else if (key == "tag") {
      try {
        e.tag = parse_ledger_tag(value);
      } catch (const LedgerError& err) {
        throw LedgerError(where + ": " + err.what());
      }
    } else if (key == "premises") {
      std::istringstream parts(value);
      for (std::string item; std::getline(parts, item, ';');) {
        if (!trim(item).empty()) e.premises.push_back(parse_case(item, where));
      }
    } else if (key == "glue") {
      const auto toks = split_ws(value);
      if (toks.size() != 4) throw LedgerError(where + ": glue needs 'd2 g2 n k'");
      e.glue = Glue{parse_int(toks[0], where), parse_int(toks[1], where), parse_int(toks[2], where),
                    parse_int(toks[3], where)};
    } else if (key == "min_premise_degree") {
      e.min_premise_degree = parse_int(value, where);
    } else if (key == "surface") {
      e.surface = value;
    } else if (key == "class") {
      e.cls = value;
    } else if (key == "polarization") {
      e.polarization = value;
    } else if (key == "citation") {
      e.citation = value;
    } else if (key == "quote") {
      e.quote = value;
    } else if (key == "note") {
      e.note = value;
    } else if (key == "flags") {
      std::istringstream parts(value);
      for (std::string flag; std::getline(parts, flag, ',');) {
        flag = trim(flag);
        if (flag == "auxiliary") {
          e.auxiliary = true;
        } else if (flag == "premise-outside-domain") {
          e.premise_outside_domain = true;
        } else if (!flag.empty()) {
          throw LedgerError(where + ": unknown flag '" + flag + "'");
        }
      }
    } else {
      throw LedgerError(where + ": unknown key '" + key + "'");
    }
  }
  flush();
  return out;
}

Ledger Ledger::load_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LedgerError("cannot open ledger file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

const LedgerEntry* Ledger::find(const Case& c) const {
  const LedgerEntry* wildcard = nullptr;
  for (const auto& e : entries_) {
    if (!e.matches(c)) continue;
    if (!e.is_wildcard()) return &e;
    if (!wildcard) wildcard = &e;
  }
  return wildcard;
}

const LedgerEntry* Ledger::by_id(const std::string& id) const {
  const auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &entries_[it->second];
}

// ---------------------------------------------------------------------------
// Side conditions

std::string Inequality::str() const {
  return name + ": " + to_string(lhs) + " " + op + " " + to_string(rhs) + (holds() ? " (holds)" : " (fails)");
}

bool SideConditionReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Inequality& q) { return q.holds(); });
}

std::pair<std::int64_t, std::int64_t> composite_invariants(std::pair<std::int64_t, std::int64_t> f1,
                                                           const Glue& glue) {
  if (glue.n < 1) throw DomainError("gluing needs at least one point");
  return {f1.first + glue.d2, f1.second + glue.g2 + glue.n - 1};
}

namespace {

Inequality smoothable_inequality(std::int64_t r, const Glue& glue) {
  return {"smoothable: n >= g2 - d2 + r", Integer(static_cast<long>(glue.n)), ">=",
          Integer(static_cast<long>(glue.g2 - glue.d2 + r))};
}

}  // namespace

SideConditionReport side_condition_check(std::int64_t r, const Glue& glue) {
  SideConditionReport rep;
  const Integer lhs3 = Integer(static_cast<long>(r - 2)) * Integer(static_cast<long>(glue.n));
  rep.checks.push_back({"chi bound: (r-2) n <= r d2 - (r-4)(g2-1) - k (r-2) d2", lhs3, "<=",
                        hyperplane_curve_chi(r, glue.d2, glue.g2, glue.k)});
  rep.checks.push_back({"h1 bound: n >= h1(O_D(1-k))", Integer(static_cast<long>(glue.n)), ">=",
                        hyperplane_twist_h1(glue.d2, glue.g2, glue.k)});
  rep.checks.push_back(smoothable_inequality(r, glue));
  return rep;
}

SideConditionReport side_condition_check(const LedgerEntry& entry) {
  if (!entry.glue) throw LedgerError("entry '" + entry.id + "' carries no glue data");
  SideConditionReport rep;
  if (entry.tag == LedgerTag::TwoPointLine) {
    // A line glued at two points: only the smoothability bound applies.
    rep.checks.push_back(smoothable_inequality(entry.r, *entry.glue));
  } else {
    rep = side_condition_check(entry.r, *entry.glue);
  }
  rep.entry_id = entry.id;
  return rep;
}

// ---------------------------------------------------------------------------
// Entry validation

std::vector<std::string> validate_entry(const LedgerEntry& e) {
  std::vector<std::string> problems;
  const auto fail = [&](const std::string& msg) { problems.push_back(e.id + ": " + msg); };

  if (!supported_pair(e.r, e.n)) fail("unsupported (r,n) = (" + std::to_string(e.r) + "," + std::to_string(e.n) + ")");
  if (e.auxiliary != (e.tag == LedgerTag::SkewLinesBase)) fail("only the skew-lines base may be auxiliary");
  if (e.is_wildcard()) {
    if (e.tag != LedgerTag::PlaneCurve) fail("only plane-curve entries may use wildcards");
    return problems;
  }
  const Case c = e.exact_case();
  if (!e.auxiliary && !in_domain(c)) fail("case " + c.str() + " has rho < 0 and is not flagged auxiliary");

  const bool glued = e.tag == LedgerTag::HyperplaneGlue || e.tag == LedgerTag::PlaneCurveStep ||
                     e.tag == LedgerTag::TwoPointLine;
  if (!glued && !e.premises.empty()) fail("premises are only allowed on gluing entries");

  switch (e.tag) {
    case LedgerTag::FromInter:
      if (c.r < 3 || !twist_vanishing_gate(c.index(), c.n)) fail("twist vanishing gate fails for " + c.str());
      break;
    case LedgerTag::Genus2:
      if (!genus_two_case(c.index())) fail("not a degree r+2, genus 2 case");
      break;
    case LedgerTag::PlaneCurve:
      if (c.r != 2) fail("plane-curve entries need r = 2");
      break;
    case LedgerTag::SkewLinesBase:
      if (c.r != 4 || c.n != 1 || c.d != 3 || c.g != 1 - c.d) fail("skew-lines base must be three disjoint lines in P^4");
      break;
    case LedgerTag::DelPezzo:
    case LedgerTag::CubicScroll: {
      if (e.surface.empty() || e.cls.empty()) {
        fail("surface entries need 'surface' and 'class'");
        break;
      }
      try {
        const SurfaceModel s = surface_from_name(e.surface);
        if ((e.tag == LedgerTag::CubicScroll) != (s.kind() == SurfaceKind::ScrollLattice)) {
          fail("tag does not match surface kind");
        }
        const DivisorClass cls = s.parse(e.cls);
        const DivisorClass h = e.polarization.empty() ? s.anticanonical() : s.parse(e.polarization);
        const Coeff deg = intersect(s, cls, h);
        const Coeff genus = adjunction_genus(s, cls);
        if (deg != c.d || genus != c.g) {
          fail("class " + s.format(cls) + " has (degree, genus) = (" + std::to_string(deg) + "," +
               std::to_string(genus) + "), expected (" + std::to_string(c.d) + "," + std::to_string(c.g) + ")");
        }
        // A del Pezzo surface must sit in P^r: h0(h) = r + 1.
        if (s.kind() == SurfaceKind::DelPezzoBlowup && h0_rational(s, h) != c.r + 1) {
          fail("polarization does not embed the surface in P^" + std::to_string(c.r));
        }
      } catch (const std::exception& err) {
        fail(std::string("surface data rejected: ") + err.what());
      }
      break;
    }
    case LedgerTag::HyperplaneGlue:
    case LedgerTag::PlaneCurveStep:
    case LedgerTag::TwoPointLine: {
      if (!e.glue) {
        fail("gluing entries need glue data");
        break;
      }
      if (e.premises.size() != 1) {
        fail("gluing entries need exactly one premise");
        break;
      }
      const Case& p = e.premises.front();
      if (p.r != c.r || p.n != c.n) fail("premise " + p.str() + " lives in a different (r,n)");
      if (composite_invariants({p.d, p.g}, *e.glue) != std::pair{c.d, c.g}) {
        fail("gluing " + p.str() + " does not produce " + c.str());
      }
      if (e.min_premise_degree && p.d < *e.min_premise_degree) fail("premise degree below the stated floor");
      if (e.premise_outside_domain == in_domain(p)) {
        fail(e.premise_outside_domain ? "premise flagged outside the domain but rho >= 0"
                                      : "premise " + p.str() + " is outside the domain and not flagged");
      }
      const auto rep = side_condition_check(e);
      for (const auto& q : rep.checks) {
        if (!q.holds()) fail("side condition fails: " + q.str());
      }
      break;
    }
  }
  if (e.premise_outside_domain && !glued) fail("premise-outside-domain flag on an entry without premises");
  return problems;
}

std::vector<std::string> validate_ledger(const Ledger& ledger) {
  std::vector<std::string> problems;
  for (const auto& e : ledger.entries()) {
    auto p = validate_entry(e);
    problems.insert(problems.end(), p.begin(), p.end());
  }
  return problems;
}

}  // namespace bnint

// Defined in the build-generated source that embeds data/ledger.txt.
extern const char* const kBuiltinLedgerText;

namespace bnint {

std::shared_ptr<const Ledger> Ledger::builtin() {
  static const auto ledger = std::make_shared<const Ledger>(Ledger::parse(kBuiltinLedgerText, "builtin-ledger"));
  return ledger;
}

}  // namespace bnint
