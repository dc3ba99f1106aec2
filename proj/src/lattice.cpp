#include "bnint/lattice.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <mutex>
#include <sstream>

namespace bnint {

namespace {

Coeff checked_mul(Coeff a, Coeff b) {
  Coeff out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw LatticeError("integer overflow in lattice arithmetic");
  return out;
}

Coeff checked_add(Coeff a, Coeff b) {
  Coeff out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw LatticeError("integer overflow in lattice arithmetic");
  return out;
}

void require_same_rank(const SurfaceModel& s, const DivisorClass& c) {
  if (c.rank() != s.rank()) {
    throw LatticeError("class of rank " + std::to_string(c.rank()) + " used on " + s.name() +
                       " of rank " + std::to_string(s.rank()));
  }
}

bool is_del_pezzo(const SurfaceModel& s) {
  return s.kind() == SurfaceKind::DelPezzoBlowup && s.blown_up_points() >= 2 && s.blown_up_points() <= 6;
}

}  // namespace

bool DivisorClass::is_zero() const noexcept {
  return std::all_of(coeffs.begin(), coeffs.end(), [](Coeff c) { return c == 0; });
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& other) {
  if (other.rank() != rank()) throw LatticeError("adding classes of different rank");
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = checked_add(coeffs[i], other.coeffs[i]);
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& other) {
  return *this += Coeff{-1} * other;
}

DivisorClass operator*(Coeff s, DivisorClass a) {
  for (auto& c : a.coeffs) c = checked_mul(s, c);
  return a;
}

// ---------------------------------------------------------------------------
// Surface models

SurfaceModel SurfaceModel::del_pezzo(int k) {
  if (k < 2 || k > 6) throw LatticeError("del Pezzo blowups are supported for 2 <= k <= 6, got " + std::to_string(k));
  SurfaceModel s;
  s.kind_ = SurfaceKind::DelPezzoBlowup;
  s.points_ = k;
  const auto n = static_cast<std::size_t>(k) + 1;
  s.gram_.assign(n, std::vector<Coeff>(n, 0));
  s.gram_[0][0] = 1;
  for (std::size_t i = 1; i < n; ++i) s.gram_[i][i] = -1;
  s.canonical_ = DivisorClass(std::vector<Coeff>(n, 1));
  s.canonical_.coeffs[0] = -3;
  s.names_.push_back("L");
  for (int i = 1; i <= k; ++i) s.names_.push_back("E" + std::to_string(i));
  s.check_invariants();
  return s;
}

SurfaceModel SurfaceModel::quadric() {
  SurfaceModel s;
  s.kind_ = SurfaceKind::QuadricSurface;
  s.gram_ = {{0, 1}, {1, 0}};
  s.canonical_ = DivisorClass({-2, -2});
  s.names_ = {"F1", "F2"};
  s.check_invariants();
  return s;
}

SurfaceModel SurfaceModel::scroll() {
  SurfaceModel s;
  s.kind_ = SurfaceKind::ScrollLattice;
  s.points_ = 1;
  s.gram_ = {{1, 0}, {0, -1}};
  s.canonical_ = DivisorClass({-3, 1});
  s.names_ = {"L", "E"};
  s.check_invariants();
  return s;
}

SurfaceModel SurfaceModel::general(std::vector<std::vector<Coeff>> gram, std::vector<Coeff> canonical,
                                   PolarizedTag tag, std::vector<std::string> basis_names) {
  SurfaceModel s;
  s.kind_ = SurfaceKind::GeneralPolarized;
  s.tag_ = tag;
  s.gram_ = std::move(gram);
  s.canonical_ = DivisorClass(std::move(canonical));
  s.names_ = std::move(basis_names);
  s.check_invariants();
  return s;
}

std::string SurfaceModel::name() const {
  switch (kind_) {
    case SurfaceKind::DelPezzoBlowup: return "blowup of P^2 at " + std::to_string(points_) + " points";
    case SurfaceKind::QuadricSurface: return "P^1 x P^1";
    case SurfaceKind::ScrollLattice: return "cubic scroll lattice";
    case SurfaceKind::GeneralPolarized: return tag_ == PolarizedTag::K3 ? "K3 lattice" : "polarized rational lattice";
  }
  return "surface";
}

void SurfaceModel::check_invariants() const {
  const std::size_t n = gram_.size();
  if (n == 0) throw LatticeError("empty Gram matrix");
  for (const auto& row : gram_) {
    if (row.size() != n) throw LatticeError("Gram matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (gram_[i][j] != gram_[j][i]) {
        throw LatticeError("Gram matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  if (canonical_.rank() != n) throw LatticeError("canonical class has the wrong rank");
  if (names_.size() != n) throw LatticeError("basis labels do not match the lattice rank");

  switch (kind_) {
    case SurfaceKind::DelPezzoBlowup:
    case SurfaceKind::ScrollLattice:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const Coeff want = i != j ? 0 : (i == 0 ? 1 : -1);
          if (gram_[i][j] != want) throw LatticeError("blowup Gram matrix must be diag(1,-1,...,-1)");
        }
      }
      if (canonical_.coeffs[0] != -3 ||
          !std::all_of(canonical_.coeffs.begin() + 1, canonical_.coeffs.end(), [](Coeff c) { return c == 1; })) {
        throw LatticeError("blowup canonical class must be -3L + sum E_i");
      }
      break;
    case SurfaceKind::QuadricSurface:
      if (canonical_ != DivisorClass({-2, -2})) throw LatticeError("quadric canonical class must be (-2,-2)");
      break;
    case SurfaceKind::GeneralPolarized:
      if (tag_ == PolarizedTag::K3 && !canonical_.is_zero()) throw LatticeError("K3 canonical class must vanish");
      break;
  }
}

DivisorClass SurfaceModel::basis_vector(std::size_t i, Coeff scale) const {
  DivisorClass c(std::vector<Coeff>(rank(), 0));
  c.coeffs.at(i) = scale;
  return c;
}

DivisorClass SurfaceModel::parse(std::string_view text) const {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw LatticeError("empty class expression");

  const bool has_letter = std::any_of(s.begin(), s.end(), [](char ch) { return std::isalpha(static_cast<unsigned char>(ch)); });
  if (!has_letter) {
    // Coefficient list, optionally parenthesised: "5,-2,0" or "(3,3)".
    if (s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    std::vector<Coeff> coeffs;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        std::size_t used = 0;
        coeffs.push_back(std::stoll(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw LatticeError("malformed coefficient '" + item + "'");
      }
    }
    if (coeffs.size() != rank()) {
      throw LatticeError("expected " + std::to_string(rank()) + " coefficients, got " + std::to_string(coeffs.size()));
    }
    return DivisorClass(std::move(coeffs));
  }

  DivisorClass out(std::vector<Coeff>(rank(), 0));
  std::size_t pos = 0;
  while (pos < s.size()) {
    Coeff sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      throw LatticeError("expected '+' or '-' at position " + std::to_string(pos) + " in '" + s + "'");
    }
    Coeff mult = 1;
    const std::size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos > digits) mult = std::stoll(s.substr(digits, pos - digits));
    if (pos < s.size() && s[pos] == '*') ++pos;

    std::size_t best = names_.size();
    std::size_t best_len = 0;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const auto& label = names_[i];
      if (label.size() > best_len && s.compare(pos, label.size(), label) == 0) {
        const std::size_t end = pos + label.size();
        // Do not let "E1" match the prefix of "E12".
        if (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end])) &&
            std::isdigit(static_cast<unsigned char>(label.back()))) {
          continue;
        }
        best = i;
        best_len = label.size();
      }
    }
    if (best == names_.size()) {
      throw LatticeError("unknown basis label at '" + s.substr(pos) + "' for " + name());
    }
    pos += best_len;
    out.coeffs[best] = checked_add(out.coeffs[best], checked_mul(sign, mult));
  }
  return out;
}

std::string SurfaceModel::format(const DivisorClass& c) const {
  require_same_rank(*this, c);
  std::string out;
  for (std::size_t i = 0; i < c.rank(); ++i) {
    const Coeff v = c.coeffs[i];
    if (v == 0) continue;
    if (v < 0) {
      out += '-';
    } else if (!out.empty()) {
      out += '+';
    }
    const Coeff mag = v < 0 ? -v : v;
    if (mag != 1) out += std::to_string(mag);
    out += names_[i];
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Intersection theory

Coeff intersect(const SurfaceModel& s, const DivisorClass& a, const DivisorClass& b) {
  require_same_rank(s, a);
  require_same_rank(s, b);
  const auto& gram = s.gram();
  Coeff total = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (a.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < b.rank(); ++j) {
      if (gram[i][j] == 0 || b.coeffs[j] == 0) continue;
      total = checked_add(total, checked_mul(a.coeffs[i], checked_mul(gram[i][j], b.coeffs[j])));
    }
  }
  return total;
}

Coeff self_intersection(const SurfaceModel& s, const DivisorClass& c) { return intersect(s, c, c); }

Coeff adjunction_genus(const SurfaceModel& s, const DivisorClass& c) {
  const Coeff twice = checked_add(self_intersection(s, c), intersect(s, c, s.canonical()));
  if (twice % 2 != 0) {
    throw LatticeError("malformed class " + s.format(c) + ": C^2 + C.K is odd");
  }
  return 1 + twice / 2;
}

Coeff anticanonical_degree(const SurfaceModel& s, const DivisorClass& c) {
  if (!s.is_rational()) throw Refusal("anticanonical degree is undefined on a K3 lattice; use the polarization");
  return -intersect(s, c, s.canonical());
}

Coeff line_search_degree_bound(int k) {
  // Largest a with (9 - k) a^2 - 6 a + (1 - k) <= 0.
  if (k < 1 || k > 8) throw LatticeError("line search bound needs 1 <= k <= 8");
  Coeff a = 0;
  while ((9 - k) * (a + 1) * (a + 1) - 6 * (a + 1) + (1 - k) <= 0) ++a;
  return a;
}

namespace {

// Exhaustive search for a^2 - sum c_i^2 = -1 and 3a + sum c_i = 1 on the
// class a L + sum c_i E_i. Once a is fixed, sum c_i^2 = a^2 + 1 bounds every
// |c_i| by floor(sqrt(a^2 + 1)).
std::vector<DivisorClass> search_lines(int k) {
  const Coeff a_max = line_search_degree_bound(k);
  std::vector<DivisorClass> found;
  std::vector<Coeff> c(static_cast<std::size_t>(k) + 1, 0);
  for (Coeff a = 0; a <= a_max; ++a) {
    Coeff cmax = 0;
    while ((cmax + 1) * (cmax + 1) <= a * a + 1) ++cmax;
    c[0] = a;
    // Odometer over the E-coefficients.
    std::vector<Coeff> e(static_cast<std::size_t>(k), -cmax);
    while (true) {
      Coeff sq = 0;
      Coeff lin = 0;
      for (Coeff x : e) {
        sq += x * x;
        lin += x;
      }
      if (a * a - sq == -1 && 3 * a + lin == 1) {
        std::copy(e.begin(), e.end(), c.begin() + 1);
        found.emplace_back(c);
      }
      std::size_t i = 0;
      while (i < e.size() && e[i] == cmax) e[i++] = -cmax;
      if (i == e.size()) break;
      ++e[i];
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace

const std::vector<DivisorClass>& enumerate_lines(const SurfaceModel& s) {
  if (!is_del_pezzo(s)) throw Refusal("line enumeration needs a del Pezzo blowup with 2 <= k <= 6");
  static std::array<std::once_flag, 7> once;
  static std::array<std::vector<DivisorClass>, 7> cache;
  const auto k = static_cast<std::size_t>(s.blown_up_points());
  std::call_once(once[k], [k] { cache[k] = search_lines(static_cast<int>(k)); });
  return cache[k];
}

Positivity positivity(const SurfaceModel& s, const DivisorClass& c) {
  require_same_rank(s, c);
  Positivity p;
  if (s.kind() == SurfaceKind::QuadricSurface) {
    const Coeff a = c.coeffs[0];
    const Coeff b = c.coeffs[1];
    p.nef = a >= 0 && b >= 0;
    p.ample = a > 0 && b > 0;
    p.big = p.nef && self_intersection(s, c) > 0;
    return p;
  }
  if (!is_del_pezzo(s)) throw Refusal("positivity is only certified on del Pezzo blowups and P^1 x P^1");
  bool nonneg = true;
  bool positive = true;
  for (const auto& line : enumerate_lines(s)) {
    const Coeff v = intersect(s, c, line);
    nonneg = nonneg && v >= 0;
    positive = positive && v > 0;
  }
  const Coeff sq = self_intersection(s, c);
  p.nef = nonneg;
  p.big = nonneg && sq > 0;
  p.ample = positive && sq > 0;
  return p;
}

bool kv_vanishing_certificate(const SurfaceModel& s, const DivisorClass& b) {
  const Positivity p = positivity(s, b - s.canonical());
  return p.nef && p.big;
}

H0Certificate h0_certificate(const SurfaceModel& s, const DivisorClass& c) {
  require_same_rank(s, c);
  H0Certificate cert;
  const auto riemann_roch = [&s](const DivisorClass& x) {
    const Coeff twice = self_intersection(s, x) - intersect(s, x, s.canonical());
    return 1 + twice / 2;
  };

  if (s.kind() == SurfaceKind::QuadricSurface) {
    if (!positivity(s, c).nef) {
      cert.not_effective = true;
      cert.fixed_lines.clear();
      cert.moving_part = c;
      return cert;
    }
    cert.moving_part = c;
    cert.h0 = riemann_roch(c);
    return cert;
  }
  if (!is_del_pezzo(s)) throw Refusal("h0 is only certified on del Pezzo blowups and P^1 x P^1");

  // A (-1)-curve meeting the class negatively is a fixed component; peel it
  // off until the class is nef (then h1 = h2 = 0) or has negative degree.
  DivisorClass rest = c;
  while (true) {
    if (anticanonical_degree(s, rest) < 0) {
      cert.not_effective = true;
      cert.moving_part = rest;
      cert.h0 = 0;
      return cert;
    }
    const auto& lines = enumerate_lines(s);
    const auto neg = std::find_if(lines.begin(), lines.end(),
                                  [&](const DivisorClass& l) { return intersect(s, rest, l) < 0; });
    if (neg == lines.end()) break;
    cert.fixed_lines.push_back(*neg);
    rest -= *neg;
  }
  cert.moving_part = rest;
  cert.h0 = riemann_roch(rest);
  return cert;
}

Coeff h0_rational(const SurfaceModel& s, const DivisorClass& c) { return h0_certificate(s, c).h0; }

std::vector<DivisorClass> bpf_generators(const SurfaceModel& s) {
  if (!is_del_pezzo(s)) throw Refusal("basepoint-free generators are defined on del Pezzo blowups only");
  const int k = s.blown_up_points();
  std::vector<DivisorClass> gens;
  gens.push_back(s.anticanonical());
  for (int i = 1; i <= k; ++i) gens.push_back(s.basis_vector(0) - s.basis_vector(static_cast<std::size_t>(i)));
  if (k >= 4) {
    for (int a = 1; a <= k; ++a)
      for (int b = a + 1; b <= k; ++b)
        for (int c = b + 1; c <= k; ++c)
          for (int d = c + 1; d <= k; ++d) {
            DivisorClass q = s.basis_vector(0, 2);
            for (int idx : {a, b, c, d}) q -= s.basis_vector(static_cast<std::size_t>(idx));
            gens.push_back(std::move(q));
          }
  }
  gens.push_back(s.basis_vector(0));
  return gens;
}

namespace {

bool decompose_exact(const std::vector<DivisorClass>& gens, std::size_t start, int slots, DivisorClass& remaining,
                     std::vector<std::size_t>& picked) {
  if (slots == 0) return remaining.is_zero();
  // Every generator has L-coefficient in [1, 3] and E-coefficients in [-1, 0].
  const Coeff l = remaining.coeffs[0];
  if (l < slots || l > 3 * static_cast<Coeff>(slots)) return false;
  for (std::size_t i = 1; i < remaining.rank(); ++i) {
    if (remaining.coeffs[i] > 0 || remaining.coeffs[i] < -static_cast<Coeff>(slots)) return false;
  }
  for (std::size_t g = start; g < gens.size(); ++g) {
    remaining -= gens[g];
    picked.push_back(g);
    if (decompose_exact(gens, g, slots - 1, remaining, picked)) return true;
    picked.pop_back();
    remaining += gens[g];
  }
  return false;
}

}  // namespace

std::optional<std::vector<DivisorClass>> bpf_decompose(const SurfaceModel& s, const DivisorClass& c) {
  require_same_rank(s, c);
  const auto gens = bpf_generators(s);
  // Shortest decomposition first, multisets in generator order.
  for (int slots = 0; slots <= std::max<Coeff>(c.coeffs[0], 0); ++slots) {
    DivisorClass remaining = c;
    std::vector<std::size_t> picked;
    if (decompose_exact(gens, 0, slots, remaining, picked)) {
      std::vector<DivisorClass> out;
      for (std::size_t g : picked) out.push_back(gens[g]);
      return out;
    }
  }
  return std::nullopt;
}

K3Stats k3_stats(const SurfaceModel& s, const DivisorClass& c, const DivisorClass& h) {
  if (s.tag() != PolarizedTag::K3) throw Refusal("k3_stats needs a K3 lattice");
  const Coeff sq = self_intersection(s, c);
  if (sq % 2 != 0) throw LatticeError("malformed class " + s.format(c) + ": odd self-intersection on a K3");
  K3Stats out;
  out.genus = 1 + sq / 2;
  out.degree = intersect(s, c, h);
  out.h0 = 1 + out.genus;
  return out;
}

Coeff restricted_degree(const SurfaceModel& s, const DivisorClass& c, const DivisorClass& b, Coeff point_shift) {
  return checked_add(intersect(s, c, b), point_shift);
}

}  // namespace bnint
