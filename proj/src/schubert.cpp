#include "bnint/schubert.hpp"

#include <cctype>
#include <sstream>

namespace bnint {

namespace {

void check_partition(int n, int a, int b) {
  if (!(n - 1 >= a && a >= b && b >= 0)) {
    throw SchubertError("sigma_{" + std::to_string(a) + "," + std::to_string(b) + "} is not a class of G(1," +
                        std::to_string(n) + ")");
  }
}

// sigma_p * c for any integer p: zero outside 0 <= p <= n-1, identity at p = 0.
SchubertCycle pieri_any(int n, int p, const SchubertCycle& c) {
  if (p == 0) return c;
  SchubertCycle out(n);
  if (p < 0 || p > n - 1) return out;
  for (const auto& [part, coeff] : c.terms()) {
    // Horizontal strip of p boxes on two rows: n-1 >= a' >= a >= b' >= b.
    for (int b2 = part.b; b2 <= part.a; ++b2) {
      const int a2 = part.a + part.b + p - b2;
      if (a2 >= part.a && a2 <= n - 1) out.add_term({a2, b2}, coeff);
    }
  }
  return out;
}

}  // namespace

SchubertCycle::SchubertCycle(int ambient_n) : n_(ambient_n) {
  if (ambient_n < 1) throw SchubertError("G(1,n) needs n >= 1");
}

SchubertCycle SchubertCycle::identity(int ambient_n) { return sigma(ambient_n, 0, 0); }

SchubertCycle SchubertCycle::sigma(int ambient_n, int a, int b) {
  SchubertCycle c(ambient_n);
  check_partition(ambient_n, a, b);
  c.add_term({a, b}, 1);
  return c;
}

std::int64_t SchubertCycle::coefficient(int a, int b) const {
  const auto it = terms_.find({a, b});
  return it == terms_.end() ? 0 : it->second;
}

void SchubertCycle::add_term(TwoRowPartition p, std::int64_t c) {
  check_partition(n_, p.a, p.b);
  if (c == 0) return;
  auto& slot = terms_[p];
  if (__builtin_add_overflow(slot, c, &slot)) throw SchubertError("Schubert coefficient overflow");
  if (slot == 0) terms_.erase(p);
}

SchubertCycle& SchubertCycle::operator+=(const SchubertCycle& other) {
  if (other.n_ != n_) throw SchubertError("adding cycles on different Grassmannians");
  for (const auto& [p, c] : other.terms_) add_term(p, c);
  return *this;
}

SchubertCycle& SchubertCycle::operator-=(const SchubertCycle& other) { return *this += -1 * other; }

SchubertCycle operator*(std::int64_t s, SchubertCycle c) {
  for (auto it = c.terms_.begin(); it != c.terms_.end();) {
    if (s == 0) {
      it = c.terms_.erase(it);
      continue;
    }
    if (__builtin_mul_overflow(it->second, s, &it->second)) throw SchubertError("Schubert coefficient overflow");
    ++it;
  }
  return c;
}

SchubertCycle pieri(int n, int p, const SchubertCycle& c) {
  if (c.ambient() != n) throw SchubertError("cycle lives on a different Grassmannian");
  if (p < 1 || p > n - 1) {
    throw SchubertError("Pieri needs 1 <= p <= n-1, got p=" + std::to_string(p) + " on G(1," + std::to_string(n) + ")");
  }
  return pieri_any(n, p, c);
}

SchubertCycle multiply(const SchubertCycle& c1, const SchubertCycle& c2) {
  if (c1.ambient() != c2.ambient()) throw SchubertError("multiplying cycles on different Grassmannians");
  const int n = c1.ambient();
  SchubertCycle out(n);
  for (const auto& [part, coeff] : c1.terms()) {
    // Giambelli: sigma_{a,b} = sigma_a sigma_b - sigma_{a+1} sigma_{b-1}.
    SchubertCycle term = pieri_any(n, part.a, pieri_any(n, part.b, c2));
    term -= pieri_any(n, part.a + 1, pieri_any(n, part.b - 1, c2));
    out += coeff * std::move(term);
  }
  return out;
}

SchubertCycle power(const SchubertCycle& c, int e) {
  if (e < 0) throw SchubertError("negative exponent");
  SchubertCycle out = SchubertCycle::identity(c.ambient());
  for (int i = 0; i < e; ++i) out = multiply(out, c);
  return out;
}

std::int64_t top_degree(const SchubertCycle& c) {
  const int top = c.ambient() - 1;
  return c.coefficient(top, top);
}

std::string to_string(const SchubertCycle& c) {
  if (c.is_zero()) return "0";
  std::string out;
  for (auto it = c.terms().rbegin(); it != c.terms().rend(); ++it) {
    const auto [part, coeff] = *it;
    const std::int64_t mag = coeff < 0 ? -coeff : coeff;
    if (out.empty()) {
      if (coeff < 0) out += "-";
    } else {
      out += coeff < 0 ? " - " : " + ";
    }
    if (mag != 1) out += std::to_string(mag) + " ";
    out += "s[" + std::to_string(part.a) + "," + std::to_string(part.b) + "]";
  }
  return out;
}

SchubertCycle parse_schubert(int n, const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw SchubertError("empty Schubert expression");
  SchubertCycle out = SchubertCycle::identity(n);
  std::stringstream in(s);
  std::string factor;
  while (std::getline(in, factor, '*')) {
    int a = 0, b = 0, e = 1;
    std::size_t pos = 0;
    const auto fail = [&] { throw SchubertError("malformed Schubert factor '" + factor + "'"); };
    if (factor.empty() || factor[pos] != 's') fail();
    ++pos;
    const auto read_int = [&](int& v) {
      const std::size_t start = pos;
      while (pos < factor.size() && std::isdigit(static_cast<unsigned char>(factor[pos]))) ++pos;
      if (pos == start || pos - start > 6) fail();
      v = std::stoi(factor.substr(start, pos - start));
    };
    if (pos < factor.size() && factor[pos] == '[') {
      ++pos;
      read_int(a);
      if (pos < factor.size() && factor[pos] == ',') {
        ++pos;
        read_int(b);
      }
      if (pos >= factor.size() || factor[pos] != ']') fail();
      ++pos;
    } else {
      read_int(a);
    }
    if (pos < factor.size() && factor[pos] == '^') {
      ++pos;
      read_int(e);
    }
    if (pos != factor.size()) fail();
    out = multiply(out, power(SchubertCycle::sigma(n, a, b), e));
  }
  return out;
}

}  // namespace bnint
