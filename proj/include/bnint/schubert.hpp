#pragma once

// Cohomology of the Grassmannian G(1,n) of lines in P^n, with classes
// indexed by two-row partitions a >= b.

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace bnint {

class SchubertError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TwoRowPartition {
  int a = 0;
  int b = 0;
  int size() const noexcept { return a + b; }
  friend auto operator<=>(const TwoRowPartition&, const TwoRowPartition&) = default;
};

class SchubertCycle {
 public:
  explicit SchubertCycle(int ambient_n);

  static SchubertCycle identity(int ambient_n);
  /// sigma_{a,b}; requires n-1 >= a >= b >= 0.
  static SchubertCycle sigma(int ambient_n, int a, int b = 0);

  int ambient() const noexcept { return n_; }
  const std::map<TwoRowPartition, std::int64_t>& terms() const noexcept { return terms_; }
  std::int64_t coefficient(int a, int b) const;
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Adds c * sigma_{a,b}, dropping the term if it cancels.
  void add_term(TwoRowPartition p, std::int64_t c);

  SchubertCycle& operator+=(const SchubertCycle& other);
  SchubertCycle& operator-=(const SchubertCycle& other);
  friend SchubertCycle operator*(std::int64_t s, SchubertCycle c);
  friend bool operator==(const SchubertCycle&, const SchubertCycle&) = default;

 private:
  int n_;
  std::map<TwoRowPartition, std::int64_t> terms_;
};

/// Multiplication by the special class sigma_p, 1 <= p <= n-1.
SchubertCycle pieri(int n, int p, const SchubertCycle& c);
SchubertCycle multiply(const SchubertCycle& c1, const SchubertCycle& c2);
SchubertCycle power(const SchubertCycle& c, int e);
/// Coefficient of the point class sigma_{n-1,n-1}.
std::int64_t top_degree(const SchubertCycle& c);

/// "s[3,1] + s[2,2]", largest first part first; "0" for the zero class.
std::string to_string(const SchubertCycle& c);
/// Parses "s2", "s[3,1]", "s[1,1]^2" style monomials joined by '*'.
SchubertCycle parse_schubert(int n, const std::string& text);

}  // namespace bnint
