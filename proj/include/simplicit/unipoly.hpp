#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "simplicit/rational.hpp"

namespace simplicit {

/* Dense univariate polynomial over Q; coefficient i multiplies rho^i.
 * Trailing zero coefficients are trimmed, so degree() is exact. */
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> coeffs);
  static UniPoly constant(const Rat& c);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  const Rat& leading() const;
  Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }

  Rat eval(const Rat& x) const;
  UniPoly derivative() const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly scaled(const Rat& c) const;
  bool operator==(const UniPoly& o) const = default;

  // Euclidean division; divisor must be nonzero.
  static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);
  // Monic GCD; gcd(0, 0) is 0.
  static UniPoly gcd(UniPoly a, UniPoly b);
  // p / gcd(p, p'): same roots, all simple.
  UniPoly squarefree_part() const;
  // Divides out rho^k; returns k (multiplicity of the root at 0).
  int strip_root_at_zero();

 private:
  void trim();
  std::vector<Rat> c_;
};

/* Sturm chain of a squarefree polynomial.  Members are scaled to primitive
 * integer coefficient vectors (positive factors), which keeps sign sequences
 * intact and coefficient growth down. */
class SturmChain {
 public:
  explicit SturmChain(const UniPoly& p);
  // Sign variations at x; zero signs are skipped.
  int variations(const Rat& x) const;
  /* Number of roots in (a, b], for a below b and p(a) != 0.  A root exactly
   * at b is counted because its sign is skipped at b. */
  long count(const Rat& a, const Rat& b) const;

 private:
  std::vector<UniPoly> seq_;
};

// Strict upper bound 1 + max |c_i| / |c_d| on the magnitude of real roots.
Rat cauchy_root_bound(const UniPoly& p);

struct RootBracket {
  Rat lo, hi;   // isolating interval (lo, hi] for the root
  bool exact;   // true when the root is exactly hi
  Rat value() const { return exact ? hi : (lo + hi) / 2; }
};

/* Smallest rho > 0 with p(rho) = 0, isolated to width <= tol, or nullopt
 * when p has no positive real root.  Roots at rho = 0 are ignored.  p must
 * be nonzero. */
std::optional<RootBracket> smallest_positive_root(const UniPoly& p, const Rat& tol);

}  // namespace simplicit
