#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simplicit/rational.hpp"

namespace simplicit {

/* Sparse multivariate polynomial with rational coefficients.  Terms live in a
 * map keyed by exponent vectors, so iteration order is lexicographic
 * ascending and the representation is canonical: no zero coefficients, every
 * exponent vector has length vars().size(), all exponents are >= 0. */
class MultiPoly {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, Rat>;

  MultiPoly() = default;  // zero polynomial in zero variables
  explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MultiPoly constant(std::vector<std::string> vars, const Rat& c);
  static MultiPoly variable(std::vector<std::string> vars, std::size_t index);

  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Constant term; for constants this is the whole value.
  Rat constant_value() const;

  int total_degree() const;             // -1 for the zero polynomial
  int degree_in(std::size_t var) const; // -1 for the zero polynomial
  int min_exponent(std::size_t var) const;  // over the support; 0 if zero poly

  // Merges into the term map, dropping the term if the sum cancels.
  void add_term(const Exponents& exp, const Rat& coef);

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  bool operator==(const MultiPoly& o) const = default;

  MultiPoly scaled(const Rat& c) const;
  MultiPoly pow(unsigned e) const;

  Rat eval(const std::vector<Rat>& point) const;
  double eval_double(const std::vector<double>& point) const;

  /* Exact quotient p/q, or nullopt when q does not divide p.  Division is by
   * the lex-leading term of q. */
  static std::optional<MultiPoly> divide_exact(const MultiPoly& p,
                                               const MultiPoly& q);

  // Terms in lex-descending order: "x^3 - 3*x*y + y^3".
  std::string to_string() const;

 private:
  void check_compatible(const MultiPoly& o) const;

  std::vector<std::string> vars_;
  TermMap terms_;
};

/* Quotient of two polynomials over a shared variable list.  Not reduced; the
 * only normalization is folding a constant denominator into the numerator.
 * Denominator is never the zero polynomial. */
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(MultiPoly num);
  RationalFunction(MultiPoly num, MultiPoly den);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction operator-() const;
  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction pow(unsigned e) const;

  // Throws denominator_zero when den(point) = 0.
  Rat eval(const std::vector<Rat>& point) const;
  double eval_double(const std::vector<double>& point) const;

 private:
  MultiPoly num_;
  MultiPoly den_;
};

/* p with each variable replaced by the corresponding rational function.
 * Every replacement must share one variable list. */
RationalFunction substitute(const MultiPoly& p,
                            const std::vector<RationalFunction>& repl);

// Coefficient of var^k, as a polynomial with zero degree in var.
MultiPoly coefficient_of(const MultiPoly& p, std::size_t var, int k);

/* GCD via primitive remainder sequences, recursing on the variable count.
 * Zero inputs pass through; any nonzero constant input gives 1.  The result
 * is determined up to a rational factor; callers wanting a canonical scale
 * normalize the lex-leading coefficient themselves. */
MultiPoly multipoly_gcd(const MultiPoly& a, const MultiPoly& b);

/* f in lowest terms, denominator normalized to lex-leading coefficient 1.
 * A constant denominator then folds into the numerator as usual. */
RationalFunction reduced(const RationalFunction& f);

}  // namespace simplicit
