#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "simplicit/interp.hpp"
#include "simplicit/param.hpp"
#include "simplicit/polytope.hpp"

namespace simplicit {

// A nonzero polynomial in the coordinate variables.
struct ImplicitPolynomial {
  MultiPoly poly;

  explicit ImplicitPolynomial(MultiPoly p) : poly(std::move(p)) {
    if (poly.is_zero())
      fail(ErrorCode::zero_polynomial, "implicit polynomial cannot be zero");
  }

  Rat eval(const std::vector<Rat>& point) const { return poly.eval(point); }
  std::string to_string() const { return poly.to_string(); }
};

// Rescales so the lex-greatest term has coefficient 1.
ImplicitPolynomial normalize_leading(const ImplicitPolynomial& p);

/* Polynomial j carries kernel entry j as the coefficient of the monomial of
 * support point j; no rescaling beyond the kernel's own normalization. */
std::vector<ImplicitPolynomial> kernel_to_polys(const KernelBasis& kernel,
                                                const SupportSet& support,
                                                const std::vector<std::string>& var_names);

/* GCD over Q, computed by a primitive-remainder subresultant recursion.
 * A single input comes back unchanged; otherwise the result is normalized
 * to leading coefficient 1.  At least one input must be nonzero. */
MultiPoly poly_gcd(const std::vector<MultiPoly>& polys);

// Divides out the largest monomial factor x^gamma (componentwise minimum).
MultiPoly strip_monomial(const MultiPoly& p);

struct ImplicitizeConfig {
  MatrixMode mode = MatrixMode::exact;
  double tolerance = 1e-8;          // approximate-mode singular value cutoff
  std::uint64_t seed = 1;
  std::optional<double> mu_factor;  // rows = ceil(factor * |S|); default 1 exact, 2 approximate
  EnumerationCaps caps;
  bool validate_genericity = true;  // rebuild with a derived seed and compare kernels
};

struct ImplicitizeDiagnostics {
  std::size_t support_size = 0;
  std::size_t mu = 0;
  std::size_t corank_reported = 0;  // mode-dependent corank of the matrix
  std::size_t corank_exact = 0;     // exact kernel dimension actually used
  std::uint64_t seed = 0;
  std::uint64_t check_seed = 0;
  MatrixMode mode = MatrixMode::exact;
  bool gcd_path = false;  // corank > 1: output is the kernel GCD
  std::vector<std::string> notes;
};

struct ImplicitizeResult {
  ImplicitPolynomial polynomial;
  ImplicitizeDiagnostics diagnostics;
};

/* Full pipeline on a predicted support polytope: translate to the positive
 * orthant, enumerate lattice points, build and solve the interpolation
 * matrix, reduce a corank > 1 kernel by GCD, strip the monomial factor, and
 * normalize.  The polynomial coefficients are always exact. */
ImplicitizeResult implicitize(const ParametricMap& map, const LatticePolytope& support_polytope,
                              const ImplicitizeConfig& config = {});

/* Independent route for curves (n = 1): the resultant of x0*g0 - f0 and
 * x1*g1 - f1 eliminating the parameter, via fraction-free elimination over
 * the coordinate ring, stripped and normalized.  Expects each coordinate in
 * lowest terms.  When the two denominators share a nonconstant factor the
 * optional flag is set (the resultant can then pick up extra factors). */
ImplicitPolynomial sylvester_oracle(const ParametricMap& map,
                                    bool* shared_denominator_factor = nullptr);

std::string poly_to_json(const ImplicitPolynomial& p);
ImplicitPolynomial poly_from_json(std::string_view text);

}  // namespace simplicit
