#pragma once

#include <cstdint>
#include <optional>

#include "simplicit/linalg.hpp"
#include "simplicit/param.hpp"
#include "simplicit/polytope.hpp"

namespace simplicit {

// One sample: exact parameter values and the exact image point.
struct EvaluationPoint {
  std::vector<Rat> tau;
  std::vector<Rat> coords;
};

/* Deterministic rejection sampling: each component is +-num/den with num and
 * den uniform in [1, 2^16].  Rejected: repeated tau, vanishing denominator
 * g_i(tau), repeated image point.  The sequence for a given seed is a prefix
 * of the sequence for any larger count. */
std::vector<EvaluationPoint> sample_points(const ParametricMap& map,
                                           std::size_t count, std::uint64_t seed);

enum class MatrixMode { exact, approximate };

/* The interpolation matrix: row k, column j holds the monomial of support
 * point s_j evaluated at image point x(tau_k), as an exact rational.  Rows
 * are pairwise distinct.  Mode and tolerance only affect corank(). */
struct InterpolationMatrix {
  SupportSet support;
  std::vector<EvaluationPoint> samples;
  RatMat rows;
  MatrixMode mode = MatrixMode::exact;
  double tolerance = 1e-8;

  std::size_t mu() const { return rows.size(); }
  std::size_t columns() const { return support.size(); }
};

// Monomial row of an arbitrary point on the given support.
RatRow monomial_row(const SupportSet& support, const std::vector<Rat>& point);

// mu >= |S| distinct rows sampled from the map.
InterpolationMatrix build_matrix(const ParametricMap& map, const SupportSet& support,
                                 std::size_t mu, std::uint64_t seed,
                                 MatrixMode mode = MatrixMode::exact,
                                 double tolerance = 1e-8);

/* Dimension of the right kernel.  Exact mode computes the exact rank;
 * approximate mode normalizes rows, takes singular values in double
 * precision, and counts those below tolerance * sigma_max. */
std::size_t corank(const InterpolationMatrix& m);

// Exact kernel basis; each vector is scaled so its first nonzero entry is 1.
struct KernelBasis {
  std::vector<RatRow> vectors;
  std::size_t corank() const { return vectors.size(); }
};
KernelBasis kernel_basis(const InterpolationMatrix& m);  // throws empty_kernel

/* Query-ready form: the first |S|-1 rows of the matrix, kept with their
 * samples.  Appending one more row (a query's monomial row) makes it square. */
struct FrozenMatrix {
  SupportSet support;
  std::vector<EvaluationPoint> samples;
  RatMat rows;
  std::size_t corank_rows = 0;  // corank of the (|S|-1) x |S| block
};

FrozenMatrix freeze_matrix(const ParametricMap& map, const SupportSet& support,
                           std::uint64_t seed);

// Index of the sample whose image equals q, if any.
std::optional<std::size_t> coinciding_row(const FrozenMatrix& f,
                                          const std::vector<Rat>& q);

/* Square matrix M(q): frozen rows plus the monomial row of q.  Throws
 * coincides_with_sample_row when q equals a stored image; callers able to
 * resample should check coinciding_row first. */
RatMat eval_last_row(const FrozenMatrix& f, const std::vector<Rat>& q);

// Entry dump (one CSV line per row) and a JSON sidecar describing the samples.
std::string matrix_csv(const InterpolationMatrix& m);
std::string samples_json(const std::vector<EvaluationPoint>& samples, std::uint64_t seed);

}  // namespace simplicit
