#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simplicit/param.hpp"
#include "simplicit/poly.hpp"

namespace simplicit {

struct EnumerationCaps {
  // Upper bound on the bounding-box volume any enumeration may scan.
  std::int64_t lattice_budget = 10'000'000;
  // Upper bound on the degree used by the fallback simplex.
  int degree_bound_max = 32;
};

// Closed halfspace normal . x <= offset with primitive integer normal.
struct Halfspace {
  std::vector<std::int64_t> normal;
  std::int64_t offset = 0;
  auto operator<=>(const Halfspace&) const = default;
};

/* Convex hull of finitely many integer points, possibly of lower dimension
 * than the ambient space.  Carries both descriptions: the vertex list
 * (sorted) and a halfspace list that cuts out exactly the polytope (facet
 * inequalities within the affine hull, plus inequality pairs pinning the
 * affine hull itself).  Immutable after construction. */
class LatticePolytope {
 public:
  int dim() const { return dim_; }
  int affine_dim() const { return affine_dim_; }
  const std::vector<std::vector<std::int64_t>>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }

  bool contains(const std::vector<std::int64_t>& x) const;
  // Componentwise {min, max} over the vertices.
  std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>> bounding_box() const;

 private:
  friend LatticePolytope convex_hull(int dim,
                                     const std::vector<std::vector<std::int64_t>>& points);
  LatticePolytope() = default;

  int dim_ = 0;
  int affine_dim_ = 0;
  std::vector<std::vector<std::int64_t>> vertices_;
  std::vector<Halfspace> halfspaces_;
};

/* Exact hull by supporting-hyperplane enumeration over affinely independent
 * point subsets; O(C(#points, affine_dim)), intended for the small vertex
 * and support sets this library works with. */
LatticePolytope convex_hull(int dim, const std::vector<std::vector<std::int64_t>>& points);

// Smallest translate with all vertex coordinates >= 0.
LatticePolytope translate_positive(const LatticePolytope& p);

/* Lattice points of a polytope, lex-ascending; these are the candidate
 * monomial exponents of the interpolation basis. */
struct SupportSet {
  int dim = 0;
  std::vector<std::vector<int>> points;
  std::size_t size() const { return points.size(); }
};

SupportSet lattice_points(const LatticePolytope& q, const EnumerationCaps& caps = {});

LatticePolytope minkowski_sum(const LatticePolytope& a, const LatticePolytope& b);

// #{ a in Z^dim : a + P subseteq Q }, by exhausting the bounding-box window.
long long translate_count(const LatticePolytope& p, const LatticePolytope& q,
                          const EnumerationCaps& caps = {});

LatticePolytope newton_polytope(const MultiPoly& p);

/* Fallback support prediction: the simplex D * conv{0, e_0, ..., e_n} where
 * D defaults to the product over coordinates of max(deg num, deg den, 1).
 * An explicit degree overrides the product; both are checked against
 * caps.degree_bound_max. */
LatticePolytope degree_bound_polytope(const ParametricMap& map,
                                      std::optional<int> degree = std::nullopt,
                                      const EnumerationCaps& caps = {});

/* Vertex-file format: optional '#' comment lines, then "dim k", then one
 * vertex per line as k space-separated integers. */
LatticePolytope parse_polytope_file(std::string_view text);
std::string polytope_to_file(const LatticePolytope& p);

}  // namespace simplicit
