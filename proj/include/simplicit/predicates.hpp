#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>

#include "simplicit/implicit.hpp"
#include "simplicit/interp.hpp"
#include "simplicit/unipoly.hpp"

namespace simplicit {

/* Queries must avoid the coordinate hyperplanes: every coordinate nonzero.
 * The matrix test is only faithful on that set. */
struct QueryPoint {
  std::vector<Rat> coords;
};

struct Ray {
  std::vector<Rat> base;
  std::vector<Rat> dir;  // not the zero vector
};

enum class Membership { on_surface, off_surface };

struct FreezeConfig {
  std::uint64_t seed = 1;
  EnumerationCaps caps;
  int max_retries = 4;  // reseeds when a sample set turns out non-generic
};

/* Immutable query handle: the first |S|-1 interpolation rows plus the
 * validated corank r of the full matrix.  Queries append one monomial row
 * and compare ranks or determinant signs; no implicit polynomial is ever
 * expanded on the corank-1 path.  A corank > 1 handle additionally carries
 * the GCD-reduced polynomial for sidedness.  Safe to share across threads;
 * the ray-shooting minors are materialized once under a call_once. */
class SurfaceHandle {
 public:
  static SurfaceHandle freeze(const ParametricMap& map,
                              const LatticePolytope& support_polytope,
                              const FreezeConfig& config = {});

  const ParametricMap& map() const { return map_; }
  const FrozenMatrix& frozen() const { return frozen_; }
  const SupportSet& support() const { return frozen_.support; }
  std::size_t corank() const { return corank_; }
  bool corank_one() const { return corank_ == 1; }
  const std::optional<ImplicitPolynomial>& fallback() const { return fallback_; }
  std::uint64_t seed() const { return seed_; }

  /* Signed cofactors of the missing last row: det M(q) equals the dot
   * product of this vector with the monomial row of q. */
  const std::vector<Rat>& last_row_cofactors() const;

 private:
  SurfaceHandle() = default;

  // Heap-held so the handle stays movable; the flag itself never moves.
  struct CofactorCache {
    std::once_flag once;
    std::vector<Rat> values;
  };

  ParametricMap map_;
  FrozenMatrix frozen_;
  std::size_t corank_ = 0;
  std::uint64_t seed_ = 0;
  std::optional<ImplicitPolynomial> fallback_;
  std::unique_ptr<CofactorCache> cache_;
};

/* Exact membership: q is on the surface iff appending its monomial row
 * leaves the corank unchanged.  When q collides with a stored sample image,
 * that row is replaced by a fresh sample for this query only. */
Membership membership(const SurfaceHandle& h, const QueryPoint& q);

// Sign of the defining polynomial at q, up to one global sign fixed by the
// handle: det sign on the corank-1 path, polynomial sign otherwise.
// Throws on_surface for points on the surface.
int side_sign(const SurfaceHandle& h, const QueryPoint& q);

// +1 same side, -1 opposite sides, 0 when either point lies on the surface.
int sidedness(const SurfaceHandle& h, const QueryPoint& a, const QueryPoint& b);

struct RayHit {
  Rat lo, hi;   // isolating interval (lo, hi] for the smallest positive root
  bool exact;   // root equals hi exactly
  Rat rho;      // reported parameter: hi when exact, else the midpoint
  std::vector<Rat> point;  // base + rho * dir
};

/* Smallest rho > 0 with ray(rho) on the surface, isolated to width <= tol.
 * Works on the restricted polynomial det M(base + rho dir), expanded by
 * cofactors along the last row; requires a corank-1 handle.  Returns nullopt
 * when the ray never meets the surface at positive rho; throws
 * degenerate_ray when the restriction vanishes identically (the whole ray
 * lies inside the surface). */
std::optional<RayHit> ray_shoot(const SurfaceHandle& h, const Ray& ray, const Rat& tol);

}  // namespace simplicit
