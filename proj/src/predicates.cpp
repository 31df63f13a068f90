#include "simplicit/predicates.hpp"

#include <set>

namespace simplicit {

namespace {

void check_query_point(const SurfaceHandle& h, const QueryPoint& q) {
  if (q.coords.size() != h.support().points[0].size())
    fail(ErrorCode::invalid_input, "query point dimension does not match the surface");
  for (const auto& c : q.coords)
    if (c == 0)
      fail(ErrorCode::zero_coordinate,
           "query points must have all coordinates nonzero; the matrix test is "
           "not defined on the coordinate hyperplanes");
}

/* Rows of M' with row k replaced by a fresh sample whose image differs from
 * every kept image and from q, chosen so the block corank is preserved. */
RatMat patched_rows(const SurfaceHandle& h, std::size_t k, const std::vector<Rat>& q) {
  const FrozenMatrix& f = h.frozen();
  std::set<std::vector<Rat>> images;
  for (std::size_t i = 0; i < f.samples.size(); ++i)
    if (i != k) images.insert(f.samples[i].coords);
  images.insert(q);

  std::uint64_t reseed = h.seed() ^ (0xabcdef1234567890ULL + k);
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::vector<EvaluationPoint> fresh =
        sample_points(h.map(), static_cast<std::size_t>(attempt) + 1, reseed);
    const EvaluationPoint& cand = fresh.back();
    if (images.count(cand.coords)) continue;
    RatMat rows = f.rows;
    rows[k] = monomial_row(f.support, cand.coords);
    if (f.support.size() - rank_exact(rows) != f.corank_rows) continue;
    return rows;
  }
  fail(ErrorCode::sampling_exhausted,
       "could not replace a sample row colliding with the query point");
}

// M(q) rows, resampling the one colliding row if the query equals an image.
RatMat query_matrix(const SurfaceHandle& h, const std::vector<Rat>& q) {
  const FrozenMatrix& f = h.frozen();
  RatMat rows;
  if (auto k = coinciding_row(f, q))
    rows = patched_rows(h, *k, q);
  else
    rows = f.rows;
  rows.push_back(monomial_row(f.support, q));
  return rows;
}

int side_sign_checked(const SurfaceHandle& h, const QueryPoint& q) {
  RatMat mq = query_matrix(h, q.coords);
  std::size_t cols = h.support().size();
  if (cols - rank_exact(mq) == h.corank()) return 0;  // on the surface
  if (h.corank_one()) {
    int s = det_sign_exact(mq);
    if (s == 0) fail(ErrorCode::internal, "query matrix singular off the surface");
    return s;
  }
  int s = sign_of(h.fallback()->eval(q.coords));
  if (s == 0) fail(ErrorCode::internal, "fallback polynomial vanishes off the surface");
  return s;
}

}  // namespace

SurfaceHandle SurfaceHandle::freeze(const ParametricMap& map,
                                    const LatticePolytope& support_polytope,
                                    const FreezeConfig& config) {
  if (!map.is_algebraic())
    fail(ErrorCode::precondition,
         "map still contains trigonometric variables; apply half_angle first");
  if (support_polytope.dim() != static_cast<int>(map.coords.size()))
    fail(ErrorCode::invalid_input,
         "support polytope dimension does not match the number of coordinates");

  LatticePolytope shifted = translate_positive(support_polytope);
  SupportSet support = lattice_points(shifted, config.caps);
  if (support.size() < 2)
    fail(ErrorCode::invalid_input,
         "support has fewer than two monomials; nothing can vanish on the surface");

  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    std::uint64_t seed = config.seed + static_cast<std::uint64_t>(attempt);
    InterpolationMatrix m = build_matrix(map, support, support.size(), seed);
    std::size_t r = support.size() - rank_exact(m.rows);
    if (r == 0)
      fail(ErrorCode::empty_kernel,
           "interpolation matrix has full column rank: the support polytope "
           "does not contain the implicit support; enlarge the support prediction");

    // The row block must already realize the corank, and a second seed must
    // agree on the corank, before the handle is trusted.
    RatMat block(m.rows.begin(), m.rows.end() - 1);
    if (support.size() - rank_exact(block) != r) continue;
    InterpolationMatrix check = build_matrix(map, support, support.size(),
                                             seed + 0x9e3779b97f4a7c15ULL);
    if (support.size() - rank_exact(check.rows) != r) continue;

    SurfaceHandle h;
    h.cache_ = std::make_unique<CofactorCache>();
    h.map_ = map;
    h.corank_ = r;
    h.seed_ = seed;
    h.frozen_.support = support;
    h.frozen_.samples.assign(m.samples.begin(), m.samples.end() - 1);
    h.frozen_.rows = std::move(block);
    h.frozen_.corank_rows = r;
    if (r > 1) {
      ImplicitizeConfig fc;
      fc.seed = seed;
      fc.caps = config.caps;
      h.fallback_ = implicitize(map, support_polytope, fc).polynomial;
    }
    return h;
  }
  fail(ErrorCode::non_generic_sampling,
       "could not freeze a generic sample set within the retry budget");
}

const std::vector<Rat>& SurfaceHandle::last_row_cofactors() const {
  std::call_once(cache_->once, [this] {
    std::size_t s = frozen_.support.size();
    cache_->values.resize(s);
    for (std::size_t j = 0; j < s; ++j) {
      RatMat minor;
      minor.reserve(s - 1);
      for (const auto& row : frozen_.rows) {
        RatRow r;
        r.reserve(s - 1);
        for (std::size_t c = 0; c < s; ++c)
          if (c != j) r.push_back(row[c]);
        minor.push_back(std::move(r));
      }
      Rat d = det_exact(minor);
      // Cofactor of entry (s, j+1) in 1-based indexing.
      cache_->values[j] = ((s + j + 1) % 2 == 0) ? d : -d;
    }
  });
  return cache_->values;
}

Membership membership(const SurfaceHandle& h, const QueryPoint& q) {
  check_query_point(h, q);
  RatMat mq = query_matrix(h, q.coords);
  std::size_t r = h.support().size() - rank_exact(mq);
  return r == h.corank() ? Membership::on_surface : Membership::off_surface;
}

int side_sign(const SurfaceHandle& h, const QueryPoint& q) {
  check_query_point(h, q);
  int s = side_sign_checked(h, q);
  if (s == 0)
    fail(ErrorCode::on_surface, "point lies on the surface; sidedness is undefined");
  return s;
}

int sidedness(const SurfaceHandle& h, const QueryPoint& a, const QueryPoint& b) {
  check_query_point(h, a);
  check_query_point(h, b);
  int sa = side_sign_checked(h, a);
  if (sa == 0) return 0;
  int sb = side_sign_checked(h, b);
  if (sb == 0) return 0;
  return sa == sb ? 1 : -1;
}

std::optional<RayHit> ray_shoot(const SurfaceHandle& h, const Ray& ray, const Rat& tol) {
  if (!h.corank_one())
    fail(ErrorCode::not_corank_one,
         "ray shooting expands det M(q) and needs a corank-1 handle; the "
         "support prediction is loose (corank " + std::to_string(h.corank()) + ")");
  std::size_t dim = h.support().points[0].size();
  if (ray.base.size() != dim || ray.dir.size() != dim)
    fail(ErrorCode::invalid_input, "ray dimension does not match the surface");
  bool moving = false;
  for (const auto& d : ray.dir) moving = moving || d != 0;
  if (!moving) fail(ErrorCode::invalid_input, "ray direction is the zero vector");
  if (!(tol > 0)) fail(ErrorCode::invalid_input, "tolerance must be positive");

  const std::vector<Rat>& cof = h.last_row_cofactors();

  /* Restriction p(rho) = det M(base + rho dir): cofactor j times the
   * monomial of support point j evaluated on the moving point. */
  UniPoly p;
  for (std::size_t j = 0; j < cof.size(); ++j) {
    if (cof[j] == 0) continue;
    UniPoly mono = UniPoly::constant(cof[j]);
    const auto& e = h.support().points[j];
    for (std::size_t i = 0; i < dim; ++i) {
      if (e[i] == 0) continue;
      UniPoly lin({ray.base[i], ray.dir[i]});
      for (int k = 0; k < e[i]; ++k) mono = mono * lin;
    }
    p = p + mono;
  }
  if (p.is_zero())
    fail(ErrorCode::degenerate_ray,
         "the restriction of the surface to this ray vanishes identically");

  auto bracket = smallest_positive_root(p, tol);
  if (!bracket) return std::nullopt;

  RayHit hit;
  hit.lo = bracket->lo;
  hit.hi = bracket->hi;
  hit.exact = bracket->exact;
  hit.rho = bracket->value();
  hit.point.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i)
    hit.point.push_back(ray.base[i] + hit.rho * ray.dir[i]);
  return hit;
}

}  // namespace simplicit
