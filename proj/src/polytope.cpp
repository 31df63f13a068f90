#include "simplicit/polytope.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "simplicit/linalg.hpp"

namespace simplicit {

namespace {

using I64 = std::int64_t;
using Point = std::vector<I64>;

std::int64_t to_i64_checked(const Int& v, const char* what) {
  if (v < std::numeric_limits<I64>::min() || v > std::numeric_limits<I64>::max())
    fail(ErrorCode::range_overflow, std::string(what) + " exceeds 64-bit range");
  return v.convert_to<I64>();
}

/* Scales a rational vector (plus a rational tail value) by the unique
 * positive factor making all entries integers with gcd 1. */
std::pair<std::vector<I64>, I64> primitive_scaled(const RatRow& v, const Rat& tail) {
  Int l = denominator(tail);
  for (const auto& q : v) l = lcm(l, denominator(q));
  std::vector<Int> nums;
  nums.reserve(v.size());
  Int g = 0;
  for (const auto& q : v) {
    nums.push_back(numerator(q) * (l / denominator(q)));
    g = gcd(g, nums.back());
  }
  Int tail_num = numerator(tail) * (l / denominator(tail));
  g = gcd(g, tail_num);
  if (g == 0) g = 1;
  std::vector<I64> out;
  out.reserve(v.size());
  for (const auto& z : nums) out.push_back(to_i64_checked(z / g, "halfspace coefficient"));
  return {std::move(out), to_i64_checked(tail_num / g, "halfspace offset")};
}

Rat dot_rat(const RatRow& a, const RatRow& b) {
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/* Solves A y = b for A with full column rank; nullopt when inconsistent.
 * A is given by columns. */
std::optional<RatRow> solve_columns(const std::vector<RatRow>& cols, const RatRow& b) {
  std::size_t m = b.size(), k = cols.size();
  RatMat aug(m, RatRow(k + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = cols[j][i];
    aug[i][k] = b[i];
  }
  RatMat r = rref(std::move(aug));
  RatRow y(k, Rat(0));
  for (const auto& row : r) {
    std::size_t lead = 0;
    while (lead < k + 1 && row[lead] == 0) ++lead;
    if (lead == k) return std::nullopt;  // 0 = 1 row
    if (lead == k + 1) continue;
    y[lead] = row[k];  // full column rank: every pivot row is y_lead = value
  }
  return y;
}

void next_combination(std::vector<std::size_t>& idx, std::size_t m, bool& done) {
  std::size_t k = idx.size();
  std::size_t i = k;
  while (i-- > 0) {
    if (idx[i] + (k - i) < m) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return;
    }
  }
  done = true;
}

}  // namespace

bool LatticePolytope::contains(const std::vector<std::int64_t>& x) const {
  if (static_cast<int>(x.size()) != dim_)
    fail(ErrorCode::invalid_input, "point dimension does not match polytope");
  for (const auto& h : halfspaces_) {
    __int128 acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      acc += static_cast<__int128>(h.normal[i]) * x[i];
    if (acc > h.offset) return false;
  }
  return true;
}

std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>
LatticePolytope::bounding_box() const {
  std::vector<I64> lo = vertices_[0], hi = vertices_[0];
  for (const auto& v : vertices_) {
    for (int i = 0; i < dim_; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  }
  return {lo, hi};
}

LatticePolytope convex_hull(int dim, const std::vector<std::vector<std::int64_t>>& points) {
  if (dim < 1) fail(ErrorCode::invalid_input, "polytope dimension must be >= 1");
  if (points.empty()) fail(ErrorCode::invalid_input, "convex hull of no points");
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != dim)
      fail(ErrorCode::invalid_input, "point dimension does not match polytope");

  std::vector<Point> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::size_t m = pts.size();

  LatticePolytope poly;
  poly.dim_ = dim;
  std::set<Halfspace> hs;

  if (m == 1) {
    poly.affine_dim_ = 0;
    poly.vertices_ = pts;
    for (int i = 0; i < dim; ++i) {
      std::vector<I64> e(dim, 0);
      e[i] = 1;
      hs.insert(Halfspace{e, pts[0][i]});
      e[i] = -1;
      hs.insert(Halfspace{e, -pts[0][i]});
    }
    poly.halfspaces_.assign(hs.begin(), hs.end());
    return poly;
  }

  const Point& p0 = pts[0];
  RatMat diffs(m - 1, RatRow(dim));
  for (std::size_t i = 1; i < m; ++i)
    for (int j = 0; j < dim; ++j) diffs[i - 1][j] = Rat(pts[i][j] - p0[j]);

  // Integer basis of the direction space, from the RREF rows.
  RatMat basis_r = rref(diffs);
  std::size_t k = basis_r.size();
  std::vector<RatRow> basis;  // as rational rows (already integer after scaling)
  for (const auto& row : basis_r) {
    auto [ints, off] = primitive_scaled(row, Rat(0));
    RatRow r(dim);
    for (int j = 0; j < dim; ++j) r[j] = Rat(ints[j]);
    basis.push_back(std::move(r));
  }

  // Affine hull equations: kernel of the basis rows, as inequality pairs.
  for (const auto& w : kernel_exact(RatMat(basis.begin(), basis.end()), dim)) {
    Rat b = Rat(0);
    for (int j = 0; j < dim; ++j) b += w[j] * Rat(p0[j]);
    auto [a, off] = primitive_scaled(w, b);
    // Orient deterministically: first nonzero positive.
    int s = 0;
    for (I64 c : a)
      if (c != 0) { s = c > 0 ? 1 : -1; break; }
    if (s < 0) {
      for (auto& c : a) c = -c;
      off = -off;
    }
    std::vector<I64> neg(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) neg[j] = -a[j];
    hs.insert(Halfspace{a, off});
    hs.insert(Halfspace{neg, -off});
  }

  // Coordinates of every point in the direction basis.
  std::vector<RatRow> cols(k, RatRow(dim));
  for (std::size_t j = 0; j < k; ++j)
    for (int i = 0; i < dim; ++i) cols[j][i] = basis[j][i];
  std::vector<RatRow> ys(m, RatRow(k));
  for (std::size_t i = 0; i < m; ++i) {
    RatRow b(dim);
    for (int j = 0; j < dim; ++j) b[j] = Rat(pts[i][j] - p0[j]);
    auto y = solve_columns(cols, b);
    if (!y) fail(ErrorCode::internal, "hull point outside its own affine hull");
    ys[i] = std::move(*y);
  }

  /* Facets, found as supporting hyperplanes spanned by k affinely
   * independent points; every facet of a k-dim polytope contains such a
   * subset, so none is missed. */
  struct YFacet { RatRow normal; Rat offset; };
  std::vector<YFacet> yfacets;
  std::set<std::pair<std::vector<Rat>, Rat>> seen;
  auto add_yfacet = [&](RatRow alpha, const Rat& beta) {
    if (seen.insert({alpha, beta}).second)
      yfacets.push_back(YFacet{std::move(alpha), beta});
  };

  if (k == 1) {
    Rat mn = ys[0][0], mx = ys[0][0];
    for (const auto& y : ys) {
      mn = std::min(mn, y[0]);
      mx = std::max(mx, y[0]);
    }
    add_yfacet(RatRow{Rat(1)}, mx);
    add_yfacet(RatRow{Rat(-1)}, -mn);
  } else {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    bool done = false;
    while (!done) {
      RatMat rows(k - 1, RatRow(k));
      for (std::size_t r = 0; r + 1 < k; ++r)
        for (std::size_t c = 0; c < k; ++c)
          rows[r][c] = ys[idx[r + 1]][c] - ys[idx[0]][c];
      auto ker = kernel_exact(rows, k);
      if (ker.size() == 1) {
        auto [ai, off_unused] = primitive_scaled(ker[0], Rat(0));
        RatRow alpha(k);
        for (std::size_t c = 0; c < k; ++c) alpha[c] = Rat(ai[c]);
        Rat d0 = dot_rat(alpha, ys[idx[0]]);
        Rat mn = d0, mx = d0;
        for (const auto& y : ys) {
          Rat d = dot_rat(alpha, y);
          mn = std::min(mn, d);
          mx = std::max(mx, d);
        }
        if (mn == mx) fail(ErrorCode::internal, "direction space not full-dimensional");
        if (d0 == mx) add_yfacet(alpha, mx);
        if (d0 == mn) {
          RatRow neg(k);
          for (std::size_t c = 0; c < k; ++c) neg[c] = -alpha[c];
          add_yfacet(std::move(neg), -mn);
        }
      }
      next_combination(idx, m, done);
    }
  }

  // Vertices: points whose active facet normals span the direction space.
  for (std::size_t i = 0; i < m; ++i) {
    RatMat active;
    for (const auto& f : yfacets)
      if (dot_rat(f.normal, ys[i]) == f.offset) active.push_back(f.normal);
    if (rank_exact(active) == k) poly.vertices_.push_back(pts[i]);
  }
  std::sort(poly.vertices_.begin(), poly.vertices_.end());

  /* Lift each facet back to x-space: pick any a with a . basis_j = alpha_j
   * (free variables zeroed, so the choice is deterministic), then
   * a . x <= a . p0 + beta holds exactly on the polytope. */
  for (const auto& f : yfacets) {
    RatMat aug(k, RatRow(dim + 1));
    for (std::size_t r = 0; r < k; ++r) {
      for (int c = 0; c < dim; ++c) aug[r][c] = basis[r][c];
      aug[r][dim] = f.normal[r];
    }
    RatMat rr = rref(std::move(aug));
    RatRow a(dim, Rat(0));
    for (const auto& row : rr) {
      std::size_t lead = 0;
      while (lead < static_cast<std::size_t>(dim) + 1 && row[lead] == 0) ++lead;
      if (lead >= static_cast<std::size_t>(dim)) fail(ErrorCode::internal, "facet lift inconsistent");
      Rat val = row[dim];
      for (std::size_t j = lead + 1; j < static_cast<std::size_t>(dim); ++j)
        val -= row[j] * a[j];  // free vars are zero; later pivots not yet set
      a[lead] = val;
    }
    Rat b = f.offset;
    for (int j = 0; j < dim; ++j) b += a[j] * Rat(p0[j]);
    auto [ai, bi] = primitive_scaled(a, b);
    hs.insert(Halfspace{std::move(ai), bi});
  }

  poly.affine_dim_ = static_cast<int>(k);
  poly.halfspaces_.assign(hs.begin(), hs.end());
  return poly;
}

LatticePolytope translate_positive(const LatticePolytope& p) {
  auto [lo, hi] = p.bounding_box();
  std::vector<Point> moved = p.vertices();
  for (auto& v : moved)
    for (int i = 0; i < p.dim(); ++i) v[i] -= lo[i];
  return convex_hull(p.dim(), moved);
}

SupportSet lattice_points(const LatticePolytope& q, const EnumerationCaps& caps) {
  auto [lo, hi] = q.bounding_box();
  for (int i = 0; i < q.dim(); ++i)
    if (lo[i] < 0)
      fail(ErrorCode::precondition,
           "polytope has negative coordinates; apply translate_positive first");
  Int volume = 1;
  for (int i = 0; i < q.dim(); ++i) volume *= Int(hi[i] - lo[i] + 1);
  if (volume > caps.lattice_budget)
    fail(ErrorCode::cap_exceeded,
         "lattice enumeration over " + volume.str() + " box points exceeds the budget of " +
             std::to_string(caps.lattice_budget));

  SupportSet s;
  s.dim = q.dim();
  Point x = lo;
  for (;;) {
    if (q.contains(x)) {
      std::vector<int> e(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > std::numeric_limits<int>::max())
          fail(ErrorCode::range_overflow, "lattice point exceeds int range");
        e[i] = static_cast<int>(x[i]);
      }
      s.points.push_back(std::move(e));
    }
    int i = q.dim() - 1;
    while (i >= 0 && x[i] == hi[i]) {
      x[i] = lo[i];
      --i;
    }
    if (i < 0) break;
    ++x[i];
  }
  return s;
}

LatticePolytope minkowski_sum(const LatticePolytope& a, const LatticePolytope& b) {
  if (a.dim() != b.dim())
    fail(ErrorCode::invalid_input, "Minkowski sum of polytopes of different dimension");
  std::vector<Point> sums;
  sums.reserve(a.vertices().size() * b.vertices().size());
  for (const auto& u : a.vertices())
    for (const auto& v : b.vertices()) {
      Point w(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] + v[i];
      sums.push_back(std::move(w));
    }
  return convex_hull(a.dim(), sums);
}

long long translate_count(const LatticePolytope& p, const LatticePolytope& q,
                          const EnumerationCaps& caps) {
  if (p.dim() != q.dim())
    fail(ErrorCode::invalid_input, "translate count needs polytopes of equal dimension");
  auto [plo, phi] = p.bounding_box();
  auto [qlo, qhi] = q.bounding_box();
  int d = p.dim();
  Point lo(d), hi(d);
  Int volume = 1;
  for (int i = 0; i < d; ++i) {
    lo[i] = qlo[i] - plo[i];
    hi[i] = qhi[i] - phi[i];
    if (hi[i] < lo[i]) return 0;
    volume *= Int(hi[i] - lo[i] + 1);
  }
  if (volume > caps.lattice_budget)
    fail(ErrorCode::cap_exceeded,
         "translate enumeration over " + volume.str() + " box points exceeds the budget of " +
             std::to_string(caps.lattice_budget));

  long long count = 0;
  Point a = lo;
  for (;;) {
    bool ok = true;
    for (const auto& v : p.vertices()) {
      Point w(v.size());
      for (int i = 0; i < d; ++i) w[i] = v[i] + a[i];
      if (!q.contains(w)) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
    int i = d - 1;
    while (i >= 0 && a[i] == hi[i]) {
      a[i] = lo[i];
      --i;
    }
    if (i < 0) break;
    ++a[i];
  }
  return count;
}

LatticePolytope newton_polytope(const MultiPoly& p) {
  if (p.is_zero())
    fail(ErrorCode::zero_polynomial, "the zero polynomial has no Newton polytope");
  std::vector<Point> pts;
  for (const auto& [e, c] : p.terms()) pts.emplace_back(e.begin(), e.end());
  return convex_hull(static_cast<int>(p.vars().size()), pts);
}

LatticePolytope degree_bound_polytope(const ParametricMap& map, std::optional<int> degree,
                                      const EnumerationCaps& caps) {
  if (!map.is_algebraic())
    fail(ErrorCode::precondition,
         "map still contains trigonometric variables; apply half_angle first");
  int dim = static_cast<int>(map.coords.size());
  long long d = 1;
  if (degree) {
    d = *degree;
    if (d < 1) fail(ErrorCode::invalid_input, "degree bound must be >= 1");
  } else {
    for (const auto& c : map.coords) {
      int di = std::max({c.num().total_degree(), c.den().total_degree(), 1});
      d *= di;
      if (d > caps.degree_bound_max) break;
    }
  }
  if (d > caps.degree_bound_max)
    fail(ErrorCode::cap_exceeded,
         "degree bound " + std::to_string(d) + " exceeds the configured maximum of " +
             std::to_string(caps.degree_bound_max) +
             "; pass an explicit support polytope or raise the cap");

  std::vector<Point> pts;
  pts.push_back(Point(dim, 0));
  for (int i = 0; i < dim; ++i) {
    Point v(dim, 0);
    v[i] = d;
    pts.push_back(std::move(v));
  }
  return convex_hull(dim, pts);
}

LatticePolytope parse_polytope_file(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int dim = -1;
  std::vector<Point> pts;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (dim < 0) {
      long long k;
      if (first != "dim" || !(ls >> k) || k < 1 || k > 64)
        fail(ErrorCode::syntax_error,
             "line " + std::to_string(lineno) + ": expected 'dim k' header");
      std::string extra;
      if (ls >> extra)
        fail(ErrorCode::syntax_error,
             "line " + std::to_string(lineno) + ": trailing tokens after dimension");
      dim = static_cast<int>(k);
      continue;
    }
    Point v;
    std::istringstream vs(line);
    I64 c;
    while (vs >> c) v.push_back(c);
    if (!vs.eof())
      fail(ErrorCode::syntax_error,
           "line " + std::to_string(lineno) + ": vertices must be integers");
    if (static_cast<int>(v.size()) != dim)
      fail(ErrorCode::syntax_error,
           "line " + std::to_string(lineno) + ": expected " + std::to_string(dim) +
               " coordinates, got " + std::to_string(v.size()));
    pts.push_back(std::move(v));
  }
  if (dim < 0) fail(ErrorCode::syntax_error, "missing 'dim k' header");
  if (pts.empty()) fail(ErrorCode::syntax_error, "polytope file lists no vertices");
  return convex_hull(dim, pts);
}

std::string polytope_to_file(const LatticePolytope& p) {
  std::ostringstream out;
  out << "dim " << p.dim() << "\n";
  for (const auto& v : p.vertices()) {
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
    out << "\n";
  }
  return out.str();
}

}  // namespace simplicit
