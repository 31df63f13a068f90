#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include <doctest.h>

#include "helpers.hpp"
#include "simplicit/param.hpp"
#include "simplicit/polytope.hpp"

using namespace simplicit;
using namespace simplicit::testing;

namespace {

using P = std::vector<std::int64_t>;
using Pts = std::vector<P>;

/* Independent containment oracle (Caratheodory): x lies in conv(points) iff
 * some affinely independent subset of at most dim+1 points carries x with
 * nonnegative barycentric coordinates.  Solved exactly by Gaussian
 * elimination on [p_1 ... p_k; 1 ... 1 | x; 1]. */
std::optional<std::vector<Rat>> barycentric(const Pts& sub, const P& x) {
  std::size_t d = x.size(), k = sub.size();
  std::vector<std::vector<Rat>> a(d + 1, std::vector<Rat>(k + 1, Rat(0)));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < d; ++i) a[i][j] = Rat(sub[j][i]);
    a[d][j] = Rat(1);
  }
  for (std::size_t i = 0; i < d; ++i) a[i][k] = Rat(x[i]);
  a[d][k] = Rat(1);

  std::size_t row = 0;
  std::vector<std::size_t> pivot_of_col(k, SIZE_MAX);
  for (std::size_t col = 0; col < k && row <= d; ++col) {
    std::size_t p = row;
    while (p <= d && a[p][col] == 0) ++p;
    if (p > d) continue;
    std::swap(a[p], a[row]);
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rat f = a[i][col] / a[row][col];
      for (std::size_t j = col; j <= k; ++j) a[i][j] -= f * a[row][j];
    }
    pivot_of_col[col] = row++;
  }
  // Affine independence of sub means every column got a pivot.
  for (std::size_t col = 0; col < k; ++col)
    if (pivot_of_col[col] == SIZE_MAX) return std::nullopt;
  // Consistency: no row 0 = nonzero below the pivots.
  for (std::size_t i = row; i <= d; ++i)
    if (a[i][k] != 0) return std::nullopt;
  std::vector<Rat> lambda(k);
  for (std::size_t col = 0; col < k; ++col)
    lambda[col] = a[pivot_of_col[col]][k] / a[pivot_of_col[col]][col];
  return lambda;
}

bool oracle_contains(const Pts& points, const P& x) {
  std::size_t d = x.size();
  std::size_t max_k = std::min(points.size(), d + 1);
  std::vector<std::size_t> idx;
  // All subsets of size 1..max_k via bitmask (point sets stay tiny here).
  for (std::uint64_t mask = 1; mask < (1ull << points.size()); ++mask) {
    std::size_t k = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (k > max_k) continue;
    Pts sub;
    for (std::size_t j = 0; j < points.size(); ++j)
      if (mask & (1ull << j)) sub.push_back(points[j]);
    auto lambda = barycentric(sub, x);
    if (!lambda) continue;
    bool ok = true;
    for (const Rat& l : *lambda)
      if (l < 0) ok = false;
    if (ok) return true;
  }
  return false;
}

Pts random_points(int dim, std::size_t count, SplitMix64& rng) {
  Pts pts(count, P(dim));
  for (auto& p : pts)
    for (auto& c : p) c = static_cast<std::int64_t>(rng.below(9)) - 4;
  return pts;
}

long long brute_lattice_count(const LatticePolytope& q) {
  auto [lo, hi] = q.bounding_box();
  std::vector<std::int64_t> x(lo);
  long long n = 0;
  for (;;) {
    if (q.contains(x)) ++n;
    int i = q.dim() - 1;
    while (i >= 0 && x[i] == hi[i]) x[i--] = lo[i];
    if (i < 0) break;
    ++x[i];
  }
  return n;
}

const Pts kFoliumSupport = {{0, 3}, {1, 1}, {1, 2}, {2, 1}, {3, 0}};

}  // namespace

TEST_CASE("hull: fixed 2d examples") {
  LatticePolytope h = convex_hull(2, kFoliumSupport);
  CHECK(h.affine_dim() == 2);
  CHECK(h.vertices() == Pts{{0, 3}, {1, 1}, {3, 0}});

  LatticePolytope sq = convex_hull(2, {{0, 0}, {2, 0}, {1, 1}, {0, 2}, {2, 2}});
  CHECK(sq.vertices() == Pts{{0, 0}, {0, 2}, {2, 0}, {2, 2}});

  // Duplicates collapse.
  LatticePolytope dup = convex_hull(2, {{1, 1}, {1, 1}, {1, 1}});
  CHECK(dup.affine_dim() == 0);
  CHECK(dup.vertices() == Pts{{1, 1}});
}

TEST_CASE("hull: degenerate dimensions") {
  LatticePolytope seg = convex_hull(2, {{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  CHECK(seg.affine_dim() == 1);
  CHECK(seg.vertices() == Pts{{0, 0}, {3, 3}});
  CHECK(seg.contains({2, 2}));
  CHECK(!seg.contains({2, 1}));

  LatticePolytope pt = convex_hull(3, {{1, 2, 3}});
  CHECK(pt.affine_dim() == 0);
  CHECK(pt.contains({1, 2, 3}));
  CHECK(!pt.contains({1, 2, 4}));
}

TEST_CASE("hull is idempotent on its own vertices") {
  LatticePolytope h = convex_hull(2, kFoliumSupport);
  LatticePolytope h2 = convex_hull(2, h.vertices());
  CHECK(h2.vertices() == h.vertices());
  CHECK(h2.halfspaces() == h.halfspaces());
}

TEST_CASE("halfspaces are valid and tight") {
  SplitMix64 rng(101);
  for (int rep = 0; rep < 40; ++rep) {
    int dim = 1 + static_cast<int>(rng.below(3));
    Pts pts = random_points(dim, 2 + rng.below(5), rng);
    LatticePolytope h = convex_hull(dim, pts);
    for (const auto& hs : h.halfspaces()) {
      std::size_t tight = 0;
      for (const auto& p : pts) {
        std::int64_t dot = 0;
        for (int i = 0; i < dim; ++i) dot += hs.normal[i] * p[i];
        CHECK(dot <= hs.offset);
        if (dot == hs.offset) ++tight;
      }
      CHECK(tight >= static_cast<std::size_t>(std::max(1, h.affine_dim())));
    }
    // Every vertex is one of the inputs.
    for (const auto& v : h.vertices())
      CHECK(std::find(pts.begin(), pts.end(), v) != pts.end());
  }
}

TEST_CASE("contains agrees with the Caratheodory oracle") {
  SplitMix64 rng(202);
  for (int rep = 0; rep < 50; ++rep) {
    int dim = 1 + static_cast<int>(rng.below(2));
    Pts pts = random_points(dim, 2 + rng.below(5), rng);
    LatticePolytope h = convex_hull(dim, pts);
    // Scan one cell beyond the bounding box on each side.
    auto [lo, hi] = h.bounding_box();
    for (auto& c : lo) --c;
    for (auto& c : hi) ++c;
    std::vector<std::int64_t> x(lo);
    for (;;) {
      CHECK(h.contains(x) == oracle_contains(pts, x));
      int i = dim - 1;
      while (i >= 0 && x[i] == hi[i]) x[i--] = lo[i];
      if (i < 0) break;
      ++x[i];
    }
  }
}

TEST_CASE("contains agrees with the oracle in dimension 3") {
  SplitMix64 rng(303);
  for (int rep = 0; rep < 8; ++rep) {
    Pts pts = random_points(3, 3 + rng.below(4), rng);
    LatticePolytope h = convex_hull(3, pts);
    auto [lo, hi] = h.bounding_box();
    for (auto& c : lo) --c;
    for (auto& c : hi) ++c;
    std::vector<std::int64_t> x(lo);
    for (;;) {
      CHECK(h.contains(x) == oracle_contains(pts, x));
      int i = 2;
      while (i >= 0 && x[i] == hi[i]) x[i--] = lo[i];
      if (i < 0) break;
      ++x[i];
    }
  }
}

TEST_CASE("translate_positive shifts to the positive orthant") {
  LatticePolytope h = convex_hull(2, {{-2, 1}, {0, -3}, {1, 1}});
  LatticePolytope t = translate_positive(h);
  auto [lo, hi] = t.bounding_box();
  CHECK(lo == P{0, 0});
  CHECK(hi == P{3, 4});
  CHECK(t.vertices() == Pts{{0, 4}, {2, 0}, {3, 4}});
  // Already positive stays put.
  LatticePolytope f = convex_hull(2, kFoliumSupport);
  CHECK(translate_positive(f).vertices() == f.vertices());
}

TEST_CASE("lattice_points: fixed examples, lex ascending") {
  LatticePolytope f = convex_hull(2, {{0, 3}, {1, 1}, {3, 0}});
  SupportSet s = lattice_points(f);
  CHECK(s.points == std::vector<std::vector<int>>{
                        {0, 3}, {1, 1}, {1, 2}, {2, 1}, {3, 0}});

  LatticePolytope simplex2 = convex_hull(2, {{0, 0}, {2, 0}, {0, 2}});
  CHECK(lattice_points(simplex2).points ==
        std::vector<std::vector<int>>{
            {0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}});
}

TEST_CASE("lattice_points: enumeration budget") {
  LatticePolytope big = convex_hull(2, {{0, 0}, {100000, 0}, {0, 100000}});
  EnumerationCaps caps;
  caps.lattice_budget = 1000;
  CHECK(thrown_code([&] { lattice_points(big, caps); }) ==
        ErrorCode::cap_exceeded);
}

TEST_CASE("lattice_points requires nonnegative coordinates") {
  LatticePolytope h = convex_hull(2, {{-1, 0}, {1, 0}, {0, 1}});
  CHECK(thrown_code([&] { lattice_points(h); }) == ErrorCode::precondition);
}

TEST_CASE("lattice_points matches a brute-force scan on random polytopes") {
  SplitMix64 rng(404);
  for (int rep = 0; rep < 25; ++rep) {
    int dim = 1 + static_cast<int>(rng.below(3));
    Pts pts = random_points(dim, 2 + rng.below(4), rng);
    LatticePolytope h = translate_positive(convex_hull(dim, pts));
    SupportSet s = lattice_points(h);
    CHECK(static_cast<long long>(s.size()) == brute_lattice_count(h));
    for (const auto& p : s.points)
      CHECK(h.contains(std::vector<std::int64_t>(p.begin(), p.end())));
    CHECK(std::is_sorted(s.points.begin(), s.points.end()));
  }
}

TEST_CASE("minkowski_sum: fixed examples") {
  LatticePolytope f = convex_hull(2, {{0, 3}, {1, 1}, {3, 0}});
  LatticePolytope xseg = convex_hull(2, {{0, 0}, {1, 0}});
  LatticePolytope yseg = convex_hull(2, {{0, 0}, {0, 1}});

  SupportSet fx = lattice_points(minkowski_sum(f, xseg));
  CHECK(fx.points == std::vector<std::vector<int>>{{0, 3},
                                                   {1, 1},
                                                   {1, 2},
                                                   {1, 3},
                                                   {2, 1},
                                                   {2, 2},
                                                   {3, 0},
                                                   {3, 1},
                                                   {4, 0}});

  LatticePolytope square = minkowski_sum(xseg, yseg);
  CHECK(square.vertices() == Pts{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

  // Adding a single point is a translation.
  LatticePolytope shifted = minkowski_sum(f, convex_hull(2, {{5, 7}}));
  CHECK(shifted.vertices() == Pts{{5, 10}, {6, 8}, {8, 7}});
}

TEST_CASE("translate_count: fixed examples") {
  LatticePolytope f = convex_hull(2, {{0, 3}, {1, 1}, {3, 0}});
  LatticePolytope xseg = convex_hull(2, {{0, 0}, {1, 0}});
  LatticePolytope yseg = convex_hull(2, {{0, 0}, {0, 1}});
  LatticePolytope square = minkowski_sum(xseg, yseg);

  CHECK(translate_count(f, f) == 1);
  CHECK(translate_count(f, minkowski_sum(f, xseg)) == 2);
  CHECK(translate_count(f, minkowski_sum(f, yseg)) == 2);
  CHECK(translate_count(f, minkowski_sum(f, square)) == 4);
  // Q strictly smaller than P admits no translate.
  CHECK(translate_count(f, xseg) == 0);
}

TEST_CASE("translate_count along an axis segment grows linearly") {
  LatticePolytope f = convex_hull(2, {{0, 3}, {1, 1}, {3, 0}});
  for (std::int64_t k = 1; k <= 4; ++k) {
    LatticePolytope seg = convex_hull(2, {{0, 0}, {k, 0}});
    CHECK(translate_count(f, minkowski_sum(f, seg)) == k + 1);
  }
}

TEST_CASE("newton_polytope") {
  MultiPoly p({"x", "y"});
  p.add_term({3, 0}, Rat(1));
  p.add_term({1, 1}, Rat(-3));
  p.add_term({0, 3}, Rat(1));
  LatticePolytope n = newton_polytope(p);
  CHECK(n.vertices() == Pts{{0, 3}, {1, 1}, {3, 0}});

  MultiPoly z({"x", "y"});
  CHECK(thrown_code([&] { newton_polytope(z); }) == ErrorCode::zero_polynomial);
}

TEST_CASE("degree_bound_polytope: defaults and overrides") {
  ParametricMap folium = parse_map("x = 3*t/(1+t^3); y = 3*t^2/(1+t^3)");
  LatticePolytope q = degree_bound_polytope(folium);
  CHECK(q.vertices() == Pts{{0, 0}, {0, 9}, {9, 0}});

  ParametricMap parabola = parse_map("x = t; y = t^2");
  CHECK(degree_bound_polytope(parabola).vertices() == Pts{{0, 0}, {0, 2}, {2, 0}});

  // Lowest-terms reduction keeps the default bound at 4 * 4.
  ParametricMap cardioid =
      parse_map("x = cos(s) - cos(s)^2\ny = sin(s) - sin(s)*cos(s)");
  CHECK(degree_bound_polytope(cardioid).vertices() ==
        Pts{{0, 0}, {0, 16}, {16, 0}});

  CHECK(degree_bound_polytope(folium, 3).vertices() ==
        Pts{{0, 0}, {0, 3}, {3, 0}});

  CHECK(thrown_code([&] { degree_bound_polytope(folium, 33); }) ==
        ErrorCode::cap_exceeded);
  EnumerationCaps caps;
  caps.degree_bound_max = 64;
  CHECK(degree_bound_polytope(folium, 33, caps).vertices() ==
        Pts{{0, 0}, {0, 33}, {33, 0}});
}

TEST_CASE("polytope file format round-trips") {
  LatticePolytope f = convex_hull(2, kFoliumSupport);
  LatticePolytope back = parse_polytope_file(polytope_to_file(f));
  CHECK(back.vertices() == f.vertices());
  CHECK(back.halfspaces() == f.halfspaces());

  LatticePolytope g = parse_polytope_file("# triangle\ndim 2\n0 0\n2 0\n0 2\n");
  CHECK(g.vertices() == Pts{{0, 0}, {0, 2}, {2, 0}});

  CHECK(thrown_code([] { parse_polytope_file("dim 0\n"); }) ==
        ErrorCode::syntax_error);
  CHECK(thrown_code([] { parse_polytope_file("dim 2\n1 2 3\n"); }) ==
        ErrorCode::syntax_error);
  CHECK(thrown_code([] { parse_polytope_file("2\n1 2\n"); }) ==
        ErrorCode::syntax_error);
  CHECK(thrown_code([] { parse_polytope_file("dim 2\n"); }) ==
        ErrorCode::syntax_error);
}
