#include <optional>

#include <doctest.h>

#include "helpers.hpp"
#include "simplicit/linalg.hpp"

using namespace simplicit;
using namespace simplicit::testing;

namespace {

// Reference determinant by Laplace expansion along the first row.
Rat det_laplace(const RatMat& m) {
  std::size_t n = m.size();
  if (n == 0) return Rat(1);
  if (n == 1) return m[0][0];
  Rat acc(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    RatMat sub;
    for (std::size_t i = 1; i < n; ++i) {
      RatRow r;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) r.push_back(m[i][k]);
      sub.push_back(std::move(r));
    }
    Rat term = m[0][j] * det_laplace(sub);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

RatMat random_matrix(std::size_t rows, std::size_t cols, SplitMix64& rng) {
  RatMat m(rows, RatRow(cols));
  for (auto& r : m)
    for (auto& x : r) {
      long num = static_cast<long>(rng.below(19)) - 9;
      long den = static_cast<long>(rng.below(9)) + 1;
      x = Rat(num, den);
    }
  return m;
}

RatMat matmul(const RatMat& a, const RatMat& b) {
  RatMat c(a.size(), RatRow(b[0].size(), Rat(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

}  // namespace

TEST_CASE("determinant: fixed examples") {
  CHECK(det_exact({}) == 1);
  CHECK(det_exact({{Rat(7)}}) == 7);
  CHECK(det_exact({{Rat(1), Rat(2)}, {Rat(3), Rat(4)}}) == -2);
  CHECK(det_sign_exact({{Rat(1), Rat(2)}, {Rat(3), Rat(4)}}) == -1);
  CHECK(det_sign_exact({{Rat(1), Rat(2)}, {Rat(2), Rat(4)}}) == 0);
  // Rational entries: det = 1/2 * 1/3 = 1/6.
  CHECK(det_exact({{Q("1/2"), Rat(0)}, {Rat(5), Q("1/3")}}) == Q("1/6"));
}

TEST_CASE("determinant: zero pivot forces a row swap") {
  RatMat m = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
  CHECK(det_exact(m) == -1);
  CHECK(det_sign_exact(m) == -1);
}

TEST_CASE("determinant matches Laplace expansion on random matrices") {
  SplitMix64 rng(42);
  for (std::size_t n = 2; n <= 6; ++n) {
    for (int rep = 0; rep < 8; ++rep) {
      RatMat m = random_matrix(n, n, rng);
      Rat expect = det_laplace(m);
      CHECK(det_exact(m) == expect);
      CHECK(det_sign_exact(m) == sign_of(expect));
    }
  }
}

TEST_CASE("determinant rejects non-square input") {
  CHECK(thrown_code([] { det_exact({{Rat(1), Rat(2)}}); }) ==
        ErrorCode::precondition);
  CHECK(thrown_code([] { det_sign_exact({{Rat(1), Rat(2)}}); }) ==
        ErrorCode::precondition);
}

TEST_CASE("rank: constructed deficiencies") {
  SplitMix64 rng(7);
  for (std::size_t r = 1; r <= 3; ++r) {
    // A (5 x r) * (r x 6) product has rank exactly r almost surely; verify
    // against the Laplace oracle by checking some r x r minor is nonzero.
    RatMat m = matmul(random_matrix(5, r, rng), random_matrix(r, 6, rng));
    CHECK(rank_exact(m) == r);
  }
  CHECK(rank_exact(RatMat{}) == 0);
  CHECK(rank_exact({{Rat(0), Rat(0)}}) == 0);
}

TEST_CASE("kernel: canonical basis and exactness") {
  SplitMix64 rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    std::size_t r = 1 + rng.below(3), cols = 4 + rng.below(3);
    RatMat m = matmul(random_matrix(4, r, rng), random_matrix(r, cols, rng));
    std::size_t rank = rank_exact(m);
    auto kernel = kernel_exact(m, cols);
    REQUIRE(kernel.size() == cols - rank);

    // Every vector annihilates every row.
    for (const auto& v : kernel)
      for (const auto& row : m) {
        Rat dot(0);
        for (std::size_t j = 0; j < cols; ++j) dot += row[j] * v[j];
        CHECK(dot == 0);
      }

    /* Canonical shape: vector k owns an ascending free column where it is 1
     * and every other kernel vector is 0. */
    std::size_t prev = 0;
    bool first = true;
    for (std::size_t k = 0; k < kernel.size(); ++k) {
      std::optional<std::size_t> own;
      for (std::size_t j = 0; j < cols && !own; ++j) {
        if (kernel[k][j] != 1) continue;
        bool others_zero = true;
        for (std::size_t l = 0; l < kernel.size(); ++l)
          if (l != k && kernel[l][j] != 0) others_zero = false;
        if (others_zero) own = j;
      }
      REQUIRE(own.has_value());
      if (!first) CHECK(*own > prev);
      prev = *own;
      first = false;
    }
  }
}

TEST_CASE("kernel of a zero-row matrix spans everything") {
  auto kernel = kernel_exact(RatMat{}, 3);
  REQUIRE(kernel.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(kernel[i][j] == (i == j ? 1 : 0));
}

TEST_CASE("rref is canonical") {
  RatMat a = {{Rat(2), Rat(4), Rat(2)}, {Rat(1), Rat(2), Rat(3)}};
  RatMat r = rref(a);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == RatRow{Rat(1), Rat(2), Rat(0)});
  CHECK(r[1] == RatRow{Rat(0), Rat(0), Rat(1)});
  CHECK(rref(r) == r);

  // Zero rows are dropped.
  RatMat z = {{Rat(1), Rat(1)}, {Rat(2), Rat(2)}};
  CHECK(rref(z).size() == 1);
}

TEST_CASE("same_row_space ignores scaling and order") {
  RatMat a = {{Rat(1), Rat(2), Rat(0)}, {Rat(0), Rat(1), Rat(1)}};
  RatMat b = {{Rat(0), Rat(3), Rat(3)}, {Rat(2), Rat(4), Rat(0)}};
  CHECK(same_row_space(a, b));
  RatMat c = {{Rat(1), Rat(2), Rat(0)}, {Rat(0), Rat(1), Rat(2)}};
  CHECK(!same_row_space(a, c));
  // Combination rows do not change the span.
  RatMat d = a;
  d.push_back({Rat(1), Rat(3), Rat(1)});
  CHECK(same_row_space(a, d));
}
