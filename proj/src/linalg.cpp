#include "simplicit/linalg.hpp"

#include <algorithm>

namespace simplicit {

namespace {

using IntRow = std::vector<Int>;
using IntMat = std::vector<IntRow>;

// Clears denominators row by row; scale factors are positive, so signs of all
// minors survive.
IntMat scale_rows(const RatMat& m) {
  IntMat out;
  out.reserve(m.size());
  for (const auto& row : m) {
    Int l = 1;
    for (const auto& q : row) l = lcm(l, denominator(q));
    IntRow r;
    r.reserve(row.size());
    for (const auto& q : row) r.push_back(numerator(q) * (l / denominator(q)));
    out.push_back(std::move(r));
  }
  return out;
}

struct Echelon {
  IntMat m;                      // upper echelon, fraction-free
  std::vector<std::size_t> pivot_cols;
  int swap_sign = 1;
  Int last_pivot = 1;            // product form: det of the pivot minor
};

/* One-step Bareiss.  After eliminating with pivot p_k, every entry is an
 * exact (k+1)-minor of the input, and division by the previous pivot is
 * exact.  Columns with no pivot below the current row are skipped. */
Echelon bareiss(IntMat m, std::size_t cols) {
  Echelon e;
  std::size_t rows = m.size();
  Int prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      std::swap(m[piv], m[r]);
      e.swap_sign = -e.swap_sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[r][c];
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.last_pivot = prev;
  e.m = std::move(m);
  return e;
}

Int row_scale_product(const RatMat& m) {
  Int p = 1;
  for (const auto& row : m) {
    Int l = 1;
    for (const auto& q : row) l = lcm(l, denominator(q));
    p *= l;
  }
  return p;
}

}  // namespace

int det_sign_exact(const RatMat& m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  if (m[0].size() != n) fail(ErrorCode::precondition, "determinant of a non-square matrix");
  Echelon e = bareiss(scale_rows(m), n);
  if (e.pivot_cols.size() < n) return 0;
  return sign_of(e.last_pivot) * e.swap_sign;
}

Rat det_exact(const RatMat& m) {
  std::size_t n = m.size();
  if (n == 0) return Rat(1);
  if (m[0].size() != n) fail(ErrorCode::precondition, "determinant of a non-square matrix");
  Echelon e = bareiss(scale_rows(m), n);
  if (e.pivot_cols.size() < n) return Rat(0);
  Rat d(e.last_pivot * e.swap_sign, row_scale_product(m));
  return d;
}

std::size_t rank_exact(const RatMat& m) {
  if (m.empty()) return 0;
  return bareiss(scale_rows(m), m[0].size()).pivot_cols.size();
}

std::vector<RatRow> kernel_exact(const RatMat& m, std::size_t cols) {
  Echelon e = m.empty() ? Echelon{} : bareiss(scale_rows(m), cols);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;

  std::vector<RatRow> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatRow v(cols, Rat(0));
    v[f] = 1;
    for (std::size_t ri = e.pivot_cols.size(); ri-- > 0;) {
      std::size_t pc = e.pivot_cols[ri];
      if (pc > f) continue;  // columns right of f contribute only at other free cols
      Rat acc(0);
      for (std::size_t j = pc + 1; j <= f; ++j)
        if (e.m[ri][j] != 0 && v[j] != 0) acc += Rat(e.m[ri][j]) * v[j];
      v[pc] = -acc / Rat(e.m[ri][pc]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

RatMat rref(RatMat m) {
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    Rat p = m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] /= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  m.resize(r);  // rows past r are zero
  return m;
}

bool same_row_space(const RatMat& a, const RatMat& b) {
  if (!a.empty() && !b.empty() && a[0].size() != b[0].size()) return false;
  return rref(a) == rref(b);
}

}  // namespace simplicit
