#pragma once

#include <vector>

#include "simplicit/rational.hpp"

namespace simplicit {

using RatRow = std::vector<Rat>;
using RatMat = std::vector<RatRow>;

/* Exact dense linear algebra over Q.  Elimination runs fraction-free
 * (Bareiss) on a row-scaled integer copy, so intermediate entries stay
 * minor-sized integers; only kernel back-substitution divides. */

// Sign of det, in {-1, 0, 1}.  Square matrices only; 0x0 has det 1.
int det_sign_exact(const RatMat& m);

Rat det_exact(const RatMat& m);

std::size_t rank_exact(const RatMat& m);

/* Basis of the right kernel, one vector per non-pivot column, in column
 * order.  Canonical: each vector has 1 at its own free column and 0 at every
 * other free column.  cols must be passed explicitly so 0-row matrices work. */
std::vector<RatRow> kernel_exact(const RatMat& m, std::size_t cols);

// Reduced row echelon form over Q with zero rows dropped; canonical.
RatMat rref(RatMat m);

bool same_row_space(const RatMat& a, const RatMat& b);

}  // namespace simplicit
