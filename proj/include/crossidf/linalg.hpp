#pragma once

#include <vector>

#include "crossidf/rational.hpp"

namespace crossidf {

using RatMatrix = std::vector<std::vector<Rat>>;

// Exact row-echelon rank; first-nonzero pivoting, no floating point.
int matrix_rank(RatMatrix m);

// Solves A * X = B for square invertible A; B given column-wise.
// Returns X column-wise. Throws std::invalid_argument if A is singular
// or dimensions disagree.
std::vector<std::vector<Rat>> solve_square(const RatMatrix& a,
                                           const std::vector<std::vector<Rat>>& b_cols);

}  // namespace crossidf
