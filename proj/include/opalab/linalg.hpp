#pragma once

#include <vector>

#include "opalab/rational.hpp"

namespace opalab {

// Dense matrix over exact complex rationals, row major.
using GRMatrix = std::vector<std::vector<GaussianRational>>;
using GRVector = std::vector<GaussianRational>;

// Exact Gaussian elimination with first-nonzero pivot and row swaps.
// Throws std::domain_error on a singular system.
GRVector solve_linear(GRMatrix a, GRVector rhs);

// Exact determinant via elimination (product of pivots, signed by swaps).
GaussianRational determinant(GRMatrix a);

}  // namespace opalab
